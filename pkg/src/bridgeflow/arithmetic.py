"""Exact integer arithmetic for the bridge-graph region geometry.

Everything here works on Python ints. The region boundaries are the
irrational lines ``b = lambda_w * a``; comparisons against them go through
the sign of ``b**2 - w*a*b + a**2`` so no floating point is involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class DomainError(ValueError):
    """Raised when an input lies outside an operation's domain."""


class Ordering(str, Enum):
    BELOW = "below"
    EQUAL = "equal"
    ABOVE = "above"


class Region(str, Enum):
    U = "U"
    V = "V"
    W = "W"
    X = "X"
    Y = "Y"


@dataclass(frozen=True)
class Pair:
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.b < 1:
            raise DomainError(f"bond dimensions must be positive, got ({self.a}, {self.b})")

    def __iter__(self):
        yield self.a
        yield self.b


@dataclass(frozen=True)
class Decomposition:
    p: int
    alpha: int
    beta: int


def _check_w(w: int) -> None:
    if w < 2:
        raise DomainError(f"bridge dimension w must be >= 2, got {w}")


def z_seq(w: int, p: int) -> int:
    """Return z_p for the recursion z_0 = 0, z_1 = 1, z_{k+1} = w z_k - z_{k-1}."""
    _check_w(w)
    if p < 0:
        raise DomainError(f"index p must be non-negative, got {p}")
    prev, cur = 0, 1
    if p == 0:
        return 0
    for _ in range(p - 1):
        prev, cur = cur, w * cur - prev
    return cur


def lambda_cmp(a: int, b: int, w: int) -> Ordering:
    """Compare b against lambda_w * a, where lambda_w is the larger root of x^2 - w x + 1."""
    _check_w(w)
    if a < 1 or b < a:
        raise DomainError(f"lambda_cmp needs b >= a >= 1, got a={a}, b={b}")
    s = b * b - w * a * b + a * a
    if s > 0:
        return Ordering.ABOVE
    if s < 0:
        return Ordering.BELOW
    return Ordering.EQUAL


def classify_region(a: int, b: int, w: int) -> Region:
    _check_w(w)
    if a < 1 or b < a:
        raise DomainError(f"classify_region needs b >= a >= 1, got a={a}, b={b}")
    if b >= w * a:
        return Region.Y
    if lambda_cmp(a, b, w) is Ordering.ABOVE:
        return Region.X
    if b >= (w - 1) * a:
        return Region.W
    # w = 2 never gets here: b < a is excluded and b >= (w-1)a = a always holds.
    if lambda_cmp(a, b, w - 1) is Ordering.ABOVE:
        return Region.V
    return Region.U


def in_region(a: int, b: int, w: int, *regions: Region | str) -> bool:
    return classify_region(a, b, w) in {Region(r) for r in regions}


def decompose(a: int, b: int, w: int) -> Decomposition:
    """Write (a, b) as (z_p al + z_{p+1} be, z_{p+1} al + z_{p+2} be).

    Valid for lambda_w * a < b <= w * a. Runs c_0 = b, c_1 = a,
    c_s = w c_{s-1} - c_{s-2} until the first non-positive term c_{s+1};
    then beta = c_s, alpha = -c_{s+1} and p = s - 1. On the line b = w a
    this gives p = 0.
    """
    _check_w(w)
    if a < 1 or b < a or lambda_cmp(a, b, w) is not Ordering.ABOVE or b > w * a:
        raise DomainError(f"decompose needs lambda_w*a < b <= w*a, got a={a}, b={b}, w={w}")
    prev, cur = b, a  # c_{s-1}, c_s with s = 1
    s = 1
    while True:
        nxt = w * cur - prev
        if nxt <= 0:
            break
        assert nxt < cur, "c-sequence must decrease strictly while positive"
        prev, cur = cur, nxt
        s += 1
    dec = Decomposition(p=s - 1, alpha=-nxt, beta=cur)
    ra, rb = reconstruct(dec, w)
    assert (ra, rb) == (a, b), (a, b, w, dec)
    return dec


def reconstruct(dec: Decomposition, w: int) -> tuple[int, int]:
    z0, z1, z2 = z_seq(w, dec.p), z_seq(w, dec.p + 1), z_seq(w, dec.p + 2)
    return z0 * dec.alpha + z1 * dec.beta, z1 * dec.alpha + z2 * dec.beta
