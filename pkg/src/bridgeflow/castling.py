"""Castling transforms on dimension pairs and on whole bridge instances.

Instances use the diagram order ``(a, b, w, b', a')``: ``a`` top-left,
``b`` top-right, ``b'`` bottom-left, ``a'`` bottom-right. The defect
``a*b' - QMaxFlow`` is invariant under the instance-level transforms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .arithmetic import DomainError, Pair, Region, classify_region, decompose


class Direction(str, Enum):
    DOWN = "down"
    UP = "up"


@dataclass(frozen=True)
class BridgeInstance:
    a: int
    b: int
    w: int
    b_prime: int
    a_prime: int

    def __post_init__(self) -> None:
        for name in ("a", "b", "w", "b_prime", "a_prime"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be >= 1, got {getattr(self, name)}")

    @property
    def top(self) -> Pair:
        return Pair(self.a, self.b)

    @property
    def bottom(self) -> Pair:
        return Pair(self.a_prime, self.b_prime)

    @property
    def defect_product(self) -> int:
        """The product a*b' from which QMaxFlow is subtracted in the defect."""
        return self.a * self.b_prime

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.a, self.b, self.w, self.b_prime, self.a_prime)

    def to_dict(self) -> dict[str, int]:
        return {"a": self.a, "b": self.b, "w": self.w, "b_prime": self.b_prime, "a_prime": self.a_prime}

    def mirrored(self) -> "BridgeInstance":
        """Left-right mirror: (a,b,w,b',a') -> (b,a,w,a',b'). QMaxFlow is unchanged."""
        return BridgeInstance(self.b, self.a, self.w, self.a_prime, self.b_prime)

    def flipped(self) -> "BridgeInstance":
        """Exchange the two pairs: (a,b,w,b',a') -> (a',b',w,b,a). QMaxFlow is unchanged."""
        return BridgeInstance(self.a_prime, self.b_prime, self.w, self.b, self.a)

    def with_w(self, w: int) -> "BridgeInstance":
        return BridgeInstance(self.a, self.b, w, self.b_prime, self.a_prime)

    def __str__(self) -> str:
        return f"(a={self.a}, b={self.b}, w={self.w}, b'={self.b_prime}, a'={self.a_prime})"


@dataclass(frozen=True)
class TraceStep:
    direction: Direction
    instance: BridgeInstance
    product: int

    def to_dict(self) -> dict:
        return {"direction": self.direction.value, "instance": self.instance.to_dict(), "product": self.product}


@dataclass
class CastlingTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def append(self, direction: Direction, instance: BridgeInstance) -> None:
        self.steps.append(TraceStep(direction, instance, instance.defect_product))

    def extend(self, other: "CastlingTrace") -> None:
        self.steps.extend(other.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def to_list(self) -> list[dict]:
        return [s.to_dict() for s in self.steps]


@dataclass(frozen=True)
class DefectIdentity:
    """``old_product - QMF(old) == new_product - QMF(new)``."""

    old: BridgeInstance
    new: BridgeInstance
    old_product: int
    new_product: int

    @property
    def shift(self) -> int:
        """QMF(old) - QMF(new)."""
        return self.old_product - self.new_product

    def __str__(self) -> str:
        return f"{self.old_product} - QMF{self.old} = {self.new_product} - QMF{self.new}"


def _pair(pair) -> tuple[int, int]:
    x, y = pair
    return int(x), int(y)


def pair_down(pair, w: int) -> Pair:
    """(x, y) -> (w x - y, x)."""
    x, y = _pair(pair)
    if w * x - y < 1:
        raise DomainError(f"down castling needs w*a - b >= 1, got {w}*{x} - {y} = {w * x - y}")
    return Pair(w * x - y, x)


def pair_up(pair, w: int) -> Pair:
    """(x, y) -> (y, w y - x)."""
    x, y = _pair(pair)
    if w * y - x < 1:
        raise DomainError(f"up castling needs w*b - a >= 1, got {w}*{y} - {x} = {w * y - x}")
    return Pair(y, w * y - x)


def depth_chain(pair, w: int) -> list[Pair]:
    """Down-castling chain from a U/V/W pair to its first U/V pair, endpoints included."""
    if w < 3:
        raise DomainError("castling depth is defined for w >= 3")
    x, y = _pair(pair)
    region = classify_region(x, y, w)
    if region not in (Region.U, Region.V, Region.W):
        raise DomainError(f"castling depth needs a pair in U, V or W; ({x}, {y}) is in {region.value}_{w}")
    chain = [Pair(x, y)]
    while region is Region.W:
        nxt = pair_down(chain[-1], w)
        region = classify_region(nxt.a, nxt.b, w)
        assert region in (Region.U, Region.V, Region.W), (pair, w, nxt)
        chain.append(nxt)
    return chain


def depth(pair, w: int) -> int:
    return len(depth_chain(pair, w)) - 1


def instance_down(inst: BridgeInstance) -> tuple[BridgeInstance, DefectIdentity]:
    """(a,b,w,b',a') -> (wa-b, a, w, a', wa'-b')."""
    a, b, w, bp, ap = inst.as_tuple()
    if b > w * a or bp > w * ap:
        raise DomainError(f"down castling of {inst} needs b <= w*a and b' <= w*a'")
    top = pair_down((a, b), w)
    bottom = pair_down((ap, bp), w)
    new = BridgeInstance(top.a, top.b, w, bottom.b, bottom.a)
    return new, DefectIdentity(inst, new, inst.defect_product, new.defect_product)


def instance_up(inst: BridgeInstance) -> tuple[BridgeInstance, DefectIdentity]:
    """(a,b,w,b',a') -> (b, wb-a, w, wb'-a', b')."""
    a, b, w, bp, ap = inst.as_tuple()
    if a > w * b or ap > w * bp:
        raise DomainError(f"up castling of {inst} needs a <= w*b and a' <= w*b'")
    top = pair_up((a, b), w)
    bottom = pair_up((ap, bp), w)
    new = BridgeInstance(top.a, top.b, w, bottom.b, bottom.a)
    return new, DefectIdentity(inst, new, inst.defect_product, new.defect_product)


def castle_down(inst: BridgeInstance, steps: int, trace: CastlingTrace | None = None) -> tuple[BridgeInstance, int]:
    """Apply ``instance_down`` repeatedly; return the final instance and QMF(start) - QMF(end)."""
    shift = 0
    for _ in range(steps):
        inst, ident = instance_down(inst)
        shift += ident.shift
        if trace is not None:
            trace.append(Direction.DOWN, inst)
    return inst, shift


def castle_to_Y(pair, w: int) -> tuple[list[Pair], Pair]:
    x, y = _pair(pair)
    if classify_region(x, y, w) is not Region.X:
        raise DomainError(f"castle_to_Y needs a pair in X_{w}, got ({x}, {y})")
    dec = decompose(x, y, w)
    chain = [Pair(x, y)]
    for _ in range(dec.p):
        chain.append(pair_down(chain[-1], w))
    terminal = chain[-1]
    assert terminal == Pair(dec.beta, dec.alpha + w * dec.beta)
    return chain, terminal
