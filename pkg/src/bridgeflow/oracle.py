"""Independent rank oracles for the bridge flow map.

The flow matrix of slices ``M_1..M_w`` (a x b) and ``N_1..N_w`` (b' x a')
is ``sum_i kron(M_i, N_i)``. Rows are indexed by ``(i_a, i_b')`` and
columns by ``(j_b, j_a')``, both row-major, i.e. ``numpy.kron`` order.

Nothing here consults the closed-form solver. Ranks over GF(p) are lower
bounds on the complex max-flow: a nonzero minor mod p is a nonzero
integer minor.
"""

from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .arithmetic import Decomposition, DomainError, decompose
from .castling import BridgeInstance

DEFAULT_MODULUS = 2**31 - 1
DEFAULT_TRIALS = 20
MEM_CAP_ENV = "BRIDGEFLOW_MEM_CAP_MB"
DEFAULT_MEM_CAP_MB = 512
EXHAUSTIVE_BIT_CAP = 24


class OracleCapError(RuntimeError):
    """The requested oracle computation exceeds a configured size cap."""


@lru_cache(maxsize=64)
def _is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


def check_modulus(p: int) -> int:
    p = int(p)
    if p < 2 or not _is_prime(p):
        raise DomainError(f"field modulus must be prime, got {p}")
    return p


def flow_matrix(Ms, Ns, modulus: int | None = None) -> np.ndarray:
    """Return ``sum_i kron(Ms[i], Ns[i])``, reduced mod ``modulus`` when given."""
    Ms = [np.asarray(M) for M in Ms]
    Ns = [np.asarray(N) for N in Ns]
    if len(Ms) != len(Ns) or not Ms:
        raise DomainError(f"need the same positive number of M and N slices, got {len(Ms)} and {len(Ns)}")
    if any(M.ndim != 2 or M.shape != Ms[0].shape for M in Ms):
        raise DomainError("all M slices must be matrices of one shape a x b")
    if any(N.ndim != 2 or N.shape != Ns[0].shape for N in Ns):
        raise DomainError("all N slices must be matrices of one shape b' x a'")
    (a, b), (bp, ap) = Ms[0].shape, Ns[0].shape
    if modulus is None or modulus >= kernels.INT64_SAFE_MODULUS:
        out = np.zeros((a * bp, b * ap), dtype=object)
        for M, N in zip(Ms, Ns):
            out = out + np.kron(M.astype(object), N.astype(object))
        return out % modulus if modulus is not None else out
    out = np.zeros((a * bp, b * ap), dtype=np.int64)
    for M, N in zip(Ms, Ns):
        out = (out + np.kron(M.astype(np.int64) % modulus, N.astype(np.int64) % modulus) % modulus) % modulus
    return out


def rank_ff(matrix, modulus: int) -> int:
    """Exact rank over GF(modulus)."""
    p = check_modulus(modulus)
    A = np.asarray(matrix)
    if A.ndim != 2:
        raise DomainError("rank_ff expects a 2-d matrix")
    if A.size == 0:
        return 0
    if p < kernels.INT64_SAFE_MODULUS:
        return kernels.rank_mod_p(np.asarray(A.astype(object) % p, dtype=np.int64), p)
    return _rank_mod_p_bigint([[int(x) % p for x in row] for row in A.tolist()], p)


def _rank_mod_p_bigint(rows: list[list[int]], p: int) -> int:
    m, n = len(rows), len(rows[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(r + 1, m):
            f = rows[i][c]
            if f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == m:
            break
    return r


def _rank_ceiling(inst: BridgeInstance) -> int:
    # Ranks can never exceed these (matrix shape and the two factorizations
    # through W), over any field, so stopping early here changes no result.
    a, b, w, bp, ap = inst.as_tuple()
    return min(a * bp, ap * b, a * ap * w, b * bp * w)


def mem_cap_bytes() -> int:
    raw = os.environ.get(MEM_CAP_ENV)
    mb = float(raw) if raw else DEFAULT_MEM_CAP_MB
    return int(mb * 2**20)


def _check_mem(inst: BridgeInstance) -> None:
    a, b, _, bp, ap = inst.as_tuple()
    need = 2 * (a * bp) * (b * ap) * 8
    cap = mem_cap_bytes()
    if need > cap:
        raise OracleCapError(
            f"flow matrix for {inst} needs ~{need / 2**20:.1f} MB, cap is {cap / 2**20:.1f} MB ({MEM_CAP_ENV})"
        )


@dataclass(frozen=True)
class OracleReport:
    best_rank: int
    trials: int
    modulus: int
    seed: int
    attained_at_trial: int

    def to_dict(self) -> dict:
        d = asdict(self)
        return {
            "best_rank": d["best_rank"],
            "trials": d["trials"],
            "modulus": d["modulus"],
            "seed": d["seed"],
            "attained_at_trial": d["attained_at_trial"],
        }


def random_slices(inst: BridgeInstance, rng: np.random.Generator, modulus: int) -> tuple[np.ndarray, np.ndarray]:
    a, b, w, bp, ap = inst.as_tuple()
    Ms = rng.integers(0, modulus, size=(w, a, b), dtype=np.int64)
    Ns = rng.integers(0, modulus, size=(w, bp, ap), dtype=np.int64)
    return Ms, Ns


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream per (seed, trial), so trials can run in any order."""
    return np.random.default_rng(np.random.SeedSequence([seed & (2**64 - 1), trial]))


def sample_rank(
    inst: BridgeInstance,
    trials: int = DEFAULT_TRIALS,
    modulus: int = DEFAULT_MODULUS,
    seed: int = 0,
) -> OracleReport:
    """Best rank of the flow map over ``trials`` uniformly random tensors mod ``modulus``."""
    if trials < 1:
        raise DomainError("trials must be positive")
    p = check_modulus(modulus)
    _check_mem(inst)
    ceiling = _rank_ceiling(inst)
    best, at = -1, 0
    for t in range(trials):
        Ms, Ns = random_slices(inst, trial_rng(seed, t), p)
        r = rank_ff(flow_matrix(Ms, Ns, p), p)
        if r > best:
            best, at = r, t
        if best >= ceiling:
            break
    return OracleReport(best_rank=best, trials=trials, modulus=p, seed=seed, attained_at_trial=at)


def exhaustive_max_rank(inst: BridgeInstance, field_size: int = 2) -> int:
    """Maximum flow-map rank over every tensor pair with entries in GF(field_size)."""
    if field_size not in (2, 3):
        raise DomainError("exhaustive search supports GF(2) and GF(3) only")
    a, b, w, bp, ap = inst.as_tuple()
    entries = w * (a * b + ap * bp)
    bits = entries * math.log2(field_size)
    if bits > EXHAUSTIVE_BIT_CAP + 1e-9:
        raise OracleCapError(f"exhaustive search over {entries} entries in GF({field_size}) exceeds 2^{EXHAUSTIVE_BIT_CAP}")
    return kernels.exhaustive_max_rank_kernel(w, a, b, bp, ap, field_size, _rank_ceiling(inst))


# ---------------------------------------------------------------------------
# explicit w = 2 witness built from Kronecker pencil blocks


def pencil_block(p: int, xi1: int, xi2: int) -> np.ndarray:
    """The p x (p+1) two-diagonal block with ``xi1`` on the diagonal and ``xi2`` above it."""
    R = np.zeros((p, p + 1), dtype=np.int64)
    idx = np.arange(p)
    R[idx, idx] = xi1
    R[idx, idx + 1] = xi2
    return R


def _direct_sum(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    out = np.zeros((X.shape[0] + Y.shape[0], X.shape[1] + Y.shape[1]), dtype=np.int64)
    out[: X.shape[0], : X.shape[1]] = X
    out[X.shape[0] :, X.shape[1] :] = Y
    return out


def pencil_slices(dec: Decomposition, transpose: bool = False) -> list[np.ndarray]:
    """Slices ``I_alpha (x) R_p + I_beta (x) R_{p+1}`` at (xi1, xi2) = (1, 0) and (0, 1)."""
    out = []
    for xi in ((1, 0), (0, 1)):
        lo = np.kron(np.eye(dec.alpha, dtype=np.int64), pencil_block(dec.p, *xi))
        hi = np.kron(np.eye(dec.beta, dtype=np.int64), pencil_block(dec.p + 1, *xi))
        if transpose:
            lo, hi = lo.T, hi.T
        out.append(_direct_sum(lo, hi))
    return out


def kron_block_rank(x: int, y: int) -> int:
    """Rank of ``R_x(1,0) (x) R_y(1,0)^T + R_x(0,1) (x) R_y(0,1)^T``."""
    return x * (y + 1) if x <= y else y * (x + 1)


@dataclass
class PencilWitness:
    top: Decomposition
    bottom: Decomposition
    blocks: dict[tuple[int, int], int] = field(default_factory=dict)
    block_rank: int = 0
    matrix_rank: int = 0
    shape: tuple[int, int] = (0, 0)

    def to_dict(self) -> dict:
        return {
            "top": asdict(self.top),
            "bottom": asdict(self.bottom),
            "blocks": [{"x": x, "y": y, "multiplicity": m} for (x, y), m in self.blocks.items()],
            "block_rank": self.block_rank,
            "matrix_rank": self.matrix_rank,
            "shape": list(self.shape),
        }


def w2_witness_matrix(inst: BridgeInstance) -> tuple[np.ndarray, Decomposition, Decomposition]:
    a, b, w, bp, ap = inst.as_tuple()
    if w != 2:
        raise DomainError(f"the pencil witness is for w = 2, got w = {w}")
    top = decompose(a, b, 2)
    bottom = decompose(ap, bp, 2)
    Ms = pencil_slices(top)
    Ns = pencil_slices(bottom, transpose=True)
    assert Ms[0].shape == (a, b) and Ns[0].shape == (bp, ap)
    return flow_matrix(Ms, Ns), top, bottom


def w2_witness_rank(inst: BridgeInstance, modulus: int = DEFAULT_MODULUS) -> tuple[int, PencilWitness]:
    F, top, bottom = w2_witness_matrix(inst)
    p, q = top.p, bottom.p
    blocks = {
        (p, q): top.alpha * bottom.alpha,
        (p, q + 1): top.alpha * bottom.beta,
        (p + 1, q): top.beta * bottom.alpha,
        (p + 1, q + 1): top.beta * bottom.beta,
    }
    block_rank = sum(m * kron_block_rank(x, y) for (x, y), m in blocks.items())
    matrix_rank = rank_ff(F, modulus)
    a, b, _, bp, ap = inst.as_tuple()
    assert F.shape == (a * bp, ap * b)
    witness = PencilWitness(top, bottom, blocks, block_rank, matrix_rank, F.shape)
    if block_rank != matrix_rank:
        raise RuntimeError(f"block formula rank {block_rank} != assembled rank {matrix_rank} for {inst}")
    return block_rank, witness
