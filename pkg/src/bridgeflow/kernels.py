"""Hot loops: modular Gaussian elimination and exhaustive rank search.

Each kernel exists twice, a numba ``@njit`` version and a pure-numpy one.
``BRIDGEFLOW_DISABLE_JIT=1`` (or a missing numba) selects the numpy path;
the choice is made once at import time and exposed as ``USE_JIT``.

Kernels assume int64 entries already reduced mod ``p`` with ``p < 2**31``,
so every product of two residues fits in a signed 64-bit word.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

JIT_ENV_FLAG = "BRIDGEFLOW_DISABLE_JIT"
INT64_SAFE_MODULUS = 2**31

JIT_DISABLED = os.environ.get(JIT_ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}
USE_JIT = numba is not None and not JIT_DISABLED


def _njit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True)(fn)


# ---------------------------------------------------------------------------
# numba path


@_njit
def _inv_mod(x, p):
    result = 1
    base = x % p
    e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


@_njit
def _rank_inplace(A, p):
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        inv = _inv_mod(A[r, c], p)
        for j in range(c, n):
            A[r, j] = A[r, j] * inv % p
        for i in range(r + 1, m):
            f = A[i, c]
            if f != 0:
                for j in range(c, n):
                    A[i, j] = (A[i, j] + p - f * A[r, j] % p) % p
        r += 1
    return r


@_njit
def rank_mod_p_jit(A, p):
    return _rank_inplace(A.copy(), p)


@_njit
def _decode(code, q, out):
    for k in range(out.size):
        out[k] = code % q
        code //= q


@_njit
def _assemble(M, N, q, F):
    # F[i*bp + k, j*ap + l] = sum_t M[t, i, j] * N[t, k, l]  (mod q)
    w, a, b = M.shape
    bp, ap = N.shape[1], N.shape[2]
    for i in range(a):
        for k in range(bp):
            for j in range(b):
                for l in range(ap):
                    s = 0
                    for t in range(w):
                        s += M[t, i, j] * N[t, k, l]
                    F[i * bp + k, j * ap + l] = s % q


@_njit
def exhaustive_max_rank_jit(w, a, b, bp, ap, q, ceiling):
    n_m = w * a * b
    n_n = w * bp * ap
    m_flat = np.zeros(n_m, dtype=np.int64)
    n_flat = np.zeros(n_n, dtype=np.int64)
    F = np.zeros((a * bp, b * ap), dtype=np.int64)
    best = 0
    total_m = q**n_m
    total_n = q**n_n
    for cm in range(total_m):
        _decode(cm, q, m_flat)
        M = m_flat.reshape((w, a, b))
        for cn in range(total_n):
            _decode(cn, q, n_flat)
            N = n_flat.reshape((w, bp, ap))
            _assemble(M, N, q, F)
            r = _rank_inplace(F, q)
            if r > best:
                best = r
                if best >= ceiling:
                    return best
    return best


# ---------------------------------------------------------------------------
# numpy path


def rank_mod_p_numpy(A: np.ndarray, p: int) -> int:
    A = np.array(A, dtype=np.int64, copy=True)
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[r + 1 :, c]
        if col.any():
            A[r + 1 :] = (A[r + 1 :] - np.outer(col, A[r]) % p) % p
        r += 1
    return r


def exhaustive_max_rank_numpy(w: int, a: int, b: int, bp: int, ap: int, q: int, ceiling: int) -> int:
    n_m, n_n = w * a * b, w * bp * ap
    best = 0
    for cm in range(q**n_m):
        M = _digit_vectors(cm, cm + 1, n_m, q).reshape(w, a, b)
        for start in range(0, q**n_n, _CHUNK):
            Ns = _digit_vectors(start, min(start + _CHUNK, q**n_n), n_n, q).reshape(-1, w, bp, ap)
            # F[n] = sum_t kron(M[t], Ns[n, t])
            F = np.einsum("tij,ntkl->nikjl", M, Ns).reshape(len(Ns), a * bp, b * ap) % q
            for mat in F:
                r = rank_mod_p_numpy(mat, q)
                if r > best:
                    best = r
                    if best >= ceiling:
                        return best
    return best


_CHUNK = 4096


def _digit_vectors(lo: int, hi: int, n: int, q: int) -> np.ndarray:
    codes = np.arange(lo, hi, dtype=np.int64)
    return (codes[:, None] // q ** np.arange(n, dtype=np.int64)) % q


# ---------------------------------------------------------------------------
# dispatch


def rank_mod_p(A: np.ndarray, p: int) -> int:
    if USE_JIT:
        return int(rank_mod_p_jit(np.ascontiguousarray(A, dtype=np.int64), np.int64(p)))
    return rank_mod_p_numpy(A, p)


def exhaustive_max_rank_kernel(w: int, a: int, b: int, bp: int, ap: int, q: int, ceiling: int) -> int:
    if USE_JIT:
        return int(exhaustive_max_rank_jit(w, a, b, bp, ap, q, ceiling))
    return exhaustive_max_rank_numpy(w, a, b, bp, ap, q, ceiling)
