"""Time the numba kernels against the pure-numpy fallbacks.

Both paths are imported directly, so the ``BRIDGEFLOW_DISABLE_JIT`` flag does
not matter here. The first jit call (compilation or cache load) is excluded.

    python benchmarks/bench_kernels.py --sizes 16 64 144 --repeat 5
"""

from __future__ import annotations

import argparse
import json
import time

import numpy as np

from bridgeflow import kernels

P = 2**31 - 1


def _best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_rank(n: int, repeat: int, seed: int) -> dict:
    A = np.random.default_rng(seed).integers(0, P, size=(n, n), dtype=np.int64)
    p = np.int64(P)
    r_jit = int(kernels.rank_mod_p_jit(A, p))  # warm-up
    r_np = kernels.rank_mod_p_numpy(A, P)
    assert r_jit == r_np
    t_jit = _best_of(lambda: kernels.rank_mod_p_jit(A, p), repeat)
    t_np = _best_of(lambda: kernels.rank_mod_p_numpy(A, P), repeat)
    return {"kernel": "rank", "size": n, "jit_s": t_jit, "numpy_s": t_np, "speedup": t_np / t_jit}


def bench_exhaustive(dims: tuple[int, int, int, int, int], repeat: int) -> dict:
    a, b, w, bp, ap = dims
    args = (w, a, b, bp, ap, 2, 10**9)  # no early exit: full enumeration
    r_jit = int(kernels.exhaustive_max_rank_jit(*args))
    r_np = kernels.exhaustive_max_rank_numpy(*args)
    assert r_jit == r_np
    t_jit = _best_of(lambda: kernels.exhaustive_max_rank_jit(*args), repeat)
    t_np = _best_of(lambda: kernels.exhaustive_max_rank_numpy(*args), 1)
    return {"kernel": "exhaustive GF(2)", "size": list(dims), "jit_s": t_jit, "numpy_s": t_np, "speedup": t_np / t_jit}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 64, 144])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    rows = [bench_rank(n, args.repeat, args.seed) for n in args.sizes]
    rows += [bench_exhaustive(d, args.repeat) for d in [(1, 2, 2, 2, 1), (1, 2, 2, 3, 1), (2, 2, 2, 1, 1)]]
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'kernel':<18} {'size':<18} {'jit (s)':>10} {'numpy (s)':>10} {'speedup':>8}")
    for r in rows:
        print(f"{r['kernel']:<18} {str(r['size']):<18} {r['jit_s']:>10.5f} {r['numpy_s']:>10.5f} {r['speedup']:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
