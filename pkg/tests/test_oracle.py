from __future__ import annotations

import itertools
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bridgeflow import kernels
from bridgeflow.arithmetic import DomainError, Region, classify_region
from bridgeflow.castling import BridgeInstance
from bridgeflow.oracle import (
    MEM_CAP_ENV,
    OracleCapError,
    exhaustive_max_rank,
    flow_matrix,
    kron_block_rank,
    pencil_block,
    rank_ff,
    sample_rank,
    w2_witness_matrix,
    w2_witness_rank,
)
from bridgeflow.solver import qmaxflow, qmincut

P = 2**31 - 1


def test_flow_matrix_examples():
    assert flow_matrix([[[1]]], [[[1]]]).tolist() == [[1]]
    eye = np.eye(2, dtype=np.int64)
    assert (flow_matrix([eye, eye], [[[1]], [[0]]]) == eye).all()
    assert flow_matrix([[[2]], [[3]]], [[[5]], [[7]]]).tolist() == [[2 * 5 + 3 * 7]]


def test_flow_matrix_shape_errors():
    with pytest.raises(DomainError):
        flow_matrix([np.eye(2)], [np.eye(2), np.eye(2)])
    with pytest.raises(DomainError):
        flow_matrix([np.eye(2), np.eye(3)], [np.eye(1), np.eye(1)])


def test_flow_matrix_index_convention():
    rng = np.random.default_rng(0)
    M = rng.integers(0, 5, size=(2, 2, 3))
    N = rng.integers(0, 5, size=(2, 4, 2))
    F = flow_matrix(M, N)
    for i, j, k, l in itertools.product(range(2), range(3), range(4), range(2)):
        assert F[i * 4 + k, j * 2 + l] == sum(M[t, i, j] * N[t, k, l] for t in range(2))


def test_flow_matrix_modular_matches_integer():
    rng = np.random.default_rng(1)
    M = rng.integers(0, P, size=(3, 2, 3))
    N = rng.integers(0, P, size=(3, 3, 2))
    exact = flow_matrix(M.astype(object), N.astype(object))
    assert (flow_matrix(M, N, P) == exact % P).all()


def test_rank_ff_examples():
    assert rank_ff(np.eye(3, dtype=np.int64), 2) == 3
    assert rank_ff(np.zeros((4, 5), dtype=np.int64), 7) == 0
    assert rank_ff([[1, 2], [2, 4]], 7) == 1


def test_rank_ff_rejects_composite():
    with pytest.raises(DomainError):
        rank_ff(np.eye(2), 9)


def test_rank_ff_big_prime_path():
    big = 2**61 - 1
    A = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]], dtype=object)
    assert rank_ff(A, big) == 2


@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 5, 101, P]))
def test_kernel_paths_agree(m, n, seed, p):
    A = np.random.default_rng(seed).integers(0, p, size=(m, n)).astype(np.int64)
    # low-rank bias so ties are exercised
    if seed % 3 == 0 and m > 1:
        A[-1] = (A[0] * 2) % p
    assert kernels.rank_mod_p_numpy(A, p) == int(kernels.rank_mod_p_jit(A, np.int64(p)))


def test_rank_matches_sympy():
    import sympy

    rng = np.random.default_rng(3)
    for _ in range(20):
        A = rng.integers(0, 3, size=(5, 6))
        A[4] = A[0] + A[1]
        assert rank_ff(A, 10007) == sympy.Matrix(A.tolist()).rank()


def test_exhaustive_paths_agree():
    for dims in [(1, 1, 2, 1, 1), (1, 2, 2, 2, 1), (1, 2, 2, 1, 1), (2, 1, 1, 2, 1)]:
        a, b, w, bp, ap = dims
        assert kernels.exhaustive_max_rank_numpy(w, a, b, bp, ap, 2, 99) == int(
            kernels.exhaustive_max_rank_jit(w, a, b, bp, ap, 2, 99))


@pytest.mark.parametrize("dims,expected", [((1, 1, 2, 1, 1), 1), ((1, 2, 2, 2, 1), 2), ((1, 1, 3, 1, 1), 1)])
def test_exhaustive_examples(dims, expected):
    assert exhaustive_max_rank(BridgeInstance(*dims), 2) == expected


def test_exhaustive_caps():
    with pytest.raises(OracleCapError):
        exhaustive_max_rank(BridgeInstance(3, 3, 3, 3, 3), 2)
    with pytest.raises(DomainError):
        exhaustive_max_rank(BridgeInstance(1, 1, 2, 1, 1), 5)


def test_exhaustive_below_generic_rank():
    for dims in [(1, 2, 2, 2, 1), (1, 2, 2, 3, 1), (2, 2, 1, 2, 2)]:
        inst = BridgeInstance(*dims)
        assert exhaustive_max_rank(inst, 2) <= sample_rank(inst, trials=5).best_rank


@pytest.mark.parametrize("dims,expected", [((1, 1, 3, 1, 1), 1), ((3, 5, 2, 5, 3), 14), ((1, 2, 2, 3, 1), 2)])
def test_sample_rank_examples(dims, expected):
    rep = sample_rank(BridgeInstance(*dims), trials=20, modulus=P, seed=0)
    assert rep.best_rank == expected
    assert rep.trials == 20 and rep.modulus == P and rep.seed == 0


def test_sample_rank_deterministic_and_bounded():
    inst = BridgeInstance(2, 3, 3, 4, 3)
    r1 = sample_rank(inst, trials=4, seed=42)
    r2 = sample_rank(inst, trials=4, seed=42)
    assert r1 == r2
    assert r1.best_rank <= min(2 * 4, 3 * 3) and r1.best_rank <= qmincut(inst)


def test_sample_rank_errors(monkeypatch):
    with pytest.raises(DomainError):
        sample_rank(BridgeInstance(1, 1, 2, 1, 1), trials=0)
    with pytest.raises(DomainError):
        sample_rank(BridgeInstance(1, 1, 2, 1, 1), modulus=15)
    monkeypatch.setenv(MEM_CAP_ENV, "0.001")
    with pytest.raises(OracleCapError):
        sample_rank(BridgeInstance(8, 8, 2, 8, 8), trials=1)


def test_small_prime_oracle():
    # a small field may miss the generic rank in one trial, but never exceeds it
    inst = BridgeInstance(3, 5, 2, 5, 3)
    assert sample_rank(inst, trials=5, modulus=3).best_rank <= 14


def test_bilinearity():
    rng = np.random.default_rng(7)
    M1, M2 = rng.integers(0, 9, size=(2, 2, 2, 3))
    N = rng.integers(0, 9, size=(2, 3, 2))
    assert (flow_matrix(M1 + M2, N) == flow_matrix(M1, N) + flow_matrix(M2, N)).all()
    assert (flow_matrix(3 * M1, N) == 3 * flow_matrix(M1, N)).all()


def test_zero_slice_padding_keeps_rank():
    rng = np.random.default_rng(11)
    for w in (1, 2, 3):
        M = rng.integers(0, 101, size=(w, 2, 3))
        N = rng.integers(0, 101, size=(w, 3, 2))
        Mz = np.concatenate([M, np.zeros((1, 2, 3), dtype=M.dtype)])
        Nz = np.concatenate([N, rng.integers(0, 101, size=(1, 3, 2))])
        assert rank_ff(flow_matrix(M, N, 101), 101) == rank_ff(flow_matrix(Mz, Nz, 101), 101)


def test_bond_dimension_monotonicity():
    # growing any bond dimension never lowers the generic rank
    ranks = {}
    for w in (1, 2, 3):
        for dims in itertools.product(range(1, 5), repeat=4):
            ranks[(w, *dims)] = sample_rank(BridgeInstance(dims[0], dims[1], w, dims[2], dims[3]), trials=2).best_rank
    for (w, *dims), r in ranks.items():
        for i in range(4):
            bigger = list(dims)
            bigger[i] += 1
            if (w, *bigger) in ranks:
                assert ranks[(w, *bigger)] >= r
        if (w + 1, *dims) in ranks:
            assert ranks[(w + 1, *dims)] >= r


def test_pencil_block_and_formula():
    R = pencil_block(2, 1, 0)
    assert R.tolist() == [[1, 0, 0], [0, 1, 0]]
    for x in range(1, 5):
        for y in range(1, 5):
            Ms = [pencil_block(x, 1, 0), pencil_block(x, 0, 1)]
            Ns = [pencil_block(y, 1, 0).T, pencil_block(y, 0, 1).T]
            assert rank_ff(flow_matrix(Ms, Ns), P) == kron_block_rank(x, y)


@pytest.mark.parametrize("dims,expected", [((3, 5, 2, 5, 3), 14), ((2, 3, 2, 3, 2), 6), ((2, 3, 2, 4, 3), 8)])
def test_w2_witness_examples(dims, expected):
    rank, witness = w2_witness_rank(BridgeInstance(*dims))
    assert rank == expected == witness.matrix_rank
    assert witness.to_dict()["block_rank"] == expected


def test_w2_witness_matches_solver_on_X2():
    for a, b, ap, bp in itertools.product(range(1, 9), repeat=4):
        if not (a <= b and ap <= bp):
            continue
        if classify_region(a, b, 2) is not Region.X or classify_region(ap, bp, 2) is not Region.X:
            continue
        inst = BridgeInstance(a, b, 2, bp, ap)
        rank, _ = w2_witness_rank(inst)
        assert rank == qmaxflow(inst).value, inst


def test_w2_witness_rejects():
    with pytest.raises(DomainError):
        w2_witness_matrix(BridgeInstance(3, 5, 3, 5, 3))


def test_numpy_path_selected_by_env():
    code = "import bridgeflow.kernels as k; print(k.USE_JIT)"
    env = dict(os.environ, BRIDGEFLOW_DISABLE_JIT="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"
