import math

import numpy as np
import pytest

import semicayley as sc
from semicayley import (
    AbelianGroup,
    ValidationError,
    Vertex,
    block_transfer_rl,
    build,
    make_spec,
    oracle_expm,
    transfer_entry,
    transfer_matrix,
)
from semicayley.graphs import cay_adjacency

from conftest import random_spec


def test_identity_at_zero(rng):
    spec = random_spec(rng)
    size = 2 * spec.n
    assert np.max(np.abs(transfer_matrix(spec, 0.0) - np.eye(size))) < 1e-12
    u = Vertex(spec.group.identity, 0)
    assert abs(transfer_entry(spec, u, u, 0.0) - 1.0) < 1e-12


def test_k2_closed_form():
    k2 = sc.hypercube(1)
    u, v = Vertex((0,), 0), Vertex((0,), 1)
    for t in (0.3, 1.0, math.pi / 2, 2.5):
        h = transfer_matrix(k2, t)
        expected = np.array([[math.cos(t), -1j * math.sin(t)], [-1j * math.sin(t), math.cos(t)]])
        assert np.max(np.abs(h - expected)) < 1e-12
    assert abs(abs(transfer_entry(k2, u, v, math.pi / 2)) - 1.0) < 1e-12
    assert abs(abs(transfer_entry(k2, u, v, math.pi / 4)) - math.sqrt(0.5)) < 1e-12


def test_c4_antipodal_entry():
    c4 = make_spec(AbelianGroup([2]), [(1,)], [(1,)], [(0,)])
    value = transfer_entry(c4, Vertex((0,), 0), Vertex((1,), 1), math.pi / 2)
    assert abs(abs(value) - 1.0) < 1e-12


def test_oracle_basics():
    assert np.array_equal(oracle_expm(np.zeros((3, 3)), 1.7), np.eye(3))
    flip = np.array([[0, 1], [1, 0]])
    h = oracle_expm(flip, math.pi / 2)
    assert abs(abs(h[0, 1]) - 1.0) < 1e-12
    assert abs(h[0, 0]) < 1e-12
    with pytest.raises(ValidationError):
        oracle_expm(np.array([[0, 1], [0, 0]]), 1.0)


def test_oracle_semigroup(rng):
    size = 6
    sym = rng.normal(size=(size, size))
    sym = sym + sym.T
    t1, t2 = 0.7, 1.9
    lhs = oracle_expm(sym, t1) @ oracle_expm(sym, t2)
    rhs = oracle_expm(sym, t1 + t2)
    assert np.max(np.abs(lhs - rhs)) < 1e-9


def test_spectral_path_equals_oracle(rng):
    for _ in range(20):
        spec = random_spec(rng)
        t = float(rng.uniform(0.0, 10.0))
        h_spec = transfer_matrix(spec, t)
        h_oracle = oracle_expm(build(spec), t)
        assert np.max(np.abs(h_spec - h_oracle)) < 1e-9


def test_block_path_equals_oracle(rng):
    for _ in range(20):
        spec = random_spec(rng, equal_layers=True)
        t = float(rng.uniform(0.0, 10.0))
        h_block = block_transfer_rl(spec, t)
        h_oracle = oracle_expm(build(spec), t)
        assert np.max(np.abs(h_block - h_oracle)) < 1e-9


def test_block_requires_equal_layers():
    with pytest.raises(ValidationError):
        block_transfer_rl(sc.sunlet(4), 1.0)


def test_block_structure_with_identity_spokes(rng):
    # S = {identity}: the spoke factor collapses to scalar cos/sin
    group = AbelianGroup([4])
    spec = make_spec(group, [(1,), (3,)], [(1,), (3,)], [(0,)])
    t = 1.234
    layer = cay_adjacency(group, spec.R).astype(float)
    vals, vecs = np.linalg.eigh(layer)
    h_layer = (vecs * np.exp(-1j * vals * t)) @ vecs.T
    expected = np.block(
        [
            [math.cos(t) * h_layer, -1j * math.sin(t) * h_layer],
            [-1j * math.sin(t) * h_layer, math.cos(t) * h_layer],
        ]
    )
    assert np.max(np.abs(block_transfer_rl(spec, t) - expected)) < 1e-12
    # cross-layer carry-over: at odd multiples of pi/2 the diagonal blocks die
    # and the off-diagonal block is the layer walk up to phase
    h = block_transfer_rl(spec, math.pi / 2)
    n = spec.n
    h_layer_half = (vecs * np.exp(-1j * vals * (math.pi / 2))) @ vecs.T
    assert np.max(np.abs(h[:n, :n])) < 1e-12
    assert np.max(np.abs(np.abs(h[:n, n:]) - np.abs(h_layer_half))) < 1e-12


def test_block_permutation_spokes_at_pi():
    # any single-element S gives a permutation C with CC^T = I; at t = pi the
    # spokes vanish and each layer carries -H_B(t): in-layer inheritance
    group = AbelianGroup([4])
    spec = make_spec(group, [(1,), (3,)], [(1,), (3,)], [(1,)])
    h = block_transfer_rl(spec, math.pi)
    n = spec.n
    layer = cay_adjacency(group, spec.R).astype(float)
    vals, vecs = np.linalg.eigh(layer)
    h_layer = (vecs * np.exp(-1j * vals * math.pi)) @ vecs.T
    assert np.max(np.abs(h[:n, n:])) < 1e-12
    assert np.max(np.abs(h[n:, :n])) < 1e-12
    assert np.max(np.abs(h[:n, :n] + h_layer)) < 1e-12
    assert np.max(np.abs(h[n:, n:] + h_layer)) < 1e-12


def test_entry_matches_matrix(rng):
    for _ in range(5):
        spec = random_spec(rng)
        t = float(rng.uniform(0.0, 6.0))
        h = transfer_matrix(spec, t)
        for _ in range(6):
            i = int(rng.integers(2 * spec.n))
            j = int(rng.integers(2 * spec.n))
            vertices = spec.vertices()
            entry = transfer_entry(spec, vertices[i], vertices[j], t)
            assert abs(entry - h[i, j]) < 1e-10


def test_unitarity_and_probability(rng):
    for _ in range(10):
        spec = random_spec(rng)
        t = float(rng.uniform(0.0, 10.0))
        h = transfer_matrix(spec, t)
        size = 2 * spec.n
        assert np.max(np.abs(h @ h.conj().T - np.eye(size))) < 1e-9
        rows = np.sum(np.abs(h) ** 2, axis=1)
        assert np.max(np.abs(rows - 1.0)) < 1e-9
        assert np.max(np.abs(h)) <= 1.0 + 1e-9


def test_time_reversal(rng):
    spec = random_spec(rng)
    t = 2.2
    forward = transfer_matrix(spec, t)
    backward = transfer_matrix(spec, -t)
    assert np.max(np.abs(backward - forward.conj().T)) < 1e-9


def test_s_empty_block_diagonal_transfer(rng):
    spec = random_spec(rng)
    spec = make_spec(spec.group, spec.R, spec.L, [])
    t = 1.6
    h = transfer_matrix(spec, t)
    n = spec.n
    assert np.max(np.abs(h[:n, n:])) < 1e-9
    assert np.max(np.abs(h[n:, :n])) < 1e-9
    for connection, block in ((spec.R, h[:n, :n]), (spec.L, h[n:, n:])):
        cay = cay_adjacency(spec.group, connection)
        assert np.max(np.abs(block - oracle_expm(cay, t))) < 1e-9
