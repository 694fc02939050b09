import math

import numpy as np
import pytest

import semicayley as sc
from semicayley import AbelianGroup, ValidationError, build, eigen_gcd, make_spec, spectrum
from semicayley.spectra import eigenvectors, projectors

from conftest import random_spec


def test_c4_spectrum():
    spec = make_spec(AbelianGroup([2]), [(1,)], [(1,)], [(0,)])
    spect = spectrum(spec)
    assert sorted(spect.eigenvalues()) == [-2.0, 0.0, 0.0, 2.0]
    assert spect.is_integral
    assert eigen_gcd(spec, spect) == 2
    exact = [(p.lambda_plus_exact, p.lambda_minus_exact) for p in spect.pairs]
    assert exact == [(2, 0), (0, -2)]


def test_cone_eigenvalue_formulas():
    for n in (3, 4, 5, 6, 7, 8):
        spect = spectrum(sc.cone(n))
        top = spect.pairs[0]
        assert abs(top.lambda_plus - (1 + math.sqrt(1 + n * n))) < 1e-9
        assert abs(top.lambda_minus - (1 - math.sqrt(1 + n * n))) < 1e-9
        for p in spect.pairs[1:]:
            assert p.chi_s_is_zero
            assert abs(p.lambda_plus - 2 * math.cos(2 * math.pi * p.index / n)) < 1e-9
            assert p.lambda_minus == 0.0
    assert not spectrum(sc.cone(5)).is_integral


def test_join_top_eigenvalues(rng):
    for _ in range(5):
        base = random_spec(rng)
        spec = sc.join_spec(base.group, base.R, base.L)
        spect = spectrum(spec)
        n = spec.n
        r_size, l_size = len(spec.R), len(spec.L)
        disc = math.sqrt((r_size - l_size) ** 2 + 4 * n * n)
        assert abs(spect.pairs[0].lambda_plus - (r_size + l_size + disc) / 2) < 1e-9
        assert abs(spect.pairs[0].lambda_minus - (r_size + l_size - disc) / 2) < 1e-9
        for p in spect.pairs[1:]:
            assert p.chi_s_is_zero  # chi(G) = 0 for nontrivial characters


def test_spectrum_matches_numeric(rng):
    for _ in range(25):
        spec = random_spec(rng)
        closed = np.sort(spectrum(spec).eigenvalues())
        numeric = np.linalg.eigvalsh(build(spec).astype(float))
        assert np.max(np.abs(closed - numeric)) < 1e-9


def test_trace_and_determinant_per_character(rng):
    for _ in range(10):
        spec = random_spec(rng)
        for p in spectrum(spec).pairs:
            chi_r = p.chi_r.approx.real
            chi_l = p.chi_l.approx.real
            s2 = p.chi_s.abs_squared().approx.real
            assert abs((p.lambda_plus + p.lambda_minus) - (chi_r + chi_l)) < 1e-9
            assert abs(p.lambda_plus * p.lambda_minus - (chi_r * chi_l - s2)) < 1e-9
            if not p.chi_s_is_zero:
                assert p.lambda_plus >= p.lambda_minus


def test_coefficient_conventions():
    # chi(S) = 0 convention
    spect = spectrum(sc.cone(4))
    for p in spect.pairs[1:]:
        assert (p.c_plus, p.c_minus, p.d_plus, p.d_minus) == (1.0, 0.0, 0.0, 1.0)
        assert p.e_plus == 0 and p.e_minus == 0
    # R = L forces the balanced split
    spec = make_spec(AbelianGroup([2]), [(1,)], [(1,)], [(0,)])
    for p in spectrum(spec).pairs:
        assert abs(p.c_plus - 0.5) < 1e-12 and abs(p.c_minus - 0.5) < 1e-12
        assert abs(p.d_plus - 0.5) < 1e-12 and abs(p.d_minus - 0.5) < 1e-12
        assert abs(abs(p.e_plus) - 0.5) < 1e-12
    # derived 2x2 values for the trivial character of C4
    top = spectrum(spec).pairs[0]
    assert abs(top.e_plus - 0.5) < 1e-12


def test_coefficient_identities(rng):
    for _ in range(10):
        spec = random_spec(rng)
        for p in spectrum(spec).pairs:
            assert abs(p.c_plus + p.c_minus - 1.0) < 1e-12
            assert 0.0 < p.d_plus + p.d_minus <= 1.0 + 1e-12
            assert abs(p.e_plus + p.e_minus) < 1e-12 or p.chi_s_is_zero
            assert abs(p.e_plus) <= 0.5 + 1e-12
            if not p.chi_s_is_zero:
                assert p.e_plus != p.e_minus


def test_eigenvectors_and_projectors(rng):
    for _ in range(8):
        spec = random_spec(rng)
        adjacency = build(spec).astype(float)
        size = 2 * spec.n
        values, vectors = eigenvectors(spec)
        assert np.max(np.abs(adjacency @ vectors - vectors * values)) < 1e-9
        assert np.max(np.abs(vectors.conj().T @ vectors - np.eye(size))) < 1e-9
        projs = projectors(spec)
        total = sum(projs)
        assert np.max(np.abs(total - np.eye(size))) < 1e-9
        for proj in projs[:4]:
            assert np.max(np.abs(proj @ proj - proj)) < 1e-9
            assert np.max(np.abs(proj - proj.conj().T)) < 1e-9
        recon = sum(v * proj for v, proj in zip(values, projs))
        assert np.max(np.abs(recon - adjacency)) < 1e-9


def test_is_integral_examples():
    assert sc.is_integral(make_spec(AbelianGroup([2]), [(1,)], [(1,)], [(0,)]))
    assert not sc.is_integral(sc.cone(5))
    full = sc.dihedral_full_coset(AbelianGroup([4]))
    spect = spectrum(full)
    assert spect.is_integral
    lams = sorted(spect.eigenvalues())
    assert lams == [-4.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 4.0]
    assert eigen_gcd(full, spect) == 4


def test_eigen_gcd_errors():
    with pytest.raises(ValidationError, match="not integral"):
        eigen_gcd(sc.cone(5))
    empty = make_spec(AbelianGroup([3]), [], [], [])
    with pytest.raises(ValidationError, match="constant spectrum"):
        eigen_gcd(empty)


def test_spectrum_json():
    spec = make_spec(AbelianGroup([2]), [(1,)], [(1,)], [(0,)])
    blob = spectrum(spec).to_json()
    assert len(blob["characters"]) == 2
    row = blob["characters"][0]
    assert row["exact"] is True and row["lambda_plus_exact"] == 2
