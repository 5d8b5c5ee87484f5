import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frameforge.activations import eval_sigma, gaussian, normalize_sigma
from frameforge.errors import EmptyDictionary, TooManyPoints
from frameforge.frame import (AtomIndex, WaveletExpansion, build_dictionary, dilation,
                              eval_atom, eval_expansion, eval_psi, eval_S_k, lattice_indices,
                              lattice_points, spacing)
from frameforge.quadrature import integrate, l2_norm, make_grid


def test_S_k_identity_and_example(gauss1):
    x = np.linspace(-3, 3, 13)
    np.testing.assert_array_equal(eval_S_k(gauss1, 0, x, 0.0), eval_sigma(gauss1, x))
    val = float(eval_S_k(gauss1, 1, 0.5, 0.0))
    assert val == pytest.approx(2 * math.exp(-1) / math.sqrt(math.pi), rel=1e-12)
    assert val == pytest.approx(2 * float(eval_sigma(gauss1, 1.0)), rel=1e-15)


@settings(max_examples=50, deadline=None)
@given(st.integers(-3, 5), st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5))
def test_S_k_translation_invariance(k, x, b, t):
    spec = normalize_sigma(gaussian(1), make_grid(1, 8.0, 64))
    a = float(eval_S_k(spec, k, x + t, b + t))
    c = float(eval_S_k(spec, k, x, b))
    assert a == pytest.approx(c, rel=1e-9, abs=1e-12 * 2.0**k)


def test_psi_at_scale_zero(gauss1):
    x = np.linspace(-4, 4, 17)
    expected = eval_sigma(gauss1, x) - 0.5 * eval_sigma(gauss1, x / 2)
    np.testing.assert_allclose(eval_psi(gauss1, 0, 0.0, x), expected, rtol=1e-15, atol=1e-16)


@pytest.mark.parametrize("k,b", [(0, 0.0), (1, 0.5), (3, -1.25), (2, 2.0)])
def test_psi_has_zero_mean(gauss1, grid1, k, b):
    mean = integrate(lambda x: eval_psi(gauss1, k, b, x), grid1)
    assert abs(mean) <= 1e-6
    # normalization deviations measured on this same fixed grid
    dev = sum(abs(integrate(lambda y: eval_S_k(gauss1, kk, y, b), grid1) - 1.0)
              for kk in (k, k - 1))
    assert abs(mean) <= 10 * dev + 1e-12


@pytest.mark.parametrize("k", [-1, 0, 2, 3])
def test_psi_scale_covariance(gauss1, k):
    x = np.linspace(-3, 3, 25)
    b = 0.75
    lhs = eval_psi(gauss1, k + 1, b / 2, x / 2)
    rhs = math.sqrt(2) * eval_psi(gauss1, k, b, x)
    np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-15)


def test_lattice_examples():
    np.testing.assert_array_equal(lattice_points(0, [-1, 1], 1)[:, 0], [-1, 0, 1])
    pts = lattice_points(2, [-1, 1], 1)[:, 0]
    assert len(pts) == 9
    np.testing.assert_allclose(np.diff(pts), 0.25)
    # spacing 2^{-k/d}: k=2 in the plane gives 5 per axis, k=4 gives 9 per axis
    assert len(lattice_points(2, [-1, 1], 2)) == 25
    assert len(lattice_points(4, [-1, 1], 2)) == 81


def test_lattice_is_lexicographic():
    ms = lattice_indices(0, [[-1, 1], [0, 1]], 2)
    assert ms == sorted(ms)
    assert ms[0] == (-1, 0) and ms[-1] == (1, 1)


def test_lattice_cap():
    with pytest.raises(TooManyPoints):
        lattice_points(20, [-1, 1], 1, cap=1000)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_spacing_nests_exactly(d):
    for k in range(-6, 7):
        assert spacing(k + d, d) == spacing(k, d) / 2
        assert dilation(k, d) * spacing(k, d) == pytest.approx(1.0, rel=1e-15)
    assert spacing(d, d) == 0.5


def test_dictionary_counts(gauss1):
    grid = make_grid(1, 8.0, 256)
    assert len(build_dictionary(gauss1, 0, 0, [-1, 1], grid)) == 3
    dic = build_dictionary(gauss1, 0, 2, [-1, 1], grid)
    assert len(dic) == 17
    assert np.all(dic.norms > 0)
    assert len(set(dic.atoms)) == len(dic.atoms)


def test_dictionary_norms_match_samples(gauss_dict):
    recomputed = l2_norm(gauss_dict.samples, gauss_dict.grid)
    np.testing.assert_allclose(gauss_dict.norms, recomputed, rtol=1e-12)
    centers = np.array([a.center() for a in gauss_dict.atoms])
    assert np.all(np.abs(centers) <= 4.0)


def test_dictionary_manifest(gauss_dict):
    man = gauss_dict.manifest()
    assert set(man) == {"spec", "k_range", "domain", "atom_count", "dropped_atoms"}
    assert man["atom_count"] == len(gauss_dict) == 261
    assert man["k_range"] == [-2, 4]


def test_dictionary_threads_do_not_change_samples(gauss1):
    grid = make_grid(1, 8.0, 512)
    one = build_dictionary(gauss1, -1, 3, [-2, 2], grid, workers=1)
    many = build_dictionary(gauss1, -1, 3, [-2, 2], grid, workers=4)
    assert one.atoms == many.atoms
    np.testing.assert_array_equal(one.samples, many.samples)
    np.testing.assert_array_equal(one.norms, many.norms)


def test_empty_dictionary(gauss1):
    grid = make_grid(1, 1.0, 16)
    # every atom centered far outside the grid box has a zero sampled norm
    with pytest.raises(EmptyDictionary):
        build_dictionary(gauss1, 8, 8, [[500.0, 501.0]], grid)


def test_expansion_basics(gauss1, rng):
    x = rng.uniform(-4, 4, 50)
    assert np.all(eval_expansion(WaveletExpansion(), gauss1, x) == 0)
    a, b = AtomIndex(0, (1,)), AtomIndex(2, (-3,))
    single = WaveletExpansion([(a, 1.0)])
    np.testing.assert_array_equal(eval_expansion(single, gauss1, x), eval_atom(gauss1, a, x))
    two = WaveletExpansion([(a, 0.7), (b, -1.3)])
    sep = (eval_expansion(WaveletExpansion([(a, 0.7)]), gauss1, x)
           + eval_expansion(WaveletExpansion([(b, -1.3)]), gauss1, x))
    np.testing.assert_allclose(eval_expansion(two, gauss1, x), sep, rtol=0, atol=1e-15)
    assert two.coefficient_l1 == pytest.approx(2.0)
    with pytest.raises(ValueError):
        WaveletExpansion([(a, 1.0), (a, 2.0)])


@settings(max_examples=30, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3))
def test_expansion_linearity(s, t):
    spec = normalize_sigma(gaussian(1), make_grid(1, 8.0, 64))
    e1 = WaveletExpansion([(AtomIndex(0, (0,)), 1.0), (AtomIndex(1, (2,)), -0.5)])
    e2 = WaveletExpansion([(AtomIndex(0, (0,)), 0.25), (AtomIndex(3, (-1,)), 2.0)])
    x = np.linspace(-4, 4, 41)
    combo = e1.scaled(s) + e2.scaled(t)
    lhs = eval_expansion(combo, spec, x)
    rhs = s * eval_expansion(e1, spec, x) + t * eval_expansion(e2, spec, x)
    assert np.all(np.abs(lhs - rhs) <= 1e-12 * (1 + np.abs(rhs)))


def test_expansion_serialization_round_trip():
    e = WaveletExpansion([(AtomIndex(1, (2, -1)), 0.5), (AtomIndex(-1, (0, 0)), -2.0)])
    assert WaveletExpansion.from_list(e.to_list()).terms == e.terms
