import math

import numpy as np
import pytest

from divschur import funcs, wavelet
from divschur.errors import (InsufficientRegularity, IoFailure, NonConvergence,
                             ResolutionInsufficient, SeriesDivergence, UnsupportedOrder)

SQ2 = math.sqrt(2)


@pytest.fixture(scope="module")
def db2():
    return wavelet.WaveletSystem(2, 10)


@pytest.fixture(scope="module")
def db3():
    return wavelet.WaveletSystem(3, 10)


@pytest.fixture(scope="module")
def db6():
    return wavelet.WaveletSystem(6, 10)


# ------------------------------------------------------------- filters

def test_haar_filter():
    assert np.allclose(wavelet.daubechies_filter(1), [1 / SQ2, 1 / SQ2], atol=1e-15)


def test_db2_closed_form():
    r3 = math.sqrt(3)
    expected = np.array([1 + r3, 3 + r3, 3 - r3, 1 - r3]) / (4 * SQ2)
    assert np.allclose(wavelet.daubechies_filter(2), expected, atol=1e-14)


@pytest.mark.parametrize("M", range(1, 11))
def test_filter_identities(M):
    h = wavelet.daubechies_filter(M)
    assert len(h) == 2 * M
    assert abs(h.sum() - SQ2) < 1e-12
    for m in range(M):
        assert abs(np.dot(h[: len(h) - 2 * m], h[2 * m:]) - (m == 0)) < 1e-10
    assert wavelet.filter_defects(h) < 1e-10


@pytest.mark.parametrize("M", [0, 11])
def test_unsupported_order(M):
    with pytest.raises(UnsupportedOrder):
        wavelet.daubechies_filter(M)


def test_mirror_filter_orthogonal():
    h = wavelet.daubechies_filter(3)
    g = wavelet.mirror_filter(h)
    assert abs(np.dot(h, g)) < 1e-14 and abs(g.sum()) < 1e-12


# ------------------------------------------------------------- cascade

@pytest.mark.parametrize("J", [4, 7])
def test_haar_cascade_is_indicator(J):
    t, phi, w = wavelet.cascade(wavelet.daubechies_filter(1), J)
    assert np.array_equal(phi[t < 1], np.ones(np.sum(t < 1)))
    assert np.all(phi[t >= 1] == 0)


def test_cascade_normalization(db2):
    phi = db2.phi_samples()
    assert abs(phi.sum() * 2.0 ** -10 - 1) < 1e-8


def test_cascade_depth_and_check():
    with pytest.raises(ValueError):
        wavelet.WaveletSystem(2, 3)
    with pytest.raises(NonConvergence):
        wavelet.cascade(wavelet.daubechies_filter(2), 6, check=-1.0)


DB2_DEPTH = pytest.mark.xfail(
    strict=True,
    reason="DB2 is only C^0.55; trapezoid sums of exact samples at depth 10 are off by "
           "about 1e-5 (5e-5 on the diagonal); depths 12 to 14 reach the stated tolerances")


@DB2_DEPTH
def test_neighbour_orthogonality_db2_depth10(db2):
    assert abs(db2.inner(0, 0, 0, 1)) <= 1e-6


def test_neighbour_orthogonality():
    assert abs(wavelet.WaveletSystem(2, 14).inner(0, 0, 0, 1)) <= 1e-6
    assert abs(wavelet.WaveletSystem(3, 10).inner(0, 0, 0, 1)) <= 1e-6


def test_refinement_consistency(db3):
    # depth J samples restricted to the coarser grid are the depth J-1 samples
    assert np.allclose(db3.phi_samples(10)[::2], db3.phi_samples(9), rtol=0, atol=1e-13)


@pytest.mark.parametrize("M,J", [pytest.param(2, 10, marks=DB2_DEPTH), (2, 12), (3, 10),
                                 (4, 10)])
def test_gram_identity(M, J):
    W = wavelet.WaveletSystem(M, J)
    G = W.gram(range(-2, 3), range(-8, 9))
    assert np.abs(G - np.eye(len(G))).max() <= 1e-5


@pytest.mark.parametrize("M", [2, 3, 4, 6])
def test_vanishing_moments(M):
    W = wavelet.WaveletSystem(M, 10)
    assert np.abs(W.moments()).max() <= 1e-6


def test_csv_export(db2, tmp_path):
    path = tmp_path / "w.csv"
    db2.to_csv(path)
    rows = path.read_text().splitlines()
    assert rows[0] == "t,phi,w" and len(rows) == len(db2.grid()) + 1
    with pytest.raises(IoFailure):
        db2.to_csv(tmp_path / "missing" / "w.csv")


def test_derivative_samples_integrate_back(db6):
    # w(u) = int_0^u w'(s) ds on the sample grid
    d = db6.wavelet_samples(10, 1)
    w = db6.wavelet_samples(10)
    cum = np.r_[0, np.cumsum((d[1:] + d[:-1]) / 2)] * 2.0 ** -10
    assert np.abs(cum - w).max() < 1e-5


def test_regularity_gate():
    wavelet.require_regularity(9, 2, 1.0)
    with pytest.raises(InsufficientRegularity):
        wavelet.require_regularity(4, 2, 1.0)
    assert wavelet.min_order_for(2, 1.0) == min(M for M, b in wavelet.HOLDER.items() if b > 3)
    with pytest.raises(InsufficientRegularity):
        wavelet.WaveletSystem(2, 6).wavelet_samples(6, r=1)


# ------------------------------------------------------------- coefficients

@pytest.mark.parametrize("M,J", [pytest.param(2, 10, marks=DB2_DEPTH), (2, 14), (3, 10)])
def test_coeffs_of_basis_function(M, J):
    W = wavelet.WaveletSystem(M, J)
    f = wavelet.wavelet_fn(W, 0, 0)
    c = wavelet.wavelet_coeffs(f, W, (-1, 1))
    for key, v in c.items():
        assert abs(v - (key == (0, 0))) <= 1e-6


def test_coeffs_of_zero(db2):
    zero = funcs.polynomial([0.0])
    c = wavelet.wavelet_coeffs(zero, db2, (-2, 2), k_range=(-5, 5))
    assert all(v == 0 for v in c.values())


def test_haar_coefficient_of_identity():
    W = wavelet.WaveletSystem(1, 10)
    c = wavelet.wavelet_coeffs(funcs.monomial(1), W, (0, 0), k_range=(0, 0))
    assert c[(0, 0)] == pytest.approx(-0.25, abs=1e-12)


def test_coeffs_require_k_range(db2):
    with pytest.raises(ValueError):
        wavelet.wavelet_coeffs(funcs.sine(), db2, (0, 0))


def test_disjoint_supports_give_exact_zero(db2):
    f = funcs.bump(0.5, 0.5)
    c = wavelet.wavelet_coeffs(f, db2, (0, 0), k_range=(3, 6))
    assert all(v == 0 for v in c.values())


def test_resolution_budget(db2):
    f = funcs.bump(0, 1)
    with pytest.raises(ResolutionInsufficient):
        wavelet.wavelet_coeffs(f, db2, (-3, -3), budget=1e-9)
    wavelet.wavelet_coeffs(f, db2, (2, 2), budget=1e-2)


def test_polynomial_coefficients_vanish(db3):
    for deg in range(3):
        f = funcs.polynomial(np.arange(1.0, deg + 2))
        c = wavelet.wavelet_coeffs(f, db3, (-1, 2), k_range=(-4, 4))
        assert max(abs(v) for v in c.values()) <= 1e-8


# ------------------------------------------------------------- layers

def test_layer_of_basis_function(db3):
    f = wavelet.wavelet_fn(db3, 0, 5)
    t = np.linspace(5, 10, 97)
    _, l0 = wavelet.layer(f, 0, db3, t)
    _, l1 = wavelet.layer(f, 1, db3, t)
    assert np.abs(l0 - f.eval(t)).max() <= 1e-6
    assert np.abs(l1).max() <= 1e-6


def test_layer_of_zero(db2):
    zero = funcs.polynomial([0.0])
    _, v = wavelet.layer(zero, 0, db2, np.linspace(0, 1, 5), k_range=(-3, 3))
    assert not v.any()


def test_native_layer_matches_interpolated(db3):
    f = funcs.bump(1, 2)
    t, v = wavelet.layer(f, 1, db3)
    _, v2 = wavelet.layer(f, 1, db3, t)
    assert np.abs(v - v2).max() < 1e-12


def test_reconstruction_db3():
    W = wavelet.WaveletSystem(3, 10)
    f = funcs.bump(0, 1)
    t = np.arange(-256, 257) / 256.0
    err = np.abs(wavelet.reconstruct(f, W, (-20, 8), t) - f.eval(t)).max()
    assert err <= 1e-4


def test_layer_derivative_shape(db6):
    # ||f_j^(n)||_inf / (2^{jn} ||f_j||_inf) stays in a fixed band across j
    f = funcs.bump(0, 1)
    table = wavelet.wavelet_coeffs(f, db6, (-2, 4), as_map=False)
    ratios = []
    for j, (k0, c) in table.levels.items():
        _, v = wavelet.native_layer(db6, j, k0, c)
        _, d = wavelet.native_layer_derivative(db6, j, k0, c, 1)
        ratios.append(np.abs(d).max() / (2.0 ** j * np.abs(v).max()))
    assert max(ratios) / min(ratios) < 4


def test_coefficient_norm_equivalence(db3):
    f = funcs.bump(0, 1)
    q = 2.0
    table = wavelet.wavelet_coeffs(f, db3, (-2, 4), as_map=False)
    ratios = []
    for j, (k0, c) in table.levels.items():
        _, v = wavelet.native_layer(db3, j, k0, c)
        lhs = (np.sum(np.abs(v) ** q) * 2.0 ** -(10 + j)) ** (1 / q)
        rhs = 2.0 ** (j * (0.5 - 1 / q)) * np.sum(np.abs(c) ** q) ** (1 / q)
        ratios.append(lhs / rhs)
    # q = 2: orthonormality makes the ratio 1
    assert np.allclose(ratios, 1, atol=1e-4)


# ------------------------------------------------------------- Besov

def test_besov_of_basis_function(db3):
    f = wavelet.wavelet_fn(db3, 0, 0)
    for s, p, q in [(0.5, 2, 1), (1.0, 1, 2), (0.3, np.inf, 1)]:
        P = wavelet.BesovParams.for_system(s, p, q, (0, 0), db3)
        got = wavelet.besov_norm(f, P, db3).value
        w = db3.samples
        ref = np.abs(w).max() if np.isinf(p) else (np.sum(np.abs(w) ** p) * 2.0 ** -10) ** (1 / p)
        assert got == pytest.approx(ref, rel=1e-6)


def test_besov_of_zero(db3):
    zero = funcs.polynomial([0.0])
    P = wavelet.BesovParams.for_system(0.5, 2, 2, (-1, 1), db3)
    assert wavelet.besov_norm(zero, P, db3, k_range=(-3, 3)).value == 0


def test_besov_dilation(db6):
    f = funcs.bump(0, 1)
    s, p, q = 1.0, math.inf, 1.0
    table = wavelet.wavelet_coeffs(f, db6, (-4, 4), as_map=False)
    ref = wavelet.besov_from_coeffs(table, wavelet.BesovParams.for_system(s, p, q, (-4, 4), db6),
                                    db6).value
    for m in (-1, 2):
        P = wavelet.BesovParams.for_system(s, p, q, (-4 + m, 4 + m), db6)
        got = wavelet.besov_from_coeffs(table.dilated(m), P, db6).value
        assert got == pytest.approx(2.0 ** (m * s) * ref, rel=1e-8)


def test_besov_dilation_matches_direct_coefficients(db6):
    f, g = funcs.bump(0, 1), funcs.bump(0, 0.5)
    direct = wavelet.wavelet_coeffs(g, db6, (1, 1))
    reindexed = wavelet.wavelet_coeffs(f, db6, (0, 0), as_map=False).dilated(1).as_map()
    for key, v in direct.items():
        assert abs(v - reindexed.get(key, 0)) < 1e-6


def test_besov_truncation_monotone(db3):
    f = funcs.bump(0, 1)
    vals = [wavelet.besov_norm(f, wavelet.BesovParams.for_system(1.0, 2, 1, jr, db3), db3).value
            for jr in [(0, 1), (-1, 2), (-3, 3)]]
    assert vals[0] <= vals[1] <= vals[2]


def test_besov_regularity_gate(db2):
    with pytest.raises(InsufficientRegularity):
        wavelet.BesovParams.for_system(2.0, 1, 1, (0, 1), db2)


def test_besov_boundary_terms(db3):
    f = funcs.bump(0, 1)
    r = wavelet.besov_norm(f, wavelet.BesovParams.for_system(0.5, 2, 2, (-2, 3), db3), db3)
    assert r.boundary == (r.per_j[-2], r.per_j[3])
    assert set(r.per_j) == set(range(-2, 4))


def test_littlewood_paley_comparable(db6):
    f = funcs.bump(0, 1)
    s, p, q = 1.0, 2.0, 2.0
    wv = wavelet.besov_norm(f, wavelet.BesovParams.for_system(s, p, q, (-6, 6), db6), db6).value
    lp = wavelet.littlewood_paley_besov(f, s, p, q, 64, 1 << 14, (-6, 8))
    assert 0.1 < lp / wv < 10


# ------------------------------------------------------------- polynomial correction

def test_correction_of_polynomial(db6):
    f = funcs.polynomial([0.5, -1.0, 2.0])
    pc = wavelet.polynomial_correction(f, db6, 2, (-2, 2), (-1, 1), k_range=(-12, 12))
    assert np.allclose(pc.P_coeffs, [0.5, -1, 2], atol=1e-8)
    assert pc.residual <= 1e-8


def test_correction_of_zero(db3):
    pc = wavelet.polynomial_correction(funcs.polynomial([0.0]), db3, 1, (-1, 1), (-1, 1),
                                       k_range=(-4, 4))
    assert np.allclose(pc.P_coeffs, 0) and pc.residual == 0


def test_correction_of_single_wavelet(db3):
    f = wavelet.wavelet_fn(db3, 0, 0)
    pc = wavelet.polynomial_correction(f, db3, 1, (-2, 2), (-1, 6))
    # P is minus the Taylor part removed from the one layer: here w(0) = 0
    assert pc.residual <= 1e-5
    assert np.allclose(pc.P_coeffs, [db3.eval(0.0), 0], atol=1e-6)


def test_correction_of_bump(db6):
    f = funcs.bump(0, 1, order=4)
    pc = wavelet.polynomial_correction(f, db6, 2, (-12, 8), (-1, 1))
    assert pc.residual <= 1e-5
    assert len(pc.P_coeffs) == 3


def test_correction_divergence(db6):
    f = funcs.bump(0, 1, order=4)
    with pytest.raises(SeriesDivergence):
        wavelet.polynomial_correction(f, db6, 2, (-1, 1), (-1, 1))
