"""Quick corpus of exact or near-exact examples, run by ``divschur selftest``."""
from __future__ import annotations

import math

import numpy as np

from .. import funcs, torus, wavelet
from ..schatten import BlockPartition, block_expectation, holder_combine, p_sharp, schatten_norm
from ..schur import apply_schur, cutoff_rho, estimate_norm

CHECKS = []


def check(fn):
    CHECKS.append(fn)
    return fn


@check
def divdiff_cubic():
    assert abs(funcs.divdiff_eval(funcs.monomial(3), [0, 1, 2]) - 3) < 1e-12


@check
def divdiff_confluent_sine():
    assert abs(funcs.divdiff_eval(funcs.sine(), [0, 0]) - 1) < 1e-12


@check
def divdiff_square():
    assert abs(funcs.divdiff_eval(funcs.monomial(2), [1, 3]) - 4) < 1e-12


@check
def compositions_order():
    assert funcs.enumerate_compositions(3, 2)[0] == (2, 0, 0)
    assert len(funcs.enumerate_compositions(3, 2)) == 6


@check
def schatten_identity():
    assert abs(schatten_norm(np.eye(4), 1) - 4) < 1e-12
    assert abs(schatten_norm(np.eye(4), 2) - 2) < 1e-12


@check
def holder_and_sharp():
    assert holder_combine([2, 2]) == 1.0
    assert p_sharp(1.0) == math.inf and abs(p_sharp(0.5) - 1.0) < 1e-15


@check
def pinching_identity_blocks():
    x = np.arange(16.0).reshape(4, 4)
    assert np.array_equal(block_expectation(x, BlockPartition(((0, 4),))), x)


@check
def hadamard_ones():
    x = np.arange(9.0).reshape(3, 3)
    assert np.array_equal(apply_schur(np.ones((3, 3)), [x]), x)


@check
def cutoff_plateau():
    assert cutoff_rho(1.0, 0.5) == 1.0 and cutoff_rho(1.0, 2.5) == 0.0


@check
def constant_symbol_norm():
    est = estimate_norm(np.ones((4, 4)), [2], restarts=2, max_iters=20)
    assert abs(est.value - 1) < 1e-6


@check
def monomial_small_k_empty():
    assert len(torus.monomial_divdiff_coeffs(1, 2)) == 0
    assert len(torus.monomial_divdiff_coeffs(5, 2)) == math.comb(5, 2)


@check
def cayley_roundtrip():
    assert abs(torus.cayley_inv(torus.cayley(0.7)) - 0.7) < 1e-12


@check
def haar_filter():
    h = wavelet.daubechies_filter(1)
    assert np.allclose(h, [1 / math.sqrt(2)] * 2)


@check
def haar_cascade_indicator():
    W = wavelet.WaveletSystem(1, 6)
    assert np.all(W.phi_samples()[:-1] == 1.0)


@check
def zero_function_coeffs():
    W = wavelet.WaveletSystem(2, 6)
    zero = funcs.polynomial([0.0])
    c = wavelet.wavelet_coeffs(zero, W, (0, 1), k_range=(-2, 2))
    assert all(v == 0 for v in c.values())


def run_selftest():
    out = []
    for fn in CHECKS:
        try:
            fn()
            out.append((fn.__name__, True, ""))
        except Exception as exc:  # report every failure, keep going
            out.append((fn.__name__, False, f"{type(exc).__name__}: {exc}"))
    return out
