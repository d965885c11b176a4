"""Acceptance suite. Each test prints one PASS/FAIL line; run with ``pytest -s`` to see them."""
import time

import numpy as np
import pytest

from divschur import funcs, wavelet
from divschur.cli import ExperimentConfig, run


def report_line(number, title, ok, detail, elapsed, limit):
    ok = ok and elapsed < limit
    print(f"\n[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail} "
          f"({elapsed:.1f}s, limit {limit:g}s)")
    return ok


def run_kind(kind, **params):
    start = time.perf_counter()
    rep = run(ExperimentConfig(name=kind, kind=kind, parameters=params))
    return rep, time.perf_counter() - start


def worst_slack(rep):
    return min(c["slack"] for c in rep.cases if "slack" in c)


def test_01_divdiff_oracle():
    rep, dt = run_kind("divdiff-oracle", seed=7, cases=200, max_n=4, tol=1e-9)
    err = max(c["error"] / c["bound"] * 1e-9 for c in rep.cases)
    assert report_line(1, "divided-difference oracle", rep.passed and len(rep.cases) == 400,
                       f"max relative error {err:.2e} <= 1e-9 over 200 cases", dt, 5)


def test_02_monomial_expansion():
    rep, dt = run_kind("torus-expansion", seed=3, max_n=3, max_k=12, trials=50, tol=1e-8)
    worst = max(c["lhs"] for c in rep.cases if c["label"] == "expansion-max")
    card = all(c["passed"] for c in rep.cases if c["label"] == "cardinality")
    assert report_line(2, "monomial expansion", rep.passed and card,
                       f"max error {worst:.2e} <= 1e-8, cardinalities exact", dt, 30)


def test_03_moi_bound():
    ok, dt, worst, count = True, 0.0, 0.0, 0
    for exps in ([2, 2], [1, 2], [2, 1]):
        rep, t = run_kind("moi-bound", seed=11, N=16, trials=100, exponents=exps, tol=1e-8)
        ok &= rep.passed
        dt += t
        worst = max(worst, rep.extra_summary["max_ratio"])
        count += sum(not c["passed"] for c in rep.cases)
    assert report_line(3, "MOI l^p bound", ok and count == 0,
                       f"{count} violations in 300 trials, max ratio {worst:.3f}", dt, 60)


def test_04_cayley_transfer():
    rep, dt = run_kind("cayley-check", seed=5, orders=[1, 2, 3], trials=50, tol=1e-6)
    worst = max(c["error"] / c["bound"] * 1e-6 for c in rep.cases)
    assert report_line(4, "Cayley transfer", rep.passed,
                       f"max |lhs-rhs|/(1+|lhs|) {worst:.2e} <= 1e-6", dt, 60)


def test_05_split_partition():
    rep, dt = run_kind("split-partition", functions=["sin", "bump", "cube"], orders=[2, 3],
                       radii=[0.5, 1.0, 2.0], N=16, tol=1e-9)
    worst = max(c["lhs"] for c in rep.cases)
    assert report_line(5, "symbol split", rep.passed and len(rep.cases) == 18,
                       f"max residual {worst:.2e} <= 1e-9", dt, 60)


def test_06_dilation_law():
    rep, dt = run_kind("scaling-law", seed=1, n=2, N=24, lambdas=[0.5, 2.0], rel_tol=0.02,
                       tol=1e-9)
    ratios = [c["lhs"] for c in rep.cases if c["label"] == "norm-scaling"]
    assert report_line(6, "dilation law", rep.passed,
                       "norm ratios / lambda^n " + ", ".join(f"{r:.4f}" for r in ratios)
                       + " within 2%, pointwise identity to 1e-9", dt, 300)


def test_07_toeplitz_majorant():
    rep, dt = run_kind("toeplitz-bound", seed=2, N=32, exponents=[1.0, 2.0], restarts=16,
                       tol=1e-6)
    detail = ", ".join(f"{c['symbol']} p={c['p']:g}: {c['lhs']:.4f} <= {c['rhs']:.4f}"
                       for c in rep.cases)
    assert report_line(7, "Toeplitz majorant", rep.passed and len(rep.cases) == 4, detail,
                       dt, 300)


def test_08_schatten_suite():
    rep, dt = run_kind("pinching", seed=13, trials=100, tol=1e-9,
                       quasi_exponents=[0.25, 0.5, 1.0], pinch_exponents=[1, 2, 3, "inf"])
    assert report_line(8, "Schatten and pinching suite", rep.passed,
                       f"{len(rep.cases)} cases, worst slack {worst_slack(rep):.2e}", dt, 30)


def test_09_wavelet_health():
    start = time.perf_counter()
    f = funcs.bump(0, 1)
    t = np.arange(-512, 513) / 512.0
    gram = moment = recon = poly = 0.0
    for M in (2, 3, 4):
        W = wavelet.WaveletSystem(M, 12)
        G = W.gram(range(-2, 3), range(-8, 9))
        gram = max(gram, np.abs(G - np.eye(len(G))).max())
        moment = max(moment, np.abs(W.moments()).max())
        recon = max(recon, np.abs(wavelet.reconstruct(f, W, (-20, 8), t) - f.eval(t)).max())
        for deg in range(M):
            g = funcs.polynomial(np.arange(1.0, deg + 2))
            c = wavelet.wavelet_coeffs(g, W, (-1, 2), k_range=(-4, 4))
            poly = max(poly, max(abs(v) for v in c.values()))
    dt = time.perf_counter() - start
    ok = gram <= 1e-5 and moment <= 1e-6 and recon <= 1e-4 and poly <= 1e-8
    assert report_line(9, "wavelet health DB2-DB4 at J=12", ok,
                       f"Gram {gram:.1e}, moments {moment:.1e}, reconstruction {recon:.1e}, "
                       f"polynomial coefficients {poly:.1e}", dt, 120)


def test_10_besov_scaling():
    rep, dt = run_kind("besov-scaling", n=2, p=1.0, M=6, m_values=[-2, -1, 1, 2], tol=1e-8)
    worst = max(c["error"] / c["bound"] * 1e-8 for c in rep.cases)
    assert report_line(10, "Besov dyadic scaling", rep.passed,
                       f"max relative error {worst:.1e} <= 1e-8", dt, 60)


def test_11_main_theorem_probe():
    rep, dt = run_kind("main-theorem-probe", seed=0, n=2, exponents=[2.0, 2.0],
                       sizes=[16, 32, 64], growth_limit=2.0)
    ratios = [c["ratio"] for c in rep.cases if c["label"] == "ratio"]
    finite = all(np.isfinite(ratios))
    assert report_line(11, "main-theorem probe", rep.passed and finite,
                       "ratios " + ", ".join(f"{r:.4f}" for r in ratios)
                       + f", growth {rep.extra_summary['growth']:.3f} <= 2", dt, 600)
