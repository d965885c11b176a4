"""Certified lower bounds for multiplier norms ``S_{p_1} x .. x S_{p_n} -> S_p``.

Block-coordinate ascent: with all slots but one fixed, ``x_j -> T_psi(xs)`` is
linear, and each slot is improved by a norming ("power") step followed by
projected gradient steps on the ``p_j``-sphere. Only improvements are kept, so
the best ratio is nondecreasing. The reported value is recomputed from the
returned witnesses.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..errors import ArityMismatch
from ..schatten import ExponentTuple, dual_element, norm_gradient, schatten_norm
from ..symbol import SymbolGrid
from .contract import apply_schur, slot_adjoint

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormEstimate:
    value: float
    witnesses: tuple
    iterations: int
    seed: int
    converged: bool
    p_list: tuple = ()
    restart: int = -1
    history: tuple = ()
    degenerate: bool = False

    def recompute(self, psi) -> float:
        """Ratio ``||T(witnesses)||_p / prod ||x_i||_{p_i}`` from scratch."""
        if self.degenerate:
            return 0.0
        exps = ExponentTuple(self.p_list)
        return ratio(psi, self.witnesses, exps)


def ratio(psi, xs, exps: ExponentTuple) -> float:
    den = 1.0
    for x, q in zip(xs, exps.p_list):
        den *= schatten_norm(x, q)
    if den == 0:
        return 0.0
    return schatten_norm(apply_schur(psi, xs), exps.p) / den


def _normalize(x, q):
    nrm = schatten_norm(x, q)
    return x / nrm if nrm > 0 else x


def _random_start(rng, N, n, exps):
    xs = []
    for q in exps.p_list:
        x = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
        xs.append(_normalize(x, q))
    return xs


class _Restart:
    def __init__(self, sym, exps, rng, max_iters, step, tol, grad_steps):
        self.sym = sym
        self.exps = exps
        self.rng = rng
        self.max_iters = max_iters
        self.step = step
        self.tol = tol
        self.grad_steps = grad_steps

    def value(self, xs):
        return ratio(self.sym, xs, self.exps)

    def power_step(self, xs, j):
        p_out = max(self.exps.p, 1.0)
        q_in = max(self.exps.p_list[j], 1.0)
        Y = apply_schur(self.sym, xs)
        B = dual_element(Y, p_out)
        Z = slot_adjoint(self.sym, xs, j, B)
        if not np.any(Z):
            return None
        cand = dual_element(Z, q_in)
        return _normalize(cand, self.exps.p_list[j])

    def gradient_dir(self, xs, j):
        # gradient of log ||T(xs)||_p - log ||x_j||_{p_j} in x_j
        Y = apply_schur(self.sym, xs)
        gout, ny = norm_gradient(Y, self.exps.p)
        if ny == 0:
            return None
        gin, nx = norm_gradient(xs[j], self.exps.p_list[j])
        g = slot_adjoint(self.sym, xs, j, gout) / ny - gin / nx
        gn = np.linalg.norm(g)
        return None if gn == 0 else g / gn

    def run(self, xs):
        n = len(xs)
        best = self.value(xs)
        eta = [self.step] * n
        history = [best]
        converged = False
        it = 0
        for it in range(1, self.max_iters + 1):
            before = best
            for j in range(n):
                cand = self.power_step(xs, j)
                if cand is not None:
                    trial = xs[:j] + [cand] + xs[j + 1:]
                    v = self.value(trial)
                    if v > best:
                        xs, best = trial, v
                for _ in range(self.grad_steps):
                    d = self.gradient_dir(xs, j)
                    if d is None:
                        break
                    scale = np.linalg.norm(xs[j])
                    cand = _normalize(xs[j] + eta[j] * scale * d, self.exps.p_list[j])
                    trial = xs[:j] + [cand] + xs[j + 1:]
                    v = self.value(trial)
                    if v > best:
                        xs, best = trial, v
                        eta[j] = min(1.0, eta[j] * 1.25)
                    else:
                        eta[j] *= 0.8
            history.append(best)
            if best - before <= self.tol * max(best, 1e-300):
                converged = True
                break
        return xs, best, it, converged, history


def estimate_norm(psi, exps, restarts: int = 16, max_iters: int = 200, step: float = 0.5,
                  tol: float = 1e-7, seed: int = 0, grad_steps: int = 2,
                  workers: int = 1, init=None) -> NormEstimate:
    """Lower bound for ``||psi||_{m_{p_1..p_n}}`` on the symbol's grid.

    Parameters
    ----------
    psi : SymbolGrid or ndarray
        Symbol of arity n.
    exps : ExponentTuple or sequence of n exponents
    restarts : int
        Independent random starts; restart r uses the RNG stream
        ``default_rng([seed, r])`` so the result does not depend on ``workers``.
    init : sequence of n matrices, optional
        Extra deterministic start, run before the random ones.

    Returns
    -------
    NormEstimate
        ``value`` equals the ratio recomputed from ``witnesses``; if ``psi``
        vanishes identically the estimate is 0 and ``degenerate`` is set.
    """
    if not isinstance(exps, ExponentTuple):
        exps = ExponentTuple(tuple(exps))
    sym = psi.dense() if isinstance(psi, SymbolGrid) else np.asarray(psi)
    n = sym.ndim - 1
    if n != exps.n:
        raise ArityMismatch(f"symbol arity {n} but {exps.n} exponents")
    N = sym.shape[0]
    if not np.any(sym):
        log.warning("estimate_norm: symbol vanishes identically")
        return NormEstimate(0.0, (), 0, seed, True, exps.p_list, -1, (0.0,), True)
    sym = np.ascontiguousarray(sym, dtype=complex)

    def one(r):
        rng = np.random.default_rng([seed, r])
        if r < 0:
            xs = [_normalize(np.asarray(x, dtype=complex), q) for x, q in zip(init, exps.p_list)]
        else:
            xs = _random_start(rng, N, n, exps)
        runner = _Restart(sym, exps, rng, max_iters, step, tol, grad_steps)
        return (r,) + runner.run(xs)

    jobs = list(range(restarts))
    if init is not None:
        jobs = [-1] + jobs
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(one, jobs))
    else:
        results = [one(r) for r in jobs]
    # order-independent merge: highest value, lowest restart index on ties
    r, xs, _, iters, conv, hist = max(results, key=lambda t: (t[2], -t[0]))
    xs = tuple(_normalize(x, q) for x, q in zip(xs, exps.p_list))
    value = ratio(sym, xs, exps)
    return NormEstimate(value, xs, iters, seed, conv, exps.p_list, r, tuple(hist))
