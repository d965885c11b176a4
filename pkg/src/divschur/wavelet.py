"""Daubechies wavelets by the cascade algorithm, wavelet layers and Besov norms.

Conventions: ``h`` is the orthonormal low-pass filter (``sum h = sqrt 2``),
``phi`` the scaling function with ``phi(t) = sqrt2 sum_k h_k phi(2t - k)`` and
``int phi = 1``, and ``w(t) = sqrt2 sum_k g_k phi(2t - k)`` with
``g_k = (-1)^k h_{2M-1-k}`` the mother wavelet. Both live on ``[0, 2M-1]``.
``w_{j,k}(t) = 2^{j/2} w(2^j t - k)`` and the layer of ``f`` at scale ``j`` is
``f_j = sum_k <f, w_{j,k}> w_{j,k}``.

Samples are exact point values at dyadic points (up to rounding): the cascade
starts from the values at the integers, which solve a small eigenproblem, and
each doubling evaluates the refinement equation at the new midpoints.
"""
from __future__ import annotations

import csv
import math
import threading
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (InsufficientRegularity, IoFailure, NonConvergence,
                     ResolutionInsufficient, SeriesDivergence, UnsupportedOrder)
from .funcs import ScalarFn

SQRT2 = math.sqrt(2.0)
MAX_DEPTH = 20
# deepest level used to evaluate coarse layers off the native grid
EVAL_DEPTH = 18

# Hoelder exponents of the Daubechies scaling functions (M = 1 is discontinuous).
HOLDER = {1: 0.0, 2: 0.5500, 3: 1.0878, 4: 1.6179, 5: 1.9690, 6: 2.1891,
          7: 2.4604, 8: 2.7608, 9: 3.0736, 10: 3.3614}


# ---------------------------------------------------------------------- filter


def daubechies_filter(M: int) -> np.ndarray:
    """Minimal-phase Daubechies low-pass filter with M vanishing moments.

    Spectral factorization of ``P(y) = sum_{k<M} C(M-1+k, k) y^k`` with
    ``y = sin^2(omega/2)``, keeping the roots inside the unit disc.
    """
    if not isinstance(M, (int, np.integer)) or not 1 <= M <= 10:
        raise UnsupportedOrder(f"Daubechies order must be an integer in 1..10, got {M!r}")
    if M == 1:
        return np.array([1.0, 1.0]) / SQRT2
    # z^{M-1} P(y(z)) with y = (2 - z - 1/z)/4, as a polynomial in z
    yz = np.poly1d([-0.25, 0.5, -0.25])
    Q = np.poly1d([0.0])
    for k in range(M):
        Q = Q + comb(M - 1 + k, k) * (yz ** k) * np.poly1d([1.0] + [0.0] * (M - 1 - k))
    roots = np.roots(Q.coeffs)
    h = np.poly1d([1.0])
    for _ in range(M):
        h = h * np.poly1d([1.0, 1.0])
    for r in roots[np.abs(roots) < 1]:
        h = h * np.poly1d([1.0, -r])
    # highest power first: zeros inside the disc in z^-1, the standard ordering
    h = np.real(h.coeffs)
    return h * SQRT2 / h.sum()


def mirror_filter(h) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    L = len(h)
    return np.array([(-1) ** k * h[L - 1 - k] for k in range(L)])


def filter_defects(h) -> float:
    """Max violation of ``sum h = sqrt2`` and ``sum h_k h_{k+2m} = delta_m``."""
    h = np.asarray(h, dtype=float)
    worst = abs(h.sum() - SQRT2)
    for m in range(len(h) // 2):
        worst = max(worst, abs(np.dot(h[: len(h) - 2 * m], h[2 * m:]) - (m == 0)))
    return float(worst)


# --------------------------------------------------------------------- cascade


def _integer_values(h, r=0) -> np.ndarray:
    """``phi^{(r)}`` at the integers 0..L-1: eigenvector of the refinement
    matrix for the eigenvalue ``2^{-r}``."""
    L = len(h)
    n = L - 1
    A = np.zeros((n + 1, n + 1))
    for m in range(n + 1):
        for k in range(L):
            if 0 <= 2 * m - k <= n:
                A[m, 2 * m - k] += SQRT2 * h[k]
    lam, vec = np.linalg.eig(A)
    target = 2.0 ** (-r)
    i = int(np.argmin(np.abs(lam - target)))
    if abs(lam[i] - target) > 1e-8:
        raise NonConvergence(f"refinement matrix has no eigenvalue {target}")
    v = np.real(vec[:, i])
    # sum_m (-m)^r phi^{(r)}(m) = r!  (polynomial reproduction)
    m = np.arange(n + 1, dtype=float)
    scale = np.sum((-m) ** r * v) if r else v.sum()
    return v * (math.factorial(r) / scale)


def _refine(h, prev, level, factor):
    """Values on the grid ``2^-level`` from those on ``2^-(level-1)``."""
    L = len(h)
    n = L - 1
    half = 1 << (level - 1)
    size = n * (1 << level) + 1
    out = np.zeros(size)
    for k in range(L):
        lo = k * half
        hi = min(size, lo + len(prev))
        if lo < size:
            out[lo:hi] += h[k] * prev[: hi - lo]
    return SQRT2 * factor * out


def _wavelet_from(h, phi_prev, level, factor=1.0):
    return _refine(mirror_filter(h), phi_prev, level, factor)


def cascade(h, J: int, r: int = 0, check: float = 1e-6):
    """Scaling function and mother wavelet (or their r-th derivatives) on the
    grid ``2^-J`` over ``[0, L-1]``.

    Returns ``(t, phi, w)``. Raises :class:`NonConvergence` if the last
    doubling changes the shared grid points by more than ``check``.
    """
    if J < 1:
        raise ValueError("J must be >= 1")
    h = np.asarray(h, dtype=float)
    phis = [_integer_values(h, r)]
    factor = 2.0 ** r
    for level in range(1, J + 1):
        phis.append(_refine(h, phis[-1], level, factor))
    drift = np.max(np.abs(phis[-1][::2] - phis[-2]))
    if not drift <= check:
        raise NonConvergence(f"cascade drift {drift:.2e} at depth {J}")
    w = _wavelet_from(h, phis[-2], J, factor)
    t = np.arange(len(phis[-1])) / float(1 << J)
    return t, phis[-1], w


class WaveletSystem:
    """Sampled Daubechies system. Immutable once built; deeper sample levels
    are computed on demand under a lock, so instances can be shared."""

    def __init__(self, M: int, J: int = 10):
        if J < 4:
            raise ValueError("cascade depth J must be >= 4")
        self.M = int(M)
        self.filter = daubechies_filter(M)
        self.J = int(J)
        self.support = (0.0, float(2 * M - 1))
        self._lock = threading.Lock()
        self._phi = {0: [_integer_values(self.filter, 0)]}
        self._w: dict = {}
        self._ensure(0, J)
        drift = np.max(np.abs(self._phi[0][J][::2] - self._phi[0][J - 1]))
        if drift > 1e-6:
            raise NonConvergence(f"cascade drift {drift:.2e}")

    # sample management ------------------------------------------------------

    @property
    def beta(self) -> float:
        return HOLDER[self.M]

    @property
    def width(self) -> int:
        return 2 * self.M - 1

    def _ensure(self, r, depth):
        if depth > MAX_DEPTH:
            raise ResolutionInsufficient(f"depth {depth} exceeds {MAX_DEPTH}")
        with self._lock:
            if r not in self._phi:
                if r > 0 and (r >= self.M or self.beta <= r):
                    raise InsufficientRegularity(f"DB{self.M} has no derivative of order {r}")
                self._phi[r] = [_integer_values(self.filter, r)]
            levels = self._phi[r]
            while len(levels) <= depth:
                levels.append(_refine(self.filter, levels[-1], len(levels), 2.0 ** r))

    def phi_samples(self, depth=None, r=0) -> np.ndarray:
        depth = self.J if depth is None else depth
        self._ensure(r, depth)
        return self._phi[r][depth]

    def wavelet_samples(self, depth=None, r=0) -> np.ndarray:
        """``w^{(r)}`` at ``m 2^-depth``, m = 0 .. (2M-1) 2^depth."""
        depth = self.J if depth is None else depth
        key = (r, depth)
        if key not in self._w:
            if depth == 0:
                vals = self.wavelet_samples(1, r)[::2].copy()
            else:
                phi = self.phi_samples(depth - 1, r)
                vals = _wavelet_from(self.filter, phi, depth, 2.0 ** r)
            with self._lock:
                self._w[key] = vals
        return self._w[key]

    @property
    def samples(self) -> np.ndarray:
        return self.wavelet_samples()

    def grid(self, depth=None) -> np.ndarray:
        depth = self.J if depth is None else depth
        return np.arange(self.width * (1 << depth) + 1) / float(1 << depth)

    def eval(self, u, r=0, depth=None):
        """``w^{(r)}(u)`` by linear interpolation of the depth samples (exact on
        that dyadic grid), zero off the support."""
        depth = self.J if depth is None else depth
        vals = self.wavelet_samples(depth, r)
        return np.interp(u, self.grid(depth), vals, left=0.0, right=0.0)

    def to_csv(self, path) -> None:
        """Write columns ``t, phi, w`` at depth J."""
        try:
            with open(path, "w", newline="") as fh:
                wr = csv.writer(fh)
                wr.writerow(["t", "phi", "w"])
                for row in zip(self.grid(), self.phi_samples(), self.wavelet_samples()):
                    wr.writerow([repr(float(x)) for x in row])
        except OSError as exc:
            raise IoFailure(str(exc)) from exc

    # inner products ---------------------------------------------------------

    def inner(self, j1, k1, j2, k2) -> float:
        """``<w_{j1,k1}, w_{j2,k2}>`` by the trapezoid rule at depth J of the
        finer function (the coarser one is sampled deeper)."""
        if j1 > j2:
            j1, k1, j2, k2 = j2, k2, j1, k1
        a1, b1 = k1 / 2.0 ** j1, (k1 + self.width) / 2.0 ** j1
        a2, b2 = k2 / 2.0 ** j2, (k2 + self.width) / 2.0 ** j2
        if min(b1, b2) <= max(a1, a2):
            return 0.0
        d = j2 - j1
        fine = self.wavelet_samples(self.J)
        coarse = self.wavelet_samples(self.J + d)
        # t on the grid 2^-(J + j2); index into the fine system is m - k2 2^J
        step = 2.0 ** -(self.J + j2)
        lo = int(round(max(a1, a2) / step))
        hi = int(round(min(b1, b2) / step))
        m = np.arange(lo, hi + 1)
        f_idx = m - k2 * (1 << self.J)
        c_idx = m - (k1 << (self.J + d))
        ok = (f_idx >= 0) & (f_idx < len(fine)) & (c_idx >= 0) & (c_idx < len(coarse))
        s = np.dot(fine[f_idx[ok]], coarse[c_idx[ok]])
        return float(s * step * 2.0 ** ((j1 + j2) / 2.0))

    def gram(self, js: Iterable[int], ks: Iterable[int]) -> np.ndarray:
        idx = [(j, k) for j in js for k in ks]
        G = np.zeros((len(idx), len(idx)))
        for a, (j1, k1) in enumerate(idx):
            for b in range(a, len(idx)):
                j2, k2 = idx[b]
                G[a, b] = G[b, a] = self.inner(j1, k1, j2, k2)
        return G

    def moments(self, count=None) -> np.ndarray:
        """``int t^m w(t) dt`` for m < count (default M)."""
        count = self.M if count is None else count
        t = self.grid()
        w = self.samples
        dt = 2.0 ** -self.J
        return np.array([np.dot(t ** m, w) * dt for m in range(count)])


# ----------------------------------------------------------------- regularity


def require_regularity(M: int, n: int, p: float) -> None:
    """Refuse unless ``n + 1 < beta p`` for the Hoelder exponent of DB-M."""
    beta = HOLDER[M]
    if not n + 1 < beta * p:
        raise InsufficientRegularity(
            f"DB{M} has beta = {beta}; need n + 1 < beta p with n={n}, p={p}")


def min_order_for(n: int, p: float) -> int:
    for M in sorted(HOLDER):
        if n + 1 < HOLDER[M] * p:
            return M
    raise InsufficientRegularity(f"no Daubechies order up to 10 has beta > {(n + 1) / p}")


# ------------------------------------------------------------- coefficients


class CoeffTable(NamedTuple):
    """Coefficients ``<f, w_{j,k}>`` for ``k = k0 .. k0 + len(c) - 1`` per level."""

    levels: dict  # j -> (k0, ndarray)

    def as_map(self) -> dict:
        out = {}
        for j, (k0, c) in sorted(self.levels.items()):
            for i, v in enumerate(c):
                out[(j, k0 + i)] = float(v)
        return out

    def dilated(self, m: int) -> "CoeffTable":
        """Table of ``f(2^m .)``: ``<f(2^m .), w_{j,k}> = 2^{-m/2} <f, w_{j-m,k}>``."""
        s = 2.0 ** (-m / 2.0)
        return CoeffTable({j + m: (k0, s * c) for j, (k0, c) in self.levels.items()})


def _k_range(W, j, window):
    a, b = window
    sc = 2.0 ** j
    return int(math.floor(a * sc - W.width)) + 1, int(math.ceil(b * sc)) - 1


def _level_coeffs(f, W, j, k_lo, k_hi, budget, interp_points):
    if k_hi < k_lo:
        return np.zeros(0)
    ks = np.arange(k_lo, k_hi + 1)
    native_step = 2.0 ** -(W.J + j)
    supported = f.support is not None
    if supported:
        a, b = f.support
        f_res = (b - a) / interp_points
    if supported and native_step > f_res:
        # wide wavelet, narrow f: integrate in t over supp f on a dyadic grid
        # so that the wavelet is read at exact cascade points
        e = int(math.ceil(math.log2(1.0 / f_res)))
        dt = 2.0 ** -e
        if budget is not None and dt > budget:
            raise ResolutionInsufficient(f"quadrature step {dt:.3g} exceeds budget {budget:.3g}")
        t = np.arange(math.floor(a / dt), math.ceil(b / dt) + 1) * dt
        ft = f.eval(t)
        depth = min(EVAL_DEPTH, max(W.J, e - j))
        wt = W.eval(2.0 ** j * t[None, :] - ks[:, None], 0, depth)
        return (wt @ ft) * dt * 2.0 ** (j / 2.0)
    # native path: u-grid of depth D, t step 2^-(D+j)
    D = min(W.J, max(6, W.J - max(j, 0)))
    step = 2.0 ** -(D + j)
    if budget is not None and step > budget:
        raise ResolutionInsufficient(f"quadrature step {step:.3g} exceeds budget {budget:.3g}")
    u = W.grid(D)
    w = W.wavelet_samples(D)
    keep = w != 0
    u, w = u[keep], w[keep]
    out = np.empty(len(ks))
    # chunk over k to bound memory
    chunk = max(1, (1 << 22) // max(1, len(u)))
    for s in range(0, len(ks), chunk):
        kk = ks[s:s + chunk]
        vals = f.eval((u[None, :] + kk[:, None]) / 2.0 ** j)
        out[s:s + chunk] = vals @ w
    return out * 2.0 ** -D * 2.0 ** (-j / 2.0)


def wavelet_coeffs(f: ScalarFn, W: WaveletSystem, j_range, k_range=None,
                   budget: float | None = None, interp_points: int = 4096,
                   as_map: bool = True):
    """``<f, w_{j,k}>`` for ``j`` in ``j_range`` (inclusive pair or iterable).

    ``k_range`` (inclusive pair) is required when ``f`` has no support;
    otherwise it defaults to every k whose wavelet meets ``supp f``.
    Quadrature runs on the cascade grid; when that grid is coarser than
    ``supp f / interp_points`` the integral is taken in t over ``supp f`` with
    interpolated wavelet values instead. ``budget`` caps the quadrature step.
    """
    js = _js(j_range)
    levels = {}
    for j in js:
        if k_range is not None:
            k_lo, k_hi = k_range
        elif f.support is not None:
            k_lo, k_hi = _k_range(W, j, f.support)
        else:
            raise ValueError("k_range is required for functions without support")
        levels[j] = (k_lo, _level_coeffs(f, W, j, k_lo, k_hi, budget, interp_points))
    table = CoeffTable(levels)
    return table.as_map() if as_map else table


def _js(j_range):
    if isinstance(j_range, tuple) and len(j_range) == 2:
        return list(range(j_range[0], j_range[1] + 1))
    return list(j_range)


# ---------------------------------------------------------------------- layers


def _layer_eval(W, j, k0, c, t, r=0):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    if len(c) == 0:
        return out
    scale = 2.0 ** (j / 2.0 + j * r)
    u = 2.0 ** j * t
    # keep the t-resolution at 2^-J for coarse layers
    depth = min(EVAL_DEPTH, max(W.J, W.J - j))
    for i in np.flatnonzero(c):
        out += c[i] * W.eval(u - (k0 + i), r, depth)
    return scale * out


def layer(f: ScalarFn, j: int, W: WaveletSystem, t=None, r: int = 0, **kw):
    """Samples of ``f_j^{(r)}``; on ``t`` if given, else on the native grid
    ``2^-(J+j)`` over the supports of the contributing wavelets.

    Returns ``(t, values)``.
    """
    table = wavelet_coeffs(f, W, (j, j), as_map=False, **kw)
    k0, c = table.levels[j]
    if t is None:
        return native_layer(W, j, k0, c)
    return np.asarray(t, dtype=float), _layer_eval(W, j, k0, c, t, r)


def native_layer(W: WaveletSystem, j: int, k0: int, c: np.ndarray):
    """``f_j`` at ``m 2^-(J+j)`` from its coefficients, by exact overlap-add."""
    w = W.samples
    span = 1 << W.J
    if len(c) == 0:
        return np.zeros(1), np.zeros(1)
    size = (len(c) - 1 + W.width) * span + 1
    out = np.zeros(size)
    for i in np.flatnonzero(c):
        out[i * span: i * span + len(w)] += c[i] * w
    t = (k0 * span + np.arange(size)) * 2.0 ** -(W.J + j)
    return t, out * 2.0 ** (j / 2.0)


def reconstruct(f: ScalarFn, W: WaveletSystem, j_range, t, **kw) -> np.ndarray:
    """``sum_j f_j(t)`` over ``j_range``."""
    table = wavelet_coeffs(f, W, j_range, as_map=False, **kw)
    return sum(_layer_eval(W, j, k0, c, t) for j, (k0, c) in table.levels.items())


# ----------------------------------------------------------------------- Besov


def _lp(v, p, dt):
    a = np.abs(v)
    if math.isinf(p):
        return float(a.max()) if a.size else 0.0
    return float((np.sum(a ** p) * dt) ** (1.0 / p))


@dataclass(frozen=True)
class BesovParams:
    s: float
    p: float
    q: float
    j_range: tuple
    beta: float

    def __post_init__(self):
        if not self.p > 0 or not self.q > 0:
            raise ValueError("p and q must be positive")
        if not self.beta > abs(self.s):
            raise InsufficientRegularity(
                f"wavelet regularity {self.beta} must exceed |s| = {abs(self.s)}")
        lo, hi = self.j_range
        if lo > hi:
            raise ValueError("empty j_range")

    @classmethod
    def for_system(cls, s, p, q, j_range, W: WaveletSystem) -> "BesovParams":
        return cls(float(s), float(p), float(q), tuple(j_range), W.beta)


class BesovResult(NamedTuple):
    value: float
    per_j: dict  # j -> 2^{js} ||f_j||_p
    boundary: tuple  # (term at min j, term at max j)


def besov_from_coeffs(table: CoeffTable, P: BesovParams, W: WaveletSystem) -> BesovResult:
    """Truncated ``(sum_j 2^{jsq} ||f_j||_p^q)^{1/q}`` with layer norms on the
    native grid ``2^-(J+j)``."""
    lo, hi = P.j_range
    per_j = {}
    for j in range(lo, hi + 1):
        if j in table.levels:
            k0, c = table.levels[j]
            _, v = native_layer(W, j, k0, c)
            nrm = _lp(v, P.p, 2.0 ** -(W.J + j))
        else:
            nrm = 0.0
        per_j[j] = 2.0 ** (j * P.s) * nrm
    terms = np.array(list(per_j.values()))
    if math.isinf(P.q):
        value = float(terms.max())
    else:
        value = float(np.sum(terms ** P.q) ** (1.0 / P.q))
    return BesovResult(value, per_j, (per_j[lo], per_j[hi]))


def besov_norm(f: ScalarFn, P: BesovParams, W: WaveletSystem, **kw) -> BesovResult:
    table = wavelet_coeffs(f, W, P.j_range, as_map=False, **kw)
    return besov_from_coeffs(table, P, W)


def littlewood_paley_besov(f: ScalarFn, s: float, p: float, q: float, halfwidth: float,
                           resolution: int, j_range) -> float:
    """Soft cross-check: ``(sum_j 2^{jsq} ||Delta_j f||_p^q)^{1/q}`` with
    ``Delta_j`` the FFT multiplier ``rho(xi/2^j) - rho(xi/2^{j-1})``."""
    from .schur.symbols import rho

    dt = 2.0 * halfwidth / resolution
    t = -halfwidth + dt * np.arange(resolution)
    spec = np.fft.fft(f.eval(t))
    xi = np.fft.fftfreq(resolution, d=dt)
    terms = []
    for j in _js(j_range):
        mult = rho(xi / 2.0 ** j) - rho(xi / 2.0 ** (j - 1))
        piece = np.fft.ifft(spec * mult)
        terms.append(2.0 ** (j * s) * _lp(piece, p, dt))
    terms = np.array(terms)
    return float(terms.max()) if math.isinf(q) else float(np.sum(terms ** q) ** (1.0 / q))


# ------------------------------------------------------- polynomial correction


class PolynomialCorrection(NamedTuple):
    P_coeffs: np.ndarray  # increasing powers
    layers: dict  # j -> callable t -> corrected layer
    residual: float
    derivative_sums: tuple  # (sum_j ||f_j^{(n)}||_inf, last-term share)


def polynomial_correction(f: ScalarFn, W: WaveletSystem, n: int, j_range,
                          window: Sequence[float], probes: int = 257,
                          budget: float = 1e-3, k_range=None,
                          zero_tol: float = 1e-8) -> PolynomialCorrection:
    """Write ``f = P + sum_j (f_j - sum_{k<n} t^k f_j^{(k)}(0)/k!)`` on a window.

    ``P`` (degree <= n) is fitted at n+1 Chebyshev points of ``window``. The
    residual is the max of ``|f - P - sum of corrected layers|`` over
    ``probes`` points of the window.

    Raises
    ------
    SeriesDivergence
        if the boundary terms of ``sum_j ||f_j^{(n)}||_inf`` exceed ``budget``
        times the sum.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    a, b = window
    table = wavelet_coeffs(f, W, j_range, k_range=k_range, as_map=False)
    tt = np.linspace(a, b, probes)

    layers = {}
    dsum = []
    for j, (k0, c) in table.levels.items():
        taylor = [_layer_eval(W, j, k0, c, np.zeros(1), r)[0] / math.factorial(r)
                  for r in range(n)]

        def corrected(t, j=j, k0=k0, c=c, taylor=tuple(taylor)):
            t = np.asarray(t, dtype=float)
            return _layer_eval(W, j, k0, c, t) - sum(tk * t ** r for r, tk in enumerate(taylor))

        layers[j] = corrected
        if len(c):
            _, v = native_layer_derivative(W, j, k0, c, n)
            dsum.append(float(np.abs(v).max()))
        else:
            dsum.append(0.0)
    total = float(sum(dsum))
    # a sum at rounding level (polynomial input) has nothing to diverge
    share = max(dsum[0], dsum[-1]) / total if total > zero_tol else 0.0
    if share > budget:
        raise SeriesDivergence(
            f"boundary term carries {share:.2e} of sum_j ||f_j^({n})||_inf")

    def rest(t):
        return sum(g(t) for g in layers.values()) if layers else np.zeros_like(t)

    x = 0.5 * (a + b) + 0.5 * (b - a) * np.cos(np.pi * (np.arange(n + 1) + 0.5) / (n + 1))
    V = np.vander(x, n + 1, increasing=True)
    coeffs = np.linalg.solve(V, f.eval(x) - rest(x))
    resid = f.eval(tt) - np.polynomial.polynomial.polyval(tt, coeffs) - rest(tt)
    return PolynomialCorrection(coeffs, layers, float(np.abs(resid).max()), (total, share))


def native_layer_derivative(W: WaveletSystem, j: int, k0: int, c: np.ndarray, r: int):
    """``f_j^{(r)}`` at ``m 2^-(J+j)`` by overlap-add of derivative samples."""
    w = W.wavelet_samples(W.J, r)
    span = 1 << W.J
    size = (len(c) - 1 + W.width) * span + 1
    out = np.zeros(size)
    for i in np.flatnonzero(c):
        out[i * span: i * span + len(w)] += c[i] * w
    t = (k0 * span + np.arange(size)) * 2.0 ** -(W.J + j)
    return t, out * 2.0 ** (j / 2.0 + j * r)


def wavelet_fn(W: WaveletSystem, j: int = 0, k: int = 0, order: int = 0) -> ScalarFn:
    """``w_{j,k}`` as a :class:`ScalarFn` (derivatives up to ``order``)."""
    sc = 2.0 ** j

    def make(r):
        return lambda t: sc ** (0.5 + r) * W.eval(sc * np.asarray(t, dtype=float) - k, r)

    return ScalarFn(tuple(make(r) for r in range(order + 1)),
                    (k / sc, (k + W.width) / sc), f"w_{j},{k}")
