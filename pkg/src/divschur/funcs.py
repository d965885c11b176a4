"""Scalar functions with derivatives, divided differences, compositions."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from . import _kernels
from .errors import InsufficientDerivatives, OrderMismatch

DEFAULT_TOL = 1e-12
# dense grid tensors above this many entries are evaluated lazily
DENSE_LIMIT = 2 ** 24


@dataclass(frozen=True)
class ScalarFn:
    """A function of one real variable bundled with its derivatives.

    ``derivs[d]`` evaluates the d-th derivative and must accept numpy arrays.
    If ``support`` is given the function and all its derivatives vanish
    outside the closed interval.
    """

    derivs: tuple
    support: tuple | None = None
    name: str = "f"

    @property
    def order(self) -> int:
        return len(self.derivs) - 1

    def eval(self, t, d: int = 0):
        if d < 0 or d > self.order:
            raise InsufficientDerivatives(
                f"{self.name}: derivative {d} requested, order is {self.order}"
            )
        t_arr = np.asarray(t, dtype=float)
        out = np.asarray(self.derivs[d](t_arr))
        if out.shape != t_arr.shape:
            out = np.broadcast_to(out, t_arr.shape).copy()
        if self.support is not None:
            a, b = self.support
            out = np.where((t_arr < a) | (t_arr > b), 0.0, out)
        if out.ndim == 0:
            return out[()]
        return out

    __call__ = eval

    def taylor_coeffs(self, t0: float, degree: int) -> np.ndarray:
        """Coefficients of the Taylor polynomial in powers of (t - t0)."""
        return np.array(
            [self.eval(t0, d) / math.factorial(d) for d in range(degree + 1)]
        )


# ---------------------------------------------------------------- constructors


def polynomial(coeffs: Sequence[float], order: int | None = None, name=None) -> ScalarFn:
    """Polynomial with ``coeffs`` in increasing-power order."""
    c = np.asarray(coeffs, dtype=float)
    deg = len(c) - 1
    if order is None:
        order = max(deg + 1, 8)
    derivs = []
    cur = c
    for _ in range(order + 1):
        derivs.append(_polyval_closure(cur))
        cur = P.polyder(cur) if len(cur) > 1 else np.zeros(1)
    return ScalarFn(tuple(derivs), None, name or f"poly{deg}")


def _polyval_closure(c):
    c = np.array(c)
    return lambda t: P.polyval(t, c)


def monomial(m: int, order: int | None = None) -> ScalarFn:
    c = np.zeros(m + 1)
    c[m] = 1.0
    return polynomial(c, order=order, name=f"t^{m}")


def sine(omega: float = 1.0, phase: float = 0.0, order: int = 12) -> ScalarFn:
    """``sin(omega*t + phase)``."""
    derivs = tuple(
        (lambda t, d=d: omega ** d * np.sin(omega * t + phase + d * np.pi / 2))
        for d in range(order + 1)
    )
    return ScalarFn(derivs, None, "sin")


def cosine(omega: float = 1.0, order: int = 12) -> ScalarFn:
    return sine(omega, np.pi / 2, order)


def gaussian(sigma: float = 1.0, order: int = 8) -> ScalarFn:
    """``exp(-t^2 / (2 sigma^2))`` via probabilists' Hermite polynomials."""
    from numpy.polynomial import hermite_e as He

    derivs = []
    for d in range(order + 1):
        c = np.zeros(d + 1)
        c[d] = 1.0
        derivs.append(
            lambda t, d=d, c=c: (-1.0) ** d
            * sigma ** (-d)
            * He.hermeval(t / sigma, c)
            * np.exp(-0.5 * (t / sigma) ** 2)
        )
    return ScalarFn(tuple(derivs), None, "gauss")


def _bump_numerators(order: int):
    # d^m/ds^m exp(-1/(1-s^2)) = Q_m(s) (1-s^2)^(-2m) exp(-1/(1-s^2))
    D = np.array([1.0, 0.0, -1.0])
    Q = [np.array([1.0])]
    for m in range(order):
        q = Q[-1]
        nxt = P.polyadd(
            P.polymul(P.polyder(q) if len(q) > 1 else [0.0], P.polymul(D, D)),
            P.polysub(
                P.polymul(np.array([0.0, 4.0 * m]), P.polymul(q, D)),
                P.polymul(np.array([0.0, 2.0]), q),
            ),
        )
        Q.append(P.polytrim(nxt, 0.0) if np.any(nxt) else np.zeros(1))
    return Q


def bump(center: float = 0.0, radius: float = 1.0, order: int = 8,
         amplitude: float = 1.0) -> ScalarFn:
    """C-infinity bump ``A exp(-1/(1-s^2))``, ``s=(t-center)/radius``, on |s|<1."""
    Q = _bump_numerators(order)

    def make(m):
        q = Q[m]

        def f(t):
            s = (np.asarray(t, dtype=float) - center) / radius
            inside = np.abs(s) < 1.0
            D = np.where(inside, 1.0 - s * s, 1.0)
            with np.errstate(over="ignore", under="ignore", divide="ignore"):
                logmag = -1.0 / D - 2 * m * np.log(D)
                val = P.polyval(s, q) * np.exp(logmag)
            return np.where(inside, amplitude * val * radius ** (-m), 0.0)

        return f

    return ScalarFn(tuple(make(m) for m in range(order + 1)),
                    (center - radius, center + radius), "bump")


def shifted(f: ScalarFn, k: float) -> ScalarFn:
    """``t -> f(t - k)``."""
    sup = None if f.support is None else (f.support[0] + k, f.support[1] + k)
    return ScalarFn(tuple((lambda t, g=g: g(np.asarray(t) - k)) for g in f.derivs),
                    sup, f"{f.name}(.-{k})")


def linear_combination(terms: Sequence[tuple[float, ScalarFn]]) -> ScalarFn:
    terms = [(c, g) for c, g in terms if c != 0]
    if not terms:
        return ScalarFn((lambda t: np.zeros_like(np.asarray(t, dtype=float)),), (0.0, 0.0), "0")
    order = min(g.order for _, g in terms)
    derivs = tuple(
        (lambda t, d=d: sum(c * g.eval(t, d) for c, g in terms)) for d in range(order + 1)
    )
    sups = [g.support for _, g in terms]
    support = None
    if all(s is not None for s in sups):
        support = (min(s[0] for s in sups), max(s[1] for s in sups))
    return ScalarFn(derivs, support, "sum")


# ---------------------------------------------------------- divided differences


def _clusters(z: np.ndarray, tol: float) -> np.ndarray:
    """Cluster labels for sorted nodes; neighbours within ``tol`` chain together."""
    labels = np.zeros(len(z), dtype=int)
    for i in range(1, len(z)):
        labels[i] = labels[i - 1] + (abs(z[i] - z[i - 1]) > tol)
    return labels


def divdiff_eval(f: ScalarFn, nodes: Sequence[float], k: int | None = None,
                 tol: float = DEFAULT_TOL):
    """Divided difference ``f^[k](t_0, ..., t_k)``.

    Nodes are sorted and coincident nodes (within ``tol``) are grouped; each
    group of multiplicity m consumes derivatives up to order m-1 in a
    confluent Newton table, so the result does not depend on node order.

    Raises
    ------
    OrderMismatch
        if ``len(nodes) != k + 1``.
    InsufficientDerivatives
        if a node repeats m times but ``f.order < m - 1``.
    """
    z = np.sort(np.asarray(nodes, dtype=float))
    if k is None:
        k = len(z) - 1
    if len(z) != k + 1:
        raise OrderMismatch(f"{len(z)} nodes given for order {k}")
    labels = _clusters(z, tol)
    # use the first node of each cluster as its representative
    first = np.r_[0, np.flatnonzero(np.diff(labels)) + 1]
    rep = z[first[labels]]
    mult = np.bincount(labels).max()
    if mult - 1 > f.order:
        raise InsufficientDerivatives(
            f"node multiplicity {mult} needs order {mult - 1}, {f.name} has {f.order}"
        )
    q = [f.eval(t) for t in rep]
    for j in range(1, k + 1):
        for i in range(k - j + 1):
            if labels[i] == labels[i + j]:
                q[i] = f.eval(rep[i], j) / math.factorial(j)
            else:
                q[i] = (q[i + 1] - q[i]) / (rep[i + j] - rep[i])
    return q[0]


def divdiff_recursive(f: ScalarFn, nodes: Sequence[float], tol: float = DEFAULT_TOL):
    """Direct two-term recursion, used as an independent oracle.

    Follows the defining quotient literally, first node against second node,
    falling back to another distinct pair or to ``f^(k)/k!`` when every node
    coincides. Exponential in the order; keep k small.
    """
    t = [float(x) for x in nodes]
    k = len(t) - 1
    if k == 0:
        return f.eval(t[0])
    if abs(t[0] - t[1]) > tol:
        i, j = 0, 1
    else:
        others = [m for m in range(1, k + 1) if abs(t[m] - t[0]) > tol]
        if not others:
            return f.eval(t[0], k) / math.factorial(k)
        i, j = 0, others[0]
    without_j = t[:j] + t[j + 1:]
    without_i = t[:i] + t[i + 1:]
    return (divdiff_recursive(f, without_j, tol) - divdiff_recursive(f, without_i, tol)) / (
        t[i] - t[j]
    )


def divdiff_values(nodes: Sequence[complex], values: Sequence[complex]):
    """Divided difference from point values at distinct (possibly complex) nodes."""
    z = np.asarray(nodes, dtype=complex)
    q = np.asarray(values, dtype=complex).copy()
    k = len(z) - 1
    for j in range(1, k + 1):
        q[: k - j + 1] = (q[1: k - j + 2] - q[: k - j + 1]) / (z[j:] - z[: k - j + 1])
    return q[0]


def divdiff_tensor(f: ScalarFn, grid: Sequence[float], k: int) -> np.ndarray:
    """Dense tensor ``T[i_0..i_k] = f^[k](grid[i_0], ..., grid[i_k])``."""
    g = np.asarray(grid, dtype=float)
    if np.any(np.diff(g) <= 0):
        raise ValueError("grid must be strictly increasing")
    if k > f.order:
        raise InsufficientDerivatives(f"order {k} grid needs {k} derivatives")
    table = np.array([np.asarray(f.eval(g, d)) / math.factorial(d) for d in range(k + 1)])
    return _kernels.divdiff_tensor(g, table, k)


def divdiff_grid(f: ScalarFn, grid: Sequence[float], k: int):
    """Tabulate ``f^[k]`` on ``grid^(k+1)`` as a :class:`SymbolGrid`."""
    from .symbol import SymbolGrid

    g = np.asarray(grid, dtype=float)
    if k < 0:
        raise OrderMismatch("order must be nonnegative")
    if len(g) ** (k + 1) <= DENSE_LIMIT:
        return SymbolGrid.from_dense(divdiff_tensor(f, g, k), g)

    def lazy(*idx):
        return divdiff_eval(f, [g[i] for i in idx], k)

    return SymbolGrid.from_function(lazy, g, arity=k)


# ------------------------------------------------------------------ compositions


def enumerate_compositions(slots: int, total: int) -> list[tuple[int, ...]]:
    """All ``slots``-tuples of nonnegative integers summing to ``total``.

    Ordered with the first part descending, e.g. (2,0,0), (1,1,0), ...
    """
    if slots < 1:
        raise ValueError("slots must be >= 1")
    if total < 0:
        return []
    out: list[tuple[int, ...]] = []

    def rec(prefix, remaining, left):
        if left == 1:
            out.append(prefix + (remaining,))
            return
        for a in range(remaining, -1, -1):
            rec(prefix + (a,), remaining - a, left - 1)

    rec((), total, slots)
    return out
