"""Fourier series on the torus, the unitary-twisted multiple operator integral,
monomial divided-difference expansions and the Cayley transfer to the line."""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import DimensionMismatch, NodeCoincidence, PoleAtOne
from .funcs import ScalarFn, divdiff_eval, divdiff_values, enumerate_compositions
from .schatten import lp_norm

POLE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class FourierSeries:
    """Finitely supported coefficients indexed by (arity+1)-tuples of integers."""

    coeffs: Mapping
    arity: int

    def __post_init__(self):
        clean = {}
        for key, val in self.coeffs.items():
            key = (int(key),) if np.isscalar(key) else tuple(int(k) for k in key)
            if len(key) != self.arity + 1:
                raise ValueError(f"key {key} does not have length {self.arity + 1}")
            if val != 0:
                clean[key] = clean.get(key, 0) + complex(val)
        object.__setattr__(self, "coeffs", clean)

    def __len__(self):
        return len(self.coeffs)

    @property
    def truncation(self) -> int:
        return max((max(abs(k) for k in key) for key in self.coeffs), default=0)

    def lp_norm(self, p: float) -> float:
        return lp_norm(np.fromiter(self.coeffs.values(), complex, len(self.coeffs)), p)

    def keys_array(self) -> np.ndarray:
        return np.array(list(self.coeffs), dtype=int).reshape(-1, self.arity + 1)

    def values_array(self) -> np.ndarray:
        return np.fromiter(self.coeffs.values(), complex, len(self.coeffs))

    def evaluate(self, z):
        """``sum_k c_k z_0^{k_0} ... z_n^{k_n}`` at one node tuple or a batch."""
        Z = np.asarray(z, dtype=complex)
        single = Z.ndim == 1
        Z = np.atleast_2d(Z)
        if not self.coeffs:
            out = np.zeros(Z.shape[0], complex)
        else:
            K = self.keys_array()
            terms = np.prod(Z[:, None, :] ** K[None, :, :], axis=2)
            out = terms @ self.values_array()
        return out[0] if single else out

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        if other.arity != self.arity:
            raise ValueError("arity mismatch")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return FourierSeries(out, self.arity)

    def scaled(self, c) -> "FourierSeries":
        return FourierSeries({k: c * v for k, v in self.coeffs.items()}, self.arity)

    def to_json(self) -> str:
        items = [{"tuple": list(k), "re": v.real, "im": v.imag}
                 for k, v in sorted(self.coeffs.items())]
        return json.dumps({"arity": self.arity, "coeffs": items})

    @classmethod
    def from_json(cls, text: str) -> "FourierSeries":
        d = json.loads(text)
        return cls({tuple(c["tuple"]): complex(c["re"], c["im"]) for c in d["coeffs"]},
                   d["arity"])


@dataclass(frozen=True, eq=False)
class DiagonalUnitary:
    """``U = diag(exp(i theta_j))``."""

    phases: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "phases", np.asarray(self.phases, dtype=float))

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.exp(1j * self.phases)

    @property
    def N(self) -> int:
        return len(self.phases)

    def matrix(self) -> np.ndarray:
        return np.diag(self.eigenvalues)

    def power(self, k: int) -> np.ndarray:
        return np.exp(1j * k * self.phases)

    @classmethod
    def from_real_diagonal(cls, h) -> "DiagonalUnitary":
        """Cayley image of a real diagonal operator."""
        return cls(np.angle(cayley(np.asarray(h, dtype=float))))


# ------------------------------------------------------------- operator integral


def moi_apply(series: FourierSeries, U: DiagonalUnitary, xs: Sequence) -> np.ndarray:
    """``sum c_k U^{k_0} x_1 U^{k_1} ... x_n U^{k_n}`` as an exact finite sum."""
    n = series.arity
    if len(xs) != n:
        raise DimensionMismatch(f"series arity {n}, got {len(xs)} matrices")
    mats = [np.asarray(x, dtype=complex) for x in xs]
    for x in mats:
        if x.shape != (U.N, U.N):
            raise DimensionMismatch(f"matrix {x.shape} vs unitary of size {U.N}")
    out = np.zeros((U.N, U.N), complex)
    for key, c in series.coeffs.items():
        acc = U.power(key[0])[:, None] * mats[0]
        for i in range(1, n):
            acc = (acc * U.power(key[i])[None, :]) @ mats[i]
        out += c * (acc * U.power(key[n])[None, :])
    return out


def moi_symbol(series: FourierSeries, U: DiagonalUnitary) -> np.ndarray:
    """The same operator as a Schur symbol on U's eigenvalues:
    ``psi[a_0..a_n] = series(u_{a_0}, .., u_{a_n})``."""
    u = U.eigenvalues
    n = series.arity
    grids = np.meshgrid(*([u] * (n + 1)), indexing="ij")
    Z = np.stack([g.ravel() for g in grids], axis=1)
    return series.evaluate(Z).reshape((U.N,) * (n + 1))


# --------------------------------------------------------- monomial expansions


def monomial_divdiff_coeffs(k: int, n: int) -> FourierSeries:
    """Fourier coefficients of ``(z^k)^[n]`` on the torus.

    ``k >= n``: unit coefficients on the tuples summing to ``k - n``;
    ``0 <= k < n``: zero; ``k < 0``: ``(-1)^n`` on ``(-a_0-1, .., -a_n-1)``
    with ``sum a_i = |k| - 1``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if k >= n:
        return FourierSeries({a: 1.0 for a in enumerate_compositions(n + 1, k - n)}, n)
    if k >= 0:
        return FourierSeries({}, n)
    sign = (-1.0) ** n
    return FourierSeries(
        {tuple(-ai - 1 for ai in a): sign for a in enumerate_compositions(n + 1, -k - 1)}, n
    )


def divdiff_fourier(phi_hat: FourierSeries, n: int, p: float | None = None):
    """Fourier expansion of ``phi^[n]`` from the coefficients of ``phi``.

    Returns the series, or ``(series, ||series||_{l^p})`` when ``p`` is given.
    """
    if phi_hat.arity != 0:
        raise ValueError("phi_hat must have arity 0")
    out: dict = {}
    for (k,), c in phi_hat.coeffs.items():
        for key, v in monomial_divdiff_coeffs(k, n).coeffs.items():
            out[key] = out.get(key, 0) + c * v
    series = FourierSeries(out, n)
    if p is None:
        return series
    return series, series.lp_norm(p)


def coefficient_lp_sum(phi_hat: FourierSeries, n: int, p: float) -> float:
    """``sum_k |phi_hat(k)|^p (1+|k|)^n``, the majorant of ``||(phi^[n])^||_p^p``."""
    return float(sum(abs(c) ** p * (1 + abs(k)) ** n for (k,), c in phi_hat.coeffs.items()))


def fourier_coefficients(func, K: int, oversample: int = 8) -> FourierSeries:
    """Coefficients ``|k| <= K`` of a function on the circle by FFT."""
    M = 1 << int(math.ceil(math.log2(oversample * (2 * K + 1))))
    theta = 2 * np.pi * np.arange(M) / M
    vals = np.asarray(func(np.exp(1j * theta)), dtype=complex)
    c = np.fft.fft(vals) / M
    return FourierSeries({(k,): c[k % M] for k in range(-K, K + 1)}, 0)


def truncation_for(beta: float, n: int, p: float, tol: float = 1e-10) -> int:
    """Smallest K with ``sum_{|k|>K} (1+|k|)^(n - beta p) < tol`` (integral bound)."""
    a = beta * p - n
    if a <= 1:
        raise ValueError("need beta * p > n + 1 for a summable tail")
    # 2 * int_K^inf (1+x)^(-a) dx = 2 (1+K)^(1-a) / (a-1)
    return max(0, int(math.ceil((tol * (a - 1) / 2) ** (1.0 / (1 - a)) - 1)))


# --------------------------------------------------------------------- Cayley


def cayley(lam):
    """Real line to circle: ``(lam + i) / (lam - i)``; inverse of :func:`cayley_inv`."""
    lam = np.asarray(lam, dtype=float)
    out = (lam + 1j) / (lam - 1j)
    return out if out.ndim else complex(out)


def cayley_inv(z):
    """Circle minus {1} to the real line: ``i (z + 1) / (z - 1)``."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z - 1) <= POLE_TOL):
        raise PoleAtOne("Cayley transform is singular at z = 1")
    out = (1j * (z + 1) / (z - 1)).real
    return out if out.ndim else float(out)


def pulled_back(phi: ScalarFn):
    """``psi = phi o G`` on the circle, extended by ``psi(1) = 0``."""

    def psi(z):
        z = np.asarray(z, dtype=complex)
        at_pole = np.abs(z - 1) <= POLE_TOL
        lam = (1j * (z + 1) / np.where(at_pole, 2.0, z - 1)).real
        return np.where(at_pole, 0.0, phi.eval(lam))

    return psi


def _transfer_coef(n, k, variant):
    if variant == "as_stated":
        return (-1) ** (k + 1) * 1j ** (n - k + 1) / 2 ** (n - k + 1)
    return (0.5j) ** n


def cayley_transfer_check(phi: ScalarFn, lam_nodes: Sequence[float],
                          variant: str = "uniform"):
    """Both sides of the Cayley transfer formula for ``phi^[n]``.

    ``lhs`` is the real divided difference; ``rhs`` sums, over k = 1..n and
    ``0 = i_0 < .. < i_k = n``,
    ``c_{n,k} * psi^[k](z_{i_0}, .., z_{i_k})
    * prod_{interior j} (z_{i_j} - 1)^2 * prod_{other l} (z_l - 1)``
    with ``psi = phi o G`` and ``z = G^{-1}(lam)``. Empty products are 1.

    ``variant="uniform"`` uses ``c_{n,k} = (i/2)^n``, which follows from
    ``1/(lam_a - lam_b) = (i/2)(z_a - 1)(z_b - 1)/(z_a - z_b)`` by induction.
    ``variant="as_stated"`` uses ``(-1)^(k+1) i^(n-k+1) / 2^(n-k+1)``; the two
    agree for n = 1 only, and the mismatch is what the second value shows.
    """
    if variant not in ("uniform", "as_stated"):
        raise ValueError(f"unknown variant {variant!r}")
    lam = np.asarray(lam_nodes, dtype=float)
    n = len(lam) - 1
    if n < 1:
        raise ValueError("need at least two nodes")
    if len(np.unique(lam)) != len(lam):
        raise NodeCoincidence("Cayley transfer check needs distinct nodes")
    lhs = complex(divdiff_eval(phi, lam, n))
    z = cayley(lam)
    psi_vals = pulled_back(phi)(z)
    w = z - 1.0
    rhs = 0j
    for k in range(1, n + 1):
        coef = _transfer_coef(n, k, variant)
        for interior in itertools.combinations(range(1, n), k - 1):
            idx = [0, *interior, n]
            dd = divdiff_values(z[idx], psi_vals[idx])
            inner = set(interior)
            weight = np.prod([w[j] ** 2 for j in interior]) * np.prod(
                [w[l] for l in range(n + 1) if l not in inner]
            )
            rhs += coef * dd * weight
    return lhs, complex(rhs)
