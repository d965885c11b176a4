"""Symbol constructors: cutoffs, Toeplitz symbols, block indicators, splitting."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..funcs import ScalarFn, divdiff_tensor
from ..symbol import SymbolGrid


@dataclass(frozen=True)
class CutoffSpec:
    R: float

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError("cutoff radius must be positive")


def _h(t):
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore", over="ignore"):
        return np.where(t > 0, np.exp(-1.0 / np.where(t > 0, t, 1.0)), 0.0)


def rho(xi):
    """Smooth plateau: 1 on [-1, 1], 0 outside [-2, 2], monotone in between."""
    a = np.abs(np.asarray(xi, dtype=float))
    num = _h(2.0 - a)
    out = num / (num + _h(a - 1.0))
    return out if out.ndim else float(out)


def cutoff_rho(spec: CutoffSpec | float, xi):
    """``rho_R(xi) = rho(xi / R)``."""
    R = spec.R if isinstance(spec, CutoffSpec) else float(spec)
    if not R > 0:
        raise ValueError("cutoff radius must be positive")
    return rho(np.asarray(xi, dtype=float) / R)


def rho_fn(R: float) -> ScalarFn:
    """``rho_R`` as a (value-only) :class:`ScalarFn`."""
    return ScalarFn((lambda t: cutoff_rho(R, t),), (-2.0 * R, 2.0 * R), f"rho_{R}")


def one_minus_rho_over_t(R: float) -> ScalarFn:
    """``(1 - rho_R(t)) / t``; vanishes on [-R, R], so the value at 0 is 0."""

    def g(t):
        t = np.asarray(t, dtype=float)
        safe = np.where(np.abs(t) > R, t, 1.0)
        return np.where(np.abs(t) > R, (1.0 - cutoff_rho(R, t)) / safe, 0.0)

    return ScalarFn((g,), None, f"(1-rho_{R})/t")


def _as_callable(g):
    if isinstance(g, ScalarFn):
        return lambda t: g.eval(t)
    return g


def toeplitz_symbol(g, grid) -> SymbolGrid:
    """Arity-one symbol ``(i, j) -> g(grid[i] - grid[j])``."""
    grid = np.asarray(grid, dtype=float)
    f = _as_callable(g)
    vals = np.asarray(f(grid[:, None] - grid[None, :]))
    return SymbolGrid.from_dense(vals, grid, structure="toeplitz_diff", profile=f)


def _leg(mat, k, n):
    """Embed an (N, N) matrix on variables (t_k, t_{k+1}) of an arity-n tensor."""
    N = mat.shape[0]
    shape = [1] * (n + 1)
    shape[k] = N
    shape[k + 1] = N
    return mat.reshape(shape)


def cutoff_product(R: float, grid, n: int) -> np.ndarray:
    """``d_R(t) = prod_i rho_R(t_{i-1} - t_i)`` as a dense tensor."""
    grid = np.asarray(grid, dtype=float)
    band = cutoff_rho(R, grid[:, None] - grid[None, :])
    out = np.ones((len(grid),) * (n + 1))
    for i in range(n):
        out = out * _leg(band, i, n)
    return out


def block_indicator(r_list: Sequence[int], l: int, grid) -> SymbolGrid:
    """Indicator of ``t_0 in [l, l+1)`` and ``t_m in [l + r_1 + .. + r_m, .. + 1)``.

    Grid points are assigned to unit cells by ``floor``.
    """
    grid = np.asarray(grid, dtype=float)
    cells = np.floor(grid).astype(int)
    n = len(r_list)
    targets = l + np.concatenate([[0], np.cumsum(r_list)]).astype(int)
    out = np.ones((len(grid),) * (n + 1))
    for m in range(n + 1):
        shape = [1] * (n + 1)
        shape[m] = len(grid)
        out = out * (cells == targets[m]).astype(float).reshape(shape)
    return SymbolGrid.from_dense(out, grid, structure="product")


def block_band_indicator(r_list: Sequence[int], grid) -> SymbolGrid:
    """``b_{r_1..r_n} = sum_l b_{r_1..r_n, l}`` over the cells the grid meets."""
    grid = np.asarray(grid, dtype=float)
    cells = np.floor(grid).astype(int)
    total = None
    for l in range(cells.min() - int(np.sum(np.abs(r_list))), cells.max() + 1):
        b = block_indicator(r_list, l, grid).dense()
        total = b if total is None else total + b
    return SymbolGrid.from_dense(total, grid)


def split_symbol(f: ScalarFn, n: int, R: float, grid) -> list[SymbolGrid]:
    """Split ``f^[n]`` into n off-diagonal pieces and one near-diagonal piece.

    Piece k < n is
    ``(f^[n-1](..omit t_k..) - f^[n-1](..omit t_{k+1}..))
    * prod_{i<k} rho_R(t_i - t_{i+1}) * (1 - rho_R)(t_k - t_{k+1}) / (t_{k+1} - t_k)``
    and the last piece is ``f^[n] * prod_i rho_R(t_i - t_{i+1})``. The pieces
    sum to ``f^[n]`` at every grid multi-index.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    grid = np.asarray(grid, dtype=float)
    N = len(grid)
    full = divdiff_tensor(f, grid, n)
    lower = divdiff_tensor(f, grid, n - 1)
    if n == 1:
        lower = lower.reshape(N)
    diff = grid[:, None] - grid[None, :]
    band = cutoff_rho(R, diff)
    # (1 - rho_R)(t_k - t_{k+1}) / (t_{k+1} - t_k), zero where rho_R == 1
    off = np.where(band < 1.0, (1.0 - band) / np.where(diff != 0, -diff, 1.0), 0.0)
    pieces = []
    prefix = np.ones((N,) * (n + 1))
    for k in range(n):
        omit_k = np.expand_dims(lower, axis=k)
        omit_k1 = np.expand_dims(lower, axis=k + 1)
        piece = (omit_k - omit_k1) * prefix * _leg(off, k, n)
        pieces.append(SymbolGrid.from_dense(piece, grid))
        prefix = prefix * _leg(band, k, n)
    pieces.append(SymbolGrid.from_dense(full * prefix, grid))
    return pieces


def _alpha_items(alpha) -> list[tuple[int, float]]:
    if isinstance(alpha, Mapping):
        return [(int(k), v) for k, v in sorted(alpha.items()) if v != 0]
    a = list(alpha)
    if len(a) % 2 != 1:
        raise ValueError("alpha sequence must have odd length 2K+1 (indices -K..K)")
    K = len(a) // 2
    return [(k - K, v) for k, v in enumerate(a) if v != 0]


def phi_alpha_lambda(phi: ScalarFn, alpha, lam: float = 1.0) -> ScalarFn:
    """``t -> sum_k alpha_k phi(lam t - k)`` with derivatives inherited termwise."""
    if phi.support is None:
        raise ValueError("phi must carry a support interval")
    if not lam > 0:
        raise ValueError("lambda must be positive")
    items = _alpha_items(alpha)
    if not items:
        zero = lambda t: np.zeros_like(np.asarray(t, dtype=float))
        return ScalarFn(tuple(zero for _ in range(phi.order + 1)), (0.0, 0.0), "0")
    a, b = phi.support
    ks = [k for k, _ in items]
    support = ((a + min(ks)) / lam, (b + max(ks)) / lam)

    def make(d):
        def g(t):
            t = np.asarray(t, dtype=float)
            return lam ** d * sum(c * phi.eval(lam * t - k, d) for k, c in items)

        return g

    return ScalarFn(tuple(make(d) for d in range(phi.order + 1)), support,
                    f"{phi.name}_alpha,{lam}")
