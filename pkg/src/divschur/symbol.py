"""Sampled multiplier symbols on a grid."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

STRUCTURES = ("dense", "toeplitz_diff", "product")


@dataclass(frozen=True, eq=False)
class SymbolGrid:
    """A symbol ``psi(t_0, ..., t_n)`` sampled on ``grid^(n+1)``.

    Either ``values`` (a dense array of shape ``(N,)*(n+1)``) or ``func``
    (called with n+1 integer indices) is set. ``structure`` records how the
    symbol was built; ``profile`` is the one-variable function of a
    ``toeplitz_diff`` symbol and ``factors`` the operands of a ``product``.
    """

    arity: int
    grid: np.ndarray
    values: np.ndarray | None = None
    func: Callable | None = None
    structure: str = "dense"
    profile: Callable | None = None
    factors: tuple = ()

    def __post_init__(self):
        if self.structure not in STRUCTURES:
            raise ValueError(f"unknown structure {self.structure!r}")
        if self.arity < 1:
            raise ValueError("arity must be >= 1")
        if self.values is None and self.func is None:
            raise ValueError("need values or func")
        if self.values is not None:
            N = len(self.grid)
            if self.values.shape != (N,) * (self.arity + 1):
                raise ValueError(f"values shape {self.values.shape} does not match grid")

    @classmethod
    def from_dense(cls, values, grid, structure="dense", **kw) -> "SymbolGrid":
        values = np.asarray(values)
        return cls(values.ndim - 1, np.asarray(grid, dtype=float), values=values,
                   structure=structure, **kw)

    @classmethod
    def from_function(cls, func, grid, arity, structure="dense", **kw) -> "SymbolGrid":
        return cls(arity, np.asarray(grid, dtype=float), func=func, structure=structure, **kw)

    @property
    def N(self) -> int:
        return len(self.grid)

    def eval(self, *idx):
        if len(idx) != self.arity + 1:
            raise IndexError(f"expected {self.arity + 1} indices")
        if self.values is not None:
            return self.values[idx]
        return self.func(*idx)

    def dense(self) -> np.ndarray:
        if self.values is not None:
            return self.values
        shape = (self.N,) * (self.arity + 1)
        out = np.empty(shape, dtype=complex)
        for idx in np.ndindex(*shape):
            out[idx] = self.func(*idx)
        if not np.iscomplexobj(out) or np.all(out.imag == 0):
            out = out.real.copy()
        return out

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.dense())))

    def __mul__(self, other: "SymbolGrid") -> "SymbolGrid":
        if not isinstance(other, SymbolGrid):
            return SymbolGrid.from_dense(self.dense() * other, self.grid)
        if other.arity != self.arity or not np.array_equal(other.grid, self.grid):
            from .errors import GridMismatch

            raise GridMismatch("product of symbols on different grids")
        return SymbolGrid.from_dense(self.dense() * other.dense(), self.grid,
                                     structure="product", factors=(self, other))

    __rmul__ = __mul__

    def __add__(self, other: "SymbolGrid") -> "SymbolGrid":
        return SymbolGrid.from_dense(self.dense() + other.dense(), self.grid)

    def scaled(self, c) -> "SymbolGrid":
        return SymbolGrid.from_dense(c * self.dense(), self.grid)
