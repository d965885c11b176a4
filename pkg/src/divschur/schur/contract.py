"""Discrete multilinear Schur multipliers.

``T_psi(x_1, .., x_n)[i_0, i_n] = sum psi(i_0..i_n) x_1[i_0,i_1] ... x_n[i_{n-1},i_n]``
with the sum over the interior indices.
"""
from __future__ import annotations

import string

import numpy as np

from .. import _kernels
from ..errors import ArityMismatch, GridMismatch
from ..schatten import KernelMatrix
from ..symbol import SymbolGrid


def _symbol_array(psi):
    if isinstance(psi, SymbolGrid):
        return psi.dense(), psi.grid
    return np.asarray(psi), None


def _einsum_spec(n):
    letters = string.ascii_letters[: n + 1]
    legs = [letters[i] + letters[i + 1] for i in range(n)]
    return letters, legs


def apply_schur(psi, xs):
    """Apply the multiplier with symbol ``psi`` to kernels ``xs``.

    ``psi`` is a :class:`SymbolGrid` or an array of shape ``(N,)*(n+1)``;
    ``xs`` are n square matrices (or :class:`KernelMatrix`). For n = 1 this is
    the entrywise product.
    """
    sym, grid = _symbol_array(psi)
    n = sym.ndim - 1
    if len(xs) != n:
        raise ArityMismatch(f"symbol has arity {n}, got {len(xs)} matrices")
    mats = []
    for x in xs:
        if isinstance(x, KernelMatrix) and grid is not None:
            if len(x.grid) != len(grid) or not np.allclose(x.grid, grid, rtol=0, atol=1e-12):
                raise GridMismatch("kernel grid differs from symbol grid")
        a = np.asarray(x)
        if a.shape != (sym.shape[0], sym.shape[0]):
            raise GridMismatch(f"matrix shape {a.shape} vs symbol size {sym.shape[0]}")
        mats.append(a)
    if n == 1:
        out = sym * mats[0]
    elif n == 2:
        out = _kernels.contract2(sym, mats[0], mats[1])
    else:
        letters, legs = _einsum_spec(n)
        spec = letters + "," + ",".join(legs) + "->" + letters[0] + letters[-1]
        out = np.einsum(spec, sym, *mats, optimize="greedy")
    if grid is not None and all(isinstance(x, KernelMatrix) for x in xs):
        return KernelMatrix(out, grid)
    return out


def slot_adjoint(psi, xs, slot, B):
    """Adjoint of the linear map ``x_slot -> T_psi(xs)`` applied to ``B``.

    With the Frobenius pairing ``<A, B> = tr(A^* B)`` this satisfies
    ``<B, T(.., y, ..)> = <slot_adjoint(B), y>``.
    """
    sym, _ = _symbol_array(psi)
    n = sym.ndim - 1
    if n == 1:
        return np.conj(sym) * B
    if n == 2:
        return _kernels.adjoint2(sym, xs, slot, B)
    letters, legs = _einsum_spec(n)
    others = [i for i in range(n) if i != slot]
    spec = (letters + "," + ",".join(legs[i] for i in others) + ","
            + letters[0] + letters[-1] + "->" + legs[slot])
    return np.einsum(spec, np.conj(sym), *[np.conj(xs[i]) for i in others], B,
                     optimize="greedy")
