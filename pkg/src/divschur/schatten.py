"""Schatten (quasi-)norms, Hölder combinations and block pinching."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import IndexOutOfRange, NumericalFailure, RegimeError


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """Finite section of an operator kernel: an N x N matrix labelled by a grid."""

    entries: np.ndarray
    grid: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries)
        g = np.asarray(self.grid, dtype=float)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError("kernel matrix must be square")
        if len(g) != e.shape[0]:
            raise ValueError("grid length must equal matrix size")
        if np.any(np.diff(g) <= 0):
            raise ValueError("grid must be strictly increasing")
        if not np.all(np.isfinite(e)):
            raise ValueError("entries must be finite")
        object.__setattr__(self, "entries", e)
        object.__setattr__(self, "grid", g)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    @property
    def N(self):
        return self.entries.shape[0]


def singular_values(x) -> np.ndarray:
    """Singular values in non-increasing order."""
    a = np.asarray(x)
    if a.size == 0:
        return np.zeros(0)
    try:
        return np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalFailure(str(exc)) from exc


def lp_norm(v, p: float) -> float:
    """Vector l^p (quasi-)norm; ``p=np.inf`` gives the max."""
    v = np.abs(np.asarray(v, dtype=complex if np.iscomplexobj(v) else float)).ravel()
    if v.size == 0:
        return 0.0
    if p == np.inf:
        return float(v.max())
    m = v.max()
    if m == 0:
        return 0.0
    # scale first so small p does not underflow
    return float(m * np.sum((v / m) ** p) ** (1.0 / p))


def schatten_norm(x, p: float) -> float:
    """``(sum sigma_i^p)^(1/p)``; ``p = inf`` returns the operator norm."""
    if not (p == np.inf or p > 0):
        raise ValueError("p must be positive or inf")
    return lp_norm(singular_values(x), p)


def holder_combine(p_list: Sequence[float]) -> float:
    """Hölder combination ``(sum 1/p_i)^(-1)``; infinite entries contribute 0."""
    ps = list(p_list)
    if not ps or any(not (p > 0) for p in ps):
        raise ValueError("all exponents must be positive")
    s = sum(0.0 if p == math.inf else 1.0 / p for p in ps)
    return math.inf if s == 0 else 1.0 / s


def p_sharp(p: float) -> float:
    """``p / (1 - p)`` on (0, 1), infinity at p = 1."""
    if not 0 < p <= 1:
        raise RegimeError(f"p_sharp is defined for 0 < p <= 1, got {p}")
    return math.inf if p == 1 else p / (1.0 - p)


@dataclass(frozen=True)
class ExponentTuple:
    """Input exponents ``p_1..p_n`` with their Hölder combination.

    ``in_main_regime`` is the condition under which the divided-difference
    estimate applies: ``0 < p <= 1`` and both partial combinations
    ``(p_2;..;p_n)`` and ``(p_1;..;p_{n-1})`` lie in ``[1, inf)``.
    """

    p_list: tuple
    p: float = field(init=False)
    p_sharp: float | None = field(init=False)
    in_main_regime: bool = field(init=False)

    def __post_init__(self):
        ps = tuple(float(q) for q in self.p_list)
        if not ps:
            raise ValueError("need at least one exponent")
        if any(not (q > 0) for q in ps):
            raise ValueError("exponents must be positive")
        object.__setattr__(self, "p_list", ps)
        p = holder_combine(ps)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "p_sharp", p_sharp(p) if 0 < p <= 1 else None)
        n = len(ps)
        if n == 1:
            partial_ok = True
        else:
            tail = holder_combine(ps[1:])
            head = holder_combine(ps[:-1])
            partial_ok = 1 <= tail < math.inf and 1 <= head < math.inf
        inputs_ok = all(1 <= q < math.inf for q in ps)
        object.__setattr__(self, "in_main_regime", bool(0 < p <= 1 and partial_ok and inputs_ok))

    @property
    def n(self) -> int:
        return len(self.p_list)

    def require_main_regime(self):
        if not self.in_main_regime:
            raise RegimeError(f"exponents {self.p_list} are outside the main regime")
        return self


@dataclass(frozen=True)
class BlockPartition:
    """Disjoint index blocks; each block is a ``range``."""

    blocks: tuple

    def __post_init__(self):
        bl = tuple(range(b[0], b[1]) if isinstance(b, tuple) else b for b in self.blocks)
        seen: set[int] = set()
        for b in bl:
            s = set(b)
            if seen & s:
                raise ValueError("blocks must be pairwise disjoint")
            seen |= s
        object.__setattr__(self, "blocks", bl)

    @classmethod
    def uniform(cls, N: int, size: int) -> "BlockPartition":
        return cls(tuple(range(i, min(i + size, N)) for i in range(0, N, size)))


def block_expectation(x, partition: BlockPartition | Sequence):
    """Pinching: keep entries in block x same-block rectangles, zero the rest."""
    if not isinstance(partition, BlockPartition):
        partition = BlockPartition(tuple(partition))
    a = np.asarray(x)
    N = a.shape[0]
    mask = np.zeros(a.shape, dtype=bool)
    for b in partition.blocks:
        idx = np.fromiter(b, dtype=int)
        if idx.size and (idx.min() < 0 or idx.max() >= N):
            raise IndexOutOfRange(f"block {b} exceeds matrix size {N}")
        mask[np.ix_(idx, idx)] = True
    out = np.where(mask, a, 0)
    if isinstance(x, KernelMatrix):
        return KernelMatrix(out, x.grid)
    return out


# ---------------------------------------------------------------- norm helpers


def dual_element(z, q: float) -> np.ndarray:
    """Norming element: ``y`` with ``||y||_q = 1`` maximising ``Re <z, y>``.

    Valid for ``1 <= q <= inf``; at ``q = 1`` the rank-one top singular pair is
    returned.
    """
    u, s, vh = np.linalg.svd(np.asarray(z, dtype=complex))
    if s[0] == 0:
        return np.zeros_like(z, dtype=complex)
    if q == 1:
        return np.outer(u[:, 0], vh[0])
    if q == np.inf:
        keep = s > s[0] * 1e-14
        return (u[:, keep] * 1.0) @ vh[keep]
    qc = q / (q - 1.0)
    w = (s / s[0]) ** (qc - 1.0)
    w /= lp_norm(w, q)
    return (u * w) @ vh


def norm_gradient(y, q: float, rel_cut: float = 1e-12):
    """Real gradient of ``y -> ||y||_q`` (Frobenius pairing) and the norm.

    For ``q < 1`` singular values below ``rel_cut * sigma_1`` are ignored;
    the quasi-norm is not differentiable there.
    """
    u, s, vh = np.linalg.svd(np.asarray(y, dtype=complex))
    if s[0] == 0:
        return np.zeros_like(y, dtype=complex), 0.0
    norm = lp_norm(s, q)
    if q == np.inf:
        return np.outer(u[:, 0], vh[0]), norm
    keep = s > rel_cut * s[0]
    w = np.zeros_like(s)
    w[keep] = (s[keep] / norm) ** (q - 1.0)
    return (u * w) @ vh, norm
