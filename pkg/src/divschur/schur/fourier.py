"""L^1 norm of a Fourier transform, the majorant for Toeplitz-type multipliers.

Convention used throughout the project:
``g_hat(xi) = integral g(t) exp(-2 pi i t xi) dt``.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..errors import ResolutionTooLow

FOURIER_CONVENTION = "g_hat(xi) = int g(t) exp(-2 pi i t xi) dt"

# fraction of the frequency band treated as the aliasing guard
_GUARD = 1.0 / 8.0


class L1Bound(NamedTuple):
    value: float
    tail: float


def _samples(g, halfwidth, resolution):
    dt = 2.0 * halfwidth / resolution
    t = -halfwidth + dt * np.arange(resolution)
    f = g.eval if hasattr(g, "eval") else g
    return np.asarray(f(t), dtype=complex), dt


def fourier_transform_samples(g, halfwidth: float, resolution: int, pad: int = 8):
    """Return ``(xi, |g_hat(xi)|, dxi)`` on the FFT frequency grid.

    ``g`` is sampled on ``[-halfwidth, halfwidth)`` and zero-padded by
    ``pad`` to refine the frequency spacing.
    """
    vals, dt = _samples(g, halfwidth, resolution)
    M = resolution * pad
    spec = np.fft.fft(vals, n=M) * dt
    xi = np.fft.fftfreq(M, d=dt)
    return xi, np.abs(spec), 1.0 / (M * dt)


def _l1(g, halfwidth, resolution, pad):
    xi, mag, dxi = fourier_transform_samples(g, halfwidth, resolution, pad)
    nyq = np.abs(xi).max()
    value = float(mag.sum() * dxi)
    guard = float(mag[np.abs(xi) >= (1.0 - _GUARD) * nyq].sum() * dxi)
    return value, guard


def fourier_l1_bound(g, halfwidth: float, resolution: int, pad: int = 8,
                     guard_rel: float = 1e-3) -> L1Bound:
    """Numerical ``||g_hat||_1`` and a truncation-tail estimate.

    The tail adds the mass in the outer band of the frequency grid to twice
    the change observed when both the window and the sample count are
    doubled. Twice, because a profile decaying like 1/t converges only at
    first order in the window, so the remaining error is about the size of
    the observed change again. Report the two numbers together.

    Raises
    ------
    ResolutionTooLow
        if more than ``guard_rel`` of the mass sits in the outer band, i.e.
        the samples do not resolve ``g``.
    """
    if resolution < 16:
        raise ResolutionTooLow("resolution must be at least 16")
    value, guard = _l1(g, halfwidth, resolution, pad)
    if value > 0 and guard > guard_rel * value:
        raise ResolutionTooLow(
            f"{guard / value:.2e} of the transform mass is in the aliasing band"
        )
    wider, _ = _l1(g, 2.0 * halfwidth, 2 * resolution, pad)
    return L1Bound(value, guard + 2.0 * abs(wider - value))
