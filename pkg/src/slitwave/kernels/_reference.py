"""NumPy implementations of the hot kernels.

The Cython module ``_fast`` implements the same functions with the same
cell construction and summation order; either backend may be selected
at import time.  Every kernel is a pure function.
"""

from __future__ import annotations

import numpy as np

from ..errors import QuadratureBudgetError

__all__ = [
    "chirp_field",
    "kirchhoff_field",
    "filon_components_field",
    "filon_samples_field",
]


def _phase_cells_chirp(s0: float, s1: float, alpha: float, dphi: float) -> np.ndarray:
    """Cell boundaries on [s0, s1] with <= dphi of chirp phase alpha*s^2 per cell."""
    pieces = []

    def one_side(a, b):
        # a, b same sign (or zero); phase monotone along |s|
        pa, pb = alpha * a * a, alpha * b * b
        n = max(1, int(np.ceil(abs(pb - pa) / dphi)))
        ph = pa + (pb - pa) * np.arange(1, n + 1) / n
        s = np.sqrt(ph / alpha)
        if a + b < 0:
            s = -s
        # enforce exact endpoint
        s[-1] = b
        return s

    if s0 < 0.0 < s1:
        left = one_side(s0, 0.0)
        right = one_side(0.0, s1)
        pieces = [np.array([s0]), left, right]
    else:
        pieces = [np.array([s0]), one_side(s0, s1)]
    return np.concatenate(pieces)


def _phase_cells_kirchhoff(u0: float, u1: float, y: float, k: float,
                           dphi: float) -> np.ndarray:
    """Cell boundaries with <= dphi of spherical-wave phase k*(s - y) per cell."""

    def phase(u):
        return k * u * u / (np.hypot(y, u) + y)

    def invert(p):
        q = p / k
        return np.sqrt(q * (2.0 * y + q))

    def one_side(a, b):
        pa, pb = phase(a), phase(b)
        n = max(1, int(np.ceil(abs(pb - pa) / dphi)))
        ph = np.maximum(pa + (pb - pa) * np.arange(1, n + 1) / n, 0.0)
        u = invert(ph)
        if a + b < 0:
            u = -u
        u[-1] = b
        return u

    if u0 < 0.0 < u1:
        return np.concatenate([np.array([u0]), one_side(u0, 0.0), one_side(0.0, u1)])
    return np.concatenate([np.array([u0]), one_side(u0, u1)])


def _count_cells_chirp(x, lo, hi, alpha, dphi):
    total = 0
    for a, b in zip(lo, hi):
        s0, s1 = a - x, b - x
        p0, p1 = alpha * s0 * s0, alpha * s1 * s1
        if s0 < 0.0 < s1:
            total += int(np.ceil(p0 / dphi)) + int(np.ceil(p1 / dphi)) + 2
        else:
            total += int(np.ceil(abs(p1 - p0) / dphi)) + 1
    return total


def chirp_field(xs, seg_lo, seg_hi, amps, alpha, glx, glw, dphi, max_cells):
    """Sum of amp_j * integral over [lo_j, hi_j] of exp(i*alpha*(u - x)^2) du, per x.

    Cells are phase-equalized exactly (the chirp phase inverts in closed
    form), then integrated with the supplied Gauss-Legendre rule.  The
    cell budget applies per detector point.
    """
    xs = np.asarray(xs, dtype=float)
    out = np.empty(xs.shape[0], dtype=np.complex128)
    for i, x in enumerate(xs):
        n_cells = _count_cells_chirp(x, seg_lo, seg_hi, alpha, dphi)
        if n_cells > max_cells:
            raise QuadratureBudgetError(
                f"chirp quadrature needs {n_cells} cells at x={x}, "
                f"budget {max_cells}")
        acc = 0.0 + 0.0j
        for a, b, amp in zip(seg_lo, seg_hi, amps):
            bounds = _phase_cells_chirp(a - x, b - x, alpha, dphi)
            mid = 0.5 * (bounds[:-1] + bounds[1:])
            half = 0.5 * np.diff(bounds)
            nodes = mid[:, None] + half[:, None] * glx[None, :]
            w = half[:, None] * glw[None, :]
            acc += amp * np.sum(w * np.exp(1j * alpha * nodes * nodes))
        out[i] = acc
    return out


def kirchhoff_field(xs, seg_lo, seg_hi, amps, y, k, glx, glw, dphi, max_cells):
    """Kirchhoff integral per detector point, without the exp(iky) factor.

    Sum of amp_j * integral of exp(i*k*(s - y)) * (1 + y/s)/s du with
    s = hypot(y, u - x); the phase k*(s - y) is evaluated stably as
    k*(u - x)^2/(s + y).
    """
    xs = np.asarray(xs, dtype=float)
    out = np.empty(xs.shape[0], dtype=np.complex128)
    for i, x in enumerate(xs):
        acc = 0.0 + 0.0j
        count = 0
        for a, b, amp in zip(seg_lo, seg_hi, amps):
            bounds = _phase_cells_kirchhoff(a - x, b - x, y, k, dphi)
            count += bounds.shape[0] - 1
            if count > max_cells:
                raise QuadratureBudgetError(
                    f"kirchhoff quadrature needs more than {max_cells} cells "
                    f"at x={x}")
            mid = 0.5 * (bounds[:-1] + bounds[1:])
            half = 0.5 * np.diff(bounds)
            nodes = mid[:, None] + half[:, None] * glx[None, :]
            w = half[:, None] * glw[None, :]
            s = np.hypot(y, nodes)
            phase = k * nodes * nodes / (s + y)
            acc += amp * np.sum(w * np.exp(1j * phase) * (1.0 + y / s) / s)
        out[i] = acc
    return out


def _sinc_sq(z):
    return np.sinc(z / np.pi) ** 2


def _half_kernel(z):
    """integral_0^1 (1 - t) exp(i z t) dt, stable for small z."""
    if abs(z) < 1e-4:
        return 0.5 + 1j * z / 6.0 - z * z / 24.0 - 1j * z ** 3 / 120.0
    return -(np.exp(1j * z) - 1.0 - 1j * z) / (z * z)


def _taper_profile(n_window: int, n_ramp: int) -> np.ndarray:
    t = np.ones(n_window)
    if n_ramp > 0:
        ramp = np.sin(0.5 * np.pi * np.arange(1, n_ramp + 1) / (n_ramp + 1.0)) ** 2
        t[:n_ramp] = ramp
        t[-n_ramp:] = ramp[::-1]
    return t


def _filon_window(kx, a_vals, xc, gamma, dkf):
    """Filon-linear sum of a_vals * e^{i(k xc - gamma k^2)} over one window."""
    theta = kx * xc - gamma * kx * kx
    tp = (xc - 2.0 * gamma * kx) * dkf
    weights = _sinc_sq(0.5 * tp)
    phases = np.exp(1j * theta)
    acc = np.sum(a_vals * phases * weights)
    acc += a_vals[0] * phases[0] * (_half_kernel(tp[0]) - weights[0])
    acc += a_vals[-1] * phases[-1] * (np.conj(_half_kernel(-tp[-1])) - weights[-1])
    return acc


def filon_components_field(xs, kstart, dk, count, gamma, centers, widths, amps,
                           refine=1, window_halfwidth=0.0, kstar_coef=0.0,
                           taper_frac=0.25):
    """Angular-spectrum synthesis from per-slit component form.

    The spectrum is sum_i amp_i * width_i * sinc(k width_i/2) *
    e^{-i k center_i}; folding each center into the kernel phase leaves
    only the slow sinc envelope to interpolate, so the linear-amplitude
    Filon rule is accurate to ~(width*dk)^2 instead of (extent*dk)^2.
    The grid refines ``refine`` times (amplitudes are analytic, so this
    adds no interpolation error); a positive ``window_halfwidth``
    restricts each component to the window around its stationary point
    kstar_coef*(x - center) with cos^2 ramps over the outer
    ``taper_frac``.
    """
    xs = np.asarray(xs, dtype=float)
    nfine = (count - 1) * refine + 1
    dkf = dk / refine
    out = np.empty(xs.shape[0], dtype=np.complex128)
    windowed = window_halfwidth > 0.0
    for i, x in enumerate(xs):
        acc = 0.0 + 0.0j
        for ci, w, amp in zip(centers, widths, amps):
            xc = x - ci
            if windowed:
                kstar = kstar_coef * xc
                j0 = int(np.floor((kstar - window_halfwidth - kstart) / dkf))
                j1 = int(np.ceil((kstar + window_halfwidth - kstart) / dkf))
                j0 = max(j0, 0)
                j1 = min(j1, nfine - 1)
                if j1 - j0 < 2:
                    continue
            else:
                j0, j1 = 0, nfine - 1
            kx = kstart + dkf * np.arange(j0, j1 + 1)
            env = w * np.sinc(kx * (w / (2.0 * np.pi)))
            if windowed:
                nramp = min(int(taper_frac * (j1 - j0 + 1)), (j1 - j0) // 2)
                env = env * _taper_profile(j1 - j0 + 1, nramp)
            acc += amp * _filon_window(kx, env, xc, gamma, dkf)
        out[i] = acc * dkf
    return out


def filon_samples_field(xs, kstart, dk, values, gamma, refine=1):
    """Angular-spectrum synthesis from raw complex spectrum samples.

    Linear-amplitude Filon with exact linear phase per cell; accuracy is
    limited by the oscillation of the samples across one grid step.
    Refinement interpolates the same linear model onto a finer grid.
    """
    xs = np.asarray(xs, dtype=float)
    values = np.asarray(values, dtype=np.complex128)
    count = values.shape[0]
    if refine > 1:
        fine = np.linspace(0.0, count - 1.0, (count - 1) * refine + 1)
        base = np.arange(count)
        values = np.interp(fine, base, values.real) \
            + 1j * np.interp(fine, base, values.imag)
    dkf = dk / refine
    kx = kstart + dkf * np.arange(values.shape[0])
    out = np.empty(xs.shape[0], dtype=np.complex128)
    for i, x in enumerate(xs):
        out[i] = _filon_window(kx, values, x, gamma, dkf) * dkf
    return out
