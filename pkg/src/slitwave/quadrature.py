"""Shared numerical integration utilities.

Two families live here:

* phase-adaptive Gauss-Legendre quadrature for oscillatory integrands
  (the workhorse behind the spatial diffraction integrals), and
* trapezoid rules with exact end-cell interpolation for smooth sampled
  densities (momentum masses, L1 distances, normalization checks).

Summation order is fixed (left-to-right cells, ascending nodes), so
results are bit-identical across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OutOfSpanError, QuadratureBudgetError
from .geometry import Grid1D

__all__ = [
    "QuadratureBudget",
    "integrate_oscillatory",
    "integrate_smooth",
    "cumulative_trapezoid",
    "interval_masses",
    "gauss_nodes",
]

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gauss_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1], cached per order."""
    if order not in _GL_CACHE:
        _GL_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GL_CACHE[order]


@dataclass(frozen=True)
class QuadratureBudget:
    """Limits for the oscillatory integrator.

    ``target_phase_step`` is the maximum phase advance allowed across
    one subdivision cell; ``rule_order`` the Gauss-Legendre order per
    cell; ``max_nodes`` the hard cap on total node count per integral.
    """

    max_nodes: int = 4_194_304
    target_phase_step: float = np.pi / 4
    rule_order: int = 8

    def __post_init__(self):
        if not (0 < self.target_phase_step <= np.pi):
            raise ValueError("target_phase_step must be in (0, pi]")
        if self.max_nodes < self.rule_order:
            raise ValueError("max_nodes must be at least rule_order")


def _subdivide(phase_rate, a: float, b: float, budget: QuadratureBudget) -> np.ndarray:
    """Cell boundaries such that each cell's phase span <= target.

    Deterministic bisection: a segment is split while the conservative
    bound max(rate at endpoints, midpoint) * length exceeds the target.
    """
    target = budget.target_phase_step
    max_cells = budget.max_nodes // budget.rule_order
    bounds = [a]
    stack = [(a, b)]
    cells = 0
    while stack:
        lo, hi = stack.pop()
        mid = 0.5 * (lo + hi)
        rate = max(abs(phase_rate(lo)), abs(phase_rate(mid)), abs(phase_rate(hi)))
        if rate * (hi - lo) <= target or (hi - lo) <= abs(mid) * 1e-15 + 1e-300:
            cells += 1
            if cells > max_cells:
                raise QuadratureBudgetError(
                    f"oscillatory integral needs more than {max_cells} cells "
                    f"(max_nodes={budget.max_nodes})")
            bounds.append(hi)
        else:
            # Left half handled after the pop below it; push right first
            stack.append((mid, hi))
            stack.append((lo, mid))
    return np.asarray(bounds)


def integrate_oscillatory(integrand, phase_rate, interval,
                          budget: QuadratureBudget | None = None) -> complex:
    """Integrate a rapidly oscillating complex integrand over an interval.

    ``integrand`` must accept an ndarray of abscissas and return complex
    values; ``phase_rate`` gives |d(phase)/dx| at a scalar abscissa and
    steers the subdivision.  Cells are sized so the phase advances at
    most ``budget.target_phase_step`` per cell, then integrated with a
    fixed-order Gauss-Legendre rule.
    """
    if budget is None:
        budget = QuadratureBudget()
    a, b = float(interval[0]), float(interval[1])
    if a == b:
        return 0.0 + 0.0j
    if not np.isfinite(a) or not np.isfinite(b):
        raise ValueError("interval must be finite")
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    bounds = _subdivide(phase_rate, a, b, budget)
    xg, wg = gauss_nodes(budget.rule_order)
    mid = 0.5 * (bounds[:-1] + bounds[1:])
    half = 0.5 * np.diff(bounds)
    nodes = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    values = np.asarray(integrand(nodes), dtype=np.complex128)
    return sign * complex(np.sum(weights * values))


def cumulative_trapezoid(values: np.ndarray, step: float) -> np.ndarray:
    """Cumulative trapezoid integral; element i is the integral up to point i."""
    values = np.asarray(values, dtype=float)
    out = np.empty(values.shape[0])
    out[0] = 0.0
    np.cumsum(0.5 * step * (values[1:] + values[:-1]), out=out[1:])
    return out


def _cumulative_at(points, values, cum, grid: Grid1D, where: np.ndarray) -> np.ndarray:
    """Integral of the linear interpolant from grid.start up to ``where``.

    ``where`` must already be clipped to the grid span.  Within a cell
    the interpolant integrates exactly (quadratic in the offset).
    """
    idx = np.clip(((where - grid.start) // grid.step).astype(np.int64),
                  0, grid.count - 2)
    x0 = grid.start + idx * grid.step
    frac = where - x0
    v0 = values[idx]
    slope = (values[idx + 1] - v0) / grid.step
    return cum[idx] + v0 * frac + 0.5 * slope * frac * frac


def interval_masses(values: np.ndarray, grid: Grid1D, lo: np.ndarray,
                    hi: np.ndarray, cum: np.ndarray | None = None) -> np.ndarray:
    """Vectorized ``integral of samples over [lo, hi]`` with span clamping.

    Limits beyond the grid span clamp to it (the integrand is treated
    as zero outside).  Built on a shared cumulative-trapezoid table so
    adjacent intervals add exactly.
    """
    values = np.asarray(values, dtype=float)
    if cum is None:
        cum = cumulative_trapezoid(values, grid.step)
    start, stop = grid.span()
    lo_c = np.clip(np.asarray(lo, dtype=float), start, stop)
    hi_c = np.clip(np.asarray(hi, dtype=float), start, stop)
    points = None
    upper = _cumulative_at(points, values, cum, grid, np.maximum(hi_c, lo_c))
    lower = _cumulative_at(points, values, cum, grid, lo_c)
    return upper - lower


def integrate_smooth(values: np.ndarray, grid: Grid1D, lo: float | None = None,
                     hi: float | None = None, *, span_slack: float = 0.0) -> float:
    """Trapezoid integral of sampled values over [lo, hi].

    End cells integrate the linear interpolant exactly.  Limits may
    exceed the grid span by at most ``span_slack`` (they clamp); beyond
    that an :class:`OutOfSpanError` is raised.
    """
    start, stop = grid.span()
    if lo is None:
        lo = start
    if hi is None:
        hi = stop
    if hi < lo:
        raise OutOfSpanError(f"integration limits reversed: [{lo}, {hi}]")
    if lo < start - span_slack or hi > stop + span_slack:
        raise OutOfSpanError(
            f"limits [{lo}, {hi}] outside grid span [{start}, {stop}] "
            f"by more than slack {span_slack}")
    out = interval_masses(values, grid, np.array([lo]), np.array([hi]))
    return float(out[0])
