# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled versions of the hot kernels.

Same cell construction and summation order as ``_reference``; selected
automatically at import when built.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport M_PI, ceil, cos, fabs, floor, hypot, sin, sqrt

from ..errors import QuadratureBudgetError

cnp.import_array()

ctypedef cnp.float64_t f64
ctypedef cnp.complex128_t c128


cdef inline double _sinc(double z) nogil:
    if fabs(z) < 1e-6:
        return 1.0 - z * z / 6.0
    return sin(z) / z


cdef inline double complex _cis(double t) nogil:
    return cos(t) + 1j * sin(t)


def chirp_field(cnp.ndarray[f64, ndim=1] xs,
                cnp.ndarray[f64, ndim=1] seg_lo,
                cnp.ndarray[f64, ndim=1] seg_hi,
                cnp.ndarray[c128, ndim=1] amps,
                double alpha,
                cnp.ndarray[f64, ndim=1] glx,
                cnp.ndarray[f64, ndim=1] glw,
                double dphi, long max_cells):
    """Phase-equalized Gauss-Legendre quadrature of the Fresnel chirp."""
    cdef Py_ssize_t nx = xs.shape[0], nseg = seg_lo.shape[0], ng = glx.shape[0]
    cdef cnp.ndarray[c128, ndim=1] out = np.empty(nx, dtype=np.complex128)
    cdef Py_ssize_t i, j, m, g
    cdef double x, s0, s1, p0, p1, a_, b_, pa, pb, ph, sa, sb, mid, half, node
    cdef double complex acc, cell
    cdef long ncell, total
    cdef double[4] side_a
    cdef double[4] side_b
    cdef int nsides, side

    for i in range(nx):
        x = xs[i]
        total = 0
        acc = 0
        for j in range(nseg):
            s0 = seg_lo[j] - x
            s1 = seg_hi[j] - x
            if s0 < 0.0 < s1:
                nsides = 2
                side_a[0] = s0; side_b[0] = 0.0
                side_a[1] = 0.0; side_b[1] = s1
            else:
                nsides = 1
                side_a[0] = s0; side_b[0] = s1
            cell = 0
            for side in range(nsides):
                a_ = side_a[side]; b_ = side_b[side]
                pa = alpha * a_ * a_
                pb = alpha * b_ * b_
                ncell = <long>ceil(fabs(pb - pa) / dphi)
                if ncell < 1:
                    ncell = 1
                total += ncell
                if total > max_cells:
                    raise QuadratureBudgetError(
                        f"chirp quadrature needs more than {max_cells} cells "
                        f"at x={x}")
                sa = a_
                for m in range(1, ncell + 1):
                    ph = pa + (pb - pa) * m / ncell
                    if ph < 0.0:
                        ph = 0.0
                    if m == ncell:
                        sb = b_
                    else:
                        sb = sqrt(ph / alpha)
                        if a_ + b_ < 0.0:
                            sb = -sb
                    mid = 0.5 * (sa + sb)
                    half = 0.5 * (sb - sa)
                    for g in range(ng):
                        node = mid + half * glx[g]
                        cell = cell + half * glw[g] * _cis(alpha * node * node)
                    sa = sb
            acc = acc + amps[j] * cell
        out[i] = acc
    return out


def kirchhoff_field(cnp.ndarray[f64, ndim=1] xs,
                    cnp.ndarray[f64, ndim=1] seg_lo,
                    cnp.ndarray[f64, ndim=1] seg_hi,
                    cnp.ndarray[c128, ndim=1] amps,
                    double y, double k,
                    cnp.ndarray[f64, ndim=1] glx,
                    cnp.ndarray[f64, ndim=1] glw,
                    double dphi, long max_cells):
    """Spherical-wavelet integral with obliquity, phase-equalized cells."""
    cdef Py_ssize_t nx = xs.shape[0], nseg = seg_lo.shape[0], ng = glx.shape[0]
    cdef cnp.ndarray[c128, ndim=1] out = np.empty(nx, dtype=np.complex128)
    cdef Py_ssize_t i, j, m, g
    cdef double x, s0, s1, a_, b_, pa, pb, ph, sa, sb, mid, half, node, s, q
    cdef double complex acc, cell
    cdef long ncell, total
    cdef double[4] side_a
    cdef double[4] side_b
    cdef int nsides, side

    for i in range(nx):
        x = xs[i]
        total = 0
        acc = 0
        for j in range(nseg):
            s0 = seg_lo[j] - x
            s1 = seg_hi[j] - x
            if s0 < 0.0 < s1:
                nsides = 2
                side_a[0] = s0; side_b[0] = 0.0
                side_a[1] = 0.0; side_b[1] = s1
            else:
                nsides = 1
                side_a[0] = s0; side_b[0] = s1
            cell = 0
            for side in range(nsides):
                a_ = side_a[side]; b_ = side_b[side]
                pa = k * a_ * a_ / (hypot(y, a_) + y)
                pb = k * b_ * b_ / (hypot(y, b_) + y)
                ncell = <long>ceil(fabs(pb - pa) / dphi)
                if ncell < 1:
                    ncell = 1
                total += ncell
                if total > max_cells:
                    raise QuadratureBudgetError(
                        f"kirchhoff quadrature needs more than {max_cells} "
                        f"cells at x={x}")
                sa = a_
                for m in range(1, ncell + 1):
                    ph = pa + (pb - pa) * m / ncell
                    if ph < 0.0:
                        ph = 0.0
                    if m == ncell:
                        sb = b_
                    else:
                        q = ph / k
                        sb = sqrt(q * (2.0 * y + q))
                        if a_ + b_ < 0.0:
                            sb = -sb
                    mid = 0.5 * (sa + sb)
                    half = 0.5 * (sb - sa)
                    for g in range(ng):
                        node = mid + half * glx[g]
                        s = hypot(y, node)
                        cell = cell + half * glw[g] * _cis(k * node * node / (s + y)) \
                            * (1.0 + y / s) / s
                    sa = sb
            acc = acc + amps[j] * cell
        out[i] = acc
    return out


cdef inline double complex _half_kernel(double z) nogil:
    # integral_0^1 (1 - t) exp(i z t) dt
    if fabs(z) < 1e-4:
        return (0.5 + 1j * z / 6.0 - z * z / 24.0 - 1j * z * z * z / 120.0)
    return -(_cis(z) - 1.0 - 1j * z) / (z * z)


def filon_components_field(cnp.ndarray[f64, ndim=1] xs,
                           double kstart, double dk, long count, double gamma,
                           cnp.ndarray[f64, ndim=1] centers,
                           cnp.ndarray[f64, ndim=1] widths,
                           cnp.ndarray[c128, ndim=1] amps,
                           long refine=1,
                           double window_halfwidth=0.0,
                           double kstar_coef=0.0,
                           double taper_frac=0.25):
    """Filon synthesis from per-slit components with optional windowing.

    Works on the grid refined ``refine`` times (component amplitudes are
    analytic, so refinement adds no interpolation error).  A positive
    ``window_halfwidth`` restricts each component's sum to the window
    around its stationary point kstar_coef*(x - center), with cos^2
    amplitude ramps over the outer ``taper_frac`` of the window.
    """
    cdef Py_ssize_t nx = xs.shape[0], nc = centers.shape[0]
    cdef cnp.ndarray[c128, ndim=1] out = np.empty(nx, dtype=np.complex128)
    cdef long nfine = (count - 1) * refine + 1
    cdef double dkf = dk / refine
    cdef Py_ssize_t i, j
    cdef long j0, j1, nwin, nramp, jj
    cdef double x, xc, w, kstar, lo, hi, kx, env, tp, wgt, theta, tap, arg
    cdef double complex amp, acc, comp_acc, val0, val1
    cdef bint windowed = window_halfwidth > 0.0

    for i in range(nx):
        x = xs[i]
        acc = 0
        for j in range(nc):
            xc = x - centers[j]
            w = widths[j]
            amp = amps[j]
            if windowed:
                kstar = kstar_coef * xc
                lo = kstar - window_halfwidth
                hi = kstar + window_halfwidth
                j0 = <long>floor((lo - kstart) / dkf)
                j1 = <long>ceil((hi - kstart) / dkf)
                if j0 < 0:
                    j0 = 0
                if j1 > nfine - 1:
                    j1 = nfine - 1
                if j1 - j0 < 2:
                    continue
            else:
                j0 = 0
                j1 = nfine - 1
            nwin = j1 - j0 + 1
            nramp = <long>(taper_frac * nwin) if windowed else 0
            if nramp > (nwin - 1) // 2:
                nramp = (nwin - 1) // 2
            comp_acc = 0
            val0 = 0
            val1 = 0
            for jj in range(j0, j1 + 1):
                kx = kstart + jj * dkf
                env = w * _sinc(0.5 * kx * w)
                if nramp > 0:
                    if jj - j0 < nramp:
                        arg = sin(0.5 * M_PI * (jj - j0 + 1) / (nramp + 1.0))
                        env *= arg * arg
                    elif j1 - jj < nramp:
                        arg = sin(0.5 * M_PI * (j1 - jj + 1) / (nramp + 1.0))
                        env *= arg * arg
                theta = kx * xc - gamma * kx * kx
                tp = (xc - 2.0 * gamma * kx) * dkf
                wgt = _sinc(0.5 * tp)
                wgt = wgt * wgt
                if jj == j0:
                    val0 = env * _cis(theta)
                    comp_acc = comp_acc + val0 * wgt
                elif jj == j1:
                    val1 = env * _cis(theta)
                    comp_acc = comp_acc + val1 * wgt
                else:
                    comp_acc = comp_acc + env * _cis(theta) * wgt
            # boundary half-triangles replace the end weights
            tp = (xc - 2.0 * gamma * (kstart + j0 * dkf)) * dkf
            wgt = _sinc(0.5 * tp); wgt = wgt * wgt
            comp_acc = comp_acc + val0 * (_half_kernel(tp) - wgt)
            tp = (xc - 2.0 * gamma * (kstart + j1 * dkf)) * dkf
            wgt = _sinc(0.5 * tp); wgt = wgt * wgt
            comp_acc = comp_acc + val1 * (_half_kernel(-tp).conjugate() - wgt)
            acc = acc + amp * comp_acc
        out[i] = acc * dkf
    return out


def filon_samples_field(cnp.ndarray[f64, ndim=1] xs,
                        double kstart, double dk,
                        cnp.ndarray[c128, ndim=1] values,
                        double gamma, long refine=1):
    """Filon synthesis from raw spectrum samples (linear interpolation)."""
    cdef Py_ssize_t nx = xs.shape[0]
    cdef long count = values.shape[0]
    cdef long nfine = (count - 1) * refine + 1
    cdef double dkf = dk / refine
    cdef cnp.ndarray[c128, ndim=1] out = np.empty(nx, dtype=np.complex128)
    cdef Py_ssize_t i
    cdef long jj, base
    cdef double x, kx, tp, wgt, theta, frac
    cdef double complex acc, cval, val0, val1

    for i in range(nx):
        x = xs[i]
        acc = 0
        val0 = 0
        val1 = 0
        for jj in range(nfine):
            if refine == 1:
                cval = values[jj]
            else:
                base = jj // refine
                if base >= count - 1:
                    cval = values[count - 1]
                else:
                    frac = (jj - base * refine) / <double>refine
                    cval = values[base] * (1.0 - frac) + values[base + 1] * frac
            kx = kstart + jj * dkf
            theta = kx * x - gamma * kx * kx
            tp = (x - 2.0 * gamma * kx) * dkf
            wgt = _sinc(0.5 * tp)
            wgt = wgt * wgt
            cval = cval * _cis(theta)
            if jj == 0:
                val0 = cval
            elif jj == nfine - 1:
                val1 = cval
            acc = acc + cval * wgt
        tp = (x - 2.0 * gamma * kstart) * dkf
        wgt = _sinc(0.5 * tp); wgt = wgt * wgt
        acc = acc + val0 * (_half_kernel(tp) - wgt)
        tp = (x - 2.0 * gamma * (kstart + (nfine - 1) * dkf)) * dkf
        wgt = _sinc(0.5 * tp); wgt = wgt * wgt
        acc = acc + val1 * (_half_kernel(-tp).conjugate() - wgt)
        out[i] = acc * dkf
    return out
