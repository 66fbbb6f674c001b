"""Supports for measures: intervals, circles, ellipses, polynomial lemniscates.

Every support is described by a list of smooth parametrized arcs.  For a
polynomial lemniscate sigma = {z : |T(z)| = 1} the arcs are produced by a
predictor-corrector tracer and are parametrized by the continuous image angle
theta, meaning T(z(theta)) = exp(i*theta).  In that parametrization a jump of
a circle weight at angle t0 pulls back to parameter jumps at t0 mod 2*pi on
every component, which is what the measure layer relies on.
"""

import cmath
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError, GeometryError, NumericError, TracingError

# Tracing and root-finding tolerances.
CRITICAL_POINT_TOL = 1e-6   # |T'| below this near the curve is degenerate
TRACE_CHORD_TOL = 1e-8      # polyline sagitta budget per step
MERGE_TOL = 1e-6            # points closer than this are the same curve point
PREIMAGE_TOL = 1e-10        # residual bound for polished roots

_polyval = np.polynomial.polynomial.polyval


class ComplexPolynomial:
    """Polynomial with complex coefficients stored lowest degree first."""

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        if c.ndim != 1 or c.size == 0:
            raise GeometryError("coefficients must be a nonempty 1-d sequence")
        if c.size > 1 and c[-1] == 0:
            raise GeometryError("leading coefficient must be nonzero")
        self.coeffs = c

    @property
    def degree(self):
        return self.coeffs.size - 1

    def __call__(self, z):
        return _polyval(z, self.coeffs)

    def derivative(self):
        if self.degree == 0:
            return ComplexPolynomial([0.0])
        return ComplexPolynomial(np.polynomial.polynomial.polyder(self.coeffs))

    def shifted(self, delta):
        """Polynomial T(z) + delta."""
        c = self.coeffs.copy()
        c[0] += delta
        return ComplexPolynomial(c)

    def __repr__(self):
        return f"ComplexPolynomial({list(self.coeffs)})"


def _horner(coeffs, z):
    """Scalar Horner evaluation; faster than numpy for single points."""
    acc = 0j
    for c in coeffs:
        acc = acc * z + c
    return acc


@dataclass
class ArcParametrization:
    """One smooth arc of a support.

    ``point`` maps parameter values to points in the plane, ``velocity`` is
    its derivative; both accept scalars or numpy arrays.  ``closed`` marks a
    full closed loop (the parameter wraps modulo the interval length).  For
    lemniscate components ``image_angle`` is true: the parameter is the
    continuous angle of T(z) and ``winding`` counts how many times T covers
    the image circle along the component.
    """

    point: object
    velocity: object
    t_lo: float
    t_hi: float
    closed: bool = False
    smoothness: str = "analytic"
    label: str = ""
    winding: int = None
    image_angle: bool = False

    @property
    def span(self):
        return self.t_hi - self.t_lo


def arc_length(arc, t_lo=None, t_hi=None, panels=64, order=16):
    """Arc length of ``arc`` between two parameters via panelwise Gauss rules."""
    lo = arc.t_lo if t_lo is None else t_lo
    hi = arc.t_hi if t_hi is None else t_hi
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(lo, hi, panels + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        t = 0.5 * (b - a) * x + 0.5 * (a + b)
        total += 0.5 * (b - a) * np.sum(w * np.abs(arc.velocity(t)))
    return total


@dataclass
class SupportSpec:
    """Geometric description of where a measure lives.

    ``kind`` is one of ``interval``, ``circle``, ``ellipse``, ``lemniscate``
    or ``arcs``; only the fields relevant to the kind are set.  Lemniscate
    arcs are traced lazily on first use and cached on the instance.
    """

    kind: str
    interval: tuple = None
    center: complex = 0j
    radius: float = 1.0
    axes: tuple = None
    rotation: float = 0.0
    poly: ComplexPolynomial = None
    custom_arcs: list = None
    _arcs: list = field(default=None, repr=False, compare=False)

    @classmethod
    def make_interval(cls, a, b):
        a, b = float(a), float(b)
        if not (math.isfinite(a) and math.isfinite(b)) or a >= b:
            raise GeometryError(f"interval endpoints must satisfy a < b, got [{a}, {b}]")
        return cls(kind="interval", interval=(a, b))

    @classmethod
    def make_circle(cls, radius=1.0, center=0j):
        radius = float(radius)
        if not radius > 0:
            raise GeometryError("circle radius must be positive")
        return cls(kind="circle", radius=radius, center=complex(center))

    @classmethod
    def make_ellipse(cls, a, b, center=0j, rotation=0.0):
        a, b = float(a), float(b)
        if not (a > 0 and b > 0):
            raise GeometryError("ellipse semi-axes must be positive")
        return cls(kind="ellipse", axes=(a, b), center=complex(center),
                   rotation=float(rotation))

    @classmethod
    def make_lemniscate(cls, poly):
        if not isinstance(poly, ComplexPolynomial):
            poly = ComplexPolynomial(poly)
        if poly.degree < 1:
            raise GeometryError("lemniscate polynomial must have degree >= 1")
        return cls(kind="lemniscate", poly=poly)

    @classmethod
    def from_arcs(cls, arcs):
        arcs = list(arcs)
        if not arcs:
            raise GeometryError("at least one arc is required")
        for arc in arcs:
            if not isinstance(arc, ArcParametrization):
                raise GeometryError("from_arcs expects ArcParametrization objects")
            if not arc.t_hi > arc.t_lo:
                raise GeometryError("arc parameter interval must be nondegenerate")
        return cls(kind="arcs", custom_arcs=arcs)


def parametrize(support):
    """Smooth arcs covering the support, traced and cached for lemniscates."""
    if support._arcs is not None:
        return support._arcs

    kind = support.kind
    if kind == "interval":
        a, b = support.interval
        arcs = [ArcParametrization(
            point=lambda t: np.asarray(t, dtype=complex),
            velocity=lambda t: np.ones_like(np.asarray(t, dtype=complex)),
            t_lo=a, t_hi=b, label="interval")]
    elif kind == "circle":
        c, r = support.center, support.radius
        arcs = [ArcParametrization(
            point=lambda t, c=c, r=r: c + r * np.exp(1j * np.asarray(t, dtype=float)),
            velocity=lambda t, r=r: 1j * r * np.exp(1j * np.asarray(t, dtype=float)),
            t_lo=0.0, t_hi=2.0 * math.pi, closed=True, label="circle")]
    elif kind == "ellipse":
        a, b = support.axes
        c, rot = support.center, cmath.exp(1j * support.rotation)

        def _pt(t, a=a, b=b, c=c, rot=rot):
            t = np.asarray(t, dtype=float)
            return c + rot * (a * np.cos(t) + 1j * b * np.sin(t))

        def _vel(t, a=a, b=b, rot=rot):
            t = np.asarray(t, dtype=float)
            return rot * (-a * np.sin(t) + 1j * b * np.cos(t))

        arcs = [ArcParametrization(point=_pt, velocity=_vel, t_lo=0.0,
                                   t_hi=2.0 * math.pi, closed=True, label="ellipse")]
    elif kind == "lemniscate":
        arcs = trace_lemniscate(support.poly)
    elif kind == "arcs":
        arcs = list(support.custom_arcs)
    else:
        raise GeometryError(f"unknown support kind {kind!r}")

    support._arcs = arcs
    return arcs


def preimages(poly, w, tol=PREIMAGE_TOL):
    """All solutions of T(z) = w, as a deterministically ordered array.

    Roots come from the companion matrix of T - w and are polished by a few
    Newton steps; the polished residual must satisfy |T(z) - w| < tol * scale.
    """
    if not isinstance(poly, ComplexPolynomial):
        poly = ComplexPolynomial(poly)
    if poly.degree < 1:
        raise GeometryError("preimages need a polynomial of degree >= 1")
    c = poly.coeffs.copy()
    c[0] -= w
    z = np.polynomial.polynomial.polyroots(c)
    dp = poly.derivative()
    for _ in range(8):
        f = poly(z) - w
        g = dp(z)
        safe = np.abs(g) > 1e-300
        z = z - np.where(safe, f / np.where(safe, g, 1.0), 0.0)
    res = np.abs(poly(z) - w)
    scale = max(1.0, abs(w))
    if res.max() > tol * scale:
        raise NumericError(
            f"preimage polishing stalled: residual {res.max():.3e} exceeds {tol * scale:.1e}")
    order = np.lexsort((np.round(z.imag, 9), np.round(z.real, 9)))
    return z[order]


def _normal_correct(ct, cd, z, tol=1e-13, maxit=30):
    """Pull z back onto |T| = 1 by Newton along the gradient of |T|.

    Returns the corrected point, the total distance moved, and whether the
    residual target was met.
    """
    moved = 0.0
    for _ in range(maxit):
        w = _horner(ct, z)
        aw = abs(w)
        f = aw - 1.0
        if abs(f) < tol:
            return z, moved, True
        dw = _horner(cd, z)
        grad = (w.conjugate() * dw).conjugate()  # ascent direction of |T|
        g = abs(grad)
        if g < 1e-300:
            break
        nhat = grad / g
        slope = g / aw
        r = -f / slope
        z = z + r * nhat
        moved += abs(r)
    w = _horner(ct, z)
    return z, moved, abs(abs(w) - 1.0) < tol


def _image_newton(poly, dpoly, z, w_target, tol=5e-14, maxit=40):
    """Full Newton solve of T(z) = w_target, vectorized over points."""
    z = np.asarray(z, dtype=complex).copy()
    w_target = np.asarray(w_target, dtype=complex)
    for _ in range(maxit):
        f = poly(z) - w_target
        if np.max(np.abs(f)) < tol:
            break
        g = dpoly(z)
        if np.min(np.abs(g)) < 1e-300:
            raise TracingError("Newton hit a critical point of T")
        z = z - f / g
    res = np.max(np.abs(poly(z) - w_target))
    if res > 100 * tol:
        raise TracingError(f"image Newton residual {res:.3e} did not converge")
    return z


def _walk_component(poly, dpoly, z_start, chord_tol=TRACE_CHORD_TOL):
    """Walk once around the component of |T| = 1 through z_start.

    Returns (thetas, points, winding): a polyline on the curve with the
    unwrapped image angle of each vertex.  The walk advances the image angle
    monotonically; closure is declared when the angle has advanced by a
    multiple of 2*pi and the fiber point there coincides with the start.
    """
    ct = tuple(poly.coeffs[::-1])
    cd = tuple(poly.derivative().coeffs[::-1])
    z0, _, ok = _normal_correct(ct, cd, complex(z_start))
    if not ok:
        raise TracingError("seed does not lie on the curve")
    w0 = _horner(ct, z0)
    theta0 = math.atan2(w0.imag, w0.real)

    thetas = [theta0]
    points = [z0]
    theta = theta0
    z = z0
    dtheta = 2.0 * math.pi / 64.0
    dtheta_max = math.pi / 8.0
    scale = 1.0 + abs(z0)
    max_steps = 600000

    for _ in range(max_steps):
        w = _horner(ct, z)
        dw = _horner(cd, z)
        if abs(dw) < CRITICAL_POINT_TOL:
            raise GeometryError("lemniscate has a critical point on the curve; "
                                "the trace is not well defined there")
        tau = 1j * w / dw
        tau /= abs(tau)
        h = dtheta / abs(dw)
        while True:
            z_pred = z + h * tau
            z_new, corr, ok = _normal_correct(ct, cd, z_pred)
            if ok:
                w_new = _horner(ct, z_new)
                dth = cmath.phase(w_new / w)
                # the chord sagitta is roughly a quarter of the corrector pull
                if 0 < dth <= dtheta_max * 1.5 and corr <= 4.0 * chord_tol:
                    break
            h *= 0.5
            if h < 1e-15 * scale:
                raise TracingError("step size underflow while tracing")
        prev_theta = theta
        theta = theta + dth
        z = z_new
        points.append(z)
        thetas.append(theta)
        dtheta = dth  # image-angle step actually achieved
        # grow the step when the curvature allows it, back off when it bites
        if corr < chord_tol:
            dtheta = min(dtheta * 1.4, dtheta_max)
        elif corr > 2.0 * chord_tol:
            dtheta *= 0.7

        k_prev = math.floor((prev_theta - theta0) / (2.0 * math.pi) + 1e-13)
        k_new = math.floor((theta - theta0) / (2.0 * math.pi) + 1e-13)
        if k_new > k_prev and k_new >= 1:
            # the walk crossed theta0 + 2*pi*k_new: land there exactly
            zc = _image_newton(poly, dpoly, np.array([z]), np.array([w0]))[0]
            if abs(zc - z0) < MERGE_TOL * scale:
                points[-1] = zc
                thetas[-1] = theta0 + 2.0 * math.pi * k_new
                return np.array(thetas), np.array(points), k_new
            if k_new >= poly.degree:
                raise TracingError("component failed to close after full winding")
    raise TracingError("tracing exceeded the step budget")


def _resample_component(poly, dpoly, thetas, points, winding, samples):
    """Uniform image-angle grid along a traced component."""
    theta0 = thetas[0]
    span = 2.0 * math.pi * winding
    grid_t = theta0 + span * np.arange(samples) / samples
    idx = np.clip(np.searchsorted(thetas, grid_t), 0, len(points) - 1)
    z0 = points[idx]
    grid_z = _image_newton(poly, dpoly, z0, np.exp(1j * grid_t))
    return grid_t, grid_z


def _component_arc(poly, dpoly, theta0, grid_z, winding, label):
    """Arc parametrized by the image angle, evaluated by Newton refinement."""
    samples = grid_z.size
    span = 2.0 * math.pi * winding
    dt = span / samples

    def _solve(theta, poly=poly, dpoly=dpoly, theta0=theta0, dt=dt,
               grid=grid_z, samples=samples):
        theta = np.asarray(theta, dtype=float)
        shape = theta.shape
        th = np.atleast_1d(theta)
        idx = np.mod(np.round((th - theta0) / dt).astype(int), samples)
        z = _image_newton(poly, dpoly, grid[idx], np.exp(1j * th))
        return z.reshape(shape)

    def _vel(theta, dpoly=dpoly, solve=_solve):
        theta = np.asarray(theta, dtype=float)
        z = solve(theta)
        return 1j * np.exp(1j * theta) / dpoly(z)

    return ArcParametrization(point=_solve, velocity=_vel, t_lo=theta0,
                              t_hi=theta0 + span, closed=True, label=label,
                              winding=winding, image_angle=True)


def trace_lemniscate(poly, samples_per_component=1024):
    """Trace every component of |T(z)| = 1 for a polynomial T.

    Seeds are the preimages of eight equally spaced points on the image
    circle; each untouched seed starts a predictor-corrector walk whose
    corrector is a Newton solve along the normal direction.  Components are
    resampled on a uniform image-angle grid and returned as arcs whose
    windings sum to the degree of T.
    """
    if not isinstance(poly, ComplexPolynomial):
        poly = ComplexPolynomial(poly)
    if poly.degree < 1:
        raise GeometryError("lemniscate polynomial must have degree >= 1")
    dpoly = poly.derivative()

    arcs = []
    covered_winding = 0
    for j in range(8):
        wj = cmath.exp(2j * math.pi * j / 8.0)
        for seed in preimages(poly, wj):
            if abs(dpoly(seed)) < CRITICAL_POINT_TOL:
                continue  # near-critical seed, unusable as a start point
            if any(_on_component(arc, poly, seed) for arc in arcs):
                continue
            thetas, points, winding = _walk_component(poly, dpoly, seed)
            grid_t, grid_z = _resample_component(poly, dpoly, thetas, points,
                                                 winding, samples_per_component)
            arcs.append(_component_arc(poly, dpoly, grid_t[0], grid_z, winding,
                                       label=f"component{len(arcs)}"))
            covered_winding += winding
            if covered_winding == poly.degree:
                break
        if covered_winding == poly.degree:
            break
    if covered_winding != poly.degree:
        raise TracingError(
            f"traced windings sum to {covered_winding}, expected {poly.degree}")
    return arcs


def _on_component(arc, poly, z, tol=MERGE_TOL):
    """Whether z lies on an already-traced component."""
    w = complex(poly(z))
    phi = math.atan2(w.imag, w.real)
    k0 = math.ceil((arc.t_lo - phi) / (2.0 * math.pi) - 1e-12)
    cand = [phi + 2.0 * math.pi * (k0 + j) for j in range(arc.winding)]
    pts = arc.point(np.array(cand))
    return bool(np.min(np.abs(pts - z)) < tol * (1.0 + abs(z)))


def partition_arcs(poly, base_point_image=1.0 + 0j, support=None):
    """Split a traced lemniscate at the fiber over a base image point.

    Each component of winding m contributes m arcs of image-angle length
    2*pi whose endpoints are preimages of the base point; exactly deg(T)
    arcs come back in total.
    """
    if not isinstance(poly, ComplexPolynomial):
        poly = ComplexPolynomial(poly)
    w = complex(base_point_image)
    if abs(abs(w) - 1.0) > 1e-9:
        raise DomainError("base point must lie on the image circle")
    w /= abs(w)
    if support is None:
        support = SupportSpec.make_lemniscate(poly)
    comps = parametrize(support)
    phi = math.atan2(w.imag, w.real)
    out = []
    for arc in comps:
        k0 = math.ceil((arc.t_lo - phi) / (2.0 * math.pi) - 1e-12)
        start = phi + 2.0 * math.pi * k0
        for j in range(arc.winding):
            lo = start + 2.0 * math.pi * j
            out.append(replace(arc, t_lo=lo, t_hi=lo + 2.0 * math.pi,
                               closed=False, winding=1,
                               label=f"{arc.label}/cut{j}"))
    if len(out) != poly.degree:
        raise TracingError("arc partition does not match the polynomial degree")
    return out


def project_to_support(support, z, tol=1e-8):
    """Locate z on the support: returns (arc index, parameter, nearest point).

    Raises DomainError when z is farther than tol from the support.
    """
    z = complex(z)
    arcs = parametrize(support)
    if support.kind == "interval":
        a, b = support.interval
        if abs(z.imag) > tol or z.real < a - tol or z.real > b + tol:
            raise DomainError(f"{z} is not on the interval [{a}, {b}]")
        return 0, min(max(z.real, a), b), complex(min(max(z.real, a), b))
    if support.kind == "circle":
        c, r = support.center, support.radius
        if abs(abs(z - c) - r) > tol:
            raise DomainError(f"{z} is not on the circle")
        t = math.atan2((z - c).imag, (z - c).real) % (2.0 * math.pi)
        point = c + r * cmath.exp(1j * t)
        return 0, t, point
    if support.kind == "ellipse":
        a, b = support.axes
        zeta = (z - support.center) * cmath.exp(-1j * support.rotation)
        t = math.atan2(zeta.imag / b, zeta.real / a) % (2.0 * math.pi)
        point = complex(arcs[0].point(t))
        if abs(point - z) > tol:
            raise DomainError(f"{z} is not on the ellipse")
        return 0, t, point
    if support.kind == "lemniscate":
        w = complex(support.poly(z))
        if abs(abs(w) - 1.0) > max(tol, 1e-6):
            raise DomainError(f"{z} is not on the lemniscate")
        phi = math.atan2(w.imag, w.real)
        best = None
        for i, arc in enumerate(arcs):
            k0 = math.ceil((arc.t_lo - phi) / (2.0 * math.pi) - 1e-12)
            cand = phi + 2.0 * math.pi * (k0 + np.arange(arc.winding))
            pts = arc.point(cand)
            j = int(np.argmin(np.abs(pts - z)))
            d = abs(pts[j] - z)
            if best is None or d < best[0]:
                best = (d, i, float(cand[j]), complex(pts[j]))
        d, i, t, point = best
        if d > tol * (1.0 + abs(z)):
            raise DomainError(f"{z} is not on the lemniscate (distance {d:.2e})")
        return i, t, point
    # generic fallback: dense sampling plus interval refinement
    best = None
    for i, arc in enumerate(arcs):
        ts = np.linspace(arc.t_lo, arc.t_hi, 4097)
        j = int(np.argmin(np.abs(arc.point(ts) - z)))
        lo = ts[max(0, j - 1)]
        hi = ts[min(len(ts) - 1, j + 1)]
        for _ in range(40):
            tt = np.linspace(lo, hi, 9)
            k = int(np.argmin(np.abs(arc.point(tt) - z)))
            lo = tt[max(0, k - 1)]
            hi = tt[min(8, k + 1)]
        t = 0.5 * (lo + hi)
        point = complex(arc.point(t))
        d = abs(point - z)
        if best is None or d < best[0]:
            best = (d, i, t, point)
    d, i, t, point = best
    if d > tol * (1.0 + abs(z)):
        raise DomainError(f"{z} is not on the support (distance {d:.2e})")
    return i, t, point
