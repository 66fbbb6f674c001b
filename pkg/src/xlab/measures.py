"""Measures on supports: piecewise-constant jumps times a smooth factor.

A measure is d(mu) = w0(t) * v(t) * (arc speed) dt on each arc, where v is
either a constant or a jump weight.  On an open arc a jump weight takes the
value A for t <= t0 and B for t > t0.  On a closed arc of period P it takes
the value B on the closed half [t0, t0 + P/2] and A on the open complement,
so there are two switch points, t0 and its antipode.  Interval measures may
additionally carry an inverse square root factor 1/sqrt(1 - s(x)^2) with s
the affine map onto [-1, 1]; that factor is what cosine symmetrization of a
circle measure produces.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (CapabilityError, DomainError, InputError,
                     MeasureFormatError, SymmetryError)
from .geometry import (ComplexPolynomial, SupportSpec, parametrize,
                       project_to_support)

_polyval = np.polynomial.polynomial.polyval

JUMP_SNAP_TOL = 1e-9  # parameter distance below which a point sits "at" a jump


class SmoothFactor:
    """Polynomial factor of the weight, in the arc parameter, positive there."""

    def __init__(self, coeffs=(1.0,)):
        c = np.atleast_1d(np.asarray(coeffs, dtype=float))
        if c.ndim != 1 or c.size == 0:
            raise InputError("smooth factor needs a nonempty coefficient list")
        self.coeffs = c

    @classmethod
    def constant(cls, c=1.0):
        return cls([float(c)])

    @property
    def is_constant(self):
        return self.coeffs.size == 1 or not np.any(self.coeffs[1:])

    def __call__(self, t):
        return _polyval(np.asarray(t, dtype=float), self.coeffs)

    def scaled(self, c):
        return SmoothFactor(self.coeffs * float(c))

    def __repr__(self):
        return f"SmoothFactor({[float(c) for c in self.coeffs]})"


class ConstantWeight:
    """Weight without jumps."""

    def __init__(self, c=1.0):
        c = float(c)
        if not c > 0:
            raise InputError("weight must be positive")
        self.c = c

    def value(self, t, side=None):
        return np.full_like(np.asarray(t, dtype=float), self.c)

    def breakpoints(self, t_lo, t_hi):
        return []

    def scaled(self, c):
        return ConstantWeight(self.c * c)

    def __repr__(self):
        return f"ConstantWeight({self.c})"


class JumpWeight:
    """Two-valued weight switching at jump_param (and its antipode if periodic).

    ``side`` selects one-sided limits: "left" is the limit from below in t,
    "right" from above.  A equals B is allowed and makes the weight constant.
    """

    def __init__(self, A, B, jump_param, period=None):
        A, B = float(A), float(B)
        if not (A > 0 and B > 0):
            raise InputError("jump weight values must be positive")
        self.A = A
        self.B = B
        self.jump_param = float(jump_param)
        self.period = None if period is None else float(period)

    def value(self, t, side=None):
        t = np.asarray(t, dtype=float)
        if self.period is None:
            if side == "right":
                below = t < self.jump_param
            else:  # pointwise and left limits agree on an open arc
                below = t <= self.jump_param
            return np.where(below, self.A, self.B)
        tau = np.mod(t - self.jump_param, self.period)
        half = 0.5 * self.period
        if side == "left":
            on_b = (tau > 0) & (tau <= half)
        elif side == "right":
            on_b = tau < half  # includes tau == 0
        else:
            on_b = tau <= half
        return np.where(on_b, self.B, self.A)

    def breakpoints(self, t_lo, t_hi):
        """Switch parameters strictly inside (t_lo, t_hi)."""
        if self.period is None:
            return [self.jump_param] if t_lo < self.jump_param < t_hi else []
        step = 0.5 * self.period
        k0 = math.floor((t_lo - self.jump_param) / step) + 1
        out = []
        k = k0
        while self.jump_param + k * step < t_hi - 1e-14:
            b = self.jump_param + k * step
            if b > t_lo + 1e-14:
                out.append(b)
            k += 1
        return out

    def snap_to_jump(self, t):
        """Nearest switch parameter if t is within JUMP_SNAP_TOL, else None."""
        if self.period is None:
            if abs(t - self.jump_param) < JUMP_SNAP_TOL:
                return self.jump_param
            return None
        step = 0.5 * self.period
        k = round((t - self.jump_param) / step)
        b = self.jump_param + k * step
        if abs(t - b) < JUMP_SNAP_TOL:
            return b
        return None

    def scaled(self, c):
        return JumpWeight(self.A * c, self.B * c, self.jump_param, self.period)

    def __repr__(self):
        return (f"JumpWeight(A={self.A}, B={self.B}, "
                f"jump_param={self.jump_param}, period={self.period})")


@dataclass
class Piece:
    weight: object
    smooth: SmoothFactor


class MeasureSpec:
    """A support, one weight piece per arc, and the evaluation point z0."""

    def __init__(self, support, pieces, z0=None, chebyshev=False):
        if isinstance(pieces, Piece):
            pieces = [pieces]
        if not pieces:
            raise InputError("a measure needs at least one weight piece")
        if chebyshev and support.kind != "interval":
            raise CapabilityError("the inverse square root factor is only "
                                  "defined on interval supports")
        self.support = support
        self.pieces = list(pieces)
        self.chebyshev = bool(chebyshev)
        self.z0 = None if z0 is None else complex(z0)
        self._z0_loc = None
        if self.z0 is not None:
            self._z0_loc = project_to_support(support, self.z0)
        self._validate_smooth()

    def _validate_smooth(self):
        for i, arc in enumerate(parametrize(self.support)):
            piece = self.piece_for(i)
            ts = np.linspace(arc.t_lo, arc.t_hi, 257)
            if np.min(piece.smooth(ts)) <= 0:
                raise InputError("smooth factor must stay positive on the arc")

    def piece_for(self, arc_index):
        if arc_index < len(self.pieces):
            return self.pieces[arc_index]
        return self.pieces[0]

    def z0_location(self):
        if self.z0 is None:
            raise DomainError("this measure has no evaluation point z0")
        return self._z0_loc

    def with_z0(self, z0):
        return MeasureSpec(self.support, self.pieces, z0=z0,
                           chebyshev=self.chebyshev)

    def scaled(self, c):
        """The measure c * mu; Christoffel functions scale the same way."""
        c = float(c)
        if not c > 0:
            raise InputError("scale factor must be positive")
        pieces = [Piece(p.weight.scaled(c), p.smooth) for p in self.pieces]
        return MeasureSpec(self.support, pieces, z0=self.z0,
                           chebyshev=self.chebyshev)

    def __repr__(self):
        return (f"MeasureSpec({self.support.kind}, pieces={self.pieces}, "
                f"z0={self.z0}, chebyshev={self.chebyshev})")


def weight_at(measure, t, arc_index=0, side=None):
    """The piece value w0(t) * v(t) at parameter t, without the arcsine factor."""
    arcs = parametrize(measure.support)
    if not 0 <= arc_index < len(arcs):
        raise DomainError(f"no arc with index {arc_index}")
    arc = arcs[arc_index]
    tt = np.asarray(t, dtype=float)
    lo, hi = arc.t_lo - 1e-12, arc.t_hi + 1e-12
    if np.any(tt < lo) or np.any(tt > hi):
        raise DomainError(f"parameter {t} outside [{arc.t_lo}, {arc.t_hi}]")
    piece = measure.piece_for(arc_index)
    return piece.smooth(tt) * piece.weight.value(tt, side=side)


def density_at(measure, t, arc_index=0, side=None):
    """Weight per unit arc length, including the arcsine factor if present."""
    val = weight_at(measure, t, arc_index=arc_index, side=side)
    if measure.chebyshev:
        a, b = measure.support.interval
        s = (2.0 * np.asarray(t, dtype=float) - (a + b)) / (b - a)
        val = val / np.sqrt(np.maximum(1.0 - s * s, 0.0))
    return val


def jump_limits(measure):
    """One-sided density limits (left, right) at the measure's z0."""
    arc_index, t, _ = measure.z0_location()
    piece = measure.piece_for(arc_index)
    if isinstance(piece.weight, JumpWeight):
        snapped = piece.weight.snap_to_jump(t)
        if snapped is not None:
            return (float(density_at(measure, snapped, arc_index, side="left")),
                    float(density_at(measure, snapped, arc_index, side="right")))
    v = float(density_at(measure, t, arc_index))
    return v, v


# ---------------------------------------------------------------------------
# measure constructors

def uniform_circle_measure(radius=1.0, center=0j, weight=1.0, z0=None):
    support = SupportSpec.make_circle(radius=radius, center=center)
    return MeasureSpec(support, Piece(ConstantWeight(weight), SmoothFactor()),
                       z0=z0)


def circle_jump_measure(A=2.0, B=1.0, jump_param=math.pi / 2, radius=1.0,
                        center=0j, z0="jump", smooth=None):
    support = SupportSpec.make_circle(radius=radius, center=center)
    if z0 == "jump":
        z0 = complex(center) + radius * cmath.exp(1j * jump_param)
    piece = Piece(JumpWeight(A, B, jump_param, period=2.0 * math.pi),
                  smooth or SmoothFactor())
    return MeasureSpec(support, piece, z0=z0)


def interval_jump_measure(a=-1.0, b=1.0, A=2.0, B=1.0, jump_param=0.0,
                          chebyshev=False, z0="jump", smooth=None):
    support = SupportSpec.make_interval(a, b)
    if z0 == "jump":
        z0 = complex(jump_param)
    piece = Piece(JumpWeight(A, B, jump_param), smooth or SmoothFactor())
    return MeasureSpec(support, piece, z0=z0, chebyshev=chebyshev)


def ellipse_jump_measure(a, b, A=2.0, B=1.0, jump_param=0.0, center=0j,
                         rotation=0.0, z0="jump", smooth=None):
    support = SupportSpec.make_ellipse(a, b, center=center, rotation=rotation)
    if z0 == "jump":
        z0 = complex(parametrize(support)[0].point(jump_param))
    piece = Piece(JumpWeight(A, B, jump_param, period=2.0 * math.pi),
                  smooth or SmoothFactor())
    return MeasureSpec(support, piece, z0=z0)


def lemniscate_pullback_measure(poly, A=2.0, B=1.0, jump_param=math.pi / 2,
                                z0=None):
    """Shorthand: pull the standard circle jump back through T."""
    circ = circle_jump_measure(A=A, B=B, jump_param=jump_param)
    return pullback_to_lemniscate(circ, poly, z0=z0)


# ---------------------------------------------------------------------------
# measure transforms

def _require_unit_circle(measure, what):
    sup = measure.support
    if sup.kind != "circle" or sup.radius != 1.0 or sup.center != 0:
        raise CapabilityError(f"{what} requires a measure on the unit circle")
    if len(measure.pieces) != 1:
        raise CapabilityError(f"{what} requires a single weight piece")
    piece = measure.pieces[0]
    if not piece.smooth.is_constant:
        raise CapabilityError(f"{what} is only implemented for constant "
                              "smooth factors")
    return piece


def symmetrize_to_interval(measure):
    """Push a cosine-symmetric unit circle measure down to [-1, 1].

    With x = cos t the image measure has density w0 * v_int(x) / sqrt(1-x^2)
    where v_int inherits the jump; integrals against even test functions
    transfer with a factor two.  Raises SymmetryError when the circle weight
    is not symmetric under t -> -t.
    """
    piece = _require_unit_circle(measure, "symmetrization")
    w0 = float(piece.smooth.coeffs[0])
    ts = (np.arange(1, 128) + 0.317) * (2.0 * math.pi / 128.0)
    fwd = piece.weight.value(ts)
    bwd = piece.weight.value(2.0 * math.pi - ts)
    if np.max(np.abs(fwd - bwd)) > 1e-9 * np.max(np.abs(fwd)):
        raise SymmetryError("circle weight is not symmetric under t -> -t")

    if isinstance(piece.weight, ConstantWeight):
        new_weight = ConstantWeight(piece.weight.c)
    else:
        t0 = piece.weight.jump_param % (2.0 * math.pi)
        tb = t0 if t0 <= math.pi else 2.0 * math.pi - t0
        if tb < 1e-12 or math.pi - tb < 1e-12:
            # switch points sit at the fold points, nothing jumps inside
            new_weight = ConstantWeight(float(piece.weight.value(math.pi / 2)))
        else:
            x_jump = math.cos(tb)
            above = float(piece.weight.value(0.5 * tb))           # x > x_jump
            below = float(piece.weight.value(0.5 * (tb + math.pi)))
            if above == below:
                new_weight = ConstantWeight(above)
            else:
                new_weight = JumpWeight(below, above, x_jump)
    support = SupportSpec.make_interval(-1.0, 1.0)
    z0 = None
    if measure.z0 is not None:
        _, t, _ = measure.z0_location()
        z0 = complex(min(max(math.cos(t), -1.0), 1.0))
    return MeasureSpec(support, Piece(new_weight, SmoothFactor.constant(w0)),
                       z0=z0, chebyshev=True)


def pullback_to_lemniscate(measure, poly, z0=None):
    """Pull a unit circle measure back through T to the lemniscate |T| = 1.

    The arcs of |T| = 1 are parametrized by the image angle, so the circle
    weight transfers verbatim to the parameter of every component.  When z0
    is not given, the first preimage of the circle's z0 (in deterministic
    order) is used.
    """
    piece = _require_unit_circle(measure, "lemniscate pullback")
    if not isinstance(poly, ComplexPolynomial):
        poly = ComplexPolynomial(poly)
    support = SupportSpec.make_lemniscate(poly)
    if z0 is None and measure.z0 is not None:
        from .geometry import preimages
        z0 = complex(preimages(poly, measure.z0)[0])
    return MeasureSpec(support, Piece(piece.weight, piece.smooth), z0=z0)


# ---------------------------------------------------------------------------
# measure description files

_KIND_PARAM_HELP = {
    "interval": "a b",
    "circle": "radius [center_re center_im]",
    "ellipse": "a b [rotation center_re center_im]",
    "lemniscate": "coefficients, lowest degree first, re or re,im tokens",
}


def _parse_number(tok, key):
    try:
        return float(tok)
    except ValueError:
        raise MeasureFormatError(f"{key}: cannot parse number {tok!r}")


def _parse_complex(tok, key):
    try:
        if "," in tok:
            re_s, im_s = tok.split(",")
            return complex(float(re_s), float(im_s))
        return complex(float(tok), 0.0)
    except ValueError:
        raise MeasureFormatError(f"{key}: cannot parse complex number {tok!r}")


def parse_measure_text(text):
    """Parse the key = value measure description format."""
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise MeasureFormatError(f"line {lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        if not key or not val:
            raise MeasureFormatError(f"line {lineno}: empty key or value")
        if key in entries:
            raise MeasureFormatError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = val.strip().strip('"').strip("'")

    kind = entries.pop("support.kind", None)
    if kind is None:
        raise MeasureFormatError("missing key support.kind")
    params = entries.pop("support.params", "")
    toks = params.replace(";", " ").split()
    if kind == "interval":
        if len(toks) != 2:
            raise MeasureFormatError("support.params for an interval: "
                                     + _KIND_PARAM_HELP["interval"])
        support = SupportSpec.make_interval(_parse_number(toks[0], "support.params"),
                                            _parse_number(toks[1], "support.params"))
    elif kind == "circle":
        if len(toks) not in (1, 3):
            raise MeasureFormatError("support.params for a circle: "
                                     + _KIND_PARAM_HELP["circle"])
        radius = _parse_number(toks[0], "support.params")
        center = 0j
        if len(toks) == 3:
            center = complex(_parse_number(toks[1], "support.params"),
                             _parse_number(toks[2], "support.params"))
        support = SupportSpec.make_circle(radius=radius, center=center)
    elif kind == "ellipse":
        if len(toks) not in (2, 3, 5):
            raise MeasureFormatError("support.params for an ellipse: "
                                     + _KIND_PARAM_HELP["ellipse"])
        a = _parse_number(toks[0], "support.params")
        b = _parse_number(toks[1], "support.params")
        rotation = _parse_number(toks[2], "support.params") if len(toks) >= 3 else 0.0
        center = 0j
        if len(toks) == 5:
            center = complex(_parse_number(toks[3], "support.params"),
                             _parse_number(toks[4], "support.params"))
        support = SupportSpec.make_ellipse(a, b, center=center, rotation=rotation)
    elif kind == "lemniscate":
        if not toks:
            raise MeasureFormatError("support.params for a lemniscate: "
                                     + _KIND_PARAM_HELP["lemniscate"])
        coeffs = [_parse_complex(t, "support.params") for t in toks]
        support = SupportSpec.make_lemniscate(ComplexPolynomial(coeffs))
    else:
        raise MeasureFormatError(f"unknown support.kind {kind!r}")

    A = entries.pop("weight.A", None)
    B = entries.pop("weight.B", None)
    jump_param = entries.pop("weight.jump_param", None)
    w0 = entries.pop("weight.w0", "1")
    arcsine = entries.pop("weight.arcsine", "0")
    z0_spec = entries.pop("eval.z0", None)
    if entries:
        raise MeasureFormatError(f"unknown keys: {', '.join(sorted(entries))}")

    smooth = SmoothFactor([_parse_number(t, "weight.w0") for t in w0.split()])
    if A is None:
        raise MeasureFormatError("missing key weight.A")
    A = _parse_number(A, "weight.A")
    if B is None or (jump_param is None and B == A):
        weight = ConstantWeight(A)
    else:
        if jump_param is None:
            raise MeasureFormatError("weight.jump_param is required when "
                                     "weight.A and weight.B differ")
        B = _parse_number(B, "weight.B")
        period = None if kind == "interval" else 2.0 * math.pi
        weight = JumpWeight(A, B, _parse_number(jump_param, "weight.jump_param"),
                            period=period)

    chebyshev = arcsine.strip() not in ("0", "false", "no")
    if chebyshev and kind != "interval":
        raise MeasureFormatError("weight.arcsine only applies to intervals")

    measure = MeasureSpec(support, Piece(weight, smooth), chebyshev=chebyshev)
    if z0_spec is not None:
        measure = measure.with_z0(_resolve_z0(z0_spec, support, weight))
    return measure


def _resolve_z0(z0_spec, support, weight):
    if z0_spec == "auto-jump":
        if not isinstance(weight, JumpWeight):
            raise MeasureFormatError("eval.z0 = auto-jump needs a jump weight")
        arcs = parametrize(support)
        arc = arcs[0]
        t0 = weight.jump_param
        if support.kind == "lemniscate":
            # first switch parameter inside the leading component
            k0 = math.ceil((arc.t_lo - t0) / (2.0 * math.pi) - 1e-12)
            t0 = t0 + 2.0 * math.pi * k0
        return complex(arc.point(t0))
    return _parse_complex(z0_spec, "eval.z0")


def format_measure(measure):
    """Serialize a measure back into the key = value text format."""
    sup = measure.support
    num = lambda x: repr(float(x))
    lines = [f"support.kind = {sup.kind}"]
    if sup.kind == "interval":
        a, b = sup.interval
        lines.append(f"support.params = {num(a)} {num(b)}")
    elif sup.kind == "circle":
        if sup.center != 0:
            lines.append(f"support.params = {num(sup.radius)} "
                         f"{num(sup.center.real)} {num(sup.center.imag)}")
        else:
            lines.append(f"support.params = {num(sup.radius)}")
    elif sup.kind == "ellipse":
        a, b = sup.axes
        parts = [num(a), num(b)]
        if sup.rotation != 0 or sup.center != 0:
            parts.append(num(sup.rotation))
        if sup.center != 0:
            parts.extend([num(sup.center.real), num(sup.center.imag)])
        lines.append("support.params = " + " ".join(parts))
    elif sup.kind == "lemniscate":
        toks = [f"{num(c.real)},{num(c.imag)}" for c in sup.poly.coeffs]
        lines.append("support.params = " + " ".join(toks))
    else:
        raise CapabilityError(f"cannot serialize support kind {sup.kind!r}")

    if len(measure.pieces) != 1:
        raise CapabilityError("only single piece measures can be serialized")
    piece = measure.pieces[0]
    if isinstance(piece.weight, ConstantWeight):
        lines.append(f"weight.A = {num(piece.weight.c)}")
    else:
        lines.append(f"weight.A = {num(piece.weight.A)}")
        lines.append(f"weight.B = {num(piece.weight.B)}")
        lines.append(f"weight.jump_param = {num(piece.weight.jump_param)}")
    lines.append("weight.w0 = " + " ".join(num(c) for c in piece.smooth.coeffs))
    if measure.chebyshev:
        lines.append("weight.arcsine = 1")
    if measure.z0 is not None:
        lines.append(f"eval.z0 = {num(measure.z0.real)},{num(measure.z0.imag)}")
    return "\n".join(lines) + "\n"


def load_measure_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_measure_text(fh.read())


def save_measure_file(measure, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_measure(measure))
