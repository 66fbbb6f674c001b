import cmath
import math

import numpy as np
import pytest

from xlab.errors import DomainError, GeometryError
from xlab.geometry import (ComplexPolynomial, SupportSpec, arc_length,
                           parametrize, partition_arcs, preimages,
                           project_to_support, trace_lemniscate)


def test_polynomial_basics():
    p = ComplexPolynomial([-4.0, 0.0, 1.0])
    assert p.degree == 2
    assert p(3.0) == 5.0
    assert np.allclose(p(np.array([0.0, 1j])), [-4.0, -5.0])
    d = p.derivative()
    assert d.degree == 1
    assert d(1.5) == 3.0


def test_polynomial_shift_adds_constant():
    p = ComplexPolynomial([1.0, 2.0, 0.5 + 1j])
    q = p.shifted(0.3 - 0.2j)
    for z in (0.0, 1.0, -2j, 0.7 + 0.4j):
        assert abs(q(z) - (p(z) + 0.3 - 0.2j)) < 1e-12


def test_preimages_sorted_and_polished():
    roots = preimages(ComplexPolynomial([-4.0, 0.0, 1.0]), 1.0 + 0j)
    assert np.allclose(roots, [-math.sqrt(5), math.sqrt(5)])
    cube = preimages(ComplexPolynomial([0, 0, 0, 1.0]), 1.0 + 0j)
    s3 = math.sqrt(3) / 2
    assert np.allclose(cube, [-0.5 - s3 * 1j, -0.5 + s3 * 1j, 1.0])
    # polished to full precision
    assert max(abs(c ** 3 - 1.0) for c in cube) < 1e-12


def test_trace_identity_polynomial_is_circle():
    arcs = parametrize(SupportSpec.make_lemniscate(ComplexPolynomial([0, 1.0])))
    assert len(arcs) == 1
    arc = arcs[0]
    assert arc.winding == 1
    assert abs(arc_length(arc) - 2.0 * math.pi) < 1e-9
    ts = np.linspace(arc.t_lo, arc.t_hi, 37)
    assert np.max(np.abs(np.abs(arc.point(ts)) - 1.0)) < 1e-10


def test_trace_z2_covers_circle_twice():
    arcs = parametrize(SupportSpec.make_lemniscate(ComplexPolynomial([0, 0, 1.0])))
    assert len(arcs) == 1
    arc = arcs[0]
    assert arc.winding == 2
    assert abs(arc.span - 4.0 * math.pi) < 1e-9
    assert abs(arc_length(arc) - 2.0 * math.pi) < 1e-9
    # the trace starts at the first preimage of w = 1 in sorted order
    assert abs(complex(arc.point(arc.t_lo)) - (-1.0)) < 1e-9
    # parameter is the continuous image angle
    poly = ComplexPolynomial([0, 0, 1.0])
    for t in (0.3, 2.0, 7.0, 11.5):
        w = complex(poly(complex(arc.point(t))))
        assert abs(w - cmath.exp(1j * t)) < 1e-8


def test_trace_two_component_lemniscate():
    poly = ComplexPolynomial([-4.0, 0.0, 1.0])
    arcs = trace_lemniscate(poly)
    assert len(arcs) == 2
    assert sorted(arc.winding for arc in arcs) == [1, 1]
    lengths = sorted(arc_length(arc) for arc in arcs)
    # the two ovals around +-2 are congruent
    assert abs(lengths[0] - lengths[1]) < 1e-8
    assert abs(lengths[0] - 1.577088) < 1e-4
    for arc in arcs:
        ts = np.linspace(arc.t_lo, arc.t_hi, 50)
        assert np.max(np.abs(np.abs(poly(arc.point(ts))) - 1.0)) < 1e-8


def test_velocity_matches_finite_difference():
    arcs = parametrize(SupportSpec.make_lemniscate(
        ComplexPolynomial([-4.0, 0.0, 1.0])))
    arc = arcs[0]
    h = 1e-6
    for t in (0.5, 2.0, 4.4):
        fd = (complex(arc.point(t + h)) - complex(arc.point(t - h))) / (2 * h)
        assert abs(fd - complex(arc.velocity(t))) < 1e-6


def test_trace_rejects_singular_lemniscate():
    # T(z) = z^2 - 2z has T'(1) = 0 with |T(1)| = 1: a figure-eight node
    with pytest.raises(GeometryError):
        trace_lemniscate(ComplexPolynomial([0.0, -2.0, 1.0]))


def test_partition_arcs_fibers():
    parts = partition_arcs(ComplexPolynomial([0, 0, 0, 1.0]))
    assert len(parts) == 3
    for part in parts:
        assert abs(part.span - 2.0 * math.pi) < 1e-12
    for a, b in zip(parts, parts[1:]):
        assert abs(complex(a.point(a.t_hi)) - complex(b.point(b.t_lo))) < 1e-9


def test_project_to_support_circle_and_interval():
    circle = SupportSpec.make_circle()
    i, t, pt = project_to_support(circle, (1.0 + 2e-9) * 1j)
    assert i == 0
    assert abs(t - math.pi / 2) < 1e-12
    assert abs(pt - 1j) < 1e-12
    with pytest.raises(DomainError):
        project_to_support(circle, 1.5 + 0j)

    interval = SupportSpec.make_interval(-1.0, 1.0)
    assert project_to_support(interval, 0.25 + 0j)[1] == 0.25
    with pytest.raises(DomainError):
        project_to_support(interval, 0.25 + 0.5j)


def test_project_to_support_ellipse_and_lemniscate():
    ellipse = SupportSpec.make_ellipse(1.25, 0.75)
    i, t, pt = project_to_support(ellipse, 0.75j + 1e-10)
    assert abs(t - math.pi / 2) < 1e-9
    assert abs(pt - 0.75j) < 1e-9
    with pytest.raises(DomainError):
        project_to_support(ellipse, 0.76j)

    lemn = SupportSpec.make_lemniscate(ComplexPolynomial([0, 0, 1.0]))
    z = cmath.exp(1j * math.pi / 4)
    i, t, pt = project_to_support(lemn, z)
    # the traced branch reaches e^{i pi/4} at image angle pi/2 + 2 pi
    assert abs(t - (math.pi / 2 + 2.0 * math.pi)) < 1e-9
    assert abs(pt - z) < 1e-12
    with pytest.raises(DomainError):
        project_to_support(lemn, 1.4 + 1.4j)


def test_support_from_arcs_roundtrip():
    base = SupportSpec.make_lemniscate(ComplexPolynomial([0, 0, 1.0]))
    part = partition_arcs(base.poly)[:1]
    sup = SupportSpec.from_arcs(part)
    assert sup.kind == "arcs"
    arcs = parametrize(sup)
    assert len(arcs) == 1
    assert abs(arcs[0].span - 2.0 * math.pi) < 1e-12
