import math

import numpy as np
import pytest

from xlab.christoffel import (christoffel_lambda, extremal_polynomial_values,
                              kernel_diag, kernel_prefix, orthonormalize)
from xlab.errors import DegeneracyError, DomainError
from xlab.geometry import SupportSpec
from xlab.measures import (ConstantWeight, MeasureSpec, Piece, SmoothFactor,
                           circle_jump_measure, uniform_circle_measure)
from xlab.quadrature import QuadratureRule, build_rule


def test_circle_exact_law_small():
    measure = uniform_circle_measure(z0=1.0)
    rule = build_rule(measure, 30)
    basis = orthonormalize(rule, 30)
    prefix = kernel_prefix(basis, 1.0 + 0j)
    for n in range(31):
        exact = 2.0 * math.pi / (n + 1)
        assert abs(1.0 / prefix[n] - exact) <= 1e-13 * exact


def test_orthonormality_residual():
    basis = orthonormalize(build_rule(circle_jump_measure(), 60), 60)
    assert float(np.max(basis.norm_residuals)) < 1e-12


def test_lambda_one_jump_gram_oracle():
    # 2x2 Gram of {1, z} under the A=2, B=1 circle jump measure:
    # G = [[3 pi, 2], [2, 3 pi]], so lambda_1(i) = (9 pi^2 - 4) / (6 pi)
    oracle = (9.0 * math.pi ** 2 - 4.0) / (6.0 * math.pi)
    value = christoffel_lambda(circle_jump_measure(), 1, z=1j)
    assert abs(value.lambda_n - oracle) <= 1e-12 * oracle


def test_chebyshev_kernel_oracle():
    # dmu = dx / sqrt(1 - x^2): orthonormal polynomials are the scaled
    # Chebyshev T_k, so at x = 0 the kernel steps only on even degrees
    m = MeasureSpec(SupportSpec.make_interval(-1.0, 1.0),
                    Piece(ConstantWeight(1.0), SmoothFactor()),
                    chebyshev=True)
    rule = build_rule(m, 8)
    basis = orthonormalize(rule, 8)
    prefix = kernel_prefix(basis, 0.0 + 0j)
    for n, expected in ((4, math.pi / 5), (5, math.pi / 5),
                        (6, math.pi / 7), (7, math.pi / 7)):
        assert abs(1.0 / prefix[n] - expected) <= 1e-12 * expected


def test_kernel_vs_direct_methods():
    measure = circle_jump_measure()
    rule = build_rule(measure, 40)
    basis = orthonormalize(rule, 40)
    for n in (3, 17, 40):
        a = christoffel_lambda(measure, n, rule=rule, basis=basis)
        b = christoffel_lambda(measure, n, method="direct", rule=rule,
                               basis=basis)
        assert a.method == "kernel" and b.method == "direct"
        assert abs(a.lambda_n - b.lambda_n) <= 1e-10 * a.lambda_n


def test_extremal_polynomial_degree_one():
    # on the uniform circle at z0 = 1 the degree-1 minimizer is (1 + z)/2
    measure = uniform_circle_measure(z0=1.0)
    value = christoffel_lambda(measure, 1, method="direct")
    assert value.lambda_n == pytest.approx(math.pi, rel=1e-13)
    basis = orthonormalize(build_rule(measure, 1), 1)
    pts = np.array([1.0, -1.0, 1j, 0.5 + 0.1j], dtype=complex)
    got = extremal_polynomial_values(basis, value, pts)
    assert np.max(np.abs(got - (1.0 + pts) / 2.0)) < 1e-12


def test_extremal_values_requires_direct():
    measure = uniform_circle_measure(z0=1.0)
    value = christoffel_lambda(measure, 1)
    basis = orthonormalize(build_rule(measure, 1), 1)
    with pytest.raises(DomainError):
        extremal_polynomial_values(basis, value, [1.0])


def test_lambda_monotone_in_n():
    measure = circle_jump_measure()
    rule = build_rule(measure, 50)
    basis = orthonormalize(rule, 50)
    prefix = kernel_prefix(basis, measure.z0)
    lam = 1.0 / prefix
    assert np.all(np.diff(lam) <= 0)


def test_degree_above_rule_rejected():
    measure = uniform_circle_measure(z0=1.0)
    rule = build_rule(measure, 10)
    with pytest.raises(DomainError):
        orthonormalize(rule, 11)
    basis = orthonormalize(rule, 10)
    with pytest.raises(DomainError):
        christoffel_lambda(measure, 11, basis=basis)


def test_degeneracy_reports_partial_basis():
    # four nodes support only four independent polynomial directions
    ts = np.array([0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi])
    rule = QuadratureRule(nodes=np.exp(1j * ts),
                          weights=np.full(4, 0.5 * math.pi),
                          params=ts, arc_index=np.zeros(4, dtype=int),
                          max_exact_degree=8)
    with pytest.raises(DegeneracyError) as err:
        orthonormalize(rule, 8)
    exc = err.value
    assert exc.achieved_degree == 3
    assert exc.basis is not None
    assert exc.basis.degree == 3
    assert float(np.max(exc.basis.norm_residuals)) < 1e-12


def test_extended_precision_lambda():
    measure = uniform_circle_measure(z0=1.0)
    rule = build_rule(measure, 24, nodes_per_degree=4, precision_bits=128)
    basis = orthonormalize(rule, 24)
    assert basis.precision_bits == 128
    assert float(np.max(basis.norm_residuals)) < 1e-20
    value = christoffel_lambda(measure, 24, rule=rule, basis=basis)
    exact = 2.0 * math.pi / 25.0
    assert abs(value.lambda_n - exact) <= 1e-15 * exact
    K = kernel_diag(basis, 1.0 + 0j, upto=24)
    assert float(abs(1.0 / K - exact)) <= 1e-15 * exact


def test_kernel_prefix_matches_kernel_diag():
    measure = circle_jump_measure()
    basis = orthonormalize(build_rule(measure, 20), 20)
    prefix = kernel_prefix(basis, measure.z0)
    for n in (0, 7, 20):
        assert prefix[n] == pytest.approx(kernel_diag(basis, measure.z0,
                                                      upto=n), rel=1e-14)
