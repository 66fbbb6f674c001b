"""
Christoffel functions from orthonormal bases
============================================

For dmu = ds on the unit circle the orthonormal polynomials are the
scaled monomials z^k / sqrt(2 pi), so the kernel identity

    1 / lambda_n(mu, z) = sum_{k <= n} |p_k(z)|^2

gives lambda_n(mu, 1) = 2 pi / (n + 1) exactly.  The basis below is
built by Arnoldi orthonormalization on a jump-aware quadrature rule; no
circle-specific shortcut is involved, so the exact law doubles as an
accuracy check.
"""

import math

import numpy as np

from xlab import (build_rule, christoffel_lambda, extremal_polynomial_values,
                  kernel_prefix, orthonormalize, uniform_circle_measure)

measure = uniform_circle_measure(z0=1.0)
rule = build_rule(measure, 40)
print(f"rule: {rule.node_count} nodes, exact through degree "
      f"{rule.max_exact_degree}, mass {rule.mass!r}")

basis = orthonormalize(rule, 40)
print("orthonormality residual:", np.max(basis.norm_residuals))

prefix = kernel_prefix(basis, 1.0 + 0j)
worst = max(abs(1.0 / prefix[n] - 2 * math.pi / (n + 1)) / (2 * math.pi / (n + 1))
            for n in range(41))
print("max relative error vs 2 pi/(n+1):", worst)

# kernel and direct evaluations agree; direct also returns the minimizer
value = christoffel_lambda(measure, 1, method="direct")
print("\nlambda_1(mu, 1) =", value.lambda_n, " (2 pi / 2 =", math.pi, ")")

# the degree-1 minimizer at z = 1 is the polynomial (1 + z) / 2
points = np.array([1.0, -1.0, 1j, 0.5 + 0.1j], dtype=complex)
computed = extremal_polynomial_values(basis, value, points)
print("extremal polynomial at", points)
print("computed:", np.round(computed, 12))
print("(1+z)/2 :", (1.0 + points) / 2.0)
