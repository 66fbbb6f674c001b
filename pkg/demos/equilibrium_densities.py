"""
Equilibrium densities and the normal-derivative bridge
======================================================

The asymptotic law divides the jump factor by the equilibrium-measure
density at the evaluation point.  Every supported geometry has the
density in closed form: constant on circles, the arcsine law on
intervals, |T'|/(2 pi N) on lemniscates, and |Phi'|/(2 pi) through the
inverse Joukowski map on ellipses.  The Green's-function normal
derivative is 2 pi times the density.
"""

import math

import numpy as np

from xlab import (ComplexPolynomial, ConstantWeight, MeasureSpec, Piece,
                  SmoothFactor, SupportSpec, build_rule, density_interval,
                  density_profile, equilibrium_density,
                  green_normal_derivative, integrate)

supports = {
    "circle r=1": SupportSpec.make_circle(),
    "interval [-1,1]": SupportSpec.make_interval(-1.0, 1.0),
    "ellipse 1.25 x 0.75": SupportSpec.make_ellipse(1.25, 0.75),
    "lemniscate z^2-4": SupportSpec.make_lemniscate(
        ComplexPolynomial([-4.0, 0.0, 1.0])),
}

for name, support in supports.items():
    dens = equilibrium_density(support)
    piece = Piece(ConstantWeight(1.0), SmoothFactor())
    rule = build_rule(MeasureSpec(support, piece), 24)
    mass = integrate(rule, lambda z: np.array([dens(p)
                                               for p in np.atleast_1d(z)]))
    print(f"{name:20s} provenance {dens.provenance:20s} "
          f"mass {complex(mass).real:.12f}")

# closed-form spot checks
print("\ninterval density at 0:", density_interval(-1, 1, 0.0), "= 1/pi =",
      1 / math.pi)
ellipse = equilibrium_density(supports["ellipse 1.25 x 0.75"])
d = ellipse(1.25 + 0j)
print("ellipse density at (1.25, 0):", d, "= 2/(3 pi) =", 2 / (3 * math.pi))
print("normal derivative there:", green_normal_derivative(d), "= 4/3")

# the arcsine blow-up toward the endpoints, sampled on a profile
t, z, density, normal = density_profile(supports["interval [-1,1]"], 9)
print("\ninterval profile (x, density):")
for xk, dk in zip(t, density):
    print(f"  {xk:+.3f}  {dk:.4f}")
