"""
Transferring the circle result to an interval
=============================================

A circle measure symmetric under t -> -t pushes forward through
x = cos t to a measure on [-1, 1] with an arcsine-type density.  The
circle jump at t0 = pi/2 lands at x = 0, and the asymptotic limit picks
up the interval equilibrium density 1/(pi sqrt(1 - x^2)): the predicted
limit becomes pi (A - B)/ln(A/B) instead of 2 pi (A - B)/ln(A/B).
"""

import math

from xlab import (circle_jump_measure, extrapolate, geometric_schedule,
                  jump_limits, predicted_limit, run_sweep,
                  symmetrize_to_interval)

circle = circle_jump_measure(A=2.0, B=1.0)
interval = symmetrize_to_interval(circle)
print("circle measure:  ", circle)
print("interval measure:", interval)
print("one-sided density limits at x = 0:", jump_limits(interval))

target = math.pi / math.log(2.0)
print(f"\npredicted limit {predicted_limit(interval):.6f}  "
      f"(pi / ln 2 = {target:.6f})")

schedule = geometric_schedule(32, 512, 1.25)
result = run_sweep(interval, schedule=schedule)
for row in result.rows[::4]:
    print(f"  n = {row.n:3d}   n lambda_n = {row.n_lambda_n:.6f}   "
          f"rel {row.relative_error:+.2e}")
limit = extrapolate(result)
print(f"extrapolated {limit:.6f}, relative error "
      f"{abs(limit - target) / target:.2e}")

# the same sweep on the circle converges to twice the interval limit
circle_result = run_sweep(circle, schedule=schedule)
circle_limit = extrapolate(circle_result)
print(f"\ncircle extrapolates to {circle_limit:.6f} = "
      f"{circle_limit / limit:.4f} x the interval limit")
