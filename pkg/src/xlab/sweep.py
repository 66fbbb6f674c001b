"""Sweeps of n * lambda_n against the predicted jump-asymptotics limit.

A sweep runs one orthonormalization at the largest degree and reads every
smaller n off the kernel prefix sums, then extrapolates n * lambda_n with
a least-squares 1/n + 1/n^2 model (the limit itself carries no proven
rate, so the model is an engineering choice recorded in the fit).
"""

import math
import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from .christoffel import christoffel_lambda, kernel_prefix, orthonormalize
from .equilibrium import equilibrium_density, green_normal_derivative
from .errors import CapabilityError, DegeneracyError, DomainError, InputError
from .measures import jump_limits
from .quadrature import build_rule

JUMP_FACTOR_MERGE_TOL = 1e-12  # relative |A-B| below which the limit value is used


def jump_factor(A, B):
    """(A - B) / (ln A - ln B), continued by its limit A on the diagonal."""
    A, B = float(A), float(B)
    if not (A > 0 and B > 0):
        raise DomainError("jump values must be positive")
    if abs(A - B) < JUMP_FACTOR_MERGE_TOL * max(A, B):
        return A
    return (A - B) / (math.log(A) - math.log(B))


def predicted_limit(measure, z=None, route="density"):
    """Predicted limit of n * lambda_n at the jump point.

    The value is jump_factor(left, right) / density(z0) where left/right
    are the one-sided density limits of the measure at z0 and density is
    the equilibrium density of the support.  ``route`` selects between the
    density form and the normal-derivative form 2 pi (dg/dn)^-1 * factor;
    the two agree to machine precision by the bridge identity.
    """
    meas = measure if z is None or measure.z0 == complex(z) else measure.with_z0(z)
    left, right = jump_limits(meas)
    factor = jump_factor(left, right)
    dens = equilibrium_density(meas.support)(meas.z0)
    if route == "density":
        return factor / dens
    if route == "normal":
        return 2.0 * math.pi * factor / green_normal_derivative(dens)
    raise InputError(f"unknown route {route!r}")


def geometric_schedule(n_min=8, n_max=512, ratio=1.25):
    """Strictly increasing degrees from n_min to exactly n_max."""
    n_min, n_max = int(n_min), int(n_max)
    if not (1 <= n_min <= n_max):
        raise InputError("schedule needs 1 <= n_min <= n_max")
    if not ratio > 1.0:
        raise InputError("schedule ratio must exceed 1")
    ns = [n_min]
    while ns[-1] < n_max:
        ns.append(min(max(ns[-1] + 1, int(round(ns[-1] * ratio))), n_max))
    return ns


@dataclass
class SweepRow:
    n: int
    lambda_n: float
    n_lambda_n: float
    predicted_limit: float
    relative_error: float
    wall_time: float
    ok: bool = True
    note: str = ""


@dataclass
class FitModel:
    """Least-squares model n*lambda_n = L + c1/n + c2/n^2 over a window."""

    coefficients: tuple
    residual: float
    spread: float
    window: tuple
    flagged: bool = False

    @property
    def description(self):
        L, c1, c2 = self.coefficients
        text = (f"n*lambda_n = {L!r} + {c1!r}/n + {c2!r}/n^2 over n in "
                f"{list(self.window)}; rms residual {self.residual:.3e}, "
                f"window spread {self.spread:.3e}")
        if self.flagged:
            text += "; ill-conditioned, raw last value reported"
        return text


@dataclass
class SweepResult:
    measure: object
    z: complex
    method: str
    precision_bits: int
    rows: list = field(default_factory=list)
    extrapolated_limit: float = None
    fit_model: FitModel = None
    setup_time: float = 0.0

    @property
    def ok_rows(self):
        return [r for r in self.rows if r.ok]


def run_sweep(measure, z=None, schedule=None, method="kernel",
              precision_bits=53, nodes_per_degree=6, grading=None):
    """Evaluate lambda_n over a degree schedule with one shared basis.

    One orthonormalization at max(schedule) feeds every row: the kernel
    prefix sums give lambda_n for all smaller n.  Degeneracy during
    orthonormalization marks the unreachable rows as failed and the sweep
    continues with the achieved partial basis.
    """
    if not schedule:
        raise InputError("schedule must be a non-empty increasing list")
    schedule = [int(n) for n in schedule]
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise InputError("schedule must be strictly increasing")
    if z is None:
        z = measure.z0
        if z is None:
            raise DomainError("no evaluation point: measure has no z0")
    z = complex(z)

    try:
        predicted = predicted_limit(measure, z=z)
    except CapabilityError:
        predicted = float("nan")

    n_max = schedule[-1]
    t0 = time.perf_counter()
    rule = build_rule(measure, n_max, nodes_per_degree=nodes_per_degree,
                      grading=grading, precision_bits=precision_bits)
    achieved = n_max
    note = ""
    try:
        basis = orthonormalize(rule, n_max)
    except DegeneracyError as exc:
        if exc.basis is None:
            raise
        basis = exc.basis
        achieved = exc.achieved_degree
        note = f"degenerate beyond degree {achieved}"
    if method == "kernel":
        prefix = kernel_prefix(basis, z)
    elif method != "direct":
        raise InputError(f"unknown method {method!r}")
    setup = time.perf_counter() - t0

    result = SweepResult(measure=measure, z=z, method=method,
                         precision_bits=precision_bits, setup_time=setup)
    for n in schedule:
        t1 = time.perf_counter()
        if n > achieved:
            result.rows.append(SweepRow(
                n=n, lambda_n=float("nan"), n_lambda_n=float("nan"),
                predicted_limit=predicted, relative_error=float("nan"),
                wall_time=time.perf_counter() - t1, ok=False, note=note))
            continue
        if method == "kernel":
            lam = 1.0 / float(prefix[n])
        else:
            lam = christoffel_lambda(measure, n, z=z, method="direct",
                                     rule=rule, basis=basis).lambda_n
        nlam = n * lam
        rel = (nlam - predicted) / predicted if predicted == predicted else float("nan")
        result.rows.append(SweepRow(
            n=n, lambda_n=lam, n_lambda_n=nlam, predicted_limit=predicted,
            relative_error=rel, wall_time=time.perf_counter() - t1))
    return result


def extrapolate(result, window=6):
    """Extrapolated limit of n * lambda_n from the largest successful rows.

    Fits L + c1/n + c2/n^2 by least squares over the largest ``window``
    rows and returns L, recording coefficients and residual on
    ``result.fit_model``.  A fit whose rms residual exceeds 10% of the
    window spread is ill-conditioned: a warning is issued and the raw last
    value is returned with the model flagged.
    """
    rows = result.ok_rows
    if len(rows) < 4:
        raise DomainError("extrapolation needs at least 4 successful rows")
    tail = rows[-min(window, len(rows)):]
    ns = np.array([r.n for r in tail], dtype=float)
    ys = np.array([r.n_lambda_n for r in tail], dtype=float)
    design = np.column_stack([np.ones_like(ns), 1.0 / ns, 1.0 / ns ** 2])
    coeffs, *_ = np.linalg.lstsq(design, ys, rcond=None)
    fit = design @ coeffs
    residual = float(np.sqrt(np.mean((fit - ys) ** 2)))
    spread = float(ys.max() - ys.min())
    model = FitModel(coefficients=tuple(float(c) for c in coeffs),
                     residual=residual, spread=spread,
                     window=tuple(int(n) for n in ns))
    if spread > 0 and residual > 0.1 * spread:
        model.flagged = True
        warnings.warn("extrapolation fit is ill-conditioned; reporting the "
                      "raw value at the largest degree", RuntimeWarning)
        value = float(ys[-1])
    else:
        value = float(coeffs[0])
    result.fit_model = model
    result.extrapolated_limit = value
    return value


SWEEP_CSV_HEADER = "n,lambda_n,n_lambda_n,predicted_limit,relative_error"


def format_sweep_csv(result):
    """Deterministic CSV text: repr of each float, one line per row."""
    lines = [SWEEP_CSV_HEADER]
    for r in result.rows:
        lines.append(",".join([str(r.n), repr(float(r.lambda_n)),
                               repr(float(r.n_lambda_n)),
                               repr(float(r.predicted_limit)),
                               repr(float(r.relative_error))]))
    return "\n".join(lines) + "\n"


def write_sweep_csv(result, path, dat_path=None):
    text = format_sweep_csv(result)
    with open(path, "w") as fh:
        fh.write(text)
    if dat_path is not None:
        body = text.splitlines()
        with open(dat_path, "w") as fh:
            fh.write("# " + body[0].replace(",", " ") + "\n")
            for line in body[1:]:
                fh.write(line.replace(",", " ") + "\n")
