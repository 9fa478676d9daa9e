"""Damped Picard iteration on the integral operator.

f may jump, so derivative-based methods are unjustified; the sweep
u <- (1-relax)*u + relax*Tu with oscillation-triggered damping is the
constructive search used here.  The result always carries a residual
certificate: convergence of the iteration is claimed only when the final
fixed-point defect is small, and a non-converged run returns its best
iterate as a diagnostic rather than raising.
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import BallViolation
from .hammerstein import apply_T, ball_slack, residual
from .kernel import BoundaryParams
from .model import GridFunction, ProblemSpec, find_curve_crossings, norm_c1

MIN_RELAX = 1.0 / 16.0


@dataclass(frozen=True)
class Solution:
    u: GridFunction
    residual: float
    iterations: int
    bc_residual_left: float
    bc_residual_right: float
    inside_ball: bool
    converged: bool
    curve_crossings: list
    update_norms: list
    relax_final: float


def bc_residual(params: BoundaryParams, u: GridFunction):
    """Absolute defects of the two boundary conditions at the grid endpoints."""
    left = abs(params.alpha * u.values[0] - params.beta * u.derivatives[0])
    right = abs(params.gamma * u.values[-1] + params.delta * u.derivatives[-1])
    return float(left), float(right)


def _blend(u: GridFunction, tu: GridFunction, relax: float) -> GridFunction:
    return replace(u,
                   values=(1.0 - relax) * u.values + relax * tu.values,
                   derivatives=(1.0 - relax) * u.derivatives + relax * tu.derivatives)


def solve_picard(spec: ProblemSpec, u0: GridFunction | None = None,
                 relax: float = 1.0, tol: float = 1e-8,
                 max_iter: int = 50) -> Solution:
    """Iterate u <- (1-relax)*u + relax*Tu from u0 (default 0).

    Stops when the update norm drops below tol*(1 + ||u||); the residual
    ||u - Tu|| is then computed once as the certificate.  Three consecutive
    sign-alternating update directions halve the relaxation (chattering across
    an inviable curve is the usual cause).  Raises BallViolation if an iterate
    leaves the ball by more than quadrature slack.
    """
    if not 0.0 < relax <= 1.0:
        raise ValueError("relax must lie in (0, 1]")
    u = u0 if u0 is not None else GridFunction.zero(spec.nodes)
    if norm_c1(u) > spec.radius + ball_slack(spec):
        raise BallViolation("initial iterate lies outside the ball")

    update_norms = []
    best_u, best_diff = u, np.inf
    prev_delta = None
    alternations = 0
    stopped = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        tu = apply_T(spec, u)
        u_next = _blend(u, tu, relax)
        if norm_c1(u_next) > spec.radius + ball_slack(spec):
            raise BallViolation(
                f"iterate {iterations} left the ball: ||u|| = {norm_c1(u_next):.6g} "
                f"> R = {spec.radius:.6g}")
        delta = np.concatenate([u_next.values - u.values,
                                u_next.derivatives - u.derivatives])
        diff = norm_c1(u_next - u)
        update_norms.append(diff)
        if diff < best_diff:
            best_u, best_diff = u_next, diff
        if prev_delta is not None and float(delta @ prev_delta) < 0.0:
            alternations += 1
            if alternations >= 3 and relax > MIN_RELAX:
                relax = max(relax / 2.0, MIN_RELAX)
                alternations = 0
        else:
            alternations = 0
        prev_delta = delta
        scale = 1.0 + norm_c1(u)
        u = u_next
        if diff <= tol * scale:
            stopped = True
            break

    final = u if stopped else best_u
    res = residual(spec, final)
    converged = stopped and res <= tol * (1.0 + norm_c1(final))
    left, right = bc_residual(spec.params, final)
    crossings = [(c.label, len(find_curve_crossings(final, c)))
                 for c in spec.nonlinearity.curves]
    return Solution(u=final, residual=res, iterations=iterations,
                    bc_residual_left=left, bc_residual_right=right,
                    inside_ball=norm_c1(final) <= spec.radius + ball_slack(spec),
                    converged=converged, curve_crossings=crossings,
                    update_norms=update_norms, relax_final=relax)
