"""End-to-end run of the divisor-step problem

    u''(t) = phi(n(t, u))**(1/3) / sqrt(t),   all-ones separated BCs,

where phi counts divisors (with phi(1) = 2) and the region index n(t, u)
jumps along the curves u = k sqrt(t) and u = -t/(k+1).  The right-hand side
is discontinuous in u along every one of those curves and the weight blows
up at t = 0, yet the certification pipeline passes and the Picard sweep
lands on a residual-certified solution immediately: the iterate dives below
u = -t, where the nonlinearity freezes at its region-1 value.
"""

import numpy as np

from bvpkit import (PhiExample, bounds_report, build_problem, check_h1,
                    classify_curve, estimate_HR, measurable_decomposition,
                    minimal_R_power, norm_c1, phi, region_index, solve_picard,
                    validate_params)

LAM = 1.0 / 3.0

print("== the step data ==")
print(f"phi(1), phi(7), phi(12) = {phi(1)}, {phi(7)}, {phi(12)}")
print(f"region index at (t=0.25, u=0.6)  -> {region_index(0.25, 0.6)}")
print(f"region index at (t=0.25, u=-0.2) -> {region_index(0.25, -0.2)}")

params = validate_params(1, 1, 1, 1)
probe_spec = build_problem(PhiExample(lam=LAM), params, radius=4.0)

print("\n== weight integrability and operator bounds ==")
h1 = check_h1(probe_spec.weight)
print(f"integral of |g| = {h1.l1_norm:.9f}  (1/sqrt(t) integrates to 2)")
rep = bounds_report(probe_spec)
print(f"M1 = {rep.m1:.6f} at t = {rep.argmax_t_m1:.6f}")
print(f"M2 = {rep.m2:.6f} at t = {rep.argmax_t_m2:.6f}")
print(f"M1 + M2 = {rep.m_total:.6f}")

radius = minimal_R_power(rep.m_total, LAM)
print(f"smallest integer radius with R**(1-lam) >= M1+M2: R = {radius}")
spec = build_problem(PhiExample(lam=LAM, curve_count=8), params, radius=float(radius))

print("\n== pointwise bound on |f| over the ball ==")
hr = estimate_HR(spec, t_grid=np.linspace(1e-3, 1.0, 128))
print(f"sampled sup = {hr.sup:.6f}; power-law premise max(2,R)**lam = "
      f"{radius ** LAM:.6f}")
print(f"uniformity warning near an endpoint: {hr.uniformity_flag} "
      "(the sampled profile climbs as t -> 0; the jump curves accumulate there)")

print("\n== every declared discontinuity curve is inviable ==")
for curve in spec.nonlinearity.curves[:6]:
    r = classify_curve(spec, curve, t_min=1e-6)
    print(f"  {r.curve:12s} -> {r.verdict:15s} margin {r.psi_margin:.4f}")
print("  ... (remaining curves identical in kind)")

print("\n== Picard solve with residual certificate ==")
sol = solve_picard(spec, tol=1e-8)
print(f"iterations {sol.iterations}, converged {sol.converged}, "
      f"inside ball {sol.inside_ball}")
print(f"residual {sol.residual:.3e}, norm {norm_c1(sol.u):.6f}, "
      f"boundary defects {sol.bc_residual_left:.1e} / {sol.bc_residual_right:.1e}")
print(f"u(0) = {sol.u.values[0]:.6f}, u(1/2) = {sol.u.values[64]:.6f}, "
      f"u(1) = {sol.u.values[-1]:.6f}  (everywhere below -t)")
crossed = [c for c in sol.curve_crossings if c[1] > 0]
print(f"curves crossed by the solution: {crossed if crossed else 'none'}")

print("\n== measurability decomposition along the solution ==")
dec = measurable_decomposition(sol.u, np.linspace(0.01, 1.0, 100))
print(f"set membership counts: {dec.counts()}  (all K: the solution stays "
      "below u = -t)")
print(f"partition consistent with the region map: {dec.consistent}")
