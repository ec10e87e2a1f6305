"""
SIR dynamics and the susceptible-removed identity
=================================================

Integrate the Kermack-McKendrick model with fixed-step RK4, then check two
things that must hold regardless of step size: S + I + R stays at N, and
S(t) = S0 exp(-R0 (R(t) - R(0)) / N).
"""

import numpy as np

from sirscreen import EpidemicParams, IntegrationConfig, integrate, peak, verify_final_size_identity

params = EpidemicParams.seeded(beta=0.8, gamma=0.2, i0=1e-4)
print("R0 =", params.r_naught)

traj = integrate(params, IntegrationConfig(dt=0.01, t_end=40))
print(len(traj), "weekly samples")
print(" week       S        I        R")
for state in traj.samples[::5]:
    print(f"{state.t:5g}  {state.s:.4f}  {state.i:.4f}  {state.r:.4f}")

t_peak, i_peak = peak(traj)
print(f"\npeak: I = {i_peak:.4f} at week {t_peak:g}")

total = traj.s + traj.i + traj.r
print("max |S+I+R-N| =", np.max(np.abs(total - 1.0)))
print("identity residual =", verify_final_size_identity(traj))

# Euler needs a much smaller step to get close to RK4
for method, dt in [("euler", 0.1), ("euler", 0.01), ("rk4", 0.1)]:
    other = integrate(params, IntegrationConfig(dt=dt, t_end=40, method=method))
    print(f"{method:5s} dt={dt:<5g} max |dI| vs rk4/0.01: {np.max(np.abs(other.i - traj.i)):.2e}")
