"""Check simulated traces against the manufacturing process window.

Five limits: heating slope at most 3 degC/s, cooling slope at least
-3 degC/s, 60-120 s rising from 150 to 190 degC, 40-90 s above the 217 degC
solder melting point, and a 240-250 degC peak.  The stock setpoints violate
the heating-slope cap (the board meets a 150 degC ambient step at the first
zone), while a cooler first bank with a hotter final bank passes.
"""

from reflowsim import (
    ProcessParameters,
    WeldingModel,
    build_profile,
    check_limits,
    compute_metrics,
    default_layout,
    simulate,
)

layout = default_layout()
model = WeldingModel(0.021)

scenarios = {
    "stock setpoints (175/195/235/255 at 70)": ProcessParameters(),
    "cool first bank (165/185/225/265 at 83)": ProcessParameters(
        tt1=165, tt2=185, tt3=225, tt4=265, belt_speed=83
    ),
}

for label, params in scenarios.items():
    profile = build_profile(layout, params, weight=0.8)
    trace = simulate(profile, params, model)
    metrics = compute_metrics(trace)
    verdict = check_limits(metrics)
    print(f"\n{label}: {'PASS' if verdict.passed else 'FAIL'}")
    for check in verdict.checks:
        measured = "absent" if check.measured is None else f"{check.measured:8.3f}"
        lo = "" if check.lower is None else f"{check.lower:g}"
        hi = "" if check.upper is None else f"{check.upper:g}"
        status = "ok" if check.passed else "VIOLATED"
        print(f"  {check.name:<20} {measured:>8}  bounds [{lo}, {hi}]  {status}")
