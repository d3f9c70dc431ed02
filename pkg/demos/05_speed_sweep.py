"""Find the feasible belt-speed interval at fixed zone setpoints.

Sweeps the conveyor speed in 0.1 cm/min steps and keeps the speeds whose
simulated trace satisfies every process limit.  Faster belts mean shorter
soak: the melt window and the peak shrink until the limits cut the interval
off.
"""

from reflowsim import ProcessParameters, default_layout, feasible_speed_interval

layout = default_layout()
params = ProcessParameters(tt1=165, tt2=185, tt3=225, tt4=265)

sweep = feasible_speed_interval(layout, params, weight=0.8, coefficient=0.021)
print(f"checked {len(sweep.per_speed)} speeds from 65.0 to 100.0 cm/min")
print(f"feasible: {len(sweep.feasible_speeds)} speeds")
if sweep.max_feasible is None:
    print("no speed satisfies the process window at these setpoints")
else:
    lo, hi = sweep.feasible_speeds[0], sweep.feasible_speeds[-1]
    print(f"feasible range: {lo:.1f} .. {hi:.1f} cm/min (max {sweep.max_feasible:.1f})")

print("\nhow the metrics move with speed:")
print(f"{'v':>6} {'max slope':>10} {'rise s':>8} {'melt s':>8} {'peak':>8}  feasible")
for check in sweep.per_speed[::50]:
    m = check.metrics
    rise = "--" if m.rise_time_150_190 is None else f"{m.rise_time_150_190:.1f}"
    print(f"{check.speed:6.1f} {m.max_slope:10.3f} {rise:>8} "
          f"{m.duration_above_217:8.1f} {m.peak_temp:8.2f}  "
          f"{'yes' if check.verdict.passed else 'no'}")
