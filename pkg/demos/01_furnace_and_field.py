"""Walk the furnace geometry and sample the ambient temperature field.

The furnace is a fixed track: entry region, eleven heated zones with gaps,
exit region.  The ambient field follows the zone setpoints as plateaus,
bridges differently-set zones with sigmoids, and cools from the last hot
zone to the exit with a mixed linear/exponential model.
"""

import numpy as np

from reflowsim import ProcessParameters, ambient_at, build_profile, default_layout

layout = default_layout()
print(f"furnace: {len(layout.zones)} regions over {layout.total_length_cm} cm")
for zone in layout.zones:
    slot = f"  setpoint {zone.setpoint_slot}" if zone.setpoint_slot else ""
    print(f"  {zone.name:<8} {zone.kind:<7} [{zone.start_cm:6.1f}, {zone.end_cm:6.1f}) cm{slot}")

params = ProcessParameters()  # 175 / 195 / 235 / 255 / 25 degC at 70 cm/min
profile = build_profile(layout, params, weight=0.8)

print("\nambient field segments:")
for seg in profile.segments:
    print(f"  {type(seg).__name__:<22} [{seg.x_start:6.1f}, {seg.x_end:6.1f}) cm")

print("\nfield samples every 25 cm:")
for x in np.arange(0.0, 435.5 + 1e-9, 25.0):
    bar = "#" * int(ambient_at(profile, x) / 5)
    print(f"  x = {x:6.1f} cm  T = {ambient_at(profile, x):8.3f} degC  {bar}")

# The sigmoid midpoints land exactly on the plateau averages, and the
# cooling blend interpolates its anchor temperatures.
print(f"\nmid-gap between zones 5 and 6: T(200.0) = {ambient_at(profile, 200.0):.4f}")
print(f"cooling blend start:           T(339.5) = {ambient_at(profile, 339.5):.4f}")
print(f"cooling blend end:             T(410.5) = {ambient_at(profile, 410.5):.4f}")
