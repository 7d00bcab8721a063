"""Key rate over the visibility-accuracy plane for a noisy source.

When transmission noise turns the shared state into a visibility-v
mixture, both v and the measurement accuracy p must be high for a
positive rate.  Prints a coarse grid and the zero-rate boundary.
"""

import numpy as np

from mdiqkd import keyrate, qstate, thresholds

print("State checks: visibility scales every correlator linearly")
ghz = qstate.ghz_state(3)
for v in (1.0, 0.8, 0.5, 0.0):
    state = qstate.werner_state(v)
    angles = [0.3, -0.7, 1.1]
    print(f"  v={v}: correlator = {qstate.correlator(state, angles):+.6f} "
          f"(= v * {qstate.correlator(ghz, angles):+.6f})")

print("\nRate over the (v, p) plane:")
v_values = np.linspace(0.7, 1.0, 7)
p_values = np.linspace(0.94, 1.0, 7)
print("p\\v".rjust(8) + "".join(f"{v:.2f}".rjust(9) for v in v_values))
for p in p_values:
    row = f"{p:>8.3f}"
    for v in v_values:
        row += f"{keyrate.dw_rate_werner(float(p), float(v)).r_dw:>9.4f}"
    print(row)

print("\nZero-rate boundary (positive rate above the line):")
boundary = thresholds.werner_boundary(list(np.linspace(0.96, 1.0, 9)))
print(f"{'p':>10} {'v_threshold':>12}")
for p, v in boundary:
    print(f"{p:>10.6f} {'(none)' if v is None else format(v, '12.9f'):>12}")

p_th = thresholds.threshold_accuracy(3)
print(f"\nThe boundary touches v = 1 exactly at the accuracy threshold "
      f"p_th(3) = {p_th:.6f},")
print(f"and at p = 1 it sits at v = {thresholds.ZERO_RATE_SHRINK:.6f}.")
