"""The mixture attack's local weight and the resulting key-rate bound.

Sweeps accuracy for several party counts and prints the data behind the
rate-versus-accuracy curves, including the zero crossings.
"""

import numpy as np

from mdiqkd import attack, keyrate, thresholds

print("Local weight versus accuracy (three parties):")
print(f"{'p':>6} {'q_raw':>10} {'q_clamped':>10} {'aborts':>7}")
for p in (1.0, 0.98, 0.96, 0.9454, 0.92, 0.9):
    result = attack.local_weight_3party(p)
    print(f"{p:>6} {result.q_l_raw:>10.6f} {result.q_l:>10.6f} "
          f"{str(result.aborts):>7}")

print("\nKey-rate bound r = H(A|E) - H(A|rest), three parties:")
print(f"{'p':>7} {'H(A|E)':>9} {'H(A|rest)':>10} {'r':>10}")
for p in (1.0, 0.99, 0.97, 0.959, 0.958968, 0.955, 0.95):
    report = keyrate.dw_rate(p, 3)
    print(f"{p:>7} {report.h_a_given_e:>9.6f} {report.h_a_given_rest:>10.6f} "
          f"{report.r_dw:>10.6f}")

print("\nRate curves for several party counts (positive region only):")
grid = np.linspace(0.955, 1.0, 10)
header = "p".rjust(8) + "".join(f"n={n}".rjust(11) for n in (3, 4, 5, 6))
print(header)
for p in grid:
    row = f"{p:>8.4f}"
    for n in (3, 4, 5, 6):
        row += f"{keyrate.dw_rate(float(p), n).r_dw:>11.6f}"
    print(row)

print("\nZero crossings (threshold accuracies, by bisection):")
for n in (3, 4, 5, 6):
    p_th = thresholds.threshold_accuracy(n)
    print(f"  n={n}: p_th = {p_th:.9f}   "
          f"check (2p-1)^n = {(2 * p_th - 1) ** n:.9f} "
          f"(target {thresholds.ZERO_RATE_SHRINK:.9f})")
