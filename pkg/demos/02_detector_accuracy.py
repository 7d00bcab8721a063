"""From detector figures to measurement accuracy, and what noise does to it.

Shows the two undetected-event policies, the degradation of the test value
with accuracy, and the critical accuracy where the violation dies.
"""

from mdiqkd import noise, thresholds

print("Detector figures -> accuracy p")
print(f"{'q1':>6} {'q2':>6} {'policy':>16} {'p':>8}")
for q1, q2, policy in [
    (0.98, 1.0, noise.POLICY_BIND_UNDETECTED),
    (1.00, 0.9, noise.POLICY_BIND_UNDETECTED),
    (0.97, 0.9, noise.POLICY_BIND_UNDETECTED),
    (0.97, 0.9, noise.POLICY_FAIR_SAMPLING),
    (0.50, 0.0, noise.POLICY_BIND_UNDETECTED),
]:
    p = noise.accuracy_from_detector(noise.DetectorParams(q1, q2, policy)).p
    print(f"{q1:>6} {q2:>6} {policy:>16} {p:>8.4f}")

print("\nDegraded test value for three parties (quantum maximum at p = 1):")
print(f"{'p':>6} {'test value':>12} {'violates?':>10}")
for p in (1.0, 0.98, 0.96, 0.9454, 0.94, 0.9, 0.5):
    value = noise.degraded_si_value(p, 3)
    print(f"{p:>6} {value:>12.6f} {str(value > 0.75):>10}")

print("\nCritical accuracy per party count (closed form):")
for n in range(3, 8):
    print(f"  n={n}: p_cr = {thresholds.critical_accuracy(n):.6f}")

print("\nThe parity-degradation map is affine: s -> (2p-1)^n s + (1-(2p-1)^n)/2")
p, n = 0.9, 3
for s in (1.0, 0.853553, 0.75, 0.5):
    print(f"  s = {s:.6f} -> {noise.degrade_success_prob(s, p, n):.6f}"
          f"   (p = {p}, n = {n})")
