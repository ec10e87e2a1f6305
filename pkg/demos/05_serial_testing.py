"""
How many positive results does it take?
=======================================

Repeating a conditionally independent test multiplies the likelihood ratio.
Count the positives needed to reach the PPV that a single test gives at the
prevalence threshold, and compare with the closed-form estimate.
"""

import math

from sirscreen import SerialTestPolicy, TestCharacteristics, iterations_to_overcome, serial_ppv, serial_target

test = TestCharacteristics(0.95, 0.99)
target = serial_target(test)
print(f"target PPV = {target:.4f}")

for phi in [0.5, 0.1, 0.05, 0.01, 1e-3, 1e-4]:
    n = iterations_to_overcome(test, phi)
    trail = ", ".join(f"{serial_ppv(test, phi, k):.3f}" for k in range(1, n + 1))
    print(f"prevalence {phi:<7g} n = {n}   PPV after each positive: {trail}")

# Closed form: n >= ln(target (1-phi) / (phi (1-target))) / ln(a / (1-b))
phi = 0.01
lr = math.log(test.a / (1 - test.b))
est = math.log(target * (1 - phi) / (phi * (1 - target))) / lr
print(f"\nclosed form at phi={phi}: {est:.3f} -> ceil {math.ceil(est)}")

# A fixed target instead of the threshold PPV
strict = SerialTestPolicy(target=0.999)
print("n for PPV >= 0.999 at 1% prevalence:", iterations_to_overcome(test, 0.01, strict))
