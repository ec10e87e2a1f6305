"""
Predictive value of a screening test across prevalence
======================================================

A test with sensitivity a = 0.95 and specificity b = 0.99 sounds excellent,
but at low prevalence most of its positives are false.  Walk through the
PPV curve, find where it bends, and see what the bend is worth.
"""

import numpy as np

from sirscreen import TestCharacteristics, ppv, prevalence_threshold, youden_j

test = TestCharacteristics(a=0.95, b=0.99)
print("Youden J =", round(youden_j(test), 4))

# PPV on a log-spaced prevalence grid
for phi in [1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.2, 0.5]:
    print(f"  prevalence {phi:>7.4f}  ->  PPV {ppv(test, phi):.4f}")

# The prevalence threshold: below it PPV drops off steeply
pt = prevalence_threshold(test)
print(f"\nprevalence threshold = {pt:.4f}")
print(f"PPV at threshold     = {ppv(test, pt):.4f}")

# Same point in closed form: sqrt(1-b) / (sqrt(a) + sqrt(1-b))
a, fpr = test.a, 1 - test.b
print("closed-form check    =", round(np.sqrt(fpr) / (np.sqrt(a) + np.sqrt(fpr)), 4))

# Specificity matters more than sensitivity for the threshold
print("\n b \\ a    0.80    0.90    0.99")
for b in [0.90, 0.95, 0.99, 0.999]:
    row = [prevalence_threshold(TestCharacteristics(a_, b)) for a_ in (0.80, 0.90, 0.99)]
    print(f"{b:6.3f}  " + "  ".join(f"{x:.4f}" for x in row))
