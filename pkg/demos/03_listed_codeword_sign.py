"""
One sign in the listed |1_L>
============================

The listed |1_L> expansion has a sign on |10001> that is inconsistent with
|0_L>: no Pauli besides the identity fixes both states, so they do not span a
stabilizer code. Here we scan all 32 single-sign flips and see which repair it.
"""

import numpy as np

from qss513.code513 import (
    LISTED_ONE_L,
    LISTED_ZERO_L,
    FiveQubitCode,
    LogicalBasis,
    stabilizer_group,
    terms_to_state,
)
from qss513.security import trial_secrets, verify_forbidden

listed = LogicalBasis.uncorrected()
print("stabilizer elements of the listed pair:", len(stabilizer_group(listed)))
# a single share should be I/2 for every secret; with the listed pair it is not
leak = verify_forbidden((1,), trial_secrets(5), FiveQubitCode(listed))
print("leakage of share 1 (max trace distance):", round(leak, 6))


def flip(terms, k):
    t = list(terms)
    t[k] = ("-" if t[k][0] == "+" else "+") + t[k][1:]
    return t


fixes = []
for which, (zero, one) in (("0_L", (LISTED_ZERO_L, None)), ("1_L", (None, LISTED_ONE_L))):
    for k in range(16):
        z = flip(LISTED_ZERO_L, k) if zero else LISTED_ZERO_L
        o = flip(LISTED_ONE_L, k) if one else LISTED_ONE_L
        basis = LogicalBasis(terms_to_state(z), terms_to_state(o))
        if len(stabilizer_group(basis)) == 16:
            fixes.append((which, (zero or one)[k]))

print("single-sign flips giving a 16-element stabilizer:", fixes)

fixed = LogicalBasis.default()
z, o = fixed.vectors()
print("corrected basis orthogonal:", abs(np.vdot(z, o)) < 1e-15)
print("stabilizer elements after the fix:", len(stabilizer_group(fixed)))
