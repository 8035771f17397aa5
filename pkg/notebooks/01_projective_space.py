"""
Stokes and connection data of projective space
==============================================

Walks through the canonical form of the monodromy data of P^{k-1}, the
chamber walk for P^2 and which chambers carry the Beilinson form.
"""

from qmono.core_algebra import inverse_exact
from qmono.monodromy import validate
from qmono.projective import (
    beilinson_reachability,
    canonical_data,
    chamber0_data,
    chamber_walk,
    collection_gram,
)

# The canonical Stokes matrix of P^3 inverts the Gram matrix of O, O(1), O(2), O(3).
data = canonical_data(4)
print("S =", [list(row) for row in data.S])
print("S^-1 =", inverse_exact([list(row) for row in data.S]))

# The exact data satisfy every monodromy constraint; the numeric backend agrees.
for row in validate(canonical_data(4, "numeric", 256)):
    print(row["constraint"], row["pass"], row["residual"])

# At t = 0 with a small positive slope the data of P^2 sit in chamber 0.
s0, labels = chamber0_data(3)
print("chamber 0 collection:", labels)

# Crossing walls rotates through six further chambers; each S^-1 is a Gram matrix
# of an exceptional collection (up to signs).
for m, step in enumerate(chamber_walk(3, s0, 6)):
    print(m, [list(row) for row in step.S])

print("Gram of chamber-0 collection:", collection_gram(labels, 3))

# Only P^1 and P^2 reach the Beilinson form by walking through chambers.
for k in range(2, 7):
    print(k, beilinson_reachability(k))
