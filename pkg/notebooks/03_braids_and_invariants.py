"""
Braid group actions and their invariants
========================================

Braid letters mutate Stokes matrices; the characteristic polynomial of S^-1 S^T
and the Markov-type equation are unchanged along the way.
"""

from fractions import Fraction

from qmono.core_algebra import BraidWord
from qmono.monodromy import (
    braid_act_stokes,
    c0_log,
    c0_solve,
    markov_descend,
    p_invariants,
)
from qmono.projective import chamber_stokes

# Start from a chamber of P^2 and apply a few braid letters (capital B inverts).
s = [list(row) for row in chamber_stokes(3, 0)]
word = BraidWord.parse("b1 B2 b1", 3)
t = braid_act_stokes(s, word)
print(s, "->", t)

# The p-invariants agree before and after.
print(p_invariants(s), p_invariants(t))

# Solutions of x^2 + y^2 + z^2 = xyz descend to (3, 3, 3) by Vieta moves.
for step in markov_descend(3, 15, 6):
    print(step)

# The group C_0: odd coefficients are free, even ones are determined.
x = c0_solve([0, Fraction(1, 2), 0, 2], 4)
print(x.alphas, c0_log(x))
