"""
Certified bounds for the staged construction
============================================

The first staged construction pins the 2-divisibility numbers of its
limit algebra to the interval (N, 3N+4].  The lower end comes from a
transversal certificate, the upper end from an explicit witness.
"""

from cudiv.villadsen import build, verify_thm_simple

###############################################################################
# Construction data at stage 3 with N = 2: block sizes double each stage.

spec = build("simple1", 2, 3)
print([len(J) for J in spec.J], spec.q_n)

###############################################################################
# Certified intervals for a few parameters.

for N in range(1, 4):
    iv = verify_thm_simple(N, 3)
    print(N, iv.text(), iv.recheck())

###############################################################################
# The upper witness is the line bundle supported on the last block.

iv = verify_thm_simple(2, 2)
print(iv.upper_cert["witness"])
