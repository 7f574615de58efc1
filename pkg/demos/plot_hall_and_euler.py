"""
Euler classes and transversals
==============================

A sum of line bundles over a product of 2-spheres has a nonzero Euler
class exactly when the index sets of the summands admit a system of
distinct representatives.  We check both sides on a few families.
"""

from cudiv import SetFamily, euler_of_family, hall_check

###############################################################################
# Two copies of {1, 2}: the top class 2*z1*z2 survives and the transversal
# picks both elements.

fam = SetFamily(2, [({1, 2}, 2)])
print(euler_of_family(fam), hall_check(fam).transversal)

###############################################################################
# Four demands on a three-element ground fail; the certificate names the
# offending subfamily.

fam = SetFamily(3, [({1, 2}, 2), ({1}, 1), ({3}, 1)])
cert = hall_check(fam)
print(euler_of_family(fam).is_zero(), cert.feasible, cert.violator)

###############################################################################
# Multiplicities stay symbolic.  Here a ground set of 2000 points receives
# demands of a few hundred per block and the flow solver never expands them.

blocks = [(range(1 + 400 * b, 401 + 400 * b), 400) for b in range(5)]
cert = hall_check(SetFamily(2000, blocks))
print(cert.feasible, [len(reps) for reps in cert.transversal])
