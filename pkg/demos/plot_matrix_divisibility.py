"""
Divisibility of matrix algebras
===============================

The Cuntz semigroup of the k x k matrices is the extended naturals with
unit k.  Here we compute the least n for which the unit is (m, n)-divisible
by exhaustive search and compare it with the closed formula.
"""

import numpy as np

from cudiv import DivKind, ExtNatModel, least, matrix_div

###############################################################################
# A single value first.  The witness is the element x with 3x <= 7 <= 4x.

rep = least(ExtNatModel(7), None, DivKind.Div, 3)
print(rep.value, rep.witness)

###############################################################################
# The full table for k, m up to 12.  Entries with m > k are infinite: an
# element of rank k cannot hold m orthogonal nonzero copies.

K = 12
table = np.full((K, K), np.inf)
for k in range(1, K + 1):
    M = ExtNatModel(k)
    for m in range(1, k + 1):
        table[k - 1, m - 1] = least(M, None, DivKind.Div, m).value

formula = np.array([[matrix_div(m, k) for m in range(1, K + 1)] for k in range(1, K + 1)], dtype=float)
print("search agrees with formula:", np.array_equal(table, formula))

###############################################################################
# When m divides k the answer is m itself; otherwise it is at least m + 1.

for k in (6, 7, 12):
    print(k, [int(v) if np.isfinite(v) else "inf" for v in table[k - 1]])
