"""Naive reference implementations used as independent test oracles.

Everything here enumerates definitions literally over plain integers or
tables and shares no code with the package.
"""

import itertools
import math

INF = math.inf


def ext_add(a, b, cap):
    s = a + b
    return INF if s > cap else s


def ext_mul(n, x, cap):
    if n == 0:
        return 0
    s = n * x
    return INF if s > cap else s


def naive_least_extnat(k, kind, m, n_max=40):
    """Least n for the unit k of the extended naturals, by literal search.

    Elements are 0..2k and infinity; sums above 2k become infinity, which
    never changes a comparison against k.
    """
    cap = 2 * k
    elems = list(range(cap + 1)) + [INF]
    for n in range(1, n_max + 1):
        if kind == "Div":
            if any(m * x <= k <= n * x for x in elems):
                return n
        elif kind == "Decomp":
            for xs in bounded_tuples(m, k):
                if all(k <= n * x for x in xs):
                    return n
        elif kind == "WeakDiv":
            small = [x for x in elems if m * x <= k]
            # the largest small element repeated n times is the best sum
            if small and k <= n * max(small):
                return n
        elif kind == "Cov":
            pieces = naive_cov_pieces(k, m)
            if pieces and k <= n * max(pieces):
                return n
    return INF


def bounded_tuples(length, bound, low=0):
    """Nondecreasing tuples of non-negative integers with sum <= bound."""
    if length == 0:
        yield ()
        return
    for x in range(low, bound // length + 1):
        for rest in bounded_tuples(length - 1, bound - x, x):
            yield (x,) + rest


def naive_cov_pieces(k, m):
    """Values x <= k that are sums of terms c*y with c >= m (y >= 0)."""
    vals = {0}
    changed = True
    while changed:
        changed = False
        for v in list(vals):
            for c in range(m, k + 1):
                for y in range(0, k // c + 1):
                    w = v + c * y
                    if w <= k and w not in vals:
                        vals.add(w)
                        changed = True
    return vals


def naive_formula(m, k):
    if m > k:
        return INF
    return math.ceil(k / (k // m))


def table_least(add, leq, u, kind, m, n_max=12):
    """Literal least-n search on an explicit table (index 0 is neutral)."""
    size = len(add)

    def mult(n, x):
        s = 0
        for _ in range(n):
            s = add[s][x]
        return s

    def total(xs):
        s = 0
        for x in xs:
            s = add[s][x]
        return s

    E = range(size)
    for n in range(1, n_max + 1):
        if kind == "Div":
            if any(leq[mult(m, x)][u] and leq[u][mult(n, x)] for x in E):
                return n
        elif kind == "Decomp":
            for xs in itertools.combinations_with_replacement(E, m):
                if leq[total(xs)][u] and all(leq[u][mult(n, x)] for x in xs):
                    return n
        elif kind == "WeakDiv":
            small = [x for x in E if leq[mult(m, x)][u]]
            for xs in itertools.combinations_with_replacement(small, n):
                if leq[u][total(xs)]:
                    return n
    return INF


def sdr_count(sets):
    """Number of systems of distinct representatives of a list of sets."""
    return sum(
        1
        for reps in itertools.product(*[sorted(s) for s in sets])
        if len(set(reps)) == len(reps)
    )
