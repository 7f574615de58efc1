"""Least-n solvers for the divisibility numbers of a compact element.

With every element compact the four notions read, for ``u`` and ``m``:

* ``Div``      ``m x <= u <= n x`` for one ``x``;
* ``Decomp``   ``x_1 + ... + x_m <= u <= n x_j`` for all ``j``;
* ``WeakDiv``  ``m x_j <= u <= x_1 + ... + x_n``;
* ``Cov``      ``x_j <= u <= x_1 + ... + x_n`` where each ``x_j`` is a sum of
  terms ``k y`` with ``k >= m``.

``least`` computes the exact minimum by closure over the finite carrier and
then asks ``check`` for the lexicographically first witness at that value.
"""

from __future__ import annotations

import enum
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .core import INF, CuModel, element_flags, infinite_multiple

DEFAULT_CUTOFF = 64
DEFAULT_BUDGET = 5_000_000


class DivKind(enum.Enum):
    Div = "Div"
    Decomp = "Decomp"
    WeakDiv = "WeakDiv"
    Cov = "Cov"

    @classmethod
    def parse(cls, text: str) -> "DivKind":
        for k in cls:
            if k.value.lower() == text.lower():
                return k
        raise ValueError(f"unknown divisibility kind {text!r}")


class SearchSpaceTooLarge(RuntimeError):
    """Raised when a witness search would exceed the configured budget."""


def search_budget() -> int:
    raw = os.environ.get("CU_DIV_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass
class DivisibilityReport:
    kind: DivKind
    m: int
    value: int | float | None  # INF for infinity, None for "> cutoff"
    witness: tuple | None
    cutoff: int
    proof_tag: str = ""
    u: Any = None
    decomposition: tuple | None = None  # Cov only: ((k, y), ...) per witness entry

    @property
    def finite(self) -> bool:
        return self.value is not None and self.value != INF

    def recheck(self, model: CuModel) -> bool:
        """Re-verify the witness against the defining inequalities."""
        if not self.finite:
            return self.witness is None
        u = self.u if self.u is not None else model.unit
        return verify_witness(model, u, self.kind, self.m, int(self.value), self.witness, self.decomposition)

    def value_text(self) -> str:
        if self.value is None:
            return f">{self.cutoff}"
        if self.value == INF:
            return "inf"
        return str(int(self.value))

    def to_record(self, model: CuModel | None = None) -> dict:
        enc = model.encode if model is not None else (lambda x: x)
        rec = {
            "kind": self.kind.value,
            "m": self.m,
            "value": self.value_text() if not self.finite else int(self.value),
            "witness": None if self.witness is None else [enc(x) for x in self.witness],
            "cutoff": self.cutoff,
            "proof_tag": self.proof_tag,
        }
        if self.u is not None:
            rec["u"] = enc(self.u)
        if self.decomposition is not None:
            rec["decomposition"] = [[[k, enc(y)] for k, y in parts] for parts in self.decomposition]
        return rec

    @classmethod
    def from_record(cls, rec: dict, model: CuModel | None = None) -> "DivisibilityReport":
        dec = model.decode if model is not None else (lambda x: x)
        raw = rec["value"]
        if raw == "inf":
            value = INF
        elif isinstance(raw, str):
            value = None
        else:
            value = int(raw)
        wit = rec.get("witness")
        comp = rec.get("decomposition")
        return cls(
            kind=DivKind.parse(rec["kind"]),
            m=int(rec["m"]),
            value=value,
            witness=None if wit is None else tuple(dec(x) for x in wit),
            cutoff=int(rec["cutoff"]),
            proof_tag=rec.get("proof_tag", ""),
            u=dec(rec["u"]) if "u" in rec else None,
            decomposition=None if comp is None else tuple(tuple((int(k), dec(y)) for k, y in p) for p in comp),
        )


def verify_witness(model: CuModel, u, kind: DivKind, m: int, n: int, witness, decomposition=None) -> bool:
    leq, add = model.leq, model.add
    if witness is None:
        return False
    w = tuple(witness)
    if kind is DivKind.Div:
        (x,) = w
        return leq(model.multiple(m, x), u) and leq(u, model.multiple(n, x))
    if kind is DivKind.Decomp:
        return (
            len(w) == m
            and leq(model.total(w), u)
            and all(leq(u, model.multiple(n, x)) for x in w)
        )
    if kind is DivKind.WeakDiv:
        return len(w) == n and all(leq(model.multiple(m, x), u) for x in w) and leq(u, model.total(w))
    if kind is DivKind.Cov:
        if len(w) != n or decomposition is None or len(decomposition) != n:
            return False
        for x, parts in zip(w, decomposition):
            if any(k < m for k, _ in parts):
                return False
            if model.total(model.multiple(k, y) for k, y in parts) != x:
                return False
            if not leq(x, u):
                return False
        return leq(u, model.total(w))
    raise ValueError(kind)


# ---------------------------------------------------------------------------
# candidate sets


def _order(model: CuModel, xs: Iterable) -> list:
    idx = model._index()
    return sorted(set(xs), key=idx.__getitem__)


def _cov_generators(model: CuModel, u, m: int) -> dict:
    """Elements below ``u`` that are sums of terms ``k y`` with ``m <= k < 2m``.

    Returns a map element -> decomposition ((k, y), ...).  Any ``k >= m`` is a
    sum of integers in ``[m, 2m)``, so this range loses nothing.
    """
    gens: dict = {}
    for y in model.lower_set(u):
        for k in range(m, 2 * m):
            g = model.multiple(k, y)
            if model.leq(g, u) and g not in gens:
                gens[g] = ((k, y),)
    closure = dict(gens)
    frontier = list(closure)
    while frontier:
        nxt = []
        for a in frontier:
            for g, dg in gens.items():
                s = model.add(a, g)
                if s not in closure and model.leq(s, u):
                    closure[s] = closure[a] + dg
                    nxt.append(s)
        frontier = nxt
    closure.setdefault(model.zero, ())
    return closure


def _candidates(model: CuModel, u, kind: DivKind, m: int) -> list:
    if kind is DivKind.Cov:
        return _order(model, _cov_generators(model, u, m))
    return list(model.scaled_lower_set(u, m))


# ---------------------------------------------------------------------------
# exact least values


def _least_sum_count(model: CuModel, u, cands: Sequence) -> int | None:
    """Least n such that some n-fold sum of candidates dominates ``u``."""
    if not cands:
        return None
    sums = set(cands)
    n = 1
    while True:
        if any(model.leq(u, s) for s in sums):
            return n
        grown = {model.add(s, c) for s in sums for c in cands} | sums
        if grown == sums:
            return None
        sums = grown
        n += 1


def _least_decomp(model: CuModel, u, m: int) -> int | None:
    cands = model.lower_set(u)
    cost = {}
    for x in cands:
        c = model.covering_multiple(x, u)
        if c is not None:
            cost[x] = c
    best = None
    for n in sorted(set(cost.values())):
        usable = [x for x in cands if x in cost and cost[x] <= n]
        sums = {model.zero}
        for _ in range(m):
            sums = {model.add(s, x) for s in sums for x in usable}
            sums = {s for s in sums if model.leq(s, u)}
            if not sums:
                break
        if sums:
            best = n
            break
    return best


def _least_exact(model: CuModel, u, kind: DivKind, m: int) -> int | None:
    if kind is DivKind.Div:
        costs = [model.covering_multiple(x, u) for x in model.scaled_lower_set(u, m)]
        costs = [c for c in costs if c is not None]
        return min(costs) if costs else None
    if kind is DivKind.Decomp:
        return _least_decomp(model, u, m)
    return _least_sum_count(model, u, _candidates(model, u, kind, m))


def least(model: CuModel, u=None, kind: DivKind = DivKind.Div, m: int = 2, cutoff: int = DEFAULT_CUTOFF) -> DivisibilityReport:
    """Least ``n`` such that ``u`` is (m, n)-divisible in the given sense.

    Infinity is only reported with a proof tag: the closure computations above
    exhaust the finite carrier.  A finite minimum above ``cutoff`` is reported
    as ``value=None`` (printed ``>cutoff``).
    """
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    if m < 1:
        raise ValueError("m must be at least 1")
    u = model.unit if u is None else u
    val = _least_exact(model, u, kind, m)
    if val is None:
        return DivisibilityReport(kind, m, INF, None, cutoff, model.infinity_tag(u, m), u)
    if val > cutoff:
        return DivisibilityReport(kind, m, None, None, cutoff, "minimum exceeds cutoff", u)
    ok, wit, dec = check(model, u, kind, m, val, with_decomposition=True)
    assert ok, "closure and witness search disagree"
    return DivisibilityReport(kind, m, val, wit, cutoff, "least value; witness is lexicographically first", u, dec)


def least_all(model: CuModel, u=None, m: int = 2, cutoff: int = DEFAULT_CUTOFF) -> dict[DivKind, DivisibilityReport]:
    return {k: least(model, u, k, m, cutoff) for k in DivKind}


# ---------------------------------------------------------------------------
# witness search


def check(model: CuModel, u, kind: DivKind, m: int, n: int, with_decomposition: bool = False):
    """Decide (m, n)-divisibility of ``u``; returns ``(ok, witness)``.

    The witness is the smallest tuple in canonical lexicographic order.  With
    ``with_decomposition`` a third entry carries the Cov decompositions.
    Raises :class:`SearchSpaceTooLarge` when the memoised search exceeds the
    budget (``CU_DIV_BUDGET``).
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    u = model.unit if u is None else u
    budget = search_budget()
    dec = None
    if kind is DivKind.Div:
        wit = None
        for x in model.scaled_lower_set(u, m):
            if model.leq(u, model.multiple(n, x)):
                wit = (x,)
                break
    elif kind is DivKind.Decomp:
        usable = [x for x in model.lower_set(u) if model.leq(u, model.multiple(n, x))]
        wit = _sorted_tuple_search(model, usable, m, lambda s: model.leq(s, u), lambda s: True, budget)
    elif kind is DivKind.WeakDiv:
        cands = model.scaled_lower_set(u, m)
        wit = _sorted_tuple_search(model, cands, n, lambda s: True, lambda s: model.leq(u, s), budget)
    else:
        gens = _cov_generators(model, u, m)
        cands = _order(model, gens)
        wit = _sorted_tuple_search(model, cands, n, lambda s: True, lambda s: model.leq(u, s), budget)
        if wit is not None:
            dec = tuple(gens[x] for x in wit)
    ok = wit is not None
    if with_decomposition:
        return ok, wit, dec
    return ok, wit


def _sorted_tuple_search(model, cands: Sequence, length: int, partial_ok, final_ok, budget: int):
    """Lexicographically first nondecreasing tuple of ``cands`` of the given length.

    ``partial_ok`` prunes partial sums (it must be downward closed along the
    search), ``final_ok`` accepts complete sums.  The first sorted tuple found
    is the lexicographically smallest among all tuples, since sorting any
    valid tuple keeps it valid and does not increase it.
    """
    failed: set = set()
    work = 0
    path: list = []

    def go(start: int, remaining: int, s) -> bool:
        nonlocal work
        if remaining == 0:
            return final_ok(s)
        key = (start, remaining, s)
        if key in failed:
            return False
        for i in range(start, len(cands)):
            work += 1
            if work > budget:
                raise SearchSpaceTooLarge(
                    f"witness search exceeded budget {budget} (set CU_DIV_BUDGET to raise it)"
                )
            t = model.add(s, cands[i])
            if not partial_ok(t):
                continue
            path.append(cands[i])
            if go(i, remaining - 1, t):
                return True
            path.pop()
        failed.add(key)
        return False

    limit = sys.getrecursionlimit()
    if length + 100 > limit:
        sys.setrecursionlimit(length + 200)
    return tuple(path) if go(0, length, model.zero) else None


# ---------------------------------------------------------------------------
# closed formulas and asymptotics


def matrix_div(m: int, k: int) -> int | float:
    """``ceil(k / floor(k/m))`` for ``m <= k``, infinity for ``m > k``.

    This is Div_m = Decomp_m = WeakDiv_m of the unit of the k x k matrices.
    """
    if m < 1 or k < 1:
        raise ValueError("m and k must be positive")
    if m > k:
        return INF
    return -(-k // (k // m))


@dataclass
class DivStarEstimate:
    samples: list[tuple[int, int | float]]
    lower: Fraction | float
    upper: Fraction | float
    note: str = ""

    @property
    def estimate(self):
        return self.upper if self.lower == self.upper else None

    def recheck(self, model: CuModel, u=None) -> bool:
        for m, v in self.samples:
            if least(model, u, DivKind.Div, m, cutoff=max(64, m * 4)).value != v:
                return False
        return self.lower <= self.upper


def div_star_estimate(model: CuModel, m_max: int, u=None) -> DivStarEstimate:
    """Bracket ``liminf Div_m / m`` from the samples ``2 <= m <= m_max``.

    The upper value is the smallest sampled ratio.  The lower value uses
    ``Div_m <= m Div_* + 1`` together with ``Div_* >= 1`` for an element that
    is not properly infinite; a properly infinite element has ``Div_m = 1``
    for all ``m`` and hence ``Div_* = 0``.
    """
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    u = model.unit if u is None else u
    samples = []
    for m in range(2, m_max + 1):
        rep = least(model, u, DivKind.Div, m, cutoff=max(DEFAULT_CUTOFF, 4 * m))
        if rep.value is None:
            raise SearchSpaceTooLarge(f"Div_{m} exceeds the cutoff")
        samples.append((m, rep.value))
        if rep.value == INF:
            return DivStarEstimate(samples, INF, INF, "finite rank: some Div_m is infinite")
    if element_flags(model, u).properly_infinite:
        return DivStarEstimate(samples, Fraction(0), Fraction(0), "properly infinite: Div_m = 1 for all m")
    upper = min(Fraction(int(v), m) for m, v in samples)
    lower = max(Fraction(int(v) - 1, m) for m, v in samples)
    lower = min(max(lower, Fraction(1)), upper)
    return DivStarEstimate(samples, lower, upper)


# ---------------------------------------------------------------------------
# combinators


def _combine(reports: Sequence[DivisibilityReport], pick_sup: bool, tag: str) -> DivisibilityReport:
    if not reports:
        raise ValueError("no reports to combine")
    kinds = {(r.kind, r.m) for r in reports}
    if len(kinds) != 1:
        raise ValueError(f"mixed kinds in combinator: {sorted((k.value, m) for k, m in kinds)}")
    kind, m = kinds.pop()
    cutoff = max(r.cutoff for r in reports)
    vals = [r.value for r in reports]
    finite = [v for v in vals if v is not None and v != INF]
    if pick_sup:
        if INF in vals:
            value = INF
        elif None in vals:
            value = None
        else:
            value = max(finite)
    else:
        if finite:
            value = min(finite)
        elif None in vals:
            value = None
        else:
            value = INF
    return DivisibilityReport(kind, m, value, None, cutoff, tag)


def combine_product(reports: Sequence[DivisibilityReport]) -> DivisibilityReport:
    """Supremum over factors: the value for a product (or ultrapower)."""
    return _combine(reports, True, "supremum over factors")


def combine_chain(reports: Sequence[DivisibilityReport]) -> DivisibilityReport:
    """Infimum over stages: the value for an inductive limit with compact unit."""
    return _combine(reports, False, "infimum over inductive-limit stages")


# ---------------------------------------------------------------------------
# omega variants and CFP


def omega_check(model: CuModel, u, kind: DivKind, n: int):
    """Finite-model form of (omega, n)-decomposability and its weak variant.

    An infinite family in a finite carrier repeats some value ``x`` infinitely
    often, so its sum dominates ``inf*x``; conversely ``inf*x`` is itself such
    a sum.  Hence Decomp asks for ``x`` with ``inf*x <= u <= n x`` and WeakDiv
    for ``x_1..x_n`` with ``inf*x_i <= u <= x_1 + ... + x_n``.
    Returns ``(ok, witness)``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    small = [x for x in model.lower_set(u) if model.leq(infinite_multiple(model, x), u)]
    if kind is DivKind.Decomp:
        for x in small:
            if model.leq(u, model.multiple(n, x)):
                return True, (x,)
        return False, None
    if kind is DivKind.WeakDiv:
        wit = _sorted_tuple_search(model, small, n, lambda s: True, lambda s: model.leq(u, s), search_budget())
        return wit is not None, wit
    raise ValueError("omega_check supports Decomp and WeakDiv")


@dataclass
class CFP4SReport:
    model: str
    iii_passed: bool
    iii_witness: tuple | None
    v_passed: bool
    v_witness: tuple | None
    note: str = (
        "both conditions hold in every finite model: m*y = top forces inf*y = top, and "
        "inf*x <= y <= n*x forces y = inf*x, which is idempotent"
    )

    @property
    def passed(self) -> bool:
        return self.iii_passed and self.v_passed


def cfp4s_check(model: CuModel) -> CFP4SReport:
    """Evaluate the finite reductions of two corona-factorization conditions.

    (iii) if ``m*y = top`` for some ``m <= |carrier|`` then ``inf*y = top``.
    (v) a full ``y`` that is (omega, m)-decomposable is properly infinite.
    """
    top = model.top
    if top is None:
        raise ValueError("cfp4s_check needs a model with a top element")
    elems = model.elements()
    size = len(elems)
    iii_w = None
    for y in elems:
        s = model.zero
        for m in range(1, size + 1):
            s = model.add(s, y)
            if s == top:
                if infinite_multiple(model, y) != top:
                    iii_w = (y, m)
                break
        if iii_w:
            break
    v_w = None
    for y in elems:
        flags = element_flags(model, y)
        if not flags.full or flags.properly_infinite:
            continue
        for m in range(1, size + 1):
            if omega_check(model, y, DivKind.Decomp, m)[0]:
                v_w = (y, m)
                break
        if v_w:
            break
    return CFP4SReport(model.name, iii_w is None, iii_w, v_w is None, v_w)


# ---------------------------------------------------------------------------
# pairings and 2-divisibility witnesses


def ext_tensor_pair(x, scale_a: int, y, scale_b: int):
    """Image of ``(x, y)`` under Cu(M_k) x Cu(M_l) -> Cu(M_kl): the product."""
    if scale_a < 1 or scale_b < 1:
        raise ValueError("scales must be positive")
    if x == 0 or y == 0:
        return 0
    if x == INF or y == INF:
        return INF
    return int(x) * int(y)


def two_div_witness(model: CuModel, u, v, N: int):
    """Search ``x_1..x_N`` with ``2 x_i <= v`` and ``2v <= v + (2N+1)u + sum 2 x_i``.

    Returns the tuple (sorted in canonical order) or None.
    """
    cands = model.scaled_lower_set(v, 2)
    base = model.add(v, model.multiple(2 * N + 1, u))
    target = model.multiple(2, v)
    return _sorted_tuple_search(
        model,
        cands,
        N,
        lambda s: True,
        lambda s: model.leq(target, model.add(base, model.multiple(2, s))),
        search_budget(),
    )


def proper_infiniteness_consequence(model: CuModel, u, kind: DivKind, m: int, n: int):
    """If ``u`` is (m, n)-divisible with ``n < m``, return ``(ok, n*u)`` where ok
    says whether ``n*u`` is properly infinite; None when the hypothesis fails."""
    if n >= m or not check(model, u, kind, m, n)[0]:
        return None
    nu = model.multiple(n, u)
    return element_flags(model, nu).properly_infinite, nu
