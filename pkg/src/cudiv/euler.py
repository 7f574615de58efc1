"""Euler classes of sums of line bundles over a product of 2-spheres.

The cohomology ring of ``(S^2)^d`` is ``Z[z_1..z_d]/(z_1^2, ..., z_d^2)``.
The line bundle ``p_I`` (external tensor product of the Hopf bundle over the
coordinates in ``I``) has Euler class ``sum_{i in I} z_i``, and the Euler class
of a direct sum is the product of the summands' classes.

Since every linear form has 0/1 coefficients, the coefficient of
``z_1...z_d`` in a product of ``d`` of them counts the transversals of the
corresponding sets, so the product is nonzero exactly when the family has a
system of distinct representatives.  :func:`hall_check` decides that by
max-flow and scales to multiplicities the polynomial cannot.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Mapping

from .flow import FlowNetwork

DEFAULT_TERM_GUARD = 1 << 20
MAX_MULTIPLICITY = 1 << 62
SDR_LIMIT = 8
SMALL_MATCHING = 64


class TermBudgetExceeded(RuntimeError):
    """A polynomial product would hold more terms than the guard allows."""


class InstanceTooLarge(ValueError):
    pass


def term_guard() -> int:
    raw = os.environ.get("CU_DIV_BUDGET")
    return int(raw) if raw else DEFAULT_TERM_GUARD


def _mask(indices: Iterable[int], dim: int) -> int:
    m = 0
    for i in indices:
        if not 1 <= i <= dim:
            raise ValueError(f"index {i} out of range 1..{dim}")
        m |= 1 << (i - 1)
    return m


def _indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class MultilinearPoly:
    """Sparse element of ``Z[z_1..z_d]/(z_i^2)`` keyed by monomial bitmasks."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[int, int] | None = None):
        self.dim = dim
        self.terms = {k: v for k, v in (terms or {}).items() if v}
        limit = 1 << dim
        for k in self.terms:
            if not 0 <= k < limit:
                raise ValueError("monomial outside the ring")

    @classmethod
    def one(cls, dim: int) -> "MultilinearPoly":
        return cls(dim, {0: 1})

    @classmethod
    def zero(cls, dim: int) -> "MultilinearPoly":
        return cls(dim)

    @classmethod
    def from_monomials(cls, dim: int, monomials: Mapping[Iterable[int], int]) -> "MultilinearPoly":
        terms: dict[int, int] = {}
        for idx, c in monomials.items():
            k = _mask(idx, dim)
            terms[k] = terms.get(k, 0) + c
        return cls(dim, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max((k.bit_count() for k in self.terms), default=-1)

    def coefficient(self, indices: Iterable[int]) -> int:
        return self.terms.get(_mask(indices, self.dim), 0)

    def _same(self, other: "MultilinearPoly") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __eq__(self, other) -> bool:
        return isinstance(other, MultilinearPoly) and self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return MultilinearPoly(self.dim, out)

    def __neg__(self) -> "MultilinearPoly":
        return MultilinearPoly(self.dim, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        return self + (-other)

    def __mul__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        return mul(self, other)

    def __repr__(self) -> str:
        return f"MultilinearPoly({self.dim}, {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda k: (k.bit_count(), _indices(k))):
            c = self.terms[k]
            mono = "*".join(f"z{i}" for i in _indices(k))
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def to_record(self) -> dict:
        terms = sorted(self.terms.items(), key=lambda kv: (kv[0].bit_count(), _indices(kv[0])))
        return {"dim": self.dim, "terms": [{"monomial": list(_indices(k)), "coeff": v} for k, v in terms]}


def linear_form(I: Iterable[int], d: int) -> MultilinearPoly:
    """``sum_{i in I} z_i``, the Euler class of ``p_I``.

    The empty set gives 0: the trivial line bundle has a nowhere-vanishing
    section, so its Euler class vanishes.
    """
    return MultilinearPoly(d, {1 << (i - 1): 1 for i in _check_indices(I, d)})


def _check_indices(I: Iterable[int], d: int) -> list[int]:
    idx = sorted(set(I))
    for i in idx:
        if not 1 <= i <= d:
            raise ValueError(f"index {i} out of range 1..{d}")
    return idx


def mul(p: MultilinearPoly, q: MultilinearPoly, guard: int | None = None) -> MultilinearPoly:
    """Ring product; monomials sharing a variable vanish."""
    p._same(q)
    guard = term_guard() if guard is None else guard
    out: dict[int, int] = {}
    for a, ca in p.terms.items():
        for b, cb in q.terms.items():
            if a & b:
                continue
            k = a | b
            out[k] = out.get(k, 0) + ca * cb
        if len(out) > guard:
            raise TermBudgetExceeded(f"product exceeds {guard} terms; use hall_check")
    return MultilinearPoly(p.dim, out)


def _mul_linear(terms: dict[int, int], bits: list[int], guard: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for a, ca in terms.items():
        for b in bits:
            if a & b:
                continue
            k = a | b
            out[k] = out.get(k, 0) + ca
    if len(out) > guard:
        raise TermBudgetExceeded(f"product exceeds {guard} terms; use hall_check")
    return out


# ---------------------------------------------------------------------------
# set families


def _set_key(s: frozenset) -> tuple:
    return (len(s), tuple(sorted(s)))


@dataclass(frozen=True)
class SetFamily:
    """Multiset of index sets over ``{1..ground}``.

    Members are kept in canonical order (size, then lexicographic) with equal
    sets merged.  Zero multiplicities are kept, they simply never matter.
    """

    ground: int
    members: tuple[tuple[frozenset, int], ...]

    def __init__(self, ground: int, members: Iterable[tuple[Iterable[int], int]]):
        merged: dict[frozenset, int] = {}
        for s, c in members:
            fs = frozenset(int(i) for i in s)
            if c < 0:
                raise ValueError("multiplicities must be non-negative")
            if any(not 1 <= i <= ground for i in fs):
                raise ValueError(f"set {sorted(fs)} not inside 1..{ground}")
            merged[fs] = merged.get(fs, 0) + int(c)
        ordered = tuple(sorted(merged.items(), key=lambda kv: _set_key(kv[0])))
        object.__setattr__(self, "ground", int(ground))
        object.__setattr__(self, "members", ordered)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.members)

    def to_record(self) -> dict:
        return {
            "ground": self.ground,
            "members": [{"set": sorted(s), "mult": c} for s, c in self.members],
        }

    @classmethod
    def from_record(cls, rec: dict) -> "SetFamily":
        try:
            ground = rec["ground"]
            members = [(m["set"], m["mult"]) for m in rec["members"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed family record: {exc}") from exc
        if not isinstance(ground, int) or ground < 0:
            raise ValueError("malformed family record: ground must be a non-negative int")
        for s, c in members:
            if not isinstance(c, int) or isinstance(c, bool) or not all(isinstance(i, int) for i in s):
                raise ValueError("malformed family record: sets and multiplicities must be ints")
        return cls(ground, members)

    def expanded(self) -> list[frozenset]:
        out = []
        for s, c in self.members:
            out.extend([s] * c)
        return out


def euler_of_family(f: SetFamily, guard: int | None = None) -> MultilinearPoly:
    """``prod_I (sum_{i in I} z_i)^{c_I}``.

    A product of more than ``ground`` linear forms has degree above the top
    class and is returned as 0 without expansion.
    """
    d = f.ground
    if f.total > d:
        return MultilinearPoly.zero(d)
    guard = term_guard() if guard is None else guard
    terms = {0: 1}
    for s, c in f.members:
        bits = [1 << (i - 1) for i in sorted(s)]
        for _ in range(c):
            terms = _mul_linear(terms, bits, guard)
            if not terms:
                return MultilinearPoly.zero(d)
    return MultilinearPoly(d, terms)


# ---------------------------------------------------------------------------
# Hall condition


@dataclass
class HallCertificate:
    """``transversal`` lists, per member in canonical order, its distinct
    representatives; ``violator`` lists members ``F`` with ``|U F| < sum_F c``."""

    feasible: bool
    family: SetFamily
    transversal: tuple[tuple[int, ...], ...] | None = None
    violator: tuple[tuple[frozenset, int], ...] | None = None

    def recheck(self) -> bool:
        if self.feasible:
            if self.transversal is None or len(self.transversal) != len(self.family.members):
                return False
            used: set[int] = set()
            for (s, c), reps in zip(self.family.members, self.transversal):
                if len(reps) != c or not set(reps) <= s:
                    return False
                used.update(reps)
            return len(used) == self.family.total
        if not self.violator:
            return False
        members = dict(self.family.members)
        if any(members.get(s) != c for s, c in self.violator):
            return False
        union = frozenset().union(*(s for s, _ in self.violator))
        return len(union) < sum(c for _, c in self.violator)

    def to_record(self) -> dict:
        rec: dict = {"feasible": self.feasible}
        if self.feasible:
            rec["transversal"] = [
                {"set": sorted(s), "reps": list(r)} for (s, _), r in zip(self.family.members, self.transversal or ())
            ]
        else:
            rec["violator"] = [{"set": sorted(s), "mult": c} for s, c in self.violator or ()]
        return rec


def hall_check(f: SetFamily) -> HallCertificate:
    """Decide whether ``f`` (each set repeated c times) has distinct representatives.

    Network: source -> member (capacity c), member -> element (capacity c),
    element -> sink (capacity 1).  Feasible iff the max flow is ``sum c``.
    On failure, the members on the source side of the residual cut form a
    Hall violator.
    """
    members, total = [], 0
    for s, c in f.members:
        if c > MAX_MULTIPLICITY:
            raise OverflowError(f"multiplicity {c} exceeds 2^62")
        if c:
            members.append((s, c))
            total += c
    if total == 0:
        return HallCertificate(True, f, tuple(() for _ in f.members))
    if total > f.ground:
        return HallCertificate(False, f, violator=tuple(members))
    union = frozenset().union(*(s for s, _ in members))
    if total > len(union):
        # the whole family already violates the condition
        return HallCertificate(False, f, violator=tuple(members))
    if total <= SMALL_MATCHING:
        return _hall_small(f, members)
    elements = sorted(union)
    epos = {e: i for i, e in enumerate(elements)}
    nm = len(members)
    src, sink = nm + len(elements), nm + len(elements) + 1
    net = FlowNetwork(nm + len(elements) + 2)
    edge_ids: list[list[tuple[int, int]]] = []
    for j, (s, c) in enumerate(members):
        net.add_edge(src, j, c)
        edge_ids.append([(e, net.add_edge(j, nm + epos[e], c)) for e in sorted(s)])
    for e in elements:
        net.add_edge(nm + epos[e], sink, 1)
    flow = net.max_flow(src, sink)
    if flow == total:
        reps_by_set = {}
        for (s, c), edges in zip(members, edge_ids):
            reps_by_set[s] = tuple(e for e, eid in edges if net.flow_on(eid) > 0)
        transversal = tuple(reps_by_set.get(s, ()) for s, _ in f.members)
        return HallCertificate(True, f, transversal)
    side = net.reachable(src)
    violator = tuple(members[j] for j in range(nm) if side[j])
    return HallCertificate(False, f, violator=violator)


def _hall_small(f: SetFamily, members: list[tuple[frozenset, int]]) -> HallCertificate:
    """Augmenting paths over one slot per copy of each set.

    Only reached when ``sum c <= |union| `` is small, so the expansion is tiny.
    """
    slots = [j for j, (_, c) in enumerate(members) for _ in range(c)]
    options = [sorted(members[j][0]) for j in slots]
    owner: dict[int, int] = {}  # element -> slot

    def augment(i: int, seen: set) -> bool:
        for e in options[i]:
            if e in seen:
                continue
            seen.add(e)
            if e not in owner or augment(owner[e], seen):
                owner[e] = i
                return True
        return False

    for i in range(len(slots)):
        seen: set = set()
        if not augment(i, seen):
            # seen holds the elements alternating-reachable from slot i; each is
            # matched to a reachable slot, so the reachable sets cover |seen|
            # elements but carry at least |seen| + 1 copies
            hit = {slots[i]} | {slots[owner[e]] for e in seen}
            return HallCertificate(False, f, violator=tuple(members[j] for j in sorted(hit)))
    reps: dict[frozenset, list[int]] = {}
    for e, i in owner.items():
        reps.setdefault(members[slots[i]][0], []).append(e)
    transversal = tuple(tuple(sorted(reps.get(s, ()))) for s, _ in f.members)
    return HallCertificate(True, f, transversal)


def sdr_bruteforce(f: SetFamily) -> bool:
    """Backtracking search for distinct representatives (reference oracle)."""
    if f.total > SDR_LIMIT:
        raise InstanceTooLarge(f"total multiplicity {f.total} exceeds {SDR_LIMIT}")
    sets = sorted(f.expanded(), key=len)
    used: set[int] = set()

    def go(i: int) -> bool:
        if i == len(sets):
            return True
        for e in sorted(sets[i]):
            if e not in used:
                used.add(e)
                if go(i + 1):
                    return True
                used.discard(e)
        return False

    return go(0)


def all_families(ground: int, max_total: int, include_empty_set: bool = True):
    """Every family over ``{1..ground}`` with total multiplicity ``<= max_total``."""
    subsets = [
        frozenset(c)
        for r in range(0 if include_empty_set else 1, ground + 1)
        for c in itertools.combinations(range(1, ground + 1), r)
    ]
    # subsets are already in canonical order, so members can be assembled directly
    n = len(subsets)

    def make(members):
        fam = object.__new__(SetFamily)
        object.__setattr__(fam, "ground", ground)
        object.__setattr__(fam, "members", tuple(members))
        return fam

    def moves(start, budget):
        return ((i, c, budget - c) for i in range(start, n) for c in range(1, budget + 1))

    # depth-first with an explicit stack; same order as the obvious recursion
    chosen: list[tuple[frozenset, int]] = []
    yield make(chosen)
    stack = [moves(0, max_total)]
    while stack:
        nxt = next(stack[-1], None)
        del chosen[len(stack) - 1 :]
        if nxt is None:
            stack.pop()
            continue
        i, c, left = nxt
        chosen.append((subsets[i], c))
        yield make(chosen)
        if left and i + 1 < n:
            stack.append(moves(i + 1, left))
