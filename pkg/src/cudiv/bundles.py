"""A three-valued comparison oracle for sums of line bundles over ``(S^2)^d``.

An expression ``sum c_I p_I`` stands for the direct sum of ``c_I`` copies of
the line bundle ``p_I`` (``p_{}`` is the trivial line bundle).  Comparison is
only partially decidable from this data, so :func:`compare` answers Yes, No
or Unknown and tags every definite answer with the rule that produced it:

R1  summand inclusion: ``c_I(xi) <= c_I(eta)`` for all ``I``.
R2  stable range: ``rank(eta) - rank(xi) >= margin(D)`` where ``D`` is the
    number of sphere coordinates either side depends on.  Both bundles are
    pulled back from ``(S^2)^D``, so the stability bound there applies.
R3  rank: ``rank(xi) > rank(eta)``.
R4  Euler obstruction: ``xi`` has a trivial summand while ``eta`` has nonzero
    Euler class (its family has a transversal), so ``eta`` has no
    nowhere-vanishing section and cannot contain a trivial summand.

Rules are tried in the fixed order R1, R3, R4, R2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .core import INF
from .euler import HallCertificate, SetFamily, euler_of_family, hall_check, TermBudgetExceeded

MEMBER_GUARD = 10**5
GROUND_GUARD = 10**6


class GuardViolation(ValueError):
    """An instance exceeds the configured size guards."""


def default_margin(d: int) -> int:
    """``ceil((2d - 1) / 2) = d``: half the real dimension of ``(S^2)^d``, rounded."""
    return d


class ProjectionExpr:
    """Formal sum ``sum_I c_I p_I`` of line-bundle classes over ``(S^2)^dim``."""

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs: Mapping[Iterable[int], int] | Iterable[tuple[Iterable[int], int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        merged: dict[frozenset, int] = {}
        for s, c in items:
            fs = frozenset(int(i) for i in s)
            if c < 0:
                raise ValueError("coefficients must be non-negative")
            if any(not 1 <= i <= dim for i in fs):
                raise ValueError(f"set {sorted(fs)} not inside 1..{dim}")
            if c:
                merged[fs] = merged.get(fs, 0) + int(c)
        self.dim = int(dim)
        self.coeffs = dict(sorted(merged.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))))

    @classmethod
    def trivial(cls, dim: int, c: int = 1) -> "ProjectionExpr":
        return cls(dim, [((), c)])

    @classmethod
    def line(cls, dim: int, I: Iterable[int], c: int = 1) -> "ProjectionExpr":
        return cls(dim, [(I, c)])

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjectionExpr) and self.dim == other.dim and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.dim, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        return f"ProjectionExpr({self.dim}, {self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for s, c in self.coeffs.items():
            name = "1" if not s else "p{" + ",".join(map(str, sorted(s))) + "}"
            parts.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(parts)

    def coefficient(self, I: Iterable[int]) -> int:
        return self.coeffs.get(frozenset(I), 0)

    @property
    def rank(self) -> int:
        return sum(self.coeffs.values())

    @property
    def support(self) -> frozenset:
        return frozenset().union(*self.coeffs) if self.coeffs else frozenset()

    def __add__(self, other: "ProjectionExpr") -> "ProjectionExpr":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return ProjectionExpr(self.dim, list(self.coeffs.items()) + list(other.coeffs.items()))

    def __rmul__(self, n: int) -> "ProjectionExpr":
        return ProjectionExpr(self.dim, [(s, n * c) for s, c in self.coeffs.items()])

    def family(self, scale: int = 1) -> SetFamily:
        return SetFamily(self.dim, [(s, scale * c) for s, c in self.coeffs.items()])

    def without_trivial(self) -> "ProjectionExpr":
        return ProjectionExpr(self.dim, [(s, c) for s, c in self.coeffs.items() if s])

    def to_record(self) -> dict:
        return {"dim": self.dim, "coeffs": [{"set": sorted(s), "mult": c} for s, c in self.coeffs.items()]}

    @classmethod
    def from_record(cls, rec: dict) -> "ProjectionExpr":
        return cls(rec["dim"], [(m["set"], m["mult"]) for m in rec["coeffs"]])


@dataclass
class CompareVerdict:
    answer: str  # "Yes", "No" or "Unknown"
    rule: str | None = None
    certificate: dict = field(default_factory=dict)

    @property
    def yes(self) -> bool:
        return self.answer == "Yes"

    @property
    def no(self) -> bool:
        return self.answer == "No"

    def recheck(self, xi: ProjectionExpr, eta: ProjectionExpr, margin: Callable[[int], int] = default_margin) -> bool:
        """Re-derive the verdict from its certificate alone."""
        if self.answer == "Unknown":
            return self.rule is None
        if self.rule == "R1":
            return all(c <= eta.coefficient(s) for s, c in xi.coeffs.items())
        if self.rule == "R3":
            return xi.rank > eta.rank
        if self.rule == "R2":
            d = len(xi.support | eta.support)
            return eta.rank - xi.rank >= margin(d) and self.certificate.get("margin") == margin(d)
        if self.rule == "R4":
            cert: HallCertificate = self.certificate["hall"]
            return xi.coefficient(()) >= 1 and cert.feasible and cert.family == eta.family() and cert.recheck()
        return False

    def to_record(self) -> dict:
        cert = {}
        for k, v in self.certificate.items():
            cert[k] = v.to_record() if hasattr(v, "to_record") else v
        return {"answer": self.answer, "rule": self.rule, "certificate": cert}


def compare(xi: ProjectionExpr, eta: ProjectionExpr, margin: Callable[[int], int] = default_margin) -> CompareVerdict:
    """Sound three-valued test of ``xi <= eta`` in the Cuntz semigroup."""
    if xi.dim != eta.dim:
        raise ValueError(f"dimension mismatch: {xi.dim} vs {eta.dim}")
    if all(c <= eta.coefficient(s) for s, c in xi.coeffs.items()):
        return CompareVerdict("Yes", "R1", {"summands": [[sorted(s), c, eta.coefficient(s)] for s, c in xi.coeffs.items()]})
    if xi.rank > eta.rank:
        return CompareVerdict("No", "R3", {"rank_xi": xi.rank, "rank_eta": eta.rank})
    if xi.coefficient(()) >= 1:
        cert = hall_check(eta.family())
        if cert.feasible:
            return CompareVerdict("No", "R4", {"hall": cert})
    d = len(xi.support | eta.support)
    gap = eta.rank - xi.rank
    if gap >= margin(d):
        return CompareVerdict("Yes", "R2", {"rank_gap": gap, "dim": d, "margin": margin(d)})
    return CompareVerdict("Unknown")


# ---------------------------------------------------------------------------
# certified bounds


@dataclass
class CertifiedInterval:
    """``lower < quantity <= upper`` for ``quantity = (kind, m)``."""

    kind: str
    m: int
    lower: int | None
    upper: int | float | None
    lower_cert: HallCertificate | None = None
    upper_cert: dict | None = None
    provenance: str = ""

    def recheck(self) -> bool:
        ok = True
        if self.lower is not None:
            ok &= self.lower_cert is not None and self.lower_cert.feasible and self.lower_cert.recheck()
        if self.upper is not None and self.upper != INF:
            cert = self.upper_cert or {}
            u, x = cert.get("u"), cert.get("witness")
            if u is None or x is None:
                return False
            n, m = self.upper, self.m
            ok &= compare(m * x, u).yes and compare(u, n * x).yes
            ok &= compare(u, n * x).rule == cert.get("rule")
        if self.lower is not None and self.upper is not None:
            ok &= self.lower < self.upper
        return bool(ok)

    def text(self) -> str:
        lo = "-inf" if self.lower is None else str(self.lower)
        hi = "?" if self.upper is None else ("inf" if self.upper == INF else str(self.upper))
        return f"({lo}, {hi}]"

    def to_record(self) -> dict:
        up = None
        if self.upper_cert is not None:
            up = {k: (v.to_record() if hasattr(v, "to_record") else v) for k, v in self.upper_cert.items()}
        return {
            "kind": self.kind,
            "m": self.m,
            "lower": self.lower,
            "upper": "inf" if self.upper == INF else self.upper,
            "lower_cert": None if self.lower_cert is None else self.lower_cert.to_record(),
            "upper_cert": up,
            "provenance": self.provenance,
        }


def div2_lower_bound(q: ProjectionExpr, N: int) -> tuple[bool, HallCertificate]:
    """Certify ``div_2(1 + q) > N`` via ``e(q)^N != 0``.

    ``e(q)^N`` is the Euler class of ``N`` copies of ``q``, nonzero exactly when
    the family ``{(I, N c_I)}`` has a transversal.
    """
    if q.coefficient(()) != 0:
        raise ValueError("q must not contain the trivial class; pass the part after the leading 1")
    if N < 1:
        raise ValueError("N must be positive")
    cert = hall_check(q.family(N))
    return cert.feasible, cert


def euler_cross_check(cert: HallCertificate) -> bool | None:
    """Nonvanishing of the Euler class of the certificate's family, when the
    polynomial is small enough to expand; None beyond the term guard."""
    try:
        return bool(euler_of_family(cert.family))
    except TermBudgetExceeded:
        return None


@dataclass
class RankVerdict:
    """Infinite divisibility number forced by rank: ``m > rank``."""

    m: int
    rank: int

    def text(self) -> str:
        return f"inf by rank: m={self.m} > rank={self.rank}"


def divm_family(construction, k: int) -> SetFamily:
    """Family ``{(J_j U I_i, 2^max(0, j-1))}`` with fresh sets ``I_i`` of size ``2^k - 1``.

    ``i`` runs over ``1..2^k k`` and ``j`` over ``0..n`` with ``J_0`` empty.
    The ``I_i`` occupy consecutive blocks after the construction's ground set.
    """
    m = 2**k
    N = m * k
    base = construction.d_n
    ground = base + N * (m - 1)
    blocks = [list(J) for J in construction.J]
    members_count = N * (len(blocks) + 1)
    if ground > GROUND_GUARD or members_count > MEMBER_GUARD:
        raise GuardViolation(f"family too large: ground {ground}, members {members_count}")
    members = []
    for i in range(N):
        I = range(base + 1 + i * (m - 1), base + 1 + (i + 1) * (m - 1))
        members.append((list(I), 1))
        for j, J in enumerate(blocks, start=1):
            members.append((J + list(I), 2 ** max(0, j - 1)))
    return SetFamily(ground, members)


def divm_lower_bound(construction, k: int):
    """Certify ``div_{2^k}(q_n) > 2^k k`` by a transversal; RankVerdict when ``2^k > rank``."""
    if k < 1:
        raise ValueError("k must be positive")
    m = 2**k
    rank = 2**construction.n
    if m > rank:
        return RankVerdict(m, rank), None
    cert = hall_check(divm_family(construction, k))
    return cert.feasible, cert


def div_upper_bound(u: ProjectionExpr, m: int, margin: Callable[[int], int] = default_margin) -> CertifiedInterval:
    """Upper bound on ``Div_m(u)`` from a single line-bundle witness.

    A class ``x = p_I`` with ``c_I >= m`` gives ``m x <= u`` by R1, and
    ``u <= n x`` by R2 as soon as ``n - rank(u) >= margin(D)``.  All such
    witnesses share the same ``D`` (the support of ``u``), so the canonical
    first one with the largest multiplicity is reported.
    """
    cands = [(s, c) for s, c in u.coeffs.items() if c >= m]
    if not cands:
        raise ValueError(f"no line-bundle summand with multiplicity >= {m}")
    s, c = max(cands, key=lambda sc: sc[1])
    x = ProjectionExpr.line(u.dim, s)
    d = len(u.support)
    n = u.rank + margin(d)
    lower_rel = compare(m * x, u, margin)
    upper_rel = compare(u, n * x, margin)
    assert lower_rel.yes and upper_rel.yes
    cert = {
        "u": u,
        "witness": x,
        "rule": upper_rel.rule,
        "m_x_le_u": lower_rel.rule,
        "rank_u": u.rank,
        "dim": d,
        "margin": margin(d),
    }
    return CertifiedInterval("Div", m, None, n, None, cert, f"n = rank(u) + margin({d}) = {u.rank} + {margin(d)}")


@dataclass
class OmegaExampleReport:
    d: int
    doubles: list[tuple[int, CompareVerdict]]
    sums: list[tuple[tuple[int, ...], CompareVerdict]]

    @property
    def passed(self) -> bool:
        return all(v.yes and v.rule == "R2" for _, v in self.doubles) and all(
            v.no and v.rule == "R4" for _, v in self.sums
        )


def verify_omega_example(d: int) -> OmegaExampleReport:
    """Finite evidence that ``1`` is (omega, 2)-decomposable but not properly infinite.

    With ``x_i = p_{i}``: each ``1 <= 2 x_i`` (R2 on one sphere coordinate) and
    ``1`` is below no finite sum of distinct ``x_i`` (R4: distinct singletons
    always have a transversal).
    """
    if d < 0:
        raise ValueError("d must be non-negative")
    one = ProjectionExpr.trivial(d)
    doubles = [(i, compare(one, ProjectionExpr.line(d, [i], 2))) for i in range(1, d + 1)]
    sums = []
    for r in range(1, d + 1):
        for F in itertools.combinations(range(1, d + 1), r):
            eta = ProjectionExpr(d, [([i], 1) for i in F])
            sums.append((F, compare(one, eta)))
    return OmegaExampleReport(d, doubles, sums)
