"""Finite ordered abelian monoids standing in for Cuntz semigroups.

Every model exposes the same small surface (``elements``, ``add``, ``leq``,
``multiple``, ``lower_set``, ``covering_multiple``) so the solvers in
:mod:`cudiv.divisibility` never care whether a model is a lookup table or an
arithmetic carrier such as the extended naturals.

Compact containment convention
------------------------------
In a finite carrier every increasing sequence is eventually constant, so every
element is compact and ``x << y`` is the same relation as ``x <= y``.  Under
this convention the quantifier "for every u' << u" in the divisibility
definitions collapses to the compact form ``m x <= u <= n x``, axioms (A1),
(A2) and (A4) hold automatically and (A3) is order compatibility.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, Iterable, Sequence

import numpy as np

INF = math.inf

Element = Hashable


class ModelError(ValueError):
    """A model table violates a monoid or order law.

    ``witness`` holds the offending tuple of elements.
    """

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message if not witness else f"{message}: witness {witness}")
        self.reason = message
        self.witness = tuple(witness)


class CuModel:
    """Common interface of all semigroup models.

    Subclasses provide ``zero``, ``unit``, ``top``, ``name`` and implement
    :meth:`elements`, :meth:`add`, :meth:`leq`.  The remaining methods have
    generic implementations that arithmetic models override for speed.
    """

    name: str = "model"
    zero: Element
    unit: Element
    top: Element | None = None

    def elements(self) -> Sequence[Element]:
        raise NotImplementedError

    def add(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def leq(self, a: Element, b: Element) -> bool:
        raise NotImplementedError

    def label(self, x: Element) -> str:
        return str(x)

    def encode(self, x: Element) -> Any:
        """JSON-safe representation of an element."""
        return x

    def decode(self, obj: Any) -> Element:
        return obj

    def multiple(self, n: int, x: Element) -> Element:
        s = self.zero
        for _ in range(n):
            s = self.add(s, x)
        return s

    def total(self, xs: Iterable[Element]) -> Element:
        s = self.zero
        for x in xs:
            s = self.add(s, x)
        return s

    def lower_set(self, u: Element) -> list[Element]:
        return [x for x in self.elements() if self.leq(x, u)]

    def scaled_lower_set(self, u: Element, m: int) -> list[Element]:
        """All ``x`` with ``m*x <= u``, in canonical order."""
        return [x for x in self.lower_set(u) if self.leq(self.multiple(m, x), u)]

    def covering_multiple(self, x: Element, u: Element) -> int | None:
        """Least ``n >= 1`` with ``u <= n*x``, or None if no multiple reaches u."""
        prev, s = None, x
        n = 1
        # n*x is increasing, so it stabilises within |carrier| steps
        for _ in range(len(self.elements()) + 1):
            if self.leq(u, s):
                return n
            if s == prev:
                return None
            prev, s = s, self.add(s, x)
            n += 1
        return None

    def infinity_tag(self, u: Element, m: int) -> str:
        return "exhausted finite carrier"

    def index_of(self, x: Element) -> int:
        return self._index()[x]

    def _index(self) -> dict:
        idx = getattr(self, "_index_cache", None)
        if idx is None:
            idx = {x: i for i, x in enumerate(self.elements())}
            self._index_cache = idx
        return idx

    def to_table(self) -> "FiniteCuModel":
        """Tabulate the model; element ``i`` of the table is ``elements()[i]``.

        The zero element is moved to index 0 when it is not there already.
        """
        elems = list(self.elements())
        if elems[0] != self.zero:
            elems.remove(self.zero)
            elems.insert(0, self.zero)
        pos = {x: i for i, x in enumerate(elems)}
        n = len(elems)
        add = [[pos[self.add(a, b)] for b in elems] for a in elems]
        order = np.array([[self.leq(a, b) for b in elems] for a in elems], dtype=bool)
        top = pos[self.top] if self.top is not None else None
        return FiniteCuModel(
            add,
            order,
            unit=pos[self.unit],
            top=top,
            labels=[self.label(x) for x in elems],
            name=self.name,
        )


class FiniteCuModel(CuModel):
    """Explicit finite model given by an addition table and an order relation.

    Elements are the indices ``0..size-1`` and index 0 is the neutral element.
    The constructor does not validate; use :func:`load_model` or
    :meth:`validate` for that.
    """

    def __init__(
        self,
        add: Sequence[Sequence[int]] | np.ndarray,
        leq: Iterable[Sequence[int]] | np.ndarray,
        unit: int,
        top: int | None = None,
        labels: Sequence[str] | None = None,
        name: str = "model",
    ):
        table = np.asarray(add, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ModelError("add table must be square")
        size = table.shape[0]
        if isinstance(leq, np.ndarray) and leq.dtype == bool:
            order = leq.copy()
        else:
            order = np.zeros((size, size), dtype=bool)
            for pair in leq:
                a, b = (int(v) for v in pair)
                if not (0 <= a < size and 0 <= b < size):
                    raise ModelError("leq pair out of range", (a, b))
                order[a, b] = True
        if order.shape != (size, size):
            raise ModelError("leq matrix has the wrong shape")
        np.fill_diagonal(order, True)
        table.setflags(write=False)
        order.setflags(write=False)
        self.table = table
        self.order = order
        self.size = size
        self.zero = 0
        self.unit = int(unit)
        self.top = None if top is None else int(top)
        self.labels = list(labels) if labels is not None else [str(i) for i in range(size)]
        self.name = name
        self._add = table.tolist()
        self._leq = order.tolist()
        self._elements = tuple(range(size))
        if not 0 <= self.unit < size:
            raise ModelError("unit out of range", (self.unit,))
        if self.top is not None and not 0 <= self.top < size:
            raise ModelError("top out of range", (self.top,))
        if len(self.labels) != size:
            raise ModelError("labels length does not match size")
        if (table < 0).any() or (table >= size).any():
            raise ModelError("add table entry out of range")

    def __repr__(self) -> str:
        return f"FiniteCuModel(name={self.name!r}, size={self.size}, unit={self.label(self.unit)})"

    def elements(self) -> Sequence[int]:
        return self._elements

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def leq(self, a: int, b: int) -> bool:
        return self._leq[a][b]

    def label(self, x: int) -> str:
        return self.labels[x]

    def lower_set(self, u: int) -> list[int]:
        return np.flatnonzero(self.order[:, u]).tolist()

    def decode(self, obj: Any) -> int:
        return int(obj)

    def to_table(self) -> "FiniteCuModel":
        return self

    def with_unit(self, unit: int) -> "FiniteCuModel":
        return FiniteCuModel(self.table, self.order, unit, self.top, self.labels, self.name)

    def validate(self) -> "FiniteCuModel":
        """Raise :class:`ModelError` on the first violated law."""
        report = check_axioms(self)
        for key in _STRUCTURAL_LAWS:
            res = report.results[key]
            if not res.passed:
                raise ModelError(res.description, res.witness)
        return self

    def to_record(self) -> dict:
        pairs = sorted(map(tuple, np.argwhere(self.order).tolist()))
        return {
            "name": self.name,
            "size": self.size,
            "add": self._add,
            "leq": [list(p) for p in pairs],
            "unit": self.unit,
            "top": self.top,
            "labels": list(self.labels),
        }

    def dumps(self) -> str:
        """Canonical text encoding (sorted keys, sorted leq pairs)."""
        return json.dumps(self.to_record(), sort_keys=True, separators=(",", ":"))


_SCHEMA_FIELDS = {"name": str, "size": int, "add": list, "leq": list, "unit": int}


def load_model(document: dict | str) -> FiniteCuModel:
    """Build and validate a table model from a model-file document.

    ``document`` is the parsed JSON object or its text.  Pair order in ``leq``
    is irrelevant; reflexive pairs may be omitted.
    """
    if isinstance(document, (str, bytes)):
        document = json.loads(document)
    if not isinstance(document, dict):
        raise ModelError("model document must be an object")
    for key, typ in _SCHEMA_FIELDS.items():
        if key not in document:
            raise ModelError(f"schema violation: missing field {key!r}")
        if not isinstance(document[key], typ) or isinstance(document[key], bool) and typ is int:
            raise ModelError(f"schema violation: field {key!r} must be {typ.__name__}")
    size = document["size"]
    add = document["add"]
    if size < 1 or len(add) != size or any(not isinstance(r, list) or len(r) != size for r in add):
        raise ModelError("schema violation: add must be a size x size matrix")
    if any(not isinstance(v, int) for r in add for v in r):
        raise ModelError("schema violation: add entries must be integers")
    for pair in document["leq"]:
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(v, int) for v in pair)):
            raise ModelError("schema violation: leq entries must be [a, b] pairs", (pair,))
    top = document.get("top")
    if top is not None and not isinstance(top, int):
        raise ModelError("schema violation: top must be an index or null")
    labels = document.get("labels")
    if labels is not None and (len(labels) != size or not all(isinstance(s, str) for s in labels)):
        raise ModelError("schema violation: labels must be size strings")
    model = FiniteCuModel(add, document["leq"], document["unit"], top, labels, document["name"])
    return model.validate()


def load_model_file(path) -> FiniteCuModel:
    with open(path, encoding="utf-8") as fh:
        return load_model(json.load(fh))


# ---------------------------------------------------------------------------
# arithmetic models


class _SaturatedLine(CuModel):
    """Totally ordered carrier ``{0, s, 2s, ..., cap} U {inf}``.

    Sums above ``cap`` saturate to infinity.  Any comparison against an element
    ``u <= cap`` is unaffected by saturation, so divisibility of such ``u`` is
    computed exactly.
    """

    step: Any
    cap: Any

    def _grid(self, bound) -> list:
        count = math.floor(bound / self.step)
        return [self._value(i) for i in range(count + 1)]

    def _value(self, i: int):
        return i * self.step

    def elements(self) -> list:
        cached = getattr(self, "_elements_cache", None)
        if cached is None:
            cached = self._elements_cache = self._grid(self.cap) + [INF]
        return cached

    def scaled_lower_set(self, u, m: int) -> list:
        if u == INF:
            return self.elements()
        return self._grid(u / m)

    def add(self, a, b):
        s = a + b
        return INF if s > self.cap else s

    def leq(self, a, b) -> bool:
        return a <= b

    def multiple(self, n: int, x):
        if n == 0:
            return self.zero
        if x == INF:
            return INF
        s = n * x
        return INF if s > self.cap else s

    def lower_set(self, u) -> list:
        if u == INF:
            return self.elements()
        return self._grid(u)

    def covering_multiple(self, x, u) -> int | None:
        if u == 0:
            return 1
        if x == 0:
            return None
        if x == INF:
            return 1
        if u == INF:
            return int(self.cap / x) + 1
        return max(1, math.ceil(Fraction(u) / Fraction(x)))

    def label(self, x) -> str:
        return "inf" if x == INF else str(x)

    def encode(self, x):
        return "inf" if x == INF else self._encode_finite(x)

    def decode(self, obj):
        if obj in ("inf", "∞"):
            return INF
        return self._decode_finite(obj)


class ExtNatModel(_SaturatedLine):
    """Extended naturals ``{0, 1, 2, ..., inf}`` with unit ``scale``.

    This is Cu(M_k(C)) for ``k = scale``.  Integers above ``cap`` (default
    ``2*scale``) saturate to ``inf``.
    """

    def __init__(self, scale: int, cap: int | None = None):
        if scale < 0:
            raise ValueError("scale must be non-negative")
        self.scale = int(scale)
        self.cap = int(cap) if cap is not None else max(2 * self.scale, 1)
        if self.cap < self.scale:
            raise ValueError("cap must be at least the scale")
        self.step = 1
        self.zero = 0
        self.unit = self.scale
        self.top = INF
        self.name = f"ExtNat({self.scale})"

    def __repr__(self) -> str:
        return f"ExtNatModel(scale={self.scale}, cap={self.cap})"

    def _grid(self, bound) -> list:
        return list(range(math.floor(bound) + 1))

    def _encode_finite(self, x):
        return int(x)

    def _decode_finite(self, obj):
        return int(obj)

    def infinity_tag(self, u, m: int) -> str:
        if u != INF and m > u:
            return f"rank obstruction: m={m} > rank={u}"
        return super().infinity_tag(u, m)


class RationalConeModel(_SaturatedLine):
    """Non-negative rationals on the grid ``(1/denominator)Z`` with infinity.

    Every positive element is full.  ``denominator`` must make ``unit`` a grid
    point; :meth:`for_sampling` picks one that contains ``unit/m`` for all
    ``m <= m_max``.
    """

    def __init__(self, unit=1, denominator: int | None = None, cap=None):
        unit = Fraction(unit)
        if unit < 0:
            raise ValueError("unit must be non-negative")
        self.denominator = int(denominator) if denominator is not None else unit.denominator
        if (unit * self.denominator).denominator != 1:
            raise ValueError("unit is not on the grid")
        self.step = Fraction(1, self.denominator)
        self.cap = Fraction(cap) if cap is not None else max(2 * unit, Fraction(1))
        if self.cap < unit:
            raise ValueError("cap must be at least the unit")
        self.zero = Fraction(0)
        self.unit = unit
        self.top = INF
        self.name = f"RationalCone({unit}, 1/{self.denominator})"

    @classmethod
    def for_sampling(cls, unit=1, m_max: int = 12, cap=None) -> "RationalConeModel":
        unit = Fraction(unit)
        den = unit.denominator * math.lcm(*range(1, m_max + 1))
        return cls(unit, den, cap)

    def __repr__(self) -> str:
        return f"RationalConeModel(unit={self.unit}, denominator={self.denominator}, cap={self.cap})"

    def _value(self, i: int):
        return Fraction(i, self.denominator)

    def add(self, a, b):
        s = a + b
        if s == INF or s > self.cap:
            return INF
        return Fraction(s)

    def _encode_finite(self, x):
        return str(Fraction(x))

    def _decode_finite(self, obj):
        return Fraction(obj)


class _ProductModel(CuModel):
    def __init__(self, left: CuModel, right: CuModel):
        self.left, self.right = left, right
        self.zero = (left.zero, right.zero)
        self.unit = (left.unit, right.unit)
        self.top = None if left.top is None or right.top is None else (left.top, right.top)
        self.name = f"{left.name}x{right.name}"

    def elements(self):
        return [(a, b) for a in self.left.elements() for b in self.right.elements()]

    def add(self, a, b):
        return (self.left.add(a[0], b[0]), self.right.add(a[1], b[1]))

    def leq(self, a, b):
        return self.left.leq(a[0], b[0]) and self.right.leq(a[1], b[1])

    def label(self, x):
        return f"({self.left.label(x[0])},{self.right.label(x[1])})"


def product(left: CuModel, right: CuModel) -> FiniteCuModel:
    """Coordinatewise product table, the finite picture of Cu(A + B)."""
    return _ProductModel(left, right).to_table()


# ---------------------------------------------------------------------------
# hand-built tables


def three_point() -> FiniteCuModel:
    """``{0 < a < b}`` with ``a + a = b`` and ``b`` absorbing; unit ``a``."""
    add = [[0, 1, 2], [1, 2, 2], [2, 2, 2]]
    leq = [(0, 1), (0, 2), (1, 2)]
    return FiniteCuModel(add, leq, unit=1, top=2, labels=["0", "a", "b"], name="three_point")


def two_point_infinite() -> FiniteCuModel:
    """``{0, inf}``: the Cuntz semigroup of a Kirchberg algebra like O_2."""
    add = [[0, 1], [1, 1]]
    return FiniteCuModel(add, [(0, 1)], unit=1, top=1, labels=["0", "inf"], name="two_point_infinite")


def idempotent_pair() -> FiniteCuModel:
    """Two incomparable idempotents ``p, q`` with ``p + q = t`` (top)."""
    add = [
        [0, 1, 2, 3],
        [1, 1, 3, 3],
        [2, 3, 2, 3],
        [3, 3, 3, 3],
    ]
    leq = [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]
    return FiniteCuModel(add, leq, unit=3, top=3, labels=["0", "p", "q", "t"], name="idempotent_pair")


def chain_with_idempotent() -> FiniteCuModel:
    """``0 < a < 2a < i`` where ``i = 3a`` is idempotent; unit ``2a``."""
    add = [
        [0, 1, 2, 3],
        [1, 2, 3, 3],
        [2, 3, 3, 3],
        [3, 3, 3, 3],
    ]
    leq = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    return FiniteCuModel(add, leq, unit=2, top=3, labels=["0", "a", "2a", "i"], name="chain_with_idempotent")


def hand_built_models() -> list[FiniteCuModel]:
    return [three_point(), two_point_infinite(), idempotent_pair(), chain_with_idempotent()]


def zoo(max_scale: int = 10, products: bool = True, product_cap: bool = True) -> list[CuModel]:
    """Built-in models: ExtNat(k) for ``k <= max_scale``, pairwise products, tables.

    Product factors are truncated at ``cap = scale`` to keep the tables small;
    this is exact for divisibility of the unit.
    """
    models: list[CuModel] = [ExtNatModel(k) for k in range(1, max_scale + 1)]
    if products:
        for k in range(1, max_scale + 1):
            for j in range(k, max_scale + 1):
                left = ExtNatModel(k, cap=k if product_cap else None)
                right = ExtNatModel(j, cap=j if product_cap else None)
                models.append(product(left, right))
    models.extend(hand_built_models())
    return models


# ---------------------------------------------------------------------------
# axioms


@dataclass
class AxiomResult:
    name: str
    passed: bool
    description: str
    witness: tuple = ()
    note: str = ""


_STRUCTURAL_LAWS = (
    "commutative",
    "associative",
    "identity",
    "reflexive",
    "antisymmetric",
    "transitive",
    "zero_least",
    "order_compatible",
    "top_absorbing",
)


@dataclass
class AxiomReport:
    model: str
    results: dict[str, AxiomResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results.values() if not r.passed]

    def __getitem__(self, key: str) -> AxiomResult:
        return self.results[key]


def _first(mask: np.ndarray) -> tuple | None:
    hits = np.argwhere(mask)
    return tuple(int(v) for v in hits[0]) if len(hits) else None


def check_axioms(model: CuModel) -> AxiomReport:
    """Exhaustively check the monoid, order and Cu-type laws of a finite model.

    (P1) and (P2) are checked with ``u' = u``, which is the strongest instance:
    witnesses for ``u`` also serve every ``u' <= u``.  Under the compact
    convention (P2) says the order is algebraic.  Witnesses are returned in
    the model's own elements.
    """
    tab = model.to_table()
    T, L = tab.table, tab.order
    n = tab.size
    ar = np.arange(n)
    elems = list(model.elements())
    if elems[0] != model.zero:
        elems.remove(model.zero)
        elems.insert(0, model.zero)

    def lift(w):
        return tuple(elems[i] for i in w) if w is not None else ()

    report = AxiomReport(model.name)

    def put(key, desc, w, note=""):
        report.results[key] = AxiomResult(key, w is None, desc, lift(w), note)

    put("commutative", "not commutative", _first(T != T.T))
    put("identity", "0 is not neutral", _first((T[0] != ar)[None, :]) and (_first((T[0] != ar)[None, :])[1],))
    assoc = T[T, :] != T[:, T]  # [a,b,c]: (a+b)+c vs a+(b+c)
    put("associative", "not associative", _first(assoc))
    put("reflexive", "order not reflexive", _first(~np.diag(L)[None, :]) and (_first(~np.diag(L)[None, :])[1],))
    put("antisymmetric", "order not antisymmetric", _first(L & L.T & ~np.eye(n, dtype=bool)))
    LL = (L.astype(np.int64) @ L.astype(np.int64)) > 0
    w = _first(LL & ~L)
    if w is not None:
        mid = int(np.flatnonzero(L[w[0]] & L[:, w[1]])[0])
        w = (w[0], mid, w[1])
    put("transitive", "order not transitive", w)
    put("zero_least", "0 is not least", _first(~L[0][None, :]) and (0, _first(~L[0][None, :])[1]))
    # a <= b implies a + c <= b + c, indexed [a, b, c]
    compat = L[:, :, None] & ~L[T[:, None, :], T[None, :, :]]
    w = _first(compat)
    put(
        "order_compatible",
        "order not compatible with addition",
        None if w is None else (w[0], w[1], w[2], w[2]),
        "witness (a, b, c, d): a <= b and c <= d but a + c is not <= b + d",
    )
    if tab.top is None:
        report.results["top_absorbing"] = AxiomResult("top_absorbing", True, "no top element", (), "no top designated")
    else:
        t = tab.top
        bad = (~L[:, t]) | (T[:, t] != t)
        w = _first(bad[None, :])
        put("top_absorbing", "top is not largest and absorbing", None if w is None else (w[1],))
    note = "automatic in finite models: increasing sequences stabilize"
    report.results["A1"] = AxiomResult("A1", True, "suprema of increasing sequences", (), note)
    report.results["A2"] = AxiomResult("A2", True, "approximation by << sequences", (), "every element is compact: u_i = u")
    report.results["A3"] = AxiomResult(
        "A3",
        report.results["order_compatible"].passed,
        "<< compatible with addition",
        report.results["order_compatible"].witness,
        "<< coincides with <= in finite models",
    )
    report.results["A4"] = AxiomResult("A4", True, "sup of sums", (), note)

    # (P1): u <= v + w  ==>  exists v' <= u,v and w' <= u,w with u <= v' + w'
    p1 = None
    for u in range(n):
        below_u = L[:, u]
        covers = L[u][T]  # [v, w]: u <= v + w
        A = (L & below_u[:, None]).astype(np.int64)  # [v', v]: v' <= u and v' <= v
        exists = (A.T @ covers.astype(np.int64) @ A) > 0  # [v, w]
        bad = covers & ~exists
        hit = _first(bad)
        if hit is not None:
            p1 = (u, hit[0], hit[1])
            break
    put("P1", "(P1) fails", p1, "witness (u, v, w): u <= v + w admits no splitting")
    # (P2): u <= v  ==>  exists w with u + w = v
    reachable = np.zeros((n, n), dtype=bool)
    reachable[ar[:, None], T] = True
    put("P2", "(P2) fails", _first(L & ~reachable), "witness (u, v): no w with u + w = v")
    return report


def recheck_violation(model: CuModel, key: str, witness: tuple) -> bool:
    """True when ``witness`` really violates law ``key`` in ``model``."""
    add, leq = model.add, model.leq
    E = model.elements()
    w = witness
    if key == "commutative":
        return add(w[0], w[1]) != add(w[1], w[0])
    if key == "associative":
        return add(add(w[0], w[1]), w[2]) != add(w[0], add(w[1], w[2]))
    if key == "identity":
        return add(model.zero, w[0]) != w[0]
    if key == "reflexive":
        return not leq(w[0], w[0])
    if key == "antisymmetric":
        return leq(w[0], w[1]) and leq(w[1], w[0]) and w[0] != w[1]
    if key == "transitive":
        return leq(w[0], w[1]) and leq(w[1], w[2]) and not leq(w[0], w[2])
    if key == "zero_least":
        return not leq(model.zero, w[1])
    if key in ("order_compatible", "A3"):
        a, b, c, d = w
        return leq(a, b) and leq(c, d) and not leq(add(a, c), add(b, d))
    if key == "top_absorbing":
        return not leq(w[0], model.top) or add(w[0], model.top) != model.top
    if key == "P1":
        u, v, x = w
        if not leq(u, add(v, x)):
            return False
        vs = [a for a in E if leq(a, u) and leq(a, v)]
        ws = [b for b in E if leq(b, u) and leq(b, x)]
        return not any(leq(u, add(a, b)) for a in vs for b in ws)
    if key == "P2":
        u, v = w
        return leq(u, v) and not any(add(u, x) == v for x in E)
    raise KeyError(key)


# ---------------------------------------------------------------------------
# element-level operations


def infinite_multiple(model: CuModel, x: Element) -> Element:
    """Stable value of the increasing sequence ``k*x``.

    Raises :class:`ModelError` if the sequence does not settle within
    ``|carrier|`` steps.
    """
    if isinstance(model, _SaturatedLine):
        return model.zero if x == 0 else INF
    s = x
    for _ in range(len(model.elements()) + 1):
        nxt = model.add(s, x)
        if nxt == s:
            return s
        s = nxt
    raise ModelError("no stable infinite multiple", (x,))


@dataclass(frozen=True)
class ElementFlags:
    properly_infinite: bool
    full: bool
    compact: bool = True


def largest_element(model: CuModel) -> Element | None:
    if model.top is not None:
        return model.top
    elems = model.elements()
    for t in elems:
        if all(model.leq(x, t) for x in elems):
            return t
    return None


def element_flags(model: CuModel, x: Element) -> ElementFlags:
    """``properly_infinite``: ``2x <= x``.  ``full``: ``inf*x`` is the largest element."""
    top = largest_element(model)
    pi = model.leq(model.add(x, x), x)
    full = top is not None and infinite_multiple(model, x) == top
    return ElementFlags(properly_infinite=pi, full=full)
