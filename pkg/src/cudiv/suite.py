"""Seeded invariant suites behind ``cudiv verify-suite``.

Each suite takes a :class:`random.Random` and returns a :class:`SuiteResult`.
They run scaled-down versions of the property checks so the whole collection
finishes in a few seconds; the test-suite runs the full-size versions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from . import bundles, core, divisibility as dv, euler, villadsen
from .core import INF
from .divisibility import DivKind


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    failures: list = field(default_factory=list)

    def to_record(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": [str(f) for f in self.failures[:5]],
        }


def _result(name: str, checked: int, failures: list) -> SuiteResult:
    return SuiteResult(name, not failures, checked, failures)


def _small_zoo(rng: random.Random) -> list[core.CuModel]:
    ks = sorted(rng.sample(range(1, 11), 4))
    models: list[core.CuModel] = [core.ExtNatModel(k) for k in ks]
    for a, b in zip(ks, ks[1:]):
        models.append(core.product(core.ExtNatModel(a, cap=a), core.ExtNatModel(b, cap=b)))
    models.extend(core.hand_built_models())
    return models


def suite_axioms(rng):
    fails, n = [], 0
    models = _small_zoo(rng) + [core.RationalConeModel(1, 4)]
    for M in models:
        n += 1
        rep = core.check_axioms(M)
        if not rep.passed:
            fails.append((M.name, [f.name for f in rep.failures()]))
    return _result("axioms", n, fails)


def suite_matrix_formula(rng):
    fails, n = [], 0
    for k in range(2, 13):
        for m in range(2, k + 1):
            for kind in (DivKind.Div, DivKind.Decomp, DivKind.WeakDiv):
                n += 1
                got = dv.least(core.ExtNatModel(k), None, kind, m).value
                if got != dv.matrix_div(m, k):
                    fails.append((k, m, kind.value, got))
    return _result("matrix-formula", n, fails)


def _leq(a, b) -> bool:
    return a <= b  # INF dominates


def suite_chain(rng):
    fails, n = [], 0
    for M in _small_zoo(rng):
        for m in (2, 3):
            n += 1
            v = {k: dv.least(M, None, k, m).value for k in DivKind}
            D, P, W, C = v[DivKind.Div], v[DivKind.Decomp], v[DivKind.WeakDiv], v[DivKind.Cov]
            if not (_leq(W, D) and _leq(P, D) and _leq(W, P**m)):
                fails.append((M.name, m, "chain", v))
            if C != INF and W != INF and not (C <= W <= (2 * m - 1) * C):
                fails.append((M.name, m, "cov", v))
    return _result("divisibility-chain", n, fails)


def suite_propinf(rng):
    fails, n = [], 0
    for M in _small_zoo(rng):
        for m in (2, 3, 4):
            for nn in range(1, m):
                # the covering number is not a divisibility number: cov = 1 is common
                for kind in (DivKind.Div, DivKind.Decomp, DivKind.WeakDiv):
                    res = dv.proper_infiniteness_consequence(M, M.unit, kind, m, nn)
                    if res is not None:
                        n += 1
                        if not res[0]:
                            fails.append((M.name, kind.value, m, nn))
    return _result("proper-infiniteness", n, fails)


def suite_two_div(rng):
    fails, n = [], 0
    for M in _small_zoo(rng):
        E = M.elements()
        d2 = {w: dv.least(M, w, DivKind.Div, 2).value for w in E}
        pairs = [(u, v) for u in E for v in E]
        for u, v in rng.sample(pairs, min(200, len(pairs))):
            N = d2[M.add(u, v)]
            if N != INF and N <= 4:
                n += 1
                if dv.two_div_witness(M, u, v, N) is None:
                    fails.append((M.name, u, v, N))
    return _result("two-div", n, fails)


def suite_cfp4s(rng):
    fails, n = [], 0
    for M in _small_zoo(rng):
        n += 1
        rep = dv.cfp4s_check(M)
        if not rep.passed:
            fails.append((M.name, rep.iii_witness, rep.v_witness))
    return _result("cfp4s", n, fails)


def suite_combinators(rng):
    fails, n = [], 0
    for _ in range(6):
        a, b = rng.randint(1, 8), rng.randint(1, 8)
        m = rng.choice((2, 3))
        A, B = core.ExtNatModel(a, cap=a), core.ExtNatModel(b, cap=b)
        P = core.product(A, B)
        for kind in (DivKind.Div, DivKind.Decomp, DivKind.WeakDiv):
            n += 1
            direct = dv.least(P, None, kind, m).value
            combined = dv.combine_product([dv.least(A, None, kind, m), dv.least(B, None, kind, m)]).value
            if direct != combined:
                fails.append((a, b, m, kind.value, direct, combined))
    return _result("combinators", n, fails)


def suite_div_star(rng):
    fails = []
    est = dv.div_star_estimate(core.RationalConeModel.for_sampling(1, 8), 8)
    if est.estimate != 1 or any(v != m for m, v in est.samples):
        fails.append(("rational", est))
    k = rng.randint(1, 6)
    est = dv.div_star_estimate(core.ExtNatModel(k), k + 2)
    if est.upper != INF:
        fails.append(("extnat", k, est))
    return _result("div-star", 2, fails)


def suite_tensor(rng):
    """Comparability duality instance and the N^n tensor bound on matrix units."""
    fails, n = [], 0
    for x in list(range(21)) + [INF]:
        for y in list(range(21)) + [INF]:
            n += 1
            if _leq(3 * x, 2 * y) and not _leq(dv.ext_tensor_pair(x, 1, 6, 6), dv.ext_tensor_pair(y, 1, 6, 6)):
                fails.append(("comparability", x, y))
    for _ in range(5):
        count = rng.randint(1, 2)
        cs = [rng.randint(2, 8) for _ in range(count)]
        N = max(dv.least(core.ExtNatModel(c), None, DivKind.WeakDiv, 2).value for c in cs)
        prod = 1
        for c in cs:
            prod *= c
        for m in range(2, 2**count + 1):
            n += 1
            v = dv.least(core.ExtNatModel(prod), None, DivKind.WeakDiv, m).value
            if not _leq(v, N**count):
                fails.append(("tensor", cs, m, v))
    return _result("tensor-bounds", n, fails)


def suite_euler_hall(rng):
    fails, n = [], 0
    for _ in range(500):
        d = rng.randint(1, 6)
        fam = euler.SetFamily(
            d,
            [
                (rng.sample(range(1, d + 1), rng.randint(0, d)), rng.randint(0, 3))
                for _ in range(rng.randint(0, 4))
            ],
        )
        n += 1
        cert = euler.hall_check(fam)
        if fam.total <= d and bool(euler.euler_of_family(fam)) != cert.feasible:
            fails.append(("euler", fam.to_record()))
        if fam.total <= euler.SDR_LIMIT and euler.sdr_bruteforce(fam) != cert.feasible:
            fails.append(("sdr", fam.to_record()))
        if not cert.recheck():
            fails.append(("certificate", fam.to_record()))
    return _result("euler-hall", n, fails)


def suite_constructions(rng):
    fails, n = [], 0
    for N in range(1, 6):
        for stage in range(2, 5):
            n += 1
            iv = villadsen.verify_thm_simple(N, stage)
            if (iv.lower, iv.upper) != (N, 3 * N + 4) or not iv.recheck():
                fails.append(("simple", N, stage, iv.text()))
    for k, stage in [(1, 1), (1, 2), (2, 2), (2, 3)]:
        n += 1
        ok, cert = villadsen.verify_lm_simple2(k, stage)
        if ok is not True or not cert.recheck():
            fails.append(("simple2", k, stage))
    for N, m, stage in itertools.product(range(1, 4), range(1, 3), range(1, 3)):
        n += 1
        ok, cert = villadsen.verify_thm_inf_tensor(N, m, stage)
        if not ok or not cert.recheck():
            fails.append(("inf-tensor", N, m, stage))
    for d in range(7):
        n += 1
        if not bundles.verify_omega_example(d).passed:
            fails.append(("omega", d))
    return _result("constructions", n, fails)


def suite_pair_order(rng):
    fails, n = [], 0
    grid = [(k, j) for k in range(1, 11) for j in range(11)]
    for a in grid:
        if villadsen.pair_less(a, a):
            fails.append(("reflexive", a))
        for b in grid:
            n += 1
            if a != b and villadsen.pair_less(a, b) == villadsen.pair_less(b, a):
                fails.append(("total", a, b))
    for _ in range(2000):
        a, b, c = rng.sample(grid, 3)
        if villadsen.pair_less(a, b) and villadsen.pair_less(b, c) and not villadsen.pair_less(a, c):
            fails.append(("transitive", a, b, c))
    return _result("pair-order", n, fails)


SUITES: dict[str, Callable[[random.Random], SuiteResult]] = {
    "axioms": suite_axioms,
    "matrix-formula": suite_matrix_formula,
    "divisibility-chain": suite_chain,
    "proper-infiniteness": suite_propinf,
    "two-div": suite_two_div,
    "cfp4s": suite_cfp4s,
    "combinators": suite_combinators,
    "div-star": suite_div_star,
    "tensor-bounds": suite_tensor,
    "euler-hall": suite_euler_hall,
    "constructions": suite_constructions,
    "pair-order": suite_pair_order,
}


def run_suites(seed: int, name_filter: str | None = None) -> list[SuiteResult]:
    out = []
    for name, fn in SUITES.items():
        if name_filter and name_filter not in name:
            continue
        out.append(fn(random.Random(f"{seed}:{name}")))
    return out
