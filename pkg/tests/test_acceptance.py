"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed at the end of the
pytest run (see conftest.py) and when this file is run as a script::

    python3 tests/test_acceptance.py
"""

import functools
import itertools
import random
import sys
import time
from fractions import Fraction

from cudiv.bundles import RankVerdict, verify_omega_example
from cudiv.core import INF, ExtNatModel, RationalConeModel, product, zoo
from cudiv.divisibility import (
    DivisibilityReport,
    DivKind,
    check,
    combine_chain,
    combine_product,
    div_star_estimate,
    least,
    matrix_div,
    two_div_witness,
)
from cudiv.euler import SetFamily, all_families, euler_of_family, hall_check, sdr_bruteforce
from cudiv.villadsen import build, verify_lm_simple2, verify_thm_inf_tensor, verify_thm_simple

from oracles import naive_formula, naive_least_extnat, table_least

KINDS3 = (DivKind.Div, DivKind.Decomp, DivKind.WeakDiv)
RESULTS: dict[int, str] = {}


def criterion(number, title, seconds=None):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            start = time.perf_counter()
            try:
                detail = fn() or ""
                elapsed = time.perf_counter() - start
                if seconds is not None:
                    assert elapsed < seconds, f"took {elapsed:.1f}s, limit {seconds}s"
            except BaseException as exc:
                RESULTS[number] = f"FAIL  {number:2d}. {title}: {exc}"
                raise
            RESULTS[number] = f"PASS  {number:2d}. {title} ({elapsed:.1f}s) {detail}".rstrip()

        return run

    return wrap


def _zoo():
    if not hasattr(_zoo, "models"):
        _zoo.models = zoo()
    return _zoo.models


@criterion(1, "matrix formula equals brute-force least n", seconds=10)
def test_criterion_01_matrix_formula():
    count = 0
    for k in range(2, 13):
        M = ExtNatModel(k)
        for m in range(2, k + 1):
            expected = naive_formula(m, k)
            assert matrix_div(m, k) == expected
            for kind in KINDS3:
                assert naive_least_extnat(k, kind.value, m) == expected, (k, m, kind)
                assert least(M, None, kind, m).value == expected, (k, m, kind)
                count += 1
    return f"{count} cases"


@criterion(2, "staged construction interval (N, 3N+4]", seconds=30)
def test_criterion_02_simple_interval():
    for N in range(1, 6):
        for n in range(2, 5):
            iv = verify_thm_simple(N, n)
            assert (iv.lower, iv.upper) == (N, 3 * N + 4), (N, n, iv.text())
            assert iv.recheck()
            assert iv.lower_cert.recheck()
    return "15 cases"


@criterion(3, "Euler class nonzero iff Hall condition", seconds=60)
def test_criterion_03_euler_hall():
    exhaustive = 0
    for d in range(1, 6):
        for fam in all_families(d, 6):
            exhaustive += 1
            assert bool(euler_of_family(fam)) == hall_check(fam).feasible, fam
    rng = random.Random(20240601)
    compared = 0
    for _ in range(10_000):
        d = rng.randint(1, 12)
        members = [
            (rng.sample(range(1, d + 1), rng.randint(0, d)), rng.randint(0, 3))
            for _ in range(rng.randint(0, 5))
        ]
        fam = SetFamily(d, members)
        cert = hall_check(fam)
        assert cert.recheck()
        if fam.total <= 8:
            compared += 1
            assert sdr_bruteforce(fam) == cert.feasible, fam
    return f"{exhaustive} exhaustive, {compared} random vs brute force"


def _values(M, m):
    return {k: least(M, None, k, m).value for k in DivKind}


@criterion(4, "div <= Div, partial-div <= Div, div <= partial-div^m on the zoo")
def test_criterion_04_chain():
    bad = []
    for M in _zoo():
        for m in (2, 3):
            v = _values(M, m)
            D, P, W = v[DivKind.Div], v[DivKind.Decomp], v[DivKind.WeakDiv]
            if not (W <= D and P <= D and W <= P**m):
                bad.append((M.name, m, v))
    assert not bad, bad[:3]
    return f"{len(_zoo())} models"


@criterion(5, "cov <= div_m <= (2m-1) cov on the zoo")
def test_criterion_05_cov_sandwich():
    bad, checked = [], 0
    for M in _zoo():
        for m in (2, 3):
            c = least(M, None, DivKind.Cov, m).value
            w = least(M, None, DivKind.WeakDiv, m).value
            if c == INF or w == INF:
                continue
            checked += 1
            if not c <= w <= (2 * m - 1) * c:
                bad.append((M.name, m, c, w))
    assert not bad, bad[:3]
    return f"{checked} finite cases"


@criterion(6, "(m, n)-divisibility with n < m forces n*u properly infinite")
def test_criterion_06_proper_infiniteness():
    bad, hits = [], 0
    for M in _zoo():
        for u in M.elements():
            for m in (2, 3, 4):
                for n in range(1, m):
                    for kind in KINDS3:
                        if check(M, u, kind, m, n)[0]:
                            hits += 1
                            nu = M.multiple(n, u)
                            if not M.leq(M.add(nu, nu), nu):
                                bad.append((M.name, u, kind.value, m, n))
    assert not bad, bad[:3]
    return f"{hits} hypotheses met"


@criterion(7, "div_{2^k} lower bounds on the second construction", seconds=30)
def test_criterion_07_simple2():
    for k, n in [(1, 1), (1, 2), (2, 2), (2, 3)]:
        ok, cert = verify_lm_simple2(k, n)
        assert ok is True and cert.recheck(), (k, n)
        # one representative tuple per member, never one per copy
        assert len(cert.transversal) == len(cert.family.members)
    # demands equal to the block sizes 2^{2j-1} j, decided by flow on the blocks
    spec = build("simple2", None, 4)
    fam = SetFamily(spec.d_n, [(J, len(J)) for J in spec.J])
    assert [c for _, c in fam.members] == [2 ** (2 * j - 1) * j for j in range(1, 5)]
    tight = hall_check(fam)
    assert tight.feasible and tight.recheck()
    over = hall_check(SetFamily(spec.d_n, [(J, len(J) + (J is spec.J[-1])) for J in spec.J]))
    assert not over.feasible and over.recheck()
    for k, n in [(2, 1), (3, 1), (3, 2)]:
        verdict, cert = verify_lm_simple2(k, n)
        assert isinstance(verdict, RankVerdict) and cert is None
        assert "inf by rank" in verdict.text()
    return "4 certified, 3 by rank"


@criterion(8, "tensor-power lower bounds", seconds=60)
def test_criterion_08_inf_tensor():
    for N, m, n in itertools.product(range(1, 4), range(1, 3), range(1, 3)):
        ok, cert = verify_thm_inf_tensor(N, m, n)
        assert ok is True and cert.recheck(), (N, m, n)
    return "12 cases"


@criterion(9, "product and chain combinators")
def test_criterion_09_combinators():
    rng = random.Random(99)
    for _ in range(20):
        a, b, m = rng.randint(1, 8), rng.randint(1, 8), rng.choice((2, 3))
        A, B = ExtNatModel(a, cap=a), ExtNatModel(b, cap=b)
        P = product(A, B)
        add = [[P.add(x, y) for y in P.elements()] for x in P.elements()]
        leq = [[P.leq(x, y) for y in P.elements()] for x in P.elements()]
        for kind in KINDS3:
            brute = table_least(add, leq, P.unit, kind.value, m)
            combined = combine_product([least(A, None, kind, m), least(B, None, kind, m)]).value
            assert combined == brute, (a, b, m, kind)

    def rep(v):
        return DivisibilityReport(DivKind.Div, 2, v, None, 64)

    for v in (1, 3, 7, INF):
        assert combine_chain([rep(v)] * 5).value == v
    for seq in ([9, 7, 7, 4, 2], [INF, 5, 3, 3], [INF, INF, 6]):
        assert combine_chain([rep(v) for v in seq]).value == min(seq)
    return "20 seeded pairs"


@criterion(10, "2-divisibility witnesses exist for Div_2(u+v) <= 4")
def test_criterion_10_two_div():
    checked = 0
    for M in _zoo():
        E = list(M.elements())
        d2 = {w: least(M, w, DivKind.Div, 2).value for w in E}
        for u in E:
            for v in E:
                N = d2[M.add(u, v)]
                if N == INF or N > 4:
                    continue
                checked += 1
                xs = two_div_witness(M, u, v, N)
                assert xs is not None and len(xs) == N, (M.name, u, v, N)
                assert all(M.leq(M.add(x, x), v) for x in xs)
                rhs = M.add(M.multiple(2 * N + 1, u), v)
                for x in xs:
                    rhs = M.add(rhs, M.add(x, x))
                assert M.leq(M.add(v, v), rhs)
    return f"{checked} pairs"


@criterion(11, "finite truncations of the infinite decomposition example")
def test_criterion_11_omega():
    for d in range(0, 7):
        rep = verify_omega_example(d)
        assert rep.passed, d
    return "d = 0..6"


@criterion(12, "asymptotic divisibility sampling")
def test_criterion_12_div_star():
    est = div_star_estimate(RationalConeModel.for_sampling(1, 12), 12)
    assert [v for _, v in est.samples] == list(range(2, 13))
    assert est.estimate == Fraction(1)
    for k in range(1, 9):
        est = div_star_estimate(ExtNatModel(k), k + 2)
        assert est.estimate == INF
    return "rational cone -> 1, ExtNat -> inf"


def summary_lines() -> list[str]:
    return [RESULTS[k] for k in sorted(RESULTS)]


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except BaseException:
                failed += 1
    print("\n".join(summary_lines()))
    sys.exit(1 if failed else 0)
