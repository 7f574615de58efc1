import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cudiv.bundles import (
    ProjectionExpr,
    RankVerdict,
    compare,
    div2_lower_bound,
    div_upper_bound,
    divm_family,
    divm_lower_bound,
    euler_cross_check,
    verify_omega_example,
)
from cudiv.euler import sdr_bruteforce
from cudiv.villadsen import build


def P(d, *pairs):
    return ProjectionExpr(d, list(pairs))


def test_compare_examples():
    v = compare(P(2, ({1}, 1)), P(2, ({1}, 1), ({2}, 1)))
    assert v.yes and v.rule == "R1"
    v = compare(ProjectionExpr.trivial(2), P(2, ({1}, 1), ({2}, 1)))
    assert v.no and v.rule == "R4"
    assert v.certificate["hall"].transversal == ((1,), (2,))
    q = P(3, ((), 1), ({1}, 1), ({2, 3}, 2))
    v = compare(q, P(3, ({1}, 7)))
    assert v.yes and v.rule == "R2" and v.certificate["rank_gap"] == 3


def test_compare_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension"):
        compare(ProjectionExpr.trivial(1), ProjectionExpr.trivial(2))


def test_rank_rule_and_unknown():
    v = compare(P(2, ({1}, 3)), P(2, ({2}, 2)))
    assert v.no and v.rule == "R3"
    v = compare(P(2, ({1}, 1)), P(2, ({2}, 1)))
    assert v.answer == "Unknown"


def test_div2_lower_bound_examples():
    ok, cert = div2_lower_bound(P(2, ({1, 2}, 1)), 2)
    assert ok and cert.recheck()
    assert euler_cross_check(cert) is True
    ok, cert = div2_lower_bound(P(1, ({1}, 1)), 2)
    assert not ok
    ok, cert = div2_lower_bound(build("simple1", 2, 2).q_tail, 2)
    assert ok
    with pytest.raises(ValueError):
        div2_lower_bound(ProjectionExpr.trivial(1), 1)


def test_divm_lower_bound_examples():
    spec = build("simple2", None, 1)
    fam = divm_family(spec, 1)
    assert len(fam.members) == 4
    ok, cert = divm_lower_bound(spec, 1)
    assert ok == sdr_bruteforce(fam)
    ok, cert = divm_lower_bound(build("simple2", None, 2), 2)
    assert ok is True and cert.recheck()
    verdict, cert = divm_lower_bound(build("simple2", None, 1), 2)
    assert isinstance(verdict, RankVerdict) and cert is None


def test_div_upper_bound_examples():
    for N in range(1, 6):
        iv = div_upper_bound(build("simple1", N, 2).q_n, 2)
        assert iv.upper == 3 * N + 4
        assert iv.upper_cert["witness"] == ProjectionExpr.line(3 * N, build("simple1", N, 2).J[1])
        assert iv.recheck()
    assert div_upper_bound(P(1, ({1}, 2)), 2).upper == 3
    with pytest.raises(ValueError):
        div_upper_bound(P(1, ({1}, 1)), 2)


def test_asymptotic_upper_bound():
    for N in range(1, 4):
        for n in range(2, 6):
            m = 2 ** (n - 1)
            value = div_upper_bound(build("simple1", N, n).q_n, m).upper
            assert value == (2 * N + 2) * m - N
            assert value <= (2 * N + 2) * m


def test_omega_example():
    for d in range(0, 7):
        rep = verify_omega_example(d)
        assert rep.passed
        assert len(rep.sums) == 2**d - 1
    rep = verify_omega_example(3)
    assert len(rep.sums) == 7


def test_expression_record_round_trip():
    q = build("simple1", 1, 3).q_n
    assert ProjectionExpr.from_record(q.to_record()) == q


def small_exprs(d):
    subsets = [frozenset(c) for r in range(d + 1) for c in itertools.combinations(range(1, d + 1), r)]
    exprs = []

    def go(i, left, acc):
        if i == len(subsets):
            exprs.append(ProjectionExpr(d, acc))
            return
        for c in range(left + 1):
            go(i + 1, left - c, acc + [(subsets[i], c)] if c else acc)

    go(0, 3, [])
    return exprs


def test_rule_orders_never_conflict():
    # every pair gets at most one definite polarity, whatever the rule order
    for d in (1, 2):
        exprs = small_exprs(d)
        for xi in exprs:
            for eta in exprs:
                yes = xi_le(xi, eta)
                no = xi_not_le(xi, eta)
                assert not (yes and no), (xi, eta)
                v = compare(xi, eta)
                assert v.recheck(xi, eta)
                if v.yes:
                    assert xi.rank <= eta.rank


def xi_le(xi, eta):
    d = len(xi.support | eta.support)
    r1 = all(c <= eta.coefficient(s) for s, c in xi.coeffs.items())
    return r1 or eta.rank - xi.rank >= d


def xi_not_le(xi, eta):
    from cudiv.euler import hall_check

    return xi.rank > eta.rank or (xi.coefficient(()) >= 1 and hall_check(eta.family()).feasible)


exprs3 = st.builds(
    lambda pairs: ProjectionExpr(3, pairs),
    st.lists(st.tuples(st.sets(st.integers(1, 3)), st.integers(0, 2)), max_size=3),
)


@settings(max_examples=300)
@given(exprs3, exprs3, exprs3)
def test_r1_transitivity(a, b, c):
    ab, bc = compare(a, b), compare(b, c)
    if ab.rule == "R1" and bc.rule == "R1":
        assert compare(a, c).yes


@settings(max_examples=200)
@given(exprs3, exprs3)
def test_r4_certificates_match_euler(xi, eta):
    v = compare(xi, eta)
    if v.rule == "R4":
        assert euler_cross_check(v.certificate["hall"]) is True
