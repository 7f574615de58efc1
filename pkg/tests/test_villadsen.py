import itertools

import pytest

from cudiv.bundles import GuardViolation, RankVerdict
from cudiv.euler import SetFamily, hall_check, sdr_bruteforce
from cudiv.villadsen import (
    build,
    inf_tensor_family,
    inf_tensor_size,
    pair_less,
    s_enum,
    t_enum,
    verify_lm_simple2,
    verify_thm_inf_tensor,
    verify_thm_simple,
)


def naive_s(m, k, j):
    """S(m;k,j) by filtering a box of tuples against the pair order."""
    out = []
    for t in itertools.product(range(k + j + 2), repeat=m):
        if t[k - 1] != j:
            continue
        if all(pair_less((l, t[l - 1]), (k, j)) for l in range(1, m + 1) if l != k):
            out.append(t)
    return out


def test_build_examples():
    spec = build("simple1", 2, 2)
    assert [len(b) for b in spec.J] == [2, 4] and spec.d_n == 6 and spec.q_n.rank == 4
    spec = build("simple2", None, 2)
    assert [len(b) for b in spec.J] == [2, 16] and spec.d_n == 18
    spec = build("simple1", 1, 1)
    assert [len(b) for b in spec.J] == [1] and spec.q_n.rank == 2
    assert str(spec.q_n) == "1 + p{1}"


@pytest.mark.parametrize("variant,N", [("simple1", 3), ("simple2", None), ("inf_tensor", 2)])
def test_blocks_disjoint_consecutive_and_rank(variant, N):
    for n in range(1, 4):
        spec = build(variant, N, n)
        flat = [e for b in spec.J for e in b]
        assert flat == list(range(1, spec.d_n + 1))
        assert spec.q_n.rank == 2**n


def test_block_size_formulas():
    for N in range(1, 4):
        spec = build("simple1", N, 4)
        assert [len(b) for b in spec.J] == [N * 2 ** (j - 1) for j in range(1, 5)]
    spec = build("simple2", None, 3)
    assert [len(b) for b in spec.J] == [2, 16, 96]


def test_build_guards():
    with pytest.raises(GuardViolation):
        build("simple2", None, 9)
    with pytest.raises(ValueError):
        build("simple1", None, 2)
    with pytest.raises(ValueError):
        build("nope", 1, 1)


def test_pair_order_is_strict_total():
    grid = [(k, j) for k in range(1, 11) for j in range(11)]
    for a in grid:
        assert not pair_less(a, a)
        for b in grid:
            if a != b:
                assert pair_less(a, b) != pair_less(b, a)
    for a, b, c in itertools.product(grid[::7], repeat=3):
        if pair_less(a, b) and pair_less(b, c):
            assert pair_less(a, c)


def test_s_enum_examples():
    assert s_enum(1, 1, 1) == [(1,)]
    assert s_enum(2, 1, 1) == []
    assert s_enum(2, 1, 2) == [(2, 0)]


def test_s_enum_matches_definition():
    for k in range(1, 5):
        for j in range(0, 5):
            for m in range(k, 6):
                assert sorted(s_enum(m, k, j)) == naive_s(m, k, j), (m, k, j)
                if m > k + j:
                    assert s_enum(m, k, j) == []


def test_s_enum_empty_beyond_k_plus_j():
    for k in range(1, 5):
        for j in range(0, 5):
            for m in range(k + j + 1, 10):
                assert s_enum(m, k, j) == []


def test_inf_tensor_size_examples():
    assert inf_tensor_size(1, 1, 1) == 1
    assert inf_tensor_size(1, 2, 1) == 2
    assert inf_tensor_size(1, 1, 3) == 3


def test_thm_simple_examples():
    assert verify_thm_simple(2, 3).text() == "(2, 10]"
    assert verify_thm_simple(1, 2).text() == "(1, 7]"
    assert verify_thm_simple(5, 2).text() == "(5, 19]"
    iv = verify_thm_simple(2, 3)
    assert iv.recheck()
    assert "infimum over stages" in iv.provenance


def test_simple1_family_is_tight():
    # demands equal block sizes, so every element is used
    for N in range(1, 4):
        for n in range(1, 5):
            spec = build("simple1", N, n)
            fam = spec.q_tail.family(N)
            cert = hall_check(fam)
            assert cert.feasible
            used = {e for reps in cert.transversal for e in reps}
            assert len(used) == spec.d_n


def test_lm_simple2_examples():
    ok, cert = verify_lm_simple2(1, 1)
    assert ok is True
    assert sdr_bruteforce(cert.family)
    verdict, _ = verify_lm_simple2(2, 1)
    assert isinstance(verdict, RankVerdict) and "by rank" in verdict.text()
    ok, cert = verify_lm_simple2(2, 2)
    assert ok is True and cert.recheck()


def test_inf_tensor_examples():
    ok, cert = verify_thm_inf_tensor(1, 1, 1)
    assert ok and len(cert.family.members) == 1
    ok, cert = verify_thm_inf_tensor(1, 2, 1)
    assert ok and len(cert.family.members) == 3
    assert sdr_bruteforce(SetFamily(cert.family.ground, [(s, min(c, 1)) for s, c in cert.family.members]))
    ok, cert = verify_thm_inf_tensor(2, 2, 2)
    assert ok and cert.recheck()


def test_t_enum():
    assert len(t_enum(2, 2)) == 8
    assert (0, 0) not in t_enum(2, 2)


def test_construction_record():
    rec = build("simple1", 2, 2).to_record()
    assert rec["J"] == [[1, 2], [3, 4, 5, 6]]
    assert rec["d_n"] == 6
    assert inf_tensor_family(1, 2, 1).ground == 5
