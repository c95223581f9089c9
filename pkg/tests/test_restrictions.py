import random

import pytest

from ovale.restrictions import (
    AdmissibleRecord,
    DEven,
    DTooLarge,
    Rejected,
    admissible_shapes,
    check_harnack,
    check_nests,
    classify,
    enumerate_admissible,
    mikhalkin_filter,
    orientation_feasible,
)
from ovale.schemes import RealScheme, euler_classes, nest_stats


def S(text):
    return RealScheme.parse(text)


def family(a, b, g):
    forest = [()] * a + [tuple([()] * b), tuple([()] * g)]
    return RealScheme.from_forest(tuple(forest))


def test_harnack():
    assert check_harnack(S("1 u <4> u <10>"), 5)  # 17 = g+1
    too_many = RealScheme.from_forest(tuple([()] * 18))
    assert not check_harnack(too_many, 5)
    assert check_harnack(S("0"), 5)


def test_nest_bound():
    six = ()
    for _ in range(5):
        six = (six,)
    assert not check_nests(RealScheme.from_forest((six,)), 5)
    assert not check_nests(S("<<1>> u <<1>> u <<1>>"), 5)
    assert check_nests(S("1 u <4> u <10>"), 5)


def test_mikhalkin_rank_m():
    v = mikhalkin_filter(S("1 u <4> u <10>"), 5)  # chi = 13 = 13 mod 8
    assert v.ok
    v = mikhalkin_filter(S("3 u <6> u <6>"), 5)  # chi = 9, 9 != 13 mod 8
    assert not v.ok and v.reason == "congruence-maximal"
    with pytest.raises(DEven):
        mikhalkin_filter(S("1"), 4)


def test_rank_m_schemes_are_type_I():
    for r in enumerate_admissible(5):
        if r.i == 0:
            assert r.types == frozenset({"I"})


def test_rank_m_minus_1_schemes_are_type_II():
    for r in enumerate_admissible(5):
        if r.i == 1:
            assert r.types == frozenset({"II"})


def test_orientation_examples():
    assert orientation_feasible(S("<<<<1>>>>"), 5)
    assert not orientation_feasible(RealScheme.from_forest(((), (), (), (), ())), 5)
    # empty scheme: l - 25 is odd
    assert not orientation_feasible(S("0"), 5)


def test_classify_examples():
    r = classify(S("<7> u <7>"), 5)
    assert isinstance(r, AdmissibleRecord)
    assert (r.i, r.types) == (1, frozenset({"II"}))

    r = classify(S("<4> u <9>"), 5)
    assert isinstance(r, AdmissibleRecord)
    assert r.i == 2 and "I" in r.types

    six = ()
    for _ in range(5):
        six = (six,)
    r = classify(RealScheme.from_forest((six,)), 5)
    assert isinstance(r, Rejected) and r.reason == "nests"


def test_classify_rerooting_invariance():
    rng = random.Random(5)
    from ovale.schemes import _face_tree, _rooted_forest

    for _ in range(40):
        s = RealScheme.from_forest(())
        for _ in range(rng.randint(0, 8)):
            s = s.with_extra_oval(rng.randint(0, s.l))
        adj, _ = _face_tree(s.forest)
        base = classify(s, 5)
        for root in adj:
            variant = RealScheme.from_forest(_rooted_forest(adj, root))
            again = classify(variant, 5)
            assert type(again) is type(base)
            if isinstance(base, AdmissibleRecord):
                assert (again.scheme, again.types) == (base.scheme, base.types)


def test_l_equals_d_type_I_is_the_nest():
    # machine check of the minimal-component corollary at d = 5
    for s in admissible_shapes(5):
        if s.l != 5:
            continue
        r = classify(s, 5)
        if isinstance(r, AdmissibleRecord) and "I" in r.types:
            assert nest_stats(s)[0] == 5, s


def test_chi_choices_never_disagree():
    # mikhalkin_filter asserts agreement internally; exercise it broadly
    for s in admissible_shapes(5):
        mikhalkin_filter(s, 5)


def test_no_scheme_with_large_three_nest_total():
    for r in enumerate_admissible(5):
        assert nest_stats(r.scheme)[1] <= 5


def test_enumerate_d1():
    recs = enumerate_admissible(1)
    assert [r.scheme.text for r in recs] == ["0", "1"]
    assert recs[0].types == frozenset({"II"})
    assert recs[1].types == frozenset({"I"})


def test_enumerate_guards():
    with pytest.raises(DEven):
        enumerate_admissible(4)
    with pytest.raises(DTooLarge):
        enumerate_admissible(9)


def test_even_d_partial():
    r = classify(S("1"), 4)
    assert isinstance(r, AdmissibleRecord) and r.partial
    assert r.types == frozenset({"I", "II"})


def test_enumerate_deterministic():
    a = enumerate_admissible(5)
    b = enumerate_admissible(5)
    assert [r.to_json() for r in a] == [r.to_json() for r in b]


def test_rank_m_filter_alpha_mod_4():
    # exhaustive over alpha+beta+gamma = 15: accepted iff alpha = 1 mod 4
    for a in range(16):
        for b in range(16 - a):
            g = 15 - a - b
            s = family(a, b, g)
            assert mikhalkin_filter(s, 5).ok == (a % 4 == 1), (a, b, g)
