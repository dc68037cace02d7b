import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grext import surjections as sj
from grext.surjections import (
    SignedSurjSum,
    SizeMismatch,
    Surjection,
    act_right,
    adjacent_word,
    bar_sign,
    canonical_decomposition,
    enumerate_surjections,
    external,
    identity_surjection,
    left_action,
    left_action_general,
    operad_compose,
    operad_generator,
    perm_compose,
    right_action,
    single,
    trace_endomorphism,
    transposition,
    yoneda,
)

from oracles import count_surjections, perm_sign_by_inversions


def S(f):
    return SignedSurjSum.single(f)


def perms(n):
    return list(itertools.permutations(range(1, n + 1)))


def surjections(max_m=6):
    def build(mn):
        m, n = mn
        return st.permutations(list(range(1, n + 1))).flatmap(
            lambda head: st.lists(st.integers(1, n), min_size=m - n, max_size=m - n).flatmap(
                lambda tail: st.permutations(list(head) + tail)
            )
        ).map(lambda vals: Surjection(tuple(vals), n))

    return st.integers(1, max_m).flatmap(lambda m: st.integers(1, m).map(lambda n: (m, n))).flatmap(build)


# --- basics -----------------------------------------------------------------


@pytest.mark.parametrize("m,n", [(m, n) for m in range(6) for n in range(m + 2)])
def test_enumeration_counts_and_order(m, n):
    fs = enumerate_surjections(m, n)
    assert len(fs) == count_surjections(m, n)
    assert [f.values for f in fs] == sorted(f.values for f in fs)


def test_surjection_validation():
    with pytest.raises(ValueError):
        Surjection((1, 1), 2)
    assert Surjection.of([2, 1, 2]).n == 2
    assert Surjection.of([2, 1, 2]).degree == 1


def test_perm_sign_matches_inversions():
    for n in range(6):
        for p in perms(n):
            assert sj.perm_sign(p) == perm_sign_by_inversions(p)


def test_bar_sign_example():
    # 2->3, 5->1, 7->2 reduces to the 3-cycle (3 1 2)
    assert bar_sign({2: 3, 5: 1, 7: 2}) == 1
    assert bar_sign({1: 2, 4: 1}) == -1
    with pytest.raises(ValueError):
        bar_sign({1: 1, 2: 1})


# --- shuffle decomposition --------------------------------------------------


def test_decomposition_example():
    d = canonical_decomposition(Surjection((2, 1, 2), 2))
    assert d.s.values == (1, 2, 2)
    assert d.alpha == (2, 1, 3)


def test_decomposition_of_order_preserving_is_trivial():
    f = sj.order_preserving((2, 1, 3))
    assert canonical_decomposition(f).alpha == (1, 2, 3, 4, 5, 6)


@pytest.mark.parametrize("m", range(0, 6))
def test_decomposition_exists_and_is_unique(m):
    for n in range(m + 1):
        for f in enumerate_surjections(m, n):
            found = []
            for alpha in perms(m):
                s = f.precompose_perm(sj.perm_inverse(alpha))
                if s.is_order_preserving() and sj.is_inverse_shuffle(alpha, f.fiber_sizes()):
                    found.append((s, alpha))
            d = canonical_decomposition(f)
            assert found == [(d.s, d.alpha)]


# --- actions ----------------------------------------------------------------


def test_right_action_identity_and_group_law():
    for m in range(5):
        for n in range(m + 1):
            for f in enumerate_surjections(m, n):
                assert right_action(f, tuple(range(1, m + 1))) == S(f)
                for a in perms(m):
                    for b in perms(m):
                        assert act_right(right_action(f, a), b) == right_action(f, perm_compose(a, b))


def test_right_action_matches_blockwise_reference():
    for m in range(6):
        for n in range(m + 1):
            for f in enumerate_surjections(m, n):
                for a in perms(m):
                    assert right_action(f, a) == sj.right_action_reference(f, a)


def test_left_action_bijection_has_no_sign():
    f = Surjection((3, 1, 2), 3)
    for k, l in itertools.combinations(range(1, 4), 2):
        ((_, c),) = left_action(k, l, f).terms.items()
        assert c == 1


def test_left_action_two_fibers_of_size_two():
    ((g, c),) = left_action(1, 2, Surjection((1, 1, 2, 2), 2)).terms.items()
    assert g.values == (2, 2, 1, 1) and c == -1


@pytest.mark.parametrize("n", range(1, 4))
def test_left_action_is_a_group_action_independent_of_words(n):
    for m in range(n, 6):
        for f in enumerate_surjections(m, n):
            for a in perms(n):
                base = left_action_general(a, f)
                assert base == left_action_general(a, f, adjacent_word(a))
                assert base == left_action_general(a, f, adjacent_word(a, from_right=True))
                ((g, c),) = base.terms.items()
                for b in perms(n):
                    assert left_action_general(b, g).scale(c) == left_action_general(perm_compose(b, a), f)


def test_adjacent_transposition_matches_closed_formula():
    for m in range(1, 6):
        for n in range(2, m + 1):
            for f in enumerate_surjections(m, n):
                for j in range(1, n):
                    assert left_action_general(transposition(n, j, j + 1), f) == left_action(j, j + 1, f)


def test_outer_transposition_formula_is_not_an_action():
    # fibers of sizes 2, 2, 1: (1 3) = (1 2)(2 3)(1 2) forces a sign the closed formula misses
    f = Surjection((1, 1, 2, 2, 3), 3)
    step = left_action(1, 2, f)
    for k, l in [(2, 3), (1, 2)]:
        ((g, c),) = step.terms.items()
        step = left_action(k, l, g).scale(c)
    assert step == left_action_general(transposition(3, 1, 3), f)
    assert step == left_action(1, 3, f).scale(-1)


@pytest.mark.parametrize("n", range(1, 4))
def test_left_and_right_actions_commute(n):
    for m in range(n, 5):
        for f in enumerate_surjections(m, n):
            for a in perms(n):
                for b in perms(m):
                    lr = act_right(left_action_general(a, f), b)
                    rl = sj.act_left(a, right_action(f, b))
                    assert lr == rl


# --- products ---------------------------------------------------------------


def test_yoneda_agrees_with_closed_form():
    for n in range(6):
        for m in range(n + 1):
            for l in range(m + 1):
                for f in enumerate_surjections(n, m):
                    for g in enumerate_surjections(m, l):
                        assert yoneda(S(g), S(f)) == sj.yoneda_closed_form(g, f)


def test_yoneda_units():
    for m in range(5):
        ident = S(identity_surjection(m))
        for n in range(m, 6):
            for f in enumerate_surjections(n, m):
                assert yoneda(ident, S(f)) == S(f)
                assert yoneda(S(f), S(identity_surjection(n))) == S(f)


def test_yoneda_with_bijections_is_the_action():
    for m in range(5):
        for n in range(m + 1):
            for f in enumerate_surjections(m, n):
                for a in perms(m):
                    assert yoneda(S(f), S(Surjection(a, m))) == right_action(f, a)
                for a in perms(n):
                    assert yoneda(S(Surjection(a, n)), S(f)) == left_action_general(a, f)


def test_yoneda_associative_sizes_up_to_3():
    N = 3
    for n, m, l, k in itertools.product(range(N + 1), repeat=4):
        if not n >= m >= l >= k:
            continue
        for f in enumerate_surjections(n, m):
            for g in enumerate_surjections(m, l):
                for h in enumerate_surjections(l, k):
                    assert yoneda(S(h), yoneda(S(g), S(f))) == yoneda(yoneda(S(h), S(g)), S(f))


@st.composite
def composable_triples(draw):
    # nothing surjects onto 0 except 0
    n = draw(st.integers(0, 6))
    m = draw(st.integers(min(n, 1), n))
    l = draw(st.integers(min(m, 1), m))
    k = draw(st.integers(min(l, 1), l))
    pick = lambda a, b: draw(st.sampled_from(enumerate_surjections(a, b)))
    return pick(l, k), pick(m, l), pick(n, m)


@given(composable_triples())
@settings(max_examples=300, deadline=None)
def test_yoneda_associative_random(triple):
    h, g, f = triple
    assert yoneda(S(h), yoneda(S(g), S(f))) == yoneda(yoneda(S(h), S(g)), S(f))


def test_yoneda_size_mismatch():
    with pytest.raises(SizeMismatch):
        yoneda(single([1, 1]), single([1, 2, 3]))


def test_yoneda_is_bilinear():
    g = single([1, 1]) + single([1, 1]).scale(2)
    f = single([1, 2, 2]) + single([2, 1, 1]).scale(-1)
    expect = SignedSurjSum.zero(3, 1)
    for gg, a in g:
        for ff, b in f:
            expect = expect + yoneda(S(gg), S(ff)).scale(a * b)
    assert yoneda(g, f) == expect


def test_external_examples_and_degree():
    assert external(single([1, 1]), single([1])) == single([1, 1, 2])
    assert external(single([1, 2]), single([2, 1])) == single([1, 2, 4, 3])
    x, y = single([2, 1, 2]), single([1, 1, 1])
    assert external(x, y).degree == x.degree + y.degree


@given(surjections(3), surjections(3), surjections(3))
@settings(max_examples=100, deadline=None)
def test_external_associative(a, b, c):
    assert external(external(S(a), S(b)), S(c)) == external(S(a), external(S(b), S(c)))


def _interchange_instances(M):
    triples = [(a, b, c) for a, b, c in itertools.product(range(M + 1), repeat=3) if a >= b >= c]
    for (a, b, c), (a2, b2, c2) in itertools.product(triples, repeat=2):
        for y in enumerate_surjections(a, b):
            for x in enumerate_surjections(b, c):
                for y2 in enumerate_surjections(a2, b2):
                    for x2 in enumerate_surjections(b2, c2):
                        yield x, y, x2, y2


def test_interchange_with_koszul_sign():
    for x, y, x2, y2 in _interchange_instances(2):
        lhs = external(yoneda(S(x), S(y)), yoneda(S(x2), S(y2)))
        rhs = yoneda(external(S(x), S(x2)), external(S(y), S(y2)))
        assert lhs == rhs.scale(-1 if x2.degree * y.degree % 2 else 1)


def test_sign_free_interchange_fails_exactly_on_odd_pairs():
    failures = odd = 0
    for x, y, x2, y2 in _interchange_instances(2):
        lhs = external(yoneda(S(x), S(y)), yoneda(S(x2), S(y2)))
        rhs = yoneda(external(S(x), S(x2)), external(S(y), S(y2)))
        failures += lhs != rhs
        odd += x2.degree * y.degree % 2
    assert failures == odd > 0


# --- operad and PROP --------------------------------------------------------


def test_operad_unit_and_degree():
    Q = operad_generator
    assert operad_compose(Q(1), Q(1)) == Q(1)
    for k in range(1, 5):
        assert operad_compose(Q(k), *[Q(1)] * k) == Q(k)
        assert operad_compose(Q(1), Q(k)) == Q(k)
    r = operad_compose(Q(2), Q(3), Q(2))
    assert r.degree == (2 - 1) + (3 - 1) + (2 - 1) == r.m - 1


def test_operad_arity_mismatch():
    with pytest.raises(SizeMismatch):
        operad_compose(operad_generator(2), operad_generator(1))


def test_operad_associativity_matches_two_step_composite():
    Q = operad_generator
    for ys in itertools.product(range(1, 4), repeat=2):
        for zs in itertools.product(range(1, 3), repeat=sum(ys)):
            lhs = operad_compose(operad_compose(Q(2), *map(Q, ys)), *map(Q, zs))
            first, second = zs[: ys[0]], zs[ys[0] :]
            inner = [operad_compose(Q(ys[0]), *map(Q, first)), operad_compose(Q(ys[1]), *map(Q, second))]
            sign = -1 if (ys[1] - 1) * sum(z - 1 for z in first) % 2 else 1
            assert lhs == operad_compose(Q(2), *inner).scale(sign)


@pytest.mark.parametrize("m,n", [(3, 2), (4, 4), (2, 3), (5, 2), (7, 3), (0, 0)])
def test_free_prop_rank_identity(m, n):
    assert sj.free_prop_rank_identity(m, n)


def test_free_prop_rank_example():
    assert len(enumerate_surjections(3, 2)) == 6 == sj.multinomial(3, (1, 2)) + sj.multinomial(3, (2, 1))


def test_trace_endomorphism_small_cases():
    t1 = trace_endomorphism(3, 1)
    assert t1 == [[1]]
    basis = enumerate_surjections(3, 2)
    mat = trace_endomorphism(3, 2)
    j = basis.index(Surjection((1, 1, 2), 2))
    column = {basis[i]: mat[i][j] for i in range(len(basis)) if mat[i][j]}
    ((_, c),) = left_action(1, 2, Surjection((1, 1, 2), 2)).terms.items()
    assert column == {Surjection((1, 1, 2), 2): 1, Surjection((2, 2, 1), 2): c}
    with pytest.raises(ValueError):
        trace_endomorphism(2, 3)


@pytest.mark.parametrize("m", range(1, 6))
def test_trace_endomorphism_nonzero(m):
    for n in range(1, m + 1):
        assert any(any(row) for row in trace_endomorphism(m, n))


def test_symmetric_sequences_are_actions():
    sj.operad_sequence(4).check()
    seq = sj.sign_sequence(4)
    seq.check()
    assert seq[3].character((2, 1, 3)) == -1
    assert seq[3].degree == 2


# --- signed sums ------------------------------------------------------------


def test_sum_arithmetic_and_cancellation():
    a = single([1, 2, 1])
    assert (a - a).is_zero()
    assert (a + a).coefficient(Surjection((1, 2, 1), 2)) == 2
    with pytest.raises(SizeMismatch):
        a + single([1, 1])


def test_json_round_trip_and_sorted_terms():
    x = single([2, 1, 2]).scale(3) + single([1, 1, 2]).scale(-1)
    obj = x.to_json_obj()
    assert obj == {
        "m": 3,
        "n": 2,
        "degree": 1,
        "terms": [{"f": [1, 1, 2], "c": -1}, {"f": [2, 1, 2], "c": 3}],
    }
    assert SignedSurjSum.from_json_obj(json.loads(json.dumps(obj))) == x
    with pytest.raises(ValueError):
        SignedSurjSum.from_json_obj({"m": 2, "n": 1, "degree": 0, "terms": []})
