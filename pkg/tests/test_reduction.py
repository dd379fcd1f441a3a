import random

import pytest

from ncresolve.algebra import FreeAlgebra, LEFT_LENGTH_LEX
from ncresolve.reduction import (ReducerSet, TruncatedContext, divides,
                                 normal_form, reduce_once, replay_trace,
                                 truncated_normal_form)
from ncresolve.steenrod import steenrod_context


@pytest.fixture
def A():
    return FreeAlgebra([("x1", 1), ("x2", 1), ("x3", 1)], p=2,
                       order=LEFT_LENGTH_LEX)


def test_divides_finds_leftmost_factorization():
    assert divides((0, 1), (0, 1, 2, 0)) == ((), (2, 0))
    # leftmost occurrence when there are several
    assert divides((0,), (1, 0, 0)) == ((1,), (0,))


def test_divides_identity_and_absent():
    assert divides((2,), (2,)) == ((), ())
    assert divides((2,), (0, 1)) is None
    assert divides((0, 1, 2), (0, 1)) is None


def test_reduce_once_paper_chain(A):
    # f = x1x2x3x1 + x1x2 reduced by g = x1x2 + x2, twice (signs vanish mod 2)
    f = A.parse("x1*x2*x3*x1 + x1*x2")
    g = A.parse("x1*x2 + x2")
    h1, did = reduce_once(f, g)
    assert did and h1 == A.parse("x2*x3*x1 + x1*x2")
    h2, did = reduce_once(h1, g)
    assert did and h2 == A.parse("x2*x3*x1 + x2")
    _, did = reduce_once(h2, g)
    assert not did


def test_reduce_once_self_gives_zero(A):
    g = A.parse("x1*x2 + x2")
    h, did = reduce_once(g, g)
    assert did and h.is_zero()


def test_reduce_once_noop_flag(A):
    f = A.gen(1)
    g = A.parse("x1*x2 + x2")
    h, did = reduce_once(f, g)
    assert not did and h == f


def test_reduce_once_rejects_zero_reducer(A):
    with pytest.raises(ValueError):
        reduce_once(A.gen(0), A.zero())


def test_reducers_are_normalized_monic():
    B = FreeAlgebra([("x", 1)], p=5)
    rs = ReducerSet([B.parse("3 x*x + x")])
    assert rs.reducers[0].lc == 1


def test_normal_form_adem_basics(ctx10):
    A = ctx10.algebra
    assert normal_form(A.parse("Sq1*Sq1"), ctx10.omega).is_zero()
    assert normal_form(A.parse("Sq2*Sq2"), ctx10.omega) == A.parse("Sq3*Sq1")


def test_admissible_words_are_fixed_points(ctx10):
    A = ctx10.algebra
    for text in ("Sq3", "Sq2*Sq1", "Sq4*Sq2*Sq1", "Sq6*Sq3*Sq1"):
        f = A.parse(text)
        assert normal_form(f, ctx10.omega) == f


def test_truncated_normal_form(ctx10):
    A = ctx10.algebra
    # homogeneous above the budget vanishes
    f = A.parse("Sq4*Sq2")
    assert truncated_normal_form(f, ctx10, budget=5).is_zero()
    assert truncated_normal_form(A.parse("Sq3"), ctx10, budget=3) == A.parse("Sq3")
    assert truncated_normal_form(A.parse("Sq1*Sq2"), ctx10, budget=3) == A.parse("Sq3")
    # budget defaults to k
    assert ctx10.truncated_normal_form(A.parse("Sq1*Sq2")) == A.parse("Sq3")


def test_truncated_context_validation(ctx10):
    with pytest.raises(Exception):
        TruncatedContext(ctx10.omega, -1)


def _random_poly(rng, A, max_degree, max_terms=4):
    degrees = A.table.degrees
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        word = []
        budget = rng.randint(0, max_degree)
        while True:
            options = [i for i in range(len(degrees)) if degrees[i] <= budget]
            if not options or rng.random() < 0.25:
                break
            i = rng.choice(options)
            word.append(i)
            budget -= degrees[i]
        terms[tuple(word)] = terms.get(tuple(word), 0) + 1
    return A.poly(terms)


def test_confluence_under_shuffled_reducers(ctx10):
    # normal forms modulo a Groebner basis do not depend on reducer order
    A = ctx10.algebra
    rng = random.Random(11)
    reducers = list(ctx10.omega.reducers)
    variants = []
    for _ in range(4):
        shuffled = reducers[:]
        rng.shuffle(shuffled)
        variants.append(ReducerSet(shuffled))
    for _ in range(60):
        f = _random_poly(rng, A, 10)
        expected = normal_form(f, ctx10.omega)
        for rs in variants:
            assert normal_form(f, rs) == expected


def test_trace_replay_soundness(ctx10):
    # f - normal_form(f) lies in the ideal: replaying the trace recovers f
    A = ctx10.algebra
    rng = random.Random(13)
    for _ in range(40):
        f = _random_poly(rng, A, 9)
        trace = []
        r = normal_form(f, ctx10.omega, trace=trace)
        assert replay_trace(f, ctx10.omega, trace, r)


def test_traced_and_cached_paths_agree_on_groebner_sets(ctx10):
    A = ctx10.algebra
    rng = random.Random(17)
    for _ in range(40):
        f = _random_poly(rng, A, 10)
        assert normal_form(f, ctx10.omega, trace=[]) == normal_form(f, ctx10.omega)


def test_reduction_never_exceeds_budget(ctx10):
    A = ctx10.algebra
    rng = random.Random(19)
    for _ in range(30):
        f = _random_poly(rng, A, 10)
        budget = rng.randint(0, 10)
        r = ctx10.truncated_normal_form(f, budget=budget)
        assert all(A.word_degree(w) <= budget for w, _ in r.terms)


def test_empty_reducer_set(A):
    rs = ReducerSet.empty(A)
    f = A.parse("x1*x2 + x2")
    assert normal_form(f, rs) == f
