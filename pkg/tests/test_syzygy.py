import random

import pytest

from ncresolve.algebra import FreeAlgebra
from ncresolve.free_module import (FreeModule, module_complete,
                                   normalize_vector)
from ncresolve.groebner import complete
from ncresolve.reduction import ReducerSet, TruncatedContext
from ncresolve.syzygy import (SyzygyProblem, apply_row, check_minimal,
                              groebner_syzygies, lift_syzygies, minimalize,
                              monomial_syzygies)


def sq_rows(ctx, *texts):
    M = FreeModule(ctx.algebra, (0,))
    return tuple(M.embed(0, ctx.algebra.parse(t)) for t in texts)


# -- monomial syzygies -----------------------------------------------------


def test_monomial_syzygies_equal_monomials(ctx10):
    M = FreeModule(ctx10.algebra, (0,))
    gens = monomial_syzygies(M, [(0, (0,)), (0, (0,))], ctx10)
    # the same monomial twice: e'_1 - e'_2 (over F2: e'_1 + e'_2)
    assert any(str(r) == "[1, 1]" for r in gens.rows)


def test_monomial_syzygies_relation_prefix():
    A = FreeAlgebra([("x", 1), ("y", 2)], p=2)
    gb = complete([A.parse("x*x")], 6)
    ctx = TruncatedContext(gb.basis, 6)
    M = FreeModule(A, (0,))
    gens = monomial_syzygies(M, [(0, (0,))], ctx)  # X_1 = x*e, lm(omega) = x^2
    assert any(str(r) == "[x]" for r in gens.rows)


def test_monomial_syzygies_incomparable_no_relations():
    A = FreeAlgebra([("x", 1), ("y", 2)], p=2)
    ctx = TruncatedContext(ReducerSet.empty(A), 6)
    M = FreeModule(A, (0, 0))
    gens = monomial_syzygies(M, [(0, (0,)), (1, (1,))], ctx)
    assert len(gens.rows) == 0


# -- Groebner syzygies -------------------------------------------------------


def test_groebner_syzygies_single_row_only_relations(ctx10):
    rows = sq_rows(ctx10, "Sq1")
    G = module_complete(list(rows), ctx10)
    gens = groebner_syzygies(G)
    assert len(gens.rows) > 0
    assert all(p["kind"] == "relation" for p in gens.provenance)
    # the Sq1*Sq1 relation shows up as the row Sq1*e'
    assert any(str(r) == "[Sq1]" for r in gens.rows)


def test_groebner_syzygies_sq3_rewrite(ctx10):
    rows = sq_rows(ctx10, "Sq1", "Sq2", "Sq3")
    G = module_complete(list(rows), ctx10)
    gens = groebner_syzygies(G)
    # Sq3*e rewritten through Sq1*(Sq2*e): row Sq1*e'_2 + e'_3 (components of
    # the completed basis start with the three input rows)
    wanted = None
    for r in gens.rows:
        comps = [str(c) for c in r.components()]
        if comps[:3] == ["0", "Sq1", "1"] and all(c == "0" for c in comps[3:]):
            wanted = r
    assert wanted is not None


def test_groebner_syzygies_annihilate(ctx10):
    rows = sq_rows(ctx10, "Sq1", "Sq2", "Sq4")
    G = module_complete(list(rows), ctx10)
    for row in groebner_syzygies(G).rows:
        assert apply_row(row, G.elements, ctx10).is_zero()


def test_groebner_syzygies_disjoint_components_no_relations():
    A = FreeAlgebra([("x", 1), ("y", 2)], p=2)
    ctx = TruncatedContext(ReducerSet.empty(A), 6)
    M = FreeModule(A, (0, 0))
    rows = [M.embed(0, A.parse("x")), M.embed(1, A.parse("y"))]
    G = module_complete(rows, ctx)
    assert len(groebner_syzygies(G).rows) == 0


# -- lifted syzygies ----------------------------------------------------------


def test_lift_on_groebner_input_has_zero_residuals(ctx10):
    rows = sq_rows(ctx10, "Sq1")
    gens = lift_syzygies(SyzygyProblem(rows, ctx10))
    assert [str(r) for r in gens.rows] == ["[Sq1]"]
    assert all(p["kind"] != "residual" for p in gens.provenance)


def test_lift_duplicate_rows(ctx10):
    rows = sq_rows(ctx10, "Sq2", "Sq2")
    gens = lift_syzygies(SyzygyProblem(rows, ctx10))
    assert any(str(r) == "[1, 1]" for r in gens.rows)


def test_lift_rows_annihilate_input(ctx10):
    rows = sq_rows(ctx10, "Sq1", "Sq2")
    gens = lift_syzygies(SyzygyProblem(rows, ctx10))
    for row in gens.rows:
        assert apply_row(row, list(rows), ctx10).is_zero()


def test_lift_sq1_sq2_witnesses_degrees_5_and_6(ctx10):
    # the first relations among Sq1, Sq2 beyond Sq1*Sq1 appear in degrees 5, 6
    rows = sq_rows(ctx10, "Sq1", "Sq2")
    degrees = lift_syzygies(SyzygyProblem(rows, ctx10)).degrees()
    assert 5 in degrees and 6 in degrees


def test_lift_source_degrees_follow_rows(ctx10):
    rows = sq_rows(ctx10, "Sq2", "Sq4")
    gens = lift_syzygies(SyzygyProblem(rows, ctx10))
    assert gens.module.degrees == (2, 4)
    assert all(r.degree() <= ctx10.k for r in gens.rows)


def test_lift_empty_problem(ctx10):
    gens = lift_syzygies(SyzygyProblem((), ctx10))
    assert len(gens.rows) == 0


# -- oracle-backed completeness (homogeneous span equals kernel) ---------------


def syzygy_span_matches_kernel(rows, ctx):
    from ncresolve.oracle import gamma_basis, matrix_of, rank_kernel, reduced_words
    gens = lift_syzygies(SyzygyProblem(tuple(rows), ctx))
    source_sig = [r.degree() for r in rows]
    target = rows[0].parent
    p = ctx.algebra.field.p
    for t in range(0, ctx.k + 1):
        src_basis = gamma_basis(ctx, source_sig, t)
        if len(src_basis) == 0:
            continue
        mat = matrix_of(ctx, list(rows), t, source_basis=src_basis)
        rank, kernel = rank_kernel(mat)
        kernel_dim = len(kernel)
        index = src_basis.index()
        from ncresolve.oracle import DenseMatrixFp
        span_rows = []
        for s in gens.rows:
            d = s.degree()
            if d is None or d > t:
                continue
            for z in reduced_words(ctx.omega, t - d):
                v = normalize_vector(s.word_lmul(z), ctx)
                coords = [0] * len(src_basis)
                for m, c in v.terms:
                    coords[index[m]] = c
                span_rows.append(coords)
        if span_rows:
            m2 = DenseMatrixFp(p, len(span_rows), len(src_basis))
            for i, coords in enumerate(span_rows):
                for j, c in enumerate(coords):
                    if c:
                        m2.set(i, j, c)
            span_rank, _ = rank_kernel(m2)
        else:
            span_rank = 0
        if span_rank != kernel_dim:
            return False, (t, span_rank, kernel_dim)
    return True, None


def test_syzygy_completeness_steenrod(ctx10):
    rows = sq_rows(ctx10, "Sq1", "Sq2")
    ok, info = syzygy_span_matches_kernel(rows, ctx10)
    assert ok, info


def test_syzygy_completeness_toy_exterior():
    A = FreeAlgebra([("x", 1), ("y", 1)], p=2)
    gb = complete([A.parse("x*x"), A.parse("y*x + x*y")], 8)
    ctx = TruncatedContext(gb.basis, 8)
    M = FreeModule(A, (0, 1))
    rows = [normalize_vector(v, ctx) for v in (
        M.from_components([A.parse("x*y"), A.parse("x")]),
        M.embed(0, A.parse("y")),
    )]
    ok, info = syzygy_span_matches_kernel(rows, ctx)
    assert ok, info


# -- minimalization -------------------------------------------------------------


def test_minimalize_drops_decomposable_sq3(ctx10):
    rows = sq_rows(ctx10, "Sq1", "Sq2", "Sq3")
    assert [str(r) for r in minimalize(rows, ctx10)] == ["[Sq1]", "[Sq2]"]


def test_minimalize_steenrod_indecomposables(ctx20):
    A = ctx20.algebra
    M = FreeModule(A, (0,))
    rows = [M.embed(0, A.gen(i)) for i in range(20)]
    mm = minimalize(rows, ctx20)
    assert [A.format_word(r.lm[1]) for r in mm] == \
        ["Sq1", "Sq2", "Sq4", "Sq8", "Sq16"]


def test_minimalize_single_row(ctx10):
    rows = sq_rows(ctx10, "Sq4*Sq1")
    assert minimalize(rows, ctx10) == rows


def test_minimalize_degree_multiset_is_permutation_invariant(ctx10):
    rng = random.Random(31)
    rows = list(sq_rows(ctx10, "Sq1", "Sq2", "Sq3", "Sq4", "Sq2*Sq1", "Sq5"))
    expected = sorted(r.degree() for r in minimalize(rows, ctx10))
    for _ in range(10):
        shuffled = rows[:]
        rng.shuffle(shuffled)
        got = sorted(r.degree() for r in minimalize(shuffled, ctx10))
        assert got == expected


def test_check_minimal_accepts_minimal_set(ctx10):
    rows = sq_rows(ctx10, "Sq1", "Sq2")
    assert check_minimal(rows, ctx10).ok


def test_check_minimal_rejects_duplicates(ctx10):
    rows = sq_rows(ctx10, "Sq2", "Sq2")
    report = check_minimal(rows, ctx10)
    assert not report.ok
    assert any(word == () for (_, word), _ in report.witness.terms)


def test_minimalize_then_check_minimal_pipeline(ctx10):
    rng = random.Random(37)
    A = ctx10.algebra
    M = FreeModule(A, (0, 1))
    for _ in range(6):
        rows = []
        for _ in range(rng.randint(1, 4)):
            comp = rng.randrange(2)
            degree = rng.randint(1, 5)
            words = {}
            for _ in range(rng.randint(1, 2)):
                word = []
                left = degree
                while left > 0:
                    i = rng.randrange(min(left, 9))
                    word.append(i)
                    left -= i + 1
                words[tuple(word)] = 1
            v = normalize_vector(M.embed(comp, A.poly(words)), ctx10)
            if not v.is_zero():
                rows.append(v)
        if not rows:
            continue
        mm = minimalize(rows, ctx10)
        if mm:
            assert check_minimal(mm, ctx10).ok
