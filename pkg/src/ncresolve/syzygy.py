"""Syzygy generators: leading-monomial syzygies, lifted S-vector syzygies for
a module Groebner basis, lifting through the S/T matrices for arbitrary
reduced input, and minimal generating sets.

A syzygy of rows f_1..f_s is a coefficient vector r over e'_1..e'_s
(|e'_j| = |f_j|) with N_{Omega,k}(sum r_j·f_j) = 0.  Rows whose total degree
exceeds the truncation bound are dropped at creation; they cannot affect
anything in degrees <= k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import ContractViolation, Polynomial
from .free_module import (FreeModule, ModuleGroebnerBasis, ModuleMonomial,
                          ModuleVector, combine_rows, complete_reducers,
                          left_divide, module_complete, module_lcm,
                          module_reduce, module_s_vector, normalize_vector,
                          relation_overlap_set)
from .reduction import TruncatedContext


@dataclass(frozen=True)
class SyzygyProblem:
    """Rows f_1..f_s in a common free module plus the truncation context."""
    rows: tuple[ModuleVector, ...]
    ctx: TruncatedContext

    def __post_init__(self):
        for f in self.rows:
            if f.is_zero():
                raise ValueError("syzygy rows must be nonzero")
            if not f.is_homogeneous():
                raise ValueError("syzygy rows must be homogeneous")

    @property
    def target(self) -> FreeModule:
        return self.rows[0].parent

    @property
    def source(self) -> FreeModule:
        return FreeModule(self.ctx.algebra, [f.degree() for f in self.rows])


@dataclass(frozen=True)
class SyzygyGenerators:
    module: FreeModule          # the source ⊕ R·e'_j the rows live in
    rows: tuple[ModuleVector, ...]
    provenance: tuple[dict, ...]

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def degrees(self) -> list[int]:
        return [r.degree() for r in self.rows]


def apply_row(row: ModuleVector, targets: Sequence[ModuleVector],
              ctx: TruncatedContext) -> ModuleVector:
    """N_{Omega,k}(sum row_j · targets[j]): the image of a coefficient row."""
    return combine_rows(row.components(), targets, ctx)


def monomial_syzygies(target: FreeModule, monos: Sequence[ModuleMonomial],
                      ctx: TruncatedContext) -> SyzygyGenerators:
    """Generators of the syzygies of a tuple of module monomials against the
    leading terms of Omega: pair differences for left-comparable pairs, plus
    z·e'_i for every relation-overlap prefix within the degree bound."""
    monos = [(c, tuple(w)) for (c, w) in monos]
    for m in monos:
        if not 0 <= m[0] < target.rank:
            raise ValueError(f"monomial {m} outside the target module")
    source = FreeModule(target.algebra, [target.mono_degree(m) for m in monos])
    wd = target.algebra.word_degree
    rows: list[ModuleVector] = []
    prov: list[dict] = []
    seen = set()
    for i in range(len(monos)):
        for j in range(i + 1, len(monos)):
            lcm = module_lcm(monos[i], monos[j])
            if lcm is None or target.mono_degree(lcm) > ctx.k:
                continue
            zi = left_divide(monos[i], lcm)
            zj = left_divide(monos[j], lcm)
            row = source.vector({(i, zi): 1}) - source.vector({(j, zj): 1})
            if row.is_zero() or row in seen:
                continue
            seen.add(row)
            rows.append(row)
            prov.append({"kind": "pair", "i": i, "j": j})
    for i, m in enumerate(monos):
        vec_i = target.vector({m: 1})
        for r_idx, w in enumerate(ctx.omega.reducers):
            if w.degree() > ctx.k:
                continue
            for t in relation_overlap_set(vec_i, w):
                if wd(t.z) + target.mono_degree(m) > ctx.k:
                    continue
                row = source.vector({(i, t.z): 1})
                if row in seen:
                    continue
                seen.add(row)
                rows.append(row)
                prov.append({"kind": "relation", "i": i, "omega": r_idx,
                             "z": target.algebra.format_word(t.z)})
    return SyzygyGenerators(source, tuple(rows), tuple(prov))


def groebner_syzygies(G: ModuleGroebnerBasis) -> SyzygyGenerators:
    """The Main-Theorem generating set for the syzygies of a module Groebner
    basis: one row per comparable leading-term pair and one per relation
    overlap, each completed by the coefficients of the recorded reduction of
    its S-vector to zero."""
    ctx = G.ctx
    module = G.module
    algebra = module.algebra
    wd = algebra.word_degree
    elements = G.elements
    source = FreeModule(algebra, [g.degree() for g in elements])
    rows: list[ModuleVector] = []
    prov: list[dict] = []

    def reduced_to_zero(sv: ModuleVector, what: str) -> dict:
        trace: dict = {}
        r = module_reduce(sv, elements, ctx, trace)
        if not r.is_zero():
            raise ContractViolation(
                f"{what} did not reduce to zero; input was not a Groebner basis")
        return trace

    def syzygy_row(head: dict, trace: dict) -> ModuleVector:
        terms = dict(head)
        p = algebra.field.p
        for nu, words in trace.items():
            for z, c in words.items():
                m = (nu, z)
                nc = (terms.get(m, 0) - c) % p
                if nc:
                    terms[m] = nc
                elif m in terms:
                    del terms[m]
        return source.vector(terms)

    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            lcm = module_lcm(elements[i].lm, elements[j].lm)
            if lcm is None or module.mono_degree(lcm) > ctx.k:
                continue
            zi = left_divide(elements[i].lm, lcm)
            zj = left_divide(elements[j].lm, lcm)
            sv = module_s_vector(elements[i], elements[j])
            trace = reduced_to_zero(sv, f"S-vector of rows {i}, {j}")
            row = syzygy_row({(i, zi): 1, (j, zj): -1}, trace)
            if row.is_zero() or row.degree() > ctx.k:
                continue
            rows.append(row)
            prov.append({"kind": "pair", "i": i, "j": j})
    for i, g in enumerate(elements):
        lm_deg = module.mono_degree(g.lm)
        mu = g.lm[0]
        for r_idx, w in enumerate(ctx.omega.reducers):
            for t in relation_overlap_set(g, w):
                if wd(t.z) + lm_deg > ctx.k:
                    continue
                sv = g.word_lmul(t.z) - module.embed(mu, w.word_mul(t.p, t.q))
                trace = reduced_to_zero(sv, f"relation S-vector of row {i}")
                row = syzygy_row({(i, t.z): 1}, trace)
                if row.is_zero() or row.degree() > ctx.k:
                    continue
                rows.append(row)
                prov.append({"kind": "relation", "i": i, "omega": r_idx,
                             "z": algebra.format_word(t.z)})
    for row in rows:
        if not apply_row(row, elements, ctx).is_zero():
            raise ContractViolation("syzygy row does not annihilate the basis")
    return SyzygyGenerators(source, tuple(rows), tuple(prov))


def lift_syzygies(problem: SyzygyProblem) -> SyzygyGenerators:
    """Generators for the syzygies of arbitrary (Omega, k)-reduced rows.

    Completes the rows to a Groebner basis G with matrices S, T, pulls each
    Groebner syzygy back through T, and appends the rows of I - S·T (zero
    whenever the inputs stay inside the completed basis, as they do here).
    """
    rows = problem.rows
    ctx = problem.ctx
    source = problem.source
    if not rows:
        return SyzygyGenerators(source, (), ())
    algebra = source.algebra
    G = module_complete(rows, ctx)
    base = groebner_syzygies(G)
    out_rows: list[ModuleVector] = []
    prov: list[dict] = []
    for row, tag in zip(base.rows, base.provenance):
        coeffs = row.components()
        lifted = [algebra.zero()] * len(rows)
        for nu, c in enumerate(coeffs):
            if c.is_zero():
                continue
            for j in range(len(rows)):
                lifted[j] = lifted[j] + c * G.T[nu][j]
        vec = normalize_vector(source.from_components(lifted), ctx)
        if vec.is_zero() or vec.degree() > ctx.k:
            continue
        out_rows.append(vec)
        prov.append(dict(tag, lifted=True))
    for i in range(len(rows)):
        residual = [algebra.zero()] * len(rows)
        residual[i] = algebra.one()
        for nu in range(len(G.elements)):
            c = G.S[i][nu]
            if c.is_zero():
                continue
            for j in range(len(rows)):
                residual[j] = residual[j] - c * G.T[nu][j]
        vec = normalize_vector(source.from_components(residual), ctx)
        if vec.is_zero() or vec.degree() > ctx.k:
            continue
        out_rows.append(vec)
        prov.append({"kind": "residual", "i": i})
    for row in out_rows:
        if not apply_row(row, rows, ctx).is_zero():
            raise ContractViolation("lifted syzygy row does not annihilate the input")
    return SyzygyGenerators(source, tuple(out_rows), tuple(prov))


def _row_sort_key(row: ModuleVector):
    return (row.degree(), row.parent.pot_key(row.lm), row.terms)


def minimalize(rows: Sequence[ModuleVector],
               ctx: TruncatedContext) -> tuple[ModuleVector, ...]:
    """Minimal generating set of the module generated by the rows.

    For each row in ascending (degree, leading monomial) order, the other
    rows are completed to a Groebner basis and the row is replaced by its
    normal form; nonzero survivors remain.  Helper completions only need the
    criterion up to the degree of the row under test, which is all that
    membership in that degree can see.
    """
    current = [r for r in rows if not r.is_zero()]
    for r in current:
        if not r.is_homogeneous():
            raise ValueError("rows must be homogeneous")
    order = sorted(range(len(current)), key=lambda i: _row_sort_key(current[i]))
    for i in order:
        h = current[i]
        if h is None or h.is_zero():
            current[i] = None
            continue
        bound = h.degree()
        others = [current[j] for j in range(len(current))
                  if j != i and current[j] is not None]
        reducers = complete_reducers(others, ctx, up_to_degree=bound)
        r = module_reduce(h, reducers, ctx)
        current[i] = None if r.is_zero() else r
    survivors = [r for r in current if r is not None]
    survivors.sort(key=_row_sort_key)
    return tuple(survivors)


@dataclass(frozen=True)
class MinimalityReport:
    ok: bool
    witness: ModuleVector | None = None

    def __bool__(self):
        return self.ok


def check_minimal(rows: Sequence[ModuleVector],
                  ctx: TruncatedContext) -> MinimalityReport:
    """A minimal generating set has all its syzygies inside I(R)·⊕e'_j: no
    computed syzygy generator may carry a unit-word term."""
    rows = [r for r in rows if not r.is_zero()]
    if not rows:
        return MinimalityReport(True)
    gens = lift_syzygies(SyzygyProblem(tuple(rows), ctx))
    for row in gens.rows:
        if any(word == () for (_, word), _ in row.terms):
            return MinimalityReport(False, row)
    return MinimalityReport(True)
