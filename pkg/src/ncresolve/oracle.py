"""Brute-force verification layer: degreewise F_p bases of Gamma-modules,
dense matrices of differentials, rank/kernel computation, and exactness
checks for resolutions.

This module deliberately stays off the Groebner/syzygy code paths it audits;
it consumes only the completed ring reducer set (to enumerate reduced words)
and plain ring reduction.  Elimination is dense, bit-packed at p = 2.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import ConfigurationError, Word
from .free_module import FreeModule, ModuleMonomial, ModuleVector
from .reduction import ReducerSet, TruncatedContext
from .resolution import COKERNEL, TRIVIAL, Resolution


def reduced_words(omega: ReducerSet, degree: int) -> list[Word]:
    """All words of the given degree with no reducer leading word as a factor,
    ascending under the algebra's monomial order."""
    algebra = omega.algebra
    degrees = algebra.table.degrees
    lookup = omega._lm_lookup
    lengths = omega._lm_lengths
    out: list[Word] = []

    def extend(word: Word, remaining: int):
        if remaining == 0:
            out.append(word)
            return
        for i in range(len(degrees)):
            if degrees[i] > remaining:
                continue
            w2 = word + (i,)
            n = len(w2)
            if any(l <= n and w2[n - l:] in lookup for l in lengths):
                continue
            extend(w2, remaining - degrees[i])

    if degree >= 0:
        extend((), degree)
    out.sort(key=algebra.order.key)
    return out


@dataclass(frozen=True)
class DegreeBasis:
    """Reduced module monomials of one total degree, component-major order."""
    degree: int
    monomials: tuple[ModuleMonomial, ...]

    def __len__(self):
        return len(self.monomials)

    def index(self) -> dict:
        return {m: i for i, m in enumerate(self.monomials)}


def gamma_basis(ctx: TruncatedContext, signature: Sequence[int],
                t: int) -> DegreeBasis:
    """Degree-t basis of ⊕ Gamma·e_i: per component, the reduced words of
    degree t - |e_i|."""
    monos: list[ModuleMonomial] = []
    for comp, d in enumerate(signature):
        if t - d < 0:
            continue
        monos.extend((comp, w) for w in reduced_words(ctx.omega, t - d))
    return DegreeBasis(t, tuple(monos))


class DenseMatrixFp:
    """Dense matrix over F_p; at p = 2 rows are int bitsets (bit j = column j)."""

    __slots__ = ("p", "nrows", "ncols", "rows")

    def __init__(self, p: int, nrows: int, ncols: int, rows=None):
        self.p = p
        self.nrows = nrows
        self.ncols = ncols
        if rows is not None:
            self.rows = rows
        elif p == 2:
            self.rows = [0] * nrows
        else:
            self.rows = [[0] * ncols for _ in range(nrows)]

    def set(self, i: int, j: int, value: int):
        value %= self.p
        if self.p == 2:
            if value:
                self.rows[i] |= (1 << j)
            else:
                self.rows[i] &= ~(1 << j)
        else:
            self.rows[i][j] = value

    def get(self, i: int, j: int) -> int:
        if self.p == 2:
            return (self.rows[i] >> j) & 1
        return self.rows[i][j]

    def is_zero(self) -> bool:
        if self.p == 2:
            return all(r == 0 for r in self.rows)
        return all(all(c == 0 for c in row) for row in self.rows)

    def mul(self, other: "DenseMatrixFp") -> "DenseMatrixFp":
        if self.ncols != other.nrows or self.p != other.p:
            raise ConfigurationError("matrix shapes do not match")
        out = DenseMatrixFp(self.p, self.nrows, other.ncols)
        for i in range(self.nrows):
            for k in range(self.ncols):
                a = self.get(i, k)
                if not a:
                    continue
                for j in range(other.ncols):
                    b = other.get(k, j)
                    if b:
                        out.set(i, j, out.get(i, j) + a * b)
        return out


def rank_kernel(m: DenseMatrixFp) -> tuple[int, list[tuple[int, ...]]]:
    """Row-reduced rank and an explicit kernel basis (as column-coordinate
    tuples); rank + len(kernel) == ncols always."""
    p, ncols = m.p, m.ncols
    pivots: list[int] = []
    if p == 2:
        work = list(m.rows)
        row_idx = 0
        for col in range(ncols):
            pivot = next((r for r in range(row_idx, len(work))
                          if (work[r] >> col) & 1), None)
            if pivot is None:
                continue
            work[row_idx], work[pivot] = work[pivot], work[row_idx]
            for r in range(len(work)):
                if r != row_idx and ((work[r] >> col) & 1):
                    work[r] ^= work[row_idx]
            pivots.append(col)
            row_idx += 1
            if row_idx == len(work):
                break
        reduced = work[:row_idx]

        def entry(r, c):
            return (reduced[r] >> c) & 1
    else:
        work = [row[:] for row in m.rows]
        row_idx = 0
        for col in range(ncols):
            pivot = next((r for r in range(row_idx, len(work)) if work[r][col]),
                         None)
            if pivot is None:
                continue
            work[row_idx], work[pivot] = work[pivot], work[row_idx]
            inv = pow(work[row_idx][col], p - 2, p)
            work[row_idx] = [v * inv % p for v in work[row_idx]]
            for r in range(len(work)):
                if r != row_idx and work[r][col]:
                    c0 = work[r][col]
                    work[r] = [(a - c0 * b) % p
                               for a, b in zip(work[r], work[row_idx])]
            pivots.append(col)
            row_idx += 1
            if row_idx == len(work):
                break
        reduced = work[:row_idx]

        def entry(r, c):
            return reduced[r][c]

    rank = len(pivots)
    pivot_set = set(pivots)
    kernel: list[tuple[int, ...]] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [0] * ncols
        vec[free] = 1
        for r, col in enumerate(pivots):
            vec[col] = (-entry(r, free)) % p
        kernel.append(tuple(vec))
    return rank, kernel


def matrix_of(ctx: TruncatedContext, rows: Sequence[ModuleVector],
              t: int, source_signature: Sequence[int] | None = None,
              source_basis: DegreeBasis | None = None,
              target_basis: DegreeBasis | None = None) -> DenseMatrixFp:
    """Degree-t matrix of the map e'_j -> rows[j]: column per source basis
    monomial Z·e'_j, holding the coordinates of N_{Omega,k}(Z·rows[j]) in the
    target degree basis."""
    if not rows:
        tb = target_basis if target_basis is not None else DegreeBasis(t, ())
        return DenseMatrixFp(ctx.algebra.field.p, len(tb), 0)
    target = rows[0].parent
    if source_signature is None:
        source_signature = [r.degree() for r in rows]
    if source_basis is None:
        source_basis = gamma_basis(ctx, source_signature, t)
    if target_basis is None:
        target_basis = gamma_basis(ctx, target.degrees, t)
    index = target_basis.index()
    p = ctx.algebra.field.p
    omega = ctx.omega
    wd = ctx.algebra.word_degree
    budgets = [ctx.k - d for d in target.degrees]
    out = DenseMatrixFp(p, len(target_basis), len(source_basis))
    for col, (j, z) in enumerate(source_basis.monomials):
        acc: dict[ModuleMonomial, int] = {}
        for (comp, w), c in rows[j].terms:
            zw = z + w
            if wd(zw) > budgets[comp]:
                continue
            for w2, c2 in omega.word_normal_form(zw).items():
                m = (comp, w2)
                nc = (acc.get(m, 0) + c * c2) % p
                if nc:
                    acc[m] = nc
                elif m in acc:
                    del acc[m]
        for m, c in acc.items():
            out.set(index[m], col, c)
    return out


@dataclass(frozen=True)
class Violation:
    stage: int
    degree: int
    kind: str  # "d_compose" | "exactness" | "unit_term" | "augmentation"


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    violations: tuple[Violation, ...] = ()

    def __bool__(self):
        return self.ok

    def to_json_dict(self) -> dict:
        return {
            "status": "ok" if self.ok else "failed",
            "violations": [{"stage": v.stage, "degree": v.degree, "kind": v.kind}
                           for v in self.violations],
        }


def _augmentation_kernel_dim(res: Resolution, t: int,
                             bases: dict) -> int:
    """dim of ker(P_0 -> M) in degree t."""
    pres = res.presentation
    if pres.kind == TRIVIAL:
        return len(bases[(0, t)]) - (1 if t == 0 else 0)
    rows = pres.rows
    if not rows:
        return 0
    m = matrix_of(res.ctx, list(rows), t, target_basis=bases[(0, t)])
    rank, _ = rank_kernel(m)
    return rank


def verify_resolution(res: Resolution, max_workers: int = 1) -> VerificationReport:
    """Degreewise audit of a resolution for t <= k: consecutive differentials
    compose to zero, dim ker(d_{n-1})_t equals rank(d_n)_t (with the
    augmentation playing d_{-1}), and no differential row carries a unit-word
    term.  Failures are reported, not raised."""
    ctx = res.ctx
    violations: list[Violation] = []
    structural_only = False
    for n in range(1, len(res.stages)):
        for j, row in enumerate(res.stages[n].rows):
            if any(word == () for (_, word), _ in row.terms):
                violations.append(Violation(n, row.degree() or 0, "unit_term"))
            if row.is_zero():
                continue  # a dropped row is an exactness problem, not a grading one
            if not row.is_homogeneous() or row.degree() != res.stages[n].degrees[j]:
                violations.append(Violation(n, res.stages[n].degrees[j],
                                            "degree_mismatch"))
                structural_only = True
    if structural_only:
        # degreewise matrices are meaningless against a broken grading
        violations.sort(key=lambda v: (v.stage, v.degree, v.kind))
        return VerificationReport(False, tuple(violations))

    degrees_by_stage = [st.degrees for st in res.stages]
    ts = range(0, ctx.k + 1)

    def stratum(t: int) -> list[Violation]:
        found = []
        bases = {(n, t): gamma_basis(ctx, degrees_by_stage[n], t)
                 for n in range(len(res.stages))}
        mats = {}
        for n in range(1, len(res.stages)):
            mats[n] = matrix_of(ctx, list(res.stages[n].rows), t,
                                source_signature=degrees_by_stage[n],
                                source_basis=bases[(n, t)],
                                target_basis=bases[(n - 1, t)])
        ranks = {n: rank_kernel(m)[0] for n, m in mats.items()}
        for n in range(1, len(res.stages) - 1):
            if not mats[n].mul(mats[n + 1]).is_zero():
                found.append(Violation(n, t, "d_compose"))
        if len(res.stages) > 1:
            if _augmentation_kernel_dim(res, t, bases) != ranks[1]:
                found.append(Violation(0, t, "augmentation"))
        for n in range(1, len(res.stages) - 1):
            ker_dim = mats[n].ncols - ranks[n]
            if ker_dim != ranks[n + 1]:
                found.append(Violation(n, t, "exactness"))
        return found

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            for found in pool.map(stratum, ts):
                violations.extend(found)
    else:
        for t in ts:
            violations.extend(stratum(t))
    violations.sort(key=lambda v: (v.stage, v.degree, v.kind))
    return VerificationReport(not violations, tuple(violations))
