"""Free modules ⊕ R·e_i with the position-over-term order, left divisibility,
truncated reduction, module S-vectors, relation overlaps, and module-level
Buchberger completion with transformation matrices.

Scalars act on the left, so module divisibility is one-sided: X divides Y
exactly when they sit in the same component and word(X) is a suffix of
word(Y).  This differs from the two-sided ring case.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .algebra import (ConfigurationError, ContractViolation, FreeAlgebra,
                      Polynomial, Word)
from .groebner import CONTAINMENT, OVERLAP, OverlapTriple
from .reduction import TruncatedContext

ModuleMonomial = tuple  # (component index, word)


class FreeModule:
    """Context: an algebra plus the degrees |e_1|, ..., |e_m| of the basis."""

    __slots__ = ("algebra", "degrees")

    def __init__(self, algebra: FreeAlgebra, degrees: Sequence[int]):
        for d in degrees:
            if d < 0:
                raise ConfigurationError(f"component degree {d} < 0")
        self.algebra = algebra
        self.degrees = tuple(int(d) for d in degrees)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def mono_degree(self, mono: ModuleMonomial) -> int:
        comp, word = mono
        return self.degrees[comp] + self.algebra.word_degree(word)

    def pot_key(self, mono: ModuleMonomial):
        """Ascending POT key: lower component index means greater monomial."""
        return (-mono[0], self.algebra.order.key(mono[1]))

    # -- construction ------------------------------------------------------

    def vector(self, terms: Mapping | Iterable) -> "ModuleVector":
        return ModuleVector(self, terms)

    def zero(self) -> "ModuleVector":
        return ModuleVector(self, ())

    def basis_vector(self, comp: int) -> "ModuleVector":
        return ModuleVector(self, {(comp, ()): 1})

    def embed(self, comp: int, poly: Polynomial) -> "ModuleVector":
        """The vector poly·e_comp."""
        if poly.algebra != self.algebra:
            raise ConfigurationError("polynomial from a different algebra")
        return ModuleVector(self, {(comp, w): c for w, c in poly.terms})

    def from_components(self, polys: Sequence[Polynomial]) -> "ModuleVector":
        if len(polys) != self.rank:
            raise ConfigurationError(f"expected {self.rank} components, got {len(polys)}")
        terms = {}
        for comp, poly in enumerate(polys):
            for w, c in poly.terms:
                terms[(comp, w)] = c
        return ModuleVector(self, terms)

    # -- text I/O: `[c1 P1, c2 P2, ...]`, one polynomial per component ------

    def parse(self, text: str) -> "ModuleVector":
        from .algebra import ParseError
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ParseError("module vector must be bracketed", 0)
        inner = s[1:-1]
        parts = [p.strip() for p in inner.split(",")] if inner.strip() else []
        if len(parts) != self.rank:
            raise ParseError(f"expected {self.rank} components, got {len(parts)}", 0)
        return self.from_components([self.algebra.parse(p) for p in parts])

    def __eq__(self, other):
        return (isinstance(other, FreeModule) and self.algebra == other.algebra
                and self.degrees == other.degrees)

    def __hash__(self):
        return hash((self.algebra, self.degrees))

    def __repr__(self):
        return f"FreeModule(degrees={self.degrees})"


def _check_same_module(a: "ModuleVector", b: "ModuleVector") -> None:
    if a.parent is not b.parent and a.parent != b.parent:
        raise ConfigurationError("vectors belong to different free modules")


class ModuleVector:
    """Element of ⊕ R·e_i; terms sorted descending under POT."""

    __slots__ = ("parent", "terms", "_degree")

    def __init__(self, parent: FreeModule,
                 terms: Mapping | Iterable[tuple[ModuleMonomial, int]]):
        self.parent = parent
        items = terms.items() if isinstance(terms, Mapping) else terms
        p = parent.algebra.field.p
        acc: dict[ModuleMonomial, int] = {}
        for mono, coeff in items:
            comp, word = mono
            if not 0 <= comp < parent.rank:
                raise ConfigurationError(f"component {comp} out of range")
            mono = (comp, tuple(word))
            c = (acc.get(mono, 0) + coeff) % p
            if c:
                acc[mono] = c
            elif mono in acc:
                del acc[mono]
        self.terms = tuple(sorted(acc.items(),
                                  key=lambda t: parent.pot_key(t[0]), reverse=True))
        self._degree = max((parent.mono_degree(m) for m, _ in self.terms), default=None)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def lm(self) -> ModuleMonomial | None:
        return self.terms[0][0] if self.terms else None

    @property
    def lc(self) -> int:
        return self.terms[0][1] if self.terms else 0

    @property
    def lt(self) -> tuple[ModuleMonomial, int] | None:
        return self.terms[0] if self.terms else None

    def degree(self) -> int | None:
        """Maximal total degree of a term; None for the zero vector."""
        return self._degree

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        md = self.parent.mono_degree
        return len({md(m) for m, _ in self.terms}) == 1

    def component(self, comp: int) -> Polynomial:
        return self.parent.algebra.poly(
            {w: c for (i, w), c in self.terms if i == comp})

    def components(self) -> list[Polynomial]:
        return [self.component(i) for i in range(self.parent.rank)]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        _check_same_module(self, other)
        p = self.parent.algebra.field.p
        acc = dict(self.terms)
        for m, c in other.terms:
            nc = (acc.get(m, 0) + c) % p
            if nc:
                acc[m] = nc
            elif m in acc:
                del acc[m]
        return ModuleVector(self.parent, acc)

    def __neg__(self) -> "ModuleVector":
        p = self.parent.algebra.field.p
        return ModuleVector(self.parent, {m: p - c for m, c in self.terms})

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def scale(self, c: int) -> "ModuleVector":
        c = self.parent.algebra.field.normalize(c)
        if c == 0:
            return self.parent.zero()
        return ModuleVector(self.parent, {m: cc * c for m, cc in self.terms})

    def word_lmul(self, z: Word) -> "ModuleVector":
        z = tuple(z)
        return ModuleVector(self.parent,
                            {(i, z + w): c for (i, w), c in self.terms})

    def poly_lmul(self, f: Polynomial) -> "ModuleVector":
        if f.algebra != self.parent.algebra:
            raise ConfigurationError("polynomial from a different algebra")
        p = f.algebra.field.p
        acc: dict[ModuleMonomial, int] = {}
        for wf, cf in f.terms:
            for (i, w), c in self.terms:
                m = (i, wf + w)
                nc = (acc.get(m, 0) + cf * c) % p
                if nc:
                    acc[m] = nc
                elif m in acc:
                    del acc[m]
        return ModuleVector(self.parent, acc)

    def monic(self) -> "ModuleVector":
        if not self.terms:
            raise ValueError("zero vector cannot be made monic")
        c = self.terms[0][1]
        if c == 1:
            return self
        return self.scale(self.parent.algebra.field.inv(c))

    def __eq__(self, other):
        return (isinstance(other, ModuleVector) and self.parent == other.parent
                and self.terms == other.terms)

    def __hash__(self):
        return hash(self.terms)

    def __iter__(self) -> Iterator[tuple[ModuleMonomial, int]]:
        return iter(self.terms)

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.components()) + "]"

    def __repr__(self):
        return f"ModuleVector({self})"


# -- order and divisibility --------------------------------------------------

def pot_compare(module: FreeModule, a: ModuleMonomial, b: ModuleMonomial) -> int:
    """Position over term: lower component wins, ties by the ring order."""
    ka, kb = module.pot_key(a), module.pot_key(b)
    return -1 if ka < kb else (1 if ka > kb else 0)


def left_divide(x: ModuleMonomial, y: ModuleMonomial) -> Word | None:
    """Z with y = Z·x (same component, word(x) a suffix of word(y)), else None."""
    (ci, wi), (cj, wj) = x, y
    if ci != cj or len(wi) > len(wj):
        return None
    if len(wi) == 0 or wj[len(wj) - len(wi):] == wi:
        return wj[:len(wj) - len(wi)]
    return None


def module_lcm(x: ModuleMonomial, y: ModuleMonomial) -> ModuleMonomial | None:
    """lcm per the one-sided case split: whichever is a left multiple of the
    other; None when incomparable (the paper's lcm = 0)."""
    if left_divide(y, x) is not None:
        return x
    if left_divide(x, y) is not None:
        return y
    return None


# -- reduction ----------------------------------------------------------------

def module_reduce(f: ModuleVector, reducers: Sequence[ModuleVector],
                  ctx: TruncatedContext,
                  trace: dict | None = None) -> ModuleVector:
    """Fully (Omega, k)-reduce f modulo the given monic vectors.

    Module steps (left quotients against raw words) are tried first on the
    greatest term; a term that no reducer divides is ring-normalized against
    Omega with budget k - |e_comp| and re-examined.  The result has no term
    left-divisible by any lm(reducer) and is componentwise Omega-normal.

    With `trace` given (a dict), entries trace[i][Z] accumulate coefficients
    so that f = sum_i u_i·g_i + (ideal part) + result with u_i = sum c·Z.
    """
    module = f.parent
    algebra = module.algebra
    p = algebra.field.p
    wd = algebra.word_degree
    omega = ctx.omega
    budgets = [ctx.k - d for d in module.degrees]
    pot_key = module.pot_key

    buckets: dict[int, list[tuple[Word, int]]] = {}
    for idx, g in enumerate(reducers):
        if g.is_zero():
            raise ValueError("invalid module reducer: zero vector")
        comp, word = g.lm
        buckets.setdefault(comp, []).append((word, idx))

    work = dict(f.terms)
    out: dict[ModuleMonomial, int] = {}
    while work:
        mono = max(work, key=pot_key)
        coeff = work.pop(mono)
        comp, word = mono
        if wd(word) > budgets[comp]:
            continue
        hit = None
        for lm_word, idx in buckets.get(comp, ()):
            ll = len(lm_word)
            if ll <= len(word) and (ll == 0 or word[len(word) - ll:] == lm_word):
                hit = (word[:len(word) - ll], idx)
                break
        if hit is not None:
            z, idx = hit
            if trace is not None:
                u = trace.setdefault(idx, {})
                nc = (u.get(z, 0) + coeff) % p
                if nc:
                    u[z] = nc
                elif z in u:
                    del u[z]
            for (c2comp, w2), c2 in reducers[idx].terms[1:]:
                m = (c2comp, z + w2)
                nc = (work.get(m, 0) - coeff * c2) % p
                if nc:
                    work[m] = nc
                elif m in work:
                    del work[m]
            continue
        nf = omega.word_normal_form(word)
        if len(nf) == 1 and nf.get(word) == 1:
            out[mono] = coeff
            continue
        for w2, c2 in nf.items():
            if wd(w2) > budgets[comp]:
                continue
            m = (comp, w2)
            nc = (work.get(m, 0) + coeff * c2) % p
            if nc:
                work[m] = nc
            elif m in work:
                del work[m]
    return ModuleVector(module, out)


def normalize_vector(f: ModuleVector, ctx: TruncatedContext) -> ModuleVector:
    """Componentwise truncated normal form (no module reducers involved)."""
    return module_reduce(f, (), ctx)


def module_s_vector(f: ModuleVector, g: ModuleVector) -> ModuleVector | None:
    """(lcm/lt f)·f - (lcm/lt g)·g for monic f, g; None when the leading
    monomials are left-incomparable or in different components."""
    _check_same_module(f, g)
    if f.is_zero() or g.is_zero():
        raise ValueError("S-vector needs nonzero vectors")
    lcm = module_lcm(f.lm, g.lm)
    if lcm is None:
        return None
    zf = left_divide(f.lm, lcm)
    zg = left_divide(g.lm, lcm)
    return f.word_lmul(zf) - g.word_lmul(zg)


def relation_overlap_set(f: ModuleVector, w: Polynomial) -> list[OverlapTriple]:
    """Triples (z, p, q) pairing lm(f) against the ring relation w:
    containment (1, p, q) with word(lm f) = p·lm(w)·q, and left overlaps
    (z, 1, q) where lm(w) = z·rest with rest a nonempty prefix of word(lm f).
    """
    if f.is_zero() or w.is_zero():
        raise ValueError("relation overlaps need nonzero arguments")
    word = f.lm[1]
    lw = w.lm
    n, h = len(word), len(lw)
    triples = []
    for beta in range(0, n - h + 1):
        if word[beta:beta + h] == lw:
            triples.append(OverlapTriple((), word[:beta], word[beta + h:], CONTAINMENT))
    for delta in range(1, h):
        rest = h - delta
        if rest > n:
            continue
        if lw[delta:] == word[:rest]:
            triples.append(OverlapTriple(lw[:delta], (), word[rest:], OVERLAP))
    return triples


# -- completion ----------------------------------------------------------------

@dataclass(frozen=True)
class ModuleGroebnerBasis:
    """Completed basis with matrices tying it back to the input rows:
    F = N(S·G) and G = N(T·F) componentwise."""
    module: FreeModule
    elements: tuple[ModuleVector, ...]
    ctx: TruncatedContext
    input_rows: tuple[ModuleVector, ...]
    S: tuple[tuple[Polynomial, ...], ...]  # s x t
    T: tuple[tuple[Polynomial, ...], ...]  # t x s

    def reduce(self, f: ModuleVector, trace: dict | None = None) -> ModuleVector:
        return module_reduce(f, self.elements, self.ctx, trace)

    def verify_transforms(self) -> bool:
        for i, f in enumerate(self.input_rows):
            if combine_rows(self.S[i], self.elements, self.ctx) != f:
                return False
        for v, g in zip(self.T, self.elements):
            if combine_rows(v, self.input_rows, self.ctx) != g:
                return False
        return True


def combine_rows(coeffs: Sequence[Polynomial], rows: Sequence[ModuleVector],
                 ctx: TruncatedContext) -> ModuleVector:
    """N_{Omega,k}(sum coeffs[j]·rows[j])."""
    if not rows:
        raise ValueError("no rows to combine")
    acc = rows[0].parent.zero()
    for c, r in zip(coeffs, rows):
        if not c.is_zero():
            acc = acc + r.poly_lmul(c)
    return normalize_vector(acc, ctx)


def _trace_to_polys(algebra: FreeAlgebra, trace: dict, size: int) -> list[Polynomial]:
    out = [algebra.zero()] * size
    for idx, words in trace.items():
        out[idx] = algebra.poly(words)
    return out


def module_complete(rows: Sequence[ModuleVector], ctx: TruncatedContext,
                    up_to_degree: int | None = None,
                    track_transforms: bool = True) -> ModuleGroebnerBasis:
    """Buchberger completion for submodules of ⊕ R·e_i under (Omega, k).

    Input rows must be nonzero, homogeneous and (Omega, k)-reduced; they stay
    in the basis (monic-normalized), so S is diagonal by construction.
    `up_to_degree` limits the criterion to overlaps of that total degree,
    which is exactly enough when only membership up to that degree matters.
    """
    rows = list(rows)
    bound = ctx.k if up_to_degree is None else min(ctx.k, up_to_degree)
    if not rows:
        module = None
        raise ValueError("module_complete needs at least one row; "
                         "empty inputs have the empty basis")
    module = rows[0].parent
    algebra = module.algebra
    wd = algebra.word_degree
    omega = ctx.omega

    basis: list[ModuleVector] = []
    t_rows: list[list[Polynomial]] = []
    heap: list = []
    counter = 0

    def push_pairs(n: int):
        nonlocal counter
        g = basis[n]
        for m in range(n):
            lcm = module_lcm(g.lm, basis[m].lm)
            if lcm is None or module.mono_degree(lcm) > bound:
                continue
            counter += 1
            heapq.heappush(heap, (module.mono_degree(lcm), counter, "pair", n, m, None))
        lm_deg = module.mono_degree(g.lm)
        for r_idx, w in enumerate(omega.reducers):
            for t in relation_overlap_set(g, w):
                deg = wd(t.z) + lm_deg
                if deg > bound:
                    continue
                counter += 1
                heapq.heappush(heap, (deg, counter, "relation", n, r_idx, t))

    def insert(v: ModuleVector, t_row: list[Polynomial] | None):
        lc = v.lc
        g = v.monic()
        basis.append(g)
        if track_transforms:
            inv = algebra.field.inv(lc)
            t_rows.append([c.scale(inv) for c in t_row])
        push_pairs(len(basis) - 1)

    s = len(rows)
    for i, f in enumerate(rows):
        if f.parent != module:
            raise ConfigurationError("rows belong to different modules")
        if f.is_zero():
            raise ValueError("rows must be nonzero")
        if not f.is_homogeneous():
            raise ValueError("rows must be homogeneous")
        e_i = [algebra.zero()] * s
        e_i[i] = algebra.one()
        insert(f, e_i)

    while heap:
        _, _, kind, n, other, t = heapq.heappop(heap)
        trace: dict = {}
        if kind == "pair":
            sv = module_s_vector(basis[n], basis[other])
            if sv is None:
                continue
        else:
            w = omega.reducers[other]
            mu = basis[n].lm[0]
            sv = (basis[n].word_lmul(t.z)
                  - module.embed(mu, w.word_mul(t.p, t.q)))
        r = module_reduce(sv, basis, ctx, trace)
        if r.is_zero():
            continue
        if track_transforms:
            u = _trace_to_polys(algebra, trace, len(basis))
            if kind == "pair":
                lcm = module_lcm(basis[n].lm, basis[other].lm)
                zn = left_divide(basis[n].lm, lcm)
                zo = left_divide(basis[other].lm, lcm)
                t_row = [algebra.monomial(zn) * c for c in t_rows[n]]
                for j, c in enumerate(t_rows[other]):
                    t_row[j] = t_row[j] - algebra.monomial(zo) * c
            else:
                t_row = [algebra.monomial(t.z) * c for c in t_rows[n]]
            for nu, u_nu in enumerate(u):
                if not u_nu.is_zero():
                    for j, c in enumerate(t_rows[nu]):
                        t_row[j] = t_row[j] - u_nu * c
            insert(r, t_row)
        else:
            insert(r, None)

    s_matrix = tuple(
        tuple(algebra.monomial((), rows[i].lc) if j == i else algebra.zero()
              for j in range(len(basis)))
        for i in range(s))
    result = ModuleGroebnerBasis(module, tuple(basis), ctx, tuple(rows),
                                 s_matrix if track_transforms else (),
                                 tuple(tuple(r) for r in t_rows))
    if track_transforms and up_to_degree is None and not result.verify_transforms():
        raise ContractViolation("transformation matrices failed re-verification")
    return result


def complete_reducers(rows: Sequence[ModuleVector], ctx: TruncatedContext,
                      up_to_degree: int | None = None) -> tuple[ModuleVector, ...]:
    """Basis vectors only, no transformation bookkeeping (used where normal
    forms are all that matters, e.g. minimalization)."""
    rows = [r for r in rows if not r.is_zero()]
    if up_to_degree is not None:
        rows = [r for r in rows if r.degree() <= up_to_degree]
    if not rows:
        return ()
    return module_complete(rows, ctx, up_to_degree, track_transforms=False).elements
