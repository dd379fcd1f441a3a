"""Two-sided division and reduction of ring polynomials, plus the
degree-truncated normal form machinery.

Reduction strategy: the greatest reducible term is rewritten first, using the
leftmost occurrence of a reducer's leading word (among reducers matching at
the same position, shorter leading words win, then reducer order).  Any
strategy yields the same normal form once the reducer set is a Groebner
basis; this one is fixed so runs are reproducible.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .algebra import (ConfigurationError, FreeAlgebra, Polynomial, Word,
                      _check_same_algebra)


def divides(x: Word, y: Word) -> tuple[Word, Word] | None:
    """Leftmost factorization y = u·x·v, or None when x is not a factor."""
    x, y = tuple(x), tuple(y)
    lx, ly = len(x), len(y)
    if lx > ly:
        return None
    for i in range(ly - lx + 1):
        if y[i:i + lx] == x:
            return (y[:i], y[i + lx:])
    return None


def reduce_once(f: Polynomial, g: Polynomial,
                trace: list | None = None) -> tuple[Polynomial, bool]:
    """One reduction step of f modulo g on the greatest reducible term.

    Returns (h, True) with h = f - (c_i/lc(g))·U·g·V, or (f, False) when no
    term of f is divisible by lm(g).
    """
    _check_same_algebra(f, g)
    if g.is_zero():
        raise ValueError("invalid reducer: g = 0")
    lm_g = g.lm
    inv_lcg = f.algebra.field.inv(g.lc)
    for word, coeff in f.terms:  # descending, so first hit is greatest
        hit = divides(lm_g, word)
        if hit is None:
            continue
        u, v = hit
        c = f.algebra.field.mul(coeff, inv_lcg)
        if trace is not None:
            trace.append((0, u, v, c))
        return (f - g.word_mul(u, v).scale(c), True)
    return (f, False)


class ReducerSet:
    """Indexed collection of nonzero monic reducers sharing one algebra.

    The given order of reducers is preserved (it is part of the reduction
    strategy); `canonical` sorts by (degree, leading word) first.  Normal
    forms of single words are memoized per instance, which is safe because
    the set is immutable.
    """

    __slots__ = ("algebra", "reducers", "_lm_lookup", "_lm_lengths", "_nf_cache")

    def __init__(self, polys: Iterable[Polynomial], algebra: FreeAlgebra | None = None):
        polys = list(polys)
        if algebra is None:
            if not polys:
                raise ConfigurationError("empty reducer set needs an explicit algebra")
            algebra = polys[0].algebra
        reducers = []
        for f in polys:
            if f.algebra != algebra:
                raise ConfigurationError("reducers belong to different algebras")
            if f.is_zero():
                raise ValueError("invalid reducer: zero polynomial")
            reducers.append(f.monic())
        self.algebra = algebra
        self.reducers = tuple(reducers)
        self._build_index()

    @classmethod
    def empty(cls, algebra: FreeAlgebra) -> "ReducerSet":
        return cls((), algebra)

    @classmethod
    def canonical(cls, polys: Iterable[Polynomial],
                  algebra: FreeAlgebra | None = None) -> "ReducerSet":
        polys = [f.monic() for f in polys]
        if polys:
            key = polys[0].algebra.order.key
            polys.sort(key=lambda f: (f.degree(), key(f.lm), f.terms))
        return cls(polys, algebra)

    def _build_index(self):
        lookup: dict[Word, int] = {}
        for i, g in enumerate(self.reducers):
            lookup.setdefault(g.lm, i)
        self._lm_lookup = lookup
        self._lm_lengths = tuple(sorted({len(w) for w in lookup}))
        self._nf_cache: dict[Word, dict] = {}

    def __len__(self):
        return len(self.reducers)

    def __iter__(self):
        return iter(self.reducers)

    def find_reduction(self, word: Word) -> tuple[int, Word, Word] | None:
        """First (reducer index, U, V) with word = U·lm·V, scanning positions
        left to right and leading-word lengths shortest first."""
        lookup = self._lm_lookup
        n = len(word)
        for i in range(n + 1):
            for length in self._lm_lengths:
                if i + length > n:
                    break
                idx = lookup.get(word[i:i + length])
                if idx is not None:
                    return (idx, word[:i], word[i + length:])
        return None

    # -- memoized single-word normal forms --------------------------------

    def word_normal_form(self, word: Word) -> dict:
        """Normal form of a single word as a {word: coeff} dict (shared;
        callers must not mutate)."""
        cache = self._nf_cache
        got = cache.get(word)
        if got is not None:
            return got
        p = self.algebra.field.p
        stack = [word]
        while stack:
            w = stack[-1]
            if w in cache:
                stack.pop()
                continue
            red = self.find_reduction(w)
            if red is None:
                cache[w] = {w: 1}
                stack.pop()
                continue
            idx, u, v = red
            tail = self.reducers[idx].terms[1:]
            children = [u + w2 + v for w2, _ in tail]
            pending = [c for c in children if c not in cache]
            if pending:
                stack.extend(pending)
                continue
            out: dict[Word, int] = {}
            for (w2, c2), child in zip(tail, children):
                neg = p - c2
                for w3, c3 in cache[child].items():
                    nc = (out.get(w3, 0) + neg * c3) % p
                    if nc:
                        out[w3] = nc
                    elif w3 in out:
                        del out[w3]
            cache[w] = out
            stack.pop()
        return cache[word]

    def reduce_dict(self, terms: Iterable[tuple[Word, int]],
                    budget: int | None = None) -> dict:
        """Sum of c·NF(word) over terms, dropping words of degree > budget."""
        p = self.algebra.field.p
        wd = self.algebra.word_degree
        out: dict[Word, int] = {}
        for word, coeff in terms:
            if budget is not None and wd(word) > budget:
                continue
            for w, c in self.word_normal_form(word).items():
                nc = (out.get(w, 0) + coeff * c) % p
                if nc:
                    out[w] = nc
                elif w in out:
                    del out[w]
        return out

    def reduce(self, f: Polynomial, budget: int | None = None) -> Polynomial:
        if f.algebra != self.algebra:
            raise ConfigurationError("polynomial and reducers use different algebras")
        return Polynomial(self.algebra, self.reduce_dict(f.terms, budget))


def reduce_terms_traced(algebra: FreeAlgebra, terms: dict,
                        find, reducer_at,
                        budget: int | None = None,
                        trace: list | None = None) -> dict:
    """Work-loop full reduction of a term dict, greatest term first.

    `find(word)` returns (index, U, V) or None; `reducer_at(index)` returns
    the monic reducer polynomial.  Trace entries are (index, U, V, coeff)
    meaning coeff·U·g_index·V was subtracted.  Used where traces are needed
    or where the reducer collection is still growing.
    """
    p = algebra.field.p
    wd = algebra.word_degree
    key = algebra.order.key
    work = dict(terms)
    out: dict[Word, int] = {}
    while work:
        word = max(work, key=key)
        coeff = work.pop(word)
        if budget is not None and wd(word) > budget:
            continue
        red = find(word)
        if red is None:
            out[word] = coeff
            continue
        idx, u, v = red
        if trace is not None:
            trace.append((idx, u, v, coeff))
        for w2, c2 in reducer_at(idx).terms[1:]:
            w = u + w2 + v
            nc = (work.get(w, 0) - coeff * c2) % p
            if nc:
                work[w] = nc
            elif w in work:
                del work[w]
    return out


def normal_form(f: Polynomial, reducers: ReducerSet,
                trace: list | None = None,
                budget: int | None = None) -> Polynomial:
    """Fully reduce f modulo the reducer set.

    The result has no term divisible by any reducer's leading word; when the
    set is a Groebner basis it is the unique normal form.  With a trace list
    the slower step-recording path runs and appends (index, U, V, coeff)
    entries satisfying f = sum(coeff·U·g·V) + result.
    """
    if f.algebra != reducers.algebra:
        raise ConfigurationError("polynomial and reducers use different algebras")
    if trace is None:
        return reducers.reduce(f, budget)
    out = reduce_terms_traced(f.algebra, dict(f.terms), reducers.find_reduction,
                              lambda i: reducers.reducers[i], budget, trace)
    return Polynomial(f.algebra, out)


def replay_trace(f: Polynomial, reducers: ReducerSet, trace: list,
                 remainder: Polynomial) -> bool:
    """Check f == sum of traced multiples + remainder (trace soundness)."""
    acc = remainder
    for idx, u, v, coeff in trace:
        acc = acc + reducers.reducers[idx].word_mul(u, v).scale(coeff)
    return acc == f


class TruncatedContext:
    """A completed relation set Omega together with the truncation degree k.

    Reduction in this context works modulo Omega(k) = Omega plus everything
    of degree above k; the extra part is never materialized, terms above the
    budget are simply dropped.
    """

    __slots__ = ("omega", "k")

    def __init__(self, omega: ReducerSet, k: int):
        if k < 0:
            raise ConfigurationError(f"truncation degree must be >= 0, got {k}")
        self.omega = omega
        self.k = k

    @property
    def algebra(self) -> FreeAlgebra:
        return self.omega.algebra

    def truncated_normal_form(self, f: Polynomial,
                              budget: int | None = None) -> Polynomial:
        """Normal form modulo Omega with every term of degree > budget
        removed (budget defaults to k)."""
        if budget is None:
            budget = self.k
        return self.omega.reduce(f, budget)


def truncated_normal_form(f: Polynomial, ctx: TruncatedContext,
                          budget: int | None = None) -> Polynomial:
    return ctx.truncated_normal_form(f, budget)
