"""Overlap/containment triples, S-polynomials, and degree-truncated
Buchberger completion for two-sided ideals of the free algebra.

Critical pairs are processed by ascending overlap-word degree (the normal
strategy); for homogeneous input, pairs whose overlap word exceeds the
truncation degree can only affect degrees above it and are discarded.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .algebra import ContractViolation, FreeAlgebra, MonomialOrder, Polynomial, Word
from .reduction import ReducerSet, reduce_terms_traced

OVERLAP = "overlap"
CONTAINMENT = "containment"


@dataclass(frozen=True)
class OverlapTriple:
    """Words (z, p, q) with z·lm(f) = p·lm(g)·q.

    overlap kind: z is a nonempty proper prefix of lm(g), the remaining
    suffix of lm(g) is a prefix of lm(f), and p = 1.
    containment kind: lm(g) occurs inside lm(f) and z = 1.
    """
    z: Word
    p: Word
    q: Word
    kind: str


def overlap_set(f: Polynomial, g: Polynomial) -> list[OverlapTriple]:
    """All S-polynomial triples of the ordered pair (f, g).

    Asymmetric: callers enumerate both (f, g) and (g, f).
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("overlap_set needs nonzero polynomials")
    lf, lg = f.lm, g.lm
    n, m = len(lf), len(lg)
    triples = []
    # suffix of lm(g) = prefix of lm(f): z·lm(f) = lm(g)·q
    for alpha in range(1, m):
        rest = m - alpha
        if rest > n:
            continue
        if lg[alpha:] == lf[:rest]:
            triples.append(OverlapTriple(lg[:alpha], (), lf[rest:], OVERLAP))
    # lm(g) inside lm(f): lm(f) = p·lm(g)·q
    for beta in range(0, n - m + 1):
        if lf[beta:beta + m] == lg:
            triples.append(OverlapTriple((), lf[:beta], lf[beta + m:], CONTAINMENT))
    return triples


def s_polynomial(f: Polynomial, g: Polynomial, t: OverlapTriple) -> Polynomial:
    """S(f, g; z, p, q) = z·f - p·g·q for monic f, g."""
    if t.z + f.lm != t.p + g.lm + t.q:
        raise ContractViolation(f"triple {t} does not match the leading words")
    return f.word_mul(t.z, ()) - g.word_mul(t.p, t.q)


@dataclass(frozen=True)
class PairRecord:
    i: int
    j: int
    triple: OverlapTriple
    overlap_degree: int
    outcome: str  # "zero" or "added:<index>"


@dataclass(frozen=True)
class RingGroebnerBasis:
    basis: ReducerSet
    completed_to: int
    pair_log: tuple[PairRecord, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "order": self.basis.algebra.order.kind,
            "k": self.completed_to,
            "basis": [str(g) for g in self.basis],
        }

    @classmethod
    def from_json_dict(cls, algebra: FreeAlgebra, data: dict) -> "RingGroebnerBasis":
        if data["order"] != algebra.order.kind:
            raise ValueError(f"basis was completed under {data['order']}, "
                             f"algebra uses {algebra.order.kind}")
        polys = [algebra.parse(s) for s in data["basis"]]
        return cls(ReducerSet(polys, algebra), int(data["k"]))


def _overlap_degree(algebra: FreeAlgebra, f: Polynomial, t: OverlapTriple) -> int:
    return algebra.word_degree(t.z) + algebra.word_degree(f.lm)


def complete(seed: Iterable[Polynomial], k: int,
             order: MonomialOrder | None = None) -> RingGroebnerBasis:
    """Truncated Buchberger completion of a homogeneous seed.

    Returns a basis generating the same ideal in degrees <= k such that every
    S-polynomial with overlap word of degree <= k reduces to zero.  The output
    is interreduced and sorted by (degree, leading word).
    """
    seed = list(seed)
    if not seed:
        raise ValueError("empty seed; build ReducerSet.empty(algebra) directly")
    algebra = seed[0].algebra
    if order is not None and order != algebra.order:
        raise ValueError("order argument disagrees with the seed's algebra order")
    wd = algebra.word_degree
    for f in seed:
        if f.is_zero():
            raise ValueError("seed elements must be nonzero")
        if not f.is_homogeneous():
            raise ValueError(f"seed element {f} is not homogeneous")
        if f.degree() > k:
            raise ValueError(f"seed element {f} has degree above k={k}")

    basis: list[Polynomial] = []
    lm_lookup: dict[Word, int] = {}
    lm_lengths: set[int] = set()
    heap: list = []
    counter = 0
    log: list[PairRecord] = []

    def find(word):
        n = len(word)
        lengths = sorted(lm_lengths)
        for pos in range(n + 1):
            for length in lengths:
                if pos + length > n:
                    break
                idx = lm_lookup.get(word[pos:pos + length])
                if idx is not None:
                    return (idx, word[:pos], word[pos + length:])
        return None

    def reduce_full(f: Polynomial) -> Polynomial:
        out = reduce_terms_traced(algebra, dict(f.terms), find,
                                  lambda i: basis[i], budget=k)
        return Polynomial(algebra, out)

    def push_pairs(n: int):
        nonlocal counter
        for m in range(n + 1):
            for (i, j) in ((n, m), (m, n)) if m != n else ((n, n),):
                for t in overlap_set(basis[i], basis[j]):
                    deg = _overlap_degree(algebra, basis[i], t)
                    if deg > k:
                        continue
                    counter += 1
                    heapq.heappush(heap, (deg, counter, i, j, t))

    def insert(f: Polynomial):
        g = f.monic()
        basis.append(g)
        lm_lookup.setdefault(g.lm, len(basis) - 1)
        lm_lengths.add(len(g.lm))
        push_pairs(len(basis) - 1)

    key = algebra.order.key
    for f in sorted(seed, key=lambda f: (f.degree(), key(f.lm), f.terms)):
        r = reduce_full(f)
        if not r.is_zero():
            insert(r)

    while heap:
        deg, _, i, j, t = heapq.heappop(heap)
        s = s_polynomial(basis[i], basis[j], t)
        r = reduce_full(s)
        if r.is_zero():
            log.append(PairRecord(i, j, t, deg, "zero"))
        else:
            insert(r)
            log.append(PairRecord(i, j, t, deg, f"added:{len(basis) - 1}"))

    final = _interreduce(algebra, basis, k)
    return RingGroebnerBasis(ReducerSet.canonical(final, algebra), k, tuple(log))


def _interreduce(algebra: FreeAlgebra, polys: Sequence[Polynomial],
                 k: int) -> list[Polynomial]:
    """Reduce each element modulo the others until stable; drop zeros."""
    key = algebra.order.key
    current = sorted((f.monic() for f in polys),
                     key=lambda f: (f.degree(), key(f.lm), f.terms))
    changed = True
    while changed:
        changed = False
        for i in range(len(current)):
            if current[i] is None:
                continue
            others = [g for j, g in enumerate(current) if j != i and g is not None]
            lookup = {}
            for idx, g in enumerate(others):
                lookup.setdefault(g.lm, idx)
            lengths = sorted({len(w) for w in lookup})

            def find(word):
                n = len(word)
                for pos in range(n + 1):
                    for length in lengths:
                        if pos + length > n:
                            break
                        idx = lookup.get(word[pos:pos + length])
                        if idx is not None:
                            return (idx, word[:pos], word[pos + length:])
                return None

            out = reduce_terms_traced(algebra, dict(current[i].terms), find,
                                      lambda idx: others[idx], budget=k)
            r = Polynomial(algebra, out)
            if r.is_zero():
                current[i] = None
                changed = True
            elif r != current[i]:
                current[i] = r.monic()
                changed = True
    result = [f for f in current if f is not None]
    result.sort(key=lambda f: (f.degree(), key(f.lm), f.terms))
    return result


@dataclass(frozen=True)
class GroebnerReport:
    ok: bool
    pairs_checked: int
    witness: tuple[int, int, OverlapTriple, Polynomial] | None = None

    def __bool__(self):
        return self.ok


def is_groebner(candidate: ReducerSet, k: int) -> GroebnerReport:
    """Check the truncated Buchberger criterion: every S-polynomial with
    overlap word of degree <= k reduces to zero modulo the candidate."""
    algebra = candidate.algebra
    reducers = candidate.reducers
    checked = 0
    for i in range(len(reducers)):
        for j in range(len(reducers)):
            for t in overlap_set(reducers[i], reducers[j]):
                if _overlap_degree(algebra, reducers[i], t) > k:
                    continue
                checked += 1
                s = s_polynomial(reducers[i], reducers[j], t)
                r = candidate.reduce(s, budget=k)
                if not r.is_zero():
                    return GroebnerReport(False, checked, (i, j, t, r))
    return GroebnerReport(True, checked)
