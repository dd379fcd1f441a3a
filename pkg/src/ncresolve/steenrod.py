"""The built-in flagship instance: Adem relations over F2, the
right-length-lex order, and admissible-sequence enumeration.

The admissible enumerator is independent of all Groebner machinery and serves
as the basis-count oracle.  Note the relation range is 0 < a < 2b: below 2b
the product Sq^a Sq^b is inadmissible and the rewriting rules cover exactly
the inadmissible two-letter words.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .algebra import ConfigurationError, FreeAlgebra, Polynomial, RIGHT_LENGTH_LEX
from .reduction import ReducerSet, TruncatedContext


def binom_mod_p(n: int, r: int, p: int = 2) -> int:
    """Binomial coefficient C(n, r) mod p by Lucas' theorem."""
    if r < 0 or n < 0 or r > n:
        return 0
    result = 1
    while n or r:
        nd, rd = n % p, r % p
        if rd > nd:
            return 0
        num = den = 1
        for i in range(rd):
            num = num * (nd - i) % p
            den = den * (i + 1) % p
        result = result * num * pow(den, p - 2, p) % p
        n //= p
        r //= p
    return result


@dataclass(frozen=True)
class AdemRelation:
    """Sq^a Sq^b minus its admissible expansion, homogeneous of degree a+b."""
    a: int
    b: int
    polynomial: Polynomial


def adem(algebra: FreeAlgebra, a: int, b: int) -> AdemRelation:
    """The rewriting rule for the inadmissible product Sq^a Sq^b (0 < a < 2b):

        Sq^a Sq^b - sum_{j=0}^{a//2} C(b-1-j, a-2j) Sq^{a+b-j} Sq^j  (mod 2)

    with Sq^0 read as the unit monomial.  Generator Sq^i sits at table
    index i-1, so a+b must not exceed the materialized degree.
    """
    if not (0 < a < 2 * b):
        raise ValueError(f"adem({a}, {b}): need 0 < a < 2b")
    if a + b > len(algebra.table):
        raise ValueError(f"adem({a}, {b}): algebra only has Sq1..Sq{len(algebra.table)}")
    terms = {(a - 1, b - 1): 1}
    for j in range(0, a // 2 + 1):
        if binom_mod_p(b - 1 - j, a - 2 * j, 2):
            word = (a + b - j - 1,) if j == 0 else (a + b - j - 1, j - 1)
            terms[word] = (terms.get(word, 0) - 1) % 2
    return AdemRelation(a, b, algebra.poly(terms))


def steenrod_algebra(k: int) -> FreeAlgebra:
    """Free F2-algebra on Sq^1..Sq^k, |Sq^i| = i, right-length-lex order."""
    if k < 1:
        raise ConfigurationError(f"need k >= 1, got {k}")
    return FreeAlgebra([(f"Sq{i}", i) for i in range(1, k + 1)],
                       p=2, order=RIGHT_LENGTH_LEX)


def adem_relations(algebra: FreeAlgebra, max_degree: int) -> list[AdemRelation]:
    """All relations with 0 < a < 2b and a + b <= max_degree, in (a+b, a) order."""
    rels = []
    for total in range(2, max_degree + 1):
        for a in range(1, total):
            b = total - a
            if a < 2 * b:
                rels.append(adem(algebra, a, b))
    return rels


def steenrod_context(k: int) -> TruncatedContext:
    """Truncated context for the mod-2 Steenrod algebra up to degree k.

    The Adem relations are already a Groebner basis under right-length-lex
    (their leading words Sq^a Sq^b enumerate exactly the inadmissible
    two-letter words), so no completion pass is needed here.
    """
    algebra = steenrod_algebra(k)
    rels = [r.polynomial for r in adem_relations(algebra, k)]
    return TruncatedContext(ReducerSet.canonical(rels, algebra), k)


@dataclass(frozen=True)
class AdmissibleSequence:
    """(a_1, ..., a_n) with a_i >= 2·a_{i+1}, all entries positive."""
    entries: tuple[int, ...]

    def __post_init__(self):
        if not is_admissible(self.entries):
            raise ValueError(f"{self.entries} is not admissible")

    @property
    def degree(self) -> int:
        return sum(self.entries)


def is_admissible(entries) -> bool:
    if any(a <= 0 for a in entries):
        return False
    return all(entries[i] >= 2 * entries[i + 1] for i in range(len(entries) - 1))


@functools.lru_cache(maxsize=None)
def _count_capped(t: int, cap: int) -> int:
    if t == 0:
        return 1
    return sum(_count_capped(t - a, a // 2) for a in range(1, min(t, cap) + 1))


def admissible_count(t: int) -> int:
    """Number of admissible sequences of degree t (the empty sequence counts
    at t = 0).  Direct recursive enumeration, no Groebner machinery."""
    if t < 0:
        raise ValueError("degree must be >= 0")
    return _count_capped(t, t)


def admissible_sequences(t: int) -> list[tuple[int, ...]]:
    """All admissible sequences of degree t, lexicographically sorted."""
    out: list[tuple[int, ...]] = []

    def build(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            out.append(prefix)
            return
        for a in range(1, min(remaining, cap) + 1):
            build(remaining - a, a // 2, prefix + (a,))

    build(t, t, ())
    out.sort()
    return out
