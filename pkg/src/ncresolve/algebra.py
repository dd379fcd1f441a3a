"""Free graded algebra over a prime field: generators, words, orders, polynomials.

Monomials are plain tuples of generator indices (the empty tuple is the unit).
Polynomials keep their terms sorted in descending order of the algebra's
monomial order, so leading data is O(1).  The algebra only materializes
finitely many generators; anything needed above the working truncation degree
cannot occur in a bounded-degree computation.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping, Sequence

Word = tuple  # tuple[int, ...], indices into a GeneratorTable

LT, EQ, GT = -1, 0, 1


class ConfigurationError(ValueError):
    """Operands disagree on field/generator table, or a setup is invalid."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)


class ContractViolation(RuntimeError):
    """An internal invariant that callers rely on failed to hold."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """Arithmetic descriptor for F_p; elements are plain ints in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not is_prime(p):
            raise ConfigurationError(f"field modulus must be prime, got {p}")
        self.p = p

    def normalize(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class MonomialOrder:
    """Length-first word order; ties broken at the leftmost or rightmost
    differing generator index (larger index wins there).

    Both kinds satisfy the two monomial-ordering axioms: the order is
    multiplicative (X < Y implies UXV < UYV) and proper factors are smaller.
    """

    LEFT = "left-length-lex"
    RIGHT = "right-length-lex"

    __slots__ = ("kind",)

    def __init__(self, kind: str):
        if kind not in (self.LEFT, self.RIGHT):
            raise ConfigurationError(f"unknown monomial order {kind!r}")
        self.kind = kind

    def key(self, word: Word):
        """Sort key: ascending under the order."""
        if self.kind == self.LEFT:
            return (len(word), word)
        return (len(word), word[::-1])

    def compare(self, x: Word, y: Word) -> int:
        """Return LT, EQ or GT (-1, 0, 1) for x against y."""
        kx, ky = self.key(x), self.key(y)
        if kx < ky:
            return LT
        if kx > ky:
            return GT
        return EQ

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.kind == other.kind

    def __hash__(self):
        return hash(("MonomialOrder", self.kind))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r})"


LEFT_LENGTH_LEX = MonomialOrder(MonomialOrder.LEFT)
RIGHT_LENGTH_LEX = MonomialOrder(MonomialOrder.RIGHT)


class GeneratorTable:
    """Ordered list of (name, degree) generators with strictly positive degrees."""

    __slots__ = ("names", "degrees", "_index")

    def __init__(self, generators: Iterable[tuple[str, int]]):
        names = []
        degrees = []
        for name, degree in generators:
            if degree <= 0:
                raise ConfigurationError(f"generator {name!r} has degree {degree} <= 0")
            names.append(str(name))
            degrees.append(int(degree))
        if len(set(names)) != len(names):
            raise ConfigurationError("generator names must be unique")
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self._index = {n: i for i, n in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(zip(self.names, self.degrees))

    def __eq__(self, other):
        return (isinstance(other, GeneratorTable)
                and self.names == other.names and self.degrees == other.degrees)

    def __hash__(self):
        return hash((self.names, self.degrees))


_TERM_RE = re.compile(r"^(\d+)(?:\s+(\S.*))?$")


class FreeAlgebra:
    """Context object: generator table, prime field and monomial order.

    All polynomials carry a reference to their algebra; mixing values from
    different algebras raises ConfigurationError.
    """

    __slots__ = ("table", "field", "order")

    def __init__(self, generators: Iterable[tuple[str, int]], p: int = 2,
                 order: MonomialOrder | str = LEFT_LENGTH_LEX):
        self.table = GeneratorTable(generators)
        self.field = PrimeField(p)
        self.order = MonomialOrder(order) if isinstance(order, str) else order

    # -- words ---------------------------------------------------------

    def word_degree(self, word: Word) -> int:
        degrees = self.table.degrees
        return sum(degrees[i] for i in word)

    def format_word(self, word: Word) -> str:
        if not word:
            return "1"
        names = self.table.names
        return "*".join(names[i] for i in word)

    # -- polynomial construction ----------------------------------------

    def poly(self, terms: Mapping[Word, int] | Iterable[tuple[Word, int]]) -> "Polynomial":
        return Polynomial(self, terms)

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return Polynomial(self, {(): 1})

    def monomial(self, word: Word, coeff: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(word): coeff})

    def gen(self, i: int) -> "Polynomial":
        return self.monomial((i,))

    def gen_by_name(self, name: str) -> "Polynomial":
        return self.monomial((self.table.index(name),))

    # -- text I/O --------------------------------------------------------
    #
    # Term syntax: terms joined by `+` (or `-`), factors joined by `*`,
    # integer coefficients prefixed with a space and omitted when 1; the
    # unit monomial is `1` and the zero polynomial is `0`.

    def parse(self, text: str) -> "Polynomial":
        terms: dict[Word, int] = {}
        pos = 0
        sign = 1
        n = len(text)
        while pos < n:
            while pos < n and text[pos].isspace():
                pos += 1
            if pos >= n:
                break
            start = pos
            while pos < n and text[pos] not in "+-":
                pos += 1
            chunk = text[start:pos].strip()
            if not chunk:
                raise ParseError("empty term", start)
            self._parse_term(chunk, start, sign, terms)
            if pos < n:
                sign = 1 if text[pos] == "+" else -1
                pos += 1
                if pos >= n or text[pos:].strip() == "":
                    raise ParseError("dangling sign", pos - 1)
        if not terms and text.strip() == "":
            raise ParseError("empty polynomial", 0)
        return Polynomial(self, terms)

    def _parse_term(self, chunk: str, offset: int, sign: int, terms: dict) -> None:
        if chunk == "0":
            return
        m = _TERM_RE.match(chunk)
        if m and m.group(2) is None:
            coeff, rest = int(m.group(1)), None
        elif m:
            coeff, rest = int(m.group(1)), m.group(2)
        else:
            coeff, rest = 1, chunk
        word: list[int] = []
        if rest is not None:
            col = offset + chunk.find(rest)
            for factor in rest.split("*"):
                factor = factor.strip()
                if factor == "1":
                    continue
                if not factor:
                    raise ParseError("empty factor", col)
                try:
                    word.append(self.table.index(factor))
                except KeyError:
                    raise ParseError(f"unknown generator {factor!r}", col) from None
        key = tuple(word)
        terms[key] = self.field.add(terms.get(key, 0), sign * coeff)
        if terms[key] == 0:
            del terms[key]

    def __eq__(self, other):
        return (isinstance(other, FreeAlgebra) and self.table == other.table
                and self.field == other.field and self.order == other.order)

    def __hash__(self):
        return hash((self.table, self.field, self.order))

    def __repr__(self):
        gens = ",".join(self.table.names[:4]) + ("..." if len(self.table) > 4 else "")
        return f"FreeAlgebra(<{gens}>, p={self.field.p}, {self.order.kind})"


def _check_same_algebra(a: "Polynomial", b: "Polynomial") -> None:
    if a.algebra is not b.algebra and a.algebra != b.algebra:
        raise ConfigurationError("polynomials belong to different algebras")


class Polynomial:
    """Immutable formal sum of field-coefficient terms over words.

    `terms` is a tuple of (word, coeff) pairs, strictly descending under the
    algebra's monomial order, with no zero coefficients.  The zero polynomial
    has an empty term tuple and plays the paper-style sentinel role:
    lm/lt are None and lc is 0.
    """

    __slots__ = ("algebra", "terms", "_degree")

    def __init__(self, algebra: FreeAlgebra,
                 terms: Mapping[Word, int] | Iterable[tuple[Word, int]]):
        self.algebra = algebra
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, int] = {}
        p = algebra.field.p
        for word, coeff in items:
            word = tuple(word)
            c = (acc.get(word, 0) + coeff) % p
            if c:
                acc[word] = c
            elif word in acc:
                del acc[word]
        key = algebra.order.key
        self.terms = tuple(sorted(acc.items(), key=lambda t: key(t[0]), reverse=True))
        self._degree = max((algebra.word_degree(w) for w, _ in self.terms), default=None)

    # -- leading data -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def lm(self) -> Word | None:
        return self.terms[0][0] if self.terms else None

    @property
    def lc(self) -> int:
        return self.terms[0][1] if self.terms else 0

    @property
    def lt(self) -> tuple[Word, int] | None:
        return self.terms[0] if self.terms else None

    def leading(self) -> tuple[Word | None, int, tuple[Word, int] | None]:
        """(lm, lc, lt) with the explicit zero sentinel (None, 0, None)."""
        return (self.lm, self.lc, self.lt)

    def degree(self) -> int | None:
        """Maximal term degree; None for the zero polynomial."""
        return self._degree

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        wd = self.algebra.word_degree
        return len({wd(w) for w, _ in self.terms}) == 1

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        _check_same_algebra(self, other)
        acc = dict(self.terms)
        p = self.algebra.field.p
        for w, c in other.terms:
            nc = (acc.get(w, 0) + c) % p
            if nc:
                acc[w] = nc
            elif w in acc:
                del acc[w]
        return Polynomial(self.algebra, acc)

    def __neg__(self) -> "Polynomial":
        p = self.algebra.field.p
        return Polynomial(self.algebra, {w: p - c for w, c in self.terms})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: int) -> "Polynomial":
        c = self.algebra.field.normalize(c)
        if c == 0:
            return self.algebra.zero()
        return Polynomial(self.algebra, {w: cc * c for w, cc in self.terms})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        _check_same_algebra(self, other)
        acc: dict[Word, int] = {}
        p = self.algebra.field.p
        for wa, ca in self.terms:
            for wb, cb in other.terms:
                w = wa + wb
                nc = (acc.get(w, 0) + ca * cb) % p
                if nc:
                    acc[w] = nc
                elif w in acc:
                    del acc[w]
        return Polynomial(self.algebra, acc)

    def word_mul(self, left: Word = (), right: Word = ()) -> "Polynomial":
        """U * self * V for words U, V."""
        left, right = tuple(left), tuple(right)
        return Polynomial(self.algebra,
                          {left + w + right: c for w, c in self.terms})

    def monic(self) -> "Polynomial":
        if not self.terms:
            raise ValueError("zero polynomial cannot be made monic")
        c = self.terms[0][1]
        if c == 1:
            return self
        return self.scale(self.algebra.field.inv(c))

    # -- misc --------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.algebra == other.algebra
                and self.terms == other.terms)

    def __hash__(self):
        return hash(self.terms)

    def __iter__(self) -> Iterator[tuple[Word, int]]:
        return iter(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        fmt = self.algebra.format_word
        parts = []
        for w, c in self.terms:
            if not w:
                parts.append(str(c))
            elif c == 1:
                parts.append(fmt(w))
            else:
                parts.append(f"{c} {fmt(w)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


def compare(order: MonomialOrder, x: Word, y: Word) -> int:
    """Compare two words under `order`; returns LT, EQ or GT."""
    return order.compare(x, y)
