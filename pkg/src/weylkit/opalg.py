"""Noncommutative polynomials in (Q, P) and (a, a+) with canonical rewriting.

The rewriting engine is deliberately brute force: expressions are
expanded into words over the symbol alphabet and adjacent-pair rewrite
rules are applied to exhaustion,

    Q P -> P Q + i        (P-Q target)
    P Q -> Q P - i        (Q-P target)
    a a+ -> a+ a + 1      (normal ordering)

Each swap strictly reduces the number of out-of-order pairs, so the
process terminates; confluence of these rules makes the normal form
independent of the scan strategy.  This module is the ground truth that
every closed-form ordering conversion is tested against.

All values are immutable and the operations are pure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .exactnum import ExactScalar, I, MINUS_I, ONE, SQRT2, ZERO


class UnsupportedSymbolError(ValueError):
    """An operation received a symbol outside its alphabet."""


class Ordering(enum.Enum):
    """Interpretation tag for an :class:`OrderedPolynomial`."""

    PQ = "pq"      # each term (m, r) means P^r Q^m
    QP = "qp"      # each term (m, r) means Q^m P^r
    WEYL = "weyl"  # each term (m, r) means the fully symmetrized Q^m P^r


class LadderOrdering(enum.Enum):
    NORMAL = "normal"          # each term (j, k) means (a+)^j a^k
    ANTINORMAL = "antinormal"  # each term (j, k) means a^k (a+)^j


class Monomial(NamedTuple):
    """Exponent pair: ``m`` powers of Q and ``r`` powers of P."""

    m: int
    r: int

    @property
    def degree(self) -> int:
        return self.m + self.r


def _clean(terms: Iterable[tuple[tuple[int, int], ExactScalar]]) -> dict:
    out: dict[Monomial, ExactScalar] = {}
    for key, coeff in terms:
        mon = Monomial(*key)
        acc = out.get(mon)
        coeff = coeff if acc is None else acc + coeff
        if coeff.is_zero():
            out.pop(mon, None)
        else:
            out[mon] = coeff
    return out


def term_sort_key(mon: Monomial) -> tuple[int, int]:
    """Descending total degree, then descending Q power."""
    return (-mon.degree, -mon.m)


@dataclass(frozen=True)
class OrderedPolynomial:
    """Finite sum of monomials Q^m P^r under a fixed ordering tag."""

    ordering: Ordering
    terms: Mapping[Monomial, ExactScalar] = field(default_factory=dict)

    @classmethod
    def from_terms(
        cls,
        ordering: Ordering,
        terms: Iterable[tuple[tuple[int, int], ExactScalar]],
    ) -> OrderedPolynomial:
        return cls(ordering, _clean(terms))

    @classmethod
    def zero(cls, ordering: Ordering) -> OrderedPolynomial:
        return cls(ordering, {})

    @classmethod
    def monomial(
        cls, ordering: Ordering, m: int, r: int, coeff: ExactScalar = ONE
    ) -> OrderedPolynomial:
        return cls.from_terms(ordering, [((m, r), coeff)])

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Monomial, ExactScalar]]:
        return sorted(self.terms.items(), key=lambda kv: term_sort_key(kv[0]))

    def __add__(self, other: OrderedPolynomial) -> OrderedPolynomial:
        if self.ordering is not other.ordering:
            raise ValueError("cannot add polynomials with different tags")
        return OrderedPolynomial.from_terms(
            self.ordering,
            list(self.terms.items()) + list(other.terms.items()),
        )

    def __neg__(self) -> OrderedPolynomial:
        return self.scale(ExactScalar.from_int(-1))

    def __sub__(self, other: OrderedPolynomial) -> OrderedPolynomial:
        return self + (-other)

    def scale(self, factor: ExactScalar) -> OrderedPolynomial:
        if factor.is_zero():
            return OrderedPolynomial.zero(self.ordering)
        return OrderedPolynomial(
            self.ordering,
            {mon: coeff * factor for mon, coeff in self.terms.items()},
        )

    def max_degree(self) -> int:
        return max((mon.degree for mon in self.terms), default=0)

    def adjoint(self) -> OrderedPolynomial:
        """Formal adjoint: reverse each word, conjugate coefficients.

        Q and P are self-adjoint, so (P^r Q^m)+ = Q^m P^r and the tag
        flips between PQ and QP; the Weyl tag is self-reversing.
        """
        flip = {Ordering.PQ: Ordering.QP, Ordering.QP: Ordering.PQ}
        tag = flip.get(self.ordering, self.ordering)
        return OrderedPolynomial(
            tag, {mon: coeff.conjugate() for mon, coeff in self.terms.items()}
        )


@dataclass(frozen=True)
class LadderPolynomial:
    """Finite sum of ladder words (a+)^j a^k under an ordering tag."""

    ordering: LadderOrdering
    terms: Mapping[tuple[int, int], ExactScalar] = field(default_factory=dict)

    @classmethod
    def from_terms(
        cls,
        ordering: LadderOrdering,
        terms: Iterable[tuple[tuple[int, int], ExactScalar]],
    ) -> LadderPolynomial:
        out: dict[tuple[int, int], ExactScalar] = {}
        for key, coeff in terms:
            acc = out.get(key)
            coeff = coeff if acc is None else acc + coeff
            if coeff.is_zero():
                out.pop(key, None)
            else:
                out[key] = coeff
        return cls(ordering, out)

    def is_zero(self) -> bool:
        return not self.terms


# ---------------------------------------------------------------------------
# Free expressions
# ---------------------------------------------------------------------------


class Symbol(enum.Enum):
    Q = "Q"
    P = "P"
    A = "a"
    ADAG = "adag"


CANONICAL_SYMBOLS = frozenset({Symbol.Q, Symbol.P})
LADDER_SYMBOLS = frozenset({Symbol.A, Symbol.ADAG})

Word = tuple[Symbol, ...]


class FreeExpression:
    """Unreduced parse tree of sums, products and powers of symbols."""

    __slots__ = ()

    def __add__(self, other) -> FreeExpression:
        other = _as_expression(other)
        return SumNode((self, other))

    def __radd__(self, other) -> FreeExpression:
        return _as_expression(other) + self

    def __sub__(self, other) -> FreeExpression:
        return self + (-_as_expression(other))

    def __rsub__(self, other) -> FreeExpression:
        return _as_expression(other) + (-self)

    def __neg__(self) -> FreeExpression:
        return ScalarNode(ExactScalar.from_int(-1)) * self

    def __mul__(self, other) -> FreeExpression:
        other = _as_expression(other)
        return ProductNode((self, other))

    def __rmul__(self, other) -> FreeExpression:
        return _as_expression(other) * self

    def __pow__(self, exponent: int) -> FreeExpression:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("powers take non-negative integer exponents")
        return PowerNode(self, exponent)

    def symbols(self) -> frozenset[Symbol]:
        return frozenset(s for word in self.expand() for s in word)

    def expand(self) -> dict[Word, ExactScalar]:
        """Distribute into a word-indexed linear combination."""
        raise NotImplementedError


@dataclass(frozen=True)
class ScalarNode(FreeExpression):
    __slots__ = ("value",)
    value: ExactScalar

    def expand(self) -> dict[Word, ExactScalar]:
        if self.value.is_zero():
            return {}
        return {(): self.value}


@dataclass(frozen=True)
class SymbolNode(FreeExpression):
    __slots__ = ("symbol",)
    symbol: Symbol

    def expand(self) -> dict[Word, ExactScalar]:
        return {(self.symbol,): ONE}


@dataclass(frozen=True)
class SumNode(FreeExpression):
    __slots__ = ("children",)
    children: tuple[FreeExpression, ...]

    def expand(self) -> dict[Word, ExactScalar]:
        out: dict[Word, ExactScalar] = {}
        for child in self.children:
            for word, coeff in child.expand().items():
                acc = out.get(word)
                coeff = coeff if acc is None else acc + coeff
                if coeff.is_zero():
                    out.pop(word, None)
                else:
                    out[word] = coeff
        return out


@dataclass(frozen=True)
class ProductNode(FreeExpression):
    __slots__ = ("children",)
    children: tuple[FreeExpression, ...]

    def expand(self) -> dict[Word, ExactScalar]:
        out: dict[Word, ExactScalar] = {(): ONE}
        for child in self.children:
            rhs = child.expand()
            nxt: dict[Word, ExactScalar] = {}
            for w1, c1 in out.items():
                for w2, c2 in rhs.items():
                    word = w1 + w2
                    coeff = c1 * c2
                    acc = nxt.get(word)
                    coeff = coeff if acc is None else acc + coeff
                    if coeff.is_zero():
                        nxt.pop(word, None)
                    else:
                        nxt[word] = coeff
            out = nxt
        return out


@dataclass(frozen=True)
class PowerNode(FreeExpression):
    __slots__ = ("base", "exponent")
    base: FreeExpression
    exponent: int

    def expand(self) -> dict[Word, ExactScalar]:
        return ProductNode((self.base,) * self.exponent).expand()


def _as_expression(value) -> FreeExpression:
    if isinstance(value, FreeExpression):
        return value
    if isinstance(value, ExactScalar):
        return ScalarNode(value)
    if isinstance(value, int):
        return ScalarNode(ExactScalar.from_int(value))
    raise TypeError(f"cannot use {value!r} in a free expression")


def scalar(value: ExactScalar | int) -> FreeExpression:
    return _as_expression(value)


Q = SymbolNode(Symbol.Q)
P = SymbolNode(Symbol.P)
A = SymbolNode(Symbol.A)
ADAG = SymbolNode(Symbol.ADAG)


# ---------------------------------------------------------------------------
# Rewriting
# ---------------------------------------------------------------------------


def _rewrite_word(
    word: Word, left: Symbol, right: Symbol, correction: ExactScalar
) -> tuple[dict[tuple[int, int], ExactScalar], int]:
    """Normal-order one word so every `left` stands left of every `right`.

    The rule  right*left -> left*right + correction  is applied at the
    leftmost out-of-order pair until none remains.  Also returns the
    longest chain of rule applications: each application removes an
    inversion from the word it rewrites, so chains are bounded by the
    inversion count and never exceed len(word)**2.
    """
    for sym in word:
        if sym is not left and sym is not right:
            raise UnsupportedSymbolError(
                f"symbol {sym.value!r} not supported by this rewrite"
            )
    out: dict[tuple[int, int], ExactScalar] = {}
    stack: list[tuple[Word, ExactScalar, int]] = [(word, ONE, 0)]
    longest_chain = 0
    while stack:
        current, coeff, chain = stack.pop()
        pos = -1
        for idx in range(len(current) - 1):
            if current[idx] is right and current[idx + 1] is left:
                pos = idx
                break
        if pos < 0:
            longest_chain = max(longest_chain, chain)
            key = (
                sum(1 for s in current if s is right),
                sum(1 for s in current if s is left),
            )
            acc = out.get(key)
            total = coeff if acc is None else acc + coeff
            if total.is_zero():
                out.pop(key, None)
            else:
                out[key] = total
            continue
        swapped = current[:pos] + (left, right) + current[pos + 2 :]
        contracted = current[:pos] + current[pos + 2 :]
        stack.append((swapped, coeff, chain + 1))
        stack.append((contracted, coeff * correction, chain + 1))
    return out, longest_chain


def _rewrite_expression(
    e: FreeExpression, target: Ordering
) -> tuple[OrderedPolynomial, int]:
    if target is Ordering.PQ:
        left, right, correction = Symbol.P, Symbol.Q, I
        key_of = lambda counts: counts  # (m, r) = (#Q, #P)
    else:
        left, right, correction = Symbol.Q, Symbol.P, MINUS_I
        key_of = lambda counts: (counts[1], counts[0])
    terms: list[tuple[tuple[int, int], ExactScalar]] = []
    longest_chain = 0
    for word, coeff in e.expand().items():
        word_terms, chain = _rewrite_word(word, left, right, correction)
        longest_chain = max(longest_chain, chain)
        for counts, c in word_terms.items():
            terms.append((key_of(counts), c * coeff))
    return OrderedPolynomial.from_terms(target, terms), longest_chain


def rewrite_to_pq(e: FreeExpression) -> OrderedPolynomial:
    """Canonical P-Q form of an expression over {Q, P, scalars}."""
    return _rewrite_expression(e, Ordering.PQ)[0]


def rewrite_to_qp(e: FreeExpression) -> OrderedPolynomial:
    """Canonical Q-P form of an expression over {Q, P, scalars}."""
    return _rewrite_expression(e, Ordering.QP)[0]


def _normal_order_ladder_words(
    words: Mapping[Word, ExactScalar],
) -> LadderPolynomial:
    # a * a+ -> a+ * a + 1, applied to exhaustion.
    out: list[tuple[tuple[int, int], ExactScalar]] = []
    for word, coeff in words.items():
        word_terms, _ = _rewrite_word(word, Symbol.ADAG, Symbol.A, ONE)
        # counts = (#A as 'right', #ADAG as 'left') per _rewrite_word:
        # key = (count(right), count(left)) = (#a, #a+); flip to (j, k).
        for (n_a, n_adag), c in word_terms.items():
            out.append(((n_adag, n_a), c * coeff))
    return LadderPolynomial.from_terms(LadderOrdering.NORMAL, out)


def normal_order(e: FreeExpression) -> LadderPolynomial:
    """Normal-order an expression over {a, a+, scalars}."""
    words = e.expand()
    for word in words:
        for sym in word:
            if sym in CANONICAL_SYMBOLS:
                raise UnsupportedSymbolError(
                    "normal_order takes ladder expressions; "
                    "use substitute_ladder for Q/P input"
                )
    return _normal_order_ladder_words(words)


_INV_SQRT2 = SQRT2.invert()
# Q = (a + a+)/sqrt2,  P = (a - a+)/(sqrt2 i)
_LADDER_IMAGE = {
    Symbol.Q: ((Symbol.A, _INV_SQRT2), (Symbol.ADAG, _INV_SQRT2)),
    Symbol.P: (
        (Symbol.A, MINUS_I * _INV_SQRT2),
        (Symbol.ADAG, I * _INV_SQRT2),
    ),
}


def substitute_ladder(e: FreeExpression) -> LadderPolynomial:
    """Rewrite a {Q, P} expression in normal-ordered ladder form."""
    expanded: dict[Word, ExactScalar] = {}
    for word, coeff in e.expand().items():
        partial: dict[Word, ExactScalar] = {(): coeff}
        for sym in word:
            if sym not in _LADDER_IMAGE:
                raise UnsupportedSymbolError(
                    f"substitute_ladder expects Q/P input, got {sym.value!r}"
                )
            nxt: dict[Word, ExactScalar] = {}
            for w, c in partial.items():
                for target, factor in _LADDER_IMAGE[sym]:
                    key = w + (target,)
                    add = c * factor
                    acc = nxt.get(key)
                    add = add if acc is None else acc + add
                    nxt[key] = add
            partial = nxt
        for w, c in partial.items():
            acc = expanded.get(w)
            c = c if acc is None else acc + c
            if c.is_zero():
                expanded.pop(w, None)
            else:
                expanded[w] = c
    return _normal_order_ladder_words(expanded)


def commutator(x: FreeExpression, y: FreeExpression) -> OrderedPolynomial:
    """[x, y] = xy - yx in canonical P-Q form."""
    return rewrite_to_pq(x * y - y * x)


def _qp_monomial_expression(m: int, r: int) -> FreeExpression:
    return ProductNode((Q,) * m + (P,) * r) if m + r else ScalarNode(ONE)


def _pq_monomial_expression(m: int, r: int) -> FreeExpression:
    return ProductNode((P,) * r + (Q,) * m) if m + r else ScalarNode(ONE)


def to_expression(p: OrderedPolynomial) -> FreeExpression:
    """Explicit word form of a PQ- or QP-tagged polynomial."""
    if p.ordering is Ordering.WEYL:
        raise UnsupportedSymbolError(
            "Weyl-tagged polynomials have no direct word form; convert first"
        )
    build = (
        _pq_monomial_expression
        if p.ordering is Ordering.PQ
        else _qp_monomial_expression
    )
    parts = [
        ScalarNode(coeff) * build(mon.m, mon.r)
        for mon, coeff in p.sorted_terms()
    ]
    if not parts:
        return ScalarNode(ZERO)
    return SumNode(tuple(parts))


def canonical_pq(p: OrderedPolynomial) -> OrderedPolynomial:
    """Funnel any tag to the canonical P-Q form."""
    if p.ordering is Ordering.PQ:
        return p
    if p.ordering is Ordering.QP:
        return rewrite_to_pq(to_expression(p))
    from . import ordering as _ordering  # deferred: avoids import cycle

    return _ordering.convert(p, Ordering.PQ)


def poly_equal(x: OrderedPolynomial, y: OrderedPolynomial) -> bool:
    """Operator equality, decided on canonical P-Q forms."""
    return canonical_pq(x).terms == canonical_pq(y).terms
