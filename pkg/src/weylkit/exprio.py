"""Parser and pretty-printer for operator expressions.

Surface syntax (ASCII only; explicit operators, no implicit products):

    expr    := ['-'] term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := '-' unary | factor
    factor  := primary ('^' uint)?
    primary := scalar | symbol | '(' expr ')' | ordering-block
    scalar  := integer | integer '/' integer | 'i' | 'r2'
    symbol  := 'Q' | 'P' | 'a' | 'adag'
    block   := ('pq{' | 'qp{' | 'weyl{') expr '}'

Outside an ordering block, products are noncommutative and the result
is a :class:`FreeExpression`.  Inside a block the symbols commute and
the block denotes an :class:`OrderedPolynomial` with that tag; ladder
symbols are not allowed there.  A block standing alone parses to the
polynomial itself; a block embedded in a larger expression is spliced
in as its explicit P-Q word expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import ordering as _conv
from .exactnum import ExactScalar, I, ONE, SQRT2
from .opalg import (
    FreeExpression,
    Monomial,
    OrderedPolynomial,
    Ordering,
    PowerNode,
    ProductNode,
    ScalarNode,
    SumNode,
    Symbol,
    SymbolNode,
    to_expression,
)


class ParseError(ValueError):
    """Syntax or semantic error with a source span."""

    def __init__(
        self,
        message: str,
        span: tuple[int, int],
        expected: frozenset[str] = frozenset(),
    ):
        super().__init__(message)
        self.message = message
        self.span = span
        self.expected = expected

    def pretty(self, source: str) -> str:
        start, end = self.span
        caret = " " * start + "^" * max(1, end - start)
        lines = [self.message, "  " + source, "  " + caret]
        if self.expected:
            lines.append("expected: " + ", ".join(sorted(self.expected)))
        return "\n".join(lines)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


_SYMBOLS = {
    "Q": Symbol.Q,
    "P": Symbol.P,
    "a": Symbol.A,
    "adag": Symbol.ADAG,
}
_ORDER_TAGS = {"pq": Ordering.PQ, "qp": Ordering.QP, "weyl": Ordering.WEYL}
_PUNCT = {
    "+": "plus",
    "-": "minus",
    "*": "star",
    "^": "caret",
    "(": "lparen",
    ")": "rparen",
    "}": "rbrace",
}


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    size = len(text)
    while pos < size:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, pos, pos + 1))
            pos += 1
            continue
        if ch.isdigit():
            end = pos + 1
            while end < size and text[end].isdigit():
                end += 1
            if end < size and text[end] == "/":
                den_start = end + 1
                den_end = den_start
                while den_end < size and text[den_end].isdigit():
                    den_end += 1
                if den_end == den_start:
                    raise ParseError(
                        "rational literal needs digits after '/'",
                        (pos, den_start),
                    )
                tokens.append(
                    Token("rational", text[pos:den_end], pos, den_end)
                )
                pos = den_end
            else:
                tokens.append(Token("int", text[pos:end], pos, end))
                pos = end
            continue
        if ch.isalpha():
            end = pos + 1
            while end < size and (text[end].isalnum() or text[end] == "_"):
                end += 1
            word = text[pos:end]
            if word in _ORDER_TAGS:
                if end < size and text[end] == "{":
                    tokens.append(Token("order_open", word, pos, end + 1))
                    pos = end + 1
                    continue
                raise ParseError(
                    f"ordering tag {word!r} must be followed by '{{'",
                    (pos, end),
                    frozenset(["{"]),
                )
            if word == "i":
                tokens.append(Token("imag", word, pos, end))
            elif word == "r2":
                tokens.append(Token("sqrt2", word, pos, end))
            elif word in _SYMBOLS:
                tokens.append(Token("symbol", word, pos, end))
            else:
                raise ParseError(
                    f"unknown symbol {word!r}",
                    (pos, end),
                    frozenset(["Q", "P", "a", "adag", "i", "r2"]),
                )
            pos = end
            continue
        raise ParseError(f"unexpected character {ch!r}", (pos, pos + 1))
    tokens.append(Token("eof", "", size, size))
    return tokens


# Commutative block bodies accumulate exponent-pair terms directly.
_CommTerms = dict  # {(m, r): ExactScalar}


def _comm_scalar(value: ExactScalar) -> _CommTerms:
    return {} if value.is_zero() else {(0, 0): value}


def _comm_add(x: _CommTerms, y: _CommTerms) -> _CommTerms:
    out = dict(x)
    for key, coeff in y.items():
        acc = out.get(key)
        coeff = coeff if acc is None else acc + coeff
        if coeff.is_zero():
            out.pop(key, None)
        else:
            out[key] = coeff
    return out


def _comm_mul(x: _CommTerms, y: _CommTerms) -> _CommTerms:
    out: _CommTerms = {}
    for (m1, r1), c1 in x.items():
        for (m2, r2), c2 in y.items():
            key = (m1 + m2, r1 + r2)
            coeff = c1 * c2
            acc = out.get(key)
            coeff = coeff if acc is None else acc + coeff
            if coeff.is_zero():
                out.pop(key, None)
            else:
                out[key] = coeff
    return out


def _comm_neg(x: _CommTerms) -> _CommTerms:
    minus_one = ExactScalar.from_int(-1)
    return {key: coeff * minus_one for key, coeff in x.items()}


def _comm_pow(x: _CommTerms, n: int) -> _CommTerms:
    out = _comm_scalar(ONE)
    for _ in range(n):
        out = _comm_mul(out, x)
    return out


def _rational_value(token: Token) -> ExactScalar:
    try:
        return ExactScalar(Fraction(token.text))
    except ZeroDivisionError:
        raise ParseError(
            "rational literal has zero denominator", token.span
        ) from None


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind: str) -> Token:
        token = self.peek()
        if token.kind != kind:
            raise ParseError(
                f"expected {kind}, found {token.text or 'end of input'!r}",
                token.span,
                frozenset([kind]),
            )
        return self.advance()

    def fail_junk(self, token: Token):
        raise ParseError(
            f"unexpected {token.text or 'end of input'!r}; "
            f"operators must be explicit",
            token.span,
            frozenset(["+", "-", "*", "^"]),
        )

    # -- free (noncommutative) grammar --------------------------------

    def parse_input(self) -> FreeExpression | OrderedPolynomial:
        # A lone ordering block yields the polynomial itself.
        if self.peek().kind == "order_open":
            mark = self.pos
            block = self.parse_block()
            if self.peek().kind == "eof":
                return block
            self.pos = mark
        expr = self.parse_expr()
        self.expect("eof")
        return expr

    def parse_expr(self) -> FreeExpression:
        parts = []
        negate = False
        if self.peek().kind == "minus":
            self.advance()
            negate = True
        term = self.parse_term()
        parts.append(-term if negate else term)
        while self.peek().kind in ("plus", "minus"):
            op = self.advance()
            term = self.parse_term()
            parts.append(-term if op.kind == "minus" else term)
        return parts[0] if len(parts) == 1 else SumNode(tuple(parts))

    def parse_term(self) -> FreeExpression:
        factors = [self.parse_unary()]
        while self.peek().kind == "star":
            self.advance()
            factors.append(self.parse_unary())
        token = self.peek()
        if token.kind not in ("plus", "minus", "rparen", "rbrace", "eof"):
            self.fail_junk(token)
        return factors[0] if len(factors) == 1 else ProductNode(tuple(factors))

    def parse_unary(self) -> FreeExpression:
        if self.peek().kind == "minus":
            self.advance()
            return -self.parse_unary()
        return self.parse_factor()

    def parse_factor(self) -> FreeExpression:
        base = self.parse_primary()
        if self.peek().kind == "caret":
            self.advance()
            exponent = self.expect("int")
            return PowerNode(base, int(exponent.text))
        return base

    def parse_primary(self) -> FreeExpression:
        token = self.peek()
        if token.kind == "int":
            self.advance()
            return ScalarNode(ExactScalar(Fraction(int(token.text))))
        if token.kind == "rational":
            self.advance()
            return ScalarNode(_rational_value(token))
        if token.kind == "imag":
            self.advance()
            return ScalarNode(I)
        if token.kind == "sqrt2":
            self.advance()
            return ScalarNode(SQRT2)
        if token.kind == "symbol":
            self.advance()
            return SymbolNode(_SYMBOLS[token.text])
        if token.kind == "lparen":
            self.advance()
            inner = self.parse_expr()
            self.expect("rparen")
            return inner
        if token.kind == "order_open":
            block = self.parse_block()
            # Embedded block: splice in its explicit word expansion.
            if block.ordering is Ordering.WEYL:
                block = _conv.convert(block, Ordering.PQ)
            return to_expression(block)
        raise ParseError(
            f"expected a value, found {token.text or 'end of input'!r}",
            token.span,
            frozenset(["scalar", "symbol", "(", "pq{", "qp{", "weyl{"]),
        )

    # -- commutative block grammar -------------------------------------

    def parse_block(self) -> OrderedPolynomial:
        open_token = self.expect("order_open")
        tag = _ORDER_TAGS[open_token.text]
        terms = self.parse_comm_expr()
        self.expect("rbrace")
        return OrderedPolynomial.from_terms(tag, terms.items())

    def parse_comm_expr(self) -> _CommTerms:
        negate = False
        if self.peek().kind == "minus":
            self.advance()
            negate = True
        total = self.parse_comm_term()
        if negate:
            total = _comm_neg(total)
        while self.peek().kind in ("plus", "minus"):
            op = self.advance()
            term = self.parse_comm_term()
            total = _comm_add(
                total, _comm_neg(term) if op.kind == "minus" else term
            )
        return total

    def parse_comm_term(self) -> _CommTerms:
        total = self.parse_comm_unary()
        while self.peek().kind == "star":
            self.advance()
            total = _comm_mul(total, self.parse_comm_unary())
        token = self.peek()
        if token.kind not in ("plus", "minus", "rparen", "rbrace", "eof"):
            self.fail_junk(token)
        return total

    def parse_comm_unary(self) -> _CommTerms:
        if self.peek().kind == "minus":
            self.advance()
            return _comm_neg(self.parse_comm_unary())
        return self.parse_comm_factor()

    def parse_comm_factor(self) -> _CommTerms:
        base = self.parse_comm_primary()
        if self.peek().kind == "caret":
            self.advance()
            exponent = self.expect("int")
            return _comm_pow(base, int(exponent.text))
        return base

    def parse_comm_primary(self) -> _CommTerms:
        token = self.peek()
        if token.kind == "int":
            self.advance()
            return _comm_scalar(ExactScalar(Fraction(int(token.text))))
        if token.kind == "rational":
            self.advance()
            return _comm_scalar(_rational_value(token))
        if token.kind == "imag":
            self.advance()
            return _comm_scalar(I)
        if token.kind == "sqrt2":
            self.advance()
            return _comm_scalar(SQRT2)
        if token.kind == "symbol":
            self.advance()
            sym = _SYMBOLS[token.text]
            if sym is Symbol.Q:
                return {(1, 0): ONE}
            if sym is Symbol.P:
                return {(0, 1): ONE}
            raise ParseError(
                "ladder symbols cannot appear inside an ordering block",
                token.span,
            )
        if token.kind == "lparen":
            self.advance()
            inner = self.parse_comm_expr()
            self.expect("rparen")
            return inner
        if token.kind == "order_open":
            raise ParseError(
                "ordering blocks cannot nest", token.span
            )
        raise ParseError(
            f"expected a value, found {token.text or 'end of input'!r}",
            token.span,
            frozenset(["scalar", "Q", "P", "("]),
        )


def parse(text: str) -> FreeExpression | OrderedPolynomial:
    """Parse surface syntax; blocks alone give tagged polynomials."""
    if not isinstance(text, str):
        raise ParseError("input must be text", (0, 0))
    return _Parser(text).parse_input()


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _component_count(value: ExactScalar) -> int:
    return sum(1 for f in (value.ra, value.ia, value.rb, value.ib) if f != 0)


def _word_text(mon: Monomial, tag: Ordering) -> str:
    q_part = "Q" if mon.m == 1 else (f"Q^{mon.m}" if mon.m else "")
    p_part = "P" if mon.r == 1 else (f"P^{mon.r}" if mon.r else "")
    if tag is Ordering.PQ:
        parts = [p_part, q_part]
    else:
        parts = [q_part, p_part]
    return "*".join(x for x in parts if x)


def _term_text(mon: Monomial, coeff: ExactScalar, tag: Ordering) -> str:
    word = _word_text(mon, tag)
    if not word:
        text = coeff.render()
        return f"({text})" if _component_count(coeff) > 1 else text
    if coeff == ONE:
        return word
    if coeff == ExactScalar.from_int(-1):
        return "-" + word
    if _component_count(coeff) > 1:
        return f"({coeff.render()})*{word}"
    return f"{coeff.render()}*{word}"


def render_terms(p: OrderedPolynomial) -> str:
    """Body text without the ordering wrapper, e.g. ``P*Q + i``."""
    if p.is_zero():
        return "0"
    return " + ".join(
        _term_text(mon, coeff, p.ordering) for mon, coeff in p.sorted_terms()
    )


def render(p: OrderedPolynomial) -> str:
    """Re-parseable text: the body wrapped in its ordering block."""
    if p.is_zero():
        return "0"
    return f"{p.ordering.value}{{{render_terms(p)}}}"


# ---------------------------------------------------------------------------
# JSON forms
# ---------------------------------------------------------------------------


def scalar_to_json(value: ExactScalar) -> dict:
    return {
        "ra": str(value.ra),
        "ia": str(value.ia),
        "rb": str(value.rb),
        "ib": str(value.ib),
    }


def polynomial_to_json(p: OrderedPolynomial) -> dict:
    return {
        "node": "polynomial",
        "ordering": p.ordering.value,
        "terms": [
            {"m": mon.m, "r": mon.r, "coeff": scalar_to_json(coeff)}
            for mon, coeff in p.sorted_terms()
        ],
    }


def expression_to_json(e: FreeExpression) -> dict:
    if isinstance(e, ScalarNode):
        return {"node": "scalar", "value": scalar_to_json(e.value)}
    if isinstance(e, SymbolNode):
        return {"node": "symbol", "name": e.symbol.value}
    if isinstance(e, SumNode):
        return {
            "node": "sum",
            "children": [expression_to_json(c) for c in e.children],
        }
    if isinstance(e, ProductNode):
        return {
            "node": "product",
            "children": [expression_to_json(c) for c in e.children],
        }
    if isinstance(e, PowerNode):
        return {
            "node": "power",
            "base": expression_to_json(e.base),
            "exponent": e.exponent,
        }
    raise TypeError(f"not a free expression: {e!r}")


def to_json_ast(obj: FreeExpression | OrderedPolynomial) -> dict:
    if isinstance(obj, OrderedPolynomial):
        return polynomial_to_json(obj)
    return expression_to_json(obj)
