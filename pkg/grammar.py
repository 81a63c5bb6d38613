"""
Tokenizer and recursive-descent parser for the polynomial, fraction and map literals.

    poly := term (('+'|'-') term)*
    term := factor ('*' factor)*
    factor := '-' factor | atom ('^' nat)?
    atom := int | decimal | var | '(' poly ('/' poly)? ')'
    frac := poly ('/' poly)?
    map  := 'map' nat '->' nat '{' (frac (';' frac)*)? '}' '|' '{' (poly (',' poly)*)? '}'

A '/' inside parentheses must divide by a nonzero constant, so ``(1/3)*x1`` is the
rational coefficient form the printer emits.
"""
from dataclasses import dataclass
from fractions import Fraction
import re

from errors import ArityError, ParseError
from poly import Poly

_TOKEN_SPEC = [
    ('DECIMAL', r'\d+\.\d+'),
    ('INT', r'\d+'),
    ('VAR', r'x\d+'),
    ('MAP', r'map\b'),
    ('ARROW', r'->'),
    ('OP', r'[-+*^/(){};,|]'),
    ('NEWLINE', r'\n'),
    ('SKIP', r'[ \t\r]+'),
    ('MISMATCH', r'.'),
]
_TOKEN_RE = re.compile('|'.join(f'(?P<{name}>{pattern})' for name, pattern in _TOKEN_SPEC))
MAX_VARIABLE = 99


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    tokens = []
    line, line_start = 1, 0
    for match in _TOKEN_RE.finditer(text):
        kind = match.lastgroup
        column = match.start() - line_start + 1
        if kind == 'NEWLINE':
            line += 1
            line_start = match.end()
            continue
        if kind == 'SKIP':
            continue
        if kind == 'MISMATCH':
            raise ParseError(f"unexpected character {match.group()!r}", line, column)
        tokens.append(Token(kind, match.group(), line, column))
    tokens.append(Token('EOF', '', line, len(text) - line_start + 1))
    return tokens


@dataclass(frozen=True)
class MapLiteral:
    n: int
    m: int
    components: tuple  # of (numerator Poly, denominator Poly)
    gens: tuple


class Parser:
    def __init__(self, text, ring):
        self.ring = ring
        self.tokens = tokenize(text)
        self.pos = 0
        self.max_var = 0

    # --- token helpers ---

    @property
    def current(self):
        return self.tokens[self.pos]

    def _error(self, message, token=None):
        token = token or self.current
        return ParseError(message, token.line, token.column)

    def _accept(self, text):
        if self.current.text == text and self.current.kind in ('OP', 'ARROW', 'MAP'):
            self.pos += 1
            return True
        return False

    def _expect(self, text):
        if not self._accept(text):
            found = self.current.text or 'end of input'
            raise self._error(f"expected '{text}' but found '{found}'")

    def _expect_nat(self):
        token = self.current
        if token.kind != 'INT':
            raise self._error(f"expected a natural number but found '{token.text or 'end of input'}'")
        self.pos += 1
        return int(token.text)

    def expect_end(self):
        if self.current.kind != 'EOF':
            raise self._error(f"unexpected '{self.current.text}' after end of expression")

    # --- grammar ---

    def poly(self):
        result = self.term()
        while self.current.text in ('+', '-') and self.current.kind == 'OP':
            op = self.current.text
            self.pos += 1
            rhs = self.term()
            result = result + rhs if op == '+' else result - rhs
        return result

    def term(self):
        result = self.factor()
        while self._accept('*'):
            result = result * self.factor()
        return result

    def factor(self):
        if self._accept('-'):
            return -self.factor()
        base = self.atom()
        if self._accept('^'):
            return base ** self._expect_nat()
        return base

    def atom(self):
        token = self.current
        if token.kind == 'INT':
            self.pos += 1
            return Poly.constant(self.ring, int(token.text))
        if token.kind == 'DECIMAL':
            self.pos += 1
            return Poly.constant(self.ring, Fraction(token.text))
        if token.kind == 'VAR':
            index = int(token.text[1:])
            if not 1 <= index <= MAX_VARIABLE:
                raise self._error(f"variable {token.text} is outside x1..x{MAX_VARIABLE}", token)
            self.pos += 1
            self.max_var = max(self.max_var, index)
            return Poly.var(self.ring, index)
        if self._accept('('):
            inner = self.poly()
            if self._accept('/'):
                divisor_token = self.current
                divisor = self.poly()
                if not divisor.is_constant() or divisor.is_zero():
                    raise self._error("division inside a polynomial must be by a nonzero constant", divisor_token)
                inner = inner.scale(Fraction(1) / Fraction(divisor.constant_value())) if self.ring == 'Q' \
                    else _integral_quotient(inner, divisor.constant_value(), self, divisor_token)
            self._expect(')')
            return inner
        raise self._error(f"expected a number, variable or '(' but found '{token.text or 'end of input'}'")

    def frac(self):
        num = self.poly()
        if self._accept('/'):
            den = self.poly()
        else:
            den = Poly.one(self.ring)
        return num, den

    def map_literal(self):
        self._expect('map')
        n = self._expect_nat()
        self._expect('->')
        m = self._expect_nat()
        self._expect('{')
        components = []
        if self.current.text != '}':
            components.append(self.frac())
            while self._accept(';'):
                components.append(self.frac())
        brace = self.current
        self._expect('}')
        if len(components) != m:
            raise ArityError(f"map declares {m} components but lists {len(components)} "
                             f"(line {brace.line}, column {brace.column})")
        self._expect('|')
        self._expect('{')
        gens = []
        if self.current.text != '}':
            gens.append(self.poly())
            while self._accept(','):
                gens.append(self.poly())
        self._expect('}')
        if self.max_var > n:
            raise ArityError(f"map from {n} variables uses x{self.max_var}")
        components = tuple((p.with_nvars(n), q.with_nvars(n)) for p, q in components)
        gens = tuple(g.with_nvars(n) for g in gens)
        return MapLiteral(n, m, components, gens)


def _integral_quotient(inner, divisor, parser, token):
    scaled = {}
    for exponents, coeff in inner.terms.items():
        if coeff % divisor:
            raise parser._error(f"{inner} is not divisible by {divisor} over the integers", token)
        scaled[exponents] = coeff // divisor
    return Poly(inner.ring, scaled, inner.nvars)


def parse_poly(text, ring='Z'):
    parser = Parser(text, ring)
    result = parser.poly()
    parser.expect_end()
    return result


def parse_frac(text, ring='Z'):
    """Parse ``p / q`` (or a bare polynomial, read as p / 1) into a (num, den) pair."""
    parser = Parser(text, ring)
    result = parser.frac()
    parser.expect_end()
    nvars = max(result[0].nvars, result[1].nvars)
    return result[0].with_nvars(nvars), result[1].with_nvars(nvars)


def parse_map_literal(text, ring='Z'):
    parser = Parser(text, ring)
    result = parser.map_literal()
    parser.expect_end()
    return result


def format_frac(num, den):
    def wrap(p):
        text = str(p)
        return text if len(p.terms) <= 1 and not text.startswith('-') else f"({text})"
    if den.is_constant() and den.constant_value() == 1:
        return str(num)
    return f"{wrap(num)}/{wrap(den)}"
