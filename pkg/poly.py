"""
Exact multivariate polynomials over the integers (ring 'Z') and rationals (ring 'Q').

Values are immutable sparse maps from exponent tuples (trailing zeros stripped)
to nonzero coefficients.  Terms are ordered graded-lexicographically with
x1 > x2 > ... .  gcd, exact division and square-free parts go through
sympy's sparse polynomial machinery; everything else is done here.
"""
from fractions import Fraction
from functools import reduce
import math

import sympy
from sympy.polys.domains import ZZ, QQ

from errors import ArityError, DivisionError, NonExactDivisionError, RingMismatchError

RING_Z = 'Z'
RING_Q = 'Q'
RINGS = (RING_Z, RING_Q)


def _strip(exponents):
    exponents = tuple(int(e) for e in exponents)
    end = len(exponents)
    while end and exponents[end - 1] == 0:
        end -= 1
    return exponents[:end]


def _coerce(ring, value):
    """Bring a scalar into the coefficient type of ``ring``."""
    if ring == RING_Z:
        if isinstance(value, bool):
            return int(value)
        if isinstance(value, int):
            return value
        value = Fraction(value)
        if value.denominator != 1:
            raise RingMismatchError(RING_Z, RING_Q)
        return value.numerator
    if ring == RING_Q:
        return Fraction(value)
    raise RingMismatchError(ring, RINGS)


def grlex_key(exponents):
    return (sum(exponents), exponents)


def _add_exponents(a, b):
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))


class Poly:
    """A polynomial in x1..x_nvars with exact coefficients."""

    __slots__ = ('ring', '_terms', 'nvars', '_hash')

    def __init__(self, ring, terms=None, nvars=0):
        if ring not in RINGS:
            raise RingMismatchError(ring, RINGS)
        cleaned = {}
        for exponents, coeff in (terms or {}).items():
            key = _strip(exponents)
            value = _coerce(ring, coeff)
            if value == 0:
                continue
            total = cleaned.get(key, 0) + value
            if total == 0:
                cleaned.pop(key, None)
            else:
                cleaned[key] = total
        used = max((len(e) for e in cleaned), default=0)
        self.ring = ring
        self._terms = cleaned
        self.nvars = max(int(nvars), used)
        self._hash = None

    # --- Constructors ---

    @classmethod
    def constant(cls, ring, value, nvars=0):
        return cls(ring, {(): value}, nvars)

    @classmethod
    def zero(cls, ring, nvars=0):
        return cls(ring, {}, nvars)

    @classmethod
    def one(cls, ring, nvars=0):
        return cls(ring, {(): 1}, nvars)

    @classmethod
    def var(cls, ring, k, nvars=None):
        if k < 1:
            raise ArityError(f"variable index must be >= 1, got {k}")
        exponents = (0,) * (k - 1) + (1,)
        return cls(ring, {exponents: 1}, nvars if nvars is not None else k)

    # --- Basic queries ---

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def used_vars(self):
        return max((len(e) for e in self._terms), default=0)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(e == () for e in self._terms)

    def constant_value(self):
        if not self.is_constant():
            raise ArityError(f"{self} is not a constant")
        return self._terms.get((), _coerce(self.ring, 0))

    def total_degree(self):
        if self.is_zero():
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, k):
        return max((e[k - 1] if len(e) >= k else 0 for e in self._terms), default=0)

    def leading_monomial(self):
        if self.is_zero():
            return None
        return max(self._terms, key=grlex_key)

    def leading_coefficient(self):
        if self.is_zero():
            return _coerce(self.ring, 0)
        return self._terms[self.leading_monomial()]

    def is_unit(self):
        if not self.is_constant() or self.is_zero():
            return False
        if self.ring == RING_Q:
            return True
        return abs(self.constant_value()) == 1

    def with_nvars(self, nvars):
        return Poly(self.ring, self._terms, nvars)

    # --- Ring arithmetic ---

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(self.ring, other.ring)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.ring, other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(self.ring, terms, max(self.nvars, other.nvars))

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exponents(e1, e2)
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly(self.ring, terms, max(self.nvars, other.nvars))

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ArityError(f"polynomial exponent must be a natural number, got {exponent}")
        result = Poly.one(self.ring, self.nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor):
        factor = _coerce(self.ring, factor)
        return Poly(self.ring, {e: c * factor for e, c in self._terms.items()}, self.nvars)

    # --- Equality / hashing ---

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def sort_key(self):
        """Deterministic structural key used to order polynomial lists."""
        return tuple((grlex_key(e), str(c)) for e, c in self.items())

    # --- Calculus and substitution ---

    def partial_derivative(self, k):
        if not 1 <= k <= self.nvars:
            raise ArityError(f"variable x{k} out of range for a polynomial in {self.nvars} variables")
        terms = {}
        for e, c in self._terms.items():
            if len(e) < k or e[k - 1] == 0:
                continue
            lowered = list(e)
            lowered[k - 1] -= 1
            terms[tuple(lowered)] = terms.get(tuple(lowered), 0) + c * e[k - 1]
        return Poly(self.ring, terms, self.nvars)

    def substitute(self, images):
        """Replace x_i by images[i-1]; the ring homomorphism extending that assignment."""
        images = list(images)
        if len(images) < self.used_vars():
            raise ArityError(f"substitution needs {self.used_vars()} images, got {len(images)}")
        for image in images:
            if image.ring != self.ring:
                raise RingMismatchError(self.ring, image.ring)
        out_nvars = max((image.nvars for image in images), default=0)
        result = Poly.zero(self.ring, out_nvars)
        powers = {}
        for e, c in self._terms.items():
            term = Poly.constant(self.ring, c, out_nvars)
            for i, power in enumerate(e):
                if power:
                    key = (i, power)
                    if key not in powers:
                        powers[key] = images[i] ** power
                    term = term * powers[key]
            result = result + term
        return result.with_nvars(out_nvars)

    def shift_variables(self, offset):
        """Rename x_i to x_{i+offset}."""
        if offset < 0:
            raise ArityError("shift offset must be non-negative")
        terms = {(0,) * offset + e if e else (): c for e, c in self._terms.items()}
        return Poly(self.ring, terms, self.nvars + offset if self.nvars else 0)

    def eval(self, point):
        point = [Fraction(v) for v in point]
        if len(point) < self.used_vars():
            raise ArityError(f"evaluation point has {len(point)} coordinates, need {self.used_vars()}")
        total = Fraction(0)
        for e, c in self._terms.items():
            value = Fraction(c)
            for i, power in enumerate(e):
                if power:
                    value *= point[i] ** power
            total += value
        return total

    # --- Units and content ---

    def content(self):
        """Positive gcd of the coefficients over Z; 1 over Q (0 for the zero polynomial)."""
        if self.is_zero():
            return _coerce(self.ring, 0)
        if self.ring == RING_Q:
            return Fraction(1)
        return reduce(math.gcd, (abs(c) for c in self._terms.values()))

    def primitive_part(self):
        if self.is_zero():
            return self
        if self.ring == RING_Q:
            return self.unit_normalize()
        content = self.content()
        pp = Poly(self.ring, {e: c // content for e, c in self._terms.items()}, self.nvars)
        return pp.unit_normalize()

    def unit_normalize(self):
        """Associate with positive leading coefficient (Z) or leading coefficient 1 (Q)."""
        if self.is_zero():
            return self
        lc = self.leading_coefficient()
        if self.ring == RING_Q:
            return self.scale(Fraction(1) / lc)
        return -self if lc < 0 else self

    # --- Display ---

    def __str__(self):
        if self.is_zero():
            return "0"
        pieces = []
        for e, c in self.items():
            monomial = "*".join(
                f"x{i + 1}" if power == 1 else f"x{i + 1}^{power}"
                for i, power in enumerate(e) if power
            )
            negative = c < 0
            magnitude = -c if negative else c
            coeff_text = _format_scalar(magnitude)
            if not monomial:
                text = coeff_text
            elif magnitude == 1:
                text = monomial
            else:
                text = f"{coeff_text}*{monomial}"
            pieces.append((negative, text))
        first_negative, first_text = pieces[0]
        out = ("-" if first_negative else "") + first_text
        for negative, text in pieces[1:]:
            out += (" - " if negative else " + ") + text
        return out

    def __repr__(self):
        return f"Poly({self.ring}, {self})"


def _format_scalar(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"({value.numerator}/{value.denominator})"


# --- Ring-level helpers ---

def check_same_ring(*polys):
    rings = {p.ring for p in polys}
    if len(rings) > 1:
        left, right = sorted(rings)
        raise RingMismatchError(left, right)


def poly_add(a, b):
    check_same_ring(a, b)
    return a + b


def poly_mul(a, b):
    check_same_ring(a, b)
    return a * b


def poly_neg(a):
    return -a


def poly_sub(a, b):
    check_same_ring(a, b)
    return a - b


def poly_pow(a, n):
    return a ** n


def partial_derivative(p, k):
    return p.partial_derivative(k)


def substitute(p, images):
    return p.substitute(images)


def shift_variables(p, offset):
    return p.shift_variables(offset)


def eval_poly(p, point):
    return p.eval(point)


def product(polys, ring, nvars=0):
    result = Poly.one(ring, nvars)
    for p in polys:
        result = result * p
    return result


# --- sympy bridge ---

def _symbols(count):
    return sympy.symbols(f"x1:{max(count, 1) + 1}")


def _domain(ring):
    return ZZ if ring == RING_Z else QQ


def to_sympy(p, nvars=None, domain=None):
    count = max(nvars or 0, p.nvars, 1)
    gens = _symbols(count)
    rep = {}
    for e, c in p._terms.items():
        rep[e + (0,) * (count - len(e))] = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
    if not rep:
        rep[(0,) * count] = sympy.Integer(0)
    return sympy.Poly.from_dict(rep, *gens, domain=domain or _domain(p.ring))


def from_sympy(sp, ring, nvars=0):
    terms = {}
    for monom, coeff in sp.terms():
        coeff = sympy.Rational(coeff)
        terms[monom] = Fraction(int(coeff.p), int(coeff.q))
    if ring == RING_Z:
        for key, value in terms.items():
            if value.denominator != 1:
                raise NonExactDivisionError("result is not integral")
            terms[key] = value.numerator
    return Poly(ring, terms, nvars)


def to_sympy_expr(p):
    """Plain sympy expression in symbols x1..xn (used by independent oracles)."""
    gens = _symbols(max(p.nvars, 1))
    expr = sympy.Integer(0)
    for e, c in p._terms.items():
        term = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for i, power in enumerate(e):
            term *= gens[i] ** power
        expr += term
    return expr


# --- gcd, divisibility, radicals ---

def poly_gcd(a, b):
    """Unit-normalized gcd; positive leading coefficient over Z, monic over Q."""
    check_same_ring(a, b)
    if a.is_zero() and b.is_zero():
        raise DivisionError("gcd(0, 0) is undefined")
    nvars = max(a.nvars, b.nvars)
    if a.is_zero():
        return b.unit_normalize()
    if b.is_zero():
        return a.unit_normalize()
    if a.is_constant() and b.is_constant():
        if a.ring == RING_Q:
            return Poly.one(a.ring, nvars)
        return Poly.constant(a.ring, math.gcd(a.constant_value(), b.constant_value()), nvars)
    g = to_sympy(a, nvars).gcd(to_sympy(b, nvars))
    return from_sympy(g, a.ring, nvars).unit_normalize()


def gcd_many(polys, ring, nvars=0):
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return Poly.zero(ring, nvars)
    return reduce(poly_gcd, polys[1:], polys[0].unit_normalize())


def divide_exact(dividend, divisor):
    """dividend / divisor, raising unless the division is exact in the coefficient ring."""
    check_same_ring(dividend, divisor)
    if divisor.is_zero():
        raise DivisionError("division by the zero polynomial")
    if dividend.is_zero():
        return Poly.zero(dividend.ring, max(dividend.nvars, divisor.nvars))
    nvars = max(dividend.nvars, divisor.nvars)
    quotient, remainder = to_sympy(dividend, nvars, QQ).div(to_sympy(divisor, nvars, QQ))
    if not remainder.is_zero:
        raise NonExactDivisionError(f"{divisor} does not divide {dividend}")
    try:
        return from_sympy(quotient, dividend.ring, nvars)
    except NonExactDivisionError:
        raise NonExactDivisionError(f"{divisor} does not divide {dividend} over the integers") from None


def divides(a, b):
    """True iff a | b, i.e. b = a*c for some c in the coefficient ring's polynomials."""
    check_same_ring(a, b)
    if a.is_zero():
        return b.is_zero()
    try:
        divide_exact(b, a)
    except NonExactDivisionError:
        return False
    return True


def integer_radical(n):
    """Product of the distinct primes dividing n (rad(0) = 0, rad(+-1) = 1)."""
    n = abs(int(n))
    if n == 0:
        return 0
    result = 1
    for prime in sympy.factorint(n):
        result *= prime
    return result


def radical(p):
    """Square-free part: product of the distinct irreducible factors of p, unit-normalized."""
    if p.is_zero():
        return p
    if p.is_constant():
        if p.ring == RING_Q:
            return Poly.one(p.ring, p.nvars)
        return Poly.constant(p.ring, integer_radical(p.constant_value()), p.nvars)
    pp = p.primitive_part()
    g = pp
    for k in range(1, pp.used_vars() + 1):
        derivative = pp.partial_derivative(k)
        if not derivative.is_zero():
            g = poly_gcd(g, derivative)
    square_free = divide_exact(pp, g).primitive_part()
    if p.ring == RING_Z:
        square_free = square_free.scale(integer_radical(p.content()))
    return square_free.unit_normalize()


def are_associates(a, b):
    return a.unit_normalize() == b.unit_normalize()


def irreducible_factors(p):
    """Distinct irreducible factors of p, unit-normalized and sorted; over Z the primes of the content too."""
    if p.is_zero():
        return [p]
    nvars = p.nvars
    content, factors = to_sympy(p, nvars).factor_list()
    result = [from_sympy(f, p.ring, nvars).unit_normalize() for f, _ in factors]
    if p.ring == RING_Z:
        result += [Poly.constant(RING_Z, prime, nvars) for prime in sympy.factorint(abs(int(content)))]
    return sorted(set(result), key=Poly.sort_key)
