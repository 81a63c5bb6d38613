"""
Weak commutative rigs, the fraction construction fr(R) and the fractional monad.

A Frac is any pair (num, den); two pairs are equal when they are related by the
equivalence generated by (r, a*s) ~ (a*r, a*a*s).  Over unique factorization
rigs that equivalence is decided by canonical forms; over finite rigs by a
bounded union-find closure; anything else refuses with EqualityUndecidedError.
"""
from fractions import Fraction
from dataclasses import dataclass
import itertools
import logging
import math

from config import FRAC_SEARCH_BOUND
from errors import (
    EqualityUndecidedError, MissingStarError, NotIdempotentError, RingMismatchError, UnsupportedRigError,
)
from poly import Poly, RING_Q, RING_Z, divide_exact, divides, integer_radical, poly_gcd, radical

logger = logging.getLogger(__name__)


# --- Weak rigs ---

class WeakRig:
    """Carrier operations of a weak commutative rig (no nullary distributivity assumed)."""

    name = 'rig'
    is_ufd = False
    is_finite = False
    has_star = False

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def eq(self, a, b):
        return a == b

    def sample(self, rng):
        raise NotImplementedError

    def enumerate(self, bound):
        raise UnsupportedRigError(f"{self.name} cannot be enumerated")

    def __eq__(self, other):
        return isinstance(other, WeakRig) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class _IntegralRig(WeakRig):
    """Shared UFD helpers for the number rigs N and Z."""

    is_ufd = True

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def gcd(self, a, b):
        return math.gcd(a, b)

    def divides(self, a, b):
        if a == 0:
            return b == 0
        return b % a == 0

    def divide_exact(self, a, b):
        return a // b

    def radical(self, a):
        return integer_radical(a)

    def is_unit(self, a):
        return abs(a) == 1

    def normalizing_unit(self, den):
        return -1 if den < 0 else 1


class NaturalRig(_IntegralRig):
    name = 'N'

    def sample(self, rng):
        return rng.randint(0, 24)

    def enumerate(self, bound):
        return list(range(0, bound + 1))


class IntegerRig(_IntegralRig):
    name = 'Z'

    def sample(self, rng):
        return rng.randint(-24, 24)

    def enumerate(self, bound):
        return list(range(-bound, bound + 1))


class RationalRig(WeakRig):
    name = 'Q'
    is_ufd = True

    def add(self, a, b):
        return Fraction(a) + Fraction(b)

    def mul(self, a, b):
        return Fraction(a) * Fraction(b)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def gcd(self, a, b):
        return Fraction(0) if a == 0 and b == 0 else Fraction(1)

    def divides(self, a, b):
        return a != 0 or b == 0

    def divide_exact(self, a, b):
        return Fraction(a) / Fraction(b)

    def radical(self, a):
        return Fraction(0) if a == 0 else Fraction(1)

    def is_unit(self, a):
        return a != 0

    def normalizing_unit(self, den):
        return Fraction(1) / Fraction(den)

    def sample(self, rng):
        return rng.fraction(12, 4)

    def enumerate(self, bound):
        return sorted({Fraction(n, d) for n in range(-bound, bound + 1) for d in range(1, bound + 1)})


class PolyRig(WeakRig):
    """R[x1..xn] for R in {Z, Q}."""

    is_ufd = True

    def __init__(self, ring=RING_Q, nvars=1):
        self.ring = ring
        self.nvars = nvars
        self.name = f"{ring}[{','.join(f'x{i}' for i in range(1, nvars + 1))}]"

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    @property
    def zero(self):
        return Poly.zero(self.ring, self.nvars)

    @property
    def one(self):
        return Poly.one(self.ring, self.nvars)

    def gcd(self, a, b):
        if a.is_zero() and b.is_zero():
            return self.zero
        return poly_gcd(a, b)

    def divides(self, a, b):
        return divides(a, b)

    def divide_exact(self, a, b):
        return divide_exact(a, b)

    def radical(self, a):
        return radical(a)

    def is_unit(self, a):
        return a.is_unit()

    def normalizing_unit(self, den):
        lc = den.leading_coefficient()
        if self.ring == RING_Q:
            return Fraction(1) / lc
        return -1 if lc < 0 else 1

    def sample(self, rng):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            exponents = tuple(rng.randint(0, 2) for _ in range(self.nvars))
            coeff = rng.randint(-5, 5) if self.ring == RING_Z else rng.fraction(5, 3)
            terms[exponents] = coeff
        return Poly(self.ring, terms, self.nvars)


class LatticeRig(WeakRig):
    """The chain {0..k} with add = max, mul = min, zero = 0, one = k."""

    is_finite = True

    def __init__(self, k):
        self.k = k
        self.name = f"L{k}"

    def add(self, a, b):
        return max(a, b)

    def mul(self, a, b):
        return min(a, b)

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return self.k

    def sample(self, rng):
        return rng.randint(0, self.k)

    def enumerate(self, bound=None):
        return list(range(self.k + 1))

    def divides(self, a, b):
        return any(min(a, c) == b for c in range(self.k + 1))


class FractionRig(WeakRig):
    """fr(R) viewed as a fractional rig in its own right, with (x, y)* = (y^2, x*y)."""

    has_star = True

    def __init__(self, base):
        self.base = base
        self.name = f"fr({base.name})"

    def add(self, a, b):
        return frac_add(a, b)

    def mul(self, a, b):
        return frac_mul(a, b)

    @property
    def zero(self):
        return frac_zero(self.base)

    @property
    def one(self):
        return frac_one(self.base)

    def eq(self, a, b):
        return frac_eq(a, b)

    def star(self, a):
        return frac_star(a)

    def sample(self, rng):
        return Frac(self.base.sample(rng), self.base.sample(rng), self.base)

    def enumerate(self, bound):
        elements = self.base.enumerate(bound)
        return [Frac(x, y, self.base) for x in elements for y in elements]


# --- Fractions ---

@dataclass(frozen=True, eq=False)
class Frac:
    num: object
    den: object
    rig: WeakRig

    def __eq__(self, other):
        if not isinstance(other, Frac):
            return NotImplemented
        return frac_eq(self, other)

    def __hash__(self):
        if not self.rig.is_ufd:
            raise TypeError(f"fractions over {self.rig.name} are not hashable")
        canonical = reduce_canonical(self)
        return hash((self.rig.name, _hashable(canonical.num), _hashable(canonical.den)))

    def __str__(self):
        return f"({self.num}, {self.den})"

    def to_json(self):
        return {"num": str(self.num), "den": str(self.den)}


def _hashable(value):
    return value if not isinstance(value, Frac) else (str(value.num), str(value.den))


def _same_rig(a, b):
    if a.rig != b.rig:
        raise RingMismatchError(a.rig.name, b.rig.name)
    return a.rig


def frac_add(a, b):
    rig = _same_rig(a, b)
    num = rig.add(rig.mul(a.num, b.den), rig.mul(a.den, b.num))
    return Frac(num, rig.mul(a.den, b.den), rig)


def frac_mul(a, b):
    rig = _same_rig(a, b)
    return Frac(rig.mul(a.num, b.num), rig.mul(a.den, b.den), rig)


def frac_zero(rig):
    return Frac(rig.zero, rig.one, rig)


def frac_one(rig):
    return Frac(rig.one, rig.one, rig)


def frac_star(a):
    rig = a.rig
    return Frac(rig.mul(a.den, a.den), rig.mul(a.den, a.num), rig)


def _is_zero(rig, value):
    return rig.eq(value, rig.zero)


def reduce_canonical(a):
    """Canonical representative over a unique factorization rig (Z, N, Q or a polynomial rig)."""
    rig = a.rig
    if not rig.is_ufd:
        raise UnsupportedRigError(f"no canonical forms for fractions over {rig.name}")
    x, y = a.num, a.den
    if _is_zero(rig, y):
        return Frac(rig.zero, rig.zero, rig)
    if _is_zero(rig, x):
        den = rig.radical(y)
        return Frac(rig.zero, _scale(rig, den, rig.normalizing_unit(den)), rig)
    g = rig.gcd(x, y)
    n = rig.divide_exact(x, g)
    m = rig.divide_exact(y, g)
    u = rig.radical(y)
    u = rig.divide_exact(u, rig.gcd(u, m))
    num, den = rig.mul(n, u), rig.mul(m, u)
    unit = rig.normalizing_unit(den)
    return Frac(_scale(rig, num, unit), _scale(rig, den, unit), rig)


def _scale(rig, value, unit):
    if isinstance(value, Poly):
        return value.scale(unit)
    return rig.mul(value, unit)


def _finite_classes(rig):
    carrier = rig.enumerate()
    pairs = [(x, y) for x in carrier for y in carrier]
    if len(pairs) > FRAC_SEARCH_BOUND:
        raise EqualityUndecidedError(f"{rig.name} has {len(pairs)} pairs, above the search bound {FRAC_SEARCH_BOUND}")
    parent = {pair: pair for pair in pairs}

    def find(pair):
        while parent[pair] != pair:
            parent[pair] = parent[parent[pair]]
            pair = parent[pair]
        return pair

    # (r, a*s) ~ (a*r, a*a*s) for every r, s, a
    for r, s, a in itertools.product(carrier, repeat=3):
        left = (r, rig.mul(a, s))
        right = (rig.mul(a, r), rig.mul(rig.mul(a, a), s))
        root_left, root_right = find(left), find(right)
        if root_left != root_right:
            parent[root_left] = root_right
    return {pair: find(pair) for pair in pairs}


_finite_cache = {}


def finite_class_of(a):
    rig = a.rig
    if rig.name not in _finite_cache:
        _finite_cache[rig.name] = _finite_classes(rig)
    return _finite_cache[rig.name][(a.num, a.den)]


def frac_eq(a, b):
    rig = _same_rig(a, b)
    if rig.is_ufd:
        left, right = reduce_canonical(a), reduce_canonical(b)
        return rig.eq(left.num, right.num) and rig.eq(left.den, right.den)
    if rig.is_finite:
        return finite_class_of(a) == finite_class_of(b)
    raise EqualityUndecidedError(f"fractions over {rig.name}")


# --- The fractional monad ---

def eta(r, rig):
    return Frac(r, rig.one, rig)


def kleisli_ext(f, a):
    """#(f)(x, y) = (x1*y2^2, x2*y1*y2) where (x1, x2) = f(x) and (y1, y2) = f(y)."""
    x, y = f(a.num), f(a.den)
    target = _same_rig(x, y)
    num = target.mul(x.num, target.mul(y.den, y.den))
    den = target.mul(x.den, target.mul(y.num, y.den))
    return Frac(num, den, target)


def mu(a):
    """Flatten a fraction of fractions: ((r, s), (p, q)) -> (r*q^2, s*p*q)."""
    return kleisli_ext(lambda inner: inner, a)


def frac_map(h, a, target):
    """fr(h) for a rig homomorphism h: R -> S."""
    return kleisli_ext(lambda r: eta(h(r), target), a)


def nu(a):
    """Structure map of a fractional rig: (r, s) -> r * s^*."""
    rig = a.rig
    if not rig.has_star:
        raise MissingStarError(f"{rig.name} has no star operation")
    return rig.mul(a.num, rig.star(a.den))


@dataclass(frozen=True)
class StarIdempotent:
    element: object
    rig: WeakRig

    def __post_init__(self):
        rig = self.rig
        if not rig.has_star:
            raise MissingStarError(f"{rig.name} has no star operation")
        if not rig.eq(rig.mul(self.element, self.element), self.element):
            raise NotIdempotentError(f"{self.element} is not idempotent")
        if not rig.eq(rig.star(self.element), self.element):
            raise NotIdempotentError(f"{self.element} is not fixed by the star")


def localize(e, r):
    """l_e(r) = r * e, landing in the sub-rig R_e."""
    return e.rig.mul(r, e.element)


def rig_elements(rig, bound):
    """Elements r with r*0 = 0 within the enumerated window."""
    return [r for r in rig.enumerate(bound) if rig.eq(rig.mul(r, rig.zero), rig.zero)]


def iter_divides(a, r, rig):
    """Whether a iteratively divides r, decided by repeated gcd stripping."""
    if not rig.is_ufd:
        raise UnsupportedRigError(f"iterated divisibility needs a unique factorization rig, not {rig.name}")
    if _is_zero(rig, r):
        return True
    if _is_zero(rig, a):
        return False
    remaining = a
    while not rig.is_unit(remaining):
        g = rig.gcd(remaining, r)
        if rig.is_unit(g):
            return False
        remaining = rig.divide_exact(remaining, g)
    return True


# --- Fractional-rig laws ---

FRACTIONAL_RIG_LAWS = (
    ('star-one', "1* = 1"),
    ('star-triple', "x*** = x*"),
    ('star-mul', "(xy)* = y*x*"),
    ('star-regular', "x*xx* = x*"),
    ('linear-distributivity', "x*x(y+z) = x*xy + z"),
    ('idempotent', "xx* is idempotent"),
    ('self-star', "xx* = (xx*)*"),
    ('double-star', "xx*x = x**"),
    ('star-sandwich', "x*x**x* = x*"),
)


def check_fractional_rig_laws(rig, x, y, z):
    """Names of the fractional-rig laws that fail on (x, y, z) in fr(rig)."""
    fr = FractionRig(rig)
    star, mul, add, eq = fr.star, fr.mul, fr.add, fr.eq
    xs = star(x)
    xx = star(xs)
    outcomes = {
        'star-one': eq(star(fr.one), fr.one),
        'star-triple': eq(star(xx), xs),
        'star-mul': eq(star(mul(x, y)), mul(star(y), xs)),
        'star-regular': eq(mul(mul(xs, x), xs), xs),
        'linear-distributivity': eq(mul(mul(xs, x), add(y, z)), add(mul(mul(xs, x), y), z)),
        'idempotent': eq(mul(mul(x, xs), mul(x, xs)), mul(x, xs)),
        'self-star': eq(mul(x, xs), star(mul(x, xs))),
        'double-star': eq(mul(mul(x, xs), x), xx),
        'star-sandwich': eq(mul(mul(xs, xx), xs), xs),
    }
    return [name for name, ok in outcomes.items() if not ok]


# --- Law suite ---

FRAC_CHECKS = FRACTIONAL_RIG_LAWS + (
    ('kleisli-unit', "#(eta) = id"),
    ('kleisli-extends', "#(f) eta = f"),
    ('monad-unit', "mu eta = id = mu fr(eta)"),
    ('monad-assoc', "mu mu = mu fr(mu)"),
    ('algebra-unit', "nu eta = id"),
    ('algebra-assoc', "nu mu = nu fr(nu)"),
    ('nu-star', "nu(x*) = nu(x)*"),
    ('well-defined', "operations respect (r, as) ~ (ar, a^2 s)"),
    ('functor', "fr(h) preserves sums, products and the star"),
)


def _substitution_rig_map(rng, rig):
    """A random ring endomorphism of Q[x1]: x1 -> p."""
    image = rig.sample(rng).with_nvars(rig.nvars)
    return lambda r: r.substitute([image] * rig.nvars).with_nvars(rig.nvars)


def run_frac_suite(cases=None, seed=None):
    """Fractional-rig laws on fr(N), fr(Z), fr(Q[x1]) plus monad and algebra laws for fr."""
    from category_core import Failure, SuiteReport
    from config import DEFAULT_CASES, DIFFREST_SEED
    from sampling import case_stream
    import time

    cases = DEFAULT_CASES if cases is None else cases
    seed = DIFFREST_SEED if seed is None else seed
    report = SuiteReport(suite='FRAC', model='frac', seed=seed)
    started = time.perf_counter()

    def fail(ident, inputs, lhs, rhs):
        report.failures.append(Failure(ident, '', 'eq', inputs, str(lhs), str(rhs)))

    def compare(ident, inputs, lhs, rhs):
        if not frac_eq(lhs, rhs):
            fail(ident, inputs, lhs, rhs)

    base_rigs = (NaturalRig(), IntegerRig(), PolyRig(RING_Q, 1))
    for rig in base_rigs:
        fr = FractionRig(rig)
        for index in range(cases):
            rng = case_stream(seed, f"FRAC-laws-{rig.name}", index)
            x, y, z = fr.sample(rng), fr.sample(rng), fr.sample(rng)
            report.cases += 1
            for ident in check_fractional_rig_laws(rig, x, y, z):
                fail(ident, {"x": str(x), "y": str(y), "z": str(z), "rig": fr.name}, 'False', 'True')

    for rig in (IntegerRig(), PolyRig(RING_Q, 1)):
        fr = FractionRig(rig)
        nested = FractionRig(fr)
        triple = FractionRig(nested)
        for index in range(cases):
            rng = case_stream(seed, f"FRAC-monad-{rig.name}", index)
            a = fr.sample(rng)
            r = rig.sample(rng)
            inputs = {"a": str(a), "r": str(r), "rig": rig.name}
            report.cases += 1
            compare('kleisli-unit', inputs, kleisli_ext(lambda v: eta(v, rig), a), a)
            h = (lambda v: v) if isinstance(rig, IntegerRig) else _substitution_rig_map(rng, rig)
            f = lambda v: eta(h(v), rig)  # noqa: E731
            compare('kleisli-extends', inputs, kleisli_ext(f, eta(r, rig)), f(r))
            compare('monad-unit', inputs, mu(eta(a, fr)), a)
            compare('monad-unit', inputs, mu(frac_map(lambda v: eta(v, rig), a, fr)), a)
            deep = triple.sample(rng)
            compare('monad-assoc', {"a": str(deep), "rig": rig.name}, mu(mu(deep)), mu(frac_map(mu, deep, fr)))
            b = fr.sample(rng)
            mapped = frac_map(h, frac_add(a, b), rig)
            compare('functor', inputs, mapped, frac_add(frac_map(h, a, rig), frac_map(h, b, rig)))
            compare('functor', inputs, frac_map(h, frac_mul(a, b), rig),
                    frac_mul(frac_map(h, a, rig), frac_map(h, b, rig)))
            compare('functor', inputs, frac_map(h, frac_star(a), rig), frac_star(frac_map(h, a, rig)))
            scale = rig.sample(rng)
            shifted = Frac(a.num, rig.mul(scale, a.den), rig)
            expanded = Frac(rig.mul(scale, a.num), rig.mul(rig.mul(scale, scale), a.den), rig)
            compare('well-defined', inputs, shifted, expanded)
            compare('well-defined', inputs, frac_add(shifted, b), frac_add(expanded, b))
            compare('well-defined', inputs, frac_mul(shifted, b), frac_mul(expanded, b))
            compare('well-defined', inputs, frac_star(shifted), frac_star(expanded))

    # algebra laws for nu: the fractional rig fr(Z) is an algebra of the monad
    base = IntegerRig()
    algebra = FractionRig(base)
    outer = FractionRig(algebra)
    outer_nested = FractionRig(outer)
    for index in range(cases):
        rng = case_stream(seed, "FRAC-algebra", index)
        x = algebra.sample(rng)
        pair = outer.sample(rng)
        deep = outer_nested.sample(rng)
        inputs = {"x": str(x), "pair": str(pair), "deep": str(deep)}
        report.cases += 1
        compare('algebra-unit', inputs, nu(eta(x, algebra)), x)
        compare('algebra-assoc', inputs, nu(mu(deep)), nu(frac_map(nu, deep, algebra)))
        compare('nu-star', inputs, nu(frac_star(pair)), frac_star(nu(pair)))

    report.runtime = time.perf_counter() - started
    logger.info("FRAC suite: %d cases, %d failures", report.cases, len(report.failures))
    return report
