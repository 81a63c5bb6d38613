"""
Rat_R: rational polynomial maps n -> m with finitely generated restriction sets.

A RatMap carries m fractions P_i/Q_i in x1..xn together with generators of the
factor-closed multiplicative set whose closure records where the map is defined.
Composition substitutes fractions (clearing denominators, then combining with
the Kleisli rule), the differential is the formal Jacobian applied to a
direction vector, and equality is restriction-set equivalence plus
cross-multiplication.
"""
from dataclasses import dataclass
from fractions import Fraction
import logging

from category_core import (
    ADDITIVE, DIFFERENTIAL, NOWHERE, PRODUCTS, RestrictionModel, is_additive, is_linear, is_strongly_additive,
)
from errors import (
    ArityError, DivisionError, IncompatibleError, InvalidRestrictionSetError, InvariantViolation, RingMismatchError,
)
from grammar import format_frac, parse_map_literal, parse_poly
from poly import Poly, RING_Q, RING_Z, divide_exact, irreducible_factors, poly_gcd, product

logger = logging.getLogger(__name__)

UNDEFINED = 'undefined'


@dataclass(frozen=True, eq=False)
class RatMap:
    ring: str
    n: int
    m: int
    components: tuple  # of (P, Q)
    gens: tuple

    @property
    def is_empty(self):
        return any(g.is_zero() for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, RatMap):
            return NotImplemented
        return rat_eq(self, other)

    def __hash__(self):
        return hash((self.ring, self.n, self.m))

    def __str__(self):
        return print_map(self)

    def __repr__(self):
        return f"RatMap({print_map(self)})"


# --- Restriction sets ---

def membership(q, gens):
    """True iff q lies in the factor-closed multiplicative closure of gens."""
    gens = list(gens)
    if any(g.is_zero() for g in gens):
        return True
    if q.is_zero():
        return False
    nvars = max([q.nvars] + [g.nvars for g in gens])
    if not gens:
        return q.is_unit()
    gens_product = product(gens, q.ring, nvars)
    remaining = q
    while not remaining.is_unit():
        g = poly_gcd(remaining, gens_product)
        if g.is_unit():
            return False
        remaining = divide_exact(remaining, g)
    return True


def restriction_set_equiv(gens, other_gens):
    gens, other_gens = list(gens), list(other_gens)
    degenerate = any(g.is_zero() for g in gens)
    other_degenerate = any(g.is_zero() for g in other_gens)
    if degenerate or other_degenerate:
        return degenerate and other_degenerate
    ring = (gens + other_gens)[0].ring if gens or other_gens else RING_Z
    nvars = max([g.nvars for g in gens + other_gens], default=0)
    return (membership(product(gens, ring, nvars), other_gens)
            and membership(product(other_gens, ring, nvars), gens))


def normalize_gens(gens, ring, n):
    """Drop units, merge associates, prune generators already in the closure of the rest."""
    gens = [g.with_nvars(n) for g in gens]
    if any(g.is_zero() for g in gens):
        return (Poly.zero(ring, n),)
    unique = []
    for g in sorted((g.unit_normalize() for g in gens if not g.is_unit()), key=Poly.sort_key):
        if g not in unique:
            unique.append(g)
    index = 0
    while index < len(unique):
        others = unique[:index] + unique[index + 1:]
        if others and membership(unique[index], others):
            unique.pop(index)
        else:
            index += 1
    return tuple(unique)


def _reduce_component(p, q):
    """Cancel gcd(p, q); the denominator becomes positive-leading (Z) or monic (Q)."""
    if q.is_zero():
        raise DivisionError("zero denominator in a rational map component")
    nvars = max(p.nvars, q.nvars)
    if p.is_zero():
        return Poly.zero(p.ring, nvars), Poly.one(p.ring, nvars)
    g = poly_gcd(p, q)
    p, q = divide_exact(p, g).with_nvars(nvars), divide_exact(q, g).with_nvars(nvars)
    lc = q.leading_coefficient()
    if p.ring == RING_Q:
        factor = Fraction(1) / lc
        return p.scale(factor), q.scale(factor)
    if lc < 0:
        return -p, -q
    return p, q


def make_map(ring, n, m, components, gens, check=True):
    """Build a normalized RatMap; with check, every denominator must lie in the closure of gens."""
    components = tuple((p.with_nvars(n), q.with_nvars(n)) for p, q in components)
    if len(components) != m:
        raise ArityError(f"map {n} -> {m} needs {m} components, got {len(components)}")
    for p, q in components:
        for poly in (p, q):
            if poly.ring != ring:
                raise RingMismatchError(ring, poly.ring)
            if poly.used_vars() > n:
                raise ArityError(f"component {poly} uses variables beyond x{n}")
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError(ring, g.ring)
        if g.used_vars() > n:
            raise ArityError(f"generator {g} uses variables beyond x{n}")
    gens = normalize_gens(gens, ring, n)
    if any(g.is_zero() for g in gens):
        return rat_empty(n, m, ring)
    if check:
        for _, q in components:
            if not membership(q, gens):
                raise InvalidRestrictionSetError(q)
    return RatMap(ring, n, m, tuple(_reduce_component(p, q) for p, q in components), gens)


# --- Distinguished maps ---

def rat_identity(n, ring=RING_Z):
    return RatMap(ring, n, n, tuple((Poly.var(ring, i, n), Poly.one(ring, n)) for i in range(1, n + 1)), ())


def rat_proj(n0, n1, side, ring=RING_Z):
    """Projection from n0 + n1 variables onto the first (side 0) or second (side 1) block."""
    if side not in (0, 1):
        raise ArityError(f"projection side must be 0 or 1, got {side}")
    n = n0 + n1
    indices = range(1, n0 + 1) if side == 0 else range(n0 + 1, n + 1)
    components = tuple((Poly.var(ring, i, n), Poly.one(ring, n)) for i in indices)
    return RatMap(ring, n, len(components), components, ())


def rat_terminal(n, ring=RING_Z):
    return RatMap(ring, n, 0, (), ())


def rat_zero(n, m, ring=RING_Z):
    return RatMap(ring, n, m, tuple((Poly.zero(ring, n), Poly.one(ring, n)) for _ in range(m)), ())


def rat_empty(n, m, ring=RING_Z):
    return RatMap(ring, n, m, tuple((Poly.one(ring, n), Poly.one(ring, n)) for _ in range(m)), (Poly.zero(ring, n),))


# --- Composition ---

def _check_composable(f, g):
    if f.ring != g.ring:
        raise RingMismatchError(f.ring, g.ring)
    if f.m != g.n:
        raise ArityError(f"cannot compose {f.n} -> {f.m} with {g.n} -> {g.m}")


def _substitute_cleared(a, f):
    """(N, D) with N/D = a(P_1/Q_1, ..., P_m/Q_m), denominators cleared degree by degree."""
    n, ring = f.n, f.ring
    degrees = [a.degree_in(i) for i in range(1, f.m + 1)]
    den = Poly.one(ring, n)
    for (_, q), d in zip(f.components, degrees):
        den = den * q ** d
    num = Poly.zero(ring, n)
    for exponents, coeff in a.terms.items():
        term = Poly.constant(ring, coeff, n)
        for i, ((p, q), d) in enumerate(zip(f.components, degrees)):
            power = exponents[i] if i < len(exponents) else 0
            term = term * p ** power * q ** (d - power)
        num = num + term
    return num.with_nvars(n), den.with_nvars(n)


def rat_compose(f, g):
    """f then g: substitute f's components into g."""
    _check_composable(f, g)
    if f.is_empty or g.is_empty:
        return rat_empty(f.n, g.m, f.ring)
    components = []
    for a, b in g.components:
        num_a, den_a = _substitute_cleared(a, f)
        num_b, den_b = _substitute_cleared(b, f)
        components.append((num_a * den_b * den_b, den_a * num_b * den_b))
    gens = list(f.gens)
    for u in g.gens:
        num_u, den_u = _substitute_cleared(u, f)
        gens.append(num_u * den_u * den_u)
    return make_map(f.ring, f.n, g.m, components, gens, check=False)


def rat_restriction(f):
    if f.is_empty:
        return rat_empty(f.n, f.n, f.ring)
    identity = rat_identity(f.n, f.ring)
    return RatMap(f.ring, f.n, f.n, identity.components, f.gens)


# --- Equality and order ---

def _check_parallel(f, g):
    if f.ring != g.ring:
        raise RingMismatchError(f.ring, g.ring)
    if (f.n, f.m) != (g.n, g.m):
        raise ArityError(f"maps {f.n} -> {f.m} and {g.n} -> {g.m} are not parallel")


def rat_eq(f, g):
    _check_parallel(f, g)
    if f.is_empty or g.is_empty:
        return f.is_empty and g.is_empty
    if not restriction_set_equiv(f.gens, g.gens):
        return False
    return all(p * q2 == p2 * q for (p, q), (p2, q2) in zip(f.components, g.components))


def rat_leq(f, g):
    return rat_eq(rat_compose(rat_restriction(f), g), f)


def rat_compat(f, g):
    return rat_eq(rat_compose(rat_restriction(f), g), rat_compose(rat_restriction(g), f))


# --- Cartesian, additive and differential structure ---

def rat_pair(f, g):
    if f.ring != g.ring:
        raise RingMismatchError(f.ring, g.ring)
    if f.n != g.n:
        raise ArityError(f"cannot pair maps out of {f.n} and {g.n} variables")
    if f.is_empty or g.is_empty:
        return rat_empty(f.n, f.m + g.m, f.ring)
    return make_map(f.ring, f.n, f.m + g.m, f.components + g.components, f.gens + g.gens, check=False)


def rat_add(f, g):
    _check_parallel(f, g)
    if f.is_empty or g.is_empty:
        return rat_empty(f.n, f.m, f.ring)
    components = [(p * q2 + q * p2, q * q2) for (p, q), (p2, q2) in zip(f.components, g.components)]
    return make_map(f.ring, f.n, f.m, components, f.gens + g.gens, check=False)


def rat_differential(f):
    """D[f]: 2n -> m; x1..xn is the direction vector and x(n+1)..x(2n) the point."""
    n, ring = f.n, f.ring
    if f.is_empty:
        return rat_empty(2 * n, f.m, ring)
    components = []
    for p, q in f.components:
        num = Poly.zero(ring, 2 * n)
        for k in range(1, n + 1):
            jacobian_entry = p.partial_derivative(k) * q - p * q.partial_derivative(k)
            num = num + jacobian_entry.shift_variables(n) * Poly.var(ring, k, 2 * n)
        shifted = q.shift_variables(n).with_nvars(2 * n)
        components.append((num.with_nvars(2 * n), shifted * shifted))
    gens = [g.shift_variables(n) for g in f.gens]
    return make_map(ring, 2 * n, f.m, components, gens, check=False)


# --- Join candidates ---

@dataclass(frozen=True)
class JoinCandidateReport:
    candidate: RatMap
    probe: RatMap = None
    composite_of_join: RatMap = None
    join_of_composites: RatMap = None
    stable: bool = None

    def to_json(self):
        data = {"candidate": map_to_json(self.candidate)}
        if self.probe is not None:
            data.update({
                "probe": map_to_json(self.probe),
                "composite_of_join": map_to_json(self.composite_of_join),
                "join_of_composites": map_to_json(self.join_of_composites),
                "stable": self.stable,
            })
        return data


def _candidate(f, g):
    if not rat_compat(f, g):
        raise IncompatibleError("join candidate needs compatible maps")
    if f.is_empty:
        return g
    if g.is_empty:
        return f
    ring, n = f.ring, f.n
    components = [_reduce_component(p, q) for p, q in f.components]
    shared = poly_gcd(product(f.gens, ring, n), product(g.gens, ring, n))
    return make_map(ring, n, f.m, components, irreducible_factors(shared), check=False)


def candidate_join(f, g, probe=None):
    """The order-theoretic candidate for f v g, and optionally whether probe;(f v g) = probe;f v probe;g."""
    _check_parallel(f, g)
    candidate = _candidate(f, g)
    if probe is None:
        return JoinCandidateReport(candidate)
    left = rat_compose(probe, candidate)
    right = _candidate(rat_compose(probe, f), rat_compose(probe, g))
    stable = rat_eq(left, right)
    logger.debug("join candidate stability under probe: %s", stable)
    return JoinCandidateReport(candidate, probe, left, right, stable)


# --- Evaluation ---

def rat_eval(f, point):
    point = [Fraction(v) for v in point]
    if len(point) != f.n:
        raise ArityError(f"map out of {f.n} variables evaluated at {len(point)} coordinates")
    if f.is_empty or any(g.eval(point) == 0 for g in f.gens):
        return UNDEFINED
    values = []
    for p, q in f.components:
        den = q.eval(point)
        if den == 0:
            raise InvariantViolation(f"denominator {q} vanishes at {point} although every generator is nonzero")
        values.append(p.eval(point) / den)
    return tuple(values)


def naive_eval_composite(f, g, point):
    """Evaluate f then g pointwise, without building the composite."""
    inner = rat_eval(f, point)
    if inner == UNDEFINED:
        return UNDEFINED
    return rat_eval(g, inner)


# --- Text and JSON ---

def parse_map(text, ring=RING_Z):
    literal = parse_map_literal(text, ring)
    return make_map(ring, literal.n, literal.m, literal.components, literal.gens, check=True)


def print_map(f):
    components = " ; ".join(format_frac(p, q) for p, q in f.components)
    gens = ", ".join(str(g) for g in f.gens)
    return f"map {f.n} -> {f.m} {{ {components} }} | {{ {gens} }}"


def map_to_json(f):
    return {
        "ring": f.ring,
        "n": f.n,
        "m": f.m,
        "components": [{"num": str(p), "den": str(q)} for p, q in f.components],
        "gens": [str(g) for g in f.gens],
    }


def map_from_json(data):
    ring = data.get("ring", RING_Z)
    n, m = int(data["n"]), int(data["m"])
    components = [(parse_poly(c["num"], ring), parse_poly(c["den"], ring)) for c in data["components"]]
    gens = [parse_poly(g, ring) for g in data["gens"]]
    return make_map(ring, n, m, components, gens, check=True)


# --- Model adapter ---

class RatModel(RestrictionModel):
    """Rat_R as a differential restriction category with nowhere-defined maps (but no joins)."""

    capabilities = frozenset({PRODUCTS, ADDITIVE, DIFFERENTIAL, NOWHERE})

    def __init__(self, ring=RING_Q, max_arity=2, max_degree=2, max_terms=3, max_gens=2):
        self.ring = ring
        self.name = f"rat-{ring}"
        self.max_arity = max_arity
        self.max_degree = max_degree
        self.max_terms = max_terms
        self.max_gens = max_gens

    def compose(self, f, g):
        return rat_compose(f, g)

    def identity(self, obj):
        return rat_identity(obj, self.ring)

    def restriction(self, f):
        return rat_restriction(f)

    def equal(self, f, g):
        return rat_eq(f, g)

    def dom(self, f):
        return f.n

    def cod(self, f):
        return f.m

    def describe(self, f):
        return print_map(f)

    def product(self, a, b):
        return a + b

    def terminal_object(self):
        return 0

    def pair(self, f, g):
        return rat_pair(f, g)

    def proj0(self, a, b):
        return rat_proj(a, b, 0, self.ring)

    def proj1(self, a, b):
        return rat_proj(a, b, 1, self.ring)

    def terminal(self, a):
        return rat_terminal(a, self.ring)

    def add(self, f, g):
        return rat_add(f, g)

    def zero(self, a, b):
        return rat_zero(a, b, self.ring)

    def empty(self, a, b):
        return rat_empty(a, b, self.ring)

    def diff(self, f):
        return rat_differential(f)

    # --- sampling ---

    def sample_object(self, rng):
        return rng.randint(1, self.max_arity)

    def _coefficient(self, rng):
        while True:
            value = rng.randint(-3, 3) if self.ring == RING_Z else rng.fraction(3, 2)
            if value != 0:
                return value

    def random_poly(self, rng, n, nonconstant=False):
        terms = {}
        for _ in range(rng.randint(1, self.max_terms)):
            exponents = [0] * max(n, 1)
            for _ in range(rng.randint(0, self.max_degree)):
                exponents[rng.randint(0, n - 1)] += 1
            terms[tuple(exponents)] = self._coefficient(rng)
        poly = Poly(self.ring, terms, n)
        if nonconstant and poly.is_constant() and n:
            poly = poly + Poly.var(self.ring, rng.randint(1, n), n)
        return poly.with_nvars(n)

    def _random_gens(self, rng, n):
        if n == 0:
            return []
        return [self.random_poly(rng, n, nonconstant=True) for _ in range(rng.randint(0, self.max_gens))]

    def sample(self, rng, dom, cod):
        if rng.coin(1, 25):
            return rat_empty(dom, cod, self.ring)
        gens = self._random_gens(rng, dom)
        components = []
        for _ in range(cod):
            den = Poly.one(self.ring, dom)
            for g in gens:
                if rng.coin():
                    den = den * g
            components.append((self.random_poly(rng, dom), den))
        return make_map(self.ring, dom, cod, components, gens, check=False)

    def sample_total(self, rng, a, b):
        components = [(self.random_poly(rng, a), Poly.one(self.ring, a)) for _ in range(b)]
        return make_map(self.ring, a, b, components, [], check=False)

    def sample_linear(self, rng, a, b):
        components = []
        for _ in range(b):
            num = Poly.zero(self.ring, a)
            for k in range(1, a + 1):
                if rng.coin(2, 3):
                    num = num + Poly.var(self.ring, k, a).scale(self._coefficient(rng))
            components.append((num, Poly.one(self.ring, a)))
        gens = self._random_gens(rng, a) if rng.coin() else []
        return make_map(self.ring, a, b, components, gens, check=False)


def rat_is_linear(f):
    return is_linear(RatModel(f.ring), f)


def rat_is_additive(f):
    return is_additive(RatModel(f.ring), f)


def rat_is_strongly_additive(f):
    return is_strongly_additive(RatModel(f.ring), f)
