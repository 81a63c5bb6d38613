"""
Finite sets and partial functions, optionally carrying commutative monoid structure.

This is the fully decidable model: equality is comparison of graphs, every hom-set
can be enumerated, joins are unions and relative complements are set differences.
Objects built from cyclic monoids Z_k and their products serve the additive suites.
"""
from dataclasses import dataclass, field
import itertools
import logging
import math

from category_core import ADDITIVE, CLASSICAL, JOINS, NOWHERE, PRODUCTS, RestrictionModel
from config import ENUMERATION_BOUND
from errors import ArityError, EnumerationBoundError, IncompatibleError, InvariantViolation, MissingCapabilityError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FinObj:
    """A finite carrier {0..size-1}; ``table`` is the monoid addition when present."""

    size: int
    table: tuple = None
    unit: int = 0
    moduli: tuple = field(default=None, compare=False)
    name: str = field(default='', compare=False)

    def __post_init__(self):
        if self.size < 0:
            raise ArityError(f"carrier size must be non-negative, got {self.size}")
        if not self.name:
            object.__setattr__(self, 'name', f"S{self.size}")

    @property
    def has_monoid(self):
        return self.table is not None

    def add(self, x, y):
        if self.table is None:
            raise MissingCapabilityError(self.name, 'monoid')
        return self.table[x][y]

    def __str__(self):
        return self.name


def verify_monoid(obj):
    """Raise InvariantViolation unless the table is commutative, associative and unital."""
    n, add = obj.size, obj.add
    for x, y in itertools.product(range(n), repeat=2):
        if add(x, y) != add(y, x):
            raise InvariantViolation(f"{obj.name}: {x}+{y} is not commutative")
        if not 0 <= add(x, y) < n:
            raise InvariantViolation(f"{obj.name}: {x}+{y} leaves the carrier")
    for x in range(n):
        if add(obj.unit, x) != x:
            raise InvariantViolation(f"{obj.name}: {obj.unit} is not a unit")
    for x, y, z in itertools.product(range(n), repeat=3):
        if add(add(x, y), z) != add(x, add(y, z)):
            raise InvariantViolation(f"{obj.name}: addition is not associative at {x},{y},{z}")
    return obj


def finite_set(size):
    """A bare carrier without monoid structure."""
    return FinObj(size, name=f"S{size}")


def monoid(table, unit=0, name=''):
    table = tuple(tuple(row) for row in table)
    return verify_monoid(FinObj(len(table), table, unit, None, name or f"M{len(table)}"))


def cyclic(k):
    """Z_k; Z_1 coincides with the terminal object."""
    if k < 1:
        raise ArityError(f"cyclic monoid needs k >= 1, got {k}")
    if k == 1:
        return terminal_object()
    table = tuple(tuple((x + y) % k for y in range(k)) for x in range(k))
    return FinObj(k, table, 0, (k,), f"Z{k}")


def terminal_object():
    return FinObj(1, ((0,),), 0, (), 'T')


def product(a, b):
    """a x b with (x, y) stored at index x*|b| + y."""
    if a.size == 1 and a.has_monoid and b.has_monoid:
        return b
    if b.size == 1 and a.has_monoid and b.has_monoid:
        return a
    table = None
    if a.has_monoid and b.has_monoid:
        table = tuple(
            tuple(a.add(x0, y0) * b.size + b.add(x1, y1) for y0 in range(a.size) for y1 in range(b.size))
            for x0 in range(a.size) for x1 in range(b.size))
    moduli = a.moduli + b.moduli if a.moduli is not None and b.moduli is not None else None
    return FinObj(a.size * b.size, table, a.unit * b.size + b.unit if table else 0, moduli, f"{a.name}x{b.name}")


def _coordinates(obj, x):
    digits = []
    for k in reversed(obj.moduli):
        digits.append(x % k)
        x //= k
    return list(reversed(digits))


def _index(obj, coordinates):
    x = 0
    for k, c in zip(obj.moduli, coordinates):
        x = x * k + c % k
    return x


# --- Partial functions ---

@dataclass(frozen=True)
class PartialFn:
    """graph[x] is the image of x, or None where undefined."""

    source: FinObj
    target: FinObj
    graph: tuple

    def __post_init__(self):
        if len(self.graph) != self.source.size:
            raise ArityError(f"graph has {len(self.graph)} entries for a carrier of size {self.source.size}")
        for y in self.graph:
            if y is not None and not 0 <= y < self.target.size:
                raise ArityError(f"image {y} is outside {self.target.name}")

    def __call__(self, x):
        return self.graph[x]

    def domain(self):
        return frozenset(x for x, y in enumerate(self.graph) if y is not None)

    def is_empty(self):
        return all(y is None for y in self.graph)

    def __str__(self):
        body = ', '.join(f"{x}:{y}" for x, y in enumerate(self.graph) if y is not None)
        return f"{self.source.name} -> {self.target.name} {{{body}}}"

    def to_json(self):
        return {"source": self.source.name, "target": self.target.name, "graph": list(self.graph)}


def pf_from_dict(source, target, mapping):
    return PartialFn(source, target, tuple(mapping.get(x) for x in range(source.size)))


def _parallel(f, g):
    if f.source != g.source or f.target != g.target:
        raise ArityError(f"maps are not parallel: {f} and {g}")


def pf_identity(a):
    return PartialFn(a, a, tuple(range(a.size)))


def pf_partial_identity(a, subset):
    return PartialFn(a, a, tuple(x if x in subset else None for x in range(a.size)))


def pf_empty(a, b):
    return PartialFn(a, b, (None,) * a.size)


def pf_compose(f, g):
    """f then g."""
    if f.target != g.source:
        raise ArityError(f"cannot compose {f} with {g}")
    return PartialFn(f.source, g.target, tuple(None if y is None else g.graph[y] for y in f.graph))


def pf_restriction(f):
    return pf_partial_identity(f.source, f.domain())


def pf_leq(f, g):
    _parallel(f, g)
    return all(y is None or g.graph[x] == y for x, y in enumerate(f.graph))


def pf_compat(f, g):
    _parallel(f, g)
    return all(y is None or z is None or y == z for y, z in zip(f.graph, g.graph))


def pf_total(f):
    return None not in f.graph


def pf_pair(f, g):
    if f.source != g.source:
        raise ArityError(f"cannot pair maps with different sources: {f} and {g}")
    target = product(f.target, g.target)
    width = g.target.size
    graph = tuple(None if y is None or z is None else y * width + z for y, z in zip(f.graph, g.graph))
    return PartialFn(f.source, target, graph)


def pf_proj(a, b, side):
    ab = product(a, b)
    if side == 0:
        return PartialFn(ab, a, tuple(x // b.size for x in range(ab.size)))
    return PartialFn(ab, b, tuple(x % b.size for x in range(ab.size)))


def pf_terminal(a):
    return PartialFn(a, terminal_object(), (0,) * a.size)


def pf_zero(a, b):
    if not b.has_monoid:
        raise MissingCapabilityError(b.name, 'monoid')
    return PartialFn(a, b, (b.unit,) * a.size)


def pf_add(f, g):
    """Pointwise sum on the intersection of the domains."""
    _parallel(f, g)
    target = f.target
    if not target.has_monoid:
        raise MissingCapabilityError(target.name, 'monoid')
    graph = tuple(None if y is None or z is None else target.add(y, z) for y, z in zip(f.graph, g.graph))
    return PartialFn(f.source, target, graph)


def pf_join(maps, source, target):
    maps = list(maps)
    for f in maps:
        if f.source != source or f.target != target:
            raise ArityError(f"{f} is not a map {source.name} -> {target.name}")
    for f, g in itertools.combinations(maps, 2):
        if not pf_compat(f, g):
            raise IncompatibleError(f"{f} and {g} disagree where both are defined")
    graph = [None] * source.size
    for f in maps:
        for x, y in enumerate(f.graph):
            if y is not None:
                graph[x] = y
    return PartialFn(source, target, tuple(graph))


def pf_complement(f, g):
    """f restricted to dom(f) minus dom(g), for g <= f."""
    if not pf_leq(g, f):
        raise IncompatibleError(f"{g} is not below {f}")
    return PartialFn(f.source, f.target, tuple(None if z is not None else y for y, z in zip(f.graph, g.graph)))


def pf_enumerate(source, target, bound=None):
    bound = ENUMERATION_BOUND if bound is None else bound
    count = (target.size + 1) ** source.size
    if count > bound:
        raise EnumerationBoundError(f"{count} maps {source.name} -> {target.name} exceed the bound {bound}")
    choices = [None] + list(range(target.size))
    return [PartialFn(source, target, graph) for graph in itertools.product(choices, repeat=source.size)]


# --- Additivity counterexamples over Z16 ---

def additive_with_nonadditive_inverse():
    """f = {1->1, 4->4, 9->5} is additive (no sum of domain points lands in the domain); its inverse is not."""
    z16 = cyclic(16)
    f = pf_from_dict(z16, z16, {1: 1, 4: 4, 9: 5})
    inverse = pf_from_dict(z16, z16, {1: 1, 4: 4, 5: 9})
    return f, inverse


def additive_join_counterexample():
    """Two additive maps whose join sends 1 + 4 = 5 to 9 instead of 5."""
    z16 = cyclic(16)
    return pf_from_dict(z16, z16, {1: 1, 4: 4}), pf_from_dict(z16, z16, {5: 9})


# --- Model adapter ---

class FinParModel(RestrictionModel):
    """Partial functions between products of cyclic monoids Z_1..Z_max_size."""

    capabilities = frozenset({PRODUCTS, ADDITIVE, JOINS, CLASSICAL, NOWHERE})

    def __init__(self, max_size=3, definedness=(2, 3)):
        self.max_size = max_size
        self.definedness = definedness
        self.name = f"finpar-{max_size}"

    def compose(self, f, g):
        return pf_compose(f, g)

    def identity(self, obj):
        return pf_identity(obj)

    def restriction(self, f):
        return pf_restriction(f)

    def equal(self, f, g):
        return f == g

    def dom(self, f):
        return f.source

    def cod(self, f):
        return f.target

    def product(self, a, b):
        return product(a, b)

    def terminal_object(self):
        return terminal_object()

    def pair(self, f, g):
        return pf_pair(f, g)

    def proj0(self, a, b):
        return pf_proj(a, b, 0)

    def proj1(self, a, b):
        return pf_proj(a, b, 1)

    def terminal(self, a):
        return pf_terminal(a)

    def add(self, f, g):
        return pf_add(f, g)

    def zero(self, a, b):
        return pf_zero(a, b)

    def join(self, maps, dom, cod):
        return pf_join(maps, dom, cod)

    def empty(self, a, b):
        return pf_empty(a, b)

    def complement(self, f, g):
        return pf_complement(f, g)

    def objects(self):
        return [cyclic(k) for k in range(1, self.max_size + 1)]

    def enumerate(self, a, b):
        return pf_enumerate(a, b)

    def points(self, a):
        return [pf_partial_identity(a, {x}) for x in range(a.size)]

    def sample_object(self, rng):
        return cyclic(rng.randint(1, self.max_size))

    def sample(self, rng, dom, cod):
        numerator, denominator = self.definedness
        graph = tuple(rng.randint(0, cod.size - 1) if cod.size and rng.coin(numerator, denominator) else None
                      for _ in range(dom.size))
        return PartialFn(dom, cod, graph)

    def sample_total(self, rng, a, b):
        if b.size == 0:
            return pf_empty(a, b)
        return PartialFn(a, b, tuple(rng.randint(0, b.size - 1) for _ in range(a.size)))

    def sample_idempotent(self, rng, a):
        return pf_partial_identity(a, {x for x in range(a.size) if rng.coin()})

    def sample_homomorphism(self, rng, a, b):
        """A total monoid homomorphism between products of cyclic monoids."""
        if a.moduli is None or b.moduli is None:
            return pf_zero(a, b)
        images = []
        for k in a.moduli:
            # k * y = 0 in every target factor Z_m
            images.append([rng.randint(0, math.gcd(k, m) - 1) * (m // math.gcd(k, m)) for m in b.moduli])
        graph = []
        for x in range(a.size):
            coordinates = _coordinates(a, x)
            image = [sum(c * y[j] for c, y in zip(coordinates, images)) for j in range(len(b.moduli))]
            graph.append(_index(b, image))
        return PartialFn(a, b, tuple(graph))

    def sample_additive(self, rng, a, b):
        return pf_compose(self.sample_idempotent(rng, a), self.sample_homomorphism(rng, a, b))

    def sample_linear(self, rng, a, b):
        return self.sample_additive(rng, a, b)
