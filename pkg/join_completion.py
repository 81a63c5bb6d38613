"""
The join completion Jn(X): finitely generated down-closed sets of pairwise
compatible base maps.

A JnMap is stored by an antichain of generators; the down-closure is implicit.
Because a down-closure is a union of principal ideals, A <= B holds exactly when
every generator of A lies below some generator of B, and equality is mutual
domination.  Only finite joins are represented.
"""
from dataclasses import dataclass
import itertools
import logging

from category_core import (
    ADDITIVE, DIFFERENTIAL, JOINS, NOWHERE, PRODUCTS, RestrictionModel, compat, leq,
)
from errors import ArityError, EnumerationBoundError, IncompatibleError, MissingCapabilityError

logger = logging.getLogger(__name__)

# hom-sets with more base maps than this are not enumerated as antichains
JN_ENUMERATION_GENERATORS = 12


@dataclass(frozen=True, eq=False)
class JnMap:
    base: RestrictionModel
    dom: object
    cod: object
    generators: tuple

    def __eq__(self, other):
        if not isinstance(other, JnMap):
            return NotImplemented
        return jn_eq(self, other)

    __hash__ = None

    def __str__(self):
        if not self.generators:
            return f"empty : {self.dom} -> {self.cod}"
        return "join{ " + " ; ".join(self.base.describe(g) for g in self.generators) + " }"

    def to_json(self):
        return {
            "base": self.base.name,
            "generators": [g.to_json() if hasattr(g, 'to_json') else str(g) for g in self.generators],
        }


def _base_empty(base, f):
    if NOWHERE not in base.capabilities:
        return False
    return base.equal(f, base.empty(base.dom(f), base.cod(f)))


def normalize(base, dom, cod, generators):
    """Drop empty and dominated generators; the first of two equal generators is kept."""
    candidates = [g for g in generators if not _base_empty(base, g)]
    kept = []
    for index, g in enumerate(candidates):
        dominated = False
        for other_index, h in enumerate(candidates):
            if other_index == index or not leq(base, g, h):
                continue
            # equal generators: keep the earliest
            if leq(base, h, g) and other_index > index:
                continue
            dominated = True
            break
        if not dominated:
            kept.append(g)
    return JnMap(base, dom, cod, tuple(kept))


def _check_compatible(base, generators):
    for f, g in itertools.combinations(generators, 2):
        if not compat(base, f, g):
            raise IncompatibleError(f"{base.describe(f)} and {base.describe(g)} are not compatible")


def make_jn(base, dom, cod, generators, check=True):
    generators = tuple(generators)
    for g in generators:
        if base.dom(g) != dom or base.cod(g) != cod:
            raise ArityError(f"{base.describe(g)} is not a map {dom} -> {cod}")
    if check:
        _check_compatible(base, generators)
    return normalize(base, dom, cod, generators)


def jn_of_base(base, f):
    return make_jn(base, base.dom(f), base.cod(f), [f], check=False)


def jn_identity(base, a):
    return JnMap(base, a, a, (base.identity(a),))


def jn_empty(base, a, b):
    return JnMap(base, a, b, ())


def _same_base(a, b):
    if a.base is not b.base and a.base.name != b.base.name:
        raise ArityError(f"join-completion maps over different bases: {a.base.name} and {b.base.name}")
    return a.base


def jn_compose(a, b):
    """{f g : f in A, g in B}."""
    base = _same_base(a, b)
    if a.cod != b.dom:
        raise ArityError(f"cannot compose {a} with {b}")
    composites = [base.compose(f, g) for f in a.generators for g in b.generators]
    return normalize(base, a.dom, b.cod, composites)


def jn_restriction(a):
    base = a.base
    return normalize(base, a.dom, a.dom, [base.restriction(f) for f in a.generators])


def jn_join(family, dom, cod):
    family = list(family)
    if not family:
        raise ArityError("jn_join needs the base model; use jn_empty for the nullary join")
    base = family[0].base
    generators = []
    for member in family:
        _same_base(family[0], member)
        if member.dom != dom or member.cod != cod:
            raise ArityError(f"{member} is not a map {dom} -> {cod}")
        generators.extend(member.generators)
    _check_compatible(base, generators)
    return normalize(base, dom, cod, generators)


def jn_pair(a, b):
    base = _same_base(a, b)
    pairs = [base.pair(f, g) for f in a.generators for g in b.generators]
    return normalize(base, a.dom, base.product(a.cod, b.cod), pairs)


def jn_add(a, b):
    base = _same_base(a, b)
    return normalize(base, a.dom, a.cod, [base.add(f, g) for f in a.generators for g in b.generators])


def jn_diff(a):
    """D[A] is the down-closure of {D[f] : f in A}."""
    base = a.base
    return normalize(base, base.product(a.dom, a.dom), a.cod, [base.diff(f) for f in a.generators])


def jn_leq(a, b):
    base = _same_base(a, b)
    return all(any(leq(base, f, g) for g in b.generators) for f in a.generators)


def jn_eq(a, b):
    return jn_leq(a, b) and jn_leq(b, a)


def jn_compat(a, b):
    base = _same_base(a, b)
    return all(compat(base, f, g) for f in a.generators for g in b.generators)


def jn_denote_finpar(a):
    """Union of the generator graphs, for a finpar base."""
    from finpar import pf_join
    return pf_join(a.generators, a.dom, a.cod)


class JnModel(RestrictionModel):
    """Jn(base); lifts products, sums and the differential when the base has them."""

    def __init__(self, base, max_generators=2):
        self.base = base
        self.max_generators = max_generators
        self.name = f"jn({base.name})"
        lifted = base.capabilities & {PRODUCTS, ADDITIVE, DIFFERENTIAL}
        self.capabilities = frozenset(lifted | {JOINS, NOWHERE})

    def lift(self, f):
        return jn_of_base(self.base, f)

    def compose(self, f, g):
        return jn_compose(f, g)

    def identity(self, obj):
        return jn_identity(self.base, obj)

    def restriction(self, f):
        return jn_restriction(f)

    def equal(self, f, g):
        return jn_eq(f, g)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def describe(self, f):
        return str(f)

    def product(self, a, b):
        return self.base.product(a, b)

    def terminal_object(self):
        return self.base.terminal_object()

    def pair(self, f, g):
        return jn_pair(f, g)

    def proj0(self, a, b):
        return self.lift(self.base.proj0(a, b))

    def proj1(self, a, b):
        return self.lift(self.base.proj1(a, b))

    def terminal(self, a):
        return self.lift(self.base.terminal(a))

    def add(self, f, g):
        return jn_add(f, g)

    def zero(self, a, b):
        return self.lift(self.base.zero(a, b))

    def join(self, maps, dom, cod):
        maps = list(maps)
        if not maps:
            return jn_empty(self.base, dom, cod)
        return jn_join(maps, dom, cod)

    def empty(self, a, b):
        return jn_empty(self.base, a, b)

    def diff(self, f):
        if DIFFERENTIAL not in self.base.capabilities:
            raise MissingCapabilityError(self.name, DIFFERENTIAL)
        return jn_diff(f)

    def sample_object(self, rng):
        return self.base.sample_object(rng)

    def sample(self, rng, dom, cod):
        """Restrictions of one base map, so the generators are compatible by construction."""
        if rng.coin(1, 12):
            return jn_empty(self.base, dom, cod)
        h = self.base.sample(rng, dom, cod)
        count = rng.randint(1, self.max_generators)
        if count == 1:
            return jn_of_base(self.base, h)
        pieces = [self.base.compose(self.base.sample_idempotent(rng, dom), h) for _ in range(count)]
        return normalize(self.base, dom, cod, pieces)

    def sample_total(self, rng, a, b):
        return self.lift(self.base.sample_total(rng, a, b))

    def sample_idempotent(self, rng, a):
        count = rng.randint(1, self.max_generators)
        return normalize(self.base, a, a, [self.base.sample_idempotent(rng, a) for _ in range(count)])

    def sample_linear(self, rng, a, b):
        return self.lift(self.base.sample_linear(rng, a, b))

    def sample_additive(self, rng, a, b):
        return self.lift(self.base.sample_additive(rng, a, b))

    def objects(self):
        return self.base.objects()

    def enumerate(self, a, b):
        """Every antichain of pairwise compatible non-empty base maps."""
        maps = [f for f in self.base.enumerate(a, b) if not _base_empty(self.base, f)]
        if len(maps) > JN_ENUMERATION_GENERATORS:
            raise EnumerationBoundError(f"{len(maps)} base maps {a} -> {b} is too many to enumerate antichains")
        found = [jn_empty(self.base, a, b)]
        for size in range(1, len(maps) + 1):
            for chosen in itertools.combinations(maps, size):
                if any(not compat(self.base, f, g) for f, g in itertools.combinations(chosen, 2)):
                    continue
                if any(leq(self.base, f, g) for f, g in itertools.permutations(chosen, 2)):
                    continue
                found.append(JnMap(self.base, a, b, chosen))
        return found

    def points(self, a):
        return [self.lift(e) for e in self.base.points(a)]
