"""
The classical completion Cl(X) of a restriction category with joins.

A classical map is a finite disjoint union of pieces (f, f') with f' <= f; a piece
behaves as f away from the domain of f'.  Two classical maps are equivalent when
both sides can be broken along a common finite set of restriction idempotents
into matching pieces.  ``cl_eq`` harvests the restrictions of every component
(and of every piece complement when the base has complements), breaks along
them and compares, so its verdict is ``equal`` (a witness was found),
``distinct`` (only over finpar, confirmed by the pointwise denotation) or
``unknown``.
"""
from dataclasses import dataclass
import itertools
import logging

from category_core import (
    ADDITIVE, CLASSICAL, DIFFERENTIAL, JOINS, NOWHERE, PRODUCTS, RestrictionModel,
    is_restriction_idempotent, leq, times,
)
from config import CLASSICAL_IDEMPOTENT_CAP
from errors import (
    ArityError, EnumerationBoundError, IncompatibleError, InvariantViolation, MissingCapabilityError,
    NotIdempotentError,
)

logger = logging.getLogger(__name__)

EQUAL = 'equal'
DISTINCT = 'distinct'
UNKNOWN = 'unknown'


@dataclass(frozen=True)
class Piece:
    f: object
    fprime: object


@dataclass(frozen=True, eq=False)
class ClassicalMap:
    base: RestrictionModel
    dom: object
    cod: object
    pieces: tuple

    __hash__ = None

    def __eq__(self, other):
        if not isinstance(other, ClassicalMap):
            return NotImplemented
        return cl_eq(self, other) == EQUAL

    def __str__(self):
        if not self.pieces:
            return f"empty : {self.dom} -> {self.cod}"
        describe = self.base.describe
        return " |_| ".join(f"({describe(p.f)}, {describe(p.fprime)})" for p in self.pieces)

    def to_json(self):
        def encode(g):
            return g.to_json() if hasattr(g, 'to_json') else str(g)
        return {"base": self.base.name,
                "pieces": [{"f": encode(p.f), "fprime": encode(p.fprime)} for p in self.pieces]}


def _is_finpar(base):
    from finpar import FinParModel
    return isinstance(base, FinParModel)


def _join2(base, f, g):
    return base.join([f, g], base.dom(f), base.cod(f))


def _piece_key(base, piece):
    return (base.describe(piece.f), base.describe(piece.fprime))


def collapsed(base, piece):
    """(f, f) is equivalent to the empty map; so is any (f, f') with f <= f'."""
    return leq(base, piece.f, piece.fprime)


def disjoint(base, p, q):
    """rs(f)rs(g) <= rs(f')rs(g) v rs(f)rs(g')."""
    rf, rg = base.restriction(p.f), base.restriction(q.f)
    rfp, rgp = base.restriction(p.fprime), base.restriction(q.fprime)
    overlap = base.compose(rf, rg)
    outside = _join2(base, base.compose(rfp, rg), base.compose(rf, rgp))
    return leq(base, overlap, outside)


def normalize(base, dom, cod, pieces, check=True):
    kept = [p for p in pieces if not collapsed(base, p)]
    kept.sort(key=lambda p: _piece_key(base, p))
    if check:
        for p, q in itertools.combinations(kept, 2):
            if not disjoint(base, p, q):
                raise InvariantViolation(
                    f"pieces ({base.describe(p.f)}, ...) and ({base.describe(q.f)}, ...) are not disjoint")
    return ClassicalMap(base, dom, cod, tuple(kept))


def _same_base(a, b):
    if a.base is not b.base and a.base.name != b.base.name:
        raise ArityError(f"classical maps over different bases: {a.base.name} and {b.base.name}")
    return a.base


# --- Constructors ---

def cl_of_base(base, f):
    dom, cod = base.dom(f), base.cod(f)
    return normalize(base, dom, cod, [Piece(f, base.empty(dom, cod))], check=False)


def cl_identity(base, a):
    return cl_of_base(base, base.identity(a))


def cl_empty(base, a, b):
    return ClassicalMap(base, a, b, ())


def cl_zero(base, a, b):
    return cl_of_base(base, base.zero(a, b))


def cl_proj(base, a, b, side):
    return cl_of_base(base, base.proj0(a, b) if side == 0 else base.proj1(a, b))


def cl_terminal(base, a):
    return cl_of_base(base, base.terminal(a))


# --- Structure ---

def cl_compose(a, b):
    """(f_i g_j, f_i' g_j v f_i g_j')."""
    base = _same_base(a, b)
    if a.cod != b.dom:
        raise ArityError(f"cannot compose {a} with {b}")
    pieces = []
    for p, q in itertools.product(a.pieces, b.pieces):
        fg = base.compose(p.f, q.f)
        pieces.append(Piece(fg, _join2(base, base.compose(p.fprime, q.f), base.compose(p.f, q.fprime))))
    return normalize(base, a.dom, b.cod, pieces)


def cl_restriction(a):
    base = a.base
    pieces = [Piece(base.restriction(p.f), base.restriction(p.fprime)) for p in a.pieces]
    return normalize(base, a.dom, a.dom, pieces)


def cl_pair(a, b):
    base = _same_base(a, b)
    if a.dom != b.dom:
        raise ArityError(f"cannot pair {a} with {b}")
    pieces = []
    for p, q in itertools.product(a.pieces, b.pieces):
        left = base.pair(p.fprime, q.f)
        right = base.pair(p.f, q.fprime)
        pieces.append(Piece(base.pair(p.f, q.f), _join2(base, left, right)))
    return normalize(base, a.dom, base.product(a.cod, b.cod), pieces)


def cl_add(a, b):
    base = _same_base(a, b)
    pieces = []
    for p, q in itertools.product(a.pieces, b.pieces):
        pieces.append(Piece(base.add(p.f, q.f), _join2(base, base.add(p.fprime, q.f), base.add(p.f, q.fprime))))
    return normalize(base, a.dom, a.cod, pieces)


def cl_diff(a):
    """Piecewise D; each piece keeps rs(D[f]) = 1 x rs(f)."""
    base = a.base
    pieces = []
    for p in a.pieces:
        df = base.diff(p.f)
        expected = times(base, base.identity(a.dom), base.restriction(p.f))
        if not base.equal(base.restriction(df), expected):
            raise InvariantViolation(f"rs(D[{base.describe(p.f)}]) is not 1 x rs(f)")
        pieces.append(Piece(df, base.diff(p.fprime)))
    return normalize(base, base.product(a.dom, a.dom), a.cod, pieces)


def cl_join_disjoint(a, b):
    base = _same_base(a, b)
    if a.dom != b.dom or a.cod != b.cod:
        raise ArityError(f"{a} and {b} are not parallel")
    return normalize(base, a.dom, a.cod, list(a.pieces) + list(b.pieces))


def _subtract_piece(base, p, q):
    """(f,f') \\ (g,g') = (f, f' v rs(g)f) |_| (rs(g')f, rs(g')f')."""
    outside = Piece(p.f, _join2(base, p.fprime, base.compose(base.restriction(q.f), p.f)))
    rgp = base.restriction(q.fprime)
    inside = Piece(base.compose(rgp, p.f), base.compose(rgp, p.fprime))
    return [outside, inside]


def cl_complement(a, b):
    """A \\ B: A restricted away from where B is defined; the relative complement when B <= A."""
    base = _same_base(a, b)
    pieces = list(a.pieces)
    for q in b.pieces:
        pieces = [r for p in pieces for r in _subtract_piece(base, p, q) if not collapsed(base, r)]
    return normalize(base, a.dom, a.cod, pieces)


def cl_join(family, dom, cod, base):
    """Join of a compatible family as a disjoint union of successive complements."""
    result = cl_empty(base, dom, cod)
    for member in family:
        if _is_finpar(base):
            rs_member, rs_result = cl_restriction(member), cl_restriction(result)
            if cl_eq(cl_compose(rs_member, result), cl_compose(rs_result, member)) == DISTINCT:
                raise IncompatibleError(f"{member} is not compatible with {result}")
        result = cl_join_disjoint(result, cl_complement(member, result))
    return result


# --- Breaking and refinement ---

def _require_idempotent(base, e):
    if not is_restriction_idempotent(base, e):
        raise NotIdempotentError(f"{base.describe(e)} is not a restriction idempotent")


def cl_break(a, e, check=True):
    """(f, f') == (ef, ef') |_| (f, f' v ef) on every piece."""
    base = a.base
    if check:
        _require_idempotent(base, e)
    pieces = []
    for p in a.pieces:
        ef = base.compose(e, p.f)
        pieces.append(Piece(ef, base.compose(e, p.fprime)))
        pieces.append(Piece(p.f, _join2(base, p.fprime, ef)))
    return normalize(base, a.dom, a.cod, pieces, check=False)


def refinement_idempotents(base, dom, idempotents):
    """e_I = (composite of e_i for i in I, that composite after the join of the e_j outside I)."""
    idempotents = list(idempotents)
    if len(idempotents) > CLASSICAL_IDEMPOTENT_CAP:
        raise EnumerationBoundError(f"{len(idempotents)} idempotents exceed the cap {CLASSICAL_IDEMPOTENT_CAP}")
    for e in idempotents:
        _require_idempotent(base, e)
    regions = []
    for mask in range(1 << len(idempotents)):
        inside = base.identity(dom)
        outside = []
        for index, e in enumerate(idempotents):
            if mask >> index & 1:
                inside = base.compose(inside, e)
            else:
                outside.append(e)
        excluded = base.compose(inside, base.join(outside, dom, dom)) if outside else base.empty(dom, dom)
        regions.append(Piece(inside, excluded))
    return regions


def cl_refine(a, idempotents):
    """A precomposed with every e_I; equivalent to A."""
    base = a.base
    pieces = []
    for region in refinement_idempotents(base, a.dom, idempotents):
        for p in a.pieces:
            f = base.compose(region.f, p.f)
            fprime = _join2(base, base.compose(region.fprime, p.f), base.compose(region.f, p.fprime))
            pieces.append(Piece(f, fprime))
    return normalize(base, a.dom, a.cod, pieces, check=False)


# --- Equality ---

def _pieces_match(base, left, right):
    if len(left) != len(right):
        return False
    unused = list(right)
    for p in left:
        for index, q in enumerate(unused):
            if base.equal(p.f, q.f) and base.equal(p.fprime, q.fprime):
                del unused[index]
                break
        else:
            return False
    return True


def harvest_idempotents(a, b):
    base = a.base
    trivial = [base.identity(a.dom), base.empty(a.dom, a.dom)]
    found = []
    for p in a.pieces + b.pieces:
        candidates = [p.f, p.fprime]
        if CLASSICAL in base.capabilities:
            candidates.append(base.complement(p.f, p.fprime))
        for g in candidates:
            e = base.restriction(g)
            if any(base.equal(e, known) for known in trivial + found):
                continue
            found.append(e)
    return found


def refined_match(a, b):
    """Break both sides along the harvested idempotents and compare piece multisets."""
    base = _same_base(a, b)
    idempotents = harvest_idempotents(a, b)
    if len(idempotents) > CLASSICAL_IDEMPOTENT_CAP:
        raise EnumerationBoundError(f"{len(idempotents)} idempotents exceed the cap {CLASSICAL_IDEMPOTENT_CAP}")
    left, right = a, b
    for e in idempotents:
        left, right = cl_break(left, e, check=False), cl_break(right, e, check=False)
    return _pieces_match(base, left.pieces, right.pieces)


def cl_eq(a, b):
    base = _same_base(a, b)
    if a.dom != b.dom or a.cod != b.cod:
        raise ArityError(f"{a} and {b} are not parallel")
    if _pieces_match(base, a.pieces, b.pieces):
        return EQUAL
    try:
        if refined_match(a, b):
            return EQUAL
    except EnumerationBoundError as error:
        logger.debug("no refinement attempted: %s", error)
    if _is_finpar(base):
        return EQUAL if cl_denote_finpar(a) == cl_denote_finpar(b) else DISTINCT
    return UNKNOWN


def cl_leq(a, b):
    return cl_eq(cl_compose(cl_restriction(a), b), a)


def cl_compat(a, b):
    return cl_eq(cl_compose(cl_restriction(a), b), cl_compose(cl_restriction(b), a))


def cl_denote_finpar(a):
    """The partial function a piece family denotes: f away from dom f', glued over the pieces."""
    from finpar import pf_complement, pf_join
    if not _is_finpar(a.base):
        raise MissingCapabilityError(a.base.name, 'finpar denotation')
    parts = [pf_complement(p.f, p.fprime) for p in a.pieces]
    return pf_join(parts, a.dom, a.cod)


def germ(base, f, e):
    """f \\ (e f): the part of f living where e is undefined."""
    return cl_complement(cl_of_base(base, f), cl_of_base(base, base.compose(e, f)))


# --- Model adapter ---

class ClModel(RestrictionModel):
    """Cl(base) with the three-valued equality collapsed to 'equal or not'; unknown verdicts are counted."""

    def __init__(self, base, split=(1, 3)):
        base.require((JOINS, NOWHERE), 'classical completion')
        self.base = base
        self.split = split
        self.name = f"cl({base.name})"
        lifted = base.capabilities & {PRODUCTS, ADDITIVE, DIFFERENTIAL}
        self.capabilities = frozenset(lifted | {JOINS, NOWHERE, CLASSICAL})
        self.unknown = 0

    def lift(self, f):
        return cl_of_base(self.base, f)

    def compose(self, f, g):
        return cl_compose(f, g)

    def identity(self, obj):
        return cl_identity(self.base, obj)

    def restriction(self, f):
        return cl_restriction(f)

    def equal(self, f, g):
        verdict = cl_eq(f, g)
        if verdict == UNKNOWN:
            self.unknown += 1
            logger.debug("classical equality unknown: %s vs %s", f, g)
        return verdict == EQUAL

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def product(self, a, b):
        return self.base.product(a, b)

    def terminal_object(self):
        return self.base.terminal_object()

    def pair(self, f, g):
        return cl_pair(f, g)

    def proj0(self, a, b):
        return cl_proj(self.base, a, b, 0)

    def proj1(self, a, b):
        return cl_proj(self.base, a, b, 1)

    def terminal(self, a):
        return cl_terminal(self.base, a)

    def add(self, f, g):
        return cl_add(f, g)

    def zero(self, a, b):
        return cl_zero(self.base, a, b)

    def join(self, maps, dom, cod):
        return cl_join(maps, dom, cod, self.base)

    def empty(self, a, b):
        return cl_empty(self.base, a, b)

    def complement(self, f, g):
        return cl_complement(f, g)

    def diff(self, f):
        if DIFFERENTIAL not in self.base.capabilities:
            raise MissingCapabilityError(self.name, DIFFERENTIAL)
        return cl_diff(f)

    def sample_object(self, rng):
        return self.base.sample_object(rng)

    def sample(self, rng, dom, cod):
        if rng.coin(1, 12):
            return cl_empty(self.base, dom, cod)
        f = self.base.sample(rng, dom, cod)
        if rng.coin():
            mapped = self.lift(f)
        else:
            fprime = self.base.compose(self.base.sample_idempotent(rng, dom), f)
            mapped = normalize(self.base, dom, cod, [Piece(f, fprime)], check=False)
        if rng.coin(*self.split):
            mapped = cl_break(mapped, self.base.sample_idempotent(rng, dom), check=False)
        return mapped

    def sample_total(self, rng, a, b):
        return self.lift(self.base.sample_total(rng, a, b))

    def sample_idempotent(self, rng, a):
        e = self.base.sample_idempotent(rng, a)
        if rng.coin():
            return self.lift(e)
        inner = self.base.compose(self.base.sample_idempotent(rng, a), e)
        return normalize(self.base, a, a, [Piece(e, inner)], check=False)

    def sample_linear(self, rng, a, b):
        f = self.base.sample_linear(rng, a, b)
        if rng.coin():
            return self.lift(f)
        fprime = self.base.compose(self.base.sample_idempotent(rng, a), f)
        return normalize(self.base, a, b, [Piece(f, fprime)], check=False)

    def sample_additive(self, rng, a, b):
        return self.lift(self.base.sample_additive(rng, a, b))

    def objects(self):
        return self.base.objects()

    def enumerate(self, a, b):
        """Over finpar every classical map is equivalent to a single total-style piece."""
        if not _is_finpar(self.base):
            raise EnumerationBoundError(f"{self.name} hom-sets are not enumerable")
        return [self.lift(f) for f in self.base.enumerate(a, b)]

    def points(self, a):
        return [self.lift(e) for e in self.base.points(a)]

    def notes(self):
        return {"unknown_verdicts": self.unknown}

    def reset_notes(self):
        self.unknown = 0
