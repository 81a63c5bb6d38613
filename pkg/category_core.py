"""
Model interface for restriction categories and the executable axiom suites.

A model supplies compose / identity / restriction / equal plus optional
capability blocks (products, additive, joins, classical, differential).  Axioms
are data: an identifier, the objects and sampled maps they quantify over, and a
builder returning the claims to decide.  ``check_suite`` instantiates them with a
deterministic splitmix64 stream per (seed, axiom, case), so any failure can be
replayed from its report.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
import itertools
import logging
import math
import time

from config import DEFAULT_CASES, DIFFREST_SEED, EXHAUSTIVE_COMBINATION_LIMIT
from errors import ArityError, EnumerationBoundError, MissingCapabilityError
from sampling import case_stream

logger = logging.getLogger(__name__)

PRODUCTS = 'products'
ADDITIVE = 'additive'
JOINS = 'joins'
CLASSICAL = 'classical'
DIFFERENTIAL = 'differential'
NOWHERE = 'nowhere-defined'


class RestrictionModel(ABC):
    """A restriction category with decidable equality and a seeded sampler."""

    name = 'model'
    capabilities = frozenset()

    def require(self, needed, suite=None):
        for capability in needed:
            if capability not in self.capabilities:
                raise MissingCapabilityError(self.name, capability, suite)

    def _missing(self, capability):
        raise MissingCapabilityError(self.name, capability)

    # --- required ---

    @abstractmethod
    def compose(self, f, g):
        """f then g."""

    @abstractmethod
    def identity(self, obj):
        pass

    @abstractmethod
    def restriction(self, f):
        pass

    @abstractmethod
    def equal(self, f, g):
        pass

    @abstractmethod
    def dom(self, f):
        pass

    @abstractmethod
    def cod(self, f):
        pass

    @abstractmethod
    def sample_object(self, rng):
        pass

    @abstractmethod
    def sample(self, rng, dom, cod):
        pass

    def describe(self, f):
        return str(f)

    # --- products ---

    def product(self, a, b):
        self._missing(PRODUCTS)

    def terminal_object(self):
        self._missing(PRODUCTS)

    def pair(self, f, g):
        self._missing(PRODUCTS)

    def proj0(self, a, b):
        self._missing(PRODUCTS)

    def proj1(self, a, b):
        self._missing(PRODUCTS)

    def terminal(self, a):
        self._missing(PRODUCTS)

    # --- additive ---

    def add(self, f, g):
        self._missing(ADDITIVE)

    def zero(self, a, b):
        self._missing(ADDITIVE)

    # --- joins ---

    def join(self, maps, dom, cod):
        self._missing(JOINS)

    def empty(self, a, b):
        self._missing(NOWHERE)

    # --- classical ---

    def complement(self, f, g):
        self._missing(CLASSICAL)

    # --- differential ---

    def diff(self, f):
        self._missing(DIFFERENTIAL)

    # --- samplers and enumeration ---

    def sample_total(self, rng, a, b):
        self._missing('sample_total')

    def sample_idempotent(self, rng, a):
        return self.restriction(self.sample(rng, a, self.sample_object(rng)))

    def sample_linear(self, rng, a, b):
        self._missing('sample_linear')

    def sample_additive(self, rng, a, b):
        return self.sample_linear(rng, a, b)

    def objects(self):
        self._missing('objects')

    def enumerate(self, a, b):
        self._missing('enumerate')

    def points(self, a):
        """Restriction idempotents on single points of a, when the model has points."""
        return []

    def notes(self):
        """Model-specific counters reported alongside a suite run."""
        return {}

    def reset_notes(self):
        pass


# --- Generic derived operations ---

def seq(model, *maps):
    result = maps[0]
    for f in maps[1:]:
        result = model.compose(result, f)
    return result


def leq(model, f, g):
    return model.equal(model.compose(model.restriction(f), g), f)


def compat(model, f, g):
    return model.equal(model.compose(model.restriction(f), g), model.compose(model.restriction(g), f))


def is_total(model, f):
    return model.equal(model.restriction(f), model.identity(model.dom(f)))


def is_restriction_idempotent(model, e):
    return model.equal(model.restriction(e), e)


def is_empty(model, f):
    return model.equal(f, model.empty(model.dom(f), model.cod(f)))


def times(model, f, g):
    """f x g = <p0 f, p1 g>."""
    a, b = model.dom(f), model.dom(g)
    return model.pair(model.compose(model.proj0(a, b), f), model.compose(model.proj1(a, b), g))


def diagonal(model, a):
    identity = model.identity(a)
    return model.pair(identity, identity)


def plus(model, a):
    """The canonical monoid addition p0 + p1 : a x a -> a."""
    return model.add(model.proj0(a, a), model.proj1(a, a))


def exchange(model, x, y):
    """ex = <p0 x p0, p1 x p1> : (x*y)*(x*y) -> (x*x)*(y*y)."""
    return model.pair(times(model, model.proj0(x, y), model.proj0(x, y)),
                      times(model, model.proj1(x, y), model.proj1(x, y)))


def _additivity_parts(model, f):
    a, b = model.dom(f), model.cod(f)
    along_sum = model.compose(plus(model, a), f)
    sum_of_parts = model.add(model.compose(model.proj0(a, a), f), model.compose(model.proj1(a, a), f))
    zero_then_f = model.compose(model.zero(a, a), f)
    return along_sum, sum_of_parts, zero_then_f, model.zero(a, b)


def is_additive(model, f):
    along_sum, sum_of_parts, zero_then_f, zero = _additivity_parts(model, f)
    return compat(model, along_sum, sum_of_parts) and compat(model, zero_then_f, zero)


def is_strongly_additive(model, f):
    along_sum, sum_of_parts, zero_then_f, zero = _additivity_parts(model, f)
    return leq(model, sum_of_parts, along_sum) and model.equal(zero_then_f, zero)


def is_linear(model, f):
    a = model.dom(f)
    return compat(model, model.diff(f), model.compose(model.proj0(a, a), f))


# --- Axioms as data ---

@dataclass(frozen=True)
class Slot:
    name: str
    dom: object
    cod: object
    kind: str = 'any'  # any | total | idem | linear | additive


@dataclass(frozen=True)
class Claim:
    relation: str  # eq | leq | compat | holds
    lhs: object
    rhs: object = None
    label: str = ''


@dataclass(frozen=True)
class Axiom:
    ident: str
    suite: str
    statement: str
    objects: str
    slots: tuple
    check: object
    needs: tuple = ()


AXIOMS = []

SUITE_CAPABILITIES = {
    'R': (),
    'R-LEMMA': (),
    'CR': (PRODUCTS,),
    'LA': (ADDITIVE,),
    'CLA': (PRODUCTS, ADDITIVE),
    'DR': (PRODUCTS, ADDITIVE, DIFFERENTIAL),
    'JOIN': (JOINS, NOWHERE),
    'ADD-PRED': (PRODUCTS, ADDITIVE),
    'LIN': (PRODUCTS, ADDITIVE, DIFFERENTIAL),
    'CLASSICAL': (JOINS, NOWHERE, CLASSICAL),
}
SUITES = tuple(SUITE_CAPABILITIES)


def axiom(ident, suite, statement, objects, *slots, needs=()):
    def register(check):
        AXIOMS.append(Axiom(ident, suite, statement, objects, tuple(Slot(*s) for s in slots), check, tuple(needs)))
        return check
    return register


def eq(lhs, rhs, label=''):
    return Claim('eq', lhs, rhs, label)


def holds(value, label=''):
    return Claim('holds', bool(value), None, label)


# R: restriction axioms

@axiom('R.1', 'R', "rs(f) f = f", 'AB', ('f', 'A', 'B'))
def _r1(m, o, x):
    return [eq(m.compose(m.restriction(x['f']), x['f']), x['f'])]


@axiom('R.2', 'R', "rs(f) rs(g) = rs(g) rs(f)", 'ABC', ('f', 'A', 'B'), ('g', 'A', 'C'))
def _r2(m, o, x):
    rf, rg = m.restriction(x['f']), m.restriction(x['g'])
    return [eq(m.compose(rf, rg), m.compose(rg, rf))]


@axiom('R.3', 'R', "rs(rs(f) g) = rs(f) rs(g)", 'ABC', ('f', 'A', 'B'), ('g', 'A', 'C'))
def _r3(m, o, x):
    rf = m.restriction(x['f'])
    return [eq(m.restriction(m.compose(rf, x['g'])), m.compose(rf, m.restriction(x['g'])))]


@axiom('R.4', 'R', "f rs(g) = rs(f g) f", 'ABC', ('f', 'A', 'B'), ('g', 'B', 'C'))
def _r4(m, o, x):
    f, g = x['f'], x['g']
    return [eq(m.compose(f, m.restriction(g)), m.compose(m.restriction(m.compose(f, g)), f))]


# R-LEMMA: basic consequences

@axiom('R-LEMMA.idempotent', 'R-LEMMA', "rs(f) rs(f) = rs(f)", 'AB', ('f', 'A', 'B'))
def _rl_idempotent(m, o, x):
    rf = m.restriction(x['f'])
    return [eq(m.compose(rf, rf), rf)]


@axiom('R-LEMMA.absorb', 'R-LEMMA', "rs(f) rs(f g) = rs(f g)", 'ABC', ('f', 'A', 'B'), ('g', 'B', 'C'))
def _rl_absorb(m, o, x):
    rfg = m.restriction(m.compose(x['f'], x['g']))
    return [eq(m.compose(m.restriction(x['f']), rfg), rfg)]


@axiom('R-LEMMA.inner', 'R-LEMMA', "rs(f rs(g)) = rs(f g)", 'ABC', ('f', 'A', 'B'), ('g', 'B', 'C'))
def _rl_inner(m, o, x):
    f, g = x['f'], x['g']
    return [eq(m.restriction(m.compose(f, m.restriction(g))), m.restriction(m.compose(f, g)))]


@axiom('R-LEMMA.rs-rs', 'R-LEMMA', "rs(rs(f)) = rs(f)", 'AB', ('f', 'A', 'B'))
def _rl_rs_rs(m, o, x):
    rf = m.restriction(x['f'])
    return [eq(m.restriction(rf), rf)]


@axiom('R-LEMMA.rs-product', 'R-LEMMA', "rs(rs(f) rs(g)) = rs(f) rs(g)", 'ABC', ('f', 'A', 'B'), ('g', 'A', 'C'))
def _rl_rs_product(m, o, x):
    both = m.compose(m.restriction(x['f']), m.restriction(x['g']))
    return [eq(m.restriction(both), both)]


@axiom('R-LEMMA.identity', 'R-LEMMA', "rs(1) = 1", 'A')
def _rl_identity(m, o, x):
    identity = m.identity(o['A'])
    return [eq(m.restriction(identity), identity)]


@axiom('R-LEMMA.absorbed', 'R-LEMMA', "rs(f) g = g implies rs(g) = rs(f) rs(g)", 'ABC', ('f', 'A', 'B'), ('h', 'A', 'C'))
def _rl_absorbed(m, o, x):
    rf = m.restriction(x['f'])
    g = m.compose(rf, x['h'])
    return [eq(m.restriction(g), m.compose(rf, m.restriction(g)))]


@axiom('R-LEMMA.alt-compat', 'R-LEMMA', "f ~ g iff rs(f) g <= f iff rs(g) f <= g", 'AB', ('f', 'A', 'B'), ('g', 'A', 'B'))
def _rl_alt_compat(m, o, x):
    f, g = x['f'], x['g']
    verdicts = {compat(m, f, g), leq(m, m.compose(m.restriction(f), g), f), leq(m, m.compose(m.restriction(g), f), g)}
    return [holds(len(verdicts) == 1)]


@axiom('R-LEMMA.antisymmetric', 'R-LEMMA', "f <= g and g <= f implies f = g", 'AB',
       ('f', 'A', 'B'), ('e', 'A', 'A', 'idem'))
def _rl_antisymmetric(m, o, x):
    """Sanity check: <= is defined through equality, so this only confirms the two agree."""
    f = x['f']
    g = m.compose(x['e'], f)
    if leq(m, f, g) and leq(m, g, f):
        return [eq(f, g)]
    return [holds(True)]


# CR: cartesian restriction structure

@axiom('CR.terminal', 'CR', "!_T = 1_T and f !_B = rs(f) !_A", 'AB', ('f', 'A', 'B'))
def _cr_terminal(m, o, x):
    f, t = x['f'], m.terminal_object()
    return [
        eq(m.terminal(t), m.identity(t), 'terminal identity'),
        eq(m.compose(f, m.terminal(o['B'])), m.compose(m.restriction(f), m.terminal(o['A'])), 'lax terminal'),
        holds(is_total(m, m.terminal(o['A'])), 'terminal map total'),
    ]


@axiom('CR.lax0', 'CR', "<f,g> p0 = rs(<f,g>) f", 'CAB', ('f', 'C', 'A'), ('g', 'C', 'B'))
def _cr_lax0(m, o, x):
    pairing = m.pair(x['f'], x['g'])
    return [eq(m.compose(pairing, m.proj0(o['A'], o['B'])), m.compose(m.restriction(pairing), x['f']))]


@axiom('CR.lax1', 'CR', "<f,g> p1 = rs(<f,g>) g", 'CAB', ('f', 'C', 'A'), ('g', 'C', 'B'))
def _cr_lax1(m, o, x):
    pairing = m.pair(x['f'], x['g'])
    return [eq(m.compose(pairing, m.proj1(o['A'], o['B'])), m.compose(m.restriction(pairing), x['g']))]


@axiom('CR.rs-pair', 'CR', "rs(<f,g>) = rs(f) rs(g)", 'CAB', ('f', 'C', 'A'), ('g', 'C', 'B'))
def _cr_rs_pair(m, o, x):
    return [eq(m.restriction(m.pair(x['f'], x['g'])), m.compose(m.restriction(x['f']), m.restriction(x['g'])))]


@axiom('CR.unique', 'CR', "<f,g> p0 = rs(g) f and <f,g> p1 = rs(f) g", 'CAB', ('f', 'C', 'A'), ('g', 'C', 'B'))
def _cr_unique(m, o, x):
    f, g = x['f'], x['g']
    pairing = m.pair(f, g)
    return [
        eq(m.compose(pairing, m.proj0(o['A'], o['B'])), m.compose(m.restriction(g), f)),
        eq(m.compose(pairing, m.proj1(o['A'], o['B'])), m.compose(m.restriction(f), g)),
    ]


@axiom('CR.e-pair', 'CR', "e <f,g> = <e f, g> = <f, e g>", 'CAB',
       ('e', 'C', 'C', 'idem'), ('f', 'C', 'A'), ('g', 'C', 'B'))
def _cr_e_pair(m, o, x):
    e, f, g = x['e'], x['f'], x['g']
    lhs = m.compose(e, m.pair(f, g))
    return [eq(lhs, m.pair(m.compose(e, f), g)), eq(lhs, m.pair(f, m.compose(e, g)))]


@axiom('CR.precompose', 'CR', "h <f,g> = <h f, h g>", 'DCAB', ('h', 'D', 'C'), ('f', 'C', 'A'), ('g', 'C', 'B'))
def _cr_precompose(m, o, x):
    h, f, g = x['h'], x['f'], x['g']
    return [eq(m.compose(h, m.pair(f, g)), m.pair(m.compose(h, f), m.compose(h, g)))]


@axiom('CR.pair-order', 'CR', "f <= f' and g <= g' implies <f,g> <= <f',g'>", 'CAB',
       ('f2', 'C', 'A'), ('g2', 'C', 'B'), ('e1', 'C', 'C', 'idem'), ('e2', 'C', 'C', 'idem'))
def _cr_pair_order(m, o, x):
    f2, g2 = x['f2'], x['g2']
    f, g = m.compose(x['e1'], f2), m.compose(x['e2'], g2)
    return [Claim('leq', m.pair(f, g), m.pair(f2, g2))]


@axiom('CR.pair-compat', 'CR', "f ~ f' and g ~ g' implies <f,g> ~ <f',g'>", 'CAB',
       ('f', 'C', 'A'), ('g', 'C', 'B'), ('e1', 'C', 'C', 'idem'), ('e2', 'C', 'C', 'idem'))
def _cr_pair_compat(m, o, x):
    f, g, e1, e2 = x['f'], x['g'], x['e1'], x['e2']
    return [Claim('compat', m.pair(m.compose(e1, f), m.compose(e2, g)), m.pair(m.compose(e2, f), m.compose(e1, g)))]


@axiom('CR.times-total', 'CR', "f total implies (f x g) p1 = p1 g", 'ABCD', ('f', 'A', 'B', 'total'), ('g', 'C', 'D'))
def _cr_times_total(m, o, x):
    f, g = x['f'], x['g']
    lhs = m.compose(times(m, f, g), m.proj1(o['B'], o['D']))
    return [eq(lhs, m.compose(m.proj1(o['A'], o['C']), g))]


@axiom('CR.proj-total', 'CR', "projections are total and <p0,p1> = 1", 'AB')
def _cr_proj_total(m, o, x):
    a, b = o['A'], o['B']
    p0, p1 = m.proj0(a, b), m.proj1(a, b)
    return [holds(is_total(m, p0), 'p0 total'), holds(is_total(m, p1), 'p1 total'),
            eq(m.pair(p0, p1), m.identity(m.product(a, b)))]


# LA: left additive structure

@axiom('LA.comm', 'LA', "f + g = g + f", 'AB', ('f', 'A', 'B'), ('g', 'A', 'B'))
def _la_comm(m, o, x):
    return [eq(m.add(x['f'], x['g']), m.add(x['g'], x['f']))]


@axiom('LA.assoc', 'LA', "(f + g) + h = f + (g + h)", 'AB', ('f', 'A', 'B'), ('g', 'A', 'B'), ('h', 'A', 'B'))
def _la_assoc(m, o, x):
    f, g, h = x['f'], x['g'], x['h']
    return [eq(m.add(m.add(f, g), h), m.add(f, m.add(g, h)))]


@axiom('LA.unit', 'LA', "f + 0 = f", 'AB', ('f', 'A', 'B'))
def _la_unit(m, o, x):
    return [eq(m.add(x['f'], m.zero(o['A'], o['B'])), x['f'])]


@axiom('LA.rs-add', 'LA', "rs(f + g) = rs(f) rs(g)", 'AB', ('f', 'A', 'B'), ('g', 'A', 'B'))
def _la_rs_add(m, o, x):
    return [eq(m.restriction(m.add(x['f'], x['g'])), m.compose(m.restriction(x['f']), m.restriction(x['g'])))]


@axiom('LA.rs-zero', 'LA', "rs(0) = 1", 'AB')
def _la_rs_zero(m, o, x):
    return [eq(m.restriction(m.zero(o['A'], o['B'])), m.identity(o['A']))]


@axiom('LA.left-dist', 'LA', "h (f + g) = h f + h g", 'CAB', ('h', 'C', 'A'), ('f', 'A', 'B'), ('g', 'A', 'B'))
def _la_left_dist(m, o, x):
    h, f, g = x['h'], x['f'], x['g']
    return [eq(m.compose(h, m.add(f, g)), m.add(m.compose(h, f), m.compose(h, g)))]


@axiom('LA.left-zero', 'LA', "h 0 = rs(h) 0", 'CAB', ('h', 'C', 'A'))
def _la_left_zero(m, o, x):
    h = x['h']
    return [eq(m.compose(h, m.zero(o['A'], o['B'])), m.compose(m.restriction(h), m.zero(o['C'], o['B'])))]


@axiom('LA.restrict-sum', 'LA', "f + g = rs(g) f + rs(f) g", 'AB', ('f', 'A', 'B'), ('g', 'A', 'B'))
def _la_restrict_sum(m, o, x):
    f, g = x['f'], x['g']
    return [eq(m.add(f, g), m.add(m.compose(m.restriction(g), f), m.compose(m.restriction(f), g)))]


@axiom('LA.idem-sum', 'LA', "e (f + g) = e f + g = f + e g", 'AB',
       ('e', 'A', 'A', 'idem'), ('f', 'A', 'B'), ('g', 'A', 'B'))
def _la_idem_sum(m, o, x):
    e, f, g = x['e'], x['f'], x['g']
    lhs = m.compose(e, m.add(f, g))
    return [eq(lhs, m.add(m.compose(e, f), g)), eq(lhs, m.add(f, m.compose(e, g)))]


@axiom('LA.order', 'LA', "f <= f' and g <= g' implies f + g <= f' + g'", 'AB',
       ('f2', 'A', 'B'), ('g2', 'A', 'B'), ('e1', 'A', 'A', 'idem'), ('e2', 'A', 'A', 'idem'))
def _la_order(m, o, x):
    f2, g2 = x['f2'], x['g2']
    f, g = m.compose(x['e1'], f2), m.compose(x['e2'], g2)
    return [Claim('leq', m.add(f, g), m.add(f2, g2))]


@axiom('LA.compat', 'LA', "f ~ f' and g ~ g' implies f + g ~ f' + g'", 'AB',
       ('f', 'A', 'B'), ('g', 'A', 'B'), ('e1', 'A', 'A', 'idem'), ('e2', 'A', 'A', 'idem'))
def _la_compat(m, o, x):
    f, g, e1, e2 = x['f'], x['g'], x['e1'], x['e2']
    return [Claim('compat', m.add(m.compose(e1, f), m.compose(e2, g)), m.add(m.compose(e2, f), m.compose(e1, g)))]


# CLA: cartesian left additive structure

@axiom('CLA.times-add', 'CLA', "(f + g) x (h + k) = (f x h) + (g x k)", 'ABCD',
       ('f', 'A', 'B'), ('g', 'A', 'B'), ('h', 'C', 'D'), ('k', 'C', 'D'))
def _cla_times_add(m, o, x):
    f, g, h, k = x['f'], x['g'], x['h'], x['k']
    return [eq(times(m, m.add(f, g), m.add(h, k)), m.add(times(m, f, h), times(m, g, k)))]


@axiom('CLA.zero', 'CLA', "0 x 0 = 0", 'ABCD')
def _cla_zero(m, o, x):
    a, b, c, d = o['A'], o['B'], o['C'], o['D']
    return [eq(times(m, m.zero(a, b), m.zero(c, d)), m.zero(m.product(a, c), m.product(b, d)))]


@axiom('CLA.pair-add', 'CLA', "<f,g> + <f',g'> = <f + f', g + g'>", 'CAB',
       ('f', 'C', 'A'), ('g', 'C', 'B'), ('f2', 'C', 'A'), ('g2', 'C', 'B'))
def _cla_pair_add(m, o, x):
    f, g, f2, g2 = x['f'], x['g'], x['f2'], x['g2']
    return [eq(m.add(m.pair(f, g), m.pair(f2, g2)), m.pair(m.add(f, f2), m.add(g, g2)))]


@axiom('CLA.pair-zero', 'CLA', "<0,0> = 0", 'CAB')
def _cla_pair_zero(m, o, x):
    c, a, b = o['C'], o['A'], o['B']
    return [eq(m.pair(m.zero(c, a), m.zero(c, b)), m.zero(c, m.product(a, b)))]


@axiom('CLA.structural-additive', 'CLA', "p0, p1 and the diagonal are additive; projections strongly so", 'AB')
def _cla_structural_additive(m, o, x):
    a, b = o['A'], o['B']
    p0, p1 = m.proj0(a, b), m.proj1(a, b)
    return [holds(is_strongly_additive(m, p0), 'p0'), holds(is_strongly_additive(m, p1), 'p1'),
            holds(is_additive(m, diagonal(m, a)), 'diagonal')]


@axiom('CLA.exchange', 'CLA', "+_(X x Y) = ex (+_X x +_Y)", 'XY')
def _cla_exchange(m, o, x):
    a, b = o['X'], o['Y']
    rhs = m.compose(exchange(m, a, b), times(m, plus(m, a), plus(m, b)))
    return [eq(plus(m, m.product(a, b)), rhs)]


@axiom('CLA.exchange-pairs', 'CLA', "<<f,g>,<h,k>> ex = <<f,h>,<g,k>>", 'CXY',
       ('f', 'C', 'X'), ('g', 'C', 'Y'), ('h', 'C', 'X'), ('k', 'C', 'Y'))
def _cla_exchange_pairs(m, o, x):
    f, g, h, k = x['f'], x['g'], x['h'], x['k']
    lhs = m.compose(m.pair(m.pair(f, g), m.pair(h, k)), exchange(m, o['X'], o['Y']))
    return [eq(lhs, m.pair(m.pair(f, h), m.pair(g, k)))]


# ADD-PRED: additive and strongly additive maps

@axiom('ADD-PRED.structural', 'ADD-PRED', "identities and zero maps are strongly additive", 'AB')
def _ap_structural(m, o, x):
    a, b = o['A'], o['B']
    return [holds(is_strongly_additive(m, m.identity(a)), 'identity'),
            holds(is_strongly_additive(m, m.zero(a, b)), 'zero')]


@axiom('ADD-PRED.strong-implies-additive', 'ADD-PRED', "strongly additive implies additive", 'AB', ('f', 'A', 'B'))
def _ap_strong_implies(m, o, x):
    f = x['f']
    return [holds(not is_strongly_additive(m, f) or is_additive(m, f))]


@axiom('ADD-PRED.total', 'ADD-PRED', "f total: additive iff strongly additive", 'AB', ('f', 'A', 'B', 'total'))
def _ap_total(m, o, x):
    f = x['f']
    return [holds(is_additive(m, f) == is_strongly_additive(m, f))]


@axiom('ADD-PRED.strong-restriction', 'ADD-PRED', "f strongly additive iff rs(f) strongly additive and f additive",
       'AB', ('f', 'A', 'B'))
def _ap_strong_restriction(m, o, x):
    f = x['f']
    rhs = is_strongly_additive(m, m.restriction(f)) and is_additive(m, f)
    return [holds(is_strongly_additive(m, f) == rhs)]


@axiom('ADD-PRED.closure', 'ADD-PRED', "additive maps are closed under composition, sums, pairing and restriction",
       'ABC', ('f', 'A', 'B', 'additive'), ('g', 'B', 'C', 'additive'), ('h', 'A', 'B', 'additive'),
       ('k', 'A', 'C', 'additive'))
def _ap_closure(m, o, x):
    f, g, h, k = x['f'], x['g'], x['h'], x['k']
    return [
        holds(is_additive(m, m.compose(f, g)), 'composite'),
        holds(is_additive(m, m.add(f, h)), 'sum'),
        holds(is_additive(m, m.pair(f, k)), 'pair'),
        holds(is_additive(m, m.compose(m.restriction(m.compose(f, g)), f)), 'below additive'),
    ]


# LIN: linear maps

@axiom('LIN.idempotent', 'LIN', "restriction idempotents are linear", 'A', ('e', 'A', 'A', 'idem'))
def _lin_idempotent(m, o, x):
    return [holds(is_linear(m, x['e']))]


@axiom('LIN.structural', 'LIN', "identities, projections and zero maps are linear", 'AB')
def _lin_structural(m, o, x):
    a, b = o['A'], o['B']
    return [holds(is_linear(m, m.identity(a)), 'identity'), holds(is_linear(m, m.proj0(a, b)), 'p0'),
            holds(is_linear(m, m.proj1(a, b)), 'p1'), holds(is_linear(m, m.zero(a, b)), 'zero')]


@axiom('LIN.closure', 'LIN', "linear maps are closed under composition, sums, pairing and restriction", 'ABC',
       ('f', 'A', 'B', 'linear'), ('g', 'B', 'C', 'linear'), ('h', 'A', 'B', 'linear'),
       ('k', 'A', 'C', 'linear'), ('e', 'A', 'A', 'idem'))
def _lin_closure(m, o, x):
    f, g, h, k, e = x['f'], x['g'], x['h'], x['k'], x['e']
    return [
        holds(is_linear(m, m.compose(f, g)), 'composite'),
        holds(is_linear(m, m.add(f, h)), 'sum'),
        holds(is_linear(m, m.pair(f, k)), 'pair'),
        holds(is_linear(m, m.compose(e, f)), 'below linear'),
    ]


@axiom('LIN.implies-additive', 'LIN', "linear implies additive", 'AB', ('f', 'A', 'B', 'linear'))
def _lin_implies_additive(m, o, x):
    return [holds(is_additive(m, x['f']))]


@axiom('LIN.derivative-slice', 'LIN', "<1,0> D[f] is linear", 'AB', ('f', 'A', 'B'))
def _lin_derivative_slice(m, o, x):
    a = o['A']
    slice_map = m.compose(m.pair(m.identity(a), m.zero(a, a)), m.diff(x['f']))
    return [holds(is_linear(m, slice_map))]


@axiom('LIN.total', 'LIN', "f total: linear iff D[f] = p0 f", 'AB', ('f', 'A', 'B', 'total'))
def _lin_total(m, o, x):
    f, a = x['f'], o['A']
    return [holds(is_linear(m, f) == m.equal(m.diff(f), m.compose(m.proj0(a, a), f)))]


# DR: differential restriction axioms

@axiom('DR.1', 'DR', "D[f + g] = D[f] + D[g] and D[0] = 0", 'AB', ('f', 'A', 'B'), ('g', 'A', 'B'))
def _dr1(m, o, x):
    f, g, a, b = x['f'], x['g'], o['A'], o['B']
    return [eq(m.diff(m.add(f, g)), m.add(m.diff(f), m.diff(g))),
            eq(m.diff(m.zero(a, b)), m.zero(m.product(a, a), b))]


@axiom('DR.2', 'DR', "<g+h,k> D[f] = <g,k> D[f] + <h,k> D[f] and <0,g> D[f] = rs(g f) 0", 'CAB',
       ('f', 'A', 'B'), ('g', 'C', 'A'), ('h', 'C', 'A'), ('k', 'C', 'A'))
def _dr2(m, o, x):
    f, g, h, k = x['f'], x['g'], x['h'], x['k']
    c, a, b = o['C'], o['A'], o['B']
    df = m.diff(f)
    lhs = m.compose(m.pair(m.add(g, h), k), df)
    rhs = m.add(m.compose(m.pair(g, k), df), m.compose(m.pair(h, k), df))
    zero_lhs = m.compose(m.pair(m.zero(c, a), g), df)
    zero_rhs = m.compose(m.restriction(m.compose(g, f)), m.zero(c, b))
    return [eq(lhs, rhs, 'additive in direction'), eq(zero_lhs, zero_rhs, 'zero direction')]


@axiom('DR.3', 'DR', "D[p0] = p0 p0 and D[p1] = p0 p1", 'AB')
def _dr3(m, o, x):
    a, b = o['A'], o['B']
    ab = m.product(a, b)
    first = m.proj0(ab, ab)
    return [eq(m.diff(m.proj0(a, b)), m.compose(first, m.proj0(a, b))),
            eq(m.diff(m.proj1(a, b)), m.compose(first, m.proj1(a, b)))]


@axiom('DR.4', 'DR', "D[<f,g>] = <D[f], D[g]>", 'ABC', ('f', 'A', 'B'), ('g', 'A', 'C'))
def _dr4(m, o, x):
    f, g = x['f'], x['g']
    return [eq(m.diff(m.pair(f, g)), m.pair(m.diff(f), m.diff(g)))]


@axiom('DR.5', 'DR', "D[f g] = <D[f], p1 f> D[g]", 'ABC', ('f', 'A', 'B'), ('g', 'B', 'C'))
def _dr5(m, o, x):
    f, g, a = x['f'], x['g'], o['A']
    rhs = m.compose(m.pair(m.diff(f), m.compose(m.proj1(a, a), f)), m.diff(g))
    return [eq(m.diff(m.compose(f, g)), rhs)]


@axiom('DR.6', 'DR', "<<g,0>,<h,k>> D[D[f]] = rs(h) <g,k> D[f]", 'CAB',
       ('f', 'A', 'B'), ('g', 'C', 'A'), ('h', 'C', 'A'), ('k', 'C', 'A'))
def _dr6(m, o, x):
    f, g, h, k = x['f'], x['g'], x['h'], x['k']
    c, a = o['C'], o['A']
    lhs = m.compose(m.pair(m.pair(g, m.zero(c, a)), m.pair(h, k)), m.diff(m.diff(f)))
    rhs = m.compose(m.restriction(h), m.compose(m.pair(g, k), m.diff(f)))
    return [eq(lhs, rhs)]


@axiom('DR.7', 'DR', "<<0,h>,<g,k>> D[D[f]] = <<0,g>,<h,k>> D[D[f]]", 'CAB',
       ('f', 'A', 'B'), ('g', 'C', 'A'), ('h', 'C', 'A'), ('k', 'C', 'A'))
def _dr7(m, o, x):
    f, g, h, k = x['f'], x['g'], x['h'], x['k']
    zero = m.zero(o['C'], o['A'])
    ddf = m.diff(m.diff(f))
    lhs = m.compose(m.pair(m.pair(zero, h), m.pair(g, k)), ddf)
    rhs = m.compose(m.pair(m.pair(zero, g), m.pair(h, k)), ddf)
    return [eq(lhs, rhs)]


@axiom('DR.8', 'DR', "D[rs(f)] = (1 x rs(f)) p0", 'AB', ('f', 'A', 'B'))
def _dr8(m, o, x):
    f, a = x['f'], o['A']
    rhs = m.compose(times(m, m.identity(a), m.restriction(f)), m.proj0(a, a))
    return [eq(m.diff(m.restriction(f)), rhs)]


@axiom('DR.9', 'DR', "rs(D[f]) = 1 x rs(f)", 'AB', ('f', 'A', 'B'))
def _dr9(m, o, x):
    f, a = x['f'], o['A']
    return [eq(m.restriction(m.diff(f)), times(m, m.identity(a), m.restriction(f)))]


@axiom('DR.restrict', 'DR', "D[rs(f) g] = (1 x rs(f)) D[g]", 'ABC', ('f', 'A', 'B'), ('g', 'A', 'C'))
def _dr_restrict(m, o, x):
    f, g, a = x['f'], x['g'], o['A']
    lhs = m.diff(m.compose(m.restriction(f), g))
    return [eq(lhs, m.compose(times(m, m.identity(a), m.restriction(f)), m.diff(g)))]


@axiom('DR.order', 'DR', "f <= g implies D[f] <= D[g]; f ~ g implies D[f] ~ D[g]", 'AB',
       ('g', 'A', 'B'), ('e1', 'A', 'A', 'idem'), ('e2', 'A', 'A', 'idem'))
def _dr_order(m, o, x):
    g, e1, e2 = x['g'], x['e1'], x['e2']
    f = m.compose(e1, g)
    return [Claim('leq', m.diff(f), m.diff(g), 'order'),
            Claim('compat', m.diff(f), m.diff(m.compose(e2, g)), 'compatibility')]


# JOIN: joins of compatible families

def _family(m, x):
    h = x['h']
    return h, m.compose(x['e1'], h), m.compose(x['e2'], h)


_FAMILY_SLOTS = (('h', 'A', 'B'), ('e1', 'A', 'A', 'idem'), ('e2', 'A', 'A', 'idem'))


@axiom('JOIN.upper', 'JOIN', "each f_i <= join f_i", 'AB', *_FAMILY_SLOTS)
def _join_upper(m, o, x):
    _, f, g = _family(m, x)
    j = m.join([f, g], o['A'], o['B'])
    return [Claim('leq', f, j), Claim('leq', g, j)]


@axiom('JOIN.least', 'JOIN', "f_i <= k for all i implies join f_i <= k", 'AB', *_FAMILY_SLOTS)
def _join_least(m, o, x):
    h, f, g = _family(m, x)
    return [Claim('leq', m.join([f, g], o['A'], o['B']), h)]


@axiom('JOIN.stable-left', 'JOIN', "s (join f_i) = join (s f_i)", 'CAB', ('s', 'C', 'A'), *_FAMILY_SLOTS)
def _join_stable_left(m, o, x):
    _, f, g = _family(m, x)
    s = x['s']
    lhs = m.compose(s, m.join([f, g], o['A'], o['B']))
    return [eq(lhs, m.join([m.compose(s, f), m.compose(s, g)], o['C'], o['B']))]


@axiom('JOIN.stable-right', 'JOIN', "(join f_i) t = join (f_i t)", 'ABC', ('t', 'B', 'C'), *_FAMILY_SLOTS)
def _join_stable_right(m, o, x):
    _, f, g = _family(m, x)
    t = x['t']
    lhs = m.compose(m.join([f, g], o['A'], o['B']), t)
    return [eq(lhs, m.join([m.compose(f, t), m.compose(g, t)], o['A'], o['C']))]


@axiom('JOIN.rs', 'JOIN', "rs(join f_i) = join rs(f_i)", 'AB', *_FAMILY_SLOTS)
def _join_rs(m, o, x):
    _, f, g = _family(m, x)
    a = o['A']
    lhs = m.restriction(m.join([f, g], a, o['B']))
    return [eq(lhs, m.join([m.restriction(f), m.restriction(g)], a, a))]


@axiom('JOIN.restrict-member', 'JOIN', "rs(f_j) (join f_i) = f_j", 'AB', *_FAMILY_SLOTS)
def _join_restrict_member(m, o, x):
    _, f, g = _family(m, x)
    j = m.join([f, g], o['A'], o['B'])
    return [eq(m.compose(m.restriction(f), j), f), eq(m.compose(m.restriction(g), j), g)]


@axiom('JOIN.empty', 'JOIN', "the empty join is the bottom map, preserved by precomposition", 'CAB',
       ('f', 'A', 'B'), ('s', 'C', 'A'))
def _join_empty(m, o, x):
    a, b, c = o['A'], o['B'], o['C']
    bottom = m.empty(a, b)
    return [
        eq(m.join([], a, b), bottom, 'nullary join'),
        Claim('leq', bottom, x['f'], 'bottom'),
        eq(m.compose(x['s'], bottom), m.empty(c, b), 'precomposition'),
        eq(m.restriction(bottom), m.empty(a, a), 'restriction'),
    ]


@axiom('JOIN.pair', 'JOIN', "<f v g, k> = <f,k> v <g,k>", 'ABC', ('k', 'A', 'C'), *_FAMILY_SLOTS, needs=(PRODUCTS,))
def _join_pair(m, o, x):
    _, f, g = _family(m, x)
    k, a = x['k'], o['A']
    lhs = m.pair(m.join([f, g], a, o['B']), k)
    return [eq(lhs, m.join([m.pair(f, k), m.pair(g, k)], a, m.product(o['B'], o['C'])))]


@axiom('JOIN.add', 'JOIN', "(f v g) + k = (f + k) v (g + k)", 'AB', ('k', 'A', 'B'), *_FAMILY_SLOTS, needs=(ADDITIVE,))
def _join_add(m, o, x):
    _, f, g = _family(m, x)
    k, a, b = x['k'], o['A'], o['B']
    return [eq(m.add(m.join([f, g], a, b), k), m.join([m.add(f, k), m.add(g, k)], a, b))]


@axiom('JOIN.diff', 'JOIN', "D[f v g] = D[f] v D[g] and D[empty] = empty", 'AB', *_FAMILY_SLOTS,
       needs=(PRODUCTS, DIFFERENTIAL))
def _join_diff(m, o, x):
    _, f, g = _family(m, x)
    a, b = o['A'], o['B']
    aa = m.product(a, a)
    return [eq(m.diff(m.join([f, g], a, b)), m.join([m.diff(f), m.diff(g)], aa, b), 'join'),
            eq(m.diff(m.empty(a, b)), m.empty(aa, b), 'empty')]


# CLASSICAL: relative complements

@axiom('CLASSICAL.complement', 'CLASSICAL', "C = f \\ g satisfies C <= f, rs(g) rs(C) = empty, f <= g v C", 'AB',
       ('f', 'A', 'B'), ('e', 'A', 'A', 'idem'))
def _classical_complement(m, o, x):
    f, a, b = x['f'], o['A'], o['B']
    g = m.compose(x['e'], f)
    c = m.complement(f, g)
    return [
        Claim('leq', c, f, 'below'),
        eq(m.compose(m.restriction(g), m.restriction(c)), m.empty(a, a), 'disjoint'),
        Claim('leq', f, m.join([g, c], a, b), 'covers'),
    ]


@axiom('CLASSICAL.complement-self', 'CLASSICAL', "f \\ f = empty and f \\ empty = f", 'AB', ('f', 'A', 'B'))
def _classical_complement_self(m, o, x):
    f, a, b = x['f'], o['A'], o['B']
    return [eq(m.complement(f, f), m.empty(a, b), 'self'), eq(m.complement(f, m.empty(a, b)), f, 'empty')]


# --- Reports ---

@dataclass
class Failure:
    axiom: str
    label: str
    relation: str
    inputs: dict
    lhs: str
    rhs: str

    def to_json(self):
        return {"axiom": self.axiom, "label": self.label, "relation": self.relation,
                "inputs": self.inputs, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class SuiteReport:
    suite: str
    model: str
    seed: int
    cases: int = 0
    failures: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    runtime: float = 0.0
    exhaustive: bool = False
    notes: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.failures

    def to_json(self):
        return {
            "suite": self.suite,
            "model": self.model,
            "cases": self.cases,
            "failures": [failure.to_json() for failure in self.failures],
            "skipped": list(self.skipped),
            "seed": self.seed,
            "runtime": round(self.runtime, 6),
            "exhaustive": self.exhaustive,
            "notes": dict(self.notes),
        }


def list_axioms(suite=None):
    if suite is not None and suite not in SUITE_CAPABILITIES:
        raise ArityError(f"unknown suite {suite}; expected one of {', '.join(SUITES)}")
    return [a for a in AXIOMS if suite is None or a.suite == suite]


# --- Suite runner ---

def resolve_object(model, expr, objects):
    return objects[expr]


def _slot_fits(model, kind, f):
    if kind == 'any':
        return True
    if kind == 'total':
        return is_total(model, f)
    if kind == 'idem':
        return is_restriction_idempotent(model, f)
    if kind == 'linear':
        return is_linear(model, f)
    if kind == 'additive':
        return is_additive(model, f)
    raise ArityError(f"unknown slot kind {kind}")


def _sample_slot(model, rng, slot, dom, cod):
    if slot.kind == 'any':
        return model.sample(rng, dom, cod)
    if slot.kind == 'total':
        return model.sample_total(rng, dom, cod)
    if slot.kind == 'idem':
        return model.sample_idempotent(rng, dom)
    if slot.kind == 'linear':
        return model.sample_linear(rng, dom, cod)
    if slot.kind == 'additive':
        return model.sample_additive(rng, dom, cod)
    raise ArityError(f"unknown slot kind {slot.kind}")


def _sampled_instances(model, ax, cases, seed):
    for index in range(cases):
        rng = case_stream(seed, ax.ident, index)
        objects = {letter: model.sample_object(rng) for letter in ax.objects}
        maps = {}
        for slot in ax.slots:
            dom = resolve_object(model, slot.dom, objects)
            cod = resolve_object(model, slot.cod, objects)
            maps[slot.name] = _sample_slot(model, rng, slot, dom, cod)
        yield objects, maps


def _exhaustive_instances(model, ax, cases, seed, sampled):
    """Every combination from the enumerated hom-sets; assignments too large to enumerate are sampled and noted."""
    for assignment_index, chosen in enumerate(itertools.product(model.objects(), repeat=len(ax.objects))):
        objects = dict(zip(ax.objects, chosen))
        try:
            pools = []
            for slot in ax.slots:
                dom = resolve_object(model, slot.dom, objects)
                cod = resolve_object(model, slot.cod, objects)
                pools.append([f for f in model.enumerate(dom, cod) if _slot_fits(model, slot.kind, f)])
        except EnumerationBoundError:
            pools = None
        names = [slot.name for slot in ax.slots]
        if pools is not None and math.prod(len(pool) for pool in pools) <= EXHAUSTIVE_COMBINATION_LIMIT:
            for combination in itertools.product(*pools):
                yield objects, dict(zip(names, combination))
            continue
        sampled.add(ax.ident)
        for index in range(cases):
            rng = case_stream(seed, f"{ax.ident}#{assignment_index}", index)
            maps = {}
            for position, slot in enumerate(ax.slots):
                if pools is not None and pools[position]:
                    maps[slot.name] = rng.choice(pools[position])
                else:
                    dom = resolve_object(model, slot.dom, objects)
                    cod = resolve_object(model, slot.cod, objects)
                    maps[slot.name] = _sample_slot(model, rng, slot, dom, cod)
            yield objects, maps


def decide(model, claim):
    if claim.relation == 'eq':
        return model.equal(claim.lhs, claim.rhs)
    if claim.relation == 'leq':
        return leq(model, claim.lhs, claim.rhs)
    if claim.relation == 'compat':
        return compat(model, claim.lhs, claim.rhs)
    if claim.relation == 'holds':
        return bool(claim.lhs)
    raise ArityError(f"unknown claim relation {claim.relation}")


def _render(model, value):
    if value is None or isinstance(value, bool):
        return str(value)
    return model.describe(value)


def check_suite(model, suite, cases=DEFAULT_CASES, seed=DIFFREST_SEED, exhaustive=False, only=None):
    """Instantiate every axiom of ``suite`` on ``model``; deterministic in (model, cases, seed)."""
    if suite not in SUITE_CAPABILITIES:
        raise ArityError(f"unknown suite {suite}; expected one of {', '.join(SUITES)}")
    model.require(SUITE_CAPABILITIES[suite], suite)
    model.reset_notes()
    report = SuiteReport(suite=suite, model=model.name, seed=seed, exhaustive=exhaustive)
    started = time.perf_counter()
    sampled = set()
    for ax in list_axioms(suite):
        if only and ax.ident not in only:
            continue
        if any(capability not in model.capabilities for capability in ax.needs):
            report.skipped.append(ax.ident)
            continue
        if exhaustive:
            instances = _exhaustive_instances(model, ax, cases, seed, sampled)
        else:
            instances = _sampled_instances(model, ax, cases, seed)
        for objects, maps in instances:
            report.cases += 1
            for claim in ax.check(model, objects, maps):
                if decide(model, claim):
                    continue
                report.failures.append(Failure(
                    axiom=ax.ident,
                    label=claim.label,
                    relation=claim.relation,
                    inputs={name: model.describe(f) for name, f in maps.items()},
                    lhs=_render(model, claim.lhs),
                    rhs=_render(model, claim.rhs),
                ))
    report.runtime = time.perf_counter() - started
    report.notes = model.notes()
    if sampled:
        report.exhaustive = False
        report.notes["sampled_axioms"] = sorted(sampled)
    logger.info("suite %s on %s: %d cases, %d failures, %.3fs",
                suite, model.name, report.cases, len(report.failures), report.runtime)
    return report


# --- 0-unitarity probe ---

def _dense_below(model, h, f, probes):
    """h <=_0 f, checked on the given probe maps only."""
    if not leq(model, h, f):
        return False
    for k in probes:
        if is_empty(model, model.compose(k, h)) and not is_empty(model, model.compose(k, f)):
            return False
    return True


def zero_unitary_probe(model, cases=DEFAULT_CASES, seed=DIFFREST_SEED):
    """Probe f >=_0 h <=_0 g  =>  f ~ g on sampled triples; a probe, not a decision procedure."""
    model.require((NOWHERE,), 'ZERO-UNITARY')
    model.reset_notes()
    report = SuiteReport(suite='ZERO-UNITARY', model=model.name, seed=seed)
    started = time.perf_counter()

    def record(ident, label, inputs, lhs, rhs):
        report.failures.append(Failure(ident, label, 'holds', inputs, lhs, rhs))

    for index in range(cases):
        rng = case_stream(seed, 'ZERO-UNITARY', index)
        a, b = model.sample_object(rng), model.sample_object(rng)
        f = model.sample(rng, a, b)
        e1, e2 = model.sample_idempotent(rng, a), model.sample_idempotent(rng, a)
        g = model.compose(e2, f)
        h = seq(model, e1, e2, f)
        probes = [model.identity(a), e1, e2] + list(model.points(a))
        probes += [model.sample(rng, c, a) for c in (model.sample_object(rng),)]
        inputs = {"f": model.describe(f), "g": model.describe(g), "h": model.describe(h)}
        report.cases += 1
        if not (leq(model, h, f) and leq(model, h, g)):
            record('ZERO-UNITARY.below', 'h <= f and h <= g', inputs, 'False', 'True')
        if _dense_below(model, h, f, probes) and _dense_below(model, h, g, probes) and not compat(model, f, g):
            record('ZERO-UNITARY.compatible', 'f >=0 h <=0 g implies f ~ g', inputs, 'incompatible', 'compatible')
        bottom = model.empty(a, b)
        if _dense_below(model, bottom, f, probes) and not is_empty(model, f):
            record('ZERO-UNITARY.empty-above', 'empty <=0 f forces f empty', inputs, model.describe(f), 'empty')
        if not model.equal(model.compose(model.restriction(h), bottom), bottom):
            record('ZERO-UNITARY.empty-below', 'h <= empty forces h empty', inputs, 'non-empty', 'empty')
    report.runtime = time.perf_counter() - started
    report.notes = model.notes()
    logger.info("zero-unitary probe on %s: %d cases, %d failures", model.name, report.cases, len(report.failures))
    return report
