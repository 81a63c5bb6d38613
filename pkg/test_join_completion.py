import itertools
import unittest

from category_core import check_suite, is_additive, is_linear, leq
from classical_completion import ClModel
from errors import ArityError, EnumerationBoundError, IncompatibleError
from finpar import FinParModel, cyclic, pf_from_dict
from join_completion import (
    JnModel, jn_compat, jn_compose, jn_denote_finpar, jn_diff, jn_empty, jn_eq, jn_join, jn_leq, jn_of_base,
    jn_restriction, make_jn,
)
from poly import RING_Q
from ratcat import RatModel, candidate_join, parse_map, rat_differential, rat_eval
from sampling import SplitMix64, case_stream, scaled_cases

LEFT_POLE = "map 2 -> 1 { 1 } | { x1 - 1 }"
RIGHT_POLE = "map 2 -> 1 { 1 } | { x2 - 1 }"
DIAGONAL_SQUARE = "map 1 -> 2 { x1^2 ; x1^2 } | { }"


class TestDownClosure(unittest.TestCase):

    def setUp(self):
        self.base = FinParModel(3)
        self.z3 = cyclic(3)
        self.f = pf_from_dict(self.z3, self.z3, {0: 1, 1: 2})
        self.below = pf_from_dict(self.z3, self.z3, {0: 1})
        self.g = pf_from_dict(self.z3, self.z3, {2: 0})

    def test_dominated_generators_dropped(self):
        a = make_jn(self.base, self.z3, self.z3, [self.below, self.f])
        self.assertEqual(a.generators, (self.f,))
        self.assertTrue(jn_eq(a, jn_of_base(self.base, self.f)))

    def test_empty_generators_dropped(self):
        nothing = pf_from_dict(self.z3, self.z3, {})
        self.assertEqual(make_jn(self.base, self.z3, self.z3, [nothing]).generators, ())

    def test_incompatible_generators_rejected(self):
        clash = pf_from_dict(self.z3, self.z3, {0: 0})
        with self.assertRaises(IncompatibleError):
            make_jn(self.base, self.z3, self.z3, [self.f, clash])

    def test_wrong_hom_set(self):
        with self.assertRaises(ArityError):
            make_jn(self.base, self.z3, cyclic(2), [self.f])

    def test_order_is_domination(self):
        joined = make_jn(self.base, self.z3, self.z3, [self.f, self.g])
        self.assertTrue(jn_leq(jn_of_base(self.base, self.below), joined))
        self.assertFalse(jn_leq(joined, jn_of_base(self.base, self.f)))
        self.assertTrue(jn_compat(joined, jn_of_base(self.base, self.below)))

    def test_compose_and_restriction(self):
        joined = make_jn(self.base, self.z3, self.z3, [self.f, self.g])
        squared = jn_compose(joined, joined)
        self.assertEqual(jn_denote_finpar(squared).graph, (2, 0, 1))
        self.assertEqual(jn_denote_finpar(jn_restriction(joined)).graph, (0, 1, 2))

    def test_nullary_join(self):
        with self.assertRaises(ArityError):
            jn_join([], self.z3, self.z3)
        model = JnModel(self.base)
        self.assertTrue(jn_eq(model.join([], self.z3, self.z3), jn_empty(self.base, self.z3, self.z3)))


class TestDownClosureLemma(unittest.TestCase):
    """f <= g in the base exactly when the down-closure of f sits inside that of g"""

    def test_finite_partial_functions(self):
        base = FinParModel(2)
        z2 = cyclic(2)
        maps = base.enumerate(z2, z2)
        for f, g in itertools.product(maps, repeat=2):
            with self.subTest(f=str(f), g=str(g)):
                self.assertEqual(jn_leq(jn_of_base(base, f), jn_of_base(base, g)), leq(base, f, g))

    def test_restricted_rational_maps(self):
        base = RatModel(RING_Q)
        for index in range(scaled_cases(50)):
            rng = case_stream(5, "down-closure", index)
            a, b = base.sample_object(rng), base.sample_object(rng)
            f = base.sample(rng, a, b)
            below = base.compose(base.sample_idempotent(rng, a), f)
            with self.subTest(f=str(f)):
                self.assertTrue(jn_leq(jn_of_base(base, below), jn_of_base(base, f)))
                self.assertEqual(jn_leq(jn_of_base(base, f), jn_of_base(base, below)), leq(base, f, below))


class TestDenotation(unittest.TestCase):
    """Jn(finpar) maps denote partial functions; the denotation forgets the generators"""

    def setUp(self):
        self.base = FinParModel(2)
        self.model = JnModel(self.base)
        self.z2 = cyclic(2)

    def test_singletons_denote_themselves(self):
        for f in self.base.enumerate(self.z2, self.z2):
            with self.subTest(f=str(f)):
                self.assertEqual(jn_denote_finpar(jn_of_base(self.base, f)), f)

    def test_enumeration_count(self):
        # empty, eight principal ideals, four pairs of one-point maps
        self.assertEqual(len(self.model.enumerate(self.z2, self.z2)), 13)

    def test_equal_maps_have_equal_denotations(self):
        maps = self.model.enumerate(self.z2, self.z2)
        for a, b in itertools.product(maps, repeat=2):
            if jn_eq(a, b):
                self.assertEqual(jn_denote_finpar(a), jn_denote_finpar(b))

    def test_denotation_is_not_injective(self):
        split = make_jn(self.base, self.z2, self.z2,
                        [pf_from_dict(self.z2, self.z2, {0: 0}), pf_from_dict(self.z2, self.z2, {1: 1})])
        whole = jn_of_base(self.base, self.base.identity(self.z2))
        self.assertEqual(jn_denote_finpar(split), jn_denote_finpar(whole))
        self.assertFalse(jn_eq(split, whole))
        self.assertTrue(jn_leq(split, whole))
        maps = self.model.enumerate(self.z2, self.z2)
        self.assertEqual(len({jn_denote_finpar(a) for a in maps}), 9)

    def test_enumeration_bound(self):
        with self.assertRaises(EnumerationBoundError):
            self.model.enumerate(cyclic(3), cyclic(3))


class TestRationalJoins(unittest.TestCase):

    def setUp(self):
        self.base = RatModel(RING_Q)
        self.model = JnModel(self.base)
        self.f = parse_map(LEFT_POLE, RING_Q)
        self.g = parse_map(RIGHT_POLE, RING_Q)

    def test_join_is_stable_under_precomposition(self):
        probe = self.model.lift(parse_map(DIAGONAL_SQUARE, RING_Q))
        joined = self.model.join([self.model.lift(self.f), self.model.lift(self.g)], 2, 1)
        lhs = jn_compose(probe, joined)
        rhs = self.model.join([jn_compose(probe, self.model.lift(self.f)),
                               jn_compose(probe, self.model.lift(self.g))], 1, 1)
        self.assertTrue(jn_eq(lhs, rhs))

    def test_join_sits_below_the_candidate(self):
        report = candidate_join(self.f, self.g)
        joined = self.model.join([self.model.lift(self.f), self.model.lift(self.g)], 2, 1)
        self.assertEqual(len(joined.generators), 2)
        self.assertTrue(jn_leq(joined, self.model.lift(report.candidate)))
        self.assertFalse(jn_leq(self.model.lift(report.candidate), joined))

    def test_differential_of_empty(self):
        self.assertTrue(jn_eq(jn_diff(jn_empty(self.base, 2, 1)), jn_empty(self.base, 4, 1)))

    def test_differential_of_join(self):
        joined = self.model.join([self.model.lift(self.f), self.model.lift(self.g)], 2, 1)
        expected = self.model.join([self.model.diff(self.model.lift(self.f)),
                                    self.model.diff(self.model.lift(self.g))], 4, 1)
        self.assertTrue(jn_eq(self.model.diff(joined), expected))


def pointwise_additive(f):
    source, target = f.source, f.target
    domain = f.domain()
    if source.unit in domain and f(source.unit) != target.unit:
        return False
    return all(f(source.add(x, y)) == target.add(f(x), f(y))
               for x in domain for y in domain if source.add(x, y) in domain)


def pointwise_linear(f, rng, points=12):
    """D[f](v, x) agrees with f(v) wherever both are defined."""
    differential = rat_differential(f)
    for _ in range(points):
        direction = [rng.fraction(6, 5) for _ in range(f.n)]
        point = [rng.fraction(6, 5) for _ in range(f.n)]
        along, value = rat_eval(differential, direction + point), rat_eval(f, direction)
        if 'undefined' not in (along, value) and along != value:
            return False
    return True


class TestTransport(unittest.TestCase):
    """Additivity and linearity survive the passage to Jn and Cl"""

    def test_additive_finite_maps(self):
        base = FinParModel(3)
        joins, classical = JnModel(base), ClModel(base)
        for size in (2, 3):
            z = cyclic(size)
            for f in base.enumerate(z, z):
                expected = pointwise_additive(f)
                with self.subTest(f=str(f)):
                    self.assertEqual(is_additive(base, f), expected)
                    self.assertEqual(is_additive(joins, jn_of_base(base, f)), expected)
                    self.assertEqual(is_additive(classical, classical.lift(f)), expected)

    def test_linear_rational_maps(self):
        base = RatModel(RING_Q)
        joins = JnModel(base)
        classical = ClModel(joins, split=(0, 1))
        rng = SplitMix64(17)
        for text in ("map 1 -> 1 { 3*x1 } | { }",
                     "map 1 -> 1 { x1^2 } | { }",
                     "map 1 -> 1 { 2*x1 } | { x1 }",
                     "map 2 -> 1 { x1 + x2 } | { }",
                     "map 2 -> 1 { x1*x2 } | { }",
                     "map 1 -> 1 { 1/x1 } | { x1 }"):
            f = parse_map(text, RING_Q)
            expected = pointwise_linear(f, rng)
            with self.subTest(f=text):
                self.assertEqual(is_linear(base, f), expected)
                self.assertEqual(is_linear(joins, jn_of_base(base, f)), expected)
                self.assertEqual(is_linear(classical, classical.lift(jn_of_base(base, f))), expected)


class TestSuites(unittest.TestCase):

    def test_restriction_and_join_axioms_on_finpar(self):
        model = JnModel(FinParModel(2))
        for suite in ('R', 'JOIN', 'CR'):
            with self.subTest(suite=suite):
                report = check_suite(model, suite, cases=6, seed=3)
                self.assertTrue(report.passed, [f.to_json() for f in report.failures[:3]])

    def test_differential_axioms_on_rational_joins(self):
        report = check_suite(JnModel(RatModel(RING_Q)), 'DR', cases=scaled_cases(100), seed=3)
        self.assertTrue(report.passed, [f.to_json() for f in report.failures[:3]])
        self.assertEqual(report.model, "jn(rat-Q)")


if __name__ == '__main__':
    unittest.main()
