import unittest

from category_core import is_additive, is_strongly_additive
from errors import (
    ArityError, EnumerationBoundError, IncompatibleError, InvariantViolation, MissingCapabilityError,
)
from finpar import (
    FinParModel, additive_join_counterexample, additive_with_nonadditive_inverse, cyclic, finite_set, monoid,
    pf_add, pf_compat, pf_complement, pf_compose, pf_empty, pf_enumerate, pf_from_dict, pf_identity, pf_join,
    pf_leq, pf_pair, pf_partial_identity, pf_proj, pf_restriction, pf_terminal, pf_total, pf_zero, product,
    terminal_object,
)
from sampling import SplitMix64


class TestObjects(unittest.TestCase):

    def test_cyclic(self):
        z3 = cyclic(3)
        self.assertEqual(z3.add(2, 2), 1)
        self.assertEqual(z3.moduli, (3,))
        self.assertEqual(cyclic(1), terminal_object())

    def test_product_indexing(self):
        z2, z3 = cyclic(2), cyclic(3)
        z2z3 = product(z2, z3)
        self.assertEqual(z2z3.size, 6)
        # (1, 2) + (1, 2) = (0, 1)
        self.assertEqual(z2z3.add(1 * 3 + 2, 1 * 3 + 2), 0 * 3 + 1)
        self.assertEqual(z2z3.moduli, (2, 3))

    def test_terminal_factor_absorbed(self):
        self.assertEqual(product(terminal_object(), cyclic(3)), cyclic(3))

    def test_monoid_checks_table(self):
        with self.assertRaises(InvariantViolation):
            monoid([[0, 1], [0, 1]])
        self.assertEqual(monoid([[0, 1], [1, 1]], name='B').add(1, 1), 1)

    def test_bare_set_has_no_monoid(self):
        with self.assertRaises(MissingCapabilityError):
            pf_zero(cyclic(2), finite_set(2))

    def test_negative_size(self):
        with self.assertRaises(ArityError):
            finite_set(-1)


class TestPartialFunctions(unittest.TestCase):

    def setUp(self):
        self.z3 = cyclic(3)
        self.f = pf_from_dict(self.z3, self.z3, {0: 1, 2: 2})
        self.g = pf_from_dict(self.z3, self.z3, {1: 0, 2: 2})

    def test_compose(self):
        self.assertEqual(pf_compose(self.f, self.g).graph, (0, None, 2))

    def test_restriction(self):
        self.assertEqual(pf_restriction(self.f), pf_partial_identity(self.z3, {0, 2}))

    def test_order_and_compatibility(self):
        below = pf_from_dict(self.z3, self.z3, {2: 2})
        self.assertTrue(pf_leq(below, self.f))
        self.assertFalse(pf_leq(self.f, below))
        self.assertTrue(pf_compat(self.f, self.g))
        self.assertFalse(pf_compat(self.f, pf_identity(self.z3)))

    def test_join_and_complement(self):
        joined = pf_join([self.f, self.g], self.z3, self.z3)
        self.assertEqual(joined.graph, (1, 0, 2))
        self.assertEqual(pf_complement(joined, self.g), pf_from_dict(self.z3, self.z3, {0: 1}))
        self.assertEqual(pf_join([], self.z3, self.z3), pf_empty(self.z3, self.z3))

    def test_join_rejects_incompatible(self):
        with self.assertRaises(IncompatibleError):
            pf_join([self.f, pf_identity(self.z3)], self.z3, self.z3)

    def test_complement_requires_order(self):
        with self.assertRaises(IncompatibleError):
            pf_complement(self.f, self.g)

    def test_pair_and_projections(self):
        z2 = cyclic(2)
        h = pf_from_dict(self.z3, z2, {0: 1, 1: 0})
        paired = pf_pair(self.f, h)
        self.assertEqual(paired.graph, (1 * 2 + 1, None, None))
        self.assertEqual(pf_compose(paired, pf_proj(self.z3, z2, 0)), pf_compose(pf_restriction(h), self.f))
        self.assertEqual(pf_compose(paired, pf_proj(self.z3, z2, 1)), pf_compose(pf_restriction(self.f), h))

    def test_add_and_zero(self):
        self.assertEqual(pf_add(self.f, self.g).graph, (None, None, 1))
        self.assertEqual(pf_add(self.f, pf_zero(self.z3, self.z3)), self.f)

    def test_terminal_and_totality(self):
        self.assertTrue(pf_total(pf_terminal(self.z3)))
        self.assertFalse(pf_total(self.f))

    def test_bad_graph(self):
        with self.assertRaises(ArityError):
            pf_from_dict(self.z3, cyclic(2), {0: 2})


class TestEnumeration(unittest.TestCase):

    def test_hom_set_sizes(self):
        self.assertEqual(len(pf_enumerate(cyclic(2), cyclic(2))), 9)
        self.assertEqual(len(pf_enumerate(cyclic(2), terminal_object())), 4)
        self.assertEqual(len(set(pf_enumerate(cyclic(2), cyclic(3)))), 16)

    def test_bound(self):
        with self.assertRaises(EnumerationBoundError):
            pf_enumerate(cyclic(3), cyclic(3), bound=10)


class TestAdditivityCounterexamples(unittest.TestCase):
    """Additive maps over Z16 whose inverse or join is not additive"""

    def setUp(self):
        self.model = FinParModel(16)

    def test_inverse_of_additive_map(self):
        f, inverse = additive_with_nonadditive_inverse()
        self.assertTrue(is_additive(self.model, f))
        self.assertFalse(is_additive(self.model, inverse))

    def test_join_of_additive_maps(self):
        f, g = additive_join_counterexample()
        self.assertTrue(is_additive(self.model, f))
        self.assertTrue(is_additive(self.model, g))
        joined = pf_join([f, g], f.source, f.target)
        self.assertFalse(is_additive(self.model, joined))


class TestModel(unittest.TestCase):

    def setUp(self):
        self.model = FinParModel(3)

    def test_objects_and_points(self):
        self.assertEqual([o.size for o in self.model.objects()], [1, 2, 3])
        self.assertEqual(len(self.model.points(cyclic(3))), 3)

    def test_sampled_homomorphisms_are_strongly_additive(self):
        rng = SplitMix64(4)
        for _ in range(20):
            a, b = self.model.sample_object(rng), self.model.sample_object(rng)
            h = self.model.sample_homomorphism(rng, product(a, b), b)
            with self.subTest(h=str(h)):
                self.assertTrue(pf_total(h))
                self.assertTrue(is_strongly_additive(self.model, h))

    def test_sampled_additive_maps(self):
        rng = SplitMix64(9)
        for _ in range(20):
            a, b = self.model.sample_object(rng), self.model.sample_object(rng)
            f = self.model.sample_additive(rng, a, b)
            with self.subTest(f=str(f)):
                self.assertTrue(is_additive(self.model, f))


if __name__ == '__main__':
    unittest.main()
