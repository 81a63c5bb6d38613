import unittest
from fractions import Fraction

from errors import EqualityUndecidedError, MissingStarError, NotIdempotentError, RingMismatchError, UnsupportedRigError
from fraction import (
    FRAC_CHECKS, Frac, FractionRig, IntegerRig, LatticeRig, NaturalRig, PolyRig, RationalRig, StarIdempotent,
    WeakRig, check_fractional_rig_laws, eta, finite_class_of, frac_add, frac_eq, frac_map, frac_mul, frac_one,
    frac_star, frac_zero, iter_divides, kleisli_ext, localize, mu, nu, reduce_canonical, rig_elements,
    run_frac_suite,
)
from grammar import parse_poly
from poly import RING_Q, RING_Z
from sampling import SplitMix64, scaled_cases


Z = IntegerRig()


def zf(num, den):
    return Frac(num, den, Z)


class TestCanonicalForms(unittest.TestCase):
    """reduce_canonical over the unique factorization rigs"""

    def test_eighteen_over_thirty_six(self):
        canonical = reduce_canonical(zf(18, 36))
        self.assertEqual((canonical.num, canonical.den), (3, 6))

    def test_twelve_over_eight(self):
        # (6, 4) and (3, 2) are one class: (3, 2*1) ~ (2*3, 4*1)
        canonical = reduce_canonical(zf(12, 8))
        self.assertEqual((canonical.num, canonical.den), (3, 2))
        self.assertEqual(zf(6, 4), zf(3, 2))

    def test_already_canonical(self):
        x = parse_poly("x1")
        rig = PolyRig(RING_Z, 1)
        canonical = reduce_canonical(Frac(x, rig.one, rig))
        self.assertEqual((canonical.num, canonical.den), (x, rig.one))

    def test_zero_numerator_keeps_radical(self):
        canonical = reduce_canonical(zf(0, 8))
        self.assertEqual((canonical.num, canonical.den), (0, 2))

    def test_zero_denominator(self):
        canonical = reduce_canonical(zf(7, 0))
        self.assertEqual((canonical.num, canonical.den), (0, 0))

    def test_negative_denominator_normalized(self):
        canonical = reduce_canonical(zf(3, -6))
        self.assertEqual((canonical.num, canonical.den), (-3, 6))

    def test_rationals(self):
        rig = RationalRig()
        canonical = reduce_canonical(Frac(Fraction(3, 2), Fraction(6), rig))
        self.assertEqual((canonical.num, canonical.den), (Fraction(1, 4), Fraction(1)))

    def test_polynomial_fraction(self):
        rig = PolyRig(RING_Z, 1)
        x = parse_poly("x1")
        canonical = reduce_canonical(Frac(x, x * x, rig))
        self.assertEqual((canonical.num, canonical.den), (rig.one, x))

    def test_unsupported_rig(self):
        with self.assertRaises(UnsupportedRigError):
            reduce_canonical(Frac(1, 1, LatticeRig(2)))

    def test_canonical_form_is_a_fixed_point(self):
        rng = SplitMix64(11)
        for _ in range(40):
            a = zf(rng.randint(-60, 60), rng.randint(-60, 60))
            with self.subTest(a=str(a)):
                once = reduce_canonical(a)
                twice = reduce_canonical(once)
                self.assertEqual((once.num, once.den), (twice.num, twice.den))


class TestFractionEquality(unittest.TestCase):

    def test_generating_relation(self):
        self.assertEqual(zf(5, 2 * 3), zf(2 * 5, 4 * 3))

    def test_not_cross_multiplication(self):
        self.assertNotEqual(zf(2, 6), zf(1, 3))
        self.assertNotEqual(zf(1, 1), zf(2, 2))

    def test_zero_denominator_classes(self):
        self.assertFalse(frac_eq(zf(0, 7), zf(0, 0)))
        self.assertTrue(frac_eq(zf(7, 0), zf(0, 0)))

    def test_nullary_distributivity_fails(self):
        self.assertNotEqual(frac_mul(zf(3, 2), frac_zero(Z)), frac_zero(Z))

    def test_zero_is_additive_unit(self):
        self.assertEqual(frac_add(frac_zero(Z), zf(4, 9)), zf(4, 9))

    def test_sum_formula(self):
        total = frac_add(zf(1, 2), zf(1, 3))
        self.assertEqual((total.num, total.den), (5, 6))

    def test_rig_mismatch(self):
        with self.assertRaises(RingMismatchError):
            frac_add(zf(1, 2), Frac(1, 2, NaturalRig()))

    def test_undecided_without_canonical_forms(self):
        class Opaque(WeakRig):
            name = 'opaque'

        with self.assertRaises(EqualityUndecidedError) as ctx:
            frac_eq(Frac(1, 1, Opaque()), Frac(1, 1, Opaque()))
        self.assertIn("equality undecided", str(ctx.exception))

    def test_hash_agrees_with_equality(self):
        self.assertEqual(hash(zf(6, 4)), hash(zf(3, 2)))
        self.assertEqual(len({zf(18, 36), zf(3, 6), zf(1, 3)}), 2)


class TestStar(unittest.TestCase):

    def test_star_values(self):
        star = frac_star(zf(2, 3))
        self.assertEqual((star.num, star.den), (9, 6))
        self.assertEqual(frac_star(Frac(0, 2, NaturalRig())), Frac(0, 0, NaturalRig()))

    def test_triple_star(self):
        x = zf(2, 3)
        self.assertEqual(frac_star(frac_star(frac_star(x))), frac_star(x))
        self.assertNotEqual(frac_star(frac_star(x)), frac_star(x))

    def test_law_checks_on_samples(self):
        rng = SplitMix64(5)
        for rig in (NaturalRig(), IntegerRig(), PolyRig(RING_Q, 1)):
            fr = FractionRig(rig)
            for _ in range(15):
                x, y, z = fr.sample(rng), fr.sample(rng), fr.sample(rng)
                with self.subTest(rig=rig.name, x=str(x), y=str(y), z=str(z)):
                    self.assertEqual(check_fractional_rig_laws(rig, x, y, z), [])


class TestFractionalMonad(unittest.TestCase):

    def test_eta(self):
        value = eta(5, Z)
        self.assertEqual((value.num, value.den), (5, 1))

    def test_kleisli_unit(self):
        a = zf(10, 12)
        self.assertEqual(kleisli_ext(lambda r: eta(r, Z), a), a)

    def test_kleisli_extends(self):
        rig = PolyRig(RING_Q, 1)
        image = parse_poly("x1^2 + 1", RING_Q)
        f = lambda p: eta(p.substitute([image]).with_nvars(1), rig)  # noqa: E731
        r = parse_poly("3*x1 - 2", RING_Q)
        self.assertEqual(kleisli_ext(f, eta(r, rig)), f(r))

    def test_mu_formula(self):
        fr = FractionRig(Z)
        nested = Frac(zf(2, 3), zf(5, 7), fr)
        self.assertEqual(mu(nested), zf(2 * 7 * 7, 3 * 5 * 7))

    def test_monad_unit_laws(self):
        fr = FractionRig(Z)
        a = zf(-4, 18)
        self.assertEqual(mu(eta(a, fr)), a)
        self.assertEqual(mu(frac_map(lambda r: eta(r, Z), a, fr)), a)

    def test_functor_preserves_star(self):
        rig = PolyRig(RING_Q, 1)
        image = parse_poly("x1 - 1", RING_Q)
        h = lambda p: p.substitute([image]).with_nvars(1)  # noqa: E731
        a = Frac(parse_poly("x1", RING_Q), parse_poly("x1^2 + 2", RING_Q), rig)
        self.assertEqual(frac_map(h, frac_star(a), rig), frac_star(frac_map(h, a, rig)))

    def test_nu_needs_star(self):
        with self.assertRaises(MissingStarError):
            nu(zf(1, 2))

    def test_nu_unit_and_star(self):
        fr = FractionRig(Z)
        x = zf(4, 6)
        self.assertEqual(nu(eta(x, fr)), x)
        pair = Frac(zf(1, 2), zf(3, 5), fr)
        self.assertEqual(nu(frac_star(pair)), frac_star(nu(pair)))

    def test_suite_passes(self):
        cases = scaled_cases(500)
        report = run_frac_suite(cases=cases, seed=3)
        self.assertTrue(report.passed, [f.to_json() for f in report.failures])
        self.assertEqual(report.suite, 'FRAC')
        self.assertEqual(report.cases, cases * 3 + cases * 2 + cases)

    def test_suite_identifiers(self):
        names = [name for name, _ in FRAC_CHECKS]
        self.assertIn('star-triple', names)
        self.assertIn('algebra-assoc', names)
        self.assertEqual(len(names), len(set(names)))


class TestIdempotentsAndLocalization(unittest.TestCase):

    def setUp(self):
        self.fr = FractionRig(Z)

    def test_star_idempotent(self):
        e = StarIdempotent(zf(2, 2), self.fr)
        r = zf(5, 3)
        self.assertEqual(localize(e, frac_one(Z)), e.element)
        self.assertEqual(self.fr.mul(e.element, localize(e, r)), localize(e, r))

    def test_not_idempotent(self):
        with self.assertRaises(NotIdempotentError):
            StarIdempotent(zf(2, 1), self.fr)

    def test_needs_star(self):
        with self.assertRaises(MissingStarError):
            StarIdempotent(1, Z)

    def test_localize_at_one(self):
        e = StarIdempotent(frac_one(Z), self.fr)
        self.assertEqual(localize(e, zf(7, 4)), zf(7, 4))

    def test_localizing_at_zero_star_identifies_add_and_mul(self):
        zero = frac_zero(Z)
        e = StarIdempotent(frac_mul(zero, frac_star(zero)), self.fr)
        rng = SplitMix64(2)
        for _ in range(10):
            x, y = localize(e, self.fr.sample(rng)), localize(e, self.fr.sample(rng))
            self.assertEqual(self.fr.add(x, y), self.fr.mul(x, y))
            self.assertEqual(self.fr.add(x, y), e.element)

    def test_rig_elements(self):
        elements = rig_elements(self.fr, 2)
        self.assertIn(eta(2, Z), elements)
        self.assertNotIn(zf(0, 2), elements)
        self.assertEqual(rig_elements(Z, 3), Z.enumerate(3))

    def test_iterated_divisibility(self):
        self.assertTrue(iter_divides(4, 2, Z))
        self.assertTrue(iter_divides(6, 6, Z))
        self.assertFalse(iter_divides(3, 1, Z))
        with self.assertRaises(UnsupportedRigError):
            iter_divides(1, 1, LatticeRig(2))


class TestFiniteLattice(unittest.TestCase):

    def test_classes_are_intervals(self):
        for k in (1, 2, 3):
            rig = LatticeRig(k)
            with self.subTest(k=k):
                classes = {finite_class_of(Frac(x, y, rig)) for x in range(k + 1) for y in range(k + 1)}
                self.assertEqual(len(classes), (k + 1) * (k + 2) // 2)
                for x in range(k + 1):
                    for y in range(k + 1):
                        self.assertTrue(frac_eq(Frac(x, y, rig), Frac(min(x, y), y, rig)))

    def test_distinct_intervals(self):
        rig = LatticeRig(2)
        self.assertFalse(frac_eq(Frac(0, 1, rig), Frac(1, 1, rig)))


if __name__ == '__main__':
    unittest.main()
