import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import poly
from talex.algebra import (
    INTEGERS,
    CoefficientDomain,
    DomainMismatchError,
    LaurentPolynomial,
    NonInvertibleScalarError,
    PolyMatrix,
    RationalFunction,
    determinant,
    determinant_cofactor,
    divexact,
    equal_up_to_unit,
    poly_gcd,
    prime_field,
    product_over_roots_of_unity,
    rational_normalize,
    reduce_mod,
    substitute_scale,
    to_text,
)

F3 = prime_field(3)
F5 = prime_field(5)
F7 = prime_field(7)


@st.composite
def laurent(draw, domain=INTEGERS):
    n = draw(st.integers(0, 6))
    coeffs = draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
    return LaurentPolynomial.make(domain, draw(st.integers(-4, 4)), coeffs)


class TestDomains:
    def test_prime_field_requires_prime(self):
        with pytest.raises(ValueError):
            prime_field(6)
        with pytest.raises(ValueError):
            prime_field(1)
        assert prime_field(2).is_field

    def test_integer_units(self):
        assert INTEGERS.inv(-1) == -1
        with pytest.raises(NonInvertibleScalarError):
            INTEGERS.inv(2)

    def test_field_inverse(self):
        assert F7.inv(3) == 5
        with pytest.raises(NonInvertibleScalarError):
            F7.inv(0)


class TestArithmetic:
    def test_difference_of_squares(self):
        assert poly([-1, 1]) * poly([1, 1]) == poly([-1, 0, 1])

    def test_cyclotomic_product(self):
        # hand expansion: (t^2 - t + 1)(t^2 + t + 1) = t^4 + t^2 + 1
        assert poly([1, -1, 1]) * poly([1, 1, 1]) == poly([1, 0, 1, 0, 1])

    def test_zero_is_absorbing_and_canonical(self):
        f = poly([2, 0, -3], min_exp=-2)
        z = f * LaurentPolynomial.zero()
        assert z.is_zero and z.min_exp == 0 and z.coeffs == ()

    def test_domain_mismatch_raises(self):
        with pytest.raises(DomainMismatchError):
            poly([1]) + poly([1], domain=F3)

    def test_power(self):
        assert poly([1, 1]) ** 3 == poly([1, 3, 3, 1])
        assert poly([2]) ** 0 == LaurentPolynomial.one()

    def test_evaluate(self):
        assert poly([2, -5, 2]).evaluate(2) == 0
        assert poly([2, -5, 2], domain=F7).evaluate(2) == 0

    @given(laurent(), laurent(), laurent())
    @settings(max_examples=150, deadline=None)
    def test_ring_laws(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c

    @given(laurent())
    @settings(max_examples=100, deadline=None)
    def test_canonical_form_is_fixpoint(self, f):
        again = LaurentPolynomial.make(f.domain, f.min_exp, f.coeffs)
        assert again == f
        if not f.is_zero:
            assert f.coeffs[0] != 0 and f.coeffs[-1] != 0


class TestSubstituteScale:
    def test_sign_flip(self):
        assert substitute_scale(poly([1, -1, 1]), -1) == poly([1, 1, 1])

    def test_identity_scalar(self):
        f = poly([3, 0, -2], min_exp=-1)
        assert substitute_scale(f, 1) == f

    def test_field_scaling(self):
        f = poly([2, -5, 2], domain=F7)
        # coefficients 2, -10, 8 reduced mod 7
        assert substitute_scale(f, 2) == poly([2, 4, 1], domain=F7)
        assert substitute_scale(f, 2) == poly([2, -3, 1], domain=F7)

    def test_noninvertible_over_integers(self):
        with pytest.raises(NonInvertibleScalarError):
            substitute_scale(poly([1, 1]), 2)

    def test_laurent_tail(self):
        f = poly([1, 1], min_exp=-3, domain=F5)
        g = substitute_scale(f, 2)
        # coefficient of t^-3 times 2^-3, of t^-2 times 2^-2
        inv8 = pow(8, -1, 5)
        inv4 = pow(4, -1, 5)
        assert g.coefficient(-3) == inv8 % 5 and g.coefficient(-2) == inv4 % 5


class TestRootsOfUnityProduct:
    def test_order_two_of_linear(self):
        got = product_over_roots_of_unity(poly([-1, 1]), 2)
        assert got == poly([1, 0, -1])  # 1 - t^2, lowest coefficient positive

    def test_order_four_of_linear(self):
        got = product_over_roots_of_unity(poly([-1, 1]), 4)
        assert got == poly([1, 0, 0, 0, -1])

    @staticmethod
    def _numeric_orbit_product(f, n):
        """Oracle: evaluate prod_j f(a^j x) at rational sample points with
        high-precision complex arithmetic, then interpolate and round.
        Returns the result as a Laurent polynomial (t-shift included)."""
        import mpmath

        mpmath.mp.dps = 60
        genuine = f.shift(-f.min_exp)
        deg = n * (len(genuine.coeffs) - 1)
        xs = [mpmath.mpf(k) / 7 for k in range(2, 2 + deg + 1)]
        ys = []
        for x in xs:
            v = mpmath.mpc(1)
            for j in range(n):
                a = mpmath.exp(2j * mpmath.pi * j / n)
                v *= sum(c * (a * x) ** k
                         for k, c in enumerate(genuine.coeffs))
            ys.append(v)
        mat = mpmath.matrix([[x ** k for k in range(deg + 1)] for x in xs])
        sol = mpmath.lu_solve(mat, mpmath.matrix(ys))
        assert all(abs(mpmath.im(c)) < 1e-20 for c in sol)
        return poly([int(mpmath.nint(mpmath.re(c))) for c in sol],
                    min_exp=n * f.min_exp)

    def test_trefoil_cubed_orbit(self):
        f = poly([1, -1, 1])
        oracle = self._numeric_orbit_product(f, 3)
        assert oracle == poly([1, 0, 0, 2, 0, 0, 1])  # (t^3 + 1)^2, frozen
        assert product_over_roots_of_unity(f, 3) == oracle

    def test_numeric_oracle_on_samples(self):
        rng = random.Random(5)
        for _ in range(5):
            coeffs = [rng.randrange(-3, 4) for _ in range(rng.randrange(1, 4))]
            coeffs.append(rng.randrange(1, 4))
            f = poly(coeffs, min_exp=rng.randrange(-2, 3))
            n = rng.randrange(1, 5)
            got = product_over_roots_of_unity(f, n)
            oracle = self._numeric_orbit_product(f, n)
            assert got in (oracle, -oracle)

    def test_unit_order(self):
        f = poly([3, 1, -2])
        got = product_over_roots_of_unity(f, 1)
        assert equal_up_to_unit(RationalFunction.of(got),
                                RationalFunction.of(f))

    @given(laurent())
    @settings(max_examples=40, deadline=None)
    def test_order_two_is_f_t_times_f_minus_t(self, f):
        got = product_over_roots_of_unity(f, 2)
        direct = f * substitute_scale(f, -1)
        if f.is_zero:
            assert got.is_zero
        else:
            assert equal_up_to_unit(RationalFunction.of(got),
                                    RationalFunction.of(direct))

    def test_shift_restored(self):
        f = poly([-1, 1], min_exp=-2)
        got = product_over_roots_of_unity(f, 3)
        assert got.min_exp == -6

    def test_rejects_bad_order_and_domain(self):
        with pytest.raises(ValueError):
            product_over_roots_of_unity(poly([1, 1]), 0)
        with pytest.raises(DomainMismatchError):
            product_over_roots_of_unity(poly([1, 1], domain=F3), 2)


def random_matrix(rng, n, domain):
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            deg = rng.randrange(0, 3)
            coeffs = [rng.randrange(-4, 5) for _ in range(deg + 1)]
            row.append(LaurentPolynomial.make(
                domain, rng.randrange(-2, 3), coeffs))
        rows.append(row)
    return PolyMatrix.from_rows(rows)


class TestDeterminant:
    def test_triangular(self):
        t = LaurentPolynomial.t_power(1)
        m = PolyMatrix.from_rows(
            [[t, LaurentPolynomial.one()],
             [LaurentPolynomial.zero(), LaurentPolynomial.t_power(-1)]])
        assert determinant(m) == LaurentPolynomial.one()

    def test_one_by_one(self):
        f = poly([4, 0, -1], min_exp=-1)
        assert determinant(PolyMatrix.from_rows([[f]])) == f

    def test_empty(self):
        assert determinant(PolyMatrix(0, 0, ())) == LaurentPolynomial.one()

    def test_three_cycle(self):
        t = LaurentPolynomial.t_power(1)
        one = LaurentPolynomial.one()
        zero = LaurentPolynomial.zero()
        perm = [1, 2, 0]
        rows = [[(t if perm[j] == i else zero) - (one if i == j else zero)
                 for j in range(3)] for i in range(3)]
        m = PolyMatrix.from_rows(rows)
        got = determinant(m)
        assert got == determinant_cofactor(m)
        assert got in (poly([-1, 0, 0, 1]), poly([1, 0, 0, -1]))

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            determinant(PolyMatrix(1, 2, (poly([1]), poly([1]))))

    @pytest.mark.parametrize("domain", [INTEGERS, F3, F5])
    def test_matches_cofactor_oracle(self, domain):
        rng = random.Random(20240 + (domain.p or 0))
        for _ in range(60):
            n = rng.randrange(1, 5)
            m = random_matrix(rng, n, domain)
            assert determinant(m) == determinant_cofactor(m)

    @pytest.mark.parametrize("domain", [INTEGERS, F3])
    def test_alternating_in_rows(self, domain):
        rng = random.Random(99)
        for _ in range(20):
            n = rng.randrange(2, 5)
            m = random_matrix(rng, n, domain)
            rows = [[m.entry(i, j) for j in range(n)] for i in range(n)]
            rows[0], rows[1] = rows[1], rows[0]
            swapped = PolyMatrix.from_rows(rows)
            assert determinant(swapped) == -determinant(m)

    def test_zero_row(self):
        z = LaurentPolynomial.zero()
        m = PolyMatrix.from_rows([[z, z], [poly([1]), poly([2])]])
        assert determinant(m).is_zero


class TestGcdAndDivision:
    def test_gcd_cancellation(self):
        f = poly([-1, 0, 1])
        g = poly([-1, 1])
        d = poly_gcd(f, g)
        assert divexact(f, d) * d == f

    def test_divexact_field(self):
        f = poly([1, 0, 1], domain=F5) * poly([2, 3], domain=F5)
        assert divexact(f, poly([2, 3], domain=F5)) == poly([1, 0, 1],
                                                            domain=F5)

    def test_inexact_division_raises(self):
        with pytest.raises(ArithmeticError):
            divexact(poly([1, 0, 1]), poly([1, 1]))

    @given(laurent(), laurent())
    @settings(max_examples=60, deadline=None)
    def test_gcd_divides_both(self, a, b):
        if a.is_zero or b.is_zero:
            return
        g = poly_gcd(a, b)
        assert divexact(a, g) * g == a
        assert divexact(b, g) * g == b


class TestRationalNormalize:
    def test_common_factor(self):
        r = rational_normalize(RationalFunction(poly([-1, 0, 1]),
                                                poly([-1, 1])))
        assert r.numerator == poly([1, 1])
        assert r.denominator == LaurentPolynomial.one()

    def test_unit_and_power(self):
        r = rational_normalize(RationalFunction(
            poly([2], min_exp=2, domain=F3), poly([4], min_exp=1, domain=F3)))
        assert r.numerator == poly([1], domain=F3)
        assert r.denominator == LaurentPolynomial.one(F3)

    def test_worked_dihedral_quotient(self):
        # the order-18 quotient: sixth powers over cubes collapses to cubes
        tp1, tm1 = poly([1, 1]), poly([-1, 1])
        f6, f3 = poly([1, -1, 1]), poly([1, 1, 1])
        num = (tp1 ** 6) * (f6 ** 6) * (tm1 ** 6) * (f3 ** 6)
        den = (tp1 ** 3) * (f6 ** 3) * (tm1 ** 3) * (f3 ** 3)
        r = rational_normalize(RationalFunction(num, den))
        assert r.denominator == LaurentPolynomial.one()
        cubes = (tp1 ** 3) * (f6 ** 3) * (tm1 ** 3) * (f3 ** 3)
        assert equal_up_to_unit(r, RationalFunction.of(cubes))
        assert r.numerator == -cubes  # lowest coefficient made positive

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RationalFunction(poly([1]), LaurentPolynomial.zero())


class TestEqualUpToUnit:
    def test_unit_factor_over_field(self):
        a = RationalFunction.of(poly([-1, 0, 1], domain=F5))
        b = RationalFunction.of(poly([-3, 0, 3], min_exp=2, domain=F5))
        assert equal_up_to_unit(a, b)

    def test_distinct_irreducibles(self):
        assert not equal_up_to_unit(RationalFunction.of(poly([-1, 1])),
                                    RationalFunction.of(poly([1, 1])))

    def test_worked_congruence_mod_3(self):
        lhs = RationalFunction(
            reduce_mod(poly([1, 1]) ** 18 * poly([-1, 1]) ** 18, 3),
            reduce_mod(poly([1, 1]) ** 9 * poly([-1, 1]) ** 9, 3))
        inner = RationalFunction(
            reduce_mod(poly([1, 1]) ** 2 * poly([-1, 1]) ** 2, 3),
            reduce_mod(poly([1, 1]) * poly([-1, 1]), 3))
        assert equal_up_to_unit(lhs, inner ** 9)

    @given(laurent(), st.integers(-3, 3), st.sampled_from([1, -1]))
    @settings(max_examples=60, deadline=None)
    def test_invariant_under_units(self, f, k, c):
        if f.is_zero:
            return
        a = RationalFunction.of(f)
        b = RationalFunction.of(f.shift(k).scale(c))
        assert equal_up_to_unit(a, b)

    @given(laurent(), laurent())
    @settings(max_examples=60, deadline=None)
    def test_symmetric(self, f, g):
        a, b = RationalFunction.of(f), RationalFunction.of(g)
        assert equal_up_to_unit(a, b) == equal_up_to_unit(b, a)


class TestReduceMod:
    def test_coefficient_reduction(self):
        assert reduce_mod(poly([1, -1, 1]), 3) == poly([1, 2, 1], domain=F3)

    def test_degree_collapse(self):
        assert reduce_mod(poly([1, 0, 3]), 3) == poly([1], domain=F3)

    def test_worked_identity_mod_3(self):
        lhs = reduce_mod(poly([1, 1]) ** 2 * poly([-1, 1]) ** 2, 3)
        rhs = reduce_mod(poly([1, -1, 1]) * poly([1, 1, 1]), 3)
        assert lhs == rhs

    def test_requires_prime(self):
        with pytest.raises(ValueError):
            reduce_mod(poly([1, 1]), 4)

    @given(laurent(), laurent(), st.sampled_from([2, 3, 5, 7]))
    @settings(max_examples=80, deadline=None)
    def test_ring_homomorphism(self, a, b, p):
        assert reduce_mod(a * b, p) == reduce_mod(a, p) * reduce_mod(b, p)
        assert reduce_mod(a + b, p) == reduce_mod(a, p) + reduce_mod(b, p)


class TestSerialization:
    def test_text_form(self):
        assert to_text(poly([1, -1, 1])) == "t^2 - t + 1"
        assert to_text(poly([2, -5, 2])) == "2*t^2 - 5*t + 2"
        assert to_text(LaurentPolynomial.zero()) == "0"
        assert to_text(poly([1], min_exp=-2)) == "t^-2"

    def test_json_roundtrip(self):
        f = poly([3, 0, -1], min_exp=-2)
        assert LaurentPolynomial.from_json(f.to_json()) == f
        assert f.to_json() == {"minExponent": -2, "coefficients": [3, 0, -1]}

    def test_rational_json_roundtrip(self):
        r = RationalFunction(poly([1, 2]), poly([-1, 1]))
        assert RationalFunction.from_json(r.to_json()) == r
