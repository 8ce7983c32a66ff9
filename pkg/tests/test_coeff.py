"""Unit tests for exact coefficient arithmetic"""
from fractions import Fraction

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from gradedlpa.errors import StructuralError
from gradedlpa.services.coeff import Field, LaurentPoly

Q = Field(0)
F2 = Field(2)
F3 = Field(3)


class TestField:
    """Test the fields Q and F_p"""

    def test_parse(self):
        """Test reading field descriptors"""
        assert Field.parse("q") == Q
        assert Field.parse("fp:5").characteristic == 5
        assert Field.parse(" FP:7 ").label == "fp:7"

    @pytest.mark.parametrize("descriptor", ["fp:4", "fp:1", "fp:x", "r"])
    def test_parse_rejects(self, descriptor):
        """Test bad field descriptors"""
        with pytest.raises(StructuralError):
            Field.parse(descriptor)

    def test_rational_arithmetic(self):
        """Test exact rationals"""
        half = Q("1/2")
        assert half + half == Q.one
        assert Q.render(Q("-3/4")) == "-3/4"
        assert Q.render(Q(Fraction(6, 3))) == "2"

    def test_prime_field_residues(self):
        """Test F_3 rendering and inverses"""
        assert F3.render(F3(-1)) == "2"
        assert F3.inv(F3(2)) == F3(2)
        assert [F3.render(a) for a in F3.elements()] == ["0", "1", "2"]

    def test_zero_has_no_inverse(self):
        """Test inverting zero"""
        with pytest.raises(ZeroDivisionError):
            F2.inv(F2.zero)
        with pytest.raises(ZeroDivisionError):
            Q.inv(Q.zero)

    def test_rationals_not_enumerable(self):
        """Test that only finite fields enumerate"""
        with pytest.raises(StructuralError):
            Q.elements()

    def test_floats_rejected(self):
        """Test that floats are not field elements"""
        with pytest.raises(StructuralError):
            Q(0.5)

    def test_equality(self):
        """Test field identity"""
        assert Field(3) == F3
        assert Field(3) != Field(5)
        assert len({Field(2), F2, Q}) == 2


class TestLaurentPoly:
    """Test the Laurent ring K[x^m, x^-m]"""

    def test_render_sorted_by_exponent(self):
        """Test rendering order"""
        p = LaurentPoly(Q, 1, {4: 3, -2: 1})
        assert p.render() == "x^-2 + 3*x^4"
        assert LaurentPoly(Q, 1, {1: -1}).render() == "-x"
        assert LaurentPoly.zero(Q).render() == "0"

    def test_monomial_respects_step(self):
        """Test exponents must be multiples of the step"""
        m = LaurentPoly.monomial(Q, 4, 1, step=2)
        assert m.support() == [4]
        assert m.degree() == 4
        with pytest.raises(StructuralError):
            LaurentPoly.monomial(Q, 3, step=2)

    def test_multiplication(self):
        """Test a product with step 2"""
        a = LaurentPoly(Q, 2, {1: 1, 0: 1})
        b = LaurentPoly.monomial(Q, -2, 1, step=2)
        assert (a * b).render() == "x^-2 + 1"

    def test_units(self):
        """Test that units are exactly the nonzero monomials"""
        m = LaurentPoly.monomial(Q, 2, 5)
        assert m.is_unit()
        assert m.inverse() == LaurentPoly.monomial(Q, -2, Fraction(1, 5))
        assert m * m.inverse() == LaurentPoly.one(Q)

        binomial = LaurentPoly(Q, 1, {0: 1, 1: 1})
        assert not binomial.is_unit()
        with pytest.raises(ZeroDivisionError):
            binomial.inverse()

    def test_step_mismatch(self):
        """Test combining different Laurent rings"""
        with pytest.raises(StructuralError):
            LaurentPoly.one(Q, 1) + LaurentPoly.one(Q, 2)
        with pytest.raises(StructuralError):
            LaurentPoly.one(Q) * LaurentPoly.one(F2)

    def test_components(self):
        """Test homogeneous components"""
        p = LaurentPoly(Q, 1, {4: 3, -2: 1})
        assert p.component(4) == LaurentPoly.monomial(Q, 4, 3)
        assert p.component(1).is_zero()
        assert [d for d, _ in p.components()] == [-2, 4]

    def test_with_step(self):
        """Test reinterpreting inside a smaller Laurent ring"""
        assert LaurentPoly.monomial(Q, 4).with_step(2) == LaurentPoly.monomial(Q, 4, step=2)
        with pytest.raises(StructuralError):
            LaurentPoly.monomial(Q, 3).with_step(2)

    def test_characteristic_two_cancels(self):
        """Test that p + p = 0 over F_2"""
        p = LaurentPoly(F2, 1, {1: 1, -3: 1})
        assert (p + p).is_zero()
        assert p == -p

    def test_hash_follows_equality(self):
        """Test hashing equal polynomials"""
        a = LaurentPoly(Q, 1, {1: Fraction(2, 4)})
        b = LaurentPoly(Q, 1, {1: "1/2"})
        assert a == b
        assert hash(a) == hash(b)


laurent_f3 = st.dictionaries(st.integers(-3, 3), st.integers(0, 2), max_size=4).map(
    lambda terms: LaurentPoly(F3, 2, terms)
)


class TestLaurentRingAxioms:
    """Property tests for K[x^2, x^-2] over F_3"""

    @hyp_settings(max_examples=60, deadline=None)
    @given(laurent_f3, laurent_f3, laurent_f3)
    def test_ring_axioms(self, a, b, c):
        """Test associativity, commutativity and distributivity"""
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a + b) - b == a

    @hyp_settings(max_examples=60, deadline=None)
    @given(laurent_f3, laurent_f3)
    def test_components_multiply(self, a, b):
        """Test that degrees add under multiplication of monomials"""
        for d1, p in a.components():
            for d2, q in b.components():
                product = p * q
                assert product.degree() == d1 + d2
