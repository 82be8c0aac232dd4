import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from leibniz_lab.errors import (
    ConstraintViolation,
    DenominatorVanishes,
    DivisionByZero,
    ScalarSyntaxError,
)
from leibniz_lab.scalars import (
    QI,
    ParameterConstraint,
    Scalar,
    b_constraint,
    parse_scalar,
    qi_sqrt,
    substitute,
)

S = parse_scalar
C = Scalar.rational


def test_conjugate_cancellation():
    assert S("1/2+i") + S("1/2-i") == C(1)


def test_additive_identity():
    c = Scalar.param("c")
    assert c + C(0) == c


def test_rational_function_sum_reduces_to_one():
    lhs = S("c/(c-1)") + S("-1/(c-1)")
    assert lhs == C(1)
    # cross-check by substituting c = 2
    assert substitute(S("c/(c-1)"), {"c": 2}) + substitute(S("-1/(c-1)"), {"c": 2}) == C(1)


def test_imaginary_unit_squares_to_minus_one():
    assert Scalar.imag() * Scalar.imag() == C(-1)


def test_field_inverse_of_parameter():
    c = Scalar.param("c")
    assert c.inverse() == S("1/c")
    assert c * c.inverse() == C(1)


def test_inverse_of_zero_raises():
    with pytest.raises(DivisionByZero):
        C(0).inverse()


def test_is_zero():
    c = Scalar.param("c")
    assert (c - c).is_zero()
    assert not (c - C(1)).is_zero()


def test_is_zero_after_cancellation():
    # (c^2 - 1)/(c - 1) - (c + 1) == 0; oracle: sympy simplification
    expr = S("(c*c-1)/(c-1)") - S("c+1")
    assert expr.is_zero()
    cs = sympy.symbols("c")
    assert sympy.simplify((cs**2 - 1) / (cs - 1) - (cs + 1)) == 0


def test_substitute_basic():
    c = Scalar.param("c")
    assert substitute(c, {"c": 2}) == C(2)


def test_substitute_hits_b_constraint():
    c = Scalar.param("c")
    with pytest.raises(ConstraintViolation):
        substitute(c, {"c": 1}, constraints=[b_constraint("c")])
    with pytest.raises(ConstraintViolation):
        substitute(c, {"c": -1}, constraints=[b_constraint("c")])


def test_substitute_denominator_vanishes():
    with pytest.raises(DenominatorVanishes):
        substitute(S("1/(c-2)"), {"c": 2})


def test_b_constraint_is_exactly_plus_minus_one():
    con = b_constraint("c")
    assert con.excluded == frozenset({QI(1), QI(-1)})


# --- textual format -----------------------------------------------------

ROUND_TRIP_STRINGS = ["-1", "1/2+3/4*i", "c", "(c+1)/(c-1)", "0", "i", "-i",
                      "2*c", "c*c-2", "(1+2*i)*c", "1/c", "-3/7"]


@pytest.mark.parametrize("text", ROUND_TRIP_STRINGS)
def test_parse_format_round_trip(text):
    s = parse_scalar(text)
    assert parse_scalar(str(s)) == s
    # formatting is a fixed point after one normalization pass
    assert str(parse_scalar(str(s))) == str(s)


def test_parse_errors_have_positions():
    with pytest.raises(ScalarSyntaxError):
        parse_scalar("c +")
    with pytest.raises(ScalarSyntaxError):
        parse_scalar("(c")
    with pytest.raises(ScalarSyntaxError):
        parse_scalar("c ^ 2")


def test_parse_division_by_zero():
    with pytest.raises(DivisionByZero):
        parse_scalar("1/(c-c)")


# --- random scalar machinery ---------------------------------------------


def _random_qi(rng):
    return QI(
        Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
        Fraction(rng.randint(-2, 2), rng.randint(1, 2)),
    )


def _random_poly_scalar(rng, names=("a", "b")):
    out = Scalar.const(_random_qi(rng))
    for name in names:
        if rng.random() < 0.7:
            p = Scalar.param(name)
            out = out + Scalar.const(_random_qi(rng)) * p
            if rng.random() < 0.3:
                out = out + Scalar.const(_random_qi(rng)) * p * p
    return out


def _random_scalar(rng):
    num = _random_poly_scalar(rng)
    den = _random_poly_scalar(rng)
    while den.is_zero():
        den = _random_poly_scalar(rng)
    return num / den


qi_st = st.builds(
    QI,
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
)


@st.composite
def scalar_st(draw):
    rng = random.Random(draw(st.integers(0, 2**32)))
    return _random_scalar(rng)


@settings(max_examples=80, deadline=None)
@given(scalar_st(), scalar_st(), scalar_st())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == Scalar.const(QI(0))
    if not a.is_zero():
        assert a * a.inverse() == Scalar.const(QI(1))


@settings(max_examples=60, deadline=None)
@given(scalar_st())
def test_format_round_trip_random(a):
    assert parse_scalar(str(a)) == a


def test_substitute_is_ring_homomorphism():
    rng = random.Random(20240817)
    for _ in range(200):
        a = _random_scalar(rng)
        b = _random_scalar(rng)
        binding = {"a": _random_qi(rng), "b": _random_qi(rng)}
        try:
            sa = substitute(a, binding)
            sb = substitute(b, binding)
            sab = substitute(a * b, binding)
            s_sum = substitute(a + b, binding)
        except DenominatorVanishes:
            continue
        assert sab == sa * sb
        assert s_sum == sa + sb


def test_canonicalization_is_idempotent():
    rng = random.Random(7)
    for _ in range(100):
        a = _random_scalar(rng)
        again = Scalar(a.num, a.den)
        assert again.num == a.num and again.den == a.den


def test_qi_sqrt():
    assert qi_sqrt(QI(4)) == QI(2)
    assert qi_sqrt(QI(-4)) == QI(0, 2)
    assert qi_sqrt(QI(0, 2)) == QI(1, 1)  # (1+i)^2 = 2i
    assert qi_sqrt(QI(Fraction(9, 4))) == QI(Fraction(3, 2))
    assert qi_sqrt(QI(2)) is None
    assert qi_sqrt(QI(1, 1)) is None


def test_parameter_constraint_of_helper():
    con = ParameterConstraint.of("alpha", 0)
    assert con.excluded == frozenset({QI(0)})
