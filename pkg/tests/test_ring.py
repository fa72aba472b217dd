import json

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SMALL_CAP, XY, bn_elements, gamma_scalars, multipolys
from kwbn.ring import (
    BN_JSON_SCHEMA,
    GAMMA,
    INHOMOGENEOUS,
    BNElement,
    CapError,
    GammaScalar,
    MultiPoly,
    SpecializationError,
    TwistError,
    Var,
    bn_add,
    bn_mul,
    degree_of,
    multipoly_mul,
    scalar_op,
    specialize_gamma_zero,
    substitute,
)

MANY = settings(max_examples=300, deadline=None)
BN_VALIDATOR = jsonschema.Draft202012Validator(BN_JSON_SCHEMA)

e = BNElement.e()
et = BNElement.etilde()


def bn(terms, twist=0, cap=64):
    return BNElement(terms, twist, cap)


# -- worked examples ---------------------------------------------------------


class TestScalarOp:
    def test_inverse_pair(self):
        assert scalar_op(GAMMA, GammaScalar.gamma(-1), "mul") == GammaScalar(1)

    def test_cancellation(self):
        assert scalar_op(GAMMA + 2, GammaScalar(-2), "add") == GAMMA

    def test_square(self):
        assert scalar_op(GAMMA - 2, GAMMA - 2, "mul") == GammaScalar({2: 1, 1: -4, 0: 4})

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            scalar_op(GAMMA, GAMMA, "div")

    def test_no_zero_terms_stored(self):
        assert (GAMMA - GAMMA).terms == {}
        assert GammaScalar({3: 0, 1: 2}).terms == {1: 2}


class TestBNMul:
    def test_etilde_squared(self):
        assert bn_mul(et, et) == bn({2: -4, 4: GAMMA})

    def test_unit(self):
        x = bn({1: -3, 3: GAMMA})
        assert bn_mul(BNElement.one(), x) == x

    def test_recurrence_step_3_to_5(self):
        step = bn({0: -2, 2: GAMMA})
        got = bn_mul(step, bn({1: -3, 3: GAMMA})) - e
        assert got == bn({1: 5, 3: -5 * GAMMA, 5: GammaScalar.gamma(2)})

    def test_cap_mismatch(self):
        with pytest.raises(CapError):
            bn_mul(BNElement.e(8), BNElement.e(10))

    def test_truncation_discards_high_exponents(self):
        x = BNElement({3: 1}, 0, 5)
        assert (x * x).is_zero()

    def test_twisted_times_untwisted_stays_twisted(self):
        assert bn_mul(et, e) == bn({1: 1}, 1)


class TestBNAdd:
    def test_cancel(self):
        z = bn_add(e, -e)
        assert z.is_zero() and z.twist == 0

    def test_disjoint(self):
        assert bn_add(bn({1: -3}), bn({3: GAMMA})) == bn({1: -3, 3: GAMMA})

    def test_twisted_doubling(self):
        assert bn_add(et, et) == bn({0: 2}, 1)

    def test_twist_mismatch(self):
        with pytest.raises(TwistError):
            bn_add(e, et)

    def test_cap_mismatch(self):
        with pytest.raises(CapError):
            bn_add(BNElement.e(3), BNElement.e(4))


class TestSpecialize:
    def test_m3(self):
        assert specialize_gamma_zero(bn({1: -3, 3: GAMMA})) == bn({1: -3})

    def test_m5(self):
        x = bn({1: 5, 3: -5 * GAMMA, 5: GammaScalar.gamma(2)})
        assert specialize_gamma_zero(x) == bn({1: 5})

    def test_negative_power_rejected(self):
        with pytest.raises(SpecializationError):
            specialize_gamma_zero(bn({1: GammaScalar.gamma(-1)}))


class TestDegree:
    def test_b1_3(self):
        assert degree_of(bn({1: -3, 3: GAMMA})) == 2

    def test_twisted(self):
        assert degree_of(bn({0: -2, 2: GAMMA}, 1)) == 2

    def test_inhomogeneous(self):
        assert degree_of(bn({1: 1, 2: 1})) == INHOMOGENEOUS

    def test_zero_has_no_degree(self):
        assert degree_of(BNElement.zero()) is None

    def test_etilde_squared_rewrite_is_degree_four(self):
        assert degree_of(BNElement.etilde_squared()) == 4
        assert degree_of(bn({1: -4, 4: GAMMA})) == INHOMOGENEOUS


XI3 = (Var("ξ1"), Var("ξ2"), Var("ξ3"))
x1, x2, x3 = MultiPoly.gens(XI3)


class TestMultiPoly:
    def test_monomial(self):
        assert multipoly_mul(x1, x2) == MultiPoly(XI3, {(1, 1, 0): 1})

    def test_difference_of_squares(self):
        assert multipoly_mul(x1 + x2, x1 - x2) == x1**2 - x2**2

    def test_gamma_cancels(self):
        a = GAMMA * x1
        b = GammaScalar.gamma(-1) * (x2 * x3)
        assert multipoly_mul(a, b) == x1 * x2 * x3

    def test_variable_mismatch(self):
        other = MultiPoly.gens(("a", "b", "c"))[0]
        with pytest.raises(ValueError):
            multipoly_mul(x1, other)

    def test_exponent_length_checked(self):
        with pytest.raises(ValueError):
            MultiPoly(XI3, {(1, 0): 1})


class TestSubstitute:
    def test_mixed_roots(self):
        got = substitute(x1 * x2 * x3, {"ξ1": et, "ξ2": e, "ξ3": e})
        assert got == bn({2: 1}, 1)

    def test_gamma_monomial(self):
        assert substitute(GAMMA * x1 * x2 * x3, {"ξ1": e, "ξ2": e, "ξ3": e}) == bn({3: GAMMA})

    def test_square_of_etilde(self):
        assert substitute(x1**2, {"ξ1": et, "ξ2": e, "ξ3": e}) == bn({2: -4, 4: GAMMA})

    def test_unassigned(self):
        with pytest.raises(KeyError):
            substitute(x1, {"ξ1": e})

    def test_non_uniform_twist(self):
        with pytest.raises(TwistError):
            substitute(x1 + x2, {"ξ1": et, "ξ2": e, "ξ3": e})


# -- formatting and serialization --------------------------------------------


def test_text_and_latex():
    x = bn({1: -3, 3: GAMMA})
    assert x.to_latex() == r"-3e+\gamma e^{3}"
    assert "ẽ" in bn({0: -2, 2: GAMMA}, 1).to_text()
    assert BNElement.etilde().to_text() == "ẽ"


def test_json_example_layout():
    x = bn({3: GAMMA, 1: -3})
    assert x.to_json() == {
        "twist": 0,
        "cap": 64,
        "terms": [{"e": 1, "gamma": [[0, -3]]}, {"e": 3, "gamma": [[1, 1]]}],
    }


@MANY
@given(bn_elements())
def test_json_round_trip(x):
    data = x.to_json()
    BN_VALIDATOR.validate(data)
    text = json.dumps(data)
    back = BNElement.from_json(json.loads(text))
    assert back == x
    assert json.dumps(back.to_json()) == text


# -- ring axioms -------------------------------------------------------------


@MANY
@given(gamma_scalars(), gamma_scalars(), gamma_scalars())
def test_gamma_scalar_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + 0 == a and a * 1 == a
    assert a + (-a) == GammaScalar(0)


@st.composite
def same_twist_triple(draw):
    t = draw(st.integers(0, 1))
    return draw(bn_elements(t)), draw(bn_elements(t)), draw(bn_elements(t))


@MANY
@given(same_twist_triple(), bn_elements())
def test_bn_element_axioms(abc, d):
    a, b, c = abc
    one = BNElement.one(SMALL_CAP)
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * d == d * a
    assert (a * d) * c == a * (d * c)
    assert d * (a + b) == d * a + d * b
    assert a * one == a
    assert (a + BNElement.zero(a.twist, SMALL_CAP)) == a


@MANY
@given(multipolys(), multipolys(), multipolys())
def test_multipoly_axioms(a, b, c):
    one = MultiPoly.constant(XY, 1)
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * one == a
    assert a - a == MultiPoly(XY)


@MANY
@given(bn_elements(), bn_elements())
def test_twist_additivity(a, b):
    assert (a * b).twist == (a.twist + b.twist) % 2


@given(st.integers(0, 12))
def test_rewrite_confluence(k):
    cap = 40
    t = BNElement.etilde(cap)
    assert (t * t) * t == t * (t * t)
    left = BNElement.one(cap)
    for _ in range(k):
        left = left * t
    right = BNElement.one(cap)
    for _ in range(k):
        right = t * right
    assert left == right == t**k


@MANY
@given(bn_elements(cap=16), bn_elements(cap=16), bn_elements(cap=16), st.integers(0, 15))
def test_truncation_coherence(a, b, c, low):
    big = (a * b + (c if c.twist == (a * b).twist else BNElement.zero((a * b).twist, 16))) * c
    small_inputs = [x.truncate(low) for x in (a, b, c)]
    sa, sb, sc = small_inputs
    pad = sc if sc.twist == (sa * sb).twist else BNElement.zero((sa * sb).twist, low)
    small = (sa * sb + pad) * sc
    assert big.truncate(low) == small


@MANY
@given(bn_elements(), bn_elements())
def test_degree_multiplicative(a, b):
    da, db = degree_of(a), degree_of(b)
    p = a * b
    if da in (None, INHOMOGENEOUS) or db in (None, INHOMOGENEOUS) or p.is_zero():
        return
    assert degree_of(p) == da + db
