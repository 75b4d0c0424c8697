import json
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from strategies import polys, poly_triples, units
from syzmf.ring import (
    DimensionError,
    LaurentPoly,
    Monomial,
    NonLaurentError,
    NotAUnitError,
    lp_add,
    lp_div_linear,
    lp_eval,
    lp_mul,
    lp_subst_point,
    one,
    poly_from_json,
    poly_to_json,
    qpow,
    var,
    zero,
)

H, T = Fraction(1, 2), Fraction(1, 3)
q_sym = sympy.Symbol("q", positive=True)


def to_sympy(p):
    zs = sympy.symbols(f"z1:{p.n + 1}")
    expr = sympy.Integer(0)
    for m, c in p.items():
        term = sympy.Rational(c.numerator, c.denominator) * q_sym ** sympy.Rational(m.qexp.numerator, m.qexp.denominator)
        for z, e in zip(zs, m.zexp):
            term *= z**e
        expr += term
    return expr


def z(n=1):
    return var(n, 0)


def W_p1():
    return z() + qpow(1, 1) * z() ** -1


def W_p2():
    z1, z2 = var(2, 0), var(2, 1)
    return z1 + z2 + qpow(2, 1) * z1**-1 * z2**-1


# -- examples ------------------------------------------------------------------

def test_add_gives_p1_potential():
    assert str(lp_add(z(), qpow(1, 1) * z() ** -1)) == "z + q*z^-1"


def test_add_identity_and_inverse():
    p = z() - qpow(1, H)
    assert lp_add(p, zero(1)) == p
    assert lp_add(p, qpow(1, H) - z()).is_zero()


def test_mul_example():
    got = lp_mul(z() - qpow(1, H), 1 - qpow(1, H) * z() ** -1)
    assert got == z() - 2 * qpow(1, H) + qpow(1, 1) * z() ** -1
    assert lp_mul(got, one(1)) == got


def test_mul_p2_pairs_sum():
    z1, z2 = var(2, 0), var(2, 1)
    s = lp_mul(z1 - qpow(2, T), 1 - qpow(2, T) * z1**-1) + lp_mul(z2 - qpow(2, 2 * T) * z1**-1, 1 - qpow(2, T) * z2**-1)
    assert s == W_p2() - 3 * qpow(2, T)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        lp_add(z(1), var(2, 0))
    with pytest.raises(DimensionError):
        lp_mul(z(1), var(2, 0))


def test_eval_examples():
    assert lp_eval(W_p1(), 0.25, [0.5]) == pytest.approx(1.0, abs=1e-15)
    assert lp_eval(zero(2), 0.3, [1j, 2.0]) == 0
    for qv in (0.01, 0.2, 0.5, 0.9):
        c = qv ** (1 / 3)
        assert abs(lp_eval(W_p2() - 3 * qpow(2, T), qv, [c, c])) < 1e-14


def test_eval_errors():
    with pytest.raises(ValueError):
        lp_eval(W_p1(), 0.5, [0])
    with pytest.raises(ValueError):
        lp_eval(W_p1(), 1.5, [1.0])
    with pytest.raises(ValueError):
        lp_eval(W_p1(), 0.0, [1.0])
    assert lp_eval(W_p1(), 1.0, [1.0]) == 2


def test_subst_examples():
    assert lp_subst_point(W_p1(), 0, qpow(1, H)) == 2 * qpow(1, H)
    assert lp_subst_point(z(), 0, z()) == z()
    step = lp_subst_point(W_p2(), 0, qpow(2, T))
    assert lp_subst_point(step, 1, qpow(2, T)) == 3 * qpow(2, T)


def test_subst_rejects_non_units():
    with pytest.raises(NotAUnitError):
        lp_subst_point(W_p1(), 0, 1 + qpow(1, H))
    with pytest.raises(NonLaurentError):
        lp_subst_point(W_p1(), 0, 2 * z())


def test_div_linear_examples():
    g, exact = lp_div_linear(W_p1() - 2 * qpow(1, H), 0, qpow(1, H))
    assert exact and g == 1 - qpow(1, H) * z() ** -1
    z1, z2 = var(2, 0), var(2, 1)
    diff = W_p2() - lp_subst_point(W_p2(), 0, qpow(2, T))
    g, exact = lp_div_linear(diff, 0, qpow(2, T))
    assert exact and g == 1 - qpow(2, 2 * T) * z1**-1 * z2**-1
    _, exact = lp_div_linear(z() ** 2, 0, one(1))
    assert not exact


def test_div_linear_errors():
    with pytest.raises(NotAUnitError):
        lp_div_linear(W_p1(), 0, 1 + qpow(1, H))
    with pytest.raises(NonLaurentError):
        lp_div_linear(var(2, 0), 0, var(2, 0))


def test_div_linear_with_other_variables_in_root():
    z1, z2 = var(2, 0), var(2, 1)
    root = qpow(2, T) * z2**-1
    g0 = z1**2 - 3 * z2 + qpow(2, H) * z1**-2
    g, exact = lp_div_linear((z1 - root) * g0, 0, root)
    assert exact and g == g0


def test_monomial_order_and_display():
    p = qpow(2, 1) * var(2, 0) ** -1 + var(2, 1) - qpow(2, T)
    assert [m.qexp for m, _ in p.items()] == [0, T, 1]
    assert str(p) == "z2 - q^(1/3) + q*z1^-1"


def test_pow_negative_requires_unit():
    assert (2 * z()) ** -2 == Fraction(1, 4) * z() ** -2
    with pytest.raises(NotAUnitError):
        (1 + z()) ** -1


def test_json_schema_and_roundtrip():
    p = z() - qpow(1, H)
    js = poly_to_json(p)
    assert js == {
        "n": 1,
        "terms": [{"coeff": "1/1", "qexp": "0/1", "zexp": [1]}, {"coeff": "-1/1", "qexp": "1/2", "zexp": [0]}],
    }
    assert poly_from_json(json.dumps(js)) == p


def test_json_rejects_bad_input():
    with pytest.raises(ValueError):
        poly_from_json({"terms": []})
    with pytest.raises(DimensionError):
        poly_from_json({"n": 2, "terms": [{"coeff": "1/1", "qexp": "0/1", "zexp": [1]}]})
    dup = {"coeff": "1/1", "qexp": "0/1", "zexp": [1]}
    with pytest.raises(ValueError):
        poly_from_json({"n": 1, "terms": [dup, dup]})


def test_no_stored_zero_coefficients():
    p = LaurentPoly(1, {Monomial(0, (1,)): 0, Monomial(1, (0,)): 2})
    assert len(p) == 1
    assert (p - p).terms == {}


# -- properties ------------------------------------------------------------------

@given(poly_triples())
def test_ring_axioms(data):
    n, a, b, c = data
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + zero(n) == a
    assert a * one(n) == a
    assert (a - a).is_zero()


@given(poly_triples(max_terms=5))
def test_mul_matches_sympy_expansion(data):
    _, a, b, _ = data
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@given(poly_triples())
def test_canonical_form_after_add_and_subtract(data):
    _, a, b, _ = data
    assert json.dumps(poly_to_json((a + b) - b)) == json.dumps(poly_to_json(a))
    assert poly_from_json(poly_to_json(a)) == a


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), polys(n, 5), units(n), st.integers(0, 2))))
def test_div_linear_soundness(data):
    n, g0, root, i = data
    i %= n
    zi = var(n, i)
    g, exact = lp_div_linear((zi - root) * g0, i, root)
    assert exact and (zi - root) * g == (zi - root) * g0
    # adding a nonvanishing remainder breaks exactness
    p = (zi - root) * g0 + 1
    g, exact = lp_div_linear(p, i, root)
    if exact:
        assert (zi - root) * g == p


def _abs_size(p, qv, zs):
    return sum(abs(float(c)) * qv ** float(m.qexp) * math.prod(abs(x) ** e for x, e in zip(zs, m.zexp)) for m, c in p.items())


@given(
    poly_triples(),
    st.floats(0.05, 0.95),
    st.lists(st.complex_numbers(min_magnitude=0.5, max_magnitude=2.0), min_size=3, max_size=3),
)
def test_eval_is_homomorphism(data, qv, zs):
    n, a, b, _ = data
    zs = zs[:n]
    scale = max(1.0, _abs_size(a, qv, zs) * _abs_size(b, qv, zs))
    assert abs(lp_eval(a * b, qv, zs) - lp_eval(a, qv, zs) * lp_eval(b, qv, zs)) <= 1e-12 * scale
    scale = max(1.0, _abs_size(a, qv, zs) + _abs_size(b, qv, zs))
    assert abs(lp_eval(a + b, qv, zs) - lp_eval(a, qv, zs) - lp_eval(b, qv, zs)) <= 1e-12 * scale


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(polys(n, 5), units(n), st.integers(0, 2))))
def test_subst_then_eval(data):
    p, u, i = data
    i %= p.n
    qv = 0.37
    zs = [0.8 + 0.3j, 1.1 - 0.2j, -0.9 + 0.5j][: p.n]
    zs_sub = list(zs)
    zs_sub[i] = lp_eval(u, qv, [1.0] * p.n)
    got = lp_eval(lp_subst_point(p, i, u), qv, zs)
    assert abs(got - lp_eval(p, qv, zs_sub)) <= 1e-11 * max(1.0, abs(got))
