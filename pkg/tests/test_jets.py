"""Jet arithmetic: contract examples, ring axioms, oracle evaluation."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from plumbline import (
    EXACT_FIELD,
    FLOAT_FIELD,
    GaussianRational,
    JetRing,
    RangeError,
    StructureError,
    jet_add,
    jet_coefficient,
    jet_from_json_dict,
    jet_mul,
    jet_vanishes_through_degree,
)


@pytest.fixture
def ring1():
    return JetRing(("t",), 4)


@pytest.fixture
def ring2():
    return JetRing(("t1", "t2"), 2)


def test_add_cancellation(ring1):
    one_plus_t = ring1.one() + ring1.variable("t")
    assert jet_add(one_plus_t, -ring1.variable("t")) == ring1.one()


def test_add_identity(ring1):
    x = ring1.one() * 3 + ring1.variable("t") * Fraction(2, 7)
    assert jet_add(ring1.zero(), x) == x


def test_add_disjoint_supports(ring2):
    t1, t2 = ring2.variable("t1"), ring2.variable("t2")
    s = jet_add(t1 + t2, t1 * t2)
    assert s.coefficient((1, 0)) == GaussianRational(1)
    assert s.coefficient((0, 1)) == GaussianRational(1)
    assert s.coefficient((1, 1)) == GaussianRational(1)


def test_mul_truncates_t_squared():
    ring = JetRing(("t",), 1)
    t = ring.variable("t")
    assert jet_mul(ring.one() + t, ring.one() - t) == ring.one()


def test_mul_order_two(ring2):
    t1, t2 = ring2.variable("t1"), ring2.variable("t2")
    p = jet_mul(ring2.one() + t1, ring2.one() + t2)
    assert p == ring2.one() + t1 + t2 + t1 * t2


def test_mul_degree_overflow():
    ring = JetRing(("t",), 17)
    t9 = ring.variable("t") ** 9
    assert jet_mul(t9, t9) == ring.zero()


def test_coefficient_examples(ring2):
    p = (ring2.one() + ring2.variable("t1")) * (ring2.one() + ring2.variable("t2"))
    assert jet_coefficient(p, (1, 1)) == GaussianRational(1)
    assert jet_coefficient(ring2.variable("t1"), (2, 0)) == GaussianRational(0)
    one_plus_t = JetRing(("t",), 3).one() + JetRing(("t",), 3).variable("t")
    assert jet_coefficient(one_plus_t, (0,)) == GaussianRational(1)


def test_vanishes_through_degree(ring1):
    t = ring1.variable("t")
    a = t ** 3 + t ** 4 * 2
    assert jet_vanishes_through_degree(a, 2)
    assert not jet_vanishes_through_degree(ring1.one() + t, 0)
    with pytest.raises(RangeError):
        jet_vanishes_through_degree(a, 5)


def test_float_vanishing_is_relative():
    ring = JetRing(("t",), 2, FLOAT_FIELD)
    big = ring.constant(1e6) * ring.variable("t") ** 2
    tiny = ring.constant(1e-7)
    a = big + tiny
    # 1e-7 is far below 1e-10 * 1e6
    assert a.vanishes_through_degree(1)
    assert not a.vanishes_through_degree(1, tolerance=1e-16)


def test_ring_mismatch_raises(ring1, ring2):
    with pytest.raises(StructureError):
        jet_add(ring1.one(), ring2.one())
    with pytest.raises(StructureError):
        jet_mul(ring1.one(), ring2.one())


def test_exact_field_refuses_floats(ring1):
    with pytest.raises(TypeError):
        ring1.constant(0.5)


def test_duplicate_variables_rejected():
    with pytest.raises(StructureError):
        JetRing(("t", "t"), 1)


# ---------------------------------------------------------------------------
# property tests


def _coeffs():
    return st.fractions(
        min_value=Fraction(-5), max_value=Fraction(5), max_denominator=6
    )


@st.composite
def jets(draw, ring=JetRing(("x", "y"), 3)):
    n = len(ring.variables)
    exps = [e for e in _all_exps(n, ring.order)]
    terms = {}
    for exp in draw(st.lists(st.sampled_from(exps), max_size=6)):
        terms[exp] = GaussianRational(draw(_coeffs()))
    return ring.jet(terms)


def _all_exps(n, order):
    if n == 0:
        return [()]
    out = []
    for head in range(order + 1):
        for rest in _all_exps(n - 1, order - head):
            out.append((head,) + rest)
    return out


@settings(max_examples=120, deadline=None)
@given(jets(), jets(), jets())
def test_ring_axioms_exact(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def _horner_eval(terms, names, values):
    """Independent oracle: recursive Horner evaluation, one variable at a time."""
    if not names:
        return terms.get((), GaussianRational(0))
    by_power = {}
    for exp, c in terms.items():
        by_power.setdefault(exp[0], {})[exp[1:]] = c
    if not by_power:
        return GaussianRational(0)
    acc = GaussianRational(0)
    for power in range(max(by_power), -1, -1):
        acc = acc * values[0] + _horner_eval(
            by_power.get(power, {}), names[1:], values[1:]
        )
    return acc


@settings(max_examples=80, deadline=None)
@given(jets(), st.lists(_coeffs(), min_size=2, max_size=2))
def test_evaluation_matches_horner_oracle(a, point):
    values = [GaussianRational(v) for v in point]
    direct = a.evaluate(dict(zip(a.ring.variables, values)))
    oracle = _horner_eval(a.terms, list(a.ring.variables), values)
    assert direct == oracle


def _horner_eval_complex(terms, values):
    if not values:
        return terms.get((), 0j)
    by_power = {}
    for exp, c in terms.items():
        by_power.setdefault(exp[0], {})[exp[1:]] = c
    if not by_power:
        return 0j
    acc = 0j
    for power in range(max(by_power), -1, -1):
        acc = acc * values[0] + _horner_eval_complex(by_power.get(power, {}), values[1:])
    return acc


@settings(max_examples=60, deadline=None)
@given(jets(), st.lists(_coeffs(), min_size=2, max_size=2))
def test_float_evaluation_matches_horner_oracle(a, point):
    fring = JetRing(a.ring.variables, a.ring.order, FLOAT_FIELD)
    f = fring.jet({e: c.to_complex() for e, c in a.terms.items()})
    values = [complex(v) for v in point]
    direct = f.evaluate(dict(zip(f.ring.variables, values)))
    oracle = _horner_eval_complex(f.terms, values)
    assert abs(direct - oracle) <= 1e-10 * max(1.0, abs(oracle))


@settings(max_examples=60, deadline=None)
@given(jets(), jets())
def test_exact_and_float_products_agree(a, b):
    prod = a * b
    fring = JetRing(a.ring.variables, a.ring.order, FLOAT_FIELD)

    def to_float(j):
        return fring.jet({e: c.to_complex() for e, c in j.terms.items()})

    fprod = to_float(a) * to_float(b)
    scale = max(
        [abs(c) for c in fprod.terms.values()]
        + [float(c.abs2()) ** 0.5 for c in prod.terms.values()]
        + [1.0]
    )
    for exp in set(prod.terms) | set(fprod.terms):
        exact_c = prod.coefficient(exp).to_complex()
        float_c = fprod.coefficient(exp)
        assert abs(exact_c - float_c) <= 1e-12 * scale


def test_json_roundtrip_exact(ring2):
    a = ring2.one() * Fraction(3, 7) + ring2.variable("t1") * GaussianRational(0, 2)
    back = jet_from_json_dict(a.to_json_dict(), EXACT_FIELD)
    assert back == a


def test_json_roundtrip_float():
    ring = JetRing(("u",), 2, FLOAT_FIELD)
    a = ring.constant(1.5 + 0.25j) + ring.variable("u") * (0.5 - 2j)
    back = jet_from_json_dict(a.to_json_dict(), FLOAT_FIELD)
    assert back.terms == a.terms


def test_evaluate_float_close_to_exact():
    ring = JetRing(("x", "y"), 3)
    a = (ring.one() + ring.variable("x") * 2 - ring.variable("y")) ** 2
    vals = {"x": Fraction(1, 3), "y": Fraction(-2, 5)}
    exact = a.evaluate(vals)
    expected = (1 + 2 * (1 / 3) - (-2 / 5)) ** 2
    assert math.isclose(exact.to_complex().real, expected, rel_tol=1e-12)
