import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from mpstable import g2case
from mpstable.errors import DivisibilityViolation
from mpstable.fields import GF
from mpstable.g2case import (
    BinaryQuartic,
    P1P3Vector,
    act,
    cubic_discriminant,
    delta_bar,
    delta_int,
    disc_xy,
    disc_zw,
    g6,
    h6,
    identity_check,
    normal_form,
    sym_power_matrix,
    weight_multiset_check,
)
from mpstable.rng import XorShift64
from mpstable.stability import all_vectors

X, Y, Z, W = sympy.symbols("X Y Z W")


def sympy_delta(F):
    """disc_ZW(disc_XY F) / 2^8 from sympy's univariate discriminants, with the negated quartic sign."""
    a, b, c, d, e, f, g, h = F
    poly = (a * Z + b * W) * X**3 + (c * Z + d * W) * X**2 * Y + (e * Z + f * W) * X * Y**2 + (g * Z + h * W) * Y**3
    cubic = sympy.Poly(poly.subs(Y, 1), X)
    if cubic.degree() != 3:
        return None
    quartic = sympy.expand(sympy.discriminant(cubic.as_expr(), X))
    qz = sympy.Poly(quartic.subs(W, 1), Z)
    if qz.degree() != 4:
        return None
    return -int(sympy.discriminant(qz.as_expr(), Z)) / sympy.Integer(256)


def test_disc_xy_examples():
    assert disc_xy((0,) * 8).coeffs == (0, 0, 0, 0, 0)
    assert disc_xy((1, 0, 0, 0, 0, 0, 1, 0)).coeffs == (-27, 0, 0, 0, 0)


@given(st.lists(st.integers(-4, 4), min_size=8, max_size=8))
def test_disc_xy_ends_are_cubic_discriminants(F):
    q = disc_xy(F).coeffs
    f1, f2 = P1P3Vector(tuple(F)).cubics
    assert q[0] == cubic_discriminant(*f1)
    assert q[4] == cubic_discriminant(*f2)


def test_disc_xy_matches_sympy():
    rng = XorShift64(3)
    for _ in range(10):
        F = [rng.randint(-3, 3) for _ in range(8)]
        a, b, c, d, e, f, g, h = F
        poly = (a * Z + b * W) * X**3 + (c * Z + d * W) * X**2 + (e * Z + f * W) * X + (g * Z + h * W)
        if sympy.Poly(poly, X).degree() != 3:
            continue
        expected = sympy.Poly(sympy.discriminant(poly, X), Z, W)
        got = sum(coef * Z ** (4 - k) * W**k for k, coef in enumerate(disc_xy(F).coeffs))
        assert sympy.expand(expected.as_expr() - got) == 0


def test_delta_oracle_normal_form():
    F = normal_form(1, 1)
    expected = sympy_delta(F)
    assert expected is not None and expected.q == 1
    assert delta_int(F) == int(expected)
    assert delta_int((0,) * 8) == 0


def test_delta_oracle_random():
    rng = XorShift64(99)
    checked = 0
    while checked < 8:
        F = tuple(rng.randint(-3, 3) for _ in range(8))
        expected = sympy_delta(F)
        if expected is None:
            continue
        assert delta_int(F) == expected
        checked += 1


def test_identity_at_25_points():
    report = identity_check(seed=1, samples=25)
    assert report["passed"] == 25 and not report["failures"]


def test_divisibility_violation_is_raised(monkeypatch):
    monkeypatch.setattr(g2case, "disc_zw", lambda q: 257)
    with pytest.raises(DivisibilityViolation):
        delta_int((1,) * 8)


@given(st.lists(st.integers(-3, 3), min_size=8, max_size=8), st.sampled_from([2, 3, -1]))
def test_homogeneity(F, t):
    tF = [t * c for c in F]
    assert h6(tF) == t**6 * h6(F)
    assert g6(tF) == t**6 * g6(F)
    assert delta_int(tF) == t**24 * delta_int(F)


def test_torus_scaling():
    t, u = Fraction(2), Fraction(3)
    out = act([[t, 0], [0, 1 / t]], [[u, 0], [0, 1 / u]], tuple(Fraction(1) for _ in range(8)))
    for (r, s), c in zip(g2case.WEIGHTS, out.coeffs):
        assert c == t**s * u**r
    assert out.a == t * u**3
    assert act([[1, 0], [0, 1]], [[1, 0], [0, 1]], (1, 2, 3, 4, 5, 6, 7, 8)).coeffs == (1, 2, 3, 4, 5, 6, 7, 8)


def sl2_elements(field):
    els = field.elements()
    return [[[a, b], [c, d]] for a, b, c, d in itertools.product(els, repeat=4) if a * d - b * c == field.one]


SL2_F5 = sl2_elements(GF(5))


@given(st.lists(st.sampled_from(range(len(SL2_F5))), min_size=4, max_size=4), st.lists(st.integers(0, 4), min_size=8, max_size=8))
def test_act_is_left_action(idx, coeffs):
    f = GF(5)
    g1, h1, g2, h2 = (SL2_F5[i] for i in idx)
    F = tuple(f(c) for c in coeffs)
    mul = lambda p, q: [[sum((p[i][k] * q[k][j] for k in range(2)), f.zero) for j in range(2)] for i in range(2)]
    assert act(mul(g1, h1), mul(g2, h2), F) == act(g1, g2, act(h1, h2, F))


def test_act_rejects_non_sl2():
    with pytest.raises(ValueError):
        act([[2, 0], [0, 1]], [[1, 0], [0, 1]], (0,) * 8)


@given(st.sampled_from(range(len(SL2_F5))), st.lists(st.integers(0, 4), min_size=8, max_size=8))
def test_disc_xy_second_factor_invariance_and_p4(i, coeffs):
    f = GF(5)
    g = SL2_F5[i]
    ident = [[f.one, f.zero], [f.zero, f.one]]
    F = tuple(f(c) for c in coeffs)
    assert disc_xy(act(ident, g, F)).coeffs == disc_xy(F).coeffs
    p4 = sym_power_matrix(g, 4, f.one)
    q = disc_xy(F).coeffs
    moved = tuple(sum((p4[r][k] * q[k] for k in range(5)), f.zero) for r in range(5))
    assert disc_xy(act(g, ident, F)).coeffs == moved


def test_delta_bar_invariant_over_f2_exhaustive():
    f = GF(2)
    group = sl2_elements(f)
    assert len(group) == 6
    for v in all_vectors(f, 8):
        F = tuple(f.element(c) for c in v)
        base = delta_bar(v, f)
        for g1 in group:
            for g2 in group:
                image = act(g1, g2, F)
                assert delta_bar(tuple(c.code for c in image.coeffs), f) == base


@pytest.mark.parametrize("q", [3, 5, 4])
def test_delta_bar_invariant_sampled(q):
    p, e = {3: (3, 1), 5: (5, 1), 4: (2, 2)}[q]
    f = GF(p, e)
    group = sl2_elements(f)
    rng = XorShift64(q)
    for _ in range(60):
        F = tuple(f.element(rng.randint(0, f.q - 1)) for _ in range(8))
        g1, g2 = rng.choice(group), rng.choice(group)
        assert delta_bar(act(g1, g2, F), f) == delta_bar(F, f)


def test_delta_bar_counts_and_vanishing():
    f = GF(2)
    count = 0
    for v in all_vectors(f, 8):
        if v[3] == v[5] == v[7] == 0:
            assert delta_bar(v, f) == f.zero
        count += bool(delta_bar(v, f))
    assert count == 36
    assert delta_bar((0,) * 8, f) == f.zero


def test_delta_bar_is_reduction_of_integer_delta():
    rng = XorShift64(17)
    for _ in range(50):
        F = tuple(rng.randint(-5, 5) for _ in range(8))
        for p in (2, 3, 5, 7):
            f = GF(p)
            assert delta_bar(tuple(c % p for c in F), f).code == delta_int(F) % p


def test_classify_f2(classify_f2):
    r = classify_f2
    assert r["consistent"] and r["delta_nonzero"] == 36 and r["delta_zero"] == 220
    assert len(r["orbits"]) == 1
    assert r["orbits"][0]["size"] == 36 and r["orbits"][0]["stabilizer_order"] == 1
    assert r["normal_form_check"]["passed"]
    zero = r["records"][0]
    assert zero["vector"] == [0] * 8 and zero["certificate"]["word"] == []


def test_weight_multiset_check():
    report = weight_multiset_check()
    assert report["passed"] and report["negated_passed"]
    assert len(report["alternatives"]) == 8
    assert isinstance(BinaryQuartic((0,) * 5), BinaryQuartic)
    assert disc_zw(BinaryQuartic((1, 0, 0, 0, 1))) == -256
