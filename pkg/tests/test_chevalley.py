from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mpstable.chevalley import (
    LieVector,
    bracket,
    jacobi_violation,
    rootgroup_action,
    structure_constants,
    torus_action,
)
from mpstable.fields import GF
from mpstable.rootdata import build_root_system


def _string_below(d, a, b):
    """Largest p with b - p a a root."""
    ra, rb = d.roots[a], d.roots[b]
    p = 0
    while d.is_root(tuple(y - (p + 1) * x for x, y in zip(ra, rb))):
        p += 1
    return p


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "C3", "A3", "G2"])
def test_jacobi(name):
    alg = structure_constants(name)
    assert jacobi_violation(alg) is None


@pytest.mark.parametrize("name", ["A2", "B2", "B3", "C3", "D4", "G2", "F4"])
def test_constants_are_plus_minus_p_plus_one(name):
    d = build_root_system(name)
    alg = structure_constants(d, verify=False)
    n = len(d.roots)
    for a in range(n):
        for b in range(n):
            s = tuple(x + y for x, y in zip(d.roots[a], d.roots[b]))
            if d.is_root(s):
                assert abs(alg.N(a, b)) == _string_below(d, a, b) + 1
            else:
                assert alg.N(a, b) == 0


def test_max_constants():
    assert max(abs(v) for v in structure_constants("A2").structure.values()) == 1
    assert max(abs(v) for v in structure_constants("B2").structure.values()) == 2
    assert max(abs(v) for v in structure_constants("G2").structure.values()) == 3


def test_sl2_relations():
    alg = structure_constants("A1")
    e, f, h = LieVector.basis(0), LieVector.basis(1), LieVector.basis(alg.h(0))
    assert bracket(alg, e, f) == h
    assert bracket(alg, h, e) == e.scale(2)
    assert bracket(alg, h, f) == f.scale(-2)
    assert rootgroup_action(alg, 0, 0, f) == f
    assert rootgroup_action(alg, 0, 5, e) == e
    assert rootgroup_action(alg, 0, 3, f) == f + h.scale(3) - e.scale(9)


def test_cartan_action(g2_algebra):
    d = g2_algebra.datum
    for i in range(d.rank):
        for a, root in enumerate(d.roots):
            k = sum(d.cartan[i][j] * root[j] for j in range(d.rank))
            out = bracket(g2_algebra, LieVector.basis(g2_algebra.h(i)), LieVector.basis(a))
            assert out == LieVector.basis(a).scale(k)
    a1, a2 = d.index[(1, 0)], d.index[(0, 1)]
    out = bracket(g2_algebra, LieVector.basis(a1), LieVector.basis(a2))
    assert set(out.coeffs) == {d.index[(1, 1)]} and abs(out[d.index[(1, 1)]]) == 1


def test_torus_over_f3():
    alg = structure_constants("A1")
    f = GF(3)
    v = LieVector({0: f.one, alg.h(0): f.one})
    assert torus_action(alg, (f(2),), v) == v
    with pytest.raises(ValueError):
        torus_action(alg, (f(0),), v)
    assert torus_action(alg, (1,), LieVector.basis(0)) == LieVector.basis(0)


def _vectors(alg, coeff):
    return st.dictionaries(st.integers(0, alg.dim - 1), coeff, max_size=4).map(LieVector)


G2 = structure_constants("G2")
B2 = structure_constants("B2")
F4 = GF(2, 2)
ints = st.integers(-4, 4)
f4 = st.integers(0, 3).map(F4.element)


@given(st.sampled_from([G2, B2]).flatmap(lambda a: st.tuples(st.just(a), st.integers(0, a.nroots - 1), ints, ints, _vectors(a, ints))))
def test_one_parameter_over_z(args):
    alg, root, s, t, v = args
    assert rootgroup_action(alg, root, s, rootgroup_action(alg, root, t, v)) == rootgroup_action(alg, root, s + t, v)


@given(st.integers(0, 11), f4, f4, _vectors(G2, f4))
def test_one_parameter_over_f4(root, s, t, v):
    assert rootgroup_action(G2, root, s, rootgroup_action(G2, root, t, v)) == rootgroup_action(G2, root, s + t, v)


@given(st.integers(0, 11), ints, _vectors(G2, ints), _vectors(G2, ints))
def test_automorphism_over_z(root, t, u, v):
    g = lambda w: rootgroup_action(G2, root, t, w)
    assert g(bracket(G2, u, v)) == bracket(G2, g(u), g(v))


@given(st.integers(0, 11), f4, _vectors(G2, f4), _vectors(G2, f4))
def test_automorphism_over_f4(root, t, u, v):
    g = lambda w: rootgroup_action(G2, root, t, w)
    assert g(bracket(G2, u, v)) == bracket(G2, g(u), g(v))


def test_rationals_supported():
    alg = structure_constants("A1")
    t = Fraction(1, 2)
    out = rootgroup_action(alg, 0, t, LieVector.basis(1, Fraction(1)))
    assert out[0] == -Fraction(1, 4) and out[alg.h(0)] == t


def test_bracket_antisymmetry(g2_algebra):
    for i in range(g2_algebra.dim):
        for j in range(g2_algebra.dim):
            a = g2_algebra.basis_bracket(i, j)
            b = g2_algebra.basis_bracket(j, i)
            assert a == {k: -c for k, c in b.items()}
