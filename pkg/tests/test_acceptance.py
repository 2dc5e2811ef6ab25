"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line with its timing."""

import time
from collections import Counter
from contextlib import contextmanager

import pytest

from mpstable.chevalley import LieVector, bracket, jacobi_violation, rootgroup_action, structure_constants
from mpstable.cones import chamber_cocharacters
from mpstable.fields import GF
from mpstable.g2case import WEIGHTS, action_matrix, classify_stable, delta_int, disc_xy, disc_zw, g6, h6, weight_multiset_check
from mpstable.mpgrading import check_grading_bracket, compute_mp_quotient, dual_weight_multiset, stability_survey, vinberg_grading
from mpstable.rng import XorShift64
from mpstable.rootdata import ApartmentPoint, build_root_system
from mpstable.stability import (
    WeightedVector,
    negative_weight_set,
    negative_weight_set_conjugate,
    torus_semistable,
    torus_stable,
)
from mpstable.weyl import regular_elliptic_orders


@contextmanager
def criterion(request, number, title, limit):
    capman = request.config.pluginmanager.getplugin("capturemanager")
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < limit
        status = "PASS" if ok and within else "FAIL"
        line = f"[acceptance] criterion {number:>2}: {status}  {title}  ({elapsed:.2f} s, limit {limit:g} s)"
        with capman.global_and_fixture_disabled():
            print("\n" + line, flush=True)
    assert within, f"criterion {number} took {elapsed:.1f} s, limit {limit} s"


def test_criterion_01_regular_orders(request):
    with criterion(request, 1, "G2 regular elliptic orders are {2, 3, 6}", 1):
        assert regular_elliptic_orders(build_root_system("G2")) == [2, 3, 6]


def test_criterion_02_delta_identity(request):
    with criterion(request, 2, "2^8 H6^3 G6 = disc_ZW(disc_XY F) on 100 seeded tuples", 5):
        rng = XorShift64(7)
        for _ in range(100):
            F = tuple(rng.randint(-5, 5) for _ in range(8))
            full = disc_zw(disc_xy(F))
            assert full % 256 == 0
            assert full == 256 * h6(F) ** 3 * g6(F)
            assert delta_int(F) == h6(F) ** 3 * g6(F)


def test_criterion_03_f2_classification(request):
    with criterion(request, 3, "over F2 the nonzero-Delta set is exactly the set with no destabilizer", 120):
        r = classify_stable(2, schedule=(1, 2), raise_to=4)
        assert r["vectors"] == 256 and r["delta_nonzero"] == 36
        assert r["stable_scan_degree"] == 2
        assert not r["destabilized_delta_nonzero"]
        assert not r["uncertified_delta_zero"] and not r["unverified_certificates"]
        assert sum(r["certificate_degrees"].values()) == 220
        assert all(int(k) <= 2 for k in r["certificate_degrees"]), r["certificate_degrees"]
        assert not r["raised"]


def test_criterion_04_f2_single_orbit(request):
    with criterion(request, 4, "the 36 stable vectors over F2 form one orbit with trivial stabilizers", 10):
        r = classify_stable(2)
        assert r["group_order"] == 36
        assert [(o["size"], o["stabilizer_order"]) for o in r["orbits"]] == [(36, 1)]
        assert r["normal_form_check"]["passed"]


@pytest.mark.slow
def test_criterion_05_f3_classification(request):
    with criterion(request, 5, "over F3 the nonzero-Delta set is exactly the set with no destabilizer (6561 vectors)", 1800):
        r = classify_stable(3, schedule=(1, 2), raise_to=4)
        assert r["vectors"] == 6561
        assert not r["destabilized_delta_nonzero"], "a nonzero-Delta vector was destabilized"
        assert not r["uncertified_delta_zero"] and not r["unverified_certificates"]
        assert sum(r["certificate_degrees"].values()) == r["delta_zero"]
        assert sum(o["size"] for o in r["orbits"]) == r["delta_nonzero"]


def test_criterion_06_grading_structure(request):
    with criterion(request, 6, "G2 Vinberg bracket certificates, piece dimensions and dim R_x = 6", 5):
        d = build_root_system("G2")
        alg = structure_constants(d)
        for m in (2, 3, 4, 6):
            x = ApartmentPoint.rho_over(d, m)
            grading = vinberg_grading(d, alg, x)
            assert check_grading_bracket(alg, grading).passed
            expected = [0] * m
            for root in d.roots:
                expected[(-sum(root)) % m] += 1
            expected[0] += d.rank
            assert grading.dimensions == tuple(expected)
        assert vinberg_grading(d, alg, ApartmentPoint.rho_over(d, 2)).dimensions == (6, 8)
        assert vinberg_grading(d, alg, ApartmentPoint.rho_over(d, 3)).dimensions == (4, 5, 5)
        assert compute_mp_quotient(d, ApartmentPoint.rho_over(d, 2)).dim_quotient == 6


def test_criterion_07_weight_match(request):
    with criterion(request, 7, "dual weights at x0 + rho/2 equal {+-3r+-s, +-r+-s}", 1):
        d = build_root_system("G2")
        q = compute_mp_quotient(d, ApartmentPoint.rho_over(d, 2))
        assert dual_weight_multiset(d, q) == Counter(WEIGHTS)
        assert weight_multiset_check(d)["passed"]


def test_criterion_08_non_regular_points(request):
    with criterion(request, 8, "every vector at x0 + rho/4 and x0 + rho/5 over F2 is certified not stable", 120):
        d = build_root_system("G2")
        for m, dim in ((4, 4), (5, 3)):
            r = stability_survey(d, ApartmentPoint.rho_over(d, m), 2)
            assert r["dimension"] == dim
            assert r["counts"] == {"certified not stable": 2**dim}
            assert all(rec["certificate"]["verified"] for rec in r["records"])


def _random_sl2(rng):
    while True:
        a, b, c = (rng.randint(-3, 3) for _ in range(3))
        if a and (1 + b * c) % a == 0:
            return [[a, b], [c, (1 + b * c) // a]]


def test_criterion_09_hilbert_mumford_properties(request):
    with criterion(request, 9, "conjugation identity, reduction shrink, stable implies semistable", 30):
        from mpstable import _linalg

        rng = XorShift64(9)
        cochars = chamber_cocharacters(WEIGHTS, 2)
        for _ in range(25):
            g = action_matrix(_random_sl2(rng), _random_sl2(rng))
            cols = [_linalg.solve(g, [int(i == j) for i in range(8)]) for j in range(8)]
            v = [rng.randint(-2, 2) for _ in range(8)]
            giv = tuple(sum(cols[j][i] * v[j] for j in range(8)) for i in range(8))
            for lam in cochars:
                assert negative_weight_set_conjugate(g, lam, WEIGHTS, v) == negative_weight_set(lam, WeightedVector(giv, WEIGHTS))
        for _ in range(1000):
            v = [rng.randint(-9, 9) for _ in range(8)]
            wv = WeightedVector(tuple(v), WEIGHTS)
            for p in (2, 3, 5, 7):
                red = WeightedVector(tuple(c % p for c in v), WEIGHTS)
                for mu in cochars:
                    assert negative_weight_set(mu, red) <= negative_weight_set(mu, wv)
                if torus_stable(red):
                    assert torus_semistable(red)
            if torus_stable(wv):
                assert torus_semistable(wv)


def test_criterion_10_chevalley_integrity(request):
    with criterion(request, 10, "Jacobi for A1 A2 B2 G2; u(s)u(t) = u(s+t) and automorphism over Z and F4", 30):
        for name in ("A1", "A2", "B2", "G2"):
            assert jacobi_violation(structure_constants(name)) is None
        alg = structure_constants("G2")
        f4 = GF(2, 2)
        rng = XorShift64(10)
        for ring in ("Z", "F4"):
            draw = (lambda: rng.randint(-3, 3)) if ring == "Z" else (lambda: f4.element(rng.randint(0, 3)))
            for _ in range(60):
                root = rng.randint(0, alg.nroots - 1)
                s, t = draw(), draw()
                u = LieVector({rng.randint(0, alg.dim - 1): draw() for _ in range(3)})
                v = LieVector({rng.randint(0, alg.dim - 1): draw() for _ in range(3)})
                act = lambda c, w: rootgroup_action(alg, root, c, w)
                assert act(s, act(t, u)) == act(s + t, u)
                assert act(t, bracket(alg, u, v)) == bracket(alg, act(t, u), act(t, v))
