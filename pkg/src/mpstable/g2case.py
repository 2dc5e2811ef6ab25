"""The P1 x P3 representation of SL2 x SL2 and its discriminant invariant.

A vector is F = (aZ + bW) X^3 + (cZ + dW) X^2 Y + (eZ + fW) X Y^2 + (gZ + hW) Y^3,
stored as the coefficient tuple (a, b, c, d, e, f, g, h).  Coordinate 2k + j is the
coefficient of (Z, W)[j] * X^(3-k) Y^k.

SL2 acts on binary forms by g . f(X, Y) = f(aX + cY, bX + dY) for g = [[a, b], [c, d]];
this is a left action.  The first factor acts on (Z, W), the second on (X, Y).
The diagonal torus diag(t^s, t^-s) x diag(t^r, t^-r) acts on coordinate k with
weight ``WEIGHTS[k]`` written in (r, s) coordinates.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Sequence

from .errors import BudgetExhausted, DivisibilityViolation
from .fields import GF, FiniteField, field_for_order
from .rng import XorShift64
from .stability import (
    Certificate,
    DestabilizerSearch,
    LinearRep,
    MatrixGenerator,
    all_vectors,
    chamber_cocharacters,
    orbit_keys,
    vector_key,
)

COEFF_NAMES = "abcdefgh"
WEIGHTS: tuple[tuple[int, int], ...] = ((3, 1), (3, -1), (1, 1), (1, -1), (-1, 1), (-1, -1), (-3, 1), (-3, -1))
DISC_SCALE = 2**8


@dataclass(frozen=True)
class P1P3Vector:
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != 8:
            raise ValueError("a P1 x P3 vector has 8 coefficients")

    @classmethod
    def from_cubics(cls, f1: Sequence, f2: Sequence) -> "P1P3Vector":
        """F = Z (x) f1 + W (x) f2, each cubic given by its X^3, X^2Y, XY^2, Y^3 coefficients."""
        return cls(tuple(c for pair in zip(f1, f2) for c in pair))

    @property
    def cubics(self) -> tuple[tuple, tuple]:
        return self.coeffs[0::2], self.coeffs[1::2]

    def __getattr__(self, name):
        if len(name) == 1 and name in COEFF_NAMES:
            return self.coeffs[COEFF_NAMES.index(name)]
        raise AttributeError(name)


@dataclass(frozen=True)
class BinaryQuartic:
    """A Z^4 + B Z^3 W + C Z^2 W^2 + D Z W^3 + E W^4."""

    coeffs: tuple


def _as_vector(F) -> P1P3Vector:
    return F if isinstance(F, P1P3Vector) else P1P3Vector(tuple(F))


def sym_power_matrix(g: Sequence[Sequence], n: int, one: Any = 1) -> list[list]:
    """Matrix of g on degree-n binary forms in the basis X^(n-k) Y^k.

    Column k holds the coefficients of (aX + cY)^(n-k) (bX + dY)^k.
    """
    (a, b), (c, d) = g
    zero = one - one

    def powers(x, y, m):
        # coefficients of (xX + yY)^m in the basis X^(m-i) Y^i
        return [comb(m, i) * _pow(x, m - i, one) * _pow(y, i, one) for i in range(m + 1)]

    cols = []
    for k in range(n + 1):
        p1 = powers(a, c, n - k)
        p2 = powers(b, d, k)
        col = [zero] * (n + 1)
        for i, u in enumerate(p1):
            for j, v in enumerate(p2):
                col[i + j] = col[i + j] + u * v
        cols.append(col)
    return [[cols[k][i] for k in range(n + 1)] for i in range(n + 1)]


def _pow(x, k, one):
    out = one
    for _ in range(k):
        out = out * x
    return out


def action_matrix(g1: Sequence[Sequence], g2: Sequence[Sequence], one: Any = 1) -> list[list]:
    """8 x 8 matrix of (g1, g2) on coefficient vectors."""
    p1 = sym_power_matrix(g1, 1, one)
    p3 = sym_power_matrix(g2, 3, one)
    return [[p3[i // 2][j // 2] * p1[i % 2][j % 2] for j in range(8)] for i in range(8)]


def act(g1: Sequence[Sequence], g2: Sequence[Sequence], F) -> P1P3Vector:
    F = _as_vector(F)
    one = _one_like(list(g1[0]) + list(g2[0]) + list(F.coeffs))
    for g in (g1, g2):
        if g[0][0] * g[1][1] - g[0][1] * g[1][0] != one:
            raise ValueError(f"matrix {g} does not have determinant 1")
    m = action_matrix(g1, g2, one)
    out = []
    for i in range(8):
        acc = one - one
        for j in range(8):
            acc = acc + m[i][j] * F.coeffs[j]
        out.append(acc)
    return P1P3Vector(tuple(out))


def _one_like(values) -> Any:
    for v in values:
        if hasattr(v, "field"):
            return v.field.one
    for v in values:
        if isinstance(v, Fraction):
            return Fraction(1)
    return 1


def disc_xy(F) -> BinaryQuartic:
    """Discriminant in (X, Y) of F viewed as a binary cubic with coefficients in P1."""
    a, b, c, d, e, f, g, h = _as_vector(F).coeffs
    A = c**2*e**2 - 4*a*e**3 - 4*c**3*g + 18*a*c*e*g - 27*a**2*g**2
    B = (2*c*d*e**2 - 4*b*e**3 + 2*c**2*e*f - 12*a*e**2*f - 12*c**2*d*g + 18*b*c*e*g + 18*a*d*e*g
         + 18*a*c*f*g - 54*a*b*g**2 - 4*c**3*h + 18*a*c*e*h - 54*a**2*g*h)
    C = (d**2*e**2 + 4*c*d*e*f - 12*b*e**2*f + c**2*f**2 - 12*a*e*f**2 - 12*c*d**2*g + 18*b*d*e*g
         + 18*b*c*f*g + 18*a*d*f*g - 27*b**2*g**2 - 12*c**2*d*h + 18*b*c*e*h + 18*a*d*e*h
         + 18*a*c*f*h - 108*a*b*g*h - 27*a**2*h**2)
    D = (2*d**2*e*f + 2*c*d*f**2 - 12*b*e*f**2 - 4*a*f**3 - 4*d**3*g + 18*b*d*f*g - 12*c*d**2*h
         + 18*b*d*e*h + 18*b*c*f*h + 18*a*d*f*h - 54*b**2*g*h - 54*a*b*h**2)
    E = d**2*f**2 - 4*b*f**3 - 4*d**3*h + 18*b*d*f*h - 27*b**2*h**2
    return BinaryQuartic((A, B, C, D, E))


def cubic_discriminant(a, b, c, d):
    """Discriminant of a X^3 + b X^2 Y + c X Y^2 + d Y^3."""
    return b**2*c**2 - 4*a*c**3 - 4*b**3*d - 27*a**2*d**2 + 18*a*b*c*d


def quartic_discriminant(q: BinaryQuartic):
    """Standard discriminant of a Z^4 + b Z^3 W + c Z^2 W^2 + d Z W^3 + e W^4."""
    a, b, c, d, e = q.coeffs
    return (256*a**3*e**3 - 192*a**2*b*d*e**2 - 128*a**2*c**2*e**2 + 144*a**2*c*d**2*e
            - 27*a**2*d**4 + 144*a*b**2*c*e**2 - 6*a*b**2*d**2*e - 80*a*b*c**2*d*e
            + 18*a*b*c*d**3 + 16*a*c**4*e - 4*a*c**3*d**2 - 27*b**4*e**2 + 18*b**3*c*d*e
            - 4*b**3*d**3 - 4*b**2*c**3*e + b**2*c**2*d**2)


def disc_zw(q: BinaryQuartic):
    """Quartic discriminant in the sign normalization that makes the divisibility and the
    factorization into H6^3 G6 hold: the negative of the standard discriminant."""
    return -quartic_discriminant(q)


def h6(F):
    a, b, c, d, e, f, g, h = _as_vector(F).coeffs
    return (-d**3*e**3 + 3*c*d**2*e**2*f - 3*c**2*d*e*f**2 + c**3*f**3 + 9*b*d**2*e**2*g
            + 9*b*c*d*e*f*g - 27*a*d**2*e*f*g - 27*b**2*e**2*f*g - 18*b*c**2*f**2*g
            + 27*a*c*d*f**2*g + 54*a*b*e*f**2*g - 27*a**2*f**3*g - 27*b*c*d**2*g**2
            + 27*a*d**3*g**2 + 81*b**2*c*f*g**2 - 81*a*b*d*f*g**2 - 27*b*c*d*e**2*h
            + 18*a*d**2*e**2*h + 27*b**2*e**3*h + 27*b*c**2*e*f*h - 9*a*c*d*e*f*h
            - 54*a*b*e**2*f*h - 9*a*c**2*f**2*h + 27*a**2*e*f**2*h + 54*b*c**2*d*g*h
            - 54*a*c*d**2*g*h - 81*b**2*c*e*g*h + 81*a*b*d*e*g*h - 81*a*b*c*f*g*h
            + 81*a**2*d*f*g*h - 27*b*c**3*h**2 + 27*a*c**2*d*h**2 + 81*a*b*c*e*h**2
            - 81*a**2*d*e*h**2)


def g6(F):
    a, b, c, d, e, f, g, h = _as_vector(F).coeffs
    return (b*c*d*e*f*g - a*d**2*e*f*g - b**2*e**2*f*g - b*c**2*f**2*g + a*c*d*f**2*g
            + 2*a*b*e*f**2*g - a**2*f**3*g - b*c*d**2*g**2 + a*d**3*g**2 + b**2*d*e*g**2
            + 2*b**2*c*f*g**2 - 3*a*b*d*f*g**2 - b**3*g**3 - b*c*d*e**2*h + a*d**2*e**2*h
            + b**2*e**3*h + b*c**2*e*f*h - a*c*d*e*f*h - 2*a*b*e**2*f*h + a**2*e*f**2*h
            + 2*b*c**2*d*g*h - 2*a*c*d**2*g*h - 3*b**2*c*e*g*h + a*b*d*e*g*h - a*b*c*f*g*h
            + 3*a**2*d*f*g*h + 3*a*b**2*g**2*h - b*c**3*h**2 + a*c**2*d*h**2 + 3*a*b*c*e*h**2
            - 2*a**2*d*e*h**2 - a**2*c*f*h**2 - 3*a**2*b*g*h**2 + a**3*h**3)


def delta_int(F) -> int:
    """disc_ZW(disc_XY F) / 2^8 over the integers, asserting exact division."""
    coeffs = tuple(int(x) for x in _as_vector(F).coeffs)
    full = disc_zw(disc_xy(coeffs))
    q, r = divmod(full, DISC_SCALE)
    if r:
        raise DivisibilityViolation(f"disc_ZW(disc_XY F) = {full} is not divisible by 2^8 for F = {coeffs}")
    return q


def delta_bar(F, field: FiniteField):
    """Reduction of Delta = H6^3 G6 into ``field`` (coefficients are field elements or codes)."""
    coeffs = _as_vector(F).coeffs
    if field.e == 1:
        ints = tuple(int(c.code) if hasattr(c, "code") else int(c) for c in coeffs)
        p = field.p
        return field((h6(ints) % p) ** 3 * (g6(ints) % p))
    elems = tuple(c if hasattr(c, "field") else field.element(int(c)) for c in coeffs)
    return h6(elems) ** 3 * g6(elems)


def delta_bar_code(codes: Sequence[int], field: FiniteField) -> int:
    return delta_bar(tuple(field.element(c) for c in codes) if field.e > 1 else codes, field).code


def identity_check(seed: int, samples: int = 100, bound: int = 5) -> dict:
    """2^8 H6^3 G6 == disc_ZW(disc_XY F) on seeded random integer vectors in [-bound, bound]^8."""
    rng = XorShift64(seed)
    passed = 0
    failures = []
    for _ in range(samples):
        F = tuple(rng.randint(-bound, bound) for _ in range(8))
        lhs = DISC_SCALE * h6(F) ** 3 * g6(F)
        rhs = disc_zw(disc_xy(F))
        try:
            ok = lhs == rhs and delta_int(F) == h6(F) ** 3 * g6(F)
        except DivisibilityViolation:
            ok = False
        if ok:
            passed += 1
        else:
            failures.append(list(F))
    return {"seed": seed, "samples": samples, "passed": passed, "failures": failures}


# ---------------------------------------------------------------- group over F_q


def sl2_generators(field: FiniteField) -> list[tuple[str, list[list]]]:
    """Elementary matrices x(t), y(t) for t in an F_p-basis; they generate SL2(F_q)."""
    one, zero = field.one, field.zero
    out = []
    for t in field.additive_basis():
        out.append((f"x({t!r})", [[one, t], [zero, one]]))
    for t in field.additive_basis():
        out.append((f"y({t!r})", [[one, zero], [t, one]]))
    return out


def sl2xsl2_rep(field: FiniteField) -> LinearRep:
    one = field.one
    ident = [[one, field.zero], [field.zero, one]]
    gens = []
    for name, g in sl2_generators(field):
        m = action_matrix(g, ident, one)
        gens.append(MatrixGenerator(f"1:{name}", tuple(tuple(x.code for x in row) for row in m)))
    for name, g in sl2_generators(field):
        m = action_matrix(ident, g, one)
        gens.append(MatrixGenerator(f"2:{name}", tuple(tuple(x.code for x in row) for row in m)))
    return LinearRep(field, 8, tuple(gens), WEIGHTS)


def sl2xsl2_order(q: int) -> int:
    return (q * (q * q - 1)) ** 2


def g2_cocharacters() -> list[tuple[int, ...]]:
    return chamber_cocharacters(WEIGHTS, 2)


def normal_form(a, e, one=1, zero=0) -> tuple:
    """a Z X^3 + W X^2 Y + e Z X Y^2 + Z Y^3."""
    return (a, zero, zero, one, e, zero, one, zero)


# ---------------------------------------------------------------- classification


_REP_CACHE: dict[tuple[int, int], LinearRep] = {}


def _rep(p: int, e: int) -> LinearRep:
    if (p, e) not in _REP_CACHE:
        _REP_CACHE[(p, e)] = sl2xsl2_rep(GF(p, e))
    return _REP_CACHE[(p, e)]


def _make_search(base: FiniteField, budget: int) -> DestabilizerSearch:
    p, e0 = base.p, base.e
    return DestabilizerSearch(
        rep_for_degree=lambda k: _rep(p, e0 * k),
        embed=lambda k: GF(p, e0 * k).subfield_embedding(base),
        cochar_reps=g2_cocharacters(),
        budget=budget,
    )


def _classify_chunk(args) -> list[dict]:
    p, e, indices, deltas, schedule, raise_to, stable_degree, budget = args
    base = GF(p, e)
    search = _make_search(base, budget)
    out = []
    for idx, dval in zip(indices, deltas):
        v = _index_to_codes(idx, base.q)
        dnz = dval != 0
        rec: dict[str, Any] = {
            "index": idx,
            "vector": list(v),
            "delta_bar": dval,
            "delta_nonzero": dnz,
            "class": "stable" if dnz else "not stable",
        }
        if dnz:
            try:
                cert = search.search(v, stable_degree)
                rec["scan_degree"] = stable_degree
                rec["certificate"] = _cert_json(cert, stable_degree) if cert else None
            except BudgetExhausted as exc:
                rec["scan_degree"] = stable_degree
                rec["certificate"] = None
                rec["budget_exhausted"] = exc.visited
        else:
            cert = None
            tried = []
            for k in list(schedule) + ([raise_to] if raise_to and raise_to not in schedule else []):
                tried.append(k)
                try:
                    cert = search.search(v, k)
                except BudgetExhausted as exc:
                    rec.setdefault("budget_exhausted", []).append([k, exc.visited])
                    cert = None
                if cert is not None:
                    rec["certificate"] = _cert_json(cert, k)
                    break
            rec["degrees_tried"] = tried
            if cert is None:
                rec["certificate"] = None
        out.append(rec)
    return out


def _cert_json(cert: Certificate, degree: int) -> dict:
    d = cert.to_json()
    d["degree"] = degree
    return d


def _index_to_codes(idx: int, q: int) -> tuple[int, ...]:
    out = []
    for _ in range(8):
        out.append(idx % q)
        idx //= q
    return tuple(out)


def classify_stable(
    q: int,
    schedule: Sequence[int] = (1, 2),
    raise_to: int = 4,
    budget: int = 2_000_000,
    jobs: int = 1,
    chunk: int = 256,
) -> dict:
    """Split F_q^8 by Delta-bar, decompose the stable locus into orbits, certify the rest.

    Every Delta-bar = 0 vector gets a destabilizer search over F_{q^k} for k in
    ``schedule`` (then ``raise_to`` if still uncertified).  Every Delta-bar != 0
    vector gets a complete scan over F_{q^max(schedule)}; finding a certificate
    there is a hard failure.
    """
    base = field_for_order(q)
    n_vec = q**8
    deltas = [delta_bar_code(v, base) for v in all_vectors(base, 8)]
    stable_degree = max(schedule)
    tasks = []
    for start in range(0, n_vec, chunk):
        idx = list(range(start, min(n_vec, start + chunk)))
        tasks.append((base.p, base.e, idx, [deltas[i] for i in idx], tuple(schedule), raise_to, stable_degree, budget))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_classify_chunk, tasks))
    else:
        chunks = [_classify_chunk(t) for t in tasks]
    records = [r for c in chunks for r in c]

    # orbit decomposition of the stable locus under the base-field group
    rep = _rep(base.p, base.e)
    mats = rep.expanded()
    group_order = sl2xsl2_order(q)
    remaining = {vector_key(base, _index_to_codes(i, q)): i for i in range(n_vec) if deltas[i] != 0}
    orbits = []
    while remaining:
        first_key = min(remaining, key=lambda k: remaining[k])
        rep_idx = remaining[first_key]
        keys = orbit_keys(_index_to_codes(rep_idx, q), rep, budget=budget, mats=mats)
        members = [remaining.pop(int(k)) for k in keys.tolist() if int(k) in remaining]
        if len(members) != len(keys):
            raise AssertionError("orbit of a Delta-bar != 0 vector left the Delta-bar != 0 locus")
        orbits.append({
            "representative": list(_index_to_codes(rep_idx, q)),
            "size": len(keys),
            "stabilizer_order": group_order // len(keys),
            "members": sorted(members),
        })
    orbits.sort(key=lambda o: o["members"][0])
    orbit_of = {}
    for k, o in enumerate(orbits):
        for i in o["members"]:
            orbit_of[i] = k
    for r in records:
        r["orbit"] = orbit_of.get(r["index"])

    n_stable = sum(1 for d in deltas if d != 0)
    destabilized_stable = [r["index"] for r in records if r["delta_nonzero"] and r["certificate"] is not None]
    uncertified = [r["index"] for r in records if not r["delta_nonzero"] and r["certificate"] is None]
    unverified = [r["index"] for r in records if r["certificate"] is not None and not r["certificate"]["verified"]]
    degrees = Counter(r["certificate"]["degree"] for r in records if not r["delta_nonzero"] and r["certificate"])
    report = {
        "q": q,
        "vectors": n_vec,
        "delta_nonzero": n_stable,
        "delta_zero": n_vec - n_stable,
        "group_order": group_order,
        "schedule": list(schedule),
        "raise_to": raise_to,
        "stable_scan_degree": stable_degree,
        "orbits": [{k: v for k, v in o.items() if k != "members"} for o in orbits],
        "certificate_degrees": {str(k): v for k, v in sorted(degrees.items())},
        "raised": any(k > max(schedule) for k in degrees),
        "destabilized_delta_nonzero": destabilized_stable,
        "uncertified_delta_zero": uncertified,
        "unverified_certificates": unverified,
        "records": records,
    }
    report["consistent"] = not destabilized_stable and not uncertified and not unverified
    if q == 2:
        report["normal_form_check"] = _normal_form_check(base, orbits)
    return report


def _normal_form_check(base: FiniteField, orbits: list[dict]) -> dict:
    """Every stable orbit must contain some a Z X^3 + W X^2 Y + e Z X Y^2 + Z Y^3."""
    q = base.q
    hits = []
    for o in orbits:
        members = set(o["members"])
        found = []
        for a, e in itertools.product(range(q), repeat=2):
            v = normal_form(a, e)
            idx = sum(c * q**j for j, c in enumerate(v))
            if idx in members:
                found.append([a, e])
        hits.append(found)
    return {"passed": all(hits), "normal_forms_per_orbit": hits}


# ---------------------------------------------------------------- weight comparison


def weight_multiset_check(datum=None) -> dict:
    """Compare the dual Moy-Prasad weights at x0 + rho/2 with the P1 x P3 torus weights."""
    from .mpgrading import compute_mp_quotient, dual_weight_multiset
    from .rootdata import ApartmentPoint, build_root_system

    datum = datum if datum is not None else build_root_system("G2")
    quotient = compute_mp_quotient(datum, ApartmentPoint.rho_over(datum, 2))
    dual = dual_weight_multiset(datum, quotient)
    target = Counter(WEIGHTS)

    def mismatches(mat) -> int:
        img = Counter(tuple(sum(mat[i][j] * w[j] for j in range(2)) for i in range(2)) for w in dual.elements())
        return sum(((img - target) + (target - img)).values()) // 2

    alternatives = []
    for perm in ((0, 1), (1, 0)):
        for signs in itertools.product((1, -1), repeat=2):
            mat = [[signs[i] * int(perm[i] == j) for j in range(2)] for i in range(2)]
            alternatives.append({"matrix": mat, "mismatches": mismatches(mat)})
    ident = [[1, 0], [0, 1]]
    neg = [[-1, 0], [0, -1]]
    return {
        "dual_weights": sorted(list(w) for w in dual.elements()),
        "target_weights": sorted(list(w) for w in target.elements()),
        "identification": ident,
        "passed": mismatches(ident) == 0,
        "negated_passed": mismatches(neg) == 0,
        "alternatives": alternatives,
    }
