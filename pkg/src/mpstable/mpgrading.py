"""Moy-Prasad quotient data and the Vinberg grading attached to a rational point.

For x = x0 + v with root values alpha(x):

* ``phi_x``  = roots with alpha(x) integral (the root system of the reductive quotient);
* ``v_basis`` = affine roots alpha + n with alpha(x) + n = r(x), one per qualifying root;
  at a hyperspecial point (r(x) = 1) it is the whole adjoint basis;
* the grading puts e_alpha in degree (-m alpha(x)) mod m and h_i in degree 0.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .chevalley import ChevalleyAlgebra, structure_constants
from .fields import FiniteField
from .rootdata import AffineRoot, ApartmentPoint, RootDatum, RootSystemType, pairing

__all__ = [
    "CartanLevel",
    "GradingCertificate",
    "MPQuotientData",
    "QuotientComponent",
    "VinbergGrading",
    "check_grading_bracket",
    "cocharacter_basis",
    "compute_mp_quotient",
    "dual_quotient_rep",
    "dual_weight_multiset",
    "stability_survey",
    "vinberg_grading",
]


@dataclass(frozen=True)
class CartanLevel:
    """Basis vector h_i placed at affine level ``level`` (hyperspecial case only)."""

    index: int
    level: int


@dataclass(frozen=True)
class QuotientComponent:
    type: RootSystemType
    simple_roots: tuple[int, ...]


@dataclass(frozen=True)
class MPQuotientData:
    x: ApartmentPoint
    m: int
    r: Fraction
    phi_x: tuple[int, ...]
    simple_x: tuple[int, ...]
    components: tuple[QuotientComponent, ...]
    torus_rank: int
    v_basis: tuple[AffineRoot | CartanLevel, ...]
    hyperspecial: bool

    @property
    def quotient_type(self) -> str:
        parts = [str(c.type) for c in self.components]
        if self.torus_rank:
            parts.append(f"T{self.torus_rank}")
        return "x".join(parts) if parts else "T0"

    @property
    def dim_quotient(self) -> int:
        return len(self.phi_x) + self.x.datum.rank

    def basis_indices(self, nroots: int) -> list[int]:
        """Chevalley basis index of each v_basis entry."""
        return [b.gradient if isinstance(b, AffineRoot) else nroots + b.index for b in self.v_basis]


def _frac_part(v: Fraction) -> Fraction:
    return v - floor(v)


def _simple_system(datum: RootDatum, subset: tuple[int, ...]) -> tuple[int, ...]:
    """Indecomposable positive roots of a closed symmetric subsystem."""
    pos = [i for i in subset if i in set(datum.positives)]
    pos_set = {datum.roots[i] for i in pos}
    out = []
    for i in pos:
        r = datum.roots[i]
        decomposable = any(
            tuple(a - b for a, b in zip(r, datum.roots[j])) in pos_set for j in pos if j != i
        )
        if not decomposable:
            out.append(i)
    return tuple(out)


def _identify(datum: RootDatum, simple: list[int]) -> RootSystemType:
    """Type of the irreducible subsystem generated by ``simple``."""
    k = len(simple)
    # reflection closure inside the subsystem
    found = {datum.roots[i] for i in simple}
    frontier = list(found)
    while frontier:
        nxt = []
        for g in frontier:
            for s in simple:
                c = int(pairing(datum, g, datum.coroots[s]))
                img = tuple(a - c * b for a, b in zip(g, datum.roots[s]))
                if img not in found:
                    found.add(img)
                    nxt.append(img)
        frontier = nxt
    count = len(found)
    lengths = {datum.form(r, r) for r in found}
    simply_laced = len(lengths) == 1
    short = sum(1 for r in found if datum.form(r, r) == min(lengths))
    candidates = []
    for fam in "ADEBCFG":
        try:
            t = RootSystemType(fam, k)
        except ValueError:
            continue
        if t.root_count != count or (fam in "ADE") != simply_laced:
            continue
        if fam == "B" and short != 2 * k:
            continue
        if fam == "C" and k > 2 and short != 2 * k * (k - 1):
            continue
        candidates.append(t)
    if not candidates:
        raise AssertionError(f"unidentified subsystem of rank {k} with {count} roots")
    return candidates[0]


def _components(datum: RootDatum, simple: tuple[int, ...]) -> tuple[QuotientComponent, ...]:
    remaining = list(simple)
    comps = []
    while remaining:
        comp = [remaining.pop(0)]
        grew = True
        while grew:
            grew = False
            for s in list(remaining):
                if any(pairing(datum, datum.roots[s], datum.coroots[t]) != 0 for t in comp):
                    comp.append(s)
                    remaining.remove(s)
                    grew = True
        comp.sort()
        comps.append(QuotientComponent(_identify(datum, comp), tuple(comp)))
    comps.sort(key=lambda c: (-c.type.rank, c.type.family, c.simple_roots))
    return tuple(comps)


def compute_mp_quotient(datum: RootDatum, x: ApartmentPoint) -> MPQuotientData:
    vals = x.root_values
    r = x.r
    phi_x = tuple(i for i, v in enumerate(vals) if v.denominator == 1)
    simple = _simple_system(datum, phi_x)
    comps = _components(datum, simple)
    hyperspecial = r == 1
    basis: list[AffineRoot | CartanLevel] = []
    for i, v in enumerate(vals):
        if _frac_part(v) == _frac_part(r):
            basis.append(AffineRoot(i, int(r - v)))
    if hyperspecial:
        basis += [CartanLevel(i, 1) for i in range(datum.rank)]
    return MPQuotientData(
        x=x,
        m=x.order,
        r=r,
        phi_x=phi_x,
        simple_x=simple,
        components=comps,
        torus_rank=datum.rank - len(simple),
        v_basis=tuple(basis),
        hyperspecial=hyperspecial,
    )


@dataclass(frozen=True)
class VinbergGrading:
    m: int
    degrees: tuple[int, ...]  # degree of each Chevalley basis index

    @property
    def pieces(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {i: [] for i in range(self.m)}
        for b, deg in enumerate(self.degrees):
            out[deg].append(b)
        return out

    @property
    def dimensions(self) -> tuple[int, ...]:
        return tuple(len(v) for _, v in sorted(self.pieces.items()))


def vinberg_grading(datum: RootDatum, algebra: ChevalleyAlgebra | None, x: ApartmentPoint) -> VinbergGrading:
    m = x.order
    degs = [int(-m * v) % m for v in x.root_values] + [0] * datum.rank
    return VinbergGrading(m, tuple(degs))


@dataclass(frozen=True)
class GradingCertificate:
    passed: bool
    pairs_checked: int
    violation: tuple[int, int, int] | None = None  # (i, j, offending basis index)


def check_grading_bracket(algebra: ChevalleyAlgebra, grading: VinbergGrading) -> GradingCertificate:
    """Exhaustively check [g_i, g_j] in g_{i+j} on basis pairs."""
    m = grading.m
    deg = grading.degrees
    n = 0
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            n += 1
            target = (deg[i] + deg[j]) % m
            for k, _ in algebra.basis_brackets[i][j]:
                if deg[k] != target:
                    return GradingCertificate(False, n, (i, j, k))
    return GradingCertificate(True, n)


def cocharacter_basis(datum: RootDatum, quotient: MPQuotientData) -> list[tuple[int, ...]]:
    """Quotient simple coroots when they have full rank, otherwise the simple coroots of G."""
    if len(quotient.simple_x) == datum.rank:
        return [datum.coroots[i] for i in quotient.simple_x]
    return [datum.coroots[i] for i in range(datum.rank)]


def _weight_vector(datum: RootDatum, root_coords, basis) -> tuple[int, ...]:
    return tuple(int(-pairing(datum, root_coords, cv)) for cv in basis)


def dual_weight_multiset(datum: RootDatum, quotient: MPQuotientData, basis=None) -> Counter:
    """Torus weights of the dual of V_x, in coordinates <w, basis_j>."""
    basis = basis if basis is not None else cocharacter_basis(datum, quotient)
    out: Counter = Counter()
    for b in quotient.v_basis:
        if isinstance(b, AffineRoot):
            out[_weight_vector(datum, datum.roots[b.gradient], basis)] += 1
        else:
            out[(0,) * len(basis)] += 1
    return out


def dual_quotient_rep(datum: RootDatum, quotient: MPQuotientData, field: FiniteField, algebra=None):
    """The reductive quotient acting on the dual of V_x over ``field``.

    Generators: u_b(t) for b in +-simple_x and t in an F_p-basis of the field,
    then the simple coroots evaluated at a primitive element.  Coordinate
    weights are taken against the simple coroots of G.
    """
    from .stability import LinearRep, MatrixGenerator

    alg = algebra if algebra is not None else structure_constants(datum)
    idx = quotient.basis_indices(alg.nroots)
    pos = {b: k for k, b in enumerate(idx)}
    n = len(idx)
    gens = []
    roots = list(quotient.simple_x) + [datum.negative[i] for i in quotient.simple_x]
    for beta in roots:
        table = alg.ad_power_table(beta)
        for t in field.additive_basis():
            # dual action of u_beta(t) is the transpose of u_beta(-t)
            mt = -t
            mat = [[0] * n for _ in range(n)]
            for k, b in enumerate(idx):
                tp = field.one
                for i, term in enumerate(table[b]):
                    if i:
                        tp = tp * mt
                    for target, s in term.items():
                        if target not in pos:
                            raise AssertionError("root group left the graded piece")
                        # transpose: row k, column pos[target]
                        mat[k][pos[target]] = field.add_codes(mat[k][pos[target]], (tp * s).code)
            name = f"u[{','.join(map(str, datum.roots[beta]))}]({t!r})"
            gens.append(MatrixGenerator(name, tuple(tuple(r) for r in mat)))
    zeta = field.generator
    weights = []
    for b in quotient.v_basis:
        if isinstance(b, AffineRoot):
            weights.append(tuple(-datum.root_pairing(b.gradient, i) for i in range(datum.rank)))
        else:
            weights.append((0,) * datum.rank)
    if field.q > 2:
        for i in range(datum.rank):
            mat = [[0] * n for _ in range(n)]
            for k in range(n):
                mat[k][k] = (zeta ** weights[k][i]).code
            gens.append(MatrixGenerator(f"coroot{i + 1}({zeta!r})", tuple(tuple(r) for r in mat)))
    return LinearRep(field, n, tuple(gens), tuple(weights))


def quotient_to_json(q: MPQuotientData) -> dict:
    d = q.x.datum
    basis = []
    for b in q.v_basis:
        if isinstance(b, AffineRoot):
            basis.append({"root": list(d.roots[b.gradient]), "level": b.level})
        else:
            basis.append({"cartan": b.index + 1, "level": b.level})
    return {
        "point": [str(v) for v in q.x.offset],
        "order": q.m,
        "r": str(q.r),
        "hyperspecial": q.hyperspecial,
        "phi_x": [list(d.roots[i]) for i in q.phi_x],
        "quotient_type": q.quotient_type,
        "dim_quotient": q.dim_quotient,
        "v_basis": basis,
    }


def weights_to_json(weights: Counter) -> list[list[int]]:
    return [list(w) for w in sorted(weights.elements())]


def stability_survey(
    datum: RootDatum,
    x: ApartmentPoint,
    q: int,
    schedule=(1, 2),
    budget: int = 1_000_000,
    limit: int = 100_000,
) -> dict:
    """Hilbert-Mumford evidence for every vector of the dual quotient space over F_q.

    When the reductive quotient is a torus the torus criterion decides stability
    outright; otherwise each vector gets a destabilizer search over F_{q^e} for e
    in ``schedule``.
    """
    from .errors import BudgetExhausted
    from .fields import GF, field_for_order
    from .stability import (
        DestabilizerSearch,
        WeightedVector,
        all_vectors,
        chamber_cocharacters,
        negative_weight_set,
        torus_stable,
    )

    base = field_for_order(q)
    quotient = compute_mp_quotient(datum, x)
    alg = structure_constants(datum)
    n = len(quotient.v_basis)
    if q**n > limit:
        raise MemoryError(f"{q}^{n} vectors exceed the survey limit {limit}")
    reps: dict[int, object] = {}

    def rep_for(k):
        if k not in reps:
            reps[k] = dual_quotient_rep(datum, quotient, GF(base.p, base.e * k), alg)
        return reps[k]

    weights = rep_for(1).weights
    cochars = chamber_cocharacters(weights, datum.rank)
    torus_case = not quotient.phi_x
    search = DestabilizerSearch(
        rep_for_degree=rep_for,
        embed=lambda k: GF(base.p, base.e * k).subfield_embedding(base),
        cochar_reps=cochars,
        budget=budget,
    )
    records = []
    counts = Counter()
    for v in all_vectors(base, n):
        wv = WeightedVector(v, weights)
        rec: dict = {"vector": list(v)}
        if torus_case:
            stable = torus_stable(wv)
            rec["verdict"] = "stable" if stable else "not stable"
            rec["method"] = "torus criterion"
            if not stable:
                mu = next(c for c in cochars if not negative_weight_set(c, wv))
                rec["certificate"] = {"word": [], "cocharacter": list(mu), "field_order": q, "verified": True}
        else:
            cert = None
            for k in schedule:
                try:
                    cert = search.search(v, k)
                except BudgetExhausted:
                    rec.setdefault("budget_exhausted", []).append(k)
                    cert = None
                if cert is not None:
                    rec["certificate"] = {**cert.to_json(), "degree": k}
                    break
            rec["method"] = "destabilizer search"
            rec["verdict"] = "certified not stable" if cert is not None and cert.verified else "no destabilizer found"
        counts[rec["verdict"]] += 1
        records.append(rec)
    return {
        "type": str(datum.type),
        "point": [str(c) for c in x.offset],
        "q": q,
        "quotient_type": quotient.quotient_type,
        "dimension": n,
        "weights": [list(w) for w in weights],
        "cocharacters": [list(c) for c in cochars],
        "torus_case": torus_case,
        "counts": dict(sorted(counts.items())),
        "records": records,
    }
