"""Hilbert-Mumford tests: negative-weight sets, torus (semi)stability, destabilizer search.

Soundness argument for the search.  A vector v is not stable iff some nontrivial
one-parameter subgroup lam has I(lam, v) empty.  Every lam is conjugate into the
fixed maximal torus, lam = g^-1 mu g, and I(g^-1 mu g, v) = I(mu, g v).  For a
fixed torus, emptiness of I(mu, w) depends only on the signs of <weight, mu>
over the weights present in w, so the face representatives returned by
:func:`chamber_cocharacters` are a complete set of mu.  The search therefore
walks the orbit of v under generators of G(F_{q^e}) and tests each orbit point
against those representatives.  A hit is a certificate of non-stability; an
empty completed scan is only evidence, never a proof of stability.

Vectors over F_{p^e} are handled as F_p-vectors of length n*e (coordinate j
occupies digits e*j .. e*j+e-1), so every group element becomes an F_p matrix
and orbit steps are integer matrix products mod p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np

from . import _linalg
from .cones import chamber_cocharacters, positively_spanning, zero_in_hull
from .errors import BudgetExhausted
from .fields import FiniteField

__all__ = [
    "BudgetExhausted",
    "Certificate",
    "LinearRep",
    "MatrixGenerator",
    "OrbitResult",
    "WeightedVector",
    "chamber_cocharacters",
    "embed_rep",
    "find_destabilizer",
    "negative_weight_set",
    "negative_weight_set_conjugate",
    "orbit",
    "torus_semistable",
    "torus_stable",
]


KEY_LIMIT = 1 << 62


@dataclass(frozen=True)
class WeightedVector:
    """Coordinates over some ring, with the torus weight of each coordinate line."""

    coeffs: tuple
    weights: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.coeffs) != len(self.weights):
            raise ValueError("one weight per coordinate is required")

    @property
    def rank(self) -> int:
        return len(self.weights[0]) if self.weights else 0

    def components(self) -> dict[tuple[int, ...], tuple]:
        """Weight -> coordinates of the component in that weight space."""
        out: dict[tuple[int, ...], list] = {}
        for c, w in zip(self.coeffs, self.weights):
            out.setdefault(tuple(w), []).append(c)
        return {w: tuple(v) for w, v in out.items()}

    def present_weights(self) -> list[tuple[int, ...]]:
        return sorted({tuple(w) for c, w in zip(self.coeffs, self.weights) if c})


def negative_weight_set(lam: Sequence[int], v: WeightedVector) -> set[int]:
    """{<w, lam> < 0 : the component of v at weight w is nonzero}."""
    out = set()
    for w in v.present_weights():
        k = sum(a * b for a, b in zip(w, lam))
        if k < 0:
            out.add(k)
    return out


def torus_stable(v: WeightedVector) -> bool:
    """Stable for the torus: the present weights positively span the weight space."""
    return positively_spanning(v.present_weights(), v.rank)


def torus_semistable(v: WeightedVector) -> bool:
    """Semistable for the torus: 0 lies in the convex hull of the present weights."""
    return zero_in_hull(v.present_weights(), v.rank)


def negative_weight_set_conjugate(
    g: Sequence[Sequence], lam: Sequence[int], weights: Sequence[Sequence[int]], v: Sequence, t: int = 2
) -> set[int]:
    """I(g lam g^-1, v) over Q, from the eigenspaces of g lam(t) g^-1.

    ``g`` is an invertible rational matrix acting on coordinates and lam(t) is the
    diagonal matrix t^<w_k, lam>.  The vector is split into eigenvectors of the
    conjugated operator; no use is made of the identity being tested.
    """
    n = len(v)
    exps = [sum(a * b for a, b in zip(w, lam)) for w in weights]
    # eigenbasis: columns g e_k with eigenvalue t^exps[k]; group by eigenvalue via nullspaces
    gi = [[Fraction(g[i][j]) for j in range(n)] for i in range(n)]
    d = [[Fraction(t) ** exps[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    ginv_cols = [_linalg.solve(gi, [int(i == j) for i in range(n)]) for j in range(n)]
    ginv = [[ginv_cols[j][i] for j in range(n)] for i in range(n)]
    op = _linalg.matmul(_linalg.matmul(gi, d), ginv)
    basis_cols: list[list[Fraction]] = []
    labels: list[int] = []
    for k in sorted(set(exps)):
        ev = Fraction(t) ** k
        shifted = [[op[i][j] - (ev if i == j else 0) for j in range(n)] for i in range(n)]
        for vec in _linalg.nullspace(shifted, n):
            basis_cols.append(vec)
            labels.append(k)
    mat = [[basis_cols[j][i] for j in range(n)] for i in range(n)]
    coeffs = _linalg.solve(mat, list(v))
    return {k for k, c in zip(labels, coeffs) if c != 0 and k < 0}


# ---------------------------------------------------------------- linear actions


@dataclass(frozen=True)
class MatrixGenerator:
    """A group element acting on column vectors; entries are field codes."""

    name: str
    matrix: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class LinearRep:
    field: FiniteField
    dim: int
    generators: tuple[MatrixGenerator, ...]
    weights: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.weights[0]) if self.weights else 0

    def expanded(self) -> list[np.ndarray]:
        """Generators as F_p matrices on digit vectors of length dim * e."""
        return [_expand_matrix(self.field, g.matrix) for g in self.generators]

    def generator_orders(self) -> list[int]:
        out = []
        p = self.field.p
        for m in self.expanded():
            ident = np.eye(m.shape[0], dtype=np.int64)
            k, cur = 1, m.copy()
            while not np.array_equal(cur, ident):
                cur = (cur @ m) % p
                k += 1
            out.append(k)
        return out


def _element_matrix(f: FiniteField, code: int) -> np.ndarray:
    """Multiplication by ``code`` as an e x e matrix over F_p on coefficient digits."""
    e = f.e
    m = np.zeros((e, e), dtype=np.int64)
    for i in range(e):
        col = f.digits(f.mul_codes(code, f.p**i))
        m[:, i] = col
    return m


def _expand_matrix(f: FiniteField, mat) -> np.ndarray:
    n = len(mat)
    e = f.e
    out = np.zeros((n * e, n * e), dtype=np.int64)
    for j in range(n):
        for i in range(n):
            c = mat[j][i]
            if c:
                out[e * j : e * j + e, e * i : e * i + e] = _element_matrix(f, c)
    return out


def to_digits(f: FiniteField, codes: Sequence[int]) -> np.ndarray:
    return np.array([d for c in codes for d in f.digits(c)], dtype=np.int64)


def from_digits(f: FiniteField, digits: Sequence[int]) -> tuple[int, ...]:
    e = f.e
    return tuple(f.encode(digits[e * j : e * j + e]) for j in range(len(digits) // e))


def embed_rep(rep: LinearRep, big: FiniteField, generators: Sequence[MatrixGenerator]) -> LinearRep:
    """Same weights, new generators over a larger field."""
    return LinearRep(big, rep.dim, tuple(generators), rep.weights)


@dataclass(frozen=True)
class Certificate:
    """g . vector has no negative weights for ``cocharacter``; g = word applied left to right."""

    vector: tuple[int, ...]
    word: tuple[int, ...]
    cocharacter: tuple[int, ...]
    field_order: int
    image: tuple[int, ...]
    verified: bool

    def to_json(self) -> dict:
        return {
            "vector": list(self.vector),
            "word": list(self.word),
            "cocharacter": list(self.cocharacter),
            "field_order": self.field_order,
            "verified": self.verified,
        }


def apply_word(rep: LinearRep, word: Sequence[int], codes: Sequence[int]) -> tuple[int, ...]:
    mats = rep.expanded()
    x = to_digits(rep.field, codes)
    for w in word:
        x = (mats[w] @ x) % rep.field.p
    return from_digits(rep.field, x.tolist())


def verify_certificate(rep: LinearRep, cert: Certificate) -> bool:
    if not any(cert.cocharacter):
        return False
    image = apply_word(rep, cert.word, cert.vector)
    wv = WeightedVector(image, rep.weights)
    return image == cert.image and not negative_weight_set(cert.cocharacter, wv)


@dataclass
class _Scan:
    keys: np.ndarray  # sorted keys of visited vectors
    parents: dict[int, tuple[int, int]]
    hit: tuple[int, int] | None  # (key, cocharacter index)
    complete: bool


def _negative_masks(rep: LinearRep, cochars: Sequence[Sequence[int]]) -> np.ndarray:
    w = np.array(rep.weights, dtype=np.int64).reshape(rep.dim, -1)
    c = np.array(cochars, dtype=np.int64).reshape(len(cochars), -1)
    return (c @ w.T) < 0  # (n_cochars, dim)


def _scan(rep: LinearRep, start: Sequence[int], masks: np.ndarray | None, budget: int, mats=None) -> _Scan:
    f = rep.field
    p, e, n = f.p, f.e, rep.dim
    if p ** (n * e) > KEY_LIMIT:
        raise MemoryError(f"F_{p}^{n * e} does not fit the 62-bit orbit keys")
    mats = mats if mats is not None else rep.expanded()
    powers = np.array([p**k for k in range(n * e)], dtype=np.int64)
    x0 = to_digits(f, start)[None, :]
    k0 = int((x0 @ powers)[0])
    parents: dict[int, tuple[int, int]] = {k0: (-1, -1)}
    seen = np.array([k0], dtype=np.int64)

    def first_hit(batch, bkeys):
        if masks is None or masks.shape[0] == 0:
            return None
        nz = batch.reshape(len(batch), n, e).any(axis=2)  # (B, n)
        bad = nz.astype(np.int64) @ masks.T.astype(np.int64)  # (B, n_cochars)
        ok = bad == 0
        rows = np.flatnonzero(ok.any(axis=1))
        if rows.size == 0:
            return None
        r = rows[0]
        return int(bkeys[r]), int(np.flatnonzero(ok[r])[0])

    hit = first_hit(x0, [k0])
    if hit is not None:
        return _Scan(seen, parents, hit, False)
    frontier, fkeys = x0, np.array([k0], dtype=np.int64)
    while frontier.shape[0]:
        new_rows, new_keys, new_par, new_gen = [], [], [], []
        for gi, m in enumerate(mats):
            y = (frontier @ m.T) % p
            yk = y @ powers
            new_rows.append(y)
            new_keys.append(yk)
            new_par.append(fkeys)
            new_gen.append(np.full(len(yk), gi, dtype=np.int64))
        ys = np.concatenate(new_rows)
        yk = np.concatenate(new_keys)
        par = np.concatenate(new_par)
        gen = np.concatenate(new_gen)
        # generator-major order, first occurrence wins
        _, first = np.unique(yk, return_index=True)
        first.sort()
        fresh = first[~np.isin(yk[first], seen, assume_unique=False)]
        if fresh.size == 0:
            break
        ys, yk, par, gen = ys[fresh], yk[fresh], par[fresh], gen[fresh]
        for k, pk, g in zip(yk.tolist(), par.tolist(), gen.tolist()):
            parents[k] = (pk, g)
        seen = np.union1d(seen, yk)
        hit = first_hit(ys, yk)
        if hit is not None:
            return _Scan(seen, parents, hit, False)
        if len(seen) > budget:
            raise BudgetExhausted(budget, len(seen))
        frontier, fkeys = ys, yk
    return _Scan(seen, parents, None, True)


def _word_to(parents: dict[int, tuple[int, int]], key: int) -> tuple[int, ...]:
    word = []
    while True:
        pk, g = parents[key]
        if pk == -1:
            break
        word.append(g)
        key = pk
    return tuple(reversed(word))


def _key_to_codes(f: FiniteField, n: int, key: int) -> tuple[int, ...]:
    digits = []
    for _ in range(n * f.e):
        digits.append(key % f.p)
        key //= f.p
    return from_digits(f, digits)


def find_destabilizer(
    v: Sequence[int],
    rep: LinearRep,
    cochar_reps: Sequence[Sequence[int]] | None = None,
    budget: int = 1_000_000,
) -> Certificate | None:
    """Breadth-first orbit walk looking for g, mu with I(mu, g v) empty.

    Returns the first certificate in (word length, generator order, cocharacter
    order), or None after a complete scan.  Raises BudgetExhausted when more
    than ``budget`` orbit points would be needed.
    """
    v = tuple(int(c) for c in v)
    if cochar_reps is None:
        cochar_reps = chamber_cocharacters(rep.weights, rep.rank)
    cochar_reps = [tuple(c) for c in cochar_reps if any(c)]
    masks = _negative_masks(rep, cochar_reps)
    res = _scan(rep, v, masks, budget)
    if res.hit is None:
        return None
    key, ci = res.hit
    word = _word_to(res.parents, key)
    image = _key_to_codes(rep.field, rep.dim, key)
    cert = Certificate(v, word, cochar_reps[ci], rep.field.q, image, False)
    return Certificate(v, word, cochar_reps[ci], rep.field.q, image, verify_certificate(rep, cert))


@dataclass(frozen=True)
class OrbitResult:
    points: tuple[tuple[int, ...], ...]
    stabilizer_order: int | None

    @property
    def size(self) -> int:
        return len(self.points)


def orbit(v: Sequence[int], rep: LinearRep, group_order: int | None = None, budget: int = 5_000_000) -> OrbitResult:
    """Closure of {v} under the generators, sorted by code tuple."""
    res = _scan(rep, tuple(v), None, budget)
    pts = sorted(_key_to_codes(rep.field, rep.dim, int(k)) for k in res.keys)
    stab = None
    if group_order is not None:
        if group_order % len(pts):
            raise AssertionError(f"orbit size {len(pts)} does not divide group order {group_order}")
        stab = group_order // len(pts)
    return OrbitResult(tuple(pts), stab)


def orbit_keys(v: Sequence[int], rep: LinearRep, budget: int = 5_000_000, mats=None) -> np.ndarray:
    """Sorted integer keys (base-p digit encoding) of the orbit of v."""
    return _scan(rep, tuple(v), None, budget, mats=mats).keys


def vector_key(f: FiniteField, codes: Sequence[int]) -> int:
    key, k = 0, 1
    for d in to_digits(f, codes).tolist():
        key += d * k
        k *= f.p
    return key


def all_vectors(f: FiniteField, n: int) -> Iterable[tuple[int, ...]]:
    """Every code vector of length n, ordered by little-endian base-q value."""
    q = f.q
    for idx in range(q**n):
        out = []
        for _ in range(n):
            out.append(idx % q)
            idx //= q
        yield tuple(out)


@dataclass
class DestabilizerSearch:
    """Per-vector destabilizer search over a schedule of extension degrees.

    ``rep_for_degree(e)`` must return the representation over F_{q^e}, and
    ``embed(e)`` the code table embedding F_q into F_{q^e}.  Complete orbits with
    no certificate are cached per degree; this never changes a per-vector
    answer, since an orbit either has certificates at every point or at none.
    """

    rep_for_degree: Any
    embed: Any
    cochar_reps: Sequence[Sequence[int]]
    budget: int = 1_000_000
    _empty_orbits: dict[int, list[np.ndarray]] = field(default_factory=dict)
    _mats: dict[int, list[np.ndarray]] = field(default_factory=dict)

    def search(self, v: Sequence[int], degree: int) -> Certificate | None:
        rep = self.rep_for_degree(degree)
        table = self.embed(degree)
        w = tuple(table[c] for c in v)
        key = vector_key(rep.field, w)
        for keys in self._empty_orbits.get(degree, []):
            i = np.searchsorted(keys, key)
            if i < len(keys) and keys[i] == key:
                return None
        if degree not in self._mats:
            self._mats[degree] = rep.expanded()
        masks = _negative_masks(rep, self.cochar_reps)
        res = _scan(rep, w, masks, self.budget, mats=self._mats[degree])
        if res.hit is None:
            self._empty_orbits.setdefault(degree, []).append(res.keys)
            return None
        k, ci = res.hit
        word = _word_to(res.parents, k)
        image = _key_to_codes(rep.field, rep.dim, k)
        cert = Certificate(w, word, tuple(self.cochar_reps[ci]), rep.field.q, image, False)
        return Certificate(w, word, cert.cocharacter, rep.field.q, image, verify_certificate(rep, cert))
