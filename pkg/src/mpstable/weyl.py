"""Weyl groups by closure, and the elliptic / Z-regular classification."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

import numpy as np

from . import _linalg
from .errors import GroupTooLarge
from .rootdata import RootDatum

DEFAULT_CEILING = 2_000_000


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element as a permutation of root indices plus its matrix on coweights.

    ``matrix`` acts on column vectors in coroot coordinates.
    """

    root_perm: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        perm = tuple(self.root_perm[i] for i in other.root_perm)
        mat = tuple(tuple(row) for row in _linalg.matmul(self.matrix, other.matrix))
        return WeylElement(perm, mat)

    def __hash__(self):
        return hash(self.root_perm)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.root_perm == other.root_perm

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.root_perm)
        for i, j in enumerate(self.root_perm):
            inv[j] = i
        n = len(self.matrix)
        # Weyl matrices are integral with determinant +-1, so the inverse is integral.
        cols = [_linalg.solve(self.matrix, [int(i == j) for i in range(n)]) for j in range(n)]
        mat = tuple(tuple(int(cols[j][i]) for j in range(n)) for i in range(n))
        return WeylElement(tuple(inv), mat)

    @property
    def cycle_lengths(self) -> list[int]:
        seen = set()
        out = []
        for start in range(len(self.root_perm)):
            if start in seen:
                continue
            k, i = 0, start
            while i not in seen:
                seen.add(i)
                i = self.root_perm[i]
                k += 1
            out.append(k)
        return out

    @property
    def order(self) -> int:
        # W acts faithfully on the roots, so the permutation order is the element order.
        m = 1
        for c in self.cycle_lengths:
            m = lcm(m, c)
        return m

    def power(self, k: int) -> "WeylElement":
        result = identity_element(len(self.root_perm), len(self.matrix))
        for _ in range(k):
            result = result * self
        return result


def identity_element(nroots: int, rank: int) -> WeylElement:
    return WeylElement(tuple(range(nroots)), tuple(tuple(r) for r in _linalg.identity(rank)))


def simple_reflection(datum: RootDatum, i: int) -> WeylElement:
    n = datum.rank
    c = datum.cartan
    perm = []
    for r in datum.roots:
        k = sum(c[i][j] * r[j] for j in range(n))
        image = tuple(r[j] - (k if j == i else 0) for j in range(n))
        perm.append(datum.index[image])
    # column k of the matrix is s_i(alpha_k^vee) = alpha_k^vee - <alpha_i, alpha_k^vee> alpha_i^vee
    mat = [[int(a == b) for b in range(n)] for a in range(n)]
    for k in range(n):
        mat[i][k] -= c[k][i]
    return WeylElement(tuple(perm), tuple(tuple(r) for r in mat))


def coxeter_element(datum: RootDatum) -> WeylElement:
    """s_1 s_2 ... s_l."""
    w = identity_element(len(datum.roots), datum.rank)
    for i in range(datum.rank):
        w = w * simple_reflection(datum, i)
    return w


def element_from_perm(datum: RootDatum, perm) -> WeylElement:
    """Rebuild the coweight matrix from the root permutation: column k is w(alpha_k^vee)."""
    n = datum.rank
    cols = [datum.coroots[perm[k]] for k in range(n)]
    return WeylElement(tuple(int(i) for i in perm), tuple(tuple(cols[k][i] for k in range(n)) for i in range(n)))


def generate_weyl(datum: RootDatum, ceiling: int = DEFAULT_CEILING) -> list[WeylElement]:
    """All elements of W, in breadth-first order from the identity."""
    order = datum.type.weyl_order
    if order > ceiling:
        raise GroupTooLarge(order, ceiling)
    dtype = np.int16
    gens = [np.array(simple_reflection(datum, i).root_perm, dtype=dtype) for i in range(datum.rank)]
    e = np.arange(len(datum.roots), dtype=dtype)
    seen = {e.tobytes(): e}
    frontier = [e]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                u = s[w]
                key = u.tobytes()
                if key not in seen:
                    seen[key] = u
                    nxt.append(u)
        frontier = nxt
    if len(seen) != order:
        raise AssertionError(f"closure produced {len(seen)} elements, expected {order}")
    return [element_from_perm(datum, p) for p in seen.values()]


def is_elliptic(w: WeylElement) -> bool:
    """True when w fixes no nonzero coweight, i.e. det(w - 1) != 0."""
    n = len(w.matrix)
    shifted = [[w.matrix[i][j] - (i == j) for j in range(n)] for i in range(n)]
    return _linalg.det(shifted) != 0


def is_z_regular(w: WeylElement) -> bool:
    """True when <w> acts freely on the roots: every cycle has length order(w).

    The identity is reported as not Z-regular since it fixes every root.
    """
    cycles = w.cycle_lengths
    return cycles[0] > 1 and all(c == cycles[0] for c in cycles)


def regular_elliptic_orders(datum: RootDatum, ceiling: int = DEFAULT_CEILING) -> list[int]:
    return sorted({w.order for w in generate_weyl(datum, ceiling) if is_z_regular(w) and is_elliptic(w)})
