"""Exact rational cone tools: LP feasibility and hyperplane-arrangement face representatives."""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Sequence

from . import _linalg

MAX_ARRANGEMENT_RANK = 3


def feasible(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """A point of {x >= 0 : a x = b}, or None.  Phase-I simplex with Bland's rule."""
    rows = [[Fraction(v) for v in row] for row in a]
    rhs = [Fraction(v) for v in b]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    if m == 0:
        return [Fraction(0)] * n
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    # tableau columns: x_0..x_{n-1}, artificials a_0..a_{m-1}
    tab = [rows[i] + [Fraction(int(i == k)) for k in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimize sum of artificials, written as reduced costs
    cost = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            cost[j] -= tab[i][j]
    for k in range(m):
        cost[n + k] = Fraction(0)
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        ratios = [(tab[i][-1] / tab[i][enter], basis[i], i) for i in range(m) if tab[i][enter] > 0]
        if not ratios:
            break  # unbounded cannot happen for phase I
        _, _, leave = min(ratios)
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [v - f * w for v, w in zip(tab[i], tab[leave])]
        f = cost[enter]
        cost = [v - f * w for v, w in zip(cost, tab[leave])]
        basis[leave] = enter
    if -cost[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = tab[i][-1]
    return x


def positively_spanning(weights: Sequence[Sequence[int]], rank: int) -> bool:
    """True iff the cone generated by ``weights`` is the whole space."""
    if not weights or _linalg.rank(weights) < rank:
        return False
    # a strictly positive dependency sum c_w w = 0 exists iff c = 1 + c', c' >= 0 is feasible
    a = [[w[i] for w in weights] for i in range(rank)]
    b = [-sum(w[i] for w in weights) for i in range(rank)]
    return feasible(a, b) is not None


def zero_in_hull(weights: Sequence[Sequence[int]], rank: int) -> bool:
    if not weights:
        return False
    a = [[w[i] for w in weights] for i in range(rank)] + [[1] * len(weights)]
    b = [0] * rank + [1]
    return feasible(a, b) is not None


def _sign_vector(normals, lam) -> tuple[int, ...]:
    out = []
    for w in normals:
        v = _linalg.dot(w, lam)
        out.append((v > 0) - (v < 0))
    return tuple(out)


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _perturb(point, direction, normals):
    """point + eps * direction with eps small enough to keep every nonzero sign of point."""
    eps = Fraction(1)
    for w in normals:
        a = _linalg.dot(w, point)
        c = _linalg.dot(w, direction)
        if a != 0 and c != 0:
            eps = min(eps, abs(Fraction(a)) / (2 * abs(Fraction(c))))
    return [p + eps * d for p, d in zip(point, direction)]


def _angle_cmp(p, q) -> int:
    """Counterclockwise order of nonzero plane vectors starting from the positive x-axis."""
    hp = 0 if (p[1] > 0 or (p[1] == 0 and p[0] > 0)) else 1
    hq = 0 if (q[1] > 0 or (q[1] == 0 and q[0] > 0)) else 1
    if hp != hq:
        return hp - hq
    cr = p[0] * q[1] - p[1] * q[0]
    return -1 if cr > 0 else (1 if cr < 0 else 0)


def _distinct_lines(normals) -> list[tuple[int, ...]]:
    seen = []
    keys = set()
    for w in normals:
        p = _linalg.primitive(w)
        key = max(p, tuple(-x for x in p))
        if key not in keys:
            keys.add(key)
            seen.append(key)
    return seen


def _essential_faces(normals: list[tuple[Fraction, ...]], k: int) -> list[list[Fraction]]:
    """Candidate points hitting every nonzero face of an essential arrangement in Q^k."""
    lines = _distinct_lines(normals)
    if k == 1:
        return [[Fraction(1)], [Fraction(-1)]]
    if k == 2:
        rays = []
        for n in lines:
            rays += [(-n[1], n[0]), (n[1], -n[0])]
        ordered = sorted(rays, key=cmp_to_key(_angle_cmp))
        out = [list(map(Fraction, r)) for r in ordered]
        for a, b in zip(ordered, ordered[1:] + ordered[:1]):
            s = [x + y for x, y in zip(a, b)]
            if not any(s):
                s = [-a[1], a[0]]
            out.append([Fraction(x) for x in s])
        return out
    # k == 3: rays, then arcs on each plane, then regions next to each arc
    rays = []
    seen = set()
    for i, n1 in enumerate(lines):
        for n2 in lines[i + 1 :]:
            c = _cross(n1, n2)
            if any(c):
                for r in (c, tuple(-x for x in c)):
                    p = _linalg.primitive(r)
                    if p not in seen:
                        seen.add(p)
                        rays.append(p)
    out = [list(map(Fraction, r)) for r in rays]
    for n in lines:
        in_plane = [r for r in rays if _linalg.dot(r, n) == 0]
        u0 = in_plane[0] if in_plane else _linalg.primitive(_linalg.nullspace([n], 3)[0])
        v0 = _cross(n, u0)

        def cmp(r1, r2, u0=u0, v0=v0):
            return _angle_cmp((_linalg.dot(r1, u0), _linalg.dot(r1, v0)), (_linalg.dot(r2, u0), _linalg.dot(r2, v0)))

        ordered = sorted(in_plane, key=cmp_to_key(cmp))
        arcs = []
        if len(ordered) < 2:
            # no rays on this plane: the whole plane minus 0 is one face
            arcs = [list(map(Fraction, u0))]
        else:
            for a, b in zip(ordered, ordered[1:] + ordered[:1]):
                s = [x + y for x, y in zip(a, b)]
                if not any(s):
                    s = list(_cross(n, a))
                arcs.append([Fraction(x) for x in s])
        for arc in arcs:
            out.append(arc)
            out.append(_perturb(arc, n, lines))
            out.append(_perturb(arc, [-x for x in n], lines))
    return out


def chamber_cocharacters(weights: Sequence[Sequence[int]], rank: int) -> list[tuple[int, ...]]:
    """One primitive integer cocharacter per nonzero face of the arrangement {<w, lam> = 0}.

    The sign pattern of (<w, lam>)_w is constant on faces, so these representatives
    realize every pattern a nonzero lam can produce.  Ordered by face dimension
    (rays first), then lexicographically.
    """
    if rank > MAX_ARRANGEMENT_RANK:
        raise ValueError(f"arrangement enumeration supports rank <= {MAX_ARRANGEMENT_RANK}")
    ws = [tuple(int(x) for x in w) for w in weights if any(w)]
    if not ws:
        return [tuple(int(i == 0) for i in range(rank))]
    basis_rows, pivots = _linalg.row_reduce(ws)
    b = [row for row in basis_rows if any(row)]
    k = len(b)
    # coordinates of each weight in the row-space basis (pivot entries of the RREF)
    coords = [[Fraction(w[p]) for p in pivots] for w in ws]
    cands = _essential_faces(coords, k)
    out = {}
    lineality = _linalg.nullspace(ws, rank)
    if lineality:
        lam = _linalg.primitive(lineality[0])
        out[_sign_vector(ws, lam)] = lam
    gram = _linalg.matmul(b, [list(col) for col in zip(*b)])
    for y in cands:
        if not any(y):
            continue
        # lift y = B lam with lam in the row space: lam = B^T z, (B B^T) z = y
        z = _linalg.solve(gram, y)
        lam = [sum(z[i] * b[i][j] for i in range(k)) for j in range(rank)]
        lam = _linalg.primitive(lam)
        sv = _sign_vector(ws, lam)
        if sv not in out or lam < out[sv]:
            out[sv] = lam
    return sorted(out.values(), key=lambda lam: (sum(1 for s in _sign_vector(ws, lam) if s), lam))
