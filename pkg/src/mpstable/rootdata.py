"""Root data of simple types, affine roots and rational apartment points.

Conventions
-----------
Roots are integer vectors in the simple-root basis, coroots integer vectors in
the simple-coroot basis.  The Cartan matrix is stored so that

    cartan[i][j] = <alpha_j, alpha_i^vee>,

hence for a weight ``c`` (root coordinates) and a coweight ``d`` (coroot
coordinates) the pairing is ``sum_{i,j} d[i] * cartan[i][j] * c[j]``.
Simple roots are numbered as in Bourbaki; for G2 the first simple root is short.

A point of the apartment is ``x = x0 + v`` where ``v`` is a rational coweight
given in coroot coordinates and ``x0`` is the hyperspecial origin.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial, lcm
from typing import Sequence

from . import _linalg
from .errors import InvalidRootSystemType, NotInAlcove

_FAMILIES = "ABCDEFG"

_ROOT_COUNT = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}

_WEYL_ORDER = {
    "A": lambda n: factorial(n + 1),
    "B": lambda n: 2**n * factorial(n),
    "C": lambda n: 2**n * factorial(n),
    "D": lambda n: 2 ** (n - 1) * factorial(n),
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
    "F": lambda n: 1152,
    "G": lambda n: 12,
}


@dataclass(frozen=True, order=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        ok = (
            f in _FAMILIES
            and isinstance(n, int)
            and n >= 1
            and {
                "A": n >= 1,
                "B": n >= 2,
                "C": n >= 2,
                "D": n >= 3,
                "E": n in (6, 7, 8),
                "F": n == 4,
                "G": n == 2,
            }[f]
        )
        if not ok:
            raise InvalidRootSystemType(f"no simple root system of type {f}{n}")

    @classmethod
    def parse(cls, text: str) -> "RootSystemType":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", text)
        if not m:
            raise InvalidRootSystemType(f"cannot parse root system type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def root_count(self) -> int:
        return _ROOT_COUNT[self.family](self.rank)

    @property
    def weyl_order(self) -> int:
        return _WEYL_ORDER[self.family](self.rank)


def cartan_matrix(t: RootSystemType) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix with ``cartan[i][j] = <alpha_j, alpha_i^vee>`` (Bourbaki numbering)."""
    n = t.rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, a_ij=-1, a_ji=-1):
        c[i][j] = a_ij
        c[j][i] = a_ji

    f = t.family
    if f in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if f == "B":
            link(n - 2, n - 1, -1, -2)
        elif f == "C":
            link(n - 2, n - 1, -2, -1)
    elif f == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif f == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif f == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif f == "G":
        link(0, 1, -3, -1)
    return tuple(tuple(row) for row in c)


@dataclass(frozen=True)
class RootDatum:
    """Roots, coroots and the pairing of a simple split group.

    Roots ``0 .. N-1`` are the positive roots ordered by height and then by
    descending coordinates (so the simple roots come first, in index order);
    root ``k + N`` is the negative of root ``k``.
    """

    type: RootSystemType
    cartan: tuple[tuple[int, ...], ...]
    roots: tuple[tuple[int, ...], ...]
    coroots: tuple[tuple[int, ...], ...]
    positives: tuple[int, ...]
    highest_root: int
    rho_check: tuple[Fraction, ...]

    @property
    def rank(self) -> int:
        return self.type.rank

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def negative(self) -> tuple[int, ...]:
        return tuple(self.index[tuple(-x for x in r)] for r in self.roots)

    @cached_property
    def heights(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.roots)

    @property
    def simple_roots(self) -> tuple[int, ...]:
        return tuple(range(self.rank))

    def is_root(self, vec: Sequence[int]) -> bool:
        return tuple(vec) in self.index

    def root_pairing(self, i: int, j: int) -> int:
        """<root_i, coroot_j> as an integer."""
        return int(pairing(self, self.roots[i], self.coroots[j]))

    @cached_property
    def inner_products(self) -> tuple[tuple[Fraction, ...], ...]:
        """W-invariant form on simple roots, normalized so short roots have (a, a) = 2."""
        n = self.rank
        d: list[Fraction | None] = [None] * n
        d[0] = Fraction(1)
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and self.cartan[i][j] != 0 and d[j] is None:
                    # d_i * a_ij = d_j * a_ji
                    d[j] = d[i] * self.cartan[i][j] / self.cartan[j][i]
                    stack.append(j)
        smallest = min(d)
        d = [x / smallest for x in d]
        return tuple(tuple(d[i] * self.cartan[i][j] for j in range(n)) for i in range(n))

    def form(self, u: Sequence, v: Sequence) -> Fraction:
        """Invariant inner product of two vectors in root coordinates."""
        g = self.inner_products
        return sum(u[i] * g[i][j] * v[j] for i in range(self.rank) for j in range(self.rank))


def pairing(datum: RootDatum, weight: Sequence, coweight: Sequence) -> Fraction:
    """<weight, coweight> for weight in root coordinates and coweight in coroot coordinates."""
    n = datum.rank
    if len(weight) != n or len(coweight) != n:
        raise ValueError(f"expected vectors of length {n}")
    c = datum.cartan
    return Fraction(sum(coweight[i] * c[i][j] * weight[j] for i in range(n) for j in range(n)))


def build_root_system(t: RootSystemType | str) -> RootDatum:
    """Root datum of a simple type, generated by reflection closure of the simple roots."""
    if isinstance(t, str):
        t = RootSystemType.parse(t)
    n = t.rank
    cartan = cartan_matrix(t)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    coroot_of: dict[tuple[int, ...], tuple[int, ...]] = {s: s for s in simple}
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            bv = coroot_of[beta]
            for i in range(n):
                # s_i(beta) = beta - <beta, alpha_i^vee> alpha_i
                k = sum(cartan[i][j] * beta[j] for j in range(n))
                image = tuple(beta[j] - (k if j == i else 0) for j in range(n))
                if image in coroot_of:
                    continue
                # s_i(beta^vee) = beta^vee - <alpha_i, beta^vee> alpha_i^vee
                kv = sum(bv[m] * cartan[m][i] for m in range(n))
                coroot_of[image] = tuple(bv[j] - (kv if j == i else 0) for j in range(n))
                nxt.append(image)
        frontier = nxt
    if len(coroot_of) != t.root_count:
        raise AssertionError(f"{t}: generated {len(coroot_of)} roots, expected {t.root_count}")
    pos = sorted(
        (r for r in coroot_of if all(x >= 0 for x in r)),
        key=lambda r: (sum(r), tuple(-x for x in r)),
    )
    roots = pos + [tuple(-x for x in r) for r in pos]
    coroots = tuple(coroot_of[r] for r in roots)
    rho = tuple(Fraction(sum(coroot_of[r][i] for r in pos), 2) for i in range(n))
    return RootDatum(
        type=t,
        cartan=cartan,
        roots=tuple(roots),
        coroots=coroots,
        positives=tuple(range(len(pos))),
        highest_root=len(pos) - 1,
        rho_check=rho,
    )


@dataclass(frozen=True)
class AffineRoot:
    gradient: int
    level: int


def _as_fractions(v: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class ApartmentPoint:
    """The point ``x0 + offset``; ``offset`` is a rational coweight in coroot coordinates."""

    datum: RootDatum
    offset: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "offset", _as_fractions(self.offset))
        if len(self.offset) != self.datum.rank:
            raise ValueError("offset length does not match the rank")

    @classmethod
    def origin(cls, datum: RootDatum) -> "ApartmentPoint":
        return cls(datum, (0,) * datum.rank)

    @classmethod
    def rho_over(cls, datum: RootDatum, m: int | Fraction, sign: int = 1) -> "ApartmentPoint":
        """x0 + sign * rho_check / m."""
        return cls(datum, tuple(sign * r / Fraction(m) for r in datum.rho_check))

    @classmethod
    def from_fundamental(cls, datum: RootDatum, values: Sequence) -> "ApartmentPoint":
        """Point with prescribed simple-root values alpha_i(x) = values[i]."""
        n = datum.rank
        transposed = [[datum.cartan[k][i] for k in range(n)] for i in range(n)]
        return cls(datum, tuple(_linalg.solve(transposed, _as_fractions(values))))

    @cached_property
    def root_values(self) -> tuple[Fraction, ...]:
        return tuple(pairing(self.datum, r, self.offset) for r in self.datum.roots)

    @cached_property
    def order(self) -> int:
        return point_order(self)

    @cached_property
    def r(self) -> Fraction:
        return r_of_x(self)

    def value(self, root: Sequence) -> Fraction:
        return pairing(self.datum, root, self.offset)

    def __repr__(self) -> str:
        coords = ", ".join(str(x) for x in self.offset)
        return f"ApartmentPoint({self.datum.type}, x0 + ({coords}))"


def eval_affine_root(psi: AffineRoot, x: ApartmentPoint) -> Fraction:
    return x.root_values[psi.gradient] + psi.level


def point_order(x: ApartmentPoint) -> int:
    """Least m > 0 with m * alpha(x) integral for every root alpha."""
    m = 1
    for v in x.root_values:
        m = lcm(m, v.denominator)
    return m


def r_of_x(x: ApartmentPoint) -> Fraction:
    """Smallest positive affine-root value at x (1 when every root value is integral)."""
    fracs = [v - (v.numerator // v.denominator) for v in x.root_values]
    positive = [f for f in fracs if f > 0]
    return min(positive) if positive else Fraction(1)


def _reflect(x: ApartmentPoint, wall: int) -> ApartmentPoint:
    """Reflect in wall 0 (theta = 1) or wall i (alpha_i = 0)."""
    d = x.datum
    if wall == 0:
        k = x.root_values[d.highest_root] - 1
        cv = d.coroots[d.highest_root]
    else:
        k = x.root_values[wall - 1]
        cv = d.coroots[wall - 1]
    return ApartmentPoint(d, tuple(v - k * c for v, c in zip(x.offset, cv)))


def apply_affine_reflections(x: ApartmentPoint, word: Sequence[int]) -> ApartmentPoint:
    """Apply the alcove-wall reflections ``word[0]``, ``word[1]``, ... in order."""
    for w in word:
        x = _reflect(x, w)
    return x


def alcove_violations(x: ApartmentPoint) -> list[Fraction]:
    """Amount by which each wall inequality fails (0 when satisfied); index 0 is theta <= 1."""
    d = x.datum
    out = [max(Fraction(0), x.root_values[d.highest_root] - 1)]
    out += [max(Fraction(0), -x.root_values[i]) for i in range(d.rank)]
    return out


def in_alcove(x: ApartmentPoint) -> bool:
    return not any(alcove_violations(x))


def reduce_to_alcove(x: ApartmentPoint) -> tuple[ApartmentPoint, tuple[int, ...]]:
    """Move x into the closed fundamental alcove by wall reflections.

    Each step reflects in the most violated wall (lowest wall index on ties).
    Returns the alcove point and the applied walls; applying the walls in
    reverse order to the result recovers ``x``.
    """
    word = []
    while True:
        viol = alcove_violations(x)
        worst = max(viol)
        if worst == 0:
            return x, tuple(word)
        wall = viol.index(worst)
        x = _reflect(x, wall)
        word.append(wall)


def kac_coordinates(x: ApartmentPoint) -> tuple[int, ...]:
    """(s0, s1, ..., sl) with s_i = m alpha_i(x) and s0 = m (1 - theta(x))."""
    if not in_alcove(x):
        raise NotInAlcove(f"{x!r} is not in the closed fundamental alcove")
    m = x.order
    d = x.datum
    s0 = m * (1 - x.root_values[d.highest_root])
    s = [s0] + [m * x.root_values[i] for i in range(d.rank)]
    return tuple(int(v) for v in s)


def datum_to_json(datum: RootDatum) -> dict:
    return {
        "type": str(datum.type),
        "rank": datum.rank,
        "cartan": [list(r) for r in datum.cartan],
        "roots": [list(r) for r in datum.roots],
        "coroots": [list(r) for r in datum.coroots],
        "positives": list(datum.positives),
        "highest_root": datum.highest_root,
        "rho_check": [str(x) for x in datum.rho_check],
    }
