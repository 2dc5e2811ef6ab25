"""Chevalley basis of a split simple Lie algebra with integer structure constants.

Basis indices ``0 .. |Phi|-1`` are the root vectors ``e_alpha`` in root order,
followed by ``h_1 .. h_l`` (the simple coroots).  Brackets:

    [e_a, e_b]   = N_{a,b} e_{a+b}          (a + b a root)
    [e_a, e_-a]  = h_a = sum_i coroot(a)_i h_i
    [h_i, e_a]   = <a, alpha_i^vee> e_a

Signs are fixed by declaring N_{a,b} = +(p+1) on every extraspecial pair, where
the extraspecial pair of a non-simple positive root z is (a, z - a) with a the
earliest positive root in root order for which z - a is also a root.  The rest
follows from the standard relations among structure constants, with the
normalization N_{-a,-b} = -N_{a,b}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Any, Iterable, Mapping

from .errors import IntegralityViolation
from .rootdata import RootDatum, build_root_system

JACOBI_CHECK_LIMIT = 72  # verify Jacobi during construction up to this many roots


class LieVector:
    """Sparse element of the algebra: ``{basis index: scalar}`` with zeros dropped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, Any] | None = None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    @classmethod
    def basis(cls, k: int, one: Any = 1) -> "LieVector":
        return cls({k: one})

    def __add__(self, other: "LieVector") -> "LieVector":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return LieVector(out)

    def __neg__(self) -> "LieVector":
        return LieVector({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "LieVector") -> "LieVector":
        return self + (-other)

    def scale(self, s: Any) -> "LieVector":
        return LieVector({k: s * v for k, v in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, LieVector) and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs.get(k, 0)

    def __repr__(self):
        inner = ", ".join(f"{k}: {v!r}" for k, v in sorted(self.coeffs.items()))
        return f"LieVector({{{inner}}})"


def _ring_tag(values: Iterable[Any]) -> Any:
    tags = set()
    for v in values:
        if hasattr(v, "field"):
            tags.add(("field", v.field.q))
        elif isinstance(v, Fraction):
            tags.add("QQ")
        elif isinstance(v, int):
            tags.add("ZZ")
    # integers embed in every ring, rationals only mix with integers
    tags.discard("ZZ")
    if len(tags) > 1:
        raise TypeError(f"mixed coefficient rings {sorted(map(str, tags))}")
    return tags.pop() if tags else "ZZ"


@dataclass(frozen=True, eq=False)
class ChevalleyAlgebra:
    datum: RootDatum
    structure: Mapping[tuple[int, int], int]
    sign_convention: str = "extraspecial-positive"
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def nroots(self) -> int:
        return len(self.datum.roots)

    @property
    def dim(self) -> int:
        return self.nroots + self.datum.rank

    def h(self, i: int) -> int:
        """Basis index of h_{i+1}."""
        return self.nroots + i

    def e(self, root: int) -> int:
        return root

    def N(self, a: int, b: int) -> int:
        return self.structure.get((a, b), 0)

    @cached_property
    def basis_brackets(self) -> tuple[tuple[tuple[tuple[int, int], ...], ...], ...]:
        """``basis_brackets[i][j]`` = sparse integer expansion of [b_i, b_j]."""
        d = self.datum
        n, l = self.nroots, d.rank
        table = []
        for i in range(n + l):
            row = []
            for j in range(n + l):
                row.append(tuple(sorted(_basis_bracket(self, i, j).items())))
            table.append(tuple(row))
        return tuple(table)

    def basis_bracket(self, i: int, j: int) -> dict[int, int]:
        return dict(self.basis_brackets[i][j])

    def ad_power_table(self, root: int) -> tuple[tuple[dict[int, int], ...], ...]:
        """For each basis vector b, the list of (ad e_root)^i b / i! for i = 0, 1, ..."""
        key = ("adpow", root)
        if key in self._cache:
            return self._cache[key]
        out = []
        for b in range(self.dim):
            terms = [{b: 1}]
            cur = {b: 1}
            i = 0
            while True:
                i += 1
                nxt: dict[int, int] = {}
                for k, c in cur.items():
                    for t, s in self.basis_brackets[root][k]:
                        nxt[t] = nxt.get(t, 0) + c * s
                nxt = {k: c for k, c in nxt.items() if c}
                if not nxt:
                    break
                cur = nxt
                divided = {}
                for k, c in cur.items():
                    q, rem = divmod(c, factorial(i))
                    if rem:
                        raise IntegralityViolation(
                            f"(ad e_{root})^{i} b_{b} / {i}! has non-integral coefficient {Fraction(c, factorial(i))}"
                        )
                    divided[k] = q
                terms.append(divided)
            out.append(tuple(terms))
        table = tuple(out)
        self._cache[key] = table
        return table


def _basis_bracket(alg: ChevalleyAlgebra, i: int, j: int) -> dict[int, int]:
    d = alg.datum
    n = alg.nroots
    if i >= n and j >= n:
        return {}
    if i >= n:
        # [h_k, e_b] = <b, alpha_k^vee> e_b
        k = i - n
        c = sum(d.cartan[k][t] * d.roots[j][t] for t in range(d.rank))
        return {j: c} if c else {}
    if j >= n:
        return {k: -v for k, v in _basis_bracket(alg, j, i).items()}
    if d.negative[i] == j:
        return {n + k: c for k, c in enumerate(d.coroots[i]) if c}
    s = tuple(x + y for x, y in zip(d.roots[i], d.roots[j]))
    if s in d.index:
        return {d.index[s]: alg.N(i, j)}
    return {}


def _string_p(d: RootDatum, a: int, b: int) -> int:
    """Largest p with b - p a a root."""
    ra, rb = d.roots[a], d.roots[b]
    p = 0
    while tuple(y - (p + 1) * x for x, y in zip(ra, rb)) in d.index:
        p += 1
    return p


def _compute_constants(d: RootDatum) -> dict[tuple[int, int], int]:
    npos = len(d.positives)
    roots = d.roots
    idx = d.index

    def add(a, b):
        return idx.get(tuple(x + y for x, y in zip(roots[a], roots[b])))

    def norm(a):
        return d.form(roots[a], roots[a])

    extraspecial: dict[int, tuple[int, int]] = {}
    for z in range(d.rank, npos):
        for a in range(npos):
            b = idx.get(tuple(x - y for x, y in zip(roots[z], roots[a])))
            if b is not None and b < npos:
                extraspecial[z] = (a, b)
                break

    memo: dict[tuple[int, int], Fraction] = {}

    def N(a: int, b: int) -> Fraction:
        key = (a, b)
        if key in memo:
            return memo[key]
        z = add(a, b)
        if z is None:
            val = Fraction(0)
        elif a < npos and b < npos:
            val = _positive(a, b, z)
        elif a >= npos and b >= npos:
            val = -N(d.negative[a], d.negative[b])
        else:
            # a + b + c = 0 with exactly one same-sign pair among (b, c), (c, a)
            c = d.negative[z]
            if (b < npos) == (c < npos):
                val = norm(c) / norm(a) * N(b, c)
            else:
                val = norm(c) / norm(b) * N(c, a)
        memo[key] = val
        return val

    def _positive(a: int, b: int, z: int) -> Fraction:
        ea, eb = extraspecial[z]
        p1 = _string_p(d, ea, eb) + 1
        if (a, b) == (ea, eb):
            return Fraction(p1)
        if (a, b) == (eb, ea):
            return Fraction(-p1)
        # four roots ea + eb - a - b = 0; solve the quadratic relation for N_{a,b}
        na, nb = d.negative[a], d.negative[b]
        total = Fraction(0)
        for u, v, w, x in ((eb, na, ea, nb), (na, ea, eb, nb)):
            s = add(u, v)
            if s is not None and add(w, x) is not None:
                total += N(u, v) * N(w, x) / norm(s)
        # N_{ea,eb} N_{-a,-b} / (z,z) + total = 0 and N_{-a,-b} = -N_{a,b}
        return total * norm(z) / p1

    table = {}
    for a in range(len(roots)):
        for b in range(len(roots)):
            if add(a, b) is not None:
                v = N(a, b)
                if v.denominator != 1:
                    raise AssertionError(f"non-integral structure constant N({a},{b}) = {v}")
                table[(a, b)] = int(v)
    return table


def structure_constants(datum: RootDatum | str, verify: bool | None = None) -> ChevalleyAlgebra:
    """Chevalley algebra of ``datum``; Jacobi is checked when ``verify`` (default: small types)."""
    if isinstance(datum, str):
        datum = build_root_system(datum)
    alg = ChevalleyAlgebra(datum, _compute_constants(datum))
    if verify is None:
        verify = len(datum.roots) <= JACOBI_CHECK_LIMIT
    if verify:
        bad = jacobi_violation(alg)
        if bad is not None:
            raise AssertionError(f"Jacobi identity fails on basis triple {bad}")
    return alg


def _expand(alg: ChevalleyAlgebra, vec: Mapping[int, int], j: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for k, c in vec.items():
        for t, s in alg.basis_brackets[k][j]:
            out[t] = out.get(t, 0) + c * s
    return out


def jacobi_violation(alg: ChevalleyAlgebra) -> tuple[int, int, int] | None:
    """First basis triple (i, j, k) with [i,[j,k]] + [j,[k,i]] + [k,[i,j]] != 0, or None."""
    dim = alg.dim
    bb = alg.basis_brackets
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                acc: dict[int, int] = {}
                for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                    # [x, [y, z]] = -[[y, z], x]
                    for t, s in _expand(alg, dict(bb[y][z]), x).items():
                        acc[t] = acc.get(t, 0) - s
                if any(acc.values()):
                    return (i, j, k)
    return None


def bracket(alg: ChevalleyAlgebra, u: LieVector, v: LieVector) -> LieVector:
    _ring_tag(list(u.coeffs.values()) + list(v.coeffs.values()))
    out: dict[int, Any] = {}
    bb = alg.basis_brackets
    for i, a in u.coeffs.items():
        for j, b in v.coeffs.items():
            ab = a * b
            for t, s in bb[i][j]:
                term = s * ab
                out[t] = out[t] + term if t in out else term
    return LieVector(out)


def rootgroup_action(alg: ChevalleyAlgebra, root: int, t: Any, v: LieVector) -> LieVector:
    """u_root(t) . v = sum_i (ad t e_root)^i v / i!, with integral divided powers."""
    table = alg.ad_power_table(root)
    out: dict[int, Any] = {}
    for b, c in v.coeffs.items():
        tp = None
        for i, term in enumerate(table[b]):
            tp = c if i == 0 else tp * t
            for k, s in term.items():
                x = s * tp
                out[k] = out[k] + x if k in out else x
    return LieVector(out)


def _power(t: Any, k: int) -> Any:
    if k >= 0:
        return t**k
    if isinstance(t, int):
        return t ** (-k)  # t = +-1
    return (1 / t) ** (-k) if isinstance(t, Fraction) else t**k


def character_value(alg: ChevalleyAlgebra, root: int, ts) -> Any:
    """alpha(t) = prod_i t_i^{<alpha, alpha_i^vee>} for t in the simple-coroot cocharacter basis."""
    d = alg.datum
    val = None
    for i, ti in enumerate(ts):
        k = sum(d.cartan[i][j] * d.roots[root][j] for j in range(d.rank))
        f = _power(ti, k)
        val = f if val is None else val * f
    return val


def torus_action(alg: ChevalleyAlgebra, ts, v: LieVector) -> LieVector:
    d = alg.datum
    if len(ts) != d.rank:
        raise ValueError(f"expected {d.rank} torus entries")
    for t in ts:
        unit = t in (1, -1) if isinstance(t, int) else bool(t)
        if not unit:
            raise ValueError(f"torus entry {t!r} is not a unit")
    out = {}
    for b, c in v.coeffs.items():
        out[b] = c * character_value(alg, b, ts) if b < alg.nroots else c
    return LieVector(out)
