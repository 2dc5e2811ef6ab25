"""Finite fields F_{p^e} for small p and e.

Elements are encoded as integers ``c0 + c1 p + ... + c_{e-1} p^{e-1}``, i.e. the
coefficient tuple of a polynomial in the generator ``t`` read in base p.
The defining polynomials are fixed (table version ``MODULI_VERSION``) so that
encodings, and therefore every emitted report, are reproducible.
"""

from __future__ import annotations

from functools import cached_property, total_ordering

import numpy as np

MODULI_VERSION = 1

# Monic irreducible moduli, coefficients from the constant term upward.  Each is
# the smallest monic irreducible of its degree when read as a base-p integer.
MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (5, 2): (2, 0, 1),
    (5, 3): (1, 1, 0, 1),
    (5, 4): (2, 0, 0, 0, 1),
    (7, 2): (1, 0, 1),
    (7, 3): (2, 0, 0, 1),
    (7, 4): (1, 1, 0, 0, 1),
    (11, 2): (1, 0, 1),
    (11, 3): (4, 1, 0, 1),
    (11, 4): (2, 1, 0, 0, 1),
    (13, 2): (2, 0, 1),
    (13, 3): (2, 0, 0, 1),
    (13, 4): (2, 0, 0, 0, 1),
}

PRIMES = (2, 3, 5, 7, 11, 13)
MAX_DEGREE = 4
_TABLE_LIMIT = 4096

_cache: dict[tuple[int, int], "FiniteField"] = {}


def GF(p: int, e: int = 1) -> "FiniteField":
    """Shared field instance for F_{p^e}."""
    key = (p, e)
    if key not in _cache:
        _cache[key] = FiniteField(p, e)
    return _cache[key]


def field_for_order(q: int) -> "FiniteField":
    for p in PRIMES:
        e, n = 0, 1
        while n < q:
            n *= p
            e += 1
        if n == q and e >= 1:
            return GF(p, e)
    raise ValueError(f"unsupported field order {q}")


def _polymulmod(a, b, mod, p):
    e = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for i in range(e + 1):
                prod[k - e + i] = (prod[k - e + i] - c * mod[i]) % p
    prod = prod[:e] + [0] * max(0, e - len(prod))
    return prod


class FiniteField:
    """F_{p^e} with log/exp tables; elements are :class:`FFElement`."""

    def __init__(self, p: int, e: int = 1):
        if p not in PRIMES:
            raise ValueError(f"unsupported characteristic {p}")
        if not 1 <= e <= MAX_DEGREE:
            raise ValueError(f"unsupported extension degree {e}")
        self.p = p
        self.e = e
        self.q = p**e
        self.characteristic = p
        self.modulus = MODULI[(p, e)] if e > 1 else (0, 1)
        self._build_log_tables()
        self.zero = FFElement(self, 0)
        self.one = FFElement(self, 1)

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (GF, (self.p, self.e))

    # encoding helpers
    def digits(self, code: int) -> tuple[int, ...]:
        p = self.p
        return tuple((code // p**i) % p for i in range(self.e))

    def encode(self, digits) -> int:
        return sum((d % self.p) * self.p**i for i, d in enumerate(digits))

    def _mul_codes_slow(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        return self.encode(_polymulmod(list(self.digits(a)), list(self.digits(b)), self.modulus, self.p))

    def _build_log_tables(self):
        q = self.q
        for g in range(2 if q > 2 else 1, q):
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self._mul_codes_slow(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q - 1:
                break
        else:
            raise AssertionError(f"no primitive element found in GF({q})")
        self.primitive_code = g if q > 2 else 1
        self.exp_table = exp
        self.log_table = {v: i for i, v in enumerate(exp)}

    # scalar code arithmetic
    def add_codes(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        out, k = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * k
            a //= p
            b //= p
            k *= p
        return out

    def neg_code(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        return self.encode(-d for d in self.digits(a))

    def mul_codes(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp_table[-self.log_table[a] % (self.q - 1)]

    # ring interface
    def __call__(self, x) -> "FFElement":
        if isinstance(x, FFElement):
            if x.field is not self:
                raise ValueError(f"{x!r} is not an element of {self}")
            return x
        from fractions import Fraction

        if isinstance(x, Fraction):
            return self(x.numerator) / self(x.denominator)
        return FFElement(self, int(x) % self.p)

    def element(self, code: int) -> "FFElement":
        return FFElement(self, code)

    def contains(self, x) -> bool:
        return isinstance(x, FFElement) and x.field is self

    def is_unit(self, x) -> bool:
        return self(x).code != 0

    def inverse(self, x) -> "FFElement":
        return FFElement(self, self.inv_code(self(x).code))

    @property
    def generator(self) -> "FFElement":
        """Primitive element of the multiplicative group."""
        return FFElement(self, self.primitive_code)

    def elements(self) -> list["FFElement"]:
        return [FFElement(self, c) for c in range(self.q)]

    def additive_basis(self) -> list["FFElement"]:
        """1, t, ..., t^{e-1} (an F_p-basis)."""
        return [FFElement(self, self.p**i) for i in range(self.e)]

    # numpy tables for vectorised scans
    @cached_property
    def add_table(self) -> np.ndarray:
        self._check_table_size()
        q = self.q
        return np.array([[self.add_codes(a, b) for b in range(q)] for a in range(q)], dtype=np.int32)

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._check_table_size()
        q = self.q
        return np.array([[self.mul_codes(a, b) for b in range(q)] for a in range(q)], dtype=np.int32)

    def _check_table_size(self):
        if self.q > _TABLE_LIMIT:
            raise MemoryError(f"GF({self.q}) exceeds the dense table limit {_TABLE_LIMIT}")

    def subfield_embedding(self, sub: "FiniteField") -> list[int]:
        """Codes in ``self`` of the elements of ``sub``, indexed by their code in ``sub``."""
        if sub.p != self.p or self.e % sub.e:
            raise ValueError(f"{sub} is not a subfield of {self}")
        if sub.e == 1:
            return list(range(sub.q))
        # find a root of sub's modulus in self; map t -> root
        root = None
        for c in range(self.q):
            acc = 0
            power = 1
            for coeff in sub.modulus:
                acc = self.add_codes(acc, self.mul_codes(coeff % self.p, power))
                power = self.mul_codes(power, c)
            if acc == 0:
                root = c
                break
        assert root is not None
        table = []
        for code in range(sub.q):
            acc, power = 0, 1
            for d in sub.digits(code):
                acc = self.add_codes(acc, self.mul_codes(d, power))
                power = self.mul_codes(power, root)
            table.append(acc)
        return table


@total_ordering
class FFElement:
    __slots__ = ("field", "code")

    def __init__(self, field: FiniteField, code: int):
        self.field = field
        self.code = code

    def _coerce(self, other) -> int | None:
        if isinstance(other, FFElement):
            if other.field is not self.field:
                raise ValueError(f"cannot combine elements of {self.field} and {other.field}")
            return other.code
        if isinstance(other, int) and not isinstance(other, bool):
            return other % self.field.p
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FFElement(self.field, self.field.add_codes(self.code, c))

    __radd__ = __add__

    def __neg__(self):
        return FFElement(self.field, self.field.neg_code(self.code))

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FFElement(self.field, self.field.add_codes(self.code, self.field.neg_code(c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FFElement(self.field, self.field.mul_codes(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FFElement(self.field, self.field.mul_codes(self.code, self.field.inv_code(c)))

    def __rtruediv__(self, other):
        return self.field(other) / self

    def __pow__(self, k: int):
        if self.code == 0:
            if k < 0:
                raise ZeroDivisionError("zero to a negative power")
            return FFElement(self.field, 1 if k == 0 else 0)
        f = self.field
        return FFElement(f, f.exp_table[(f.log_table[self.code] * k) % (f.q - 1)])

    def __eq__(self, other):
        c = self._coerce(other) if isinstance(other, (FFElement, int)) else None
        return c is not None and c == self.code

    def __lt__(self, other):
        return self.code < other.code

    def __hash__(self):
        return hash((self.field.q, self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        if self.field.e != 1:
            raise TypeError("only prime-field elements convert to int")
        return self.code

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self.field.digits(self.code)

    def __repr__(self):
        if self.field.e == 1:
            return f"{self.code}"
        terms = [
            (f"{c}" if i == 0 else (f"t^{i}" if c == 1 else f"{c}*t^{i}") if i > 1 else ("t" if c == 1 else f"{c}*t"))
            for i, c in enumerate(self.coefficients)
            if c
        ]
        return " + ".join(reversed(terms)) or "0"
