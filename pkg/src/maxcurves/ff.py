"""
Exact arithmetic in small finite fields F_{p^m}.

Elements are stored as an integer code ``sum(c_i * p**i)`` over the
coefficient vector ``(c_0, ..., c_{m-1})`` of a polynomial reduced modulo a
fixed irreducible modulus.  Scalar arithmetic goes through exp/log (Zech)
tables built once per field; the same tables back the vectorised numpy
routines in :class:`ArrayOps` that drive exhaustive point counts.

The schoolbook polynomial routines (``poly_*``) are kept independent of the
tables and serve as the reference path.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

import numpy as np

#: Fields above this size get no exp/log tables and use polynomial arithmetic.
TABLE_LIMIT = 1 << 22


class FieldMismatchError(ValueError):
    """Operands belong to different fields."""


# -- integers ---------------------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``n == p**k``, or None if n is not a prime power."""
    if n < 2:
        return None
    fac = factorize(n)
    if len(fac) != 1:
        return None
    ((p, k),) = fac.items()
    return p, k


# -- polynomials over F_p (coefficient lists, constant term first) ----------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    f = _trim([c % p for c in f])
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - coef * fc) % p
        _trim(a)
    return a


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_mulmod(a, b, f, p) -> list[int]:
    return poly_mod(poly_mul(a, b, p), f, p)


def poly_powmod(a, e: int, f, p) -> list[int]:
    result = [1]
    base = poly_mod(a, f, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        e >>= 1
    return poly_mod(result, f, p)


def poly_sub(a, b, p) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def poly_gcd(a, b, p) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    f = _trim([c % p for c in f])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    # cheap rejection: a root in F_p means a linear factor
    for r in range(p):
        if sum(c * pow(r, i, p) for i, c in enumerate(f)) % p == 0:
            return False
    x = [0, 1]
    if poly_sub(poly_powmod(x, p**m, f, p), x, p):
        return False
    for r in factorize(m):
        h = poly_sub(poly_powmod(x, p ** (m // r), f, p), x, p)
        if len(poly_gcd(f, h, p)) != 1:
            return False
    return True


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """
    Lexicographically smallest monic irreducible polynomial of degree m over F_p.

    Candidates are ordered by ``(c_0, c_1, ..., c_{m-1})`` with the constant
    term most significant.  The returned tuple includes the leading 1.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("degree must be at least 1")
    for low in itertools.product(range(p), repeat=m):
        f = list(low) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("unreachable: irreducibles exist in every degree")


# -- fields -----------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """The field F_p[x]/(modulus) with ``p**m`` elements."""

    p: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.m < 1 or len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise ValueError("modulus coefficients must lie in [0, p)")
        if not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over F_{self.p}")

    @property
    def order(self) -> int:
        return self.p**self.m

    def __repr__(self):
        return f"GF({self.p}^{self.m})"

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    # construction helpers

    def __call__(self, value: int | Sequence[int] = 0) -> FieldElement:
        """Element from a coefficient vector or from an integer.

        Integers are read as prime-field scalars; use :meth:`from_code` for the
        packed representation.
        """
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, int(value) % self.p)
        coeffs = list(value)
        if len(coeffs) > self.m:
            coeffs = poly_mod(coeffs, self.modulus, self.p)
        return FieldElement(self, self._encode(coeffs))

    def from_code(self, code: int) -> FieldElement:
        code = int(code)
        if not 0 <= code < self.order:
            raise ValueError(f"code {code} out of range for {self!r}")
        return FieldElement(self, code)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The class of x."""
        return self([0, 1])

    def elements(self) -> Iterator[FieldElement]:
        return enumerate_field(self)

    # encoding

    def _encode(self, coeffs: Sequence[int]) -> int:
        code = 0
        for c in reversed(list(coeffs)):
            code = code * self.p + (c % self.p)
        return code

    def _decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    # tables

    @cached_property
    def primitive_code(self) -> int:
        """Code of the smallest primitive element."""
        n = self.order - 1
        if n == 1:
            return 1
        exps = [n // r for r in factorize(n)]
        for code in range(2, self.order):
            g = list(self._decode(code))
            if all(poly_powmod(g, e, self.modulus, self.p) != [1] for e in exps):
                return code
        raise AssertionError("no primitive element found")

    @cached_property
    def ops(self) -> ArrayOps:
        if self.order > TABLE_LIMIT:
            raise ValueError(f"{self!r} is too large for table arithmetic")
        return ArrayOps(self)

    @property
    def has_tables(self) -> bool:
        return self.order <= TABLE_LIMIT

    def subfield_codes(self, size: int) -> np.ndarray:
        """Codes of the subfield with ``size`` elements, sorted."""
        pk = prime_power(size)
        if pk is None or pk[0] != self.p or self.m % pk[1]:
            raise ValueError(f"{self!r} has no subfield of size {size}")
        n = self.order - 1
        step = n // (size - 1)
        codes = self.ops.exp[np.arange(0, n, step)]
        return np.sort(np.concatenate([[0], codes]))

    def contains_subfield(self, size: int) -> bool:
        pk = prime_power(size)
        return pk is not None and pk[0] == self.p and self.m % pk[1] == 0


@lru_cache(maxsize=None)
def galois_field(p: int, m: int) -> FieldSpec:
    """The field F_{p^m} with the canonical (smallest irreducible) modulus."""
    return FieldSpec(p, m, find_irreducible(p, m))


def field_of_order(order: int) -> FieldSpec:
    pk = prime_power(order)
    if pk is None:
        raise ValueError(f"{order} is not a prime power")
    return galois_field(*pk)


def enumerate_field(spec: FieldSpec) -> Iterator[FieldElement]:
    """All elements in coefficient-lexicographic order (highest coefficient slowest)."""
    for code in range(spec.order):
        yield FieldElement(spec, code)


class ArrayOps:
    """Vectorised arithmetic on integer codes of one field.

    All methods accept numpy integer arrays (or Python ints) of codes and
    return int64 arrays of codes.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.n = spec.order - 1
        self.exp, self.log = self._build_tables()
        # zech[k] = log(1 + g^k), or -1 when 1 + g^k = 0
        self.zech = self._build_zech()

    def _build_tables(self) -> tuple[np.ndarray, np.ndarray]:
        spec, p, m = self.spec, self.spec.p, self.spec.m
        order = spec.order
        # matrix of multiplication by g on coefficient vectors
        g = spec._decode(spec.primitive_code)
        cols = []
        for j in range(m):
            basis = [0] * j + [1]
            prod = poly_mulmod(list(g), basis, spec.modulus, p)
            cols.append(prod + [0] * (m - len(prod)))
        mg = np.array(cols, dtype=np.int64).T % p
        n = order - 1
        block = min(n, 512)
        vecs = np.zeros((n, m), dtype=np.int64)
        vecs[0, 0] = 1
        for i in range(1, block):
            vecs[i] = mg @ vecs[i - 1] % p
        step = np.eye(m, dtype=np.int64)
        for _ in range(block):
            step = mg @ step % p
        start = block
        while start < n:
            stop = min(start + block, n)
            vecs[start:stop] = vecs[start - block:stop - block] @ step.T % p
            start = stop
        weights = p ** np.arange(m, dtype=np.int64)
        exp = vecs @ weights
        log = np.full(order, -1, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        if len(set(exp.tolist())) != n:
            raise AssertionError("generator is not primitive")
        return exp, log

    def _build_zech(self) -> np.ndarray:
        p = self.p
        plus_one = np.where(self.exp % p == p - 1, self.exp - (p - 1), self.exp + 1)
        return self.log[plus_one]

    # scalar-or-array helpers

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        la, lb = self.log[a], self.log[b]
        z = self.zech[(lb - la) % self.n]
        s = np.where(z < 0, 0, self.exp[(la + z) % self.n])
        return np.where(a == 0, b, np.where(b == 0, a, s))

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        half = self.n // 2
        return np.where(a == 0, 0, self.exp[(self.log[a] + half) % self.n])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        prod = self.exp[(self.log[a] + self.log[b]) % self.n]
        return np.where((a == 0) | (b == 0), 0, prod)

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        r = self.exp[(self.log[a] * (e % self.n)) % self.n]
        return np.where(a == 0, 0, r)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(-self.log[a]) % self.n]

    def scalar(self, k: int) -> int:
        """Code of the prime-field scalar k."""
        return k % self.p


@dataclass(frozen=True, slots=True)
class FieldElement:
    """An element of ``spec``, stored as its packed coefficient code."""

    spec: FieldSpec
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec._decode(self.code)

    def __repr__(self):
        return f"{self.spec!r}{list(self.coeffs)}"

    def __int__(self):
        return self.code

    def __bool__(self):
        return self.code != 0

    def is_zero(self) -> bool:
        return self.code == 0

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatchError(f"{self.spec!r} vs {other.spec!r}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.spec(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        spec = self.spec
        if spec.p == 2:
            return FieldElement(spec, self.code ^ other.code)
        if spec.has_tables:
            return FieldElement(spec, int(spec.ops.add(self.code, other.code)))
        return spec([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        spec = self.spec
        if spec.p == 2 or self.code == 0:
            return self
        return spec([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        spec = self.spec
        if self.code == 0 or other.code == 0:
            return spec.zero
        if spec.has_tables:
            ops = spec.ops
            return FieldElement(spec, int(ops.exp[(ops.log[self.code] + ops.log[other.code]) % ops.n]))
        return spec(poly_mulmod(list(self.coeffs), list(other.coeffs), spec.modulus, spec.p))

    __rmul__ = __mul__

    def inv(self) -> FieldElement:
        if self.code == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(self.spec.order - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def pow(self, e: int) -> FieldElement:
        """Power with ``0**0 == 1``."""
        if e < 0:
            return self.inv().pow(-e)
        spec = self.spec
        if e == 0:
            return spec.one
        if self.code == 0:
            return spec.zero
        if spec.has_tables:
            ops = spec.ops
            return FieldElement(spec, int(ops.exp[(int(ops.log[self.code]) * e) % ops.n]))
        result = spec.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    __pow__ = pow

    def frobenius(self, r: int) -> FieldElement:
        """``self ** r`` for r a power of the characteristic."""
        pk = prime_power(r) if r > 1 else (self.spec.p, 0)
        if r != 1 and (pk is None or pk[0] != self.spec.p):
            raise ValueError(f"{r} is not a power of {self.spec.p}")
        return self.pow(r)

    def multiplicative_order(self) -> int:
        if self.code == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.spec.order - 1
        if self.spec.has_tables:
            return n // math.gcd(int(self.spec.ops.log[self.code]), n)
        order = n
        for r in factorize(n):
            while order % r == 0 and self.pow(order // r).code == 1:
                order //= r
        return order

    def in_subfield(self, size: int) -> bool:
        """True when the element lies in the subfield with ``size`` elements."""
        return self.pow(size) == self


def rel_norm(v: FieldElement, Q: int) -> FieldElement:
    """Norm ``v**(Q+1)`` from F_{Q^2} down to F_Q."""
    _check_quadratic(v, Q)
    return v.pow(Q + 1)


def rel_trace(v: FieldElement, Q: int) -> FieldElement:
    """Trace ``v**Q + v`` from F_{Q^2} down to F_Q."""
    _check_quadratic(v, Q)
    return v.pow(Q) + v


def _check_quadratic(v: FieldElement, Q: int) -> None:
    if not v.spec.contains_subfield(Q * Q):
        raise ValueError(f"{v.spec!r} does not contain F_{Q * Q}")
    if not v.in_subfield(Q * Q):
        raise ValueError(f"{v!r} is not in F_{Q * Q}")
