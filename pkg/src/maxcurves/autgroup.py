"""
Automorphisms of the Hermitian curve ``x^Q + x = y^(Q+1)`` and their Artin values.

The stabilizer H of the point at infinity consists of the maps

    [a, b, c]:  (x, y) -> (a^(Q+1) x + a b^Q y + c,  a y + b)

with ``a != 0`` and ``c^Q + c = b^(Q+1)``, all entries in F_{Q^2}.  Elements
of the full group PGU(3, Q) are handled as projective 3x3 matrices acting on
``(X : Y : Z)`` and preserving ``X Z^Q + X^Q Z - Y^(Q+1)``.

For every non-identity automorphism ``i(sigma)`` is computed twice: by the
closed-form case split (:func:`isigma_formula`) and by an oracle that works
from fixed points (:func:`isigma_bruteforce_tame`) or from pole orders at
infinity (:func:`isigma_bruteforce_wild`).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .ff import FieldElement, FieldMismatchError, FieldSpec, galois_field, prime_power

#: Profile categories, in table order.
CATEGORIES = ("0", "1", "2", "3", "Q+1", "Q+2")


class UndefinedArtinValueError(ValueError):
    """The identity has no Artin value."""


class NotUnitaryError(ValueError):
    """Matrix does not preserve the Hermitian form up to a scalar."""


def _split_Q(Q: int) -> tuple[int, int]:
    pk = prime_power(Q)
    if pk is None:
        raise ValueError(f"Q={Q} is not a prime power")
    return pk


def quadratic_field(Q: int) -> FieldSpec:
    """F_{Q^2}, the field of definition of H."""
    p, k = _split_Q(Q)
    return galois_field(p, 2 * k)


def sextic_field(Q: int) -> FieldSpec:
    """F_{Q^6}, large enough to see the degree-three fixed points."""
    p, k = _split_Q(Q)
    return galois_field(p, 6 * k)


def group_order_H(Q: int) -> int:
    return Q**3 * (Q * Q - 1)


def group_order_pgu(Q: int) -> int:
    return Q**3 * (Q**3 + 1) * (Q * Q - 1) // math.gcd(3, Q + 1)


# -- embeddings between fields of one characteristic ------------------------


@lru_cache(maxsize=None)
def _embedding_root(src: FieldSpec, dst: FieldSpec) -> int:
    """Code in ``dst`` of a root of ``src.modulus`` (smallest code)."""
    if src.p != dst.p or dst.m % src.m:
        raise ValueError(f"{src!r} does not embed in {dst!r}")
    ops = dst.ops
    cand = dst.subfield_codes(src.order)
    val = np.zeros_like(cand)
    for c in reversed(src.modulus):
        val = ops.add(ops.mul(val, cand), c % dst.p)
    roots = cand[val == 0]
    return int(roots.min())


def embed(v: FieldElement, dst: FieldSpec) -> FieldElement:
    """Image of ``v`` under a fixed embedding of its field into ``dst``."""
    if v.spec == dst:
        return v
    r = dst.from_code(_embedding_root(v.spec, dst))
    out = dst.zero
    power = dst.one
    for c in v.coeffs:
        if c:
            out = out + power * c
        power = power * r
    return out


# -- the curve --------------------------------------------------------------


@lru_cache(maxsize=None)
def hermitian_points(spec: FieldSpec, Q: int, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Affine points of ``x^Q + x = y^(Q+1)`` with coordinates in F_size.

    Returned as two aligned code arrays (xs, ys) inside ``spec``.
    """
    ops = spec.ops
    sub = spec.subfield_codes(size)
    tr = ops.add(ops.pow(sub, Q), sub)
    nm = ops.pow(sub, Q + 1)
    by_value: dict[int, list[int]] = {}
    for x, t in zip(sub.tolist(), tr.tolist()):
        by_value.setdefault(t, []).append(x)
    xs, ys = [], []
    for y, w in zip(sub.tolist(), nm.tolist()):
        for x in by_value.get(w, ()):
            xs.append(x)
            ys.append(y)
    return np.array(xs, dtype=np.int64), np.array(ys, dtype=np.int64)


# -- the stabilizer H -------------------------------------------------------


@dataclass(frozen=True)
class StabilizerElement:
    """The automorphism [a, b, c] of the Hermitian curve fixing P_inf."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    Q: int

    def __post_init__(self):
        spec = self.a.spec
        if self.b.spec != spec or self.c.spec != spec:
            raise ValueError("entries of [a,b,c] must share a field")
        if self.a.is_zero():
            raise ValueError("a must be nonzero")
        Q = self.Q
        if not all(v.in_subfield(Q * Q) for v in (self.a, self.b, self.c)):
            raise ValueError(f"entries must lie in F_{Q * Q}")
        if self.c.pow(Q) + self.c != self.b.pow(Q + 1):
            raise ValueError("c^Q + c != b^(Q+1)")

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    def __repr__(self):
        return f"[{list(self.a.coeffs)},{list(self.b.coeffs)},{list(self.c.coeffs)}]"

    @property
    def is_identity(self) -> bool:
        return self.a.code == 1 and self.b.is_zero() and self.c.is_zero()

    @property
    def is_wild(self) -> bool:
        return self.a.code == 1

    def __mul__(self, other: StabilizerElement) -> StabilizerElement:
        return compose(self, other)

    def inverse(self) -> StabilizerElement:
        Q = self.Q
        ai = self.a.inv()
        bi = -(ai * self.b)
        ci = -(ai.pow(Q + 1) * self.c + ai * bi.pow(Q) * self.b)
        return StabilizerElement(ai, bi, ci, Q)

    def __pow__(self, k: int) -> StabilizerElement:
        if k < 0:
            return self.inverse() ** (-k)
        result = identity(self.Q, self.spec)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def apply(self, x: FieldElement, y: FieldElement) -> tuple[FieldElement, FieldElement]:
        a, b, c, Q = self.a, self.b, self.c, self.Q
        return a.pow(Q + 1) * x + a * b.pow(Q) * y + c, a * y + b

    def embed(self, spec: FieldSpec) -> StabilizerElement:
        return StabilizerElement(embed(self.a, spec), embed(self.b, spec), embed(self.c, spec), self.Q)


def identity(Q: int, spec: FieldSpec | None = None) -> StabilizerElement:
    spec = spec or quadratic_field(Q)
    return StabilizerElement(spec.one, spec.zero, spec.zero, Q)


def compose(s1: StabilizerElement, s2: StabilizerElement) -> StabilizerElement:
    """``s1 o s2``: apply s2 first, then s1."""
    if s1.spec != s2.spec or s1.Q != s2.Q:
        raise FieldMismatchError("stabilizer elements over different fields")
    Q = s1.Q
    a1, b1, c1 = s1.a, s1.b, s1.c
    a2, b2, c2 = s2.a, s2.b, s2.c
    a = a1 * a2
    b = a1 * b2 + b1
    c = a1.pow(Q + 1) * c2 + a1 * b1.pow(Q) * b2 + c1
    return StabilizerElement(a, b, c, Q)


def order(s: StabilizerElement) -> int:
    """Least k >= 1 with s^k = 1.

    The torus part forces ``ord(a) | k``; the rest is found by iterating
    ``s^ord(a)``, which lies in the Sylow p-subgroup.
    """
    oa = s.a.multiplicative_order()
    t = s**oa
    k = 1
    cur = t
    bound = group_order_H(s.Q)
    while not cur.is_identity:
        cur = cur * t
        k += 1
        if k > bound:
            raise AssertionError("order exceeds |H|")
    return oa * k


def order_naive(s: StabilizerElement) -> int:
    """Order by plain iterated composition."""
    k, cur = 1, s
    while not cur.is_identity:
        cur = cur * s
        k += 1
    return k


def enumerate_stabilizer(Q: int, spec: FieldSpec | None = None, max_order: int = 10**6) -> Iterator[StabilizerElement]:
    """All Q^3 (Q^2 - 1) elements of H, a slowest and c fastest."""
    if group_order_H(Q) > max_order:
        from .curves import BudgetExceededError

        raise BudgetExceededError(f"|H| = {group_order_H(Q)} exceeds budget {max_order}")
    spec = spec or quadratic_field(Q)
    ops = spec.ops
    sub = spec.subfield_codes(Q * Q)
    tr = ops.add(ops.pow(sub, Q), sub)
    fiber: dict[int, list[int]] = {}
    for c, t in zip(sub.tolist(), tr.tolist()):
        fiber.setdefault(t, []).append(c)
    bc = [(spec.from_code(b), [spec.from_code(c) for c in fiber[int(ops.pow(b, Q + 1))]]) for b in sub.tolist()]
    for acode in sub.tolist():
        if acode == 0:
            continue
        a = spec.from_code(acode)
        for b, cs in bc:
            for c in cs:
                yield StabilizerElement(a, b, c, Q)


# -- Artin values -----------------------------------------------------------


@dataclass(frozen=True)
class ArtinValue:
    value: int
    case_tag: str
    category: str

    def to_json(self) -> dict:
        return {"i": self.value, "case_tag": self.case_tag, "category": self.category}


def isigma_formula(s: StabilizerElement) -> ArtinValue:
    """i(sigma) from the case split on a, b, c and the element order."""
    if s.is_identity:
        raise UndefinedArtinValueError("i(sigma) is only defined for sigma != 1")
    Q = s.Q
    if s.is_wild:
        if not s.b.is_zero():
            return ArtinValue(2, "wild:b!=0", "2")
        return ArtinValue(Q + 2, "wild:b=0,c!=0", "Q+2")
    p = s.spec.p
    o = order(s)
    if o % p == 0:
        return ArtinValue(1, "tame:p|ord", "1")
    if (Q + 1) % o == 0:
        return ArtinValue(Q + 1, "tame:ord|Q+1", "Q+1")
    return ArtinValue(2, "tame:other", "2")


def isigma_bruteforce_tame(s: StabilizerElement) -> int:
    """Number of F_{Q^2}-rational points fixed by s, P_inf included."""
    if s.is_identity:
        raise UndefinedArtinValueError("i(sigma) is only defined for sigma != 1")
    if s.is_wild:
        raise ValueError("wild element passed to the tame oracle")
    spec, Q = s.spec, s.Q
    ops = spec.ops
    xs, ys = hermitian_points(spec, Q, Q * Q)
    a, b, c = s.a.code, s.b.code, s.c.code
    aq1 = s.a.pow(Q + 1).code
    abq = (s.a * s.b.pow(Q)).code
    nx = ops.add(ops.add(ops.mul(aq1, xs), ops.mul(abq, ys)), c)
    ny = ops.add(ops.mul(a, ys), b)
    return int(np.count_nonzero((nx == xs) & (ny == ys))) + 1


def isigma_bruteforce_wild(s: StabilizerElement) -> int:
    """i(sigma) = v(-b^Q y^2 + b x - c y) + 2(Q+1) at P_inf, with t = y/x.

    v(x) = -(Q+1) and v(y) = -Q, so the three monomials have valuations
    -2Q, -(Q+1), -Q; these are distinct, hence the valuation of the sum is
    the smallest valuation among the nonzero monomials.
    """
    if not s.is_wild:
        raise ValueError("tame element passed to the wild oracle")
    if s.is_identity:
        raise UndefinedArtinValueError("i(sigma) is only defined for sigma != 1")
    Q = s.Q
    vx, vy = -(Q + 1), -Q
    monomials = [(s.b, 2 * vy), (s.b, vx), (s.c, vy)]
    vals = [v for coeff, v in monomials if not coeff.is_zero()]
    assert len({2 * vy, vx, vy}) == 3
    return min(vals) + 2 * (Q + 1)


def isigma_oracle(s: StabilizerElement) -> int:
    return isigma_bruteforce_wild(s) if s.is_wild else isigma_bruteforce_tame(s)


# -- PGU(3, Q) as projective matrices ---------------------------------------


def _mat_mul(A, B):
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(3)), A[0][0].spec.zero) for j in range(3))
        for i in range(3)
    )


def _det(M) -> FieldElement:
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )


def _normalize(M):
    for row in M:
        for v in row:
            if not v.is_zero():
                inv = v.inv()
                return tuple(tuple(e * inv for e in r) for r in M)
    raise ValueError("zero matrix")


@dataclass(frozen=True)
class PGUElement:
    """A projective unitary 3x3 matrix, scaled so its first nonzero entry is 1."""

    rows: tuple
    Q: int

    @classmethod
    def from_rows(cls, rows, Q: int, check: bool = True) -> PGUElement:
        rows = tuple(tuple(r) for r in rows)
        if _det(rows).is_zero():
            raise NotUnitaryError("singular matrix")
        el = cls(_normalize(rows), Q)
        if check and not is_unitary(el.rows, Q):
            raise NotUnitaryError("matrix does not preserve the Hermitian form")
        return el

    @property
    def spec(self) -> FieldSpec:
        return self.rows[0][0].spec

    def __mul__(self, other: PGUElement) -> PGUElement:
        return PGUElement(_normalize(_mat_mul(self.rows, other.rows)), self.Q)

    @property
    def is_identity(self) -> bool:
        return all(
            (self.rows[i][j].code == 1) if i == j else self.rows[i][j].is_zero()
            for i in range(3)
            for j in range(3)
        )

    def inverse(self) -> PGUElement:
        M = self.rows
        cof = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                r = [k for k in range(3) if k != i]
                c = [k for k in range(3) if k != j]
                minor = M[r[0]][c[0]] * M[r[1]][c[1]] - M[r[0]][c[1]] * M[r[1]][c[0]]
                cof[j][i] = minor if (i + j) % 2 == 0 else -minor
        return PGUElement(_normalize(cof), self.Q)

    def __pow__(self, k: int) -> PGUElement:
        if k < 0:
            return self.inverse() ** (-k)
        result = pgu_identity(self.Q, self.spec)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def embed(self, spec: FieldSpec) -> PGUElement:
        return PGUElement(tuple(tuple(embed(v, spec) for v in r) for r in self.rows), self.Q)

    def order(self) -> int:
        k, cur = 1, self
        bound = group_order_pgu(self.Q)
        while not cur.is_identity:
            cur = cur * self
            k += 1
            if k > bound:
                raise AssertionError("order exceeds |PGU(3,Q)|")
        return k


def pgu_identity(Q: int, spec: FieldSpec | None = None) -> PGUElement:
    spec = spec or quadratic_field(Q)
    o, z = spec.one, spec.zero
    return PGUElement(((o, z, z), (z, o, z), (z, z, o)), Q)


def is_unitary(M, Q: int) -> bool:
    """``M^T J M^(Q) = lambda J`` for the form X Z^Q + Z X^Q - Y Y^Q, entries in F_{Q^2}."""
    spec = M[0][0].spec
    if not all(v.in_subfield(Q * Q) for r in M for v in r):
        return False
    o, z = spec.one, spec.zero
    J = ((z, z, o), (z, -o, z), (o, z, z))
    Mt = tuple(tuple(M[j][i] for j in range(3)) for i in range(3))
    Mq = tuple(tuple(v.pow(Q) for v in r) for r in M)
    G = _mat_mul(_mat_mul(Mt, J), Mq)
    lam = G[0][2]
    if lam.is_zero():
        return False
    return all(G[i][j] == lam * J[i][j] for i in range(3) for j in range(3))


def stabilizer_matrix(s: StabilizerElement) -> PGUElement:
    a, b, c, Q = s.a, s.b, s.c, s.Q
    o, z = s.spec.one, s.spec.zero
    rows = ((a.pow(Q + 1), a * b.pow(Q), c), (z, a, b), (z, z, o))
    return PGUElement(_normalize(rows), Q)


def swap_matrix(Q: int, spec: FieldSpec | None = None) -> PGUElement:
    """The involution (X : Y : Z) -> (Z : Y : X), exchanging P_inf and the origin."""
    spec = spec or quadratic_field(Q)
    o, z = spec.one, spec.zero
    return PGUElement(((z, z, o), (z, o, z), (o, z, z)), Q)


def stabilizer_from_matrix(M: PGUElement) -> StabilizerElement:
    """Read [a, b, c] off a matrix that fixes P_inf."""
    rows = M.rows
    if not (rows[1][0].is_zero() and rows[2][0].is_zero() and rows[2][1].is_zero()):
        raise ValueError("matrix does not fix P_inf")
    scale = rows[2][2].inv()
    r = [[v * scale for v in row] for row in rows]
    s = StabilizerElement(r[1][1], r[1][2], r[0][2], M.Q)
    if r[0][0] != s.a.pow(M.Q + 1) or r[0][1] != s.a * s.b.pow(M.Q):
        raise NotUnitaryError("upper-triangular matrix is not of the form [a,b,c]")
    return s


def random_pgu(Q: int, rng: random.Random, spec: FieldSpec | None = None, length: int = 6) -> PGUElement:
    """A random word in the swap involution and random elements of H."""
    spec = spec or quadratic_field(Q)
    W = swap_matrix(Q, spec)
    result = pgu_identity(Q, spec)
    for _ in range(length):
        result = result * stabilizer_matrix(random_stabilizer(Q, rng, spec)) * W
    return result


def random_stabilizer(Q: int, rng: random.Random, spec: FieldSpec | None = None) -> StabilizerElement:
    spec = spec or quadratic_field(Q)
    sub = spec.subfield_codes(Q * Q).tolist()
    ops = spec.ops
    a = spec.from_code(rng.choice(sub[1:]))
    b = spec.from_code(rng.choice(sub))
    w = int(ops.pow(b.code, Q + 1))
    cs = [c for c in sub if int(ops.add(ops.pow(c, Q), c)) == w]
    return StabilizerElement(a, b, spec.from_code(rng.choice(cs)), Q)


# -- classification of arbitrary group elements -----------------------------


@dataclass(frozen=True)
class Classification:
    fixed_class: str  # "degree-one", "degree-three" or "none"
    artin: ArtinValue
    rational_fixed: int
    sextic_fixed: int

    @property
    def value(self) -> int:
        return self.artin.value


def _fixed_affine(M, xs, ys, ops) -> np.ndarray:
    m = [[v.code for v in row] for row in M]
    ux = ops.add(ops.add(ops.mul(m[0][0], xs), ops.mul(m[0][1], ys)), m[0][2])
    uy = ops.add(ops.add(ops.mul(m[1][0], xs), ops.mul(m[1][1], ys)), m[1][2])
    uz = ops.add(ops.add(ops.mul(m[2][0], xs), ops.mul(m[2][1], ys)), m[2][2])
    return (ux == ops.mul(uz, xs)) & (uy == ops.mul(uz, ys))


def classify_general(M: PGUElement) -> Classification:
    """i(sigma) for any non-identity element of PGU(3, Q).

    A rational fixed point is moved to P_inf by conjugation and the element
    is handed to :func:`isigma_formula`.  Otherwise fixed points over
    F_{Q^6} are located: one Frobenius orbit of three gives i = 3, none
    gives i = 0.
    """
    Q = M.Q
    if not is_unitary(M.rows, Q):
        raise NotUnitaryError("matrix does not preserve the Hermitian form")
    if M.is_identity:
        raise UndefinedArtinValueError("i(sigma) is only defined for sigma != 1")
    big = sextic_field(Q)
    Mb = M.embed(big)
    ops = big.ops
    rows = Mb.rows
    inf_fixed = rows[1][0].is_zero() and rows[2][0].is_zero()

    xs, ys = hermitian_points(big, Q, Q * Q)
    hit = _fixed_affine(rows, xs, ys, ops)
    rational = int(np.count_nonzero(hit)) + int(inf_fixed)
    xs6, ys6 = hermitian_points(big, Q, Q**6)
    hit6 = _fixed_affine(rows, xs6, ys6, ops)
    sextic = int(np.count_nonzero(hit6)) + int(inf_fixed)

    if rational:
        if inf_fixed:
            conj = Mb
        else:
            k = int(np.flatnonzero(hit)[0])
            x0, y0 = big.from_code(xs[k]), big.from_code(ys[k])
            T = stabilizer_matrix(StabilizerElement(big.one, y0, x0, Q))
            tau = swap_matrix(Q, big) * T.inverse()
            conj = tau * Mb * tau.inverse()
        s = stabilizer_from_matrix(conj)
        return Classification("degree-one", isigma_formula(s), rational, sextic)

    if sextic == 0:
        return Classification("none", ArtinValue(0, "fixed-point-free", "0"), 0, 0)

    # points fixed over F_{Q^6} only: must be a single Frobenius orbit of size 3
    pts = set(zip(xs6[hit6].tolist(), ys6[hit6].tolist()))
    if len(pts) != 3:
        raise AssertionError(f"expected 3 fixed points over F_(Q^6), found {len(pts)}")
    start = next(iter(pts))
    orbit = {start}
    cur = start
    for _ in range(2):
        cur = tuple(int(ops.pow(v, Q * Q)) for v in cur)
        orbit.add(cur)
    if orbit != pts:
        raise AssertionError("fixed points do not form one Frobenius orbit")
    return Classification("degree-three", ArtinValue(3, "degree-three", "3"), 0, 3)


def artin_value(g) -> ArtinValue:
    """Artin value of a stabilizer element or a general PGU element."""
    if isinstance(g, StabilizerElement):
        return isigma_formula(g)
    return classify_general(g).artin


def elements_of_order(Q: int, target: int, spec: FieldSpec | None = None) -> Iterator[StabilizerElement]:
    """Elements of H of the given order, pruning by the order of a."""
    spec = spec or quadratic_field(Q)
    for s in enumerate_stabilizer(Q, spec):
        if target % s.a.multiplicative_order():
            continue
        if order(s) == target:
            yield s
