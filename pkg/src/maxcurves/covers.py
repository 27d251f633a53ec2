"""
Riemann-Hurwitz bookkeeping for Galois quotients of the Hermitian curve.

For a subgroup G of automorphisms of order d the ramification divisor has
degree ``sum(i(sigma) for sigma != 1)`` and the quotient genus g' satisfies
``2g(H) - 2 = d (2g' - 2) + deg R``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .autgroup import (
    CATEGORIES,
    StabilizerElement,
    artin_value,
    elements_of_order,
    enumerate_stabilizer,
    identity,
    order,
    quadratic_field,
)
from .curves import genus_hermitian
from .ff import prime_power

DEFAULT_SUBGROUP_CAP = 10_000


class NotASubgroupError(ValueError):
    """Element list is not closed under composition."""


def category_values(Q: int) -> tuple[int, ...]:
    """The i-value of each profile category."""
    return (0, 1, 2, 3, Q + 1, Q + 2)


@dataclass(frozen=True)
class SubgroupWitness:
    elements: tuple
    Q: int

    @property
    def order(self) -> int:
        return len(self.elements)

    @classmethod
    def generate(cls, gens: Sequence, Q: int | None = None, cap: int = DEFAULT_SUBGROUP_CAP) -> SubgroupWitness:
        """Closure of ``gens`` under composition."""
        if not gens:
            raise ValueError("need at least one generator")
        Q = Q or gens[0].Q
        ident = gens[0] * gens[0].inverse()
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    e = h * g
                    if e not in seen:
                        seen.add(e)
                        nxt.append(e)
                        if len(seen) > cap:
                            raise ValueError(f"subgroup larger than cap {cap}")
            frontier = nxt
        return cls(tuple(seen), Q)

    def validate(self) -> None:
        elems = set(self.elements)
        if len(elems) != len(self.elements):
            raise NotASubgroupError("duplicate elements")
        if not any(e.is_identity for e in elems):
            raise NotASubgroupError("identity missing")
        for a in self.elements:
            for b in self.elements:
                if a * b not in elems:
                    raise NotASubgroupError("not closed under composition")


@dataclass(frozen=True)
class RamificationProfile:
    Q: int
    counts: dict = field(default_factory=dict)

    @classmethod
    def from_vector(cls, Q: int, vec: Sequence[int]) -> RamificationProfile:
        return cls(Q, {c: n for c, n in zip(CATEGORIES, vec) if n})

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(self.counts.get(c, 0) for c in CATEGORIES)

    @property
    def u(self) -> int:
        return sum(self.vector[:4])

    @property
    def v(self) -> int:
        return sum(self.vector[4:])

    @property
    def degR(self) -> int:
        return sum(n * i for n, i in zip(self.vector, category_values(self.Q)))

    @property
    def d(self) -> int:
        return 1 + self.u + self.v

    def satisfies_bounds(self) -> bool:
        """v(Q+1) <= deg R <= v(Q+1) + 3u + v."""
        lo = self.v * (self.Q + 1)
        return lo <= self.degR <= lo + 3 * self.u + self.v

    def to_json(self) -> dict:
        return {"n": list(self.vector), "u": self.u, "v": self.v, "degR": self.degR}


def ramification_degree(G: SubgroupWitness, check: bool = True) -> tuple[int, RamificationProfile]:
    if check:
        G.validate()
    counts = Counter(artin_value(g).category for g in G.elements if not g.is_identity)
    prof = RamificationProfile(G.Q, dict(counts))
    return prof.degR, prof


def quotient_genus(G: SubgroupWitness, Q: int | None = None, degR: int | None = None) -> int:
    Q = Q or G.Q
    if degR is None:
        degR, _ = ramification_degree(G)
    d = G.order
    num = (Q - 2) * (Q + 1) - degR
    if num % d or (num // d) % 2:
        raise ValueError(f"inconsistent subgroup data: {num} not divisible by 2*{d}")
    return num // (2 * d) + 1


def gsx_genus(Q: int, d: int) -> int:
    """Genus of the quotient by a subgroup of order d | Q of the translations x -> x + c."""
    if d < 1 or Q % d:
        raise ValueError(f"d={d} does not divide Q={Q}")
    e = Q // d
    twice = (e - 1) * (Q + 1) - (e + 1) + 2
    assert twice % 2 == 0
    return twice // 2


# -- abstract profiles ------------------------------------------------------


def allowed_categories(Q: int, d: int, in_stabilizer: bool = False, order_filter: bool = False) -> tuple[bool, ...]:
    """Which categories may occur in a group of order d.

    With ``order_filter``: elements with i = 1 or Q+2 have order divisible by
    p, those with i = Q+1 have order dividing Q+1, those with i = 3 order
    dividing Q^2 - Q + 1; a category is dropped when d shares no factor with
    the relevant order.
    """
    allow = [True] * 6
    if in_stabilizer:
        allow[0] = allow[3] = False
    if order_filter:
        p = prime_power(Q)[0]
        if d % p:
            allow[1] = allow[5] = False
        if math.gcd(d, Q + 1) == 1:
            allow[4] = False
        if math.gcd(d, Q * Q - Q + 1) == 1:
            allow[3] = False
    return tuple(allow)


def required_degR(Q: int, g_target: int, d: int) -> int:
    return (Q - 2) * (Q + 1) - d * (2 * g_target - 2)


def iter_profiles(Q: int, g_target: int, d: int, in_stabilizer: bool = False, order_filter: bool = False) -> Iterator[tuple[int, ...]]:
    """Vectors (n0, n1, n2, n3, n_{Q+1}, n_{Q+2}) with d-1 entries summing to deg R."""
    R = required_degR(Q, g_target, d)
    total = d - 1
    if R < 0 or total < 0:
        return
    allow = allowed_categories(Q, d, in_stabilizer, order_filter)
    vals = category_values(Q)
    # fill categories from largest value down; each level checks reachability
    order_idx = (5, 4, 3, 2, 1, 0)

    def rec(level: int, count_left: int, r_left: int, acc: dict):
        idx = order_idx[level]
        rest = [j for j in order_idx[level + 1:] if allow[j]]
        if level == 5:
            if not allow[0]:
                if count_left == 0 and r_left == 0:
                    yield tuple(acc.get(j, 0) for j in range(6))
                return
            if r_left == 0:
                acc[0] = count_left
                yield tuple(acc.get(j, 0) for j in range(6))
                acc.pop(0)
            return
        if not allow[idx]:
            yield from rec(level + 1, count_left, r_left, acc)
            return
        v = vals[idx]
        lo_rest = min((vals[j] for j in rest), default=None)
        hi_rest = max((vals[j] for j in rest), default=None)
        for n in range(min(count_left, r_left // v) + 1):
            c, r = count_left - n, r_left - n * v
            if not rest:
                if c == 0 and r == 0:
                    acc[idx] = n
                    yield tuple(acc.get(j, 0) for j in range(6))
                    acc.pop(idx)
                continue
            if r > hi_rest * c or r < lo_rest * c:
                continue
            acc[idx] = n
            yield from rec(level + 1, c, r, acc)
            acc.pop(idx)

    yield from rec(0, total, R, {})


def profile_solutions(Q: int, g_target: int, d: int, in_stabilizer: bool = False, order_filter: bool = False) -> list[RamificationProfile]:
    return [
        RamificationProfile.from_vector(Q, v)
        for v in iter_profiles(Q, g_target, d, in_stabilizer, order_filter)
    ]


def profile_exists(Q: int, g_target: int, d: int, **filters) -> bool:
    return next(iter_profiles(Q, g_target, d, **filters), None) is not None


# -- concrete subgroups -----------------------------------------------------


def translation_kernel(Q: int, spec=None) -> list:
    """The Q elements c with c^Q + c = 0."""
    spec = spec or quadratic_field(Q)
    return [c for c in (spec.from_code(x) for x in spec.subfield_codes(Q * Q).tolist()) if c.pow(Q) + c == spec.zero]


def translation_subgroup(Q: int, d: int, spec=None) -> SubgroupWitness:
    """A subgroup of order d of {[1, 0, c]}, spanned by an F_p-basis prefix of the kernel."""
    spec = spec or quadratic_field(Q)
    p, k = prime_power(Q)
    pd = prime_power(d) if d > 1 else (p, 0)
    if pd is None or pd[0] != p or Q % d:
        raise ValueError(f"d={d} is not a power of p dividing Q={Q}")
    one, zero = spec.one, spec.zero
    gens: list[StabilizerElement] = []
    span = {zero}
    for c in translation_kernel(Q, spec):
        if len(gens) == pd[1]:
            break
        if c in span:
            continue
        gens.append(StabilizerElement(one, zero, c, Q))
        span = {s + c * j for s in span for j in range(p)}
    if not gens:
        return SubgroupWitness((identity(Q, spec),), Q)
    return SubgroupWitness.generate(gens, Q)


def translation_subgroups(Q: int, spec=None) -> list[SubgroupWitness]:
    """Every subgroup of {[1, 0, c]} (all F_p-subspaces of the kernel)."""
    spec = spec or quadratic_field(Q)
    one, zero = spec.one, spec.zero
    kernel = translation_kernel(Q, spec)
    found: dict[frozenset, SubgroupWitness] = {frozenset([zero]): SubgroupWitness((identity(Q, spec),), Q)}
    layer = [frozenset([zero])]
    while layer:
        nxt = []
        for span in layer:
            for c in kernel:
                if c in span:
                    continue
                new = frozenset(s + c * j for s in span for j in range(spec.p))
                if new not in found:
                    found[new] = SubgroupWitness(tuple(StabilizerElement(one, zero, x, Q) for x in new), Q)
                    nxt.append(new)
        layer = nxt
    return list(found.values())


@dataclass
class SearchResult:
    found: bool
    subgroup: SubgroupWitness | None
    generators: tuple
    profile: RamificationProfile | None
    genus: int | None
    log: list[str]


def search_subgroup(Q: int, d: int, target: Sequence[int], genus: int, max_gens: int = 2) -> SearchResult:
    """Look for a subgroup of H of order d whose profile vector equals ``target``.

    Cyclic groups are tried first (generators of order d); pairs of elements
    whose orders divide d are tried next when ``max_gens >= 2``.
    """
    spec = quadratic_field(Q)
    target = tuple(target)
    log = [f"search Q={Q} d={d} target={target} genus={genus}"]
    seen: set[frozenset] = set()
    checked = 0
    for s in elements_of_order(Q, d, spec):
        G = SubgroupWitness.generate([s], Q)
        key = frozenset(G.elements)
        if key in seen:
            continue
        seen.add(key)
        checked += 1
        degR, prof = ramification_degree(G, check=False)
        if prof.vector == target:
            g = quotient_genus(G, Q, degR)
            log.append(f"cyclic subgroup #{checked} generated by {s!r}: profile match, genus {g}")
            if g == genus:
                return SearchResult(True, G, (s,), prof, g, log)
    log.append(f"{checked} cyclic subgroups of order {d} checked, no match")
    if max_gens < 2:
        return SearchResult(False, None, (), None, None, log)
    divisors = [e for e in range(2, d) if d % e == 0]
    small = [s for s in enumerate_stabilizer(Q, spec)
             if not s.is_identity and d % s.a.multiplicative_order() == 0 and order(s) in divisors]
    log.append(f"{len(small)} elements with order a proper divisor of {d}")
    pairs = 0
    for i, s in enumerate(small):
        for t in small[i + 1:]:
            try:
                G = SubgroupWitness.generate([s, t], Q, cap=d)
            except ValueError:
                continue
            if G.order != d:
                continue
            key = frozenset(G.elements)
            if key in seen:
                continue
            seen.add(key)
            pairs += 1
            degR, prof = ramification_degree(G, check=False)
            if prof.vector == target:
                g = quotient_genus(G, Q, degR)
                log.append(f"2-generated subgroup {s!r}, {t!r}: profile match, genus {g}")
                if g == genus:
                    return SearchResult(True, G, (s, t), prof, g, log)
    log.append(f"{pairs} two-generator subgroups of order {d} checked, no match")
    return SearchResult(False, None, (), None, None, log)


def hermitian_genus_check(Q: int, G: SubgroupWitness) -> bool:
    """Riemann-Hurwitz identity for an explicit subgroup."""
    degR, _ = ramification_degree(G)
    g = quotient_genus(G, Q, degR)
    return 2 * genus_hermitian(Q) - 2 == G.order * (2 * g - 2) + degR
