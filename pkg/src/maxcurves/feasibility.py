"""
Which degrees d can a Galois covering H_Q -> Y of a genus-g maximal curve have?

Everything here is exact integer arithmetic.  A genus is written as
``2g - 2 = A (Q+1) - B`` with ``1 <= B <= Q+1`` and ``k`` the largest integer
with ``k (A+1) < B``; the lower bounds, the Hurwitz upper bound and the
ramification budget ``deg R = R0 (Q+1) + R1`` are all phrased in (A, B, k).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .autgroup import group_order_pgu
from .covers import profile_exists, required_degR
from .curves import genus_ggk, genus_hermitian, genus_xn, genus_yrem


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class GenusClass:
    Q: int
    g: int
    A: int
    B: int
    k: int


def genus_class(Q: int, g: int) -> GenusClass:
    t = 2 * g - 2
    A = t // (Q + 1) + 1
    B = A * (Q + 1) - t
    assert 1 <= B <= Q + 1
    k = (B - 1) // (A + 1) if A + 1 > 0 else 0
    return GenusClass(Q, g, A, B, k)


def hurwitz_upper(Q: int, g: int) -> int:
    if g <= 1:
        raise ValueError("Hurwitz upper bound needs g >= 2")
    return (Q - 2) * (Q + 1) // (2 * g - 2)


def splitting_lower(Q: int, g: int) -> int:
    return ceil_div(Q**3 + 1, Q * Q + 1 + 2 * g * Q)


def lemcov_lower(gc: GenusClass) -> int | None:
    """ceil((Q + k) / (A + 1)), or None when B = A + 2."""
    if gc.B == gc.A + 2 or gc.A + 1 <= 0 or not gc.k * (gc.A + 1) < gc.B:
        return None
    return ceil_div(gc.Q + gc.k, gc.A + 1)


def lemcov_corollary(gc: GenusClass, d: int) -> bool | None:
    """d (A+1) >= Q+1, applicable for B > A + 2."""
    if gc.B <= gc.A + 2:
        return None
    return d * (gc.A + 1) >= gc.Q + 1


def proplb_lower(gc: GenusClass) -> int | None:
    """ceil((k+1)(Q+1) / B) for B > A + 2, else None."""
    if gc.B <= gc.A + 2:
        return None
    return ceil_div((gc.k + 1) * (gc.Q + 1), gc.B)


@dataclass(frozen=True)
class RamificationBudget:
    R0: int
    R1: int
    Q: int

    @property
    def degR(self) -> int:
        return self.R0 * (self.Q + 1) + self.R1


def ramification_budget(gc: GenusClass, d: int) -> RamificationBudget:
    if d < 1:
        raise ValueError("d must be positive")
    Q = gc.Q
    budget = RamificationBudget(Q - 2 - d * gc.A + gc.k, d * gc.B - gc.k * (Q + 1), Q)
    assert budget.degR == (Q - 2) * (Q + 1) - d * (2 * gc.g - 2)
    return budget


def budget_inequality(gc: GenusClass, d: int) -> bool:
    """k (R0 - d) + (R1 - d) >= k (k - 3)."""
    b = ramification_budget(gc, d)
    return gc.k * (b.R0 - d) + (b.R1 - d) >= gc.k * (gc.k - 3)


#: pruning layers in the order they are applied
LAYERS = ("splitting", "lemcov", "proplb", "hurwitz", "budget", "group-order", "profile")


@dataclass
class FeasibilityReport:
    Q: int
    g: int
    genus_class: GenusClass
    lower_hurwitz: int
    lower_lemcov: int | None
    lower_proplb: int | None
    upper: int | None
    feasible: list[int] = field(default_factory=list)
    eliminated: list[dict] = field(default_factory=list)
    theorem_tag: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def lower(self) -> int:
        return max(b for b in (self.lower_hurwitz, self.lower_lemcov, self.lower_proplb, 1) if b is not None)

    @property
    def interval(self) -> tuple[int, int | None]:
        return self.lower, self.upper

    def to_json(self) -> dict:
        gc = self.genus_class
        return {
            "Q": self.Q,
            "genus": self.g,
            "A": gc.A,
            "B": gc.B,
            "k": gc.k,
            "bounds": {
                "splitting": self.lower_hurwitz,
                "lemcov": self.lower_lemcov,
                "proplb": self.lower_proplb,
                "lower": self.lower,
                "hurwitz_upper": self.upper,
            },
            "feasible": list(self.feasible),
            "eliminated": list(self.eliminated),
            "theorem": self.theorem_tag,
            "notes": list(self.notes),
        }


def family_genus(family: str, q: int, n: int) -> int:
    if family == "ggk":
        return genus_ggk(q, n)
    if family == "xn":
        return genus_xn(q, n)
    if family == "yrem":
        return genus_yrem(q)
    if family == "hermitian":
        return genus_hermitian(q**n)
    raise ValueError(f"unknown family {family!r}")


def _theorem_tag(family: str | None, q: int | None, n: int | None) -> str | None:
    if family == "ggk" and q is not None:
        return "1.1" if q >= 3 else "1.2"
    if family == "xn" and q is not None and q > 2:
        return "1.3"
    return None


def feasible_degrees(
    Q: int | None = None,
    g: int | None = None,
    *,
    q: int | None = None,
    n: int | None = None,
    family: str | None = None,
    order_filter: bool = False,
    max_candidates: int = 100_000,
) -> FeasibilityReport:
    """Degrees surviving every layer in :data:`LAYERS`.

    Besides the arithmetic bounds, a degree must divide |PGU(3, Q)| (the
    Galois group is a subgroup of it) and admit at least one abstract
    ramification profile.  ``order_filter`` additionally drops profile
    categories that no element of a group of order d can realise; it is off
    by default and prunes strictly more.
    """
    if q is not None and n is not None:
        if Q is not None and Q != q**n:
            raise ValueError(f"Q={Q} conflicts with q^n={q**n}")
        Q = q**n
    if Q is None:
        raise ValueError("need Q or (q, n)")
    if g is None:
        if family is None or q is None or n is None:
            raise ValueError("need a genus or a (family, q, n)")
        g = family_genus(family, q, n)

    gc = genus_class(Q, g)
    report = FeasibilityReport(
        Q, g, gc,
        lower_hurwitz=splitting_lower(Q, g),
        lower_lemcov=lemcov_lower(gc),
        lower_proplb=proplb_lower(gc),
        upper=hurwitz_upper(Q, g) if g >= 2 else None,
        theorem_tag=_theorem_tag(family, q, n),
    )
    if family == "xn" and n == 3 and q is not None and q > 2:
        report.notes.append(
            "d = q^2+q+1 and q^2+q+2 are not eliminated here; no argument for them is implemented"
        )
    if g <= 1:
        warnings.warn("genus <= 1: no Hurwitz upper bound, candidates limited to divisors of |PGU(3,Q)|")
        report.notes.append("genus <= 1: Hurwitz bound skipped")

    group = group_order_pgu(Q)
    top = report.upper if report.upper is not None else min(group, max_candidates)
    for d in range(1, top + 1):
        if d < report.lower_hurwitz:
            reason = "splitting"
        elif report.lower_lemcov is not None and d < report.lower_lemcov:
            reason = "lemcov"
        elif report.lower_proplb is not None and d < report.lower_proplb:
            reason = "proplb"
        elif required_degR(Q, g, d) < 0:
            reason = "budget"
        elif group % d:
            reason = "group-order"
        elif not profile_exists(Q, g, d, order_filter=order_filter):
            reason = "profile"
        else:
            report.feasible.append(d)
            continue
        # below-lower eliminations are implied by the reported bounds
        if reason not in ("splitting", "lemcov", "proplb"):
            report.eliminated.append({"d": d, "reason": reason})
    return report


def theorem_interval(theorem: str, q: int, n: int) -> tuple[int, int] | None:
    """Closed-form degree window asserted by each theorem (None = empty)."""
    Q = q**n
    if theorem == "1.1":
        return None
    if theorem == "1.2":
        d = (2**n + 1) // 3
        return d, d
    if theorem == "1.3":
        lo = ceil_div((q + 1) * (Q + 1), q * q + 1)
        hi = sum(q**i for i in range(1, n)) + 2
        return lo, hi
    raise ValueError(f"unknown theorem {theorem!r}")


def maximal_genus_spectrum(Q: int) -> list[int]:
    """Genera a maximal curve over F_{Q^2} may have."""
    return list(range(0, (Q - 1) ** 2 // 4 + 1)) + [genus_hermitian(Q)]


def bound_ordering_violations(Q: int) -> list[dict]:
    """Genera (g >= 2) where proplb >= lemcov >= splitting fails among the applicable bounds."""
    out = []
    for g in maximal_genus_spectrum(Q):
        if g < 2:
            continue
        gc = genus_class(Q, g)
        s, lem, prop = splitting_lower(Q, g), lemcov_lower(gc), proplb_lower(gc)
        chain = [b for b in (prop, lem, s) if b is not None]
        if any(a < b for a, b in zip(chain, chain[1:])):
            out.append({"g": g, "A": gc.A, "B": gc.B, "k": gc.k,
                        "splitting": s, "lemcov": lem, "proplb": prop})
    return out
