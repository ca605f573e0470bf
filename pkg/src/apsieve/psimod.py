"""Truncated-polynomial degree modules and the divisibility sieve.

A candidate space type is a sorted tuple of half-degrees ``m_1 <= ... <= m_r``
(the odd cohomology generators live in degrees ``2*m_i - 1``).  The sieve
works with the filtration degrees of the monomials of the associated
truncated polynomial algebra of height ``p + 1``, restricted to a degree
window ``[D_lo, D_hi]``.

For each distinct class degree ``t_i`` of such a windowed module the sieve
computes

    v_i = sum over the other classes of pair_min_val(t_i, t_j)

which is the exact valuation of the gcd, over all integer base choices, of
the products ``prod_j (k_j**t_i - k_j**t_j)``.  The divisibility condition
at class ``t_i`` is ``v_i < t_i``; when it holds at every class and the
window contains a witness generator (``m_j`` with ``m_j`` and ``p * m_j``
both inside the window, so that its p-th power survives), the type cannot
carry the multiplicative structure under investigation and is certified
eliminated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import gcd

from .padic import PrimeContext, Valuation, _nu_int, _pair_min_int

__all__ = [
    "SpaceType",
    "PsiModule",
    "ClassCondition",
    "ConditionReport",
    "PsiCertificate",
    "GcdTestResult",
    "enumerate_classes",
    "condition_report",
    "eliminate_by_psi",
    "gcd_oracle",
    "main_lemma_val",
    "theorem_1_1_test",
    "monomial_degree_multiplicities",
]


@dataclass(frozen=True)
class SpaceType:
    """A candidate type: context plus sorted half-degrees ``m_1 <= ... <= m_r``."""

    ctx: PrimeContext
    halves: tuple[int, ...]

    def __post_init__(self):
        halves = tuple(int(m) for m in self.halves)
        object.__setattr__(self, "halves", halves)
        if not halves:
            raise ValueError("a type needs at least one half-degree")
        if any(m < 2 for m in halves):
            raise ValueError("half-degrees must be >= 2 (simply connected, rank-1 circle excluded)")
        if any(a > b for a, b in zip(halves, halves[1:])):
            raise ValueError("half-degrees must be sorted ascending")

    @property
    def rank(self) -> int:
        return len(self.halves)

    @property
    def p(self) -> int:
        return self.ctx.p

    def cohomology_degrees(self) -> tuple[int, ...]:
        return tuple(2 * m - 1 for m in self.halves)

    def __str__(self) -> str:
        return "(" + ",".join(str(m) for m in self.halves) + ")"


@lru_cache(maxsize=None)
def monomial_degree_multiplicities(space: SpaceType) -> tuple[tuple[int, int], ...]:
    """All monomial degrees of the height-(p+1) truncated algebra on the
    generators of ``space``: distinct sums of 1..p half-degrees, with the
    number of monomials realising each sum."""
    gens = space.halves
    counts: dict[int, int] = {}
    for length in range(1, space.p + 1):
        for combo in combinations_with_replacement(range(len(gens)), length):
            d = sum(gens[i] for i in combo)
            counts[d] = counts.get(d, 0) + 1
    return tuple(sorted(counts.items()))


@dataclass(frozen=True)
class PsiModule:
    """Degree data of a windowed truncated-polynomial module.

    ``classes`` holds the distinct degrees inside the window with their
    monomial multiplicities; all condition arithmetic uses the distinct
    degrees only, since equal filtration degree means equal eigenvalue.
    ``witnesses`` lists the generator half-degrees whose p-th power also
    lies in the window.
    """

    space: SpaceType
    window: tuple[int, int]
    classes: tuple[tuple[int, int], ...]
    witnesses: tuple[int, ...]

    @property
    def height(self) -> int:
        return self.space.p

    def degrees(self) -> tuple[int, ...]:
        return tuple(t for t, _ in self.classes)


def enumerate_classes(space: SpaceType, window: tuple[int, int]) -> PsiModule:
    """Build the windowed module for ``space`` over ``window = (D_lo, D_hi)``."""
    d_lo, d_hi = window
    if d_lo > d_hi:
        raise ValueError("window must satisfy D_lo <= D_hi")
    p = space.p
    classes = tuple(
        (t, mult) for t, mult in monomial_degree_multiplicities(space) if d_lo <= t <= d_hi
    )
    witnesses = tuple(
        sorted({m for m in space.halves if d_lo <= m and p * m <= d_hi})
    )
    return PsiModule(space=space, window=(d_lo, d_hi), classes=classes, witnesses=witnesses)


@dataclass(frozen=True)
class ClassCondition:
    """Per-class sieve data: exact valuation sum, the coarser all-nu bound,
    and whether the divisibility condition ``v < degree`` holds."""

    degree: int
    valuation_sum: int
    nu_bound: int
    passes: bool


@dataclass(frozen=True)
class ConditionReport:
    module: PsiModule
    per_class: tuple[ClassCondition, ...]
    holds_everywhere: bool
    witness_used: int | None

    def as_dict(self) -> dict:
        return {
            "window": list(self.module.window),
            "witness": self.witness_used,
            "holds_everywhere": self.holds_everywhere,
            "classes": [
                {
                    "degree": c.degree,
                    "valuation_sum": c.valuation_sum,
                    "nu_bound": c.nu_bound,
                    "passes": c.passes,
                }
                for c in self.per_class
            ],
        }


def condition_report(module: PsiModule) -> ConditionReport:
    """Evaluate the divisibility condition on every class of ``module``."""
    degrees = module.degrees()
    if len(degrees) < 2:
        raise ValueError("condition_report needs at least 2 classes")
    if len(set(degrees)) != len(degrees):
        raise ValueError("class degrees must be pre-merged (duplicates found)")
    ctx = module.space.ctx
    conditions = []
    all_pass = True
    for i, t_i in enumerate(degrees):
        v = 0
        b = 0
        for j, t_j in enumerate(degrees):
            if j == i:
                continue
            b += _nu_int(ctx, t_i - t_j)
            v += _pair_min_int(ctx, t_i, t_j)
        ok = v < t_i
        all_pass = all_pass and ok
        conditions.append(ClassCondition(degree=t_i, valuation_sum=v, nu_bound=b, passes=ok))
    witness = module.witnesses[0] if module.witnesses else None
    return ConditionReport(
        module=module,
        per_class=tuple(conditions),
        holds_everywhere=all_pass,
        witness_used=witness,
    )


@dataclass(frozen=True)
class PsiCertificate:
    """A certified elimination: the window, its full report, the witness."""

    window: tuple[int, int]
    report: ConditionReport
    witness: int

    def replay(self) -> bool:
        """Re-derive the certificate from the window alone."""
        module = enumerate_classes(self.report.module.space, self.window)
        rep = condition_report(module)
        return rep.holds_everywhere and self.witness in module.witnesses


def eliminate_by_psi(space: SpaceType, policy: str = "standard") -> PsiCertificate | None:
    """Search the window family for a certifying window.

    Windows are pairs ``[D_lo, D_hi]`` with ``D_lo`` ranging over the class
    degrees of the full module (ascending) and ``D_hi`` over ``{p * m_j}``
    for the generators (larger cuts first); only windows containing a
    witness are evaluated.  Policy ``exhaustive`` additionally lets
    ``D_hi`` range over every class degree.

    The bottom window ``[m_1, p * m_1]`` is admitted only for types failing
    the gcd divisibility test: for those types the window's condition is
    forced by the run-product estimate, which is robust against degree
    classes the model cannot see.  For gcd-passing types that single
    window may under-approximate the true class set of a realising space,
    so a certificate from it is not trusted.

    Returns the first certifying window, or ``None`` (inconclusive; never
    a proof of survival).
    """
    if policy not in ("standard", "exhaustive"):
        raise ValueError(f"unknown window policy {policy!r}")
    degrees = [t for t, _ in monomial_degree_multiplicities(space)]
    p = space.p
    tops = {p * m for m in space.halves}
    if policy == "exhaustive":
        tops.update(degrees)
    tops = sorted(tops, reverse=True)
    bottom_window = (degrees[0], p * space.halves[0])
    bottom_gated = theorem_1_1_test(space).passed
    for d_lo in degrees:
        for d_hi in tops:
            if d_hi < d_lo:
                continue
            if not any(m >= d_lo and p * m <= d_hi for m in space.halves):
                continue
            if bottom_gated and (d_lo, d_hi) == bottom_window:
                continue
            module = enumerate_classes(space, (d_lo, d_hi))
            if len(module.classes) < 2:
                continue
            report = condition_report(module)
            if report.holds_everywhere:
                return PsiCertificate(
                    window=(d_lo, d_hi), report=report, witness=module.witnesses[0]
                )
    return None


def gcd_oracle(module: PsiModule, class_index: int, k_max: int) -> Valuation:
    """Big-integer oracle for the exact valuation sum of a class.

    Computes the valuation of the gcd over all per-factor base choices
    ``k_j`` in ``2..k_max`` of ``prod_{j != i} (k_j**t_i - k_j**t_j)`` by
    independent per-factor minimisation.  Refuses a ``k_max`` too small to
    contain both ``p`` and ``k0`` (the result would only be an upper bound).
    """
    ctx = module.space.ctx
    if k_max < max(ctx.p, ctx.k0):
        raise ValueError("k_max must be at least max(p, k0) for an exact answer")
    degrees = module.degrees()
    if len(set(degrees)) != len(degrees):
        raise ValueError("duplicate class degrees; merge before calling the oracle")
    t_i = degrees[class_index]
    p = ctx.p
    total = 0
    for j, t_j in enumerate(degrees):
        if j == class_index:
            continue
        best = None
        for k in range(2, k_max + 1):
            n = k**t_i - k**t_j
            f = 0
            while n % p == 0:
                n //= p
                f += 1
            if best is None or f < best:
                best = f
            if best == 0:
                break
        total += best
    return Valuation(total)


def main_lemma_val(ctx: PrimeContext, m: int, t: int, i: int) -> int:
    """Exact valuation, for the primitive root base, of the run product

        prod over j in [t, t*p], j != i, of (k0**(m*i) - k0**(m*j)),

    namely the sum of ``nu(m * |i - j|)`` over the run.  When ``m`` does
    not divide ``p - 1`` this value is strictly below ``m * t``.
    """
    if m < 1 or t < 1:
        raise ValueError("m and t must be positive")
    if not (t <= i <= t * ctx.p):
        raise ValueError("i must lie in [t, t*p]")
    return sum(_nu_int(ctx, m * (i - j)) for j in range(t, t * ctx.p + 1) if j != i)


@dataclass(frozen=True)
class GcdTestResult:
    """Outcome of the low-degree gcd divisibility test."""

    passed: bool
    m: int

    def __bool__(self) -> bool:  # pragma: no cover - convenience
        return self.passed


def theorem_1_1_test(space: SpaceType) -> GcdTestResult:
    """gcd test: ``m = gcd of the half-degrees <= p * m_1`` must divide ``p - 1``.

    Failure eliminates the type; the forced window is ``[m_1, p * m_1]``.
    """
    bound = space.p * space.halves[0]
    g = 0
    for m in space.halves:
        if m <= bound:
            g = gcd(g, m)
    return GcdTestResult(passed=(space.p - 1) % g == 0, m=g)
