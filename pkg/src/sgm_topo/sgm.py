"""Existence verdicts for special generic maps on concrete manifold families.

For each target dimension p the engine reports Exists, Obstructed, or
Unknown with a machine-readable reason code, distinguishing "proved
impossible" from "no applicable criterion".  Criteria implemented: the
perfect-square constraint on middle homology of odd-dimensional rational
homology spheres, Euler-characteristic parity, the rank-one Morse argument
for p = 1 (Reeb), the equidimensional stable-parallelizability criterion,
and its power-sum test for lens quotients with odd prime order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from math import gcd, isqrt

from sympy import isprime

from .abelian import FinAbGroup, cyclic
from .errors import CriterionNotApplicable, InconsistencyError
from .homology import (
    GradedGroup,
    Q,
    euler_characteristic,
    graded,
    is_homology_sphere,
    rationalize,
    sphere_homology,
)


def perfect_square(n: int) -> int | None:
    """Integer square root of n if n is a perfect square, else None."""
    if n < 1:
        raise ValueError(f"perfect_square requires a positive integer, got {n}")
    r = isqrt(n)
    return r if r * r == n else None


class StatusKind(Enum):
    EXISTS = "exists"
    OBSTRUCTED = "obstructed"
    UNKNOWN = "unknown"


class Reason(Enum):
    SQUARE_OBSTRUCTION = "SQUARE_OBSTRUCTION"
    EULER_PARITY = "EULER_PARITY"
    REEB = "REEB"
    ELIASHBERG_SP = "ELIASHBERG_SP"
    EMSS = "EMSS"
    CATALOG_FACT = "CATALOG_FACT"
    NONE = "NONE"


@dataclass(frozen=True)
class PStatus:
    kind: StatusKind
    reason: Reason
    note: str = ""


@dataclass(frozen=True)
class DimensionSetVerdict:
    """Per-target-dimension statuses for one manifold, plus the decided set
    of target dimensions when every status is settled."""

    dimension: int
    statuses: dict[int, PStatus]
    summary: tuple[int, ...] | None

    def status(self, p: int) -> PStatus:
        return self.statuses[p]


def _finish_verdict(dimension: int, statuses: dict[int, PStatus]) -> DimensionSetVerdict:
    if sorted(statuses) != list(range(1, dimension + 1)):
        raise AssertionError("statuses must cover all p in 1..n")
    if any(s.kind is StatusKind.UNKNOWN for s in statuses.values()):
        summary = None
    else:
        summary = tuple(p for p in sorted(statuses) if statuses[p].kind is StatusKind.EXISTS)
    return DimensionSetVerdict(dimension, dict(sorted(statuses.items())), summary)


class SquareStatus(Enum):
    APPLIES_OBSTRUCTED = "APPLIES_OBSTRUCTED"
    APPLIES_PASSES = "APPLIES_PASSES"
    NOT_APPLICABLE = "NOT_APPLICABLE"


@dataclass(frozen=True)
class SquareVerdict:
    status: SquareStatus
    detail: str
    middle_order: int | None = None
    root: int | None = None

    def __bool__(self) -> bool:
        return self.status is not SquareStatus.NOT_APPLICABLE


def square_obstruction(
    m_homology: GradedGroup, n: int, orientable: bool = True
) -> SquareVerdict:
    """Perfect-square test on |H_k|, k = (n-1)/2, for odd n >= 5 rational
    homology n-spheres.

    APPLIES_OBSTRUCTED rules out every target dimension p < n;
    APPLIES_PASSES carries no conclusion.
    """
    if n % 2 == 0:
        return SquareVerdict(SquareStatus.NOT_APPLICABLE, f"dimension {n} is even")
    if n < 5:
        return SquareVerdict(SquareStatus.NOT_APPLICABLE, f"dimension {n} is below 5")
    if not orientable:
        return SquareVerdict(SquareStatus.NOT_APPLICABLE, "source not flagged orientable")
    if not is_homology_sphere(rationalize(m_homology), n, Q):
        return SquareVerdict(SquareStatus.NOT_APPLICABLE,
                             "not a rational homology sphere")
    k = (n - 1) // 2
    middle = m_homology.at(k)
    if not middle.is_finite:
        raise InconsistencyError(
            f"H_{k} has positive rank on a claimed rational homology {n}-sphere"
        )
    order = middle.order()
    root = perfect_square(order)
    if root is None:
        return SquareVerdict(
            SquareStatus.APPLIES_OBSTRUCTED,
            f"|H_{k}| = {order} is not a perfect square; no special generic map "
            f"into R^p exists for any p < {n}",
            order,
        )
    return SquareVerdict(
        SquareStatus.APPLIES_PASSES,
        f"|H_{k}| = {order} = {root}^2; no conclusion",
        order,
        root,
    )


@dataclass(frozen=True)
class EulerParityVerdict:
    chi: int
    obstructs_below: bool
    detail: str

    def __bool__(self) -> bool:
        return self.obstructs_below


def euler_parity_obstruction(m_homology: GradedGroup, n: int) -> EulerParityVerdict:
    """Odd Euler characteristic rules out every target dimension p < n."""
    chi = euler_characteristic(m_homology)
    if chi % 2 == 1:
        return EulerParityVerdict(
            chi, True, f"chi = {chi} is odd; obstructed for all p < {n}"
        )
    return EulerParityVerdict(chi, False, f"chi = {chi} is even; no conclusion")


@dataclass(frozen=True)
class LensSpec:
    """Quotient of the (2k+1)-sphere by a free linear action of order m,
    determined by rotation parameters l_1..l_{k+1} coprime to m."""

    m: int
    l: tuple[int, ...]

    def __post_init__(self):
        if self.m <= 1:
            raise ValueError(f"lens order must be > 1, got {self.m}")
        object.__setattr__(self, "l", tuple(int(x) for x in self.l))
        if not self.l:
            raise ValueError("need at least one rotation parameter")
        for x in self.l:
            if gcd(x, self.m) != 1:
                raise ValueError(f"rotation parameter {x} shares a factor with m = {self.m}")

    @property
    def k(self) -> int:
        return len(self.l) - 1

    @property
    def dimension(self) -> int:
        return 2 * self.k + 1

    def __str__(self) -> str:
        return f"L{self.m}({','.join(map(str, self.l))})"


def lens_homology(spec: LensSpec) -> GradedGroup:
    """Z in degrees 0 and 2k+1, Z/m in interior odd degrees, zero elsewhere."""
    n = spec.dimension
    groups = {0: FinAbGroup(1), n: FinAbGroup(1)}
    for d in range(1, n, 2):
        groups[d] = cyclic(spec.m)
    return graded(n, groups)


def lens_stably_parallelizable(spec: LensSpec) -> bool:
    """Power-sum criterion, valid for odd prime m with 1 <= l_i <= m - 1:
    stably parallelizable iff k < m and m divides sum of l_i^(2j) for
    every j = 1 .. floor(k/2)."""
    m = spec.m
    if m % 2 == 0 or not isprime(m):
        raise CriterionNotApplicable(f"m = {m} is not an odd prime")
    if any(not 1 <= x <= m - 1 for x in spec.l):
        raise CriterionNotApplicable("rotation parameters must lie in 1..m-1")
    if spec.k >= m:
        return False
    return all(
        sum(pow(x, 2 * j, m) for x in spec.l) % m == 0
        for j in range(1, spec.k // 2 + 1)
    )


def lens_dimension_set(
    spec: LensSpec, stably_parallelizable: bool | None = None
) -> DimensionSetVerdict:
    """Full verdict for a lens quotient.

    p < n comes from the square obstruction (and Reeb at p = 1); p = n is
    the equidimensional criterion, decided by the power-sum test when its
    hypotheses hold, or by the caller-supplied stable-parallelizability
    flag, and Unknown otherwise.
    """
    n = spec.dimension
    hom = lens_homology(spec)
    square = square_obstruction(hom, n)
    statuses: dict[int, PStatus] = {}
    for p in range(1, n):
        if p == 1:
            statuses[p] = PStatus(
                StatusKind.OBSTRUCTED, Reason.REEB,
                "nontrivial reduced homology, not a homotopy sphere",
            )
        elif square.status is SquareStatus.APPLIES_OBSTRUCTED:
            statuses[p] = PStatus(StatusKind.OBSTRUCTED, Reason.SQUARE_OBSTRUCTION,
                                  square.detail)
        else:
            statuses[p] = PStatus(StatusKind.UNKNOWN, Reason.NONE,
                                  "no applicable criterion")
    statuses[n] = _equidimensional_lens_status(spec, stably_parallelizable)
    return _finish_verdict(n, statuses)


def _equidimensional_lens_status(
    spec: LensSpec, stably_parallelizable: bool | None
) -> PStatus:
    try:
        sp = lens_stably_parallelizable(spec)
    except CriterionNotApplicable as exc:
        if stably_parallelizable is None:
            return PStatus(StatusKind.UNKNOWN, Reason.NONE,
                           f"power-sum criterion not applicable: {exc}")
        if stably_parallelizable:
            return PStatus(StatusKind.EXISTS, Reason.ELIASHBERG_SP,
                           "stably parallelizable by caller-supplied fact")
        return PStatus(StatusKind.OBSTRUCTED, Reason.ELIASHBERG_SP,
                       "not stably parallelizable by caller-supplied fact")
    if sp:
        return PStatus(StatusKind.EXISTS, Reason.EMSS,
                       "stably parallelizable by the power-sum criterion")
    return PStatus(StatusKind.OBSTRUCTED, Reason.EMSS,
                   "not stably parallelizable by the power-sum criterion")


@dataclass(frozen=True)
class BundleSpec:
    """Total space of the linear 3-sphere bundle over the 4-sphere classified
    by the pair (m, n); a rational homology 7-sphere when n != 0."""

    m: int
    n: int

    def __post_init__(self):
        if self.n == 0:
            raise ValueError("n = 0 gives infinite middle homology; not supported")

    @property
    def dimension(self) -> int:
        return 7

    def __str__(self) -> str:
        return f"M({self.m},{self.n})"


def bundle_homology(spec: BundleSpec) -> GradedGroup:
    """Z in degrees 0 and 7, Z/|n| in degree 3."""
    groups = {0: FinAbGroup(1), 7: FinAbGroup(1)}
    if abs(spec.n) > 1:
        groups[3] = cyclic(abs(spec.n))
    return graded(7, groups)


def bundle_dimension_set(spec: BundleSpec) -> DimensionSetVerdict:
    """Full verdict for a bundle total space.

    p = 7 is decided by the vanishing of the parallelizability obstruction,
    which reduces to n | 2m; p < 7 follows the square obstruction on |n|.
    """
    n_dim = 7
    hom = bundle_homology(spec)
    square = square_obstruction(hom, n_dim)
    torsion = abs(spec.n)
    statuses: dict[int, PStatus] = {}
    for p in range(1, n_dim):
        if p == 1 and torsion > 1:
            statuses[p] = PStatus(
                StatusKind.OBSTRUCTED, Reason.REEB,
                "nontrivial reduced homology, not a homotopy sphere",
            )
        elif square.status is SquareStatus.APPLIES_OBSTRUCTED:
            statuses[p] = PStatus(StatusKind.OBSTRUCTED, Reason.SQUARE_OBSTRUCTION,
                                  square.detail)
        else:
            statuses[p] = PStatus(StatusKind.UNKNOWN, Reason.NONE,
                                  "no applicable criterion")
    if (2 * spec.m) % spec.n == 0:
        statuses[n_dim] = PStatus(
            StatusKind.EXISTS, Reason.ELIASHBERG_SP,
            f"parallelizability obstruction 2m = {2 * spec.m} vanishes mod n = {spec.n}",
        )
    else:
        statuses[n_dim] = PStatus(
            StatusKind.OBSTRUCTED, Reason.ELIASHBERG_SP,
            f"parallelizability obstruction 2m = {2 * spec.m} is nonzero mod n = {spec.n}",
        )
    return _finish_verdict(n_dim, statuses)


@dataclass(frozen=True)
class CatalogFact:
    """Curated status for a range of target dimensions, with provenance."""

    p_from: int
    p_to: int
    kind: StatusKind
    note: str


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    homology: GradedGroup
    dimension: int
    orientable: bool
    facts: tuple[CatalogFact, ...] = ()
    lens: LensSpec | None = None
    bundle: BundleSpec | None = None


_SPHERE_RE = re.compile(r"^S\^?(\d+)$")
_LENS_RE = re.compile(r"^L_?(\d+)\(([-\d,\s]+)\)$")
_BUNDLE_RE = re.compile(r"^M_?\((-?\d+),\s*(-?\d+)\)$")


def catalog_lookup(name: str) -> CatalogEntry:
    """Resolve a catalog name: 'S^n', 'RP5', 'L<m>(l1,...)', or 'M(m,n)'."""
    name = name.strip()
    if match := _SPHERE_RE.match(name):
        n = int(match.group(1))
        if n < 1:
            raise ValueError("catalog spheres start at dimension 1")
        return CatalogEntry(
            f"S^{n}", sphere_homology(n), n, True,
            (CatalogFact(1, n, StatusKind.EXISTS,
                         "standard sphere admits special generic maps into every "
                         "target dimension"),),
        )
    if name == "RP5":
        hom = graded(5, {0: FinAbGroup(1), 1: cyclic(2), 3: cyclic(2), 5: FinAbGroup(1)})
        return CatalogEntry(
            "RP5", hom, 5, True,
            (CatalogFact(1, 4, StatusKind.OBSTRUCTED,
                         "covering-space Euler-characteristic argument"),),
        )
    if match := _LENS_RE.match(name):
        spec = LensSpec(int(match.group(1)),
                        tuple(int(x) for x in match.group(2).split(",")))
        return CatalogEntry(str(spec), lens_homology(spec), spec.dimension, True,
                            (), lens=spec)
    if match := _BUNDLE_RE.match(name):
        spec = BundleSpec(int(match.group(1)), int(match.group(2)))
        return CatalogEntry(str(spec), bundle_homology(spec), 7, True, (), bundle=spec)
    raise ValueError(f"unknown catalog name {name!r}")


def classify(name: str) -> DimensionSetVerdict:
    """Dimension-set verdict for a catalog entry, combining the homological
    obstructions with any curated facts."""
    entry = catalog_lookup(name)
    if entry.lens is not None:
        return lens_dimension_set(entry.lens)
    if entry.bundle is not None:
        return bundle_dimension_set(entry.bundle)
    n = entry.dimension
    hom = entry.homology
    statuses: dict[int, PStatus] = {
        p: PStatus(StatusKind.UNKNOWN, Reason.NONE, "no applicable criterion")
        for p in range(1, n + 1)
    }
    if not is_homology_sphere(hom, n):
        statuses[1] = PStatus(
            StatusKind.OBSTRUCTED, Reason.REEB,
            "nontrivial reduced homology, not a homotopy sphere",
        )
    square = square_obstruction(hom, n, entry.orientable)
    if square.status is SquareStatus.APPLIES_OBSTRUCTED:
        for p in range(1, n):
            if statuses[p].kind is StatusKind.UNKNOWN:
                statuses[p] = PStatus(StatusKind.OBSTRUCTED,
                                      Reason.SQUARE_OBSTRUCTION, square.detail)
    euler = euler_parity_obstruction(hom, n)
    if euler.obstructs_below:
        for p in range(1, n):
            if statuses[p].kind is StatusKind.UNKNOWN:
                statuses[p] = PStatus(StatusKind.OBSTRUCTED,
                                      Reason.EULER_PARITY, euler.detail)
    for fact in entry.facts:
        for p in range(fact.p_from, fact.p_to + 1):
            if statuses[p].kind is StatusKind.UNKNOWN:
                statuses[p] = PStatus(fact.kind, Reason.CATALOG_FACT, fact.note)
    return _finish_verdict(n, statuses)
