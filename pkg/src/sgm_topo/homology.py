"""Chain complexes and graded homology over Z, Q, and prime fields.

Integral homology is computed from Smith normal forms; field homology is
computed directly from matrix ranks over the field, deliberately avoiding
the integer pipeline so the two routes can cross-check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from sympy import isprime

from .abelian import FinAbGroup
from .zlinalg import IntMatrix, _smith_full, cokernel


@dataclass(frozen=True)
class Coefficients:
    """Coefficient ring: the integers, the rationals, or a prime field."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unsupported coefficient kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not isprime(self.p):
                raise ValueError(f"Fp requires a prime, got {self.p!r}")
        elif self.p is not None:
            raise ValueError(f"{self.kind} coefficients take no modulus")

    def __str__(self) -> str:
        return f"F{self.p}" if self.kind == "Fp" else self.kind


Z = Coefficients("Z")
Q = Coefficients("Q")


def Fp(p: int) -> Coefficients:
    return Coefficients("Fp", p)


def parse_coefficients(text: str) -> Coefficients:
    """Parse 'Z', 'Q', or 'Fp:P'."""
    if text == "Z":
        return Z
    if text == "Q":
        return Q
    if text.startswith("Fp:"):
        return Fp(int(text[3:]))
    raise ValueError(f"unknown coefficient spec {text!r}; expected Z, Q, or Fp:P")


@dataclass(frozen=True)
class GradedGroup:
    """Degree-indexed abelian groups; absent degrees are trivial."""

    top_degree: int
    groups: tuple[tuple[int, FinAbGroup], ...] = ()

    def __post_init__(self):
        if self.top_degree < 0:
            raise ValueError("top_degree must be non-negative")
        items = dict(self.groups)
        cleaned = []
        for d in sorted(items):
            g = items[d]
            if g.is_trivial:
                continue
            if d < 0 or d > self.top_degree:
                raise ValueError(
                    f"nontrivial group in degree {d} outside [0, {self.top_degree}]"
                )
            cleaned.append((d, g))
        object.__setattr__(self, "groups", tuple(cleaned))

    def at(self, degree: int) -> FinAbGroup:
        for d, g in self.groups:
            if d == degree:
                return g
        return FinAbGroup()

    def as_dict(self) -> dict[int, FinAbGroup]:
        return dict(self.groups)

    def degrees(self) -> list[int]:
        return [d for d, _ in self.groups]

    def __str__(self) -> str:
        return "; ".join(f"H_{d} = {g}" for d, g in self.groups) or "0"


def graded(top_degree: int, groups: Mapping[int, FinAbGroup]) -> GradedGroup:
    return GradedGroup(top_degree, tuple(sorted(groups.items())))


def from_list(groups: list[FinAbGroup]) -> GradedGroup:
    """Graded group from a degree-0-first list."""
    return graded(max(len(groups) - 1, 0), dict(enumerate(groups)))


def sphere_homology(n: int) -> GradedGroup:
    """Integral homology of the n-sphere."""
    if n < 0:
        raise ValueError("sphere dimension must be non-negative")
    if n == 0:
        return graded(0, {0: FinAbGroup(2)})
    return graded(n, {0: FinAbGroup(1), n: FinAbGroup(1)})


def ball_homology(p: int) -> GradedGroup:
    """Integral homology of a point, graded up to degree p."""
    if p < 0:
        raise ValueError("ball dimension must be non-negative")
    return graded(p, {0: FinAbGroup(1)})


@dataclass(frozen=True)
class ChainComplex:
    """Cell counts per degree with integer boundary matrices.

    boundaries[d] has shape cells[d-1] x cells[d] for d in 1..max_degree;
    omitted degrees default to zero matrices.  The composition of
    consecutive boundaries is checked to vanish at construction.
    """

    cells: tuple[int, ...]
    boundaries: tuple[tuple[int, IntMatrix], ...] = ()

    def __post_init__(self):
        if not self.cells or any(c < 0 for c in self.cells):
            raise ValueError("cells must be a non-empty list of non-negative counts")
        items = dict(self.boundaries)
        n = self.max_degree
        full = {}
        for d in range(1, n + 1):
            mat = items.pop(d, None)
            if mat is None:
                mat = IntMatrix.zeros(self.cells[d - 1], self.cells[d])
            if mat.rows != self.cells[d - 1] or mat.cols != self.cells[d]:
                raise ValueError(
                    f"boundary {d} has shape {mat.rows}x{mat.cols}, expected "
                    f"{self.cells[d - 1]}x{self.cells[d]}"
                )
            full[d] = mat
        if items:
            raise ValueError(f"boundary degrees {sorted(items)} outside 1..{n}")
        for d in range(1, n):
            if not (full[d] @ full[d + 1]).is_zero:
                raise ValueError(f"boundary composition at degree {d + 1} is nonzero")
        object.__setattr__(self, "cells", tuple(int(c) for c in self.cells))
        object.__setattr__(self, "boundaries", tuple(sorted(full.items())))

    @property
    def max_degree(self) -> int:
        return len(self.cells) - 1

    def boundary(self, d: int) -> IntMatrix:
        """Boundary map out of degree d; zero maps beyond the ends."""
        if 1 <= d <= self.max_degree:
            return dict(self.boundaries)[d]
        rows = self.cells[d - 1] if 1 <= d <= self.max_degree + 1 else 0
        cols = self.cells[d] if 0 <= d <= self.max_degree else 0
        return IntMatrix.zeros(rows, cols)


def chain_complex(cells: list[int], boundaries: Mapping[int, IntMatrix]) -> ChainComplex:
    return ChainComplex(tuple(cells), tuple(sorted(boundaries.items())))


def lens_cw_complex(m: int, k: int) -> ChainComplex:
    """Minimal cell structure of a (2k+1)-dimensional lens quotient, one cell
    per degree, with boundary m in even degrees and 0 in odd degrees."""
    if m < 2 or k < 0:
        raise ValueError("need m >= 2 and k >= 0")
    n = 2 * k + 1
    bnd = {}
    for d in range(1, n + 1):
        value = m if d % 2 == 0 else 0
        bnd[d] = IntMatrix(1, 1, ((value,),))
    return chain_complex([1] * (n + 1), bnd)


def _rank_over_q(a: IntMatrix) -> int:
    """Rank over the rationals by exact Gaussian elimination."""
    rows = [[Fraction(x) for x in row] for row in a.entries]
    rank = 0
    for col in range(a.cols):
        pivot = next((i for i in range(rank, a.rows) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for i in range(rank + 1, a.rows):
            if rows[i][col] != 0:
                f = rows[i][col] / pv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        if rank == a.rows:
            break
    return rank


def _rank_mod_p(a: IntMatrix, p: int) -> int:
    rows = [[x % p for x in row] for row in a.entries]
    rank = 0
    for col in range(a.cols):
        pivot = next((i for i in range(rank, a.rows) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        for i in range(rank + 1, a.rows):
            if rows[i][col] != 0:
                f = (rows[i][col] * inv) % p
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
        if rank == a.rows:
            break
    return rank


def _integral_homology_at(c: ChainComplex, d: int) -> FinAbGroup:
    bd = c.boundary(d)
    bd1 = c.boundary(d + 1)
    _, _, s, v, vinv = _smith_full(bd)
    r = sum(1 for i in range(min(s.rows, s.cols)) if s.entries[i][i] != 0)
    k = bd.cols - r  # kernel lattice rank; its basis is the last k columns of V
    coords = vinv @ bd1
    for i in range(r):
        if any(coords.entries[i][j] != 0 for j in range(coords.cols)):
            raise AssertionError("boundary image left the kernel lattice")
    x = IntMatrix(k, bd1.cols, tuple(coords.entries[r + i] for i in range(k)))
    return cokernel(x)


def homology(c: ChainComplex, coeff: Coefficients = Z) -> GradedGroup:
    """Graded homology of the complex over the given coefficients."""
    groups: dict[int, FinAbGroup] = {}
    n = c.max_degree
    if coeff.kind == "Z":
        for d in range(n + 1):
            groups[d] = _integral_homology_at(c, d)
    else:
        rank_fn = _rank_over_q if coeff.kind == "Q" else lambda m: _rank_mod_p(m, coeff.p)
        ranks = {d: rank_fn(c.boundary(d)) for d in range(1, n + 1)}
        ranks[0] = 0
        ranks[n + 1] = 0
        for d in range(n + 1):
            groups[d] = FinAbGroup(c.cells[d] - ranks[d] - ranks[d + 1])
    return graded(n, groups)


def euler_characteristic(g: GradedGroup) -> int:
    """Alternating sum of ranks; torsion is ignored."""
    return sum((-1) ** d * grp.rank for d, grp in g.groups)


def rationalize(g: GradedGroup) -> GradedGroup:
    """Rational homology of a space with the given integral homology:
    ranks survive, torsion dies."""
    return graded(g.top_degree, {d: FinAbGroup(grp.rank) for d, grp in g.groups})


def change_coefficients(g: GradedGroup, coeff: Coefficients) -> GradedGroup:
    """Homology over coeff of a space whose integral homology is g.

    Over Q this keeps ranks; over a prime field each degree also picks up
    one dimension for every invariant factor divisible by p in that degree
    and in the degree below (universal coefficients).
    """
    if coeff.kind == "Z":
        return g
    if coeff.kind == "Q":
        return rationalize(g)
    p = coeff.p
    groups = {}
    for d in range(g.top_degree + 1):
        here = g.at(d)
        below = g.at(d - 1) if d > 0 else FinAbGroup()
        dim = (
            here.rank
            + sum(1 for f in here.invariant_factors if f % p == 0)
            + sum(1 for f in below.invariant_factors if f % p == 0)
        )
        groups[d] = FinAbGroup(dim)
    return graded(g.top_degree, groups)


def _is_free_of_rank(g: FinAbGroup, rank: int) -> bool:
    return g.rank == rank and not g.invariant_factors


def is_homology_sphere(g: GradedGroup, n: int, coeff: Coefficients = Z) -> bool:
    """Whether g, read as integral homology, matches the n-sphere over coeff."""
    if n < 0:
        raise ValueError("sphere dimension must be non-negative")
    h = change_coefficients(g, coeff)
    top = max(h.top_degree, n)
    for d in range(top + 1):
        expected = 2 if (n == 0 and d == 0) else 1 if d in (0, n) else 0
        if not _is_free_of_rank(h.at(d), expected):
            return False
    return True


def is_homology_ball(g: GradedGroup, p: int, coeff: Coefficients = Z) -> bool:
    """Whether g, read as integral homology, has vanishing reduced homology
    over coeff (the homology of a p-ball)."""
    if p < 0:
        raise ValueError("ball dimension must be non-negative")
    h = change_coefficients(g, coeff)
    if not _is_free_of_rank(h.at(0), 1):
        return False
    return all(h.at(d).is_trivial for d in range(1, h.top_degree + 1))


@dataclass(frozen=True)
class ConsistencyReport:
    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def boundary_sphere_consistency(
    ball: GradedGroup, p: int, boundary: GradedGroup, coeff: Coefficients = Z
) -> ConsistencyReport:
    """Check the implication: homology p-ball over coeff has a boundary that
    is a homology (p-1)-sphere over coeff.  Vacuously true when the ball
    hypothesis fails."""
    if p < 1:
        raise ValueError("need p >= 1 for a ball with boundary")
    if not is_homology_ball(ball, p, coeff):
        return ConsistencyReport(True, None)
    if is_homology_sphere(boundary, p - 1, coeff):
        return ConsistencyReport(True, None)
    return ConsistencyReport(
        False,
        f"interior is a homology {p}-ball over {coeff} but the boundary is not "
        f"a homology {p - 1}-sphere",
    )
