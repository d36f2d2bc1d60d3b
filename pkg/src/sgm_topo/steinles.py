"""Order-level constraints from the Stein factorization of a special generic map.

For a special generic map from a closed orientable n-manifold M to p-space,
the quotient W of M by fiber components is a compact parallelizable
p-manifold whose homology is tied to that of M by a long exact sequence.
This module works purely with graded groups and orders: low-degree
transfer, the ball/sphere equivalence in both directions, the symmetric
order skeleton around middle homology for odd n, and the realization
arithmetic that produces any square torsion order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import FinAbGroup, cyclic, enumerate_extensions
from .errors import InconsistencyError
from .exactseq import SquareOrderResult, central_square_order
from .homology import (
    Coefficients,
    GradedGroup,
    Z,
    graded,
    is_homology_ball,
    is_homology_sphere,
    sphere_homology,
)


@dataclass(frozen=True)
class SteinInstance:
    """Source dimension n, target dimension p, and the known homology data.

    wf_homology is the integral homology of the quotient manifold W; it must
    be trivial above degree p and connected in degree 0.  m_homology, when
    present, is the integral homology of the source M.
    """

    n: int
    p: int
    wf_homology: GradedGroup
    m_homology: GradedGroup | None = None
    orientable: bool = True

    def __post_init__(self):
        if not (1 <= self.p < self.n):
            raise ValueError(f"need 1 <= p < n, got p = {self.p}, n = {self.n}")
        wf = self.wf_homology
        if wf.at(0) != FinAbGroup(1):
            raise ValueError("W homology must have a single Z in degree 0")
        for d, g in wf.groups:
            if d > self.p:
                raise ValueError(f"W homology must vanish above degree {self.p}, "
                                 f"found {g} in degree {d}")
        if self.m_homology is not None and self.m_homology.at(0) != FinAbGroup(1):
            raise ValueError("M homology must have a single Z in degree 0")


@dataclass(frozen=True)
class TransferReport:
    """Degrees q <= n - p where H_q(M) is forced to equal H_q(W)."""

    forced: tuple[tuple[int, FinAbGroup], ...]
    violations: tuple[tuple[int, FinAbGroup, FinAbGroup], ...]

    @property
    def consistent(self) -> bool:
        return not self.violations


def low_degree_transfer(inst: SteinInstance) -> TransferReport:
    """H_q(M) = H_q(W) for q <= n - p; reports mismatches with given M data."""
    forced = []
    violations = []
    for q in range(inst.n - inst.p + 1):
        expected = inst.wf_homology.at(q)
        forced.append((q, expected))
        if inst.m_homology is not None and inst.m_homology.at(q) != expected:
            violations.append((q, expected, inst.m_homology.at(q)))
    return TransferReport(tuple(forced), tuple(violations))


def ball_to_sphere(inst: SteinInstance, coeff: Coefficients = Z) -> GradedGroup:
    """Homology that M is forced to have when W is a homology p-ball over coeff.

    Requires orientability; rejects W data that is not a ball over coeff.
    """
    if not inst.orientable:
        raise ValueError("the ball-to-sphere direction requires an orientable source")
    if not is_homology_ball(inst.wf_homology, inst.p, coeff):
        raise ValueError(
            f"W homology is not a homology {inst.p}-ball over {coeff}"
        )
    return sphere_homology(inst.n)


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def sphere_to_ball_check(inst: SteinInstance, coeff: Coefficients = Z) -> CheckReport:
    """If M is a homology sphere over coeff, W must be a homology ball over coeff.

    Vacuously passes when M is not a sphere over coeff.
    """
    if inst.m_homology is None:
        raise ValueError("sphere_to_ball_check requires M homology data")
    if not inst.orientable:
        raise ValueError("sphere_to_ball_check requires an orientable source")
    if not is_homology_sphere(inst.m_homology, inst.n, coeff):
        return CheckReport(True, None)
    if is_homology_ball(inst.wf_homology, inst.p, coeff):
        return CheckReport(True, None)
    return CheckReport(
        False,
        f"M is a homology {inst.n}-sphere over {coeff} but W is not a homology "
        f"{inst.p}-ball over {coeff}",
    )


@dataclass(frozen=True)
class OrderSkeleton:
    """Signed-index term assignment of the middle-homology exact sequence.

    Terms at nonzero indices are known groups; the center (index 0) holds
    the middle homology of M when available.  Orders are mirror-symmetric
    by construction.  Feeds central_square_order.
    """

    radius: int
    terms: tuple[tuple[int, FinAbGroup], ...]
    center: FinAbGroup | None

    def term_orders(self) -> dict[int, int]:
        orders = {i: g.order() for i, g in self.terms}
        if self.center is not None:
            orders[0] = self.center.order()
        return orders

    def ensure_exact(self) -> None:
        # Exactness is inherited from the geometric long exact sequence the
        # skeleton is extracted from; there are no maps to recheck here.
        return None


def _finite_or_raise(g: FinAbGroup, what: str) -> FinAbGroup:
    if not g.is_finite:
        raise InconsistencyError(f"{what} must be finite, got {g}")
    return g


def middle_homology_skeleton(inst: SteinInstance, k: int | None = None) -> OrderSkeleton:
    """Symmetric order skeleton centered at H_k(M) for n = 2k + 1 >= 5.

    Index 3s+1 carries H_{k-s}(W), index 3s+2 carries H_{k+1+s}(W), and
    index 3s (s > 0) carries H_{k-s}(M), mirrored to H_{k+s}(M) on the
    negative side; mirror pairs must agree in order (duality).  Degrees of
    M that the exact sequence pins between trivial groups are filled with
    the trivial group even without M data.
    """
    n = inst.n
    if n % 2 == 0:
        raise ValueError(f"middle homology skeleton requires odd n, got {n}")
    if n < 5:
        raise ValueError(f"middle homology skeleton requires n >= 5, got {n}")
    if k is None:
        k = (n - 1) // 2
    elif 2 * k + 1 != n:
        raise ValueError(f"k = {k} does not match n = {n}")
    wf = inst.wf_homology

    def m_at(q: int) -> FinAbGroup:
        if inst.m_homology is not None:
            return _finite_or_raise(inst.m_homology.at(q), f"H_{q}(M)")
        if wf.at(q).is_trivial and wf.at(n - q - 1).is_trivial:
            return FinAbGroup()  # pinched between trivial neighbors
        raise ValueError(
            f"H_{q}(M) is needed but not determined by the W data; provide M homology"
        )

    radius = 3 * k - 4
    terms: dict[int, FinAbGroup] = {}
    for i in range(1, radius + 1):
        s, rem = divmod(i, 3)
        if rem == 1:
            deg = k - s
            g = _finite_or_raise(wf.at(deg), f"H_{deg}(W)") if deg >= 2 else FinAbGroup()
            terms[i] = g
            terms[-i] = g
        elif rem == 2:
            deg = k + 1 + s
            g = _finite_or_raise(wf.at(deg), f"H_{deg}(W)") if deg <= n - 2 else FinAbGroup()
            terms[i] = g
            terms[-i] = g
        else:
            if k - s < 2:
                terms[i] = FinAbGroup()
                terms[-i] = FinAbGroup()
            else:
                terms[i] = m_at(k - s)
                terms[-i] = m_at(k + s)
                if terms[i].order() != terms[-i].order():
                    raise InconsistencyError(
                        f"duality violated: |H_{k - s}(M)| = {terms[i].order()} but "
                        f"|H_{k + s}(M)| = {terms[-i].order()}"
                    )
    center = None
    if inst.m_homology is not None:
        center = _finite_or_raise(inst.m_homology.at(k), f"H_{k}(M)")
    kept = tuple(sorted((i, g) for i, g in terms.items() if not g.is_trivial))
    return OrderSkeleton(radius, kept, center)


def forced_middle_order(inst: SteinInstance, k: int | None = None) -> SquareOrderResult:
    """Run the square-order computation on the middle homology skeleton."""
    return central_square_order(middle_homology_skeleton(inst, k))


@dataclass(frozen=True)
class RealizationPlan:
    """Dimensions realizing a prescribed square torsion order.

    The quotient manifold is a regular neighborhood of an a + r dimensional
    suspension complex whose single nontrivial reduced homology group is
    cyclic in degree r + 1; a = 4 suffices for odd torsion (punctured
    3-dimensional lens quotients embed in 4-space), a = 5 otherwise.
    """

    m: int
    k: int
    p: int
    n: int
    w_description: str
    open_flag: str | None = None


def realization_parameters(m: int) -> RealizationPlan:
    """Minimal (k, p, n) for which the construction realizes |H_k(M)| = m^2."""
    if m < 1:
        raise ValueError("torsion order m must be >= 1 (m = 0 would be infinite)")
    a = 4 if m % 2 == 1 else 5
    r = a - 2  # minimal r with 2(r + 1) + 1 > a + r
    k = r + 1
    p = a + r
    n = 2 * k + 1
    description = (
        f"regular neighborhood in R^{p} of the {r}-fold suspension of a punctured "
        f"3-dimensional lens quotient with cyclic degree-1 homology of order {m}"
    )
    open_flag = None
    if m % 2 == 0 and m > 1:
        open_flag = (
            "whether dimension 7 (k = 3) admits such a source with even middle "
            "torsion order is open"
        )
    return RealizationPlan(m, k, p, n, description, open_flag)


def realization_candidates(m: int) -> list[FinAbGroup]:
    """Isomorphism classes possible for the middle homology of the realized
    source: extensions of Z/m by Z/m, each of order m^2."""
    if m < 1:
        raise ValueError("torsion order m must be >= 1")
    return enumerate_extensions(cyclic(m), cyclic(m))


def realization_instance(m: int) -> SteinInstance:
    """Stein data of the realization: W has one cyclic homology group Z/m in
    the middle degree k."""
    plan = realization_parameters(m)
    groups = {0: FinAbGroup(1)}
    if m > 1:
        groups[plan.k] = cyclic(m)
    return SteinInstance(plan.n, plan.p, graded(plan.p, groups))
