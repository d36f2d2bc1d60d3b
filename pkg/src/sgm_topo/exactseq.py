"""Exact sequences of finite abelian groups.

A sequence is a finite window of terms A_lo .. A_hi inside an infinite
sequence that is trivial outside the window, together with one
homomorphism per consecutive pair.  Verification checks ker = im at every
index, including injectivity at the left edge and surjectivity at the
right edge.  Kernel and image orders come from Smith normal forms of
lifted presentations; an element-by-element count is provided separately
as the slow trustworthy oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt, prod

from sympy import factorint

from .abelian import FinAbGroup, GroupHom, from_primary
from .errors import InconsistencyError, NotExactError, SymmetryError
from .zlinalg import IntMatrix, _smith_full, cokernel, hstack, kernel_basis, lattice_contains


def _hom_matrix(h: GroupHom) -> IntMatrix:
    rows = len(h.target.generator_orders())
    cols = len(h.source.generator_orders())
    return IntMatrix(rows, cols, h.matrix)


def _relation_matrix(g: FinAbGroup) -> IntMatrix:
    if not g.is_finite:
        raise ValueError("finite group required")
    return IntMatrix.diagonal(g.invariant_factors)


def image_order(h: GroupHom) -> int:
    """Order of the image, from the cokernel of the lifted presentation."""
    if not (h.source.is_finite and h.target.is_finite):
        raise ValueError("image_order requires finite groups")
    presented = hstack(_hom_matrix(h), _relation_matrix(h.target))
    quotient = cokernel(presented).order()
    return h.target.order() // quotient


def kernel_order(h: GroupHom) -> int:
    if not (h.source.is_finite and h.target.is_finite):
        raise ValueError("kernel_order requires finite groups")
    return h.source.order() // image_order(h)


def element_kernel_image_orders(h: GroupHom) -> tuple[int, int]:
    """(|ker|, |im|) by exhaustive element enumeration; the slow oracle."""
    src_orders = h.source.generator_orders()
    tgt_orders = h.target.generator_orders()
    if 0 in src_orders or 0 in tgt_orders:
        raise ValueError("element enumeration requires finite groups")
    images = set()
    kernel = 0
    coords = [0] * len(src_orders)
    while True:
        img = tuple(
            sum(h.matrix[i][j] * coords[j] for j in range(len(coords))) % tgt_orders[i]
            for i in range(len(tgt_orders))
        )
        images.add(img)
        if all(x == 0 for x in img):
            kernel += 1
        for j in range(len(coords)):
            coords[j] += 1
            if coords[j] < src_orders[j]:
                break
            coords[j] = 0
        else:
            break
    return kernel, len(images)


def _image_lattice(h: GroupHom) -> IntMatrix:
    """Generators of the image subgroup, lifted to the target's cover lattice."""
    return hstack(_hom_matrix(h), _relation_matrix(h.target))


def _kernel_lattice(h: GroupHom) -> IntMatrix:
    """Basis of the kernel subgroup, lifted to the source's cover lattice."""
    m = _hom_matrix(h)
    augmented = hstack(m, _relation_matrix(h.target))
    basis = kernel_basis(augmented)
    ent = tuple(basis.entries[i] for i in range(m.cols))
    return IntMatrix(m.cols, basis.cols, ent)


@dataclass(frozen=True)
class ExactnessFailure:
    index: int
    kernel_order: int
    image_order: int
    contained: bool

    def __str__(self) -> str:
        detail = "" if self.contained else "; image not inside kernel"
        return (
            f"not exact at index {self.index}: |ker| = {self.kernel_order}, "
            f"|im| = {self.image_order}{detail}"
        )


@dataclass(frozen=True)
class ExactnessReport:
    exact: bool
    failures: tuple[ExactnessFailure, ...] = ()

    def __bool__(self) -> bool:
        return self.exact


class ExactSequence:
    """Finite window of finite abelian groups with connecting homomorphisms."""

    def __init__(self, lo: int, hi: int, terms: dict[int, FinAbGroup],
                 maps: dict[int, GroupHom] | None = None):
        if lo > hi:
            raise ValueError("empty index window")
        self.lo = lo
        self.hi = hi
        self.terms = {}
        for i, g in terms.items():
            if not (lo <= i <= hi):
                raise ValueError(f"term index {i} outside window [{lo}, {hi}]")
            if not g.is_finite:
                raise ValueError(f"term at index {i} is infinite")
            if not g.is_trivial:
                self.terms[i] = g
        self.maps = {}
        maps = maps or {}
        for i in range(lo, hi):
            h = maps.get(i)
            if h is None:
                src, tgt = self.term(i), self.term(i + 1)
                if src.is_trivial or tgt.is_trivial:
                    h = GroupHom.zero(src, tgt)
                else:
                    raise ValueError(f"missing map at index {i}")
            if h.source != self.term(i) or h.target != self.term(i + 1):
                raise ValueError(f"map at index {i} does not match adjacent terms")
            self.maps[i] = h
        self._report: ExactnessReport | None = None

    def term(self, i: int) -> FinAbGroup:
        return self.terms.get(i, FinAbGroup())

    def map(self, i: int) -> GroupHom:
        """Connecting map out of index i; zero maps beyond the window."""
        if i in self.maps:
            return self.maps[i]
        return GroupHom.zero(self.term(i), self.term(i + 1))

    def term_orders(self) -> dict[int, int]:
        return {i: self.term(i).order() for i in range(self.lo, self.hi + 1)}

    def with_map_replaced(self, index: int, h: GroupHom) -> ExactSequence:
        maps = dict(self.maps)
        maps[index] = h
        return ExactSequence(self.lo, self.hi, dict(self.terms), maps)

    def ensure_exact(self) -> None:
        report = verify_exactness(self)
        if not report.exact:
            raise NotExactError(str(report.failures[0]))


def verify_exactness(seq: ExactSequence) -> ExactnessReport:
    """Check ker = im at every index of the ambient (zero-padded) sequence."""
    if seq._report is not None:
        return seq._report
    failures = []
    for i in range(seq.lo, seq.hi + 1):
        incoming = seq.map(i - 1)
        outgoing = seq.map(i)
        im = image_order(incoming)
        ker = kernel_order(outgoing)
        contained = True
        if im > 1:
            contained = lattice_contains(_kernel_lattice(outgoing), _image_lattice(incoming))
        if ker != im or not contained:
            failures.append(ExactnessFailure(i, ker, im, contained))
    seq._report = ExactnessReport(not failures, tuple(failures))
    return seq._report


def alternating_order_identity(seq: ExactSequence) -> tuple[int, int]:
    """(product over odd indices, product over even indices) of term orders.

    The two products agree for exact sequences; non-exact input is rejected.
    """
    seq.ensure_exact()
    orders = seq.term_orders()
    odd = prod(o for i, o in orders.items() if i % 2)
    even = prod(o for i, o in orders.items() if i % 2 == 0)
    return odd, even


@dataclass(frozen=True)
class SquareOrderResult:
    """Central order forced to root**2 by exactness plus mirror symmetry."""

    root: int
    odd_positive_product: int
    even_positive_product: int
    center_order: int | None

    @property
    def certificate(self) -> tuple[int, int]:
        return self.odd_positive_product, self.even_positive_product


def central_square_order(seq) -> SquareOrderResult:
    """Root k with |A_0| = k*k, for an exact sequence whose term orders are
    mirror-symmetric about index 0.

    k is the ratio x/y of the order products over positive odd and positive
    even indices.  Accepts any object exposing term_orders() and
    ensure_exact(); the center order may be absent, in which case it is
    reported as forced rather than checked.
    """
    seq.ensure_exact()
    orders = dict(seq.term_orders())
    center = orders.pop(0, None)
    for i in {abs(i) for i in orders}:
        if orders.get(i, 1) != orders.get(-i, 1):
            raise SymmetryError(
                f"|A_{i}| = {orders.get(i, 1)} differs from |A_-{i}| = {orders.get(-i, 1)}"
            )
    x = prod(o for i, o in orders.items() if i > 0 and i % 2 == 1)
    y = prod(o for i, o in orders.items() if i > 0 and i % 2 == 0)
    if x % y != 0:
        raise InconsistencyError(
            f"odd/even order products x = {x}, y = {y} have a non-integer ratio; "
            "the sequence cannot be exact"
        )
    root = x // y
    if center is not None and center != root * root:
        raise InconsistencyError(
            f"central order {center} differs from forced value {root * root}"
        )
    return SquareOrderResult(root, x, y, center)


def _random_partition(rng: random.Random, n: int) -> tuple[int, ...]:
    parts = []
    remaining = n
    while remaining:
        take = rng.randint(1, remaining)
        parts.append(take)
        remaining -= take
    return tuple(sorted(parts))


def _random_group_of_order(rng: random.Random, n: int) -> FinAbGroup:
    dec = {int(p): _random_partition(rng, int(e)) for p, e in factorint(n).items()}
    return from_primary(dec)


def _random_group(rng: random.Random, max_order: int) -> FinAbGroup:
    return _random_group_of_order(rng, rng.randint(1, max_order))


def _random_extension(
    rng: random.Random, kernel: FinAbGroup, quotient: FinAbGroup
) -> tuple[FinAbGroup, GroupHom, GroupHom]:
    """Random group G with an explicit short exact sequence kernel -> G -> quotient.

    G is presented on the kernel and quotient generators with relations
    d_j k_j = 0 and e_j q_j = (random element of the kernel); the Smith
    transform of that presentation yields canonical coordinates and the
    inclusion/projection matrices.
    """
    d = kernel.invariant_factors
    e = quotient.invariant_factors
    s, t = len(d), len(e)
    w = s + t
    rel = [[0] * w for _ in range(w)]
    for j in range(s):
        rel[j][j] = d[j]
    for j in range(t):
        rel[s + j][s + j] = e[j]
        for i in range(s):
            rel[i][s + j] = -rng.randrange(d[i])
    u, uinv, snf, _, _ = _smith_full(IntMatrix(w, w, tuple(tuple(r) for r in rel)))
    diag = [snf.entries[i][i] for i in range(w)]
    keep = [i for i in range(w) if diag[i] > 1]
    group = FinAbGroup(0, tuple(diag[i] for i in keep))
    incl = GroupHom(
        kernel, group,
        tuple(tuple(u.entries[i][j] for j in range(s)) for i in keep),
    )
    proj = GroupHom(
        group, quotient,
        tuple(tuple(uinv.entries[s + i][j] for j in keep) for i in range(t)),
    )
    return group, incl, proj


def _splice(rng: random.Random, kernels: list[FinAbGroup], lo: int) -> ExactSequence:
    """Splice short exact sequences K_i -> G_i -> K_{i+1} (K_1 trivial) into a
    long exact sequence G_1, ..., G_s, K_{s+1} starting at index lo."""
    count = len(kernels) - 1
    groups = []
    inclusions = []
    projections = []
    for i in range(count):
        quotient = kernels[i + 1]
        g, incl, proj = _random_extension(rng, kernels[i], quotient)
        groups.append(g)
        inclusions.append(incl)
        projections.append(proj)
    terms = {lo + i: groups[i] for i in range(count)}
    terms[lo + count] = kernels[count]
    maps = {}
    for i in range(count - 1):
        maps[lo + i] = inclusions[i + 1].after(projections[i])
    maps[lo + count - 1] = projections[count - 1]
    return ExactSequence(lo, lo + count, terms, maps)


def splice_random(seed: int, length: int, order_bound: int) -> ExactSequence:
    """Deterministic random exact sequence with length + 2 terms at indices
    0 .. length + 1, built by gluing random short exact sequences."""
    if length < 1:
        raise ValueError("length must be >= 1")
    if order_bound < 1:
        raise ValueError("order_bound must be >= 1")
    rng = random.Random(seed)
    kernels = [FinAbGroup()]
    for _ in range(length + 1):
        cap = max(order_bound // max(kernels[-1].order(), 1), 1)
        kernels.append(_random_group(rng, min(cap, order_bound)))
    return _splice(rng, kernels, 0)


def splice_symmetric(seed: int, half_length: int, order_bound: int) -> ExactSequence:
    """Deterministic random exact sequence at indices -r .. r whose term
    orders are mirror-symmetric about 0.

    The left-half gluing groups are free; the right half reuses their orders
    with freshly randomized structure, which is what makes the term orders
    (not the groups) symmetric.
    """
    if half_length < 1:
        raise ValueError("half_length must be >= 1")
    r = half_length
    rng = random.Random(seed)
    kernels: list[FinAbGroup] = [FinAbGroup()]  # K_1
    for step in range(r):  # K_2 .. K_{r+1} free random
        cap = max(order_bound // max(kernels[-1].order(), 1), 1)
        if step == r - 1:
            # the central term has order |K_{r+1}|^2; keep it within bound
            cap = min(cap, isqrt(order_bound))
        kernels.append(_random_group(rng, max(min(cap, order_bound), 1)))
    for i in range(r + 2, 2 * r + 2):  # K_{r+2} .. K_{2r+1} mirror the orders
        mirrored = kernels[(2 * r + 3 - i) - 1]
        kernels.append(_random_group_of_order(rng, mirrored.order()))
    return _splice(rng, kernels, -r)
