"""Finitely generated abelian groups in invariant-factor normal form.

A group is stored as a free rank plus a chain of invariant factors
d1 | d2 | ... | dt (each >= 2), so two values are equal exactly when the
groups are isomorphic.  Every constructor re-canonicalizes, e.g.

>>> FinAbGroup(0, (2, 3)) == FinAbGroup(0, (6,))
True
>>> FinAbGroup(0, (4, 2, 8)).invariant_factors
(2, 4, 8)

Homomorphisms are integer matrices acting on the invariant-factor
generators (free generators first, then torsion generators).
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product
from math import prod

from sympy import factorint

from .errors import BoundExceededError

DEFAULT_MAX_ORDER = 4096
MAX_ORDER_ENV = "SGM_TOPO_MAX_ORDER"


def enumeration_bound() -> int:
    """Cap on |H|*|Q| for extension enumeration; overridable via environment."""
    raw = os.environ.get(MAX_ORDER_ENV)
    return int(raw) if raw else DEFAULT_MAX_ORDER


@lru_cache(maxsize=None)
def _factored(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((int(p), int(e)) for p, e in factorint(n).items()))


def _canonical_factors(torsion: tuple[int, ...]) -> tuple[int, ...]:
    by_prime: dict[int, list[int]] = {}
    for d in torsion:
        if not isinstance(d, int) or d < 2:
            raise ValueError(f"torsion coefficient {d!r} is not an integer >= 2")
        for p, e in _factored(d):
            by_prime.setdefault(p, []).append(e)
    exps = {p: sorted(es, reverse=True) for p, es in by_prime.items()}
    length = max((len(es) for es in exps.values()), default=0)
    # slot i collects the i-th largest primary factor of every prime
    factors = [
        prod(p ** es[i] for p, es in exps.items() if i < len(es))
        for i in range(length)
    ]
    return tuple(reversed(factors))


@dataclass(frozen=True)
class FinAbGroup:
    """Finitely generated abelian group Z^rank + Z/d1 + ... + Z/dt."""

    rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 0:
            raise ValueError(f"rank {self.rank!r} is not a non-negative integer")
        object.__setattr__(
            self, "invariant_factors", _canonical_factors(tuple(self.invariant_factors))
        )

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> int | None:
        """Group order, or None when the group is infinite.

        >>> FinAbGroup(0, (6,)).order()
        6
        >>> FinAbGroup().order()
        1
        >>> FinAbGroup(1).order() is None
        True
        """
        if self.rank > 0:
            return None
        return prod(self.invariant_factors)

    def generator_orders(self) -> tuple[int, ...]:
        """Orders of the canonical generators; 0 stands for infinite order."""
        return (0,) * self.rank + self.invariant_factors

    def direct_sum(self, other: FinAbGroup) -> FinAbGroup:
        return FinAbGroup(
            self.rank + other.rank, self.invariant_factors + other.invariant_factors
        )

    def primary_decomposition(self) -> dict[int, tuple[int, ...]]:
        """Map prime p -> ascending exponent multiset of the p-primary part.

        >>> FinAbGroup(0, (12, 3)).primary_decomposition()
        {2: (2,), 3: (1, 1)}
        """
        if not self.is_finite:
            raise ValueError("primary decomposition requires a finite group")
        dec: dict[int, list[int]] = {}
        for d in self.invariant_factors:
            for p, e in _factored(d):
                dec.setdefault(p, []).append(e)
        return {p: tuple(sorted(es)) for p, es in sorted(dec.items())}

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


TRIVIAL = FinAbGroup()


def canonicalize(rank: int, torsion: list[int] | tuple[int, ...]) -> FinAbGroup:
    """Invariant-factor form of Z^rank + sum of Z/t for t in torsion."""
    return FinAbGroup(rank, tuple(torsion))


def cyclic(n: int) -> FinAbGroup:
    """Cyclic group of order n >= 1 (n = 1 gives the trivial group)."""
    if n < 1:
        raise ValueError(f"cyclic group order must be >= 1, got {n}")
    return FinAbGroup(0, () if n == 1 else (n,))


def from_primary(decomposition: dict[int, tuple[int, ...]], rank: int = 0) -> FinAbGroup:
    """Rebuild a group from a prime -> exponent-multiset map."""
    torsion = tuple(p**e for p, es in decomposition.items() for e in es)
    return FinAbGroup(rank, torsion)


def direct_sum(g1: FinAbGroup, g2: FinAbGroup) -> FinAbGroup:
    return g1.direct_sum(g2)


def is_double(g: FinAbGroup) -> FinAbGroup | None:
    """Return H with H + H isomorphic to g, or None if no such H exists.

    H exists exactly when every prime-power summand occurs with even
    multiplicity in the primary decomposition.
    """
    if not g.is_finite:
        raise ValueError("is_double requires a finite group")
    half: dict[int, tuple[int, ...]] = {}
    for p, exps in g.primary_decomposition().items():
        counts = Counter(exps)
        if any(c % 2 for c in counts.values()):
            return None
        half[p] = tuple(sorted(e for e, c in counts.items() for _ in range(c // 2)))
    return from_primary(half)


class LinkingShape(Enum):
    """Structure alternatives for the torsion of middle homology in dimensions 4l+1."""

    DOUBLE = "DOUBLE"
    DOUBLE_PLUS_Z2 = "DOUBLE_PLUS_Z2"
    NONE = "NONE"


def linking_form_alternatives(t: FinAbGroup) -> frozenset[LinkingShape]:
    """Which of the shapes H + H or H + H + Z/2 the finite group t can take."""
    if not t.is_finite:
        raise ValueError("linking_form_alternatives requires a finite group")
    shapes = set()
    if is_double(t) is not None:
        shapes.add(LinkingShape.DOUBLE)
    dec = t.primary_decomposition()
    if 1 in dec.get(2, ()):
        peeled = dict(dec)
        exps = list(peeled[2])
        exps.remove(1)
        peeled[2] = tuple(exps)
        if is_double(from_primary(peeled)) is not None:
            shapes.add(LinkingShape.DOUBLE_PLUS_Z2)
    return frozenset(shapes) if shapes else frozenset({LinkingShape.NONE})


def _partitions(n: int, max_part: int | None = None):
    """Partitions of n as descending tuples."""
    if n == 0:
        yield ()
        return
    top = min(n, max_part) if max_part is not None else n
    for first in range(top, 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _lr_positive(lam: tuple[int, ...], mu: tuple[int, ...], nu: tuple[int, ...]) -> bool:
    """Whether the skew shape lam/mu admits a lattice filling with content nu.

    This is the classical criterion for an abelian p-group of type lam to
    contain a subgroup of type mu with quotient of type nu.  Backtracking
    over the cells in reverse reading order; shapes here are tiny.
    """
    if len(mu) > len(lam) or any(m > l for m, l in zip(mu, lam)):
        return False
    mu_padded = mu + (0,) * (len(lam) - len(mu))
    cells = []  # (row, col, first_in_row) in reverse reading order
    for r, (l, m) in enumerate(zip(lam, mu_padded)):
        for c in range(l - 1, m - 1, -1):
            cells.append((r, c, c == l - 1))
    if len(cells) != sum(nu):
        return False
    if not cells:
        return not nu
    values = len(nu)
    filling: dict[tuple[int, int], int] = {}

    def fill(idx: int, counts: list[int]) -> bool:
        if idx == len(cells):
            return True
        r, c, first = cells[idx]
        lo, hi = 1, values
        if not first:  # weakly increasing along the row, scanned right to left
            hi = filling[(r, c + 1)]
        if r > 0 and c >= mu_padded[r - 1]:  # strictly increasing down columns
            lo = filling[(r - 1, c)] + 1
        for v in range(lo, hi + 1):
            if counts[v - 1] >= nu[v - 1]:
                continue
            if v > 1 and counts[v - 1] >= counts[v - 2]:  # lattice-word prefix rule
                continue
            counts[v - 1] += 1
            filling[(r, c)] = v
            if fill(idx + 1, counts):
                return True
            counts[v - 1] -= 1
        filling.pop((r, c), None)
        return False

    return fill(0, [0] * values)


def enumerate_extensions(
    h: FinAbGroup, q: FinAbGroup, *, max_order: int | None = None
) -> list[FinAbGroup]:
    """All isomorphism classes of abelian G containing a copy of h with quotient q.

    Works one prime at a time; each candidate primary type is admitted by the
    skew-filling criterion and the results are combined multiplicatively.
    The list is duplicate-free and sorted by descending invariant factors.
    """
    if not (h.is_finite and q.is_finite):
        raise ValueError("extension enumeration requires finite groups")
    bound = max_order if max_order is not None else enumeration_bound()
    total = h.order() * q.order()
    if total > bound:
        raise BoundExceededError(
            f"|H|*|Q| = {total} exceeds the enumeration bound {bound}"
        )
    dec_h = h.primary_decomposition()
    dec_q = q.primary_decomposition()
    primes = sorted(set(dec_h) | set(dec_q))
    per_prime: list[list[tuple[int, ...]]] = []
    for p in primes:
        mu = tuple(sorted(dec_h.get(p, ()), reverse=True))
        nu = tuple(sorted(dec_q.get(p, ()), reverse=True))
        lams = [
            lam for lam in _partitions(sum(mu) + sum(nu)) if _lr_positive(lam, mu, nu)
        ]
        per_prime.append(lams)
    results = []
    for combo in product(*per_prime):
        dec = {p: tuple(sorted(lam)) for p, lam in zip(primes, combo)}
        results.append(from_primary(dec))
    return sorted(set(results), key=lambda g: g.invariant_factors, reverse=True)


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between f.g. abelian groups as a matrix on canonical generators.

    Column j is the image of the j-th source generator in target coordinates
    (free generators first, then torsion generators).  Construction checks
    well-definedness: each column, scaled by its generator's order, must
    vanish in the target.  Entries are reduced modulo the target orders.
    """

    source: FinAbGroup
    target: FinAbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        src_orders = self.source.generator_orders()
        tgt_orders = self.target.generator_orders()
        mat = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(mat) != len(tgt_orders) or any(len(row) != len(src_orders) for row in mat):
            raise ValueError(
                f"matrix shape {len(mat)}x{len(mat[0]) if mat else 0} does not match "
                f"{len(tgt_orders)} target by {len(src_orders)} source generators"
            )
        reduced = []
        for i, e in enumerate(tgt_orders):
            row = []
            for j, d in enumerate(src_orders):
                entry = mat[i][j]
                if e > 0:
                    entry %= e
                    if d > 0 and (d * entry) % e != 0:
                        raise ValueError(
                            f"ill-defined: order-{d} generator {j} maps to an element "
                            f"not killed by {d} in target coordinate {i}"
                        )
                elif d > 0 and entry != 0:
                    raise ValueError(
                        f"ill-defined: torsion generator {j} has nonzero image "
                        f"in free target coordinate {i}"
                    )
                row.append(entry)
            reduced.append(tuple(row))
        object.__setattr__(self, "matrix", tuple(reduced))

    @classmethod
    def zero(cls, source: FinAbGroup, target: FinAbGroup) -> GroupHom:
        rows = len(target.generator_orders())
        cols = len(source.generator_orders())
        return cls(source, target, tuple((0,) * cols for _ in range(rows)))

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)

    def after(self, first: GroupHom) -> GroupHom:
        """Composite self . first (apply ``first``, then ``self``)."""
        if first.target != self.source:
            raise ValueError("composition mismatch: first.target != self.source")
        mid = len(self.source.generator_orders())
        cols = len(first.source.generator_orders())
        rows = len(self.target.generator_orders())
        mat = tuple(
            tuple(
                sum(self.matrix[i][k] * first.matrix[k][j] for k in range(mid))
                for j in range(cols)
            )
            for i in range(rows)
        )
        return GroupHom(first.source, self.target, mat)
