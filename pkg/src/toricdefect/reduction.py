"""Toric reduction along the essential subcollection.

The within-support differences of the essential subcollection ``J``
generate a lattice ``G_J``; its saturation ``Λ(J)`` is the integer part of
the linear span ``L(J)``. Projecting the remaining supports to
``Z^n / Λ(J)`` gives a generically consistent residual collection, and the
finite index ``[Λ(J) : G_J]`` counts the components of a generic nonempty
zero set.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce as fold

from .collection import DEFAULT_CAP, Collection, analyze
from .errors import InternalConsistencyError, PreconditionError
from .lattice import (
    QuotientProjection,
    SublatticeBasis,
    quotient_projection,
    saturate,
    sublattice_index,
)
from .polytope import SupportSet, minkowski_sum


@dataclass(frozen=True)
class Reduction:
    essential: frozenset
    difference_lattice: SublatticeBasis
    quotient: QuotientProjection
    index: int
    residual_supports: tuple[SupportSet, ...]
    residual_indices: tuple[int, ...]

    @property
    def fiber_dim(self) -> int:
        """Dimension of the quotient ``R^n / L(J)``."""
        return self.quotient.target_dim

    @property
    def saturated_lattice(self) -> SublatticeBasis:
        return self.quotient.kernel

    def residual_collection(self) -> Collection | None:
        if not self.residual_supports:
            return None
        return Collection(self.fiber_dim, self.residual_supports)


def reduce(c: Collection, cap: int = DEFAULT_CAP) -> Reduction:
    report = analyze(c, cap)
    J = report.essential
    gens = [g for i in sorted(J) for g in c.supports[i].differences()]
    G = SublatticeBasis.from_generators(gens, c.n)
    lam = saturate(G)
    P = quotient_projection(lam)
    index = sublattice_index(G, lam)
    rest = tuple(i for i in range(c.k) if i not in J)
    residual = tuple(
        SupportSet.of((P(a) for a in c.supports[i].points), P.target_dim) for i in rest
    )
    red = Reduction(J, G, P, index, residual, rest)
    res = red.residual_collection()
    if res is not None and analyze(res, cap).minimal_defect != 0:
        raise InternalConsistencyError(
            f"residual collection has minimal defect {analyze(res, cap).minimal_defect}, expected 0"
        )
    return red


def reduce_to_defect_one(c: Collection, cap: int = DEFAULT_CAP) -> Collection:
    """Equivalent collection of minimal defect -1.

    With minimal defect ``-d`` and essential ``J`` of size ``r``, the
    essential supports are replaced by ``r - d + 1`` copies of their
    Minkowski sum; the other supports follow unchanged.
    """
    report = analyze(c, cap)
    d = -report.minimal_defect
    if d < 1:
        raise PreconditionError("collection is generically consistent; nothing to reduce")
    if d == 1:
        return c
    J = sorted(report.essential)
    A_J = fold(minkowski_sum, (c.supports[i] for i in J))
    copies = len(J) - d + 1
    out = Collection(c.n, (A_J,) * copies + tuple(c.supports[i] for i in range(c.k) if i not in report.essential))
    got = analyze(out, cap).minimal_defect
    if got != -1:
        raise InternalConsistencyError(f"reduced collection has minimal defect {got}, expected -1")
    return out
