"""Root counts of generic and generic consistent sparse systems, and the
multidegree of the sparse resultant.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .collection import DEFAULT_CAP, Collection, analyze
from .errors import PreconditionError
from .polytope import mixed_volume, newton_polytope
from .reduction import Reduction, reduce


def bkk_count(c: Collection) -> int:
    """Normalized mixed volume ``n! MV`` of the Newton polytopes of ``n`` supports in Z^n."""
    if c.k != c.n:
        raise PreconditionError(f"bkk_count needs n={c.n} supports, got {c.k}")
    return mixed_volume([newton_polytope(A) for A in c.supports], c.n).normalized


@dataclass(frozen=True)
class CountReport:
    """Number of points in the zero set of a generic consistent system.

    ``predicted_count = factorial_factor * index_factor * mixed_volume_factor``
    where ``mixed_volume_factor`` is the (unnormalized) mixed volume of the
    projected Newton polytopes in lattice coordinates of the quotient, and
    ``normalized_mixed_volume = factorial_factor * mixed_volume_factor``.
    """

    predicted_count: int
    factorial_factor: int
    index_factor: int
    mixed_volume_factor: Fraction
    normalized_mixed_volume: int
    zero_set_dim: int
    essential: frozenset
    quotient_dim: int


def _residual_mixed_volume(red: Reduction):
    polys = [newton_polytope(A) for A in red.residual_supports]
    return mixed_volume(polys, red.fiber_dim)


def overdetermined_count(c: Collection, cap: int = DEFAULT_CAP) -> CountReport:
    m = c.k - c.n
    if m < 1:
        raise PreconditionError(
            f"overdetermined_count needs more supports than the dimension (k={c.k}, n={c.n})"
        )
    d = analyze(c, cap).minimal_defect
    if d != -m:
        raise PreconditionError(
            f"minimal defect is {d} but k - n = {m}; the generic consistent zero set "
            f"has dimension {-d - m} and is not a finite point set"
        )
    red = reduce(c, cap)
    dim0 = red.fiber_dim - len(red.residual_supports)
    if dim0 != 0:
        raise PreconditionError(f"zero set dimension is {dim0}, expected 0")
    mv = _residual_mixed_volume(red)
    fac = factorial(red.fiber_dim)
    count = fac * red.index * mv.standard
    assert count.denominator == 1 and int(count) == red.index * mv.normalized
    return CountReport(
        predicted_count=int(count),
        factorial_factor=fac,
        index_factor=red.index,
        mixed_volume_factor=mv.standard,
        normalized_mixed_volume=mv.normalized,
        zero_set_dim=0,
        essential=red.essential,
        quotient_dim=red.fiber_dim,
    )


def zero_set_dimension(c: Collection, cap: int = DEFAULT_CAP) -> int:
    """Dimension of the zero set of a generic (consistent, if overdetermined) system."""
    red = reduce(c, cap)
    return red.fiber_dim - len(red.residual_supports)


@dataclass(frozen=True)
class ResultantDegrees:
    degrees: tuple[int, ...]


def resultant_degrees(c: Collection, cap: int = DEFAULT_CAP) -> ResultantDegrees:
    """Degree of the sparse resultant in the coefficients of each polynomial.

    The degree in the ``i``-th entry is the generic number of roots of the
    other ``n`` polynomials, which is zero when those are overdetermined.
    """
    if c.k != c.n + 1:
        raise PreconditionError(f"resultant needs n+1={c.n + 1} supports, got {c.k}")
    d = analyze(c, cap).minimal_defect
    if d != -1:
        raise PreconditionError(
            f"resultant degrees need minimal defect -1 (codimension one), got {d}"
        )
    degrees = []
    for i in range(c.k):
        rest = [A for j, A in enumerate(c.supports) if j != i]
        if not rest:
            degrees.append(1)
            continue
        sub = Collection(c.n, tuple(rest))
        if analyze(sub, cap).minimal_defect < 0:
            degrees.append(0)
        else:
            degrees.append(bkk_count(sub))
    return ResultantDegrees(tuple(degrees))
