"""Defect theory of collections of supports.

For a subcollection ``J`` the defect is ``dim V_J - |J|`` where ``V_J`` is
the rational span of all within-support differences ``a - b`` (``a, b`` in
the same ``A_i``, ``i`` in ``J``). Subcollections are ``frozenset`` objects
of zero-based support indices; internally they are bitmasks.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import CapacityError, InternalConsistencyError, PreconditionError
from .lattice import IntMatrix
from .polytope import SupportSet

DEFAULT_CAP = 24

Subset = frozenset


@dataclass(frozen=True)
class Collection:
    """Ambient dimension ``n`` and an ordered tuple of supports in Z^n."""

    n: int
    supports: tuple[SupportSet, ...]

    def __post_init__(self):
        if not self.supports:
            raise PreconditionError("a collection needs at least one support")
        for i, A in enumerate(self.supports):
            if A.dim != self.n:
                raise PreconditionError(
                    f"support {i} lives in dimension {A.dim}, expected {self.n}", f"supports[{i}]"
                )

    @classmethod
    def of(cls, n: int, supports: Iterable[Iterable[Sequence[int]]]) -> Collection:
        return cls(n, tuple(A if isinstance(A, SupportSet) else SupportSet.of(A, n) for A in supports))

    @property
    def k(self) -> int:
        return len(self.supports)

    def __len__(self):
        return len(self.supports)

    def __getitem__(self, i):
        return self.supports[i]

    def sub(self, indices: Iterable[int]) -> Collection:
        return Collection(self.n, tuple(self.supports[i] for i in sorted(indices)))

    def translate(self, shifts: Sequence[Sequence[int]]) -> Collection:
        return Collection(self.n, tuple(A.translate(v) for A, v in zip(self.supports, shifts)))

    def transform(self, M: IntMatrix) -> Collection:
        return Collection(M.nrows, tuple(A.transform(M) for A in self.supports))


def to_mask(J: Iterable[int]) -> int:
    m = 0
    for i in J:
        m |= 1 << i
    return m


def from_mask(mask: int) -> frozenset:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def _reduce(echelon: Sequence[tuple[int, ...]], v: Sequence[int]) -> tuple[int, ...] | None:
    """Fraction-free reduction of ``v`` against rows sorted by pivot; None if dependent."""
    v = list(v)
    for row in echelon:
        p = next(j for j, a in enumerate(row) if a)
        if v[p]:
            a, b = row[p], v[p]
            v = [a * x - b * y for x, y in zip(v, row)]
            g = 0
            for x in v:
                g = gcd(g, x)
            if g > 1:
                v = [x // g for x in v]
    if not any(v):
        return None
    return tuple(v)


def _pivot(row):
    return next(j for j, a in enumerate(row) if a)


class SpanTable:
    """Ranks of ``V_J`` for every subcollection, memoized along lowest-bit chains."""

    def __init__(self, c: Collection, cap: int = DEFAULT_CAP):
        if c.k > cap:
            raise CapacityError(f"{c.k} supports exceed the enumeration cap of {cap}")
        self.collection = c
        self._gens = [A.differences() for A in c.supports]
        self._echelon: dict[int, tuple[tuple[int, ...], ...]] = {0: ()}

    def echelon(self, mask: int) -> tuple[tuple[int, ...], ...]:
        ech = self._echelon.get(mask)
        if ech is not None:
            return ech
        low = mask & -mask
        rows = list(self.echelon(mask ^ low))
        for g in self._gens[low.bit_length() - 1]:
            r = _reduce(rows, g)
            if r is not None:
                rows.append(r)
                rows.sort(key=_pivot)
        ech = tuple(rows)
        self._echelon[mask] = ech
        return ech

    def rank(self, mask: int) -> int:
        return len(self.echelon(mask))

    def defect(self, mask: int) -> int:
        return self.rank(mask) - bin(mask).count("1")


def span_dim(c: Collection, J: Iterable[int]) -> int:
    """``dim V_J``."""
    return SpanTable(c).rank(to_mask(J))


def defect(c: Collection, J: Iterable[int]) -> int:
    J = frozenset(J)
    if any(not 0 <= i < c.k for i in J):
        raise PreconditionError(f"subset {sorted(J)} out of range for {c.k} supports")
    return SpanTable(c).defect(to_mask(J))


@dataclass(frozen=True)
class AnalysisReport:
    minimal_defect: int
    essential: frozenset
    codimension: int
    generically_consistent: bool
    defects: tuple[int, ...]

    def defect_of(self, J: Iterable[int]) -> int:
        return self.defects[to_mask(J)]

    @property
    def k(self) -> int:
        return len(self.defects).bit_length() - 1


def _inclusion_minimal(masks: Sequence[int]) -> list[int]:
    return [m for m in masks if not any(o != m and o & m == o for o in masks)]


def analyze(c: Collection, cap: int = DEFAULT_CAP) -> AnalysisReport:
    """Defects of all subcollections, the minimal defect and the essential subcollection.

    Raises InternalConsistencyError if the inclusion-minimal minimizer is not
    unique, which would contradict the uniqueness theorem.
    """
    table = SpanTable(c, cap)
    defects = tuple(table.defect(m) for m in range(1 << c.k))
    d = min(defects)
    if d >= 0:
        essential = 0
    else:
        minimal = _inclusion_minimal([m for m, v in enumerate(defects) if v == d])
        if len(minimal) != 1:
            raise InternalConsistencyError(
                f"minimal defect {d} attained by {len(minimal)} inclusion-minimal subcollections: "
                f"{[sorted(from_mask(m)) for m in minimal]}"
            )
        essential = minimal[0]
    return AnalysisReport(
        minimal_defect=d,
        essential=from_mask(essential),
        codimension=max(0, -d),
        generically_consistent=d >= 0,
        defects=defects,
    )


def minimal_defect(c: Collection, cap: int = DEFAULT_CAP) -> int:
    return analyze(c, cap).minimal_defect


def essential_subcollection(c: Collection, cap: int = DEFAULT_CAP) -> frozenset:
    return analyze(c, cap).essential


def is_generically_consistent(c: Collection, cap: int = DEFAULT_CAP) -> bool:
    return analyze(c, cap).generically_consistent


def consistency_codimension(c: Collection, cap: int = DEFAULT_CAP) -> int:
    return analyze(c, cap).codimension


def _submasks(mask: int):
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def consistent_basis_subcollection(c: Collection, cap: int = DEFAULT_CAP) -> frozenset:
    """Lexicographically first ``I`` inside the essential subcollection with
    ``|I| = dim V_J`` and no subcollection of negative defect.
    """
    report = analyze(c, cap)
    if report.minimal_defect > 0:
        raise PreconditionError("minimal defect must be <= 0")
    J = sorted(report.essential)
    target = SpanTable(c, cap).rank(to_mask(J))
    for I in combinations(J, target):
        mask = to_mask(I)
        if all(report.defects[s] >= 0 for s in _submasks(mask)):
            return frozenset(I)
    raise InternalConsistencyError(
        f"no consistent subcollection of size {target} inside essential {J}"
    )
