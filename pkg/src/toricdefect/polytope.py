"""Exact lattice polytopes: Newton polytopes, Minkowski sums, volumes and
mixed volumes.

Hulls are computed with an exact placing triangulation in lattice
coordinates of the affine span, which yields the volume and the facets in
one pass. All arithmetic is integer or :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd
from typing import Iterable, Sequence

from .errors import PreconditionError
from .lattice import IntMatrix, SublatticeBasis, determinant, saturate, smith_normal_form

Point = tuple[int, ...]


@dataclass(frozen=True)
class SupportSet:
    """A finite nonempty set of exponent vectors in Z^n, sorted and deduplicated."""

    dim: int
    points: tuple[Point, ...]

    def __post_init__(self):
        if not self.points:
            raise PreconditionError("support set must be nonempty")
        for p in self.points:
            if len(p) != self.dim:
                raise PreconditionError(f"point {p} has length {len(p)}, expected {self.dim}")
        canon = tuple(sorted(set(self.points)))
        if canon != self.points:
            object.__setattr__(self, "points", canon)

    @classmethod
    def of(cls, points: Iterable[Sequence[int]], dim: int | None = None) -> SupportSet:
        pts = tuple(tuple(int(v) for v in p) for p in points)
        if dim is None:
            if not pts:
                raise PreconditionError("support set must be nonempty")
            dim = len(pts[0])
        return cls(dim, pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def translate(self, v: Sequence[int]) -> SupportSet:
        return SupportSet.of((tuple(a + b for a, b in zip(p, v)) for p in self.points), self.dim)

    def transform(self, M: IntMatrix) -> SupportSet:
        """Image under the linear map ``x -> M x``."""
        return SupportSet.of((M.apply(p) for p in self.points), M.nrows)

    def differences(self) -> list[Point]:
        """Differences ``a - a0`` to the first point; they span the same lattice as all differences."""
        a0 = self.points[0]
        return [tuple(a - b for a, b in zip(p, a0)) for p in self.points[1:]]


def minkowski_sum(A: SupportSet, B: SupportSet) -> SupportSet:
    if A.dim != B.dim:
        raise PreconditionError(f"dimension mismatch: {A.dim} vs {B.dim}")
    return SupportSet.of(
        (tuple(x + y for x, y in zip(a, b)) for a in A.points for b in B.points), A.dim
    )


@dataclass(frozen=True)
class Facet:
    """The inequality ``normal . x <= offset`` with a primitive integer normal."""

    normal: Point
    offset: int


@dataclass(frozen=True)
class Polytope:
    """Convex hull of a lattice point set.

    ``facets`` are the facets relative to the affine hull, written with
    ambient integer normals; a point has no facets. ``relative_volume`` is
    the volume in the affine hull measured against its integer lattice,
    which for full-dimensional polytopes is the euclidean volume.
    """

    dim: int
    vertices: tuple[Point, ...]
    facets: tuple[Facet, ...]
    affine_dim: int
    relative_volume: Fraction = field(compare=False)

    def contains(self, x: Sequence[int]) -> bool:
        """Membership test, valid for points of the affine hull."""
        return all(sum(a * b for a, b in zip(f.normal, x)) <= f.offset for f in self.facets)


def _normal(face: Sequence[Point], d: int) -> list[int]:
    """Integer normal to the hyperplane through ``d`` affinely independent points in Z^d."""
    base = face[0]
    rows = [[a - b for a, b in zip(p, base)] for p in face[1:]]
    out = []
    for j in range(d):
        minor = IntMatrix.from_rows([r[:j] + r[j + 1:] for r in rows], d - 1)
        out.append((-1) ** (d - 1 + j) * determinant(minor))
    return out


def _orient(face: Sequence[Point], q: Point) -> int:
    base = face[0]
    rows = [[a - b for a, b in zip(p, base)] for p in face[1:]]
    rows.append([a - b for a, b in zip(q, base)])
    det = determinant(IntMatrix.from_rows(rows, len(q)))
    return (det > 0) - (det < 0)


def _hull_full(points: list[Point], d: int):
    """Placing triangulation of full-dimensional points in Z^d, d >= 1.

    Returns (vertices, [(normal, offset)], volume).
    """
    # initial simplex: greedy affine independence in sorted order
    simplex = [0]
    for i in range(1, len(points)):
        trial = [points[j] for j in simplex] + [points[i]]
        base = trial[0]
        diffs = IntMatrix.from_rows([[a - b for a, b in zip(p, base)] for p in trial[1:]], d)
        if smith_normal_form(diffs).rank == len(trial) - 1:
            simplex.append(i)
            if len(simplex) == d + 1:
                break
    assert len(simplex) == d + 1, "points are not full-dimensional"

    def simplex_det(idx):
        base = points[idx[0]]
        rows = [[a - b for a, b in zip(points[i], base)] for i in idx[1:]]
        return abs(determinant(IntMatrix.from_rows(rows, d)))

    total = simplex_det(simplex)
    # boundary (d-1)-faces -> index of the opposite vertex in the owning simplex
    boundary: dict[frozenset, int] = {}
    for k in simplex:
        boundary[frozenset(i for i in simplex if i != k)] = k
    used = set(simplex)

    for q in range(len(points)):
        if q in used:
            continue
        visible = []
        for face, opp in boundary.items():
            fpts = [points[i] for i in sorted(face)]
            s_q = _orient(fpts, points[q])
            if s_q != 0 and s_q == -_orient(fpts, points[opp]):
                visible.append(face)
        if not visible:
            continue
        used.add(q)
        for face in visible:
            opp = boundary.pop(face)
            total += simplex_det(sorted(face) + [q])
            for r in face:
                new = frozenset(face - {r} | {q})
                if new in boundary:
                    del boundary[new]
                else:
                    boundary[new] = r
        # a face created twice in this round is interior; toggling above handles it

    facets: dict[tuple[Point, int], set[int]] = {}
    for face, opp in boundary.items():
        fpts = [points[i] for i in sorted(face)]
        nrm = _normal(fpts, d)
        off = sum(a * b for a, b in zip(nrm, fpts[0]))
        if sum(a * b for a, b in zip(nrm, points[opp])) > off:
            nrm, off = [-a for a in nrm], -off
        g = 0
        for a in nrm:
            g = gcd(g, a)
        key = (tuple(a // g for a in nrm), off // g)
        facets.setdefault(key, set()).update(face)

    vertex_ids = []
    for i in sorted(set().union(*facets.values())):
        normals = [nrm for (nrm, _), members in facets.items() if i in members]
        if smith_normal_form(IntMatrix.from_rows(normals, d)).rank == d:
            vertex_ids.append(i)
    return (
        [points[i] for i in vertex_ids],
        sorted(facets),
        Fraction(total, factorial(d)),
    )


def _affine_frame(points: Sequence[Point], n: int):
    """Saturated direction lattice of the affine span and local integer coordinates."""
    base = points[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in points[1:]]
    lattice = saturate(SublatticeBasis.from_generators(diffs, n))
    local = []
    for p in points:
        c = lattice.coordinates(tuple(a - b for a, b in zip(p, base)))
        local.append(tuple(int(x) for x in c))
    return lattice, local


def _lift_normal(lattice: SublatticeBasis, u: Sequence[int]) -> Point:
    """Primitive ambient functional w with ``<w, b_j> = u_j`` on the lattice basis."""
    d = lattice.rank
    snf = smith_normal_form(lattice.basis)
    Uu = tuple(sum(snf.U[i][j] * u[j] for j in range(d)) for i in range(d))
    # B = U^-1 [I | 0] V^-1, so w = V[:, :d] U u satisfies B w = u
    return tuple(sum(snf.V[i][j] * Uu[j] for j in range(d)) for i in range(lattice.ambient_dim))


def newton_polytope(A: SupportSet | Iterable[Sequence[int]]) -> Polytope:
    """Convex hull of a support set."""
    if not isinstance(A, SupportSet):
        A = SupportSet.of(A)
    n = A.dim
    points = list(A.points)
    lattice, local = _affine_frame(points, n)
    d = lattice.rank
    base = points[0]
    if d == 0:
        return Polytope(n, (base,), (), 0, Fraction(1))
    if d == 1:
        lo = min(range(len(local)), key=lambda i: local[i][0])
        hi = max(range(len(local)), key=lambda i: local[i][0])
        local_facets = [((-1,), -local[lo][0]), ((1,), local[hi][0])]
        vertices = sorted({points[lo], points[hi]})
        vol = Fraction(local[hi][0] - local[lo][0])
    else:
        order = sorted(range(len(points)), key=lambda i: local[i])
        lpts = [local[i] for i in order]
        lverts, local_facets, vol = _hull_full(lpts, d)
        back = {local[i]: points[i] for i in range(len(points))}
        vertices = sorted(back[v] for v in lverts)
    facets = []
    for u, h in local_facets:
        w = _lift_normal(lattice, u)
        facets.append(Facet(w, h + sum(a * b for a, b in zip(w, base))))
    return Polytope(n, tuple(vertices), tuple(sorted(facets, key=lambda f: (f.normal, f.offset))), d, vol)


def volume(P: Polytope, dim: int | None = None) -> Fraction:
    """Volume of ``P`` measured in ``dim`` dimensions (default: its own affine span).

    A polytope of lower dimension than ``dim`` has volume 0.
    """
    if dim is None or dim == P.affine_dim:
        return P.relative_volume
    if dim > P.affine_dim:
        return Fraction(0)
    raise PreconditionError(f"cannot measure a {P.affine_dim}-dimensional polytope in {dim} dimensions")


@dataclass(frozen=True)
class MixedVolumeResult:
    standard: Fraction
    normalized: int


def mixed_volume(polytopes: Sequence[Polytope], dim: int | None = None) -> MixedVolumeResult:
    """Mixed volume of ``d`` polytopes in R^d by inclusion-exclusion.

    ``normalized`` is ``d! * standard``; it equals the BKK root count of the
    supports. An empty list in R^0 gives 1.
    """
    d = len(polytopes)
    if dim is None:
        dim = polytopes[0].dim if polytopes else 0
    if d != dim:
        raise PreconditionError(f"mixed volume needs exactly {dim} polytopes, got {d}")
    for P in polytopes:
        if P.dim != dim:
            raise PreconditionError(f"polytope in dimension {P.dim}, expected {dim}")
    if d == 0:
        return MixedVolumeResult(Fraction(1), 1)
    if any(P.affine_dim == 0 for P in polytopes):
        # a point summand has zero mixed volume
        return MixedVolumeResult(Fraction(0), 0)

    sums: dict[int, SupportSet] = {}
    total = Fraction(0)
    for mask in range(1, 1 << d):
        low = mask & -mask
        i = low.bit_length() - 1
        part = SupportSet(dim, polytopes[i].vertices)
        if mask != low:
            part = minkowski_sum(sums[mask ^ low], part)
        hull = newton_polytope(part)
        sums[mask] = SupportSet(dim, hull.vertices)
        sign = -1 if (d - bin(mask).count("1")) % 2 else 1
        total += sign * volume(hull, dim)
    if total.denominator != 1:
        raise AssertionError(f"non-integral normalized mixed volume {total}")
    return MixedVolumeResult(total / factorial(d), int(total))
