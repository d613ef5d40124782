"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary.
Random corpora are drawn from fixed seeds so every run checks the same cases.
"""
import random
import time
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial

import pytest

from conftest import (
    brute_defect,
    criterion,
    random_collection,
    random_unimodular,
    remark,
    shoelace_hull_area,
)
from toricdefect.collection import Collection, analyze, consistent_basis_subcollection, from_mask
from toricdefect.counting import bkk_count, overdetermined_count, resultant_degrees
from toricdefect.lattice import (
    IntMatrix,
    SublatticeBasis,
    determinant,
    smith_normal_form,
    sublattice_index,
)
from toricdefect.oracle import sylvester_matrix, verify_count
from toricdefect.polytope import SupportSet, minkowski_sum, mixed_volume, newton_polytope, volume
from toricdefect.reduction import reduce, reduce_to_defect_one

pytestmark = pytest.mark.acceptance


def gkz_collection(rng, n):
    """n+1 supports whose differences generate Z^n, minimal defect -1, essential = everything."""
    while True:
        sups = [
            [tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(rng.randint(2, 5))]
            for _ in range(n + 1)
        ]
        c = Collection.of(n, sups)
        if any(len(A) < 2 for A in c.supports):
            continue
        r = analyze(c)
        if r.minimal_defect != -1 or r.essential != frozenset(range(n + 1)):
            continue
        if reduce(c).index != 1:
            continue
        return c


def test_criterion_1_gkz_unique_root():
    with criterion(1, "GKZ lattice-generating collections have a unique root"):
        start = time.perf_counter()
        rng = random.Random(2024)
        dims = [1, 1, 1, 2, 2, 2, 2, 3, 3, 3]
        for n in dims:
            c = gkz_collection(rng, n)
            assert overdetermined_count(c).predicted_count == 1, c
            if n <= 2:
                rep = verify_count(c, trials=5, seed=rng.randint(0, 10**6))
                assert rep.agreement_fraction == 1, (c, rep)
        assert time.perf_counter() - start < 30


def test_criterion_2_remark_l_points():
    with criterion(2, "P1xP1 remark collection has l distinct points"):
        start = time.perf_counter()
        for k, l in product(range(1, 5), repeat=2):
            c = remark(k, l)
            red = reduce(c)
            assert red.essential == {0, 1}
            assert red.index == 1
            assert overdetermined_count(c).predicted_count == l
            if l <= 3:
                rep = verify_count(c, trials=5, seed=100 * k + l)
                assert rep.agreement_fraction == 1, rep
                assert {n for _, n in rep.trials} == {l}
        assert time.perf_counter() - start < 60


def test_criterion_3_bkk_baseline():
    with criterion(3, "BKK baseline: squares 2, simplices 1, parallel segments 0"):
        cases = {
            "squares": ([(0, 0), (1, 0), (0, 1), (1, 1)], 2),
            "simplices": ([(0, 0), (1, 0), (0, 1)], 1),
            "segments": ([(0, 0), (1, 0)], 0),
        }
        for name, (sup, expected) in cases.items():
            c = Collection.of(2, [sup, sup])
            got = bkk_count(c)
            # inclusion-exclusion with an independent hull/area routine
            twice = [tuple(2 * v for v in p) for p in sup]
            oracle = shoelace_hull_area(twice) - 2 * shoelace_hull_area(sup)
            assert got == expected == oracle, name
            if expected:
                rep = verify_count(c, trials=5, seed=0)
                assert rep.agreement_fraction == 1, (name, rep)


def test_criterion_4_essential_subcollection():
    with criterion(4, "essential subcollection unique, residual defect 0, consistent basis"):
        start = time.perf_counter()
        rng = random.Random(4)
        for _ in range(200):
            c = random_collection(rng, rng.randint(1, 4), rng.randint(1, 6))
            defects = {
                m: brute_defect(c, sorted(from_mask(m))) for m in range(1 << c.k)
            }
            d = min(defects.values())
            r = analyze(c)
            assert r.minimal_defect == d
            if d <= 0:
                minimizers = [m for m, v in defects.items() if v == d]
                minimal = [m for m in minimizers if not any(o != m and o & m == o for o in minimizers)]
                assert len(minimal) == 1, c
                assert from_mask(minimal[0]) == (r.essential if d < 0 else frozenset())
            red = reduce(c)
            res = red.residual_collection()
            if res is not None:
                assert min(brute_defect(res, J) for s in range(res.k + 1)
                           for J in combinations(range(res.k), s)) == 0, c
            I = consistent_basis_subcollection(c)
            J = sorted(r.essential)
            dim_VJ = brute_defect(c, J) + len(J)
            assert I <= r.essential and len(I) == dim_VJ
            assert all(brute_defect(c, sub) >= 0 for s in range(len(I) + 1)
                       for sub in combinations(sorted(I), s))
        assert time.perf_counter() - start < 120


def parallelepiped_count(M):
    """Integer points x with x = c M, c in [0,1)^r: the index of the row lattice of M."""
    r = len(M)
    lo = [sum(min(0, M[i][j]) for i in range(r)) for j in range(r)]
    hi = [sum(max(0, M[i][j]) for i in range(r)) for j in range(r)]
    Mf = [[Fraction(v) for v in row] for row in M]
    count = 0
    for x in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        # solve c M = x by Gaussian elimination on the transpose
        A = [[Mf[i][j] for i in range(r)] + [Fraction(x[j])] for j in range(r)]
        for col in range(r):
            piv = next(i for i in range(col, r) if A[i][col] != 0)
            A[col], A[piv] = A[piv], A[col]
            for i in range(r):
                if i != col and A[i][col] != 0:
                    f = A[i][col] / A[col][col]
                    A[i] = [a - f * b for a, b in zip(A[i], A[col])]
        c = [A[i][r] / A[i][i] for i in range(r)]
        if all(0 <= v < 1 for v in c):
            count += 1
    return count


def test_criterion_5_lattice_algebra():
    with criterion(5, "Smith decompositions exact; index equals coset enumeration"):
        rng = random.Random(5)
        for _ in range(200):
            m, n = rng.randint(1, 6), rng.randint(1, 6)
            A = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)], n)
            snf = smith_normal_form(A)
            assert snf.U @ A @ snf.V == snf.D
            assert abs(determinant(snf.U)) == 1 and abs(determinant(snf.V)) == 1
            diag = snf.D.diagonal()
            nz = [v for v in diag if v]
            assert snf.D.is_diagonal() and all(v >= 0 for v in diag)
            assert diag[: len(nz)] == tuple(nz)
            assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
        pairs = 0
        while pairs < 50:
            r = rng.randint(1, 3)
            n = rng.randint(r, 4)
            L_rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(r)]
            L = SublatticeBasis.from_generators(L_rows, n)
            if L.rank != r:
                continue
            M = [[rng.randint(-4, 4) for _ in range(r)] for _ in range(r)]
            det = determinant(IntMatrix.from_rows(M, r))
            if det == 0 or abs(det) > 50:
                continue
            G_rows = [[sum(M[i][t] * L_rows[t][j] for t in range(r)) for j in range(n)] for i in range(r)]
            G = SublatticeBasis.from_generators(G_rows, n)
            assert sublattice_index(G, L) == parallelepiped_count(M) == abs(det)
            pairs += 1


def random_lattice_polytope(rng, d):
    return newton_polytope(
        SupportSet.of([tuple(rng.randint(-2, 2) for _ in range(d)) for _ in range(rng.randint(1, 4))], d)
    )


def test_criterion_6_mixed_volume_properties():
    with criterion(6, "mixed volume symmetric, multilinear, diagonal, invariant, integral"):
        rng = random.Random(6)
        for _ in range(100):
            d = rng.randint(1, 3)
            polys = [random_lattice_polytope(rng, d) for _ in range(d)]
            base = mixed_volume(polys)
            assert base.normalized >= 0 and base.standard * factorial(d) == base.normalized
            for perm in permutations(polys):
                assert mixed_volume(list(perm)) == base
            extra = random_lattice_polytope(rng, d)
            summed = newton_polytope(
                minkowski_sum(SupportSet(d, polys[0].vertices), SupportSet(d, extra.vertices))
            )
            assert (
                mixed_volume([summed] + polys[1:]).standard
                == base.standard + mixed_volume([extra] + polys[1:]).standard
            )
            assert mixed_volume([polys[0]] * d).standard == volume(polys[0], d)
            shift = tuple(rng.randint(-5, 5) for _ in range(d))
            moved = [newton_polytope(SupportSet(d, polys[0].vertices).translate(shift))] + polys[1:]
            assert mixed_volume(moved) == base
            U = random_unimodular(rng, d)
            turned = [newton_polytope(SupportSet(d, P.vertices).transform(U)) for P in polys]
            assert mixed_volume(turned) == base
            c = Collection(d, tuple(SupportSet(d, P.vertices) for P in polys))
            assert (bkk_count(c) == 0) == (analyze(c).minimal_defect < 0)


def overdetermined_collection(rng):
    """Random collection with k - n = m >= 2 and minimal defect exactly -m."""
    while True:
        n = rng.randint(1, 3)
        m = rng.randint(2, 3)
        s = rng.randint(0, n)
        basis = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(s)]
        if s and SublatticeBasis.from_generators(basis, n).rank != s:
            continue
        sups = []
        for _ in range(s + m):
            p0 = [rng.randint(-2, 2) for _ in range(n)]
            pts = [tuple(p0)]
            for _ in range(rng.randint(0, 3)):
                coef = [rng.randint(-1, 1) for _ in range(s)]
                pts.append(tuple(p0[j] + sum(c * b[j] for c, b in zip(coef, basis)) for j in range(n)))
            sups.append(pts)
        for _ in range(n - s):
            sups.append([tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(rng.randint(2, 4))])
        c = Collection.of(n, sups)
        if c.k - c.n == m and analyze(c).minimal_defect == -m:
            return c


def test_criterion_7_reduction_equivalence():
    with criterion(7, "reduction to minimal defect -1 preserves the predicted count"):
        rng = random.Random(7)
        for _ in range(50):
            c = overdetermined_collection(rng)
            before = overdetermined_count(c)
            assert before.zero_set_dim == 0
            w = reduce_to_defect_one(c)
            assert analyze(w).minimal_defect == -1
            assert overdetermined_count(w).predicted_count == before.predicted_count, c


def sylvester_degrees(d1, d2, rng):
    f = [rng.randint(1, 50) for _ in range(d1 + 1)]
    g = [rng.randint(1, 50) for _ in range(d2 + 1)]
    res = determinant(IntMatrix.from_rows(sylvester_matrix(f, g)))
    assert res != 0
    degs = []
    for scaled in (sylvester_matrix([2 * a for a in f], g), sylvester_matrix(f, [2 * b for b in g])):
        ratio = Fraction(determinant(IntMatrix.from_rows(scaled)), res)
        assert ratio.denominator == 1 and ratio.numerator & (ratio.numerator - 1) == 0
        degs.append(ratio.numerator.bit_length() - 1)
    return tuple(degs)


def test_criterion_8_resultant_degrees():
    with criterion(8, "resultant degrees (d2, d1) and zero outside the essential subcollection"):
        rng = random.Random(8)
        for d1, d2 in product(range(1, 5), repeat=2):
            c = Collection.of(1, [[(i,) for i in range(d1 + 1)], [(i,) for i in range(d2 + 1)]])
            degs = resultant_degrees(c).degrees
            assert degs == (d2, d1)
            assert degs == sylvester_degrees(d1, d2, rng)
        for k, l in product(range(1, 5), repeat=2):
            assert resultant_degrees(remark(k, l)).degrees[2] == 0
