import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from toricdefect.collection import Collection
from toricdefect.lattice import IntMatrix

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def remark(k, l):
    """Two copies of [0,k] on the first axis and [0,l] on the second."""
    row = [(i, 0) for i in range(k + 1)]
    return Collection.of(2, [row, row, [(0, j) for j in range(l + 1)]])


@pytest.fixture
def remark_collection():
    return remark


def rank_q(rows):
    """Rank over Q by plain Fraction Gaussian elimination (independent of the library)."""
    M = [[Fraction(v) for v in r] for r in rows]
    rank, col = 0, 0
    ncols = len(M[0]) if M else 0
    while rank < len(M) and col < ncols:
        piv = next((i for i in range(rank, len(M)) if M[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][col] != 0:
                f = M[i][col] / M[rank][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
        col += 1
    return rank


def brute_defect(c, J):
    """dim of the span of all pairwise within-support differences, minus |J|."""
    rows = [
        [a - b for a, b in zip(p, q)]
        for i in J
        for p in c.supports[i].points
        for q in c.supports[i].points
    ]
    return (rank_q(rows) if rows else 0) - len(J)


def random_unimodular(rng, n, steps=6):
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        q = rng.choice([-2, -1, 1, 2])
        M[i] = [a + q * b for a, b in zip(M[i], M[j])]
    if rng.random() < 0.5:
        M[0] = [-a for a in M[0]]
    return IntMatrix.from_rows(M, n)


def random_collection(rng, n, k, max_points=5, lo=-3, hi=3):
    sups = []
    for _ in range(k):
        m = rng.randint(1, max_points)
        sups.append([tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(m)])
    return Collection.of(n, sups)


@st.composite
def collections(draw, max_n=4, max_k=6, max_points=5, lo=-3, hi=3):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, max_k))
    point = st.tuples(*[st.integers(lo, hi)] * n)
    sups = [draw(st.lists(point, min_size=1, max_size=max_points)) for _ in range(k)]
    return Collection.of(n, sups)


@st.composite
def unimodular(draw, n):
    seed = draw(st.integers(0, 2**32))
    return random_unimodular(random.Random(seed), n)


int_matrices = st.integers(0, 6).flatmap(
    lambda m: st.integers(0, 6).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m
        ).map(lambda rows, n=n: IntMatrix.from_rows(rows, n))
    )
)


def shoelace_hull_area(pts):
    """Monotone-chain hull plus shoelace, as an independent 2D oracle."""
    pts = sorted(set(pts))
    if len(pts) < 3:
        return Fraction(0)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    s = sum(hull[i][0] * hull[(i + 1) % len(hull)][1] - hull[(i + 1) % len(hull)][0] * hull[i][1]
            for i in range(len(hull)))
    return Fraction(abs(s), 2)


ACCEPTANCE_RESULTS = []


@contextmanager
def criterion(number, title):
    """Record a pass/fail line for an acceptance criterion."""
    start = time.perf_counter()
    try:
        yield
    except BaseException as e:
        ACCEPTANCE_RESULTS.append((number, title, False, f"{type(e).__name__}: {e}".splitlines()[0][:160], time.perf_counter() - start))
        raise
    ACCEPTANCE_RESULTS.append((number, title, True, "", time.perf_counter() - start))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail, secs in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] criterion {number}: {title} ({secs:.1f}s)"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
