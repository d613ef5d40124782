"""Ground truth for the predicted counts.

Generic consistent systems are sampled through a random witness point: the
coefficients are random except one per polynomial, which is solved so that
every polynomial vanishes at the witness. Their common roots in the torus are
then counted exactly, by polynomial gcds for one variable and by a
Groebner basis with a random separating linear form for two.

The sampled system is generic in the consistency variety only with
probability one; nothing here certifies it. Every report carries its seeds.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce as fold
from typing import Mapping, Sequence

import sympy as sp

from .collection import Collection, analyze
from .counting import bkk_count, overdetermined_count
from .errors import PreconditionError

DEFAULT_COEFF_BOUND = 10**6
GENERICITY_NOTE = (
    "samples are generic in the consistency variety with probability one; "
    "genericity is not certified"
)

Point = tuple[int, ...]


class NonFiniteZeroSetError(PreconditionError):
    code = "non-finite"


@dataclass(frozen=True)
class LaurentPoly:
    """A Laurent polynomial with exact rational coefficients, zero terms dropped."""

    dim: int
    terms: tuple[tuple[Point, Fraction], ...]

    @classmethod
    def from_dict(cls, dim: int, terms: Mapping[Sequence[int], object]) -> LaurentPoly:
        clean = {}
        for e, c in terms.items():
            e = tuple(int(v) for v in e)
            if len(e) != dim:
                raise PreconditionError(f"exponent {e} has length {len(e)}, expected {dim}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        return cls(dim, tuple(sorted((e, c) for e, c in clean.items() if c)))

    def as_dict(self) -> dict[Point, Fraction]:
        return dict(self.terms)

    @property
    def support(self) -> tuple[Point, ...]:
        return tuple(e for e, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms:
            term = c
            for x, a in zip(point, e):
                term *= Fraction(x) ** a
            total += term
        return total

    def to_sympy(self, gens: Sequence[sp.Symbol]) -> sp.Poly:
        """Ordinary polynomial obtained by multiplying by the smallest monomial that clears negative exponents."""
        shift = [min(e[i] for e, _ in self.terms) for i in range(self.dim)]
        rep = {
            tuple(a - s for a, s in zip(e, shift)): sp.Rational(c.numerator, c.denominator)
            for e, c in self.terms
        }
        return sp.Poly.from_dict(rep, *gens, domain=sp.QQ)


@dataclass(frozen=True)
class ConsistentSample:
    system: tuple[LaurentPoly, ...]
    witness: tuple[Fraction, ...]
    seed: int


def _nonzero(rng: random.Random, bound: int) -> int:
    while True:
        v = rng.randint(-bound, bound)
        if v:
            return v


def sample_consistent_system(
    c: Collection, seed: int = 0, coeff_bound: int = DEFAULT_COEFF_BOUND
) -> ConsistentSample:
    """Random system with the given supports that vanishes at a random torus point."""
    for i, A in enumerate(c.supports):
        if len(A) < 2:
            raise PreconditionError(
                f"support {i} is a single monomial, which has no zeros in the torus; "
                "the collection is inconsistent off the zero section",
                f"supports[{i}]",
            )
    rng = random.Random(seed)
    witness = tuple(Fraction(rng.randint(1, coeff_bound)) for _ in range(c.n))
    system = []
    for A in c.supports:
        *free, last = A.points
        while True:
            coeffs = {a: Fraction(_nonzero(rng, coeff_bound)) for a in free}
            value = LaurentPoly.from_dict(c.n, coeffs)(witness)
            mono = LaurentPoly.from_dict(c.n, {last: 1})(witness)
            solved = -value / mono
            if solved:
                break
        coeffs[last] = solved
        system.append(LaurentPoly.from_dict(c.n, coeffs))
    sample = ConsistentSample(tuple(system), witness, seed)
    assert all(f(witness) == 0 for f in sample.system)
    return sample


def sample_generic_system(
    c: Collection, seed: int = 0, coeff_bound: int = DEFAULT_COEFF_BOUND
) -> tuple[LaurentPoly, ...]:
    """Random system with every coefficient a nonzero integer in ``[-B, B]``."""
    rng = random.Random(seed)
    return tuple(
        LaurentPoly.from_dict(c.n, {a: _nonzero(rng, coeff_bound) for a in A.points})
        for A in c.supports
    )


def count_common_roots_univariate(system: Sequence[LaurentPoly]) -> int:
    """Number of distinct common roots in C* of univariate Laurent polynomials."""
    x = sp.Symbol("x")
    polys = [f.to_sympy([x]) for f in system if not f.is_zero()]
    if not polys:
        raise PreconditionError("all polynomials are zero")
    g = fold(lambda a, b: a.gcd(b), polys)
    # each shifted polynomial has a nonzero constant term, so g has no root at 0
    return g.sqf_part().degree() if g.degree() > 0 else 0


def _distinct_roots(p: sp.Poly) -> int:
    return p.sqf_part().degree() if p.degree() > 0 else 0


def count_common_roots_bivariate(system: Sequence[LaurentPoly], seed: int = 0) -> int:
    """Number of distinct common roots in (C*)^2 of bivariate Laurent polynomials.

    After clearing negative exponents the polynomials have no monomial
    factor, so in two variables the common zero set is finite exactly when
    their gcd is constant. The finitely many affine roots are counted through
    the eliminant of a seeded random form ``z = x + s y``, which separates
    them with probability one; roots on the coordinate axes are then
    subtracted using univariate gcds.
    """
    if len(system) < 2:
        raise PreconditionError("need at least two polynomials")
    x, y, z = sp.symbols("x y z")
    polys = [f.to_sympy([x, y]) for f in system if not f.is_zero()]
    if not polys:
        raise NonFiniteZeroSetError("non-finite zero set: all polynomials are zero")
    common = fold(lambda a, b: a.gcd(b), polys)
    if common.total_degree() > 0:
        raise NonFiniteZeroSetError(f"non-finite zero set: common factor {common.as_expr()}")
    shear = random.Random(seed).randint(1, 2**16)
    G = sp.groebner([p.as_expr() for p in polys] + [z - x - shear * y], x, y, z, order="grevlex", domain=sp.QQ)
    if G.exprs == [1]:
        return 0
    lex = G.fglm("lex")
    elim = sp.Poly(lex.exprs[-1], x, y, z)
    if any(m[:2] != (0, 0) for m in elim.monoms()):
        raise AssertionError("lex basis does not end in a univariate eliminant")
    affine = _distinct_roots(sp.Poly(lex.exprs[-1], z))
    on_x_axis = _distinct_roots(fold(lambda a, b: a.gcd(b), [sp.Poly(p.as_expr().subs(y, 0), x) for p in polys]))
    on_y_axis = _distinct_roots(fold(lambda a, b: a.gcd(b), [sp.Poly(p.as_expr().subs(x, 0), y) for p in polys]))
    at_origin = all(p.as_expr().subs({x: 0, y: 0}) == 0 for p in polys)
    return affine - on_x_axis - on_y_axis + int(at_origin)


def count_common_roots(system: Sequence[LaurentPoly], seed: int = 0) -> int:
    dim = system[0].dim
    if dim == 1:
        return count_common_roots_univariate(system)
    if dim == 2:
        return count_common_roots_bivariate(system, seed)
    raise PreconditionError(f"no exact oracle for {dim} variables (n <= 2 only)")


def sylvester_matrix(f: Sequence, g: Sequence) -> list[list]:
    """Sylvester matrix of two univariate coefficient lists (constant term first)."""
    df, dg = len(f) - 1, len(g) - 1
    size = df + dg
    rows = []
    for i in range(dg):
        row = [0] * size
        for j, a in enumerate(reversed(f)):
            row[i + j] = a
        rows.append(row)
    for i in range(df):
        row = [0] * size
        for j, b in enumerate(reversed(g)):
            row[i + j] = b
        rows.append(row)
    return rows


@dataclass(frozen=True)
class VerificationReport:
    predicted: int
    trials: tuple[tuple[int, int], ...]
    agreement_fraction: Fraction
    note: str = GENERICITY_NOTE


def verify_count(
    c: Collection,
    trials: int = 5,
    seed: int = 0,
    coeff_bound: int = DEFAULT_COEFF_BOUND,
) -> VerificationReport:
    """Compare the predicted count with exact oracle counts on sampled systems.

    Square collections (``k = n``) are checked against the BKK number on
    unconstrained random systems; overdetermined ones against the consistent
    count on systems sampled through a witness. Trial ``i`` uses seed
    ``seed + i``.
    """
    if c.n > 2:
        raise PreconditionError(f"no exact oracle for n={c.n} (n <= 2 only)")
    if c.k == c.n:
        predicted = bkk_count(c)
    else:
        predicted = overdetermined_count(c).predicted_count
    results = []
    for i in range(trials):
        s = seed + i
        if c.k == c.n:
            system = sample_generic_system(c, s, coeff_bound)
        else:
            system = sample_consistent_system(c, s, coeff_bound).system
        results.append((s, count_common_roots(system, s)))
    agree = sum(1 for _, got in results if got == predicted)
    frac = Fraction(agree, trials) if trials else Fraction(1)
    return VerificationReport(predicted, tuple(results), frac)
