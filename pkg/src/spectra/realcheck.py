"""Exact real-rootedness and directional certification.

The univariate kernel is a Sturm chain over Q with content normalization
after every remainder step (positive scaling only, so sign variations are
preserved).  Sign variations are taken at +/- infinity from the leading
coefficients, which is all the all-roots-real question needs.

Multivariate checks are per-direction: a real-zero or hyperbolicity
verdict here certifies exactly the sampled directions, never all of R^n.
Stability has no exact decision procedure in this toolkit; it is only
falsified by sampling the open upper polydisc.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyx import (
    GaussRational,
    Polynomial,
    UnivariatePoly,
    exact_divide,
    univariate_gcd,
)


class NotHomogeneousError(ValueError):
    """Polynomial is not homogeneous where hyperbolicity requires it."""


class ZeroAtEError(ValueError):
    """The reference point evaluates to zero."""


# ---------------------------------------------------------------------
# Sturm machinery
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class SturmChain:
    polys: tuple[UnivariatePoly, ...]


def sturm_chain(q: UnivariatePoly) -> SturmChain:
    """Chain q, q', then negated remainders, content-normalized each step."""
    if q.is_zero:
        raise ValueError("Sturm chain of the zero polynomial")
    chain = [q.content_normalized()]
    d = q.derivative()
    if not d.is_zero:
        chain.append(d.content_normalized())
        while True:
            rem = -(chain[-2] % chain[-1])
            if rem.is_zero:
                break
            chain.append(rem.content_normalized())
    return SturmChain(tuple(chain))


def _variations(signs: Sequence[int]) -> int:
    nonzero = [s for s in signs if s]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a * b < 0)


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def count_real_roots(q: UnivariatePoly) -> int:
    """Number of distinct real roots of ``q`` (exact, over all of R)."""
    if q.is_zero:
        raise ValueError("root count of the zero polynomial")
    s = squarefree_part(q)
    if s.degree() == 0:
        return 0
    chain = sturm_chain(s).polys
    at_plus = [_sign(p.leading_coefficient()) for p in chain]
    at_minus = [
        _sign(p.leading_coefficient()) * (-1 if p.degree() % 2 else 1) for p in chain
    ]
    return _variations(at_minus) - _variations(at_plus)


def squarefree_part(q: UnivariatePoly) -> UnivariatePoly:
    """q / gcd(q, q'), primitive with positive leading coefficient."""
    if q.is_zero:
        raise ValueError("squarefree part of the zero polynomial")
    g = univariate_gcd(q, q.derivative())
    if g.is_zero:  # q is a nonzero constant: gcd(q, 0) normalizes to 1
        g = UnivariatePoly.constant(1)
    s = exact_divide(q, g).content_normalized()
    if s.leading_coefficient() < 0:
        s = -s
    return s


def is_real_rooted(q: UnivariatePoly) -> bool:
    """True iff every complex zero of ``q`` is real (vacuously for deg <= 0)."""
    if q.is_zero or q.degree() == 0:
        return True
    s = squarefree_part(q)
    return count_real_roots(s) == s.degree()


# ---------------------------------------------------------------------
# directional multivariate checks
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class DirectionVerdict:
    direction: tuple[Fraction, ...]
    degree: int | None
    real_rooted: bool

    def to_json(self) -> dict:
        return {
            "direction": [str(x) for x in self.direction],
            "degree": self.degree if self.degree is not None else "none",
            "real_rooted": self.real_rooted,
        }


def rz_check(p: Polynomial, directions: Sequence[Sequence]) -> list[DirectionVerdict]:
    """Exact real-zero test along each direction: t -> p(t*x) real-rooted.

    The verdict list certifies exactly the given directions; a single
    failure refutes the real-zero property, while all-pass means only
    that no counterexample was found among them.
    """
    zero = [Fraction(0)] * p.num_vars
    out = []
    for x in directions:
        x = tuple(Fraction(v) for v in x)
        restriction = p.restrict(zero, x)
        out.append(DirectionVerdict(x, restriction.degree(), is_real_rooted(restriction)))
    return out


def all_real_rooted(verdicts: Sequence[DirectionVerdict]) -> bool:
    return all(v.real_rooted for v in verdicts)


def _require_base_point(h: Polynomial, e: Sequence) -> tuple[Fraction, ...]:
    e = tuple(Fraction(v) for v in e)
    if h.eval(list(e)) == 0:
        raise ZeroAtEError(f"polynomial vanishes at reference point {[str(v) for v in e]}")
    return e


def hyperbolicity_check(
    h: Polynomial, e: Sequence, directions: Sequence[Sequence]
) -> list[DirectionVerdict]:
    """Exact per-direction hyperbolicity: t -> h(x + t*e) real-rooted."""
    degrees = {sum(a) for a in h.support()}
    if len(degrees) > 1:
        raise NotHomogeneousError(f"mixed total degrees {sorted(degrees)}")
    e = _require_base_point(h, e)
    out = []
    for x in directions:
        x = tuple(Fraction(v) for v in x)
        restriction = h.restrict(x, e)
        out.append(DirectionVerdict(x, restriction.degree(), is_real_rooted(restriction)))
    return out


def hyperbolic_rank(h: Polynomial, e: Sequence, x: Sequence) -> int:
    """deg of t -> h(e + t*x); well defined since h(e) != 0."""
    e = _require_base_point(h, e)
    x = [Fraction(v) for v in x]
    degree = h.restrict(list(e), x).degree()
    assert degree is not None  # value at t = 0 is h(e) != 0
    return degree


@dataclass(frozen=True)
class EIndependenceVerdict:
    x: tuple[Fraction, ...]
    degree_first: int
    degree_second: int

    @property
    def equal(self) -> bool:
        return self.degree_first == self.degree_second

    def to_json(self) -> dict:
        return {
            "x": [str(v) for v in self.x],
            "degree_first": self.degree_first,
            "degree_second": self.degree_second,
            "equal": self.equal,
        }


def rank_e_independence(
    h: Polynomial, e1: Sequence, e2: Sequence, xs: Sequence[Sequence]
) -> list[EIndependenceVerdict]:
    """Compare deg h(e1 + t*x) with deg h(e2 + t*x) along each x.

    Meaningful when e2 lies in the hyperbolicity cone of e1, which the
    caller asserts; the degrees must then agree.
    """
    e1 = _require_base_point(h, e1)
    e2 = _require_base_point(h, e2)
    out = []
    for x in xs:
        x = tuple(Fraction(v) for v in x)
        d1 = h.restrict(list(e1), list(x)).degree()
        d2 = h.restrict(list(e2), list(x)).degree()
        assert d1 is not None and d2 is not None
        out.append(EIndependenceVerdict(x, d1, d2))
    return out


# ---------------------------------------------------------------------
# stability falsification by sampling
# ---------------------------------------------------------------------

ZERO_HIT_THRESHOLD = 1e-12


@dataclass(frozen=True)
class StabilityResult:
    checked: int
    seed: int
    candidate: tuple[complex, ...] | None
    candidate_rational: tuple[GaussRational, ...] | None
    exact_zero: bool | None

    @property
    def zero_found(self) -> bool:
        return self.candidate is not None

    def to_json(self) -> dict:
        out = {"checked": self.checked, "seed": self.seed, "zero_found": self.zero_found}
        if self.candidate is not None:
            out["candidate"] = [[z.real, z.imag] for z in self.candidate]
            out["candidate_rational"] = [str(z) for z in self.candidate_rational]
            out["exact_zero"] = self.exact_zero
        return out


def _rationalize(z: complex, denominator: int = 10**6) -> GaussRational:
    return GaussRational(
        Fraction(round(z.real * denominator), denominator),
        Fraction(round(z.imag * denominator), denominator),
    )


def stability_sample(p: Polynomial, k: int, seed: int) -> StabilityResult:
    """Probe the open upper polydisc for zeros of ``p``.

    The first probe is always the all-i point; the remaining k-1 points
    draw Re from (-2, 2) and Im from (0.1, 2).  A float hit below
    ``ZERO_HIT_THRESHOLD`` is reported as a falsification candidate
    together with a nearby rational point and its exact evaluation.
    """
    if k < 1:
        raise ValueError("sample count must be at least 1")
    rng = random.Random(seed)
    n = p.num_vars
    points = [tuple(complex(0.0, 1.0) for _ in range(n))]
    for _ in range(k - 1):
        points.append(
            tuple(complex(rng.uniform(-2, 2), rng.uniform(0.1, 2)) for _ in range(n))
        )
    for point in points:
        value = p.eval(list(point))
        if abs(value) < ZERO_HIT_THRESHOLD:
            rational_point = tuple(_rationalize(z) for z in point)
            exact = p.eval(list(rational_point))
            return StabilityResult(k, seed, point, rational_point, not exact)
    return StabilityResult(k, seed, None, None, None)


# ---------------------------------------------------------------------
# reproducible direction sampling
# ---------------------------------------------------------------------

_NUMERATORS = (-3, -2, -1, 1, 2, 3)


def sample_directions(num_vars: int, count: int, seed: int) -> list[tuple[Fraction, ...]]:
    """Mixed-sign rational directions: numerators in {-3..3}\\{0}, denominators <= 8."""
    rng = random.Random(seed)
    return [
        tuple(
            Fraction(rng.choice(_NUMERATORS), rng.randint(1, 8)) for _ in range(num_vars)
        )
        for _ in range(count)
    ]
