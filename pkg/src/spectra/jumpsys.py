"""Jump systems: the two-step axiom, maximal-element sums, intervals.

A step is a signed unit vector; ``s`` is a step from ``a`` toward ``b``
when applying it strictly decreases the 1-norm distance to ``b``.  All
checks are brute force over ordered point pairs and report violations
exhaustively, sorted lexicographically, so test goldens are stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from .polyx import Polynomial


@dataclass(frozen=True)
class Step:
    """Signed unit vector: ``sign`` in position ``index``."""

    index: int
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("step sign must be +1 or -1")
        if self.index < 0:
            raise ValueError("step index must be nonnegative")

    def apply(self, point: tuple[int, ...]) -> tuple[int, ...]:
        out = list(point)
        out[self.index] += self.sign
        return tuple(out)


class LatticePointSet:
    """Finite set of integer vectors of a common dimension."""

    __slots__ = ("dim", "points")

    def __init__(self, dim: int, points: Iterable[Sequence[int]]):
        pts = frozenset(tuple(int(x) for x in p) for p in points)
        for p in pts:
            if len(p) != dim:
                raise ValueError(f"point {p} has dimension {len(p)}, expected {dim}")
        self.dim = dim
        self.points = pts

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "LatticePointSet":
        return cls(p.num_vars, p.support())

    def sorted_points(self) -> list[tuple[int, ...]]:
        return sorted(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, point) -> bool:
        return tuple(point) in self.points

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticePointSet):
            return NotImplemented
        return self.dim == other.dim and self.points == other.points

    __hash__ = None

    def __repr__(self) -> str:
        return f"LatticePointSet(dim={self.dim}, points={len(self.points)})"


def one_norm(v: Sequence[int]) -> int:
    return sum(abs(x) for x in v)


def steps(dim: int) -> Iterator[Step]:
    """All 2*dim signed unit steps, in (index, +1 then -1) order."""
    for i in range(dim):
        yield Step(i, 1)
        yield Step(i, -1)


def is_step(step: Step, source: Sequence[int], target: Sequence[int]) -> bool:
    """True iff applying ``step`` at ``source`` moves strictly toward ``target``."""
    if len(source) != len(target):
        raise ValueError("dimension mismatch between source and target")
    if step.index >= len(source):
        raise ValueError("step index outside dimension")
    before = one_norm([s - t for s, t in zip(source, target)])
    moved = list(source)
    moved[step.index] += step.sign
    after = one_norm([s - t for s, t in zip(moved, target)])
    return after < before


@dataclass(frozen=True)
class AxiomJViolation:
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    step: Step

    def to_json(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "beta": list(self.beta),
            "step": {"index": self.step.index, "sign": self.step.sign},
        }


def check_axiom_J(J: LatticePointSet) -> list[AxiomJViolation]:
    """Two-step axiom, brute force over all ordered pairs and first steps.

    A violation (alpha, beta, s) means: s is a step from alpha toward beta,
    alpha + s is outside the set, and no second step t toward beta lands
    back inside.
    """
    pts = J.sorted_points()
    inside = J.points
    violations = []
    all_steps = list(steps(J.dim))
    for alpha in pts:
        for beta in pts:
            if alpha == beta:
                continue
            for s in all_steps:
                if not is_step(s, alpha, beta):
                    continue
                mid = s.apply(alpha)
                if mid in inside:
                    continue
                if not any(
                    is_step(t, mid, beta) and t.apply(mid) in inside
                    for t in all_steps
                ):
                    violations.append(AxiomJViolation(alpha, beta, s))
    return violations


def _leq(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def maximal_elements(J: LatticePointSet) -> list[tuple[int, ...]]:
    pts = J.sorted_points()
    return [
        p for p in pts if not any(q != p and _leq(p, q) for q in pts)
    ]


@dataclass(frozen=True)
class MaximalSumResult:
    maximal: tuple[tuple[int, ...], ...]
    constant_sum: int | None
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None

    def to_json(self) -> dict:
        return {
            "maximal_count": len(self.maximal),
            "constant_sum": self.constant_sum,
            "witness": None if self.witness is None else [list(w) for w in self.witness],
        }


def maximal_constant_sum_check(J: LatticePointSet) -> MaximalSumResult:
    """Do all componentwise-maximal elements share the same 1-norm?

    For a genuine finite jump system they must; a witness pair with
    distinct sums certifies that the two-step axiom fails somewhere.
    """
    if not J.points:
        raise ValueError("empty lattice point set")
    maxima = maximal_elements(J)
    sums = [one_norm(p) for p in maxima]
    first = sums[0]
    for p, s in zip(maxima[1:], sums[1:]):
        if s != first:
            return MaximalSumResult(tuple(maxima), None, (maxima[0], p))
    return MaximalSumResult(tuple(maxima), first, None)


@dataclass(frozen=True)
class IntervalViolation:
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "beta": list(self.beta),
            "gamma": list(self.gamma),
        }


def interval_property_check(J: LatticePointSet) -> list[IntervalViolation]:
    """Every lattice point between two comparable members must be a member."""
    pts = J.sorted_points()
    inside = J.points
    violations = []
    for alpha in pts:
        for beta in pts:
            if alpha == beta or not _leq(alpha, beta):
                continue
            for gamma in product(*(range(a, b + 1) for a, b in zip(alpha, beta))):
                if gamma not in inside:
                    violations.append(IntervalViolation(alpha, beta, gamma))
    return violations


def lattice_to_json(J: LatticePointSet) -> dict:
    return {"dim": J.dim, "points": [list(p) for p in J.sorted_points()]}


def lattice_from_json(obj: dict) -> LatticePointSet:
    return LatticePointSet(int(obj["dim"]), obj["points"])
