"""Polymatroid axioms, the Ingleton inequality, and derived rank tables.

A rank table is an integer function on all subsets of a small ground set,
stored mask-indexed.  Axiom checks return violation lists rather than
raising: "ran and found an obstruction" and "could not run" are different
outcomes, and the CLI maps them to different exit codes.

The Ingleton inequality for subsets S1..S4 reads

    r(S1|S2) + r(S1|S3|S4) + r(S3) + r(S4) + r(S2|S3|S4)
      <= r(S1|S3) + r(S1|S4) + r(S2|S3) + r(S2|S4) + r(S3|S4)

and ``deficit`` is left side minus right side, so deficit > 0 certifies
that the table comes from no subspace arrangement over any field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .bitsets import elements_from_mask, iter_bits, mask_from_elements
from .jumpsys import LatticePointSet
from .matroid import Matroid
from .polyx import Polynomial
from .realcheck import ZeroAtEError


class ScanBudgetExceeded(Exception):
    """Full quadruple scan requested beyond the ground-set budget."""


class RankTable:
    """Values of an integer set function on all 2^n subsets, mask-indexed."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: Sequence[int]):
        if len(values) != 1 << n:
            raise ValueError(f"expected {1 << n} values for n={n}, got {len(values)}")
        self.n = n
        self.values = tuple(int(v) for v in values)

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int], int]) -> "RankTable":
        return cls(n, [fn(mask) for mask in range(1 << n)])

    @classmethod
    def from_matroid(cls, M: Matroid) -> "RankTable":
        return cls.from_function(M.n, M.rank)

    def __getitem__(self, mask: int) -> int:
        return self.values[mask]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RankTable):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    __hash__ = None

    def __repr__(self) -> str:
        return f"RankTable(n={self.n})"


@dataclass(frozen=True)
class PolymatroidViolation:
    axiom: str  # "normalization" | "monotonicity" | "submodularity"
    sets: tuple[int, ...]
    lhs: int
    rhs: int

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "sets": [elements_from_mask(s) for s in self.sets],
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


def check_polymatroid(table: RankTable) -> list[PolymatroidViolation]:
    """Violations of normalization, monotonicity, submodularity (exact).

    Monotonicity and submodularity are checked on single-element steps,
    which is equivalent to the all-pairs condition; witnesses are reported
    as the offending subset pair.
    """
    v = table.values
    n = table.n
    violations = []
    if v[0] != 0:
        violations.append(PolymatroidViolation("normalization", (0,), v[0], 0))
    for t in range(1 << n):
        for e in iter_bits(t):
            s = t & ~(1 << e)
            if v[s] > v[t]:
                violations.append(PolymatroidViolation("monotonicity", (s, t), v[s], v[t]))
    for s in range(1 << n):
        free = [e for e in range(n) if not s >> e & 1]
        for i, e in enumerate(free):
            for f in free[i + 1 :]:
                a = s | 1 << e
                b = s | 1 << f
                lhs = v[a | b] + v[s]
                rhs = v[a] + v[b]
                if lhs > rhs:
                    violations.append(PolymatroidViolation("submodularity", (a, b), lhs, rhs))
    return violations


@dataclass(frozen=True)
class IngletonQuadruple:
    s1: int
    s2: int
    s3: int
    s4: int

    def masks(self) -> tuple[int, int, int, int]:
        return (self.s1, self.s2, self.s3, self.s4)

    def to_json(self) -> list[list[int]]:
        return [elements_from_mask(s) for s in self.masks()]


# The quadruple that exhibits the Vamos cube's Ingleton deficit of 1.
VAMOS_QUADRUPLE = IngletonQuadruple(
    mask_from_elements((5, 6)),
    mask_from_elements((7, 8)),
    mask_from_elements((1, 4)),
    mask_from_elements((2, 3)),
)


def ingleton_terms(table: RankTable, q: IngletonQuadruple) -> tuple[int, int]:
    """(left side, right side) of the Ingleton inequality at ``q``."""
    v = table.values
    s1, s2, s3, s4 = q.masks()
    full = (1 << table.n) - 1
    for s in (s1, s2, s3, s4):
        if s & ~full:
            raise ValueError("quadruple mask outside ground set")
    lhs = v[s1 | s2] + v[s1 | s3 | s4] + v[s3] + v[s4] + v[s2 | s3 | s4]
    rhs = v[s1 | s3] + v[s1 | s4] + v[s2 | s3] + v[s2 | s4] + v[s3 | s4]
    return lhs, rhs


def ingleton_check(table: RankTable, q: IngletonQuadruple) -> int:
    """Ingleton deficit at ``q``; > 0 means the inequality fails there."""
    lhs, rhs = ingleton_terms(table, q)
    return lhs - rhs


SCAN_MODES = ("vamos-quadruple", "disjoint-pairs", "full")
FULL_SCAN_LIMIT = 5


def ingleton_scan(
    table: RankTable, mode: str = "disjoint-pairs", full_limit: int = FULL_SCAN_LIMIT
) -> list[tuple[IngletonQuadruple, int]]:
    """Quadruples with positive Ingleton deficit, deterministic order.

    Modes:
      * ``vamos-quadruple``: only the named Vamos quadruple (n = 8);
      * ``disjoint-pairs``: pairwise-disjoint nonempty subsets of size at
        most 2, with S1 < S2 and S3 < S4 as masks (the inequality is
        symmetric under swapping S1/S2 and S3/S4);
      * ``full``: all subset quadruples up to the same symmetry, n <= 5.
    """
    if mode not in SCAN_MODES:
        raise ValueError(f"unknown scan mode {mode!r}; choose from {SCAN_MODES}")
    n = table.n
    v = table.values
    hits: list[tuple[IngletonQuadruple, int]] = []
    if mode == "vamos-quadruple":
        if n != 8:
            raise ValueError("the named quadruple lives on an 8-element ground set")
        q = VAMOS_QUADRUPLE
        deficit = ingleton_check(table, q)
        return [(q, deficit)] if deficit > 0 else []
    if mode == "full":
        if n > full_limit:
            raise ScanBudgetExceeded(
                f"full scan is (2^n)^4 quadruples; n={n} exceeds the limit "
                f"{full_limit}"
            )
        pool = list(range(1 << n))
        disjoint = False
    else:
        pool = [m for m in range(1, 1 << n) if m.bit_count() <= 2]
        disjoint = True
    for i3, s3 in enumerate(pool):
        for s4 in pool[i3:]:
            if disjoint and (s4 == s3 or s3 & s4):
                continue
            s34 = s3 | s4
            base = v[s3] + v[s4] - v[s34]
            for s1 in pool:
                if disjoint and s1 & s34:
                    continue
                c1 = base + v[s1 | s34] - v[s1 | s3] - v[s1 | s4]
                for s2 in pool:
                    if s2 < s1:
                        continue
                    if disjoint and (s2 == s1 or s2 & (s1 | s34)):
                        continue
                    deficit = c1 + v[s1 | s2] + v[s2 | s34] - v[s2 | s3] - v[s2 | s4]
                    if deficit > 0:
                        hits.append((IngletonQuadruple(s1, s2, s3, s4), deficit))
    hits.sort(key=lambda item: item[0].masks())
    return hits


def scale(table: RankTable, N: int) -> RankTable:
    """Pointwise multiple N*r; Ingleton deficits scale linearly with N."""
    if N < 1:
        raise ValueError("scale factor must be a positive integer")
    return RankTable(table.n, [N * v for v in table.values])


def support_rank(J: LatticePointSet, subset: int) -> int:
    """max over points of the coordinate sum restricted to ``subset``."""
    if not J.points:
        raise ValueError("empty lattice point set")
    if subset & ~((1 << J.dim) - 1):
        raise ValueError("subset mask outside point dimension")
    indices = list(iter_bits(subset))
    return max(sum(p[i] for i in indices) for p in J.points)


def hyperbolic_rank_table(
    h: Polynomial, E: Sequence[Sequence], e: Sequence
) -> RankTable:
    """Rank table r(S) = deg of t -> h(e + t * sum_{i in S} E[i]).

    ``h(e)`` must be nonzero; each E[i] is intended to lie in the closed
    hyperbolicity cone of h at e, which is not checkable here in general.
    """
    vectors = [[Fraction(x) for x in ei] for ei in E]
    e = [Fraction(x) for x in e]
    for ei in vectors:
        if len(ei) != h.num_vars:
            raise ValueError("direction vectors must match the variable count")
    if h.eval(e) == 0:
        raise ZeroAtEError("polynomial vanishes at the reference point")
    n = len(vectors)

    def rank_of(mask: int) -> int:
        direction = [Fraction(0)] * h.num_vars
        for i in iter_bits(mask):
            for j, x in enumerate(vectors[i]):
                direction[j] += x
        degree = h.restrict(e, direction).degree()
        assert degree is not None
        return degree

    return RankTable.from_function(n, rank_of)


def rank_table_to_json(table: RankTable) -> dict:
    return {"n": table.n, "values": list(table.values)}


def rank_table_from_json(obj: dict) -> RankTable:
    return RankTable(int(obj["n"]), obj["values"])


def ingleton_report(table: RankTable, q: IngletonQuadruple) -> dict:
    lhs, rhs = ingleton_terms(table, q)
    return {
        "quadruple": q.to_json(),
        "lhs": lhs,
        "rhs": rhs,
        "deficit": lhs - rhs,
    }
