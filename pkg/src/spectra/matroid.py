"""Matroids given by their bases, with the Vamos cube as built-in fixture.

Bases are stored as bitmasks over a ground set of at most 16 elements.
Validation is by brute force: equal basis cardinality plus the exchange
axiom over all basis pairs.  Rank queries come in two exact flavours,
``rank`` (max intersection with a basis) and ``rank_via_degree`` (degree
of a univariate restriction of the bases generating polynomial); the two
must agree on every subset for a valid matroid.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .bitsets import (
    GROUND_SET_LIMIT,
    elements_from_mask,
    iter_bits,
    mask_from_elements,
)
from .polyx import Polynomial


class MatroidError(ValueError):
    """Invalid bases input."""


class EmptyBasesError(MatroidError):
    def __init__(self):
        super().__init__("a matroid needs at least one basis")


class UnequalCardinalityError(MatroidError):
    def __init__(self, basis_a: int, basis_b: int):
        self.witness = (basis_a, basis_b)
        super().__init__(
            f"bases {elements_from_mask(basis_a)} and {elements_from_mask(basis_b)} "
            "have different sizes"
        )


class ExchangeFailureError(MatroidError):
    def __init__(self, basis_a: int, basis_b: int, element: int):
        self.witness = (basis_a, basis_b, element)
        super().__init__(
            f"exchange fails: no replacement for element {element} of "
            f"{elements_from_mask(basis_a)} from {elements_from_mask(basis_b)}"
        )


class Matroid:
    """Ground set {1..n} with a validated, immutable set of bases."""

    __slots__ = ("n", "bases", "rank_value")

    def __init__(self, n: int, bases: Iterable[int], _validated: bool = False):
        bases = frozenset(bases)
        if not _validated:
            _validate_bases(n, bases)
        self.n = n
        self.bases = bases
        self.rank_value = next(iter(bases)).bit_count()

    @classmethod
    def from_bases(cls, n: int, bases: Iterable[int]) -> "Matroid":
        return cls(n, bases)

    @property
    def groundset_mask(self) -> int:
        return (1 << self.n) - 1

    def rank(self, subset: int) -> int:
        """max |subset ∩ B| over all bases B."""
        if subset & ~self.groundset_mask:
            raise ValueError("subset mask outside ground set")
        return max((subset & b).bit_count() for b in self.bases)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.n == other.n and self.bases == other.bases

    def __hash__(self):
        return hash((self.n, self.bases))

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, rank={self.rank_value}, bases={len(self.bases)})"


def _validate_bases(n: int, bases: frozenset[int]):
    if not 1 <= n <= GROUND_SET_LIMIT:
        raise MatroidError(f"ground set size {n} outside 1..{GROUND_SET_LIMIT}")
    if not bases:
        raise EmptyBasesError()
    full = (1 << n) - 1
    ordered = sorted(bases)
    first = ordered[0]
    r = first.bit_count()
    for b in ordered:
        if b & ~full:
            raise MatroidError(f"basis {b:#x} outside ground set of size {n}")
        if b.bit_count() != r:
            raise UnequalCardinalityError(first, b)
    for b1 in ordered:
        for b2 in ordered:
            if b1 == b2:
                continue
            for e in iter_bits(b1 & ~b2):
                removed = b1 & ~(1 << e)
                for f in iter_bits(b2 & ~b1):
                    if (removed | (1 << f)) in bases:
                        break
                else:
                    raise ExchangeFailureError(b1, b2, e + 1)


# The five four-element planes of the Vamos cube, in the labeling where the
# quadruple {5,6}, {7,8}, {1,4}, {2,3} realizes an Ingleton deficit of 1.
VAMOS_NONBASES = frozenset(
    mask_from_elements(plane)
    for plane in ((1, 2, 3, 4), (1, 4, 5, 6), (2, 3, 5, 6), (1, 4, 7, 8), (2, 3, 7, 8))
)


@lru_cache(maxsize=1)
def vamos() -> Matroid:
    """The Vamos cube: rank 4 on 8 elements, 65 bases, not representable."""
    bases = [
        mask
        for mask in range(1 << 8)
        if mask.bit_count() == 4 and mask not in VAMOS_NONBASES
    ]
    return Matroid.from_bases(8, bases)


def uniform(r: int, n: int) -> Matroid:
    """U_{r,n}: every r-subset is a basis.  Valid by construction."""
    if not 0 < r <= n <= GROUND_SET_LIMIT:
        raise MatroidError(f"need 0 < r <= n <= {GROUND_SET_LIMIT}, got r={r}, n={n}")
    bases = [mask for mask in range(1 << n) if mask.bit_count() == r]
    return Matroid(n, bases, _validated=True)


def bases_polynomial(M: Matroid) -> Polynomial:
    """Sum over bases of the squarefree monomial prod_{j in B} x_j."""
    terms = {}
    for b in M.bases:
        exponents = tuple(1 if b >> k & 1 else 0 for k in range(M.n))
        terms[exponents] = 1
    return Polynomial(M.n, terms)


def rank_via_degree(M: Matroid, subset: int) -> int:
    """Rank as the degree of t -> h_M(1 + t*indicator(subset))."""
    if subset & ~M.groundset_mask:
        raise ValueError("subset mask outside ground set")
    h = bases_polynomial(M)
    ones = [1] * M.n
    direction = [1 if subset >> k & 1 else 0 for k in range(M.n)]
    degree = h.restrict(ones, direction).degree()
    assert degree is not None  # h(1) = |bases| > 0
    return degree


def matroid_to_json(M: Matroid) -> dict:
    return {"n": M.n, "bases": sorted(elements_from_mask(b) for b in M.bases)}


def matroid_from_json(obj: dict) -> Matroid:
    n = int(obj["n"])
    bases = [mask_from_elements(elems, n) for elems in obj["bases"]]
    return Matroid.from_bases(n, bases)
