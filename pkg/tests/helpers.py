"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the code paths they check: set-based
matroid ranks instead of bitmask ranks, permutation-sum determinants
instead of memoized Laplace expansion, full pair scans instead of the
local polymatroid axioms, plain-division elimination instead of Bareiss.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np

from spectra import detrep, matroid
from spectra.polyx import GAUSS, GaussRational, Polynomial

# ---------------------------------------------------------------------
# set-based matroid oracle
# ---------------------------------------------------------------------

VAMOS_PLANES = [
    frozenset(p) for p in ((1, 2, 3, 4), (1, 4, 5, 6), (2, 3, 5, 6), (1, 4, 7, 8), (2, 3, 7, 8))
]


def vamos_bases_as_sets() -> list[frozenset[int]]:
    return [
        frozenset(s)
        for s in combinations(range(1, 9), 4)
        if frozenset(s) not in VAMOS_PLANES
    ]


def brute_rank(bases: list[frozenset[int]], subset: frozenset[int]) -> int:
    return max(len(subset & b) for b in bases)


def brute_ingleton_deficit(
    bases: list[frozenset[int]], quad: tuple[frozenset[int], ...]
) -> int:
    s1, s2, s3, s4 = quad
    r = lambda s: brute_rank(bases, s)
    lhs = r(s1 | s2) + r(s1 | s3 | s4) + r(s3) + r(s4) + r(s2 | s3 | s4)
    rhs = r(s1 | s3) + r(s1 | s4) + r(s2 | s3) + r(s2 | s4) + r(s3 | s4)
    return lhs - rhs


# ---------------------------------------------------------------------
# exhaustive polymatroid oracle (all-pairs scan)
# ---------------------------------------------------------------------


def brute_is_polymatroid(values, n: int) -> bool:
    if values[0] != 0:
        return False
    for s in range(1 << n):
        for t in range(1 << n):
            if s & ~t == 0 and values[s] > values[t]:
                return False
            if values[s | t] + values[s & t] > values[s] + values[t]:
                return False
    return True


# ---------------------------------------------------------------------
# permutation-sum determinant over polynomial entries (small sizes)
# ---------------------------------------------------------------------


def permutation_det(entries: list[list[Polynomial]]) -> Polynomial:
    m = len(entries)
    num_vars = entries[0][0].num_vars
    acc = Polynomial.zero(num_vars, entries[0][0].kind)
    for perm in permutations(range(m)):
        sign = _perm_sign(perm)
        prod = Polynomial.one(num_vars, entries[0][0].kind)
        for i in range(m):
            prod = prod * entries[i][perm[i]]
        acc = acc + (prod if sign > 0 else -prod)
    return acc


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------
# plain-division elimination rank (oracle for Bareiss)
# ---------------------------------------------------------------------


def division_rank(rows: list[list[GaussRational]]) -> int:
    if not rows or not rows[0]:
        return 0
    work = [list(r) for r in rows]
    nrows, ncols = len(work), len(work[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, nrows):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        work[row], work[pivot] = work[pivot], work[row]
        p = work[row][col]
        for r in range(row + 1, nrows):
            if work[r][col]:
                f = work[r][col] / p
                for c in range(col, ncols):
                    work[r][c] = work[r][c] - f * work[row][c]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


# ---------------------------------------------------------------------
# random generators
# ---------------------------------------------------------------------


def random_fraction(rng: random.Random, span: int = 3, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_gauss(rng: random.Random, span: int = 3, max_den: int = 4) -> GaussRational:
    return GaussRational(random_fraction(rng, span, max_den), random_fraction(rng, span, max_den))


def random_gauss_matrix(rng: random.Random, rows: int, cols: int) -> detrep.ExactMatrix:
    return detrep.ExactMatrix(
        [[random_gauss(rng) for _ in range(cols)] for _ in range(rows)]
    )


def random_rational_poly(
    rng: random.Random, num_vars: int, max_terms: int = 5, max_deg: int = 3
) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = tuple(rng.randint(0, max_deg) for _ in range(num_vars))
        terms[e] = random_fraction(rng)
    return Polynomial(num_vars, terms)


def random_hermitian_matrix(rng: random.Random, m: int) -> detrep.ExactMatrix:
    entries = [[GaussRational() for _ in range(m)] for _ in range(m)]
    for i in range(m):
        entries[i][i] = GaussRational(random_fraction(rng))
        for j in range(i + 1, m):
            z = random_gauss(rng)
            entries[i][j] = z
            entries[j][i] = z.conjugate()
    return detrep.ExactMatrix(entries, hermitian=True)


def random_linear_matroid(rng: random.Random, m: int, n: int) -> matroid.Matroid:
    """Column matroid of a random integer matrix (representable, hence valid)."""
    while True:
        columns = [
            [Fraction(rng.randint(-2, 2)) for _ in range(m)] for _ in range(n)
        ]
        full = [[columns[j][i] for j in range(n)] for i in range(m)]
        r = division_rank([[GaussRational(x) for x in row] for row in full])
        if r > 0:
            break
    bases = []
    for subset in combinations(range(n), r):
        sub = [[GaussRational(columns[j][i]) for j in subset] for i in range(m)]
        if division_rank(sub) == r:
            bases.append(sum(1 << j for j in subset))
    return matroid.Matroid.from_bases(n, bases)


def random_arrangement(rng: random.Random) -> list[detrep.ExactMatrix]:
    """Generators of a random rational subspace arrangement (m <= 6, n <= 8)."""
    n = rng.randint(4, 8)
    m = rng.randint(2, 6)
    gens = []
    for _ in range(n):
        cols = rng.randint(1, 2)
        gens.append(
            detrep.ExactMatrix(
                [
                    [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(cols)]
                    for _ in range(m)
                ]
            )
        )
    return gens


def random_psd_sum(rng: random.Random, m: int, terms: int) -> detrep.ExactMatrix:
    """Random sum of rank-one hermitian outer products (PSD by construction)."""
    total = detrep.ExactMatrix.zeros(m, m, hermitian=True)
    for _ in range(terms):
        v = [random_gauss(rng, span=2, max_den=3) for _ in range(m)]
        total = total + detrep.ExactMatrix.outer_product(v)
    return total


# ---------------------------------------------------------------------
# numeric reduction fixtures
# ---------------------------------------------------------------------


def partition_of_identity(rng: np.random.Generator, d: int, n: int) -> list[np.ndarray]:
    """Random PSD T_1..T_n with sum exactly normalized to the identity."""
    raw = []
    for _ in range(n):
        X = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        raw.append(X @ X.conj().T)
    G = sum(raw)
    w, Q = np.linalg.eigh(G)
    inv_sqrt = (Q * w**-0.5) @ Q.conj().T
    return [inv_sqrt @ R @ inv_sqrt for R in raw]


def padded_pencil(seed: int, d: int = 3, pad: int = 3, n: int = 3) -> list[np.ndarray]:
    """Pencil A_i = diag(T_i, 0) with sum T_i = I: valid monic rep of degree d."""
    rng = np.random.default_rng(seed)
    tensors = partition_of_identity(rng, d, n)
    N = d + pad
    pencil = []
    for T in tensors:
        A = np.zeros((N, N), dtype=np.complex128)
        A[:d, :d] = T
        pencil.append(A)
    return pencil
