"""Exact determinantal expansion, Cauchy-Binet, and arrangement ranks.

Matrices carry Gaussian-rational entries throughout; real symmetric input
is the special case of zero imaginary parts, so "symmetric" and
"hermitian" pencils go through identical code paths and differ only in
the data.  Expanding det(A0 + x1*A1 + ... + xn*An) uses Laplace expansion
along rows memoized on the remaining-column mask: 2^m polynomial states
instead of m! permutation products.  Matrix ranks use fraction-free
Bareiss elimination after clearing row denominators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .bitsets import iter_bits
from .polymat import RankTable
from .polyx import (
    GAUSS,
    RATIONAL,
    GaussRational,
    Polynomial,
    coefficient_from_json,
    coefficient_to_json,
)

MATRIX_SIZE_LIMIT = 12
ARRANGEMENT_LIMIT = 12


class SizeBudgetExceeded(Exception):
    """Exact expansion requested beyond the matrix-size budget."""


class NonHermitianInput(ValueError):
    """Hermitian structure required but absent."""


class PSDCertificateError(ValueError):
    """Claimed positive semidefiniteness could not be certified."""


class ExactMatrix:
    """Dense matrix of Gaussian rationals, optionally flagged hermitian."""

    __slots__ = ("rows", "cols", "entries", "hermitian")

    def __init__(self, entries: Sequence[Sequence], hermitian: bool = False):
        rows = tuple(
            tuple(GaussRational.from_value(x) for x in row) for row in entries
        )
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged matrix rows")
        else:
            width = 0
        self.rows = len(rows)
        self.cols = width
        self.entries = rows
        self.hermitian = bool(hermitian)
        if self.hermitian:
            if self.rows != self.cols:
                raise NonHermitianInput("hermitian matrices must be square")
            for i in range(self.rows):
                for j in range(i, self.cols):
                    if rows[i][j] != rows[j][i].conjugate():
                        raise NonHermitianInput(
                            f"entry ({i}, {j}) is not the conjugate of ({j}, {i})"
                        )

    @classmethod
    def identity(cls, m: int) -> "ExactMatrix":
        return cls(
            [[1 if i == j else 0 for j in range(m)] for i in range(m)], hermitian=True
        )

    @classmethod
    def zeros(cls, rows: int, cols: int, hermitian: bool = False) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)], hermitian=hermitian)

    @classmethod
    def outer_product(cls, column: Sequence) -> "ExactMatrix":
        """v v* for a column vector v: hermitian PSD of rank <= 1."""
        v = [GaussRational.from_value(x) for x in column]
        return cls(
            [[a * b.conjugate() for b in v] for a in v], hermitian=True
        )

    def entry(self, i: int, j: int) -> GaussRational:
        return self.entries[i][j]

    def column(self, j: int) -> tuple[GaussRational, ...]:
        return tuple(row[j] for row in self.entries)

    def conjugate_transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [
                [self.entries[i][j].conjugate() for i in range(self.rows)]
                for j in range(self.cols)
            ],
            hermitian=self.hermitian,
        )

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shape mismatch")
        return ExactMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
            hermitian=self.hermitian and other.hermitian,
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("matrix shape mismatch in product")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = GaussRational()
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return ExactMatrix(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    __hash__ = None

    def __repr__(self) -> str:
        flag = ", hermitian" if self.hermitian else ""
        return f"ExactMatrix({self.rows}x{self.cols}{flag})"


class Representation:
    """Affine pencil A0 + x1*A1 + ... + xn*An; A0 defaults to the identity."""

    __slots__ = ("m", "a0", "pencil")

    def __init__(self, pencil: Sequence[ExactMatrix], a0: ExactMatrix | None = None):
        pencil = tuple(pencil)
        if pencil:
            m = pencil[0].rows
        elif a0 is not None:
            m = a0.rows
        else:
            raise ValueError("a representation needs at least one matrix")
        for A in pencil:
            if A.rows != m or A.cols != m:
                raise ValueError("pencil matrices must be square of equal size")
        if a0 is not None and (a0.rows != m or a0.cols != m):
            raise ValueError("A0 size differs from the pencil")
        self.m = m
        self.a0 = a0
        self.pencil = pencil

    @property
    def num_vars(self) -> int:
        return len(self.pencil)

    def constant_term(self) -> ExactMatrix:
        return self.a0 if self.a0 is not None else ExactMatrix.identity(self.m)

    def all_hermitian(self) -> bool:
        return self.constant_term().hermitian and all(A.hermitian for A in self.pencil)


# ---------------------------------------------------------------------
# determinant expansion
# ---------------------------------------------------------------------


def _det_of_polynomial_entries(entries: list[list[Polynomial]], num_vars: int) -> Polynomial:
    """Laplace expansion memoized on the remaining-column mask."""
    m = len(entries)
    one = Polynomial.one(num_vars, GAUSS)
    if m == 0:
        return one
    memo: dict[int, Polynomial] = {0: one}

    def rec(mask: int) -> Polynomial:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        row = m - mask.bit_count()
        acc = Polynomial.zero(num_vars, GAUSS)
        sign = 1
        for col in iter_bits(mask):
            e = entries[row][col]
            if not e.is_zero:
                sub = rec(mask & ~(1 << col))
                acc = acc + (e * sub if sign > 0 else -(e * sub))
            sign = -sign
        memo[mask] = acc
        return acc

    return rec((1 << m) - 1)


def expand_det_affine(
    rep: Representation,
    real_output: bool | None = None,
    size_limit: int = MATRIX_SIZE_LIMIT,
) -> Polynomial:
    """Exact polynomial det(A0 + x1*A1 + ... + xn*An).

    With ``real_output`` unset the result is demoted to rational
    coefficients exactly when every input matrix is flagged hermitian;
    the imaginary part of every coefficient must then cancel exactly,
    which is asserted term by term.
    """
    if rep.m > size_limit:
        raise SizeBudgetExceeded(
            f"matrix size {rep.m} exceeds the exact-expansion budget {size_limit}"
        )
    n = rep.num_vars
    a0 = rep.constant_term()
    hermitian = rep.all_hermitian()
    if real_output is None:
        real_output = hermitian
    elif real_output and not hermitian:
        raise NonHermitianInput("real output demanded for a non-hermitian pencil")
    entries: list[list[Polynomial]] = []
    for i in range(rep.m):
        row = []
        for j in range(rep.m):
            terms: dict[tuple, GaussRational] = {}
            c = a0.entry(i, j)
            if c:
                terms[(0,) * n] = c
            for k, A in enumerate(rep.pencil):
                c = A.entry(i, j)
                if c:
                    e = [0] * n
                    e[k] = 1
                    terms[tuple(e)] = c
            row.append(Polynomial(n, terms, GAUSS))
        entries.append(row)
    det = _det_of_polynomial_entries(entries, n)
    if real_output:
        return det.as_rational()  # raises if any imaginary part survives
    return det


def det_exact(matrix: Sequence[Sequence[GaussRational]]) -> GaussRational:
    """Determinant of a square Gaussian-rational matrix by elimination."""
    m = len(matrix)
    work = [list(row) for row in matrix]
    det = GaussRational(1)
    for col in range(m):
        pivot_row = None
        for r in range(col, m):
            if work[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            return GaussRational()
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            det = -det
        pivot = work[col][col]
        det = det * pivot
        for r in range(col + 1, m):
            if not work[r][col]:
                continue
            factor = work[r][col] / pivot
            for c in range(col, m):
                work[r][c] = work[r][c] - factor * work[col][c]
    return det


def cauchy_binet_expand(B: ExactMatrix) -> Polynomial:
    """det(B diag(z) B*) as a polynomial in z_1..z_M by minor summation.

    One term |det B(S)|^2 * prod_{j in S} z_j per m-subset S of columns
    with nonvanishing maximal minor; all coefficients are nonnegative
    rationals, so the output is a rational-kind polynomial.
    """
    m, M = B.rows, B.cols
    if m > M:
        raise ValueError(f"need at least as many columns as rows, got {m}x{M}")
    terms: dict[tuple, Fraction] = {}
    for subset in combinations(range(M), m):
        minor = det_exact([[B.entry(i, j) for j in subset] for i in range(m)])
        if not minor:
            continue
        coeff = minor.abs2()
        exponents = tuple(1 if j in subset else 0 for j in range(M))
        terms[exponents] = coeff
    return Polynomial(M, terms, RATIONAL)


# ---------------------------------------------------------------------
# exact rank via fraction-free elimination
# ---------------------------------------------------------------------


def _cleared_rows(matrix: Sequence[Sequence[GaussRational]]) -> list[list[GaussRational]]:
    """Scale each row by a positive integer to Gaussian-integer entries."""
    out = []
    for row in matrix:
        lcm = 1
        for x in row:
            for d in (x.re.denominator, x.im.denominator):
                g = _gcd(lcm, d)
                lcm = lcm // g * d
        out.append([x * lcm for x in row])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def bareiss_rank(matrix: Sequence[Sequence[GaussRational]]) -> int:
    """Rank by Bareiss fraction-free elimination (exact division steps)."""
    if not matrix or not matrix[0]:
        return 0
    work = _cleared_rows(matrix)
    nrows, ncols = len(work), len(work[0])
    rank = 0
    prev = GaussRational(1)
    row = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(row, nrows):
            if work[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[row], work[pivot_row] = work[pivot_row], work[row]
        pivot = work[row][col]
        for r in range(row + 1, nrows):
            for c in range(col + 1, ncols):
                work[r][c] = (work[r][c] * pivot - work[r][col] * work[row][c]) / prev
            work[r][col] = GaussRational()
        prev = pivot
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def arrangement_rank_table(gens: Sequence[ExactMatrix]) -> RankTable:
    """Rank table of the subspace arrangement spanned by generator columns.

    ``gens[i]`` holds spanning columns of the i-th subspace; the value at
    a subset is the exact rank of all its generators stacked side by side.
    """
    n = len(gens)
    if n > ARRANGEMENT_LIMIT:
        raise SizeBudgetExceeded(
            f"{n} subspaces exceed the arrangement budget {ARRANGEMENT_LIMIT}"
        )
    if n == 0:
        raise ValueError("empty arrangement")
    m = gens[0].rows
    for g in gens:
        if g.rows != m:
            raise ValueError("generator matrices must share the row count")

    def rank_of(mask: int) -> int:
        cols: list[tuple[GaussRational, ...]] = []
        for i in iter_bits(mask):
            cols.extend(gens[i].column(j) for j in range(gens[i].cols))
        if not cols:
            return 0
        stacked = [[col[r] for col in cols] for r in range(m)]
        return bareiss_rank(stacked)

    return RankTable.from_function(n, rank_of)


# ---------------------------------------------------------------------
# PSD certification and the rank/degree identity
# ---------------------------------------------------------------------


def check_psd(A: ExactMatrix) -> None:
    """Certify positive semidefiniteness by exact LDL* with diagonal pivoting.

    Raises PSDCertificateError with a witness when A is not PSD.  Needs a
    hermitian matrix (diagonal entries are then real).
    """
    if not A.hermitian:
        raise NonHermitianInput("PSD certification needs a hermitian matrix")
    m = A.rows
    work = {(i, j): A.entry(i, j) for i in range(m) for j in range(m)}
    active = list(range(m))
    while active:
        diag = {i: work[(i, i)].re for i in active}
        pivot_index = max(active, key=lambda i: diag[i])
        pivot = diag[pivot_index]
        negative = [i for i in active if diag[i] < 0]
        if negative:
            i = negative[0]
            raise PSDCertificateError(f"negative diagonal pivot {diag[i]} at index {i}")
        if pivot == 0:
            for i in active:
                for j in active:
                    if i != j and work[(i, j)]:
                        raise PSDCertificateError(
                            f"zero diagonal with nonzero entry at ({i}, {j})"
                        )
            return
        active.remove(pivot_index)
        for i in active:
            for j in active:
                work[(i, j)] = work[(i, j)] - work[(i, pivot_index)] * work[
                    (pivot_index, j)
                ] / GaussRational(pivot)


def verify_gram_factorization(A: ExactMatrix, gram: ExactMatrix) -> None:
    """Check A = V V* exactly; such an A is PSD by construction."""
    if gram.rows != A.rows:
        raise PSDCertificateError("Gram factor has the wrong row count")
    product = gram @ gram.conjugate_transpose()
    if product.entries != A.entries:
        raise PSDCertificateError("Gram factorization does not reproduce the matrix")


@dataclass(frozen=True)
class RankDegreeResult:
    elimination_rank: int
    determinant_degree: int

    @property
    def value(self) -> int:
        return self.elimination_rank


def psd_rank_degree_rank(
    psd: Sequence[ExactMatrix],
    subset: int,
    grams: Sequence[ExactMatrix | None] | None = None,
) -> RankDegreeResult:
    """rank(sum_{i in S} A_i) two ways: elimination vs deg det(I + t*sum).

    Every input matrix must be certified PSD, either by a caller-supplied
    Gram factorization or by the exact LDL* test.  The two rank paths are
    computed independently and must agree.
    """
    if not psd:
        raise ValueError("empty matrix sequence")
    m = psd[0].rows
    for i, A in enumerate(psd):
        if A.rows != m or A.cols != m:
            raise ValueError("matrices must be square of equal size")
        gram = grams[i] if grams is not None else None
        if gram is not None:
            verify_gram_factorization(A, gram)
        else:
            check_psd(A)
    total = ExactMatrix.zeros(m, m, hermitian=True)
    for i in iter_bits(subset):
        if i >= len(psd):
            raise ValueError("subset mask outside the matrix sequence")
        total = total + psd[i]
    rank = bareiss_rank(total.entries)
    char_like = expand_det_affine(Representation([total]))
    degree = char_like.degree()
    degree = 0 if degree is None else degree
    if rank != degree:
        raise AssertionError(
            f"rank/degree identity violated: elimination {rank}, degree {degree}"
        )
    return RankDegreeResult(rank, degree)


# ---------------------------------------------------------------------
# representation verification
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class RepComparison:
    equal: bool
    monomial: tuple[int, ...] | None
    coefficient_poly: object | None
    coefficient_rep: object | None

    def to_json(self) -> dict:
        if self.equal:
            return {"equal": True}
        return {
            "equal": False,
            "monomial": list(self.monomial),
            "coefficient_poly": coefficient_to_json(self.coefficient_poly),
            "coefficient_rep": coefficient_to_json(self.coefficient_rep),
        }


def verify_representation(p: Polynomial, rep: Representation) -> RepComparison:
    """Compare p with the exact expansion of rep, first difference certified.

    The certificate is the graded-lexicographically first monomial whose
    coefficients differ, together with both coefficients.
    """
    if p.num_vars != rep.num_vars:
        raise ValueError(
            f"arity mismatch: polynomial has {p.num_vars} variables, "
            f"pencil has {rep.num_vars}"
        )
    expansion = expand_det_affine(rep)
    keys = set(p.support()) | set(expansion.support())
    for e in sorted(keys, key=lambda k: (sum(k), k)):
        cp = p.coefficient(e)
        cr = expansion.coefficient(e)
        if cp != cr:
            return RepComparison(False, e, cp, cr)
    return RepComparison(True, None, None, None)


# ---------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------


def matrix_to_json(A: ExactMatrix) -> dict:
    return {
        "rows": A.rows,
        "cols": A.cols,
        "hermitian": A.hermitian,
        "entries": [
            [coefficient_to_json(x) if isinstance(x, GaussRational) and x.im else str(x.re) for x in row]
            for row in A.entries
        ],
    }


def matrix_from_json(obj: dict) -> ExactMatrix:
    entries = [
        [_entry_from_json(x) for x in row] for row in obj["entries"]
    ]
    A = ExactMatrix(entries, hermitian=bool(obj.get("hermitian", False)))
    if A.rows != int(obj["rows"]) or A.cols != int(obj["cols"]):
        raise ValueError("matrix shape does not match the declared rows/cols")
    return A


def _entry_from_json(x) -> GaussRational:
    value = coefficient_from_json(x)
    return GaussRational.from_value(value)


def representation_to_json(rep: Representation) -> dict:
    return {
        "m": rep.m,
        "A0": None if rep.a0 is None else matrix_to_json(rep.a0),
        "pencil": [matrix_to_json(A) for A in rep.pencil],
    }


def representation_from_json(obj: dict) -> Representation:
    a0 = obj.get("A0")
    return Representation(
        [matrix_from_json(A) for A in obj["pencil"]],
        a0=None if a0 is None else matrix_from_json(a0),
    )
