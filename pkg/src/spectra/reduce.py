"""Size reduction of monic determinantal representations (floating point).

Input: hermitian matrices A_1..A_n of size N with det(I + sum x_i A_i)
of degree d.  Output: hermitian B_1..B_n of size d with the same
determinant, built through the following stages:

  1. preconditions -- every A_j PSD, and I - sum A_j PSD of rank N - d;
  2. rank_one_split -- eigendecompose each PSD matrix into rank-one
     columns v with sum v v* reconstructing it;
  3. transversality -- the complement columns (spanning U) and the pencil
     columns (spanning V) must satisfy rank U + rank V = rank [U|V] = N;
  4. block factorization -- with P = [orthonormal basis of U | of V],
     coordinates M1, M2 of the columns in their bases give d x d PSD
     tensors T_i = sum of coordinate outer products, and a positive scale
     c = det(P P*) |det M1|^2 with  p(x - 1) = c * det(sum x_i T_i);
  5. monicize -- G = sum T_i is positive definite, B_i = G^{-1/2} T_i
     G^{-1/2}, so sum B_i = I and det(I + sum x_i B_i) = p(x).

Everything here is numerical; the tolerances are explicit, scale-aware
where that matters, and overridable.  Each stage raises a
:class:`ReductionError` naming itself; :func:`run_reduction` instead
captures the failure in the report it always emits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class Tolerances:
    psd: float = 1e-9  # PSD slack: min eigenvalue >= -psd * (1 + ||M||)
    rank: float = 1e-7  # rank cut: values above rank * max(1, ||M||) count
    rec: float = 1e-9  # rank-one reconstruction error, max-entry norm
    monic: float = 1e-6  # |c * det(sum T_i) - 1|
    sym: float = 1e-8  # hermitian defect and sum-to-identity defect

    def rank_cut(self, norm: float) -> float:
        # A monic pencil has intrinsic scale 1 (the identity term), so the
        # cut keeps a unit floor; a purely relative cut would count rounding
        # noise as rank whenever a matrix is numerically zero.
        return self.rank * max(1.0, norm)


DETERMINISM_EPS = 1e-12  # magnitude floor for the phase-fixing entry


class ReductionError(Exception):
    stage = "reduction"

    def details(self) -> dict:
        return {}


class NotPSD(ReductionError):
    """A matrix that the stage needs to be PSD is not (index 0 = I - sum A_j)."""

    def __init__(self, index: int, min_eigenvalue: float, stage: str = "preconditions"):
        self.index = index
        self.min_eigenvalue = float(min_eigenvalue)
        self.stage = stage
        which = f"A_{index}" if index else "I - sum A_j"
        super().__init__(f"{which} has minimum eigenvalue {min_eigenvalue:.3e}")

    def details(self) -> dict:
        return {"matrix_index": self.index, "min_eigenvalue": self.min_eigenvalue}


class WrongCorank(ReductionError):
    stage = "preconditions"

    def __init__(self, observed: int, expected: int):
        self.observed = observed
        self.expected = expected
        super().__init__(
            f"I - sum A_j has rank {observed}, expected N - d = {expected}"
        )

    def details(self) -> dict:
        return {"observed_rank": self.observed, "expected_rank": self.expected}


class TransversalityFailure(ReductionError):
    stage = "transversality"

    def __init__(self, rank_u: int, rank_v: int, rank_combined: int, dimension: int):
        self.deficit = dimension - rank_combined
        self.ranks = (rank_u, rank_v, rank_combined)
        super().__init__(
            f"rank U = {rank_u}, rank V = {rank_v}, rank [U|V] = {rank_combined} "
            f"over C^{dimension}: subspaces fail to complement"
        )

    def details(self) -> dict:
        return {"rank_u": self.ranks[0], "rank_v": self.ranks[1],
                "rank_combined": self.ranks[2], "deficit": self.deficit}


class SingularGram(ReductionError):
    stage = "gram"

    def __init__(self, min_eigenvalue: float, stage: str = "gram"):
        self.min_eigenvalue = float(min_eigenvalue)
        self.stage = stage
        super().__init__(
            f"sum of reduced tensors has minimum eigenvalue {min_eigenvalue:.3e}"
        )

    def details(self) -> dict:
        return {"min_eigenvalue": self.min_eigenvalue}


def _as_matrix(entry, tol: Tolerances) -> np.ndarray:
    M = np.asarray(entry, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("pencil matrices must be square")
    scale = 1.0 + (float(np.max(np.abs(M))) if M.size else 0.0)
    defect = float(np.max(np.abs(M - M.conj().T))) if M.size else 0.0
    if defect > tol.sym * scale:
        raise ValueError(f"matrix is not hermitian within tolerance (defect {defect:.3e})")
    return (M + M.conj().T) / 2.0


def as_pencil(matrices: Sequence, tol: Tolerances = Tolerances()) -> list[np.ndarray]:
    """Validate and hermitize a list of matrices into complex128 arrays."""
    pencil = [_as_matrix(M, tol) for M in matrices]
    if not pencil:
        raise ValueError("empty pencil")
    size = pencil[0].shape[0]
    if any(M.shape[0] != size for M in pencil):
        raise ValueError("pencil matrices must share one size")
    return pencil


@dataclass
class PreconditionResult:
    pencil_min_eigenvalues: list[float]
    complement_eigenvalues: list[float]
    complement_rank: int

    def to_json(self) -> dict:
        return {
            "pencil_min_eigenvalues": self.pencil_min_eigenvalues,
            "complement_rank": self.complement_rank,
        }


def check_preconditions(
    pencil: Sequence[np.ndarray], d: int, tol: Tolerances = Tolerances()
) -> PreconditionResult:
    """Stage 1: every A_j PSD and I - sum A_j PSD of rank exactly N - d."""
    pencil = list(pencil)
    N = pencil[0].shape[0]
    if not 1 <= d <= N:
        raise ValueError(f"target degree d={d} outside 1..{N}")
    mins = []
    for j, A in enumerate(pencil, start=1):
        w = np.linalg.eigvalsh(A)
        norm = float(np.max(np.abs(w))) if w.size else 0.0
        mins.append(float(w[0]))
        if w[0] < -tol.psd * (1.0 + norm):
            raise NotPSD(j, w[0])
    C0 = np.eye(N, dtype=np.complex128) - sum(pencil)
    w0 = np.linalg.eigvalsh(C0)
    norm0 = float(np.max(np.abs(w0))) if w0.size else 0.0
    if w0[0] < -tol.psd * (1.0 + norm0):
        raise NotPSD(0, w0[0])
    rank0 = int(np.sum(w0 > tol.rank_cut(norm0)))
    if rank0 != N - d:
        raise WrongCorank(rank0, N - d)
    return PreconditionResult(mins, [float(x) for x in w0], rank0)


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate so the first entry of magnitude above the floor is positive real."""
    for x in v:
        if abs(x) > DETERMINISM_EPS:
            return v * (abs(x) / x)
    return v


def rank_one_split(M: np.ndarray, tol: Tolerances = Tolerances(), stage: str = "rank_one_split") -> list[np.ndarray]:
    """Stage 2: columns v with sum v v* = M, from the eigendecomposition.

    Eigenvalues above ``tol.rank * ||M||`` contribute sqrt(lambda) * u; the
    reconstruction must match M within ``tol.rec`` in max-entry norm.
    """
    w, U = np.linalg.eigh(M)
    norm = float(np.max(np.abs(w))) if w.size else 0.0
    if w.size and w[0] < -tol.psd * (1.0 + norm):
        raise NotPSD(0, w[0], stage=stage)
    columns = [
        _fix_phase(np.sqrt(lam) * U[:, k])
        for k, lam in enumerate(w)
        if lam > tol.rank_cut(norm)
    ]
    recon = sum((np.outer(v, v.conj()) for v in columns), np.zeros_like(M))
    defect = float(np.max(np.abs(recon - M))) if M.size else 0.0
    if defect > tol.rec * (1.0 + norm):
        raise ReductionError(
            f"rank-one reconstruction defect {defect:.3e} exceeds tolerance"
        )
    return columns


def _column_matrix(columns: Sequence[np.ndarray], dimension: int) -> np.ndarray:
    if not columns:
        return np.zeros((dimension, 0), dtype=np.complex128)
    return np.column_stack(columns)


def _numerical_rank(M: np.ndarray, tol: Tolerances) -> tuple[int, np.ndarray]:
    """(rank, singular values) with the cut at tol.rank * largest value."""
    if M.shape[1] == 0:
        return 0, np.zeros(0)
    s = np.linalg.svd(M, compute_uv=False)
    top = float(s[0]) if s.size else 0.0
    return int(np.sum(s > tol.rank_cut(top))), s


@dataclass
class TransversalityResult:
    rank_u: int
    rank_v: int
    rank_combined: int
    residual: float

    def to_json(self) -> dict:
        return {
            "rank_u": self.rank_u,
            "rank_v": self.rank_v,
            "rank_combined": self.rank_combined,
            "residual": self.residual,
        }


def transversality_check(
    u_columns: Sequence[np.ndarray],
    v_columns: Sequence[np.ndarray],
    tol: Tolerances = Tolerances(),
) -> TransversalityResult:
    """Stage 3: U and V intersect trivially and together fill the space.

    The residual is the smallest singular value of the side-by-side
    orthonormalized bases; values near 1 mean well-separated subspaces,
    values near 0 mean barely transversal.
    """
    if not u_columns and not v_columns:
        raise ValueError("both column families are empty")
    dimension = len(u_columns[0]) if u_columns else len(v_columns[0])
    U = _column_matrix(u_columns, dimension)
    V = _column_matrix(v_columns, dimension)
    rank_u, _ = _numerical_rank(U, tol)
    rank_v, _ = _numerical_rank(V, tol)
    rank_uv, _ = _numerical_rank(np.hstack([U, V]), tol)
    if not (rank_u + rank_v == rank_uv == dimension):
        raise TransversalityFailure(rank_u, rank_v, rank_uv, dimension)
    Qu = _orthonormal_basis(U, rank_u, tol)
    Qv = _orthonormal_basis(V, rank_v, tol)
    combined = np.hstack([Qu, Qv])
    s = np.linalg.svd(combined, compute_uv=False)
    return TransversalityResult(rank_u, rank_v, rank_uv, float(s[-1]))


def _orthonormal_basis(M: np.ndarray, rank: int, tol: Tolerances) -> np.ndarray:
    if M.shape[1] == 0:
        return M
    left, s, _ = np.linalg.svd(M, full_matrices=False)
    basis = left[:, :rank]
    return np.column_stack([_fix_phase(basis[:, k]) for k in range(basis.shape[1])])


@dataclass
class BuildResult:
    tensors: list[np.ndarray]
    scale: float
    factor_counts: list[int]
    preconditions: PreconditionResult
    transversality: TransversalityResult
    block_residual: float

    def to_json(self) -> dict:
        return {
            "scale": self.scale,
            "factor_counts": self.factor_counts,
            "preconditions": self.preconditions.to_json(),
            "transversality": self.transversality.to_json(),
            "block_residual": self.block_residual,
        }


def build_reduced(
    pencil: Sequence[np.ndarray], d: int, tol: Tolerances = Tolerances()
) -> BuildResult:
    """Stages 1-4: d x d PSD tensors T_i and scale c with

        det(I + sum (x_i - 1) A_i) = c * det(sum x_i T_i).
    """
    pencil = list(pencil)
    pre = check_preconditions(pencil, d, tol)
    N = pencil[0].shape[0]
    C0 = np.eye(N, dtype=np.complex128) - sum(pencil)
    u_columns = rank_one_split(C0, tol, stage="rank_one_split")
    v_groups = [rank_one_split(A, tol, stage="rank_one_split") for A in pencil]
    factor_counts = [len(g) for g in v_groups]
    v_columns = [v for group in v_groups for v in group]
    trans = transversality_check(u_columns, v_columns, tol)
    U = _column_matrix(u_columns, N)
    V = _column_matrix(v_columns, N)
    Qu = _orthonormal_basis(U, trans.rank_u, tol)
    Qv = _orthonormal_basis(V, trans.rank_v, tol)
    M1 = Qu.conj().T @ U
    M2 = Qv.conj().T @ V
    block_residual = 0.0
    if U.shape[1]:
        block_residual = max(block_residual, float(np.max(np.abs(Qu @ M1 - U))))
    if V.shape[1]:
        block_residual = max(block_residual, float(np.max(np.abs(Qv @ M2 - V))))
    P = np.hstack([Qu, Qv])
    det_gram = np.linalg.det(P @ P.conj().T).real
    det_m1 = np.linalg.det(M1) if M1.shape[0] else 1.0
    c = float(det_gram * abs(det_m1) ** 2)
    tensors = []
    offset = 0
    for count in factor_counts:
        block = M2[:, offset : offset + count]
        offset += count
        T = block @ block.conj().T
        tensors.append((T + T.conj().T) / 2.0)
    G = sum(tensors)
    wG = np.linalg.eigvalsh(G)
    normG = float(np.max(np.abs(wG))) if wG.size else 0.0
    if wG[0] <= tol.rank_cut(normG):
        raise SingularGram(wG[0])
    return BuildResult(tensors, c, factor_counts, pre, trans, block_residual)


@dataclass
class MonicResult:
    pencil: list[np.ndarray]
    monic_defect: float
    sum_identity_defect: float

    def to_json(self) -> dict:
        return {
            "monic_defect": self.monic_defect,
            "sum_identity_defect": self.sum_identity_defect,
        }


def monicize(
    tensors: Sequence[np.ndarray], c: float, tol: Tolerances = Tolerances()
) -> MonicResult:
    """Stage 5: B_i = G^{-1/2} T_i G^{-1/2} with G = sum T_i.

    For input coming from a monic pencil, c * det(G) = 1 up to numerical
    error (the affine polynomial takes value 1 at the origin); both that
    defect and the sum-to-identity defect are checked and reported.
    """
    tensors = list(tensors)
    G = sum(tensors)
    w, Q = np.linalg.eigh(G)
    normG = float(np.max(np.abs(w))) if w.size else 0.0
    if w[0] <= tol.rank_cut(normG):
        raise SingularGram(w[0], stage="monicize")
    inv_sqrt = (Q * (w ** -0.5)) @ Q.conj().T
    monic_pencil = []
    for T in tensors:
        B = inv_sqrt @ T @ inv_sqrt
        monic_pencil.append((B + B.conj().T) / 2.0)
    det_G = float(np.linalg.det(G).real)
    monic_defect = abs(c * det_G - 1.0)
    if monic_defect > tol.monic:
        raise ReductionError(
            f"scale times det(sum T_i) is {c * det_G:.9f}, defect {monic_defect:.3e} "
            "exceeds the monic tolerance"
        )
    total = sum(monic_pencil)
    sum_defect = float(np.max(np.abs(total - np.eye(total.shape[0]))))
    if sum_defect > tol.sym:
        raise ReductionError(
            f"sum of monic pencil differs from the identity by {sum_defect:.3e}"
        )
    return MonicResult(monic_pencil, monic_defect, sum_defect)


def _eval_affine(pencil: Sequence[np.ndarray], x: np.ndarray) -> complex:
    N = pencil[0].shape[0]
    M = np.eye(N, dtype=np.complex128)
    for xi, A in zip(x, pencil):
        M = M + xi * A
    return np.linalg.det(M)


def _eval_linear(tensors: Sequence[np.ndarray], x: np.ndarray) -> complex:
    M = np.zeros_like(tensors[0])
    for xi, T in zip(x, tensors):
        M = M + xi * T
    return np.linalg.det(M)


@dataclass
class ReductionReport:
    size: int
    degree: int
    status: str = "ok"
    failed_stage: str | None = None
    error: str | None = None
    error_details: dict = field(default_factory=dict)
    build: BuildResult | None = None
    monic: MonicResult | None = None
    verification_seed: int | None = None
    verification_points: int = 0
    max_homogeneous_error: float | None = None
    max_monic_error: float | None = None

    def to_json(self) -> dict:
        out = {
            "size": self.size,
            "degree": self.degree,
            "status": self.status,
        }
        if self.status != "ok":
            out["failed_stage"] = self.failed_stage
            out["error"] = self.error
            out["error_details"] = self.error_details
        if self.build is not None:
            out.update(self.build.to_json())
        if self.monic is not None:
            out.update(self.monic.to_json())
        if self.verification_seed is not None:
            out["verification"] = {
                "seed": self.verification_seed,
                "points": self.verification_points,
                "max_homogeneous_error": self.max_homogeneous_error,
                "max_monic_error": self.max_monic_error,
            }
        return out


def run_reduction(
    matrices: Sequence,
    d: int,
    tol: Tolerances = Tolerances(),
    seed: int = 42,
    samples: int = 50,
) -> ReductionReport:
    """Full pipeline with residual verification; never raises for stage failures.

    Verification compares, at ``samples`` uniform points of [-1, 1]^n,
    c * det(sum x_i T_i) against det(I + sum (x_i - 1) A_i), and the monic
    output det(I + sum x_i B_i) against det(I + sum x_i A_i); errors are
    relative to 1 + |reference|.
    """
    pencil = as_pencil(matrices, tol)
    report = ReductionReport(size=pencil[0].shape[0], degree=d)
    try:
        build = build_reduced(pencil, d, tol)
        report.build = build
        monic = monicize(build.tensors, build.scale, tol)
        report.monic = monic
    except ReductionError as err:
        report.status = "failed"
        report.failed_stage = err.stage
        report.error = str(err)
        report.error_details = err.details()
        return report
    rng = np.random.default_rng(seed)
    n = len(pencil)
    max_hom = 0.0
    max_monic = 0.0
    for _ in range(samples):
        x = rng.uniform(-1.0, 1.0, size=n)
        reference = _eval_affine(pencil, x - 1.0).real
        reduced = build.scale * _eval_linear(build.tensors, x).real
        max_hom = max(max_hom, abs(reduced - reference) / (1.0 + abs(reference)))
        reference_affine = _eval_affine(pencil, x).real
        monic_value = _eval_affine(monic.pencil, x).real
        max_monic = max(
            max_monic, abs(monic_value - reference_affine) / (1.0 + abs(reference_affine))
        )
    report.verification_seed = seed
    report.verification_points = samples
    report.max_homogeneous_error = max_hom
    report.max_monic_error = max_monic
    return report
