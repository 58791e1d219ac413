import numpy as np
import pytest

from helpers import padded_pencil, partition_of_identity
from spectra.reduce import (
    NotPSD,
    ReductionError,
    SingularGram,
    Tolerances,
    TransversalityFailure,
    WrongCorank,
    build_reduced,
    check_preconditions,
    monicize,
    rank_one_split,
    run_reduction,
    transversality_check,
)


def eye(n):
    return np.eye(n, dtype=np.complex128)


class TestPreconditions:
    def test_negative_matrix_rejected(self):
        with pytest.raises(NotPSD) as info:
            check_preconditions([np.array([[-1.0 + 0j]])], 1)
        assert info.value.index == 1
        assert info.value.min_eigenvalue == pytest.approx(-1.0)
        assert info.value.stage == "preconditions"

    def test_padded_fixture_corank(self):
        pencil = padded_pencil(seed=2, d=3, pad=3, n=3)
        result = check_preconditions(pencil, 3)
        assert result.complement_rank == 3  # N - d
        assert all(m >= -1e-12 for m in result.pencil_min_eigenvalues)

    def test_identity_partition_has_zero_complement(self):
        tensors = partition_of_identity(np.random.default_rng(3), 3, 3)
        result = check_preconditions(tensors, 3)
        assert result.complement_rank == 0

    def test_wrong_corank(self):
        pencil = padded_pencil(seed=4, d=3, pad=3, n=3)
        with pytest.raises(WrongCorank) as info:
            check_preconditions(pencil, 2)
        assert (info.value.observed, info.value.expected) == (3, 4)

    def test_too_many_matrices_summing_past_identity(self):
        with pytest.raises(NotPSD) as info:
            check_preconditions([eye(2), eye(2)], 2)
        assert info.value.index == 0  # the complement I - sum A_j

    def test_degree_bounds(self):
        with pytest.raises(ValueError):
            check_preconditions([eye(2)], 0)
        with pytest.raises(ValueError):
            check_preconditions([eye(2)], 3)


class TestRankOneSplit:
    def test_identity(self):
        cols = rank_one_split(eye(2))
        assert len(cols) == 2
        recon = sum(np.outer(v, v.conj()) for v in cols)
        assert np.allclose(recon, eye(2))

    def test_rank_one_sign_convention(self):
        v = np.array([3.0, 4.0])
        cols = rank_one_split(np.outer(v, v).astype(complex))
        assert len(cols) == 1
        assert np.allclose(cols[0], v)  # first sizeable entry made positive real

    def test_zero_matrix(self):
        assert rank_one_split(np.zeros((3, 3), dtype=complex)) == []

    def test_not_psd(self):
        with pytest.raises(NotPSD) as info:
            rank_one_split(-eye(2))
        assert info.value.stage == "rank_one_split"


class TestTransversality:
    def test_orthogonal_lines(self):
        e1 = np.array([1.0, 0.0], dtype=complex)
        e2 = np.array([0.0, 1.0], dtype=complex)
        result = transversality_check([e1], [e2])
        assert result.residual == pytest.approx(1.0)

    def test_coincident_lines_fail(self):
        e1 = np.array([1.0], dtype=complex)
        with pytest.raises(TransversalityFailure):
            transversality_check([e1], [e1])

    def test_padded_fixture(self):
        pencil = padded_pencil(seed=5)
        N = pencil[0].shape[0]
        C0 = eye(N) - sum(pencil)
        u_cols = rank_one_split(C0)
        v_cols = [v for A in pencil for v in rank_one_split(A)]
        result = transversality_check(u_cols, v_cols)
        assert result.rank_u == 3 and result.rank_v == 3
        assert result.residual == pytest.approx(1.0)

    def test_empty_u_side(self):
        tensors = partition_of_identity(np.random.default_rng(6), 2, 2)
        v_cols = [v for T in tensors for v in rank_one_split(T)]
        result = transversality_check([], v_cols)
        assert result.rank_u == 0 and result.rank_v == 2


class TestBuildReduced:
    def test_padded_fixture_identity(self):
        pencil = padded_pencil(seed=7)
        build = build_reduced(pencil, 3)
        assert all(T.shape == (3, 3) for T in build.tensors)
        rng = np.random.default_rng(0)
        for _ in range(50):
            x = rng.uniform(-1, 1, size=3)
            reference = np.linalg.det(eye(6) + sum((xi - 1) * A for xi, A in zip(x, pencil))).real
            reduced = build.scale * np.linalg.det(
                sum(xi * T for xi, T in zip(x, build.tensors))
            ).real
            assert abs(reduced - reference) <= 1e-8 * (1 + abs(reference))

    def test_single_variable_hand_case(self):
        build = build_reduced([np.diag([1.0, 0.0]).astype(complex)], 1)
        assert build.scale * build.tensors[0][0, 0].real == pytest.approx(1.0)

    def test_factor_counts_match_ranks(self):
        pencil = padded_pencil(seed=8)
        build = build_reduced(pencil, 3)
        assert build.factor_counts == [int(np.linalg.matrix_rank(A)) for A in pencil]


class TestMonicize:
    def test_scalar_case(self):
        result = monicize([np.array([[4.0 + 0j]])], 0.25)
        assert result.pencil[0][0, 0] == pytest.approx(1.0)

    def test_identity_gram_keeps_tensors(self):
        tensors = partition_of_identity(np.random.default_rng(9), 3, 2)
        result = monicize(tensors, 1.0)
        for B, T in zip(result.pencil, tensors):
            assert np.allclose(B, T, atol=1e-10)

    def test_sum_to_identity(self):
        pencil = padded_pencil(seed=10)
        build = build_reduced(pencil, 3)
        result = monicize(build.tensors, build.scale)
        assert result.sum_identity_defect <= 1e-8
        assert result.monic_defect <= 1e-6

    def test_singular_gram(self):
        with pytest.raises(SingularGram):
            monicize([np.diag([1.0, 0.0]).astype(complex)], 1.0)


class TestRunReduction:
    def test_padded_round_trip(self):
        report = run_reduction(padded_pencil(seed=11), 3, seed=123)
        assert report.status == "ok"
        assert report.max_homogeneous_error <= 1e-8
        assert report.max_monic_error <= 1e-8
        assert all(B.shape == (3, 3) for B in report.monic.pencil)

    def test_no_reduction_needed(self):
        tensors = partition_of_identity(np.random.default_rng(12), 3, 3)
        report = run_reduction(tensors, 3, seed=123)
        assert report.status == "ok"
        assert report.max_monic_error <= 1e-8
        assert report.build.scale == pytest.approx(1.0)

    def test_failure_report(self):
        report = run_reduction([np.array([[-1.0 + 0j]])], 1)
        assert report.status == "failed"
        assert report.failed_stage == "preconditions"
        assert report.error_details == {"matrix_index": 1, "min_eigenvalue": -1.0}

    def test_report_is_deterministic(self):
        first = run_reduction(padded_pencil(seed=13), 3, seed=99)
        second = run_reduction(padded_pencil(seed=13), 3, seed=99)
        assert first.to_json() == second.to_json()

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError, match="hermitian"):
            run_reduction([np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)], 1)

    def test_tolerance_override(self):
        # a slightly perturbed pencil passes only with loosened tolerances
        pencil = padded_pencil(seed=14)
        pencil[0] = pencil[0] - 1e-8 * np.eye(6)
        strict = run_reduction(pencil, 3)
        assert strict.status == "failed"
        assert strict.failed_stage == "preconditions"
        loose = run_reduction(pencil, 3, tol=Tolerances(psd=1e-6, rec=1e-6))
        assert loose.status == "ok"
