import random

import pytest

from helpers import brute_rank, random_linear_matroid, vamos_bases_as_sets
from spectra import matroid, polymat
from spectra.bitsets import elements_from_mask, mask_from_elements
from spectra.matroid import (
    EmptyBasesError,
    ExchangeFailureError,
    Matroid,
    UnequalCardinalityError,
    bases_polynomial,
    matroid_from_json,
    matroid_to_json,
    rank_via_degree,
    uniform,
    vamos,
)


class TestFromBases:
    def test_uniform_2_3(self):
        M = Matroid.from_bases(3, [0b110, 0b101, 0b011])
        assert M == uniform(2, 3)

    def test_empty_bases(self):
        with pytest.raises(EmptyBasesError):
            Matroid.from_bases(2, [])

    def test_unequal_cardinality(self):
        with pytest.raises(UnequalCardinalityError) as info:
            Matroid.from_bases(2, [0b10, 0b11])
        assert set(info.value.witness) == {0b10, 0b11}

    def test_exchange_failure(self):
        # bases {1,2} and {3,4}: removing element 1 admits no replacement
        with pytest.raises(ExchangeFailureError) as info:
            Matroid.from_bases(4, [0b0011, 0b1100])
        b1, b2, element = info.value.witness
        assert {b1, b2} == {0b0011, 0b1100}
        assert element in elements_from_mask(b1)

    def test_ground_set_limit(self):
        with pytest.raises(matroid.MatroidError):
            Matroid.from_bases(17, [1])


class TestVamos:
    def test_basis_count(self):
        assert len(vamos().bases) == 65  # C(8,4) = 70 minus five planes

    def test_5678_is_basis(self):
        assert mask_from_elements([5, 6, 7, 8]) in vamos().bases

    def test_1456_is_not_basis(self):
        assert mask_from_elements([1, 4, 5, 6]) not in vamos().bases

    def test_passes_validation(self):
        M = vamos()
        revalidated = Matroid.from_bases(M.n, M.bases)
        assert revalidated == M

    def test_matches_set_oracle(self):
        oracle = {mask_from_elements(b) for b in vamos_bases_as_sets()}
        assert vamos().bases == oracle


class TestRank:
    def test_nonbasis_plane(self):
        assert vamos().rank(mask_from_elements([1, 4, 5, 6])) == 3

    def test_basis_subset(self):
        assert vamos().rank(mask_from_elements([5, 6, 7, 8])) == 4

    def test_empty_subset(self):
        assert vamos().rank(0) == 0
        assert uniform(2, 4).rank(0) == 0

    def test_against_set_oracle(self):
        bases = vamos_bases_as_sets()
        M = vamos()
        rng = random.Random(1)
        for _ in range(50):
            elems = frozenset(e for e in range(1, 9) if rng.random() < 0.5)
            assert M.rank(mask_from_elements(elems)) == brute_rank(bases, elems)


class TestBasesPolynomial:
    def test_uniform_2_3(self):
        h = bases_polynomial(uniform(2, 3))
        assert dict(h.iter_terms()) == {(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1}

    def test_vamos_shape(self):
        h = bases_polynomial(vamos())
        assert len(h) == 65
        assert all(c == 1 for _, c in h.iter_terms())
        assert all(sum(e) == 4 for e, _ in h.iter_terms())

    def test_single_element(self):
        assert dict(bases_polynomial(uniform(1, 1)).iter_terms()) == {(1,): 1}

    def test_support_is_basis_incidence(self):
        for M in (uniform(2, 4), vamos()):
            h = bases_polynomial(M)
            incidence = {
                tuple(1 if b >> k & 1 else 0 for k in range(M.n)) for b in M.bases
            }
            assert h.support() == incidence


class TestRankViaDegree:
    def test_vamos_plane(self):
        assert rank_via_degree(vamos(), mask_from_elements([1, 4, 5, 6])) == 3

    def test_singleton(self):
        assert rank_via_degree(uniform(2, 3), 0b001) == 1

    def test_empty(self):
        assert rank_via_degree(uniform(2, 3), 0) == 0
        assert rank_via_degree(vamos(), 0) == 0

    @pytest.mark.parametrize("M", [uniform(2, 3), uniform(1, 4), uniform(3, 5)])
    def test_exhaustive_equality_small(self, M):
        for mask in range(1 << M.n):
            assert M.rank(mask) == rank_via_degree(M, mask)

    def test_exhaustive_equality_vamos(self):
        M = vamos()
        for mask in range(1 << 8):
            assert M.rank(mask) == rank_via_degree(M, mask)


class TestUniform:
    def test_u23(self):
        assert len(uniform(2, 3).bases) == 3

    def test_u48(self):
        assert len(uniform(4, 8).bases) == 70

    def test_u11(self):
        assert uniform(1, 1).bases == frozenset({0b1})

    def test_bounds(self):
        with pytest.raises(matroid.MatroidError):
            uniform(0, 3)
        with pytest.raises(matroid.MatroidError):
            uniform(5, 4)


class TestPolymatroidStructure:
    @pytest.mark.parametrize("M", [uniform(2, 4), uniform(3, 5), vamos()])
    def test_rank_table_is_polymatroid(self, M):
        table = polymat.RankTable.from_matroid(M)
        assert not polymat.check_polymatroid(table)
        assert all(M.rank(1 << k) <= 1 for k in range(M.n))

    def test_random_linear_matroids_validate(self):
        rng = random.Random(99)
        for _ in range(5):
            M = random_linear_matroid(rng, rng.randint(2, 4), rng.randint(3, 6))
            table = polymat.RankTable.from_matroid(M)
            assert not polymat.check_polymatroid(table)


class TestJson:
    def test_round_trip(self):
        M = vamos()
        assert matroid_from_json(matroid_to_json(M)) == M

    def test_one_indexed_lists(self):
        obj = matroid_to_json(uniform(1, 2))
        assert obj == {"n": 2, "bases": [[1], [2]]}

    def test_invalid_bases_rejected(self):
        with pytest.raises(matroid.MatroidError):
            matroid_from_json({"n": 4, "bases": [[1, 2], [3, 4]]})
