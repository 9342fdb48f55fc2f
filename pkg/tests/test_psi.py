from collections import defaultdict

import pytest
from hypothesis import given, strategies as st

from src.algebra.codes import Code, enumerate_sub_classes, stabilizer
from src.algebra.permutations import Permutation
from src.errors import OperationRejected
from src.matrices.psi import (
    PsiMatrix, enumerate_psi, find_orbit, is_valid_psi, normalize_psi, psi_act,
    psi_orbits, psi_stabilizer, psi_violations,
)
from src.pipeline.reference import label_psi_orbits, load_published_table

from .factories import EVEN_FIVE, code_of, named_psi, psi_orbits_of, raw_code


class TestPsiMatrix:
    def test_key_is_row_major(self):
        psi = PsiMatrix.from_lists([[0, 0, 0], [0, 0, 0], [1, 0, 0]])
        assert psi.key == 0b000000100
        assert psi.to_lists() == [[0, 0, 0], [0, 0, 0], [1, 0, 0]]

    def test_from_lists_rejects_bad_entries(self):
        with pytest.raises(ValueError):
            PsiMatrix.from_lists([[0, 2], [0, 0]])
        with pytest.raises(ValueError):
            PsiMatrix.from_lists([[0, 0], [0]])


class TestViolations:
    def test_named_psi_are_valid_for_their_block(self):
        assert is_valid_psi(named_psi("Psi_1"), raw_code("11000", "10100"))
        assert is_valid_psi(named_psi("Psi_3"), raw_code("11000", "00110", "10101"))
        assert is_valid_psi(named_psi("Psi_4"), raw_code(*EVEN_FIVE))

    def test_diagonal(self):
        psi = PsiMatrix.from_lists([[0, 0, 0], [0, 1, 0], [0, 1, 0]])
        assert psi_violations(psi, Code.trivial(3))[0] == "psi diagonal must be 0"

    def test_incompatible_rows(self):
        psi = named_psi("Psi_1")
        problems = psi_violations(psi, raw_code("11000"))
        assert problems and "incompatible with W" in problems[-1]


class TestEnumeration:
    def test_threefold_psi_is_zero(self):
        for code in enumerate_sub_classes(3):
            assert enumerate_psi(3, code) == [PsiMatrix.zero(3)]

    def test_small_codes_only_admit_zero(self):
        for code in enumerate_sub_classes(5):
            if len(code.codewords) <= 2:
                assert enumerate_psi(5, code) == [PsiMatrix.zero(5)]

    def test_every_enumerated_psi_is_valid(self):
        for code in enumerate_sub_classes(5):
            psis = enumerate_psi(5, code)
            assert psis[0] == PsiMatrix.zero(5)
            assert psis == sorted(psis, key=lambda psi: psi.key)
            for psi in psis:
                assert not psi_violations(psi, code)


class TestNormalizedAction:
    def test_normalize_clears_reference_rows(self):
        psi = PsiMatrix.from_lists([[0, 1, 1], [1, 0, 1], [1, 0, 0]])
        normalized = normalize_psi(psi)
        assert normalized.rows[0] == 0
        assert normalized.entry(1, 0) == 0

    def test_rejects_permutations_outside_the_stabilizer(self):
        code = raw_code("11000")
        with pytest.raises(OperationRejected):
            psi_act(Permutation.from_one_based([3, 2, 1, 4, 5]), PsiMatrix.zero(5), code)

    @given(st.data())
    def test_composition(self, data):
        code = code_of(*EVEN_FIVE)
        s_w = stabilizer(code)
        psi = data.draw(st.sampled_from(enumerate_psi(5, code)))
        sigma = data.draw(st.sampled_from(s_w))
        rho = data.draw(st.sampled_from(s_w))
        assert psi_act(sigma, psi_act(rho, psi, code), code) == psi_act(sigma.compose(rho), psi, code)

    def test_action_preserves_validity(self):
        for code in enumerate_sub_classes(5):
            for psi in enumerate_psi(5, code):
                for sigma in stabilizer(code)[:12]:
                    assert is_valid_psi(psi_act(sigma, psi, code), code)


class TestOrbits:
    def test_orbits_partition_the_psi_set(self):
        for code in enumerate_sub_classes(5):
            psis = enumerate_psi(5, code)
            orbits = psi_orbits(psis, stabilizer(code))
            members = [psi for orbit in orbits for psi in orbit.members]
            assert sorted(members, key=lambda psi: psi.key) == psis
            assert orbits[0].representative.is_zero

    def test_orbit_stabilizer(self):
        for code in enumerate_sub_classes(5):
            s_w = stabilizer(code)
            for orbit in psi_orbits_of(code):
                assert len(orbit.members) * len(orbit.stabilizer) == len(s_w)
                assert list(orbit.stabilizer) == psi_stabilizer(orbit.representative, s_w)

    def test_two_generator_block(self):
        code = code_of("11000", "10100")
        orbits = psi_orbits_of(code)
        assert len(orbits) == 2
        assert label_psi_orbits(code, orbits) == ["0", "Psi_1"]

    def test_orbit_labels_match_published_blocks(self):
        table = load_published_table()
        published = defaultdict(list)
        for row in table.rows:
            published[code_of(*row.w_generators, n=5).codewords].append(row.psi_id)
        for code in enumerate_sub_classes(5):
            labels = label_psi_orbits(code, psi_orbits_of(code))
            assert sorted(labels) == sorted(published[code.codewords]), str(code)

    def test_find_orbit(self):
        code = code_of(*EVEN_FIVE)
        orbits = psi_orbits_of(code)
        for index, orbit in enumerate(orbits):
            assert find_orbit(orbits, orbit.members[-1]) == index
        assert find_orbit(orbits, PsiMatrix.zero(4)) is None
