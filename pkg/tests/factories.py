"""
Builders for codes, Psi matrices and pairs used across the test modules.
"""

import random
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from src.algebra.codes import Code, canonical_code, enumerate_sub_classes, free_columns, stabilizer
from src.equivalence.cell import CellClassifier
from src.equivalence.pairs import Pair
from src.matrices.phi import PhiMatrix, layout_for
from src.matrices.psi import PsiMatrix, PsiOrbit, enumerate_psi, psi_orbits
from src.pipeline.reference import label_psi_orbits, load_published_table

THREEFOLD_PHI = [[1, 0, 0], [0, 1, 1], [1, 1, 1]]

EVEN_FIVE = ("11000", "10100", "10010", "10001")


def code_of(*generators: str, n: Optional[int] = None) -> Code:
    """Canonical code spanned by the generator strings."""
    return canonical_code(Code.from_strings(list(generators), n=n))


def raw_code(*generators: str, n: Optional[int] = None) -> Code:
    """Code in the coordinates the generators are written in."""
    return Code.from_strings(list(generators), n=n)


def named_psi(label: str) -> PsiMatrix:
    """Published Psi matrix, in the coordinates of the published table."""
    return PsiMatrix.from_lists(load_published_table().named_psi[label])


def threefold_pair(code: Code) -> Pair:
    return Pair(code=code, psi=PsiMatrix.zero(3), phi=PhiMatrix.from_lists(THREEFOLD_PHI))


@lru_cache(maxsize=None)
def cells(n: int) -> Tuple[Tuple[Code, PsiOrbit], ...]:
    """(W, Psi orbit) for every cell of dimension n."""
    found: List[Tuple[Code, PsiOrbit]] = []
    for code in enumerate_sub_classes(n):
        for orbit in psi_orbits(enumerate_psi(n, code), stabilizer(code)):
            found.append((code, orbit))
    return tuple(found)


def psi_orbits_of(code: Code) -> List[PsiOrbit]:
    return psi_orbits(enumerate_psi(code.n, code), stabilizer(code))


def pair_in_cell(code: Code, psi: PsiMatrix, rng: random.Random) -> Pair:
    layout = layout_for(psi)
    return Pair(code=code, psi=psi, phi=layout.decode(rng.randrange(layout.count)))


def random_pair(rng: random.Random, n: int = 5, choices: Optional[Sequence] = None) -> Pair:
    """Normalized pair from a random cell, with any admissible Psi of that W."""
    code, orbit = rng.choice(choices or cells(n))
    psi = rng.choice(orbit.members)
    return pair_in_cell(code, psi, rng)


def labelled_cell(label: str, *generators: str) -> Tuple[Code, PsiOrbit]:
    """Cell of a published block whose Psi orbit carries the given label."""
    code = code_of(*generators)
    orbits = psi_orbits_of(code)
    return code, orbits[label_psi_orbits(code, orbits).index(label)]


def group_order(code: Code, orbit: PsiOrbit) -> int:
    """|S(Psi)| * |W|^(n-1) * 2^|free columns|: no orbit of the cell can be larger."""
    return len(orbit.stabilizer) * len(code.codewords) ** (code.n - 1) * 2 ** len(free_columns(code))


@lru_cache(maxsize=None)
def classifier_for(code: Code, orbit: PsiOrbit) -> CellClassifier:
    """Classifier of a cell with its labels computed, shared between test modules."""
    classifier = CellClassifier(code, orbit.representative, orbit.stabilizer)
    classifier.labels()
    return classifier
