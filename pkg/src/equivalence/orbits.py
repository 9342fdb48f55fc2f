"""
Orbits of pairs under the equivalence operations, canonical pairs and the
class-level canonical form.
"""

import logging
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from src.algebra.codes import canonicalizing_permutation, stabilizer
from src.algebra.permutations import Permutation
from src.errors import InvariantBreach
from src.matrices.psi import (
    PsiOrbit, enumerate_psi, find_orbit, psi_orbits, psi_stabilizer, transport_psi,
)
from .cell import CellClassifier
from .pairs import Pair, cell_moves, op_permute, transport_pair

logger = logging.getLogger(__name__)


def pair_orbit(pair: Pair, s_psi: Sequence[Permutation]) -> FrozenSet[Pair]:
    """
    Closure of {pair} under the operations, breadth first.

    Args:
        pair: a normalized pair
        s_psi: the stabilizer of its Psi inside S(W)

    Returns:
        Every pair equivalent to `pair` with the same Psi
    """
    moves = [move.apply for move in cell_moves(pair.code, s_psi)]
    visited: Dict[int, Pair] = {pair.key: pair}
    frontier = [pair]
    while frontier:
        reached = []
        for member in frontier:
            for move in moves:
                image = move(member)
                if image.key not in visited:
                    visited[image.key] = image
                    reached.append(image)
        frontier = reached
    logger.debug(f"Orbit of size {len(visited)} for W={pair.code}")
    return frozenset(visited.values())


def canonical_pair(pair: Pair, s_psi: Optional[Sequence[Permutation]] = None) -> Pair:
    """Orbit member with the smallest key."""
    if s_psi is None:
        s_psi = psi_stabilizer(pair.psi, stabilizer(pair.code))
    return min(pair_orbit(pair, s_psi), key=lambda member: member.key)


def move_to_representative(pair: Pair) -> Tuple[Pair, PsiOrbit]:
    """
    Transport a normalized pair so that W is canonical and Psi is the
    representative of its S(W)-orbit.
    """
    moved = transport_pair(pair, canonicalizing_permutation(pair.code))
    s_w = stabilizer(moved.code)
    orbits = psi_orbits(enumerate_psi(moved.n, moved.code), s_w)
    index = find_orbit(orbits, moved.psi)
    if index is None:
        raise InvariantBreach(f"Psi of the transported pair is not admissible for W={moved.code}")
    orbit = orbits[index]
    if moved.psi != orbit.representative:
        sigma = next(
            (s for s in s_w if transport_psi(s, moved.psi) == orbit.representative),
            None,
        )
        if sigma is None:
            raise InvariantBreach("no permutation reaches the Psi orbit representative")
        moved = op_permute(moved, sigma)
    return moved, orbit


def class_cell(pair: Pair) -> Tuple[Pair, CellClassifier]:
    """The moved pair together with a classifier for its cell."""
    moved, orbit = move_to_representative(pair)
    return moved, CellClassifier(moved.code, orbit.representative, orbit.stabilizer)


def class_canonical_form(pair: Pair) -> Pair:
    """Smallest pair of the whole equivalence class, with W canonical and Psi a representative."""
    moved, classifier = class_cell(pair)
    return classifier.pair(classifier.canonical_code(moved.phi))
