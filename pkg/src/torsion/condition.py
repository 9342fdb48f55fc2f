"""
The torsion-free condition on normalized pairs.

A proper subset I of odd size falsifies the condition when, for every j in
I, the signed count psi_Ij is even and the Klein column sum over I equals
((psi_Ij / 2) mod 2) * tau. Singletons never falsify it because the
diagonal of Phi is 1.
"""

import itertools
import logging
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple

from src.algebra.klein import Klein
from src.equivalence.pairs import Pair
from src.matrices.psi import PsiMatrix

logger = logging.getLogger(__name__)

Subset = Tuple[int, ...]


@lru_cache(maxsize=None)
def odd_proper_subsets(n: int, min_size: int = 1) -> Tuple[Subset, ...]:
    """Proper subsets of {0..n-1} of odd size >= min_size, by size then lexicographically."""
    subsets = []
    for size in range(max(min_size, 1), n, 2):
        subsets.extend(itertools.combinations(range(n), size))
    return tuple(subsets)


def psi_I_j(psi: PsiMatrix, subset: Sequence[int], j: int) -> int:
    """
    Signed count of Psi entries in column j over the rows of I.

    With I = (i_1 < ... < i_m) and j = i_p:
    sum_{k<p} (-1)^(k-1) psi_{i_k j} - sum_{k>p} (-1)^(k-1) psi_{i_k j}.

    Raises:
        ValueError: if j is not in I
    """
    ordered = sorted(subset)
    if j not in ordered:
        raise ValueError(f"index {j + 1} is not in the subset {[i + 1 for i in ordered]}")
    position = ordered.index(j)
    total = 0
    for k, row in enumerate(ordered):
        if k == position or not psi.entry(row, j):
            continue
        sign = -1 if k % 2 else 1
        total += sign if k < position else -sign
    return total


def column_target_over(psi: PsiMatrix, subset: Subset) -> Optional[Tuple[int, ...]]:
    """
    Klein value each column sum over I must take for I to falsify the
    condition, or None when some psi_Ij is odd (I can never falsify it).
    """
    targets = []
    for j in subset:
        value = psi_I_j(psi, subset, j)
        if value % 2:
            return None
        targets.append(Klein.TAU if (value // 2) % 2 else Klein.ZERO)
    return tuple(targets)


def subset_fails(pair: Pair, subset: Subset) -> bool:
    targets = column_target_over(pair.psi, subset)
    if targets is None:
        return False
    phi = pair.phi
    for j, target in zip(subset, targets):
        total = 0
        for i in subset:
            total ^= phi.entry(i, j)
        if total != target:
            return False
    return True


def failing_subset(pair: Pair) -> Optional[Subset]:
    """First subset (by size, then lexicographic) that falsifies the condition."""
    for subset in odd_proper_subsets(pair.n, min_size=3):
        if subset_fails(pair, subset):
            return subset
    return None


def torsion_free(pair: Pair) -> bool:
    return failing_subset(pair) is None


def class_is_manifold(orbit: Iterable[Pair]) -> bool:
    """True iff every member of a complete orbit satisfies the condition."""
    return all(torsion_free(member) for member in orbit)
