"""
Permutations of the n coordinates and the helpers the orbit code needs.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Set, Tuple

import numpy as np


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection on {0..n-1}; images[i] is sigma(i)."""
    images: Tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> "Permutation":
        perm = cls(tuple(i - 1 for i in images))
        if sorted(perm.images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {list(images)}")
        return perm

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def is_identity(self) -> bool:
        return all(i == image for i, image in enumerate(self.images))

    def __call__(self, i: int) -> int:
        return self.images[i]

    def compose(self, other: "Permutation") -> "Permutation":
        """self o other (other is applied first)"""
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, image in enumerate(self.images):
            inv[image] = i
        return Permutation(tuple(inv))

    def apply_word(self, word: int) -> int:
        """Move coordinate k of an n-bit word to coordinate sigma(k)."""
        out = 0
        for k, image in enumerate(self.images):
            if (word >> k) & 1:
                out |= 1 << image
        return out

    def one_based(self) -> List[int]:
        return [i + 1 for i in self.images]


@lru_cache(maxsize=None)
def all_permutations(n: int) -> Tuple[Permutation, ...]:
    """All of S_n in lexicographic order of images."""
    return tuple(Permutation(p) for p in itertools.permutations(range(n)))


@lru_cache(maxsize=None)
def word_action_table(n: int) -> np.ndarray:
    """
    Table of shape (n!, 2^n): row s is the action of all_permutations(n)[s]
    on every n-bit word.
    """
    perms = np.array([p.images for p in all_permutations(n)], dtype=np.int64).reshape(-1, n)
    words = np.arange(1 << n, dtype=np.int64)
    table = np.zeros((len(perms), 1 << n), dtype=np.int64)
    for k in range(n):
        bit = (words >> k) & 1
        table |= bit[np.newaxis, :] << perms[:, k:k + 1]
    return table


def closure(generators: Iterable[Permutation], n: int) -> Set[Permutation]:
    """Subgroup of S_n generated by the given permutations."""
    gens = list(generators)
    seen = {Permutation.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for perm in frontier:
            for gen in gens:
                image = gen.compose(perm)
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return seen


def generating_subset(group: Sequence[Permutation]) -> List[Permutation]:
    """
    Greedy generating set of an explicitly listed permutation group.

    Args:
        group: every element of the group

    Returns:
        A subset whose closure is the whole group
    """
    if not group:
        return []
    n = group[0].n
    selected: List[Permutation] = []
    generated = {Permutation.identity(n)}
    for perm in sorted(group):
        if perm not in generated:
            selected.append(perm)
            generated = closure(selected, n)
    return selected
