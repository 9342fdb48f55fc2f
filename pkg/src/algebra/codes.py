"""
Subgroups W of Z_2^n containing no standard generator t_i, i.e. binary
linear codes of length n and distance >= 2, up to coordinate permutation.

Words are n-bit ints. Coordinate 1 is bit 0 and is printed leftmost, so
the generator string "11000" is the word 0b00011.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Set, Tuple

import numpy as np

from .permutations import Permutation, all_permutations, word_action_table

logger = logging.getLogger(__name__)


def popcount(word: int) -> int:
    return bin(word).count("1")


def word_from_string(text: str) -> int:
    """Parse a generator string over {'0','1'}; leftmost character is coordinate 1."""
    if not text or any(ch not in "01" for ch in text):
        raise ValueError(f"not a binary word: {text!r}")
    return sum(1 << k for k, ch in enumerate(text) if ch == "1")


def word_to_string(word: int, n: int) -> str:
    return "".join("1" if (word >> k) & 1 else "0" for k in range(n))


def span(words: Iterable[int]) -> Set[int]:
    """Subgroup of Z_2^n generated by the given words."""
    elements = {0}
    for word in words:
        if word not in elements:
            elements |= {element ^ word for element in elements}
    return elements


def reduced_generators(codewords: Sequence[int]) -> Tuple[int, ...]:
    """Greedy generator list: scan codewords ascending, keep those outside the span so far."""
    chosen: List[int] = []
    spanned = {0}
    for word in sorted(codewords):
        if word not in spanned:
            chosen.append(word)
            spanned |= {element ^ word for element in spanned}
    return tuple(chosen)


@dataclass(frozen=True)
class Code:
    """A subgroup W of Z_2^n with no weight-1 word."""
    n: int
    generators: Tuple[int, ...]
    codewords: Tuple[int, ...]

    @classmethod
    def from_words(cls, n: int, words: Iterable[int]) -> "Code":
        codewords = tuple(sorted(span(words)))
        return cls(n=n, generators=reduced_generators(codewords), codewords=codewords)

    @classmethod
    def from_strings(cls, strings: Sequence[str], n: int = None) -> "Code":
        words = [word_from_string(s) for s in strings]
        if n is None:
            if not strings:
                raise ValueError("dimension required for an empty generator list")
            n = len(strings[0])
        if any(len(s) != n for s in strings):
            raise ValueError(f"generators must all have length {n}")
        return cls.from_words(n, words)

    @classmethod
    def trivial(cls, n: int) -> "Code":
        return cls(n=n, generators=(), codewords=(0,))

    @property
    def dimension(self) -> int:
        return len(self.generators)

    @property
    def support(self) -> int:
        mask = 0
        for word in self.codewords:
            mask |= word
        return mask

    def __contains__(self, word: int) -> bool:
        return word in self._lookup

    @property
    def _lookup(self) -> frozenset:
        cached = self.__dict__.get("_lookup_cache")
        if cached is None:
            cached = frozenset(self.codewords)
            object.__setattr__(self, "_lookup_cache", cached)
        return cached

    def generator_strings(self) -> List[str]:
        return [word_to_string(word, self.n) for word in self.generators]

    def is_fixed_by(self, sigma: Permutation) -> bool:
        return all(sigma.apply_word(word) in self for word in self.generators)

    def __str__(self) -> str:
        if not self.generators:
            return "<0>"
        return "<" + ",".join(self.generator_strings()) + ">"


def check_code(n: int, words: Iterable[int]) -> Tuple[bool, str]:
    """
    Check that words form a subgroup of Z_2^n without weight-1 words.

    Returns:
        (valid, diagnostic); the diagnostic is empty when valid
    """
    word_set = set(words)
    if any(word < 0 or word >> n for word in word_set):
        return False, f"word outside Z_2^{n}"
    if 0 not in word_set:
        return False, "zero word missing"
    for a in word_set:
        for b in word_set:
            if a ^ b not in word_set:
                return False, (
                    f"not closed under addition: {word_to_string(a, n)} + {word_to_string(b, n)}"
                )
    for word in word_set:
        if popcount(word) == 1:
            return False, f"contains standard generator {word_to_string(word, n)}"
    return True, ""


def is_valid_code(n: int, words: Iterable[int]) -> bool:
    valid, diagnostic = check_code(n, words)
    if not valid:
        logger.debug(f"Rejected word set in dimension {n}: {diagnostic}")
    return valid


def permute_code(code: Code, sigma: Permutation) -> Code:
    """Relocate coordinate k of every codeword to sigma(k)."""
    return Code.from_words(code.n, (sigma.apply_word(word) for word in code.codewords))


def _sorted_images(code: Code) -> np.ndarray:
    """Row s: sorted codewords of the code permuted by all_permutations(n)[s]."""
    table = word_action_table(code.n)
    images = table[:, np.array(code.codewords, dtype=np.int64)]
    return np.sort(images, axis=1)


def _lexicographic_argmin(rows: np.ndarray) -> int:
    order = np.lexsort(rows.T[::-1])
    return int(order[0])


def canonical_code(code: Code) -> Code:
    """Minimum, over all of S_n, of the sorted codeword list."""
    rows = _sorted_images(code)
    best = rows[_lexicographic_argmin(rows)]
    return Code.from_words(code.n, (int(word) for word in best))


def canonicalizing_permutation(code: Code) -> Permutation:
    """Some sigma with permute_code(code, sigma) == canonical_code(code)."""
    rows = _sorted_images(code)
    return all_permutations(code.n)[_lexicographic_argmin(rows)]


def stabilizer(code: Code) -> List[Permutation]:
    """Every sigma in S_n with sigma W = W, in lexicographic order."""
    rows = _sorted_images(code)
    target = np.array(code.codewords, dtype=np.int64)
    hits = np.flatnonzero(np.all(rows == target[np.newaxis, :], axis=1))
    perms = all_permutations(code.n)
    return [perms[i] for i in hits]


def orbit_size(code: Code) -> int:
    """Number of distinct permuted copies of W."""
    rows = _sorted_images(code)
    return len(np.unique(rows, axis=0))


def free_columns(code: Code) -> frozenset:
    """Coordinates (0-based) outside the support of every codeword."""
    support = code.support
    return frozenset(k for k in range(code.n) if not (support >> k) & 1)


def dual_code(code: Code) -> Code:
    """Orthogonal complement under the standard bilinear form."""
    words = [
        v for v in range(1 << code.n)
        if all(popcount(v & w) % 2 == 0 for w in code.generators)
    ]
    return Code.from_words(code.n, words)


def has_zero_column(code: Code) -> bool:
    """True if the generator matrix of the code has an all-zero column."""
    return code.support != (1 << code.n) - 1


def enumerate_sub_classes(n: int) -> List[Code]:
    """
    One canonical representative per permutation class of valid codes.

    Classes are grown one dimension at a time: every class of dimension k is
    extended by one word outside it, the span is canonicalized and kept if
    its canonical form is new.

    Args:
        n: number of coordinates (n >= 1)

    Returns:
        Canonical codes sorted by their codeword lists
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")

    seen = {}
    trivial = Code.trivial(n)
    seen[trivial.codewords] = trivial
    frontier = [trivial]
    dimension = 0

    while frontier:
        grown: List[Code] = []
        spans_tried = set()
        for code in frontier:
            for word in range(1, 1 << n):
                if word in code:
                    continue
                extended = tuple(sorted(span(code.codewords + (word,))))
                if extended in spans_tried:
                    continue
                spans_tried.add(extended)
                if not is_valid_code(n, extended):
                    continue
                canonical = canonical_code(Code.from_words(n, extended))
                if canonical.codewords not in seen:
                    seen[canonical.codewords] = canonical
                    grown.append(canonical)
        dimension += 1
        logger.debug(f"Sub({n}): {len(grown)} classes of dimension {dimension}")
        frontier = grown

    classes = sorted(seen.values(), key=lambda code: code.codewords)
    logger.info(f"Sub({n}) has {len(classes)} classes")
    return classes
