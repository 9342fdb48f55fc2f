"""
Vectorized orbit classification of one (W, Psi) cell.

With Psi fixed, every equivalence operation followed by normalization is an
affine map over F_2 on the free coordinates of Phi (see PhiLayout). The
maps are derived from the scalar operations on basis vectors, checked on
random samples, and then applied to the whole cell at once with numpy.
Orbits are found by min-label propagation, so every Phi ends up labelled
with the free code of its orbit minimum, which is the canonical Phi.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import get_settings
from src.algebra.codes import Code
from src.algebra.klein import Klein
from src.algebra.permutations import Permutation
from src.errors import InvariantBreach, UsageFailure
from src.matrices.phi import PhiLayout, PhiMatrix, layout_for
from src.matrices.psi import PsiMatrix
from src.torsion.condition import column_target_over, odd_proper_subsets
from .pairs import Move, Pair, cell_moves

logger = logging.getLogger(__name__)

CHUNK_BITS = 10


def _index_dtype(bits: int):
    return np.int32 if bits <= 30 else np.int64


@dataclass(eq=False)
class AffineMap:
    """x -> offset XOR (XOR of columns[i] over the set bits i of x)."""
    name: str
    offset: int
    columns: Tuple[int, ...]
    tables: List[np.ndarray] = field(default_factory=list, repr=False)

    @property
    def signature(self) -> Tuple[int, Tuple[int, ...]]:
        return self.offset, self.columns

    @property
    def is_identity(self) -> bool:
        return self.offset == 0 and all(col == 1 << i for i, col in enumerate(self.columns))

    def __call__(self, x: int) -> int:
        out = self.offset
        for i, col in enumerate(self.columns):
            if (x >> i) & 1:
                out ^= col
        return out

    def rank(self) -> int:
        """Rank of the linear part over F_2."""
        pivots: Dict[int, int] = {}
        rank = 0
        for col in self.columns:
            value = col
            while value:
                top = value.bit_length() - 1
                if top not in pivots:
                    pivots[top] = value
                    rank += 1
                    break
                value ^= pivots[top]
        return rank

    def build_tables(self, dtype) -> None:
        """Per-chunk lookup tables of the linear part."""
        self.tables = []
        for start in range(0, len(self.columns), CHUNK_BITS):
            chunk = self.columns[start:start + CHUNK_BITS]
            table = np.zeros(1 << len(chunk), dtype=dtype)
            for b, col in enumerate(chunk):
                table[1 << b:1 << (b + 1)] = table[:1 << b] ^ col
            self.tables.append(table)

    def apply(self, chunks: Sequence[np.ndarray], dtype) -> np.ndarray:
        out = np.full(chunks[0].shape, self.offset, dtype=dtype)
        for table, index in zip(self.tables, chunks):
            out ^= table[index]
        return out


@dataclass
class CellResult:
    """Outcome of classifying one cell; plain data so it crosses process boundaries."""
    code: Code
    psi: PsiMatrix
    free_count: int
    phi_count: int
    orbit_count: int
    orbit_sizes: List[int]
    orbit_codes: List[int]
    manifold_codes: List[int]
    tf_orbit_constant: bool
    generator_count: int


class CellClassifier:
    """
    Orbit labelling for the pairs of one cell.

    Args:
        code: the code W
        psi: the fixed Psi (an orbit representative)
        s_psi: the stabilizer of psi inside S(W)
    """

    def __init__(self, code: Code, psi: PsiMatrix, s_psi: Sequence[Permutation]):
        settings = get_settings()
        self.code = code
        self.psi = psi
        self.s_psi = list(s_psi)
        self.layout: PhiLayout = layout_for(psi)
        if self.layout.bits > settings.max_cell_bits:
            raise UsageFailure(
                f"cell W={code} has 4^{len(self.layout.free)} Phi matrices, "
                f"above the limit of 2^{settings.max_cell_bits}"
            )
        self.size = self.layout.count
        self.dtype = _index_dtype(self.layout.bits)
        self._rng = random.Random(settings.seed)
        self._samples = settings.affine_samples
        self._maps: Optional[List[AffineMap]] = None
        self._active: List[AffineMap] = []
        self._labels: Optional[np.ndarray] = None
        self._chunks: Optional[List[np.ndarray]] = None

    # Generators

    def _operations(self) -> List[Move]:
        return cell_moves(self.code, self.s_psi)

    def _evaluate(self, operation: Callable[[Pair], Pair], x: int) -> int:
        pair = Pair(code=self.code, psi=self.psi, phi=self.layout.decode(x))
        image = operation(pair)
        if image.psi != self.psi:
            raise InvariantBreach(f"operation left the cell of Psi key {self.psi.key}")
        y = self.layout.encode(image.phi)
        if self.layout.decode(y) != image.phi:
            raise InvariantBreach("image Phi is not determined by its free entries")
        return y

    def _derive(self, name: str, operation: Callable[[Pair], Pair]) -> AffineMap:
        width = 2 * len(self.layout.free)
        offset = self._evaluate(operation, 0)
        columns = tuple(self._evaluate(operation, 1 << i) ^ offset for i in range(width))
        affine = AffineMap(name=name, offset=offset, columns=columns)
        for _ in range(self._samples if self.size > 1 else 0):
            x = self._rng.randrange(self.size)
            if affine(x) != self._evaluate(operation, x):
                raise InvariantBreach(f"{name} is not affine on the cell of W={self.code}")
        if affine.rank() != width:
            raise InvariantBreach(f"{name} is not invertible on the cell of W={self.code}")
        return affine

    def generators(self) -> List[AffineMap]:
        """Every distinct non-identity generator map; the spanning ones are marked active."""
        if self._maps is not None:
            return self._maps
        maps: List[AffineMap] = []
        seen: Dict[Tuple, AffineMap] = {}
        active: List[AffineMap] = []
        for move in self._operations():
            affine = self._derive(move.name, move.apply)
            if affine.is_identity:
                continue
            if affine.signature in seen:
                if move.spanning and seen[affine.signature] not in active:
                    active.append(seen[affine.signature])
                continue
            affine.build_tables(self.dtype)
            seen[affine.signature] = affine
            maps.append(affine)
            if move.spanning:
                active.append(affine)
        logger.debug(f"Cell W={self.code}: {len(maps)} distinct generators, {len(active)} spanning")
        self._maps = maps
        self._active = active
        return maps

    # Labelling

    def _chunk_indices(self) -> List[np.ndarray]:
        if self._chunks is None:
            xs = np.arange(self.size, dtype=self.dtype)
            width = 2 * len(self.layout.free)
            mask = (1 << CHUNK_BITS) - 1
            self._chunks = [
                (xs >> start) & mask for start in range(0, max(width, 1), CHUNK_BITS)
            ]
        return self._chunks

    def _images(self, affine: AffineMap) -> np.ndarray:
        return affine.apply(self._chunk_indices(), self.dtype)

    def _propagate(self, labels: np.ndarray, maps: Sequence[AffineMap]) -> np.ndarray:
        rounds = 0
        while True:
            rounds += 1
            before = labels.copy()
            for affine in maps:
                image = self._images(affine)
                np.minimum(labels, labels[image], out=labels)
                pulled = np.empty_like(labels)
                pulled[image] = labels
                np.minimum(labels, pulled, out=labels)
            while True:
                jumped = labels[labels]
                if np.array_equal(jumped, labels):
                    break
                labels = jumped
            if np.array_equal(labels, before):
                logger.debug(f"Labels settled after {rounds} rounds")
                return labels

    def labels(self) -> np.ndarray:
        """Free code of the orbit minimum, for every free code of the cell."""
        if self._labels is not None:
            return self._labels
        maps = self.generators()
        labels = np.arange(self.size, dtype=self.dtype)
        if self.size == 1 or not maps:
            self._labels = labels
            return labels

        active = list(self._active)
        labels = self._propagate(labels, active)
        while True:
            stray = [
                affine for affine in maps
                if affine not in active and not np.array_equal(labels[self._images(affine)], labels)
            ]
            if not stray:
                break
            logger.debug(f"{len(stray)} generators outside the spanning set moved labels")
            active.extend(stray)
            labels = self._propagate(labels, active)
        self._labels = labels
        return labels

    def canonical_code(self, phi: PhiMatrix) -> int:
        return int(self.labels()[self.layout.encode(phi)])

    # Torsion-free verdict

    def _entries(self) -> Dict[Tuple[int, int], object]:
        """Every Phi entry as a uint8 array over the cell, or an int when constant."""
        n = self.code.n
        xs = np.arange(self.size, dtype=self.dtype)
        entries: Dict[Tuple[int, int], object] = {}
        for i in range(n):
            for j in range(n):
                entries[(i, j)] = Klein.ONE if i == j else 0
        for (i, j), shift in zip(self.layout.free, self.layout.shifts):
            entries[(i, j)] = ((xs >> shift) & 3).astype(np.uint8)
        for j, (si, sj) in enumerate(self.layout.slack):
            total = self.layout.targets[j]
            for i in range(n):
                if i != si:
                    total = total ^ entries[(i, j)]
            entries[(si, sj)] = total
        return entries

    def torsion_free_mask(self) -> np.ndarray:
        """Boolean array: the Phi with free code x satisfies the torsion-free condition."""
        entries = self._entries()
        failing = np.zeros(self.size, dtype=bool)
        for subset in odd_proper_subsets(self.code.n, min_size=3):
            targets = column_target_over(self.psi, subset)
            if targets is None:
                continue
            fails = np.ones(self.size, dtype=bool)
            for j, target in zip(subset, targets):
                total = 0
                for i in subset:
                    total = total ^ entries[(i, j)]
                fails &= np.asarray(total == target)
            failing |= fails
        return ~failing

    def classify(self) -> CellResult:
        labels = self.labels()
        tf = self.torsion_free_mask()
        orbit_codes, sizes = np.unique(labels, return_counts=True)
        if int(sizes.sum()) != self.size:
            raise InvariantBreach(f"orbit sizes sum to {int(sizes.sum())}, expected {self.size}")
        failing_labels = np.unique(labels[~tf])
        passing_labels = np.unique(labels[tf])
        manifold = np.setdiff1d(orbit_codes, failing_labels)
        constant = not np.intersect1d(failing_labels, passing_labels).size
        logger.info(
            f"Cell W={self.code} Psi={self.psi.key}: {len(orbit_codes)} orbits, "
            f"{len(manifold)} manifolds"
        )
        return CellResult(
            code=self.code,
            psi=self.psi,
            free_count=len(self.layout.free),
            phi_count=self.size,
            orbit_count=len(orbit_codes),
            orbit_sizes=[int(s) for s in sizes],
            orbit_codes=[int(c) for c in orbit_codes],
            manifold_codes=[int(c) for c in manifold],
            tf_orbit_constant=constant,
            generator_count=len(self.generators()),
        )

    def pair(self, free_code: int) -> Pair:
        return Pair(code=self.code, psi=self.psi, phi=self.layout.decode(free_code))
