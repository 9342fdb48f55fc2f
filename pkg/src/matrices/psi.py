"""
Binary Psi matrices: enumeration for a code W, the normalized S(W)-action,
orbits and stabilizers S(Psi).

Rows are stored as n-bit ints with column j at bit j, the same layout as
codewords, so the W-compatibility condition is a XOR and a lookup.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.algebra.codes import Code
from src.algebra.permutations import Permutation
from src.errors import OperationRejected

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PsiMatrix:
    """n x n binary matrix; rows[i] holds psi_ij at bit j."""
    n: int
    rows: Tuple[int, ...]

    @classmethod
    def zero(cls, n: int) -> "PsiMatrix":
        return cls(n=n, rows=(0,) * n)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "PsiMatrix":
        n = len(entries)
        rows = []
        for row in entries:
            if len(row) != n:
                raise ValueError(f"psi must be {n}x{n}")
            mask = 0
            for j, bit in enumerate(row):
                if bit not in (0, 1):
                    raise ValueError(f"psi entries must be 0 or 1, got {bit!r}")
                mask |= bit << j
            rows.append(mask)
        return cls(n=n, rows=tuple(rows))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def column(self, j: int) -> List[int]:
        return [(row >> j) & 1 for row in self.rows]

    def to_lists(self) -> List[List[int]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    @property
    def is_zero(self) -> bool:
        return not any(self.rows)

    @property
    def key(self) -> int:
        """Row-major bits, entry (1,1) most significant."""
        value = 0
        for i in range(self.n):
            for j in range(self.n):
                value = (value << 1) | self.entry(i, j)
        return value


def reference_row(j: int) -> int:
    """l_j: row 1 for columns j > 1, row 2 for column 1 (0-based: 0, or 1 for j == 0)."""
    return 1 if j == 0 else 0


def compatibility_word(psi: PsiMatrix, i: int, j: int) -> int:
    """Word with coordinate k = [psi_ik != psi_jk] for k not in {i, j}, zero at i and j."""
    return (psi.rows[i] ^ psi.rows[j]) & ~((1 << i) | (1 << j))


def psi_violations(psi: PsiMatrix, code: Code) -> List[str]:
    """
    Names of the Psi invariants that fail, in a fixed order.

    Args:
        psi: candidate matrix
        code: the attached W

    Returns:
        Empty list when psi is admissible for W
    """
    n = psi.n
    problems = []
    if any(psi.entry(i, i) for i in range(n)):
        problems.append("psi diagonal must be 0")
    if psi.rows[0] or (n > 1 and psi.entry(1, 0)):
        problems.append("psi first row and psi_21 must be 0")
    for j in range(n):
        if sum(psi.column(j)) % 2:
            problems.append(f"psi column {j + 1} must have even sum")
            break
    for i in range(n):
        for j in range(i + 1, n):
            if compatibility_word(psi, i, j) not in code:
                problems.append(f"psi rows {i + 1},{j + 1} incompatible with W")
                return problems
    return problems


def is_valid_psi(psi: PsiMatrix, code: Code) -> bool:
    return not psi_violations(psi, code)


def _row_candidates(n: int, i: int, code: Code) -> List[int]:
    """
    Rows allowed at position i by compatibility with the zero first row:
    off columns {1, i} the row must be a codeword vanishing there.
    """
    blocked = 1 | (1 << i)
    base = [word for word in code.codewords if not word & blocked]
    if i == 1:
        return base
    return sorted(base + [word | 1 for word in base])


def enumerate_psi(n: int, code: Code) -> List[PsiMatrix]:
    """
    All Psi matrices admissible for W, sorted by row-major binary value.

    Rows 2..n-1 are chosen from the codeword-derived candidates with
    pairwise compatibility checked as soon as both rows exist; row n is
    forced by the even column sums.
    """
    if n < 3:
        return [PsiMatrix.zero(n)] if n >= 1 else []

    candidates = {i: _row_candidates(n, i, code) for i in range(1, n - 1)}
    last_candidates = set(_row_candidates(n, n - 1, code))
    found: List[PsiMatrix] = []
    rows = [0] * n

    def compatible(i: int) -> bool:
        for k in range(i):
            word = (rows[i] ^ rows[k]) & ~((1 << i) | (1 << k))
            if word not in code:
                return False
        return True

    def extend(i: int) -> None:
        if i == n - 1:
            parity = 0
            for row in rows[:n - 1]:
                parity ^= row
            if (parity >> (n - 1)) & 1:
                return
            rows[n - 1] = parity
            if parity in last_candidates and compatible(n - 1):
                found.append(PsiMatrix(n=n, rows=tuple(rows)))
            return
        for row in candidates[i]:
            rows[i] = row
            if compatible(i):
                extend(i + 1)
        rows[i] = 0

    extend(1)
    found.sort(key=lambda psi: psi.key)
    logger.debug(f"{len(found)} Psi matrices for W={code}")
    return found


def relocate_psi(sigma: Permutation, psi: PsiMatrix) -> PsiMatrix:
    """Relocate psi_ij to (sigma(i), sigma(j)) without normalizing."""
    rows = [0] * psi.n
    for i, row in enumerate(psi.rows):
        rows[sigma(i)] = sigma.apply_word(row)
    return PsiMatrix(n=psi.n, rows=tuple(rows))


def normalize_psi(psi: PsiMatrix) -> PsiMatrix:
    """psi_ij <- psi_ij - psi_{l_j j} for i != j, all entries read before any is written."""
    n = psi.n
    reference = 0
    for j in range(n):
        reference |= psi.entry(reference_row(j), j) << j
    rows = tuple(row ^ (reference & ~(1 << i)) for i, row in enumerate(psi.rows))
    return PsiMatrix(n=n, rows=rows)


def transport_psi(sigma: Permutation, psi: PsiMatrix) -> PsiMatrix:
    """Relocation followed by normalization 1, for any sigma in S_n."""
    return normalize_psi(relocate_psi(sigma, psi))


def psi_act(sigma: Permutation, psi: PsiMatrix, code: Code) -> PsiMatrix:
    """
    The normalized action of sigma in S(W) on Psi.

    Raises:
        OperationRejected: if sigma does not stabilize W
    """
    if not code.is_fixed_by(sigma):
        raise OperationRejected(f"permutation {sigma.one_based()} is not in S(W) for W={code}")
    return transport_psi(sigma, psi)


@dataclass(frozen=True)
class PsiOrbit:
    """One S(W)-orbit of Psi matrices."""
    representative: PsiMatrix
    members: Tuple[PsiMatrix, ...]
    stabilizer: Tuple[Permutation, ...]


def psi_stabilizer(psi: PsiMatrix, s_w: Iterable[Permutation]) -> List[Permutation]:
    """S(Psi): the sigma in S(W) whose normalized action fixes psi."""
    return [sigma for sigma in s_w if transport_psi(sigma, psi) == psi]


def psi_orbits(psis: Sequence[PsiMatrix], s_w: Sequence[Permutation]) -> List[PsiOrbit]:
    """
    Partition Psi matrices into S(W)-orbits.

    Args:
        psis: every Psi admissible for W
        s_w: the stabilizer of W

    Returns:
        Orbits sorted by representative; the representative is the member
        with the smallest row-major binary value
    """
    remaining: Dict[PsiMatrix, None] = dict.fromkeys(sorted(psis, key=lambda p: p.key))
    orbits: List[PsiOrbit] = []
    while remaining:
        seed = next(iter(remaining))
        members = {transport_psi(sigma, seed) for sigma in s_w}
        members.add(seed)
        for member in members:
            remaining.pop(member, None)
        ordered = tuple(sorted(members, key=lambda p: p.key))
        representative = ordered[0]
        orbits.append(PsiOrbit(
            representative=representative,
            members=ordered,
            stabilizer=tuple(psi_stabilizer(representative, s_w)),
        ))
    orbits.sort(key=lambda orbit: orbit.representative.key)
    return orbits


def find_orbit(orbits: Sequence[PsiOrbit], psi: PsiMatrix) -> Optional[int]:
    """Index of the orbit containing psi, if any."""
    for index, orbit in enumerate(orbits):
        if psi in orbit.members:
            return index
    return None
