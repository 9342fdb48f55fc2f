"""
Phi matrices over Z_2[tau] relative to a fixed Psi: column targets, the
free/forced/slack position layout, and streaming enumeration.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

from config.settings import get_settings
from src.algebra.klein import Klein, format_klein, parse_klein
from src.errors import InvariantBreach, InvariantViolation
from .psi import PsiMatrix, reference_row

logger = logging.getLogger(__name__)

Position = Tuple[int, int]


@dataclass(frozen=True)
class PhiMatrix:
    """n x n matrix over Z_2[tau], row-major in cells."""
    n: int
    cells: Tuple[int, ...]

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence]) -> "PhiMatrix":
        """Build from Klein values or their text tokens."""
        n = len(entries)
        cells = []
        for row in entries:
            if len(row) != n:
                raise ValueError(f"phi must be {n}x{n}")
            for value in row:
                cells.append(int(parse_klein(value)) if isinstance(value, str) else int(Klein(value)))
        return cls(n=n, cells=tuple(cells))

    def entry(self, i: int, j: int) -> int:
        return self.cells[i * self.n + j]

    def column(self, j: int) -> List[int]:
        return [self.cells[i * self.n + j] for i in range(self.n)]

    def column_sum(self, j: int) -> int:
        total = 0
        for i in range(self.n):
            total ^= self.cells[i * self.n + j]
        return total

    def to_lists(self) -> List[List[str]]:
        n = self.n
        return [[format_klein(self.cells[i * n + j]) for j in range(n)] for i in range(n)]

    @property
    def key(self) -> int:
        """Row-major, 2 bits per entry, entry (1,1) most significant."""
        value = 0
        for cell in self.cells:
            value = (value << 2) | cell
        return value


def column_signed_sum(psi: PsiMatrix, j: int) -> int:
    """s_j = sum_{i<j} (-1)^(i-1) psi_ij - sum_{i>j} (-1)^(i-1) psi_ij (1-based i)."""
    total = 0
    for i in range(psi.n):
        if i == j or not psi.entry(i, j):
            continue
        sign = -1 if i % 2 else 1
        total += sign if i < j else -sign
    return total


def column_target(psi: PsiMatrix, j: int) -> int:
    """T_j(Psi) = ((s_j / 2) mod 2) * tau."""
    s = column_signed_sum(psi, j)
    if s % 2:
        raise InvariantBreach(f"odd signed column sum {s} in column {j + 1}")
    return Klein.TAU if (s // 2) % 2 else Klein.ZERO


def first_one_row(psi: PsiMatrix, j: int) -> Optional[int]:
    """k_j: smallest row with psi_ij = 1, if any."""
    for i in range(psi.n):
        if psi.entry(i, j):
            return i
    return None


def slack_position(n: int, j: int) -> Position:
    """phi_nj for j < n, phi_{n-1,n} for the last column."""
    return (n - 1, j) if j < n - 1 else (n - 2, n - 1)


def forced_zero_positions(psi: PsiMatrix) -> List[Position]:
    positions = []
    for j in range(psi.n):
        positions.append((reference_row(j), j))
        k = first_one_row(psi, j)
        if k is not None:
            positions.append((k, j))
    return positions


def free_positions(n: int, psi: PsiMatrix) -> List[Position]:
    """
    Off-diagonal positions that are neither forced to zero nor a column's slack, row-major.

    Raises:
        ValueError: if n is not the size of psi
    """
    if n != psi.n:
        raise ValueError(f"dimension {n} does not match a {psi.n}x{psi.n} psi")
    return list(_layout_for(psi).free)


class PhiLayout:
    """
    Position layout of the Phi space for one Psi.

    A Phi matrix is determined by its free entries: forced entries are zero,
    the diagonal is 1 and each slack entry completes its column sum. The
    free-coordinate code packs free entries row-major with the first one
    most significant, so codes order exactly like PhiMatrix.key.
    """

    def __init__(self, psi: PsiMatrix):
        n = psi.n
        self.psi = psi
        self.n = n
        self.targets = tuple(column_target(psi, j) for j in range(n))
        self.forced = frozenset(forced_zero_positions(psi))
        self.slack = tuple(slack_position(n, j) for j in range(n))
        collisions = self.forced.intersection(self.slack)
        if collisions:
            raise InvariantBreach(f"slack entries collide with forced zeros at {sorted(collisions)}")
        taken = self.forced | set(self.slack)
        self.free: Tuple[Position, ...] = tuple(
            (i, j) for i in range(n) for j in range(n)
            if i != j and (i, j) not in taken
        )
        self.shifts = tuple(2 * (len(self.free) - 1 - idx) for idx in range(len(self.free)))

    @property
    def bits(self) -> int:
        return 2 * len(self.free)

    @property
    def count(self) -> int:
        return 4 ** len(self.free)

    def decode(self, code: int) -> PhiMatrix:
        n = self.n
        cells = [0] * (n * n)
        for i in range(n):
            cells[i * n + i] = Klein.ONE
        for (i, j), shift in zip(self.free, self.shifts):
            cells[i * n + j] = (code >> shift) & 3
        self._solve_slack(cells)
        return PhiMatrix(n=n, cells=tuple(cells))

    def encode(self, phi: PhiMatrix) -> int:
        code = 0
        for i, j in self.free:
            code = (code << 2) | phi.entry(i, j)
        return code

    def _solve_slack(self, cells: List[int]) -> None:
        n = self.n
        for j, (si, sj) in enumerate(self.slack):
            total = self.targets[j]
            for i in range(n):
                if i != si:
                    total ^= cells[i * n + j]
            cells[si * n + sj] = total

    def repair(self, cells: List[int]) -> None:
        """
        Normalization 3: rewrite the last row so every column sums to its target.

        The last row is the one fixed by the relation f_n = f_1 ... f_{n-1},
        so in the last column the change lands on phi_nn and normalization 4
        turns it back into 1 with delta. phi_{n-1,n} is a slack entry of the
        enumeration only.

        Raises:
            InvariantViolation: if phi_nn would have to be 0 or tau
        """
        n = self.n
        last = n - 1
        for j in range(n):
            total = self.targets[j]
            for i in range(last):
                total ^= cells[i * n + j]
            if j == last and total not in (Klein.ONE, Klein.ONE_TAU):
                raise InvariantViolation(
                    f"phi column {n} must sum to {format_klein(self.targets[j])}",
                    f"phi_{n}{n} would be {format_klein(total)}",
                )
            cells[last * n + j] = total


@lru_cache(maxsize=256)
def _layout_for(psi: PsiMatrix) -> PhiLayout:
    return PhiLayout(psi)


def layout_for(psi: PsiMatrix) -> PhiLayout:
    return _layout_for(psi)


def phi_violations(phi: PhiMatrix, psi: PsiMatrix) -> List[str]:
    """Names of the Phi invariants (relative to psi) that fail, in a fixed order."""
    n = phi.n
    problems = []
    if any(phi.entry(i, i) != Klein.ONE for i in range(n)):
        problems.append("diagonal must be 1")
    if any(phi.entry(0, j) for j in range(1, n)) or (n > 1 and phi.entry(1, 0)):
        problems.append("phi first row and phi_21 must be 0")
    for j in range(n):
        k = first_one_row(psi, j)
        if k is not None and phi.entry(k, j):
            problems.append(f"phi_{k + 1}{j + 1} must be 0 (first 1 of psi column {j + 1})")
            break
    for j in range(n):
        if phi.column_sum(j) != column_target(psi, j):
            problems.append(f"phi column {j + 1} must sum to {format_klein(column_target(psi, j))}")
            break
    return problems


def enumerate_phi(n: int, psi: PsiMatrix) -> Iterator[PhiMatrix]:
    """
    Stream every admissible Phi for psi in ascending key order.

    Every matrix is re-verified when debug checks are on, otherwise every
    verify_stride-th one.
    """
    settings = get_settings()
    layout = layout_for(psi)
    stride = 1 if settings.debug_checks else settings.verify_stride
    logger.debug(f"Enumerating {layout.count} Phi matrices ({len(layout.free)} free positions)")
    for code in range(layout.count):
        phi = layout.decode(code)
        if code % stride == 0:
            problems = phi_violations(phi, psi)
            if problems:
                raise InvariantBreach(f"enumerated Phi violates: {problems[0]}")
        yield phi
