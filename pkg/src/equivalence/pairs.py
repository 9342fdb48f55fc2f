"""
Pairs (Phi, Psi) attached to a code W, the three equivalence operations and
the normalization that follows each of them.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Sequence

from config.settings import get_settings
from src.algebra.codes import Code, free_columns, permute_code, word_to_string
from src.algebra.klein import Klein, delta, gamma
from src.algebra.permutations import Permutation, generating_subset
from src.errors import InvariantBreach, InvariantViolation, OperationRejected
from src.matrices.phi import PhiMatrix, layout_for, phi_violations
from src.matrices.psi import PsiMatrix, normalize_psi, psi_violations, relocate_psi

logger = logging.getLogger(__name__)

MAX_NORMALIZE_PASSES = 2


@dataclass(frozen=True)
class Pair:
    """A matrix pair together with the code it is attached to."""
    code: Code
    psi: PsiMatrix
    phi: PhiMatrix

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def key(self) -> int:
        """Psi bits, then Phi entries; the total order used for canonical forms."""
        return (self.psi.key << (2 * self.n * self.n)) | self.phi.key


def pair_violations(pair: Pair) -> List[str]:
    """
    Names of the failing pair invariants, Psi first.

    Phi is only checked against a Psi that is itself admissible.
    """
    problems = psi_violations(pair.psi, pair.code)
    if problems:
        return problems
    return phi_violations(pair.phi, pair.psi)


def relocate_phi(sigma: Permutation, phi: PhiMatrix) -> PhiMatrix:
    n = phi.n
    cells = [0] * (n * n)
    for i in range(n):
        for j in range(n):
            cells[sigma(i) * n + sigma(j)] = phi.cells[i * n + j]
    return PhiMatrix(n=n, cells=tuple(cells))


def _reference_rows(psi: PsiMatrix, j: int) -> List[int]:
    """For each row i: the smallest k != j with psi_kj == psi_ij."""
    first = {}
    for k in range(psi.n):
        if k != j:
            first.setdefault(psi.entry(k, j), k)
    return [first.get(psi.entry(i, j), i) for i in range(psi.n)]


def _normalize_once(pair: Pair) -> Pair:
    n = pair.n
    psi = normalize_psi(pair.psi)
    cells = list(pair.phi.cells)

    # Normalization 2, column by column with the old entries
    for j in range(n):
        refs = _reference_rows(psi, j)
        column = [cells[i * n + j] for i in range(n)]
        for i in range(n):
            if i != j:
                cells[i * n + j] = column[i] ^ column[refs[i]]

    for i in range(n):
        if cells[i * n + i] not in (Klein.ONE, Klein.ONE_TAU):
            raise InvariantViolation("diagonal must be 1", f"phi_{i + 1}{i + 1}")

    layout_for(psi).repair(cells)

    for i in range(n):
        if cells[i * n + i] == Klein.ONE_TAU:
            for k in range(n):
                cells[k * n + i] = delta(cells[k * n + i])

    return Pair(code=pair.code, psi=psi, phi=PhiMatrix(n=n, cells=tuple(cells)))


def normalize(pair: Pair) -> Pair:
    """
    Apply normalizations 1 to 4 in order until nothing changes.

    Normalization 3 rewrites the whole last row, its diagonal included, so
    a row addition that reaches the last column ends in delta on that column.

    Raises:
        InvariantViolation: if a diagonal entry of Phi is 0 or tau, or the
            last column cannot be completed
        InvariantBreach: if the fixed point needs more than two passes
    """
    current = pair
    for _ in range(MAX_NORMALIZE_PASSES + 1):
        following = _normalize_once(current)
        if following == current:
            return current
        current = following
    raise InvariantBreach(f"normalization did not settle within {MAX_NORMALIZE_PASSES} passes")


def is_normalized(pair: Pair) -> bool:
    return normalize(pair) == pair


def _checked(pair: Pair, operation: str) -> Pair:
    if get_settings().debug_checks:
        problems = pair_violations(pair)
        if problems:
            raise InvariantBreach(f"{operation} produced an invalid pair: {problems[0]}")
    return pair


def transport_pair(pair: Pair, sigma: Permutation) -> Pair:
    """Relabel coordinates by any sigma in S_n; W moves to sigma W."""
    moved = Pair(
        code=permute_code(pair.code, sigma),
        psi=relocate_psi(sigma, pair.psi),
        phi=relocate_phi(sigma, pair.phi),
    )
    return _checked(normalize(moved), "transport")


def op_permute(pair: Pair, sigma: Permutation) -> Pair:
    """
    Operation 1: relocate rows and columns of both matrices by sigma.

    Raises:
        OperationRejected: if sigma is not in S(W)
    """
    if not pair.code.is_fixed_by(sigma):
        raise OperationRejected(f"permutation {sigma.one_based()} is not in S(W) for W={pair.code}")
    moved = Pair(
        code=pair.code,
        psi=relocate_psi(sigma, pair.psi),
        phi=relocate_phi(sigma, pair.phi),
    )
    return _checked(normalize(moved), "op_permute")


def op_row_add(pair: Pair, word: int, row: int) -> Pair:
    """
    Operation 2: add tau * w to row `row` of Phi (0-based, never the last row).

    Raises:
        OperationRejected: if w is not in W or row is the last row
    """
    n = pair.n
    if word not in pair.code:
        raise OperationRejected(f"word is not in W={pair.code}")
    if not 0 <= row < n - 1:
        raise OperationRejected(f"row {row + 1} is out of range (the last row is excluded)")
    cells = list(pair.phi.cells)
    for k in range(n):
        if (word >> k) & 1:
            cells[row * n + k] ^= Klein.TAU
    added = Pair(code=pair.code, psi=pair.psi, phi=PhiMatrix(n=n, cells=tuple(cells)))
    return _checked(normalize(added), "op_row_add")


def op_gamma_col(pair: Pair, column: int) -> Pair:
    """
    Operation 3: swap tau and 1+tau in one column of Phi.

    Raises:
        OperationRejected: if the column lies in the support of W
    """
    if column not in free_columns(pair.code):
        raise OperationRejected(f"column {column + 1} lies in the support of W={pair.code}")
    n = pair.n
    cells = list(pair.phi.cells)
    for i in range(n):
        cells[i * n + column] = gamma(cells[i * n + column])
    swapped = Pair(code=pair.code, psi=pair.psi, phi=PhiMatrix(n=n, cells=tuple(cells)))
    return _checked(normalize(swapped), "op_gamma_col")


@dataclass(frozen=True)
class Move:
    """One legal operation on the pairs of a fixed (W, Psi) cell."""
    name: str
    apply: Callable[[Pair], Pair]
    spanning: bool


def cell_moves(code: Code, s_psi: Sequence[Permutation]) -> List[Move]:
    """
    Every legal operation for pairs with this W and a Psi stabilized by s_psi.

    A move is spanning when it belongs to the small set that generates the
    same group: a generating subset of S(Psi), the generators of W and every
    gamma column.
    """
    n = code.n
    spanning = set(generating_subset(s_psi))
    moves: List[Move] = []
    for sigma in s_psi:
        if sigma.is_identity:
            continue
        moves.append(Move(
            name=f"permute{sigma.one_based()}",
            apply=lambda p, s=sigma: op_permute(p, s),
            spanning=sigma in spanning,
        ))
    basis = set(code.generators)
    for word in code.codewords:
        if word == 0:
            continue
        for row in range(n - 1):
            moves.append(Move(
                name=f"row_add[{word_to_string(word, n)},{row + 1}]",
                apply=lambda p, w=word, r=row: op_row_add(p, w, r),
                spanning=word in basis,
            ))
    for column in sorted(free_columns(code)):
        moves.append(Move(
            name=f"gamma_col[{column + 1}]",
            apply=lambda p, k=column: op_gamma_col(p, k),
            spanning=True,
        ))
    return moves
