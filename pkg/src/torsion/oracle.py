"""
Structure-theorem oracle.

Builds the 4-torsion coordinates x_i^j of a pair and checks the three
conditions of the structure theorem directly, with no reference to orbits
or to the torsion-free filter.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

from src.algebra.codes import Code
from src.algebra.klein import E4Point, ORIGIN, T_POINT, Y_POINT, kappa_inv
from src.equivalence.pairs import Pair
from src.errors import InvariantBreach
from .condition import odd_proper_subsets, psi_I_j

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PointTable:
    """x[i][j] = x_i^j; t[j] = t_j; w_points[m][j] = j-th coordinate of the m-th codeword."""
    n: int
    x: Tuple[Tuple[E4Point, ...], ...]
    t: Tuple[E4Point, ...]
    w_points: Tuple[Tuple[E4Point, ...], ...]


def build_points(pair: Pair) -> PointTable:
    """x_i^j = kappa^-1(phi_ij) + psi_ij * y_j."""
    n = pair.n
    x = tuple(
        tuple(kappa_inv(pair.phi.entry(i, j)) + Y_POINT.scale(pair.psi.entry(i, j)) for j in range(n))
        for i in range(n)
    )
    w_points = tuple(
        tuple(T_POINT if (word >> j) & 1 else ORIGIN for j in range(n))
        for word in pair.code.codewords
    )
    return PointTable(n=n, x=x, t=(T_POINT,) * n, w_points=w_points)


def signed_sum(pt: PointTable, subset: Sequence[int], j: int) -> E4Point:
    """
    x_I^j: alternating sum over the rows of I in column j.

    For j = i_p the terms up to and including p keep the sign (-1)^(k-1)
    and the terms after p are negated; for j outside I it is the plain
    alternating sum.
    """
    ordered = sorted(subset)
    position = ordered.index(j) if j in ordered else len(ordered)
    total = ORIGIN
    for k, row in enumerate(ordered):
        term = pt.x[row][j] if k % 2 == 0 else -pt.x[row][j]
        total = total + term if k <= position else total - term
    return total


def difference_word(pt: PointTable, i: int, j: int) -> int:
    """
    Word with coordinate k set when 2(x_i^k - x_j^k) = t_k, for k outside
    {i, j}; -1 when some doubled difference is not in {0, t_k}.
    """
    word = 0
    for k in range(pt.n):
        if k in (i, j):
            continue
        doubled = (pt.x[i][k] - pt.x[j][k]).scale(2)
        if doubled == pt.t[k]:
            word |= 1 << k
        elif doubled != ORIGIN:
            return -1
    return word


def condition_differences(pt: PointTable, code: Code) -> bool:
    for i in range(pt.n):
        for j in range(i + 1, pt.n):
            word = difference_word(pt, i, j)
            if word < 0 or word not in code:
                logger.debug(f"Difference word of rows {i + 1},{j + 1} is not in W")
                return False
    return True


def _cross_check(pair: Pair, subset: Sequence[int], j: int, value: E4Point) -> None:
    psi_value = psi_I_j(pair.psi, subset, j)
    klein_total = 0
    for i in subset:
        klein_total ^= pair.phi.entry(i, j)
    expected = kappa_inv(klein_total) + Y_POINT.scale(psi_value)
    if value != expected:
        raise InvariantBreach(
            f"signed sum {value} disagrees with {expected} for I={[i + 1 for i in subset]}, j={j + 1}"
        )


def condition_fixed_points(pt: PointTable) -> bool:
    """No proper odd I and w in W with x_I^j = w_j for every j in I."""
    for subset in odd_proper_subsets(pt.n):
        sums = [signed_sum(pt, subset, j) for j in subset]
        for w in pt.w_points:
            if all(value == w[j] for j, value in zip(subset, sums)):
                logger.debug(f"Fixed point for I={[i + 1 for i in subset]}")
                return False
    return True


def condition_last_row(pt: PointTable) -> bool:
    """x_n^j equals the signed sum over rows 1..n-1, for every j."""
    head = range(pt.n - 1)
    return all(pt.x[pt.n - 1][j] == signed_sum(pt, head, j) for j in range(pt.n))


def oracle_conditions(pt: PointTable, code: Code) -> bool:
    return (
        condition_differences(pt, code)
        and condition_fixed_points(pt)
        and condition_last_row(pt)
    )


def cross_check_sums(pt: PointTable, pair: Pair) -> None:
    """
    Compare every x_I^j with kappa^-1 of the Klein column sum plus
    psi_Ij * y_j.

    Raises:
        InvariantBreach: on the first disagreement
    """
    for subset in odd_proper_subsets(pt.n):
        for j in subset:
            _cross_check(pair, subset, j, signed_sum(pt, subset, j))


def oracle_is_manifold(pair: Pair) -> bool:
    pt = build_points(pair)
    cross_check_sums(pt, pair)
    return oracle_conditions(pt, pair.code)
