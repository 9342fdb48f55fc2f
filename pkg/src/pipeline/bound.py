"""
Lower bound on the number of CHW manifolds with diagonal holonomy
representation (W = 0, Psi = 0), by counting torsion-free Phi and dividing
by the order of the group acting on them.
"""

import logging
from fractions import Fraction
from math import comb, factorial

from src.errors import UsageFailure
from src.storage.models import BoundReport

logger = logging.getLogger(__name__)


def diagonal_lower_bound(n: int) -> BoundReport:
    """
    Args:
        n: odd dimension >= 3

    Returns:
        matrix_count = 4^f - sum_{m odd, 3 <= m <= n-2} C(n, m) 4^(f-m) with
        f = n^2 - 3n free positions, group_order = n! 2^n and
        bound = floor(matrix_count / group_order)
    """
    if n < 3 or n % 2 == 0:
        raise UsageFailure(f"the bound needs an odd dimension >= 3, got {n}")

    free = n * n - 3 * n
    matrix_count = 4 ** free - sum(comb(n, m) * 4 ** (free - m) for m in range(3, n - 1, 2))
    group_order = factorial(n) * 2 ** n
    bound = matrix_count // group_order
    excess = Fraction(matrix_count, group_order) - bound
    logger.info(f"Dimension {n}: {matrix_count} matrices, group of order {group_order}")
    return BoundReport(
        n=n,
        free_positions=free,
        matrix_count=matrix_count,
        group_order=group_order,
        bound=bound,
        excess_numerator=excess.numerator,
        excess_denominator=excess.denominator,
        exceeds=excess > 0,
    )


def dim7_lower_bound() -> BoundReport:
    return diagonal_lower_bound(7)
