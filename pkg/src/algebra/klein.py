"""
Exact arithmetic for the Klein four-group Z_2[tau] and the 4-torsion
coordinate group (Z_4)^2 used by the structure-theorem oracle.

A Klein element is a 2-bit value: bit 0 means "contains 1", bit 1 means
"contains tau". Addition is XOR; gamma and delta are bit permutations
conditioned on the other bit. The helpers below work on plain ints and on
numpy integer arrays alike.
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import Dict

from src.errors import PairParseError


class Klein(IntEnum):
    """Element of Z_2[tau] = {0, 1, tau, 1+tau}"""
    ZERO = 0
    ONE = 1
    TAU = 2
    ONE_TAU = 3

    def __str__(self) -> str:
        return KLEIN_TOKENS[self]


KLEIN_TOKENS: Dict[int, str] = {
    Klein.ZERO: "0",
    Klein.ONE: "1",
    Klein.TAU: "t",
    Klein.ONE_TAU: "1+t",
}

_TOKEN_VALUES = {token: Klein(value) for value, token in KLEIN_TOKENS.items()}


def klein_add(a: int, b: int) -> Klein:
    """Group law of Z_2[tau]; ZERO is the identity and every element is self-inverse."""
    return Klein(a ^ b)


def gamma(a):
    """Swap tau and 1+tau, fix 0 and 1."""
    return a ^ (a >> 1)


def delta(a):
    """Swap 1 and 1+tau, fix 0 and tau."""
    return a ^ ((a & 1) << 1)


def parse_klein(token: str) -> Klein:
    """
    Parse the text encoding of a Klein element.

    Args:
        token: one of "0", "1", "t", "1+t" (case-sensitive)

    Returns:
        The Klein element

    Raises:
        PairParseError: for any other token
    """
    try:
        return _TOKEN_VALUES[token]
    except (KeyError, TypeError):
        raise PairParseError(f"malformed Klein token {token!r} (expected one of 0, 1, t, 1+t)")


def format_klein(value: int) -> str:
    """Text encoding of a Klein element"""
    return KLEIN_TOKENS[value]


@dataclass(frozen=True)
class E4Point:
    """
    4-torsion point of one elliptic curve in the basis where the diagonal
    2-torsion point is (2,0), t_j is (0,2) and its square root y_j is (0,1).
    """
    a: int = 0
    b: int = 0

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % 4)
        object.__setattr__(self, "b", self.b % 4)

    def __add__(self, other: "E4Point") -> "E4Point":
        return E4Point(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "E4Point") -> "E4Point":
        return E4Point(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "E4Point":
        return E4Point(-self.a, -self.b)

    def scale(self, k: int) -> "E4Point":
        return E4Point(k * self.a, k * self.b)

    @property
    def is_two_torsion(self) -> bool:
        return self.a % 2 == 0 and self.b % 2 == 0

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


ORIGIN = E4Point(0, 0)
DIAGONAL_POINT = E4Point(2, 0)
T_POINT = E4Point(0, 2)
Y_POINT = E4Point(0, 1)

TWO_TORSION = frozenset({ORIGIN, DIAGONAL_POINT, T_POINT, E4Point(2, 2)})


def kappa_inv(a: int) -> E4Point:
    """
    Inverse of the identification of 2-torsion points with Z_2[tau]:
    1 -> (2,0), tau -> (0,2), 1+tau -> (2,2), 0 -> (0,0).
    """
    return E4Point(2 * (a & 1), 2 * ((a >> 1) & 1))
