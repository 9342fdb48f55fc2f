"""
Reading and writing pair files.
"""

import json
import logging
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from src.algebra.codes import Code
from src.equivalence.pairs import Pair
from src.errors import DimensionMismatch, InvariantViolation, PairParseError
from src.matrices.phi import PhiMatrix
from src.matrices.psi import PsiMatrix
from .models import PairFile

logger = logging.getLogger(__name__)


def load_pair_file(path: Union[str, Path]) -> PairFile:
    """
    Load and schema-check a pair file.

    Raises:
        PairParseError: unreadable file, invalid JSON or wrong field types
    """
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise PairParseError(f"cannot read {path}: {e}")
    try:
        return PairFile.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise PairParseError(f"{path} is not valid JSON: {e}")
    except ValidationError as e:
        raise PairParseError(f"{path} does not match the pair schema: {e.errors()[0]['msg']}")


def pair_from_file(data: PairFile) -> Pair:
    """
    Build a Pair from parsed file data without normalizing it.

    Raises:
        DimensionMismatch: when W, Psi and Phi disagree on n
        PairParseError: malformed words or Klein tokens
        InvariantViolation: generators that do not form an admissible W
    """
    n = data.n
    if len(data.psi) != n or any(len(row) != n for row in data.psi):
        raise DimensionMismatch(f"psi must be {n}x{n}")
    if len(data.phi) != n or any(len(row) != n for row in data.phi):
        raise DimensionMismatch(f"phi must be {n}x{n}")
    if any(len(word) != n for word in data.w_generators):
        raise DimensionMismatch(f"W generators must have length {n}")

    try:
        code = Code.from_strings(data.w_generators, n=n)
        psi = PsiMatrix.from_lists(data.psi)
    except ValueError as e:
        raise PairParseError(str(e))
    phi = PhiMatrix.from_lists(data.phi)

    if any(bin(word).count("1") == 1 for word in code.codewords):
        raise InvariantViolation("W must not contain a standard generator", str(code))
    return Pair(code=code, psi=psi, phi=phi)


def pair_to_file(pair: Pair) -> PairFile:
    return PairFile(
        n=pair.n,
        w_generators=pair.code.generator_strings(),
        psi=pair.psi.to_lists(),
        phi=pair.phi.to_lists(),
    )
