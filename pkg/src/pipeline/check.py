"""
Validation and canonical form of a single pair file.
"""

import logging
from pathlib import Path
from typing import Optional, Union

from src.algebra.klein import Klein
from src.equivalence.orbits import class_canonical_form, class_cell
from src.equivalence.pairs import Pair, normalize, pair_violations
from src.errors import InvariantViolation, UsageFailure
from src.storage.models import CheckReport, PairFile
from src.storage.pairfile import load_pair_file, pair_from_file, pair_to_file
from src.torsion.condition import failing_subset
from src.torsion.oracle import oracle_is_manifold

logger = logging.getLogger(__name__)


def _validated(path: Union[str, Path]) -> Pair:
    """
    Parse a pair file and check what normalization cannot repair.

    Raises:
        PairParseError, DimensionMismatch, InvariantViolation
    """
    pair = pair_from_file(load_pair_file(path))
    n = pair.n
    if n < 3 or n % 2 == 0:
        raise InvariantViolation("n must be odd and at least 3", f"n={n}")
    for i in range(n):
        if pair.psi.entry(i, i):
            raise InvariantViolation("psi diagonal must be 0", f"psi_{i + 1}{i + 1}")
    for j in range(n):
        if sum(pair.psi.column(j)) % 2:
            raise InvariantViolation(f"psi column {j + 1} must have even sum")
    for i in range(n):
        if pair.phi.entry(i, i) not in (Klein.ONE, Klein.ONE_TAU):
            raise InvariantViolation("diagonal must be 1", f"phi_{i + 1}{i + 1}")
    return pair


def _normalized(pair: Pair) -> Pair:
    normalized = normalize(pair)
    problems = pair_violations(normalized)
    if problems:
        raise InvariantViolation(problems[0])
    return normalized


def run_check(path: Union[str, Path]) -> CheckReport:
    """
    Validate a pair file, normalize it and compare the torsion-free verdict
    of its class with the structure-theorem oracle.

    The class verdict needs the whole cell and is skipped (None) for cells
    above max_cell_bits.
    """
    pair = _validated(path)
    normalized = _normalized(pair)
    subset = failing_subset(normalized)
    oracle = oracle_is_manifold(normalized)

    canonical: Optional[PairFile] = None
    manifold: Optional[bool] = None
    try:
        moved, classifier = class_cell(normalized)
        result = classifier.classify()
        label = classifier.canonical_code(moved.phi)
        canonical = pair_to_file(classifier.pair(label))
        manifold = label in set(result.manifold_codes)
    except UsageFailure as e:
        logger.warning(f"Class verdict skipped: {e}")

    agreement = None if manifold is None else manifold == oracle
    if agreement is False:
        logger.error(f"Oracle and torsion-free filter disagree on {path}")
    return CheckReport(
        path=str(path),
        n=pair.n,
        w_generators=pair.code.generator_strings(),
        structurally_valid=True,
        input_normalized=normalized == pair,
        normalized=pair_to_file(normalized),
        canonical=canonical,
        torsion_free=subset is None,
        failing_subset=None if subset is None else [i + 1 for i in subset],
        class_is_manifold=manifold,
        oracle_is_manifold=oracle,
        agreement=agreement,
    )


def run_canon(path: Union[str, Path]) -> PairFile:
    """Canonical form of the class of the pair in a file."""
    return pair_to_file(class_canonical_form(_normalized(_validated(path))))
