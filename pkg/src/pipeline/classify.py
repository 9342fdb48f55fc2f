"""
The classification driver: W classes, Psi orbits, one cell per
(W class, Psi orbit representative), torsion-free filtering and the oracle
cross-check, merged into a ClassificationReport.
"""

import logging
import random
from dataclasses import dataclass
from multiprocessing import Pool
from typing import List, Optional, Sequence, Tuple

from tqdm import tqdm

from config.settings import get_settings
from src.algebra.codes import (
    Code, canonical_code, check_code, enumerate_sub_classes, free_columns, orbit_size, stabilizer,
)
from src.algebra.permutations import Permutation
from src.equivalence.cell import CellClassifier, CellResult
from src.errors import InvariantBreach, UsageFailure
from src.matrices.phi import layout_for
from src.matrices.psi import PsiMatrix, enumerate_psi, psi_orbits
from src.storage.models import ClassificationReport, ClassRow, SubClassEntry, SubReport
from src.torsion.oracle import oracle_is_manifold
from .reference import compare_with_published, label_psi_orbits, load_published_table

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CellPlan:
    """One unit of work"""
    code: Code
    psi: PsiMatrix
    psi_id: str
    stabilizer_w: int
    s_psi: Tuple[Permutation, ...]


@dataclass
class CellOutcome:
    plan: CellPlan
    result: CellResult
    oracle_checked: int
    oracle_agreed: int


def check_dimension(n: int) -> None:
    """
    Raises:
        UsageFailure: for even n, n < 3, or n above the configured maximum
    """
    if n < 3 or n % 2 == 0:
        raise UsageFailure(f"dimension must be odd and at least 3, got {n}")
    limit = get_settings().max_classify_dim
    if n > limit:
        raise UsageFailure(
            f"a full classification in dimension {n} is infeasible (limit {limit}); "
            f"run bound7 for the dimension-7 lower bound"
        )


def parse_w_option(generators: Sequence[str], n: int) -> Code:
    """
    Canonical code from a --w generator list.

    Raises:
        UsageFailure: malformed words or an inadmissible W
    """
    try:
        code = Code.from_strings(list(generators), n=n)
    except ValueError as e:
        raise UsageFailure(f"bad --w generators {list(generators)}: {e}")
    valid, diagnostic = check_code(n, code.codewords)
    if not valid:
        raise UsageFailure(f"bad --w generators {list(generators)}: {diagnostic}")
    return canonical_code(code)


def plan_cells(n: int, codes: Optional[Sequence[Code]] = None) -> List[CellPlan]:
    """Cells sorted by (W codewords, Psi key)."""
    classes = list(codes) if codes is not None else enumerate_sub_classes(n)
    plans = []
    for code in sorted(classes, key=lambda c: c.codewords):
        s_w = stabilizer(code)
        orbits = psi_orbits(enumerate_psi(n, code), s_w)
        labels = label_psi_orbits(code, orbits)
        logger.info(f"W={code}: |S(W)|={len(s_w)}, {len(orbits)} Psi orbits")
        for orbit, label in zip(orbits, labels):
            plans.append(CellPlan(
                code=code,
                psi=orbit.representative,
                psi_id=label,
                stabilizer_w=len(s_w),
                s_psi=orbit.stabilizer,
            ))
    return plans


def _oracle_targets(plan: CellPlan, result: CellResult) -> List[int]:
    sample = get_settings().oracle_sample
    if not sample or sample >= len(result.orbit_codes):
        return result.orbit_codes
    rng = random.Random(f"{get_settings().seed}:{plan.code.codewords}:{plan.psi.key}")
    return sorted(rng.sample(result.orbit_codes, sample))


def run_cell(plan: CellPlan) -> CellOutcome:
    """
    Classify one cell and check its orbit representatives against the oracle.

    Raises:
        InvariantBreach: on any disagreement between the oracle and the
            orbit-level torsion-free verdict
    """
    classifier = CellClassifier(plan.code, plan.psi, plan.s_psi)
    result = classifier.classify()
    manifolds = set(result.manifold_codes)
    checked = agreed = 0
    for free_code in _oracle_targets(plan, result):
        pair = classifier.pair(free_code)
        checked += 1
        if oracle_is_manifold(pair) != (free_code in manifolds):
            raise InvariantBreach(
                f"oracle disagrees with the torsion-free filter for W={plan.code}, "
                f"Psi {plan.psi_id}, Phi {pair.phi.to_lists()}"
            )
        agreed += 1
    return CellOutcome(plan=plan, result=result, oracle_checked=checked, oracle_agreed=agreed)


def _row(outcome: CellOutcome, with_pairs: bool) -> ClassRow:
    plan, result = outcome.plan, outcome.result
    pairs = None
    if with_pairs:
        layout = layout_for(plan.psi)
        pairs = [layout.decode(code).to_lists() for code in result.manifold_codes]
    return ClassRow(
        w_generators=plan.code.generator_strings(),
        psi_id=plan.psi_id,
        psi=plan.psi.to_lists(),
        count=len(result.manifold_codes),
        stabilizer_w=plan.stabilizer_w,
        stabilizer_psi=len(plan.s_psi),
        free_positions=result.free_count,
        phi_space=result.phi_count,
        pair_orbits=result.orbit_count,
        tf_orbit_constant=result.tf_orbit_constant,
        oracle_checked=outcome.oracle_checked,
        oracle_agreed=outcome.oracle_agreed,
        pairs=pairs,
    )


def classify(
    n: int,
    codes: Optional[Sequence[Code]] = None,
    jobs: Optional[int] = None,
    with_pairs: bool = False,
) -> ClassificationReport:
    """
    Count manifold classes per (W class, Psi orbit).

    Args:
        n: odd dimension, 3 <= n <= max_classify_dim
        codes: restrict to these canonical W (default: all of Sub(n))
        jobs: worker processes (default: settings.jobs)
        with_pairs: list the canonical Phi of every manifold class

    Returns:
        Report with rows sorted by (W codewords, Psi key); identical for any
        number of workers
    """
    check_dimension(n)
    jobs = jobs or get_settings().jobs
    plans = plan_cells(n, codes)
    logger.info(f"Classifying dimension {n}: {len(plans)} cells on {jobs} worker(s)")

    progress = dict(total=len(plans), desc=f"classify n={n}", unit="cell", leave=False)
    if jobs > 1 and len(plans) > 1:
        with Pool(min(jobs, len(plans))) as pool:
            outcomes = list(tqdm(pool.imap(run_cell, plans), **progress))
    else:
        outcomes = [run_cell(plan) for plan in tqdm(plans, **progress)]

    outcomes.sort(key=lambda o: (o.plan.code.codewords, o.plan.psi.key))
    rows = [_row(outcome, with_pairs) for outcome in outcomes]
    report = ClassificationReport(n=n, rows=rows, total=sum(row.count for row in rows))

    if codes is None and n == load_published_table().n:
        report.published = compare_with_published(report)
    logger.info(f"Dimension {n}: {report.total} manifold classes")
    return report


def sub_report(n: int) -> SubReport:
    """Sub(n) with orders, stabilizer orders and free columns (1-based)."""
    if n < 1:
        raise UsageFailure(f"dimension must be positive, got {n}")
    entries = []
    for code in enumerate_sub_classes(n):
        entries.append(SubClassEntry(
            w_generators=code.generator_strings(),
            dimension=code.dimension,
            order=len(code.codewords),
            stabilizer_order=len(stabilizer(code)),
            orbit_size=orbit_size(code),
            free_columns=sorted(k + 1 for k in free_columns(code)),
        ))
    return SubReport(n=n, classes=entries)
