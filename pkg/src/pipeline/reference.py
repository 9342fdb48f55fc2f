"""
Published dimension-5 counts and Psi labels, and the comparison of a
computed report against them.
"""

import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from src.algebra.codes import Code, canonical_code, canonicalizing_permutation
from src.matrices.psi import PsiMatrix, PsiOrbit, is_valid_psi, transport_psi
from src.storage.models import (
    ClassificationReport, PublishedComparison, PublishedRow, PublishedTable,
)

logger = logging.getLogger(__name__)

TABLE_PATH = Path(__file__).resolve().parents[2] / "config" / "fivefold_table.json"


@lru_cache(maxsize=1)
def load_published_table() -> PublishedTable:
    with open(TABLE_PATH) as f:
        return PublishedTable.model_validate(json.load(f))


def _canonical_key(generators: Sequence[str], n: int) -> Tuple[int, ...]:
    return canonical_code(Code.from_strings(list(generators), n=n)).codewords


def named_psi_for(code: Code) -> Dict[str, PsiMatrix]:
    """
    Published Psi matrices attached to the published block of this
    (canonical) W, transported to the canonical coordinates.
    """
    table = load_published_table()
    if code.n != table.n:
        return {}
    for row in table.rows:
        if _canonical_key(row.w_generators, table.n) != code.codewords:
            continue
        sigma = canonicalizing_permutation(Code.from_strings(row.w_generators, n=table.n))
        named = {}
        for label, entries in table.named_psi.items():
            moved = transport_psi(sigma, PsiMatrix.from_lists(entries))
            if is_valid_psi(moved, code):
                named[label] = moved
        return named
    return {}


def label_psi_orbits(code: Code, orbits: Sequence[PsiOrbit]) -> List[str]:
    """'0' for the zero Psi, 'Psi_k' for an orbit holding a published Psi_k, else 'Psi#m'."""
    named = named_psi_for(code)
    labels = []
    for index, orbit in enumerate(orbits):
        if orbit.representative.is_zero:
            labels.append("0")
            continue
        label = next((name for name, psi in named.items() if psi in orbit.members), None)
        labels.append(label or f"Psi#{index + 1}")
    return labels


def compare_with_published(report: ClassificationReport) -> PublishedComparison:
    """Row-by-row agreement with the published table plus the 8616 / table-sum flag."""
    table = load_published_table()
    computed = {
        (_canonical_key(row.w_generators, report.n), row.psi_id): row.count
        for row in report.rows
    }
    rows = []
    for entry in table.rows:
        count = computed.get((_canonical_key(entry.w_generators, table.n), entry.psi_id))
        rows.append(PublishedRow(
            w_generators=entry.w_generators,
            psi_id=entry.psi_id,
            published=entry.count,
            computed=count,
            match=count == entry.count,
        ))

    if report.total == table.table_sum:
        lands_on = "table_sum"
    elif report.total == table.stated_total:
        lands_on = "stated_total"
    else:
        lands_on = "neither"
    comparison = PublishedComparison(
        rows=rows,
        table_sum=table.table_sum,
        stated_total=table.stated_total,
        computed_total=report.total,
        lands_on=lands_on,
        all_rows_match=all(row.match for row in rows) and len(computed) == len(rows),
    )
    if not comparison.all_rows_match:
        logger.warning("Computed table differs from the published one")
    return comparison
