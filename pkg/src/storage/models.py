"""
Pydantic models for everything that crosses a file or process boundary.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator


class PairFile(BaseModel):
    """Pair file: W generators, Psi as 0/1 rows, Phi as Klein tokens"""
    n: int
    w_generators: List[str] = Field(default_factory=list)
    psi: List[List[int]]
    phi: List[List[str]]


class CheckReport(BaseModel):
    """Result of validating one pair file"""
    path: str
    n: int
    w_generators: List[str]
    structurally_valid: bool
    input_normalized: bool
    normalized: PairFile
    canonical: Optional[PairFile] = None
    torsion_free: bool
    failing_subset: Optional[List[int]] = None  # 1-based
    class_is_manifold: Optional[bool] = None
    oracle_is_manifold: bool
    agreement: Optional[bool] = None


class ClassRow(BaseModel):
    """One (W class, Psi orbit) cell of a classification"""
    w_generators: List[str]
    psi_id: str
    psi: List[List[int]]
    count: int
    stabilizer_w: int
    stabilizer_psi: int
    free_positions: int
    phi_space: int
    pair_orbits: int
    tf_orbit_constant: bool
    oracle_checked: int = 0
    oracle_agreed: int = 0
    pairs: Optional[List[List[List[str]]]] = None  # canonical Phi of every manifold class


class PublishedRow(BaseModel):
    """One published row next to the computed count"""
    w_generators: List[str]
    psi_id: str
    published: int
    computed: Optional[int] = None
    match: bool = False


class PublishedComparison(BaseModel):
    """Computed dimension-5 table against the published one"""
    rows: List[PublishedRow]
    table_sum: int
    stated_total: int
    computed_total: int
    lands_on: str  # table_sum, stated_total or neither
    all_rows_match: bool


class ClassificationReport(BaseModel):
    """Manifold counts per (W class, Psi orbit)"""
    n: int
    rows: List[ClassRow]
    total: int
    published: Optional[PublishedComparison] = None

    @model_validator(mode="after")
    def total_matches_rows(self) -> "ClassificationReport":
        expected = sum(row.count for row in self.rows)
        if self.total != expected:
            raise ValueError(f"total {self.total} differs from the row sum {expected}")
        return self


class SubClassEntry(BaseModel):
    """One class of Sub(n)"""
    w_generators: List[str]
    dimension: int
    order: int
    stabilizer_order: int
    orbit_size: int
    free_columns: List[int]  # 1-based


class SubReport(BaseModel):
    """Canonical representatives of Sub(n)"""
    n: int
    classes: List[SubClassEntry]


class BoundReport(BaseModel):
    """Lower bound on the number of CHW manifolds with diagonal holonomy representation"""
    n: int
    free_positions: int
    matrix_count: int
    group_order: int
    bound: int
    excess_numerator: int
    excess_denominator: int
    exceeds: bool


class PublishedEntry(BaseModel):
    """One row of the published table"""
    w_generators: List[str]
    psi_id: str
    count: int


class PublishedTable(BaseModel):
    """config/fivefold_table.json"""
    n: int
    stated_total: int
    threefold_total: int
    named_psi: Dict[str, List[List[int]]]
    rows: List[PublishedEntry]

    @property
    def table_sum(self) -> int:
        return sum(row.count for row in self.rows)
