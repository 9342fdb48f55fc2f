import csv
import io
import json

import pytest

from src.algebra.codes import Code, is_valid_code, span
from src.errors import UsageFailure, ValidationFailure
from src.pipeline.bound import diagonal_lower_bound, dim7_lower_bound
from src.pipeline.classify import check_dimension, classify, parse_w_option, plan_cells, sub_report
from src.pipeline.reference import compare_with_published, load_published_table
from src.pipeline.report import emit_report, emit_sub, parse_report
from src.storage.models import ClassificationReport, ClassRow

from .factories import EVEN_FIVE, code_of


def _row(generators, psi_id, count):
    return ClassRow(
        w_generators=list(generators),
        psi_id=psi_id,
        psi=[],
        count=count,
        stabilizer_w=1,
        stabilizer_psi=1,
        free_positions=0,
        phi_space=1,
        pair_orbits=1,
        tf_orbit_constant=True,
    )


def _all_codes(n):
    found = {frozenset({0})}
    frontier = list(found)
    while frontier:
        grown = []
        for words in frontier:
            for word in range(1, 1 << n):
                extended = frozenset(span(words | {word}))
                if extended not in found and is_valid_code(n, extended):
                    found.add(extended)
                    grown.append(extended)
        frontier = grown
    return found


@pytest.fixture(scope="module")
def threefold():
    return classify(3, jobs=1)


class TestDimensionChecks:
    @pytest.mark.parametrize("n", [1, 2, 4, 6])
    def test_rejects_even_and_small(self, n):
        with pytest.raises(UsageFailure):
            check_dimension(n)

    def test_points_to_the_bound_above_the_limit(self):
        with pytest.raises(UsageFailure, match="bound7"):
            check_dimension(7)

    def test_parse_w_option(self):
        assert parse_w_option(["00011"], 5) == code_of("11000")
        with pytest.raises(UsageFailure, match="standard generator"):
            parse_w_option(["11000", "01000"], 5)
        with pytest.raises(UsageFailure):
            parse_w_option(["110"], 5)


class TestThreefold:
    def test_four_classes(self, threefold):
        assert threefold.total == 4
        assert len(threefold.rows) == 4
        assert all(row.count == 1 and row.psi_id == "0" for row in threefold.rows)
        assert all(row.free_positions == 0 and row.pair_orbits == 1 for row in threefold.rows)

    def test_rows_are_sorted(self, threefold):
        keys = [Code.from_strings(row.w_generators, n=3).codewords for row in threefold.rows]
        assert keys == sorted(keys)
        assert threefold.rows[0].w_generators == []

    def test_oracle_checked_every_orbit(self, threefold):
        assert all(row.oracle_checked == row.oracle_agreed == 1 for row in threefold.rows)

    def test_no_published_comparison(self, threefold):
        assert threefold.published is None

    def test_worker_count_does_not_change_the_report(self, threefold):
        assert emit_report(classify(3, jobs=2)) == emit_report(threefold)

    def test_with_pairs(self):
        report = classify(3, jobs=1, with_pairs=True)
        assert report.rows[0].pairs == [[["1", "0", "0"], ["0", "1", "1"], ["1", "1", "1"]]]


class TestReports:
    def test_json_round_trip(self, threefold):
        assert parse_report(emit_report(threefold, "json")) == threefold

    def test_csv(self, threefold):
        rows = list(csv.reader(io.StringIO(emit_report(threefold, "csv").decode())))
        assert rows[0] == ["w_generators", "psi_id", "count"]
        assert rows[1] == ["", "0", "1"]
        assert rows[-1] == ["total", "", "4"]
        assert len(rows) == 6

    def test_text(self, threefold):
        text = emit_report(threefold, "text").decode()
        assert text.startswith("CHW manifolds of dimension 3")
        assert "<0>" in text
        assert text.rstrip().endswith("4")

    def test_parse_rejects_inconsistent_totals(self, threefold):
        data = json.loads(emit_report(threefold, "json"))
        data["total"] = 5
        with pytest.raises(ValidationFailure):
            parse_report(json.dumps(data).encode())

    def test_sub_report(self):
        report = sub_report(5)
        assert len(report.classes) == 16
        assert sum(entry.orbit_size for entry in report.classes) == len(_all_codes(5))
        assert emit_sub(report, "text").decode().startswith("Sub(5): 16 classes")


class TestPublished:
    def test_table_sums(self):
        table = load_published_table()
        assert len(table.rows) == 25
        assert table.table_sum == 8617
        assert table.stated_total == 8616

    def test_matching_report_lands_on_the_table_sum(self):
        table = load_published_table()
        rows = [_row(entry.w_generators, entry.psi_id, entry.count) for entry in table.rows]
        report = ClassificationReport(n=5, rows=rows, total=table.table_sum)
        comparison = compare_with_published(report)
        assert comparison.all_rows_match
        assert comparison.lands_on == "table_sum"

    def test_mismatch_is_reported(self):
        table = load_published_table()
        rows = [_row(entry.w_generators, entry.psi_id, entry.count) for entry in table.rows]
        rows[0] = _row([], "0", 666)
        report = ClassificationReport(n=5, rows=rows, total=table.table_sum - 1)
        comparison = compare_with_published(report)
        assert not comparison.all_rows_match
        assert comparison.lands_on == "stated_total"
        assert [row.computed for row in comparison.rows if not row.match] == [666]

    def test_plan_labels_named_psi(self):
        plans = plan_cells(5, [code_of(*EVEN_FIVE)])
        assert sorted(plan.psi_id for plan in plans) == ["0", "Psi_1", "Psi_2", "Psi_4"]
        assert all(plan.stabilizer_w == 120 for plan in plans)


class TestBound:
    def test_dimension_seven(self):
        report = dim7_lower_bound()
        assert report.free_positions == 28
        assert report.matrix_count == 2 ** 46 * 443
        assert report.group_order == 645120
        assert report.bound == 48321790784
        assert (report.excess_numerator, report.excess_denominator) == (64, 315)
        assert report.exceeds

    def test_dimension_five(self):
        report = diagonal_lower_bound(5)
        assert report.matrix_count == 4 ** 10 - 10 * 4 ** 7
        assert report.bound == 230

    @pytest.mark.parametrize("n", [1, 4])
    def test_rejects_bad_dimensions(self, n):
        with pytest.raises(UsageFailure):
            diagonal_lower_bound(n)


@pytest.mark.slow
class TestFivefold:
    def test_even_weight_block(self):
        report = classify(5, codes=[code_of(*EVEN_FIVE)], jobs=1)
        counts = {row.psi_id: row.count for row in report.rows}
        assert counts == {"0": 2, "Psi_1": 9, "Psi_2": 9, "Psi_4": 4}
        assert report.published is None

    def test_published_table(self):
        report = classify(5, jobs=2)
        mismatched = {
            (tuple(row.w_generators), row.psi_id) for row in report.published.rows if not row.match
        }
        assert mismatched <= {(("11000", "10100", "10010"), "Psi_1")}
        assert report.published.lands_on != "neither"
        assert all(row.oracle_checked == row.oracle_agreed for row in report.rows)
