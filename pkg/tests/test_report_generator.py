"""
Tests for report generator.

This module contains tests for the table, grid, CSV and JSON renderers.
"""

import json
import os
from unittest.mock import mock_open, patch

import pytest
from rich.table import Table

from src.errors import InvalidArgumentError
from src.locus import (
    census_grid,
    component_census,
    component_pairs,
    disjoint_count,
    disjoint_group_inventory,
)
from src.report_generator import ReportGenerator
from src.stable_count import JClass
from src.verifier import CheckResult, VerificationReport

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")


class TestReportGenerator:
    """Tests for ReportGenerator class."""

    def setup_method(self):
        """Set up test fixtures."""
        self.report_generator = ReportGenerator()

    @patch("builtins.open", new_callable=mock_open, read_data="Test template {N}")
    def test_load_template(self, mock_file):
        """Templates are read from the template directory."""
        generator = ReportGenerator(template_dir="mock_templates")
        assert generator.load_template("census_table") == "Test template {N}"
        mock_file.assert_called_once_with(
            os.path.join("mock_templates", "census_table.txt"), "r", encoding="utf-8"
        )

    def test_missing_template(self):
        """A missing template raises FileNotFoundError."""
        generator = ReportGenerator(template_dir="nonexistent")
        with pytest.raises(FileNotFoundError):
            generator.render_table(component_census(JClass.GENERIC, 3))

    @pytest.mark.parametrize("N", [2, 3, 4, 5])
    @pytest.mark.parametrize("j", list(JClass))
    def test_table_matches_golden(self, N, j):
        """Table output is byte-identical to the golden files."""
        path = os.path.join(GOLDEN_DIR, f"census_N{N}_{j.value}.txt")
        with open(path, "r", encoding="utf-8") as file:
            expected = file.read()
        assert self.report_generator.render(component_census(j, N + 1)) == expected

    def test_csv(self):
        """CSV has a header and one row per nonzero record."""
        report = component_census(JClass.GENERIC, 3)
        assert self.report_generator.render(report, "csv") == (
            "dimension,count,group_order\n1,1,2\n"
        )
        report = component_census(JClass.J0, 6)
        lines = self.report_generator.render_csv(report).splitlines()
        assert lines[1:] == ["4,1,2", "3,1,3", "2,3,4", "0,48,6"]

    def test_json(self):
        """JSON carries the schema version and round-trips."""
        report = component_census(JClass.J0, 6)
        text = self.report_generator.render(report, "json")
        document = json.loads(text)
        assert list(document) == ["schema", "n", "N", "j", "components", "total"]
        assert document["schema"] == 1
        assert document["total"] == 53
        assert document["j"] == "0"
        points = document["components"][-1]
        assert points["fiber_dim"] is None
        assert points["base"] is None
        assert ReportGenerator.parse_json(text) == report

    def test_json_rejects_unknown_schema(self):
        """Only schema 1 is understood."""
        with pytest.raises(InvalidArgumentError):
            ReportGenerator.parse_json('{"schema": 2}')

    def test_unknown_format(self):
        """Unknown formats are rejected."""
        with pytest.raises(InvalidArgumentError):
            self.report_generator.render(component_census(JClass.GENERIC, 3), "xml")

    def test_grid(self):
        """The grid puts the three j-classes side by side."""
        text = self.report_generator.render_grid(census_grid(3))
        assert text == (
            "Number of components for low dimension, N = 3 (n = 4)\n"
            "Dimension of component | generic | j = 0 | j = 1728\n"
            "0 | 6 | 6 | 14\n"
            "1 | 0 | 1 | 0\n"
            "2 | 1 | 1 | 1\n"
            "Total number | 7 | 8 | 15\n"
        )

    def test_grid_needs_all_classes(self):
        """A partial grid is rejected."""
        grid = census_grid(3)
        del grid[JClass.J0]
        with pytest.raises(InvalidArgumentError):
            self.report_generator.render_grid(grid)

    def test_inventory(self):
        """The count comes first, then one line per ell."""
        text = self.report_generator.render_inventory(
            disjoint_count(JClass.J0, 6), disjoint_group_inventory(JClass.J0, 6)
        )
        lines = text.splitlines()
        assert lines[0] == "48"
        assert lines[3] == "ell=6 |H|=1 psi=1 groups_per_H=36 total=36"

    def test_pairs(self):
        """Pairs list their subgroup and bundle data."""
        text = self.report_generator.render_pairs(component_pairs(JClass.J0, 4))
        assert text.splitlines() == [
            "dimension=2 ell=2 |H|=1 H=(0,0) (0,0) fiber=P^1 base=E/H",
            "dimension=1 ell=3 |H|=1 H=(0,0) (0,0) fiber=P^0 base=E/H = E",
        ]

    def test_verification_table(self):
        """One row per check."""
        report = VerificationReport(
            results=[
                CheckResult(name="a", passed=True, cases=3),
                CheckResult(name="b", passed=False, cases=0, detail="boom"),
            ]
        )
        table = ReportGenerator.verification_table(report)
        assert isinstance(table, Table)
        assert table.row_count == 2
