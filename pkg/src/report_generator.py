"""
Report generator module for GaloisCensus.

This module renders census reports as text tables (from the templates directory),
CSV and JSON, and formats subgroup listings and verification summaries.
"""

import csv
import io
import json
import logging
import os
from typing import Any, Dict, List, Optional

from rich.table import Table

from src.config import (
    CSV_HEADER,
    JSON_SCHEMA_VERSION,
    OUTPUT_FORMATS,
    TEMPLATE_DIR,
)
from src.errors import InvalidArgumentError
from src.locus import CensusReport, ComponentPair, InventoryEntry
from src.stable_count import JClass
from src.verifier import VerificationReport

# Set up logging
logger = logging.getLogger("galoiscensus")

ROW_BLOCK_START = "{for each row}"
ROW_BLOCK_END = "{end for}"


class ReportGenerator:
    """
    Report generator class

    Renders census reports and listings. Every method returns a string; writing
    it out is left to the caller.
    """

    def __init__(self, template_dir: Optional[str] = None):
        """
        Constructor

        Args:
            template_dir: Directory containing the text templates
        """
        self.template_dir = template_dir or TEMPLATE_DIR
        logger.debug(
            f"Initialized report generator with template directory: {self.template_dir}"
        )

    def load_template(self, name: str) -> str:
        """
        Load a text template

        Args:
            name: Template name without extension ('census_table' or 'census_grid')

        Returns:
            str: Template content

        Raises:
            FileNotFoundError: If the template file is not found
        """
        template_path = os.path.join(self.template_dir, f"{name}.txt")
        try:
            with open(template_path, "r", encoding="utf-8") as file:
                return file.read()
        except FileNotFoundError:
            logger.error(f"Report template not found: {template_path}")
            raise

    def render(self, report: CensusReport, output_format: str = "table") -> str:
        """
        Render a census report

        Args:
            report: Census report
            output_format: One of 'table', 'csv', 'json'

        Returns:
            str: Rendered report, newline terminated
        """
        if output_format == "table":
            return self.render_table(report)
        if output_format == "csv":
            return self.render_csv(report)
        if output_format == "json":
            return self.render_json(report)
        raise InvalidArgumentError(
            f"Unknown output format: {output_format}. Supported: {OUTPUT_FORMATS}"
        )

    @staticmethod
    def _fill(text: str, values: Dict[str, Any]) -> str:
        for key, value in values.items():
            text = text.replace(f"{{{key}}}", str(value))
        return text

    def _expand_rows(self, template: str, rows: List[Dict[str, Any]]) -> str:
        parts = template.split(ROW_BLOCK_START)
        if len(parts) != 2 or ROW_BLOCK_END not in parts[1]:
            raise InvalidArgumentError("Template has no row block")
        row_template, tail = parts[1].split(ROW_BLOCK_END, 1)
        body = "".join(self._fill(row_template, row) for row in rows)
        return parts[0] + body + tail

    def render_table(self, report: CensusReport) -> str:
        """Every dimension 0..n-2 with explicit zeros and a total footer."""
        template = self.load_template("census_table")
        rows = [
            {"dimension": d, "count": c} for d, c in report.counts_by_dimension()
        ]
        text = self._expand_rows(template, rows)
        return self._fill(
            text,
            {
                "N": report.N,
                "n": report.n,
                "j": report.j.value,
                "total": report.total_components,
            },
        )

    def render_grid(self, reports: Dict[JClass, CensusReport]) -> str:
        """
        Side-by-side census of the three j-classes for one N

        Args:
            reports: Census reports keyed by j-class, all with the same n

        Returns:
            str: Rendered grid
        """
        degrees = {r.n for r in reports.values()}
        if len(degrees) != 1 or set(reports) != set(JClass):
            raise InvalidArgumentError("A grid needs one report per j-class, same n")
        n = degrees.pop()
        template = self.load_template("census_grid")
        rows = [
            {
                "dimension": d,
                "generic": reports[JClass.GENERIC].count_for_dimension(d),
                "j0": reports[JClass.J0].count_for_dimension(d),
                "j1728": reports[JClass.J1728].count_for_dimension(d),
            }
            for d in range(n - 1)
        ]
        text = self._expand_rows(template, rows)
        return self._fill(
            text,
            {
                "N": n - 1,
                "n": n,
                "total_generic": reports[JClass.GENERIC].total_components,
                "total_j0": reports[JClass.J0].total_components,
                "total_j1728": reports[JClass.J1728].total_components,
            },
        )

    def render_csv(self, report: CensusReport) -> str:
        """Header plus one row per nonzero record, descending dimension."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for record in report.records:
            writer.writerow([record.dimension, record.count, record.group_order])
        return buffer.getvalue()

    def render_json(self, report: CensusReport) -> str:
        document = {"schema": JSON_SCHEMA_VERSION}
        document.update(report.to_dict())
        return json.dumps(document, indent=2) + "\n"

    @staticmethod
    def parse_json(text: str) -> CensusReport:
        """
        Rebuild a CensusReport from render_json output

        Raises:
            InvalidArgumentError: If the schema version is unknown
        """
        document = json.loads(text)
        if document.get("schema") != JSON_SCHEMA_VERSION:
            raise InvalidArgumentError(
                f"Unsupported schema version: {document.get('schema')!r}"
            )
        return CensusReport.from_dict(document)

    def render_inventory(self, count: int, entries: List[InventoryEntry]) -> str:
        """The disjoint count followed by one line per automorphism order."""
        lines = [str(count)]
        for entry in entries:
            lines.append(
                f"ell={entry.ell} |H|={entry.h_order} psi={entry.psi_count} "
                f"groups_per_H={entry.groups_per_h} total={entry.total}"
            )
        return "\n".join(lines) + "\n"

    def render_pairs(self, pairs: List[ComponentPair]) -> str:
        """One line per (H, <xi>) pair behind a positive-dimensional component."""
        lines = []
        for pair in pairs:
            base = "E/H = E" if pair.base_isomorphic_to_curve else "E/H"
            lines.append(
                f"dimension={pair.dimension} ell={pair.ell} "
                f"|H|={pair.subgroup.modulus} H={pair.subgroup.describe()} "
                f"fiber=P^{pair.fiber_dim} base={base}"
            )
        return "".join(line + "\n" for line in lines)

    @staticmethod
    def verification_table(report: VerificationReport) -> Table:
        """
        Verification summary as a rich table

        Args:
            report: Verification report

        Returns:
            Table: One row per check with its status and case count
        """
        table = Table(title="Verification")
        table.add_column("Check")
        table.add_column("Status")
        table.add_column("Cases", justify="right")
        table.add_column("Detail")
        for result in report.results:
            status = "[green]PASS[/green]" if result.passed else "[red]FAIL[/red]"
            table.add_row(result.name, status, str(result.cases), result.detail)
        return table
