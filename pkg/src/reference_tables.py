"""
Reference table module for GaloisCensus.

This module loads the shipped reference values (the low-dimension census table
and a table of psi values) from a sectioned text file and exposes them for the
verification sweep.
"""

import logging
import os
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from src.config import REFERENCE_FILE
from src.errors import InvalidArgumentError
from src.stable_count import JClass

# Set up logging
logger = logging.getLogger("galoiscensus")

CENSUS_SECTION = re.compile(r"^CENSUS_N(\d+)$")
PSI_SECTION = re.compile(r"^PSI_ELL(\d+)$")
ROW_PATTERN = re.compile(r"^(\w+)\s*:\s*(.+)$")

# Column order of the census rows
CENSUS_COLUMNS = (JClass.GENERIC, JClass.J0, JClass.J1728)


@dataclass
class CensusColumn:
    """One column of the reference census: counts per dimension and the total."""

    counts: Dict[int, int] = field(default_factory=dict)
    total: Optional[int] = None


class ReferenceTables:
    """
    Reference values loaded from a sectioned text file.

    Attributes:
        census (Dict): N -> j-class -> CensusColumn
        psi_values (Dict): ell -> m -> psi value
        descriptions (Dict): section name -> description line
    """

    def __init__(self):
        """Initialize an empty set of tables."""
        self.census: Dict[int, Dict[JClass, CensusColumn]] = {}
        self.psi_values: Dict[int, Dict[int, int]] = {}
        self.descriptions: Dict[str, Optional[str]] = {}

    @classmethod
    def load(cls, file_path: str = REFERENCE_FILE) -> "ReferenceTables":
        """
        Load reference tables from a file

        Args:
            file_path: Path to the reference file

        Returns:
            ReferenceTables: The parsed tables

        Raises:
            FileNotFoundError: If the file does not exist
            InvalidArgumentError: If the file format is invalid
        """
        if not os.path.exists(file_path):
            raise FileNotFoundError(f"Reference file not found: {file_path}")

        with open(file_path, "r", encoding="utf-8") as file:
            content = file.read()

        tables = cls()
        tables.parse(content, source=file_path)
        logger.debug(
            f"Loaded {len(tables.census)} census tables and "
            f"{len(tables.psi_values)} psi tables from {file_path}"
        )
        return tables

    def parse(self, content: str, source: str = "<string>") -> None:
        """
        Parse reference content into this instance

        Args:
            content: File content
            source: Name used in error messages
        """
        current_section = None

        for number, raw in enumerate(content.splitlines(), start=1):
            line = raw.strip()

            # Skip empty lines and comments
            if not line or line.startswith("#"):
                continue

            section_match = re.match(r"^\[(.*)\]$", line)
            if section_match:
                current_section = section_match.group(1)
                self.descriptions[current_section] = None
                self._open_section(current_section, source, number)
                continue

            if line.startswith("description:"):
                if current_section is None:
                    raise self._error(source, number, "description outside a section")
                self.descriptions[current_section] = line[len("description:") :].strip()
                continue

            if line == "rows:":
                continue

            if line.startswith("- "):
                if current_section is None:
                    raise self._error(source, number, "row outside a section")
                self._parse_row(current_section, line[2:].strip(), source, number)
                continue

            raise self._error(source, number, f"unrecognized line {line!r}")

    def _open_section(self, section: str, source: str, number: int) -> None:
        census_match = CENSUS_SECTION.match(section)
        psi_match = PSI_SECTION.match(section)
        if census_match:
            self.census[int(census_match.group(1))] = {
                j: CensusColumn() for j in CENSUS_COLUMNS
            }
        elif psi_match:
            self.psi_values[int(psi_match.group(1))] = {}
        else:
            raise self._error(source, number, f"unknown section [{section}]")

    def _parse_row(self, section: str, row: str, source: str, number: int) -> None:
        row_match = ROW_PATTERN.match(row)
        if not row_match:
            raise self._error(source, number, f"malformed row {row!r}")
        key, values = row_match.group(1), row_match.group(2)

        try:
            numbers = [int(v.strip()) for v in values.split(",")]
        except ValueError:
            raise self._error(source, number, f"non-integer value in {row!r}")

        census_match = CENSUS_SECTION.match(section)
        if census_match:
            if len(numbers) != len(CENSUS_COLUMNS):
                raise self._error(
                    source, number, f"expected {len(CENSUS_COLUMNS)} values in {row!r}"
                )
            columns = self.census[int(census_match.group(1))]
            for j, value in zip(CENSUS_COLUMNS, numbers):
                if key == "total":
                    columns[j].total = value
                elif key.isdigit():
                    columns[j].counts[int(key)] = value
                else:
                    raise self._error(source, number, f"bad dimension {key!r}")
            return

        if len(numbers) != 1 or not key.isdigit():
            raise self._error(source, number, f"malformed psi row {row!r}")
        ell = int(PSI_SECTION.match(section).group(1))
        self.psi_values[ell][int(key)] = numbers[0]

    @staticmethod
    def _error(source: str, number: int, message: str) -> InvalidArgumentError:
        return InvalidArgumentError(f"{source}:{number}: {message}")

    def census_rows(self, N: int, j: JClass) -> List[Tuple[int, int]]:  # noqa: N803
        """
        Reference (dimension, count) rows for one column

        Raises:
            InvalidArgumentError: If N has no reference table
        """
        if N not in self.census:
            raise InvalidArgumentError(f"No reference census for N = {N}")
        return sorted(self.census[N][j].counts.items())

    def census_total(self, N: int, j: JClass) -> Optional[int]:  # noqa: N803
        if N not in self.census:
            raise InvalidArgumentError(f"No reference census for N = {N}")
        return self.census[N][j].total

    def psi_entries(self) -> List[Tuple[int, int, int]]:
        """All (ell, m, psi) reference entries in ascending order."""
        return [
            (ell, m, value)
            for ell in sorted(self.psi_values)
            for m, value in sorted(self.psi_values[ell].items())
        ]
