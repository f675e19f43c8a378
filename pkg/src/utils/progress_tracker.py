"""
Progress tracking utility for GaloisCensus.

This module tracks and displays progress of long-running verification sweeps.
Progress is drawn on stderr so stdout stays reserved for data.
"""

from typing import Optional

from rich.console import Console
from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    TextColumn,
    TimeRemainingColumn,
)


class ProgressTracker:
    """
    Progress tracker class

    Tracks progress of an operation and renders a rich progress bar.
    """

    def __init__(
        self,
        total_items: int,
        description: str = "Processing",
        console: Optional[Console] = None,
        enabled: bool = True,
    ):
        """
        Constructor

        Args:
            total_items: Total number of items to process
            description: Description of the operation
            console: Console to draw on (stderr by default)
            enabled: Draw nothing when False
        """
        self.total_items = total_items
        self.processed_items = 0
        self.description = description
        self._progress: Optional[Progress] = None

        if enabled:
            self._progress = Progress(
                TextColumn("{task.description}"),
                BarColumn(bar_width=30),
                MofNCompleteColumn(),
                TimeRemainingColumn(),
                console=console or Console(stderr=True),
                transient=True,
            )
            self._task = self._progress.add_task(description, total=total_items)
            self._progress.start()
            if total_items == 0:
                self.close()

    def update(self, items_processed: int = 1) -> None:
        """
        Update progress

        Args:
            items_processed: Number of items processed in this update
        """
        self.processed_items += items_processed
        if self._progress is None:
            return
        self._progress.update(self._task, advance=items_processed)
        if self.processed_items >= self.total_items:
            self.close()

    @property
    def finished(self) -> bool:
        return self.processed_items >= self.total_items

    def close(self) -> None:
        """Stop drawing; safe to call more than once."""
        if self._progress is not None:
            self._progress.stop()
            self._progress = None
