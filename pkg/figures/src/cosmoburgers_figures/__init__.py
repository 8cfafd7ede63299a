"""Figure rendering for cosmoburgers run outputs."""

__version__ = "0.1.0"

from .csvio import CsvFormatError, SnapshotData, read_snapshot, read_table
from .render import FigureSpec, load_spec, render, render_suite
