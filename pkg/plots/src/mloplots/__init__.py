"""Publication-style charts from mlosim sweep CSV exports."""

from .charts import delay_bands, grouped_delay_bars, occupancy_bars, save_figure
from .tables import MissingColumnsError, load_table

__all__ = [
    "MissingColumnsError",
    "delay_bands",
    "grouped_delay_bars",
    "load_table",
    "occupancy_bars",
    "save_figure",
]
