"""Report archive for logtk runs.

The archive is an SQLite database holding one row per run and one row per
report.  ``schema.sql`` defines the tables; later changes append statements
guarded by ``IF NOT EXISTS``.
"""

from . import migrate
from . import repo

__all__ = ["migrate", "repo"]
