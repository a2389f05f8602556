# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

from .conversion import try_enum
from .logging import init_logging
from .report import ReportBase

__all__ = (
    "init_logging",
    "ReportBase",
    "try_enum",
)
