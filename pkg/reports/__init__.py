from .report_generator import LEVEL_COLORS, ReportGenerator

__all__ = ["ReportGenerator", "LEVEL_COLORS"]
