from .config import BenchConfig, ConfigError, FileItem, load_config, parse_config
from .report import CSV_HEADER, ReportError, read_rows, write_report
from .runner import BenchError, ReportRow, mean_scores, run_benchmark

__all__ = [
    "BenchConfig", "BenchError", "CSV_HEADER", "ConfigError", "FileItem", "ReportError",
    "ReportRow", "load_config", "mean_scores", "parse_config", "read_rows",
    "run_benchmark", "write_report",
]
