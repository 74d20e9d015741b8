from cli.commands import build_parser, main
from cli.resolve import build_system, parse_time, resolve_method, resolve_methods, resolve_set, snap_step

__all__ = [
    "build_parser",
    "main",
    "build_system",
    "parse_time",
    "resolve_method",
    "resolve_methods",
    "resolve_set",
    "snap_step",
]
