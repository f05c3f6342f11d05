"""Testing support: settings patching and brute-force oracles."""
from .modify_settings import modify_settings
from .oracle import all_patterns, best_combined_pattern, best_throughput_pattern

__all__ = (
    "all_patterns",
    "best_combined_pattern",
    "best_throughput_pattern",
    "modify_settings",
)
