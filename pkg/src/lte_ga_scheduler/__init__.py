"""
lte-ga-scheduler
---

Adaptive genetic algorithm downlink scheduler for a single OFDMA cell.

Example:
```python
from lte_ga_scheduler import log
from lte_ga_scheduler.harness import load_config, run_scenario

log.configure(log.default_processors)
run = run_scenario(load_config(preset="mixed_gbr"))
print(run.summary.satisfaction)
```
"""
# this is because pycharm wigs out when there is a module called `exceptions`:
# noinspection PyCompatibility
from . import (
    baselines,
    exceptions,
    fitness,
    ga,
    harness,
    log,
    lte,
    metrics,
    ml,
    settings,
)

__all__ = [
    "baselines",
    "exceptions",
    "fitness",
    "ga",
    "harness",
    "log",
    "lte",
    "metrics",
    "ml",
    "settings",
]


__version__ = "0.1.0"
