"""
A small benchmark sweep
=======================

Ten seeds on the empty 8x8 map at three object densities.  Records and a
CSV summary land in a temporary directory.
"""

import tempfile
from pathlib import Path

from pamo.bench import BenchSuite, emit_report, run_suite

maps = Path(__file__).resolve().parent.parent / "data" / "maps"
out = Path(tempfile.mkdtemp())

suite = BenchSuite(
    maps=[str(maps / "empty-8-8.map")],
    fractions=[0.1, 0.2, 0.3],
    seeds=list(range(10)),
    mode="rc",
    start=(0, 0),
    goal=(7, 7),
    time_limit=5,
    output=str(out),
)
records = run_suite(suite)

summary, table = emit_report(records)
print(summary)
print(table)
print("written to", out)
