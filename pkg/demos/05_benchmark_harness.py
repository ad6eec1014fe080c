"""
Seeded benchmark sweeps
=======================

One JSON config describes circuits x topologies x algorithms x seeds.
The harness runs every cell, writes a raw per-run CSV plus a summary
with improvement over the graph-partitioning baseline, and skips
infeasible pairs instead of aborting.
"""
import json
import tempfile
from pathlib import Path

from dqsched.bench import ExperimentConfig, run_experiment, summarize, write_report

cfg = ExperimentConfig.from_json(json.dumps({
    "circuits": [
        {"qubits": 8, "depth": 10, "seed": 0},
        {"qubits": 8, "depth": 20, "seed": 1},
    ],
    "topologies": ["grid:2x2", "star:4", "grid:1x2"],  # last one is too small
    "capacity": 2,
    "algorithms": ["seq", "randseq", "gp", "sa", "ea"],
    "seeds": [0, 1, 2],
    "sa": {"max_iterations": 20000, "initial_temp": 1.0, "cooling_rate": 0.9995},
    "ea": {"population_size": 50, "generations": 100},
}))

reports = run_experiment(cfg)
done = [r for r in reports if not r.skipped]
skipped = [r for r in reports if r.skipped]
print(f"{len(done)} runs, {len(skipped)} infeasible pairs skipped\n")

print(f"{'circuit':10} {'topology':9} {'alg':8} {'mean':>7} {'min':>6} {'vs gp':>7}")
for row in summarize(reports):
    imp = row["improvement_vs_gp"]
    imp_s = "" if imp is None else f"{imp:+.1%}"
    print(
        f"{row['circuit']:10} {row['topology']:9} {row['algorithm']:8}"
        f" {row['mean_cost']:7.1f} {row['min_cost']:6g} {imp_s:>7}"
    )

with tempfile.TemporaryDirectory() as tmp:
    write_report(reports, tmp)
    print("\nfiles written:", sorted(p.name for p in Path(tmp).iterdir()))
