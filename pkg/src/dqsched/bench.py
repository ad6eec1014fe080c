"""
Experiment runner: random or file-based circuits x topologies x algorithms
x seeds, with raw per-run CSV and per-cell summary output.

Config is a single JSON document:

{
  "circuits": [{"qubits": 8, "depth": 30, "seed": 0} | {"file": "c.txt"}, ...],
  "topologies": ["grid:2x2", "star:4", "file:net.txt"],
  "capacity": 2,
  "algorithms": ["sa", "ea", "gp", "seq", "randseq", "qco"],
  "seeds": [0, 1, 2, 3, 4],
  "p_cx": 0.5,
  "sa": {...SaParams overrides...},
  "ea": {...EaParams overrides...},
  "qco": {...QcoParams overrides...}
}
"""
from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from .annealing import SaParams, anneal
from .baselines import gp_schedule, random_sequential_schedule, sequential_schedule
from .circuit import Circuit, layerize, parse_circuit, random_circuit
from .cost import CostBreakdown, CostEvaluator, Schedule
from .ea import EaParams, evolve
from .network import NetworkTopology, build_grid, build_star, parse_topology
from .qco import CommunicationFreeError, QcoParams, qco_evolve

ALGORITHMS = ("sa", "ea", "gp", "seq", "randseq", "qco")

RAW_CSV_HEADER = "circuit,topology,algorithm,seed,a,b,c,total,fidelity,wall_ms"


class ConfigError(ValueError):
    """Malformed experiment configuration."""


def parse_topology_spec(spec: str, capacity: int = 2) -> NetworkTopology:
    """grid:RxC | star:N | file:PATH (or a bare path to a topology file)."""
    if spec.startswith("grid:"):
        try:
            r, c = (int(v) for v in spec[5:].lower().split("x"))
        except ValueError:
            raise ConfigError(f"bad grid spec {spec!r}") from None
        return build_grid(r, c, capacity)
    if spec.startswith("star:"):
        try:
            n = int(spec[5:])
        except ValueError:
            raise ConfigError(f"bad star spec {spec!r}") from None
        return build_star(n, capacity)
    path = Path(spec[5:] if spec.startswith("file:") else spec)
    if not path.exists():
        raise ConfigError(f"unknown topology spec {spec!r}")
    return parse_topology(path.read_text(), default_capacity=capacity)


@dataclass(frozen=True)
class ExperimentConfig:
    circuits: list[dict]
    topologies: list[str]
    capacity: int = 2
    algorithms: tuple[str, ...] = ("sa", "ea", "gp", "seq", "randseq")
    seeds: tuple[int, ...] = (0, 1, 2, 3, 4)
    p_cx: float = 0.5
    sa: dict = field(default_factory=dict)
    ea: dict = field(default_factory=dict)
    qco: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.seeds:
            raise ConfigError("seeds must be non-empty")
        for alg in self.algorithms:
            if alg not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {alg!r}")

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from exc
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        for key in ("algorithms", "seeds"):
            if key in doc:
                doc[key] = tuple(doc[key])
        if "circuits" not in doc or "topologies" not in doc:
            raise ConfigError("config requires circuits and topologies")
        return cls(**doc)


@dataclass(frozen=True)
class RunReport:
    circuit: str
    topology: str
    algorithm: str
    seed: int
    breakdown: CostBreakdown
    fidelity: float | None = None
    wall_ms: float = 0.0
    schedule: Schedule | None = None
    skipped: bool = False
    note: str = ""

    def csv_row(self) -> str:
        fid = "" if self.fidelity is None else f"{self.fidelity:.10f}"
        a, b, c, total = self.breakdown
        return (
            f"{self.circuit},{self.topology},{self.algorithm},{self.seed},"
            f"{a:g},{b:g},{c:g},{total:g},{fid},{self.wall_ms:.1f}"
        )


def _load_circuits(cfg: ExperimentConfig) -> list[tuple[str, Circuit]]:
    out = []
    for entry in cfg.circuits:
        if "file" in entry:
            path = Path(entry["file"])
            out.append((path.stem, parse_circuit(path.read_text())))
        else:
            q, d = entry["qubits"], entry["depth"]
            s = entry.get("seed", 0)
            p_cx = entry.get("p_cx", cfg.p_cx)
            out.append((f"q{q}d{d}s{s}", random_circuit(q, d, s, p_cx)))
    return out


def run_experiment(cfg: ExperimentConfig) -> list[RunReport]:
    """One report per (circuit, topology, algorithm, seed); infeasible pairs
    are reported with skipped=True rather than aborting the sweep."""
    reports: list[RunReport] = []
    nets = [(spec, parse_topology_spec(spec, cfg.capacity)) for spec in cfg.topologies]
    for circ_id, circ in _load_circuits(cfg):
        lc = layerize(circ)
        for spec, net in nets:
            if net.total_capacity < circ.num_qubits:
                reports.append(
                    RunReport(
                        circ_id, spec, "-", -1,
                        CostBreakdown(0, 0, 0, 0),
                        skipped=True,
                        note=f"infeasible: capacity {net.total_capacity} "
                             f"< {circ.num_qubits} qubits",
                    )
                )
                continue
            ev = CostEvaluator(lc, net)
            for alg in cfg.algorithms:
                for seed in cfg.seeds:
                    t0 = time.perf_counter()
                    fid = None
                    if alg == "sa":
                        sched, bd, _ = anneal(lc, net, SaParams(seed=seed, **cfg.sa))
                    elif alg == "ea":
                        sched, bd, _ = evolve(lc, net, EaParams(seed=seed, **cfg.ea))
                    elif alg == "gp":
                        sched = gp_schedule(circ, lc, net, seed)
                        bd = ev.breakdown(sched.rows)
                    elif alg == "seq":
                        sched = sequential_schedule(lc, net)
                        bd = ev.breakdown(sched.rows)
                    elif alg == "randseq":
                        sched = random_sequential_schedule(lc, net, seed)
                        bd = ev.breakdown(sched.rows)
                    else:  # qco
                        try:
                            _, fit, rep = qco_evolve(
                                circ, net, QcoParams(seed=seed, **cfg.qco)
                            )
                        except CommunicationFreeError as exc:
                            reports.append(
                                RunReport(
                                    circ_id, spec, alg, seed,
                                    CostBreakdown(0, 0, 0, 0),
                                    skipped=True, note=str(exc),
                                )
                            )
                            continue
                        sched = rep.schedule
                        bd = CostBreakdown(0, 0, 0, rep.u_optimized)
                        fid = rep.fidelity
                    ms = (time.perf_counter() - t0) * 1000.0
                    reports.append(
                        RunReport(circ_id, spec, alg, seed, bd, fid, ms, sched)
                    )
    reports.sort(key=lambda r: (r.circuit, r.topology, r.algorithm, r.seed))
    return reports


def raw_csv(reports: list[RunReport]) -> str:
    lines = [RAW_CSV_HEADER]
    lines += [r.csv_row() for r in reports if not r.skipped]
    return "\n".join(lines) + "\n"


def summarize(reports: list[RunReport]) -> list[dict]:
    """Per (circuit, topology, algorithm): mean/min/max total cost and
    improvement over the same cell's GP mean."""
    cells: dict[tuple[str, str, str], list[float]] = {}
    for r in reports:
        if r.skipped:
            continue
        cells.setdefault((r.circuit, r.topology, r.algorithm), []).append(
            r.breakdown.total
        )
    gp_means = {
        (c, t): sum(v) / len(v)
        for (c, t, alg), v in cells.items()
        if alg == "gp"
    }
    rows = []
    for (c, t, alg), totals in sorted(cells.items()):
        mean = sum(totals) / len(totals)
        gp = gp_means.get((c, t))
        improvement = None if not gp else (gp - mean) / gp
        rows.append(
            {
                "circuit": c,
                "topology": t,
                "algorithm": alg,
                "runs": len(totals),
                "mean_cost": mean,
                "min_cost": min(totals),
                "max_cost": max(totals),
                "improvement_vs_gp": improvement,
            }
        )
    return rows


def summary_csv(rows: list[dict]) -> str:
    header = "circuit,topology,algorithm,runs,mean_cost,min_cost,max_cost,improvement_vs_gp"
    lines = [header]
    for r in rows:
        imp = "" if r["improvement_vs_gp"] is None else f"{r['improvement_vs_gp']:.4f}"
        lines.append(
            f"{r['circuit']},{r['topology']},{r['algorithm']},{r['runs']},"
            f"{r['mean_cost']:g},{r['min_cost']:g},{r['max_cost']:g},{imp}"
        )
    return "\n".join(lines) + "\n"


def write_report(reports: list[RunReport], outdir: str | Path, fmt: str = "csv") -> None:
    """Raw per-run CSV plus a summary in csv or json form."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "raw.csv").write_text(raw_csv(reports))
    rows = summarize(reports)
    if fmt == "json":
        (out / "summary.json").write_text(json.dumps(rows, indent=2) + "\n")
    else:
        (out / "summary.csv").write_text(summary_csv(rows))
    skipped = [r for r in reports if r.skipped]
    if skipped:
        (out / "skipped.txt").write_text(
            "\n".join(f"{r.circuit},{r.topology}: {r.note}" for r in skipped) + "\n"
        )
