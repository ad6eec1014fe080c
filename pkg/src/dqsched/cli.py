"""
Command-line entry points.

  dqsched gen-circuit --qubits N --depth D --seed S -o FILE
  dqsched schedule --alg {sa|ea|gp|seq|randseq} --circuit FILE --topology SPEC --seed S -o DIR
  dqsched qco --circuit FILE --topology SPEC --seed S -o DIR
  dqsched bench --config FILE -o DIR
  dqsched verify --schedule FILE --circuit FILE --topology SPEC

Exit codes: 0 success, 1 config/usage error, 2 infeasible-only run.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import annealing, ea
from .annealing import SaParams, anneal
from .baselines import gp_schedule, random_sequential_schedule, sequential_schedule
from .bench import ExperimentConfig, parse_topology_spec, run_experiment, write_report
from .circuit import CircuitError, layerize, parse_circuit, random_circuit, serialize_circuit
from .cost import Schedule, ScheduleError, cost
from .ea import EaParams, evolve
from .network import TopologyError
from .qco import CommunicationFreeError, QcoParams, qco_evolve


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dqsched")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-circuit", help="generate a random circuit file")
    gen.add_argument("--qubits", type=int, required=True)
    gen.add_argument("--depth", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--p-cx", type=float, default=0.5)
    gen.add_argument("-o", "--output", required=True)

    sched = sub.add_parser("schedule", help="compute a qubit->QPU schedule")
    sched.add_argument("--alg", choices=("sa", "ea", "gp", "seq", "randseq"),
                       required=True)
    sched.add_argument("--circuit", required=True)
    sched.add_argument("--topology", required=True,
                       help="grid:RxC | star:N | file:PATH")
    sched.add_argument("--capacity", type=int, default=2)
    sched.add_argument("--seed", type=int, default=0)
    sched.add_argument("--params", help="JSON file with algorithm parameters")
    sched.add_argument("-o", "--outdir", required=True)

    qco = sub.add_parser("qco", help="evolve a cheaper equivalent circuit")
    qco.add_argument("--circuit", required=True)
    qco.add_argument("--topology", required=True)
    qco.add_argument("--capacity", type=int, default=2)
    qco.add_argument("--seed", type=int, default=0)
    qco.add_argument("--params", help="JSON file with QCO parameters")
    qco.add_argument("-o", "--outdir", required=True)

    bench = sub.add_parser("bench", help="run an experiment config")
    bench.add_argument("--config", required=True)
    bench.add_argument("--format", choices=("csv", "json"), default="csv")
    bench.add_argument("-o", "--outdir", required=True)

    verify = sub.add_parser("verify", help="recompute a schedule's cost")
    verify.add_argument("--schedule", required=True)
    verify.add_argument("--circuit", required=True)
    verify.add_argument("--topology", required=True)
    verify.add_argument("--capacity", type=int, default=2)
    return parser


def _load_params(path: str | None) -> dict:
    if not path:
        return {}
    return json.loads(Path(path).read_text())


def _cmd_gen_circuit(args) -> int:
    circ = random_circuit(args.qubits, args.depth, args.seed, args.p_cx)
    Path(args.output).write_text(serialize_circuit(circ))
    print(f"wrote {args.output} ({len(circ.gates)} gates, depth {args.depth})")
    return 0


def _cmd_schedule(args) -> int:
    circ = parse_circuit(Path(args.circuit).read_text())
    lc = layerize(circ)
    net = parse_topology_spec(args.topology, args.capacity)
    if net.total_capacity < circ.num_qubits:
        print("infeasible: network capacity cannot hold the circuit", file=sys.stderr)
        return 2
    params = _load_params(args.params)
    trace_text = None
    if args.alg == "sa":
        sched, bd, trace = anneal(lc, net, SaParams(seed=args.seed, **params))
        trace_text = annealing.trace_csv(trace)
    elif args.alg == "ea":
        sched, bd, trace = evolve(lc, net, EaParams(seed=args.seed, **params))
        trace_text = ea.trace_csv(trace)
    elif args.alg == "gp":
        sched = gp_schedule(circ, lc, net, args.seed)
        bd = cost(sched, lc, net)
    elif args.alg == "seq":
        sched = sequential_schedule(lc, net)
        bd = cost(sched, lc, net)
    else:
        sched = random_sequential_schedule(lc, net, args.seed)
        bd = cost(sched, lc, net)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "schedule.csv").write_text(sched.to_csv())
    (out / "cost.json").write_text(
        json.dumps({"a": bd.a, "b": bd.b, "c": bd.c, "total": bd.total}, indent=2)
        + "\n"
    )
    if trace_text is not None:
        (out / "trace.csv").write_text(trace_text)
    print(f"{args.alg}: total cost {bd.total:g} (A={bd.a:g} B={bd.b:g} C={bd.c:g})")
    return 0


def _cmd_qco(args) -> int:
    circ = parse_circuit(Path(args.circuit).read_text())
    net = parse_topology_spec(args.topology, args.capacity)
    params = _load_params(args.params)
    try:
        best, fit, report = qco_evolve(circ, net, QcoParams(seed=args.seed, **params))
    except CommunicationFreeError as exc:
        print(f"nothing to optimize: {exc}", file=sys.stderr)
        return 2
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "optimized.txt").write_text(serialize_circuit(best))
    (out / "report.json").write_text(report.to_json() + "\n")
    if report.schedule is not None:
        (out / "schedule.csv").write_text(report.schedule.to_csv())
    status = "ok" if report.success else "failed (no feasible individual)"
    print(
        f"qco {status}: fitness {fit:.4f}, fidelity {report.fidelity:.6f}, "
        f"u {report.u_original:g} -> {report.u_optimized:g}"
    )
    return 0


def _cmd_bench(args) -> int:
    cfg = ExperimentConfig.from_json(Path(args.config).read_text())
    reports = run_experiment(cfg)
    write_report(reports, args.outdir, args.format)
    done = [r for r in reports if not r.skipped]
    print(f"{len(done)} runs written to {args.outdir}")
    if not done:
        return 2
    return 0


def _cmd_verify(args) -> int:
    circ = parse_circuit(Path(args.circuit).read_text())
    lc = layerize(circ)
    net = parse_topology_spec(args.topology, args.capacity)
    sched = Schedule.from_csv(Path(args.schedule).read_text())
    bd = cost(sched, lc, net)
    print(f"total {bd.total:g} (A={bd.a:g} B={bd.b:g} C={bd.c:g})")
    return 0


_COMMANDS = {
    "gen-circuit": _cmd_gen_circuit,
    "schedule": _cmd_schedule,
    "qco": _cmd_qco,
    "bench": _cmd_bench,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (CircuitError, TopologyError, ScheduleError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
