import json
from pathlib import Path

import pytest

from dqsched import (
    Schedule,
    cost,
    layerize,
    parse_circuit,
    random_circuit,
    serialize_circuit,
    serialize_topology,
)
from dqsched.bench import (
    ALGORITHMS,
    RAW_CSV_HEADER,
    ConfigError,
    ExperimentConfig,
    parse_topology_spec,
    raw_csv,
    run_experiment,
    summarize,
    summary_csv,
    write_report,
)
from dqsched.cli import main
from dqsched.network import build_grid


class TestTopologySpec:
    def test_grid(self):
        net = parse_topology_spec("grid:2x3", capacity=2)
        assert net.num_nodes == 6
        assert net.capacities == (2,) * 6

    def test_star(self):
        net = parse_topology_spec("star:4", capacity=1)
        assert net.num_nodes == 4
        assert len(net.edges) == 3

    def test_file(self, tmp_path):
        p = tmp_path / "net.txt"
        p.write_text(serialize_topology(build_grid(1, 2, 3)))
        for spec in (f"file:{p}", str(p)):
            net = parse_topology_spec(spec)
            assert net.num_nodes == 2 and net.capacities == (3, 3)

    @pytest.mark.parametrize("spec", ["grid:2", "star:x", "nosuchfile.txt"])
    def test_bad_specs(self, spec):
        with pytest.raises(ConfigError):
            parse_topology_spec(spec)


class TestConfig:
    def test_minimal(self):
        cfg = ExperimentConfig.from_json(
            '{"circuits": [{"qubits": 4, "depth": 3}], "topologies": ["grid:1x2"]}'
        )
        assert cfg.seeds == (0, 1, 2, 3, 4)
        assert "qco" not in cfg.algorithms

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json(
                '{"circuits": [], "topologies": [], "typo": 1}'
            )

    def test_unknown_algorithm_rejected(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json(
                '{"circuits": [], "topologies": [], "algorithms": ["magic"]}'
            )

    def test_empty_seeds_rejected(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json(
                '{"circuits": [], "topologies": [], "seeds": []}'
            )

    def test_invalid_json(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json("{not json")

    def test_missing_required(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json('{"topologies": []}')


def _tiny_cfg(**kw):
    doc = {
        "circuits": [{"qubits": 4, "depth": 3, "seed": 0}],
        "topologies": ["grid:1x2"],
        "algorithms": ["seq", "randseq", "gp"],
        "seeds": [0, 1],
    }
    doc.update(kw)
    return ExperimentConfig.from_json(json.dumps(doc))


class TestRunExperiment:
    def test_report_count(self):
        reports = run_experiment(_tiny_cfg())
        assert len(reports) == 3 * 2  # 3 algorithms x 2 seeds

    def test_seq_identical_across_seeds(self):
        reports = run_experiment(_tiny_cfg(algorithms=["seq"]))
        totals = {r.breakdown.total for r in reports}
        assert len(totals) == 1

    def test_baseline_components(self):
        for r in run_experiment(_tiny_cfg()):
            assert r.breakdown.b == 0 and r.breakdown.c == 0

    def test_costs_reverifiable(self):
        cfg = _tiny_cfg(
            algorithms=["seq", "gp", "sa"],
            sa={"max_iterations": 500},
        )
        reports = run_experiment(cfg)
        circ = random_circuit(4, 3, seed=0)
        lc = layerize(circ)
        net = parse_topology_spec("grid:1x2", 2)
        for r in reports:
            assert cost(r.schedule, lc, net) == r.breakdown

    def test_infeasible_pair_skipped(self):
        cfg = _tiny_cfg(
            circuits=[{"qubits": 8, "depth": 2, "seed": 0}],
            topologies=["grid:1x2", "grid:2x2"],
        )
        reports = run_experiment(cfg)
        skipped = [r for r in reports if r.skipped]
        done = [r for r in reports if not r.skipped]
        assert len(skipped) == 1 and "infeasible" in skipped[0].note
        assert all(r.topology == "grid:2x2" for r in done)

    def test_deterministic_raw_csv(self):
        cfg = _tiny_cfg(algorithms=["gp", "randseq"])
        csv1 = raw_csv(run_experiment(cfg))
        csv2 = raw_csv(run_experiment(cfg))
        strip = lambda text: [
            line.rsplit(",", 1)[0] for line in text.splitlines()
        ]  # wall_ms varies run to run
        assert strip(csv1) == strip(csv2)

    def test_sorted_by_cell_key(self):
        reports = run_experiment(_tiny_cfg())
        keys = [(r.circuit, r.topology, r.algorithm, r.seed) for r in reports]
        assert keys == sorted(keys)

    def test_circuit_from_file(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text(serialize_circuit(random_circuit(4, 2, seed=1)))
        cfg = _tiny_cfg(circuits=[{"file": str(p)}], algorithms=["seq"])
        reports = run_experiment(cfg)
        assert all(r.circuit == "c" for r in reports)

    def test_empty_circuits(self):
        assert run_experiment(_tiny_cfg(circuits=[])) == []


class TestReporting:
    def test_raw_csv_header_and_shape(self):
        text = raw_csv(run_experiment(_tiny_cfg()))
        lines = text.splitlines()
        assert lines[0] == RAW_CSV_HEADER
        assert all(len(l.split(",")) == 10 for l in lines[1:])

    def test_summary_improvement_vs_gp(self):
        rows = summarize(run_experiment(_tiny_cfg()))
        by_alg = {r["algorithm"]: r for r in rows}
        assert by_alg["gp"]["improvement_vs_gp"] == pytest.approx(0.0)
        # seq cost >= gp cost, so its improvement is <= 0
        assert by_alg["seq"]["improvement_vs_gp"] <= 0.0

    def test_summary_min_le_mean_le_max(self):
        for r in summarize(run_experiment(_tiny_cfg())):
            assert r["min_cost"] <= r["mean_cost"] <= r["max_cost"]

    def test_write_report_csv(self, tmp_path):
        write_report(run_experiment(_tiny_cfg()), tmp_path)
        assert (tmp_path / "raw.csv").exists()
        assert (tmp_path / "summary.csv").exists()
        header = (tmp_path / "summary.csv").read_text().splitlines()[0]
        assert header.startswith("circuit,topology,algorithm,runs,mean_cost")

    def test_write_report_json(self, tmp_path):
        write_report(run_experiment(_tiny_cfg()), tmp_path, fmt="json")
        rows = json.loads((tmp_path / "summary.json").read_text())
        assert isinstance(rows, list) and rows

    def test_skipped_file(self, tmp_path):
        cfg = _tiny_cfg(circuits=[{"qubits": 8, "depth": 2}])
        write_report(run_experiment(cfg), tmp_path)
        assert "infeasible" in (tmp_path / "skipped.txt").read_text()

    def test_summary_csv_round_shape(self):
        text = summary_csv(summarize(run_experiment(_tiny_cfg())))
        lines = text.splitlines()
        assert all(len(l.split(",")) == 8 for l in lines)


@pytest.fixture
def circuit_file(tmp_path):
    p = tmp_path / "circ.txt"
    p.write_text(serialize_circuit(random_circuit(4, 3, seed=0)))
    return p


class TestCli:
    def test_gen_circuit_round_trip(self, tmp_path, capsys):
        out = tmp_path / "c.txt"
        rc = main(
            ["gen-circuit", "--qubits", "4", "--depth", "3", "--seed", "1",
             "-o", str(out)]
        )
        assert rc == 0
        circ = parse_circuit(out.read_text())
        assert circ == random_circuit(4, 3, seed=1)

    @pytest.mark.parametrize("alg", ["gp", "seq", "randseq"])
    def test_schedule_outputs(self, alg, circuit_file, tmp_path, capsys):
        outdir = tmp_path / "out"
        rc = main(
            ["schedule", "--alg", alg, "--circuit", str(circuit_file),
             "--topology", "grid:1x2", "-o", str(outdir)]
        )
        assert rc == 0
        sched = Schedule.from_csv((outdir / "schedule.csv").read_text())
        doc = json.loads((outdir / "cost.json").read_text())
        circ = parse_circuit(circuit_file.read_text())
        lc = layerize(circ)
        net = parse_topology_spec("grid:1x2", 2)
        bd = cost(sched, lc, net)
        assert doc["total"] == bd.total
        assert not (outdir / "trace.csv").exists()

    def test_schedule_sa_writes_trace(self, circuit_file, tmp_path, capsys):
        outdir = tmp_path / "out"
        params = tmp_path / "p.json"
        params.write_text('{"max_iterations": 200}')
        rc = main(
            ["schedule", "--alg", "sa", "--circuit", str(circuit_file),
             "--topology", "grid:1x2", "--params", str(params),
             "-o", str(outdir)]
        )
        assert rc == 0
        trace = (outdir / "trace.csv").read_text().splitlines()
        assert trace[0] == "iteration,current_cost,best_cost"

    def test_schedule_infeasible_exit_2(self, tmp_path, capsys):
        circ = tmp_path / "big.txt"
        circ.write_text(serialize_circuit(random_circuit(8, 2, seed=0)))
        rc = main(
            ["schedule", "--alg", "seq", "--circuit", str(circ),
             "--topology", "grid:1x2", "-o", str(tmp_path / "o")]
        )
        assert rc == 2

    def test_schedule_bad_circuit_exit_1(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("qubits 2\nfrobnicate 0\n")
        rc = main(
            ["schedule", "--alg", "seq", "--circuit", str(bad),
             "--topology", "grid:1x2", "-o", str(tmp_path / "o")]
        )
        assert rc == 1

    def test_missing_file_exit_1(self, tmp_path, capsys):
        rc = main(
            ["schedule", "--alg", "seq", "--circuit", "nope.txt",
             "--topology", "grid:1x2", "-o", str(tmp_path / "o")]
        )
        assert rc == 1

    def test_qco_outputs(self, tmp_path, capsys):
        # 4-CX ring: communication cost is unavoidably positive, so the
        # run proceeds and emits its three artifacts
        circ = tmp_path / "ring.txt"
        circ.write_text(
            "qubits 4\nsx 0\nsx 2\ncx 0 1\ncx 1 2\ncx 2 3\ncx 0 3\n"
        )
        params = tmp_path / "p.json"
        params.write_text(
            '{"population_size": 8, "generations": 4, "max_gates": 16}'
        )
        outdir = tmp_path / "q"
        rc = main(
            ["qco", "--circuit", str(circ), "--topology", "grid:2x2",
             "--params", str(params), "-o", str(outdir)]
        )
        assert rc == 0
        assert (outdir / "optimized.txt").exists()
        report = json.loads((outdir / "report.json").read_text())
        assert report["u_original"] > 0
        Schedule.from_csv((outdir / "schedule.csv").read_text())

    def test_qco_communication_free_exit_2(self, tmp_path, capsys):
        circ = tmp_path / "local.txt"
        circ.write_text("qubits 2\nsx 0\ncx 0 1\n")
        rc = main(
            ["qco", "--circuit", str(circ), "--topology", "grid:2x2",
             "-o", str(tmp_path / "q")]
        )
        assert rc == 2

    def test_bench_and_verify(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "circuits": [{"qubits": 4, "depth": 3, "seed": 0}],
            "topologies": ["grid:1x2"],
            "algorithms": ["gp", "seq"],
            "seeds": [0, 1],
        }))
        outdir = tmp_path / "bench"
        assert main(["bench", "--config", str(cfg), "-o", str(outdir)]) == 0
        raw = (outdir / "raw.csv").read_text().splitlines()
        assert raw[0] == RAW_CSV_HEADER
        assert len(raw) == 1 + 2 * 2

        # verify one schedule produced by the schedule command
        sdir = tmp_path / "sched"
        circ = tmp_path / "c.txt"
        circ.write_text(serialize_circuit(random_circuit(4, 3, seed=0)))
        main(["schedule", "--alg", "gp", "--circuit", str(circ),
              "--topology", "grid:1x2", "-o", str(sdir)])
        rc = main(["verify", "--schedule", str(sdir / "schedule.csv"),
                   "--circuit", str(circ), "--topology", "grid:1x2"])
        assert rc == 0
        out = capsys.readouterr().out
        expected = json.loads((sdir / "cost.json").read_text())["total"]
        assert f"total {expected:g}" in out

    def test_bench_infeasible_only_exit_2(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "circuits": [{"qubits": 8, "depth": 2}],
            "topologies": ["grid:1x2"],
            "algorithms": ["seq"],
        }))
        rc = main(["bench", "--config", str(cfg), "-o", str(tmp_path / "o")])
        assert rc == 2

    def test_bench_bad_config_exit_1(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"circuits": [], "topologies": [], "bogus": 1}')
        rc = main(["bench", "--config", str(cfg), "-o", str(tmp_path / "o")])
        assert rc == 1
