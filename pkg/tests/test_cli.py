import json
import math

import pytest

from aggpatch.cli import main


def run(tmp_path, *args):
    return main([*args, "--out", str(tmp_path)])


def read_json(tmp_path, name):
    return json.loads((tmp_path / name).read_text())


def write_config(tmp_path, doc):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(doc))
    return str(path)


class TestSkeletonCommand:
    def test_worked_example(self, tmp_path):
        assert run(tmp_path, "skeleton", "--set", "[[0,1],[2,3]]") == 0
        doc = read_json(tmp_path, "skeleton.json")
        assert doc["atoms"] == [{"x": 1, "mass": 1}, {"x": 2, "mass": 1}]
        assert doc["bounds"] == [1, 2]
        assert "config_hash" in doc

    def test_from_config_file(self, tmp_path):
        cfg = write_config(tmp_path, {"set": [[0, 1], [2, 3]]})
        assert run(tmp_path, "skeleton", "--config", cfg) == 0

    def test_deterministic_bytes(self, tmp_path):
        run(tmp_path, "skeleton", "--set", "[[0,1],[2,3]]")
        first = (tmp_path / "skeleton.json").read_bytes()
        run(tmp_path, "skeleton", "--set", "[[0,1],[2,3]]")
        assert (tmp_path / "skeleton.json").read_bytes() == first


class TestInverseOpenCommand:
    def test_round_trip(self, tmp_path):
        atoms = '[{"x": 1, "mass": 1}, {"x": 2, "mass": 1}]'
        assert run(tmp_path, "inverse-open", "--atoms", atoms) == 0
        doc = read_json(tmp_path, "inverse_open.json")
        assert doc["set"] == [[0, 1], [2, 3]]
        assert doc["roundtrip_atom_count"] == 2

    def test_missing_atoms_is_config_error(self, tmp_path):
        assert run(tmp_path, "inverse-open") == 2


class TestEvolveCommand:
    def test_snapshots(self, tmp_path):
        cfg = write_config(tmp_path, {"set": [[0, 1], [2, 3]], "t_grid": [0.5]})
        assert run(tmp_path, "evolve", "--config", cfg) == 0
        doc = read_json(tmp_path, "evolve.json")
        snap = doc["snapshots"][0]
        assert snap["density"] == 2
        assert snap["support"] == [[0.5, 1], [2, 2.5]]

    def test_blow_up_time_is_domain_error(self, tmp_path):
        cfg = write_config(tmp_path, {"set": [[0, 1]], "t_grid": [1.0]})
        assert run(tmp_path, "evolve", "--config", cfg) == 3

    def test_trajectory_csv(self, tmp_path):
        cfg = write_config(tmp_path, {"set": [[0, 1]], "t_grid": [0.5], "trajectories": True})
        assert run(tmp_path, "evolve", "--config", cfg) == 0
        lines = (tmp_path / "trajectories.csv").read_text().splitlines()
        assert lines[0].startswith("# config_hash=")
        assert "alpha,t,x" in lines


class TestConfigErrors:
    def test_missing_set(self, tmp_path):
        assert run(tmp_path, "skeleton") == 2

    def test_bad_inline_json(self, tmp_path):
        assert run(tmp_path, "skeleton", "--set", "[[0,1") == 2

    def test_bad_config_file(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        assert run(tmp_path, "skeleton", "--config", str(bad)) == 2

    def test_degenerate_interval_is_domain_error(self, tmp_path):
        assert run(tmp_path, "skeleton", "--set", "[[1,1]]") == 3


class TestInverseCompactCommand:
    def test_depth_two_gaps(self, tmp_path):
        assert run(tmp_path, "inverse-compact", "--depth", "2") == 0
        doc = read_json(tmp_path, "inverse_compact.json")
        assert doc["initial_set"]["hull"] == [-1, 2]
        assert len(doc["gaps"]) == 3
        velocities = [g["velocity"] for g in doc["gaps"]]
        assert velocities == pytest.approx([0.5, 0.0, -0.5], abs=1e-12)

    def test_verify_passes(self, tmp_path):
        assert run(tmp_path, "verify-pushforward", "--depth", "6", "--seed", "1") == 0
        doc = read_json(tmp_path, "verify_pushforward.json")
        assert doc["passed"] is True
        assert doc["max_fiber_value_spread"] <= 1e-10


class TestOracleCommand:
    def test_quick_run(self, tmp_path):
        cfg = write_config(tmp_path, {
            "set": [[0, 1], [2, 3]],
            "particles": 200,
            "t_final": 0.99,
            "dt": 0.01,
        })
        assert run(tmp_path, "oracle", "--config", cfg) == 0
        doc = read_json(tmp_path, "oracle.json")
        assert doc["atom_count_matches"] is True
        assert all(row["position_error"] < 0.02 for row in doc["comparison"])
        lines = (tmp_path / "oracle.csv").read_text().splitlines()
        assert "step,t,particle_id,x,v" in lines


class TestDimensionCommand:
    def test_cantor(self, tmp_path):
        cfg = write_config(tmp_path, {"cantor": {"middle": 1 / 3, "depth": 10}})
        assert run(tmp_path, "dimension", "--config", cfg) == 0
        doc = read_json(tmp_path, "dimension.json")
        assert doc["dimension"] == pytest.approx(math.log(2) / math.log(3), abs=0.02)

    def test_atoms(self, tmp_path):
        cfg = write_config(tmp_path, {"set": [[0, 1], [2, 3]]})
        assert run(tmp_path, "dimension", "--config", cfg) == 0
        doc = read_json(tmp_path, "dimension.json")
        assert doc["dimension"] < 0.6

    def test_scale_below_resolution_is_domain_error(self, tmp_path):
        cfg = write_config(tmp_path, {
            "cantor": {"middle": 1 / 3, "depth": 4},
            "eps_ladder": [3.0 ** -k for k in range(4, 9)],
        })
        assert run(tmp_path, "dimension", "--config", cfg) == 3


class TestConvergeCommand:
    def test_table(self, tmp_path):
        cfg = write_config(tmp_path, {"set": [[0, 1], [2, 3]], "k_values": [1, 2, 3]})
        assert run(tmp_path, "converge", "--config", cfg) == 0
        lines = (tmp_path / "converge.csv").read_text().splitlines()
        assert "k,t,f_id,pairing,limit,error,bound" in lines
        data = [l for l in lines if not l.startswith("#") and not l.startswith("k,")]
        assert len(data) == 3 * 4

    def test_unknown_function(self, tmp_path):
        cfg = write_config(tmp_path, {"set": [[0, 1]], "functions": ["sin"]})
        assert run(tmp_path, "converge", "--config", cfg) == 2

    def test_deterministic_bytes(self, tmp_path):
        cfg = write_config(tmp_path, {"set": [[0, 1], [2, 3]], "k_values": [1, 2]})
        run(tmp_path, "converge", "--config", cfg)
        first = (tmp_path / "converge.csv").read_bytes()
        run(tmp_path, "converge", "--config", cfg)
        assert (tmp_path / "converge.csv").read_bytes() == first


class TestPlotScript:
    def test_emitted(self, tmp_path):
        cfg = write_config(tmp_path, {"set": [[0, 1]], "k_values": [1, 2, 3]})
        assert run(tmp_path, "converge", "--config", cfg, "--emit-plot-script") == 0
        script = (tmp_path / "plot_converge.py").read_text()
        assert "matplotlib" in script
