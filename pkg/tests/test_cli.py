import json

import jsonschema

from prefplan.cli import main

MISTAKES_SCHEMA = {
    "type": "object",
    "required": ["meta", "columns", "rows"],
    "properties": {
        "meta": {"type": "object",
                 "required": ["prefplan", "subcommand", "seed"]},
        "columns": {"type": "array", "items": {"type": "string"}},
        "rows": {"type": "array",
                 "items": {"type": "array",
                           "items": {"type": ["string", "number"]}}},
    },
}


def run(tmp_path, argv, name="out"):
    out = tmp_path / f"{name}.dat"
    code = main(argv + ["--out", str(out)])
    return code, out


class TestMistakes:
    def test_default_rows(self, tmp_path):
        code, out = run(tmp_path, ["mistakes"])
        assert code == 0
        text = out.read_text()
        assert text.startswith("# prefplan=")
        assert "0.599009900990099" in text
        assert "0.505" in text
        assert "0.55" in text

    def test_json_matches_csv_values(self, tmp_path):
        code, csv_out = run(tmp_path, ["mistakes"], "a")
        code2, json_out = run(tmp_path, ["mistakes", "--format", "json"], "b")
        assert code == code2 == 0
        doc = json.loads(json_out.read_text())
        jsonschema.validate(doc, MISTAKES_SCHEMA)
        csv_rows = [l.split(",") for l in csv_out.read_text().splitlines()[2:]]
        for csv_row, json_row in zip(csv_rows, doc["rows"]):
            for c, j in zip(csv_row[1:], json_row[1:]):
                assert float(c) == j

    def test_text_format(self, tmp_path):
        code, out = run(tmp_path, ["mistakes", "--format", "text"])
        assert code == 0
        assert "future-as-present" in out.read_text()

    def test_bad_probability_is_usage_error(self, tmp_path):
        code, _ = run(tmp_path, ["mistakes", "--p1", "1.5"])
        assert code == 2


class TestFableSweep:
    def test_unknown_preset_exits_2(self, tmp_path, capsys):
        code, _ = run(tmp_path, ["fable", "sweep", "--preset", "nope"])
        assert code == 2
        assert "unknown preset" in capsys.readouterr().err

    def test_missing_parameters_exit_2(self, tmp_path):
        code, _ = run(tmp_path, ["fable", "sweep", "--p1a", "0.5"])
        assert code == 2

    def test_meet_symmetric_depth0_rows(self, tmp_path):
        code, out = run(tmp_path, ["fable", "sweep", "--preset", "meet-symmetric",
                                   "--depth", "2", "--iters", "500", "--seed", "3"])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("# prefplan=")
        assert "subcommand=fable-sweep" in lines[0]
        assert "seed=3" in lines[0]
        assert lines[1] == "agent,depth,p_first,method,stderr,seed"
        depth0 = [l for l in lines[2:] if l.split(",")[1] == "0"
                  and l.split(",")[3] == "analytical"]
        assert len(depth0) == 2
        assert all(l.split(",")[2] == "0.55" for l in depth0)

    def test_custom_probabilities(self, tmp_path):
        code, out = run(tmp_path, ["fable", "sweep", "--p1a", "0.6", "--pma", "0.7",
                                   "--p1b", "0.4", "--pmb", "0.8", "--depth", "1",
                                   "--iters", "200"])
        assert code == 0
        assert "preset=custom" in out.read_text().splitlines()[0]

    def test_byte_reproducible(self, tmp_path):
        argv = ["fable", "sweep", "--preset", "avoid-mild", "--depth", "3",
                "--iters", "800", "--seed", "11"]
        _, a = run(tmp_path, argv, "r1")
        _, b = run(tmp_path, argv, "r2")
        assert a.read_bytes() == b.read_bytes()


class TestFableLearn:
    def test_zero_observations_exit_2(self, tmp_path):
        code, _ = run(tmp_path, ["fable", "learn", "--observations", "0"])
        assert code == 2

    def test_emits_requested_pairs(self, tmp_path):
        code, out = run(tmp_path, ["fable", "learn", "--samples", "20",
                                   "--seed", "5"])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[1] == "pair,scenario_bar1,scenario_bar2"
        assert len(lines) == 2 + 20

    def test_byte_reproducible(self, tmp_path):
        argv = ["fable", "learn", "--samples", "15", "--seed", "9"]
        _, a = run(tmp_path, argv, "r1")
        _, b = run(tmp_path, argv, "r2")
        assert a.read_bytes() == b.read_bytes()


class TestSailing:
    def test_infer_smoke_row_count(self, tmp_path):
        code, out = run(tmp_path, ["sailing", "infer", "--size", "5",
                                   "--samples", "40", "--smoke", "--seed", "2"])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[1] == "index,theta"
        assert len(lines) == 2 + 40
        assert all(float(l.split(",")[1]) > 0 for l in lines[2:])

    def test_eval_greedy_small(self, tmp_path):
        code, out = run(tmp_path, ["sailing", "eval", "--policy", "greedy",
                                   "--size", "5", "--rollouts", "500"])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[1] == "policy,size,mean_cost,stderr,n_rollouts"
        policy, size, mean_cost, stderr, n = lines[2].split(",")
        assert policy == "greedy" and size == "5" and n == "500"
        assert 10 < float(mean_cost) < 40

    def test_eval_optimal_small(self, tmp_path):
        code, out = run(tmp_path, ["sailing", "eval", "--policy", "optimal",
                                   "--size", "5", "--rollouts", "500"])
        assert code == 0
        assert float(out.read_text().splitlines()[2].split(",")[2]) > 5

    def test_table_smoke(self, tmp_path):
        code, out = run(tmp_path, ["sailing", "table", "--sizes", "5",
                                   "--rollouts", "300", "--samples", "50",
                                   "--smoke", "--seed", "1"])
        assert code == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 2 + 3
        policies = [l.split(",")[0] for l in lines[2:]]
        assert policies == ["inferred", "greedy", "optimal"]

    def test_bad_size_exit_2(self, tmp_path):
        code, _ = run(tmp_path, ["sailing", "eval", "--policy", "greedy",
                                 "--size", "1"])
        assert code == 2

    def test_infer_byte_reproducible(self, tmp_path):
        argv = ["sailing", "infer", "--size", "5", "--samples", "20", "--smoke",
                "--seed", "4"]
        _, a = run(tmp_path, argv, "r1")
        _, b = run(tmp_path, argv, "r2")
        assert a.read_bytes() == b.read_bytes()

    def test_infer_smoke_size_25_under_a_minute(self, tmp_path):
        import time
        t0 = time.time()
        code, out = run(tmp_path, ["sailing", "infer", "--size", "25",
                                   "--samples", "100", "--smoke"])
        elapsed = time.time() - t0
        assert code == 0
        assert len(out.read_text().splitlines()) == 2 + 100
        assert elapsed < 60

    def test_sweep_depth1_analytical_value(self, tmp_path):
        code, out = run(tmp_path, ["fable", "sweep", "--preset", "meet-symmetric",
                                   "--depth", "1", "--iters", "200"])
        assert code == 0
        row = [l for l in out.read_text().splitlines()
               if l.startswith("alice,1,") and "analytical" in l][0]
        assert abs(float(row.split(",")[2]) - 0.604) < 1e-3


class TestParsing:
    def test_no_command_exits_2(self):
        assert main([]) == 2

    def test_unknown_flag_exits_2(self):
        assert main(["mistakes", "--frobnicate"]) == 2

    def test_stdout_default(self, capsys):
        assert main(["mistakes"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("# prefplan=")
