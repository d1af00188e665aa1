import io
import json
from fractions import Fraction as F

import pytest

from entropoly import cli
from entropoly.errors import MalformedInstance, ParseError, SchemaError

SUBSET = {"kind": "subset_sum", "weights": [3, 1, 2], "target": 3}
WORKED = {"kind": "transportation", "p": ["1/9", "3/9", "5/9"], "q": ["2/9", "4/9", "3/9"]}
HALVES = {"kind": "transportation", "p": ["1/2", "1/2"], "q": ["1/2", "1/2"]}
SIXTHS = {"kind": "channel_family", "p": ["1/6"] * 6, "m": 3}


def parse(obj):
    return cli.parse_instance(json.dumps(obj).encode())


def invoke(tmp_path, command, obj, *flags):
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(obj))
    out = tmp_path / "out.json"
    code = cli.main([command, str(path), "-o", str(out), *flags])
    return code, json.loads(out.read_text())


class TestParse:
    def test_subset_sum(self):
        inst = parse(SUBSET)
        assert inst.kind == "subset_sum" and inst.payload.weights == (3, 1, 2)

    def test_integer_strings(self):
        assert parse({"kind": "subset_sum", "weights": ["3", "1"], "target": "1"}).payload.target == 1

    def test_transportation(self):
        inst = parse(WORKED)
        assert list(inst.payload.p) == [F(1, 9), F(1, 3), F(5, 9)]

    def test_bad_sum(self):
        with pytest.raises(ValueError, match="'p'"):
            parse({"kind": "transportation", "p": ["1/2", "1/3"], "q": ["1"]})

    def test_float_rejected(self):
        with pytest.raises(ValueError, match=r"p\[0\]"):
            parse({"kind": "transportation", "p": [0.5, "1/2"], "q": ["1"]})

    def test_bad_json(self):
        with pytest.raises(ParseError, match="line 1"):
            cli.parse_instance(b'{"kind": ')

    def test_schema(self):
        with pytest.raises(SchemaError, match="missing"):
            parse({"kind": "subset_sum", "weights": [1]})
        with pytest.raises(SchemaError, match="unknown"):
            parse({**SUBSET, "extra": 1})
        with pytest.raises(SchemaError, match="kind"):
            parse({"kind": "matrix"})
        with pytest.raises(SchemaError):
            parse({"kind": "subset_sum", "weights": [1.0], "target": 1})

    def test_negative_weight(self):
        with pytest.raises(ValueError):
            parse({"kind": "subset_sum", "weights": [-1, 2], "target": 1})
        with pytest.raises(ValueError):
            parse({"kind": "three_partition", "weights": [-1, 2, 2], "bound": 3})


class TestRun:
    def test_decide_min_subset_sum(self):
        res = cli.run("decide-min", parse(SUBSET))
        assert res["status"] == "witness" and res["subset"] == [0]
        assert res["witness"] == [["1/2", "0"], ["0", "1/6"], ["0", "1/3"]]
        check = cli.run("verify", parse(SUBSET), certificate=res)
        assert check["valid"] is True

    def test_min_entropy_halves(self):
        res = cli.run("min-entropy", parse(HALVES))
        lo, hi = map(F, res["value_interval"])
        assert lo <= 1 <= hi
        assert res["witness"] == [["1/2", "0"], ["0", "1/2"]]
        assert res["bound_direction"] == ["floor", "ceiling"]

    def test_decide_channel(self):
        res = cli.run("decide-channel", parse(SIXTHS))
        cols = [sum(F(c) for c in col) for col in zip(*res["witness"])]
        assert cols == [F(1, 3)] * 3
        assert cli.run("verify", parse(SIXTHS), certificate=res)["valid"]

    def test_three_partition_reports_groups(self):
        res = cli.run("decide-channel", parse({"kind": "three_partition", "weights": [1] * 6, "bound": 3}))
        assert res["partition"] == [[0, 1, 2], [3, 4, 5]]

    def test_no_witness(self):
        res = cli.run("decide-min", parse({"kind": "subset_sum", "weights": [2, 2], "target": 3}))
        assert res["status"] == "no_witness" and cli.exit_code(res) == 1

    def test_target_too_large(self):
        res = cli.run("decide-min", parse({"kind": "subset_sum", "weights": [2, 2], "target": 9}))
        assert res["status"] == "no_witness"

    def test_limit(self):
        res = cli.run("min-entropy", parse(WORKED), limit=2)
        assert res["status"] == "limit_exceeded" and cli.exit_code(res) == 2

    def test_reduce(self):
        res = cli.run("reduce", parse(SUBSET))
        assert res["instance"] == {"kind": "transportation", "p": ["1/2", "1/6", "1/3"], "q": ["1/2", "1/2"]}
        again = parse(res["instance"])
        assert again.kind == "transportation"

    def test_reduce_three_partition_malformed(self):
        inst = parse({"kind": "three_partition", "weights": [3, 3, 2, 2, 3, 2, 3, 3, 3], "bound": 8})
        with pytest.raises(MalformedInstance):
            cli.run("reduce", inst)

    def test_metrics(self):
        pair = parse({"kind": "metric_pair", "p": ["1/2", "1/2"], "q": ["1"]})
        assert cli.run("total-variation", pair)["value"] == "1/2"
        lo, hi = map(F, cli.run("vi-distance", pair)["value_interval"])
        assert lo <= 1 <= hi
        lo, hi = map(F, cli.run("vi-distance-normalized", pair)["value_interval"])
        assert lo <= 1 <= hi

    def test_optimal_channel(self):
        res = cli.run("optimal-channel", parse({"kind": "channel_family", "p": ["1/2", "1/2"], "m": 2}))
        lo, hi = map(F, res["value_interval"])
        assert lo <= 1 <= hi and res["optimal"]

    def test_mismatch(self):
        with pytest.raises(cli.CommandMismatch):
            cli.run("decide-channel", parse(WORKED))

    def test_tampered_certificate(self):
        res = cli.run("decide-min", parse(SUBSET))
        res["witness"][0][0] = "1/3"
        assert cli.exit_code(cli.run("verify", parse(SUBSET), certificate=res)) == 1

    def test_no_floats_in_witness(self):
        for obj, command in [(WORKED, "min-entropy"), (SIXTHS, "optimal-channel"), (HALVES, "decide-min")]:
            res = cli.run(command, parse(obj))
            assert all(isinstance(c, str) for r in res["witness"] for c in r)
            assert all(str(F(c)) == c for r in res["witness"] for c in r)

    def test_deterministic(self):
        a = cli.run("min-entropy", parse(WORKED))
        b = cli.run("min-entropy", parse(WORKED))
        assert a == b


class TestMain:
    def test_round_trip(self, tmp_path):
        code, res = invoke(tmp_path, "decide-min", WORKED)
        assert code in (0, 1)
        code, res = invoke(tmp_path, "min-entropy", WORKED)
        assert code == 0 and res["command"] == "min-entropy" and "elapsed" in res["stats"]
        code, res = invoke(tmp_path, "decide-channel", SIXTHS)
        cert = tmp_path / "cert.json"
        cert.write_text(json.dumps(res))
        code, check = invoke(tmp_path, "verify", SIXTHS, "--certificate", str(cert))
        assert code == 0 and check["valid"] is True

    def test_input_error(self, tmp_path):
        code, res = invoke(tmp_path, "min-entropy", {"kind": "transportation", "p": ["1/2"], "q": ["1"]})
        assert code == 3 and res["error"] == "input_error"

    def test_malformed_instance(self, tmp_path):
        inst = {"kind": "three_partition", "weights": [1, 1, 4], "bound": 6}
        code, res = invoke(tmp_path, "decide-channel", inst)
        assert code == 3 and res["error"] == "malformed_instance"

    def test_mismatch(self, tmp_path):
        code, res = invoke(tmp_path, "total-variation", SUBSET)
        assert code == 4

    def test_stdin(self, monkeypatch, capsys):
        monkeypatch.setattr("sys.stdin", io.TextIOWrapper(io.BytesIO(json.dumps(HALVES).encode())))
        assert cli.main(["decide-min"]) == 0
        assert json.loads(capsys.readouterr().out)["status"] == "witness"

    def test_generate(self, capsys):
        assert cli.main(["generate", "three_partition", "--size", "2", "--seed", "7"]) == 0
        first = capsys.readouterr().out
        cli.main(["generate", "three_partition", "--size", "2", "--seed", "7"])
        assert capsys.readouterr().out == first
        inst = cli.parse_instance(first)
        inst.payload.validate()
