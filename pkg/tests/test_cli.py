import csv
import io
import json

import numpy as np
import pytest

from zsmatch import cli
from zsmatch.fileformats import FormatError, parse_instance, parse_witness, render_instance, render_witness
from zsmatch.gf import FieldSpec
from zsmatch.stress import hypergraph_from_json, hypergraph_to_json, random_linear_hypergraph
from zsmatch.zerosum import LabelledDigraph, verify_cycle


def run(*argv):
    return cli.main([str(a) for a in argv])


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert run("gen", "--p", 2, "--d", 1, "--n", 3, "--seed", 7, "--out", a) == 0
    assert run("gen", "--p", 2, "--d", 1, "--n", 3, "--seed", 7, "--out", b) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_layout(tmp_path):
    out = tmp_path / "i.txt"
    assert run("gen", "--p", 2, "--d", 3, "--n", 15, "--seed", 1, "--out", out) == 0
    lines = out.read_bytes().decode("ascii").split("\n")
    assert lines[0] == "2 3 15" and lines[-1] == ""
    body = lines[1:-1]
    assert len(body) == 210
    pairs = [tuple(map(int, ln.split()[:2])) for ln in body]
    assert pairs == sorted(pairs) and len(set(pairs)) == 210
    assert all(0 <= int(c) < 2 for ln in body for c in ln.split()[2:])


@pytest.mark.parametrize("args", [("--p", 4, "--d", 1, "--n", 3), ("--p", 2, "--d", 0, "--n", 3),
                                  ("--p", 2, "--d", 1, "--n", 1)])
def test_gen_rejects_bad_params(tmp_path, args):
    assert run("gen", *args, "--out", tmp_path / "x") == 1


def test_unknown_flag_is_usage_error(capsys):
    assert run("gen", "--bogus") == 1


def test_instance_round_trip():
    rng = np.random.default_rng(0)
    for p, d, n in [(2, 3, 6), (5, 2, 4), (3, 1, 2)]:
        dg = LabelledDigraph.random(FieldSpec(p, d), n, rng)
        assert parse_instance(render_instance(dg)) == dg


def test_parse_instance_is_strict():
    good = "2 1 2\n0 1 1\n1 0 0\n"
    parse_instance(good)
    for bad in ["2 1 2\n0 1 1\n1 0 0", "2 1 2\n1 0 0\n0 1 1\n", "2 1 2\n0 1 2\n1 0 0\n",
                "2 1 2\n0 1 1\n", "2 1 2\n0  1 1\n1 0 0\n", "4 1 2\n0 1 1\n1 0 0\n"]:
        with pytest.raises(FormatError):
            parse_instance(bad)


def test_witness_format():
    spec = FieldSpec(3, 2)
    text = render_witness((0, 2, 1), spec.zero())
    assert text == "cycle 0 2 1\nsum 0 0\n"
    assert parse_witness(text) == ([0, 2, 1], [0, 0])
    with pytest.raises(FormatError):
        parse_witness("cycle 0 0\nsum 0 0\n")
    with pytest.raises(FormatError):
        parse_witness("cycle 0\nsum 0\n")


def test_find_zero_labelling(tmp_path, capsys):
    inst, wit = tmp_path / "i.txt", tmp_path / "w.txt"
    dg = LabelledDigraph(FieldSpec(3, 2), np.zeros((5, 5, 2), dtype=int))
    inst.write_text(render_instance(dg))
    assert run("find", inst, "--out", wit, "--seed", 3) == 0
    vertices, total = parse_witness(wit.read_text())
    assert len(vertices) == 2 and total == [0, 0]
    (row,) = rows(capsys.readouterr().out)
    assert list(row) == cli.EXPERIMENT_COLUMNS
    assert row["seed"] == "3" and row["verified"] == "1" and row["cycle_length"] == "2"


def test_find_then_verify_and_tamper(tmp_path, capsys):
    inst, wit = tmp_path / "i.txt", tmp_path / "w.txt"
    assert run("gen", "--p", 2, "--d", 3, "--n", 15, "--seed", 11, "--out", inst) == 0
    assert run("find", inst, "--out", wit, "--mode", "heuristic") == 0
    assert rows(capsys.readouterr().out)[0]["verified"] == "1"
    assert run("verify", inst, wit) == 0

    dg = parse_instance(inst.read_text())
    vertices, _ = parse_witness(wit.read_text())
    swapped = None
    for pos in range(len(vertices)):
        for v in range(dg.n):
            if v in vertices:
                continue
            cand = vertices[:pos] + [v] + vertices[pos + 1:]
            if not verify_cycle(dg, cand):
                swapped = cand
                break
        if swapped:
            break
    bad = tmp_path / "bad.txt"
    bad.write_text(f"cycle {' '.join(map(str, swapped))}\nsum 0 0 0\n")
    assert run("verify", inst, bad) == 3
    bad.write_text(f"cycle {vertices[0]} {vertices[0]}\nsum 0 0 0\n")
    assert run("verify", inst, bad) == 1
    bad.write_text("cycle 0 99\nsum 0 0 0\n")
    assert run("verify", inst, bad) == 1


def test_verify_rejects_nonzero_sum_line(tmp_path):
    inst, wit = tmp_path / "i.txt", tmp_path / "w.txt"
    inst.write_text("2 1 2\n0 1 1\n1 0 1\n")
    wit.write_text("cycle 0 1\nsum 1\n")
    assert run("verify", inst, wit) == 3
    wit.write_text("cycle 0 1\nsum 0\n")
    assert run("verify", inst, wit) == 0


def test_find_two_vertex_failure(tmp_path, capsys):
    inst = tmp_path / "i.txt"
    inst.write_text("2 1 2\n0 1 1\n1 0 0\n")
    assert run("find", inst, "--out", tmp_path / "w.txt") == 2
    assert "no zero-sum cycle found" in capsys.readouterr().err


def test_find_malformed_input(tmp_path):
    inst = tmp_path / "i.txt"
    inst.write_text("2 1 2\n0 1 1\n")
    assert run("find", inst, "--out", tmp_path / "w.txt") == 1
    assert run("find", tmp_path / "missing.txt", "--out", tmp_path / "w.txt") == 1


def test_find_reports_largest_m(tmp_path, capsys):
    inst = tmp_path / "i.txt"
    assert run("lower-bound", "--p", 2, "--d", 3, "--out", inst) == 0
    assert run("find", inst, "--out", tmp_path / "w.txt") == 2
    assert "largest m attempted" in capsys.readouterr().err


@pytest.mark.parametrize("p,d,n", [(3, 2, 4), (2, 3, 3)])
def test_lower_bound(tmp_path, capsys, p, d, n):
    out = tmp_path / "lb.txt"
    assert run("lower-bound", "--p", p, "--d", d, "--out", out) == 0
    assert parse_instance(out.read_text()).n == n
    assert "no zero-sum cycle" in capsys.readouterr().err


def test_lower_bound_degenerate(tmp_path):
    assert run("lower-bound", "--p", 2, "--d", 1, "--out", tmp_path / "x") == 1


def test_stress_fprobe_prints_two(capsys):
    assert run("stress", "--suite", "fprobe", "--p", 3, "--d", 1, "--trials", 10) == 0
    assert capsys.readouterr().out.splitlines()[0] == "2"


@pytest.mark.parametrize("suite", ["lemma32", "lemma31", "lemma33", "haxell"])
def test_stress_suites_write_csv(tmp_path, suite):
    out = tmp_path / "s.csv"
    assert run("stress", "--suite", suite, "--trials", 15, "--seed", 2, "--out", out) == 0
    data = rows(out.read_text())
    assert [int(r["trial"]) for r in data] == list(range(15))
    assert all(r["violations"] == "0" for r in data)


def test_stress_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run("stress", "--suite", "lemma32", "--trials", 10, "--seed", 5, "--out", a)
    run("stress", "--suite", "lemma32", "--trials", 10, "--seed", 5, "--out", b)
    strip = lambda p: [{k: v for k, v in r.items() if "time" not in k} for r in rows(p.read_text())]
    assert strip(a) == strip(b)


def test_stress_violation_exits_four(tmp_path, monkeypatch):
    from zsmatch import stress

    def broken(trial, seed):
        res = stress.trial_lemma32(trial, seed)
        return stress.TrialResult(res.row, ["planted"], res.instance)

    monkeypatch.setitem(stress.TRIALS, "lemma32", broken)
    out = tmp_path / "s.csv"
    assert run("stress", "--suite", "lemma32", "--trials", 2, "--out", out) == 4
    replay = tmp_path / "s.violation-0.json"
    h = hypergraph_from_json(json.loads(replay.read_text())["instance"])
    assert len(h.vertices) > 0


def test_hypergraph_json_round_trip():
    rng = np.random.default_rng(1)
    for _ in range(20):
        h = random_linear_hypergraph(rng)
        g = hypergraph_from_json(hypergraph_to_json(h))
        assert g.vertices == h.vertices and g.edge_ids == h.edge_ids
        assert [g.edge(e) for e in g.edge_ids] == [h.edge(e) for e in h.edge_ids]
        assert g.labels() == h.labels()
