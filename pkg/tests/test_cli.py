from __future__ import annotations

import json

import pytest

from dismantle.cli import main
from dismantle.generators import data_path, write_graph
from dismantle.generators import cycle


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decide_min_k_cubion(capsys):
    code, out, _ = run(capsys, "decide", "--min-k", "cubion:3")
    assert code == 0 and "min index: 2" in out


def test_decide_c4_negative(capsys, tmp_path):
    f = tmp_path / "c4.txt"
    f.write_text(write_graph(cycle(4)))
    code, out, _ = run(capsys, "decide", "--k", "0", str(f))
    assert code == 1 and "no" in out


def test_decide_indeterminate(capsys):
    code, out, _ = run(capsys, "decide", "--k", "2", "cubion:4", "--budget", "50", "--json")
    assert code == 2
    assert json.loads(out)["status"] == "indeterminate"


def test_decide_json_deterministic(capsys, tmp_path):
    cert = tmp_path / "c.json"
    a = run(capsys, "decide", "--k", "1", "parasol_plus", "--json", "--deterministic", "--cert-out", str(cert))
    b = run(capsys, "decide", "--k", "1", "parasol_plus", "--json", "--deterministic", "--threads", "4")
    assert a[0] == 0 and a[1] == b[1]
    payload = json.loads(a[1])
    assert payload["version"] == "report_v1" and payload["status"] == "yes"
    assert "elapsed" not in payload["stats"]
    code, out, _ = run(capsys, "certify", "parasol_plus", str(cert))
    assert code == 0 and out.startswith("valid")


def test_decide_other_modes(capsys):
    assert run(capsys, "decide", "--non-evasive", "dunce_hat")[0] == 1
    assert run(capsys, "decide", "--ws", "parasol")[0] == 0
    assert run(capsys, "decide", "--min-k", "parasol")[0] == 1


def test_certify_bundled(capsys):
    code, out, _ = run(capsys, "certify", "dunce_hat", str(data_path("dunce_hat_cert.json")))
    assert code == 0
    code, out, _ = run(capsys, "certify", "bings_house", str(data_path("bings_house_cert.json")), "--json")
    assert code == 0 and json.loads(out)["valid"] is True


def test_certify_invalid(capsys):
    code, out, _ = run(capsys, "certify", "parasol", str(data_path("dunce_hat_cert.json")))
    assert code == 1 and "hash" in out


def test_usage_and_io_errors(capsys, tmp_path):
    assert run(capsys, "decide", "--k", "0", "no_such_thing")[0] == 3
    with pytest.raises(SystemExit) as exc:
        main(["decide", "cycle:4"])
    assert exc.value.code == 3
    with pytest.raises(SystemExit) as exc:
        main(["decide", "--k", "-2", "cycle:4"])
    assert exc.value.code == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("2 1\n0 0\n")
    code, _, err = run(capsys, "decide", "--k", "0", str(bad))
    assert code == 3 and "line 2" in err
    junk = tmp_path / "junk.json"
    junk.write_text("{")
    assert run(capsys, "certify", "cycle:4", str(junk))[0] == 3


def test_gen_and_other_reports(capsys, tmp_path):
    out_file = tmp_path / "w.txt"
    assert run(capsys, "gen", "wheel:5", "-o", str(out_file))[0] == 0
    assert out_file.read_text().startswith("6 10")
    code, out, _ = run(capsys, "gen", "cycle:3", "--format", "dot")
    assert "--" in out
    code, out, _ = run(capsys, "cliques", str(out_file), "--json")
    assert json.loads(out)["omega"] == 3
    code, out, _ = run(capsys, "aut", "kneser:5,2", "--i", "2")
    assert code == 0 and "|Aut| = 120" in out
    assert run(capsys, "aut", "circulant:7,1,2", "--i", "2")[0] == 1
    code, out, _ = run(capsys, "game", "cycle:4", "--json")
    assert json.loads(out)["depth"] == 4
    code, out, _ = run(capsys, "stiff", "cycle:5", "--k", "1")
    assert "5 vertices" in out
    code, out, _ = run(capsys, "stiff", "complete:4", "--k", "0", "--seed", "3", "--json")
    assert len(json.loads(out)["core_vertices"]) == 1
