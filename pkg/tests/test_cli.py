import json
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from atlab.cli import CAP, FALSE, INVARIANT, OK, USAGE, run

SCHEMAS = Path(__file__).resolve().parent.parent / "schemas" / "v1"
VERDICT_VERBS = {"choosable", "online", "critical", "at-critical"}


@pytest.fixture(scope="module")
def validators():
    docs = {p.stem: json.loads(p.read_text()) for p in SCHEMAS.glob("*.json")}
    registry = Registry().with_resources(
        (d["$id"], Resource.from_contents(d)) for d in docs.values())
    return {name: Draft202012Validator(d, registry=registry) for name, d in docs.items()}


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def check_json(validators, verb, out):
    lines = [json.loads(ln) for ln in out.splitlines() if ln.strip()]
    assert lines
    name = "verdict" if verb in VERDICT_VERBS else verb
    for obj in lines:
        validators[name].validate(obj)
    return lines


def test_schema_files_are_valid(validators):
    for v in validators.values():
        Draft202012Validator.check_schema(v.schema)
    assert {"certificate", "extension-frame", "functionals"} <= set(validators)


def test_at_number_of_c4(capsys):
    assert call(capsys, "at-number", "Cr")[:2] == (OK, "2\n")


def test_table1(capsys, validators):
    code, out, _ = call(capsys, "table1", "--json")
    assert code == OK
    (obj,) = check_json(validators, "table1", out)
    assert obj["here"] == {"5": "4.0984", "6": "5.1053", "7": "6.1149", "8": "7.1128", "9": "8.1094",
                           "10": "9.1055", "15": "14.0864", "20": "19.0719"}
    code, out, _ = call(capsys, "table1")
    assert "4.0984" in out and "---" in out


@pytest.mark.parametrize("argv,verb,code", [
    (["at-number", "Cr"], "at-number", OK),
    (["is-at", "Cr", "--f", "2"], "is-at", OK),
    (["is-at", "Bw", "--f", "2"], "is-at", FALSE),
    (["ee-eo", "Cr", "--arcs", "0>1,1>3,3>2,2>0"], "ee-eo", OK),
    (["coeff", "Bw", "--exponents", "1,1,1"], "coeff", OK),
    (["gallai", "Cr"], "gallai", FALSE),
    (["gallai", "Dhc"], "gallai", OK),
    (["blocks", "Bw"], "blocks", OK),
    (["reduce", "Cr"], "reduce", OK),
    (["reduce", "C~"], "reduce", FALSE),
    (["choosable", "Cr", "--f", "2"], "choosable", OK),
    (["online", "Bw", "--f", "2"], "online", FALSE),
    (["critical", "Dhc", "-k", "3"], "critical", OK),
    (["at-critical", "C~", "-k", "4"], "at-critical", OK),
    (["bounds", "C~", "-k", "5", "--c", "5/12"], "bounds", OK),
    (["audit", "C~", "-k", "5", "--kind", "sigma-bound"], "audit", OK),
    (["audit", "D~{", "--kind", "sigma-tau", "--c", "0"], "audit", OK),
])
def test_json_payloads_match_schemas(capsys, validators, argv, verb, code):
    got, out, err = call(capsys, *argv, "--json")
    assert got == code, err
    check_json(validators, verb, out)


def test_mh_reduce_json(capsys, validators):
    from atlab import to_graph6
    from .instances import lopsided_reference
    G, Y, k = lopsided_reference()
    code, out, err = call(capsys, "mh-reduce", to_graph6(G), "--Y", "0,1", "-k", "5", "--variant", "lopsided",
                          "--json")
    assert code == OK, err
    (obj,) = check_json(validators, "mh-reduce", out)
    assert obj["certificate"]["ee"] != obj["certificate"]["eo"]


def test_gallai_certificate(capsys):
    code, out, _ = call(capsys, "gallai", "Cr", "--json")
    obj = json.loads(out)
    assert code == FALSE and obj["certificate"]["ee"] == 2


def test_exit_codes(capsys):
    assert call(capsys, "at-number", "D?")[0] == USAGE          # truncated graph6
    assert call(capsys, "is-at", "Cr")[0] == USAGE              # --f missing
    assert call(capsys, "nonsense")[0] == USAGE
    code, _, err = call(capsys, "at-number", "Cr", "--budget", "bogus=3")
    assert code == USAGE and "--budget" in err
    code, _, err = call(capsys, "choosable", "D~{", "--f", "4")
    assert code == CAP and "--budget palette=N" in err
    code, _, err = call(capsys, "choosable", "D~{", "--f", "4", "--budget", "palette=20")
    assert "warning" in err
    assert call(capsys, "mh-reduce", "D~{", "--Y", "0", "-k", "5", "--variant", "lopsided")[0] == USAGE


def test_audit_failure_exits_invariant(capsys, monkeypatch):
    from atlab import bounds

    class Bad:
        ok = False

        def to_dict(self):
            return {"k": 5, "sigma": "0/1", "q": "0/1", "has_clique": False, "required": "2/1", "ok": False}

    monkeypatch.setattr(bounds, "audit_sigma_bound", lambda T, k: Bad())
    assert call(capsys, "audit", "Bw", "-k", "5")[0] == INVARIANT


def test_scan_json_and_exit(capsys, validators):
    code, out, _ = call(capsys, "scan", "--mode", "at-critical", "-k", "5", "--n-max", "6", "--json")
    assert code == OK
    lines = check_json(validators, "scan", out)
    assert lines[-1]["summary"]["violations"] == 0
    assert lines[-1]["summary"]["excluded"] == ["D~{"]


def test_scan_reports_witness_on_violation(capsys, monkeypatch):
    from atlab import bounds
    monkeypatch.setattr(bounds, "g_bound", lambda k, n, c: 10 ** 6)
    code, _, err = call(capsys, "scan", "--mode", "critical", "-k", "5", "--n-max", "7")
    assert code == INVARIANT and "falsification witness" in err


def test_stdin_and_file_input(capsys, tmp_path, monkeypatch):
    import io
    path = tmp_path / "g.g6"
    path.write_text("Cr\nBw\n")
    code, out, _ = call(capsys, "at-number", "--file", str(path))
    assert out.split() == ["2", "3"]
    assert code == OK
    monkeypatch.setattr("sys.stdin", io.StringIO("C~\n"))
    assert call(capsys, "at-number")[1] == "4\n"


def test_output_identical_across_jobs(capsys, tmp_path):
    from atlab import to_graph6
    from atlab.enumeration import enumerate_connected
    path = tmp_path / "all5.g6"
    path.write_text("\n".join(to_graph6(G) for G in enumerate_connected(5)) + "\n")
    outs = set()
    for jobs in ("1", "3"):
        for verb in (["at-number"], ["reduce"], ["is-at", "--f", "d0"]):
            call(capsys, *verb, "--file", str(path), "--json", "--jobs", jobs)
        code, out, _ = call(capsys, "scan", "--mode", "at-critical", "-k", "5", "--n-max", "6", "--json",
                            "--jobs", jobs)
        outs.add(out)
    assert len(outs) == 1
    per_verb = {}
    for jobs in ("1", "3"):
        code, out, _ = call(capsys, "reduce", "--file", str(path), "--json", "--jobs", jobs)
        per_verb.setdefault("reduce", set()).add(out)
    assert all(len(v) == 1 for v in per_verb.values())
