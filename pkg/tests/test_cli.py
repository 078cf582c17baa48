import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slmin import schemas
from slmin.cli import RunConfig, parse_config, run


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def invoke_json(*argv):
    code, out, err = invoke(*argv)
    assert code == 0, err
    return json.loads(out)


# -- verdicts ---------------------------------------------------------------------


def test_check_sl_json():
    d = invoke_json("check-sl", "--n", "4", "--field", "Q(i)")
    jsonschema.validate(d, schemas.VERDICT)
    assert d["minimal"] is True and d["totally_minimal"] is True
    assert "witness_order" not in d


def test_check_sl_non_minimal_has_witness():
    d = invoke_json("check-sl", "--n", "6", "--field", "Q(i)")
    jsonschema.validate(d, schemas.VERDICT)
    assert d["minimal"] is False and d["witness_order"] == 3


@pytest.mark.parametrize("field", ["Q(i)", "R-subfield", "Q@7", "Q(zeta_3)"])
def test_check_stp_json(field):
    d = invoke_json("check-stp", "--n", "12", "--field", field)
    jsonschema.validate(d, schemas.VERDICT)
    assert d["group"] == "STP" and d["field"] == field


@pytest.mark.parametrize(
    "argv, minimal",
    [
        (["--shape", "explicit", "--degrees", "2,4,16,256"], True),
        (["--shape", "powers-of-two"], False),
        (["--shape", "fermat", "--which", "primes"], None),
        (["--shape", "mersenne", "--which", "composites", "--assume-finite", "yes"], True),
    ],
)
def test_product_json(argv, minimal):
    d = invoke_json("product", *argv)
    jsonschema.validate(d, schemas.VERDICT)
    assert d["minimal"] is minimal


def test_records_validate():
    for cmd in ("fermat", "mersenne"):
        d = invoke_json(cmd, "--p", "17")
        jsonschema.validate(d, schemas.RECORD)
    assert invoke_json("fermat", "--p", "17")["side_pepin"] is True


@pytest.mark.parametrize("cmd", ["scan-fermat", "scan-mersenne"])
def test_scan_json(cmd):
    d = invoke_json(cmd, "--limit", "300")
    jsonschema.validate(d, schemas.SCAN)
    assert d["summary"]["checked"] == len(d["records"])


def test_oracle_json():
    d = invoke_json("oracle", "--lemma", "centerfree", "--n", "2", "--q", "5")
    jsonschema.validate(d, schemas.ORACLE_REPORT)
    assert d["details"]["cosets"] == 10
    d = invoke_json("oracle", "--lemma", "ut-intersection", "--n", "3", "--p", "2", "--e", "2")
    jsonschema.validate(d, schemas.ORACLE_REPORT)


def test_version():
    d = invoke_json("version")
    assert d["schema_version"] == "slmin.verdict/1"


# -- other formats ------------------------------------------------------------------


def test_csv_scan_rows():
    code, out, _ = invoke("scan-fermat", "--limit", "20", "--output", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["p"] for r in rows] == ["3", "5", "7", "11", "13", "17", "19"]
    assert [r["p"] for r in rows if r["side_gaussian"] == "True"] == ["3", "5", "17"]


def test_csv_verdict_flattens_trail():
    _, out, _ = invoke("check-sl", "--n", "6", "--field", "Q(i)", "--output", "csv")
    row = next(csv.DictReader(io.StringIO(out)))
    assert row["theorem_trail"] == "Prop. 2.6; Prop. 2.10(2); Thm. 2.9; Prop. 2.10(1)"
    assert row["witness_order"] == "3"


def test_text_outputs():
    _, out, _ = invoke("check-sl", "--n", "3", "--field", "R-subfield", "--output", "text")
    assert out.startswith("SL(3, R-subfield): minimal=True")
    _, out, _ = invoke("product", "--shape", "fermat", "--which", "primes", "--output", "text")
    assert "condition: minimal iff the set of Fermat primes is finite" in out
    _, out, _ = invoke("scan-fermat", "--limit", "300", "--output", "text")
    assert "Fermat primes detected: 3, 5, 17, 257" in out and "faults: 0" in out


# -- exit codes -----------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["check-sl", "--n", "3", "--field", "Q(j)"],
        ["check-sl", "--n", "0", "--field", "Q(i)"],
        ["check-sl", "--n", "3"],
        ["product", "--shape", "explicit", "--degrees", "2,6"],
        ["fermat", "--p", "9"],
        ["oracle", "--lemma", "center", "--n", "2", "--q", "2"],
        ["oracle", "--lemma", "center", "--n", "2", "--q", "6"],
        ["oracle", "--lemma", "ut-intersection", "--n", "2", "--p", "2", "--e", "2"],
        ["check-sl", "--n", "3", "--field", "Q@2", "--bound", "nonsense=3"],
    ],
)
def test_domain_errors_exit_2(argv):
    code, out, _ = invoke(*argv)
    assert code == 2 and out == ""


def test_resource_bound_exit_3():
    code, _, err = invoke("scan-fermat", "--limit", "100", "--bound", "scan_max_limit=50")
    assert code == 3 and "scan_max_limit=50" in err


def test_resource_bound_from_environment(monkeypatch):
    monkeypatch.setenv("SLMIN_SCAN_MAX_LIMIT", "50")
    assert invoke("scan-mersenne", "--limit", "100")[0] == 3


def test_lemma_failure_exits_4():
    code, out, _ = invoke("oracle", "--lemma", "center", "--n", "2", "--q", "3")
    assert code == 4
    assert json.loads(out)["result"] == "fail"


def test_exploratory_failure_exits_0():
    code, out, _ = invoke("oracle", "--lemma", "center", "--n", "2", "--q", "2", "--exploratory")
    assert code == 0 and json.loads(out)["result"] == "exploratory-fail"


def test_equivalence_fault_exits_4(monkeypatch):
    import slmin.minimality as mm

    real = mm.sl_minimal

    def broken(n, field, bounds=None):
        v = real(n, field, bounds)
        return mm.MinimalityVerdict("SL", field, not v.minimal, n)

    monkeypatch.setattr(mm, "sl_minimal", broken)
    code, out, err = invoke("fermat", "--p", "5")
    assert code == 4 and out == ""
    payload = json.loads(err)
    assert payload["error"] == "equivalence-fault" and payload["record"]["p"] == 5


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "slmin.cli", "version", "--output", "text"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("slmin ")


# -- config round trip and determinism -------------------------------------------------

fields_st = st.sampled_from(["Q(i)", "R-subfield", "Q@5", "Q(zeta_8)"])
common = {
    "output": st.sampled_from(["json", "csv", "text"]),
    "workers": st.integers(1, 8),
    "bound_overrides": st.lists(
        st.tuples(st.sampled_from(["scan_max_limit", "pepin_max_k", "group_max_elements"]), st.integers(1, 10**6)),
        max_size=2,
    ).map(tuple),
}
per_command = {
    "check-sl": {"n": st.integers(1, 100), "field_expr": fields_st},
    "check-stp": {"n": st.integers(1, 100), "field_expr": fields_st},
    "product": {
        "shape": st.sampled_from(["explicit", "powers-of-two", "fermat", "mersenne"]),
        "degrees": st.none() | st.lists(st.integers(1, 300), min_size=1, max_size=5).map(tuple),
        "which": st.none() | st.sampled_from(["primes", "composites"]),
        "assume_finite": st.none() | st.booleans(),
        "group": st.none() | st.sampled_from(["SL", "STP"]),
        "field_expr": st.none() | fields_st,
    },
    "fermat": {"p": st.integers(2, 1000)},
    "mersenne": {"p": st.integers(2, 1000)},
    "scan-fermat": {"limit": st.integers(0, 10**5)},
    "scan-mersenne": {"limit": st.integers(0, 10**5)},
    "oracle": {
        "lemma": st.sampled_from(["center", "centerfree", "ut-intersection", "derived", "center-suite"]),
        "n": st.none() | st.integers(2, 4),
        "q": st.none() | st.sampled_from([2, 3, 4, 9]),
        "p": st.none() | st.sampled_from([2, 3]),
        "e": st.none() | st.integers(1, 3),
        "exploratory": st.booleans(),
    },
    "version": {},
}
configs = st.sampled_from(sorted(per_command)).flatmap(
    lambda cmd: st.builds(RunConfig, command=st.just(cmd), **common, **per_command[cmd])
)


@settings(max_examples=300)
@given(configs)
def test_config_argv_round_trip(cfg):
    assert parse_config(cfg.to_argv()) == cfg


def test_full_config_round_trip():
    cfg = parse_config(["product", "--shape", "explicit", "--degrees", "2,4", "--group", "STP", "--field", "Q(i)", "--output", "csv"])
    assert parse_config(cfg.to_argv()) == cfg


@pytest.mark.parametrize(
    "argv",
    [
        ["scan-fermat", "--limit", "5000"],
        ["scan-mersenne", "--limit", "400"],
        ["check-sl", "--n", "96", "--field", "Q@97"],
        ["oracle", "--lemma", "centerfree", "--n", "3", "--q", "4"],
    ],
)
@pytest.mark.parametrize("fmt", ["json", "csv", "text"])
def test_outputs_byte_identical_across_runs_and_workers(argv, fmt):
    first = invoke(*argv, "--output", fmt, "--workers", "1")
    assert first[0] in (0, 4)
    assert invoke(*argv, "--output", fmt, "--workers", "1") == first
    assert invoke(*argv, "--output", fmt, "--workers", "3") == first
