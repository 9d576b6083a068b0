import json
import math

import pytest

import oracles
from primegaps import eval_functional, ExponentPair, pair
from primegaps.cli import main, parse_limit, UsageError


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_limit_forms():
    assert parse_limit("426000000") == 426000000
    assert parse_limit("100_000_000") == 100000000
    assert parse_limit("4.26e8") == 426000000
    assert parse_limit("1e6") == 1000000
    with pytest.raises(UsageError):
        parse_limit("eight")
    with pytest.raises(UsageError):
        parse_limit("1.5")
    with pytest.raises(UsageError):
        parse_limit("inf")


def test_usage_errors_exit_2(capsys):
    assert run_cli(capsys, "andrica", "--limit", "2")[0] == 2
    assert run_cli(capsys, "andrica")[0] == 2
    assert run_cli(capsys, "nonsense", "--limit", "100")[0] == 2
    assert run_cli(capsys, "andrica", "--limit", "abc")[0] == 2
    assert run_cli(capsys, "gapstats", "--limit", "100", "--kind", "conj1")[0] == 2
    assert run_cli(capsys, "andrica", "--limit", "100", "--resume")[0] == 2
    assert run_cli(capsys, "records", "--limit", "100", "--alpha", "0.5", "--beta", "0.5")[0] == 2


def test_records_hypothesis_message(capsys):
    code, _, err = run_cli(capsys, "records", "--limit", "100", "--alpha", "0.6", "--beta", "0.4")
    assert code == 2
    assert "alpha + beta" in err


def test_andrica_csv(capsys):
    code, out, err = run_cli(capsys, "andrica", "--limit", "1000000")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "verified_below,pairs_checked,violations,witness_p,witness_q,max_value"
    fields = lines[1].split(",")
    assert fields[:5] == ["1000000", "78497", "0", "7", "11"]
    want = float(oracles.mp_sqrt_gap(7, 11))
    assert abs(float(fields[5]) - want) <= 1e-13
    assert err == ""


def test_records_header_and_first_row(capsys):
    code, out, _ = run_cli(capsys, "records", "--alpha", "0.5", "--beta", "0.25", "--limit", "100")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,p,q,gap,value"
    assert lines[1].startswith("1,2,3,1,")
    # Every row recomputes from its own p and q.
    ab = ExponentPair(0.5, 0.25)
    for line in lines[1:]:
        n, p, q, gap, value = line.split(",")
        pr = pair(int(n), int(p), int(q))
        assert int(gap) == pr.g
        assert abs(float(value) - eval_functional(ab, pr)) <= 1e-12 * float(value)


def test_records_alpha_zero_single_row(capsys):
    code, out, _ = run_cli(capsys, "records", "--alpha", "0", "--beta", "0.5", "--limit", "100")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2
    assert lines[1] == "1,2,3,1,0"


def test_records_kind_max(capsys):
    code, out, _ = run_cli(capsys, "records", "--alpha", "0.5", "--beta", "0.25", "--limit", "10000", "--kind", "max")
    assert code == 0
    values = [float(line.split(",")[4]) for line in out.splitlines()[1:]]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_smarandache_row(capsys):
    code, out, _ = run_cli(capsys, "smarandache", "--limit", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "C,alpha,witness_p,witness_q,residual"
    fields = lines[1].split(",")
    assert fields[0] == "1"
    assert abs(float(fields[1]) - 1.0) <= 1e-12
    assert fields[2:4] == ["2", "3"]


def test_alpha_curve_c1_equals_smarandache(capsys):
    code1, out1, _ = run_cli(capsys, "smarandache", "--limit", "10000")
    code2, out2, _ = run_cli(capsys, "alpha-curve", "--c", "1", "--limit", "10000")
    assert code1 == code2 == 0
    assert out1 == out2


def test_alpha_curve_rows(capsys):
    code, out, _ = run_cli(capsys, "alpha-curve", "--c", "0.5,1,2", "--limit", "100000")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 4
    for line in lines[1:]:
        c, alpha, wp, wq, residual = line.split(",")
        assert abs(float(residual)) <= 1e-12 * max(1.0, float(c))
        true_res = float(
            oracles.mp_gamma_residual(int(wp), int(wq), float(c), float(alpha))
        )
        assert abs(true_res) <= 1e-12 * max(1.0, float(c))


def test_gapstats_rows(capsys):
    code, out, _ = run_cli(capsys, "gapstats", "--limit", "1000", "--kind", "conj1", "--alpha", "0.5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "kind,n,p,q,gap,ratio"
    final = lines[-1].split(",")
    assert final[0] == "conj1"
    assert (final[2], final[3]) == ("7", "11")


def test_gapstats_all_groups_kinds(capsys):
    code, out, _ = run_cli(capsys, "gapstats", "--limit", "10000", "--alpha", "0.5")
    assert code == 0
    kinds = [line.split(",")[0] for line in out.splitlines()[1:]]
    assert kinds == sorted(kinds, key=("cramer", "bhp", "conj1").index)
    assert set(kinds) == {"cramer", "bhp", "conj1"}
    code, out, _ = run_cli(capsys, "gapstats", "--limit", "10000")
    kinds = set(line.split(",")[0] for line in out.splitlines()[1:])
    assert kinds == {"cramer", "bhp"}


def test_gapstats_cramer_recomputes(capsys):
    code, out, _ = run_cli(capsys, "gapstats", "--limit", "1000", "--kind", "cramer")
    assert code == 0
    for line in out.splitlines()[1:]:
        _, n, p, q, gap, ratio = line.split(",")
        assert float(ratio) == pytest.approx(int(gap) / math.log(int(p)) ** 2, rel=1e-13)


def test_json_meta_and_rows(capsys):
    code, out, _ = run_cli(capsys, "records", "--alpha", "0.5", "--beta", "0.25", "--limit", "1000", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"meta", "rows"}
    assert doc["meta"] == {
        "command": "records",
        "limit": 1000,
        "alpha": 0.5,
        "beta": 0.25,
        "schema_version": 1,
    }
    assert doc["rows"][0] == {"n": 1, "p": 2, "q": 3, "gap": 1, "value": doc["rows"][0]["value"]}
    code, out, _ = run_cli(capsys, "smarandache", "--limit", "10000", "--format", "json")
    doc = json.loads(out)
    assert doc["meta"]["alpha"] is None and doc["meta"]["beta"] is None
    assert set(doc["rows"][0]) == {"C", "alpha", "witness_p", "witness_q", "residual"}


def test_csv_and_json_agree(capsys):
    _, csv_out, _ = run_cli(capsys, "alpha-curve", "--c", "0.5,2", "--limit", "10000")
    _, json_out, _ = run_cli(capsys, "alpha-curve", "--c", "0.5,2", "--limit", "10000", "--format", "json")
    doc = json.loads(json_out)
    csv_rows = [line.split(",") for line in csv_out.splitlines()[1:]]
    assert len(csv_rows) == len(doc["rows"])
    for fields, row in zip(csv_rows, doc["rows"]):
        assert float(fields[0]) == row["C"]
        assert float(fields[1]) == row["alpha"]
        assert int(fields[2]) == row["witness_p"]


def test_determinism_in_process(capsys):
    a = run_cli(capsys, "gapstats", "--limit", "100000", "--alpha", "0.3")
    b = run_cli(capsys, "gapstats", "--limit", "100000", "--alpha", "0.3")
    assert a == b


def test_env_thread_default(capsys, monkeypatch):
    base = run_cli(capsys, "records", "--alpha", "0.5", "--beta", "0.25", "--limit", "200000")
    monkeypatch.setenv("PRIMEGAPS_THREADS", "3")
    with_env = run_cli(capsys, "records", "--alpha", "0.5", "--beta", "0.25", "--limit", "200000")
    assert with_env == base
    monkeypatch.setenv("PRIMEGAPS_THREADS", "zero")
    assert run_cli(capsys, "records", "--alpha", "0.5", "--beta", "0.25", "--limit", "200000")[0] == 2


def test_segment_span_flag_invariance(capsys):
    a = run_cli(capsys, "smarandache", "--limit", "300000")
    b = run_cli(capsys, "smarandache", "--limit", "300000", "--segment-span", "65536")
    assert a == b
    assert run_cli(capsys, "smarandache", "--limit", "300000", "--segment-span", "100")[0] == 2


def test_andrica_checkpoint_resume_cycle(capsys, tmp_path):
    cp = tmp_path / "cp.json"
    code, fresh, _ = run_cli(capsys, "andrica", "--limit", "200000")
    assert code == 0
    assert run_cli(capsys, "andrica", "--limit", "100000", "--checkpoint", str(cp))[0] == 0
    code, resumed, _ = run_cli(capsys, "andrica", "--limit", "200000", "--checkpoint", str(cp), "--resume")
    assert code == 0
    assert resumed == fresh


def test_records_checkpoint_resume_cycle(capsys, tmp_path):
    cp = tmp_path / "cp.json"
    args = ("records", "--alpha", "0.5", "--beta", "0.25")
    code, fresh, _ = run_cli(capsys, *args, "--limit", "400000")
    assert code == 0
    assert run_cli(capsys, *args, "--limit", "150000", "--checkpoint", str(cp))[0] == 0
    code, resumed, _ = run_cli(capsys, *args, "--limit", "400000", "--checkpoint", str(cp), "--resume")
    assert code == 0
    assert resumed == fresh


def test_checkpoint_mismatch_exits_2(capsys, tmp_path):
    cp = tmp_path / "cp.json"
    assert run_cli(capsys, "records", "--alpha", "0.5", "--beta", "0.25", "--limit", "100000", "--checkpoint", str(cp))[0] == 0
    code, _, err = run_cli(capsys, "records", "--alpha", "0.3", "--beta", "0.6", "--limit", "200000", "--checkpoint", str(cp), "--resume")
    assert code == 2
    assert "checkpoint" in err
    code, _, err = run_cli(capsys, "andrica", "--limit", "200000", "--checkpoint", str(cp), "--resume")
    assert code == 2
    cp.write_text("{broken")
    code, _, err = run_cli(capsys, "records", "--alpha", "0.5", "--beta", "0.25", "--limit", "200000", "--checkpoint", str(cp), "--resume")
    assert code == 2


def test_violation_path_exit_1(capsys, monkeypatch, tmp_path):
    # No real violations exist in range, so synthesize one by feeding the
    # verifier a doctored report through its own machinery: run on a tiny
    # range where we can substitute the exact test.
    import primegaps.andrica as mod
    import numpy as np

    real = mod._holds_block

    def doctored(p, q):
        flags = real(p, q)
        flags = flags.copy()
        flags[(p == 113)] = False
        return flags

    monkeypatch.setattr(mod, "_holds_block", doctored)
    code, out, err = run_cli(capsys, "andrica", "--limit", "1000")
    assert code == 1
    assert "violation" in err and "113" in err
    assert out.splitlines()[1].split(",")[2] == "1"
