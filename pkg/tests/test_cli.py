"""CLI: option precedence, record schemas, serialization, exit codes."""

import json
import math
from fractions import Fraction

import pytest

from qlcm.cli import (
    CSV_COLUMNS,
    SpecError,
    _make_parser,
    build_spec,
    emit_csv_header,
    emit_csv_row,
    emit_jsonl,
    main,
    render,
    run,
)


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    out = [ln for ln in captured.out.splitlines() if ln]
    return code, out, captured.err


def spec_for(argv):
    return build_spec(_make_parser().parse_args(argv))


def records_for(argv):
    return [json.loads(ln) for ln in render(spec_for(argv), run(spec_for(argv)))]


def test_subcommand_required():
    with pytest.raises(SystemExit):
        main([])


def test_expect_record_schema_and_roundtrip(capsys):
    code, out, err = run_cli(capsys, ["expect", "--n", "10", "--alpha", "0.5", "--seed", "7"])
    assert code == 0 and not err
    rec = json.loads(out[0])
    assert list(rec)[:5] == ["type", "command", "n", "alpha", "seed"]
    assert rec["command"] == "expect" and rec["n"] == 10 and rec["seed"] == 7
    for key in ("e_exact", "e_grouped", "e_asym", "gap_asym", "alpha_factor", "truncation"):
        assert key in rec
    assert rec["truncation"]["c1_cutoff"] == 100000
    # parse -> re-emit is byte identical (floats carry 17 significant digits)
    assert emit_jsonl(rec) == out[0]


def test_timing_records_trail_science(capsys):
    code, out, _ = run_cli(capsys, ["expect", "--n", "5", "--alpha", "0.5"])
    assert code == 0
    kinds = [json.loads(ln)["type"] for ln in out]
    assert kinds[0] == "report"
    assert "timing" in kinds
    first_timing = kinds.index("timing")
    assert all(k == "timing" for k in kinds[first_timing:])
    tm = json.loads(out[first_timing])
    assert tm["seconds"] >= 0.0 and tm["command"] == "expect"

    code, out, _ = run_cli(capsys, ["expect", "--n", "5", "--alpha", "0.5", "--no-timings"])
    assert all(json.loads(ln)["type"] == "report" for ln in out)


def test_grid_order_n_outer_alpha_inner(capsys):
    code, out, _ = run_cli(
        capsys,
        ["expect", "--n", "4,6", "--alpha", "0.25,0.75", "--no-timings"],
    )
    assert code == 0
    grid = [(json.loads(ln)["n"], json.loads(ln)["alpha"]) for ln in out]
    assert grid == [(4, 0.25), (4, 0.75), (6, 0.25), (6, 0.75)]


def test_n_range_forms():
    assert spec_for(["expect", "--n", "2:6", "--alpha", "0.5"]).n_values == (2, 3, 4, 5, 6)
    assert spec_for(["expect", "--n", "2:10:3", "--alpha", "0.5"]).n_values == (2, 5, 8)
    assert spec_for(["expect", "--n", "7, 3", "--alpha", "0.5"]).n_values == (7, 3)
    assert spec_for(["expect", "--n", "5", "--alpha", "1/4,0.5"]).alphas == (0.25, 0.5)


def test_csv_schema(capsys):
    code, out, _ = run_cli(
        capsys,
        ["expect", "--n", "4,6", "--alpha", "0.25,0.5", "--format", "csv", "--no-timings"],
    )
    assert code == 0
    assert out[0] == emit_csv_header() == ",".join(CSV_COLUMNS)
    assert len(out) == 5
    row = dict(zip(CSV_COLUMNS, out[1].split(",")))
    assert row["n"] == "4" and row["e_exact"] != ""
    assert row["v_exact"] == "" and row["mc_mean"] == ""
    assert row["seed"] == "0"
    # variance and simulate fill their own columns
    _, vout, _ = run_cli(
        capsys, ["variance", "--n", "50", "--alpha", "0.5", "--format", "csv", "--no-timings"]
    )
    vrow = dict(zip(CSV_COLUMNS, vout[1].split(",")))
    assert vrow["v_exact"] != "" and vrow["v_upper"] != "" and vrow["e_exact"] == ""
    _, sout, _ = run_cli(
        capsys,
        ["simulate", "--n", "50", "--alpha", "0.5", "--trials", "20", "--format", "csv",
         "--no-timings"],
    )
    srow = dict(zip(CSV_COLUMNS, sout[1].split(",")))
    assert srow["mc_mean"] != "" and srow["mc_var"] != "" and srow["e_exact"] != ""


def test_csv_empty_stream_is_header_only():
    spec = spec_for(["expect", "--n", "5", "--alpha", "0.5", "--format", "csv"])
    assert render(spec, []) == [emit_csv_header()]


def test_emit_jsonl_values():
    assert emit_jsonl({"a": True, "b": 3}) == '{"a": true, "b": 3}'
    assert emit_jsonl({"x": 0.1}) == '{"x": 0.10000000000000001}'
    assert emit_jsonl({"f": Fraction(1, 3)}) == '{"f": "1/3"}'
    assert emit_jsonl({"s": "q", "l": [1, 2.5]}) == '{"s": "q", "l": [1, 2.5]}'
    with pytest.raises(ValueError):
        emit_jsonl({"bad": math.nan})
    with pytest.raises(TypeError):
        emit_jsonl({"bad": object()})


def test_emit_csv_row_blank_for_missing():
    line = emit_csv_row({"n": 5, "alpha": 0.5, "seed": 1})
    cells = line.split(",")
    assert len(cells) == len(CSV_COLUMNS)
    assert cells[0] == "5" and cells[-1] == "1"
    assert cells[2] == ""


def test_exit_code_spec_error(capsys):
    code, _, err = run_cli(capsys, ["expect", "--alpha", "0.5"])
    assert code == 2 and err.startswith("error: n:")
    code, _, err = run_cli(capsys, ["expect", "--n", "0", "--alpha", "0.5"])
    assert code == 2
    code, _, err = run_cli(capsys, ["expect", "--n", "9:3", "--alpha", "0.5"])
    assert code == 2 and "out of order" in err
    code, _, err = run_cli(capsys, ["expect", "--n", "5", "--alpha", "1.5"])
    assert code == 2 and "alpha" in err
    code, _, err = run_cli(capsys, ["vfun", "--alpha", "1.0"])
    assert code == 2 and "interior" in err
    code, _, err = run_cli(capsys, ["simulate", "--n", "5", "--alpha", "0.5", "--dev-eps", "0"])
    assert code == 2
    code, _, err = run_cli(capsys, ["expect", "--n", "40", "--alpha", "0.5", "--exact"])
    assert code == 2 and "rational mode" in err
    code, _, err = run_cli(capsys, ["vfun", "--c1-pair", "2,4"])
    assert code == 2 and "coprime" in err
    code, _, err = run_cli(capsys, ["vfun", "--alpha", "0.5", "--c1-x", "100"])
    assert code == 2 and "c1_x" in err
    code, _, err = run_cli(capsys, ["bench", "--suite", "oracle", "--repeat", "0"])
    assert code == 2
    code, _, err = run_cli(capsys, ["expect", "--n", "5", "--alpha", "0.5", "--seed", "-3"])
    assert code == 2 and "seed" in err


def test_exit_code_resource_limit(capsys):
    code, _, err = run_cli(capsys, ["variance", "--n", "25000", "--alpha", "0.5"])
    assert code == 3 and err.startswith("resource limit:")


def test_precedence_cli_env_config(tmp_path, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("seed = 5\ntrials = 33  # comment\ntail-tol = 1e-10\n")
    for var in ("QLCM_SEED", "QLCM_TRIALS", "QLCM_CONFIG"):
        monkeypatch.delenv(var, raising=False)

    base = ["simulate", "--n", "10", "--alpha", "0.5", "--config", str(cfg)]
    s = spec_for(base)
    assert s.seed == 5 and s.trials == 33
    assert s.truncation.beta_tail_tol == 1e-10

    monkeypatch.setenv("QLCM_TRIALS", "44")
    s = spec_for(base)
    assert s.trials == 44 and s.seed == 5  # env beats config, config still fills seed

    s = spec_for(base + ["--trials", "7"])
    assert s.trials == 7  # CLI beats env

    monkeypatch.setenv("QLCM_CONFIG", str(cfg))
    s = spec_for(["simulate", "--n", "10", "--alpha", "0.5"])
    assert s.seed == 5  # config discovered through the environment


def test_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("bogus = 3\n")
    code, _, err = run_cli(
        capsys, ["expect", "--n", "5", "--alpha", "0.5", "--config", str(bad)]
    )
    assert code == 2 and "unknown key" in err

    noeq = tmp_path / "noeq.cfg"
    noeq.write_text("seed 5\n")
    code, _, err = run_cli(
        capsys, ["expect", "--n", "5", "--alpha", "0.5", "--config", str(noeq)]
    )
    assert code == 2 and "key = value" in err

    code, _, err = run_cli(
        capsys, ["expect", "--n", "5", "--alpha", "0.5", "--config", str(tmp_path / "none.cfg")]
    )
    assert code == 2 and "cannot read" in err


def test_simulate_alpha_one_degenerate(capsys):
    code, out, _ = run_cli(
        capsys,
        ["simulate", "--n", "12", "--alpha", "1.0", "--trials", "30", "--no-timings"],
    )
    assert code == 0
    rec = json.loads(out[0])
    assert rec["mc_var"] == 0.0
    assert rec["mc_mean"] == rec["e_exact"]
    assert rec["dev_frac"] == 0.0


def test_expect_exact_mode_agrees_with_enumeration(capsys):
    code, out, _ = run_cli(
        capsys,
        ["expect", "--exact", "--n", "1:12", "--alpha", "1/4,1/3,1/2,3/4", "--no-timings"],
    )
    assert code == 0
    recs = [json.loads(ln) for ln in out]
    assert len(recs) == 48
    for rec in recs:
        assert rec["enum_agrees"] is True
        assert rec["e_exact_rational"] == rec["enum_mean"]


def test_variance_exact_mode_agrees_with_enumeration(capsys):
    code, out, _ = run_cli(
        capsys,
        ["variance", "--exact", "--n", "2:10:2", "--alpha", "1/3", "--no-timings"],
    )
    assert code == 0
    for ln in out:
        rec = json.loads(ln)
        assert rec["enum_agrees"] is True


def test_oracle_check_all_agree(capsys):
    code, out, _ = run_cli(
        capsys,
        ["oracle-check", "--n", "30", "--trials", "25", "--seed", "3", "--no-timings"],
    )
    assert code == 0
    rec = json.loads(out[0])
    assert rec["alpha"] == 0.5  # default membership probability
    assert rec["agree_count"] == 25 and rec["disagree_count"] == 0
    assert rec["all_agree"] is True


def test_vfun_records(capsys):
    code, out, _ = run_cli(
        capsys,
        ["vfun", "--alpha", "0.5", "--c1-pair", "1,1", "--c1-x", "10000", "--no-timings"],
    )
    assert code == 0 and len(out) == 2
    vrec = json.loads(out[0])
    assert abs(vrec["v_alpha"] - 0.0398292) < 1e-6
    assert vrec["v_alpha_error"] > 0.0 and vrec["v_alpha_terms"] > 1000
    assert abs(vrec["dilog_beta"] - 0.5822405264650125) < 1e-12
    crec = json.loads(out[1])
    assert crec["c1_a1"] == 1 and crec["c1_a2"] == 1
    assert abs(crec["c1_value"] - 0.1427) < 1e-3
    assert crec["phi_pair_x"] == 10000
    assert crec["c1_rel_diff"] < 0.01


def test_workers_do_not_change_output(capsys):
    argv = ["simulate", "--n", "500", "--alpha", "0.3", "--trials", "400", "--no-timings"]
    code1, out1, _ = run_cli(capsys, argv + ["--workers", "1"])
    code8, out8, _ = run_cli(capsys, argv + ["--workers", "8"])
    assert code1 == code8 == 0
    assert out1 == out8


def test_bench_smoke(capsys):
    for suite in ("oracle", "valpha"):
        code, out, _ = run_cli(capsys, ["bench", "--suite", suite, "--repeat", "1"])
        assert code == 0
        for ln in out:
            rec = json.loads(ln)
            assert rec["type"] == "bench" and rec["suite"] == suite
            assert rec["runs"] == 1 and rec["median_s"] > 0.0
            assert len(rec["times_s"]) == 1
    # bench ignores csv: output stays json-lines
    code, out, _ = run_cli(capsys, ["bench", "--suite", "oracle", "--repeat", "1",
                                    "--format", "csv"])
    assert code == 0
    assert json.loads(out[0])["type"] == "bench"


def test_bench_variance_sum_scales_quadratically(capsys):
    code, out, _ = run_cli(capsys, ["bench", "--suite", "variance-sum", "--repeat", "3"])
    assert code == 0
    med = {json.loads(ln)["size"]: json.loads(ln)["median_s"] for ln in out}
    exponent = math.log(med[8000] / med[2000]) / math.log(4)
    assert 1.7 <= exponent <= 2.3, f"measured exponent {exponent:.3f}"
