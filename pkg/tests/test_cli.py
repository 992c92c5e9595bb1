"""Command-line interface: subcommands, CSV output, config precedence."""

import math

import pytest

from qread.cli import CSV_HEADER, _parse_range, main


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_range_forms():
    assert _parse_range("0.5") == [0.5]
    assert _parse_range("0.1,0.2,0.3") == [0.1, 0.2, 0.3]
    assert _parse_range("0:1:5") == [0.0, 0.25, 0.5, 0.75, 1.0]
    with pytest.raises(ValueError):
        _parse_range("0:1")
    with pytest.raises(ValueError):
        _parse_range("0:1:0")


def test_gain_labeled_output(capsys):
    code, out, _ = run(
        ["gain", "--m", "10", "--ns", "1", "--r0", "0.2", "--r1", "0.8",
         "--nb", "0.01"],
        capsys,
    )
    assert code == 0
    fields = dict(
        line.split("=") for line in out.strip().splitlines()
    )
    values = {k.strip(): float(v) for k, v in fields.items()}
    assert values["G"] == pytest.approx(3.4e-2, rel=0.05)
    assert 0.0 < values["s_opt"] <= 1.0


def test_gain_missing_flag(capsys):
    code, _, err = run(["gain", "--m", "1", "--ns", "1", "--r0", "0.2",
                        "--r1", "0.8"], capsys)
    assert code == 2
    assert "--nb" in err


def test_gain_invalid_cell_names_flags(capsys):
    code, _, err = run(
        ["gain", "--m", "1", "--ns", "1", "--r0", "0.9", "--r1", "0.5",
         "--nb", "0"],
        capsys,
    )
    assert code == 2
    assert "--r0" in err


def test_table_reference_gains(capsys):
    code, out, _ = run(["table"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == CSV_HEADER
    gains = [float(line.split(",")[-1]) for line in lines[1:]]
    targets = [6.2e-3, 3.4e-2, 1.2e-3, 5.9e-2, 0.225, 0.9906]
    assert len(gains) == 6
    for got, want in zip(gains, targets):
        assert got == pytest.approx(want, rel=0.05)


def test_table_byte_determinism(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        code, _, _ = run(["table", "--out", str(p)], capsys)
        assert code == 0
    blobs = [p.read_bytes() for p in paths]
    assert blobs[0] == blobs[1]
    assert blobs[0].endswith(b"\n")
    assert b"\r" not in blobs[0]


def test_gain_out_writes_csv(tmp_path, capsys):
    out = tmp_path / "row.csv"
    code, _, _ = run(
        ["gain", "--m", "1", "--ns", "3.5", "--r0", "0.5", "--r1", "0.95",
         "--nb", "0.01", "--out", str(out)],
        capsys,
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 2
    assert float(lines[1].split(",")[0]) == 1


def test_config_supplies_and_flags_override(tmp_path, capsys):
    cfg = tmp_path / "point.cfg"
    cfg.write_text(
        "m = 10\nns = 1\nr0 = 0.2\nr1 = 0.8\nnb = 0.01  # bath\n"
    )
    code, out_cfg, _ = run(["gain", "--config", str(cfg)], capsys)
    assert code == 0
    # an explicit flag must win over the file
    code, out_flag, _ = run(
        ["gain", "--config", str(cfg), "--nb", "1.0"], capsys
    )
    assert code == 0
    get = lambda text, key: float(
        [ln for ln in text.splitlines() if ln.startswith(key)][0].split("=")[1]
    )
    assert get(out_cfg, "N_B") == 0.01
    assert get(out_flag, "N_B") == 1.0
    assert get(out_cfg, "G") != get(out_flag, "G")


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("momentum = 3\n")
    code, _, err = run(["gain", "--config", str(cfg)], capsys)
    assert code == 2
    assert "momentum" in err


def test_critical_curve_rows(capsys):
    code, out, _ = run(
        ["critical-curve", "--ns", "1", "--r0", "0,0.5,0.99", "--jobs", "1"],
        capsys,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "N_S,r0,M_crit,N_B_worst"
    m_crits = [float(line.split(",")[2]) for line in lines[1:]]
    assert m_crits == [2.0, 1.0, 11.0]


def test_critical_curve_rejects_bad_r0(capsys):
    code, _, err = run(
        ["critical-curve", "--ns", "1", "--r0", "1.0", "--jobs", "1"], capsys
    )
    assert code == 2
    assert "--r0" in err


def test_critical_energy_rows_and_inf_encoding(capsys):
    code, out, _ = run(
        ["critical-energy", "--ns", "1,2,2.6", "--jobs", "1"], capsys
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "N_S,M_exact,M_tilde,ceil_M_tilde"
    rows = [line.split(",") for line in lines[1:]]
    assert float(rows[0][1]) == 2.0
    assert math.ceil(float(rows[0][2])) == 2
    assert float(rows[1][1]) == 4.0
    assert rows[2][1] == "inf"
    assert rows[2][2] == "inf"


def test_critical_energy_rejects_low_ns(capsys):
    code, _, err = run(["critical-energy", "--ns", "0.5", "--jobs", "1"], capsys)
    assert code == 2
    assert "--ns" in err


def test_verify_cutoff_too_small(capsys):
    code, out, _ = run(["verify", "--cutoff", "8"], capsys)
    assert code == 2
    assert "FAIL" in out
