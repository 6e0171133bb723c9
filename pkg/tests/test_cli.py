import json
from pathlib import Path

import numpy as np
import pytest

from pvsizing.cli import main
from pvsizing.profiles import CELLS
from pvsizing.scenarios import synthetic_week
from pvsizing.series import HourlySeries, write_series


def write_config(path: Path, sections: dict) -> Path:
    text = ""
    for name, kv in sections.items():
        text += f"[{name}]\n" + "".join(f"{k} = {v}\n" for k, v in kv.items()) + "\n"
    path.write_text(text)
    return path


@pytest.fixture
def toy_run(tmp_path):
    write_series(tmp_path / "demand.csv", HourlySeries([1, 1, 1, 1]))
    write_series(tmp_path / "cf.csv", HourlySeries([0, 0.5, 1, 0], "dimensionless"))
    write_series(tmp_path / "price.csv", HourlySeries([10, 10, 10, 10], "EUR/MWh"))
    return write_config(tmp_path / "run.ini", {
        "inputs": {"demand": "demand.csv", "capacity_factor": "cf.csv", "price": "price.csv",
                   "horizon": 4},
        "storage": {"eta_c": 1, "eta_d": 1, "dod": 1},
        "search": {"pv_increment": 1, "storage_increment": 1, "year_start": 2019, "year_end": 2019},
        "run": {"out": "out"},
    })


@pytest.fixture
def week_run(tmp_path):
    D, F, P = synthetic_week()
    write_series(tmp_path / "demand.csv", D)
    write_series(tmp_path / "cf.csv", F)
    write_series(tmp_path / "price.csv", P)
    return write_config(tmp_path / "week.ini", {
        "inputs": {"demand": "demand.csv", "capacity_factor": "cf.csv", "price": "price.csv",
                   "horizon": 168},
        "search": {"pv_increment": 10, "storage_increment": 10},
        "run": {"out": "out"},
    })


def read_rows(path):
    return [line.split(",") for line in Path(path).read_text().splitlines()]


def test_design_space_toy(toy_run, capsys):
    assert main(["design-space", "--config", str(toy_run)]) == 0
    rows = read_rows(toy_run.parent / "out" / "design_space.csv")
    assert rows[0] == ["c_pv_mw", "c_s_mwh", "annual_import_mwh", "lcoe_eur_per_mwh"]
    assert [r[:3] for r in rows[1:]] == [["0", "0", "4"], ["1", "0", "2.5"], ["2", "0", "2"], ["2", "1", "1"]]
    assert rows[1][3] == "10"
    assert "design_points 4" in capsys.readouterr().out


def test_design_space_zero_demand(toy_run):
    write_series(toy_run.parent / "zero.csv", HourlySeries([0, 0, 0, 0]))
    assert main(["design-space", "--config", str(toy_run), "--demand", str(toy_run.parent / "zero.csv")]) == 0
    rows = read_rows(toy_run.parent / "out" / "design_space.csv")
    assert rows[1:] == [["0", "0", "0", "0"]]


def test_design_space_trace_dump(toy_run):
    assert main(["design-space", "--config", str(toy_run), "--trace_enabled", "true"]) == 0
    rows = read_rows(toy_run.parent / "out" / "storage_bounds.csv")
    assert rows[0] == ["c_pv_mw", "e_max_mwh", "critical_hours"]
    assert rows[-1] == ["2", "1", "0 1 2 3 4"]


def test_no_daylight_exit_code(toy_run, capsys):
    write_series(toy_run.parent / "dark.csv", HourlySeries([0, 0, 0, 0], "dimensionless"))
    code = main(["design-space", "--config", str(toy_run), "--capacity_factor", str(toy_run.parent / "dark.csv")])
    assert code == 3
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["code"] == 3 and err["error"] == "NoDaylightError"


def test_malformed_row_exit_code(toy_run, capsys):
    (toy_run.parent / "demand.csv").write_text("hour_index,value\n0,1\n1,1\n2,oops\n3,1\n")
    assert main(["design-space", "--config", str(toy_run)]) == 2
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["row"] == 4
    assert err["file"].endswith("demand.csv")
    assert "row" in err["message"] or ":4" in err["message"]


def test_sweep_year_outside_projection(toy_run, capsys):
    assert main(["sweep", "--config", str(toy_run), "--year_end", "2150"]) == 4
    assert json.loads(capsys.readouterr().err)["code"] == 4
    assert not (toy_run.parent / "out" / "sweep.csv").exists()


def test_sweep_single_year(toy_run):
    assert main(["sweep", "--config", str(toy_run)]) == 0
    rows = read_rows(toy_run.parent / "out" / "sweep.csv")
    assert len(rows) == 2 and rows[1][0] == "2019"


def test_sweep_flat_projection_identical_rows(toy_run):
    (toy_run.parent / "flat.csv").write_text("year,a,b,c\n2019,1,1,1\n2100,1,1,1\n")
    code = main(["sweep", "--config", str(toy_run), "--projection", str(toy_run.parent / "flat.csv"),
                 "--year_end", "2025"])
    assert code == 0
    rows = read_rows(toy_run.parent / "out" / "sweep.csv")[1:]
    assert len(rows) == 7
    assert len({tuple(r[1:]) for r in rows}) == 1


def test_sweep_declining_costs_trend(week_run):
    assert main(["sweep", "--config", str(week_run)]) == 0
    rows = read_rows(week_run.parent / "out" / "sweep.csv")[1:]
    c_pv = [float(r[1]) for r in rows]
    share = [float(r[4]) for r in rows]
    assert c_pv == sorted(c_pv) and share == sorted(share, reverse=True)


@pytest.mark.parametrize("command, output", [("design-space", "design_space.csv"), ("sweep", "sweep.csv")])
def test_outputs_byte_identical(week_run, command, output):
    out = week_run.parent / "out"
    blobs = []
    for threads in ("1", "1", "4", "0"):
        assert main([command, "--config", str(week_run), "--threads", threads]) == 0
        blobs.append((out / output).read_bytes())
    assert len(set(blobs)) == 1


def test_print_config_round_trip(week_run, capsys, tmp_path):
    assert main(["design-space", "--config", str(week_run), "--pv_increment", "20", "--print-config"]) == 0
    echoed = tmp_path / "echo" / "echoed.ini"
    echoed.parent.mkdir()
    echoed.write_text(capsys.readouterr().out)
    assert main(["design-space", "--config", str(week_run), "--pv_increment", "20"]) == 0
    first = (week_run.parent / "out" / "design_space.csv").read_bytes()
    (week_run.parent / "out" / "design_space.csv").unlink()
    assert main(["design-space", "--config", str(echoed)]) == 0
    assert (week_run.parent / "out" / "design_space.csv").read_bytes() == first
    capsys.readouterr()
    assert main(["design-space", "--config", str(echoed), "--print-config"]) == 0
    assert capsys.readouterr().out == echoed.read_text()


def test_simulate_trace(toy_run, capsys):
    code = main(["simulate", "--config", str(toy_run), "--c_pv", "2", "--storage_size", "1"])
    assert code == 0
    rows = read_rows(toy_run.parent / "out" / "trace.csv")
    assert rows[0] == ["hour", "demand", "generation", "storage_level", "import", "curtailment"]
    assert [r[4] for r in rows[1:]] == ["1", "0", "0", "0"]
    assert "annual_import_mwh 1" in capsys.readouterr().out


def _synth_inputs(tmp_path, per_class, census):
    with open(tmp_path / "templates.csv", "w") as fh:
        fh.write("class_id,season,day_type," + ",".join(f"v{i}" for i in range(1, 49)) + "\n")
        for cid, kw in per_class.items():
            for season, day in CELLS:
                fh.write(f"{cid},{season},{day}," + ",".join([str(kw)] * 48) + "\n")
    (tmp_path / "calendar.csv").write_text("day_index,season,day_type\n0,winter,weekday\n")
    (tmp_path / "census.txt").write_text(census)
    (tmp_path / "factors.csv").write_text("class_id,factor\n1,0.84\n2,0.72\n")
    return write_config(tmp_path / "synth.ini", {
        "inputs": {"templates": "templates.csv", "calendar": "calendar.csv", "census": "census.txt",
                   "factors": "factors.csv", "horizon": 24},
        "run": {"out": "out"},
    })


def test_synth_demand_constant(tmp_path, capsys):
    cfg = _synth_inputs(tmp_path, {1: 2.0}, "domestic_1 = 1000\n")
    assert main(["synth-demand", "--config", str(cfg)]) == 0
    values = [float(r[1]) for r in read_rows(tmp_path / "out" / "demand.csv")[1:]]
    assert len(values) == 24
    assert values == pytest.approx([2.0 * 0.84] * 24)
    assert "annual_demand_mwh 40.32" in capsys.readouterr().out


def test_synth_demand_table_factors(tmp_path, capsys):
    cfg = _synth_inputs(tmp_path, {1: 1.0, 2: 1.0}, "domestic_1 = 1000\ndomestic_2 = 1000\n")
    assert main(["synth-demand", "--config", str(cfg)]) == 0
    # unscaled annual energy is 24 MWh per class
    assert f"annual_demand_mwh {24 * 0.84 + 24 * 0.72:.6g}" in capsys.readouterr().out


def test_synth_demand_malformed_row(tmp_path, capsys):
    cfg = _synth_inputs(tmp_path, {1: 1.0}, "domestic_1 = 10\n")
    lines = (tmp_path / "templates.csv").read_text().splitlines()
    lines[6] = lines[6].replace(",1.0", ",x", 1)
    (tmp_path / "templates.csv").write_text("\n".join(lines) + "\n")
    assert main(["synth-demand", "--config", str(cfg)]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["row"] == 7


def test_missing_config_file(tmp_path, capsys):
    assert main(["sweep", "--config", str(tmp_path / "nope.ini")]) == 2
    assert "not found" in json.loads(capsys.readouterr().err)["message"]
