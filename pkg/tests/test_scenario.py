import json
import os
import subprocess
import sys

import pytest
import yaml

from mlosim import (
    Mode,
    Scenario,
    ScenarioError,
    load_scenario,
    preset,
    preset_with_load,
    run,
    save_scenario,
)
from mlosim.presets import DEFAULT_LOAD_GRID_GBPS
from mlosim.scenario import BssSpec
from mlosim.mld import MldConfig
from mlosim.sweep import SweepSpec, sweep, sweep_rows, write_csv


def test_preset_fig2_single_isolated_bss():
    schemes = preset("fig2")
    assert set(schemes) == {"SL", "STR EMLMR:2", "STR EMLMR:4"}
    for scenario in schemes.values():
        assert len(scenario.bss) == 1
    assert len(schemes["SL"].channels) == 1
    assert len(schemes["STR EMLMR:4"].channels) == 4


def test_preset_fig4_sl_is_orthogonal_exclusive():
    sl = preset("fig4")["SL"]
    assert len(sl.bss) == 4
    used = [spec.mld.links[0][1] for spec in sl.bss]
    assert sorted(used) == [0, 1, 2, 3]  # one exclusive channel each, zero shared
    assert all(len(spec.mld.links) == 1 for spec in sl.bss)


def test_preset_fig4_emlmr2_pairs_share_channel_pairs():
    e2 = preset("fig4")["STR EMLMR:2"]
    maps = [tuple(ch for _r, ch in spec.mld.links) for spec in e2.bss]
    assert maps == [(0, 1), (0, 1), (2, 3), (2, 3)]


def test_preset_fig4_emlmr4_all_shared():
    e4 = preset("fig4")["STR EMLMR:4"]
    for spec in e4.bss:
        assert tuple(ch for _r, ch in spec.mld.links) == (0, 1, 2, 3)


def test_preset_fig5_hybrid_needs_five_channels():
    fig5 = preset("fig5")
    hybrid = fig5["STR EMLMR:1+1"]
    assert len(hybrid.channels) == 5
    for i, spec in enumerate(hybrid.bss):
        assert spec.mld.mode is Mode.HYBRID_1P1
        assert spec.mld.links[0][1] == i  # own reserved channel first
        assert spec.mld.links[1][1] == 4  # the shared channel
    assert len(fig5["STR EMLMR:5"].channels) == 5
    assert set(fig5) == {"SL", "STR EMLMR:2", "EMLSR:2", "STR EMLMR:1+1", "STR EMLMR:5"}


def test_unknown_preset_rejected():
    with pytest.raises(ValueError):
        preset("fig9")


def test_scenario_roundtrip_is_identity(tmp_path):
    for scheme, scenario in preset_with_load("fig5", 1.0e9).items():
        path = tmp_path / "sc.yaml"
        save_scenario(scenario, str(path))
        again = load_scenario(str(path))
        assert again == scenario
        # parse -> serialize -> parse once more
        save_scenario(again, str(path))
        assert load_scenario(str(path)) == again


def test_validation_reports_offending_bss():
    scenario = Scenario(
        name="bad",
        channels=(0,),
        bss=(
            BssSpec(MldConfig(Mode.SL, ((0, 0),)), load_bps=1e6),
            BssSpec(MldConfig(Mode.SL, ((0, 7),)), load_bps=1e6),  # unknown channel
        ),
    )
    with pytest.raises(ScenarioError) as err:
        scenario.validated()
    assert "bss[1]" in str(err.value)
    assert "channel 7" in str(err.value)


def test_validation_missing_load():
    scenario = Scenario(name="x", channels=(0,), bss=(BssSpec(MldConfig(Mode.SL, ((0, 0),))),))
    errors = scenario.validate()
    assert any("load" in e for e in errors)


def test_hybrid_reserved_channel_must_be_exclusive():
    scenario = Scenario(
        name="bad-hybrid",
        channels=(0, 1, 2),
        bss=(
            BssSpec(MldConfig(Mode.HYBRID_1P1, ((0, 0), (1, 2))), load_bps=1e6),
            BssSpec(MldConfig(Mode.STR_EMLMR, ((0, 0), (1, 1))), load_bps=1e6),  # uses 0
        ),
    )
    errors = scenario.validate()
    assert any("reserved" in e for e in errors)


def test_same_seed_identical_reports():
    scenario = preset_with_load("fig2", 0.3e9, duration_s=2.0)["STR EMLMR:2"]
    a = run(scenario, seed=7).to_dict(include_samples=True)
    b = run(scenario, seed=7).to_dict(include_samples=True)
    assert a == b


def test_sweep_cross_product_and_row_count():
    schemes = preset("fig2", duration_s=0.5)
    spec = SweepSpec(
        scenarios=schemes,
        loads_bps=tuple(x * 1e9 for x in (0.1, 0.5, 1.0, 2.5)),
        seeds=(1, 2, 3),
    )
    results = sweep(spec)
    assert len(results) == 36  # 4 loads x 3 seeds x 3 schemes
    assert all(r.error is None for r in results)
    rows = sweep_rows(results)
    assert len(rows) == 36  # single-BSS preset: one row per cell
    keys = [(r["scheme"], r["load_gbps"], r["seed"]) for r in rows]
    assert keys == sorted(keys, key=lambda k: (list(schemes).index(k[0]), k[1], k[2]))


def test_sweep_parallel_matches_serial():
    schemes = {"SL": preset("fig2", duration_s=0.5)["SL"]}
    spec = SweepSpec(scenarios=schemes, loads_bps=(0.2e9, 0.4e9), seeds=(1, 2))
    serial = sweep_rows(sweep(spec, jobs=1))
    parallel = sweep_rows(sweep(spec, jobs=2))
    assert serial == parallel


def test_csv_export_columns(tmp_path):
    schemes = {"STR EMLMR:2": preset("fig2", duration_s=0.5)["STR EMLMR:2"]}
    spec = SweepSpec(scenarios=schemes, loads_bps=(0.2e9,), seeds=(1,))
    rows = sweep_rows(sweep(spec))
    path = tmp_path / "out.csv"
    write_csv(rows, str(path))
    header = path.read_text().splitlines()[0].split(",")
    for col in (
        "scheme",
        "bss",
        "load_gbps",
        "seed",
        "delay_p50_us",
        "delay_p95_us",
        "delay_p99_us",
        "delay_mean_us",
        "throughput_bps",
        "agg_p50",
        "agg_p99",
        "occ_0",
        "occ_1",
        "occ_2",
        "starvation_frac",
        "drops",
        "saturated",
    ):
        assert col in header


CLI = [sys.executable, "-m", "mlosim.cli"]


def test_cli_run_and_formats(tmp_path):
    scenario = preset_with_load("fig2", 0.2e9, duration_s=0.5)["SL"]
    sc_path = tmp_path / "sl.yaml"
    save_scenario(scenario, str(sc_path))
    out = tmp_path / "out"
    proc = subprocess.run(
        CLI + ["run", str(sc_path), "--seed", "3", "--out", str(out), "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    report = json.loads((out / "SL_seed3.json").read_text())
    assert report["seed"] == 3
    assert report["scenario"]["total_load_bps"] == 0.2e9  # full config echoed
    proc = subprocess.run(
        CLI + ["run", str(sc_path), "--out", str(out)], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert (out / "SL_seed1.csv").exists()


def test_cli_validation_failure_exit_code(tmp_path):
    bad = tmp_path / "bad.yaml"
    scenario = preset_with_load("fig2", 0.2e9)["SL"]
    data = scenario.to_dict()
    data["bss"][0]["links"] = [[0, 9]]  # unknown channel
    bad.write_text(yaml.safe_dump(data))
    proc = subprocess.run(CLI + ["run", str(bad)], capture_output=True, text=True)
    assert proc.returncode == 2
    assert "channel 9" in proc.stderr


def test_cli_preset_sweep(tmp_path):
    out = tmp_path / "sweepout"
    proc = subprocess.run(
        CLI
        + [
            "preset",
            "fig2",
            "--load-grid",
            "0.2,0.4",
            "--seeds",
            "1",
            "--duration",
            "0.5",
            "--out",
            str(out),
            "--format",
            "csv",
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    lines = (out / "fig2_sweep.csv").read_text().splitlines()
    assert len(lines) == 1 + 2 * 1 * 3  # header + loads x seeds x schemes


def test_cli_sweep_spec_file(tmp_path):
    spec_path = tmp_path / "spec.yaml"
    spec_path.write_text(
        yaml.safe_dump(
            {
                "preset": "fig2",
                "loads_gbps": [0.2],
                "seeds": [1],
                "duration_s": 0.5,
            }
        )
    )
    out = tmp_path / "out"
    proc = subprocess.run(
        CLI + ["sweep", str(spec_path), "--out", str(out)], capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    assert (out / "spec_results.csv").exists()


def test_default_load_grid_matches_documented_values():
    assert DEFAULT_LOAD_GRID_GBPS == (0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5)


def test_checked_in_scenario_files_parse_and_match_presets():
    repo = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    single = load_scenario(os.path.join(repo, "scenarios", "single_bss_emlmr2.yaml"))
    assert single == preset("fig2")["STR EMLMR:2"].with_total_load(0.5e9)
    for name in ("fig2", "fig4", "fig5"):
        with open(os.path.join(repo, "scenarios", f"{name}_sweep.yaml")) as fh:
            spec = yaml.safe_load(fh)
        assert spec["preset"] == name
        assert tuple(spec["loads_gbps"]) == DEFAULT_LOAD_GRID_GBPS
