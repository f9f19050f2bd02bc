import numpy as np
import pandas as pd
import pytest

from mloplots import (
    MissingColumnsError,
    delay_bands,
    grouped_delay_bars,
    occupancy_bars,
)
from mloplots.tables import mean_over_cells


def csv_means(path, columns):
    table = pd.read_csv(path)
    return mean_over_cells(table, columns)


def test_delay_bands_series_match_csv(fig2_csv):
    fig, data = delay_bands(str(fig2_csv))
    cells = csv_means(fig2_csv, ["delay_p50_us", "delay_p99_us", "agg_p99"])
    assert set(data) == set(cells["scheme"].unique())
    for scheme, series in data.items():
        rows = cells[cells["scheme"] == scheme].sort_values("load_gbps")
        assert np.allclose(series["p50_us"], rows["delay_p50_us"])
        assert np.allclose(series["p99_us"], rows["delay_p99_us"])
        assert np.allclose(series["agg_p99"], rows["agg_p99"])
        # band invariant: lower edge never above upper edge
        assert (series["p50_us"] <= series["p99_us"]).all()


def test_delay_bands_scheme_filter_and_unknown_scheme(fig2_csv, tmp_path):
    _fig, data = delay_bands(str(fig2_csv), schemes=["SL"])
    assert list(data) == ["SL"]
    # unknown scheme names pass through and are plotted verbatim
    table = pd.read_csv(fig2_csv)
    table["scheme"] = "mystery-mode"
    path = tmp_path / "renamed.csv"
    table.to_csv(path, index=False)
    _fig, data = delay_bands(str(path))
    assert list(data) == ["mystery-mode"]


def test_delay_bands_single_load_degenerates_to_segment(fig4_csv, tmp_path):
    table = pd.read_csv(fig4_csv)
    one_load = table[table["load_gbps"] == 2.5]
    path = tmp_path / "single.csv"
    one_load.to_csv(path, index=False)
    _fig, data = delay_bands(str(path))
    for series in data.values():
        assert len(series["load_gbps"]) == 1  # vertical segment, no span


def test_delay_bands_missing_columns_named(tmp_path):
    path = tmp_path / "bad.csv"
    pd.DataFrame({"scheme": ["SL"], "bss": [0], "load_gbps": [0.1], "seed": [1]}).to_csv(
        path, index=False
    )
    with pytest.raises(MissingColumnsError) as err:
        delay_bands(str(path))
    assert "delay_p50_us" in str(err.value)


def test_empty_csv_is_an_error(tmp_path):
    path = tmp_path / "empty.csv"
    pd.DataFrame(
        columns=["scheme", "bss", "load_gbps", "seed", "delay_p50_us", "delay_p95_us",
                 "delay_p99_us", "agg_p99"]
    ).to_csv(path, index=False)
    with pytest.raises(ValueError):
        delay_bands(str(path))


def test_occupancy_stacks_sum_to_one(fig4_csv):
    _fig, data = occupancy_bars(str(fig4_csv))
    assert data, "no occupancy bars drawn"
    for (scheme, load), stack in data.items():
        assert stack.sum() == pytest.approx(1.0, abs=1e-6), (scheme, load)


def test_occupancy_sl_never_uses_two_links(fig4_csv):
    _fig, data = occupancy_bars(str(fig4_csv))
    for (scheme, _load), stack in data.items():
        if scheme == "SL":
            assert np.all(stack[2:] == 0.0)


def test_occupancy_missing_columns_named(tmp_path):
    path = tmp_path / "noocc.csv"
    pd.DataFrame(
        {
            "scheme": ["SL"],
            "bss": [0],
            "load_gbps": [0.1],
            "seed": [1],
            "delay_p50_us": [1.0],
        }
    ).to_csv(path, index=False)
    with pytest.raises(MissingColumnsError) as err:
        occupancy_bars(str(path))
    assert "occ_0" in str(err.value)


def test_grouped_delay_values_and_ordering_invariant(fig5_csv):
    _fig, data = grouped_delay_bars(str(fig5_csv))
    cells = csv_means(fig5_csv, ["delay_p50_us", "delay_p95_us", "delay_p99_us"])
    for (scheme, load), values in data.items():
        row = cells[(cells["scheme"] == scheme) & (cells["load_gbps"] == load)]
        assert np.allclose(values, row[["delay_p50_us", "delay_p95_us", "delay_p99_us"]].iloc[0])
        p50, p95, p99 = values
        assert p50 <= p95 <= p99
