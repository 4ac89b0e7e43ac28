"""Sweep runners: row structure, caching, CSV schema, reproducibility."""

import csv
import io

import pytest

from edgeavail import experiments as xp
from edgeavail.faulttree import RedundancyConfig, u_ran, u_sys
from edgeavail.models import ElementKind, element_unavailability


@pytest.fixture(scope="module")
def table():
    from edgeavail.models import default_table
    return default_table()


@pytest.fixture(scope="module")
def table3(table):
    return xp.run_table3(table, jobs=1)


def test_table3_has_36_rows_in_grid_order(table3):
    assert len(table3.rows) == 36
    assert [(r.N_C, r.N_D, r.N_R, r.N_H) for r in table3.rows] == xp.TABLE3_CONFIGS
    assert all(r.M_5gc == 10 and r.K_5gc == 9 for r in table3.rows)


def test_table3_rows_match_direct_closed_form(table, table3):
    us = {k.value: element_unavailability(k, table)
          for k in (ElementKind.RU, ElementKind.DU, ElementKind.CU,
                    ElementKind.MEH, ElementKind.CLUSTER_5GC,
                    ElementKind.CLUSTER_MANO)}
    for row in table3.rows:
        cfg = RedundancyConfig(row.N_C, row.N_D, row.N_R, row.N_H)
        ran = u_ran(us["ru"], us["du"], us["cu"], cfg)
        expected = u_sys(ran, us["5gc"], us["mano"], us["meh"], cfg.N_H)
        assert row.unavailability == expected, row.config


def test_sweeps_are_bit_reproducible(table, table3):
    again = xp.run_table3(table, jobs=1)
    assert [r.unavailability for r in again.rows] == \
           [r.unavailability for r in table3.rows]
    element_unavailability.cache_clear()
    fresh = xp.run_table3(table, jobs=1)
    assert [r.unavailability for r in fresh.rows] == \
           [r.unavailability for r in table3.rows]


def test_csv_schema(table3):
    text = table3.to_csv()
    lines = text.strip().split("\n")
    assert lines[0] == xp.CSV_HEADER
    assert len(lines) == 37
    rows = list(csv.DictReader(io.StringIO(text)))
    for raw, row in zip(rows, table3.rows):
        parsed = float(raw["unavailability"])
        assert parsed == pytest.approx(row.unavailability, rel=1e-6)
        # at least six significant digits survive the format
        assert len(raw["unavailability"].replace(".", "").replace("-", "")
                   .split("e")[0].lstrip("0")) >= 6
        assert raw["N_C"] == str(row.N_C)


def test_cluster_sweep_rows(table):
    result = xp.run_cluster_sweep(table, mk_pairs=[(10, 10), (10, 9), (10, 8)],
                                  jobs=1)
    names = [r.config for r in result.rows]
    assert names[:3] == ["both:(M,K)=(10,10)", "both:(M,K)=(10,9)",
                         "both:(M,K)=(10,8)"]
    assert len(result.rows) == 9  # both, 5gc-only, mano-only
    both = {(r.M_5gc, r.K_5gc): r.unavailability for r in result.rows[:3]}
    # no spare instance is the worst configuration by far
    assert both[(10, 10)] == max(r.unavailability for r in result.rows)
    # varying a single cluster keeps the other at the default (10, 9)
    single = result.rows[3]
    assert (single.M_5gc, single.K_5gc) == (10, 10)
    assert (single.M_mano, single.K_mano) == (10, 9)


def test_redundancy_configs(table):
    result = xp.run_redundancy_configs(table, jobs=1)
    names = [r.config for r in result.rows]
    assert names == list(xp.REDUNDANCY_CONFIG_NAMES)
    by_name = {r.config: r.unavailability for r in result.rows}
    assert by_name["full"] == min(by_name.values())
    assert by_name["no-redun"] == max(by_name.values())
    # access-network or edge-host redundancy alone moves little (within 2x)
    assert by_name["no-redun"] / by_name["ran"] < 2.0
    assert by_name["no-redun"] / by_name["meh"] < 2.0


def test_alpha_sweep_shape_and_monotonicity(table):
    result = xp.run_alpha_sweep(table, targets="both", jobs=1)
    assert len(result.rows) == 15
    for start in (0, 5, 10):
        curve = [r.unavailability for r in result.rows[start:start + 5]]
        assert all(a <= b + 1e-15 for a, b in zip(curve, curve[1:]))
    # the identity multiplier reproduces the fully-redundant baseline
    baseline = xp.run_redundancy_configs(table, jobs=1).rows[-1].unavailability
    for offset in (2, 7, 12):  # alpha = 1 position on each curve
        assert result.rows[offset].unavailability == baseline


def test_alpha_sweep_single_target(table):
    result = xp.run_alpha_sweep(table, targets="mano", values=(0.5, 1.0), jobs=1)
    assert all("targets=mano" in r.config for r in result.rows)
    assert result.rows[0].alpha_H == 0.5 and result.rows[0].alpha_O == 1.0
    # scaling only one of two identical clusters moves U less than scaling both
    both = xp.run_alpha_sweep(table, targets="both", values=(0.5, 1.0), jobs=1)
    assert (result.rows[0].unavailability > both.rows[0].unavailability)


def test_alpha_values_must_be_positive(table):
    with pytest.raises(ValueError):
        xp.run_alpha_sweep(table, values=(0.0, 1.0))
    with pytest.raises(ValueError):
        xp.run_alpha_sweep(table, targets="everything")


def test_parallel_jobs_preserve_order_and_values(table):
    serial = xp.run_cluster_sweep(table, mk_pairs=[(10, 10), (10, 9)], jobs=1)
    parallel = xp.run_cluster_sweep(table, mk_pairs=[(10, 10), (10, 9)], jobs=2)
    assert [r.config for r in serial.rows] == [r.config for r in parallel.rows]
    assert [r.unavailability for r in serial.rows] == \
           [r.unavailability for r in parallel.rows]


def test_metadata(table3, table):
    assert table3.method == "gth"
    assert table3.table_hash == xp.table_hash(table)
    assert table3.timestamp  # iso stamp present


def test_svg_chart(tmp_path):
    series = {"a": [(1, 1e-4), (2, 2e-4)], "b": [(1, 3e-4), (2, 1e-4)]}
    path = tmp_path / "chart.svg"
    text = xp.svg_line_chart(series, path, title="demo")
    assert path.read_text() == text
    assert text.startswith("<svg") and text.endswith("</svg>")
    assert text.count("<path") == 2
