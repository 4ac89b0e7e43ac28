"""Built-in element models: defaults, topologies, limiting behavior."""

import pytest

from edgeavail import models as md
from edgeavail.models import ElementKind, element_unavailability
from edgeavail.solver import steady_state_gth, unavailability
from edgeavail.statespace import eliminate_vanishing, explore, to_ctmc


def _solve(model):
    c = to_ctmc(eliminate_vanishing(explore(model)), "up")
    return unavailability(c, steady_state_gth(c))


def test_default_catalog_conversions(table):
    # spot-check the mean-time-to-rate conversions (hours base unit)
    assert table.lambda_RH == pytest.approx(1 / (17 * 8760), abs=0)
    assert table.lambda_A == pytest.approx(1 / (104 * 730), abs=0)
    assert table.lambda_FW == pytest.approx(1 / (75 * 24), abs=0)
    assert table.mu_FW == pytest.approx(60 / 65, rel=1e-12)
    assert table.lambda_SW == pytest.approx(1 / 730, abs=0)
    assert table.mu_SW_r == pytest.approx(120.0, abs=0)
    assert table.mu_APP_r == pytest.approx(240.0, abs=0)
    assert table.mu_HW_fo == pytest.approx(20.0, abs=0)
    assert table.mu_cov == pytest.approx(2.0, abs=0)
    assert (table.M, table.K) == (10, 9)
    assert table.C_HW == 0.97 and table.C_APP == 0.8


def test_catalog_validation():
    with pytest.raises(ValueError):
        md.default_table().with_overrides(lambda_SW=0.0)
    with pytest.raises(ValueError):
        md.default_table().with_overrides(C_OS=1.5)
    with pytest.raises(ValueError):
        md.default_table().with_overrides(K=11)
    with pytest.raises(KeyError):
        md.default_table().with_overrides(no_such_rate=1.0)


def test_ru_unavailability_magnitude(table):
    u = _solve(md.build_ru(table))
    assert u == pytest.approx(7.2e-4, rel=2e-3)


def test_ru_perfect_repair_limit(table):
    # mu -> infinity: downtime vanishes
    fast = table.with_overrides(mu_RH=table.mu_RH * 1e6, mu_A=table.mu_A * 1e6,
                                mu_FW=table.mu_FW * 1e6)
    assert _solve(md.build_ru(fast)) < 1e-8


def test_cu_beats_du(table):
    # hardware redundancy helps: same OS/SW stack, protected hardware
    assert _solve(md.build_cu(table)) < _solve(md.build_du(table))


def test_cu_fast_perfect_failover_approaches_software_only_model(table):
    # with instant, always-successful failover the hardware contribution
    # vanishes; compare against the unredundant model with hardware failures
    # effectively disabled (same OS/SW structure and rates)
    fast = table.with_overrides(mu_HW_fo=table.mu_HW_fo * 1e6, C_HW=1.0)
    u_cu = _solve(md.build_cu(fast))
    no_hw = table.with_overrides(lambda_HW=1e-30)
    u_ref = _solve(md.build_du(no_hw))
    assert u_cu == pytest.approx(u_ref, abs=1e-6)


def test_du_full_software_coverage_removes_hard_repair(table):
    g = explore(md.build_du(table.with_overrides(C_SW=1.0)))
    assert all(g.marking(i)["SW_Urep"] == 0 for i in range(g.n_states))


def test_cluster_per_instance_rate_at_unit_settings(table):
    m = md.build_cluster(table, M=1, K=1)
    assert m.parameters["lambda_Hi"] == pytest.approx(table.lambda_HW, abs=0)
    assert m.parameters["lambda_Oi"] == pytest.approx(table.lambda_OS, abs=0)


def test_cluster_alpha_scales_rates(table):
    m = md.build_cluster(table, alpha_H=2.5)
    assert m.parameters["lambda_Hi"] == pytest.approx(
        2.5 * table.lambda_HW * table.M / table.K, rel=1e-15)


def test_cluster_spare_instance_buys_two_orders(table):
    u_none = element_unavailability(ElementKind.CLUSTER_5GC,
                                    table.with_overrides(K=10))
    u_one = element_unavailability(ElementKind.CLUSTER_5GC, table)
    assert u_none / u_one >= 50


def test_cluster_bad_settings_rejected(table):
    with pytest.raises(ValueError):
        md.build_cluster(table, M=3, K=4)


def test_element_unavailability_all_kinds_in_sane_band(table):
    for kind in ElementKind:
        u = element_unavailability(kind, table)
        assert 0.0 < u < 0.1, kind


def test_failure_rate_increase_never_helps(table):
    # bump each failure intensity tenfold; unavailability must not drop
    cases = [
        (ElementKind.RU, "lambda_FW"), (ElementKind.RU, "lambda_RH"),
        (ElementKind.DU, "lambda_HW"), (ElementKind.DU, "lambda_SW"),
        (ElementKind.CU, "lambda_HW"), (ElementKind.MEH, "lambda_APP"),
        (ElementKind.MEH, "lambda_VM"), (ElementKind.CLUSTER_5GC, "lambda_SW"),
        (ElementKind.CLUSTER_5GC, "lambda_HW"),
    ]
    for kind, name in cases:
        base = element_unavailability(kind, table)
        worse = element_unavailability(
            kind, table.with_overrides(**{name: getattr(table, name) * 10}))
        assert worse >= base, (kind, name)


def test_5gc_and_mano_share_the_model(table):
    assert (element_unavailability(ElementKind.CLUSTER_5GC, table)
            == element_unavailability(ElementKind.CLUSTER_MANO, table))


def test_element_unavailability_is_cached_and_reproducible(table):
    first = element_unavailability(ElementKind.DU, table)
    again = element_unavailability(ElementKind.DU, table)
    assert first == again
    element_unavailability.cache_clear()
    assert element_unavailability(ElementKind.DU, table) == first
