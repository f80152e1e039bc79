"""Sweep specification, execution semantics, and figure presets."""

from __future__ import annotations

import math

import numpy as np
import pytest

from magnomech import (
    FIGURE_IDS,
    Axis,
    InvalidSpec,
    MicroscopicDrive,
    SweepSpec,
    UnknownFigure,
    baseline_params,
    contrast_ratio,
    entangle_with_margin,
    figure_preset,
    nonrecip_all,
    run_sweep,
)
from magnomech.params import TWO_PI
from magnomech.sweep import (
    DEFAULT_GRID_POINTS,
    ENTANGLEMENT_QUANTITIES,
    NONRECIP_QUANTITIES,
    STATUS_NONCONVERGED,
    STATUS_OK,
    STATUS_UNSTABLE,
)

BASE = baseline_params()
WB = BASE.omega_b


def small_spec(**kwargs):
    defaults = dict(
        base=BASE.with_updates(delta_n=-1.3 * WB),
        axis1=Axis("delta_B", -0.3 * WB, 0.3 * WB, 5),
    )
    defaults.update(kwargs)
    return SweepSpec(**defaults)


# ---------------------------------------------------------------- validation


def test_axis_validation():
    with pytest.raises(InvalidSpec):
        Axis("kappa_q", 0.0, 1.0, 5).validate()
    with pytest.raises(InvalidSpec):
        Axis("beta", 0.0, 1.0, 1).validate()
    with pytest.raises(InvalidSpec):
        Axis("beta", 0.0, 1.0, 5, scale="log").validate()
    Axis("beta", 0.0, 1.0, 5).validate()  # fine


def test_spec_rejects_contrast_without_pairing():
    with pytest.raises(InvalidSpec):
        small_spec(quantities=("n_nm",)).validate()


def test_spec_rejects_empty_or_unknown_quantities():
    with pytest.raises(InvalidSpec):
        small_spec(quantities=()).validate()
    with pytest.raises(InvalidSpec):
        small_spec(quantities=("e_qq",)).validate()


def test_spec_rejects_duplicate_axis_parameter():
    with pytest.raises(InvalidSpec):
        small_spec(axis2=Axis("delta_B", 0.0, 0.1 * WB, 3)).validate()


def test_spec_rejects_coupling_axis_on_microscopic_drive():
    base = BASE.with_updates(
        drive=MicroscopicDrive(g0=TWO_PI * 0.2, epsilon_l=7.1e14, delta_m_bare=0.9 * WB),
        delta_n=WB,
    )
    spec = SweepSpec(base, Axis("coupling_G", 0.0, TWO_PI * 6e6, 5))
    with pytest.raises(InvalidSpec):
        spec.validate()


def test_ordered_quantities_canonical_order():
    spec = small_spec(
        quantities=("n_nb", "e_nm", "stability_margin", "e_nb"),
        nonrecip_pairing=True,
    )
    assert spec.ordered_quantities() == ("e_nm", "e_nb", "n_nb", "stability_margin")


# ----------------------------------------------------------------- execution


def test_single_point_matches_direct_evaluation():
    spec = small_spec(quantities=("e_nm", "e_mb", "e_nb", "stability_margin"))
    result = run_sweep(spec)
    assert len(result.rows) == 5
    for row in result.rows:
        assert row.status == STATUS_OK
        direct, margin = entangle_with_margin(
            spec.base.with_updates(delta_B=row.axis1)
        )
        assert row.values["e_nm"] == direct.e_nm
        assert row.values["e_mb"] == direct.e_mb
        assert row.values["e_nb"] == direct.e_nb
        assert row.values["stability_margin"] == margin
        assert row.stability_margin == margin


def test_paired_sweep_matches_direct_contrast():
    spec = small_spec(
        axis1=Axis("beta", 0.6 * math.pi, 1.4 * math.pi, 3),
        base=BASE.with_updates(delta_n=-1.3 * WB, delta_B=0.2 * WB),
        quantities=("e_nb", "n_nm", "n_mb", "n_nb"),
        nonrecip_pairing=True,
    )
    result = run_sweep(spec)
    for row in result.rows:
        direct = nonrecip_all(
            spec.base.with_updates(beta=row.axis1), spec.base.delta_B
        )
        assert row.values["n_nm"] == direct.n_nm
        assert row.values["n_mb"] == direct.n_mb
        assert row.values["n_nb"] == direct.n_nb
        # entanglement quantities under pairing report the + branch
        assert row.values["e_nb"] == direct.plus.e_nb
        assert row.values["n_nb"] == pytest.approx(
            contrast_ratio(direct.plus.e_nb, direct.minus.e_nb)
        )


def test_sweep_is_deterministic():
    spec = small_spec()
    r1 = run_sweep(spec)
    r2 = run_sweep(spec)
    assert r1.rows == r2.rows


def test_worker_count_does_not_change_results():
    spec = small_spec(
        axis1=Axis("delta_B", -0.2 * WB, 0.2 * WB, 4),
        quantities=("e_nm", "e_nb"),
    )
    serial = run_sweep(spec, workers=1)
    parallel = run_sweep(spec, workers=2)
    assert serial.rows == parallel.rows


def test_two_axis_rows_are_row_major():
    spec = small_spec(
        axis1=Axis("temperature", 0.0, 0.1, 2),
        axis2=Axis("delta_B", -0.2 * WB, 0.2 * WB, 3),
        quantities=("e_nb",),
    )
    result = run_sweep(spec)
    grid = [(row.axis1, row.axis2) for row in result.rows]
    t_values = [0.0, 0.1]
    b_values = np.linspace(-0.2 * WB, 0.2 * WB, 3)
    expected = [(t, float(b)) for t in t_values for b in b_values]
    assert grid == pytest.approx(expected)


def test_unstable_rows_carry_margin_and_no_values():
    spec = small_spec(
        base=BASE,
        axis1=Axis("delta_n", 0.05 * WB, 0.2 * WB, 7),
        quantities=("e_nm", "stability_margin"),
    )
    result = run_sweep(spec)
    unstable = [r for r in result.rows if r.status == STATUS_UNSTABLE]
    assert unstable  # the gain window around +0.12 omega_b is unstable
    for row in unstable:
        assert row.stability_margin is not None and row.stability_margin >= 0
        assert all(v is None for v in row.values.values())
    # column() surfaces missing values as nan
    col = result.column("e_nm")
    assert np.isnan(col).sum() == len(unstable)


def test_nonconverged_rows_have_no_margin():
    base = BASE.with_updates(
        delta_n=WB,
        drive=MicroscopicDrive(g0=TWO_PI * 2.0, epsilon_l=7.1e14, delta_m_bare=0.9 * WB),
    )
    spec = SweepSpec(base, Axis("beta", 0.0, math.pi, 2), quantities=("e_nm",))
    result = run_sweep(spec)
    assert [r.status for r in result.rows] == [STATUS_NONCONVERGED] * 2
    for row in result.rows:
        assert row.stability_margin is None
        assert row.values["e_nm"] is None


# ------------------------------------------------------------------ presets


def test_every_figure_id_builds_a_valid_spec():
    for figure_id in FIGURE_IDS:
        spec = figure_preset(figure_id, points=5)
        spec.validate()
        assert spec.axis1.count == 5


def test_unknown_figure_id():
    with pytest.raises(UnknownFigure):
        figure_preset("fig9z")


def test_default_grid_density():
    assert figure_preset("fig1a").axis1.count == DEFAULT_GRID_POINTS == 401


def test_fig1_presets():
    spec = figure_preset("fig1a")
    assert spec.axis1.parameter == "delta_n"
    assert spec.axis1.start == pytest.approx(-2 * WB)
    assert spec.axis1.stop == pytest.approx(2 * WB)
    assert spec.quantities == ENTANGLEMENT_QUANTITIES
    assert not spec.nonrecip_pairing
    assert spec.base.delta_m_eff == pytest.approx(WB)

    spec = figure_preset("fig1b")
    assert spec.axis1.parameter == "delta_m_eff"
    assert spec.base.delta_n == pytest.approx(-WB)


def test_fig2_presets():
    spec = figure_preset("fig2a")
    assert spec.axis1.parameter == "beta"
    assert (spec.axis1.start, spec.axis1.stop) == (0.0, pytest.approx(2 * math.pi))
    assert spec.base.delta_n == pytest.approx(-1.3 * WB)

    spec = figure_preset("fig2b")
    assert spec.axis1.parameter == "delta_B"
    assert spec.axis1.start == pytest.approx(-0.5 * WB)
    assert not spec.nonrecip_pairing

    spec = figure_preset("fig2c")
    assert spec.axis1.parameter == "chi"
    assert spec.axis1.stop == pytest.approx(0.9 * BASE.kappa_n)
    assert spec.base.delta_B == pytest.approx(0.3 * WB)
    assert spec.nonrecip_pairing
    assert spec.quantities == NONRECIP_QUANTITIES

    spec = figure_preset("fig2d")
    assert spec.axis1.parameter == "beta"
    assert spec.base.delta_B == pytest.approx(0.2 * WB)
    assert spec.nonrecip_pairing


def test_fig3_presets():
    spec = figure_preset("fig3a")
    assert spec.axis1.parameter == "coupling_G"
    assert spec.axis1.stop == pytest.approx(2 * BASE.coupling_J)
    assert spec.base.delta_B == pytest.approx(0.3 * WB)
    assert not spec.nonrecip_pairing
    for figure_id, quantity in (("fig3b", "n_nm"), ("fig3c", "n_mb"), ("fig3d", "n_nb")):
        spec = figure_preset(figure_id)
        assert spec.quantities == (quantity,)
        assert spec.nonrecip_pairing


def test_fig4_fig5_fig6_presets():
    for figure_id, quantity in (("fig4a", "n_nm"), ("fig4b", "n_mb"), ("fig4c", "n_nb")):
        spec = figure_preset(figure_id)
        assert spec.axis1.parameter == "delta_n"
        assert spec.axis2.parameter == "delta_B"
        assert spec.axis2.count == 3
        np.testing.assert_allclose(
            spec.axis2.values(), [0.1 * WB, 0.2 * WB, 0.3 * WB], rtol=1e-12
        )
        assert spec.quantities == (quantity,)
        assert spec.nonrecip_pairing

    for figure_id in ("fig5a", "fig5b", "fig5c"):
        spec = figure_preset(figure_id)
        assert spec.axis1.parameter == "temperature"
        assert (spec.axis1.start, spec.axis1.stop) == (0.0, 2.0)
        assert spec.nonrecip_pairing
        assert spec.base.delta_n == pytest.approx(-1.3 * WB)

    for figure_id, quantity in (("fig6a", "e_nm"), ("fig6b", "e_mb"), ("fig6c", "e_nb")):
        spec = figure_preset(figure_id)
        assert spec.axis1.parameter == "temperature"
        assert not spec.nonrecip_pairing  # signed branches, no pairing
        np.testing.assert_allclose(
            spec.axis2.values(), [-0.2 * WB, 0.0, 0.2 * WB], atol=1e-9
        )
        assert spec.quantities == (quantity,)


def test_preset_result_records_identity():
    spec = figure_preset("fig2b", points=3)
    result = run_sweep(spec, preset="fig2b")
    assert result.preset == "fig2b"
    assert len(result.rows) == 3
