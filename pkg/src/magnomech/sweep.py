"""Grid sweeps over model parameters and named per-figure presets.

A sweep evaluates entangle_all (or nonrecip_all when Barnett-shift pairing
is on) over a 1-D or 2-D linear grid. Rows are emitted in row-major order
over axis1 x axis2 regardless of worker scheduling, and unstable or
non-converged points carry missing values, never fabricated zeros.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidSpec, NonConvergence, UnknownFigure, Unstable
from .gaussian import entangle_with_margin, nonrecip_with_margin
from .params import EffectiveDrive, SystemParams, baseline_params

# parameters a sweep axis may address
AXIS_FIELDS = (
    "delta_n",
    "delta_m_eff",
    "delta_B",
    "chi",
    "beta",
    "coupling_G",
    "temperature",
)

# canonical column order for requested quantities
QUANTITIES = ("e_nm", "e_mb", "e_nb", "n_nm", "n_mb", "n_nb", "stability_margin")

ENTANGLEMENT_QUANTITIES = ("e_nm", "e_mb", "e_nb")
NONRECIP_QUANTITIES = ("n_nm", "n_mb", "n_nb")

DEFAULT_GRID_POINTS = 401

STATUS_OK = "ok"
STATUS_UNSTABLE = "unstable"
STATUS_NONCONVERGED = "nonconverged"


@dataclass(frozen=True)
class Axis:
    """One linearly spaced sweep axis over a SystemParams field."""

    parameter: str
    start: float
    stop: float
    count: int
    scale: str = "linear"

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    def validate(self):
        if self.parameter not in AXIS_FIELDS:
            raise InvalidSpec(
                f"unknown sweep parameter {self.parameter!r}; "
                f"valid: {', '.join(AXIS_FIELDS)}"
            )
        if self.count < 2:
            raise InvalidSpec("axis count must be >= 2")
        if self.scale != "linear":
            raise InvalidSpec(f"unsupported axis scale {self.scale!r}")


@dataclass(frozen=True)
class SweepSpec:
    """Sweep description: baseline point, axes, quantities, pairing flag."""

    base: SystemParams
    axis1: Axis
    axis2: Axis | None = None
    quantities: tuple[str, ...] = ENTANGLEMENT_QUANTITIES
    nonrecip_pairing: bool = False

    def validate(self):
        self.axis1.validate()
        if self.axis2 is not None:
            self.axis2.validate()
        if not self.quantities:
            raise InvalidSpec("quantity set must not be empty")
        for q in self.quantities:
            if q not in QUANTITIES:
                raise InvalidSpec(f"unknown quantity {q!r}; valid: {', '.join(QUANTITIES)}")
        if not self.nonrecip_pairing:
            bad = [q for q in self.quantities if q in NONRECIP_QUANTITIES]
            if bad:
                raise InvalidSpec(
                    f"quantities {bad} require nonrecip_pairing"
                )
        swept = {self.axis1.parameter}
        if self.axis2 is not None:
            if self.axis2.parameter in swept:
                raise InvalidSpec("axis2 must sweep a different parameter than axis1")
        for axis in (self.axis1, self.axis2):
            if axis is not None and axis.parameter == "coupling_G":
                if not isinstance(self.base.drive, EffectiveDrive):
                    raise InvalidSpec(
                        "sweeping coupling_G requires an effective drive baseline"
                    )

    def ordered_quantities(self) -> tuple[str, ...]:
        return tuple(q for q in QUANTITIES if q in self.quantities)


@dataclass(frozen=True)
class SweepRow:
    """One grid point: axis values, status, margin, quantity values."""

    axis1: float
    axis2: float | None
    status: str
    stability_margin: float | None
    values: dict[str, float | None]


@dataclass(frozen=True)
class SweepResult:
    """Ordered grid rows plus the spec that produced them."""

    spec: SweepSpec
    rows: tuple[SweepRow, ...]
    preset: str | None = None

    def column(self, name: str) -> np.ndarray:
        """One quantity as a float array with nan at missing values."""
        return np.array(
            [math.nan if r.values.get(name) is None else r.values[name] for r in self.rows]
        )

    def axis1_values(self) -> np.ndarray:
        return np.array([r.axis1 for r in self.rows])


def _apply_axis(params: SystemParams, parameter: str, value: float) -> SystemParams:
    if parameter == "coupling_G":
        return replace(params, drive=EffectiveDrive(coupling_G=value))
    return params.with_updates(**{parameter: value})


def _evaluate_point(spec: SweepSpec, axis1_value: float, axis2_value: float | None) -> SweepRow:
    params = _apply_axis(spec.base, spec.axis1.parameter, axis1_value)
    if spec.axis2 is not None:
        params = _apply_axis(params, spec.axis2.parameter, axis2_value)

    wanted = spec.ordered_quantities()
    values: dict[str, float | None] = {q: None for q in wanted}

    try:
        if spec.nonrecip_pairing:
            result, margin = nonrecip_with_margin(params, params.delta_B)
            for q in wanted:
                if q == "stability_margin":
                    values[q] = margin
                elif q in NONRECIP_QUANTITIES:
                    values[q] = result.contrast(q[2:])
                else:
                    values[q] = result.plus.negativity(q[2:])
        else:
            result, margin = entangle_with_margin(params)
            for q in wanted:
                if q == "stability_margin":
                    values[q] = margin
                else:
                    values[q] = result.negativity(q[2:])
        return SweepRow(axis1_value, axis2_value, STATUS_OK, margin, values)
    except Unstable as exc:
        empty = {q: None for q in wanted}
        return SweepRow(axis1_value, axis2_value, STATUS_UNSTABLE, exc.margin, empty)
    except NonConvergence:
        empty = {q: None for q in wanted}
        return SweepRow(axis1_value, axis2_value, STATUS_NONCONVERGED, None, empty)


def _evaluate_indexed(task) -> tuple[int, SweepRow]:
    index, spec, a1, a2 = task
    return index, _evaluate_point(spec, a1, a2)


def run_sweep(spec: SweepSpec, workers: int = 1, preset: str | None = None) -> SweepResult:
    """Evaluate every grid point and assemble rows in row-major order.

    ``workers`` > 1 distributes points over a process pool; output ordering
    and content are identical for any worker count.
    """
    spec.validate()
    axis1_values = spec.axis1.values()
    axis2_values = spec.axis2.values() if spec.axis2 is not None else [None]

    tasks = []
    index = 0
    for a1 in axis1_values:
        for a2 in axis2_values:
            tasks.append((index, spec, float(a1), None if a2 is None else float(a2)))
            index += 1

    rows: list[SweepRow | None] = [None] * len(tasks)
    if workers <= 1:
        for task in tasks:
            i, row = _evaluate_indexed(task)
            rows[i] = row
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for i, row in pool.map(_evaluate_indexed, tasks, chunksize=16):
                rows[i] = row
    return SweepResult(spec=spec, rows=tuple(rows), preset=preset)


FIGURE_IDS = (
    "fig1a", "fig1b",
    "fig2a", "fig2b", "fig2c", "fig2d",
    "fig3a", "fig3b", "fig3c", "fig3d",
    "fig4a", "fig4b", "fig4c",
    "fig5a", "fig5b", "fig5c",
    "fig6a", "fig6b", "fig6c",
)


def figure_preset(figure_id: str, points: int = DEFAULT_GRID_POINTS) -> SweepSpec:
    """Documented sweep preset for one figure panel.

    Baseline: omega_b/2pi = 10 MHz, kappa_n = kappa_m = 2pi x 1 MHz, gamma_b
    = 2pi x 100 Hz, J/2pi = 3.2 MHz, G/2pi = 4.8 MHz, T = 10 mK, chi = 0.6
    kappa_n, beta = pi. Panel-specific detunings, Barnett shifts, and axis
    ranges that the figures do not state numerically are reconstructions,
    pinned here and overridable through the config layer:

    - fig1a sweeps delta_n at delta_m_eff = omega_b; fig1b sweeps the
      effective magnon detuning at delta_n = -omega_b; both over +-2 omega_b.
    - fig2* run at delta_n = -1.3 omega_b. fig2a sweeps beta in [0, 2 pi];
      fig2b sweeps delta_B in [-0.5, 0.5] omega_b; fig2c sweeps chi in
      [0, 0.9 kappa_n] at |delta_B| = 0.3 omega_b (paired); fig2d sweeps
      beta in [0, 2 pi] at |delta_B| = 0.2 omega_b (paired).
    - fig3* sweep coupling_G in [0, 2 J] at delta_n = -1.3 omega_b and
      delta_B = +0.3 omega_b: fig3a entanglement (unpaired), fig3b/c/d one
      contrast ratio each (paired).
    - fig4a/b/c sweep delta_n over +-2 omega_b with |delta_B| families
      {0.1, 0.2, 0.3} omega_b on axis2 (paired), one contrast each.
    - fig5a/b/c sweep temperature in [0, 2] K at delta_n = -1.3 omega_b with
      the same |delta_B| families (paired), one contrast each.
    - fig6a/b/c sweep temperature in [0, 2] K at delta_n = -1.3 omega_b with
      SIGNED delta_B in {-0.2, 0, +0.2} omega_b on axis2 (unpaired), one
      negativity each.
    """
    if figure_id not in FIGURE_IDS:
        raise UnknownFigure(f"unknown figure id {figure_id!r}")

    base = baseline_params()
    wb = base.omega_b
    if figure_id.startswith(("fig2", "fig3", "fig5", "fig6")):
        base = base.with_updates(delta_n=-1.3 * wb)

    def d_axis(parameter, lo, hi, count=points):
        return Axis(parameter, lo, hi, count)

    if figure_id == "fig1a":
        return SweepSpec(base, d_axis("delta_n", -2 * wb, 2 * wb))
    if figure_id == "fig1b":
        return SweepSpec(base, d_axis("delta_m_eff", -2 * wb, 2 * wb))
    if figure_id == "fig2a":
        return SweepSpec(base, d_axis("beta", 0.0, 2 * math.pi))
    if figure_id == "fig2b":
        return SweepSpec(base, d_axis("delta_B", -0.5 * wb, 0.5 * wb))
    if figure_id == "fig2c":
        spec_base = base.with_updates(delta_B=0.3 * wb)
        return SweepSpec(
            spec_base,
            d_axis("chi", 0.0, 0.9 * base.kappa_n),
            quantities=NONRECIP_QUANTITIES,
            nonrecip_pairing=True,
        )
    if figure_id == "fig2d":
        spec_base = base.with_updates(delta_B=0.2 * wb)
        return SweepSpec(
            spec_base,
            d_axis("beta", 0.0, 2 * math.pi),
            quantities=NONRECIP_QUANTITIES,
            nonrecip_pairing=True,
        )
    if figure_id.startswith("fig3"):
        spec_base = base.with_updates(delta_B=0.3 * wb)
        axis = d_axis("coupling_G", 0.0, 2 * base.coupling_J)
        if figure_id == "fig3a":
            return SweepSpec(spec_base, axis)
        pair = {"fig3b": "n_nm", "fig3c": "n_mb", "fig3d": "n_nb"}[figure_id]
        return SweepSpec(spec_base, axis, quantities=(pair,), nonrecip_pairing=True)
    if figure_id.startswith("fig4"):
        pair = {"fig4a": "n_nm", "fig4b": "n_mb", "fig4c": "n_nb"}[figure_id]
        return SweepSpec(
            baseline_params(),
            d_axis("delta_n", -2 * wb, 2 * wb),
            axis2=Axis("delta_B", 0.1 * wb, 0.3 * wb, 3),
            quantities=(pair,),
            nonrecip_pairing=True,
        )
    if figure_id.startswith("fig5"):
        pair = {"fig5a": "n_nm", "fig5b": "n_mb", "fig5c": "n_nb"}[figure_id]
        return SweepSpec(
            base,
            d_axis("temperature", 0.0, 2.0),
            axis2=Axis("delta_B", 0.1 * wb, 0.3 * wb, 3),
            quantities=(pair,),
            nonrecip_pairing=True,
        )
    # fig6a/b/c
    quantity = {"fig6a": "e_nm", "fig6b": "e_mb", "fig6c": "e_nb"}[figure_id]
    return SweepSpec(
        base,
        d_axis("temperature", 0.0, 2.0),
        axis2=Axis("delta_B", -0.2 * wb, 0.2 * wb, 3),
        quantities=(quantity,),
    )
