"""Parameter sweeps, figure-reproduction presets, and CSV emission.

A sweep varies one axis of :class:`~spinchain_ness.model.ModelParams`
while the others stay fixed, evaluating the chosen observable with the
transfer-matrix engine, the brute-force engine, or both.  Results carry a
stable column layout and a comment header recording every parameter, so
a CSV file is a self-describing, reproducible artifact: repeated runs
with identical inputs produce identical science columns (wall-clock
timings are the only non-deterministic field).

Presets named ``fig2a`` .. ``fig7b`` bundle the sweeps behind the
standard diagnostic figures for this model (current versus size, rate
and boundary field, finite-polarization comparisons, twisting-angle
scans, and density profiles).  Where a figure's caption fixes parameter
values the preset uses them verbatim; remaining choices (curve sets and
grids) are encoded once here and documented in each preset description.
"""

from __future__ import annotations

import io
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__ as _version
from .errors import (
    InternalStateError,
    InvalidParameterError,
    NumericRangeError,
    ResourceLimitError,
    SteadyStateConvergenceError,
    DegenerateSteadyStateError,
)
from .lindblad import (
    LIOUVILLIAN_MAX_SITES,
    bond_currents,
    build_liouvillian,
    magnetization_profile,
    steady_state,
)
from .model import ModelParams
from .transfer import approx_current, magnon_density, spin_current

__all__ = [
    "AXES",
    "ENGINES",
    "OBSERVABLES",
    "SweepSpec",
    "SweepResult",
    "sweep_range",
    "run_sweep",
    "run_preset",
    "preset_names",
    "preset_description",
    "write_csv",
]

AXES = ("h", "gamma", "N", "theta", "f")
ENGINES = ("mps", "ed", "both")
OBSERVABLES = ("current", "density", "approx")

_POINT_ERRORS = (
    InvalidParameterError,
    NumericRangeError,
    ResourceLimitError,
    InternalStateError,
    SteadyStateConvergenceError,
    DegenerateSteadyStateError,
)


def sweep_range(start: float, stop: float, count: int, log: bool = False) -> tuple:
    """Inclusive linear or logarithmic grid as a tuple of floats."""
    if count < 1:
        raise InvalidParameterError(f"count must be >= 1, got {count}")
    if log:
        if start <= 0 or stop <= 0:
            raise InvalidParameterError("log spacing requires positive endpoints")
        return tuple(np.logspace(np.log10(start), np.log10(stop), count))
    return tuple(np.linspace(start, stop, count))


@dataclass(frozen=True)
class SweepSpec:
    """One swept axis, its values, and everything held fixed.

    ``base`` supplies the non-swept fields.  ``overlay_approx`` adds a
    closed-form estimate column next to computed currents.  ``label``
    names the curve when several specs feed one result (presets).
    """

    axis: str
    values: tuple
    base: ModelParams
    engine: str = "mps"
    observable: str = "current"
    label: str = ""
    overlay_approx: bool = False
    tol: float = 1e-10

    def __post_init__(self):
        if self.axis not in AXES:
            raise InvalidParameterError(f"axis must be one of {AXES}, got {self.axis!r}")
        if self.engine not in ENGINES:
            raise InvalidParameterError(f"engine must be one of {ENGINES}, got {self.engine!r}")
        if self.observable not in OBSERVABLES:
            raise InvalidParameterError(
                f"observable must be one of {OBSERVABLES}, got {self.observable!r}"
            )
        if len(self.values) == 0:
            raise InvalidParameterError("sweep needs at least one value")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if self.axis == "N":
            if any(v != int(v) or v < 1 for v in self.values):
                raise InvalidParameterError("N sweep values must be integers >= 1")
            if self.observable == "density":
                raise InvalidParameterError(
                    "density sweeps need a fixed N (profile columns); sweep h, gamma or theta"
                )
        if self.engine in ("mps", "both"):
            f_values = self.values if self.axis == "f" else (self.base.f,)
            if any(fv != 1.0 for fv in f_values):
                raise InvalidParameterError(
                    "the transfer-matrix engine requires f = 1; use engine='ed' for f < 1"
                )
        if self.engine in ("ed", "both"):
            n_max = max(self.values) if self.axis == "N" else self.base.N
            if n_max > LIOUVILLIAN_MAX_SITES:
                raise InvalidParameterError(
                    f"engine {self.engine!r} is limited to N <= {LIOUVILLIAN_MAX_SITES}, got N={int(n_max)}"
                )

    def point_params(self, value) -> ModelParams:
        if self.axis == "N":
            return replace(self.base, N=int(value))
        return replace(self.base, **{self.axis: float(value)})


@dataclass
class SweepResult:
    """Ordered rows plus the column layout and the comment header."""

    columns: list
    rows: list
    comments: list = field(default_factory=list)


def _density_columns(spec: SweepSpec) -> list:
    N = spec.base.N
    if spec.engine == "both":
        cols = [f"n_mps_{i}" for i in range(1, N + 1)]
        cols += [f"n_ed_{i}" for i in range(1, N + 1)]
        cols += ["max_abs_diff"]
        return cols
    return [f"n_{i}" for i in range(1, N + 1)]


def _data_columns(spec: SweepSpec) -> list:
    if spec.observable == "approx":
        return ["J_approx"]
    if spec.observable == "density":
        return _density_columns(spec)
    if spec.engine == "both":
        cols = ["J_mps", "J_ed", "rel_diff"]
    else:
        cols = ["J"]
    if spec.overlay_approx:
        cols.append("J_approx")
    return cols


def _ed_solution(params: ModelParams, tol: float):
    return steady_state(build_liouvillian(params), tol=tol)


def _evaluate_point(spec: SweepSpec, params: ModelParams) -> dict:
    obs = spec.observable
    if obs == "approx":
        return {"J_approx": approx_current(params)}
    if obs == "current":
        out = {}
        if spec.engine in ("mps", "both"):
            j_mps = spin_current(params).current
            out["J_mps" if spec.engine == "both" else "J"] = j_mps
        if spec.engine in ("ed", "both"):
            j_ed = float(np.mean(bond_currents(_ed_solution(params, spec.tol))))
            out["J_ed" if spec.engine == "both" else "J"] = j_ed
        if spec.engine == "both":
            out["rel_diff"] = abs(out["J_mps"] - out["J_ed"]) / max(abs(out["J_ed"]), 1e-12)
        if spec.overlay_approx:
            out["J_approx"] = approx_current(params)
        return out
    # density
    out = {}
    if spec.engine in ("mps", "both"):
        profile = magnon_density(params)
        key = "n_mps_{}" if spec.engine == "both" else "n_{}"
        out.update({key.format(i + 1): profile.n[i] for i in range(params.N)})
    if spec.engine in ("ed", "both"):
        sz = magnetization_profile(_ed_solution(params, spec.tol))
        key = "n_ed_{}" if spec.engine == "both" else "n_{}"
        out.update({key.format(i + 1): (1.0 + sz[i]) / 2.0 for i in range(params.N)})
    if spec.engine == "both":
        diffs = [
            abs(out[f"n_mps_{i}"] - out[f"n_ed_{i}"]) for i in range(1, params.N + 1)
        ]
        out["max_abs_diff"] = max(diffs)
    return out


def _comment_block(specs) -> list:
    lines = [f"spinchain-ness v{_version}"]
    for spec in specs:
        base = spec.base
        fixed = ", ".join(
            f"{name}={getattr(base, name)}" for name in ("N", "h", "gamma", "theta", "f")
            if name != spec.axis
        )
        label = spec.label or "(single curve)"
        lines.append(
            f"curve {label}: axis={spec.axis} engine={spec.engine} "
            f"observable={spec.observable} points={len(spec.values)} tol={spec.tol!r} fixed: {fixed}"
        )
    return lines


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate one sweep; per-point failures land in the error column.

    Rows are emitted in input order and the science columns are
    deterministic for fixed inputs.  A point whose solver raises one of
    the library's error types is recorded and the run continues.
    """
    return _run([spec])


def _run(specs) -> SweepResult:
    data_cols = []
    for spec in specs:
        for col in _data_columns(spec):
            if col not in data_cols:
                data_cols.append(col)
    columns = ["curve", specs[0].axis, *data_cols, "engine", "wall_time_s", "error"]
    axis_name = specs[0].axis
    rows = []
    for spec in specs:
        if spec.axis != axis_name:
            raise InvalidParameterError("all curves in one result must share the sweep axis")
        for value in spec.values:
            row = {c: "" for c in columns}
            row["curve"] = spec.label
            row[axis_name] = int(value) if axis_name == "N" else value
            row["engine"] = spec.engine
            started = time.perf_counter()
            try:
                params = spec.point_params(value)
                row.update(_evaluate_point(spec, params))
            except _POINT_ERRORS as exc:
                row["error"] = f"{type(exc).__name__}: {exc}"
            row["wall_time_s"] = time.perf_counter() - started
            rows.append(row)
    return SweepResult(columns=columns, rows=rows, comments=_comment_block(specs))


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_csv(result: SweepResult, destination) -> None:
    """Write the result as headered CSV with a leading comment block.

    ``destination`` is a path or a text file object.  Floats are written
    with shortest round-trip representation, so the payload is bit-stable
    across runs on one platform.
    """
    own = isinstance(destination, (str, bytes)) or hasattr(destination, "__fspath__")
    fh = open(destination, "w", encoding="utf-8") if own else destination
    try:
        for line in result.comments:
            fh.write(f"# {line}\n")
        fh.write(",".join(result.columns) + "\n")
        for row in result.rows:
            fh.write(",".join(_fmt(row[c]) for c in result.columns) + "\n")
    finally:
        if own:
            fh.close()


def csv_text(result: SweepResult) -> str:
    buf = io.StringIO()
    write_csv(result, buf)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Figure presets.  Caption-fixed values are used verbatim; curve sets and
# grids that the captions leave open are project choices, recorded in the
# preset descriptions below.
# ---------------------------------------------------------------------------


def _p(N, h, gamma, theta=0.0, f=1.0) -> ModelParams:
    return ModelParams(N=N, h=h, gamma=gamma, theta=theta, f=f)


def _log_int_grid(lo, hi, count):
    grid = np.unique(np.round(np.logspace(np.log10(lo), np.log10(hi), count)).astype(int))
    return tuple(float(v) for v in grid)


def _preset_fig2a():
    """Current vs bath rate at h=0, theta=0 for sizes N in {16, 64, 256}."""
    gammas = sweep_range(1e-5, 1.0, 41, log=True)
    return [
        SweepSpec(axis="gamma", values=gammas, base=_p(N, 0.0, 1.0), label=f"N={N}")
        for N in (16, 64, 256)
    ]


def _preset_fig2b():
    """Current vs size at h=0, theta=0 for gamma in {1, 1e-1, 1e-2, 1e-3}."""
    sizes = _log_int_grid(4, 1000, 17)
    return [
        SweepSpec(axis="N", values=sizes, base=_p(4, 0.0, g), label=f"gamma={g}")
        for g in (1.0, 1e-1, 1e-2, 1e-3)
    ]


def _preset_fig3a():
    """Current vs field at gamma=1 for sizes N in {20, 40, 80}; estimate overlay."""
    hs = sweep_range(-2.0, 2.0, 101)
    return [
        SweepSpec(axis="h", values=hs, base=_p(N, 0.0, 1.0), label=f"N={N}", overlay_approx=True)
        for N in (20, 40, 80)
    ]


def _preset_fig3b():
    """Current vs field at N=100 for rates around the 1/N crossover."""
    hs = sweep_range(-0.2, 0.1, 121)
    return [
        SweepSpec(axis="h", values=hs, base=_p(100, 0.0, g), label=f"gamma={g}")
        for g in (1e-1, 3e-2, 1e-2, 3e-3, 1e-3)
    ]


def _preset_fig3c():
    """Current vs field at gamma=1e-5 for N in {100, 200, 500}, wide field range."""
    hs = sweep_range(-0.5, 0.25, 151)
    return [
        SweepSpec(axis="h", values=hs, base=_p(N, 0.0, 1e-5), label=f"N={N}")
        for N in (100, 200, 500)
    ]


def _preset_fig3d():
    """Plateau and edge at gamma=1e-5 for N in {100, 200, 500}; estimate overlay."""
    hs = sweep_range(-0.06, 0.02, 200)
    return [
        SweepSpec(axis="h", values=hs, base=_p(N, 0.0, 1e-5), label=f"N={N}", overlay_approx=True)
        for N in (100, 200, 500)
    ]


def _fig4(gamma):
    hs = sweep_range(-2.0, 1.0, 41)
    specs = [
        SweepSpec(axis="h", values=hs, base=_p(6, 0.0, gamma, f=f), engine="ed", label=f"f={f}")
        for f in (0.25, 0.5, 0.75)
    ]
    specs.append(
        SweepSpec(axis="h", values=hs, base=_p(6, 0.0, gamma, f=1.0), engine="mps", label="f=1 (exact)")
    )
    return specs


def _preset_fig4a():
    """Finite-polarization currents vs field at N=6, gamma=1e-5, with the f=1 exact curve."""
    return _fig4(1e-5)


def _preset_fig4b():
    """Finite-polarization currents vs field at N=6, gamma=1, with the f=1 exact curve."""
    return _fig4(1.0)


def _preset_fig5a():
    """Small-size field scans at gamma=1e-5: N in {5, 10, 15, 25} over N*h in [-20, 10]."""
    specs = []
    for N in (5, 10, 15, 25):
        hs = sweep_range(-20.0 / N, 10.0 / N, 121)
        specs.append(SweepSpec(axis="h", values=hs, base=_p(N, 0.0, 1e-5), label=f"N={N}"))
    return specs


def _preset_fig5b():
    """N=15 field scans for gamma in {1e-2, 1e-3, 1e-4, 1e-5} (resonances below 1/N^2)."""
    hs = sweep_range(-20.0 / 15, 10.0 / 15, 181)
    return [
        SweepSpec(axis="h", values=hs, base=_p(15, 0.0, g), label=f"gamma={g}")
        for g in (1e-2, 1e-3, 1e-4, 1e-5)
    ]


def _fig6(gamma, h_lo, h_hi):
    thetas = (0.0, np.pi / 4, np.pi / 2, 3 * np.pi / 4, 0.95 * np.pi)
    hs = sweep_range(h_lo, h_hi, 101)
    return [
        SweepSpec(axis="h", values=hs, base=_p(500, 0.0, gamma, theta=t), label=f"theta={t:.6g}")
        for t in thetas
    ]


def _preset_fig6a():
    """Twisting-angle scans at N=500, gamma=1e-4; theta set is a project choice."""
    return _fig6(1e-4, -0.05, 0.02)


def _preset_fig6b():
    """Twisting-angle scans at N=500, gamma=1; theta set is a project choice."""
    return _fig6(1.0, -2.0, 1.0)


def _preset_fig7a():
    """Density profiles at N=500, gamma=1e-5, theta=0 for h <= 0 near the edge."""
    return [
        SweepSpec(
            axis="h",
            values=(0.0, -0.008, -0.0105, -0.012, -0.02),
            base=_p(500, 0.0, 1e-5),
            observable="density",
            label="profiles",
        )
    ]


def _preset_fig7b():
    """Density profiles at N=500, gamma=1e-5, theta=0 for h > 0."""
    return [
        SweepSpec(
            axis="h",
            values=(0.002, 0.005, 0.01, 0.02),
            base=_p(500, 0.0, 1e-5),
            observable="density",
            label="profiles",
        )
    ]


_PRESETS = {
    "fig2a": _preset_fig2a,
    "fig2b": _preset_fig2b,
    "fig3a": _preset_fig3a,
    "fig3b": _preset_fig3b,
    "fig3c": _preset_fig3c,
    "fig3d": _preset_fig3d,
    "fig4a": _preset_fig4a,
    "fig4b": _preset_fig4b,
    "fig5a": _preset_fig5a,
    "fig5b": _preset_fig5b,
    "fig6a": _preset_fig6a,
    "fig6b": _preset_fig6b,
    "fig7a": _preset_fig7a,
    "fig7b": _preset_fig7b,
}


def preset_names() -> tuple:
    return tuple(sorted(_PRESETS))


def preset_specs(name: str) -> list:
    try:
        builder = _PRESETS[name]
    except KeyError:
        raise InvalidParameterError(
            f"unknown preset {name!r}; available: {', '.join(preset_names())}"
        ) from None
    return builder()


def preset_description(name: str) -> str:
    try:
        return (_PRESETS[name].__doc__ or "").strip()
    except KeyError:
        raise InvalidParameterError(f"unknown preset {name!r}") from None


def run_preset(name: str) -> SweepResult:
    """Run every curve of a named preset into one result table."""
    result = _run(preset_specs(name))
    result.comments.insert(1, f"preset={name}: {preset_description(name)}")
    return result
