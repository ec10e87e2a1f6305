"""Scenario files and CSV reports.

A scenario is a flat TOML file, for example::

    sensitivity = 0.95
    specificity = 0.99
    population = 1.0
    i0 = 5e-5
    beta = 0.83            # or: s_inf = 0.0022 and early_growth = 2.0
    gamma = 0.135
    dt = 0.01
    weeks = 34
    prevalence_source = "infected"   # or "incidence"
    baseline = "peak"                # "first" or a prevalence in (0, 1]
    target = "threshold"             # or a fixed PPV in (0, 1)
    n_max = 50

Every CSV written here uses ``\\n`` line endings and a header row. Display
files round to 4 decimals; the ``.precise.csv`` sidecar keeps 17
significant digits so values survive a round trip unchanged.
"""

from __future__ import annotations

import csv
import io
import math
import sys
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from . import screening
from .calibration import CalibrationTargets, calibrated_params
from .core import CONSERVATION_RTOL, EpidemicParams, TestCharacteristics, Trajectory, youden_j
from .coupling import (
    Baseline,
    BaselineSpec,
    PrevalenceSource,
    ScreeningSeries,
    analyze_prevalence,
    incidence_prevalence,
)
from .errors import ValidationError
from .screening import SerialTestPolicy
from .sir import IntegrationConfig, integrate

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

TRAJECTORY_HEADER = ["week", "susceptible", "infected", "recovered"]
REPORT_HEADER = ["week", "pt", "susceptible", "infected", "recovered", "ppv", "zeta", "n"]
PLOT_COMPARTMENTS = "compartments.csv"
PLOT_SCREENING = "screening.csv"

KNOWN_KEYS = {
    "sensitivity", "specificity",
    "beta", "gamma", "population", "i0", "recovered0",
    "s_inf", "s0", "early_growth",
    "dt", "weeks", "sample_every", "method",
    "prevalence_source", "baseline", "target", "n_max",
    "conservation_rtol", "out",
}  # fmt: skip


def _fmt4(x):
    # str.format rounds the exact binary value; exact ties go to even
    return f"{x:.4f}"


def _fmt_full(x):
    return f"{x:.17g}"


def _fmt_week(t):
    return f"{t:g}"


@dataclass(frozen=True)
class Scenario:
    """Everything needed for one run. ``epidemic`` and ``targets`` are mutually exclusive."""

    test: Optional[TestCharacteristics] = None
    epidemic: Optional[EpidemicParams] = None
    targets: Optional[CalibrationTargets] = None
    population: float = 1.0
    integration: IntegrationConfig = IntegrationConfig()
    source: PrevalenceSource = PrevalenceSource.INFECTED_FRACTION
    baseline: BaselineSpec = Baseline.PEAK
    policy: SerialTestPolicy = SerialTestPolicy()
    conservation_rtol: float = CONSERVATION_RTOL
    out: Optional[Path] = None

    def __post_init__(self):
        if self.epidemic is not None and self.targets is not None:
            raise ValidationError("give either beta/gamma or calibration targets (s_inf, early_growth), not both")

    @property
    def has_epidemic(self) -> bool:
        return self.epidemic is not None or self.targets is not None

    def epidemic_params(self) -> EpidemicParams:
        """Explicit parameters, or the ones fitted from the calibration targets."""
        if self.epidemic is not None:
            return self.epidemic
        if self.targets is not None:
            return calibrated_params(self.targets, self.population)
        raise ValidationError("scenario has no epidemic: set beta and gamma, or s_inf and early_growth")

    def require_test(self) -> TestCharacteristics:
        if self.test is None:
            raise ValidationError("scenario has no screening test: set sensitivity and specificity")
        return self.test

    def with_test(self, a=None, b=None) -> Scenario:
        """Copy with sensitivity and/or specificity overridden."""
        if a is None and b is None:
            return self
        cur = self.test
        a = a if a is not None else (cur.a if cur else None)
        b = b if b is not None else (cur.b if cur else None)
        if a is None or b is None:
            raise ValidationError("both sensitivity and specificity are needed")
        return replace(self, test=TestCharacteristics(float(a), float(b)))

    @classmethod
    def from_mapping(cls, cfg: dict) -> Scenario:
        unknown = set(cfg) - KNOWN_KEYS
        if unknown:
            raise ValidationError(f"unknown scenario keys: {', '.join(sorted(unknown))}")
        for k, v in cfg.items():
            if isinstance(v, (dict, list)):
                raise ValidationError(f"scenario key {k!r} must be a scalar; nesting is not supported")

        def num(key, default=None):
            if key not in cfg:
                return default
            v = cfg[key]
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ValidationError(f"{key} must be a number, got {v!r}")
            return float(v)

        test = None
        if "sensitivity" in cfg or "specificity" in cfg:
            if num("sensitivity") is None or num("specificity") is None:
                raise ValidationError("sensitivity and specificity must be given together")
            test = TestCharacteristics(num("sensitivity"), num("specificity"))

        population = num("population", 1.0)
        if not population > 0:
            raise ValidationError(f"population must be > 0, got {population!r}")
        i0 = num("i0")
        recovered0 = num("recovered0", 0.0)

        explicit = [k for k in ("beta", "gamma") if k in cfg]
        fitted = [k for k in ("s_inf", "early_growth") if k in cfg]
        if explicit and fitted:
            raise ValidationError("give either beta/gamma or s_inf/early_growth, not both")
        if len(explicit) == 1 or len(fitted) == 1:
            raise ValidationError("beta/gamma and s_inf/early_growth must each be given as a pair")

        epidemic = targets = None
        if explicit or fitted:
            if i0 is None or not i0 > 0:
                raise ValidationError("i0 must be given and > 0: an epidemic has to be seeded")
            if explicit:
                epidemic = EpidemicParams.seeded(num("beta"), num("gamma"), i0, n_pop=population, r0=recovered0)
            else:
                s0 = num("s0", (population - i0 - recovered0) / population)
                targets = CalibrationTargets(
                    s_inf=num("s_inf"), s0=s0, i0=i0 / population, early_growth=num("early_growth")
                )

        weeks = num("weeks", IntegrationConfig.t_end)
        integration = IntegrationConfig(
            dt=num("dt", IntegrationConfig.dt),
            t_end=weeks,
            sample_every=num("sample_every", IntegrationConfig.sample_every),
            method=_choice(cfg.get("method", "rk4"), "method", ("rk4", "euler")),
        )
        source = PrevalenceSource(
            _choice(cfg.get("prevalence_source", "infected"), "prevalence_source", ("infected", "incidence"))
        )

        baseline = cfg.get("baseline", "peak")
        if isinstance(baseline, str):
            baseline = Baseline(_choice(baseline, "baseline", ("peak", "first")))
        elif isinstance(baseline, bool) or not isinstance(baseline, (int, float)) or not 0 < baseline <= 1:
            raise ValidationError(f"baseline must be 'peak', 'first' or a prevalence in (0, 1], got {baseline!r}")
        else:
            baseline = float(baseline)

        target = cfg.get("target", "threshold")
        if isinstance(target, str):
            _choice(target, "target", ("threshold",))
            target = None
        else:
            target = num("target")
        n_max = cfg.get("n_max", 50)
        if isinstance(n_max, bool) or not isinstance(n_max, int):
            raise ValidationError(f"n_max must be an integer, got {n_max!r}")
        policy = SerialTestPolicy(target=target, n_max=n_max)

        out = cfg.get("out")
        return cls(
            test=test,
            epidemic=epidemic,
            targets=targets,
            population=population,
            integration=integration,
            source=source,
            baseline=baseline,
            policy=policy,
            conservation_rtol=num("conservation_rtol", CONSERVATION_RTOL),
            out=Path(out) if out is not None else None,
        )


def _choice(value, key, allowed):
    if not isinstance(value, str) or value.lower() not in allowed:
        raise ValidationError(f"{key} must be one of {', '.join(allowed)}; got {value!r}")
    return value.lower()


def load_scenario(path) -> Scenario:
    """Parse a flat TOML scenario file."""
    path = Path(path)
    try:
        with path.open("rb") as fh:
            cfg = tomllib.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read scenario {path}: {exc.strerror or exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ValidationError(f"malformed scenario {path}: {exc}") from None
    return Scenario.from_mapping(cfg)


def reference_scenario() -> Scenario:
    """The bundled a=0.95, b=0.99 scenario calibrated to reference-table-like observables."""
    text = resources.files("sirscreen").joinpath("data/reference.toml").read_text()
    return Scenario.from_mapping(tomllib.loads(text))


def reference_scenario_path() -> Path:
    return Path(str(resources.files("sirscreen").joinpath("data/reference.toml")))


def load_reference_table() -> dict[str, np.ndarray]:
    """The published reference table as columns: week, pt, susceptible, infected, recovered, ppv, zeta, n."""
    text = resources.files("sirscreen").joinpath("data/reference_table.csv").read_text()
    rows = list(csv.DictReader(io.StringIO(text)))
    cols = {k: np.array([float(r[k]) for r in rows]) for k in REPORT_HEADER}
    cols["n"] = cols["n"].astype(int)
    return cols


# -- CSV helpers --------------------------------------------------------------


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="")


def sidecar_path(path) -> Path:
    """``traj.csv`` -> ``traj.precise.csv``."""
    path = Path(path)
    return path.with_name(path.stem + ".precise" + (path.suffix or ".csv"))


def compartment_fractions(traj: Trajectory):
    """``(t, S/N, I/N, R/N)`` for writing and for screening."""
    n = traj.params.n_pop
    return traj.t, traj.s / n, traj.i / n, traj.r / n


def trajectory_csv(traj: Trajectory, precise=False) -> str:
    """CSV text ``week,susceptible,infected,recovered`` with compartments as fractions of N."""
    fmt = _fmt_full if precise else _fmt4
    week = _fmt_full if precise else _fmt_week
    t, s, i, r = compartment_fractions(traj)
    rows = [[week(t[k]), fmt(s[k]), fmt(i[k]), fmt(r[k])] for k in range(len(traj))]
    return _csv_text(TRAJECTORY_HEADER, rows)


def read_compartments(path) -> dict[str, Optional[np.ndarray]]:
    """Read a ``week,infected[,susceptible,recovered]`` CSV.

    Missing optional columns come back as ``None``. Weeks must be strictly
    increasing and every compartment must lie in [0, 1].
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror or exc}") from None
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise ValidationError(f"{path} is empty")
    fields = [f.strip() for f in reader.fieldnames]
    missing = {"week", "infected"} - set(fields)
    if missing:
        raise ValidationError(f"{path} lacks required column(s): {', '.join(sorted(missing))}")
    wanted = [c for c in TRAJECTORY_HEADER if c in fields]
    data = {c: [] for c in wanted}
    for lineno, row in enumerate(reader, start=2):
        row = {(k or "").strip(): v for k, v in row.items()}
        for c in wanted:
            raw = row.get(c)
            try:
                val = float(raw)
            except (TypeError, ValueError):
                raise ValidationError(f"{path}:{lineno}: bad {c} value {raw!r}") from None
            if not math.isfinite(val):
                raise ValidationError(f"{path}:{lineno}: {c} is not finite")
            data[c].append(val)
    if not data["week"]:
        raise ValidationError(f"{path} has no data rows")
    cols = {c: np.array(v) for c, v in data.items()}
    if np.any(np.diff(cols["week"]) <= 0):
        raise ValidationError(f"{path}: weeks must be strictly increasing")
    for c in ("susceptible", "infected", "recovered"):
        if c in cols and not np.all((cols[c] >= 0) & (cols[c] <= 1)):
            raise ValidationError(f"{path}: {c} values must be fractions in [0, 1]")
    return {c: cols.get(c) for c in TRAJECTORY_HEADER}


def screening_report_csv(t, s, i, r, series: ScreeningSeries) -> str:
    """CSV text with the reference table column layout. ``s``/``r`` may be None (blank columns)."""
    rows = []
    for k in range(len(series)):
        n = int(series.n_iter[k])
        rows.append(
            [
                _fmt_week(t[k]),
                _fmt4(series.pt),
                _fmt4(s[k]) if s is not None else "",
                _fmt4(i[k]),
                _fmt4(r[k]) if r is not None else "",
                _fmt4(series.ppv[k]),
                _fmt4(series.zeta[k]),
                str(n) if n > 0 else "",
            ]
        )
    return _csv_text(REPORT_HEADER, rows)


def _rates_for_incidence(scenario: Scenario):
    p = scenario.epidemic_params()
    return p.beta, p.gamma


def screen_columns(scenario: Scenario, t, s, i) -> ScreeningSeries:
    """Screening series for fractional compartments under the scenario's settings."""
    test = scenario.require_test()
    if scenario.source is PrevalenceSource.INFECTED_FRACTION:
        phi = np.clip(i, 0.0, 1.0)
    else:
        if s is None:
            raise ValidationError("incidence prevalence needs a susceptible column")
        beta, gamma = _rates_for_incidence(scenario)
        phi = incidence_prevalence(s, i, beta, gamma)
    return analyze_prevalence(t, phi, test, scenario.baseline, scenario.policy)


# -- commands ----------------------------------------------------------------


def _out_path(scenario: Scenario, out) -> Path:
    out = out if out is not None else scenario.out
    if out is None:
        raise ValidationError("no output path: pass --out or set 'out' in the scenario")
    return Path(out)


def simulate(scenario: Scenario) -> Trajectory:
    return integrate(scenario.epidemic_params(), scenario.integration, conservation_rtol=scenario.conservation_rtol)


def run_simulate(scenario: Scenario, out=None) -> tuple[Path, Path]:
    """Write the trajectory CSV (4 decimals) and its 17-digit sidecar."""
    path = _out_path(scenario, out)
    traj = simulate(scenario)
    display, precise = trajectory_csv(traj), trajectory_csv(traj, precise=True)
    _write(path, display)
    side = sidecar_path(path)
    _write(side, precise)
    return path, side


def run_analyze(scenario: Scenario, out=None, infected_csv=None) -> Path:
    """Write the screening report, simulating first unless ``infected_csv`` is given."""
    path = _out_path(scenario, out)
    scenario.require_test()
    if infected_csv is None:
        t, s, i, r = compartment_fractions(simulate(scenario))
    else:
        cols = read_compartments(infected_csv)
        t, s, i, r = cols["week"], cols["susceptible"], cols["infected"], cols["recovered"]
    series = screen_columns(scenario, t, s, i)
    _write(path, screening_report_csv(t, s, i, r, series))
    return path


def threshold_report(test: TestCharacteristics) -> str:
    """Prevalence threshold, J and PPV at the threshold, one ``name value`` per line."""
    pt = screening.prevalence_threshold(test)
    ppv_pt = screening.serial_target(test)
    return (
        f"prevalence_threshold {_fmt4(pt)}\n"
        f"youden_j {_fmt4(youden_j(test))}\n"
        f"ppv_at_threshold {_fmt4(ppv_pt)}\n"
    )


def run_plotdata(scenario: Scenario, out=None) -> tuple[Path, Path]:
    """Write ``compartments.csv`` and ``screening.csv`` (week, phi, ppv, pt) into directory ``out``."""
    outdir = _out_path(scenario, out)
    traj = simulate(scenario)
    t, s, i, r = compartment_fractions(traj)
    series = screen_columns(scenario, t, s, i)
    comp = _csv_text(
        TRAJECTORY_HEADER,
        [[_fmt_week(t[k]), _fmt_full(s[k]), _fmt_full(i[k]), _fmt_full(r[k])] for k in range(len(traj))],
    )
    scr = _csv_text(
        ["week", "phi", "ppv", "pt"],
        [
            [_fmt_week(t[k]), _fmt_full(series.phi[k]), _fmt_full(series.ppv[k]), _fmt_full(series.pt)]
            for k in range(len(series))
        ],
    )
    p1, p2 = outdir / PLOT_COMPARTMENTS, outdir / PLOT_SCREENING
    _write(p1, comp)
    _write(p2, scr)
    return p1, p2


def read_plot_screening(path) -> dict[str, np.ndarray]:
    """Load a ``screening.csv`` written by :func:`run_plotdata`."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    return {k: np.array([float(r[k]) for r in rows]) for k in ("week", "phi", "ppv", "pt")}
