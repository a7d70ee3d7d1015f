"""Parameter scans over inverse temperature or coupling, with CSV output."""

from __future__ import annotations

import configparser
import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .analysis import CriteriaReport, criteria, discrepancies_exp, discrepancies_map
from .bath import OverDamped, SingleMode, SpectralDensity, UnderDamped
from .errors import ConfigError, MfgsError
from .mfgs_pe import QubitParams, QubitState, bath_kernels, steady_state_from_kernels
from .prc import prc_steady_state
from .rc_map import MIN_FOCK, MIN_MAPPING_GAMMA, converged_rc_state, rc_state_at_cutoff

METHODS = ("pe", "rc", "prc")
SPECTRAL_KINDS = ("ud", "od", "delta")
AXES = ("beta", "lambda")
MISSING = "NA"
TAIL_COLUMNS = (
    "cr1", "cr2", "cr3", "cr4",
    "d_coh_exp", "d_pop_exp", "d_coh_map", "d_pop_map",
    "n_fock", "positivity_pe_flag", "error",
)
_INT_COLUMNS = {"n_fock", "positivity_pe_flag"}


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    points: int
    spacing: str = "linear"

    def __post_init__(self) -> None:
        if self.points < 1:
            raise ConfigError("grid needs at least one point")
        if self.points >= 2 and not self.start < self.stop:
            raise ConfigError(f"grid start {self.start} must be below stop {self.stop}")
        if self.points == 1 and self.start != self.stop:
            raise ConfigError("a single-point grid needs start == stop")
        if self.spacing not in ("linear", "log"):
            raise ConfigError(f"unknown grid spacing {self.spacing!r}")
        if self.spacing == "log" and self.start <= 0.0:
            raise ConfigError("log spacing requires a positive start")

    def values(self) -> np.ndarray:
        if self.points == 1:
            return np.array([self.start])
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)


DEFAULT_GRID = GridSpec(0.1, 10.0, 50)


@dataclass(frozen=True)
class ScanConfig:
    """One scan: bath and qubit parameters, a swept axis, and the methods to run.

    For ``spectral = "od"`` the density is the over-damped one whose mapped
    mode has coupling ``lam``, frequency ``Omega`` and mapping width ``gamma``.
    A non-null ``omega_beta`` ties the mode frequency to ``omega_beta / beta``.
    """

    spectral: str = "ud"
    lam: float = 0.5
    Omega: float = 10.0
    gamma: float = 0.1
    beta: float = 1.0
    omega_s: float = 1.0
    r_x: float = 0.5
    r_y: float = 0.0
    r_z: float | None = None
    axis: str = "beta"
    grid: GridSpec = DEFAULT_GRID
    methods: tuple[str, ...] = METHODS
    fock: int | str = "auto"
    omega_beta: float | None = None
    out: str | None = None

    def __post_init__(self) -> None:
        if self.spectral not in SPECTRAL_KINDS:
            raise ConfigError(f"spectral must be one of {SPECTRAL_KINDS}, got {self.spectral!r}")
        if self.axis not in AXES:
            raise ConfigError(f"axis must be one of {AXES}, got {self.axis!r}")
        bad = [m for m in self.methods if m not in METHODS]
        if bad:
            raise ConfigError(f"unknown methods {bad}; choose from {METHODS}")
        object.__setattr__(self, "methods", tuple(m for m in METHODS if m in self.methods))
        if self.fock != "auto":
            if not isinstance(self.fock, int) or self.fock < MIN_FOCK:
                raise ConfigError(f"fock must be 'auto' or an integer >= {MIN_FOCK}")
        if self.r_z is None:
            rest = 1.0 - self.r_x**2 - self.r_y**2
            if rest < -1e-12:
                raise ConfigError("r_x^2 + r_y^2 exceeds 1")
            object.__setattr__(self, "r_z", math.sqrt(max(rest, 0.0)))
        try:
            self.qubit()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        for name in ("Omega", "gamma", "beta"):
            if not getattr(self, name) > 0.0:
                raise ConfigError(f"{name} must be positive")
        if self.lam < 0.0:
            raise ConfigError("lambda must be non-negative")
        if self.omega_beta is not None and not self.omega_beta > 0.0:
            raise ConfigError("omega_beta must be positive")
        if self.spectral == "od" and self.gamma < MIN_MAPPING_GAMMA:
            raise ConfigError(f"over-damped scans need mapping width gamma >= {MIN_MAPPING_GAMMA}")
        lo = self.grid.start
        if self.axis == "beta" and not lo > 0.0:
            raise ConfigError("beta grid must be positive")
        if self.axis == "lambda" and lo < 0.0:
            raise ConfigError("lambda grid must be non-negative")

    def qubit(self) -> QubitParams:
        return QubitParams(self.omega_s, self.r_x, self.r_y, self.r_z)

    def point_parameters(self, x: float) -> tuple[float, float, float]:
        """``(lam, Omega, beta)`` at axis value ``x``."""
        lam, beta = (self.lam, x) if self.axis == "beta" else (x, self.beta)
        Omega = self.omega_beta / beta if self.omega_beta is not None else self.Omega
        return lam, Omega, beta

    def density(self, lam: float, Omega: float) -> SpectralDensity:
        if self.spectral == "ud":
            return UnderDamped(lam, Omega, self.gamma)
        if self.spectral == "od":
            return OverDamped.from_mode(lam, Omega, self.gamma)
        return SingleMode(lam, Omega)

    def columns(self) -> list[str]:
        cols = ["axis", "p_th"]
        for m in self.methods:
            cols += [f"pe_{m}", f"re_c_{m}", f"im_c_{m}"]
        if self.methods:
            cols += list(TAIL_COLUMNS)
        return cols


@dataclass(frozen=True)
class PointResult:
    """Everything computed at one grid point; ``None`` marks a missing value."""

    axis: float
    p_th: float
    states: Mapping[str, QubitState | None]
    criteria: CriteriaReport | None
    d_coh_exp: float | None
    d_pop_exp: float | None
    d_coh_map: float | None
    d_pop_map: float | None
    n_fock: int | None
    error: str


@dataclass(frozen=True)
class ScanResult:
    config: ScanConfig
    points: list[PointResult]

    @property
    def columns(self) -> list[str]:
        return self.config.columns()

    def rows(self) -> list[list[Any]]:
        return [_row(self.config, p) for p in self.points]


def _row(cfg: ScanConfig, p: PointResult) -> list[Any]:
    row: list[Any] = [p.axis, p.p_th]
    for m in cfg.methods:
        s = p.states.get(m)
        row += [None, None, None] if s is None else [s.p_e, complex(s.c_ge).real, complex(s.c_ge).imag]
    if not cfg.methods:
        return row
    cr = p.criteria
    row += [None] * 4 if cr is None else [cr.cr1, cr.cr2, cr.cr3, cr.cr4]
    row += [p.d_coh_exp, p.d_pop_exp, p.d_coh_map, p.d_pop_map, p.n_fock]
    pe = p.states.get("pe")
    row.append(None if pe is None else int(pe.positivity_violated))
    row.append(p.error)
    return row


def _describe(method: str, exc: Exception) -> str:
    return f"{method}: {type(exc).__name__}: {exc}"


def evaluate_point(cfg: ScanConfig, x: float) -> PointResult:
    """Run the requested methods and analyses at axis value ``x``; errors are recorded."""
    q = cfg.qubit()
    lam, Omega, beta = cfg.point_parameters(x)
    p_th = q.thermal_excited_population(beta)
    states: dict[str, QubitState | None] = {}
    errors: list[str] = []
    cr = None
    n_fock = None
    if cfg.methods:
        try:
            J = cfg.density(lam, Omega)
            kern = bath_kernels(J, q.omega_s, beta)
            cr = criteria(J, q, beta, kern)
            if "pe" in cfg.methods:
                states["pe"] = steady_state_from_kernels(q, kern)
        except MfgsError as exc:
            errors.append(_describe("pe", exc))
    if "rc" in cfg.methods:
        try:
            if cfg.fock == "auto":
                states["rc"], n_fock = converged_rc_state(q, lam, Omega, beta)
            else:
                n_fock = int(cfg.fock)
                states["rc"] = rc_state_at_cutoff(q, lam, Omega, beta, n_fock)
        except MfgsError as exc:
            errors.append(_describe("rc", exc))
    if "prc" in cfg.methods:
        try:
            states["prc"] = prc_steady_state(q, lam, Omega, beta)
        except MfgsError as exc:
            errors.append(_describe("prc", exc))
    d_exp = (None, None)
    d_map = (None, None)
    if states.get("rc") is not None and states.get("prc") is not None:
        d_exp = discrepancies_exp(states["rc"], states["prc"], p_th)
    if states.get("pe") is not None and states.get("prc") is not None:
        d_map = discrepancies_map(states["pe"], states["prc"], p_th)
    return PointResult(
        axis=float(x),
        p_th=p_th,
        states=states,
        criteria=cr,
        d_coh_exp=d_exp[0],
        d_pop_exp=d_exp[1],
        d_coh_map=d_map[0],
        d_pop_map=d_map[1],
        n_fock=n_fock,
        error="; ".join(errors),
    )


def worker_count(n_items: int) -> int:
    """Pool size: ``MFGS_THREADS`` if set, else the CPU count, never above ``n_items``."""
    raw = os.environ.get("MFGS_THREADS")
    if raw:
        try:
            n = int(raw)
        except ValueError as exc:
            raise ConfigError(f"MFGS_THREADS must be an integer, got {raw!r}") from exc
        if n < 1:
            raise ConfigError("MFGS_THREADS must be at least 1")
    else:
        n = os.cpu_count() or 1
    return max(1, min(n, n_items))


def run_scan(cfg: ScanConfig) -> ScanResult:
    """Evaluate every grid point; output order follows the grid regardless of threading."""
    xs = [float(x) for x in cfg.grid.values()]
    n = worker_count(len(xs))
    if n == 1:
        points = [evaluate_point(cfg, x) for x in xs]
    else:
        with ThreadPoolExecutor(max_workers=n) as pool:
            points = list(pool.map(lambda x: evaluate_point(cfg, x), xs))
    return ScanResult(cfg, points)


# ---------------------------------------------------------------------------
# CSV


def _format(value: Any) -> str:
    if value is None:
        return MISSING
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    # + 0.0 folds negative zero into zero
    return format(float(value) + 0.0, ".16e")


def csv_text(result: ScanResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows():
        writer.writerow([_format(v) for v in row])
    return buf.getvalue()


def emit_csv(result: ScanResult, path: str | os.PathLike) -> None:
    """Write the scan as UTF-8 CSV with LF endings and 17 significant digits.

    Raises
    ------
    OSError
        With the target path in the message when the write fails.
    """
    text = csv_text(result)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write scan output to {os.fspath(path)}: {exc.strerror}") from exc


def _parse(column: str, text: str) -> Any:
    if column == "error":
        return text
    if text == MISSING:
        return None
    if column in _INT_COLUMNS:
        return int(text)
    return float(text)


def read_csv(path: str | os.PathLike) -> tuple[list[str], list[list[Any]]]:
    """Parse a scan CSV back into ``(columns, rows)`` with the emitted value types."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        columns = next(reader)
        rows = [[_parse(c, t) for c, t in zip(columns, line)] for line in reader]
    return columns, rows


# ---------------------------------------------------------------------------
# configuration


_KEY_ALIASES = {
    "lambda": "lam",
    "lam": "lam",
    "omega": "Omega",
    "omega_rc": "Omega",
    "gamma": "gamma",
    "gamma_ud": "gamma",
}
_FLOAT_KEYS = {"lam", "Omega", "gamma", "beta", "omega_s", "r_x", "r_y", "r_z", "omega_beta",
               "start", "stop"}
_GRID_KEYS = ("start", "stop", "points", "spacing")

PRESETS: dict[str, dict[str, str]] = {
    "ud-beta-weak": dict(spectral="ud", lam="0.5", Omega="10", gamma="0.1", axis="beta",
                         start="0.1", stop="10", points="100", methods="pe,rc,prc"),
    "ud-beta-strong": dict(spectral="ud", lam="1.5", Omega="10", gamma="0.1", axis="beta",
                           start="0.1", stop="10", points="100", methods="pe,rc,prc"),
    "ud-lambda-hot": dict(spectral="ud", beta="0.5", Omega="10", gamma="0.1", axis="lambda",
                          start="0", stop="2", points="41", methods="pe,rc,prc"),
    "ud-lambda-cold": dict(spectral="ud", beta="5", Omega="10", gamma="0.1", axis="lambda",
                           start="0", stop="2", points="41", methods="pe,rc,prc"),
    "od-lambda-hot": dict(spectral="od", beta="0.5", Omega="10", gamma="20", axis="lambda",
                          start="0", stop="2", points="41", methods="pe,prc"),
    "od-lambda-cold": dict(spectral="od", beta="5", Omega="10", gamma="20", axis="lambda",
                           start="0", stop="2", points="41", methods="pe,prc"),
    "od-beta": dict(spectral="od", lam="1.0", Omega="10", gamma="20", axis="beta",
                    start="0.1", stop="10", points="100", methods="pe,prc"),
    "ud-high-temperature": dict(spectral="ud", lam="1.5", omega_beta="1", gamma="20", axis="beta",
                                start="0.5", stop="10", points="60", spacing="log", methods="pe,prc"),
    "od-high-temperature": dict(spectral="od", lam="1.5", omega_beta="1", gamma="20", axis="beta",
                                start="0.5", stop="10", points="60", spacing="log", methods="pe,prc"),
}


def read_config_file(path: str | os.PathLike) -> dict[str, str]:
    """Flatten an INI file (any sections) into ``key -> raw string``."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    parser.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {os.fspath(path)}: {exc.strerror}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config {os.fspath(path)}: {exc}") from exc
    flat: dict[str, str] = dict(parser.defaults())
    for section in parser.sections():
        flat.update(parser.items(section, raw=True))
    return flat


def parse_range(text: str) -> dict[str, str]:
    """``start:stop:points[:log|linear]`` to grid settings."""
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise ConfigError(f"range {text!r} must look like start:stop:points[:log]")
    out = dict(start=parts[0], stop=parts[1], points=parts[2])
    if len(parts) == 4:
        out["spacing"] = parts[3]
    return out


def config_from_mapping(raw: Mapping[str, str]) -> ScanConfig:
    """Build a :class:`ScanConfig` from string settings (INI values, presets, flags)."""
    kw: dict[str, Any] = {}
    grid: dict[str, Any] = {}
    for key, value in raw.items():
        name = _KEY_ALIASES.get(key.lower(), key.lower())
        value = str(value).strip()
        try:
            if name in _GRID_KEYS:
                if name == "points":
                    grid[name] = int(value)
                elif name == "spacing":
                    grid[name] = value.lower()
                else:
                    grid[name] = float(value)
            elif name in _FLOAT_KEYS:
                if value.lower() in ("", "none", "null"):
                    kw[name] = None
                else:
                    kw[name] = float(value)
            elif name == "methods":
                tokens = [t.strip().lower() for t in value.replace(" ", ",").split(",")]
                kw["methods"] = tuple(t for t in tokens if t and t != "none")
            elif name == "fock":
                kw["fock"] = "auto" if value.lower() == "auto" else int(value)
            elif name in ("spectral", "axis"):
                kw[name] = value.lower()
            elif name == "out":
                kw["out"] = value or None
            else:
                raise ConfigError(f"unknown setting {key!r}")
        except ValueError as exc:
            raise ConfigError(f"bad value {value!r} for {key!r}: {exc}") from exc
    if set(grid) - {"spacing"}:
        missing = {"start", "stop", "points"} - set(grid)
        if missing:
            raise ConfigError(f"grid is missing {sorted(missing)}")
        kw["grid"] = GridSpec(**grid)
    elif grid:
        kw["grid"] = replace(DEFAULT_GRID, **grid)
    return ScanConfig(**kw)


def build_config(
    preset: str | None = None,
    config_path: str | os.PathLike | None = None,
    overrides: Mapping[str, str] | None = None,
) -> ScanConfig:
    """Layer settings: preset, then config file, then explicit overrides."""
    raw: dict[str, str] = {}
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}; available: {', '.join(PRESETS)}")
        raw.update(PRESETS[preset])
    if config_path is not None:
        raw.update(read_config_file(Path(config_path)))
    if overrides:
        raw.update(overrides)
    return config_from_mapping(raw)
