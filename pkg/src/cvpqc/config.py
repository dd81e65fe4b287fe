"""Sweep configuration: a flat JSON document, strictly parsed.

Unknown keys are rejected rather than ignored so that a typo in a grid
name cannot silently run a default sweep.  ``validate`` never raises; it
returns a report with problems, warnings, and size estimates.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields
from typing import Optional

from .fock import heuristic_cutoff

EXPERIMENTS = (
    "mmstate",
    "conformation",
    "convergence",
    "squeezed_convergence",
    "attack",
    "nongauss_overlap",
    "nongauss_variance",
    "displacement_bs",
)

_B_EXPERIMENTS = ("mmstate", "conformation", "convergence", "squeezed_convergence")

# grids each experiment iterates over; empty ones are config errors
REQUIRED_GRIDS = {
    "mmstate": ("b_list",),
    "conformation": ("N_list", "b_list", "r_list", "phi_list"),
    "convergence": ("N_list", "b_list"),
    "squeezed_convergence": ("N_list", "b_list", "r_list", "phi_list"),
    "attack": ("alpha_list", "r_list", "phi_list"),
    "nongauss_overlap": ("r_list", "phi_list", "beta_mag_list", "varphi_list"),
    "nongauss_variance": ("r_list", "phi_list", "beta_mag_list", "varphi_list",
                          "theta_list"),
    "displacement_bs": ("T_list",),
}


class ConfigError(ValueError):
    """Unparseable or structurally invalid configuration input."""


@dataclass
class ExperimentConfig:
    experiment: str
    N_list: list = field(default_factory=lambda: [2, 4, 8, 16, 32])
    b_list: list = field(default_factory=lambda: [2.0])
    r_list: list = field(default_factory=lambda: [0.0])
    phi_list: list = field(default_factory=lambda: [0.0])
    alpha_list: list = field(default_factory=lambda: [1.0])
    beta_mag_list: list = field(default_factory=lambda: [0.25])
    varphi_list: list = field(default_factory=lambda: [0.0])
    theta_list: list = field(default_factory=lambda: [0.0])
    T_list: list = field(default_factory=lambda: [0.5, 0.25, 0.1, 0.04, 0.01])
    p_list: Optional[list] = None          # conformation: default = all rings 1..N
    eff_re: float = 0.3                    # displacement_bs: fixed sqrt(T)*gamma
    eff_im: float = 0.0
    input_kind: str = "even_coherent"      # displacement_bs input: vacuum | even_coherent
    input_beta_mag: float = 1.0
    input_varphi: float = 0.0
    cutoff: Optional[int] = None           # n_max; None = per-experiment default
    tail_tol: float = 1e-8
    seed: int = 0
    out: Optional[str] = None
    format: str = "csv"
    workers: int = 1

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


_INT_FIELDS = {"cutoff", "seed", "workers"}
_INT_LIST_FIELDS = {"N_list", "p_list"}
_FLOAT_FIELDS = {"eff_re", "eff_im", "input_beta_mag", "input_varphi", "tail_tol"}
_STR_FIELDS = {"experiment", "input_kind", "out", "format"}


def _want_int(name, v):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"field {name!r} must be an integer, got {v!r}")
    return v


def _want_real(name, v):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"field {name!r} must be a number, got {v!r}")
    return float(v)


def config_from_dict(doc: dict) -> ExperimentConfig:
    if not isinstance(doc, dict):
        raise ConfigError(f"config must be a JSON object, got {type(doc).__name__}")
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = sorted(set(doc) - known)
    if unknown:
        raise ConfigError(f"unknown config field(s): {', '.join(unknown)}")
    if "experiment" not in doc:
        raise ConfigError("missing required field 'experiment'")

    kwargs = {}
    for name, v in doc.items():
        if v is None and name in ("p_list", "cutoff", "out"):
            continue
        if name in _STR_FIELDS:
            if not isinstance(v, str):
                raise ConfigError(f"field {name!r} must be a string, got {v!r}")
            kwargs[name] = v
        elif name in _INT_FIELDS:
            kwargs[name] = _want_int(name, v)
        elif name in _FLOAT_FIELDS:
            kwargs[name] = _want_real(name, v)
        elif name.endswith("_list"):
            if not isinstance(v, list):
                raise ConfigError(f"field {name!r} must be a list, got {v!r}")
            if name in _INT_LIST_FIELDS:
                kwargs[name] = [_want_int(f"{name}[{i}]", x) for i, x in enumerate(v)]
            else:
                kwargs[name] = [_want_real(f"{name}[{i}]", x) for i, x in enumerate(v)]
        else:
            raise ConfigError(f"unhandled config field {name!r}")  # unreachable
    return ExperimentConfig(**kwargs)


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, "r", encoding="utf-8") as f:
            doc = json.load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config {path!r}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config {path!r} is not valid JSON: {e}") from e
    return config_from_dict(doc)


# ---------------------------------------------------------------------------
# validation


_AUTO_CUTOFF = {"attack": 60, "nongauss_overlap": 40, "nongauss_variance": 40}


def max_ancilla_amp(cfg: ExperimentConfig) -> float:
    eff = math.hypot(cfg.eff_re, cfg.eff_im)
    ts = [t for t in cfg.T_list if t > 0]
    return eff / math.sqrt(min(ts)) if ts else 0.0


def resolve_cutoff(cfg: ExperimentConfig) -> int:
    """Explicit cutoff, or the per-experiment heuristic default."""
    if cfg.cutoff is not None:
        return cfg.cutoff
    if cfg.experiment in _AUTO_CUTOFF:
        return _AUTO_CUTOFF[cfg.experiment]
    if cfg.experiment in _B_EXPERIMENTS:
        return heuristic_cutoff(max(cfg.b_list)) if cfg.b_list else 0
    if cfg.experiment == "displacement_bs":
        amp = max_ancilla_amp(cfg)
        return heuristic_cutoff(amp) if amp > 0 else 20
    return 40


@dataclass
class ValidationReport:
    problems: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    info: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def render(self) -> str:
        lines = []
        for p in self.problems:
            lines.append(f"problem: {p}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        for i in self.info:
            lines.append(f"info: {i}")
        lines.append("config valid" if self.ok else "config INVALID")
        return "\n".join(lines)


def _mb(entries: int) -> float:
    return entries * 16 / 1e6  # complex128


def validate(cfg: ExperimentConfig) -> ValidationReport:
    rep = ValidationReport()
    bad = rep.problems.append

    if cfg.experiment not in EXPERIMENTS:
        bad(f"unknown experiment {cfg.experiment!r}; choose from {', '.join(EXPERIMENTS)}")
        return rep

    for grid in REQUIRED_GRIDS[cfg.experiment]:
        if not getattr(cfg, grid):
            bad(f"grid {grid!r} must not be empty for experiment {cfg.experiment!r}")

    if any(n < 1 for n in cfg.N_list):
        bad("N_list entries must be >= 1")
    if any(b <= 0 for b in cfg.b_list):
        bad("b_list entries must be > 0")
    if any(r < 0 for r in cfg.r_list):
        bad("r_list entries must be >= 0")
    if any(m < 0 for m in cfg.beta_mag_list):
        bad("beta_mag_list entries must be >= 0")
    if any(not 0 < t <= 1 for t in cfg.T_list):
        bad("T_list entries must lie in (0, 1]")
    if cfg.p_list is not None and any(p < 1 for p in cfg.p_list):
        bad("p_list entries must be >= 1")
    if cfg.tail_tol <= 0:
        bad("tail_tol must be > 0")
    if cfg.cutoff is not None and cfg.cutoff < 1:
        bad("cutoff must be >= 1")
    if cfg.format not in ("csv", "json"):
        bad(f"format must be 'csv' or 'json', got {cfg.format!r}")
    if cfg.workers < 1:
        bad("workers must be >= 1")
    if cfg.experiment == "displacement_bs" and cfg.input_kind not in ("vacuum",
                                                                      "even_coherent"):
        bad(f"input_kind must be 'vacuum' or 'even_coherent', got {cfg.input_kind!r}")
    if cfg.seed < 0 or cfg.seed >= 2 ** 64:
        bad("seed must fit in an unsigned 64-bit integer")

    if rep.problems:
        return rep

    n_max = resolve_cutoff(cfg)
    d = n_max + 1
    rep.info.append(f"cutoff n_max = {n_max}"
                    + (" (heuristic default)" if cfg.cutoff is None else " (explicit)"))

    if cfg.experiment in _B_EXPERIMENTS and cfg.b_list:
        need = heuristic_cutoff(max(cfg.b_list))
        if n_max < need:
            rep.warnings.append(
                f"cutoff {n_max} is below the heuristic minimum {need} "
                f"for b = {max(cfg.b_list)}; expect tail-mass failures")
    if cfg.experiment == "displacement_bs":
        amp = max_ancilla_amp(cfg)
        need = heuristic_cutoff(amp) if amp > 0 else 0
        if n_max < need:
            rep.warnings.append(
                f"cutoff {n_max} is below the heuristic minimum {need} "
                f"for ancilla amplitude {amp:.3g}; expect tail-mass failures")

    if cfg.experiment in ("attack", "displacement_bs"):
        two = d * d
        rep.info.append(
            f"two-mode basis dimension {two} ({d} per mode); a dense two-mode matrix "
            f"would hold {two}^2 = {two * two} complex entries (~{_mb(two * two):.1f} MB); "
            f"block structure keeps the working set near {two} amplitudes")
    else:
        rep.info.append(
            f"basis dimension {d}; density matrices hold {d * d} complex entries "
            f"(~{_mb(d * d):.3f} MB)")
    return rep
