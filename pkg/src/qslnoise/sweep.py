"""Parameter sweeps over tau (Kraus families) and a (atomic master equation).

Rows are computed in grid order and rendered as CSV with 12 significant
digits, so identical configurations produce byte-identical output.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .channels import FAMILIES, VARIANTS, RtnParams, family_weight, phi
from .lindblad import AtomicModel, planck_n, x_ratio
from .qsl import channel_denominators, lindblad_ratio

CHANNEL_COLUMNS = ("tau", "t_eval", "phi", "p", "denom_uncorrelated", "denom_correlated", "ratio_R")
LINDBLAD_COLUMNS = ("a", "gamma", "n_bar", "x", "ratio", "lower_bound", "upper_bound")
DEFAULT_N_BAR = 1.0


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class SweepConfig:
    family: str = "phase-damping"
    variant: str = "standard"
    tau_min: float = 0.01
    tau_max: float = 0.25
    tau_steps: int = 25
    a_min: float = 0.0
    a_max: float = 1.0
    a_steps: int = 21
    t_eval: float = 0.1
    theta: float = math.pi / 2
    mu: float = 1.0
    gamma: float = 1.0
    n_bar: float | None = None
    omega: float | None = None
    temperature: float | None = None
    tau: float = 0.2
    output: str | None = None

    def with_overrides(self, values: dict) -> "SweepConfig":
        """Apply string or typed values; unknown keys raise :class:`ConfigError`."""
        types = {f.name: f.type for f in fields(self)}
        clean = {}
        for key, raw in values.items():
            name = ALIASES.get(key, key.replace("-", "_"))
            if name not in types:
                raise ConfigError(key, "unknown setting")
            if raw is None:
                continue
            clean[name] = _coerce(name, types[name], raw)
        return replace(self, **clean)

    def resolved_n_bar(self) -> float:
        has_n = self.n_bar is not None
        has_bath = self.omega is not None or self.temperature is not None
        if has_n and has_bath:
            raise ConfigError("nbar", "give either --nbar or --omega/--temperature, not both")
        if has_bath:
            if self.omega is None or self.temperature is None:
                raise ConfigError("omega" if self.omega is None else "temperature",
                                  "--omega and --temperature must be given together")
            try:
                return planck_n(self.omega, self.temperature)
            except ValueError as exc:
                raise ConfigError("temperature", str(exc)) from None
        if has_n:
            if self.n_bar < 0:
                raise ConfigError("nbar", "must be nonnegative")
            return self.n_bar
        return DEFAULT_N_BAR

    def check_channel(self) -> None:
        if self.family not in FAMILIES:
            raise ConfigError("family", f"expected one of {', '.join(FAMILIES)}, got {self.family!r}")
        if self.variant not in VARIANTS:
            raise ConfigError("variant", f"expected one of {', '.join(VARIANTS)}, got {self.variant!r}")
        _check_grid("tau", self.tau_min, self.tau_max, self.tau_steps)
        if self.tau_min <= 0:
            raise ConfigError("tau_min", "must be positive")
        self._check_common()

    def check_lindblad(self) -> None:
        _check_grid("a", self.a_min, self.a_max, self.a_steps)
        if self.a_min < 0 or self.a_max > 1:
            raise ConfigError("a_min" if self.a_min < 0 else "a_max", "a must lie in [0, 1]")
        if not self.gamma > 0:
            raise ConfigError("gamma", "must be positive")
        self.resolved_n_bar()
        self._check_common()

    def _check_common(self) -> None:
        if not self.t_eval > 0:
            raise ConfigError("time", "evaluation time must be positive")
        if not 0 < self.theta <= math.pi / 2 + 1e-15:
            raise ConfigError("theta", "must lie in (0, pi/2]")
        if not 0 <= self.mu <= 1:
            raise ConfigError("mu", "must lie in [0, 1]")


ALIASES = {"time": "t_eval", "nbar": "n_bar", "n": "n_bar", "t": "t_eval"}


def _coerce(name, type_hint, raw):
    if not isinstance(raw, str):
        return raw
    text = raw.strip()
    hint = str(type_hint)
    try:
        if hint.startswith("int"):
            return int(text)
        if hint.startswith("float"):
            return float(text)
    except ValueError:
        raise ConfigError(name, f"cannot parse {text!r}") from None
    return text


def _check_grid(prefix: str, lo: float, hi: float, steps: int) -> None:
    if not lo < hi:
        raise ConfigError(f"{prefix}_max", f"{prefix}_min must be below {prefix}_max")
    if steps < 2:
        raise ConfigError(f"{prefix}_steps", "need at least 2 grid points")


def read_config_file(path) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}", "expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key] = value
    return values


def format_value(v: float) -> str:
    v = float(v)
    if math.isnan(v):
        raise ValueError("refusing to emit NaN")
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    out = f"{v:.12g}"
    return "0" if out == "-0" else out


def render_csv(columns, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(format_value(v) for v in row) + "\n")
    return buf.getvalue()


def sweep_channel_rows(config: SweepConfig) -> list[tuple]:
    config.check_channel()
    rows = []
    for tau in np.linspace(config.tau_min, config.tau_max, config.tau_steps):
        params = RtnParams(float(tau), config.t_eval)
        f = phi(params)
        try:
            d_un, d_cor = channel_denominators(config.family, params, config.mu, config.variant)
        except ValueError as exc:
            raise ConfigError("tau", f"tau = {tau:g}: {exc}") from None
        ratio = d_un / d_cor if d_cor > 0 else math.inf
        rows.append((float(tau), config.t_eval, f, family_weight(config.family, f, config.variant),
                     d_un, d_cor, ratio))
    return rows


def sweep_lindblad_rows(config: SweepConfig) -> list[tuple]:
    config.check_lindblad()
    n_bar = config.resolved_n_bar()
    rows = []
    for a in np.linspace(config.a_min, config.a_max, config.a_steps):
        model = AtomicModel(config.gamma, config.gamma, float(a), n_bar)
        point = lindblad_ratio(model)
        x = x_ratio(model)
        rows.append((float(a), config.gamma, n_bar, x, point.ratio, point.lower, point.upper))
    return rows


def sweep_channel_csv(config: SweepConfig) -> str:
    return render_csv(CHANNEL_COLUMNS, sweep_channel_rows(config))


def sweep_lindblad_csv(config: SweepConfig) -> str:
    return render_csv(LINDBLAD_COLUMNS, sweep_lindblad_rows(config))
