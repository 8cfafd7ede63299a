"""Run configuration: parsing, validation, and solver-config assembly.

Configs are flat ``key = value`` text with '#' comments.  Parsing is strict:
unknown keys, duplicate keys, and invalid values are reported per line, and
all diagnostics are collected before the parse is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import presets
from .model import Background, FluxModel, Regime
from .solver1d import (
    BoundaryRule,
    ExtraRule,
    Grid1D,
    RunConfig1D,
    SpaceOrder,
    StepPolicy,
    TimeOrder,
)
from .solver2d import Grid2D, RunConfig2D


class ConfigError(ValueError):
    """Invalid run configuration; message carries per-field diagnostics."""


@dataclass(frozen=True)
class RunConfig:
    """Fully validated run description (seedless: runs are deterministic)."""

    dimension: int
    regime: Regime
    kappa: float
    tau0: float
    flux_kind: str
    beta: float
    L: float
    Ly: float
    J: int
    Jy: int
    cfl: float
    order_space: SpaceOrder
    order_time: TimeOrder
    extra_rule: ExtraRule
    boundary: BoundaryRule
    ic: str
    checkpoints: tuple[float, ...]
    tau_end: float
    budget: int

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "regime": self.regime.value,
            "kappa": self.kappa,
            "tau0": self.tau0,
            "flux": self.flux_kind,
            "beta": self.beta,
            "L": self.L,
            "Ly": self.Ly,
            "J": self.J,
            "Jy": self.Jy,
            "cfl": self.cfl,
            "order_space": self.order_space.value,
            "order_time": self.order_time.value,
            "extra_rule": self.extra_rule.value,
            "boundary": self.boundary.value,
            "ic": self.ic,
            "checkpoints": list(self.checkpoints),
            "tau_end": self.tau_end,
            "budget": self.budget,
        }


def _parse_float(text):
    return float(text)


def _parse_int(text):
    v = int(text)
    return v


def _parse_floats(text):
    parts = [p.strip() for p in text.split(",") if p.strip()]
    return tuple(float(p) for p in parts)


_PARSERS = {
    "dimension": _parse_int,
    "regime": str,
    "kappa": _parse_float,
    "tau0": _parse_float,
    "flux": str,
    "beta": _parse_float,
    "L": _parse_float,
    "Lx": _parse_float,
    "Ly": _parse_float,
    "J": _parse_int,
    "Jx": _parse_int,
    "Jy": _parse_int,
    "cfl": _parse_float,
    "order_space": str,
    "order_time": str,
    "extra_rule": str,
    "boundary": str,
    "ic": str,
    "checkpoints": _parse_floats,
    "tau_end": _parse_float,
    "budget": _parse_int,
}

_ENUMS = {
    "regime": {r.value: r for r in Regime},
    "order_space": {"first": SpaceOrder.FIRST, "second": SpaceOrder.SECOND_MINMOD},
    "order_time": {t.value: t for t in TimeOrder},
    "extra_rule": {e.value: e for e in ExtraRule},
    "boundary": {b.value: b for b in BoundaryRule},
}


def _scan(text: str):
    """Tokenize config text into {key: (value_text, line_no)} with diagnostics."""
    raw: dict[str, tuple[str, int]] = {}
    errors: list[str] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            errors.append(f"line {lineno}: expected 'key = value', got {stripped!r}")
            continue
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key not in _PARSERS:
            errors.append(f"line {lineno}: unknown key {key!r}")
            continue
        if key in raw:
            errors.append(f"line {lineno}: duplicate key {key!r}")
            continue
        raw[key] = (value, lineno)
    return raw, errors


def parse_config(text: str) -> RunConfig:
    """Parse and validate a config document; raises ConfigError on any defect."""
    raw, errors = _scan(text)
    values: dict[str, object] = {}
    lines: dict[str, int] = {}
    for key, (valtext, lineno) in raw.items():
        lines[key] = lineno
        try:
            parsed = _PARSERS[key](valtext)
        except ValueError:
            errors.append(f"line {lineno}: cannot parse value for {key!r}: {valtext!r}")
            continue
        if key in _ENUMS:
            if parsed not in _ENUMS[key]:
                allowed = ", ".join(sorted(_ENUMS[key]))
                errors.append(f"line {lineno}: {key} must be one of {allowed}")
                continue
            parsed = _ENUMS[key][parsed]
        values[key] = parsed

    def complain(key, message):
        where = f"line {lines[key]}: " if key in lines else ""
        errors.append(where + message)

    dimension = values.get("dimension", 1)
    if dimension not in (1, 2):
        complain("dimension", "dimension must be 1 or 2")
        dimension = 1

    regime = values.get("regime")
    if regime is None:
        errors.append("missing required key 'regime'")
        regime = Regime.FLAT

    kappa = values.get("kappa", 0.0)
    if regime is not Regime.FLAT:
        if "kappa" not in values:
            errors.append(f"missing required key 'kappa' for {regime.value} runs")
            kappa = 1.0
        elif kappa <= 0.0:
            complain("kappa", "kappa must be positive")
            kappa = 1.0

    default_tau0 = {Regime.EXPANDING: 1.0, Regime.CONTRACTING: -1.0, Regime.FLAT: 0.0}
    tau0 = values.get("tau0", default_tau0[regime])
    if regime is Regime.EXPANDING and tau0 <= 0.0:
        complain("tau0", "expanding runs need tau0 > 0")
        tau0 = 1.0
    if regime is Regime.CONTRACTING and tau0 >= 0.0:
        complain("tau0", "contracting runs need tau0 < 0")
        tau0 = -1.0

    flux_kind = values.get("flux", "quadratic")
    if flux_kind not in ("quadratic", "cubic", "mixed"):
        complain("flux", "flux must be quadratic, cubic, or mixed")
        flux_kind = "quadratic"
    if dimension == 1 and flux_kind != "quadratic":
        complain("flux", "1D runs use the quadratic transport flux")
        flux_kind = "quadratic"
    beta = values.get("beta", 0.5)
    if "beta" in values and flux_kind != "mixed":
        complain("beta", "beta only applies to the mixed flux")
    if not 0.0 < beta < 1.0:
        complain("beta", "beta must lie in (0, 1)")
        beta = 0.5

    ic = values.get("ic")
    if ic is None:
        errors.append("missing required key 'ic'")
        ic = "zero"
    elif not presets.is_known(ic):
        complain("ic", f"unknown initial condition {ic!r}")
        ic = "zero"
    else:
        preset_dim = presets.PRESET_DIMENSION.get(ic)
        if preset_dim is not None and preset_dim != dimension:
            complain("ic", f"initial condition {ic!r} is {preset_dim}D")

    default_L = presets.DEFAULT_L_1D if dimension == 1 else presets.DEFAULT_L_2D
    if dimension == 2 and "L" in values and "Lx" in values:
        complain("Lx", "give either L or Lx, not both")
    L = values.get("Lx", values.get("L", default_L))
    Ly = values.get("Ly", L if dimension == 2 else 0.0)
    if dimension == 1:
        Ly = 0.0
    if L <= 0.0 or (dimension == 2 and Ly <= 0.0):
        complain("L", "domain lengths must be positive")
        L, Ly = default_L, (default_L if dimension == 2 else 0.0)

    if dimension == 2 and "J" in values and "Jx" in values:
        complain("Jx", "give either J or Jx, not both")
    J = values.get("Jx", values.get("J"))
    if J is None:
        errors.append("missing required key 'J' (cell count)")
        J = 16
    Jy = values.get("Jy", J if dimension == 2 else 0)
    if dimension == 1:
        Jy = 0
        for key in ("Jx", "Jy", "Lx", "Ly"):
            if key in values:
                complain(key, f"{key} only applies to 2D runs")
    if J < 4 or (dimension == 2 and Jy < 4):
        complain("J", "cell counts must be at least 4")
        J, Jy = max(J, 4), max(Jy, 4 if dimension == 2 else 0)
    if dimension == 2:
        dx, dy = L / J, Ly / Jy
        if abs(dx - dy) > 1e-12 * max(dx, dy):
            complain("Jy", "2D step rules require square cells (dx == dy)")

    cfl = values.get("cfl", 0.7)
    if not 0.0 < cfl <= 1.0:
        complain("cfl", "cfl must lie in (0, 1]")
        cfl = 0.7

    order_space = values.get("order_space", SpaceOrder.SECOND_MINMOD)
    default_time = (
        TimeOrder.SSPRK3
        if (dimension == 2 and regime is Regime.CONTRACTING)
        else TimeOrder.RK4
    )
    order_time = values.get("order_time", default_time)
    extra_rule = values.get("extra_rule", ExtraRule.NONE)
    if extra_rule is ExtraRule.KAPPA_SCALED and regime is not Regime.CONTRACTING:
        complain("extra_rule", "kappa_scaled only applies to contracting runs")
        extra_rule = ExtraRule.NONE
    boundary = values.get("boundary", BoundaryRule.OUTFLOW)

    tau_end = values.get("tau_end")
    if tau_end is None:
        if regime is Regime.CONTRACTING:
            tau_end = -1e-4
        else:
            errors.append("missing required key 'tau_end'")
            tau_end = tau0 + 1.0
    if regime is Regime.CONTRACTING and tau_end >= 0.0:
        complain("tau_end", "contracting runs need tau_end < 0")
        tau_end = -1e-4
    if tau_end <= tau0:
        complain("tau_end", f"tau_end must exceed tau0 = {tau0}")
        tau_end = tau0 + 1.0

    checkpoints = values.get("checkpoints", ())
    if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
        complain("checkpoints", "checkpoints must be strictly increasing")
        checkpoints = ()
    elif checkpoints and (checkpoints[0] <= tau0 or checkpoints[-1] >= tau_end):
        complain("checkpoints", "checkpoints must lie strictly between tau0 and tau_end")
        checkpoints = ()

    budget = values.get("budget", 10_000_000)
    if budget <= 0:
        complain("budget", "budget must be positive")
        budget = 10_000_000

    if errors:
        raise ConfigError("invalid configuration:\n" + "\n".join(errors))

    return RunConfig(
        dimension=dimension,
        regime=regime,
        kappa=kappa,
        tau0=tau0,
        flux_kind=flux_kind,
        beta=beta,
        L=L,
        Ly=Ly,
        J=J,
        Jy=Jy,
        cfl=cfl,
        order_space=order_space,
        order_time=order_time,
        extra_rule=extra_rule,
        boundary=boundary,
        ic=ic,
        checkpoints=tuple(checkpoints),
        tau_end=tau_end,
        budget=budget,
    )


def _background(cfg: RunConfig) -> Background:
    if cfg.regime is Regime.FLAT:
        return Background.flat(cfg.tau0)
    return Background(cfg.regime, cfg.kappa, cfg.tau0)


def _flux_model(cfg: RunConfig) -> FluxModel:
    if cfg.flux_kind == "cubic":
        return FluxModel.cubic()
    if cfg.flux_kind == "mixed":
        return FluxModel.mixed(cfg.beta)
    return FluxModel.quadratic()


def _load_table(path: str, shape) -> np.ndarray:
    data = np.loadtxt(path, dtype=float, delimiter=",")
    flat = np.asarray(data, dtype=float).reshape(-1)
    expected = int(np.prod(shape))
    if flat.size != expected:
        raise ConfigError(
            f"tabulated initial data in {path!r} has {flat.size} values, expected {expected}"
        )
    return flat.reshape(shape)


def initial_array(cfg: RunConfig, base_dir: Path | None = None):
    """Evaluate the configured initial condition on the configured grid."""
    if cfg.ic.startswith("table:"):
        path = cfg.ic[len("table:"):]
        if base_dir is not None and not Path(path).is_absolute():
            path = str(base_dir / path)
        shape = (cfg.J,) if cfg.dimension == 1 else (cfg.J, cfg.Jy)
        return _load_table(path, shape)
    if cfg.dimension == 1:
        grid = Grid1D(cfg.L, cfg.J)
        return presets.initial_values_1d(cfg.ic, grid.centers())
    grid = Grid2D(cfg.L, cfg.Ly, cfg.J, cfg.Jy)
    return presets.initial_values_2d(cfg.ic, grid.centers_x(), grid.centers_y())


def solver_config(cfg: RunConfig, base_dir: Path | None = None):
    """Build the dimensional solver config from a parsed RunConfig."""
    bg = _background(cfg)
    model = _flux_model(cfg)
    policy = StepPolicy(
        cfl_number=cfg.cfl,
        order_time=cfg.order_time,
        order_space=cfg.order_space,
        extra_rule=cfg.extra_rule,
    )
    initial = initial_array(cfg, base_dir)
    if cfg.dimension == 1:
        return RunConfig1D(
            grid=Grid1D(cfg.L, cfg.J),
            background=bg,
            flux=model,
            policy=policy,
            boundary=cfg.boundary,
            initial=initial,
            checkpoints=cfg.checkpoints,
            tau_end=cfg.tau_end,
            budget=cfg.budget,
        )
    return RunConfig2D(
        grid=Grid2D(cfg.L, cfg.Ly, cfg.J, cfg.Jy),
        background=bg,
        flux=model,
        policy=policy,
        boundary=cfg.boundary,
        initial=initial,
        checkpoints=cfg.checkpoints,
        tau_end=cfg.tau_end,
        budget=cfg.budget,
    )


__all__ = ["ConfigError", "RunConfig", "parse_config", "initial_array", "solver_config"]
