"""Flat ``key = value`` configuration files."""

from __future__ import annotations

import logging
import math
from importlib import resources

from . import defaults
from .errors import ConfigError
from .master_equation import (DECAY_KEYS, DEPHASING_KEYS, SystemParams)
from .sweep import SweepGrid

log = logging.getLogger(__name__)

KEYS = (
    "omega_p", "omega_s", "omega_c", "delta_s", "delta_c", "gamma_scale",
    "gamma_14", "gamma_13", "gamma_12", "gamma_24", "gamma_23", "gamma_34", "gamma_21",
    "Gamma_12", "Gamma_13", "Gamma_14", "Gamma_23", "Gamma_24", "Gamma_34",
    "d24", "mu23", "density_n", "omega_probe0", "sweep_from", "sweep_to", "sweep_step",
)


def parse_values(text: str) -> dict:
    """Key/value pairs of a config document, without applying defaults."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        if key not in KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        try:
            number = float(value)
        except ValueError:
            raise ConfigError(f"{key}: not a number: {value!r}", lineno) from None
        if not math.isfinite(number):
            raise ConfigError(f"{key}: value must be finite, got {value!r}", lineno)
        values[key] = number
    return values


def build(values: dict) -> tuple[SystemParams, SweepGrid]:
    v = dict(values)
    for key in KEYS:
        if key not in v:
            v[key] = defaults.CANONICAL[key]
            log.info("config: %s not set, using default %r", key, v[key])
    params = SystemParams(
        omega_p=v["omega_p"], omega_s=v["omega_s"], omega_c=v["omega_c"],
        delta_p=0.0, delta_s=v["delta_s"], delta_c=v["delta_c"],
        gamma_scale=v["gamma_scale"],
        decay={ch: v[key] for ch, key in DECAY_KEYS.items()},
        dephasing={pair: v[key] for pair, key in DEPHASING_KEYS.items()},
        d24=v["d24"], mu23=v["mu23"], density_n=v["density_n"],
        omega_probe0=v["omega_probe0"],
    )
    grid = SweepGrid(v["sweep_from"], v["sweep_to"], v["sweep_step"])
    return params, grid


def parse_config(text: str) -> tuple[SystemParams, SweepGrid]:
    """Parse config text; absent keys take the canonical defaults."""
    return build(parse_values(text))


def load_config(path) -> tuple[SystemParams, SweepGrid]:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def config_values(params: SystemParams, grid: SweepGrid) -> dict:
    values = {
        "omega_p": params.omega_p, "omega_s": params.omega_s, "omega_c": params.omega_c,
        "delta_s": params.delta_s, "delta_c": params.delta_c,
        "gamma_scale": params.gamma_scale,
        "d24": params.d24, "mu23": params.mu23, "density_n": params.density_n,
        "omega_probe0": params.omega_probe0,
        "sweep_from": grid.from_delta, "sweep_to": grid.to_delta, "sweep_step": grid.step,
    }
    values.update({key: params.decay[ch] for ch, key in DECAY_KEYS.items()})
    values.update({key: params.dephasing[pair] for pair, key in DEPHASING_KEYS.items()})
    return values


def render_config(params: SystemParams, grid: SweepGrid, header: str | None = None) -> str:
    """Config text that parses back to exactly ``params`` and ``grid``."""
    values = config_values(params, grid)
    lines = [f"# {line}" for line in (header or "").splitlines()]
    lines += [f"{key} = {float(values[key])!r}" for key in KEYS]
    return "\n".join(lines) + "\n"


def canonical_config_text() -> str:
    """The annotated canonical config shipped with the package."""
    return resources.files("lhmvapor").joinpath("data/canonical.conf").read_text(encoding="utf-8")
