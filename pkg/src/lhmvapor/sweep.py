"""Probe-detuning sweeps, group index, band search and dipole calibration."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import defaults
from .errors import (CalibrationError, DegenerateSteadyStateError,
                     ParameterError, PoleError)
from .master_equation import SystemParams, build_generator, steady_state
from .response import (CODATA, OpticalResponse, electric_polarizability,
                       magnetic_polarizability, optical_response)

log = logging.getLogger(__name__)

UNIFORM_TOL = 1e-12
NAN = float("nan")
CNAN = complex(NAN, NAN)


class GridError(ParameterError):
    pass


@dataclass(frozen=True)
class SweepGrid:
    from_delta: float
    to_delta: float
    step: float

    def __post_init__(self):
        for name in ("from_delta", "to_delta", "step"):
            if not math.isfinite(getattr(self, name)):
                raise GridError(f"{name} must be finite")
        if not self.step > 0:
            raise GridError(f"step must be > 0, got {self.step}")
        if not self.from_delta < self.to_delta:
            raise GridError("from_delta must be < to_delta")
        if self.npoints < 3:
            raise GridError(f"grid has {self.npoints} points; at least 3 are needed")

    @property
    def npoints(self) -> int:
        span = (self.to_delta - self.from_delta) / self.step
        return int(math.floor(span + 1e-9)) + 1

    def points(self) -> np.ndarray:
        return self.from_delta + self.step * np.arange(self.npoints)


DEFAULT_GRID = SweepGrid(defaults.CANONICAL["sweep_from"], defaults.CANONICAL["sweep_to"],
                         defaults.CANONICAL["sweep_step"])


@dataclass(frozen=True)
class ResponseTable:
    """Rows of OpticalResponse in strictly increasing detuning order."""

    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        d = [r.delta_p for r in self.rows]
        if any(not math.isfinite(x) for x in d):
            raise GridError("row detunings must be finite")
        if any(b <= a for a, b in zip(d, d[1:])):
            raise GridError("rows must have strictly increasing, distinct detunings")

    @classmethod
    def from_rows(cls, rows) -> "ResponseTable":
        return cls(tuple(sorted(rows, key=lambda r: r.delta_p)))

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    @property
    def delta_p(self) -> np.ndarray:
        return np.array([r.delta_p for r in self.rows])

    def complex_column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows], dtype=complex)

    def column(self, name: str) -> np.ndarray:
        """Real-valued column by its CSV name (``re_eps``, ``im_n``, ...)."""
        if name in ("delta_p", "absorption_a"):
            return np.array([getattr(r, name) for r in self.rows], dtype=float)
        if name == "group_index":
            return np.array([NAN if r.group_index is None else r.group_index
                             for r in self.rows], dtype=float)
        part, _, base = name.partition("_")
        field = {"eps": "eps_r", "mu": "mu_r", "n": "n"}.get(base)
        if part not in ("re", "im") or field is None:
            raise KeyError(name)
        values = self.complex_column(field)
        return values.real if part == "re" else values.imag

    def spacing(self) -> float:
        """Common grid step; raises GridError for a non-uniform table."""
        d = self.delta_p
        if len(d) < 2:
            raise GridError("need at least two rows for a spacing")
        steps = np.diff(d)
        h = float(np.mean(steps))
        if np.max(np.abs(steps - h)) > UNIFORM_TOL * abs(h) + 1e-15:
            raise GridError("detuning grid is not uniform")
        return h


@dataclass(frozen=True)
class Band:
    lo: float
    hi: float


def _flagged_row(delta_p, reason):
    return OpticalResponse(delta_p=float(delta_p), gamma_e=CNAN, gamma_m=CNAN, chi_e=CNAN,
                           eps_r=CNAN, mu_r=CNAN, n=CNAN, absorption_a=NAN, flag=reason)


def steady_states(params: SystemParams, grid: SweepGrid):
    """Steady state at every grid point; None where it is not unique."""
    out = []
    for d in grid.points():
        try:
            out.append(steady_state(build_generator(params.with_delta_p(float(d)))))
        except DegenerateSteadyStateError as exc:
            log.warning("degenerate steady state at delta_p=%g: %s", d, exc)
            out.append(None)
    return out


def _rows_from_states(params, grid, states, constants=CODATA):
    rows = []
    for d, rho in zip(grid.points(), states):
        d = float(d)
        if rho is None:
            rows.append(_flagged_row(d, "degenerate"))
            continue
        try:
            rows.append(optical_response(rho, params.with_delta_p(d), constants))
        except PoleError as exc:
            log.warning("pole at delta_p=%g: %s", d, exc)
            rows.append(_flagged_row(d, "pole"))
    return ResponseTable(tuple(rows))


def sweep_detuning(params: SystemParams, grid: SweepGrid, constants=CODATA) -> ResponseTable:
    """Evaluate the steady-state response at every grid detuning.

    Pole or degeneracy at a point flags that row (NaN values) instead of
    aborting the sweep.
    """
    return _rows_from_states(params, grid, steady_states(params, grid), constants)


def group_index(table: ResponseTable, omega_probe0: float, gamma_scale: float) -> ResponseTable:
    """Fill Re[n + omega dn/domega] by finite differences over the grid.

    Interior points use central differences, the two end points one-sided
    second-order stencils.
    """
    if len(table) < 3:
        raise GridError("group index needs at least 3 rows")
    h = table.spacing()
    n = table.complex_column("n")
    dn_ddelta = np.gradient(n, h, edge_order=2)
    omega = omega_probe0 + table.delta_p * gamma_scale
    ng = (n + omega * dn_ddelta / gamma_scale).real
    rows = tuple(replace(r, group_index=float(g)) for r, g in zip(table.rows, ng))
    return ResponseTable(rows)


PREDICATES: dict[str, Callable[[OpticalResponse], bool]] = {
    "double_negative": lambda r: r.eps_r.real < 0 and r.mu_r.real < 0,
    "gain": lambda r: r.absorption_a < 0,
    "negative_eps": lambda r: r.eps_r.real < 0,
    "negative_mu": lambda r: r.mu_r.real < 0,
}


def find_bands(table: ResponseTable, predicate: str) -> list[Band]:
    """Maximal runs of consecutive rows satisfying a named predicate."""
    try:
        test = PREDICATES[predicate]
    except KeyError:
        raise ParameterError(
            f"unknown predicate {predicate!r}; valid: {', '.join(sorted(PREDICATES))}") from None
    rows = sorted(table.rows, key=lambda r: r.delta_p)
    bands = []
    start = None
    for i, row in enumerate(rows):
        if test(row):
            if start is None:
                start = i
        elif start is not None:
            bands.append(Band(rows[start].delta_p, rows[i - 1].delta_p))
            start = None
    if start is not None:
        bands.append(Band(rows[start].delta_p, rows[-1].delta_p))
    return bands


@dataclass(frozen=True)
class CalibrationAudit:
    factor_e: float
    factor_m: float
    iterations_e: int
    iterations_m: int
    peak_ngamma_e: float
    peak_ngamma_m: float


MAX_BISECTIONS = 60
FACTOR_BOUNDS = (1e-3, 1e3)


def _peak(values):
    values = np.abs(np.asarray(values))
    values = values[np.isfinite(values)]
    return float(values.max()) if values.size else 0.0


def _check_window(name, window):
    lo, hi = window
    if not (math.isfinite(lo) and math.isfinite(hi) and 0 < lo < hi):
        raise ParameterError(f"{name} target window must satisfy 0 < lo < hi, got {window}")


def _bisect_factor(peak_at, window, label):
    """Multiplicative factor f in FACTOR_BOUNDS with peak_at(f) inside window.

    peak_at must be increasing in f.
    """
    lo, hi = window
    current = peak_at(1.0)
    if lo <= current <= hi:
        return 1.0, 0
    a, b = (math.log10(x) for x in FACTOR_BOUNDS)
    p_lo, p_hi = peak_at(10**a), peak_at(10**b)
    if p_hi < lo or p_lo > hi:
        raise CalibrationError(
            f"{label}: target [{lo:g}, {hi:g}] unreachable; peak |N gamma| spans "
            f"[{p_lo:.4g}, {p_hi:.4g}] over factors {FACTOR_BOUNDS} (currently {current:.4g})")
    for it in range(1, MAX_BISECTIONS + 1):
        m = 0.5 * (a + b)
        p = peak_at(10**m)
        if lo <= p <= hi:
            return 10**m, it
        if p < lo:
            a = m
        else:
            b = m
    raise CalibrationError(f"{label}: bisection did not converge (last peak {p:.4g})")


def calibrate_dipoles(params: SystemParams, grid: SweepGrid,
                      target_e=defaults.TARGET_NGAMMA_E,
                      target_m=defaults.TARGET_NGAMMA_M,
                      constants=CODATA) -> tuple[SystemParams, CalibrationAudit]:
    """Rescale d24 and mu23 so the peak |N gamma_e| and |N gamma_m| over the
    sweep land inside the target windows.

    The steady states do not depend on the dipole magnitudes, so they are
    computed once. |N gamma_e| grows as d24^2; |N gamma_m| is linear in both
    mu23 and d24, so the electric factor is fixed first.
    """
    _check_window("electric", target_e)
    _check_window("magnetic", target_m)
    states = [rho for rho in steady_states(params, grid) if rho is not None]
    if not states:
        raise CalibrationError("no grid point has a unique steady state")
    n = params.density_n

    def peak_e(f):
        p = replace(params, d24=params.d24 * f)
        return _peak([n * electric_polarizability(r, p, constants) for r in states])

    factor_e, it_e = _bisect_factor(peak_e, target_e, "electric")
    params_e = replace(params, d24=params.d24 * factor_e)

    def peak_m(f):
        p = replace(params_e, mu23=params_e.mu23 * f)
        return _peak([n * magnetic_polarizability(r, p, constants) for r in states])

    factor_m, it_m = _bisect_factor(peak_m, target_m, "magnetic")
    calibrated = replace(params_e, mu23=params_e.mu23 * factor_m)

    table = sweep_detuning(calibrated, grid, constants)
    achieved_e = _peak(n * table.complex_column("gamma_e"))
    achieved_m = _peak(n * table.complex_column("gamma_m"))
    for label, value, (lo, hi) in (("electric", achieved_e, target_e),
                                   ("magnetic", achieved_m, target_m)):
        if not lo <= value <= hi:
            raise CalibrationError(
                f"{label}: re-sweep peak {value:.6g} outside [{lo:g}, {hi:g}]")
    audit = CalibrationAudit(factor_e, factor_m, it_e, it_m, achieved_e, achieved_m)
    log.info("calibration: %s", audit)
    return calibrated, audit
