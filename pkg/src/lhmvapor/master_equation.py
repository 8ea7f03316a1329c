"""Rotating-frame generator and steady state of the driven four-level atom.

Levels are labelled 1..4. The coupling field drives 1-3, the signal field
2-3 and the probe 2-4. Everything in this module is expressed in units of
the rate scale gamma; SI quantities only appear in :mod:`lhmvapor.response`.

Density matrices are vectorized column-major, so entry (row, col) of rho
(1-based) lives at index ``4*(col-1) + (row-1)``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Mapping

import numpy as np

from . import defaults
from .errors import DegenerateSteadyStateError, IntegrationError, ParameterError

log = logging.getLogger(__name__)

NLEVELS = 4

# Population transfer channels as (from_level, to_level).
DECAY_CHANNELS = ((4, 1), (3, 1), (2, 1), (4, 2), (3, 2), (3, 4), (1, 2))
# Coherence pairs carrying an independent transverse rate.
DEPHASING_PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))

# Config-key names of each channel. gamma_ab follows the equations of motion:
# gamma_12 rho_22 feeds level 1, gamma_34 rho_33 feeds level 4.
DECAY_KEYS = {
    (4, 1): "gamma_14",
    (3, 1): "gamma_13",
    (2, 1): "gamma_12",
    (4, 2): "gamma_24",
    (3, 2): "gamma_23",
    (3, 4): "gamma_34",
    (1, 2): "gamma_21",
}
DEPHASING_KEYS = {pair: f"Gamma_{pair[0]}{pair[1]}" for pair in DEPHASING_PAIRS}

STEADY_RESIDUAL_TOL = 1e-10
_TRACE_ROW = 0  # the rho_11 equation is swapped for Tr(rho) = 1
_COND_LIMIT = 1e13


def vec_index(row: int, col: int) -> int:
    """Position of the 1-based entry (row, col) of rho in vec(rho)."""
    return NLEVELS * (col - 1) + (row - 1)


def vec(rho: np.ndarray) -> np.ndarray:
    return np.asarray(rho, dtype=complex).reshape(NLEVELS * NLEVELS, order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    return np.asarray(v, dtype=complex).reshape(NLEVELS, NLEVELS, order="F")


TRACE_ROW = vec(np.eye(NLEVELS)).real


def _check_rate(name, value):
    if not isinstance(value, (int, float, np.floating, np.integer)):
        raise ParameterError(f"{name} must be a real number, got {value!r}")
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value!r}")
    if value < 0:
        raise ParameterError(f"{name} must be >= 0, got {value!r}")


@dataclass(frozen=True)
class SystemParams:
    """Physical inputs of the four-level vapor.

    Rabi frequencies, detunings, decay and dephasing rates are multiples of
    ``gamma_scale`` (s^-1). ``decay`` maps (from, to) level pairs to
    population transfer rates; ``dephasing`` maps ordered pairs (j < k) to
    transverse rates.
    """

    omega_p: float
    omega_s: float
    omega_c: float
    delta_p: float
    delta_s: float
    delta_c: float
    gamma_scale: float
    decay: Mapping[tuple, float]
    dephasing: Mapping[tuple, float]
    d24: float
    mu23: float
    density_n: float
    omega_probe0: float

    def __post_init__(self):
        object.__setattr__(self, "decay", dict(self.decay))
        object.__setattr__(self, "dephasing", dict(self.dephasing))
        self.validate()

    def validate(self):
        for name in ("omega_p", "omega_s", "omega_c", "gamma_scale", "d24",
                     "mu23", "density_n", "omega_probe0"):
            _check_rate(name, getattr(self, name))
        for name in ("delta_p", "delta_s", "delta_c"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")
        if self.gamma_scale == 0:
            raise ParameterError("gamma_scale must be positive")
        for channel in DECAY_CHANNELS:
            if channel not in self.decay:
                raise ParameterError(
                    f"missing decay channel {channel[0]}->{channel[1]} ({DECAY_KEYS[channel]})")
            _check_rate(DECAY_KEYS[channel], self.decay[channel])
        for pair in DEPHASING_PAIRS:
            if pair not in self.dephasing:
                raise ParameterError(f"missing dephasing rate {DEPHASING_KEYS[pair]}")
            _check_rate(DEPHASING_KEYS[pair], self.dephasing[pair])
        unknown = set(self.decay) - set(DECAY_CHANNELS)
        unknown |= set(self.dephasing) - set(DEPHASING_PAIRS)
        if unknown:
            raise ParameterError(f"unknown channels {sorted(unknown)}")

    def with_delta_p(self, delta_p: float) -> "SystemParams":
        return replace(self, delta_p=delta_p)

    def level_loss_rates(self) -> np.ndarray:
        """Total population outflow rate of each level."""
        loss = np.zeros(NLEVELS)
        for (src, _), rate in self.decay.items():
            loss[src - 1] += rate
        return loss


def canonical_params(**overrides) -> SystemParams:
    """Canonical parameter set; keyword overrides replace individual fields."""
    c = defaults.CANONICAL
    kwargs = dict(
        omega_p=c["omega_p"], omega_s=c["omega_s"], omega_c=c["omega_c"],
        delta_p=0.0, delta_s=c["delta_s"], delta_c=c["delta_c"],
        gamma_scale=c["gamma_scale"],
        decay={ch: c[key] for ch, key in DECAY_KEYS.items()},
        dephasing={pair: c[key] for pair, key in DEPHASING_KEYS.items()},
        d24=c["d24"], mu23=c["mu23"], density_n=c["density_n"],
        omega_probe0=c["omega_probe0"],
    )
    kwargs.update(overrides)
    return SystemParams(**kwargs)


def build_hamiltonian(params: SystemParams) -> np.ndarray:
    """H/hbar in the rotating frame, units of gamma.

    Diagonal energies (0, dc - ds, dc, dc - ds + dp) make rho_13, rho_23 and
    rho_24 oscillate at the coupling, signal and probe detunings.
    """
    p = params
    for name in ("omega_p", "omega_s", "omega_c", "delta_p", "delta_s", "delta_c"):
        if not math.isfinite(getattr(p, name)):
            raise ParameterError(f"{name} must be finite")
    h = np.zeros((NLEVELS, NLEVELS), dtype=complex)
    h[1, 1] = p.delta_c - p.delta_s
    h[2, 2] = p.delta_c
    h[3, 3] = p.delta_c - p.delta_s + p.delta_p
    h[0, 2] = h[2, 0] = -p.omega_c
    h[1, 2] = h[2, 1] = -p.omega_s
    h[1, 3] = h[3, 1] = -p.omega_p
    return h


def build_generator(params: SystemParams) -> np.ndarray:
    """16x16 generator L with d vec(rho)/dt = L vec(rho).

    Coherent part -i[H, .], population transfer for each decay channel, and
    coherence damping Gamma_jk + (loss_j + loss_k)/2.
    """
    params.validate()
    h = build_hamiltonian(params)
    eye = np.eye(NLEVELS)
    # vec(A X B) = (B^T kron A) vec(X)
    gen = -1j * (np.kron(eye, h) - np.kron(h.T, eye))

    for (src, dst), rate in params.decay.items():
        gen[vec_index(dst, dst), vec_index(src, src)] += rate
        gen[vec_index(src, src), vec_index(src, src)] -= rate

    loss = params.level_loss_rates()
    for j in range(1, NLEVELS + 1):
        for k in range(1, NLEVELS + 1):
            if j == k:
                continue
            pair = (min(j, k), max(j, k))
            damping = params.dephasing[pair] + 0.5 * (loss[j - 1] + loss[k - 1])
            gen[vec_index(j, k), vec_index(j, k)] -= damping
    return gen


def trace_residual(gen: np.ndarray) -> float:
    """max |vec(I)^T L|; zero for a trace-preserving generator."""
    return float(np.max(np.abs(TRACE_ROW @ gen)))


def steady_state(gen: np.ndarray) -> np.ndarray:
    """Unique unit-trace null vector of ``gen`` as a 4x4 density matrix.

    Raises DegenerateSteadyStateError when the null space is not
    one-dimensional or the solution fails the residual check.
    """
    gen = np.asarray(gen, dtype=complex)
    if gen.shape != (NLEVELS**2, NLEVELS**2):
        raise ParameterError(f"generator must be 16x16, got {gen.shape}")
    if not np.all(np.isfinite(gen)):
        raise ParameterError("generator contains non-finite entries")

    a = gen.copy()
    a[_TRACE_ROW, :] = TRACE_ROW
    rhs = np.zeros(NLEVELS**2, dtype=complex)
    rhs[_TRACE_ROW] = 1.0

    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        raise DegenerateSteadyStateError(
            f"steady state is not unique (condition number {cond:.3g})")
    v = np.linalg.solve(a, rhs)

    residual = float(np.max(np.abs(gen @ v)))
    if residual > STEADY_RESIDUAL_TOL:
        # includes the discarded rho_11 equation
        raise DegenerateSteadyStateError(
            f"steady-state residual {residual:.3g} exceeds {STEADY_RESIDUAL_TOL:g}")
    rho = unvec(v)
    return 0.5 * (rho + rho.conj().T)


def density_matrix_errors(rho: np.ndarray) -> dict:
    """Hermiticity, trace and positivity defects of ``rho``."""
    rho = np.asarray(rho, dtype=complex)
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    sym = 0.5 * (rho + rho.conj().T)
    return {
        "hermiticity": herm,
        "trace": float(abs(np.trace(rho) - 1.0)),
        "min_eigenvalue": float(np.min(np.linalg.eigvalsh(sym))),
    }


def is_density_matrix(rho, herm_tol=1e-12, trace_tol=1e-12, psd_tol=1e-8) -> bool:
    err = density_matrix_errors(rho)
    return (err["hermiticity"] < herm_tol and err["trace"] < trace_tol
            and err["min_eigenvalue"] > -psd_tol)


def rk4_step_matrix(gen: np.ndarray, dt: float) -> np.ndarray:
    """One classical Runge-Kutta step for the linear system v' = L v.

    For constant L the four stages collapse to the degree-4 Taylor
    polynomial of exp(dt L).
    """
    x = dt * np.asarray(gen, dtype=complex)
    eye = np.eye(x.shape[0], dtype=complex)
    x2 = x @ x
    return eye + x + x2 / 2 + x2 @ x / 6 + x2 @ x2 / 24


def time_evolve(params: SystemParams, rho0, t_final: float, dt: float) -> np.ndarray:
    """Integrate the master equation with fixed RK4 steps.

    ``round(t_final/dt)`` steps of size ``dt`` are taken. The n-step
    propagator is built by repeated squaring of the single-step matrix, which
    equals stepping n times; trace and magnitude are checked after every
    partial product.
    """
    if not (dt > 0 and math.isfinite(dt)):
        raise ParameterError(f"dt must be positive and finite, got {dt!r}")
    if not (math.isfinite(t_final) and t_final >= dt):
        raise ParameterError(f"t_final must be >= dt, got {t_final!r}")
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (NLEVELS, NLEVELS) or not is_density_matrix(rho0):
        raise ParameterError("rho0 is not a valid 4x4 density matrix")

    nsteps = int(round(t_final / dt))
    step = rk4_step_matrix(build_generator(params), dt)
    v = vec(rho0)
    tr0 = TRACE_ROW @ v
    max_drift = 0.0

    power = step
    remaining = nsteps
    while remaining:
        if remaining & 1:
            v = power @ v
            max_drift = max(max_drift, _check_progress(v, tr0, dt))
        remaining >>= 1
        if remaining:
            power = power @ power
            if not np.all(np.isfinite(power)):
                raise IntegrationError(
                    f"propagator overflowed; reduce dt (currently {dt:g})")

    if max_drift > 1e-10:
        log.warning("trace drift %.3g over %d steps", max_drift, nsteps)
    rho = unvec(v)
    asym = float(np.max(np.abs(rho - rho.conj().T)))
    log.debug("time_evolve: %d steps, trace drift %.3g, Hermitian asymmetry %.3g re-symmetrized",
              nsteps, max_drift, asym)
    return 0.5 * (rho + rho.conj().T)


def _check_progress(v, tr0, dt):
    if not np.all(np.isfinite(v)):
        raise IntegrationError(f"integration diverged; reduce dt (currently {dt:g})")
    d = float(abs(TRACE_ROW @ v - tr0))
    # entries of a physical density matrix never exceed 1 in modulus
    if d > 1e-6 or np.max(np.abs(v)) > 1.0 + 1e-6:
        raise IntegrationError(
            f"step size unstable (trace drift {d:.3g}); reduce dt (currently {dt:g})")
    return d
