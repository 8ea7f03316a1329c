"""Polarizabilities, local-field corrections and macroscopic optical response."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import constants as _sc

from .errors import ParameterError, PoleError

POLE_TOL = 1e-14


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants (CODATA via scipy.constants)."""

    eps0: float = _sc.epsilon_0
    mu0: float = _sc.mu_0
    hbar: float = _sc.hbar
    c: float = _sc.c


CODATA = PhysicalConstants()


@dataclass(frozen=True)
class OpticalResponse:
    """Optical response at one probe detuning.

    Polarizabilities are in m^3; ``delta_p`` in units of gamma. A row whose
    evaluation failed carries NaNs and a ``flag`` describing why.
    """

    delta_p: float
    gamma_e: complex
    gamma_m: complex
    chi_e: complex
    eps_r: complex
    mu_r: complex
    n: complex
    absorption_a: float
    group_index: float | None = None
    flag: str | None = None


def _probe_rabi_si(params):
    omega = params.omega_p * params.gamma_scale
    if not omega > 0:
        raise ParameterError("probe Rabi frequency must be > 0 to normalize the polarization")
    return omega


def electric_polarizability(rho, params, k: PhysicalConstants = CODATA) -> complex:
    """gamma_e = 2 d24^2 rho_42 / (eps0 hbar Omega_p)."""
    omega = _probe_rabi_si(params)
    rho42 = complex(np.asarray(rho)[3, 1])
    return 2.0 * params.d24**2 * rho42 / (k.eps0 * k.hbar * omega)


def magnetic_polarizability(rho, params, k: PhysicalConstants = CODATA) -> complex:
    """gamma_m = 2 mu0 mu23 rho_23 / B_p with B_p = E_p / c and E_p = hbar Omega_p / d24."""
    omega = _probe_rabi_si(params)
    rho23 = complex(np.asarray(rho)[1, 2])
    return 2.0 * k.mu0 * params.mu23 * rho23 * k.c * params.d24 / (k.hbar * omega)


def _cm_denominator(ngamma):
    denom = 1.0 - ngamma / 3.0
    if abs(denom) < POLE_TOL:
        raise PoleError(f"Clausius-Mossotti pole at N*gamma = {ngamma!r}", ngamma)
    return denom


def permittivity(gamma_e: complex, density_n: float) -> tuple[complex, complex]:
    """Local-field corrected susceptibility and relative permittivity."""
    x = density_n * complex(gamma_e)
    chi = x / _cm_denominator(x)
    return chi, 1.0 + chi


def permeability(gamma_m: complex, density_n: float) -> complex:
    x = density_n * complex(gamma_m)
    return (1.0 + 2.0 * x / 3.0) / _cm_denominator(x)


def polarizability_from_permeability(mu_r: complex, density_n: float) -> complex:
    """Inverse magnetic Clausius-Mossotti map: gamma_m from mu_r."""
    mu_r = complex(mu_r)
    denom = 2.0 / 3.0 + mu_r / 3.0
    if abs(denom) < POLE_TOL:
        raise PoleError(f"inverse Clausius-Mossotti pole at mu_r = {mu_r!r}", mu_r)
    return (mu_r - 1.0) / denom / density_n


def _sqrt_upper(z: complex) -> complex:
    # arg z taken in (-pi/2, 3pi/2]; cut on the negative imaginary axis
    if z.imag == 0:  # also catches -0.0
        if z.real >= 0:
            return complex(math.sqrt(z.real), 0.0)
        return complex(0.0, math.sqrt(-z.real))
    root = cmath.sqrt(z)
    if z.real <= 0 and z.imag < 0:
        return -root
    return root


def refractive_index(eps_r: complex, mu_r: complex) -> complex:
    """n = sqrt(eps_r) * sqrt(mu_r), each root with its cut on the -i axis.

    Matches the principal per-factor rule for passive media and keeps
    Re n < 0 whenever Re eps_r < 0 and Re mu_r < 0, also with gain.
    """
    eps_r, mu_r = complex(eps_r), complex(mu_r)
    branch = _sqrt_upper(eps_r) * _sqrt_upper(mu_r)
    # same root from one sqrt of the product: fewer roundings in n^2
    root = cmath.sqrt(eps_r * mu_r)
    return root if abs(root - branch) <= abs(root + branch) else -root


def absorption_coefficient(n: complex) -> float:
    """A = 2 pi Im n; negative values mean gain."""
    return 2.0 * math.pi * complex(n).imag


def optical_response(rho, params, k: PhysicalConstants = CODATA) -> OpticalResponse:
    """Full single-point pipeline from a steady state to the observables."""
    gamma_e = electric_polarizability(rho, params, k)
    gamma_m = magnetic_polarizability(rho, params, k)
    chi_e, eps_r = permittivity(gamma_e, params.density_n)
    mu_r = permeability(gamma_m, params.density_n)
    n = refractive_index(eps_r, mu_r)
    return OpticalResponse(
        delta_p=params.delta_p, gamma_e=gamma_e, gamma_m=gamma_m, chi_e=chi_e,
        eps_r=eps_r, mu_r=mu_r, n=n, absorption_a=absorption_coefficient(n),
    )
