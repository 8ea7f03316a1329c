"""Canonical parameter set of the four-level vapor.

Rates and frequencies are in units of gamma. Values without an
experimental anchor (probe Rabi frequency, dipole magnitudes, probe
carrier frequency) are documented defaults; see ``data/canonical.conf``.
"""

GAMMA_SCALE = 1.0e10  # s^-1

RATE = 1.8e-4

CANONICAL = {
    "omega_p": 1.0,
    "omega_s": 3.8,
    "omega_c": 1.8,
    "delta_s": 1.0e-4,
    "delta_c": 0.0,
    "gamma_scale": GAMMA_SCALE,
    "gamma_14": RATE,
    "gamma_13": RATE,
    "gamma_12": RATE,
    "gamma_24": RATE,
    "gamma_23": RATE,
    "gamma_34": 0.0076,
    "gamma_21": RATE,
    "Gamma_12": 1.0e-4,
    "Gamma_13": 1.0e-4,
    "Gamma_14": 1.0e-4,
    "Gamma_23": 0.005,
    "Gamma_24": 0.006,
    "Gamma_34": 0.01,
    # calibrated from d24 = 1e-29 C m and mu23 = one Bohr magneton
    "d24": 3.16e-28,
    "mu23": 5.03e-22,
    "density_n": 5.0e24,
    "omega_probe0": 2.4e15,
    "sweep_from": -5.0,
    "sweep_to": 5.0,
    "sweep_step": 0.025,
}

# Starting dipole magnitudes before calibration: typical atomic scales.
NOMINAL_D24 = 1.0e-29  # C m
NOMINAL_MU23 = 9.2740100783e-24  # J/T, Bohr magneton

# Peak |N gamma| windows used by calibrate_dipoles.
TARGET_NGAMMA_E = (1.0e3, 1.0e4)
TARGET_NGAMMA_M = (29.0, 32.0)
