"""Embedded invariant suite behind ``lhmvapor selfcheck``."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

import numpy as np

from .master_equation import (DECAY_CHANNELS, DEPHASING_PAIRS, build_generator,
                              canonical_params, density_matrix_errors, steady_state,
                              time_evolve, trace_residual, unvec, vec)
from .response import (permeability, permittivity, polarizability_from_permeability,
                       refractive_index)
from .sweep import DEFAULT_GRID


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def random_params(rng):
    """Random valid parameter set spanning the physically relevant scales."""
    return canonical_params(
        omega_p=rng.uniform(1e-3, 5), omega_s=rng.uniform(0, 5), omega_c=rng.uniform(0, 5),
        delta_p=rng.uniform(-5, 5), delta_s=rng.uniform(-5, 5), delta_c=rng.uniform(-5, 5),
        decay={ch: rng.uniform(0, 1e-2) for ch in DECAY_CHANNELS},
        dephasing={pair: rng.uniform(0, 1e-2) for pair in DEPHASING_PAIRS},
    )


def random_density_matrix(rng, dim=4):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def repaired_equations(rho, p):
    """d rho/dt written out equation by equation (upper triangle).

    Independent of the superoperator assembly in build_generator; used as a
    cross-check. Frequencies in units of gamma.
    """
    r = lambda j, k: rho[j - 1, k - 1]  # noqa: E731
    g = {ch: p.decay[ch] for ch in DECAY_CHANNELS}
    a, b, w = p.omega_c, p.omega_s, p.omega_p
    e2 = p.delta_c - p.delta_s
    e3 = p.delta_c
    e4 = p.delta_c - p.delta_s + p.delta_p
    loss = {
        1: g[(1, 2)],
        2: g[(2, 1)],
        3: g[(3, 1)] + g[(3, 2)] + g[(3, 4)],
        4: g[(4, 1)] + g[(4, 2)],
    }

    def damp(j, k):
        return p.dephasing[(j, k)] + 0.5 * (loss[j] + loss[k])

    d = np.zeros((4, 4), dtype=np.result_type(rho, complex))
    d[0, 0] = (g[(4, 1)] * r(4, 4) + g[(3, 1)] * r(3, 3) + g[(2, 1)] * r(2, 2)
               - g[(1, 2)] * r(1, 1) + 1j * a * (r(3, 1) - r(1, 3)))
    d[1, 1] = (g[(4, 2)] * r(4, 4) + g[(3, 2)] * r(3, 3) - g[(2, 1)] * r(2, 2)
               + g[(1, 2)] * r(1, 1) + 1j * b * (r(3, 2) - r(2, 3))
               + 1j * w * (r(4, 2) - r(2, 4)))
    d[2, 2] = (-loss[3] * r(3, 3) - 1j * a * (r(3, 1) - r(1, 3))
               - 1j * b * (r(3, 2) - r(2, 3)))
    d[3, 3] = -loss[4] * r(4, 4) + g[(3, 4)] * r(3, 3) + 1j * w * (r(2, 4) - r(4, 2))
    d[0, 1] = (-(damp(1, 2) - 1j * e2) * r(1, 2) + 1j * a * r(3, 2)
               - 1j * b * r(1, 3) - 1j * w * r(1, 4))
    d[0, 2] = (-(damp(1, 3) - 1j * e3) * r(1, 3) + 1j * a * (r(3, 3) - r(1, 1))
               - 1j * b * r(1, 2))
    d[0, 3] = -(damp(1, 4) - 1j * e4) * r(1, 4) + 1j * a * r(3, 4) - 1j * w * r(1, 2)
    d[1, 2] = (-(damp(2, 3) - 1j * (e3 - e2)) * r(2, 3) + 1j * b * (r(3, 3) - r(2, 2))
               + 1j * w * r(4, 3) - 1j * a * r(2, 1))
    d[1, 3] = (-(damp(2, 4) - 1j * (e4 - e2)) * r(2, 4) + 1j * b * r(3, 4)
               + 1j * w * (r(4, 4) - r(2, 2)))
    d[2, 3] = (-(damp(3, 4) - 1j * (e4 - e3)) * r(3, 4) + 1j * a * r(1, 4)
               + 1j * b * r(2, 4) - 1j * w * r(3, 2))
    return d


def check_generator(rng, count=100):
    t0 = time.perf_counter()
    worst_trace = worst_eq = 0.0
    iu = np.triu_indices(4)
    for _ in range(count):
        p = random_params(rng)
        gen = build_generator(p)
        worst_trace = max(worst_trace, trace_residual(gen))
        rho = random_density_matrix(rng)
        lhs = unvec(gen @ vec(rho))
        worst_eq = max(worst_eq, float(np.max(np.abs((lhs - repaired_equations(rho, p))[iu]))))
    elapsed = time.perf_counter() - t0
    ok = worst_trace < 1e-12 and worst_eq < 1e-12 and elapsed < 5
    return CheckResult("generator validity", ok,
                       f"trace residual {worst_trace:.2e}, equation mismatch {worst_eq:.2e}, "
                       f"{elapsed:.2f}s")


def check_steady_states(params=None, grid=DEFAULT_GRID):
    params = params or canonical_params()
    worst = dict(residual=0.0, hermiticity=0.0, trace=0.0)
    min_eig = math.inf
    for d in grid.points():
        gen = build_generator(params.with_delta_p(float(d)))
        rho = steady_state(gen)
        err = density_matrix_errors(rho)
        worst["residual"] = max(worst["residual"], float(np.max(np.abs(gen @ vec(rho)))))
        worst["hermiticity"] = max(worst["hermiticity"], err["hermiticity"])
        worst["trace"] = max(worst["trace"], err["trace"])
        min_eig = min(min_eig, err["min_eigenvalue"])
    ok = (worst["residual"] < 1e-10 and worst["hermiticity"] < 1e-12
          and worst["trace"] < 1e-12 and min_eig > -1e-8)
    return CheckResult("steady-state quality", ok,
                       f"residual {worst['residual']:.2e}, hermiticity {worst['hermiticity']:.2e}, "
                       f"trace {worst['trace']:.2e}, min eigenvalue {min_eig:.2e}")


def check_oracle(params=None, detunings=(-2.0, 0.0, 2.0), t_final=5.6e4, dt=1e-2):
    params = params or canonical_params()
    rho0 = np.diag([1.0, 0, 0, 0]).astype(complex)
    worst = 0.0
    for d in detunings:
        p = params.with_delta_p(d)
        rho_t = time_evolve(p, rho0, t_final, dt)
        worst = max(worst, float(np.max(np.abs(rho_t - steady_state(build_generator(p))))))
    return CheckResult("oracle equivalence", worst < 1e-5, f"max deviation {worst:.2e}")


def check_clausius_mossotti(rng, count=10_000):
    exact = (permittivity(0, 5e24) == (0, 1) and permeability(0, 5e24) == 1
             and permittivity(6, 1.0) == (-6, -5) and permeability(6, 1.0) == -5)
    n = 5e24
    worst = 0.0
    for _ in range(count):
        x = complex(*rng.uniform(-20, 20, 2))
        if abs(1 - x / 3) < 1e-3:
            continue
        mu = permeability(x / n, n)
        if abs(2 / 3 + mu / 3) < 1e-3:
            continue
        back = polarizability_from_permeability(mu, n) * n
        worst = max(worst, abs(back - x) / abs(x))
    return CheckResult("Clausius-Mossotti identities", exact and worst < 1e-12,
                       f"hand cases {'exact' if exact else 'WRONG'}, round-trip {worst:.2e}")


def check_branch(rng, count=10_000):
    worst = 0.0
    dn_ok = True
    for _ in range(count):
        e = complex(*rng.uniform(-10, 10, 2))
        m = complex(*rng.uniform(-10, 10, 2))
        nv = refractive_index(e, m)
        worst = max(worst, abs(nv * nv - e * m) / abs(e * m))
        er, mr = -rng.uniform(0.1, 10), -rng.uniform(0.1, 10)
        e2 = complex(er, rng.uniform(-0.1, 0.1) * abs(er))
        m2 = complex(mr, rng.uniform(-0.1, 0.1) * abs(mr))
        dn_ok &= refractive_index(e2, m2).real < 0
    fixed = refractive_index(-5, -5) == -5
    return CheckResult("refractive-index branch", worst < 1e-12 and dn_ok and fixed,
                       f"n^2 error {worst:.2e}, double-negative Re n<0 {dn_ok}, n(-5,-5)=-5 {fixed}")


WEAK_PROBE_DETUNINGS = (-3.0, -2.0, -1.0, 1.0, 2.0, 3.0)


def check_weak_probe(params=None, detunings=WEAK_PROBE_DETUNINGS):
    params = params or canonical_params()
    worst = 0.0
    for d in detunings:
        vals = []
        for wp in (1e-4, 1e-3):
            p = replace(params, omega_p=wp, delta_p=d)
            vals.append(steady_state(build_generator(p))[1, 3] / wp)
        worst = max(worst, abs(vals[0] - vals[1]) / abs(vals[0]))
    return CheckResult("weak-probe linearity", bool(worst < 0.01), f"max relative change {worst:.2e}")


def run_all(seed=20240607):
    rng = np.random.default_rng(seed)
    return [
        check_generator(rng),
        check_steady_states(),
        check_oracle(),
        check_clausius_mossotti(rng),
        check_branch(rng),
        check_weak_probe(),
    ]
