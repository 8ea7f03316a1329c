import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lhmvapor.errors import ParameterError, PoleError
from lhmvapor.master_equation import build_generator, canonical_params, steady_state
from lhmvapor.response import (CODATA, absorption_coefficient, electric_polarizability,
                               magnetic_polarizability, optical_response, permeability,
                               permittivity, polarizability_from_permeability, refractive_index)

# Omega_p * gamma_scale = 1e8 s^-1
HAND = canonical_params(omega_p=0.01, d24=1e-29, mu23=9.274e-24)


def rho_with(j, k, value):
    rho = np.zeros((4, 4), dtype=complex)
    rho[j, k] = value
    rho[k, j] = np.conj(value)
    return rho


def test_constants_consistent():
    assert CODATA.c**2 * CODATA.eps0 * CODATA.mu0 == pytest.approx(1, rel=1e-9)


def test_electric_zero_coherence():
    assert electric_polarizability(np.zeros((4, 4)), HAND) == 0


def test_electric_hand_value():
    ge = electric_polarizability(rho_with(3, 1, 0.1 + 0.05j), HAND)
    assert ge.real == pytest.approx(2.14e-22, rel=5e-3)
    assert ge.imag == pytest.approx(1.07e-22, rel=5e-3)
    exact = 2e-58 * (0.1 + 0.05j) / (CODATA.eps0 * CODATA.hbar * 1e8)
    assert ge == pytest.approx(exact, rel=1e-14)


def test_electric_reads_lower_entry():
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 3] = 1.0
    assert electric_polarizability(rho, HAND) == 0


def test_magnetic_hand_value():
    gm = magnetic_polarizability(rho_with(1, 2, 1.0), HAND)
    # direct evaluation gives 6.63e-24; the hand estimate 6.66e-24 is within 1%
    assert gm.real == pytest.approx(6.66e-24, rel=1e-2)
    exact = 2 * CODATA.mu0 * 9.274e-24 * CODATA.c * 1e-29 / (CODATA.hbar * 1e8)
    assert gm == pytest.approx(exact, rel=1e-14)
    assert magnetic_polarizability(np.zeros((4, 4)), HAND) == 0


@pytest.mark.parametrize("fn,idx", [(electric_polarizability, (3, 1)),
                                    (magnetic_polarizability, (1, 2))])
def test_polarizability_linear(fn, idx):
    one = fn(rho_with(*idx, 0.3 - 0.2j), HAND)
    two = fn(rho_with(*idx, 0.6 - 0.4j), HAND)
    assert two == 2 * one


@pytest.mark.parametrize("fn", [electric_polarizability, magnetic_polarizability])
def test_polarizability_needs_probe(fn):
    with pytest.raises(ParameterError):
        fn(np.eye(4) / 4, canonical_params(omega_p=0.0))


def test_clausius_mossotti_exact_cases():
    assert permittivity(0, 5e24) == (0, 1)
    assert permeability(0, 5e24) == 1
    assert permittivity(6, 1.0) == (-6, -5)
    assert permeability(6, 1.0) == -5


def test_eps_is_one_plus_chi(rng):
    for _ in range(100):
        x = complex(*rng.normal(size=2))
        chi, eps = permittivity(x, 1.0)
        assert eps == 1 + chi


@pytest.mark.parametrize("fn", [permittivity, permeability])
def test_pole(fn):
    with pytest.raises(PoleError) as info:
        fn(3.0, 1.0)
    assert info.value.value == 3.0


def test_inverse_pole():
    with pytest.raises(PoleError):
        polarizability_from_permeability(-2.0, 1.0)


@settings(max_examples=300, deadline=None)
@given(st.complex_numbers(min_magnitude=1e-2, max_magnitude=50, allow_nan=False))
def test_permeability_round_trip(x):
    # below |x| ~ 1e-2, mu - 1 cancels and costs ~eps/|x| relative accuracy
    if abs(1 - x / 3) < 1e-3:
        return
    mu = permeability(x / 5e24, 5e24)
    if abs(2 / 3 + mu / 3) < 1e-3:
        return
    assert abs(polarizability_from_permeability(mu, 5e24) * 5e24 - x) <= 1e-12 * abs(x)


@pytest.mark.parametrize("eps,mu,n", [(1, 1, 1), (-5, -5, -5), (4, 1, 2), (1, 4, 2),
                                      (-4, 1, 2j), (-1, -4, -2)])
def test_refractive_index_cases(eps, mu, n):
    assert refractive_index(eps, mu) == n


@settings(max_examples=500, deadline=None)
@given(st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False),
       st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False))
def test_n_squared(eps, mu):
    n = refractive_index(eps, mu)
    assert abs(n * n - eps * mu) <= 1e-12 * abs(eps * mu)


@settings(max_examples=500, deadline=None)
@given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(-0.1, 0.1), st.floats(-0.1, 0.1))
def test_double_negative_branch(er, mr, fe, fm):
    # any mix of loss and gain in the two factors
    n = refractive_index(complex(-er, fe * er), complex(-mr, fm * mr))
    assert n.real < 0


@settings(max_examples=300, deadline=None)
@given(st.floats(0.01, 10), st.floats(0.01, 10), st.floats(0, 5), st.floats(0, 5))
def test_passive_media_principal(er, mr, ie, im):
    # with both imaginary parts >= 0 the rule is the principal per-factor product
    eps, mu = complex(er, ie), complex(mr, im)
    n = refractive_index(eps, mu)
    assert n == pytest.approx(cmath.sqrt(eps) * cmath.sqrt(mu), rel=1e-12)
    assert n.imag >= 0


@pytest.mark.parametrize("n,a", [(1.7, 0.0), (-5 + 0.5j, math.pi), (-5 - 0.5j, -math.pi)])
def test_absorption(n, a):
    assert absorption_coefficient(n) == pytest.approx(a, abs=1e-15)


def test_optical_response_pipeline(params):
    rho = steady_state(build_generator(params.with_delta_p(1.0)))
    r = optical_response(rho, params.with_delta_p(1.0))
    assert r.delta_p == 1.0
    assert r.eps_r == 1 + r.chi_e
    assert abs(r.n**2 - r.eps_r * r.mu_r) <= 1e-12 * abs(r.eps_r * r.mu_r)
    assert r.absorption_a == 2 * math.pi * r.n.imag
    assert r.group_index is None and r.flag is None
