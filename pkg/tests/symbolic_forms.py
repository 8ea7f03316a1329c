"""Symbolic forms of the equations of motion shared by the tests.

derived(): commutator plus relaxation built from the Hamiltonian.
repaired(): the explicit equations used by selfcheck.
UNREPAIRED: an earlier hand-written set with its sign and index slips kept.
"""

from types import SimpleNamespace

import numpy as np
import sympy as sp

from lhmvapor.master_equation import DECAY_CHANNELS, DEPHASING_PAIRS
from lhmvapor.selfcheck import repaired_equations

I = sp.I
R = {(j, k): sp.Symbol(f"r{j}{k}") for j in range(1, 5) for k in range(1, 5)}
RHO = sp.Matrix(4, 4, lambda j, k: R[(j + 1, k + 1)])
Wc, Ws, Wp, Dc, Ds, Dp = sp.symbols("Omega_c Omega_s Omega_p Delta_c Delta_s Delta_p", real=True)
G = {ch: sp.Symbol(f"g{ch[0]}{ch[1]}", nonnegative=True) for ch in DECAY_CHANNELS}
GAM = {pr: sp.Symbol(f"G{pr[0]}{pr[1]}", nonnegative=True) for pr in DEPHASING_PAIRS}
SYM = SimpleNamespace(omega_c=Wc, omega_s=Ws, omega_p=Wp, delta_c=Dc, delta_s=Ds,
                      delta_p=Dp, decay=G, dephasing=GAM)


def r(j, k):
    return R[(j, k)]


def derived():
    h = sp.zeros(4, 4)
    h[1, 1], h[2, 2], h[3, 3] = Dc - Ds, Dc, Dc - Ds + Dp
    for (j, k), w in (((0, 2), Wc), ((1, 2), Ws), ((1, 3), Wp)):
        h[j, k] = h[k, j] = -w
    out = -I * (h * RHO - RHO * h)
    loss = {lvl: sum(G[ch] for ch in DECAY_CHANNELS if ch[0] == lvl) for lvl in range(1, 5)}
    for (src, dst) in DECAY_CHANNELS:
        out[dst - 1, dst - 1] += G[(src, dst)] * r(src, src)
        out[src - 1, src - 1] -= G[(src, dst)] * r(src, src)
    for (j, k) in DEPHASING_PAIRS:
        rate = GAM[(j, k)] + (loss[j] + loss[k]) / 2
        out[j - 1, k - 1] -= rate * r(j, k)
        out[k - 1, j - 1] -= rate * r(k, j)
    return out


def repaired():
    rho = np.array(RHO.tolist(), dtype=object)
    return sp.Matrix(repaired_equations(rho, SYM).tolist())


def g(a, b):
    """Rate gamma_ab by label (transfer b -> a); 1-2 is an exchange pair."""
    return G[(b, a)] if (b, a) in G else G[(a, b)]


# slips kept on purpose; damping terms omitted
UNREPAIRED = {
    (1, 1): g(1, 4) * r(4, 4) + g(1, 3) * r(3, 3) + g(1, 2) * r(2, 2) - I * Wc * (r(3, 1) - r(1, 3)),
    (2, 2): (g(2, 4) * r(4, 4) + g(2, 3) * r(3, 3) - g(1, 2) * r(2, 2) + g(2, 1) * r(1, 1)
             - I * Ws * (r(3, 2) - r(2, 3))),
    (3, 3): (-g(3, 4) * r(3, 3) - g(1, 3) * r(3, 3) - g(2, 3) * r(3, 3)
             - I * Wc * (r(3, 1) - r(1, 3)) - I * Ws * (r(3, 2) - r(2, 3))),
    (4, 4): -g(2, 4) * r(4, 4) - g(1, 4) * r(4, 4) + g(3, 4) * r(3, 3) + I * Wp * (r(2, 4) - r(4, 2)),
    (1, 2): -I * Wc * r(2, 3) - I * Ws * r(3, 1) - I * Wp * r(4, 1),
    (1, 3): -I * Wc * (r(1, 1) - r(3, 3)) - I * Ws * r(1, 2),
    (1, 4): -I * Wp * r(1, 2) - I * Wc * r(4, 3),
    (2, 3): -I * Ws * (r(2, 2) - r(3, 3)) - I * Wp * r(4, 3) - I * Wc * r(2, 1),
    (2, 4): -I * Wp * (r(2, 2) - r(4, 4)) - I * Wp * r(3, 4),
    (3, 4): -I * Wp * r(3, 2) - I * Ws * r(4, 2) - I * Wc * r(4, 1),
}

UPPER = [(j, k) for j in range(1, 5) for k in range(j, 5)]


def couplings(expr):
    """{Rabi symbol: set of unordered level pairs of the coherences it multiplies}."""
    out = {}
    for w in (Wc, Ws, Wp):
        coeff = sp.expand(expr).coeff(w)
        pairs = {frozenset((int(s.name[1]), int(s.name[2]))) for s in coeff.free_symbols
                 if s.name.startswith("r")}
        if pairs:
            out[w] = pairs
    return out


def upper_mismatches():
    """Upper-triangle entries where derived() and repaired() differ."""
    d, rep = derived(), sp.nsimplify(repaired())
    return [(j, k) for j, k in UPPER
            if sp.simplify(sp.expand(d[j - 1, k - 1] - rep[j - 1, k - 1])) != 0]
