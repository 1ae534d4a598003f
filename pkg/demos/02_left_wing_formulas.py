"""The left-wing approximation family on a CEV smile.

With an atom at zero the implied volatility grows like sqrt(2 log(x0/K))
as the strike K falls, and the refinements differ in what they feed to
the inverse of the perturbed normal CDF U_K: the bare mass, the full
CDF at the strike, or the put-transform G.  This script tabulates every
variant against the quadrature oracle and shows the accuracy ranking,
including the formula built on the plain normal quantile.

The vol is calibrated so the mass at zero equals 0.0707, the anchor
value of the published comparison; see the test suite for why the flat
0.2 vol does not reproduce that mass.
"""

import math

from scipy.optimize import brentq

from atomvol import (
    CevModel,
    CevParams,
    smile_dmhj,
    smile_leading,
    smile_three_term_G,
    smile_three_term_atom,
    smile_three_term_pT,
)

TARGET_MASS = 0.0707
sigma = brentq(
    lambda s: CevModel(CevParams(s0=0.05, sigma=s, rho=0.6, T=1.2)).mass - TARGET_MASS,
    0.05,
    1.0,
)
model = CevModel(CevParams(s0=0.05, sigma=sigma, rho=0.6, T=1.2))
market = model.market()
atom = model.atom_model()
print(f"calibrated sigma = {sigma:.9f} so that m_T = {model.mass:.4f}")

header = f"{'k':>4} {'exact':>9} {'leading':>9} {'atom':>9} {'p_T':>9} {'G':>9} {'DMHJ':>9}"
print("\nimplied volatility by formula:")
print(header)
for k in range(-2, -11, -1):
    K = 0.05 * math.exp(k)
    exact = model.exact_smile(K)
    lead = smile_leading(market, K, model.put_price(K))
    t_atom = smile_three_term_atom(market, K, model.mass)
    t_pt = smile_three_term_pT(market, K, atom)
    t_g = smile_three_term_G(market, K, atom)
    dmhj = smile_dmhj(market, K, model.mass)
    print(
        f"{k:>4} {exact:9.5f} {lead:9.5f} {t_atom:9.5f} {t_pt:9.5f} "
        f"{t_g:9.5f} {dmhj:9.5f}"
    )

print("\nabsolute errors against the oracle (three-term atom vs plain quantile):")
print(f"{'k':>4} {'|err atom|':>11} {'|err DMHJ|':>11} {'ratio':>7}")
for k in range(-4, -11, -1):
    K = 0.05 * math.exp(k)
    exact = model.exact_smile(K)
    e3 = abs(smile_three_term_atom(market, K, model.mass) - exact)
    ed = abs(smile_dmhj(market, K, model.mass) - exact)
    print(f"{k:>4} {e3:11.5f} {ed:11.5f} {ed / e3:7.1f}")

print(
    "\nthe strike-dependent quantile buys an order of magnitude at every "
    "depth on this configuration."
)
