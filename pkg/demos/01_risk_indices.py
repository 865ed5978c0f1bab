"""Tour of the reliability index family.

A route travel time distributed N(mu, sigma) can be summarized by a
whole family of indices of the form mu + c * sigma.  This script walks
through the family for a 20-minute route with a 3-minute standard
deviation, and shows how the combined index sweeps from pessimistic to
optimistic as the weight lambda increases.
"""

import numpy as np

from cmte import IndexKind, RiskProfile, cmtt, mbtt, mett, risk_coefficient, ttb

mu, sigma, alpha = 20.0, 3.0, 0.9

print(f"route: mu = {mu} min, sigma = {sigma} min, confidence alpha = {alpha}\n")

print(f"  mean (MTT)           : {mu:8.3f}")
print(f"  budget (TTB)         : {ttb(mu, sigma, alpha):8.3f}")
print(f"  mean-below (MBTT)    : {mbtt(mu, sigma, alpha):8.3f}   <- optimistic")
print(f"  mean-excess (METT)   : {mett(mu, sigma, alpha):8.3f}   <- pessimistic")

# the recombination identity: alpha * below + (1 - alpha) * excess = mean
lhs = alpha * mbtt(mu, sigma, alpha) + (1 - alpha) * mett(mu, sigma, alpha)
print(f"\n  alpha*MBTT + (1-alpha)*METT = {lhs:.12f}  (equals mu)")

print("\ncombined index vs lambda (lambda = alpha is exactly risk-neutral):")
for lam in np.linspace(0.0, 1.0, 11):
    profile = RiskProfile(alpha, float(lam))
    c = risk_coefficient(IndexKind.CMTT, profile)
    attitude = "pessimistic" if c > 1e-12 else ("optimistic" if c < -1e-12 else "neutral")
    print(f"  lambda = {lam:3.1f}  ->  {cmtt(mu, sigma, profile):8.3f}"
          f"   (c = {c:+.4f}, {attitude})")
