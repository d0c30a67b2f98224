"""
Evaluating the extended power distribution
==========================================

Density, distribution function, quantiles and the mode of EPD(alpha0, alpha1).
"""

import numpy as np

from epdist import epd2

params = (1.0, 1.0)

###############################################################################
# The density on a coarse grid. At t = 1 it equals alpha0.
t = np.linspace(0.1, 1.0, 10)
for ti, f, F in zip(t, epd2.pdf(params, t), epd2.cdf(params, t)):
    print(f"t={ti:.1f}  pdf={f:.5f}  cdf={F:.5f}")

###############################################################################
# Quantiles are closed form, so cdf(quantile(p)) recovers p to rounding.
p = np.array([0.05, 0.25, 0.5, 0.75, 0.95])
q = epd2.quantile(params, p)
print("quantiles:", np.round(q, 5))
print("roundtrip error:", np.max(np.abs(epd2.cdf(params, q) - p)))

###############################################################################
# The mode is interior when alpha0 < 1 + alpha1; otherwise the density
# increases all the way to t = 1.
for prm in [(1, 1), (0.5, 3), (3, 1), (1, 0)]:
    print(prm, epd2.mode(prm))

###############################################################################
# alpha1 = 0 is the power-function law t**alpha0; (1, 0) is uniform.
print("EPD(1, 0) pdf:", epd2.pdf((1, 0), t[:3]))
