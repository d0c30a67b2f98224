"""
The complementary distribution
==============================

Swapping the roles of distribution and quantile function gives a second
family whose sampler needs no inversion at all.
"""

import numpy as np

from epdist import cepd, epd2

params = (1.0, 1.0)

###############################################################################
# The complementary cdf inverts the EPD cdf.
t = np.array([0.1, 0.4, 0.8])
print(cepd.cdf(params, epd2.cdf(params, t)))

###############################################################################
# Means of the pair add up to one.
print(cepd.moment(params, 1) + epd2.moment(params, 1))

###############################################################################
# Shape: for alpha1 > 0 the density is unbounded near 0. Its single critical
# point is a local minimum, and t = 1 can be a secondary peak.
m = cepd.mode_cubic(params)
print("supremum at", m.location, "kind", m.kind)
print("local minimum at", m.stationary_point, "secondary peak at 1:", m.local_max_at_one)
print("cubic cross-check matched:", m.cubic_matches, "roots:", m.cubic_roots)

grid = np.array([1e-6, 1e-3, m.stationary_point, 0.9, 1.0])
print("pdf:", np.round(cepd.pdf(params, grid), 4))
