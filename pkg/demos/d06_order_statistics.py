"""
Sample minimum and maximum
==========================

The maximum of n EPD draws is again EPD; the minimum is a Kumaraswamy-G law.
"""

import numpy as np
from scipy import stats

from epdist import epd2, orderstats

params, n = (1.0, 1.0), 5

###############################################################################
# Closure under maxima: parameters simply scale by n.
print("max ~", orderstats.max_params(params, n))
t = np.linspace(0.1, 1, 4)
print(orderstats.max_pdf(params, n, t) - epd2.pdf((n * 1.0, n * 1.0), t))

###############################################################################
# Simulated batch maxima and minima against the exact laws.
batches = epd2.sample_n(params, n * 5000, seed=3).reshape(5000, n)
print("max KS p:", stats.kstest(batches.max(axis=1), lambda x: orderstats.max_cdf(params, n, x)).pvalue)
print("min KS p:", stats.kstest(batches.min(axis=1), lambda x: orderstats.min_cdf(params, n, x)).pvalue)
