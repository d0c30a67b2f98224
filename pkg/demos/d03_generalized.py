"""
The r-parameter generalisation
==============================

Polynomial exponents of higher degree, sampled by bracketed root finding and
integrated numerically for moments.
"""

import numpy as np

from epdist import epd2, gepd

coeffs = (1.0, 0.001, 4.0)

###############################################################################
# Trailing zero coefficients give back the two-parameter family exactly.
t = np.linspace(0.05, 1, 5)
print(np.max(np.abs(gepd.pdf((2, 1, 0, 0), t) - epd2.pdf((2, 1), t))))

###############################################################################
# Sampling solves P(v) = -log u for the unique root v >= 0.
u = np.array([0.01, 0.1, 0.5, 0.9])
draws = gepd.sample_from_u(coeffs, u)
print("draws:", np.round(draws, 6))
print("cdf at draws:", gepd.cdf(coeffs, draws))
print("median:", gepd.median(coeffs))

###############################################################################
# Moments have no closed form beyond degree two; quadrature reports its error.
for k in (1, 2):
    value, err = gepd.moment_numeric(coeffs, k, full_output=True)
    print(f"E[T^{k}] = {value:.8f}  (abs error <= {err:.1e})")

###############################################################################
# A five-parameter shape with a zero leading coefficient vanishes at t = 1.
print("pdf at 1:", gepd.pdf((0, 1, 0, 0.5, 0.1), 1.0))
