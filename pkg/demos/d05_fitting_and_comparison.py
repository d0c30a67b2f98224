"""
Maximum likelihood and model comparison
=======================================

Fit the families to simulated and bundled data and rank them by AIC, AICc
and BIC.
"""

import numpy as np

from epdist import InapplicableModelError, dataio, estimate

###############################################################################
# Recover known parameters from a simulated sample.
ds = dataio.simulate_dataset("epd2", (2, 1), 5000, seed=0)
fit = estimate.fit_mle("epd2", ds)
print("estimates", np.round(fit.estimates, 4), "std errors", np.round(fit.std_errors, 4))
print("AIC", round(fit.aic, 3), "BIC", round(fit.bic, 3))

###############################################################################
# Compare nested EPD orders with the Kumaraswamy baseline on data drawn from
# the three-parameter family.
table = estimate.compare_models(dataio.bundled("example6"))
for row in table.rows:
    print(f"{row.model:12s} k={row.k}  loglik={row.loglik:10.3f}  AIC={row.aic:10.3f}")
print("best:", table.best)

###############################################################################
# Data with exact ones: the Kumaraswamy likelihood does not exist there, and
# the comparison leaves its row blank.
literacy = dataio.bundled("literacy")
try:
    estimate.fit_mle("kumaraswamy", literacy)
except InapplicableModelError as exc:
    print("kumaraswamy:", exc)
for rec in estimate.compare_models(literacy).to_records():
    print(rec["model"], rec["status"], rec["aic"] or "-")
