"""Maximum-likelihood fitting, information criteria and model comparison.

Every family is fitted over a box (nonnegative shape coefficients, with a
strictly positive floor where the family's density would vanish or blow up on
the data). Optimisation is a bounded Nelder-Mead simplex from several
deterministic starting points, followed where an analytic gradient exists by
a bounded quasi-Newton polish. Boundary optima are common for the EPD
families (coefficients estimated as exactly zero), which is why the simplex,
not a gradient method, does the global work.

Model identifiers: ``"kumaraswamy"``, ``"cepd"``, and ``"epd<r>"`` for the
r-parameter EPD (``"epd2"`` is the two-parameter family).
"""

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import optimize

from . import cepd, gepd, kumaraswamy
from ._util import data_values
from .dataio import Dataset, simulate_dataset
from .exceptions import (
    ConvergenceError,
    DegenerateDataError,
    DomainError,
    EpdError,
    InapplicableModelError,
)

__all__ = [
    "FitOptions",
    "FitResult",
    "InformationCriteria",
    "ComparisonRow",
    "ComparisonTable",
    "SimulationReport",
    "TABLE1_ROWS",
    "fit_mle",
    "information_criteria",
    "compare_models",
    "simulation_study",
    "example6_study",
    "model_loglik",
    "DEFAULT_FAMILIES",
]

DEFAULT_FAMILIES = ("kumaraswamy", "epd2", "epd3", "epd4")

UPPER_BOUND = 1e6
POSITIVE_FLOOR = 1e-10
BOUNDARY_TOL = 1e-8
LATTICE = (0.1, 1.0, 5.0)

# (truth, reference estimate from one simulated sample of 5000)
TABLE1_ROWS = [
    ((2.0, 1.0), (2.0042, 1.0088)),
    ((1.0, 1.0), (1.0110, 1.0022)),
    ((1.2, 3.3), (1.2093, 3.3191)),
    ((0.02, 5.0), (0.0174, 5.0162)),
    ((3.0, 8.0), (3.0528, 8.0279)),
    ((0.8, 5.0), (0.8301, 4.9695)),
    ((0.8, 25.0), (0.8555, 25.5528)),
    ((1.0, 0.01), (1.0047, 0.0063)),
]


@dataclass
class FitOptions:
    """Optimiser settings.

    ``starts`` are extra user-supplied starting points, always optimised.
    Of the generated starts (quantile heuristics plus the lattice
    ``{0.1, 1, 5}`` per coefficient) the ``n_local`` with highest initial
    log-likelihood are optimised.
    """

    starts: list = field(default_factory=list)
    max_iter: int = 4000
    xatol: float = 1e-10
    fatol: float = 1e-12
    n_local: int = 3
    polish: bool = True


class InformationCriteria(NamedTuple):
    aic: float
    aicc: float | None
    bic: float


def information_criteria(loglik, k, n):
    """AIC, AICc and BIC. AICc is ``None`` when ``n <= k + 1``."""
    if k < 0 or n < 1:
        raise DomainError("need k >= 0 and n >= 1")
    aic = 2 * k - 2 * loglik
    aicc = aic + 2 * k * (k + 1) / (n - k - 1) if n > k + 1 else None
    bic = k * math.log(n) - 2 * loglik
    return InformationCriteria(aic, aicc, bic)


@dataclass
class FitResult:
    model: str
    estimates: np.ndarray
    loglik: float
    converged: bool
    iterations: int
    n: int
    std_errors: np.ndarray | None
    boundary_flags: np.ndarray
    start_index: int
    message: str = ""

    @property
    def k(self):
        return self.estimates.size

    @property
    def criteria(self):
        return information_criteria(self.loglik, self.k, self.n)

    @property
    def aic(self):
        return self.criteria.aic

    @property
    def aicc(self):
        return self.criteria.aicc

    @property
    def bic(self):
        return self.criteria.bic

    def to_dict(self):
        ic = self.criteria
        return {
            "model": self.model,
            "estimates": [float(x) for x in self.estimates],
            "loglik": float(self.loglik),
            "aic": ic.aic,
            "aicc": ic.aicc,
            "bic": ic.bic,
            "converged": bool(self.converged),
            "iterations": int(self.iterations),
            "n": int(self.n),
            "std_errors": None if self.std_errors is None else [float(s) for s in self.std_errors],
            "boundary_flags": [bool(b) for b in self.boundary_flags],
        }


# -- per-family likelihood kernels -----------------------------------------
#
# Each kernel precomputes data summaries once and exposes loglik / grad /
# hessian closures in the unconstrained-by-type coefficient vector, returning
# -inf outside the density's domain so the simplex can step over it.


class _Kernel(NamedTuple):
    loglik: callable
    grad: callable
    hessian: callable
    lower: np.ndarray
    heuristics: list


def _epd_kernel(r, t):
    L = np.log(t)
    v = -L
    h = np.arange(1, r + 1)
    basis = h * v[:, None] ** (h - 1)
    lin = np.array([(-1) ** (j - 1) * np.sum(L**j) for j in h])
    sum_L = np.sum(L)

    def loglik(c):
        D = basis @ c
        if np.any(D <= 0):
            return -np.inf
        return float(np.sum(np.log(D)) - sum_L + lin @ c)

    def grad(c):
        D = basis @ c
        return (basis / D[:, None]).sum(axis=0) + lin

    def hessian(c):
        w = basis / (basis @ c)[:, None]
        return -(w.T @ w)

    lower = np.zeros(r)
    if np.any(t == 1):
        lower[0] = POSITIVE_FLOOR
    return _Kernel(loglik, grad, hessian, lower, _epd_quantile_starts(r, t))


def _ecdf_pairs(t, max_points=200):
    ts = np.sort(t)
    n = ts.size
    p = (np.arange(1, n + 1) - 0.5) / n
    idx = np.unique(np.linspace(0, n - 1, min(n, max_points)).astype(int))
    return ts[idx], p[idx]


def _epd_quantile_starts(r, t):
    # -log F(t) = P(-log t) is linear in the coefficients: fit it to the ECDF
    ts, p = _ecdf_pairs(t)
    keep = ts < 1
    if keep.sum() < 2:
        return []
    v = -np.log(ts[keep])
    y = -np.log(p[keep])
    X = v[:, None] ** np.arange(1, r + 1)
    try:
        c, _ = optimize.nnls(X, y)
    except (RuntimeError, ValueError):
        return []
    if not np.any(c > 0):
        return []
    c = np.maximum(c, 1e-3) if np.any(t == 1) else c
    return [c]


def _cepd_kernel(t):
    L = np.log(t)

    def loglik(c):
        a0, a1 = c
        if a0 <= 0 or a1 < 0:
            return -np.inf
        r = np.sqrt(a0 * a0 - 4 * a1 * L)
        return float(np.sum(-np.log(r) - L + 2 * L / (a0 + r)))

    def grad(c):
        return cepd.score(tuple(c), t)

    # -log t = alpha0 w + alpha1 w**2 with w = -log G(t)
    ts, p = _ecdf_pairs(t)
    w = -np.log(p)
    starts = []
    try:
        c, _ = optimize.nnls(np.column_stack([w, w * w]), -np.log(ts))
        if c[0] > 0:
            starts.append(c)
    except (RuntimeError, ValueError):
        pass
    lower = np.array([POSITIVE_FLOOR, 0.0])
    return _Kernel(loglik, grad, None, lower, starts)


def _kumaraswamy_kernel(t):
    L = np.log(t)
    n = t.size
    sum_L = np.sum(L)

    def loglik(c):
        a, b = c
        if a <= 0 or b <= 0:
            return -np.inf
        return float(n * np.log(a * b) + (a - 1) * sum_L + (b - 1) * np.sum(np.log(-np.expm1(a * L))))

    def grad(c):
        return kumaraswamy.score(tuple(c), t)

    # profile likelihood over a: for fixed a the MLE of b is closed form
    best = None
    for a in np.geomspace(0.05, 50, 60):
        s = np.sum(np.log(-np.expm1(a * L)))
        if not np.isfinite(s) or s >= 0:
            continue
        b = -n / s
        ll = loglik((a, b))
        if best is None or ll > best[0]:
            best = (ll, np.array([a, b]))
    starts = [] if best is None else [best[1]]
    lower = np.array([1e-8, 1e-8])
    return _Kernel(loglik, grad, None, lower, starts)


def _parse_model(model):
    if model in ("kumaraswamy", "cepd"):
        return model, 2
    m = re.fullmatch(r"epd(\d+)", model)
    if m and int(m.group(1)) >= 1:
        return "epd", int(m.group(1))
    raise DomainError(f"unknown model {model!r}; use 'kumaraswamy', 'cepd' or 'epd<r>'")


def _kernel(model, t):
    family, r = _parse_model(model)
    if family == "kumaraswamy":
        if np.any(t == 1):
            raise InapplicableModelError(
                "Kumaraswamy is not applicable: log-likelihood undefined at t = 1"
            )
        return _kumaraswamy_kernel(t)
    if family == "cepd":
        return _cepd_kernel(t)
    return _epd_kernel(r, t)


def model_loglik(model, estimates, data):
    """Log-likelihood of ``model`` at ``estimates`` through the public family API."""
    family, r = _parse_model(model)
    est = tuple(float(x) for x in estimates)
    if family == "kumaraswamy":
        return kumaraswamy.loglik(est, data)
    if family == "cepd":
        return cepd.loglik(est, data)
    return gepd.loglik(est, data)


def _fd_hessian(grad, x, lower):
    """Symmetrised central differences of an analytic gradient."""
    k = x.size
    H = np.empty((k, k))
    for j in range(k):
        h = 1e-5 * max(abs(x[j]), 1e-3)
        h = min(h, 0.5 * (x[j] - lower[j])) if x[j] - lower[j] > 0 else h
        e = np.zeros(k)
        e[j] = h
        H[:, j] = (grad(x + e) - grad(x - e)) / (2 * h)
    return 0.5 * (H + H.T)


def _initial_simplex(x0, lower):
    k = x0.size
    simplex = [x0]
    for j in range(k):
        step = 0.25 * max(abs(x0[j]), 0.05)
        x = x0.copy()
        x[j] = x0[j] + step if x0[j] + step < UPPER_BOUND else x0[j] - step
        simplex.append(np.maximum(x, lower))
    return np.array(simplex)


def _local_fit(kernel, x0, options):
    lower = kernel.lower
    bounds = optimize.Bounds(lower, np.full_like(lower, UPPER_BOUND))
    neg = lambda c: -kernel.loglik(np.asarray(c))  # noqa: E731
    with np.errstate(all="ignore"):
        nm = optimize.minimize(
            neg,
            x0,
            method="Nelder-Mead",
            bounds=bounds,
            options={
                "xatol": options.xatol,
                "fatol": options.fatol,
                "maxiter": options.max_iter,
                "maxfev": 2 * options.max_iter,
                "initial_simplex": _initial_simplex(np.asarray(x0, float), lower),
                "adaptive": x0.size > 2,
            },
        )
    x, f, nit, ok = np.clip(nm.x, lower, UPPER_BOUND), nm.fun, nm.nit, nm.success
    if options.polish and kernel.grad is not None and np.isfinite(f):
        with np.errstate(all="ignore"):
            try:
                lb = optimize.minimize(
                    neg,
                    x,
                    jac=lambda c: -kernel.grad(np.asarray(c)),
                    method="L-BFGS-B",
                    bounds=bounds,
                    options={"ftol": 1e-15, "gtol": 1e-10, "maxiter": options.max_iter},
                )
                if np.isfinite(lb.fun) and lb.fun <= f:
                    x, f = np.clip(lb.x, lower, UPPER_BOUND), lb.fun
                    ok = ok or lb.success
                nit += lb.nit
            except (ValueError, FloatingPointError):
                pass
    return x, -f, nit, ok


def _generated_starts(kernel, k):
    starts = [np.asarray(s, float) for s in kernel.heuristics]
    starts += [np.array(p) for p in itertools.product(LATTICE, repeat=k)]
    return [np.maximum(s, kernel.lower) for s in starts]


def _projected_gradient(g, x, lower):
    pg = g.copy()
    at_lower = x <= lower + BOUNDARY_TOL
    pg[at_lower] = np.maximum(pg[at_lower], 0.0)
    return pg


def fit_mle(model, data, options=None, **kwargs):
    """Maximum-likelihood fit of ``model`` to ``data``.

    Keyword arguments override fields of ``FitOptions``. Raises
    ``InapplicableModelError`` when the family cannot describe the data
    (Kumaraswamy with exact ones), ``DegenerateDataError`` when the
    likelihood has no finite maximiser, and ``ConvergenceError`` when no
    start yields a finite likelihood.
    """
    options = options or FitOptions()
    for key, val in kwargs.items():
        setattr(options, key, val)
    t = data_values(data)
    _, k = _parse_model(model)
    kernel = _kernel(model, t)

    if np.ptp(t) == 0:
        raise DegenerateDataError(
            f"all observations equal {float(t[0])!r}: the likelihood increases without bound"
        )

    user = [np.maximum(np.asarray(s, float), kernel.lower) for s in options.starts]
    generated = _generated_starts(kernel, k)
    init_ll = [kernel.loglik(s) for s in generated]
    order = sorted(range(len(generated)), key=lambda i: (-_finite(init_ll[i]), i))
    chosen = [(len(user) + i, generated[i]) for i in order[: options.n_local] if np.isfinite(init_ll[i])]
    chosen = list(enumerate(user)) + chosen
    if not chosen:
        raise ConvergenceError(f"{model}: no starting point has a finite likelihood")

    best = None
    iterations = 0
    for idx, x0 in chosen:
        if not np.isfinite(kernel.loglik(x0)):
            continue
        x, ll, nit, ok = _local_fit(kernel, x0, options)
        iterations += nit
        if best is None or ll > best[1]:
            best = (x, ll, ok, idx)
    if best is None or not np.isfinite(best[1]):
        raise ConvergenceError(f"{model}: likelihood is not finite at any start")

    x, ll, ok, idx = best
    if np.any(x >= 0.999 * UPPER_BOUND):
        raise DegenerateDataError(
            f"{model}: estimates diverge (hit the bound {UPPER_BOUND:g})",
            best=x,
            diagnostics={"loglik": ll},
        )

    boundary = x <= kernel.lower + BOUNDARY_TOL
    # the exact public loglik, not the kernel, is what the result reports
    ll = model_loglik(model, x, t)

    converged = ok
    if kernel.grad is not None:
        pg = _projected_gradient(kernel.grad(x), x, kernel.lower)
        converged = bool(np.linalg.norm(pg) <= 1e-4 * (1 + abs(ll)))

    std_errors = None
    if not np.any(boundary):
        H = kernel.hessian(x) if kernel.hessian is not None else _fd_hessian(kernel.grad, x, kernel.lower)
        try:
            cov = np.linalg.inv(-H)
            d = np.diag(cov)
            if np.all(d > 0) and np.all(np.isfinite(d)):
                std_errors = np.sqrt(d)
        except np.linalg.LinAlgError:
            pass

    return FitResult(
        model=model,
        estimates=x,
        loglik=ll,
        converged=converged,
        iterations=iterations,
        n=t.size,
        std_errors=std_errors,
        boundary_flags=boundary,
        start_index=idx,
        message="" if converged else "gradient tolerance not met",
    )


def _finite(x):
    return x if np.isfinite(x) else -np.inf


# -- comparison ------------------------------------------------------------


@dataclass
class ComparisonRow:
    model: str
    k: int
    status: str  # "ok", "inapplicable" or "failed"
    loglik: float | None = None
    aic: float | None = None
    aicc: float | None = None
    bic: float | None = None
    estimates: list | None = None
    message: str = ""


@dataclass
class ComparisonTable:
    n: int
    rows: list
    best: dict

    CRITERIA = ("aic", "aicc", "bic")
    COLUMNS = ("model", "k", "status", "loglik", "aic", "aicc", "bic", "best", "estimates")

    def row(self, model):
        return next(r for r in self.rows if r.model == model)

    def ranking(self, criterion):
        ok = [r for r in self.rows if getattr(r, criterion) is not None]
        return [r.model for r in sorted(ok, key=lambda r: getattr(r, criterion))]

    def to_dict(self):
        return {
            "n": self.n,
            "rows": [
                {
                    "model": r.model,
                    "k": r.k,
                    "status": r.status,
                    "loglik": r.loglik,
                    "aic": r.aic,
                    "aicc": r.aicc,
                    "bic": r.bic,
                    "estimates": r.estimates,
                    "message": r.message,
                }
                for r in self.rows
            ],
            "best": dict(self.best),
        }

    def to_records(self):
        """Flat rows for CSV output; inapplicable cells are empty strings."""
        out = []
        for r in self.rows:
            wins = [c for c in self.CRITERIA if self.best.get(c) == r.model]
            out.append(
                {
                    "model": r.model,
                    "k": r.k,
                    "status": r.status,
                    "loglik": "" if r.loglik is None else f"{r.loglik:.10g}",
                    "aic": "" if r.aic is None else f"{r.aic:.10g}",
                    "aicc": "" if r.aicc is None else f"{r.aicc:.10g}",
                    "bic": "" if r.bic is None else f"{r.bic:.10g}",
                    "best": ";".join(wins),
                    "estimates": "" if r.estimates is None else ";".join(f"{x:.10g}" for x in r.estimates),
                }
            )
        return out


def compare_models(data, families=DEFAULT_FAMILIES, options=None):
    """Fit each family and tabulate AIC / AICc / BIC with the minimiser per criterion.

    Nested EPD fits are warm-started from the next-smaller order padded with a
    zero, so the fitted log-likelihood never decreases with r.
    """
    t = data_values(data)
    n = t.size
    rows = []
    fitted = {}
    for model in families:
        family, k = _parse_model(model)
        opts = FitOptions(**vars(options)) if options is not None else FitOptions()
        opts.starts = list(opts.starts)
        if family == "epd":
            smaller = [m for m in fitted if _parse_model(m)[0] == "epd" and _parse_model(m)[1] < k]
            for m in smaller:
                est = fitted[m].estimates
                opts.starts.append(np.concatenate([est, np.zeros(k - est.size)]))
        try:
            res = fit_mle(model, t, opts)
        except InapplicableModelError as exc:
            rows.append(ComparisonRow(model, k, "inapplicable", message=str(exc)))
            continue
        except EpdError as exc:
            rows.append(ComparisonRow(model, k, "failed", message=str(exc)))
            continue
        fitted[model] = res
        ic = res.criteria
        rows.append(
            ComparisonRow(
                model,
                k,
                "ok",
                loglik=res.loglik,
                aic=ic.aic,
                aicc=ic.aicc,
                bic=ic.bic,
                estimates=[float(x) for x in res.estimates],
                message=res.message,
            )
        )
    if not fitted:
        raise InapplicableModelError("no requested family could be fitted to the data")
    best = {}
    for c in ComparisonTable.CRITERIA:
        cands = [(getattr(r, c), i) for i, r in enumerate(rows) if getattr(r, c) is not None]
        if cands:
            best[c] = rows[min(cands)[1]].model
    return ComparisonTable(n=n, rows=rows, best=best)


# -- simulation harnesses --------------------------------------------------


@dataclass
class SimulationReport:
    truth: tuple
    n: int
    seeds: list
    estimates: np.ndarray  # one row per seed
    failures: dict

    @property
    def mean(self):
        return self.estimates.mean(axis=0)

    @property
    def deviation(self):
        return self.mean - np.asarray(self.truth)

    @property
    def relative_deviation(self):
        truth = np.asarray(self.truth)
        return self.deviation / truth

    def to_dict(self):
        return {
            "truth": list(self.truth),
            "n": self.n,
            "seeds": list(self.seeds),
            "estimates": self.estimates.tolist(),
            "mean": self.mean.tolist(),
            "deviation": self.deviation.tolist(),
            "relative_deviation": self.relative_deviation.tolist(),
            "failures": {str(k): v for k, v in self.failures.items()},
        }


def simulation_study(truth, n=5000, seeds=range(20), model="epd2", options=None):
    """Simulate ``n`` EPD draws per seed, refit, and collect the estimates."""
    truth = tuple(float(x) for x in truth)
    family = "epd2" if len(truth) == 2 else "gepd"
    estimates, failures = [], {}
    for seed in seeds:
        ds = simulate_dataset(family, truth, n, seed)
        try:
            estimates.append(fit_mle(model, ds, options).estimates)
        except EpdError as exc:
            failures[seed] = str(exc)
    est = np.array(estimates) if estimates else np.empty((0, len(truth)))
    return SimulationReport(truth, n, [s for s in seeds if s not in failures], est, failures)


def example6_study(seeds=range(20), n=1000, coeffs=(1.0, 0.001, 4.0)):
    """EPD-3 versus Kumaraswamy on samples from the three-parameter EPD.

    Returns a list of ``(seed, aic_epd3, aic_kumaraswamy)``.
    """
    out = []
    for seed in seeds:
        ds = simulate_dataset("gepd", coeffs, n, seed)
        table = compare_models(ds, ("kumaraswamy", "epd3"))
        out.append((seed, table.row("epd3").aic, table.row("kumaraswamy").aic))
    return out


def as_dataset(values, **kwargs):
    return values if isinstance(values, Dataset) else Dataset(values, **kwargs)
