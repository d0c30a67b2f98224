"""Batch command-line interface.

Subcommands: eval, sample, fit, compare, reproduce, moments. Output goes to
stdout or ``--out``; a relative ``--out`` is resolved against
``$EPDIST_OUTPUT_DIR`` when that is set.

Exit codes: 0 success, 1 usage error, 2 data or domain error, 3 numerical
failure (non-convergence).
"""

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

import numpy as np
from scipy import integrate

from . import cepd, dataio, epd2, estimate, gepd, kumaraswamy
from .exceptions import DomainError, NumericalError

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3

FAMILIES = {"epd2": epd2, "gepd": gepd, "cepd": cepd, "kumaraswamy": kumaraswamy}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _floats(text):
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _build_parser():
    p = _Parser(prog="epdist", description="Extended power distributions on (0, 1].")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, family=True, data=False):
        if family:
            sp.add_argument("--family", choices=sorted(FAMILIES), default="epd2")
            sp.add_argument("--params", type=_floats)
        if data:
            sp.add_argument(
                "--data", required=True, help="CSV path, or bundled:<name> for a shipped dataset"
            )
            sp.add_argument("--column", default="0", help="column index or header name")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--out", help="output file (default stdout)")

    sp = sub.add_parser("eval", help="pdf / cdf / quantile on a grid or at points")
    common(sp)
    sp.add_argument("--points", type=_floats, help="evaluation points in (0, 1]")
    sp.add_argument("--grid", type=int, default=101, help="number of grid points if --points is absent")

    sp = sub.add_parser("sample", help="draw variates")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=None)

    sp = sub.add_parser("fit", help="maximum-likelihood fit")
    common(sp, data=True)
    sp.add_argument("--r", type=int, default=3, help="number of coefficients for --family gepd")

    sp = sub.add_parser("compare", help="fit several families and tabulate AIC/AICc/BIC")
    common(sp, family=False, data=True)
    sp.add_argument(
        "--families",
        default=",".join(estimate.DEFAULT_FAMILIES),
        help="comma list of model ids (kumaraswamy, cepd, epd2, epd3, ...)",
    )
    sp.add_argument("--curves", help="also write fitted densities as long CSV (x, density, model)")

    sp = sub.add_parser("reproduce", help="simulation harnesses")
    sp.add_argument("target", choices=("table1", "example6"))
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--seeds", type=int, default=None, help="number of seeds (0 .. seeds-1)")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--out")

    sp = sub.add_parser("moments", help="closed-form and quadrature moments side by side")
    common(sp)
    sp.add_argument("--k", type=int, default=4, help="highest moment order")
    return p


# -- helpers ---------------------------------------------------------------


def _params(args, default=None):
    params = args.params if args.params is not None else default
    if params is None:
        raise UsageError("--params is required")
    return params


def _load(args):
    if args.data.startswith("bundled:"):
        return dataio.bundled(args.data.split(":", 1)[1])
    column = int(args.column) if args.column.isdigit() else args.column
    try:
        return dataio.load_csv(args.data, column)
    except OSError as exc:
        raise DomainError(f"cannot read {args.data}: {exc.strerror}")


def _model_id(family, r):
    return f"epd{r}" if family == "gepd" else family


def _out_path(path):
    p = Path(path)
    base = os.environ.get("EPDIST_OUTPUT_DIR")
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _write_text(text, path):
    if path:
        _out_path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _csv_text(records, columns):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in records:
        w.writerow(r)
    return buf.getvalue()


def _emit(args, payload, records=None, columns=None):
    if args.format == "csv":
        text = _csv_text(records, columns)
    else:
        text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    _write_text(text, args.out)


def _num(x):
    return None if x is None or not np.isfinite(x) else float(x)


# -- commands --------------------------------------------------------------


def cmd_eval(args):
    mod = FAMILIES[args.family]
    params = _params(args)
    if args.family == "gepd":
        params = gepd.GepdParams(params)
    x = np.asarray(args.points if args.points else np.linspace(0, 1, args.grid + 1)[1:])
    pdf = np.atleast_1d(mod.pdf(params, x)) if args.family != "kumaraswamy" else np.atleast_1d(
        [kumaraswamy.pdf(params, xi) if (xi < 1 or params[1] == 1) else np.nan for xi in x]
    )
    cdf = np.atleast_1d(mod.cdf(params, x))
    if args.family == "gepd":
        q = np.atleast_1d(gepd.sample_from_u(params, x))
    elif args.family == "cepd":
        q = np.atleast_1d(epd2.cdf(tuple(params), x))
    else:
        q = np.atleast_1d(mod.quantile(params, x))
    records = [
        {"x": float(a), "pdf": _num(b), "cdf": _num(c), "quantile": _num(d), "model": args.family}
        for a, b, c, d in zip(x, pdf, cdf, q)
    ]
    _emit(
        args,
        {"family": args.family, "params": list(tuple(params)), "points": records},
        records,
        ["x", "pdf", "cdf", "quantile", "model"],
    )


def cmd_sample(args):
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    params = _params(args)
    values = FAMILIES[args.family].sample_n(params, args.n, args.seed) if args.n else np.empty(0)
    if args.format == "csv":
        _write_text("value\n" + "".join(repr(float(v)) + "\n" for v in values), args.out)
    else:
        payload = {
            "family": args.family,
            "params": list(params),
            "n": args.n,
            "seed": args.seed,
            "values": [float(v) for v in values],
        }
        _write_text(json.dumps(payload, indent=2) + "\n", args.out)


def cmd_fit(args):
    data = _load(args)
    model = _model_id(args.family, args.r)
    res = estimate.fit_mle(model, data)
    payload = res.to_dict()
    payload["data"] = {"name": data.name, **dataio.summarize(data)}
    rec = dict(payload)
    rec["estimates"] = ";".join(f"{x:.10g}" for x in res.estimates)
    _emit(args, payload, [rec], ["model", "estimates", "loglik", "aic", "aicc", "bic", "converged", "iterations", "n"])


def _density(model, est, x):
    family, _ = estimate._parse_model(model)
    if family == "kumaraswamy":
        return kumaraswamy.pdf(tuple(est), x)
    if family == "cepd":
        return cepd.pdf(tuple(est), x)
    if est[0] == 0 and not np.any(np.asarray(est[1:]) > 0):
        return np.full_like(x, np.nan)
    return gepd.pdf(tuple(est), x)


def cmd_compare(args):
    data = _load(args)
    families = tuple(f.strip() for f in args.families.split(",") if f.strip())
    for f in families:
        estimate._parse_model(f)
    table = estimate.compare_models(data, families)
    payload = table.to_dict()
    payload["data"] = {"name": data.name, **dataio.summarize(data)}
    _emit(args, payload, table.to_records(), list(estimate.ComparisonTable.COLUMNS))
    if args.curves:
        x = np.linspace(0, 1, 201)[1:-1]
        recs = []
        for r in table.rows:
            if r.status != "ok":
                continue
            for xi, d in zip(x, _density(r.model, r.estimates, x)):
                recs.append({"x": f"{xi:.6g}", "density": f"{d:.10g}", "model": r.model})
        _write_text(_csv_text(recs, ["x", "density", "model"]), args.curves)


def cmd_reproduce(args):
    if args.target == "table1":
        n = args.n or 5000
        seeds = range(args.seeds or 1)
        rows = []
        for truth, reference in estimate.TABLE1_ROWS:
            rep = estimate.simulation_study(truth, n, seeds)
            rows.append(
                {
                    "truth": list(truth),
                    "reference": list(reference),
                    "mean_estimate": rep.mean.tolist(),
                    "relative_deviation": rep.relative_deviation.tolist(),
                    "estimates": rep.estimates.tolist(),
                    "failures": {str(k): v for k, v in rep.failures.items()},
                }
            )
        records = [
            {
                "alpha0": r["truth"][0],
                "alpha1": r["truth"][1],
                "est_alpha0": f"{r['mean_estimate'][0]:.6f}",
                "est_alpha1": f"{r['mean_estimate'][1]:.6f}",
                "reference_alpha0": r["reference"][0],
                "reference_alpha1": r["reference"][1],
            }
            for r in rows
        ]
        _emit(args, {"target": "table1", "n": n, "seeds": list(seeds), "rows": rows}, records, list(records[0]))
    else:
        n = args.n or 1000
        seeds = range(args.seeds or 20)
        res = estimate.example6_study(seeds, n)
        records = [
            {"seed": s, "aic_epd3": f"{a:.6f}", "aic_kumaraswamy": f"{b:.6f}", "epd3_better": a < b}
            for s, a, b in res
        ]
        payload = {
            "target": "example6",
            "n": n,
            "coefficients": [1.0, 0.001, 4.0],
            "runs": [{"seed": s, "aic_epd3": a, "aic_kumaraswamy": b} for s, a, b in res],
            "epd3_wins": sum(a < b for _, a, b in res),
        }
        _emit(args, payload, records, ["seed", "aic_epd3", "aic_kumaraswamy", "epd3_better"])


def cmd_moments(args):
    params = _params(args)
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    records = []
    for k in range(1, args.k + 1):
        if args.family == "epd2":
            closed = epd2.moment(params, k)
            quad, _ = gepd.moment_numeric(params, k, full_output=True)
        elif args.family == "cepd":
            closed = cepd.moment(params, k)
            quad = _cepd_moment_quad(params, k)
        elif args.family == "gepd":
            p = gepd.GepdParams(params)
            closed = epd2.moment((p.coeffs[0], p.coeffs[1] if p.r > 1 else 0.0), k) if p.degree <= 2 and p.coeffs[0] > 0 else None
            quad = gepd.moment_numeric(p, k)
        else:
            raise UsageError("moments are available for epd2, gepd and cepd")
        records.append(
            {
                "k": k,
                "closed_form": _num(closed),
                "quadrature": float(quad),
                "abs_gap": None if closed is None else abs(closed - quad),
            }
        )
    _emit(
        args,
        {"family": args.family, "params": list(params), "moments": records},
        records,
        ["k", "closed_form", "quadrature", "abs_gap"],
    )


def _cepd_moment_quad(params, k):
    # E[T^k] = E[F_epd(U)^k] = int_0^inf exp(-k (a0 w + a1 w^2) - w) dw
    a0, a1 = cepd.CepdParams(*params)
    val, _ = integrate.quad(lambda w: np.exp(-k * (a0 * w + a1 * w * w) - w), 0, np.inf, epsabs=1e-13, epsrel=1e-12)
    return val


COMMANDS = {
    "eval": cmd_eval,
    "sample": cmd_sample,
    "fit": cmd_fit,
    "compare": cmd_compare,
    "reproduce": cmd_reproduce,
    "moments": cmd_moments,
}


def run(argv=None):
    """Run the CLI and return the exit code."""
    try:
        args = _build_parser().parse_args(argv)
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"epdist: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"epdist: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"epdist: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericalError as exc:
        print(f"epdist: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
