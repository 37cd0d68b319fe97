"""Command-line front end.

Exit codes: 0 success (an inconclusive classification included), 1 usage or
parse error, 2 a mathematical precondition failed (inflection at 0, order
budget exhausted, ...), 3 a property suite reported failures.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import suites
from .classify import DEFAULT_FACT22_MAX_N, classify
from .curve import CurveJet, PlaneVec
from .evolute import InflectionError, ZeroTangentError, evolute_chain, negative_criterion
from .expr import ParseError, is_polynomial, parse_curve, sample_params, to_jet
from .jet import BACKENDS, DEFAULT_FLOAT_TOL, FLOAT, RATIONAL, InexactError, NotInvertibleError, OrderExhaustedError
from .svg import COLORS, Polyline, finite, render

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_PROPERTY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class MathError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    order: int
    backend: str = RATIONAL
    tol: float = DEFAULT_FLOAT_TOL
    max_evolute: int = 3
    range: tuple = (-1.0, 1.0)
    samples: int = 401
    out_path: str | None = None
    fact22_max_n: int = DEFAULT_FACT22_MAX_N

    def __post_init__(self):
        if self.order < 2:
            raise UsageError("--order must be at least 2")
        if self.samples < 2:
            raise UsageError("--samples must be at least 2")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.max_evolute < 0:
            raise UsageError("-m must be non-negative")
        if self.backend not in BACKENDS:
            raise UsageError(f"--backend must be one of {', '.join(BACKENDS)}")


# -- JSON rendering ------------------------------------------------------------------


def to_json_value(v):
    """Rationals become "p/q" (or "p") strings; floats stay numbers."""
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return v if math.isfinite(v) else str(v)
    if isinstance(v, PlaneVec):
        return [to_json_value(v.u), to_json_value(v.v)]
    if isinstance(v, dict):
        return {str(k): to_json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [to_json_value(x) for x in v]
    return str(v)


def sparse(jet) -> dict:
    return {str(k): to_json_value(c) for k, c in enumerate(jet.coeffs) if c != 0}


def dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


# -- helpers ----------------------------------------------------------------------------


def _parse_range(text: str) -> tuple:
    try:
        a, b = (float(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}") from None
    if not a < b:
        raise argparse.ArgumentTypeError("range needs a < b")
    return a, b


def _with_fallback(fn, expr, cfg: RunConfig):
    """Expand the curve and run ``fn`` on it, retrying in floating point on a sqrt/irrationality obstruction."""
    if cfg.backend == FLOAT:
        return fn(to_jet(expr, cfg.order, FLOAT)), FLOAT
    try:
        return fn(to_jet(expr, cfg.order, RATIONAL)), RATIONAL
    except InexactError:
        return fn(to_jet(expr, cfg.order, FLOAT)), FLOAT


def _tol(c: CurveJet, cfg: RunConfig):
    return None if c.exact else cfg.tol


# -- commands -------------------------------------------------------------------------


def cmd_classify(x_src: str, y_src: str, cfg: RunConfig) -> dict:
    expr = parse_curve(x_src, y_src)

    def run(c):
        return classify(c, fact22_max_n=cfg.fact22_max_n, tol=_tol(c, cfg))

    (cls, w), backend = _with_fallback(run, expr, cfg)
    witness = {
        "multiplicity": w.n if w.n != math.inf else None,
        "A": w.A, "B": w.B, "C": w.C, "D": w.D,
        "numerator": w.numerator, "kappa_q": w.kappa_q,
        "derivs": {k: v for k, v in sorted(w.derivs.items())},
    }
    if w.T is not None:
        witness["T"] = w.T
    return {
        "input": {"x": x_src, "y": y_src},
        "class": cls.kind.value,
        "label": str(cls),
        "n": cls.n if cls.n is not None else (w.n if w.n != math.inf else None),
        "reason": cls.reason,
        "sufficient_only": w.sufficient_only,
        "witness": to_json_value(witness),
        "conditions": [{"name": c.name, "passed": c.passed, "values": to_json_value(c.values)} for c in w.conditions],
        "order": cfg.order,
        "backend_used": backend,
    }


def cmd_evolute(x_src: str, y_src: str, m: int, cfg: RunConfig) -> dict:
    expr = parse_curve(x_src, y_src)

    def run(c):
        tol = _tol(c, cfg)
        chain = evolute_chain(c, m, tol)
        verdicts = {}
        for n in range(2, m + 2):
            try:
                verdicts[str(n)] = negative_criterion(c, n, tol)
            except ValueError:
                verdicts[str(n)] = None  # the germ is regular at 0: the criterion does not apply
        return chain, verdicts

    (chain, verdicts), backend = _with_fallback(run, expr, cfg)
    levels = []
    for n, lv in enumerate(chain.levels):
        levels.append({
            "level": n,
            "x": sparse(lv.curve.x),
            "y": sparse(lv.curve.y),
            "beta": sparse(lv.curvature.beta),
            "singular_at_0": lv.singular_at_0,
            "trusted_order": lv.trusted_order,
        })
    return {
        "input": {"x": x_src, "y": y_src},
        "m": m,
        "tangent_valuation": chain.frame.k,
        "ell": sparse(chain[0].curvature.ell),
        "levels": levels,
        "negative_criterion": verdicts,
        "backend_used": backend,
    }


def _local_evolutes(expr, t: float, m: int, order: int, tol: float):
    """Points of Ev^0..Ev^m at parameter ``t`` and the sign of ell there."""
    c = to_jet(expr, order, FLOAT, center=t)
    chain = evolute_chain(c, m, tol)
    return [lv.curve.x[0] for lv in chain.levels], [lv.curve.y[0] for lv in chain.levels], chain[0].curvature.ell[0]


def cmd_plot(x_src: str, y_src: str, m: int, cfg: RunConfig) -> dict:
    """Write an SVG of the curve and its first ``m`` evolutes.

    Each sample re-expands the expression around that parameter value and
    takes the constant term of the evolute chain there, so the plotted
    points do not depend on how far the sample is from 0.
    """
    expr = parse_curve(x_src, y_src)
    # the chain at 0 doubles as the precondition check
    _with_fallback(lambda c: evolute_chain(c, m, _tol(c, cfg)), expr, cfg)
    local_order = m + 8
    points = [[] for _ in range(m + 1)]
    warnings = []
    skipped = 0
    signs = set()
    for t in sample_params(*cfg.range, cfg.samples):
        try:
            xs, ys, ell0 = _local_evolutes(expr, t, m, local_order, cfg.tol)
        except (InflectionError, ZeroTangentError, NotInvertibleError, OrderExhaustedError):
            skipped += 1
            continue
        signs.add(ell0 > 0)
        for n in range(m + 1):
            points[n].append((xs[n], ys[n]))
    if len(signs) > 1 or skipped:
        warnings.append("ell changes sign on the plot range: the front has inflection points there "
                        "and the evolutes escape to infinity near them")
    if skipped:
        warnings.append(f"{skipped} sample(s) skipped where ell or the tangent vanished")
    if not (is_polynomial(expr.x) and is_polynomial(expr.y)):
        warnings.append(f"non-polynomial input: points come from Taylor jets of order {local_order} "
                        "re-expanded at every sample")
    labels = ["gamma"] + [f"Ev^{n}" for n in range(1, m + 1)]
    polylines = [Polyline(labels[n], finite(points[n]), COLORS[n % len(COLORS)]) for n in range(m + 1)]
    marker_c = to_jet(expr, 1, FLOAT)
    svg = render(polylines, marker=(marker_c.x[0], marker_c.y[0]), title=f"({x_src}, {y_src})")
    out = cfg.out_path or "plot.svg"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return {
        "out": out,
        "polylines": m + 1,
        "samples": cfg.samples,
        "range": list(cfg.range),
        "warnings": warnings,
        "backend_used": FLOAT,
    }


def cmd_property(seed: int, trials: int, b2_coeff: int = -77) -> dict:
    results = suites.run_all(seed, trials, b2_coeff=b2_coeff)
    return {
        "seed": seed,
        "trials": trials,
        "suites": {
            r.name: {"passed": r.passed, "trials": r.trials, "failures": r.failures} for r in results
        },
        "failed": sum(r.trials - r.passed for r in results),
    }


# -- argument parsing ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cuspkit", description="Classify cusps of plane curves at t=0 and compute evolutes of fronts.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, order):
        sp.add_argument("x", help="x(t), e.g. 't^4'")
        sp.add_argument("y", help="y(t), e.g. 't^5+t^7'")
        sp.add_argument("--order", type=int, default=order, help=f"jet order (default {order})")
        sp.add_argument("--backend", choices=BACKENDS, default=RATIONAL,
                        help="scalar backend; rational falls back to float when it must")
        sp.add_argument("--tol", type=float, default=DEFAULT_FLOAT_TOL,
                        help="relative zero tolerance of the float backend")
        sp.add_argument("--out", help="write the result to this file")

    sp = sub.add_parser("classify", help="classify the germ at t=0")
    common(sp, 16)
    sp.add_argument("--fact22-max-n", type=int, default=DEFAULT_FACT22_MAX_N,
                    help="largest odd n tried for (2,n) cusps")

    for name, hlp in (("evolute", "evolute chain as jets"), ("plot", "SVG of the curve and its evolutes")):
        sp = sub.add_parser(name, help=hlp)
        common(sp, 24)
        sp.add_argument("-m", "--max-evolute", type=int, default=3 if name == "evolute" else 1,
                        help="number of evolutes")
        if name == "plot":
            sp.add_argument("--range", type=_parse_range, default=(-1.0, 1.0),
                            help="parameter range a,b (write --range=-1,1 for negative a)")
            sp.add_argument("--samples", type=int, default=401)

    sp = sub.add_parser("property", help="randomized invariance suites")
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--out", help="write the summary to this file")
    sp.add_argument("--debug-corrupt-constant", action="store_true",
                    help="use -76 in place of -77 in the numerator (negative control)")
    return p


def _emit(obj: dict, out: str | None):
    text = dump(obj)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "property":
            if args.trials < 1:
                raise UsageError("--trials must be at least 1")
            res = cmd_property(args.seed, args.trials, b2_coeff=-76 if args.debug_corrupt_constant else -77)
            _emit(res, args.out)
            return EXIT_PROPERTY if res["failed"] else EXIT_OK
        cfg = RunConfig(
            order=args.order,
            backend=args.backend,
            tol=args.tol,
            max_evolute=getattr(args, "max_evolute", 3),
            range=getattr(args, "range", (-1.0, 1.0)),
            samples=getattr(args, "samples", 401),
            out_path=args.out,
            fact22_max_n=getattr(args, "fact22_max_n", DEFAULT_FACT22_MAX_N),
        )
        if args.command == "classify":
            _emit(cmd_classify(args.x, args.y, cfg), cfg.out_path)
        elif args.command == "evolute":
            _emit(cmd_evolute(args.x, args.y, cfg.max_evolute, cfg), cfg.out_path)
        else:
            res = cmd_plot(args.x, args.y, cfg.max_evolute, cfg)
            for w in res["warnings"]:
                print(f"warning: {w}", file=sys.stderr)
            print(dump(res))
        return EXIT_OK
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InflectionError, ZeroTangentError, OrderExhaustedError, NotInvertibleError, InexactError,
            MathError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
