"""Command-line front end: tables, point evaluation, series dumps, verification.

Exit codes are a stable contract: 0 on success (and on `verify` only when
every requested identity passes), 1 when a verification fails, 2 on any
usage or parse error.

Output is deterministic — identical invocations produce byte-identical
bytes on stdout.  Pretty output uses the unicode λ renderings; csv and
json cells use the ASCII expression forms from :mod:`degenbell.core`
(``lambda_poly_from_ascii`` / ``xpoly_from_ascii`` parse them back
exactly), except ``series --format json`` which emits the series-engine
JSON schema understood by :func:`degenbell.series.series_from_json`.

The ``DEGENBELL_MAX_ORDER`` environment variable caps the *default*
series order used by ``series`` and ``verify``; an explicit ``--order``
always wins.
"""

from __future__ import annotations

import csv
import json
import os
import sys
from fractions import Fraction

import click

from . import __version__
from .core import (
    Rational,
    format_rational,
    lambda_poly_pretty,
    lambda_poly_to_ascii,
    parse_rational,
    xpoly_pretty,
    xpoly_to_ascii,
)
from .identities import CATALOG, VerifyReport, verify, verify_all
from .numbers import (
    bell_deg,
    bell_dobinski_numeric,
    bernoulli_deg,
    bernoulli_gf,
    bracket_deg,
    stirling1_deg,
    stirling2_deg,
)
from .series import (
    DEFAULT_ORDER,
    Series,
    e_lambda_series,
    log_lambda_series,
    series_exp,
    series_to_json,
)
from .core import XP_X

FORMATS = ("pretty", "csv", "json")
TRIANGULAR = {"stirling1": stirling1_deg, "stirling2": stirling2_deg, "bracket": bracket_deg}
LINEAR = {"bernoulli": bernoulli_deg, "bell": lambda n: bell_deg(n).eval_x(1)}
SERIES_NAMES = ("elam", "loglam", "bellgf", "bernoulligf")


class RationalParam(click.ParamType):
    """Exact rational ``p/q`` or integer; floats are rejected."""

    name = "rational"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return parse_rational(value)
        except ValueError:
            self.fail(
                f"{value!r} is not an exact rational (use p/q; floats are rejected)",
                param,
                ctx,
            )


class LambdaParam(RationalParam):
    """Either the literal ``sym`` or an exact rational."""

    name = "lambda"

    def convert(self, value, param, ctx):
        if value == "sym":
            return "sym"
        return super().convert(value, param, ctx)


RATIONAL = RationalParam()
LAMBDA = LambdaParam()


def _max_order_cap() -> int | None:
    raw = os.environ.get("DEGENBELL_MAX_ORDER")
    if raw is None:
        return None
    try:
        cap = int(raw)
    except ValueError:
        raise click.UsageError(f"DEGENBELL_MAX_ORDER must be an integer, got {raw!r}")
    if cap < 0:
        raise click.UsageError(f"DEGENBELL_MAX_ORDER must be ≥ 0, got {cap}")
    return cap


def _csv_writer():
    return csv.writer(sys.stdout, lineterminator="\n")


def _echo_json(payload) -> None:
    click.echo(json.dumps(payload, indent=2))


@click.group()
@click.version_option(version=__version__, prog_name="degenbell")
def main() -> None:
    """Exact degenerate Bell/Stirling calculator and identity checker."""


# ----------------------------------------------------------------------
# table
# ----------------------------------------------------------------------

@main.command()
@click.argument("family", type=click.Choice(sorted(TRIANGULAR) + sorted(LINEAR)))
@click.option("--n-max", type=click.IntRange(min=0), default=6, show_default=True)
@click.option("--lambda", "lam", type=LAMBDA, default="sym", show_default=True,
              help="'sym' for symbolic λ, or an exact rational like 1/2.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="pretty",
              show_default=True)
def table(family: str, n_max: int, lam, fmt: str) -> None:
    """Print a number-family table up to N_MAX.

    Triangular families (stirling1, stirling2, bracket) list every (n, k)
    with k ≤ n; bernoulli and bell(1) are one value per n and leave the
    k column empty.
    """
    rows: list[tuple[int, int | None, object]] = []
    if family in TRIANGULAR:
        fn = TRIANGULAR[family]
        for n in range(n_max + 1):
            for k in range(n + 1):
                rows.append((n, k, fn(n, k)))
    else:
        fn = LINEAR[family]
        for n in range(n_max + 1):
            rows.append((n, None, fn(n)))

    def cell(value) -> str:
        if lam == "sym":
            return lambda_poly_to_ascii(value)
        return format_rational(value.eval(lam))

    if fmt == "csv":
        w = _csv_writer()
        w.writerow(["n", "k", "value"])
        for n, k, value in rows:
            w.writerow([n, "" if k is None else k, cell(value)])
    elif fmt == "json":
        _echo_json(
            {
                "family": family,
                "lambda": "sym" if lam == "sym" else format_rational(lam),
                "n_max": n_max,
                "entries": [
                    {"n": n, "k": k, "value": cell(value)} for n, k, value in rows
                ],
            }
        )
    else:
        for n, k, value in rows:
            shown = lambda_poly_pretty(value) if lam == "sym" else format_rational(value.eval(lam))
            place = f"({n},{k})" if k is not None else f"({n})"
            click.echo(f"{family}{place} = {shown}")


# ----------------------------------------------------------------------
# eval
# ----------------------------------------------------------------------

@main.command("eval")
@click.argument("n", type=click.IntRange(min=0))
@click.option("--x", type=RATIONAL, default=Fraction(1), show_default="1",
              help="Evaluation point, exact rational.")
@click.option("--lambda", "lam", type=RATIONAL, required=True,
              help="Deformation parameter, exact rational.")
@click.option("--dobinski-terms", type=click.IntRange(min=1), default=None,
              metavar="K",
              help="Also print the K-term Dobinski-style float approximation.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="pretty",
              show_default=True)
def eval_cmd(n: int, x: Rational, lam: Rational, dobinski_terms: int | None, fmt: str) -> None:
    """Evaluate Bel_{N,λ}(x) exactly."""
    value = bell_deg(n).eval(x, lam)
    approx: float | None = None
    if dobinski_terms is not None:
        try:
            approx = bell_dobinski_numeric(n, x, lam, terms=dobinski_terms)
        except ValueError as exc:
            raise click.UsageError(str(exc))

    if fmt == "csv":
        w = _csv_writer()
        header = ["n", "x", "lambda", "value"]
        row: list[object] = [n, format_rational(x), format_rational(lam), format_rational(value)]
        if approx is not None:
            header += ["dobinski_terms", "dobinski"]
            row += [dobinski_terms, repr(approx)]
        w.writerow(header)
        w.writerow(row)
    elif fmt == "json":
        payload = {
            "n": n,
            "x": format_rational(x),
            "lambda": format_rational(lam),
            "value": format_rational(value),
        }
        if approx is not None:
            payload["dobinski_terms"] = dobinski_terms
            payload["dobinski"] = approx
        _echo_json(payload)
    else:
        click.echo(format_rational(value))
        if approx is not None:
            click.echo(f"dobinski[{dobinski_terms} terms] ≈ {approx!r}")


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

@main.command("verify")
@click.argument("identity")
@click.option("--n-max", type=click.IntRange(min=1), default=6, show_default=True)
@click.option("--order", type=click.IntRange(min=0), default=None,
              help="Series truncation order for series-based identities "
                   "[default: n_max + 6, capped by DEGENBELL_MAX_ORDER].")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="pretty",
              show_default=True)
def verify_cmd(identity: str, n_max: int, order: int | None, fmt: str) -> None:
    """Check one catalog IDENTITY (or 'all') exactly over its grid."""
    if order is None:
        order = n_max + 6
        cap = _max_order_cap()
        if cap is not None:
            # never clamp below the series-based precondition
            order = max(min(order, cap), n_max + 2)
    try:
        if identity == "all":
            reports = verify_all(n_max, order)
        else:
            reports = [verify(identity, n_max, order)]
    except ValueError as exc:
        raise click.UsageError(str(exc))

    if fmt == "csv":
        w = _csv_writer()
        w.writerow(["identity", "grid", "status", "params", "lhs", "rhs"])
        for r in reports:
            ce = r.counterexample
            w.writerow(
                [r.identity, r.grid, r.status]
                + (["", "", ""] if ce is None else ["; ".join(ce.params), ce.lhs, ce.rhs])
            )
    elif fmt == "json":
        _echo_json([r.to_json_dict() for r in reports])
    else:
        for r in reports:
            click.echo(f"{r.status.upper():<5} {r.identity:<16} [{r.grid}]")
            if r.counterexample is not None:
                ce = r.counterexample
                click.echo(f"      at {', '.join(ce.params)}")
                click.echo(f"      lhs: {ce.lhs}")
                click.echo(f"      rhs: {ce.rhs}")
    if any(r.status != "pass" for r in reports):
        sys.exit(1)


# ----------------------------------------------------------------------
# series
# ----------------------------------------------------------------------

def _build_series(which: str, order: int) -> Series:
    if which == "elam":
        return e_lambda_series(1, order)
    if which == "loglam":
        return log_lambda_series(order)
    if which == "bellgf":
        e = e_lambda_series(1, order)
        return series_exp((e - Series.one(order)).scale(XP_X))
    if which == "bernoulligf":
        return bernoulli_gf(order)
    raise AssertionError(which)


def _pretty_series(s: Series) -> str:
    parts: list[str] = []
    for n in range(s.order + 1):
        c = s.egf_coeff(n)
        if c.is_zero:
            continue
        if c.degree == 0 and c.coeffs[0].degree == 0:
            scalar = c.coeffs[0].coeffs[0]
            coeff_part = "" if scalar == 1 and n > 0 else f"{format_rational(scalar)}·"
        else:
            body = xpoly_pretty(c) if c.degree > 0 else lambda_poly_pretty(c.coeffs[0])
            coeff_part = f"({body})·" if " " in body else f"{body}·"
        if n == 0:
            term = coeff_part.rstrip("·") or "1"
        else:
            t_part = "t" if n == 1 else "t" + str(n).translate(
                str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
            )
            term = f"{coeff_part}{t_part}" + ("" if n == 1 else f"/{n}!")
        parts.append(term)
    return " + ".join(parts) if parts else "0"


@main.command("series")
@click.argument("which", type=click.Choice(SERIES_NAMES))
@click.option("--order", type=click.IntRange(min=0), default=None,
              help=f"Truncation order [default: {DEFAULT_ORDER}, "
                   "capped by DEGENBELL_MAX_ORDER].")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="pretty",
              show_default=True)
def series_cmd(which: str, order: int | None, fmt: str) -> None:
    """Dump a truncated generating function.

    elam = e_λ(t); loglam = log_λ(1+t); bellgf = e^{x(e_λ(t)-1)};
    bernoulligf = t/(e_λ(t)-1).
    """
    if order is None:
        order = DEFAULT_ORDER
        cap = _max_order_cap()
        if cap is not None:
            order = min(order, cap)
    s = _build_series(which, order)
    if fmt == "json":
        click.echo(series_to_json(s))
    elif fmt == "csv":
        w = _csv_writer()
        w.writerow(["n", "value"])
        for n in range(s.order + 1):
            w.writerow([n, xpoly_to_ascii(s.coeff(n))])
    else:
        click.echo(_pretty_series(s))


if __name__ == "__main__":
    main()
