# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

"""Command line front end.

Data goes to stdout, progress and errors to stderr. Exit status is 0 on
success, 1 when a computation raises a
:class:`~brauerheight.exceptions.BrauerHeightException` and 2 on usage
errors.

CSV columns
-----------
ec survey:     a4, a6, height, hasse_zero, agree
dmodel verify: p, q, h, i, f_is_zero, ker_f_dim, expected
cy kerdim:     i, ker_f_dim
strata:        h, codim, dim, coefficient, note
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import functools
import io
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

from . import __version__
from .cech import (
    HeightCertificate,
    ker_f_dim_cech,
    make_hypersurface,
    phi_tower,
    verify_certificate,
)
from .config import OutputFormat, RunConfig
from .core.field import field_make
from .dieudonne import truth_table
from .exceptions import BrauerHeightException, ConfigError, SingularCurveError
from .formal_group import (
    additive_law,
    ec_fgl,
    hasse_invariant,
    height_of,
    lubin_tate,
    multiplicative_law,
)
from .strata import deuring_mass, strata_table
from .utils import init_logging, json
from .witt import (
    WittRing,
    check_ring_laws,
    configure_witt_cache,
    witt_add,
    witt_F,
    witt_mul,
    witt_neg,
    witt_R,
    witt_sub,
    witt_V,
)

__all__ = ("build_parser", "dispatch", "main")

_logger = logging.getLogger("brauerheight.cli")

Rows = List[Dict[str, Any]]


# -- output ----------------------------------------------------------------


def _emit(payload: Any, fmt: OutputFormat, stream) -> None:
    """Write a dict (one record) or a list of dicts (a table)."""
    rows = payload if isinstance(payload, list) else [payload]
    if fmt is OutputFormat.JSON:
        stream.write(json.dumps(payload) + "\n")
    elif fmt is OutputFormat.CSV:
        columns: List[str] = []
        for row in rows:
            columns += [key for key in row if key not in columns]
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _text(v) for k, v in row.items()})
        stream.write(buffer.getvalue())
    else:
        for index, row in enumerate(rows):
            if index:
                stream.write("\n")
            for key, value in row.items():
                stream.write(f"{key}: {_text(value)}\n")


def _text(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return " ".join(_text(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value)
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)


# -- parallel work ---------------------------------------------------------


async def _gather(fn: Callable, items: Sequence, width: int) -> list:
    if width <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=width) as pool:
        futures = [loop.run_in_executor(pool, fn, item) for item in items]
        return list(await asyncio.gather(*futures))


def run_parallel(fn: Callable, items: Iterable, width: int) -> list:
    """Map ``fn`` over ``items`` in at most ``width`` processes, keeping order."""
    return asyncio.run(_gather(fn, list(items), width))


# -- commands --------------------------------------------------------------


def _require_p(config: RunConfig) -> int:
    if config.p is None:
        raise ConfigError("--p is required")
    return config.p


def _field(config: RunConfig):
    return field_make(_require_p(config), config.d)


def _components(text: str, field) -> List:
    try:
        return [field.element(int(c) % field.order) for c in text.split(",")]
    except ValueError:
        raise ConfigError(f"components must be comma separated codes, got {text!r}") from None


def cmd_witt_eval(args, config: RunConfig) -> Dict[str, Any]:
    field = _field(config)
    a = _components(args.a, field)
    ring = WittRing(field, len(a))
    x = ring(a)
    unary = {"neg": witt_neg, "F": witt_F, "V": witt_V, "R": witt_R}
    binary = {"add": witt_add, "sub": witt_sub, "mul": witt_mul}
    if args.op in unary:
        result = unary[args.op](x)
    else:
        if args.b is None:
            raise ConfigError(f"--b is required for {args.op}")
        result = binary[args.op](x, ring(_components(args.b, field)))
    return {
        "ring": str(ring),
        "op": args.op,
        "result": [str(c) for c in result.components],
    }


def cmd_witt_check(args, config: RunConfig) -> Dict[str, Any]:
    if args.n < 1 or args.count < 0:
        raise ConfigError("--n must be positive and --count non-negative")
    ring = WittRing(_field(config), args.n)
    return check_ring_laws(ring, args.count, config.seed).to_dict()


def cmd_fgl_height(args, config: RunConfig) -> Dict[str, Any]:
    p = _require_p(config)
    N = config.truncation
    if args.law == "lubin-tate":
        if args.h is None:
            raise ConfigError("--h is required for the Lubin-Tate law")
        law = lubin_tate(p, args.h, N)
    elif args.law == "ec":
        if args.a4 is None or args.a6 is None:
            raise ConfigError("--a4 and --a6 are required for an elliptic curve")
        field = _field(config)
        a4, a6 = (field.element(code % field.order) for code in (args.a4, args.a6))
        law = ec_fgl(a4, a6, N)
    elif args.law == "multiplicative":
        law = multiplicative_law(_field(config), N)
    else:
        law = additive_law(_field(config), N)
    report = height_of(law, config.hmax)
    return {"law": args.law, "p": p, "truncation": N, **report.to_dict()}


def _survey_row(item, p: int, d: int, N: int, hmax: int) -> Optional[Dict[str, Any]]:
    field = field_make(p, d)
    a4, a6 = field.element(item[0]), field.element(item[1])
    try:
        hasse_zero = not hasse_invariant(a4, a6)
    except SingularCurveError:
        return None
    report = height_of(ec_fgl(a4, a6, N), hmax)
    height = report.height if report.height is not None else report.bound
    return {
        "a4": str(a4),
        "a6": str(a6),
        "height": height,
        "hasse_zero": hasse_zero,
        "agree": (height == 2) == hasse_zero,
    }


def cmd_ec_survey(args, config: RunConfig) -> Rows:
    field = _field(config)
    N = max(config.truncation, field.p**2 + 1)
    items = [(a4, a6) for a4 in range(field.order) for a6 in range(field.order)]
    worker = functools.partial(_survey_row, p=field.p, d=field.degree, N=N, hmax=config.hmax)
    rows = [row for row in run_parallel(worker, items, config.width) if row is not None]
    _logger.info("Surveyed %s curves over %s", len(rows), field)
    return rows


def cmd_dmodel_verify(args, config: RunConfig) -> Rows:
    field = _field(config)
    rows = truth_table(range(1, config.hmax + 1), range(1, args.levels + 1), field)
    return [row.to_dict() for row in rows]


def _hypersurface(args, config: RunConfig):
    return make_hypersurface(args.f, _require_p(config), config.d)


def cmd_cy_height(args, config: RunConfig) -> Dict[str, Any]:
    X = _hypersurface(args, config)
    if args.verify_certificate:
        data = json.loads(Path(args.verify_certificate).read_text(encoding="utf-8"))
        certificate = HeightCertificate.from_dict(data)
        verify_certificate(X, certificate)
        return {"verified": True, **certificate.to_dict()}

    scale = None if args.scale is None else X.field.element(args.scale % X.field.order)
    certificate = phi_tower(
        X,
        config.i_max,
        window=config.window,
        window_growth=config.window_growth,
        window_cap=config.window_cap,
        scale=scale,
    )
    report = certificate.to_dict()
    if certificate.witness is not None:
        report["witness"] = certificate.witness
    return report


def _kerdim(i: int, text: str, p: int, d: int, window: Optional[int]) -> Dict[str, Any]:
    X = make_hypersurface(text, p, d)
    return {"i": i, "ker_f_dim": ker_f_dim_cech(X, i, window=window)}


def cmd_cy_kerdim(args, config: RunConfig) -> Rows:
    p = _require_p(config)
    # fail early on a bad polynomial, before any worker starts
    make_hypersurface(args.f, p, config.d)
    worker = functools.partial(_kerdim, text=args.f, p=p, d=config.d, window=config.window)
    return run_parallel(worker, args.i, config.width)


def cmd_deuring(args, config: RunConfig) -> Dict[str, Any]:
    report = deuring_mass(_require_p(config))
    return {"p": report.p, "mass": str(report.mass), "j": list(report.j)}


def cmd_strata(args, config: RunConfig) -> Rows:
    rows = strata_table(_require_p(config), config.hmax)
    return [
        {**row.to_dict(), "coefficient": str(row.coefficient), "note": row.note or ""}
        for row in rows
    ]


# -- argument parsing ------------------------------------------------------


def _common(parser: argparse.ArgumentParser, *, p: bool = True) -> None:
    if p:
        parser.add_argument("--p", type=int, help="the characteristic")
        parser.add_argument("--d", type=int, help="degree of F_q over F_p (default 1)")
    parser.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat])
    parser.add_argument("--width", type=int, help="work items run in parallel")
    parser.add_argument("--seed", type=int, help="seed of randomised checks")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING, ERROR or CRITICAL")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brauerheight",
        description="Heights of formal groups and of formal Brauer groups of "
        "Calabi-Yau hypersurfaces, with exact arithmetic.",
        epilog=__doc__.split("CSV columns", 1)[1].strip("\n -"),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    witt = commands.add_parser("witt", help="Witt vector arithmetic")
    witt_commands = witt.add_subparsers(dest="action", required=True)
    evaluate = witt_commands.add_parser("eval", help="evaluate one operation in W_n(F_q)")
    _common(evaluate)
    evaluate.add_argument(
        "--op", required=True, choices=["add", "sub", "mul", "neg", "F", "V", "R"]
    )
    evaluate.add_argument("--a", required=True, help="components as comma separated codes")
    evaluate.add_argument("--b", help="second operand for add, sub and mul")
    evaluate.set_defaults(handler=cmd_witt_eval)

    check = witt_commands.add_parser("check", help="randomised ring identities in W_n(F_q)")
    _common(check)
    check.add_argument("--n", type=int, default=3, help="Witt vector length (default 3)")
    check.add_argument("--count", type=int, default=1000, help="identities evaluated")
    check.set_defaults(handler=cmd_witt_check)

    fgl = commands.add_parser("fgl", help="formal group laws")
    fgl_commands = fgl.add_subparsers(dest="action", required=True)
    height = fgl_commands.add_parser("height", help="height from [p](t)")
    _common(height)
    height.add_argument(
        "--law", required=True, choices=["lubin-tate", "multiplicative", "additive", "ec"]
    )
    height.add_argument("--h", type=int, help="height of the Lubin-Tate law")
    height.add_argument("--a4", type=int, help="code of a4 for --law ec")
    height.add_argument("--a6", type=int, help="code of a6 for --law ec")
    height.add_argument("--truncation", type=int, help="total degree kept")
    height.add_argument("--hmax", type=int, help="largest height looked for")
    height.set_defaults(handler=cmd_fgl_height)

    ec = commands.add_parser("ec", help="elliptic curves")
    ec_commands = ec.add_subparsers(dest="action", required=True)
    survey = ec_commands.add_parser(
        "survey", help="formal group height against the Hasse invariant"
    )
    _common(survey)
    survey.add_argument("--truncation", type=int, help="total degree kept (at least p^2 + 1)")
    survey.add_argument("--hmax", type=int, help="largest height looked for")
    survey.set_defaults(handler=cmd_ec_survey)

    dmodel = commands.add_parser("dmodel", help="Dieudonne module model")
    dmodel_commands = dmodel.add_subparsers(dest="action", required=True)
    verify = dmodel_commands.add_parser("verify", help="height criterion truth table")
    _common(verify)
    verify.add_argument("--hmax", type=int, help="largest height (default 10)")
    verify.add_argument("--levels", type=int, default=12, help="largest truncation level")
    verify.set_defaults(handler=cmd_dmodel_verify)

    cy = commands.add_parser("cy", help="Calabi-Yau hypersurfaces")
    cy_commands = cy.add_subparsers(dest="action", required=True)
    tower = cy_commands.add_parser("height", help="height of the formal Brauer group")
    _common(tower)
    tower.add_argument("--f", required=True, help="defining polynomial in x0, x1, ...")
    tower.add_argument("--i-max", type=int, help="highest level computed")
    tower.add_argument("--window", type=int, help="fixed exponent window")
    tower.add_argument("--scale", type=int, help="code of a rescaling of the generator")
    tower.add_argument("--verify-certificate", metavar="FILE", help="replay a JSON certificate")
    tower.set_defaults(handler=cmd_cy_height)

    kerdim = cy_commands.add_parser("kerdim", help="dimension of ker F on H^n(W_i O_X)")
    _common(kerdim)
    kerdim.add_argument("--f", required=True, help="defining polynomial in x0, x1, ...")
    kerdim.add_argument("--i", type=int, nargs="+", required=True, help="levels")
    kerdim.add_argument("--window", type=int, help="fixed exponent window")
    kerdim.set_defaults(handler=cmd_cy_kerdim)

    deuring = commands.add_parser("deuring", help="supersingular j-invariants and their mass")
    _common(deuring)
    deuring.set_defaults(handler=cmd_deuring, default_format=OutputFormat.TEXT)

    strata = commands.add_parser("strata", help="height strata of K3 moduli")
    _common(strata)
    strata.add_argument("--hmax", type=int, help="largest height (default 11)")
    strata.set_defaults(handler=cmd_strata, default_format=OutputFormat.CSV, default_hmax=11)

    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    hmax = getattr(args, "hmax", None)
    if hmax is None:
        hmax = getattr(args, "default_hmax", None)
    output_format = args.output_format or getattr(args, "default_format", None)
    return RunConfig.from_env(
        p=getattr(args, "p", None),
        d=getattr(args, "d", None),
        truncation=getattr(args, "truncation", None),
        hmax=hmax,
        i_max=getattr(args, "i_max", None),
        window=getattr(args, "window", None),
        output_format=output_format,
        width=args.width,
        seed=args.seed,
        log_level=args.log_level,
    )


def dispatch(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    """Run one command and return its exit status.

    Usage errors leave through :class:`SystemExit` with status 2, as
    raised by :mod:`argparse`.
    """
    stdout = sys.stdout if stdout is None else stdout
    args = build_parser().parse_args(argv)

    try:
        config = _config(args)
        init_logging(config.log_level or logging.WARNING)
        configure_witt_cache(cap=config.witt_length_cap, cache_dir=config.witt_cache_dir)
        payload = args.handler(args, config)
    except BrauerHeightException as exc:
        _logger.debug("Command failed", exc_info=exc)
        sys.stderr.write(f"error: {exc}\n")
        return 1

    _emit(payload, config.output_format, stdout)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return dispatch(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
