"""Command-line client for the verification service.

Every subcommand parses its arguments into the service request model, calls
the corresponding handler in process, and renders the response.  `serve`
starts the HTTP service instead.

Exit codes: 0 all checks pass, 1 identity mismatch (counterexample printed),
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import schemas, service
from .errors import QDilogError
from .verify import IdentityMismatch


def _parse_ints(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part != ""]


def _parse_kostant(text: str) -> list[list[int]]:
    """Parse 'k-l:m' entries, e.g. '1-4:2,1-2:1,1-1:1'."""
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        interval, _, mult = chunk.partition(":")
        k, _, l = interval.partition("-")
        out.append([int(k), int(l), int(mult) if mult else 1])
    return out


def _print_verdict(verdict: schemas.VerdictModel, fmt: str) -> int:
    if fmt == "json":
        print(json.dumps(verdict.model_dump(), indent=2))
    else:
        status = "pass" if verdict.passed else "FAIL"
        opts = ", ".join(f"{k}={v}" for k, v in sorted(verdict.params.items()))
        print(f"{verdict.identity}: {status} [{opts}; window t^{verdict.window}]")
        if verdict.failure is not None:
            f = verdict.failure
            where = f"gamma={f.gamma}" if f.gamma is not None else "scalar side"
            print(f"  first difference at {where}, t^{f.texp}: {f.lhs} != {f.rhs}")
    return 0 if verdict.passed else 1


def _cmd_verify_mt(args) -> int:
    req = schemas.VerifyMTRequest(
        n=args.n,
        nprime=args.nprime,
        box=_expand_box(args.box, args.n * args.nprime),
        window=args.window,
        orders=args.orders,
        seed=args.seed,
    )
    return _print_verdict(service.handle_verify_mt(req), args.format)


def _cmd_pentagon(args) -> int:
    box = _parse_ints(args.box)
    if len(box) == 1:
        box = box * 2
    req = schemas.PentagonRequest(box=box, window=args.window)
    return _print_verdict(service.handle_pentagon(req), args.format)


def _cmd_keller55(args) -> int:
    req = schemas.Keller55Request(gamma=_parse_ints(args.gamma), window=args.window)
    return _print_verdict(service.handle_keller55(req), args.format)


def _cmd_crosscheck(args) -> int:
    req = schemas.CrosscheckRequest(
        n=args.n,
        nprime=args.nprime,
        gamma=_parse_ints(args.gamma),
        axis=args.axis,
        window=args.window,
    )
    return _print_verdict(service.handle_crosscheck(req), args.format)


def _cmd_dt(args) -> int:
    req = schemas.DTRequest(
        n=args.n,
        nprime=args.nprime,
        box=_expand_box(args.box, args.n * args.nprime),
        window=args.window,
    )
    resp = service.handle_dt(req)
    if args.format == "json":
        print(json.dumps(resp.model_dump(), indent=2))
    else:
        print(f"# DT invariant of A{args.n} x A{args.nprime}, "
              f"box {resp.element.box}, window t^{req.window}")
        for key in sorted(resp.element.terms):
            s = resp.element.terms[key]
            print(f"y[{key}] : lo={s.lo} hi={s.hi} coeffs={s.coeffs}")
    return 0


def _cmd_betti(args) -> int:
    req = schemas.BettiRequest(
        n=args.n,
        nprime=args.nprime,
        gamma=_parse_ints(args.gamma),
        window=args.window,
    )
    resp = service.handle_betti(req)
    if args.format == "json":
        print(json.dumps(resp.model_dump(), indent=2))
        return 0
    from .quiver import square_product
    from .verify import betti_table

    table = betti_table(square_product(args.n, args.nprime), tuple(req.gamma), req.window)
    if args.format == "csv":
        sys.stdout.write(table.to_csv())
    else:
        print(table.to_pretty())
    return 0


def _cmd_strata(args) -> int:
    req = schemas.StrataRequest(
        n=args.n,
        nprime=args.nprime,
        gamma=_parse_ints(args.gamma),
        axis=args.axis,
    )
    resp = service.handle_strata(req)
    if args.format == "json":
        print(json.dumps(resp.model_dump(), indent=2))
        return 0
    rows = [["id", "axis", "kostant", "codim", "w", "poincare"]]
    for row in resp.rows:
        rows.append(
            [row.id, row.axis, row.label, str(row.codim), str(row.w), row.poincare]
        )
    if args.format == "csv":
        for row in rows:
            print(",".join(f'"{c}"' if "," in c else c for c in row))
    else:
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        for row in rows:
            print("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)))
        print(
            f"{resp.horizontal_count} horizontal and "
            f"{resp.vertical_count} vertical strata"
        )
    return 0


def _cmd_roots(args) -> int:
    req = schemas.RootsRequest(n=args.n, nprime=args.nprime, axis=args.axis)
    resp = service.handle_roots(req)
    if args.format == "json":
        print(json.dumps(resp.model_dump(), indent=2))
        return 0
    print(f"{resp.count} {resp.axis} roots; canonical order:")
    print("  " + " < ".join(f"{r.axis[0]}{r.line}[{r.k},{r.l}]" for r in resp.order))
    for line in sorted(resp.rho_matrices, key=int):
        print(f"rho matrix, line {line}:")
        for row in resp.rho_matrices[line]:
            print("  " + "  ".join(cell if cell else "." for cell in row))
    return 0


def _cmd_normal_form(args) -> int:
    req = schemas.NormalFormRequest(
        orientation=args.orientation,
        gamma=_parse_ints(args.gamma),
        kostant=_parse_kostant(args.kostant),
    )
    resp = service.handle_normal_form(req)
    if args.format == "json":
        print(json.dumps(resp.model_dump(), indent=2))
        return 0
    for (t, h), mat in zip(resp.arrows, resp.matrices):
        print(f"arrow {t} -> {h}:")
        for row in mat:
            print("  " + " ".join(str(x) for x in row))
    return 0


def _cmd_quiver(args) -> int:
    req = schemas.QuiverRequest(n=args.n, nprime=args.nprime)
    print(json.dumps(service.handle_quiver(req).model_dump(), indent=2))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run(service.app, host=args.host, port=args.port)
    return 0


def _expand_box(text: str, size: int) -> list[int]:
    box = _parse_ints(text)
    if len(box) == 1:
        box = box * size
    return box


def _add_format(p, choices=("pretty", "json")):
    p.add_argument("--format", choices=choices, default="pretty")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qdilog",
        description="Quantum dilogarithm identities for square products "
        "of type-A quivers, verified in exact arithmetic.",
    )
    from . import __version__

    ap.add_argument("--version", action="version", version=f"qdilog {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-mt", help="compare the two ordered dilogarithm products")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nprime", type=int, required=True)
    p.add_argument("--box", required=True, help="comma list, or one value for all vertices")
    p.add_argument("--window", type=int, required=True, help="truncation order in t")
    p.add_argument("--orders", default="canonical", help="canonical or random:<count>")
    p.add_argument("--seed", type=int, default=2026)
    _add_format(p)
    p.set_defaults(func=_cmd_verify_mt)

    p = sub.add_parser("pentagon", help="the pentagon identity, algebra and q-series forms")
    p.add_argument("--box", required=True, help="e.g. 8,8")
    p.add_argument("--window", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=_cmd_pentagon)

    p = sub.add_parser("keller55", help="the 55-term identity with the extra factor")
    p.add_argument("--gamma", required=True, help="g1,g2,g3,g4")
    p.add_argument("--window", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=_cmd_keller55)

    p = sub.add_parser("crosscheck", help="closed form of one product coefficient")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nprime", type=int, required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--axis", default="horizontal")
    p.add_argument("--window", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=_cmd_crosscheck)

    p = sub.add_parser("dt", help="emit the Donaldson-Thomas invariant element")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nprime", type=int, required=True)
    p.add_argument("--box", required=True)
    p.add_argument("--window", type=int, required=True)
    _add_format(p, choices=("pretty", "json"))
    p.set_defaults(func=_cmd_dt)

    p = sub.add_parser("betti", help="per-stratum Betti table and shared totals")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nprime", type=int, required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--window", type=int, required=True)
    _add_format(p, choices=("pretty", "csv", "json"))
    p.set_defaults(func=_cmd_betti)

    p = sub.add_parser("strata", help="stratum table with codim, w, Poincare data")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nprime", type=int, required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--axis", default="both", help="horizontal, vertical, or both")
    _add_format(p, choices=("pretty", "csv", "json"))
    p.set_defaults(func=_cmd_strata)

    p = sub.add_parser("roots", help="canonical root order and rho matrices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nprime", type=int, required=True)
    p.add_argument("--axis", default="horizontal")
    _add_format(p)
    p.set_defaults(func=_cmd_roots)

    p = sub.add_parser("normal-form", help="canonical lace diagram matrices")
    p.add_argument("--orientation", required=True, help="e.g. rrl for 1->2->3<-4")
    p.add_argument("--gamma", required=True)
    p.add_argument("--kostant", required=True, help="e.g. 1-4:2,1-2:1,1-1:1")
    _add_format(p)
    p.set_defaults(func=_cmd_normal_form)

    p = sub.add_parser("quiver", help="JSON description of the grid quiver")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nprime", type=int, required=True)
    p.set_defaults(func=_cmd_quiver)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except IdentityMismatch as exc:
        print(exc.verdict.describe(), file=sys.stderr)
        return 1
    except (ValueError, QDilogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
