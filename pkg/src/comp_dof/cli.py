"""Command-line front end: scheme, bound, search, sweep, prune.

All commands emit JSON documents except ``sweep``, whose contract is a CSV
table (a JSON variant is available via --format).  Outputs are byte-stable
for identical inputs and seed: field order is fixed and floats use full
round-trip precision (CSV ratios use 15 significant digits).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .assignments import (
    baseline_assignment,
    deserialize_assignment,
    prune_useless,
    serialize_assignment,
)
from .cluster_scheme import cluster_plan, scheme_dof
from .converse import build_certificate
from .errors import (
    IndexOutOfRange,
    Infeasible,
    InvalidDimensions,
    ParseError,
    TooLarge,
)
from .net_model import KINDS, WYNER_ASYMMETRIC, build_network, deserialize_network
from .search_oracle import brute_force_zf_dof, restricted_zf_dof, template_search
from .zf_precoder import deserialize_plan, design_all, verify

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INFEASIBLE = 2
EXIT_BAD_INPUT = 3


def _fmt(value: float) -> str:
    return format(value, ".15g")


def _emit(text: str, out: str) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as handle:
            handle.write(text)


def _read(path: str) -> str:
    try:
        with open(path) as handle:
            return handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _plan_doc(plan, order: int) -> dict:
    return {
        "K": plan.K,
        "M": order,
        "active_users": sorted(plan.active_users),
        "deactivated_transmitters": sorted(plan.deactivated_transmitters),
        "transmit_sets": [sorted(t) for t in plan.assignment.transmit_sets],
        "cancellation_sets": [sorted(c) for c in plan.cancellation_sets],
    }


def _verification_doc(report) -> dict:
    return {
        "pass": report.passed,
        "dof": report.dof,
        "receivers": [
            {"r": rec.receiver, "own_gain_abs": rec.own_gain_abs,
             "worst_leak_abs": rec.worst_leak_abs, "pass": rec.passed}
            for rec in report.receivers
        ],
    }


def _ratio_fields(numerator: int, denominator: int) -> dict:
    frac = Fraction(numerator, denominator)
    return {
        "ratio": float(_fmt(numerator / denominator)),
        "ratio_fraction": {"num": frac.numerator, "den": frac.denominator},
    }


def _require(args, *names) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise InvalidDimensions(f"--{name} is required for this command")
    if args.tol <= 0:
        raise InvalidDimensions(f"tol must be positive, got {args.tol}")


def _load_network(args):
    """Network from --network when given, else from the topology flags."""
    if args.network:
        net = deserialize_network(_read(args.network))
        if args.K is not None and args.K != net.K:
            raise ParseError(f"--K {args.K} does not match network K={net.K}")
        return net
    _require(args, "K")
    return build_network(args.kind, args.K, args.L, args.cyclic, args.seed)


def cmd_scheme(args) -> int:
    if args.plan:
        # verify a supplied plan (e.g. a search witness) instead of building one
        plan, order = deserialize_plan(_read(args.plan))
        if args.K is None:
            args.K = plan.K
        elif args.K != plan.K:
            raise ParseError(f"--K {args.K} does not match plan K={plan.K}")
        net = _load_network(args)
        args.M = order
    else:
        _require(args, "M")
        net = _load_network(args)
        if net.kind != WYNER_ASYMMETRIC or net.cyclic:
            raise InvalidDimensions(
                "the cluster construction targets the non-cyclic wyner-asymmetric model")
        plan = cluster_plan(net.K, args.M)
    design = design_all(net, plan)
    report = verify(net, plan, design, args.tol)
    doc = {
        "plan": _plan_doc(plan, args.M),
        "beams": [
            {"message": i,
             "weights": [{"tx": j, "re": w.real, "im": w.imag}
                         for j, w in sorted(design.beams[i].items())]}
            for i in sorted(design.beams)
        ],
        "verification": _verification_doc(report),
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_bound(args) -> int:
    _require(args, "M")
    if args.network:
        # only the support structure matters to the certificate
        net = _load_network(args)
        if net.kind != WYNER_ASYMMETRIC or net.cyclic:
            raise InvalidDimensions(
                "certificates target the non-cyclic wyner-asymmetric model")
        K = net.K
    else:
        _require(args, "K")
        K = args.K
    certificate = build_certificate(K, args.M)
    doc = {
        "K": certificate.K,
        "M": certificate.M,
        "bound": len(certificate.receivers) if certificate.complete else None,
        "A": sorted(certificate.receivers),
        "removed_tx": sorted(certificate.removed_tx),
        "free_tx": sorted(certificate.free_tx),
        "trace": [{"tx": tx, "via_receiver": r} for tx, r in certificate.trace],
    }
    if not certificate.complete:
        doc["residual"] = sorted(certificate.residual)
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK if certificate.complete else EXIT_FAIL


def cmd_search(args) -> int:
    _require(args, "M")
    if (args.period is None) != (args.copies is None):
        raise InvalidDimensions("--period and --copies must be given together")
    if args.period is not None:
        if args.network:
            raise InvalidDimensions(
                "--network is not used by the periodic template search")
        result = template_search(args.kind, args.L, args.M, args.period,
                                 args.copies, args.seed)
        denominator = args.period
    else:
        net = _load_network(args)
        if args.baseline and args.assignment:
            raise InvalidDimensions("--baseline and --assignment are exclusive")
        if args.baseline:
            result = restricted_zf_dof(net, baseline_assignment(net.K, args.M))
        elif args.assignment:
            result = restricted_zf_dof(net, deserialize_assignment(_read(args.assignment)))
        else:
            result = brute_force_zf_dof(net, args.M)
        denominator = net.K
    doc = {
        "best_count": result.best_count,
        **_ratio_fields(result.best_count, denominator),
        "restricted": result.restricted,
        "witness": _plan_doc(result.witness_plan, args.M),
        "explored": result.explored,
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


SWEEP_HEADER = "K,M,L,achievable,upper_bound,ratio_achievable,ratio_bound,limit"


def cmd_sweep(args) -> int:
    _require(args, "Kmax", "M")
    if args.network:
        raise InvalidDimensions("sweep spans many K and takes no --network")
    if not 1 <= args.Kmax <= 200:
        raise InvalidDimensions(f"Kmax must lie in [1, 200], got {args.Kmax}")
    limit = Fraction(2 * args.M, 2 * args.M + args.L)
    rows = []
    for K in range(1, args.Kmax + 1):
        if args.L == 1:
            achievable = scheme_dof(K, args.M)
            bound = None
            if K >= args.M + 1:
                certificate = build_certificate(K, args.M)
                if certificate.complete:
                    bound = len(certificate.receivers)
        else:
            # no closed-form construction or certificate at L > 1; the row
            # only carries the reference limit
            achievable = bound = None
        rows.append((K, achievable, bound))
    if args.format == "csv":
        lines = [SWEEP_HEADER]
        for K, achievable, bound in rows:
            lines.append(",".join([
                str(K), str(args.M), str(args.L),
                "" if achievable is None else str(achievable),
                "" if bound is None else str(bound),
                "" if achievable is None else _fmt(achievable / K),
                "" if bound is None else _fmt(bound / K),
                _fmt(limit.numerator / limit.denominator),
            ]))
        text = "\n".join(lines) + "\n"
    else:
        docs = []
        for K, achievable, bound in rows:
            entry = {"K": K, "M": args.M, "L": args.L,
                     "achievable": achievable, "upper_bound": bound}
            if achievable is not None:
                frac = Fraction(achievable, K)
                entry["ratio_achievable"] = float(_fmt(achievable / K))
                entry["ratio_achievable_fraction"] = {"num": frac.numerator,
                                                      "den": frac.denominator}
            if bound is not None:
                frac = Fraction(bound, K)
                entry["ratio_bound"] = float(_fmt(bound / K))
                entry["ratio_bound_fraction"] = {"num": frac.numerator,
                                                 "den": frac.denominator}
            entry["limit"] = float(_fmt(limit.numerator / limit.denominator))
            entry["limit_fraction"] = {"num": limit.numerator,
                                       "den": limit.denominator}
            docs.append(entry)
        text = json.dumps(docs, indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_prune(args) -> int:
    if args.tol <= 0:
        raise InvalidDimensions(f"tol must be positive, got {args.tol}")
    assignment = deserialize_assignment(_read(args.input))
    if args.network:
        net = deserialize_network(_read(args.network))
        if net.K != assignment.K:
            raise ParseError(
                f"network has K={net.K} but assignment has K={assignment.K}")
    else:
        net = build_network(args.kind, assignment.K, args.L, args.cyclic,
                            args.seed)
    _emit(serialize_assignment(prune_useless(net, assignment)), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kind", choices=KINDS, default=WYNER_ASYMMETRIC)
    common.add_argument("--K", type=int, default=None, help="user count")
    common.add_argument("--M", type=int, default=1, help="cooperation order")
    common.add_argument("--L", type=int, default=1, help="connectivity width")
    common.add_argument("--cyclic", action="store_true")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--out", default="-", help="output path ('-' = stdout)")
    common.add_argument("--network", default=None,
                        help="network document to use instead of the topology flags")

    parser = argparse.ArgumentParser(
        prog="comp-dof",
        description="One-shot zero-forcing schemes, reconstruction "
                    "certificates, and brute-force DoF oracles for banded "
                    "interference networks")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scheme", parents=[common],
                       help="build, solve, and verify the cluster plan")
    p.add_argument("--plan", default=None,
                   help="verify this plan document instead of building one")
    p.set_defaults(handler=cmd_scheme)

    p = sub.add_parser("bound", parents=[common],
                       help="emit a reconstruction certificate")
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("search", parents=[common],
                       help="brute-force the best one-shot plan")
    p.add_argument("--baseline", action="store_true",
                   help="restrict to the fixed contiguous assignment")
    p.add_argument("--assignment", default=None,
                   help="restrict to the assignment in this document")
    p.add_argument("--period", type=int, default=None,
                   help="periodic template search: users per period")
    p.add_argument("--copies", type=int, default=None,
                   help="periodic template search: number of periods")
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("sweep", parents=[common],
                       help="tabulate achievable counts and bounds over K")
    p.add_argument("--Kmax", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("prune", parents=[common],
                       help="drop provably useless transmit-set members")
    p.add_argument("--input", required=True, help="assignment document")
    p.set_defaults(handler=cmd_prune)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_BAD_INPUT
    try:
        return args.handler(args)
    except (InvalidDimensions, IndexOutOfRange, ParseError, TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


def entry() -> None:
    sys.exit(main())
