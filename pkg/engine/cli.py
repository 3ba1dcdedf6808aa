"""Command line for the far-paths engine.

Exit codes: 0 success, 1 when ``decide`` answers NO, 2 on input errors and
failed certificate checks.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from pydantic import ValidationError

from bench import fit_exponent, format_table, run_bench
from coarse_menger import Verdict, decide_far_paths, main_solve
from config import config
from disc_linkage import Linkage, pairs_demand, solve_disc_linkage
from embed_core import BoundaryCurve, curve_from_order, make_terminals
from errors import FarPathsError, InstanceFormatError
from export import to_dot, to_svg
from generators import FAMILIES, gen_instance
from instance_io import (
    certificate_from_decision,
    certificate_from_linkage,
    certificate_from_verdict,
    demand_from_certificate,
    demand_from_file,
    instance_digest,
    linkage_from_certificate,
    load_instance,
    obstruction_from_certificate,
    parse_certificate,
    parse_demand,
    read_text,
    verdict_from_certificate,
    write_document,
)
from oracle_verify import (
    check_decide,
    check_linkage,
    check_no,
    check_obstruction,
    check_yes,
)

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


def _parameters(args, instance) -> Tuple[int, int]:
    k = args.k if getattr(args, "k", None) is not None else instance.k
    c = args.c if args.c is not None else instance.c
    if k is None or c is None:
        raise InstanceFormatError("k and c must be given as flags or in the instance")
    if k < 0 or c < 0:
        raise InstanceFormatError("k and c must be nonnegative")
    return k, c


def _print_verdict(verdict: Verdict) -> None:
    print("YES" if verdict.is_yes else "NO")
    for index, path in enumerate(verdict.paths):
        print(f"  path {index}: {' '.join(map(str, path))}")
    for index, blob in enumerate(verdict.blobs):
        print(
            f"  blob {index}: diameter {blob.diameter}, "
            f"vertices {' '.join(map(str, sorted(blob.vertices)))}"
        )


def _parse_pairs(text: str) -> List[Tuple[int, int]]:
    pairs = []
    for chunk in text.split(","):
        try:
            s, t = chunk.split(":")
            pairs.append((int(s), int(t)))
        except ValueError as exc:
            raise InstanceFormatError(f"bad pair {chunk!r}; expected s:t") from exc
    return pairs


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    _, G, terminals = load_instance(args.instance)
    print(
        f"valid: {len(G.vertices)} vertices, {len(G.edges)} edges, "
        f"{len(G.faces)} faces, |S|={len(terminals.S)}, |T|={len(terminals.T)}"
    )
    return EXIT_OK


def cmd_solve(args) -> int:
    instance, G, terminals = load_instance(args.instance)
    k, c = _parameters(args, instance)
    verdict = main_solve(G, terminals, k, c)
    _print_verdict(verdict)
    if args.cert:
        cert = certificate_from_verdict(verdict, k, c, instance_digest(instance))
        write_document(cert, args.cert)
    return EXIT_OK


def cmd_decide(args) -> int:
    instance, G, terminals = load_instance(args.instance)
    k, c = _parameters(args, instance)
    result = decide_far_paths(G, terminals, k, c, args.pairing_limit)
    _print_verdict(result.verdict)
    if not result.exact:
        print("  (pairing search limit reached; NO is not certified exact)")
    if args.cert:
        write_document(
            certificate_from_decision(result, k, c, instance_digest(instance)), args.cert
        )
    return EXIT_OK if result.answer else EXIT_NO


def cmd_linkage(args) -> int:
    instance, G, terminals = load_instance(args.instance)
    c = args.c if args.c is not None else instance.c
    if c is None or c < 0:
        raise InstanceFormatError("c must be a nonnegative flag or instance value")
    if args.pairs:
        pairs = _parse_pairs(args.pairs)
        terminals = make_terminals(
            G, [s for s, _ in pairs], [t for _, t in pairs], strict=False
        )
        curve = BoundaryCurve(G, terminals)
        system, demand = pairs_demand(curve, pairs)
    else:
        curve = BoundaryCurve(G, terminals)
        system, demand = demand_from_file(curve, parse_demand(read_text(args.demand)))
    outcome = solve_disc_linkage(curve, c, system, demand)

    if isinstance(outcome, Linkage):
        print("LINKAGE")
        for (i, j), paths in sorted(outcome.paths.items()):
            for path in paths:
                print(f"  ({i}, {j}): {' '.join(map(str, path))}")
    else:
        print("OBSTRUCTION")
        print(
            f"  points ({outcome.a}, {outcome.b}): boom length {outcome.boom.length}, "
            f"crossing demand {outcome.crossing_sum}"
        )
    if args.cert:
        cert = certificate_from_linkage(
            outcome, system, demand, c, instance_digest(instance), curve.order
        )
        write_document(cert, args.cert)
    return EXIT_OK


def cmd_check(args) -> int:
    instance, G, terminals = load_instance(args.instance)
    cert = parse_certificate(read_text(args.certificate))
    if cert.digest != instance_digest(instance):
        print("FAILED DigestMismatch: certificate belongs to another instance")
        return EXIT_ERROR

    if cert.kind in ("yes", "no"):
        verdict = verdict_from_certificate(cert)
        if cert.k is None:
            raise InstanceFormatError("a yes/no certificate needs k")
        if cert.depth_bound is not None:
            result = check_decide(
                G, terminals, cert.k, cert.c, verdict.is_yes, verdict, cert.depth_bound
            )
        elif verdict.is_yes:
            result = check_yes(G, terminals, cert.k, cert.c, verdict.paths)
        else:
            result = check_no(G, terminals, cert.k, cert.c, verdict.blobs)
    else:
        order = cert.boundary_order or list(terminals.boundary_order)
        curve = curve_from_order(G, order)
        system, demand = demand_from_certificate(cert, curve.size)
        if cert.kind == "linkage":
            linkage = linkage_from_certificate(cert, system, demand)
            result = check_linkage(curve, cert.c, system, demand, linkage)
        else:
            cert_obstruction = obstruction_from_certificate(cert)
            result = check_obstruction(curve, cert.c, system, demand, cert_obstruction)

    if result:
        print(f"OK {cert.kind}")
        return EXIT_OK
    print(f"FAILED {result.failure}: {result.detail}")
    return EXIT_ERROR


def cmd_gen(args) -> int:
    instance = gen_instance(args.family, args.n, args.seed, args.spacing)
    out = args.out or Path(config.CORPUS_DIR) / f"{instance.name}.json"
    print(write_document(instance, out))
    return EXIT_OK


def cmd_export(args) -> int:
    instance, G, terminals = load_instance(args.instance)
    cert = parse_certificate(read_text(args.cert)) if args.cert else None
    name = instance.name or Path(args.instance).stem
    if args.format == "dot":
        text = to_dot(G, terminals, cert, name)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return EXIT_OK
    out = args.out or Path(args.instance).with_suffix(".svg")
    print(to_svg(G, terminals, out, cert, name))
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        sizes = [int(part) for part in args.sizes.split(",")]
    except ValueError as exc:
        raise InstanceFormatError(f"bad size list {args.sizes!r}") from exc
    rows = run_bench(args.family, sizes, args.k, args.c, args.seed, args.workers)
    print(format_table(rows))
    exponent = fit_exponent(rows)
    if exponent is not None:
        print(f"fitted runtime exponent: {exponent:.2f}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="farpaths", description="Far S-T paths in planar graphs"
    )
    parser.add_argument("--log-level", default=config.LOG_LEVEL)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate an instance")
    p.add_argument("instance")
    p.set_defaults(handler=cmd_validate)

    for name, handler, help_text in (
        ("solve", cmd_solve, "k+1 far paths or at most k blobs"),
        ("decide", cmd_decide, "are there k pairwise far paths?"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("instance")
        p.add_argument("--k", type=int)
        p.add_argument("--c", type=int)
        p.add_argument("--cert", help="write the certificate here")
        if name == "decide":
            p.add_argument("--pairing-limit", type=int, default=None)
        p.set_defaults(handler=handler)

    p = sub.add_parser("linkage", help="link boundary pairs far apart in a disc")
    p.add_argument("instance")
    p.add_argument("--c", type=int)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--pairs", help="comma separated s:t vertex pairs")
    group.add_argument("--demand", help="demand file")
    p.add_argument("--cert")
    p.set_defaults(handler=cmd_linkage)

    p = sub.add_parser("check", help="check a certificate against its instance")
    p.add_argument("instance")
    p.add_argument("certificate")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--spacing", type=int, default=4, help="rings layer spacing")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("export", help="draw an instance")
    p.add_argument("instance")
    p.add_argument("--format", choices=("dot", "svg"), default="dot")
    p.add_argument("--cert")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_export)

    p = sub.add_parser("bench", help="time decide on generated instances")
    p.add_argument("--family", choices=FAMILIES, default="grid")
    p.add_argument("--sizes", required=True, help="comma separated sizes")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level.upper(),
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    try:
        return args.handler(args)
    except (FarPathsError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
