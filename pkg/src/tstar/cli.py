"""Command line front end.

One binary, subcommand per activity: bound, search, shift, verify,
kneser, enumerate, repro.  Reports go to stdout as JSON (default) or
aligned key: value lines; family data always uses the text format from
core, so anything written here can be fed back in.  Counts are decimal
strings in JSON output because they outgrow doubles quickly.

Exit codes: 0 success / property holds, 1 property falsified, 2 bad
input or violated hypothesis, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds, kneser, search, shifting, verify
from .core import (
    EmptyFamilyError,
    Family,
    GroundSet,
    HypothesisViolationError,
    InstanceTooLargeError,
    InvalidParametersError,
    ProfileSet,
    elements_of,
    enumerate_block,
    enumerate_profile_union,
    enumerate_quota,
    format_family,
    read_family,
    write_family,
)


# ---------------------------------------------------------------------------
# argument parsing helpers

def _int_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _profile_list(text: str) -> tuple[tuple[int, ...], ...]:
    try:
        return tuple(tuple(int(x) for x in chunk.split(","))
                     for chunk in text.split(";"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected profiles like '4,4;3,2', got {text!r}")


def _kneser_pairs(text: str) -> tuple[tuple[int, int], ...]:
    pairs = []
    try:
        for chunk in text.split(","):
            g, h = chunk.split(":")
            pairs.append((int(g), int(h)))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected pairs like '5:2,7:3', got {text!r}")
    return tuple(pairs)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


# ---------------------------------------------------------------------------
# report emission

def _count(value: int) -> str:
    """Counts travel as decimal strings; they outgrow JSON numbers."""
    return str(value)


def _jsonable(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _table_lines(data: dict, prefix: str = ""):
    for key, value in data.items():
        name = prefix + key
        if isinstance(value, dict):
            yield from _table_lines(value, name + ".")
        elif isinstance(value, bool):
            yield f"{name}: {'true' if value else 'false'}"
        elif value is None:
            yield f"{name}: -"
        elif isinstance(value, (list, tuple)):
            yield f"{name}: {json.dumps(value)}"
        else:
            yield f"{name}: {value}"


def emit_report(data: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(_jsonable(data)))
    else:
        for line in _table_lines(data):
            print(line)


def _distribution_list(dists) -> list[list[int]]:
    return sorted(list(d) for d in dists)


def _center_elements(mask: int | None) -> list[int] | None:
    if mask is None:
        return None
    return list(elements_of(mask))


# ---------------------------------------------------------------------------
# subcommands

def cmd_bound(args) -> int:
    ground = GroundSet(args.n)
    if args.profiles is not None and args.k is not None:
        raise InvalidParametersError("--k and --profiles are mutually exclusive")
    if args.profiles is not None:
        if args.t is None:
            raise InvalidParametersError("--profiles needs --t")
        report = bounds.max_union_star_size(args.t, ground,
                                            ProfileSet(args.profiles))
        emit_report({
            "value": _count(report.value),
            "optimal_distributions": _distribution_list(report.optimal_distributions),
            "hypotheses": report.hypothesis_flags,
        }, args.format)
        return 0
    if args.k is None:
        raise InvalidParametersError("need --k (or --profiles)")
    if args.ratio:
        if args.t not in (None, 1):
            raise InvalidParametersError("the ratio bound is about t=1 only")
        rb = bounds.ratio_bound(ground, args.k)
        emit_report({
            "ratio": rb.ratio,
            "value": _count(rb.absolute),
            "space": _count(rb.block),
            "hypotheses": {"ratio_bound": rb.hypothesis_ok},
        }, args.format)
        return 0
    if args.t is None:
        raise InvalidParametersError("need --t")
    dists = bounds.optimal_t_distributions(args.t, ground, args.k)
    emit_report({
        "value": _count(bounds.max_star_size(args.t, ground, args.k)),
        "optimal_distributions": _distribution_list(dists),
        "hypotheses": bounds.hypothesis_flags(args.t, ground, k=args.k),
    }, args.format)
    return 0


def _write_witness(witness: Family, path: str | None) -> str | None:
    if path is None:
        return None
    write_family(witness, path)
    return path


def cmd_search(args) -> int:
    ground = GroundSet(args.n)
    if args.quota is not None and args.shifted:
        raise InvalidParametersError("--quota and --shifted are mutually exclusive")
    if args.quota is not None:
        if len(args.k) != 1:
            raise InvalidParametersError("quota mode takes a single --k value")
        if args.t not in (None, 1):
            raise InvalidParametersError("the quota check is about t=1 only")
        rep = search.check_quota_family(ground, args.k[0], args.quota,
                                        cap=args.search_cap)
        emit_report({
            "max_size": _count(rep["max_size"]),
            "star_size": _count(rep["star_size"]),
            "star_center": [rep["star_center"]],
            "verdict": rep["verdict"],
            "hypotheses": rep["flags"],
            "witness_center": _center_elements(rep["witness_center"]),
            "nodes_explored": _count(rep["nodes_explored"]),
            "witness_file": _write_witness(rep["witness"], args.witness_out),
        }, args.format)
        return 0
    if args.t is None:
        raise InvalidParametersError("need --t")
    if args.shifted:
        space = enumerate_block(ground, args.k, cap=args.enum_cap)
        result = search.shifted_search(space, args.t, cap=args.search_cap)
        emit_report({
            "max_size": _count(result.max_size),
            "witness_center": _center_elements(result.is_trivial_star),
            "nodes_explored": _count(result.nodes_explored),
            "bound_used": _count(result.bound_used),
            "witness_file": _write_witness(result.witness, args.witness_out),
        }, args.format)
        return 0
    rep = search.check_block_maximum(ground, args.k, args.t,
                                     cap=args.search_cap)
    emit_report({
        "max_size": _count(rep["max_size"]),
        "star_bound": _count(rep["star_bound"]),
        "gap": _count(rep["gap"]),
        "witness_center": _center_elements(rep["witness_center"]),
        "center_exchange_optimal": rep["center_exchange_optimal"],
        "hypotheses": rep["flags"],
        "consistent": rep["consistent"],
        "nodes_explored": _count(rep["nodes_explored"]),
        "witness_file": _write_witness(rep["witness"], args.witness_out),
    }, args.format)
    return 0


def cmd_shift(args) -> int:
    fam = read_family(args.family)
    if args.all:
        parts = None
    else:
        if not 1 <= args.part <= fam.ground.p:
            raise InvalidParametersError(
                f"--part must be in 1..{fam.ground.p}, got {args.part}")
        parts = (args.part - 1,)
    closed, steps = shifting.shift_closure(fam, parts)
    text = format_family(closed) + f"# steps: {steps}\n"
    if args.out is not None:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
        emit_report({
            "steps": _count(steps),
            "size": _count(len(closed.members)),
            "out": args.out,
        }, args.format)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    fam = read_family(args.family)
    extra: dict = {}
    if args.mode == "t-intersecting":
        holds = verify.is_t_intersecting(fam, args.t)
    elif args.mode == "cross":
        if args.other is None:
            raise InvalidParametersError("cross mode needs a second family file")
        other = read_family(args.other)
        if other.ground.sizes != fam.ground.sizes:
            raise InvalidParametersError("the two families live on different grounds")
        holds = verify.are_cross_t_intersecting(fam, other, args.t)
    elif args.mode == "star":
        if args.space is None:
            raise InvalidParametersError("star mode needs --space")
        space = read_family(args.space)
        center = verify.is_full_t_star(fam, space, args.t)
        holds = center is not None
        extra["center"] = _center_elements(center)
    elif args.mode == "prefix":
        if args.other is None:
            raise InvalidParametersError("prefix mode needs a second family file")
        if args.r is None or args.s is None:
            raise InvalidParametersError("prefix mode needs --r and --s")
        other = read_family(args.other)
        holds = verify.check_prefix_intersection(fam, other, args.t,
                                                 args.r, args.s)
    elif args.mode == "prefix-parts":
        if args.other is None:
            raise InvalidParametersError("prefix-parts mode needs a second family file")
        if args.profile_a is None or args.profile_b is None:
            raise InvalidParametersError(
                "prefix-parts mode needs --profile-a and --profile-b")
        other = read_family(args.other)
        holds = verify.check_partwise_prefix_intersection(
            fam, other, args.t, args.profile_a, args.profile_b)
    else:  # star-shift
        if args.space is None or args.i is None or args.j is None:
            raise InvalidParametersError("star-shift mode needs --space, --i and --j")
        space = read_family(args.space)
        p = space.ground.p
        if not (1 <= args.i <= p and 1 <= args.j <= p):
            raise InvalidParametersError(f"--i and --j must be parts in 1..{p}")
        holds = verify.check_star_preservation(fam, space, args.t,
                                               args.i - 1, args.j - 1)
    emit_report({"holds": holds, **extra}, args.format)
    return 0 if holds else 1


def cmd_kneser(args) -> int:
    params = kneser.KneserParams(args.params)
    emit_report({
        "connected": kneser.is_connected(params, cap=args.enum_cap),
        "vertices": _count(params.vertex_count),
    }, args.format)
    return 0


def cmd_enumerate(args) -> int:
    ground = GroundSet(args.n)
    chosen = [x for x in (args.k, args.profiles) if x is not None]
    if args.quota is not None and (args.k is None or len(args.k) != 1):
        raise InvalidParametersError("quota mode takes a single --k value")
    if len(chosen) != 1:
        raise InvalidParametersError("need exactly one of --k or --profiles")
    if args.quota is not None:
        fam = enumerate_quota(ground, args.k[0], args.quota, cap=args.enum_cap)
    elif args.k is not None:
        fam = enumerate_block(ground, args.k, cap=args.enum_cap)
    else:
        fam = enumerate_profile_union(ground, ProfileSet(args.profiles),
                                      cap=args.enum_cap)
    if args.out is not None:
        write_family(fam, args.out)
        emit_report({"size": _count(len(fam.members)), "out": args.out}, args.format)
    else:
        sys.stdout.write(format_family(fam))
    return 0


def cmd_repro(args) -> int:
    from . import acceptance

    failures = 0
    for check in acceptance.ACCEPTANCE_CHECKS:
        if args.only is not None and check.number not in args.only:
            continue
        outcome = check.run()
        status = "PASS" if outcome.passed else "FAIL"
        print(f"criterion {check.number:2d}: {status}  {check.label}")
        if not outcome.passed:
            failures += 1
            for note in outcome.notes:
                print(f"    {note}")
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# parser assembly and dispatch

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json",
                        help="report format (default json)")
    common.add_argument("--enum-cap", type=_positive_int, default=None,
                        help="override the enumeration size cap")
    common.add_argument("--search-cap", type=_positive_int, default=None,
                        help="override the search size cap")
    common.add_argument("--workers", type=_positive_int, default=1,
                        help="reserved; runs are sequential regardless")

    parser = argparse.ArgumentParser(
        prog="tstar",
        description="exact computations for t-intersecting families over "
                    "partitioned ground sets")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", parents=[common],
                       help="star bounds for blocks and profile unions")
    b.add_argument("--n", type=_int_vector, required=True)
    b.add_argument("--k", type=_int_vector)
    b.add_argument("--t", type=int)
    b.add_argument("--profiles", type=_profile_list)
    b.add_argument("--ratio", action="store_true",
                   help="density bound for intersecting subfamilies")
    b.set_defaults(func=cmd_bound)

    s = sub.add_parser("search", parents=[common],
                       help="exact maximum t-intersecting subfamily")
    s.add_argument("--n", type=_int_vector, required=True)
    s.add_argument("--k", type=_int_vector, required=True)
    s.add_argument("--t", type=int)
    s.add_argument("--shifted", action="store_true",
                   help="return a shifted witness")
    s.add_argument("--quota", type=_int_vector,
                   help="per-part minimum quotas; switches to the t=1 "
                        "quota-family check")
    s.add_argument("--witness-out", metavar="FILE",
                   help="write the witness family here")
    s.set_defaults(func=cmd_search)

    sh = sub.add_parser("shift", parents=[common],
                        help="compress a family file to its shifted closure")
    sh.add_argument("family", help="family file to read")
    group = sh.add_mutually_exclusive_group(required=True)
    group.add_argument("--part", type=int, help="1-based part to compress")
    group.add_argument("--all", action="store_true",
                       help="compress every part")
    sh.add_argument("--out", metavar="FILE",
                    help="write the closed family here instead of stdout")
    sh.set_defaults(func=cmd_shift)

    v = sub.add_parser("verify", parents=[common],
                       help="check a property of family files")
    v.add_argument("mode", choices=("t-intersecting", "cross", "star",
                                    "prefix", "prefix-parts", "star-shift"))
    v.add_argument("family", help="family file to read")
    v.add_argument("other", nargs="?", help="second family file (pair modes)")
    v.add_argument("--t", type=int, required=True)
    v.add_argument("--r", type=int, help="uniform size of the first family")
    v.add_argument("--s", type=int, help="uniform size of the second family")
    v.add_argument("--profile-a", type=_int_vector,
                   help="profile of the first family")
    v.add_argument("--profile-b", type=_int_vector,
                   help="profile of the second family")
    v.add_argument("--space", metavar="FILE",
                   help="ambient family file (star modes)")
    v.add_argument("--i", type=int, help="1-based target part")
    v.add_argument("--j", type=int, help="1-based source part")
    v.set_defaults(func=cmd_verify)

    kn = sub.add_parser("kneser", parents=[common],
                        help="connectivity of a product of Kneser graphs")
    kn.add_argument("--params", type=_kneser_pairs, required=True,
                    help="factors as 'g:h' pairs, e.g. '5:2,7:3'")
    kn.set_defaults(func=cmd_kneser)

    e = sub.add_parser("enumerate", parents=[common],
                       help="write out a block, union or quota family")
    e.add_argument("--n", type=_int_vector, required=True)
    e.add_argument("--k", type=_int_vector)
    e.add_argument("--profiles", type=_profile_list)
    e.add_argument("--quota", type=_int_vector)
    e.add_argument("--out", metavar="FILE")
    e.set_defaults(func=cmd_enumerate)

    r = sub.add_parser("repro", parents=[common],
                       help="run the acceptance checks and print the matrix")
    r.add_argument("--only", type=int, action="append",
                   help="run only this criterion (repeatable)")
    r.set_defaults(func=cmd_repro)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidParametersError, HypothesisViolationError,
            EmptyFamilyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InstanceTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
