"""Command-line surface: validate inputs, run checkers, enumerate Con(L).

Exit codes are a stable contract:

  0  pass
  1  congruence violation (witness reported)
  2  input error (parse or lattice/partition validation)
  3  internal agreement failure between routes that must coincide
  4  precondition failure: the partition's blocks are not intervals

Every command emits a run report: JSON with ``--json``, plain text
otherwise.  Reports are deterministic for identical inputs apart from the
wall_time_s field.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import catalog
from .congruence import (
    AgreementFailure,
    all_congruences,
    BRUTE_FORCE_LIMIT,
    check_classical,
    check_covers,
    check_naive,
    con_to_dot,
    con_to_json,
    count_configurations,
)
from .lattice import (
    FiniteLattice,
    LatconError,
    lattice_from_json,
    lattice_from_text,
    lattice_to_json,
    lattice_to_text,
)
from .relations import (
    NotIntervalBlocks,
    SetPartition,
    certify_interval_blocks,
    partition_from_json,
    partition_from_text,
    relation_of,
)

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_DISAGREEMENT = 3
EXIT_PRECONDITION = 4

PALETTE = [
    "#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6",
    "#ffff99", "#1f78b4", "#33a02c", "#e31a1c", "#ff7f00",
    "#6a3d9a", "#b15928",
]


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _load_lattice(path: str) -> tuple[FiniteLattice, dict]:
    data = Path(path).read_bytes()
    text = data.decode("utf-8")
    loader = lattice_from_json if path.endswith(".json") else lattice_from_text
    return loader(text), {"path": path, "sha256": _digest(data)}


def _load_partition(path: str) -> tuple[SetPartition, dict]:
    data = Path(path).read_bytes()
    text = data.decode("utf-8")
    loader = partition_from_json if path.endswith(".json") else partition_from_text
    return loader(text), {"path": path, "sha256": _digest(data)}


def _emit(args: argparse.Namespace, report: dict) -> None:
    if getattr(args, "json", False):
        print(json.dumps(report, sort_keys=True))
        return
    for key, value in report.items():
        if key == "command":
            continue
        if isinstance(value, (dict, list)):
            print(f"{key}: {json.dumps(value, sort_keys=True)}")
        else:
            print(f"{key}: {value}")


def _report(args: argparse.Namespace, inputs: dict, started: float, **payload) -> dict:
    return {
        "command": args.subcommand,
        "inputs": inputs,
        **payload,
        "wall_time_s": round(time.perf_counter() - started, 6),
    }


def hasse_dot(lattice: FiniteLattice, partition: SetPartition | None = None) -> str:
    """DOT text of the Hasse diagram, edges bottom-to-top.

    With a partition, nodes are filled with a color chosen by normalized
    block id, so equal inputs always render identically.
    """
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for v in range(lattice.size):
        attrs = f'label="{v}"'
        if partition is not None:
            color = PALETTE[partition.block_of[v] % len(PALETTE)]
            attrs += f', style=filled, fillcolor="{color}"'
        lines.append(f"  {v} [{attrs}];")
    for x, y in lattice.covers:
        lines.append(f"  {x} -> {y};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# subcommands


def cmd_validate(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    lattice, digest = _load_lattice(args.lattice)
    witness = lattice.semimodularity_witness()
    report = _report(
        args,
        {"lattice": digest},
        started,
        size=lattice.size,
        cover_count=len(lattice.covers),
        length=lattice.length(),
        bottom=lattice.bottom,
        top=lattice.top,
        semimodular=witness is None,
        semimodularity_witness=None if witness is None else list(witness),
    )
    _emit(args, report)
    return EXIT_PASS


def cmd_check(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    lattice, lat_digest = _load_lattice(args.lattice)
    partition, part_digest = _load_partition(args.partition)
    inputs = {"lattice": lat_digest, "partition": part_digest}

    methods = ["naive", "classical", "covers"] if args.method == "all" else [args.method]
    verdicts: dict[str, dict] = {}
    outcomes: dict[str, bool] = {}
    skipped: dict[str, str] = {}
    for method in methods:
        if method == "naive":
            verdict = check_naive(lattice, partition)
        elif method == "classical":
            verdict = check_classical(lattice, relation_of(partition))
        else:
            try:
                ip = certify_interval_blocks(lattice, partition)
            except NotIntervalBlocks as exc:
                if args.method == "covers":
                    report = _report(
                        args,
                        inputs,
                        started,
                        method=args.method,
                        error={"type": "NotIntervalBlocks", "message": str(exc)},
                    )
                    _emit(args, report)
                    return EXIT_PRECONDITION
                skipped[method] = str(exc)
                continue
            verdict = check_covers(lattice, ip)
        verdicts[method] = verdict.to_json()
        outcomes[method] = verdict.is_congruence

    report = _report(
        args,
        inputs,
        started,
        method=args.method,
        verdicts=verdicts,
        skipped=skipped,
        checks_performed={m: v["checks_performed"] for m, v in verdicts.items()},
    )
    _emit(args, report)
    if len(set(outcomes.values())) > 1:
        print(
            f"checkers disagree: {sorted(outcomes.items())}",
            file=sys.stderr,
        )
        return EXIT_DISAGREEMENT
    return EXIT_PASS if all(outcomes.values()) else EXIT_VIOLATION


def cmd_con(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    lattice, digest = _load_lattice(args.lattice)
    con = all_congruences(lattice, algorithm=args.algorithm, max_size=args.max_n)
    if args.dot is not None:
        Path(args.dot).write_text(con_to_dot(con))
    payload = json.loads(con_to_json(con))
    report = _report(
        args,
        {"lattice": digest},
        started,
        algorithm=args.algorithm,
        count=payload["count"],
        join_irreducible_count=len(payload["join_irreducible"]),
        congruences=payload["congruences"],
        refinement_edges=payload["refinement_edges"],
    )
    _emit(args, report)
    return EXIT_PASS


def cmd_bench(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    lattice, lat_digest = _load_lattice(args.lattice)
    partition, part_digest = _load_partition(args.partition)
    inputs = {"lattice": lat_digest, "partition": part_digest}
    try:
        ip = certify_interval_blocks(lattice, partition)
    except NotIntervalBlocks as exc:
        report = _report(
            args,
            inputs,
            started,
            error={"type": "NotIntervalBlocks", "message": str(exc)},
        )
        _emit(args, report)
        return EXIT_PRECONDITION
    covers_count, naive_count = count_configurations(lattice, ip)
    report = _report(
        args,
        inputs,
        started,
        covers_count=covers_count,
        naive_count=naive_count,
        ratio=covers_count / naive_count,
    )
    _emit(args, report)
    return EXIT_PASS


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "chain":
        lattice = catalog.chain(args.n)
    elif args.family == "boolean":
        lattice = catalog.boolean(args.k)
    elif args.family == "m3":
        lattice = catalog.m3()
    elif args.family == "n5":
        lattice = catalog.n5()
    elif args.family == "covering-square":
        lattice = catalog.covering_square()
    elif args.family == "grid":
        lattice = catalog.grid(args.p, args.q, max_size=args.max_n)
    elif args.family == "ordinal-sum":
        lower, _ = _load_lattice(args.lower)
        upper, _ = _load_lattice(args.upper)
        lattice = catalog.ordinal_sum(lower, upper)
    else:  # product
        left, _ = _load_lattice(args.left)
        right, _ = _load_lattice(args.right)
        lattice = catalog.direct_product(left, right, max_size=args.max_n)
    text = lattice_to_json(lattice) if args.json else lattice_to_text(lattice)
    if args.output is not None:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def cmd_export_dot(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    lattice, lat_digest = _load_lattice(args.lattice)
    inputs = {"lattice": lat_digest}
    partition = None
    if args.partition is not None:
        partition, part_digest = _load_partition(args.partition)
        if partition.size != lattice.size:
            raise ValueError(
                f"partition of {partition.size} elements on lattice of {lattice.size}"
            )
        inputs["partition"] = part_digest
    dot = hasse_dot(lattice, partition)
    if args.json:
        _emit(args, _report(args, inputs, started, dot=dot))
    else:
        sys.stdout.write(dot)
    return EXIT_PASS


# ----------------------------------------------------------------------
# parser and entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latcon",
        description="Verify congruences of finite lattices and compute Con(L).",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_json(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="emit a JSON report")

    p_validate = sub.add_parser("validate", help="load and validate a lattice file")
    p_validate.add_argument("lattice")
    add_json(p_validate)
    p_validate.set_defaults(func=cmd_validate)

    p_check = sub.add_parser("check", help="check a partition against a lattice")
    p_check.add_argument("lattice")
    p_check.add_argument("partition")
    p_check.add_argument(
        "--method",
        choices=["naive", "classical", "covers", "all"],
        default="all",
    )
    add_json(p_check)
    p_check.set_defaults(func=cmd_check)

    p_con = sub.add_parser("con", help="enumerate all congruences")
    p_con.add_argument("lattice")
    p_con.add_argument(
        "--algorithm", choices=["brute", "generated", "both"], default="both"
    )
    p_con.add_argument(
        "--max-n",
        type=int,
        default=BRUTE_FORCE_LIMIT,
        help="carrier bound for brute-force enumeration",
    )
    p_con.add_argument("--dot", help="also write a DOT graph of the refinement order")
    add_json(p_con)
    p_con.set_defaults(func=cmd_con)

    p_bench = sub.add_parser(
        "bench", help="compare cover-level vs naive case counts"
    )
    p_bench.add_argument("lattice")
    p_bench.add_argument("partition")
    add_json(p_bench)
    p_bench.set_defaults(func=cmd_bench)

    p_gen = sub.add_parser("gen", help="emit a catalog lattice")
    gen_sub = p_gen.add_subparsers(dest="family", required=True)
    families: list[tuple[str, list[tuple[str, dict]]]] = [
        ("chain", [("n", {"type": int})]),
        ("boolean", [("k", {"type": int})]),
        ("m3", []),
        ("n5", []),
        ("covering-square", []),
        ("grid", [("p", {"type": int}), ("q", {"type": int})]),
        ("ordinal-sum", [("lower", {}), ("upper", {})]),
        ("product", [("left", {}), ("right", {})]),
    ]
    for family, params in families:
        p_fam = gen_sub.add_parser(family)
        for name, kwargs in params:
            p_fam.add_argument(name, **kwargs)
        p_fam.add_argument("-o", "--output", help="write to a file instead of stdout")
        p_fam.add_argument(
            "--max-n", type=int, default=catalog.PRODUCT_LIMIT,
            help="size bound for products",
        )
        p_fam.add_argument(
            "--json", action="store_true", help="emit the JSON lattice format"
        )
        p_fam.set_defaults(func=cmd_gen, subcommand="gen")

    p_dot = sub.add_parser("export-dot", help="emit a DOT Hasse diagram")
    p_dot.add_argument("lattice")
    p_dot.add_argument("partition", nargs="?", default=None)
    add_json(p_dot)
    p_dot.set_defaults(func=cmd_export_dot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AgreementFailure as exc:
        print(f"internal agreement failure: {exc}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except (LatconError, ValueError, OSError) as exc:
        if getattr(args, "json", False):
            print(json.dumps({
                "error": {"type": type(exc).__name__, "message": str(exc)}
            }, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
