#!/usr/bin/env python3
"""
tatecoh command line.

    tatecoh validate builtin:sweedler
    tatecoh info builtin:taft3
    tatecoh tate builtin:sweedler --module trivial --from -5 --to 5 --engine both
    tatecoh hochschild app/data/sweedler_q.json --from -4 --to 4
    tatecoh check builtin:taft3 --which symmetry
    tatecoh cup builtin:sweedler --i 2 --j 2

Exit codes: 0 success, 1 failed check or validation, 2 input error.
"""

import argparse
import json
import sys
from typing import List, Optional

from pydantic import ValidationError

from scripts.utils import (
    EXIT_FAILURE,
    EXIT_INPUT,
    EXIT_OK,
    load_input,
    require_hopf,
    resolve_module,
    split_status,
)
from app.models import JobConfig
from src.algcore import validate_algebra
from src.checks import run_checks
from src.config import config
from src.cup import get_ring, ring_table
from src.database import close_database
from src.errors import ParseError, TatecohError
from src.hopf import (
    HopfAlgebra,
    NotFinite,
    antipode_order,
    integrals,
    modular_function,
    nakayama_square,
    nakayama_via_modular,
    validate_hopf,
)
from src.tate import CohomologyTable, tate_cohomology, tate_hochschild
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def _emit(job: JobConfig, text: str, payload: dict) -> None:
    if job.format == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def _emit_tables(job: JobConfig, tables: List[CohomologyTable]) -> int:
    verdict = EXIT_OK
    mismatches: List[int] = []
    if len(tables) == 2:
        mismatches = tables[0].mismatches(tables[1])
        if mismatches:
            verdict = EXIT_FAILURE
    if job.format == "json":
        payload = {"tables": [json.loads(t.to_json()) for t in tables]}
        if len(tables) == 2:
            payload["engines_agree"] = not mismatches
            payload["mismatched_degrees"] = mismatches
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        for table in tables:
            print(table.to_text())
            print()
        if len(tables) == 2:
            emoji, _ = split_status(not mismatches)
            detail = f"disagree in degrees {mismatches}" if mismatches else "agree"
            print(f"{emoji} engines {detail}")
    return verdict


def cmd_validate(job: JobConfig) -> int:
    obj = load_input(job.input)
    report = validate_hopf(obj) if isinstance(obj, HopfAlgebra) else validate_algebra(obj)
    _emit(job, report.summary(), report.model_dump(mode="json"))
    return EXIT_OK if report.ok else EXIT_FAILURE


def cmd_info(job: JobConfig) -> int:
    hopf = require_hopf(load_input(job.input), "info")
    fmt_vec = hopf.algebra.format_vector
    field = hopf.field
    order = antipode_order(hopf)
    left = [fmt_vec(v) for v in integrals(hopf, "left")]
    right = [fmt_vec(v) for v in integrals(hopf, "right")]
    alpha = modular_function(hopf)
    nu = nakayama_via_modular(hopf)
    _, involutive = nakayama_square(hopf)
    alpha_table = {lbl: field.format(alpha.value(i)) for i, lbl in enumerate(hopf.labels)}
    nu_table = {lbl: fmt_vec(nu.matrix.column(i)) for i, lbl in enumerate(hopf.labels)}
    payload = {
        "name": hopf.name,
        "field": hopf.field.descriptor.label(),
        "dim": hopf.dim,
        "basis": hopf.labels,
        "antipode_order": f"> {order.bound}" if isinstance(order, NotFinite) else order,
        "left_integrals": left,
        "right_integrals": right,
        "modular_function": alpha_table,
        "nakayama": nu_table,
        "nakayama_order": nu.order,
        "nakayama_square_is_identity": involutive,
    }
    lines = [
        f"📐 {hopf.name} over {payload['field']}",
        f"   dim: {hopf.dim}",
        f"   basis: {', '.join(hopf.labels)}",
        f"   antipode order: {payload['antipode_order']}",
        f"   left integrals: {', '.join(left)}",
        f"   right integrals: {', '.join(right)}",
        "   α: " + ", ".join(f"α({k})={v}" for k, v in alpha_table.items()),
        "   ν: " + ", ".join(f"ν({k})={v}" for k, v in nu_table.items()),
        f"   ν order: {nu.order}",
        f"   ν²=1: {'yes' if involutive else 'no'}",
    ]
    _emit(job, "\n".join(lines), payload)
    return EXIT_OK


def cmd_tate(job: JobConfig, module_spec: str = "trivial") -> int:
    hopf = require_hopf(load_input(job.input), "tate")
    module = resolve_module(hopf, module_spec)
    tables = [tate_cohomology(hopf, module, job.lo, job.hi, engine) for engine in job.engines]
    return _emit_tables(job, tables)


def cmd_hochschild(job: JobConfig) -> int:
    hopf = require_hopf(load_input(job.input), "hochschild")
    tables = [tate_hochschild(hopf, job.lo, job.hi, engine) for engine in job.engines]
    return _emit_tables(job, tables)


def cmd_check(job: JobConfig, which: str = "all") -> int:
    hopf = require_hopf(load_input(job.input), "check")
    engine = job.engines[0]
    reports = run_checks(hopf, which, job.lo, job.hi, engine)
    if job.format == "json":
        print(json.dumps([r.model_dump(mode="json") for r in reports], indent=2, ensure_ascii=False))
    else:
        for report in reports:
            icon = {"PASS": "✅", "FAIL": "❌", "SKIP": "⏭️ "}[report.status]
            print(f"{icon} {report.name}: {report.status}")
            for note in report.notes:
                print(f"   {note}")
            for row in report.rows:
                mark = "✓" if row.ok else "✗"
                degree = "" if row.degree is None else f"n={row.degree} "
                print(f"   {mark} {degree}{row.values}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILURE


def cmd_cup(job: JobConfig, i: Optional[int] = None, j: Optional[int] = None) -> int:
    hopf = require_hopf(load_input(job.input), "cup")
    engine = job.engines[0]
    if i is None or j is None:
        table = ring_table(hopf, job.lo, job.hi, engine)
        _emit(job, table.to_text(), table.model_dump(mode="json"))
        return EXIT_OK if table.ok else EXIT_FAILURE
    ring = get_ring(hopf, engine)
    fmt = ring.field.format
    rows = []
    for p, a in enumerate(ring.basis(i)):
        for q, b in enumerate(ring.basis(j)):
            coords = [fmt(c) for c in ring.coordinates(ring.cup(a, b))]
            rows.append({"left": [i, p], "right": [j, q], "degree": i + j, "coordinates": coords})
    lines = [f"Ĥ^{i} ⌣ Ĥ^{j} → Ĥ^{i + j} over {hopf.name}"]
    if not rows:
        lines.append("   (no basis classes)")
    for row in rows:
        coords = ", ".join(row["coordinates"])
        lines.append(f"   [{i}.{row['left'][1]}] ⌣ [{j}.{row['right'][1]}] = ({coords})")
    dims = {i: ring.dim(i), j: ring.dim(j), i + j: ring.dim(i + j)}
    _emit(job, "\n".join(lines), {"products": rows, "dims": dims})
    return EXIT_OK


def _parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="builtin:<name>, a bundled file name or a path to an algebra JSON file")
    common.add_argument("--from", dest="lo", type=int, default=-4)
    common.add_argument("--to", dest="hi", type=int, default=4)
    common.add_argument("--engine", choices=["minimal", "free", "both"], default=None)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--cap", type=int, default=None)

    parser = argparse.ArgumentParser(
        prog="tatecoh",
        description="Tate and Tate-Hochschild cohomology of finite dimensional Hopf algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common])
    sub.add_parser("info", parents=[common])
    tate = sub.add_parser("tate", parents=[common])
    tate.add_argument("--module", default="trivial",
                      help="trivial, adjoint, counit_kernel or a path to a module JSON file")
    sub.add_parser("hochschild", parents=[common])
    check = sub.add_parser("check", parents=[common])
    check.add_argument("--which", choices=["positive", "theorem", "summand", "symmetry", "duality", "all"],
                       default="all")
    cup = sub.add_parser("cup", parents=[common])
    cup.add_argument("--i", type=int, default=None)
    cup.add_argument("--j", type=int, default=None)
    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = _parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK

    try:
        job = JobConfig(
            input=args.input,
            command=args.command,
            lo=args.lo,
            hi=args.hi,
            engine=args.engine or config.get_engine(),
            format=args.format,
            seed=args.seed,
            cap=args.cap if args.cap is not None else config.get_degree_cap(),
        )
    except ValidationError as e:
        print(f"❌ {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_INPUT
    if job.seed is not None:
        config.set("search.seed", job.seed)

    try:
        if job.command == "validate":
            return cmd_validate(job)
        if job.command == "info":
            return cmd_info(job)
        if job.command == "tate":
            return cmd_tate(job, args.module)
        if job.command == "hochschild":
            return cmd_hochschild(job)
        if job.command == "check":
            return cmd_check(job, args.which)
        if job.command == "cup":
            return cmd_cup(job, args.i, args.j)
    except ParseError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_INPUT
    except TatecohError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except KeyboardInterrupt:
        print("\n❌ Cancelled by user", file=sys.stderr)
        return EXIT_FAILURE
    finally:
        close_database()
    return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
