"""Command-line front end.

Exit codes: 0 success (including a degenerate "nothing to select" run),
1 usage error, 2 data validation error, 3 internal error. Set
``MINSETPLUS_LOG`` (e.g. ``DEBUG``) to change log verbosity.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import bench, io
from . import discrimination as dm
from .errors import DatasetError, MinsetError, SelectionError
from .generator import (
    OUTPUT_KINDS,
    GenerationSpec,
    generate_individuals,
    generate_objects,
    impute_missing,
)
from .measures import Measure
from .quality import extent_discrimination, extents, overlap_percentage, quality_report
from .selection import (
    SelectionResult,
    minset,
    minset_partial_naive,
    minset_plus,
    select_from_matrix,
)

log = logging.getLogger("minsetplus")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _write_json(doc, path):
    text = json.dumps(doc, indent=2) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _write_csv(rows, fields, path):
    fh = sys.stdout if path in (None, "-") else open(path, "w", newline="")
    try:
        w = csv.DictWriter(fh, fieldnames=list(fields), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if fh is not sys.stdout:
            fh.close()


def _select_matrix(args) -> SelectionResult:
    with open(args.input, newline="") as fh:
        try:
            M, _ = dm.load_csv(fh)
        except ValueError as e:
            raise DatasetError(f"{args.input}: {e}") from None
    if args.algorithm == "minset":
        res = select_from_matrix(dm.boolean_view(M), 1.0)
        res.algorithm = "minset"
    elif args.algorithm == "minset-partial":
        raise DatasetError("minset-partial recomputes scores from value sets; "
                           "it needs an objects JSON file, not a matrix")
    else:
        res = select_from_matrix(M, args.theta)
    return res


def cmd_select(args) -> int:
    measure = Measure(args.measure or "jaccard", args.gamma)
    if str(args.input).endswith(".csv"):
        res = _select_matrix(args)
        return _finish_select(args, res)
    kb = io.read_kb(args.input)
    if args.algorithm == "minset":
        if args.measure not in (None, "boolean"):
            log.info("minset always uses boolean discrimination; --measure ignored")
        res = minset(kb)
    elif args.algorithm == "minset-partial":
        res = minset_partial_naive(kb, args.theta, measure)
    else:
        res = minset_plus(kb, measure, args.theta)
    return _finish_select(args, res)


def _finish_select(args, res: SelectionResult) -> int:
    report = res.to_dict()
    report["input"] = str(args.input)
    if args.trace:
        lines = res.trace_lines()
        report["narrative"] = lines
        for line in lines:
            print(line, file=sys.stderr)
    if res.degenerate:
        log.warning(res.diagnostic)
    _write_json(report, args.output)
    return EXIT_OK


def _load_kinds(path):
    if path is None:
        return {}, {}, None
    doc = json.loads(Path(path).read_text())
    entries = doc.get("variables", [])
    outputs, overrides = {}, {}
    for e in entries:
        if "name" not in e:
            raise DatasetError(f"{path}: every variable entry needs a 'name'")
        if "output" in e:
            outputs[e["name"]] = e["output"]
        if "type" in e:
            overrides[e["name"]] = {k: e[k] for k in ("type", "domain") if k in e}
    return outputs, overrides, doc.get("refine")


def cmd_gen_so(args) -> int:
    outputs, overrides, refine = _load_kinds(args.kinds)
    variables = io.infer_variables(args.individuals, overrides)
    t = io.read_individuals(args.individuals, variables)
    if t.has_missing():
        log.info("imputing missing values (mean for numeric, mode for categorical)")
        t = impute_missing(t)
    refine = args.refine or bool(refine)
    spec = GenerationSpec(kinds=outputs, refine=refine)
    kb = generate_objects(t, spec)
    meta = {"source": str(args.individuals), "refine": refine, "kinds": outputs}
    if args.output in (None, "-"):
        _write_json(io.kb_to_json(kb, meta), None)
    else:
        io.write_kb(kb, args.output, meta)
    return EXIT_OK


def cmd_gen_ind(args) -> int:
    kb = io.read_kb(args.objects)
    spec = GenerationSpec(seed=args.seed, overlap_target=args.overlap, counts=args.count)
    t = generate_individuals(kb, spec)
    io.write_individuals(t, args.output)
    print(
        json.dumps({"objects": str(args.objects), "count": args.count,
                    "overlap": args.overlap, "seed": args.seed, "rows": len(t.rows)}),
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_quality(args) -> int:
    kb = io.read_kb(args.objects)
    t = io.read_individuals(args.individuals, kb.variables)
    if set(t.variable_names) != set(kb.variable_names):
        raise DatasetError(
            f"individual columns {sorted(t.variable_names)} do not match object "
            f"variables {sorted(kb.variable_names)}"
        )
    if t.has_missing():
        log.info("imputing missing values before evaluating extents")
        t = impute_missing(t)
    if args.selection is None:
        doc = {
            "overlap_pct": overlap_percentage(kb) if kb.k else 0.0,
            "extents": {
                a.name: [t.ids[r] for r in sorted(e)]
                for a, e in zip(kb.assertions, extents(kb, t))
            },
        }
        if kb.k:
            ed = extent_discrimination(kb, t)
            doc["extent_discrimination_pct"] = ed
            doc["extent_intersection_avg"] = 1.0 - ed
        _write_json(doc, args.output)
        return EXIT_OK
    sel = json.loads(Path(args.selection).read_text())
    names = sel.get("selected_names")
    if names is None:
        raise DatasetError(f"{args.selection}: not a selection report")
    idx = [kb.variable_index(n) for n in names]
    result = SelectionResult(
        selected=idx,
        dp_selected=float(sel.get("dp_selected", 0.0)),
        dp_total=float(sel.get("dp_total", 0.0)),
        reduction_pct=float(sel.get("reduction_pct", 0.0)),
        variable_names=list(kb.variable_names),
        degenerate=bool(sel.get("degenerate", False)),
    )
    reduced = kb.restrict(idx) if idx else None
    report = quality_report(kb, result, reduced, t)
    _write_json(report.to_dict(), args.output)
    return EXIT_OK


def _parse_sizes(text: str):
    if ":" in text:
        lo, hi, step = (int(x) for x in text.split(":"))
        return list(range(lo, hi + 1, step))
    return [int(x) for x in text.split(",") if x]


def cmd_bench(args) -> int:
    sizes = _parse_sizes(args.sizes)
    if args.compare_backends:
        rows = bench.compare_backends(sizes, args.vars, args.individuals, args.seed)
        _write_csv(rows, rows[0].keys(), args.output)
        return EXIT_OK
    t0 = time.perf_counter()
    rows = bench.complexity_bench(
        sizes, args.vars, args.individuals, args.seed, args.overlap
    )
    log.info("bench finished in %.1f s", time.perf_counter() - t0)
    _write_csv(rows, bench.BENCH_FIELDS, args.output)
    return EXIT_OK


def cmd_sweep(args) -> int:
    seeds = range(args.seed, args.seed + args.seeds)
    rows = bench.overlap_sweep(seeds=seeds, n_objects=args.objects, n_vars=args.vars)
    _write_csv(rows, bench.SWEEP_FIELDS, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="minsetplus", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("select", help="select a minimal discriminating variable subset")
    s.add_argument("input", help="objects JSON file, or a discrimination matrix CSV")
    s.add_argument("--algorithm", choices=["minset", "minset-plus", "minset-partial"],
                   default="minset-plus")
    s.add_argument("--measure", choices=["boolean", "jaccard", "de-carvalho", "ichino"],
                   help="partial discrimination score (default jaccard)")
    s.add_argument("--gamma", type=float, default=0.5, help="Ichino-Yaguchi gamma in [0, 0.5]")
    s.add_argument("--theta", type=float, default=1.0,
                   help="fraction of the total discrimination power to reach")
    s.add_argument("--trace", action="store_true", help="print a step-by-step narrative")
    s.add_argument("-o", "--output", help="report path (default stdout)")
    s.set_defaults(func=cmd_select)

    g = sub.add_parser("gen-so", help="build symbolic objects from clustered individuals")
    g.add_argument("individuals", help="individuals CSV")
    g.add_argument("--kinds", help="JSON with per-variable type/domain/output "
                   f"(output one of {', '.join(OUTPUT_KINDS)})")
    g.add_argument("--refine", action="store_true",
                   help="split intervals around values of other clusters")
    g.add_argument("-o", "--output", help="objects JSON path (default stdout)")
    g.set_defaults(func=cmd_gen_so)

    i = sub.add_parser("gen-ind", help="sample individuals from symbolic objects")
    i.add_argument("objects", help="objects JSON file")
    i.add_argument("--count", type=int, default=10, help="individuals per object")
    i.add_argument("--overlap", type=float, default=0.0,
                   help="probability of drawing a value from another object")
    i.add_argument("--seed", type=int, default=0)
    i.add_argument("-o", "--output", required=True, help="individuals CSV path")
    i.set_defaults(func=cmd_gen_ind)

    q = sub.add_parser("quality", help="extent-based quality indicators")
    q.add_argument("objects", help="objects JSON file")
    q.add_argument("individuals", help="individuals CSV")
    q.add_argument("--selection", help="selection report JSON from 'select'")
    q.add_argument("-o", "--output", help="report path (default stdout)")
    q.set_defaults(func=cmd_quality)

    b = sub.add_parser("bench", help="time minset-plus, minset-partial and minset")
    b.add_argument("--sizes", default="10:100:10",
                   help="object counts, 'a,b,c' or 'lo:hi:step' (ascending)")
    b.add_argument("--vars", type=int, default=20)
    b.add_argument("--individuals", type=int, default=300)
    b.add_argument("--overlap", type=float, default=0.02)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--compare-backends", action="store_true",
                   help="time compiled vs pure kernels instead")
    b.add_argument("-o", "--output", help="CSV path (default stdout)")
    b.set_defaults(func=cmd_bench)

    w = sub.add_parser("sweep", help="selection size vs injected overlap")
    w.add_argument("--objects", type=int, default=10)
    w.add_argument("--vars", type=int, default=20)
    w.add_argument("--seeds", type=int, default=10)
    w.add_argument("--seed", type=int, default=0, help="first seed")
    w.add_argument("-o", "--output", help="CSV path (default stdout)")
    w.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    logging.basicConfig(
        level=os.environ.get("MINSETPLUS_LOG", "INFO").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DatasetError, SelectionError, FileNotFoundError, json.JSONDecodeError) as e:
        print(f"minsetplus: {e}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, MinsetError) as e:
        print(f"minsetplus: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:  # pragma: no cover - last resort
        log.exception("internal error")
        print(f"minsetplus: internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
