"""Command-line front end.

Subcommands: analyze (JSON/text report), verify (closed forms against the
membership and cubical oracles), render (n = 2 SVG), batch (JSON-lines corpus
to TSV, optionally with figures), snf (Smith normal form utility).

Exit codes: 0 success, 1 internal consistency or oracle failure, 2 invalid
input.  All stdout output is byte-deterministic for fixed inputs and flags;
timing information goes to stderr only.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import cubical, exactmath, geometry, homology, render
from .cubical import BadResolution, SymmetryViolation, UnsupportedDimension
from .exactmath import SingularMatrix
from .homology import ConsistencyFailure
from .model import SpecError, normalize, spec_from_dict

BATCH_COLUMNS = [
    "id",
    "n",
    "D",
    "I00_size",
    "rank",
    "components",
    "defect",
    "galois_maximal_coamoeba",
    "galois_maximal_CX",
    "error",
]


class OracleDisagreement(RuntimeError):
    """An independent route produced a different answer."""


def _load_spec(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return spec_from_dict(json.loads(text))


def _report_text(report: homology.AnalysisReport) -> str:
    d = report.to_dict()
    lines = [
        f"n                    : {report.model.n}",
        f"A                    : {d['model']['A']}",
        f"epsilon              : {d['model']['epsilon']}",
        f"D (Smith diagonal)   : {d['snf']['D']}",
        f"partition I00/I10    : {d['partition']['I00']} / {d['partition']['I10']}",
        f"partition I01/I11    : {d['partition']['I01']} / {d['partition']['I11']}",
        f"betti (coamoeba)     : {d['homology']['betti']} total {d['homology']['total']}",
        f"rank(1+c*)           : {report.rank_closed} (closed) ="
        f" {report.rank_assembled} (assembled)",
        f"real components      : {report.real_part.component_count}"
        f" mask {report.real_part.quadrant_mask:#x}",
        f"all quadrants hit    : {report.real_part.all_quadrants_hit}",
        f"ker/im dimension     : {report.kernel_mod_image_dim}",
        f"defect               : {report.defect}",
        f"Galois maximal (coamoeba) : {report.galois_maximal_coamoeba}",
        f"Galois maximal (CX)  : {report.galois_maximal_CX}"
        f" [{homology.CONJECTURE_FLAG}]",
        f"rank2(A)             : {report.rank2_A}",
    ]
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    report = homology.analyze(_load_spec(args.input))
    if args.text:
        sys.stdout.write(_report_text(report))
    else:
        sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n")
    return 0


def _sample_membership(model, dec, arr, samples: int, seed: int):
    """Random exact rational points, both membership routes compared."""
    rng = random.Random(seed)
    disagreements = []
    for _ in range(samples):
        theta = tuple(
            Fraction(rng.randrange(0, 64 * d), 64 * d)
            for d in (rng.choice((1, 2, 3, 5)) for _ in range(model.n))
        )
        a = geometry.membership(model, dec, theta)
        b = geometry.membership_by_zonotope(arr, theta)
        if a != b:
            disagreements.append(
                {"theta": [str(t) for t in theta], "maxgap": a.value, "zonotope": b.value}
            )
    return disagreements


def cmd_verify(args) -> int:
    spec = _load_spec(args.input)
    model = normalize(spec)
    if model.n > 3 and not args.skip_cubical:
        raise SpecError(
            f"cubical verification needs n <= 3 (got n = {model.n}); "
            "pass --skip-cubical to run the algebraic oracles only"
        )
    failures = []
    out: dict = {"input": args.input}

    try:
        report = homology.analyze_model(model)
        out["report"] = report.to_dict()
        out["algebraic"] = {
            "rank_closed": report.rank_closed,
            "rank_assembled": report.rank_assembled,
            "agree": True,
        }
    except ConsistencyFailure as exc:
        out["algebraic"] = {"agree": False, "detail": str(exc)}
        failures.append(f"algebraic: {exc}")
        report = None

    dec = exactmath.snf([list(r) for r in model.A])
    arr = geometry.arrangement(model, dec)
    bad = _sample_membership(model, dec, arr, args.samples, args.seed)
    out["membership"] = {
        "samples": args.samples,
        "disagreements": len(bad),
        "first_disagreements": bad[:5],
    }
    if bad:
        failures.append(f"membership: {len(bad)}/{args.samples} points disagree")

    if args.skip_cubical:
        out["cubical"] = None
    else:
        record = cubical.verify(
            model, resolution=args.resolution, instance=args.input
        )
        out["cubical"] = record.to_dict(include_timings=False)
        sys.stderr.write(
            "cubical timings: "
            + " ".join(f"{k}={v:.3f}" for k, v in record.timings.items())
            + "\n"
        )
        if args.dump_cells:
            arr2 = geometry.arrangement(model, dec)
            cx = cubical.build_complex(arr2, record.resolution)
            Path(args.dump_cells).write_text(cubical.dump_cells(cx))
        if not record.ok:
            failures.append(
                "cubical: betti "
                f"{list(record.cubical_betti)} vs {list(record.closed_betti)}, "
                f"rank {record.cubical_rank} vs {record.closed_rank}, "
                f"stable={record.stable}"
            )

    out["ok"] = not failures
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    if failures:
        sys.stderr.write("disagreements:\n" + "\n".join(f"  {f}" for f in failures) + "\n")
        return 1
    return 0


def cmd_render(args) -> int:
    spec = _load_spec(args.input)
    model = normalize(spec)
    if model.n != 2:
        raise SpecError(f"render supports n = 2 only, got n = {model.n}")
    svg = render.render_svg(
        model,
        show_centers=args.show_centers,
        show_conjugation=args.show_conjugation,
    )
    Path(args.output).write_text(svg)
    return 0


def _batch_row(line: str) -> list[str]:
    """One TSV row (without id) for one JSON-lines entry."""
    try:
        obj = json.loads(line)
        ident = str(obj.pop("id", ""))
        report = homology.analyze(spec_from_dict(obj))
        cell = report.to_dict()
        return [
            ident,
            str(report.model.n),
            ",".join(str(d) for d in report.D),
            str(len(report.partition.I00)),
            str(report.rank_closed),
            str(report.real_part.component_count),
            str(report.defect),
            str(report.galois_maximal_coamoeba).lower(),
            str(report.galois_maximal_CX).lower(),
            "",
        ]
    except Exception as exc:  # per-line errors land in the error column
        ident = ""
        try:
            ident = str(json.loads(line).get("id", ""))
        except Exception:
            pass
        return [ident, "", "", "", "", "", "", "", "", str(exc).replace("\t", " ")]


def cmd_batch(args) -> int:
    lines = [
        ln for ln in Path(args.corpus).read_text().splitlines() if ln.strip()
    ]
    if args.jobs > 1 and lines:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_batch_row, lines))
    else:
        rows = [_batch_row(ln) for ln in lines]
    tsv = ["\t".join(BATCH_COLUMNS)]
    tsv += ["\t".join(row) for row in rows]
    Path(args.output).write_text("\n".join(tsv) + "\n")

    if args.figures_dir:
        figdir = Path(args.figures_dir)
        figdir.mkdir(parents=True, exist_ok=True)
        for i, ln in enumerate(lines):
            try:
                obj = json.loads(ln)
                ident = str(obj.pop("id", "")) or f"line{i + 1}"
                model = normalize(spec_from_dict(obj))
                if model.n == 2:
                    (figdir / f"{ident}.svg").write_text(render.render_svg(model))
            except Exception:
                continue

    if lines and all(row[-1] for row in rows):
        sys.stderr.write("all corpus lines failed\n")
        return 1
    return 0


def cmd_snf(args) -> int:
    text = sys.stdin.read() if args.matrix == "-" else Path(args.matrix).read_text()
    obj = json.loads(text)
    mat = obj["matrix"] if isinstance(obj, dict) else obj
    if not isinstance(mat, list) or not all(
        isinstance(row, list) and all(isinstance(x, int) for x in row) for row in mat
    ):
        raise SpecError("expected a JSON integer matrix (list of lists)")
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise SpecError("matrix must be square")
    dec = exactmath.snf(mat)
    sys.stdout.write(
        json.dumps({"G": dec.G, "H": dec.H, "D": list(dec.D)}, indent=2) + "\n"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coamoeba",
        description=(
            "Exact coamoeba topology of simplicial hypersurfaces: zonotope "
            "arrangements, conjugation action, real-part homology, Galois "
            "maximality."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one polynomial spec")
    p.add_argument("input", help="JSON spec file, or - for stdin")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--text", action="store_true", help="plain-text output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="cross-check all independent oracles")
    p.add_argument("input", help="JSON spec file, or - for stdin")
    p.add_argument(
        "--resolution",
        type=int,
        default=None,
        help="per-axis grid resolution (default 8*lcm(2 d_i), capped)",
    )
    p.add_argument(
        "--skip-cubical",
        action="store_true",
        help="run only the algebraic and membership oracles",
    )
    p.add_argument("--samples", type=int, default=200, help="membership sample count")
    p.add_argument("--seed", type=int, default=0, help="membership sampling seed")
    p.add_argument("--dump-cells", default=None, help="write the cell list here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw an n = 2 coamoeba as SVG")
    p.add_argument("input", help="JSON spec file, or - for stdin")
    p.add_argument("-o", "--output", required=True, help="output SVG path")
    p.add_argument("--show-centers", action="store_true", help="mark zonotope centers")
    p.add_argument(
        "--show-conjugation", action="store_true", help="draw alpha -> c(alpha) arrows"
    )
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("batch", help="analyze a JSON-lines corpus into a TSV table")
    p.add_argument("corpus", help="JSON-lines file, one spec per line")
    p.add_argument("-o", "--output", required=True, help="output TSV path")
    p.add_argument(
        "--figures-dir",
        default=None,
        help="also render each n = 2 instance to SVG in this directory",
    )
    p.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    p.add_argument("matrix", help="JSON matrix file, or - for stdin")
    p.set_defaults(func=cmd_snf)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConsistencyFailure, SymmetryViolation, OracleDisagreement) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (
        SpecError,
        SingularMatrix,
        BadResolution,
        UnsupportedDimension,
        json.JSONDecodeError,
        KeyError,
        OSError,
    ) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
