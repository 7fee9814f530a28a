"""Command-line entry point: ``quadres <subcommand> [options]``.

Exit codes: 0 success, 2 invalid input, 3 anomaly (sign conflict, failed
d o d = 0 check, nonzero homology, oracle mismatch, unsound detector).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import serialize
from .complex import from_diagram, verify_all
from .diagram import DiagramError, InternalConsistencyError, SignConflictError, build
from .ext import DetectorSoundnessError, injective_dimension_evidence
from .fields import DEFAULT_PRIME, parse_field
from .homology import HuntSummary, conjecture_hunt, exactness_report, quotient_dims
from .oracles import OracleKind, compare, oracle_complex
from .ring import InvalidSpecError, hilbert_function, load_spec

EXIT_OK, EXIT_INVALID, EXIT_ANOMALY = 0, 2, 3

log = logging.getLogger("quadres")


class InvalidInput(Exception):
    pass


class Anomaly(Exception):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass
class RunConfig:
    command: str
    ring: str | None
    initial: int
    levels: int
    max_degree: int | None
    field: str
    out: str | None
    max_vars: int
    figures: bool

    def validate(self):
        if self.levels < 1:
            raise InvalidInput("--levels must be >= 1")
        if self.max_degree is not None and self.max_degree < 0:
            raise InvalidInput("--max-degree must be >= 0")
        try:
            parse_field(self.field)
        except ValueError as exc:
            raise InvalidInput(str(exc)) from None

    @property
    def degree_bound(self) -> int:
        return self.levels + 4 if self.max_degree is None else self.max_degree


def _spec(cfg: RunConfig):
    if not cfg.ring:
        raise InvalidInput("--ring is required for this command")
    try:
        return load_spec(cfg.ring)
    except FileNotFoundError:
        raise InvalidInput(f"ring file not found: {cfg.ring}") from None
    except InvalidSpecError as exc:
        raise InvalidInput(str(exc)) from None


def _build(cfg: RunConfig, levels: int | None = None):
    spec = _spec(cfg)
    try:
        return build(spec, cfg.initial, levels or cfg.levels)
    except (SignConflictError, InternalConsistencyError) as exc:
        raise Anomaly(str(exc), _witness(exc)) from None
    except DiagramError as exc:
        raise InvalidInput(str(exc)) from None


def _witness(exc) -> dict:
    if isinstance(exc, SignConflictError):
        return {"kind": "sign-conflict", "level": exc.level, "cycle": [list(k) for k in exc.cycle]}
    if isinstance(exc, InternalConsistencyError):
        row, col, elem = exc.witness
        return {"kind": "dd-nonzero", "level": exc.level, "row": row, "col": col, "element": repr(elem)}
    return {"kind": type(exc).__name__, "message": str(exc)}


def _outdir(cfg: RunConfig, default: str | None = None) -> Path | None:
    target = cfg.out or default
    if target is None:
        return None
    path = Path(target)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _emit(text: str, out: Path | None, name: str) -> None:
    sys.stdout.write(text)
    if out is not None:
        (out / name).write_text(text, encoding="utf-8")


# -- subcommands -------------------------------------------------------------


def cmd_build(cfg: RunConfig, dot: bool = False) -> int:
    diagram = _build(cfg)
    cx = from_diagram(diagram)
    out = _outdir(cfg, ".")
    serialize.save_json(serialize.diagram_to_json(diagram), out / "diagram.json")
    serialize.save_json(serialize.complex_to_json(cx), out / "complex.json")
    ranks_tsv = "level\trank\n" + "".join(f"{n}\t{r}\n" for n, r in enumerate(diagram.ranks))
    (out / "ranks.tsv").write_text(ranks_tsv, encoding="utf-8")
    if dot:
        (out / "diagram.dot").write_text(serialize.diagram_to_dot(diagram), encoding="utf-8")
    if cfg.figures:
        from .plotting import plot_ranks

        plot_ranks(diagram.ranks, out / "ranks.png", f"{diagram.spec}, initial x{cfg.initial}")
    print("ranks: " + ",".join(map(str, diagram.ranks)))
    return EXIT_OK


def cmd_check(cfg: RunConfig) -> int:
    cx = from_diagram(_build(cfg))
    lines = ["n\tok\trow\tcol\twitness"]
    failed = []
    for res in verify_all(cx):
        if res:
            lines.append(f"{res.n}\ttrue\t\t\t")
        else:
            failed.append(res)
            lines.append(f"{res.n}\tfalse\t{res.row}\t{res.col}\t{res.element!r}")
    _emit("\n".join(lines) + "\n", _outdir(cfg), "check.tsv")
    if failed:
        f = failed[0]
        raise Anomaly("d o d != 0", {"kind": "dd-nonzero", "n": f.n, "row": f.row, "col": f.col, "element": repr(f.element)})
    return EXIT_OK


def cmd_homology(cfg: RunConfig) -> int:
    diagram = _build(cfg)
    if cfg.levels < 2:
        raise InvalidInput("homology needs --levels >= 2")
    field = parse_field(cfg.field)
    report = exactness_report(from_diagram(diagram), cfg.degree_bound, field)
    out = _outdir(cfg)
    _emit(report.to_tsv(), out, "homology.tsv")
    if out is not None:
        serialize.save_json(report.to_json(), out / "homology.json")
        if cfg.figures:
            from .plotting import plot_homology

            plot_homology(report, out / "homology.png")
    log.info("%s", report.verdict)
    if not report.consistent:
        bad = [{"n": r.n, "t": r.t, "homology_dim": r.homology_dim} for r in report.nonzero()]
        raise Anomaly("nonzero homology in positive position", {"kind": "nonexact", "cells": bad})
    return EXIT_OK


def cmd_ext(cfg: RunConfig) -> int:
    spec = _spec(cfg)
    field = parse_field(cfg.field)
    try:
        evidence = injective_dimension_evidence(spec, cfg.initial, cfg.levels, field, cfg.max_degree)
    except DetectorSoundnessError as exc:
        raise Anomaly(str(exc), {"kind": "detector-soundness", **exc.occurrence.to_json()}) from None
    except (SignConflictError, InternalConsistencyError) as exc:
        raise Anomaly(str(exc), _witness(exc)) from None
    except DiagramError as exc:
        raise InvalidInput(str(exc)) from None
    out = _outdir(cfg)
    _emit(serialize.dumps(evidence.to_json()), out, "ext.json")
    if out is not None:
        (out / "ext.tsv").write_text(evidence.to_tsv(), encoding="utf-8")
        if cfg.figures:
            from .plotting import plot_ext

            plot_ext(evidence, out / "ext.png")
    log.info("%s", evidence.summary())
    return EXIT_OK


def cmd_oracle(cfg: RunConfig, kind_text: str) -> int:
    try:
        kind = OracleKind.parse(kind_text)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None
    field = parse_field(cfg.field)
    spec = kind.spec()
    try:
        built = from_diagram(build(spec, 1, cfg.levels))
    except (SignConflictError, InternalConsistencyError) as exc:
        raise Anomaly(str(exc), _witness(exc)) from None
    verdict = compare(built, oracle_complex(kind, cfg.levels), cfg.degree_bound, field)
    text = serialize.dumps(
        {"oracle": kind_text, "levels": cfg.levels, "field": field.name, "equal": verdict.equal, "reasons": verdict.reasons}
    )
    _emit(text, _outdir(cfg), "oracle.json")
    if not verdict:
        raise Anomaly("procedure and oracle disagree", {"kind": "oracle-mismatch", "reasons": verdict.reasons})
    return EXIT_OK


def cmd_hunt(cfg: RunConfig) -> int:
    field = parse_field(cfg.field)
    levels = cfg.levels
    if levels < 2:
        raise InvalidInput("hunt needs --levels >= 2")
    summary = HuntSummary()
    rows = ["vars\tgenerators\tinitial\tstatus\tranks"]
    try:
        results = conjecture_hunt(cfg.max_vars, levels, cfg.degree_bound, field)
        for res in results:
            summary.add(res)
            gens = ",".join(f"{i}{j}" for i, j in res.spec.generators)
            rows.append(f"{res.spec.num_vars}\t{gens}\t{res.initial}\t{res.status}\t{','.join(map(str, res.ranks))}")
            if res.status != "ok":
                print(json.dumps(res.to_json(), sort_keys=True))
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None
    print(summary.line())
    out = _outdir(cfg)
    if out is not None:
        (out / "hunt.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
        (out / "hunt.json").write_text(summary.to_json() + "\n", encoding="utf-8")
    if summary.anomalies:
        return EXIT_ANOMALY
    return EXIT_OK


def cmd_hilbert(cfg: RunConfig) -> int:
    spec = _spec(cfg)
    d_max = cfg.max_degree if cfg.max_degree is not None else 10
    dims = hilbert_function(spec, d_max)
    quotient = quotient_dims(spec, cfg.initial, d_max) if 1 <= cfg.initial <= spec.num_vars else None
    lines = ["d\tdim_R_d" + ("\tdim_R/(x%d)_d" % cfg.initial if quotient else "")]
    for d, v in enumerate(dims):
        lines.append(f"{d}\t{v}" + (f"\t{quotient[d]}" if quotient else ""))
    out = _outdir(cfg)
    _emit("\n".join(lines) + "\n", out, "hilbert.tsv")
    if out is not None and cfg.figures:
        from .plotting import plot_hilbert

        plot_hilbert(dims, out / "hilbert.png", str(spec))
    return EXIT_OK


def cmd_export_dot(cfg: RunConfig, diagram_path: str | None) -> int:
    if diagram_path:
        try:
            diagram = serialize.diagram_from_json(serialize.load_json(diagram_path))
        except (OSError, KeyError, ValueError) as exc:
            raise InvalidInput(f"cannot read diagram {diagram_path}: {exc}") from None
    else:
        diagram = _build(cfg)
    text = serialize.diagram_to_dot(diagram)
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- argument parsing --------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help="ring spec JSON file")
    common.add_argument("--initial", type=int, default=1, help="variable index of the initial map")
    common.add_argument("--levels", type=int, default=8, help="number of levels L to build")
    common.add_argument("--max-degree", type=int, default=None, help="max internal degree T (default L+4)")
    common.add_argument("--field", default=f"fp:{DEFAULT_PRIME}", help="'q' or 'fp:<prime>'")
    common.add_argument("--out", help="output directory (file for export-dot)")
    common.add_argument("--max-vars", type=int, default=4, help="hunt: largest number of variables")
    common.add_argument("--no-figures", action="store_true", help="skip matplotlib figures")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="quadres",
        description="Build and analyse combinatorial resolutions over quadratic monomial quotient rings.",
        epilog="exit codes: 0 ok, 2 invalid input, 3 anomaly (witness printed to stderr as JSON)",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("build", parents=[common], help="build the diagram and its complex")
    p.add_argument("--dot", action="store_true", help="also write diagram.dot")
    sub.add_parser("check", parents=[common], help="verify d o d = 0 at every level")
    sub.add_parser("homology", parents=[common], help="graded homology / exactness report")
    sub.add_parser("ext", parents=[common], help="cohomology of the dual complex and vv configurations")
    p = sub.add_parser("oracle", parents=[common], help="compare with a closed-form resolution")
    p.add_argument("--kind", default="fibonacci", help="fibonacci | binary | o:<n>")
    p = sub.add_parser("hunt", parents=[common], help="search small rings for non-exact complexes")
    p.set_defaults(levels=6, max_degree=8)
    sub.add_parser("hilbert", parents=[common], help="Hilbert function of R and R/(x_initial)")
    p = sub.add_parser("export-dot", parents=[common], help="Graphviz rendering of a diagram")
    p.add_argument("--diagram", help="read a diagram JSON instead of building one")
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    cfg = RunConfig(
        command=args.command,
        ring=args.ring,
        initial=args.initial,
        levels=args.levels,
        max_degree=args.max_degree,
        field=args.field,
        out=args.out,
        max_vars=args.max_vars,
        figures=not args.no_figures,
    )
    try:
        cfg.validate()
        if cfg.command == "build":
            return cmd_build(cfg, dot=args.dot)
        if cfg.command == "check":
            return cmd_check(cfg)
        if cfg.command == "homology":
            return cmd_homology(cfg)
        if cfg.command == "ext":
            return cmd_ext(cfg)
        if cfg.command == "oracle":
            return cmd_oracle(cfg, args.kind)
        if cfg.command == "hunt":
            return cmd_hunt(cfg)
        if cfg.command == "hilbert":
            return cmd_hilbert(cfg)
        if cfg.command == "export-dot":
            return cmd_export_dot(cfg, args.diagram)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Anomaly as exc:
        print(f"anomaly: {exc}", file=sys.stderr)
        print(json.dumps({"witness": exc.witness}, sort_keys=True), file=sys.stderr)
        return EXIT_ANOMALY
    parser.error(f"unknown command {cfg.command}")
    return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
