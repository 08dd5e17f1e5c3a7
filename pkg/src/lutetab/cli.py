"""Command-line driver: scan, parse, build, emit.

Exit codes: 0 success, 1 any scan/parse/model/emit error in the source,
2 for unusable invocations (unreadable input, bad flags). Diagnostics go
to stderr with a caret excerpt of the offending line; output files are
written atomically (temp file, then rename) so an error never leaves a
half-written file behind.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .errors import CompileError, format_diagnostic
from .model import ScoreModel, build_score
from .scanner import scan_text
from .svg_out import RenderConfig, render_pars
from .xml_out import emit_dtd, emit_pars

DTD_FILENAME = "tabulatura.dtd"


@dataclass
class RunOptions:
    input_path: str
    xml_out_dir: str | None = None
    svg_out_dir: str | None = None
    emit_dtd: bool = False
    pars_filter: str | None = None
    check_only: bool = False
    render_config: RenderConfig = field(default_factory=RenderConfig)


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"{text} is not strictly positive")
    return value


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lutetab",
        description=(
            "Compile a column-aligned German lute tablature source into an XML "
            "score model and an SVG control graphic."
        ),
    )
    parser.add_argument("input", help="source file to compile")
    parser.add_argument("--xml", metavar="DIR", help="write one XML document per PARS into DIR")
    parser.add_argument("--svg", metavar="DIR", help="write one SVG graphic per PARS into DIR")
    parser.add_argument(
        "--dtd",
        action="store_true",
        help=f"also write {DTD_FILENAME} (next to the XML output, or into the "
        "current directory)",
    )
    parser.add_argument("--pars", metavar="NAME", help="process only the PARS named NAME")
    parser.add_argument(
        "--check", action="store_true", help="validate the source without writing any output"
    )
    render = parser.add_argument_group("render geometry (SVG user units)")
    render.add_argument("--col-spacing", type=_positive_float, default=None)
    render.add_argument("--row-spacing", type=_positive_float, default=None)
    render.add_argument("--stem-height", type=_positive_float, default=None)
    render.add_argument("--font-size", type=_positive_float, default=None)
    render.add_argument("--margin", type=_positive_float, default=None)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def _write_atomic(path: Path, data: str) -> None:
    fd = tempfile.NamedTemporaryFile(
        "w", encoding="utf-8", dir=path.parent, prefix=path.name + ".", suffix=".tmp", delete=False
    )
    try:
        with fd:
            fd.write(data)
        os.replace(fd.name, path)
    except BaseException:
        try:
            os.unlink(fd.name)
        except OSError:
            pass
        raise


def run(options: RunOptions) -> int:
    path = options.input_path
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as err:
        print(f"{path}: error: cannot read input: {err}", file=sys.stderr)
        return 2

    try:
        score: ScoreModel = build_score(scan_text(text))
    except CompileError as err:
        print(format_diagnostic(err, path), file=sys.stderr)
        return 1

    for warning in score.warnings:
        print(f"{path}: warning: {warning}", file=sys.stderr)

    partes = score.partes
    if options.pars_filter is not None:
        partes = [p for p in partes if p.name == options.pars_filter]
        if not partes:
            available = ", ".join(p.name for p in score.partes) or "none"
            print(
                f"{path}: error: no PARS named '{options.pars_filter}' "
                f"(available: {available})",
                file=sys.stderr,
            )
            return 1

    stem = Path(path).stem
    try:
        documents = [(pars, emit_pars(pars)) for pars in partes]
        graphics = [(pars, render_pars(pars, options.render_config)) for pars in partes]
    except CompileError as err:
        print(format_diagnostic(err, path), file=sys.stderr)
        return 1

    if options.check_only:
        return 0

    if options.xml_out_dir is not None:
        out = Path(options.xml_out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for pars, doc in documents:
            _write_atomic(out / f"{stem}.{pars.name}.xml", doc)
    if options.svg_out_dir is not None:
        out = Path(options.svg_out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for pars, svg in graphics:
            _write_atomic(out / f"{stem}.{pars.name}.svg", svg)
    if options.emit_dtd:
        out = Path(options.xml_out_dir) if options.xml_out_dir is not None else Path(".")
        out.mkdir(parents=True, exist_ok=True)
        _write_atomic(out / DTD_FILENAME, emit_dtd())
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    if not (args.xml or args.svg or args.dtd or args.check):
        parser.error("nothing to do: pass at least one of --xml, --svg, --dtd, --check")

    defaults = RenderConfig()
    config = RenderConfig(
        column_spacing=args.col_spacing if args.col_spacing is not None else defaults.column_spacing,
        row_spacing=args.row_spacing if args.row_spacing is not None else defaults.row_spacing,
        stem_height=args.stem_height if args.stem_height is not None else defaults.stem_height,
        font_size=args.font_size if args.font_size is not None else defaults.font_size,
        margin=args.margin if args.margin is not None else defaults.margin,
    )
    options = RunOptions(
        input_path=args.input,
        xml_out_dir=args.xml,
        svg_out_dir=args.svg,
        emit_dtd=args.dtd,
        pars_filter=args.pars,
        check_only=args.check,
        render_config=config,
    )
    return run(options)


if __name__ == "__main__":
    sys.exit(main())
