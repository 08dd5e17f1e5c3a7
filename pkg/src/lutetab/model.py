"""Score model assembly: systems, columns, time positions.

A system is one T line plus the voice lines below it; a PARS concatenates
its systems into one ordered column list. Every grip event must start in
the same column as a duration symbol of its system, and every column must
hold at least one grip. Temporal positions are exact rational sums of all
preceding durations and do not reset at system boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ModelError, ParseError
from .prelude import (
    GripTable,
    Parameters,
    SymbolMap,
    apply_assignment,
    build_symbol_map,
    lookup_grip,
    parse_assignment,
    MAX_POSITION,
    TABLE_PARAM,
)
from .scanner import LineKind, SourceLine
from .tempus import DurationToken, parse_tempus_line, validate_beams
from .vox import Annotation, GripToken, parse_param_track, parse_vox_line

TRABES_INITIALIS = "initialis"
TRABES_TERMINALIS = "terminalis"


@dataclass
class Sonum:
    """One grip: stop `string` at `fret`, pluck."""

    source: str
    string: int
    fret: int
    prolongate: bool
    ypos: int
    annotations: list[Annotation] = field(default_factory=list)


@dataclass
class Columna:
    """One score column: a duration and the grips sounding under it."""

    numerus: int
    duration: DurationToken
    duration_ypos: int
    trabes: str | None
    summa_praecedentium: Fraction
    sona: list[Sonum]


@dataclass
class ParsModel:
    name: str
    columns: list[Columna]
    parameters: Parameters
    table_name: str
    system_ranges: list[tuple[int, int]]  # [start, end) per system
    line_number: int


@dataclass
class ScoreModel:
    partes: list[ParsModel]
    warnings: list[str] = field(default_factory=list)


@dataclass
class _System:
    tempus: SourceLine
    voices: list[tuple[SourceLine, list[SourceLine]]] = field(default_factory=list)


def assign_trabes(token: DurationToken) -> str | None:
    """Map beam markers to the single-valued output attribute."""
    if token.beam_begin and token.beam_end:
        raise ModelError(
            f"'{token.source_text}' both ends and begins a beam group; the output "
            "format records only one marker per stem, so write the boundary on two "
            "neighboring stems instead",
            line=token.line_number,
            column=token.start_column,
        )
    if token.beam_begin:
        return TRABES_INITIALIS
    if token.beam_end:
        return TRABES_TERMINALIS
    return None


def build_system(
    tempus_tokens: list[DurationToken],
    voices: list[tuple[str, list[GripToken], list[Annotation], SourceLine]],
    symbol_map: SymbolMap,
) -> list[Columna]:
    """Assemble one system's columns from its duration and voice tokens.

    Grips attach to the duration token sharing their start column; voice
    order gives the vertical position (the T line is row 0).
    """
    if len(voices) > MAX_POSITION:
        over = voices[MAX_POSITION]
        raise ModelError(
            f"more than {MAX_POSITION} voices in one system; row positions beyond "
            f"{MAX_POSITION} are not encodable",
            line=over[3].line_number,
            source_line=over[3].raw,
        )

    sona_by_column: dict[int, list[Sonum]] = {t.start_column: [] for t in tempus_tokens}
    for voice_index, (voice_name, grips, annotations, vox_line) in enumerate(voices):
        ypos = voice_index + 1
        by_column: dict[int, Sonum] = {}
        for grip in grips:
            if grip.start_column not in sona_by_column:
                raise ModelError(
                    f"grip '{grip.symbol}' in voice '{voice_name}' does not start "
                    "under any duration symbol of its system",
                    line=grip.line_number,
                    column=grip.start_column,
                    source_line=vox_line.raw,
                )
            string_index, fret = lookup_grip(
                symbol_map, grip.symbol, grip.line_number, grip.start_column, vox_line.raw
            )
            sonum = Sonum(grip.symbol, string_index, fret, grip.prolongate, ypos)
            sona_by_column[grip.start_column].append(sonum)
            by_column[grip.start_column] = sonum
        for ann in annotations:
            target = by_column.get(ann.start_column)
            if target is None:
                raise ModelError(
                    f"annotation in track '{ann.track}' does not start under any "
                    f"event of voice '{voice_name}'",
                    line=ann.line_number,
                    column=ann.start_column,
                )
            target.annotations.append(ann)

    columns: list[Columna] = []
    for token in tempus_tokens:
        sona = sona_by_column[token.start_column]
        if not sona:
            raise ModelError(
                f"column of duration '{token.source_text}' has no grip event "
                "(every column needs at least one)",
                line=token.line_number,
                column=token.start_column,
            )
        columns.append(
            Columna(
                numerus=0,  # assigned per PARS
                duration=token,
                duration_ypos=0,
                trabes=assign_trabes(token),
                summa_praecedentium=Fraction(0),
                sona=sona,
            )
        )
    return columns


def compute_summa(columns: list[Columna]) -> list[Columna]:
    """Assign each column the exact sum of all preceding durations."""
    total = Fraction(0)
    for col in columns:
        col.summa_praecedentium = total
        total += col.duration.value
    return columns


def assign_duration_ypos(columns: list[Columna], params: Parameters) -> list[Columna]:
    """Place duration symbols vertically.

    By default they sit on the top row (0). With ``duratioCadens = est``
    each symbol drops to the free row directly above its column's topmost
    grip, mirroring the jumping duration signs of the originals.
    """
    for col in columns:
        if params.duratio_cadens:
            col.duration_ypos = max(min(s.ypos for s in col.sona) - 1, 0)
        else:
            col.duration_ypos = 0
    return columns


def build_score(lines: list[SourceLine]) -> ScoreModel:
    """Build the full score model from scanned lines."""
    warnings: list[str] = []
    tables: dict[str, GripTable] = {}
    file_params = Parameters()
    partes: list[ParsModel] = []
    seen_names: dict[str, int] = {}

    i = 0
    n = len(lines)
    while i < n and lines[i].kind is not LineKind.PARS_HEADER:
        line = lines[i]
        if line.kind is LineKind.BLANK:
            i += 1
        elif line.kind is LineKind.ASSIGNMENT:
            item, i = parse_assignment(lines, i)
            apply_assignment(item, file_params, tables, warnings)
        else:
            raise ModelError(
                f"{line.kind.value} outside of any PARS section",
                line=line.line_number,
                column=line.tokens[0].start_column if line.tokens else 0,
                source_line=line.raw,
            )

    while i < n:
        header = lines[i]
        if len(header.tokens) < 2:
            raise ParseError(
                "PARS header needs a name",
                line=header.line_number,
                column=header.tokens[0].start_column + len("PARS"),
                source_line=header.raw,
            )
        if len(header.tokens) > 2:
            raise ParseError(
                f"unexpected tokens after PARS name '{header.tokens[1].text}'",
                line=header.line_number,
                column=header.tokens[2].start_column,
                source_line=header.raw,
            )
        name = header.tokens[1].text
        if name in seen_names:
            raise ModelError(
                f"duplicate PARS name '{name}' (first at line {seen_names[name]})",
                line=header.line_number,
                column=header.tokens[1].start_column,
                source_line=header.raw,
            )
        seen_names[name] = header.line_number
        i += 1

        pars_params = file_params.copy()
        systems: list[_System] = []
        while i < n and lines[i].kind is not LineKind.PARS_HEADER:
            line = lines[i]
            if line.kind is LineKind.BLANK:
                i += 1
            elif line.kind is LineKind.ASSIGNMENT:
                item, i = parse_assignment(lines, i)
                apply_assignment(item, pars_params, tables, warnings)
            elif line.kind is LineKind.TEMPUS:
                systems.append(_System(line))
                i += 1
            elif line.kind is LineKind.VOX:
                if not systems:
                    raise ModelError(
                        f"voice line before any time line in PARS '{name}'",
                        line=line.line_number,
                        source_line=line.raw,
                    )
                systems[-1].voices.append((line, []))
                i += 1
            elif line.kind is LineKind.PARAM_TRACK:
                if not systems or not systems[-1].voices:
                    raise ModelError(
                        "parameter track without a preceding voice line",
                        line=line.line_number,
                        source_line=line.raw,
                    )
                systems[-1].voices[-1][1].append(line)
                i += 1
            else:
                raise ParseError(
                    "table continuation outside a table assignment",
                    line=line.line_number,
                    source_line=line.raw,
                )
        partes.append(_build_pars(name, header, systems, pars_params, tables, warnings))

    return ScoreModel(partes, warnings)


def _build_pars(
    name: str,
    header: SourceLine,
    systems: list[_System],
    params: Parameters,
    tables: dict[str, GripTable],
    warnings: list[str],
) -> ParsModel:
    if not systems:
        raise ModelError(
            f"PARS '{name}' contains no system (it needs at least one time line)",
            line=header.line_number,
            source_line=header.raw,
        )
    if params.table_name is None:
        raise ModelError(
            f"PARS '{name}' selects no grip table (missing '{TABLE_PARAM}' assignment)",
            line=header.line_number,
            source_line=header.raw,
        )
    table = tables.get(params.table_name)
    if table is None:
        raise ModelError(
            f"PARS '{name}' selects undefined grip table '{params.table_name}'",
            line=header.line_number,
            source_line=header.raw,
        )
    symbol_map = build_symbol_map(table)

    columns: list[Columna] = []
    system_ranges: list[tuple[int, int]] = []
    prev: DurationToken | None = None
    for system in systems:
        tokens = parse_tempus_line(system.tempus, params, prev)
        prev = tokens[-1]
        voices = []
        for vox_line, track_lines in system.voices:
            voice_name, grips = parse_vox_line(vox_line)
            annotations: list[Annotation] = []
            for track_line in track_lines:
                _, track_annotations = parse_param_track(track_line)
                annotations.extend(track_annotations)
            voices.append((voice_name, grips, annotations, vox_line))
        start = len(columns)
        try:
            validate_beams(tokens)
            columns.extend(build_system(tokens, voices, symbol_map))
        except ModelError as err:
            if err.source_line is None and err.line == system.tempus.line_number:
                err.source_line = system.tempus.raw
            raise
        system_ranges.append((start, len(columns)))

    for numerus, col in enumerate(columns):
        col.numerus = numerus
    compute_summa(columns)
    assign_duration_ypos(columns, params)
    return ParsModel(name, columns, params, table.name, system_ranges, header.line_number)
