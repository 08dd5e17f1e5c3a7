"""Duration line parsing: stems, dots, beams and the carry operator.

A ``T`` line holds one duration symbol per score column. The stem letters
I, T, F, E mean zero to three flags and are read the modern way as 1/4,
1/8, 1/16, 1/32; a suffixed dot multiplies by 3/2. Standalone dot groups
are the longer values 1/2, 3/4 and 1/1. Underscores replace flags with
beams: a trailing ``_`` opens a beam group, a leading one closes it. The
carry token ``-`` repeats the previous duration and is only legal when the
prelude enables it with ``duratioManet = est``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ModelError, ParseError
from .prelude import Parameters
from .scanner import SourceLine, Token

KLASS_DOTS = "dots"
KLASS_CARRY = "carry"
STEM_FLAGS = {"I": 0, "T": 1, "F": 2, "E": 3}

_STEM_VALUES = {k: Fraction(1, 4) / 2**f for k, f in STEM_FLAGS.items()}
_DOT_GROUP_VALUES = {1: Fraction(1, 2), 2: Fraction(3, 4), 3: Fraction(1, 1)}
_DOT_FACTOR = Fraction(3, 2)

_STEM_RE = re.compile(r"^(_?)([ITFE])(\.?)(_?)$")
_DOT_GROUP_RE = re.compile(r"^\.{1,3}$")


@dataclass
class DurationToken:
    source_text: str
    klass: str  # "I" | "T" | "F" | "E" | "dots" | "carry"
    dot_count: int
    beam_begin: bool
    beam_end: bool
    value: Fraction
    start_column: int
    line_number: int


def parse_duration_token(
    token: Token, params: Parameters, prev: DurationToken | None
) -> DurationToken:
    """Parse one symbol of a T line, resolving its exact rational value."""
    text = token.text

    if text == "-":
        if not params.duratio_manet:
            raise ParseError(
                "carry token '-' requires the prelude parameter 'duratioManet = est'",
                line=token.line_number,
                column=token.start_column,
            )
        if prev is None:
            raise ParseError(
                "carry token '-' has no preceding duration to repeat",
                line=token.line_number,
                column=token.start_column,
            )
        return DurationToken(
            text, KLASS_CARRY, 0, False, False, prev.value, token.start_column, token.line_number
        )

    if _DOT_GROUP_RE.match(text):
        count = len(text)
        return DurationToken(
            text,
            KLASS_DOTS,
            count,
            False,
            False,
            _DOT_GROUP_VALUES[count],
            token.start_column,
            token.line_number,
        )

    m = _STEM_RE.match(text)
    if m is None:
        if "-" in text:
            msg = f"carry token '-' takes no dots or beam markers: '{text}'"
        else:
            msg = f"invalid duration token '{text}'"
        raise ParseError(msg, line=token.line_number, column=token.start_column)

    end_mark, letter, dot, begin_mark = m.groups()
    value = _STEM_VALUES[letter]
    if dot:
        value = value * _DOT_FACTOR
    return DurationToken(
        text,
        letter,
        1 if dot else 0,
        bool(begin_mark),
        bool(end_mark),
        value,
        token.start_column,
        token.line_number,
    )


def parse_tempus_line(
    line: SourceLine, params: Parameters, prev: DurationToken | None = None
) -> list[DurationToken]:
    """Parse all duration tokens of one T line, threading carry state.

    ``prev`` seeds the carry chain, so a line that continues an earlier
    system of the same PARS may begin with ``-``.
    """
    assert line.tokens and line.tokens[0].text == "T"
    body = line.tokens[1:]
    if not body:
        raise ParseError(
            "time line has no duration symbols",
            line=line.line_number,
            column=line.tokens[0].start_column,
            source_line=line.raw,
        )
    out: list[DurationToken] = []
    for tok in body:
        try:
            parsed = parse_duration_token(tok, params, prev)
        except ParseError as err:
            err.source_line = line.raw
            raise
        out.append(parsed)
        prev = parsed
    return out


def validate_beams(tokens: list[DurationToken]) -> None:
    """Check beam markers pair up left to right within one system.

    A beam end is matched before a beam begin on the same token, so
    ``_X_`` closes the open group and starts a new one.
    """
    open_at: DurationToken | None = None
    for tok in tokens:
        if tok.beam_end:
            if open_at is None:
                raise ModelError(
                    f"beam end without a beam begin: '{tok.source_text}'",
                    line=tok.line_number,
                    column=tok.start_column,
                )
            open_at = None
        if tok.beam_begin:
            if open_at is not None:
                raise ModelError(
                    f"beam begin inside an open beam group: '{tok.source_text}'",
                    line=tok.line_number,
                    column=tok.start_column,
                )
            open_at = tok
    if open_at is not None:
        raise ModelError(
            f"unclosed beam group (begun at '{open_at.source_text}')",
            line=open_at.line_number,
            column=open_at.start_column,
        )
