"""XML emission: one ``tabulatura`` document per PARS, plus the DTD.

The output is deliberately verbose and line-oriented: one element per
line, 2-space indentation, single-quoted attributes in a fixed order, so
that diffs against golden files stay readable. Attribute order is
cosmetic; validation happens on parsed attribute maps.

The document type mixes graphical and temporal properties (ypos next to
exact rational positions) and is meant as an intermediate model for
further transformation, not as an edition format. The ``edit`` attribute
on ``sonum`` is this program's documented extension for editorial
remarks; the DTD below declares it.
"""

from __future__ import annotations

from .errors import EmitError
from .model import Columna, ParsModel, Sonum

_XML_DECLARATION = "<?xml version='1.0' encoding='UTF-8'?>"

_LEGAL_DENOMINATORS = (1, 2, 4, 8, 16, 32, 64)
_MAX_POSITION = 12
_EDIT_TRACK = "edit"

DTD_TEXT = """\
<!ELEMENT tabulatura (columna)*  >

<!ELEMENT columna (duratio, sonum+) >

<!ELEMENT duratio EMPTY>
<!ATTLIST duratio source CDATA                          #REQUIRED
                  numerus CDATA                         #REQUIRED
                  ypos   (0|1|2|3|4|5|6|7|8|9|10|11|12) #REQUIRED
                  trabes (initialis|terminalis)         #IMPLIED 
                  duratio.num    CDATA                  #REQUIRED
                  duratio.den    (1|2|4|8|16|32|64)     #REQUIRED
                  summaPraecedentium.num  CDATA         #REQUIRED
                  summaPraecedentium.den  (1|2|4|8|16|32|64) #REQUIRED
>

<!ELEMENT sonum EMPTY>
<!ATTLIST sonum source CDATA  #REQUIRED
                  fret   (0|1|2|3|4|5|6|7|8|9|10|11|12) #REQUIRED
                  string (0|1|2|3|4|5|6|7|8|9|10|11|12) #REQUIRED
                  prolongate (yes)                      #IMPLIED
                  ypos   (0|1|2|3|4|5|6|7|8|9|10|11|12) #REQUIRED
                  finger  (p|i|m|a|o)                   #IMPLIED
                  edit    CDATA                         #IMPLIED
>
"""


def escape_attr(value: str) -> str:
    return (
        value.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace("'", "&apos;")
        .replace('"', "&quot;")
    )


def _check_position(value: int, what: str, col: Columna) -> int:
    if not 0 <= value <= _MAX_POSITION:
        raise EmitError(
            f"{what} {value} of column {col.numerus} is outside 0..{_MAX_POSITION}",
            line=col.duration.line_number,
            column=col.duration.start_column,
        )
    return value


def _rational_attrs(prefix: str, value, col: Columna) -> list[tuple[str, str]]:
    if value.denominator not in _LEGAL_DENOMINATORS:
        raise EmitError(
            f"{prefix} denominator {value.denominator} of column {col.numerus} is "
            f"not one of {'|'.join(map(str, _LEGAL_DENOMINATORS))}",
            line=col.duration.line_number,
            column=col.duration.start_column,
        )
    return [(f"{prefix}.num", str(value.numerator)), (f"{prefix}.den", str(value.denominator))]


def _format_element(name: str, attrs: list[tuple[str, str]], indent: int) -> str:
    body = "".join(f" {k}='{escape_attr(v)}'" for k, v in attrs)
    return f"{'  ' * indent}<{name}{body} />"


def _duratio_line(col: Columna) -> str:
    attrs: list[tuple[str, str]] = [
        ("source", col.duration.source_text),
        ("numerus", str(col.numerus)),
        ("ypos", str(_check_position(col.duration_ypos, "duration ypos", col))),
    ]
    if col.trabes is not None:
        attrs.append(("trabes", col.trabes))
    attrs += _rational_attrs("summaPraecedentium", col.summa_praecedentium, col)
    attrs += _rational_attrs("duratio", col.duration.value, col)
    return _format_element("duratio", attrs, 2)


def _sonum_line(sonum: Sonum, col: Columna) -> str:
    attrs: list[tuple[str, str]] = [
        ("source", sonum.source),
        ("fret", str(_check_position(sonum.fret, "fret", col))),
        ("string", str(_check_position(sonum.string, "string", col))),
    ]
    if sonum.prolongate:
        attrs.append(("prolongate", "yes"))
    attrs.append(("ypos", str(_check_position(sonum.ypos, "grip ypos", col))))
    edits = [a.text for a in sonum.annotations if a.track == _EDIT_TRACK]
    if edits:
        attrs.append(("edit", "; ".join(edits)))
    return _format_element("sonum", attrs, 2)


def emit_pars(pars: ParsModel) -> str:
    """Serialize one PARS to a complete XML document string."""
    lines = [_XML_DECLARATION, "<tabulatura>"]
    for col in pars.columns:
        lines.append("  <columna>")
        lines.append(_duratio_line(col))
        for sonum in col.sona:
            lines.append(_sonum_line(sonum, col))
        lines.append("  </columna>")
    lines.append("</tabulatura>")
    return "\n".join(lines) + "\n"


def emit_dtd() -> str:
    """Return the document type definition for emitted documents."""
    return DTD_TEXT
