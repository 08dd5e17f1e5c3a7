"""SVG control graphic: a quick visual cross-check of the parsed model.

One horizontal band per system. Columns are evenly spaced (aligned to the
source layout, not proportional to time): each shows its duration symbol
as a stem with flag strokes or a beam, the grip letters at their vertical
rows, and the column number underneath. This is a verification aid, not
an engraver; geometry is plain and configurable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Columna, ParsModel, TRABES_INITIALIS, TRABES_TERMINALIS
from .tempus import KLASS_CARRY, KLASS_DOTS, STEM_FLAGS

SVG_NS = "http://www.w3.org/2000/svg"


@dataclass(frozen=True)
class RenderConfig:
    column_spacing: float = 28.0
    row_spacing: float = 18.0
    stem_height: float = 24.0
    font_size: float = 12.0
    margin: float = 20.0

    def __post_init__(self) -> None:
        for name in ("column_spacing", "row_spacing", "stem_height", "font_size", "margin"):
            if getattr(self, name) <= 0:
                raise ValueError(f"render config {name} must be strictly positive")


def _fmt(v: float) -> str:
    return f"{v:g}"


def _escape_text(value: str) -> str:
    return value.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _beam_groups(cols: list[Columna]) -> list[tuple[int, int]]:
    """Index ranges [begin, end] of beam groups within one system."""
    groups: list[tuple[int, int]] = []
    begin: int | None = None
    for i, col in enumerate(cols):
        if col.trabes == TRABES_INITIALIS:
            begin = i
        elif col.trabes == TRABES_TERMINALIS and begin is not None:
            groups.append((begin, i))
            begin = None
    return groups


def render_pars(pars: ParsModel, config: RenderConfig | None = None) -> str:
    cfg = config or RenderConfig()
    max_ypos = max((s.ypos for c in pars.columns for s in c.sona), default=1)
    max_cols = max((b - a for a, b in pars.system_ranges), default=0)
    n_bands = len(pars.system_ranges)

    band_height = cfg.stem_height + (max_ypos + 1) * cfg.row_spacing + cfg.font_size
    width = 2 * cfg.margin + (max(max_cols - 1, 0)) * cfg.column_spacing + (
        cfg.font_size if max_cols else 0.0
    )
    height = 2 * cfg.margin + n_bands * band_height + max(n_bands - 1, 0) * cfg.row_spacing

    out: list[str] = [
        f"<svg xmlns='{SVG_NS}' width='{_fmt(width)}' height='{_fmt(height)}' "
        f"viewBox='0 0 {_fmt(width)} {_fmt(height)}' font-family='monospace'>"
    ]

    for band, (a, b) in enumerate(pars.system_ranges):
        cols = pars.columns[a:b]
        band_top = cfg.margin + band * (band_height + cfg.row_spacing)

        def row_y(r: int) -> float:
            return band_top + cfg.stem_height + r * cfg.row_spacing

        xs = [cfg.margin + j * cfg.column_spacing for j in range(len(cols))]
        stem_tops: dict[int, float] = {}
        beamed: set[int] = set()
        groups = _beam_groups(cols)
        for g0, g1 in groups:
            beamed.update(range(g0, g1 + 1))

        for j, col in enumerate(cols):
            klass = col.duration.klass
            if klass in STEM_FLAGS:
                stem_tops[j] = row_y(col.duration_ypos) - cfg.stem_height

        shapes: list[str] = []
        texts: list[str] = []
        for j, col in enumerate(cols):
            x = xs[j]
            klass = col.duration.klass
            base = row_y(col.duration_ypos)
            if klass in STEM_FLAGS:
                top = stem_tops[j]
                if j in beamed:
                    # beam replaces the flags; stem reaches the group's beam height
                    group = next(g for g in groups if g[0] <= j <= g[1])
                    top = min(stem_tops[k] for k in range(group[0], group[1] + 1))
                shapes.append(
                    f"<line x1='{_fmt(x)}' y1='{_fmt(base)}' x2='{_fmt(x)}' "
                    f"y2='{_fmt(top)}' stroke='black' />"
                )
                if j not in beamed:
                    for k in range(STEM_FLAGS[klass]):
                        fy = top + k * 4.0
                        shapes.append(
                            f"<line x1='{_fmt(x)}' y1='{_fmt(fy)}' x2='{_fmt(x + 6.0)}' "
                            f"y2='{_fmt(fy + 4.0)}' stroke='black' />"
                        )
                if col.duration.dot_count:
                    shapes.append(
                        f"<circle cx='{_fmt(x + 5.0)}' cy='{_fmt(base - 3.0)}' r='1.6' />"
                    )
            elif klass == KLASS_DOTS:
                for k in range(col.duration.dot_count):
                    shapes.append(
                        f"<circle cx='{_fmt(x + k * 5.0)}' cy='{_fmt(base - 3.0)}' r='1.6' />"
                    )
            elif klass == KLASS_CARRY:
                shapes.append(
                    f"<line x1='{_fmt(x - 3.0)}' y1='{_fmt(base - 6.0)}' "
                    f"x2='{_fmt(x + 3.0)}' y2='{_fmt(base - 6.0)}' stroke='#999999' />"
                )
            for sonum in col.sona:
                label = sonum.source + ("+" if sonum.prolongate else "")
                texts.append(
                    f"<text x='{_fmt(x)}' y='{_fmt(row_y(sonum.ypos))}' "
                    f"font-size='{_fmt(cfg.font_size)}' text-anchor='middle'>"
                    f"{_escape_text(label)}</text>"
                )
            texts.append(
                f"<text x='{_fmt(x)}' y='{_fmt(row_y(max_ypos + 1))}' "
                f"font-size='{_fmt(cfg.font_size * 0.75)}' text-anchor='middle' "
                f"fill='#555555'>{col.numerus}</text>"
            )

        for g0, g1 in groups:
            beam_y = min(stem_tops[k] for k in range(g0, g1 + 1))
            shapes.append(
                f"<line x1='{_fmt(xs[g0])}' y1='{_fmt(beam_y)}' x2='{_fmt(xs[g1])}' "
                f"y2='{_fmt(beam_y)}' stroke='black' stroke-width='2.5' />"
            )

        out.extend(shapes)
        out.extend(texts)

    out.append("</svg>")
    return "\n".join(out) + "\n"
