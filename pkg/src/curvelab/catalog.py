"""Built-in named curves, each with its defining equation and metadata.

Derived entries store the expanded canonical polynomial, not a pipeline,
so they stay usable even if the transform code changes; how each one is
obtained from its parent is recorded in ``construction`` metadata.
Default frames are chosen to show the interesting part of each curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import NotFound
from .expr import poly_from_text
from .poly import BivarPoly

Frame = Tuple[float, float, float, float]  # u_min, u_max, v_min, v_max


@dataclass(frozen=True)
class Construction:
    """How a derived entry is produced from its parent entry."""

    parent: str
    kind: str           # "blow_down" | "blow_up"
    pivot: str
    replaced: str
    new: str
    center: str


@dataclass(frozen=True)
class CatalogEntry:
    slug: str
    name: str
    expr: str                       # defining equation in the text grammar
    vars: Tuple[str, str]
    poly: BivarPoly
    figure: str                     # one-line description of the shape
    frame: Frame
    construction: Optional[Construction] = None


def _entry(slug: str, name: str, expr: str, vars: Tuple[str, str],
           figure: str, frame: Frame,
           construction: Optional[Construction] = None) -> CatalogEntry:
    return CatalogEntry(slug=slug, name=name, expr=expr, vars=vars,
                        poly=poly_from_text(expr, *vars), figure=figure,
                        frame=frame, construction=construction)


_ENTRIES: Tuple[CatalogEntry, ...] = (
    _entry("circle-unit", "Unit circle",
           "x^2+y^2-1", ("x", "y"),
           "circle of radius 1 about the origin",
           (-1.5, 1.5, -1.5, 1.5)),
    _entry("circle-shifted", "Shifted circle",
           "x^2-4x+y^2", ("x", "y"),
           "circle of radius 2 through the origin, center (2, 0)",
           (-1.0, 5.0, -3.0, 3.0)),
    _entry("lemniscata-huygens", "Lemniscata de Huygens",
           "x^4+z^2-x^2", ("x", "z"),
           "figure eight with a node at the origin",
           (-1.3, 1.3, -0.8, 0.8),
           Construction("circle-unit", "blow_down", "x", "y", "z", "0")),
    _entry("piriforme", "Curva piriforme",
           "x^4-4x^3+z^2", ("x", "z"),
           "pear shape with a cusp at the origin",
           (-0.5, 4.5, -6.5, 6.5),
           Construction("circle-shifted", "blow_down", "x", "y", "z", "0")),
    _entry("labios", "Labios",
           "x^6-12x^5+48x^4-64x^3+t^2", ("x", "t"),
           "two lips meeting at the origin and at (4, 0)",
           (-0.5, 4.5, -10.0, 10.0),
           Construction("piriforme", "blow_down", "x", "z", "t", "4")),
    _entry("cardioide", "Cardioide",
           "(x^2+y^2+x)^2-x^2-y^2", ("x", "y"),
           "heart outline traced by a rolling circle, cusp at the origin",
           (-2.4, 0.7, -1.5, 1.5)),
    _entry("corazon", "Corazon",
           "x^8+10x^7+40x^6+80x^5+2x^4z^2+80x^4+32x^3"
           "+10x^3z^2+15x^2z^2+4x z^2+z^4-4z^2", ("x", "z"),
           "heart shape with a pinch where the cardioid was glued",
           (-2.4, 0.7, -2.3, 2.3),
           Construction("cardioide", "blow_down", "x", "y", "z", "-2")),
    _entry("tricuspide", "Tricuspide",
           "3(x^2+y^2)^2+8x(3y^2-x^2)+6x^2+6y^2-1", ("x", "y"),
           "deltoid with three cusps",
           (-0.6, 1.2, -0.9, 0.9)),
    _entry("punta-de-flecha", "Punta de flecha",
           "3x^2z^4+6x^2z^2+3x^2-6x z^4+24x z^2-2x+3z^4+6z^2-1", ("x", "z"),
           "arrowhead obtained by exploding a cusp of the deltoid",
           (-0.6, 1.2, -2.0, 2.0),
           Construction("tricuspide", "blow_up", "x", "y", "z", "1")),
    _entry("pisciforme", "Curva pisciforme",
           "3x^6-2x^5+6x^4t^2-x^4+24x^3t^2+3x^2t^4+6x^2t^2-6x t^4+3t^4",
           ("x", "t"),
           "fish shape with the tail pinched at the origin",
           (-0.4, 1.2, -0.8, 0.8),
           Construction("punta-de-flecha", "blow_down", "x", "z", "t", "0")),
)

_BY_SLUG = {entry.slug: entry for entry in _ENTRIES}


def list_catalog() -> Tuple[CatalogEntry, ...]:
    """All built-in curves, in construction order."""
    return _ENTRIES


def get_entry(slug: str) -> CatalogEntry:
    try:
        return _BY_SLUG[slug]
    except KeyError:
        raise NotFound(f"no catalog curve named {slug!r}") from None
