"""Shipped parameter sets for the eight reference streamline figures.

Each ``figureN.json`` holds ``{figure, family, params, shape_constants, window,
levels, notes}``; ``notes`` records every place a preset departs from the
parameters stated for the figure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..errors import ParameterError
from ..fieldio import Grid
from ..solutions import solution_from_dict
from ..solutions.base import FlowSolution

FIGURES = tuple(range(1, 9))
CLOSED_FORM_FIGURES = (1, 2, 6, 7, 8)


@dataclass(frozen=True)
class Preset:
    figure: int
    doc: dict

    @property
    def family(self) -> str:
        return self.doc["family"]

    @property
    def window(self):
        return tuple(self.doc["window"])

    @property
    def levels(self):
        return tuple(float(v) for v in self.doc["levels"])

    @property
    def notes(self) -> str:
        return self.doc.get("notes", "")

    def solution(self, strict: bool = True) -> FlowSolution:
        return solution_from_dict(self.doc, strict=strict)

    def grid(self, nx=201, ny=201, projection="real") -> Grid:
        return Grid.from_window(self.window, nx, ny, projection)


def load_document(n: int) -> dict:
    if n not in FIGURES:
        raise ParameterError(f"no preset for figure {n!r}; expected one of {FIGURES}")
    text = resources.files(__package__).joinpath(f"figure{n}.json").read_text(encoding="utf-8")
    return json.loads(text)


def load_preset(n: int) -> Preset:
    return Preset(n, load_document(n))


def all_presets():
    return [load_preset(n) for n in FIGURES]
