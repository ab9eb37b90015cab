"""JSON interchange: model files, section files, field files.

Model file::

    {"points": [{"id": "p", "rank": 1, "weight": "1"}, ...],
     "kernel": [{"x": "p", "i": 0, "y": "q", "j": 0, "value": "2/3"}, ...]}

Section file: a list of ``{"config": [ids], "element": "<expression>"}``.
Field file: a map from point id to a list of rationals (one per basis
index).  Rationals travel as strings like ``"2/3"`` so nothing is ever
a float.  Validation failures raise ``ModelFormatError`` with a message
naming the offending entry.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .configspace import BaseSpace
from .errors import AlgebraError
from .expr import parse_element, render
from .functionals import Field
from .poisson import Kernel
from .sections import Section, section


class ModelFormatError(Exception):
    """An input file that does not match its documented schema."""


def _rational(value, where: str) -> Fraction:
    try:
        if isinstance(value, bool) or isinstance(value, float):
            raise ValueError(value)
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise ModelFormatError(
            "%s: %r is not an exact rational (use strings like \"2/3\")"
            % (where, value)
        ) from None


def parse_model(doc) -> tuple[BaseSpace, Kernel]:
    if not isinstance(doc, dict):
        raise ModelFormatError("model file must be a JSON object")
    points = doc.get("points")
    if not isinstance(points, list) or not points:
        raise ModelFormatError("model needs a non-empty \"points\" list")
    specs = []
    for row in points:
        if not isinstance(row, dict) or not {"id", "rank", "weight"} <= set(row):
            raise ModelFormatError("each point needs id, rank and weight: %r" % row)
        label = row["id"]
        if not isinstance(label, str) or not label:
            raise ModelFormatError("point id must be a non-empty string: %r" % row)
        rank = row["rank"]
        if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
            raise ModelFormatError("rank at %r must be a positive integer" % label)
        weight = _rational(row["weight"], "weight at %r" % label)
        if weight <= 0:
            raise ModelFormatError("weight at %r must be positive" % label)
        specs.append((label, rank, weight))
    try:
        base = BaseSpace.of(specs)
    except ValueError as err:
        raise ModelFormatError(str(err)) from None

    entries = []
    for row in doc.get("kernel", []):
        if not isinstance(row, dict) or not {"x", "i", "y", "j", "value"} <= set(row):
            raise ModelFormatError(
                "each kernel entry needs x, i, y, j and value: %r" % row
            )
        x, y = row["x"], row["y"]
        i, j = row["i"], row["j"]
        for label, index in ((x, i), (y, j)):
            if label not in base.rank:
                raise ModelFormatError("kernel names unknown point %r" % label)
            if not isinstance(index, int) or isinstance(index, bool) or not (
                0 <= index < base.rank_of(label)
            ):
                raise ModelFormatError(
                    "kernel index %r out of range at point %r" % (index, label)
                )
        value = _rational(row["value"], "kernel value at (%r,%r)" % (x, y))
        entries.append(((x, i), (y, j), value))
    try:
        kernel = Kernel.of(entries)
    except (AlgebraError, ValueError) as err:
        raise ModelFormatError("bad kernel: %s" % err) from None
    return base, kernel


def load_model(spec: str) -> tuple[BaseSpace, Kernel]:
    """Read a model from a path, or from the bundled set by bare name."""
    if "/" not in spec and "." not in spec:
        packaged = resources.files("uconf").joinpath("data/%s.json" % spec)
        if packaged.is_file():
            return parse_model(json.loads(packaged.read_text()))
    try:
        with open(spec, encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as err:
        raise ModelFormatError("cannot read model %r: %s" % (spec, err)) from None
    except json.JSONDecodeError as err:
        raise ModelFormatError("model %r is not valid JSON: %s" % (spec, err)) from None
    return parse_model(doc)


def parse_section(doc, base: BaseSpace) -> Section:
    if not isinstance(doc, list):
        raise ModelFormatError("section file must be a JSON list")
    values = {}
    for row in doc:
        if not isinstance(row, dict) or not {"config", "element"} <= set(row):
            raise ModelFormatError(
                "each section entry needs config and element: %r" % row
            )
        try:
            cfg = base.configuration(row["config"])
        except AlgebraError as err:
            raise ModelFormatError("bad config %r: %s" % (row["config"], err)) from None
        if cfg in values:
            raise ModelFormatError("configuration %s appears twice" % cfg)
        if not isinstance(row["element"], str):
            raise ModelFormatError("element must be expression text: %r" % row)
        try:
            elem = parse_element(row["element"], base)
        except AlgebraError as err:
            raise ModelFormatError(
                "bad element for %s: %s" % (cfg, err)
            ) from None
        if elem.config != cfg:
            raise ModelFormatError(
                "element of %r lives over %s, not the stated %s"
                % (row["element"], elem.config, cfg)
            )
        values[cfg] = elem
    return section(values, len(base.points))


def load_section(path: str, base: BaseSpace) -> Section:
    return parse_section(_load_json(path, "section"), base)


def parse_field(doc, base: BaseSpace) -> Field:
    if not isinstance(doc, dict):
        raise ModelFormatError("field file must be a JSON object")
    missing = [x for x in base.points if x not in doc]
    if missing:
        raise ModelFormatError("field leaves points undefined: %s" % ", ".join(missing))
    table = {}
    for label, vec in doc.items():
        if label not in base.rank:
            raise ModelFormatError("field names unknown point %r" % label)
        if not isinstance(vec, list) or len(vec) != base.rank_of(label):
            raise ModelFormatError(
                "field at %r must list exactly %d components"
                % (label, base.rank_of(label))
            )
        table[label] = [_rational(v, "field at %r" % label) for v in vec]
    return Field.of(table)


def load_field(path: str, base: BaseSpace) -> Field:
    return parse_field(_load_json(path, "field"), base)


def _load_json(path: str, kind: str):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as err:
        raise ModelFormatError("cannot read %s %r: %s" % (kind, path, err)) from None
    except json.JSONDecodeError as err:
        raise ModelFormatError("%s %r is not valid JSON: %s" % (kind, path, err)) from None


def section_rows(s: Section) -> list[dict]:
    """Render a section back into the section-file row shape."""
    return [
        {"config": list(cfg.members), "element": render(val)}
        for cfg, val in s.support
    ]
