"""JSON documents: parsing, schema validation, and conversion to library objects."""

from __future__ import annotations

import json
from functools import cache
from importlib import resources
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

from .errors import ParseError, ValidationError
from .lattice import IntegralLattice, make_lattice

SCHEMAS = ("lattice", "isometry", "scenario", "report")


@cache
def _registry() -> Registry:
    pairs = []
    for name in SCHEMAS:
        doc = json.loads(resources.files("hklattice.data.schemas").joinpath(f"{name}.schema.json").read_text())
        pairs.append((f"{name}.schema.json", Resource.from_contents(doc)))
    return Registry().with_resources(pairs)


def schema(name: str) -> dict:
    return _registry()[f"{name}.schema.json"].contents


def validate(doc, name: str) -> None:
    validator = jsonschema.Draft202012Validator(schema(name), registry=_registry())
    err = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    if err is not None:
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise ValidationError(f"{name} document invalid at {where}: {err.message}")


def parse_json(text: str, source: str = "<string>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}: line {e.lineno}, column {e.colno}: {e.msg}") from None


def load_json(path: str | Path):
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None
    return parse_json(text, str(path))


def lattice_from_doc(doc) -> IntegralLattice:
    validate(doc, "lattice")
    return make_lattice(doc["gram"], doc.get("label"))


def load_lattice(path: str | Path) -> IntegralLattice:
    return lattice_from_doc(load_json(path))


def dumps(report) -> str:
    """Canonical byte-stable rendering."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def bundled_scenario_path(name: str = "ht10") -> Path:
    return Path(str(resources.files("hklattice.data").joinpath(f"{name}.json")))
