"""Bundled procedure templates and their parameters."""

from __future__ import annotations

import json
import re
import string
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from ..errors import MissingParameter, UnknownProcedure

_PREFIXED = re.compile(r"^[A-Za-z][\w.-]*:\S*$")


@lru_cache(maxsize=None)
def manifest() -> dict:
    return json.loads(resources.files(__package__).joinpath("manifest.json").read_text("utf-8"))


def list_procedures() -> list[str]:
    return list(manifest())


def format_iri(value: str) -> str:
    """SPARQL text for an IRI parameter.

    Accepts ``<...>``, a prefixed name such as ``wdt:P197``, a property
    path over prefixed names, or a bare absolute IRI.
    """
    value = str(value).strip()
    if not value or value.startswith("<"):
        return value
    if "://" in value or value.startswith("urn:"):
        return f"<{value}>"
    if _PREFIXED.match(value) or "|" in value or "/" in value:
        return value
    raise ValueError(f"not an IRI or prefixed name: {value!r}")


def _format(name: str, spec: dict, value) -> str:
    kind = spec["kind"]
    if kind == "iri":
        return format_iri(value)
    if kind == "int":
        try:
            number = int(value)
        except (TypeError, ValueError):
            raise ValueError(f"parameter {name} must be an integer, got {value!r}") from None
        if number < 1:
            raise ValueError(f"parameter {name} must be at least 1")
        return str(number)
    if kind in ("decimal", "fraction"):
        try:
            number = Decimal(str(value))
        except InvalidOperation:
            raise ValueError(f"parameter {name} must be a number, got {value!r}") from None
        if not number.is_finite():
            raise ValueError(f"parameter {name} must be finite")
        if kind == "fraction" and not 0 <= number <= 1:
            raise ValueError(f"parameter {name} must lie between 0 and 1")
        text = format(number, "f")
        return text if "." in text else text + ".0"
    if kind == "choice":
        if value not in spec["choices"]:
            raise ValueError(f"parameter {name} must be one of {spec['choices']}")
        return str(value)
    raise ValueError(f"unknown parameter kind {kind!r}")


def _derived(name: str, values: dict[str, str]) -> dict[str, str]:
    extra = {}
    if name == "metro-reachability":
        if values["seed"] == "source":
            extra["seed_query"] = f"SELECT ?s WHERE {{ BIND({values['source']} AS ?s) }}"
        else:
            extra["seed_query"] = (
                f"SELECT ?s WHERE {{\n    {values['source']} {values['adjacency']} ?s .\n"
                f"    MINUS {{ ?s {values['line']} {values['excluded_line']} }}\n  }}"
            )
    if name == "SSSP":
        if values["weight"]:
            extra["weight_pattern"] = (
                "OPTIONAL { ?st rdf:subject ?node ; rdf:predicate "
                f"{values['edge']} ; rdf:object ?target ; {values['weight']} ?w0 }}"
            )
        else:
            extra["weight_pattern"] = ""
    return extra


def get_procedure(name: str, params: dict | None = None) -> str:
    """Render the named stdlib procedure to source text.

    Raises UnknownProcedure for an unknown name and MissingParameter when a
    parameter without a default is not supplied.
    """
    entries = manifest()
    if name not in entries:
        lowered = {k.lower(): k for k in entries}
        if name.lower() not in lowered:
            raise UnknownProcedure(f"unknown procedure {name!r}; available: {', '.join(entries)}")
        name = lowered[name.lower()]
    entry = entries[name]
    params = dict(params or {})
    unknown = set(params) - set(entry["params"])
    if unknown:
        raise ValueError(f"unknown parameter(s) for {name}: {', '.join(sorted(unknown))}")
    values = {}
    for pname, spec in entry["params"].items():
        if pname in params:
            raw = params[pname]
        elif "default" in spec:
            raw = spec["default"]
        else:
            raise MissingParameter(f"procedure {name} requires parameter {pname!r}")
        values[pname] = _format(pname, spec, raw)
        if spec["kind"] == "fraction":
            # Decimal products needing more than 18 fractional digits come
            # back unbound, so templates multiply by an integer numerator
            # and divide by the denominator instead.
            ratio = Fraction(Decimal(values[pname]))
            values[f"{pname}_num"] = str(ratio.numerator)
            values[f"{pname}_den"] = str(ratio.denominator)
    values.update(_derived(name, values))
    text = resources.files(__package__).joinpath("procedures", entry["file"]).read_text("utf-8")
    return string.Template(text).substitute(values)


def parameters(name: str) -> dict:
    return manifest()[name]["params"]
