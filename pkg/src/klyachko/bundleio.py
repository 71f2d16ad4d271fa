"""JSON interchange format for toric bundles.

A bundle document looks like

    {
      "rank": 2,
      "n": 2,
      "filtrations": [
        {"ray": 0, "steps": [{"until": 0, "basis": [[1, 0], [0, 1]]},
                             {"until": 1, "basis": [["1/2", 1]]}]},
        ...
      ]
    }

Rational entries are integers or "p/q" strings.  Loading canonicalizes all
bases and enforces the filtration invariants; serializing a bundle always
produces the canonical document, so parse and serialize are mutually
inverse.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .bundles import Filtration, ToricBundle
from .fan import projective_fan
from .linalg import Subspace


class BundleParseError(ValueError):
    """Raised for malformed bundle documents; carries field context."""


def rational_from_json(value) -> Fraction:
    if isinstance(value, bool):
        raise BundleParseError(f"expected a rational, got boolean {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise BundleParseError(f"malformed rational string {value!r}") from None
    raise BundleParseError(f"expected an integer or 'p/q' string, got {value!r}")


def rational_to_json(value: Fraction):
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def bundle_to_dict(bundle: ToricBundle) -> dict:
    return {
        "rank": bundle.rank,
        "n": bundle.fan.dim,
        "filtrations": [
            {
                "ray": i,
                "steps": [
                    {
                        "until": until,
                        "basis": [[rational_to_json(x) for x in row] for row in space.basis],
                    }
                    for until, space in f.steps
                ],
            }
            for i, f in enumerate(bundle.filtrations)
        ],
    }


def bundle_from_dict(doc: dict) -> ToricBundle:
    if not isinstance(doc, dict):
        raise BundleParseError("bundle document must be a JSON object")
    try:
        rank = doc["rank"]
        filtrations = doc["filtrations"]
    except KeyError as e:
        raise BundleParseError(f"missing required field {e.args[0]!r}") from None
    n = doc.get("n", 2)
    if not isinstance(rank, int) or rank < 0:
        raise BundleParseError(f"rank must be a non-negative integer, got {rank!r}")
    if not isinstance(n, int) or n < 1:
        raise BundleParseError(f"n must be a positive integer, got {n!r}")
    fan = projective_fan(n)
    if not isinstance(filtrations, list):
        raise BundleParseError("'filtrations' must be a list")

    by_ray: dict[int, Filtration] = {}
    for pos, entry in enumerate(filtrations):
        if not isinstance(entry, dict):
            raise BundleParseError(f"filtration #{pos} must be an object")
        ray = entry.get("ray")
        if not isinstance(ray, int) or not 0 <= ray < fan.nrays:
            raise BundleParseError(
                f"filtration #{pos}: ray must be an index in 0..{fan.nrays - 1}, got {ray!r}"
            )
        if ray in by_ray:
            raise BundleParseError(f"ray {ray} appears more than once")
        steps = entry.get("steps")
        if not isinstance(steps, list):
            raise BundleParseError(f"filtration for ray {ray}: 'steps' must be a list")
        parsed_steps = []
        for step in steps:
            if not isinstance(step, dict) or "until" not in step or "basis" not in step:
                raise BundleParseError(
                    f"filtration for ray {ray}: each step needs 'until' and 'basis'"
                )
            until = step["until"]
            if not isinstance(until, int):
                raise BundleParseError(
                    f"filtration for ray {ray}: 'until' must be an integer, got {until!r}"
                )
            basis = step["basis"]
            if not isinstance(basis, list):
                raise BundleParseError(f"filtration for ray {ray}: 'basis' must be a list")
            rows = []
            for row in basis:
                if not isinstance(row, list):
                    raise BundleParseError(
                        f"filtration for ray {ray}: basis rows must be lists"
                    )
                try:
                    rows.append([rational_from_json(x) for x in row])
                except BundleParseError as e:
                    raise BundleParseError(f"filtration for ray {ray}: {e}") from None
            try:
                space = Subspace(rows, rank)
            except ValueError as e:
                raise BundleParseError(f"filtration for ray {ray}: {e}") from None
            parsed_steps.append((until, space))
        try:
            by_ray[ray] = Filtration(rank, tuple(parsed_steps))
        except ValueError as e:
            raise BundleParseError(f"invalid filtration for ray {ray}: {e}") from None

    missing = [i for i in range(fan.nrays) if i not in by_ray]
    if missing:
        raise BundleParseError(f"missing filtrations for rays {missing}")
    return ToricBundle(fan, tuple(by_ray[i] for i in range(fan.nrays)))


def dumps_bundle(bundle: ToricBundle, indent: int | None = 2) -> str:
    return json.dumps(bundle_to_dict(bundle), indent=indent)


def loads_bundle(text: str) -> ToricBundle:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise BundleParseError(f"not valid JSON: line {e.lineno}, column {e.colno}: {e.msg}") from None
    return bundle_from_dict(doc)


def load_bundle_file(path: str) -> ToricBundle:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise BundleParseError(f"cannot read bundle file {path}: {e}") from None
    return loads_bundle(text)
