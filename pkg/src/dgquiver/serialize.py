"""JSON (de)serialization for quivers, elements, differentials, models,
presentations and superpotentials.

Dumping is canonical (sorted keys, fixed separators) so serialize ->
parse -> serialize is byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .core import AlgebraElement, Arrow, GradedQuiver, Path
from .differential import Differential, DGModel
from .errors import InvalidInputError
from .ginzburg import Superpotential
from .presentations import PresentedAlgebra


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def quiver_to_json(q: GradedQuiver) -> dict:
    return {
        "vertices": list(q.vertices),
        "arrows": [
            {
                "id": a.name,
                "source": a.source,
                "target": a.target,
                "hdeg": a.hdeg,
                "adeg": a.adeg,
                "label": a.label,
            }
            for a in q.arrows
        ],
    }


def quiver_from_json(doc: dict) -> GradedQuiver:
    try:
        arrows = tuple(
            Arrow(a["id"], a["source"], a["target"], int(a["hdeg"]), int(a["adeg"]), a.get("label", ""))
            for a in doc["arrows"]
        )
        return GradedQuiver(tuple(doc["vertices"]), arrows)
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed quiver document: {exc}") from exc


def element_to_json(el: AlgebraElement) -> list[dict]:
    return [
        {"start": p.start, "path": list(p.arrows), "coeff": str(c)}
        for p, c in el.sorted_terms()
    ]


def element_from_json(quiver: GradedQuiver, doc: list) -> AlgebraElement:
    terms = {}
    try:
        for t in doc:
            p = Path(t["start"], tuple(t["path"]))
            if not quiver.is_valid_path(p):
                raise InvalidInputError(f"invalid path in element: {t}")
            terms[p] = terms.get(p, Fraction(0)) + Fraction(t["coeff"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed element document: {exc}") from exc
    return AlgebraElement(quiver, terms)


def differential_to_json(d: Differential) -> dict:
    return {
        name: element_to_json(el)
        for name, el in sorted(d.on_arrows.items())
        if el
    }


def differential_from_json(quiver: GradedQuiver, doc: dict) -> Differential:
    return Differential(quiver, {name: element_from_json(quiver, el) for name, el in doc.items()})


def _jsonable(value):
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def model_to_json(m: DGModel) -> dict:
    return {
        "quiver": quiver_to_json(m.quiver),
        "differential": differential_to_json(m.differential),
        "provenance": m.provenance,
        "metadata": _jsonable(dict(m.metadata)),
    }


def model_from_json(doc: dict) -> DGModel:
    q = quiver_from_json(doc["quiver"])
    d = differential_from_json(q, doc.get("differential", {}))
    return DGModel(q, d, doc.get("provenance", "general"), doc.get("metadata", {}))


def presentation_to_json(p: PresentedAlgebra) -> dict:
    return {
        "quiver": quiver_to_json(p.quiver),
        "relators": [element_to_json(r) for r in p.relators],
    }


def presentation_from_json(doc: dict) -> PresentedAlgebra:
    q = quiver_from_json(doc["quiver"])
    return PresentedAlgebra(q, tuple(element_from_json(q, r) for r in doc.get("relators", [])))


def potential_to_json(w: Superpotential) -> list[dict]:
    return [
        {"coeff": str(c), "cycle": list(p.arrows)}
        for p, c in sorted(w.terms.items(), key=lambda t: t[0].sort_key())
    ]


def potential_from_json(quiver: GradedQuiver, doc: list) -> Superpotential:
    terms = {}
    try:
        for t in doc:
            cycle = tuple(t["cycle"])
            if not cycle:
                raise InvalidInputError("empty cycle in potential")
            p = Path(quiver.arrow(cycle[0]).source, cycle)
            terms[p] = terms.get(p, Fraction(0)) + Fraction(t["coeff"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed potential document: {exc}") from exc
    return Superpotential(quiver, terms)
