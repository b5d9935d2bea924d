"""JSON encodings for fields, elements, codes, forms, bases and reports.

Every ``*_to_json`` has a matching ``*_from_json`` that validates its
input and rebuilds an equal object.  Output is plain ``dict``/``list``
data; :func:`dumps` fixes key order and spacing so that identical objects
always serialize to identical bytes.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import DimensionMismatch, InputError
from .gf import FieldElement, FieldTower, tower_from_json
from .linalg import Matrix
from .rankcodes import BilinearFormSpec, DelsarteCode, GabidulinCode, LBasis


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def _require(obj, keys: tuple[str, ...], what: str) -> None:
    if not isinstance(obj, dict):
        raise InputError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise InputError(f"{what} is missing {', '.join(missing)}")


# fields and elements -------------------------------------------------------

def field_to_json(tower: FieldTower) -> dict:
    return tower.to_json()


def field_from_json(obj) -> FieldTower:
    _require(obj, ("p", "m"), "field description")
    return tower_from_json(obj)


def element_to_json(x: FieldElement):
    return x.to_json()


def element_from_json(tower: FieldTower, obj, level: str = "top") -> FieldElement:
    K = tower.level(level)
    if isinstance(obj, bool):
        raise InputError("booleans are not field elements")
    return K(obj)


# codes ---------------------------------------------------------------------

def code_to_json(C: GabidulinCode) -> dict:
    return {"field": C.tower.to_json(), "n": C.n, "generators": C.G.to_json()}


def code_from_json(obj) -> GabidulinCode:
    _require(obj, ("field", "n", "generators"), "code")
    tower = field_from_json(obj["field"])
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise InputError("n must be a positive integer")
    gens = obj["generators"]
    if not isinstance(gens, list):
        raise InputError("generators must be a list of vectors")
    if any(not isinstance(g, list) or len(g) != n for g in gens):
        raise DimensionMismatch(f"every generator must have length {n}")
    return GabidulinCode.from_rows(tower, [[tower.top(x) for x in g] for g in gens], n)


def delsarte_to_json(D: DelsarteCode, tower: FieldTower) -> dict:
    return {"field": tower.to_json(), "m": D.m, "n": D.n,
            "basis": [M.to_json() for M in D.basis]}


def delsarte_from_json(obj) -> tuple[DelsarteCode, FieldTower]:
    """The code over the base level of the described tower, and the tower."""
    _require(obj, ("field", "m", "n", "basis"), "Delsarte code")
    tower = field_from_json(obj["field"])
    m, n = obj["m"], obj["n"]
    if not all(isinstance(v, int) and v >= 1 for v in (m, n)):
        raise InputError("m and n must be positive integers")
    F = tower.base
    mats = []
    for M in obj["basis"]:
        if not isinstance(M, list) or len(M) != m or any(not isinstance(r, list) or len(r) != n for r in M):
            raise DimensionMismatch(f"basis matrices must be {m} x {n}")
        mats.append(Matrix.from_json(F, M, n))
    return DelsarteCode(F, m, n, mats), tower


def is_delsarte_json(obj) -> bool:
    return isinstance(obj, dict) and "basis" in obj and "m" in obj


# forms ---------------------------------------------------------------------

def form_to_json(form: BilinearFormSpec) -> dict:
    if form.tag == "custom":
        return {"tag": "custom", "B": form.B.to_json()}
    return {"tag": form.tag}


def form_from_json(obj, tower: FieldTower, n: int) -> BilinearFormSpec:
    _require(obj, ("tag",), "form")
    tag = obj["tag"]
    F = tower.base
    if tag == "identity":
        return BilinearFormSpec.identity(F, n)
    if tag == "hyperbolic":
        return BilinearFormSpec.hyperbolic(F, n)
    if tag == "custom":
        _require(obj, ("B",), "custom form")
        B = obj["B"]
        if not isinstance(B, list) or len(B) != n:
            raise DimensionMismatch(f"custom form must be {n} x {n}")
        return BilinearFormSpec.custom(Matrix.from_json(F, B, n))
    raise InputError(f"unknown form tag {tag!r}")


# bases ---------------------------------------------------------------------

def basis_to_json(alpha: LBasis, lam: FieldElement | None = None) -> dict:
    out = {"field": alpha.tower.to_json(), "basis": [a.to_json() for a in alpha.alpha]}
    if lam is not None:
        out["lambda"] = lam.to_json()
    return out


def basis_from_json(obj) -> tuple[LBasis, FieldElement | None]:
    _require(obj, ("field", "basis"), "basis")
    tower = field_from_json(obj["field"])
    alpha = LBasis(tower, [tower.top(x) for x in obj["basis"]])
    lam = tower.top(obj["lambda"]) if "lambda" in obj else None
    return alpha, lam
