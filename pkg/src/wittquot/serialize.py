"""JSON forms of scalars, polynomials, derivations, automorphisms, slices and invariants.

Scalars are decimal integers over F_p and base-p coefficient lists (low
first) over F_{p^m}.  Polynomial coefficients follow the mixed-radix
monomial order (``x_1`` fastest); trailing zeros may be omitted on input and
are stripped on output.
"""

from __future__ import annotations

import json

import numpy as np

from .autgrp import Automorphism, make_autom
from .derlie import Derivation
from .ffield import GF
from .invariants import InvariantVector
from .slices import SliceElement
from .truncpoly import Ambient, TruncPoly, ambient


class ElementFormatError(ValueError):
    """Malformed element JSON."""


# -- scalars -------------------------------------------------------------------


def scalar_to_json(F: GF, v):
    v = int(v)
    if F.m == 1:
        return v
    return [int(d) for d in F.to_digits(v)]


def scalar_from_json(F: GF, obj) -> int:
    if F.m == 1:
        if isinstance(obj, bool) or not isinstance(obj, int):
            raise ElementFormatError(f"expected an integer scalar, got {obj!r}")
        return int(F.asarray(obj))
    if not isinstance(obj, list) or len(obj) > F.m or not all(isinstance(d, int) for d in obj):
        raise ElementFormatError(f"expected at most {F.m} base-{F.p} digits, got {obj!r}")
    digits = [d % F.p for d in obj] + [0] * (F.m - len(obj))
    return int(F.from_digits(np.array(digits)))


# -- polynomials ---------------------------------------------------------------------


def _header(amb: Ambient) -> dict:
    h = {"p": amb.p, "n": amb.n}
    if amb.F.m > 1:
        h["m"] = amb.F.m
    return h


def _coeff_list(F: GF, coeffs: np.ndarray) -> list:
    nz = np.flatnonzero(coeffs)
    end = int(nz[-1]) + 1 if len(nz) else 0
    return [scalar_to_json(F, c) for c in coeffs[:end]]


def poly_to_json(f: TruncPoly) -> dict:
    return {**_header(f.amb), "coeffs": _coeff_list(f.F, f.coeffs)}


def _ambient_from(obj: dict) -> Ambient:
    try:
        p, n, m = int(obj["p"]), int(obj["n"]), int(obj.get("m", 1))
    except (KeyError, TypeError, ValueError) as e:
        raise ElementFormatError(f"missing or invalid p/n/m: {e}") from None
    try:
        return ambient(p, n, m)
    except ValueError as e:
        raise ElementFormatError(str(e)) from None


def _coeffs_from(amb: Ambient, coeffs) -> np.ndarray:
    if not isinstance(coeffs, list) or len(coeffs) > amb.size:
        raise ElementFormatError(f"coeffs must be a list of at most {amb.size} scalars")
    out = amb.F.zeros(amb.size)
    for k, c in enumerate(coeffs):
        out[k] = scalar_from_json(amb.F, c)
    return out


def poly_from_json(obj, amb: Ambient | None = None) -> TruncPoly:
    if not isinstance(obj, dict):
        raise ElementFormatError("a polynomial is a JSON object")
    if amb is None:
        amb = _ambient_from(obj)
    elif "p" in obj and _ambient_from(obj) is not amb:
        raise ElementFormatError("polynomial ring does not match the enclosing element")
    return TruncPoly(amb, _coeffs_from(amb, obj.get("coeffs", [])))


# -- derivations and automorphisms ------------------------------------------------


def derivation_to_json(x: Derivation, algebra: str | None = None) -> dict:
    out = {"type": "derivation", **_header(x.amb), "comps": [poly_to_json(f) for f in x.polys()]}
    if algebra is not None:
        out["algebra"] = algebra
    return out


def derivation_from_json(obj) -> Derivation:
    if not isinstance(obj, dict) or obj.get("type") != "derivation":
        raise ElementFormatError('expected {"type": "derivation", ...}')
    amb = _ambient_from(obj)
    comps = obj.get("comps")
    if not isinstance(comps, list) or len(comps) != amb.n:
        raise ElementFormatError(f"comps must list {amb.n} polynomials")
    return Derivation.from_polys([poly_from_json(c, amb) for c in comps])


def autom_to_json(g: Automorphism) -> dict:
    return {"type": "automorphism", **_header(g.amb), "images": [poly_to_json(f) for f in g.images]}


def autom_from_json(obj) -> Automorphism:
    if not isinstance(obj, dict) or obj.get("type") != "automorphism":
        raise ElementFormatError('expected {"type": "automorphism", ...}')
    images = obj.get("images")
    if not isinstance(images, list) or not images:
        raise ElementFormatError("images must be a nonempty list of polynomials")
    amb = _ambient_from(obj) if "p" in obj else _ambient_from(images[0])
    return make_autom([poly_from_json(f, amb) for f in images])


# -- slices and invariants ----------------------------------------------------------


def slice_to_json(el: SliceElement) -> dict:
    out = {"kind": el.kind, **_header(el.amb), "eps": [scalar_to_json(el.amb.F, e) for e in el.eps]}
    if el.kind == "omega":
        out["f"] = [poly_to_json(f) for f in el.fs]
    return out


def invariant_to_json(v: InvariantVector) -> dict:
    return {"algebra": v.algebra, "values": [scalar_to_json(v.F, a) for a in v.values]}


# -- element files -----------------------------------------------------------------


def load_element(text: str):
    """Parse an element document: a derivation, automorphism, polynomial or slice.

    Raises :class:`ElementFormatError` with line/column on malformed JSON.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ElementFormatError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(obj, dict):
        raise ElementFormatError("element document must be a JSON object")
    kind = obj.get("type")
    if kind == "derivation":
        return derivation_from_json(obj)
    if kind == "automorphism":
        return autom_from_json(obj)
    if "kind" in obj:
        return slice_from_json(obj).realize()
    if "coeffs" in obj:
        return poly_from_json(obj)
    raise ElementFormatError("unrecognised element document")


def slice_from_json(obj) -> SliceElement:
    """Parse ``{"kind", "p", "n", "eps", "f"?}``; ``n`` is the ambient rank of the element."""
    kind = obj.get("kind")
    if kind not in ("delta_eps", "omega", "torus"):
        raise ElementFormatError(f"unknown slice kind {kind!r}")
    amb = _ambient_from(obj)
    eps = obj.get("eps")
    want = amb.n if kind == "delta_eps" else amb.n - 1
    if not isinstance(eps, list) or len(eps) != want:
        raise ElementFormatError(f"{kind} in rank {amb.n} needs {want} ε-coordinates")
    eps = tuple(scalar_from_json(amb.F, e) for e in eps)
    fs = ()
    if kind == "omega":
        raw = obj.get("f")
        if not isinstance(raw, list) or len(raw) != want:
            raise ElementFormatError(f"omega needs {want} f polynomials")
        fs = tuple(poly_from_json(f, amb) for f in raw)
    el = SliceElement(kind, eps, amb, fs)
    try:
        el.realize()
    except ValueError as e:
        raise ElementFormatError(str(e)) from None
    return el
