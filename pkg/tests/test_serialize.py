import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittquot.autgrp import random_autom
from wittquot.derlie import Derivation
from wittquot.ffield import field
from wittquot.invariants import phi_vector
from wittquot.serialize import (
    ElementFormatError,
    autom_from_json,
    autom_to_json,
    derivation_from_json,
    derivation_to_json,
    invariant_to_json,
    load_element,
    poly_from_json,
    poly_to_json,
    scalar_from_json,
    scalar_to_json,
    slice_from_json,
    slice_to_json,
)
from wittquot.slices import SliceElement, delta_eps, random_omega_params
from wittquot.truncpoly import ambient

seeds = st.integers(0, 2**32 - 1)
B2, B3 = ambient(5, 2), ambient(5, 3)


def _roundtrip(obj):
    return json.loads(json.dumps(obj))


def test_poly_form_and_trailing_zeros():
    f = B2.var(2)
    assert poly_to_json(f) == {"p": 5, "n": 2, "coeffs": [0, 0, 0, 0, 0, 1]}
    assert poly_to_json(B2.zero())["coeffs"] == []
    assert poly_from_json({"p": 5, "n": 2, "coeffs": [0, 0, 0, 0, 0, 1, 0, 0]}) == f


@pytest.mark.parametrize("m", [1, 2])
@given(seed=seeds)
def test_derivation_roundtrip(m, seed):
    amb = ambient(5, 2, m)
    x = Derivation.random(amb, np.random.default_rng(seed))
    assert derivation_from_json(_roundtrip(derivation_to_json(x))) == x


def test_extension_scalars_are_digit_lists():
    F = field(5, 2)
    assert scalar_to_json(F, 7) == [2, 1]
    assert scalar_from_json(F, [2, 1]) == 7
    assert scalar_from_json(F, [3]) == 3
    with pytest.raises(ElementFormatError):
        scalar_from_json(F, 7)
    with pytest.raises(ElementFormatError):
        scalar_from_json(field(5), [1])


def test_derivation_algebra_tag():
    doc = derivation_to_json(Derivation.partial(B3, 1), "S")
    assert doc["algebra"] == "S" and doc["type"] == "derivation"


def test_automorphism_roundtrip():
    g = random_autom(B2, 3)
    doc = _roundtrip(autom_to_json(g))
    assert doc["type"] == "automorphism"
    assert autom_from_json(doc) == g


def test_slice_roundtrip(rng):
    el = SliceElement("omega", (1, 2), B3, tuple(random_omega_params(B3, rng)))
    doc = _roundtrip(slice_to_json(el))
    assert doc["kind"] == "omega" and doc["eps"] == [1, 2] and len(doc["f"]) == 2
    back = slice_from_json(doc)
    assert back.realize() == el.realize()
    d = slice_from_json({"kind": "delta_eps", "p": 5, "n": 2, "eps": [3, 4]})
    assert d.realize() == delta_eps((3, 4), B2)


def test_invariant_vector_form():
    assert invariant_to_json(phi_vector(delta_eps((1, 2), B2))) == {"algebra": "W", "values": [1, 2]}


@pytest.mark.parametrize(
    "text",
    [
        '{"type": "derivation", "p": 5,',
        "[1, 2]",
        '{"type": "derivation", "p": 5, "n": 2, "comps": [{"coeffs": []}]}',
        '{"type": "derivation", "p": 4, "n": 2, "comps": [{"coeffs": []}, {"coeffs": []}]}',
        '{"type": "derivation", "p": 5, "n": 1, "comps": [{"coeffs": [1, 2, 3, 4, 0, 1]}]}',
        '{"kind": "omega", "p": 5, "n": 3, "eps": [1, 2], "f": [{"coeffs": [0, 1]}, {"coeffs": []}]}',
        '{"kind": "delta_eps", "p": 5, "n": 2, "eps": [1]}',
        '{"something": 1}',
    ],
    ids=["truncated", "not-object", "arity", "p-not-prime", "too-many-coeffs", "omega-bad-f", "eps-arity", "unknown"],
)
def test_load_element_errors(text):
    with pytest.raises(ElementFormatError):
        load_element(text)


def test_parse_error_reports_position():
    with pytest.raises(ElementFormatError, match="line 2 column"):
        load_element('{"type": "derivation",\n  p: 5}')
