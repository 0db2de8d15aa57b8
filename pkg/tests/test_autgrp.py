import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittquot.autgrp import (
    act,
    bukong_degeneration,
    compose,
    identity_autom,
    is_special,
    jacobian_det,
    limit_as_sigma_source,
    make_autom,
    random_autom,
    scale_autom,
    swap_autom,
)
from wittquot.derlie import Derivation, bracket, p_power
from wittquot.errors import AmbientMismatch
from wittquot.invariants import quotient_s
from wittquot.special import Membership, dij_generator, sigma_embed, sn_context
from wittquot.truncpoly import ambient, set_last_zero

seeds = st.integers(0, 2**32 - 1)
B2, B3 = ambient(5, 2), ambient(5, 3)


def test_identity_acts_trivially(rng):
    g = identity_autom(B2)
    x = Derivation.random(B2, rng)
    assert act(g, x) == x
    assert is_special(g) and jacobian_det(g) == B2.one()


def test_inverse_example():
    x1, x2 = B2.var(1), B2.var(2)
    g = make_autom([x1 + x2 * x2, x2])
    assert g.inverse_images == [x1 - x2 * x2, x2]
    assert compose(g, g.inverse()) == identity_autom(B2)
    assert compose(g.inverse(), g) == identity_autom(B2)


def test_make_autom_errors():
    x1, x2 = B2.var(1), B2.var(2)
    with pytest.raises(ValueError, match="singular"):
        make_autom([x1 * x1, x2])
    with pytest.raises(ValueError, match="constant"):
        make_autom([x1 + B2.one(), x2])
    with pytest.raises(AmbientMismatch):
        make_autom([x1])


def test_is_special_examples():
    x1, x2 = B2.var(1), B2.var(2)
    tau = scale_autom(B2, 2, 3)
    assert is_special(tau) and jacobian_det(tau) == B2.const(3)
    g = make_autom([x1 + x1 * x2, x2])
    assert jacobian_det(g) == B2.one() + x2
    assert not is_special(g)


def test_scaling_fixes_euler_derivation():
    tau = scale_autom(B2, 2, 2)
    x2D2 = Derivation.term(B2.var(2), 2)
    assert act(tau, x2D2) == x2D2


@pytest.mark.parametrize("special", [False, True])
@given(seed=seeds)
def test_random_autom_validates_and_is_deterministic(special, seed):
    g = random_autom(B2, seed, special=special)
    assert random_autom(B2, seed, special=special) == g
    xs = [B2.var(i) for i in (1, 2)]
    assert [g(h) for h in g.inverse_images] == xs
    if special:
        assert is_special(g)


def test_linear_sl_map_is_special():
    g = make_autom([B2.var(1) + B2.var(2).scale(3), B2.var(2)])
    assert is_special(g)
    assert is_special(random_autom(B2, 4, depth=1, special=True))


@given(seed=seeds)
def test_group_action(seed):
    rng = np.random.default_rng(seed)
    g, h = random_autom(B2, rng), random_autom(B2, rng)
    x = Derivation.random(B2, rng)
    assert act(compose(g, h), x) == act(g, act(h, x))


@pytest.mark.parametrize("amb", [B2, B3], ids=["W2", "W3"])
@given(seed=seeds)
def test_action_preserves_restricted_structure(amb, seed):
    rng = np.random.default_rng(seed)
    g = random_autom(amb, rng)
    x, y = Derivation.random(amb, rng), Derivation.random(amb, rng)
    assert act(g, bracket(x, y)) == bracket(act(g, x), act(g, y))
    assert act(g, p_power(x)) == p_power(act(g, x))


@given(seed=seeds)
def test_special_automorphisms_preserve_s3(seed):
    rng = np.random.default_rng(seed)
    g = random_autom(B3, rng, special=True)
    ctx = sn_context(B3)
    assert ctx.contains(act(g, ctx.random_element(rng))) is Membership.IN_S


def test_non_special_automorphism_can_leave_s_n():
    g = make_autom([B2.var(1) + B2.var(1) * B2.var(2), B2.var(2)])
    ctx = sn_context(B2)
    images = [ctx.contains(act(g, x)) for x in ctx.basis()]
    assert any(m is not Membership.IN_S for m in images)


# -- degeneration ------------------------------------------------------------------


def _bukong_element(rng):
    x3 = B3.var(3)
    return dij_generator(1, 2, B3.random(rng)) + dij_generator(1, 3, x3 * B3.random(rng)) + dij_generator(2, 3, x3 * B3.random(rng))


def test_degeneration_without_dn_component(rng):
    u = B3.random(rng)
    x = dij_generator(1, 2, u)
    fam, limit = bukong_degeneration(x)
    small = ambient(5, 2)
    want = sigma_embed(Derivation.from_polys([set_last_zero(f, small) for f in x.polys()[:2]]), B3)
    assert limit == want
    assert limit_as_sigma_source(limit) == Derivation.from_polys([set_last_zero(f, small) for f in x.polys()[:2]])


def test_degeneration_family_matches_torus_action(rng):
    x = _bukong_element(rng)
    deg = bukong_degeneration(x, 3)
    for c in range(1, 5):
        assert deg.family(c) == act(scale_autom(B3, 3, c), x)


def test_degeneration_quotient_constant_and_limit(rng):
    x = _bukong_element(rng)
    ctx = sn_context(B3)
    assert ctx.contains(x) is Membership.IN_S
    deg = bukong_degeneration(x)
    assert deg.axis == 3
    q = quotient_s(x)
    assert all(quotient_s(deg.family(c)) == q for c in range(1, 5))
    assert ctx.contains(deg.limit) is Membership.IN_S
    assert quotient_s(deg.limit) == q


def test_degeneration_swaps_axis(rng):
    x = act(swap_autom(B3, 1, 3), _bukong_element(rng))
    deg = bukong_degeneration(x, 1)
    assert deg.normalized == act(swap_autom(B3, 1, 3), x)
    assert quotient_s(deg.limit) == quotient_s(x)


def test_degeneration_requires_divisibility():
    x = Derivation.partial(B3, 1) + Derivation.partial(B3, 2) + Derivation.partial(B3, 3)
    with pytest.raises(ValueError):
        bukong_degeneration(x)
    with pytest.raises(ValueError):
        bukong_degeneration(Derivation.partial(B3, 3), 3)
