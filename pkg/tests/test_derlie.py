import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittquot import linalg
from wittquot.derlie import (
    Derivation,
    ad_matrix,
    apply_derivation,
    basis_element,
    bracket,
    centralizer_dim,
    constants_dim,
    constants_subring,
    derivation_from_operator,
    dim_w,
    divergence,
    filtration_degree,
    p_power,
    rho_matrix,
)
from wittquot.errors import AmbientMismatch
from wittquot.slices import delta, delta_eps
from wittquot.special import dij_generator
from wittquot.truncpoly import ambient

seeds = st.integers(0, 2**32 - 1)
B2 = ambient(5, 2)


def _pair(seed, amb=B2):
    rng = np.random.default_rng(seed)
    return Derivation.random(amb, rng), Derivation.random(amb, rng), rng


def test_apply_examples(B1, B2):
    x1 = B2.var(1)
    assert apply_derivation(Derivation.term(x1, 1), x1**3) == (x1**3).scale(3)
    assert apply_derivation(Derivation.partial(B2, 1), B2.const(4)).is_zero()
    y = Derivation.term(B1.one() + B1.var(1), 1)
    assert apply_derivation(y, B1.var(1)) == B1.one() + B1.var(1)


@given(seed=seeds)
def test_leibniz(seed):
    x, _, rng = _pair(seed)
    f, g = B2.random(rng), B2.random(rng)
    assert x(f * g) == f * x(g) + g * x(f)


def test_bracket_examples():
    D1 = Derivation.partial(B2, 1)
    x1, x2 = B2.var(1), B2.var(2)
    assert bracket(D1, Derivation.term(x1, 1)) == D1
    assert bracket(Derivation.term(x1, 2), Derivation.term(x2, 1)) == Derivation.term(x1, 1) - Derivation.term(x2, 2)
    x = Derivation.random(B2, np.random.default_rng(0))
    assert bracket(x, x).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
@given(seed=seeds)
def test_bracket_is_operator_commutator(n, seed):
    x, y, _ = _pair(seed, ambient(5, n))
    F = x.F
    Rx, Ry = rho_matrix(x), rho_matrix(y)
    assert np.array_equal(rho_matrix(bracket(x, y)), F.sub(F.dot(Rx, Ry), F.dot(Ry, Rx)))


@given(seed=seeds)
def test_jacobi(seed):
    x, y, rng = _pair(seed)
    z = Derivation.random(B2, rng)
    total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert total.is_zero()


def test_p_power_examples(B1):
    assert p_power(Derivation.partial(B2, 1)).is_zero()
    e = Derivation.term(B2.var(1), 1)
    assert p_power(e) == e
    y = Derivation.term(B1.one() + B1.var(1), 1)
    assert p_power(y) == y


@pytest.mark.parametrize("n", [2, 3])
@given(seed=seeds)
def test_restrictedness(n, seed):
    x, _, _ = _pair(seed, ambient(5, n))
    F = x.F
    xp = p_power(x)
    assert np.array_equal(rho_matrix(xp), linalg.mat_power(F, rho_matrix(x), 5))
    if n == 2:
        assert np.array_equal(ad_matrix(xp), linalg.mat_power(F, ad_matrix(x), 5))


def test_divergence_examples(rng):
    assert divergence(Derivation.term(B2.var(1), 1)) == B2.one()
    assert divergence(dij_generator(1, 2, B2.random(rng))).is_zero()
    assert divergence(delta(ambient(5, 3))).is_zero()


def test_rho_examples(B1, rng):
    assert not rho_matrix(Derivation.zero(B2)).any()
    assert np.array_equal(rho_matrix(Derivation.term(B1.var(1), 1)), np.diag(np.arange(5)))


@given(seed=seeds)
def test_ad_matrix_columns_are_brackets(seed):
    x, y, _ = _pair(seed)
    assert np.array_equal(x.F.dot(ad_matrix(x), y.vector()), bracket(x, y).vector())


def test_constants_examples(B3):
    assert constants_dim(Derivation.partial(B3, 1)) == 25
    basis = constants_subring(Derivation.partial(B3, 1))
    assert all(not np.any(B3.exps[np.flatnonzero(f.coeffs), 0]) for f in basis)
    assert constants_dim(delta_eps((1, 3), B2)) == 1
    assert constants_dim(Derivation.zero(B2)) == 25


@given(seed=seeds)
def test_constants_contain_scalars(seed):
    x, _, _ = _pair(seed)
    K = np.stack([f.coeffs for f in constants_subring(x)])
    assert linalg.rank(x.F, np.vstack([K, B2.one().coeffs])) == len(K)


def test_centralizer_examples():
    assert centralizer_dim(Derivation.zero(B2)) == 50
    assert centralizer_dim(delta_eps((2, 1), B2)) == 2
    assert centralizer_dim(Derivation.partial(B2, 1)) > 2


@given(seed=seeds)
def test_centralizer_at_least_n(seed):
    x, _, _ = _pair(seed)
    assert centralizer_dim(x) >= 2


def test_filtration_examples():
    assert filtration_degree(Derivation.partial(B2, 1)) == -1
    assert filtration_degree(Derivation.term(B2.var(1), 1)) == 0
    assert filtration_degree(basis_element(B2, (4, 4), 1)) == 2 * 4 - 1
    with pytest.raises(ValueError):
        filtration_degree(Derivation.zero(B2))


@given(seed=seeds, i=st.integers(-1, 3), j=st.integers(-1, 3))
def test_filtration_bracket(seed, i, j):
    rng = np.random.default_rng(seed)
    x, y = Derivation.random(B2, rng, i), Derivation.random(B2, rng, j)
    z = bracket(x, y)
    assert z.is_zero() or filtration_degree(z) >= i + j


def test_orbit_tangent_bounded_by_group_dimension(rng):
    x = Derivation.random(B2, rng)
    from wittquot.slices import filtration_zero_indices

    cols = filtration_zero_indices(B2)
    assert len(cols) == dim_w(5, 2) - 2
    assert linalg.rank(B2.F, ad_matrix(x)[:, cols]) <= dim_w(5, 2) - 2


def test_derivation_from_operator_roundtrip(rng):
    x = Derivation.random(B2, rng)
    assert derivation_from_operator(B2, rho_matrix(x)) == x


def test_ambient_mismatch_raises(B3):
    with pytest.raises(AmbientMismatch):
        bracket(Derivation.partial(B2, 1), Derivation.partial(B3, 1))
    with pytest.raises(AmbientMismatch):
        apply_derivation(Derivation.partial(B2, 1), B3.var(1))
