"""Automorphisms of B_n and their action on W_n and S_n."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import linalg
from .derlie import Derivation, apply_derivation, divergence
from .errors import AmbientMismatch, InvariantViolation
from .special import sigma_inverse
from .truncpoly import Ambient, TruncPoly, partial_derivative, poly_mul


def substitution_matrix(images: list[TruncPoly]) -> np.ndarray:
    """Matrix of ``f -> f(images)`` on the monomial basis."""
    amb = images[0].amb
    F = amb.F
    S = F.zeros((amb.size, amb.size))
    S[0, 0] = 1
    mults = [amb.mult_matrix(g) for g in images]
    for k in range(1, amb.size):
        i = int(np.flatnonzero(amb.exps[k])[0])
        S[:, k] = F.dot(mults[i], S[:, k - amb.radix[i]])
    return S


def _linear_part(images: list[TruncPoly]) -> np.ndarray:
    amb = images[0].amb
    cols = [amb.index([1 if k == j else 0 for k in range(amb.n)]) for j in range(amb.n)]
    return np.array([[g.coeffs[c] for c in cols] for g in images], dtype=np.int64)


class Automorphism:
    """Algebra automorphism of B_n given by the images of ``x_1..x_n``.

    Build with :func:`make_autom`, which validates and caches the inverse.
    """

    def __init__(self, images: list[TruncPoly], inverse_images: list[TruncPoly]):
        self.images = list(images)
        self.inverse_images = list(inverse_images)
        self.amb: Ambient = images[0].amb
        self._subst = None

    def __repr__(self):
        return "Automorphism(" + ", ".join(f"x{i + 1} -> {g!r}" for i, g in enumerate(self.images)) + ")"

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.images == other.images

    def __hash__(self):
        return hash(tuple(self.images))

    @property
    def matrix(self) -> np.ndarray:
        if self._subst is None:
            self._subst = substitution_matrix(self.images)
        return self._subst

    def __call__(self, f: TruncPoly) -> TruncPoly:
        if f.amb is not self.amb:
            raise AmbientMismatch(f"{f.amb!r} vs {self.amb!r}")
        return TruncPoly(self.amb, self.amb.F.dot(self.matrix, f.coeffs))

    def inverse(self) -> "Automorphism":
        return Automorphism(self.inverse_images, self.images)

    def linear_part(self) -> np.ndarray:
        return _linear_part(self.images)


def _invert(images: list[TruncPoly]) -> list[TruncPoly]:
    amb = images[0].amb
    F = amb.F
    L = _linear_part(images)
    Linv = _matrix_inverse(F, L)
    lin = [sum((amb.var(j + 1).scale(L[i, j]) for j in range(amb.n)), amb.zero()) for i in range(amb.n)]
    higher = [g - l for g, l in zip(images, lin)]
    xs = [amb.var(i + 1) for i in range(amb.n)]

    def combine(polys):
        return [sum((polys[i].scale(Linv[j, i]) for i in range(amb.n)), amb.zero()) for j in range(amb.n)]

    b = combine(xs)
    # each round fixes one more degree, and m^{n(p-1)+1} = 0
    for _ in range(amb.n * (amb.p - 1) + 1):
        S = substitution_matrix(b)
        hb = [TruncPoly(amb, F.dot(S, h.coeffs)) for h in higher]
        nb = combine([x - h for x, h in zip(xs, hb)])
        if nb == b:
            return b
        b = nb
    raise InvariantViolation("inverse iteration did not stabilise")


def _matrix_inverse(F, L: np.ndarray) -> np.ndarray:
    n = L.shape[0]
    R, piv = linalg.rref(F, np.concatenate([L, F.eye(n)], axis=1))
    if len(piv) < n or piv[:n] != list(range(n)):
        raise ValueError("linear part is singular")
    return R[:, n:]


def make_autom(images) -> Automorphism:
    """Validate images of the generators and build the automorphism with its inverse."""
    images = list(images)
    if not images:
        raise ValueError("need the images of x_1..x_n")
    amb = images[0].amb
    if len(images) != amb.n or any(g.amb is not amb for g in images):
        raise AmbientMismatch("need exactly n images in one ring")
    if any(not g.in_max_ideal() for g in images):
        raise ValueError("images must lie in the maximal ideal (zero constant term)")
    if linalg.rank(amb.F, _linear_part(images)) < amb.n:
        raise ValueError("linear part is singular")
    inv = _invert(images)
    g = Automorphism(images, inv)
    xs = [amb.var(i + 1) for i in range(amb.n)]
    back = Automorphism(inv, images)
    if [g(h) for h in inv] != xs or [back(h) for h in images] != xs:
        raise InvariantViolation("computed inverse does not round-trip")
    return g


def identity_autom(amb: Ambient) -> Automorphism:
    return make_autom([amb.var(i + 1) for i in range(amb.n)])


def compose(g: Automorphism, h: Automorphism) -> Automorphism:
    """``g ∘ h`` as algebra maps: ``x_i -> g(h(x_i))``."""
    return Automorphism([g(f) for f in h.images], [h.inverse()(f) for f in g.inverse_images])


def act(g: Automorphism, D: Derivation) -> Derivation:
    """``g(D) = φ ∘ D ∘ φ^{-1}``: component i is ``φ(D(φ^{-1}(x_i)))``."""
    if D.amb is not g.amb:
        raise AmbientMismatch(f"{D.amb!r} vs {g.amb!r}")
    return Derivation.from_polys([g(apply_derivation(D, b)) for b in g.inverse_images])


def jacobian_det(g: Automorphism) -> TruncPoly:
    """``det(∂_i φ(x_j))`` computed in B_n by permutation expansion."""
    amb = g.amb
    n = amb.n
    J = [[partial_derivative(g.images[j], i + 1) for j in range(n)] for i in range(n)]
    det = amb.zero()
    for perm in itertools.permutations(range(n)):
        sign = 1
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b]:
                    sign = -sign
        term = amb.one()
        for i in range(n):
            term = poly_mul(term, J[i][perm[i]])
        det = det + term if sign > 0 else det - term
    return det


def is_special(g: Automorphism) -> bool:
    det = jacobian_det(g)
    return det.constant_term() != 0 and not det.coeffs[1:].any()


def scale_autom(amb: Ambient, axis: int, c) -> Automorphism:
    """``x_axis -> c x_axis``, other generators fixed."""
    imgs = [amb.var(i + 1) for i in range(amb.n)]
    imgs[axis - 1] = imgs[axis - 1].scale(c)
    return make_autom(imgs)


def swap_autom(amb: Ambient, i: int, j: int) -> Automorphism:
    imgs = [amb.var(k + 1) for k in range(amb.n)]
    imgs[i - 1], imgs[j - 1] = imgs[j - 1], imgs[i - 1]
    return make_autom(imgs)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_autom(amb: Ambient, seed, depth: int = 2, special: bool = False, budget: int = 100) -> Automorphism:
    """Random automorphism with an invertible linear part and terms of degree 2..depth.

    With ``special=True`` the map is a linear map composed with elementary
    substitutions ``x_i -> x_i + h_i(other variables)``; each of those has
    Jacobian determinant ``1 + ∂_i h_i = 1``, so the composite has the
    constant Jacobian determinant ``det L``.
    Deterministic in ``seed`` (an int or a numpy Generator).
    """
    rng = _rng(seed)
    F = amb.F
    for _ in range(budget):
        L = F.random(rng, (amb.n, amb.n))
        if linalg.rank(F, L) == amb.n:
            break
    else:
        raise RuntimeError("could not sample an invertible linear part within budget")
    xs = [amb.var(i + 1) for i in range(amb.n)]
    lin = [sum((xs[j].scale(L[i, j]) for j in range(amb.n)), amb.zero()) for i in range(amb.n)]
    if not special:
        imgs = [g + amb.random(rng, 2, depth) if depth >= 2 else g for g in lin]
        return make_autom(imgs)
    g = make_autom(lin)
    if depth >= 2:
        for i in range(amb.n):
            h = amb.random(rng, 2, depth)
            # h_i must not involve x_i
            h = TruncPoly(amb, np.where(amb.exps[:, i] == 0, h.coeffs, 0))
            imgs = list(xs)
            imgs[i] = xs[i] + h
            g = compose(g, make_autom(imgs))
    if not is_special(g):
        raise InvariantViolation("triangular construction produced a non-special automorphism")
    return g


# -- degeneration along the torus x_n -> c x_n ------------------------------


@dataclass
class Degeneration:
    """Family ``c -> g_c(x)`` and its value at ``c = 0``.

    ``normalized`` is ``x`` after swapping ``x_axis`` with ``x_n`` (the
    identity when ``axis == n``); the family is built from it.
    """

    family: Callable[[object], Derivation]
    limit: Derivation
    normalized: Derivation
    axis: int

    def __iter__(self):
        return iter((self.family, self.limit))


def divisible_by_var(f: TruncPoly, axis: int) -> bool:
    """True if every monomial of ``f`` contains ``x_axis``."""
    return not f.coeffs[f.amb.exps[:, axis - 1] == 0].any()


def bukong_degeneration(x: Derivation, axis: int | None = None) -> Degeneration:
    """Degenerate ``x = sum f_i D_i`` with ``x_axis | f_axis`` along ``x_n -> c x_n``.

    Returns the polynomial family ``g_c(x) = sum_{i<n} f_i(x', c x_n) D_i +
    sum_j f_{n,j}(x') c^{j-1} x_n^j D_n`` and its specialisation at ``c = 0``,
    which equals ``σ(Δ_1)`` with ``Δ_1 = sum_{i<n} f_i(x', 0) D_i``.
    """
    amb = x.amb
    n = amb.n
    if axis is None:
        axis = next((i for i in range(n, 0, -1) if divisible_by_var(x.comp(i), i)), None)
        if axis is None:
            raise ValueError("no axis i with x_i dividing the i-th component")
    elif not divisible_by_var(x.comp(axis), axis):
        raise ValueError(f"x_{axis} does not divide component {axis}")
    y = act(swap_autom(amb, axis, n), x) if axis != n else x
    if not divisible_by_var(y.comp(n), n):
        raise InvariantViolation("swap normalisation lost divisibility")
    F = amb.F
    e_n = amb.exps[:, n - 1]
    comps = y.comps

    def family(c) -> Derivation:
        c = int(c.value) if hasattr(c, "value") else int(F.asarray(c))
        pw = np.array([int(F.power(c, k)) for k in range(amb.p)], dtype=np.int64)
        out = comps.copy()
        out[: n - 1] = F.mul(comps[: n - 1], pw[e_n][None, :])
        shift = np.where(e_n >= 1, e_n - 1, 0)
        out[n - 1] = F.mul(comps[n - 1], pw[shift])
        return Derivation(amb, out)

    return Degeneration(family, family(0), y, axis)


def limit_as_sigma_source(limit: Derivation) -> Derivation:
    """``Δ_1`` in W_{n-1} such that ``limit == σ(Δ_1)`` when the divergence vanishes."""
    if not divergence(limit).is_zero():
        raise ValueError("limit is not divergence free")
    return sigma_inverse(limit)
