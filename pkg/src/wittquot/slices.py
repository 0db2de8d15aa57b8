"""Explicit slice elements: Δ, Δ_ε, the family Ω^ε, the kernel K, tangent checks.

Conventions: ``delta_eps`` lives in W_m with ``m = n - 1`` and ``ε`` has
``m`` entries; ``omega_element`` lives in S_n.  The top monomial
``x_1^{p-1} ... x_m^{p-1}`` carries the ε-coordinates with signs
``(-1)^{n-i}``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .derlie import Derivation, ad_matrix, rho_matrix
from .errors import InvariantViolation
from .special import Membership, embed_derivation, sigma_embed, sn_context, torus_tn
from .truncpoly import Ambient, TruncPoly, ambient_over, min_degree, partial_derivative


def _eps(amb: Ambient, eps, count: int) -> list[int]:
    eps = [int(amb.F.asarray(e.value if hasattr(e, "value") else e)) for e in eps]
    if len(eps) != count:
        raise ValueError(f"expected {count} ε-coordinates, got {len(eps)}")
    return eps


def top_monomial(amb: Ambient, upto: int | None = None, exponent: int | None = None) -> TruncPoly:
    """``x_1^e ... x_upto^e`` with ``e = p - 1`` by default."""
    upto = amb.n if upto is None else upto
    e = amb.p - 1 if exponent is None else exponent
    return amb.monomial([e] * upto + [0] * (amb.n - upto))


def delta(amb: Ambient) -> Derivation:
    """``Δ = D_1 + x_1^{p-1} D_2 + ... + x_1^{p-1}...x_{m-1}^{p-1} D_m`` in W_m."""
    x = Derivation.zero(amb)
    for i in range(1, amb.n + 1):
        x = x + Derivation.term(top_monomial(amb, i - 1), i)
    return x


def slice_sign(m: int, i: int) -> int:
    """``(-1)^{n-i}`` with ``n = m + 1``."""
    return -1 if (m + 1 - i) % 2 else 1


def slice_direction(amb: Ambient, i: int) -> Derivation:
    """``x_1^{p-1}...x_m^{p-1} D_i``."""
    return Derivation.term(top_monomial(amb), i)


def delta_eps(eps, amb: Ambient) -> Derivation:
    """``Δ_ε = Δ + x_1^{p-1}...x_m^{p-1} sum (-1)^{n-i} ε_i D_i`` in W_m, ``m = amb.n``."""
    m = amb.n
    e = _eps(amb, eps, m)
    x = delta(amb)
    for i in range(1, m + 1):
        x = x + slice_direction(amb, i).scale(slice_sign(m, i) * e[i - 1])
    return x


def slice_coordinates(x: Derivation):
    """Return ``ε`` if ``x == Δ_ε``, else ``None``."""
    amb = x.amb
    rest = x - delta(amb)
    top = amb.index([amb.p - 1] * amb.n)
    c = rest.comps
    mask = np.ones(amb.size, dtype=bool)
    mask[top] = False
    if c[:, mask].any():
        return None
    F = amb.F
    return tuple(int(F.mul(slice_sign(amb.n, i), c[i - 1, top])) for i in range(1, amb.n + 1))


# -- Ω^ε -----------------------------------------------------------------------


def k_element(amb: Ambient, coeffs) -> TruncPoly:
    """``a_0 + a_1 x_n + ... + a_{p-1} x_n^{p-1}``; ``coeffs`` may be shorter than p."""
    f = amb.zero()
    for j, a in enumerate(coeffs):
        f = f + amb.monomial([0] * (amb.n - 1) + [j], a)
    return f


def in_K(f: TruncPoly) -> bool:
    amb = f.amb
    return not f.coeffs[amb.exps[:, : amb.n - 1].sum(axis=1) > 0].any()


def omega_element(eps, fs, amb: Ambient) -> Derivation:
    """``Ω^ε_{f_1..f_{n-1}}`` in S_n (``amb`` is B_n, ``n >= 2``).

    Each ``f_i`` must lie in ``K`` (a polynomial in ``x_n`` alone) with
    ``min_degree(f_i) >= 2``.
    """
    n = amb.n
    if n < 2:
        raise ValueError("Ω^ε needs n >= 2")
    fs = list(fs)
    if len(fs) != n - 1:
        raise ValueError(f"expected {n - 1} polynomials f_i, got {len(fs)}")
    for f in fs:
        if f.amb is not amb or not in_K(f) or min_degree(f) < 2:
            raise ValueError("each f_i must be a polynomial in x_n with min_degree >= 2")
    small = ambient_over(amb.F, n - 1)
    x = sigma_embed(delta_eps(eps, small), amb)
    top = top_monomial(amb, n - 1)
    for i, f in enumerate(fs, start=1):
        x = x + Derivation.term(top * partial_derivative(f, n), i)
    low = top_monomial(amb, n - 1, amb.p - 2)
    acc = amb.zero()
    for i, f in enumerate(fs, start=1):
        term = f
        for j in range(1, n):
            if j != i:
                term = term * amb.var(j)
        acc = acc + term
    return x + Derivation.term(low * acc, n)


def omega_dimension(p: int, n: int) -> int:
    """Number of free parameters of Ω^ε: ``(n-1)(p-2)``."""
    return (n - 1) * (p - 2)


def random_omega_params(amb: Ambient, rng: np.random.Generator) -> list[TruncPoly]:
    return [k_element(amb, [0, 0] + list(amb.F.random(rng, amb.p - 2))) for _ in range(amb.n - 1)]


# -- K and the image of Δ on B_n ---------------------------------------------------


def kernel_K_and_image(amb: Ambient) -> tuple[list[TruncPoly], list[TruncPoly]]:
    """Bases of ``ker Δ = K`` and ``im Δ`` for Δ acting on B_n.

    The bases returned are the displayed ones (powers of ``x_n``; monomials
    whose first n-1 exponents are not all ``p-1``); both are validated
    against the kernel and column space of ``ρ(Δ)``.
    """
    F = amb.F
    small = ambient_over(F, amb.n - 1)
    D = embed_derivation(delta(small), amb)
    R = rho_matrix(D)
    rk, ker = linalg.rank_kernel(F, R)
    K = [amb.monomial([0] * (amb.n - 1) + [j]) for j in range(amb.p)]
    Kv = np.stack([f.coeffs for f in K])
    if len(ker) != len(K) or linalg.rank(F, np.concatenate([ker, Kv])) != len(K):
        raise InvariantViolation("kernel of Δ differs from K")
    top = np.all(amb.exps[:, : amb.n - 1] == amb.p - 1, axis=1)
    image = [TruncPoly(amb, np.eye(1, amb.size, k, dtype=np.int64)[0]) for k in np.flatnonzero(~top)]
    Iv = np.stack([f.coeffs for f in image])
    if rk != len(image) or linalg.rank(F, np.concatenate([R.T, Iv])) != rk:
        raise InvariantViolation("image of Δ differs from the displayed monomial span")
    return K, image


# -- tangent spaces at slice points ------------------------------------------------


@dataclass(frozen=True)
class TangentReport:
    orbit: int
    slice: int
    intersection: int
    total: int
    stabilizer_trivial: bool

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.orbit, self.slice, self.intersection, self.total)


def filtration_zero_indices(amb: Ambient) -> np.ndarray:
    """Canonical-basis indices spanning ``(W_n)_0`` (coefficients in the maximal ideal)."""
    pos = np.flatnonzero(amb.degrees >= 1)
    return np.concatenate([i * amb.size + pos for i in range(amb.n)])


def tangent_decomposition(x: Derivation, strict: bool = True) -> TangentReport:
    """Dimensions of ``[(W_m)_0, x]``, the slice directions, their intersection and sum.

    ``x`` must be some ``Δ_ε``.  With ``strict`` raises unless the sum is
    direct and fills W_m and ``ker ad(x) ∩ (W_m)_0 = 0``.
    """
    if slice_coordinates(x) is None:
        raise ValueError("element is not on the slice {Δ_ε}")
    amb = x.amb
    F = amb.F
    cols = filtration_zero_indices(amb)
    orbit_vecs = ad_matrix(x)[:, cols].T
    slice_vecs = np.stack([slice_direction(amb, i).vector() for i in range(1, amb.n + 1)])
    r_orbit = linalg.rank(F, orbit_vecs)
    r_slice = linalg.rank(F, slice_vecs)
    r_sum = linalg.rank(F, np.concatenate([orbit_vecs, slice_vecs]))
    rep = TangentReport(r_orbit, r_slice, r_orbit + r_slice - r_sum, r_sum, r_orbit == len(cols))
    if strict and (rep.intersection != 0 or rep.total != amb.n * amb.size or not rep.stabilizer_trivial):
        raise InvariantViolation(f"tangent decomposition fails at Δ_ε: {rep}")
    return rep


def check_slice_in_sn(eps, amb: Ambient) -> bool:
    """``σ(Δ_ε)`` lies in S_n."""
    small = ambient_over(amb.F, amb.n - 1)
    return sn_context(amb).contains(sigma_embed(delta_eps(eps, small), amb)) is Membership.IN_S


# -- parametrised slice elements ---------------------------------------------------


@dataclass(frozen=True)
class SliceElement:
    """A parametrised explicit element; ``realize`` builds the derivation.

    ``delta_eps``: Δ_ε in W_m (``amb`` is B_m, ``len(eps) == m``).
    ``omega``: Ω^ε_f in S_n (``amb`` is B_n, ``len(eps) == n - 1``).
    ``torus``: ``sum ε_i (x_i D_i - x_n D_n)`` in S_n.
    """

    kind: str
    eps: tuple[int, ...]
    amb: Ambient
    fs: tuple[TruncPoly, ...] = ()

    def realize(self) -> Derivation:
        if self.kind == "delta_eps":
            return delta_eps(self.eps, self.amb)
        if self.kind == "omega":
            return omega_element(self.eps, self.fs, self.amb)
        if self.kind == "torus":
            e = _eps(self.amb, self.eps, self.amb.n - 1)
            x = Derivation.zero(self.amb)
            for c, t in zip(e, torus_tn(self.amb)):
                x = x + t.scale(c)
            return x
        raise ValueError(f"unknown slice kind {self.kind!r}")
