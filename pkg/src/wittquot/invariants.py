"""Invariants of W_n and S_n read off the characteristic polynomial of ρ(x).

For ``x`` in W_n the characteristic polynomial of ``ρ(x)`` on B_n has the
shape ``t^{p^n} - sum_{i<n} φ_i(x) t^{p^i}``.  Everything here is built on
that fact: the adjoint quotients, their differentials (through dual
numbers), the operators ``M_{ad x}`` and ``M_x``, and the regularity flags.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .derlie import (
    Derivation,
    ad_matrix,
    bracket,
    centralizer_dim,
    constants_dim,
    dependency,
    derivation_from_operator,
    p_power,
    p_power_iter,
    rho_matrix,
)
from .errors import InvariantViolation
from .ffield import GF
from .linalg import DualMatrix
from .special import Membership, sn_context
from .truncpoly import Ambient


@dataclass(frozen=True)
class InvariantVector:
    """Values of the adjoint quotient; ``algebra`` is ``"W"`` or ``"S"``."""

    values: tuple[int, ...]
    algebra: str
    F: GF

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __eq__(self, other):
        if isinstance(other, InvariantVector):
            return self.values == other.values and self.algebra == other.algebra and self.F is other.F
        if isinstance(other, (tuple, list)):
            return self.values == tuple(self.F.from_int(v) if self.F.m == 1 else v for v in other)
        return NotImplemented

    def __hash__(self):
        return hash((self.values, self.algebra))

    def is_zero(self) -> bool:
        return not any(self.values)


@dataclass(frozen=True)
class PPolynomial:
    """``t^{p^r} - sum_{i<r} coeffs[i] t^{p^i}``."""

    F: GF
    r: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.F.p**self.r

    def dense(self) -> np.ndarray:
        """Coefficients low degree first."""
        c = self.F.zeros(self.degree + 1)
        c[self.degree] = 1
        for i, a in enumerate(self.coeffs):
            c[self.F.p**i] = self.F.neg(a)
        return c

    def __repr__(self):
        p = self.F.p
        terms = [f"t^{p**self.r}"] + [f"- {a}*t^{p**i}" for i, a in enumerate(self.coeffs) if a]
        return " ".join(terms)


# -- characteristic polynomial ---------------------------------------------------


def _power_slots(amb: Ambient) -> list[int]:
    return [amb.p**i for i in range(amb.n)]


def _check_shape(amb: Ambient, c: np.ndarray, what: str) -> None:
    mask = np.ones(c.shape[-1], dtype=bool)
    mask[_power_slots(amb)] = False
    mask[-1] = False
    if c[..., mask].any():
        bad = [int(k) for k in np.flatnonzero(mask & np.any(c.reshape(-1, c.shape[-1]) != 0, axis=0))]
        raise InvariantViolation(f"{what} has nonzero coefficients at non-p-power degrees {bad[:5]}")


def rho_charpoly(x: Derivation) -> np.ndarray:
    return linalg.charpoly(x.F, rho_matrix(x))


def phi_values(x: Derivation) -> tuple[int, ...]:
    """``(φ_0(x), ..., φ_{n-1}(x))`` as field encodings."""
    c = rho_charpoly(x)
    _check_shape(x.amb, c, "char. polynomial of ρ(x)")
    return tuple(int(x.F.neg(c[k])) for k in _power_slots(x.amb))


def phi_vector(x: Derivation) -> InvariantVector:
    return InvariantVector(phi_values(x), "W", x.F)


quotient_w = phi_vector


def quotient_s(x: Derivation, check_membership: bool = True) -> InvariantVector:
    """``(φ_1^{1/p}(x), ..., φ_{n-1}^{1/p}(x))`` for ``x`` in S_n."""
    if check_membership and sn_context(x.amb).contains(x) is not Membership.IN_S:
        raise ValueError("quotient_s needs an element of S_n")
    phi = phi_values(x)
    if phi[0] != 0:
        raise InvariantViolation(f"φ_0 = {phi[0]} on an element of S_n; it must vanish there")
    F = x.F
    return InvariantVector(tuple(int(F.frobenius_root(v)) for v in phi[1:]), "S", x.F)


# -- p-power sequences -------------------------------------------------------


def p_power_sequence(x: Derivation, count: int) -> list[Derivation]:
    """``[x, x^[p], ..., x^[p^{count-1}]]``."""
    out = [x]
    for _ in range(count - 1):
        out.append(p_power(out[-1]))
    return out


def restricted_cayley_hamilton(x: Derivation) -> Derivation:
    """``x^[p^n] - sum φ_i(x) x^[p^i]``; zero by the p-polynomial identity."""
    seq = p_power_sequence(x, x.n + 1)
    out = seq[-1]
    for phi, y in zip(phi_values(x), seq):
        out = out - y.scale(phi)
    return out


def minimal_p_polynomial(x: Derivation) -> PPolynomial:
    """Least ``r`` with ``x^[p^r]`` in the span of ``x, ..., x^[p^{r-1}]``, with the dependency."""
    seq: list[Derivation] = []
    cur = x
    # the span lives in W_n, so r <= dim W_n
    for r in range(x.n * x.amb.size + 1):
        c = dependency(seq, cur)
        if c is not None:
            return PPolynomial(x.F, r, tuple(int(v) for v in c))
        seq.append(cur)
        cur = p_power(cur)
    raise InvariantViolation("p-power sequence never became dependent")


def is_nilpotent(x: Derivation) -> bool:
    """``x^[p^n] == 0``."""
    return p_power_iter(x, x.n).is_zero()


def is_semisimple(x: Derivation) -> bool:
    """``x`` lies in the span of ``x^[p], x^[p^2], ...``."""
    seq: list[Derivation] = []
    cur = p_power(x)
    while dependency(seq, cur) is None:
        seq.append(cur)
        cur = p_power(cur)
    return dependency(seq, x) is not None


def jordan_chevalley(x: Derivation, max_period: int = 100_000) -> tuple[Derivation, Derivation]:
    """``(x_s, x_n)`` with ``x = x_s + x_n``, commuting, semisimple and nilpotent parts.

    The semisimple part of ``A = ρ(x)`` is ``A^{p^k}`` for any ``k`` that is
    a multiple of the Frobenius period of its eigenvalues and has
    ``p^k >= dim B_n``; it is pulled back to W_n through the images of the
    generators and validated.
    """
    amb = x.amb
    F = amb.F
    A = rho_matrix(x)
    k0 = amb.n  # p^n == dim B_n kills the nilpotent part
    Y = A
    for _ in range(k0):
        Y = linalg.mat_power(F, Y, amb.p)
    orbit = [Y]
    for _ in range(max_period):
        Y = linalg.mat_power(F, Y, amb.p)
        if np.array_equal(Y, orbit[0]):
            break
        orbit.append(Y)
    else:
        raise InvariantViolation("Frobenius period not found")
    S = orbit[(-k0) % len(orbit)]
    xs = derivation_from_operator(amb, S)
    if not np.array_equal(rho_matrix(xs), S):
        raise InvariantViolation("semisimple part of ρ(x) is not a derivation")
    xn = x - xs
    if not bracket(xs, xn).is_zero() or not is_nilpotent(xn) or not is_semisimple(xs):
        raise InvariantViolation("Jordan-Chevalley validation failed")
    return xs, xn


# -- differentials -----------------------------------------------------------


def _dual_phi(amb: Ambient, real: np.ndarray, eps: np.ndarray) -> np.ndarray:
    F = amb.F
    _, ce = linalg.charpoly(F, DualMatrix(real, eps))
    _check_shape(amb, ce, "ε-part of the dual char. polynomial")
    return F.neg(ce[..., _power_slots(amb)])


def phi_differential(x: Derivation, y: Derivation) -> tuple[int, ...]:
    """``((dφ_0)_x(y), ..., (dφ_{n-1})_x(y))``: ε-parts of ``φ_i(x + εy)``."""
    x._same(y)
    d = _dual_phi(x.amb, rho_matrix(x), rho_matrix(y))
    return tuple(int(v) for v in d)


def basis_rho_stack(amb: Ambient) -> np.ndarray:
    """``ρ(x^α D_i)`` for the whole canonical basis, shape ``(n p^n, p^n, p^n)``."""
    F = amb.F
    s = amb.size
    out = F.zeros((amb.n * s, s, s))
    for i in range(1, amb.n + 1):
        D = amb.deriv_matrix(i)
        for k in range(s):
            # ρ(x^α D_i) = L_{x^α} ∂_i; L_{x^α} shifts row indices by idx(α)
            rows = np.flatnonzero(np.all(amb.exps + amb.exps[k] < amb.p, axis=1))
            out[(i - 1) * s + k, rows + k] = D[rows]
    return out


def differential_matrix(x: Derivation, directions: np.ndarray | None = None) -> np.ndarray:
    """Matrix ``(dφ_i)_x(e_b)``, rows ``i < n``, one column per direction.

    ``directions`` is a stack of ρ-matrices; defaults to the whole canonical
    basis of W_n.  Dual-number route, batched over directions.
    """
    amb = x.amb
    if directions is None:
        directions = basis_rho_stack(amb)
    d = _dual_phi(amb, rho_matrix(x), directions)
    return d.T


def m_adx_apply(x: Derivation, y: Derivation) -> Derivation:
    """``M_{ad x}(y) = (ad x)^{p^n-1}(y) - sum φ_i(x) (ad x)^{p^i-1}(y)``."""
    amb = x.amb
    F = amb.F
    phi = phi_values(x)
    A = ad_matrix(x)
    v = y.vector()
    stops = {amb.p**i - 1: i for i in range(amb.n + 1)}
    acc = F.zeros(v.shape)
    for k in range(amb.p**amb.n):
        if k in stops:
            i = stops[k]
            coef = 1 if i == amb.n else int(F.neg(phi[i]))
            acc = F.add(acc, F.mul(coef, v))
        v = F.dot(A, v)
    return Derivation.from_vector(amb, acc)


def lemma_for1_rhs(x: Derivation, dphi) -> Derivation:
    """``sum_i dphi[i] x^[p^i]``."""
    out = Derivation.zero(x.amb)
    for c, z in zip(dphi, p_power_sequence(x, x.n)):
        out = out + z.scale(c)
    return out


def _poly_in_operator(F: GF, M: np.ndarray, amb: Ambient, phi) -> np.ndarray:
    """``M^{p^n-1} - sum φ_i M^{p^i-1}``."""
    out = linalg.mat_power(F, M, amb.p**amb.n - 1)
    for i, c in enumerate(phi):
        if c:
            out = F.sub(out, F.mul(c, linalg.mat_power(F, M, amb.p**i - 1)))
    return out


def m_adx_matrix(x: Derivation) -> np.ndarray:
    return _poly_in_operator(x.F, ad_matrix(x), x.amb, phi_values(x))


def m_x_matrix(x: Derivation) -> np.ndarray:
    """``M_x = ρ(x)^{p^n-1} - sum φ_i ρ(x)^{p^i-1}`` on B_n."""
    return _poly_in_operator(x.F, rho_matrix(x), x.amb, phi_values(x))


def m_adx_image_dim(x: Derivation) -> int:
    return linalg.rank(x.F, m_adx_matrix(x))


def p_powers_independent(x: Derivation) -> bool:
    seq = p_power_sequence(x, x.n)
    return linalg.rank(x.F, np.stack([z.vector() for z in seq])) == x.n


def phi_differential_lemma(x: Derivation, y: Derivation):
    """Differential coefficients read off ``M_{ad x}(y)`` in the basis ``x^[p^i]``.

    Valid only when ``x, ..., x^[p^{n-1}]`` are independent; returns ``None``
    if ``M_{ad x}(y)`` is not in their span (which would contradict the
    expansion of ``M_{ad x}``).
    """
    seq = p_power_sequence(x, x.n)
    c = dependency(seq, m_adx_apply(x, y))
    return None if c is None else tuple(int(v) for v in c)


def differential_rank(x: Derivation, method: str = "auto") -> int:
    """Rank of ``(dφ_0)_x, ..., (dφ_{n-1})_x`` as functionals on W_n.

    ``dual``: all basis directions through dual numbers (authoritative).
    ``lemma``: ``dim M_{ad x}(W_n)`` when the p-powers of ``x`` are
    independent, falling back to ``dual`` otherwise.  ``auto`` picks
    ``dual`` for small B_n.
    """
    if method == "auto":
        method = "dual" if x.amb.size <= 49 else "lemma"
    if method == "lemma" and p_powers_independent(x):
        return m_adx_image_dim(x)
    if method not in ("dual", "lemma"):
        raise ValueError(f"unknown method {method!r}")
    return linalg.rank(x.F, differential_matrix(x))


@dataclass(frozen=True)
class RegularityFlags:
    u1: bool  # B_n^x = k
    u2: bool  # dim centralizer = n
    u3: bool  # differentials independent
    anomaly: bool  # u2 disagrees with u1

    def __iter__(self):
        return iter((self.u1, self.u2, self.u3))


def regularity_classify(x: Derivation, method: str = "auto", strict: bool = True) -> RegularityFlags:
    """Membership of ``x`` in U_1, U_2, U_3.

    Raises :class:`InvariantViolation` when U_1 and U_3 disagree (if
    ``strict``); a U_2 disagreement is only flagged.
    """
    u1 = constants_dim(x) == 1
    u2 = centralizer_dim(x) == x.n
    u3 = differential_rank(x, method) == x.n
    if strict and u1 != u3:
        raise InvariantViolation(f"U_1 = {u1} but U_3 = {u3}")
    return RegularityFlags(u1, u2, u3, u1 != u2)
