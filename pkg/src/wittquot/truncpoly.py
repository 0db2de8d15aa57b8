"""The truncated polynomial ring B_n = k[x_1..x_n]/(x_1^p..x_n^p), dense.

Monomials ``x^α`` with ``0 <= α_i < p`` are indexed in mixed radix,
``idx(α) = sum(α_i * p**(i-1))`` (``x_1`` varies fastest).  Variables are
numbered from 1 in the public API, matching ``D_1 .. D_n``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import AmbientMismatch
from .ffield import GF, check_char, field

INF_DEGREE = math.inf  # min_degree(0); exceeds every n(p-1)


class Ambient:
    """Shared tables for B_n over a fixed field.  Obtain via :func:`ambient`."""

    def __init__(self, F: GF, n: int):
        if n < 1:
            raise ValueError(f"need at least one variable, got n={n}")
        self.F = F
        self.p = F.p
        self.n = n
        self.size = self.p**n
        p = self.p
        idx = np.arange(self.size)
        # exps[k, i] = exponent of x_{i+1} in monomial k
        self.exps = np.stack([(idx // p**i) % p for i in range(n)], axis=1)
        self.degrees = self.exps.sum(axis=1)
        self.radix = p ** np.arange(n)
        self._pairs = None

    def __repr__(self):
        return f"B_{self.n} over {self.F!r}"

    def __reduce__(self):
        return (ambient, (self.F.p, self.n, self.F.m))

    @property
    def pairs(self):
        """All ``(a, b, a+b)`` index triples whose exponent sum does not truncate."""
        if self._pairs is None:
            e = self.exps
            ok = np.all(e[:, None, :] + e[None, :, :] < self.p, axis=2)
            ia, ib = np.nonzero(ok)
            self._pairs = (ia, ib, ia + ib)  # mixed radix adds without carry
        return self._pairs

    def index(self, alpha) -> int:
        alpha = tuple(alpha)
        if len(alpha) != self.n or any(not 0 <= a < self.p for a in alpha):
            raise ValueError(f"bad exponent {alpha} for {self!r}")
        return int(np.dot(alpha, self.radix))

    def monomial(self, alpha, coeff=1) -> "TruncPoly":
        c = self.F.zeros(self.size)
        c[self.index(alpha)] = self.F.asarray(coeff)
        return TruncPoly(self, c)

    def var(self, i: int) -> "TruncPoly":
        self.check_axis(i)
        alpha = [0] * self.n
        alpha[i - 1] = 1
        return self.monomial(alpha)

    def const(self, c) -> "TruncPoly":
        return self.monomial([0] * self.n, c)

    def zero(self) -> "TruncPoly":
        return TruncPoly(self, self.F.zeros(self.size))

    def one(self) -> "TruncPoly":
        return self.const(1)

    def check_axis(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexError(f"variable index {i} outside 1..{self.n}")

    def random(self, rng: np.random.Generator, min_deg: int = 0, max_deg: int | None = None) -> "TruncPoly":
        c = self.F.random(rng, self.size)
        mask = self.degrees >= min_deg
        if max_deg is not None:
            mask &= self.degrees <= max_deg
        return TruncPoly(self, np.where(mask, c, 0))

    def mult_matrix(self, f: "TruncPoly") -> np.ndarray:
        """Matrix of g -> f*g in the monomial basis."""
        ia, ib, ic = self.pairs
        L = self.F.zeros((self.size, self.size))
        L[ic, ib] = f.coeffs[ia]
        return L

    def deriv_matrix(self, i: int) -> np.ndarray:
        self.check_axis(i)
        return _deriv_matrix(self, i)


@functools.lru_cache(maxsize=None)
def _deriv_matrix(amb: Ambient, i: int) -> np.ndarray:
    D = amb.F.zeros((amb.size, amb.size))
    cols = np.flatnonzero(amb.exps[:, i - 1] > 0)
    D[cols - amb.radix[i - 1], cols] = amb.F.asarray(amb.exps[cols, i - 1])
    return D


@functools.lru_cache(maxsize=None)
def _ambient(F: GF, n: int) -> Ambient:
    check_char(F)
    if n < 1:
        raise ValueError(f"need at least one variable, got n = {n}")
    return Ambient(F, n)


def ambient(p: int, n: int, m: int = 1) -> Ambient:
    return _ambient(field(p, m), n)


def ambient_over(F: GF, n: int) -> Ambient:
    return _ambient(F, n)


@dataclass(frozen=True, eq=False)
class TruncPoly:
    amb: Ambient
    coeffs: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        c = self.amb.F.asarray(self.coeffs)
        if c.shape != (self.amb.size,):
            raise ValueError(f"expected {self.amb.size} coefficients, got shape {c.shape}")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def F(self) -> GF:
        return self.amb.F

    def _same(self, other: "TruncPoly") -> None:
        if not isinstance(other, TruncPoly):
            raise TypeError(f"expected TruncPoly, got {type(other).__name__}")
        if other.amb is not self.amb:
            raise AmbientMismatch(f"{self.amb!r} vs {other.amb!r}")

    def __add__(self, other):
        self._same(other)
        return TruncPoly(self.amb, self.F.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._same(other)
        return TruncPoly(self.amb, self.F.sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return TruncPoly(self.amb, self.F.neg(self.coeffs))

    def __mul__(self, other):
        if isinstance(other, TruncPoly):
            return poly_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        out = self.amb.one()
        for _ in range(e):
            out = poly_mul(out, self)
        return out

    def scale(self, c) -> "TruncPoly":
        c = int(c.value) if hasattr(c, "value") else self.F.asarray(c)
        return TruncPoly(self.amb, self.F.mul(c, self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return other.amb is self.amb and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((id(self.amb), self.coeffs.tobytes()))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def constant_term(self) -> int:
        return int(self.coeffs[0])

    def in_max_ideal(self) -> bool:
        return self.coeffs[0] == 0

    def __repr__(self):
        terms = []
        for k in np.flatnonzero(self.coeffs):
            mono = "*".join(
                f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(self.amb.exps[k]) if e
            )
            c = int(self.coeffs[k])
            terms.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(terms) if terms else "0"


def poly_mul(f: TruncPoly, g: TruncPoly) -> TruncPoly:
    """Truncated product: monomials with some exponent >= p vanish."""
    f._same(g)
    F = f.F
    ia, ib, ic = f.amb.pairs
    prod = F.mul(f.coeffs[ia], g.coeffs[ib])
    return TruncPoly(f.amb, F.scatter_sum(ic, prod, f.amb.size))


def partial_derivative(f: TruncPoly, i: int) -> TruncPoly:
    """Formal ``∂f/∂x_i`` (1-based ``i``)."""
    amb = f.amb
    amb.check_axis(i)
    r = amb.radix[i - 1]
    e = amb.exps[:, i - 1]
    out = amb.F.zeros(amb.size)
    src = np.flatnonzero(e > 0)
    out[src - r] = amb.F.mul(f.coeffs[src], amb.F.asarray(e[src]))
    return TruncPoly(amb, out)


def min_degree(f: TruncPoly):
    """Least total degree among monomials present; ``INF_DEGREE`` for 0."""
    nz = np.flatnonzero(f.coeffs)
    if nz.size == 0:
        return INF_DEGREE
    return int(f.amb.degrees[nz].min())


def embed_poly(f: TruncPoly, target: Ambient) -> TruncPoly:
    """Regard ``f`` in B_m as an element of B_n for n >= m (same field)."""
    if target.F is not f.F or target.n < f.amb.n:
        raise AmbientMismatch(f"cannot embed {f.amb!r} into {target!r}")
    c = target.F.zeros(target.size)
    c[: f.amb.size] = f.coeffs
    return TruncPoly(target, c)


def restrict_poly(f: TruncPoly, target: Ambient) -> TruncPoly:
    """Inverse of :func:`embed_poly`; requires ``f`` free of the extra variables."""
    if target.F is not f.F or target.n > f.amb.n:
        raise AmbientMismatch(f"cannot restrict {f.amb!r} to {target!r}")
    if f.coeffs[target.size :].any():
        raise ValueError("polynomial involves variables beyond the target ring")
    return TruncPoly(target, f.coeffs[: target.size])


def set_last_zero(f: TruncPoly, target: Ambient) -> TruncPoly:
    """``f(x_1, ..., x_m, 0, ..., 0)`` in B_m, ``m = target.n``."""
    if target.F is not f.F or target.n > f.amb.n:
        raise AmbientMismatch(f"cannot restrict {f.amb!r} to {target!r}")
    return TruncPoly(target, f.coeffs[: target.size])
