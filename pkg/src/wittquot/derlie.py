"""The Jacobson-Witt algebra W_n = Der(B_n).

A derivation ``sum f_i D_i`` is stored as an ``(n, p**n)`` coefficient array.
Flattened vectors (used for ranks and spans) concatenate the components,
so the canonical basis ``x^α D_i`` sits at index ``(i-1) * p**n + idx(α)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .errors import AmbientMismatch
from .ffield import GF
from .truncpoly import Ambient, TruncPoly, min_degree, partial_derivative, poly_mul


@dataclass(frozen=True, eq=False)
class Derivation:
    amb: Ambient
    comps: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        c = self.amb.F.asarray(self.comps)
        if c.shape != (self.amb.n, self.amb.size):
            raise ValueError(f"expected components of shape {(self.amb.n, self.amb.size)}, got {c.shape}")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "comps", c)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_polys(cls, polys) -> "Derivation":
        polys = list(polys)
        amb = polys[0].amb
        if len(polys) != amb.n or any(f.amb is not amb for f in polys):
            raise AmbientMismatch("need exactly n components from one ring")
        return cls(amb, np.stack([f.coeffs for f in polys]))

    @classmethod
    def zero(cls, amb: Ambient) -> "Derivation":
        return cls(amb, amb.F.zeros((amb.n, amb.size)))

    @classmethod
    def partial(cls, amb: Ambient, i: int) -> "Derivation":
        """``D_i``."""
        return cls.term(amb.one(), i)

    @classmethod
    def term(cls, f: TruncPoly, i: int) -> "Derivation":
        """``f D_i``."""
        amb = f.amb
        amb.check_axis(i)
        c = amb.F.zeros((amb.n, amb.size))
        c[i - 1] = f.coeffs
        return cls(amb, c)

    @classmethod
    def from_vector(cls, amb: Ambient, v) -> "Derivation":
        return cls(amb, np.asarray(v).reshape(amb.n, amb.size))

    @classmethod
    def random(cls, amb: Ambient, rng: np.random.Generator, min_filtration: int = -1) -> "Derivation":
        """Uniform element of ``(W_n)_i`` for ``i = min_filtration``."""
        c = amb.F.random(rng, (amb.n, amb.size))
        c[:, amb.degrees < min_filtration + 1] = 0
        return cls(amb, c)

    # -- views -------------------------------------------------------------

    @property
    def F(self) -> GF:
        return self.amb.F

    @property
    def n(self) -> int:
        return self.amb.n

    def comp(self, i: int) -> TruncPoly:
        self.amb.check_axis(i)
        return TruncPoly(self.amb, self.comps[i - 1])

    def polys(self) -> list[TruncPoly]:
        return [TruncPoly(self.amb, c) for c in self.comps]

    def vector(self) -> np.ndarray:
        return self.comps.reshape(-1)

    def is_zero(self) -> bool:
        return not self.comps.any()

    # -- arithmetic --------------------------------------------------------

    def _same(self, other: "Derivation") -> None:
        if not isinstance(other, Derivation):
            raise TypeError(f"expected Derivation, got {type(other).__name__}")
        if other.amb is not self.amb:
            raise AmbientMismatch(f"{self.amb!r} vs {other.amb!r}")

    def __add__(self, other):
        self._same(other)
        return Derivation(self.amb, self.F.add(self.comps, other.comps))

    def __sub__(self, other):
        self._same(other)
        return Derivation(self.amb, self.F.sub(self.comps, other.comps))

    def __neg__(self):
        return Derivation(self.amb, self.F.neg(self.comps))

    def scale(self, c) -> "Derivation":
        c = int(c.value) if hasattr(c, "value") else self.F.asarray(c)
        return Derivation(self.amb, self.F.mul(c, self.comps))

    def __rmul__(self, c):
        if isinstance(c, TruncPoly):
            return self.times_poly(c)
        return self.scale(c)

    def times_poly(self, f: TruncPoly) -> "Derivation":
        """The B_n-module action ``f · x``."""
        if f.amb is not self.amb:
            raise AmbientMismatch(f"{f.amb!r} vs {self.amb!r}")
        return Derivation.from_polys([poly_mul(f, g) for g in self.polys()])

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return other.amb is self.amb and np.array_equal(self.comps, other.comps)

    def __hash__(self):
        return hash((id(self.amb), self.comps.tobytes()))

    def __call__(self, f: TruncPoly) -> TruncPoly:
        return apply_derivation(self, f)

    def __repr__(self):
        parts = []
        for i, g in enumerate(self.polys(), start=1):
            if not g.is_zero():
                parts.append(f"({g!r})*D{i}")
        return " + ".join(parts) if parts else "0"


def dim_w(p: int, n: int) -> int:
    return n * p**n


def basis_element(amb: Ambient, alpha, i: int) -> Derivation:
    return Derivation.term(amb.monomial(alpha), i)


def apply_derivation(x: Derivation, f: TruncPoly) -> TruncPoly:
    """``ρ(x)(f) = sum_i f_i ∂_i f``."""
    if f.amb is not x.amb:
        raise AmbientMismatch(f"{x.amb!r} vs {f.amb!r}")
    out = x.amb.zero()
    for i, g in enumerate(x.polys(), start=1):
        if not g.is_zero():
            out = out + poly_mul(g, partial_derivative(f, i))
    return out


def bracket(x: Derivation, y: Derivation) -> Derivation:
    """``[x, y]_j = x(y_j) - y(x_j)``, the operator commutator on B_n."""
    x._same(y)
    comps = [apply_derivation(x, yj) - apply_derivation(y, xj) for xj, yj in zip(x.polys(), y.polys())]
    return Derivation.from_polys(comps)


def p_power(x: Derivation) -> Derivation:
    """``x^[p]``: component j is ``x`` applied p times to ``x_j``."""
    amb = x.amb
    comps = []
    for j in range(1, amb.n + 1):
        f = amb.var(j)
        for _ in range(amb.p):
            f = apply_derivation(x, f)
        comps.append(f)
    return Derivation.from_polys(comps)


def p_power_iter(x: Derivation, r: int) -> Derivation:
    """``x^[p^r]``."""
    for _ in range(r):
        x = p_power(x)
    return x


def divergence(x: Derivation) -> TruncPoly:
    out = x.amb.zero()
    for i, g in enumerate(x.polys(), start=1):
        out = out + partial_derivative(g, i)
    return out


def rho_matrix(x: Derivation) -> np.ndarray:
    """Matrix of ``f -> x(f)`` on the monomial basis of B_n."""
    amb = x.amb
    F = amb.F
    M = F.zeros((amb.size, amb.size))
    for i, g in enumerate(x.polys(), start=1):
        if g.is_zero():
            continue
        # column b of L_g ∂_i is b_i * (column b - e_i of L_g)
        L = amb.mult_matrix(g)
        cols = np.flatnonzero(amb.exps[:, i - 1] > 0)
        M[:, cols] = F.add(M[:, cols], F.mul(L[:, cols - amb.radix[i - 1]], F.asarray(amb.exps[cols, i - 1])))
    return M


def ad_matrix(x: Derivation) -> np.ndarray:
    """Matrix of ``y -> [x, y]`` on the canonical basis ``x^α D_i`` (axis-major)."""
    amb = x.amb
    F, n, s = amb.F, amb.n, amb.size
    R = rho_matrix(x)
    A = F.zeros((n * s, n * s))
    polys = x.polys()
    for i in range(1, n + 1):
        A[(i - 1) * s : i * s, (i - 1) * s : i * s] = R
        for j in range(1, n + 1):
            d = partial_derivative(polys[j - 1], i)
            if d.is_zero():
                continue
            blk = A[(j - 1) * s : j * s, (i - 1) * s : i * s]
            A[(j - 1) * s : j * s, (i - 1) * s : i * s] = F.sub(blk, amb.mult_matrix(d))
    return A


def constants_subring(x: Derivation) -> list[TruncPoly]:
    """A basis of B_n^x = ker ρ(x)."""
    _, K = linalg.rank_kernel(x.F, rho_matrix(x))
    return [TruncPoly(x.amb, v) for v in K]


def constants_dim(x: Derivation) -> int:
    s = x.amb.size
    return s - linalg.rank(x.F, rho_matrix(x))


def centralizer_dim(x: Derivation) -> int:
    """``dim ker ad(x)`` in W_n."""
    d = x.amb.n * x.amb.size
    return d - linalg.rank(x.F, ad_matrix(x))


def filtration_degree(x: Derivation) -> int:
    """Largest ``i`` with ``x`` in ``(W_n)_i``."""
    if x.is_zero():
        raise ValueError("the zero derivation has no filtration degree")
    return min(min_degree(g) for g in x.polys()) - 1


def derivation_from_operator(amb: Ambient, M: np.ndarray) -> Derivation:
    """Read a derivation off an operator on B_n via the images of ``x_1..x_n``.

    Does not check that ``M`` is a derivation; compare ``rho_matrix`` of the
    result with ``M`` for that.
    """
    cols = [amb.index([1 if k == i else 0 for k in range(amb.n)]) for i in range(amb.n)]
    return Derivation(amb, np.asarray(M)[:, cols].T)


def dependency(vectors: list[Derivation], target: Derivation):
    """Coefficients expressing ``target`` in the span of ``vectors``, else ``None``."""
    if not vectors:
        return np.zeros(0, dtype=np.int64) if target.is_zero() else None
    B = np.stack([v.vector() for v in vectors])
    return linalg.solve_in_span(target.F, B, target.vector())
