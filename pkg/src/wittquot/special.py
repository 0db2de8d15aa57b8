"""The special algebra S_n, its divergence-free hull, the embedding σ and the torus T_n."""

from __future__ import annotations

import enum
import functools

import numpy as np

from . import linalg
from .derlie import Derivation, divergence, partial_derivative
from .errors import AmbientMismatch
from .truncpoly import Ambient, TruncPoly, ambient_over, embed_poly, restrict_poly


class Membership(enum.Enum):
    IN_S = "in S_n"
    IN_S_TILDE_ONLY = "in S~_n only"
    OUTSIDE = "outside"


def dim_s(p: int, n: int) -> int:
    return (n - 1) * (p**n - 1)


def dim_s_tilde(p: int, n: int) -> int:
    return (n - 1) * p**n + 1


def dij_generator(i: int, j: int, u: TruncPoly) -> Derivation:
    """``D_{i,j}{u} = D_j(u) D_i - D_i(u) D_j``."""
    amb = u.amb
    amb.check_axis(i)
    amb.check_axis(j)
    if i == j:
        raise ValueError("D_{i,j}{u} needs i != j")
    return Derivation.term(partial_derivative(u, j), i) - Derivation.term(partial_derivative(u, i), j)


class SnContext:
    """Cached bases for S_n and S~_n in a fixed ambient W_n.

    Construct through :func:`sn_context`; the bases are computed once.
    """

    def __init__(self, amb: Ambient):
        if amb.n < 2:
            raise ValueError("S_n needs n >= 2")
        self.amb = amb
        F = amb.F
        spanning = []
        for i in range(1, amb.n + 1):
            for j in range(i + 1, amb.n + 1):
                for k in range(amb.size):
                    u = TruncPoly(amb, np.eye(1, amb.size, k, dtype=np.int64)[0])
                    spanning.append(dij_generator(i, j, u).vector())
        spanning = np.stack(spanning)
        keep = linalg.independent_subset(F, spanning)
        self._basis_vectors = spanning[keep]
        self._rref, self._pivots = linalg.rref(F, self._basis_vectors)
        self._rref = self._rref[: len(self._pivots)]
        _, self._tilde_vectors = linalg.rank_kernel(F, self.divergence_matrix())

    def __repr__(self):
        return f"SnContext(p={self.amb.p}, n={self.amb.n})"

    def divergence_matrix(self) -> np.ndarray:
        """Matrix of ``div: W_n -> B_n``."""
        amb = self.amb
        return np.concatenate([amb.deriv_matrix(i) for i in range(1, amb.n + 1)], axis=1)

    @property
    def dim(self) -> int:
        return len(self._basis_vectors)

    @property
    def dim_tilde(self) -> int:
        return len(self._tilde_vectors)

    def basis(self) -> list[Derivation]:
        return [Derivation.from_vector(self.amb, v) for v in self._basis_vectors]

    def tilde_basis(self) -> list[Derivation]:
        return [Derivation.from_vector(self.amb, v) for v in self._tilde_vectors]

    def in_span(self, x: Derivation) -> bool:
        v = x.vector()
        F = self.amb.F
        resid = F.sub(v, F.dot(v[self._pivots], self._rref))
        return not resid.any()

    def contains(self, x: Derivation) -> Membership:
        if x.amb is not self.amb:
            raise AmbientMismatch(f"{x.amb!r} vs {self.amb!r}")
        if not divergence(x).is_zero():
            return Membership.OUTSIDE
        return Membership.IN_S if self.in_span(x) else Membership.IN_S_TILDE_ONLY

    def random_element(self, rng: np.random.Generator) -> Derivation:
        c = self.amb.F.random(rng, self.dim)
        return Derivation.from_vector(self.amb, self.amb.F.dot(c, self._basis_vectors))


@functools.lru_cache(maxsize=None)
def sn_context(amb: Ambient) -> SnContext:
    return SnContext(amb)


def sn_basis(ctx: SnContext) -> list[Derivation]:
    return ctx.basis()


def sn_contains(ctx: SnContext, x: Derivation) -> Membership:
    return ctx.contains(x)


def embed_derivation(x: Derivation, target: Ambient) -> Derivation:
    """``x`` in W_m viewed in W_n (n >= m), with zero components on the new axes."""
    comps = [embed_poly(f, target) for f in x.polys()]
    comps += [target.zero()] * (target.n - x.amb.n)
    return Derivation.from_polys(comps)


def sigma_embed(x: Derivation, target: Ambient | None = None) -> Derivation:
    """``σ(x) = x - div(x) x_n D_n`` from W_{n-1} into S_n."""
    if target is None:
        target = ambient_over(x.F, x.amb.n + 1)
    if target.n != x.amb.n + 1 or target.F is not x.F:
        raise AmbientMismatch(f"σ maps W_{x.amb.n} into S_{x.amb.n + 1}, not into {target!r}")
    y = embed_derivation(x, target)
    d = embed_poly(divergence(x), target)
    return y - Derivation.term(d * target.var(target.n), target.n)


def sigma_inverse(y: Derivation) -> Derivation:
    """Recover ``x`` from ``σ(x)``; raises if ``y`` is not in the image."""
    small = ambient_over(y.F, y.amb.n - 1)
    x = Derivation.from_polys([restrict_poly(f, small) for f in y.polys()[:-1]])
    if sigma_embed(x, y.amb) != y:
        raise ValueError("element is not in the image of σ")
    return x


def torus_tn(ctx: SnContext) -> list[Derivation]:
    """Generators ``x_i D_i - x_n D_n`` for ``i < n``."""
    amb = ctx.amb if isinstance(ctx, SnContext) else ctx
    n = amb.n
    last = Derivation.term(amb.var(n), n)
    return [Derivation.term(amb.var(i), i) - last for i in range(1, n)]
