"""Verification suites: per-trial checks of the structural statements, reduced into reports.

Every trial draws from its own stream ``PCG64(SeedSequence([seed, trial]))``,
so reports do not depend on how trials are scheduled.  ``n`` is the rank of
the algebra the suite is about: W_n for the W-suites, S_n for the S-suites
(whose slice computations then live in W_{n-1}).
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import linalg
from .autgrp import act, bukong_degeneration, random_autom, swap_autom
from .derlie import Derivation, bracket, constants_dim, dim_w, rho_matrix
from .errors import InvariantViolation
from .ffield import is_prime
from .invariants import (
    differential_matrix,
    differential_rank,
    is_nilpotent,
    is_semisimple,
    jordan_chevalley,
    lemma_for1_rhs,
    m_adx_apply,
    minimal_p_polynomial,
    p_powers_independent,
    phi_differential,
    phi_differential_lemma,
    phi_values,
    quotient_s,
    quotient_w,
    regularity_classify,
    restricted_cayley_hamilton,
)
from .serialize import autom_to_json, derivation_to_json, poly_to_json, slice_to_json
from .slices import (
    SliceElement,
    delta_eps,
    random_omega_params,
    tangent_decomposition,
)
from .special import Membership, dij_generator, dim_s, dim_s_tilde, sigma_embed, sn_context
from .truncpoly import Ambient, TruncPoly, ambient, set_last_zero

RNG_NAME = "PCG64"
RNG_VERSION = 1
SCHEMA_VERSION = 1

PASS, FAIL, ANOMALY = "pass", "fail", "anomaly"


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for ``(seed, trial)``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


@dataclass(frozen=True)
class SuiteParams:
    p: int
    n: int
    seed: int
    trials: int

    def as_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "seed": self.seed, "trials": self.trials, "rng": f"{RNG_NAME}/v{RNG_VERSION}"}


@dataclass
class Check:
    name: str
    anchor: str
    status: str
    witness: dict | None = None

    def as_dict(self) -> dict:
        d = {"name": self.name, "anchor": self.anchor, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class SuiteReport:
    suite: str
    params: SuiteParams
    checks: list[Check]
    elapsed_ms: int = 0

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def anomalies(self) -> list[Check]:
        return [c for c in self.checks if c.status == ANOMALY]

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "params": self.params.as_dict(),
            "checks": [c.as_dict() for c in self.checks],
            "elapsed_ms": self.elapsed_ms,
        }

    def summary(self) -> str:
        n = len(self.checks)
        return (
            f"{self.suite}: {n - len(self.failures) - len(self.anomalies)}/{n} pass, "
            f"{len(self.failures)} fail, {len(self.anomalies)} anomaly ({self.elapsed_ms} ms)"
        )


class TrialContext:
    """Collects the checks of one trial, attaching the replay witness on failure."""

    def __init__(self, suite: str, params: SuiteParams, trial: int):
        self.suite = suite
        self.params = params
        self.trial = trial
        self.rng = trial_rng(params.seed, trial)
        self.checks: list[Check] = []
        self.witness: dict = {}
        self.data = None

    def record(self, **elements) -> None:
        for k, v in elements.items():
            self.witness[k] = _to_json(v)

    def _witness(self, extra) -> dict:
        w = {"suite": self.suite, **self.params.as_dict(), "trial": self.trial, **self.witness}
        if extra:
            w["detail"] = extra
        return w

    def check(self, name: str, anchor: str, ok: bool, detail=None, anomaly_only: bool = False) -> bool:
        status = PASS if ok else (ANOMALY if anomaly_only else FAIL)
        w = None if ok else self._witness(detail)
        self.checks.append(Check(f"trial {self.trial}: {name}", anchor, status, w))
        return ok


def _to_json(v):
    from .autgrp import Automorphism

    if isinstance(v, Derivation):
        return derivation_to_json(v)
    if isinstance(v, Automorphism):
        return autom_to_json(v)
    if isinstance(v, TruncPoly):
        return poly_to_json(v)
    if isinstance(v, SliceElement):
        return slice_to_json(v)
    if isinstance(v, (list, tuple)):
        return [_to_json(a) for a in v]
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


# -- anchors (statement names) ----------------------------------------------------

A_DIM_W = "dim W_n = n p^n"
A_DIM_S = "dim S_n = (n-1)(p^n - 1)"
A_DIM_ST = "dim S~_n = (n-1) p^n + 1"
A_SHAPE = "char. polynomial of rho(x) is a p-polynomial"
A_CH_OP = "rho(x) is annihilated by its p-polynomial"
A_CH_RES = "x^[p^n] = sum phi_i(x) x^[p^i]"
A_FOR1 = "M_ad x(y) = sum (d phi_i)_x(y) x^[p^i]"
A_FOR1_FAST = "differentials read from M_ad x agree with dual numbers"
A_U1U3 = "B_n^x = k iff the differentials d phi_i are independent"
A_U1U2 = "B_n^x = k iff dim of the centralizer is n"
A_SMOOTH = "fiber points with xi_0 != 0 have differential rank n (sampled evidence)"
A_SINGULAR = "non-regular nilpotent points have differential rank < n (sampled evidence)"
A_NIL_FIBER = "nilpotent elements lie in the zero fiber"
A_INV = "adjoint quotient is invariant under automorphisms"
A_HOMOG = "phi_i(c x) = c^(p^n - p^i) phi_i(x)"
A_PHI0 = "phi_0 vanishes on S_n"
A_SIGMA_IN = "sigma maps W_(n-1) into S_n"
A_DIAGRAM = "quotient of S_n after sigma equals the quotient of W_(n-1)"
A_PHIG = "quotient of Delta_eps is eps"
A_CONST = "constants of Delta_eps are the scalars"
A_SIGMA_DELTA = "quotient of sigma(Delta_eps) in S_n is eps"
A_INJECTIVE = "distinct slice points have distinct quotients"
A_OMEGA_S = "Omega^eps lies in S_n"
A_OMEGA_FIBER = "Omega^eps lies in the fiber over eps"
A_OMEGA_NIL = "Omega^0 is nilpotent"
A_TANGENT = "W_(n-1) is the direct sum of orbit and slice tangent spaces at Delta_eps"
A_STAB = "ker ad(Delta_eps) meets (W_(n-1))_0 trivially"
A_DPHI_ORBIT = "differentials of the quotient vanish along orbit directions"
A_BUKONG_S = "constructed element lies in S_n"
A_BUKONG_CONST = "quotient is constant along the degeneration family"
A_BUKONG_LIMIT = "limit of the degeneration is sigma(Delta_1)"
A_BUKONG_LIMIT_S = "limit of the degeneration lies in S_n with the same quotient"
A_NIL = "p-power nilpotency agrees with zero quotient and rho(x)^(p^n) = 0"
A_JC = "Jordan-Chevalley parts commute, sum to x, are nilpotent and semisimple"
A_MINPOLY = "minimal p-polynomial of a regular element is its char. polynomial"
A_W1 = "(1+x)d and (lambda x)d solve t^p - t in W_1"


# -- samplers --------------------------------------------------------------------


def _nilpotent_sample(amb: Ambient, rng) -> Derivation:
    """Conjugate of a random element of positive filtration (never U_1-regular)."""
    return act(random_autom(amb, rng), Derivation.random(amb, rng, min_filtration=1))


def _random_eps(amb: Ambient, rng, count: int) -> tuple[int, ...]:
    return tuple(int(v) for v in amb.F.random(rng, count))


def _delta_conjugate(amb: Ambient, rng, xi) -> Derivation:
    return act(random_autom(amb, rng), delta_eps(xi, amb))


def _sweep_eps(amb: Ambient, t: int) -> tuple[int, ...]:
    """``t``-th point of F^n in base-p order (first coordinate fastest)."""
    return tuple(int(d) for d in amb.exps[t])


# -- W-suites -----------------------------------------------------------------------


def trial_charpoly_shape(ctx: TrialContext) -> None:
    amb = ambient(ctx.params.p, ctx.params.n)
    x = Derivation.random(amb, ctx.rng)
    ctx.record(x=x)
    try:
        phi = phi_values(x)
    except InvariantViolation as e:
        ctx.check("p-polynomial shape", A_SHAPE, False, str(e))
        return
    ctx.check("p-polynomial shape", A_SHAPE, True)
    F = amb.F
    R = rho_matrix(x)
    lhs = linalg.mat_power(F, R, amb.p**amb.n)
    rhs = F.zeros(R.shape)
    for i, c in enumerate(phi):
        rhs = F.add(rhs, F.mul(c, linalg.mat_power(F, R, amb.p**i)))
    ctx.check("operator Cayley-Hamilton", A_CH_OP, np.array_equal(lhs, rhs))
    ctx.check("restricted Cayley-Hamilton", A_CH_RES, restricted_cayley_hamilton(x).is_zero())


def trial_lemma_for1(ctx: TrialContext) -> None:
    amb = ambient(ctx.params.p, ctx.params.n)
    x = Derivation.random(amb, ctx.rng)
    y = Derivation.random(amb, ctx.rng)
    ctx.record(x=x, y=y)
    dphi = phi_differential(x, y)
    lhs = m_adx_apply(x, y)
    ctx.check("identity via dual numbers", A_FOR1, lhs == lemma_for1_rhs(x, dphi), {"dphi": list(dphi)})
    if p_powers_independent(x):
        fast = phi_differential_lemma(x, y)
        ctx.check("fast path agrees", A_FOR1_FAST, fast == dphi, {"dual": list(dphi), "fast": fast and list(fast)})


def _pro1_sample(amb: Ambient, rng, t: int) -> tuple[str, Derivation]:
    kind = ("uniform", "nilpotent", "delta-conjugate", "torus-perturbed", "nilpotent-regular")[t % 5]
    if kind == "uniform":
        return kind, Derivation.random(amb, rng)
    if kind == "nilpotent":
        return kind, _nilpotent_sample(amb, rng)
    if kind == "delta-conjugate":
        return kind, _delta_conjugate(amb, rng, _random_eps(amb, rng, amb.n))
    if kind == "nilpotent-regular":
        return kind, _delta_conjugate(amb, rng, (0,) * amb.n)
    torus = Derivation.zero(amb)
    for i, c in enumerate(amb.F.random(rng, amb.n), start=1):
        torus = torus + Derivation.term(amb.var(i), i).scale(c)
    return kind, torus + Derivation.random(amb, rng, min_filtration=1)


def trial_prop_pro1(ctx: TrialContext) -> None:
    amb = ambient(ctx.params.p, ctx.params.n)
    kind, x = _pro1_sample(amb, ctx.rng, ctx.trial)
    ctx.record(kind=kind, x=x)
    flags = regularity_classify(x, strict=False)
    detail = {"kind": kind, "u1": flags.u1, "u2": flags.u2, "u3": flags.u3}
    ctx.check(f"U_1 = U_3 ({kind})", A_U1U3, flags.u1 == flags.u3, detail)
    ctx.check(f"U_1 = U_2 ({kind})", A_U1U2, flags.u1 == flags.u2, detail, anomaly_only=True)
    ctx.data = (kind, flags.u1)


def trial_prop_pro2(ctx: TrialContext) -> None:
    amb = ambient(ctx.params.p, ctx.params.n)
    rng = ctx.rng
    if ctx.trial % 2 == 0:
        xi = (int(rng.integers(1, amb.p)),) + _random_eps(amb, rng, amb.n - 1)
        x = _delta_conjugate(amb, rng, xi)
        ctx.record(kind="regular", xi=list(xi), x=x)
        r = differential_rank(x)
        ctx.check("smooth point has rank n", A_SMOOTH, r == amb.n, {"rank": r})
        ctx.check("point lies over xi", A_PHIG, quotient_w(x) == xi)
    else:
        # (a + g(x_2, ..., x_n)) D_1 kills every function of x_2..x_n
        g = amb.random(rng, 1)
        g = TruncPoly(amb, np.where(amb.exps[:, 0] == 0, g.coeffs, 0))
        a = int(rng.integers(1, amb.p))
        y = Derivation.term(g + amb.const(a), 1)
        x = act(random_autom(amb, rng), y)
        ctx.record(kind="nilpotent", x=x)
        r = differential_rank(x)
        ctx.check("non-regular nilpotent point has rank < n", A_SINGULAR, r < amb.n, {"rank": r})
        ctx.check("point lies in the zero fiber", A_NIL_FIBER, is_nilpotent(x) and quotient_w(x).is_zero())


INVARIANCE_ELEMENTS = 20


def trial_invariance(ctx: TrialContext) -> None:
    amb = ambient(ctx.params.p, ctx.params.n)
    F = amb.F
    g = random_autom(amb, ctx.rng)
    ctx.record(g=g)
    bad = []
    for k in range(INVARIANCE_ELEMENTS):
        x = Derivation.random(amb, ctx.rng)
        if quotient_w(act(g, x)) != quotient_w(x):
            bad.append(derivation_to_json(x))
    ctx.check(f"{INVARIANCE_ELEMENTS} elements", A_INV, not bad, {"failing_x": bad})
    x = Derivation.random(amb, ctx.rng)
    c = int(ctx.rng.integers(1, F.q))
    phi, phic = phi_values(x), phi_values(x.scale(c))
    want = tuple(int(F.mul(F.power(c, amb.p**amb.n - amb.p**i), v)) for i, v in enumerate(phi))
    ctx.record(x=x, c=c)
    ctx.check("homogeneity", A_HOMOG, phic == want)


def trial_nilpotency(ctx: TrialContext) -> None:
    amb = ambient(ctx.params.p, ctx.params.n)
    F = amb.F
    rng = ctx.rng
    x = _nilpotent_sample(amb, rng) if ctx.trial % 2 else Derivation.random(amb, rng)
    ctx.record(x=x)
    nil = is_nilpotent(x)
    R = rho_matrix(x)
    by_rho = not linalg.mat_power(F, R, amb.p**amb.n).any()
    by_phi = quotient_w(x).is_zero()
    ctx.check("nilpotency criteria agree", A_NIL, nil == by_rho == by_phi, {"p_power": nil, "rho": by_rho, "phi": by_phi})
    if ctx.trial % 2:
        ctx.check("positive-filtration conjugate is nilpotent", A_NIL, nil)
    try:
        xs, xn = jordan_chevalley(x)
        ok = xs + xn == x and bracket(xs, xn).is_zero() and is_nilpotent(xn) and is_semisimple(xs)
        ctx.check("Jordan-Chevalley decomposition", A_JC, ok)
    except InvariantViolation as e:
        ctx.check("Jordan-Chevalley decomposition", A_JC, False, str(e))
    if constants_dim(x) == 1:
        mp = minimal_p_polynomial(x)
        ctx.check("minimal p-polynomial", A_MINPOLY, mp.r == amb.n and mp.coeffs == phi_values(x), repr(mp))


def fixed_nilpotency(params: SuiteParams) -> list[Check]:
    """The W_1 example: ``(1+x)∂`` and ``λx∂`` both satisfy ``t^p - t``."""
    amb = ambient(params.p, 1)
    out = []
    elems = [("(1+x)d", Derivation.term(amb.one() + amb.var(1), 1))]
    elems += [(f"{lam}x d", Derivation.term(amb.var(1).scale(lam), 1)) for lam in range(1, amb.p)]
    for label, x in elems:
        mp = minimal_p_polynomial(x)
        ok = phi_values(x) == (1,) and mp.r == 1 and mp.coeffs == (1,)
        w = None if ok else {"x": derivation_to_json(x), "minpoly": repr(mp)}
        out.append(Check(f"W_1 example {label}", A_W1, PASS if ok else FAIL, w))
    return out


# -- S-suites -----------------------------------------------------------------------


def fixed_dimensions(params: SuiteParams) -> list[Check]:
    p, n = params.p, params.n
    amb = ambient(p, n)
    sn = sn_context(amb)
    basis_w = np.eye(n * amb.size, dtype=np.int64)
    rows = [
        ("dim W_n", A_DIM_W, linalg.rank(amb.F, basis_w), dim_w(p, n)),
        ("dim S_n", A_DIM_S, sn.dim, dim_s(p, n)),
        ("dim S~_n", A_DIM_ST, sn.dim_tilde, dim_s_tilde(p, n)),
    ]
    out = []
    for name, anchor, got, want in rows:
        w = None if got == want else {"p": p, "n": n, "got": got, "expected": want}
        out.append(Check(f"{name} = {want}", anchor, PASS if got == want else FAIL, w))
    return out


def trial_prop24(ctx: TrialContext) -> None:
    amb = ambient(ctx.params.p, ctx.params.n)
    x = sn_context(amb).random_element(ctx.rng)
    ctx.record(x=x)
    ctx.check("phi_0 = 0", A_PHI0, phi_values(x)[0] == 0)


def trial_commutative_diagram(ctx: TrialContext) -> None:
    big = ambient(ctx.params.p, ctx.params.n)
    small = ambient(ctx.params.p, ctx.params.n - 1)
    y = Derivation.random(small, ctx.rng)
    x = sigma_embed(y, big)
    ctx.record(y=y)
    if not ctx.check("sigma(y) in S_n", A_SIGMA_IN, sn_context(big).contains(x) is Membership.IN_S):
        return
    phi = phi_values(x)
    ctx.check("phi_0(sigma(y)) = 0", A_PHI0, phi[0] == 0)
    try:
        qs = quotient_s(x, check_membership=False)
    except InvariantViolation as e:
        ctx.check("diagram commutes", A_DIAGRAM, False, str(e))
        return
    qw = quotient_w(y)
    ctx.check("diagram commutes", A_DIAGRAM, qs.values == qw.values, {"S": list(qs), "W": list(qw)})


def _sweep_count(params: SuiteParams) -> int:
    return min(params.trials, params.p ** (params.n - 1))


def trial_phig_delta(ctx: TrialContext) -> None:
    small = ambient(ctx.params.p, ctx.params.n - 1)
    big = ambient(ctx.params.p, ctx.params.n)
    eps = _sweep_eps(small, ctx.trial)
    ctx.record(slice=SliceElement("delta_eps", eps, small))
    x = delta_eps(eps, small)
    q = quotient_w(x)
    ctx.check(f"eps={eps}: Phi = eps", A_PHIG, q == eps, {"quotient": list(q)})
    ctx.check(f"eps={eps}: B^x = k", A_CONST, constants_dim(x) == 1)
    qs = quotient_s(sigma_embed(x, big))
    ctx.check(f"eps={eps}: Phi_S(sigma) = eps", A_SIGMA_DELTA, qs == eps, {"quotient": list(qs)})
    ctx.data = tuple(q.values)


def summary_phig_delta(params: SuiteParams, data: list) -> list[Check]:
    ok = len(set(data)) == len(data)
    w = None if ok else {**params.as_dict(), "quotients": [list(d) for d in data]}
    return [Check(f"{len(data)} slice points, distinct quotients", A_INJECTIVE, PASS if ok else FAIL, w)]


OMEGA_ZERO_EVERY = 5


def trial_omega_fiber(ctx: TrialContext) -> None:
    amb = ambient(ctx.params.p, ctx.params.n)
    rng = ctx.rng
    eps = (0,) * (amb.n - 1) if ctx.trial % OMEGA_ZERO_EVERY == 0 else _random_eps(amb, rng, amb.n - 1)
    fs = tuple(random_omega_params(amb, rng))
    el = SliceElement("omega", eps, amb, fs)
    ctx.record(slice=el)
    x = el.realize()
    if not ctx.check(f"eps={eps}: in S_n", A_OMEGA_S, sn_context(amb).contains(x) is Membership.IN_S):
        return
    q = quotient_s(x, check_membership=False)
    ctx.check(f"eps={eps}: quotient = eps", A_OMEGA_FIBER, q == eps, {"quotient": list(q)})
    if not any(eps):
        ctx.check("eps=0: nilpotent", A_OMEGA_NIL, is_nilpotent(x))


TANGENT_DIRECTIONS = 10


def trial_tangent_sum(ctx: TrialContext) -> None:
    small = ambient(ctx.params.p, ctx.params.n - 1)
    eps = _sweep_eps(small, ctx.trial)
    ctx.record(slice=SliceElement("delta_eps", eps, small))
    x = delta_eps(eps, small)
    rep = tangent_decomposition(x, strict=False)
    m = small.n
    want = (dim_w(small.p, m) - m, m, 0, dim_w(small.p, m))
    ctx.check(f"eps={eps}: tangent dims", A_TANGENT, rep.as_tuple() == want, {"got": list(rep.as_tuple()), "expected": list(want)})
    ctx.check(f"eps={eps}: trivial stabilizer", A_STAB, rep.stabilizer_trivial)
    ys = [Derivation.random(small, ctx.rng, min_filtration=0) for _ in range(TANGENT_DIRECTIONS)]
    dirs = np.stack([rho_matrix(bracket(y, x)) for y in ys])
    D = differential_matrix(x, dirs)
    ctx.check(f"eps={eps}: d phi vanishes on orbit directions", A_DPHI_ORBIT, not D.any(), {"y": [derivation_to_json(y) for y in ys]})


def _bukong_sample(amb: Ambient, rng) -> Derivation:
    """``sum_{i<j<n} D_{i,j}{u_ij} + sum_{i<n} D_{i,n}{x_n v_i}``: its n-th component is divisible by x_n."""
    n = amb.n
    x = Derivation.zero(amb)
    for i in range(1, n):
        for j in range(i + 1, n):
            x = x + dij_generator(i, j, amb.random(rng))
        x = x + dij_generator(i, n, amb.var(n) * amb.random(rng))
    return x


def trial_bukong(ctx: TrialContext) -> None:
    amb = ambient(ctx.params.p, ctx.params.n)
    F = amb.F
    n = amb.n
    rng = ctx.rng
    x = _bukong_sample(amb, rng)
    axis = int(rng.integers(1, n + 1))
    if axis != n:
        x = act(swap_autom(amb, axis, n), x)
    ctx.record(x=x, axis=axis)
    sn = sn_context(amb)
    if not ctx.check("constructed x in S_n", A_BUKONG_S, sn.contains(x) is Membership.IN_S):
        return
    deg = bukong_degeneration(x, axis)
    q = quotient_s(x, check_membership=False)
    bad = [c for c in range(1, F.q) if quotient_s(deg.family(c), check_membership=False) != q]
    ctx.check("quotient constant for c != 0", A_BUKONG_CONST, not bad and deg.family(1) == deg.normalized, {"bad_c": bad})
    small = ambient(amb.p, n - 1)
    delta1 = Derivation.from_polys([set_last_zero(f, small) for f in deg.normalized.polys()[: n - 1]])
    ctx.check("limit = sigma(Delta_1)", A_BUKONG_LIMIT, deg.limit == sigma_embed(delta1, amb))
    in_s = sn.contains(deg.limit) is Membership.IN_S
    ctx.check("limit in S_n, same quotient", A_BUKONG_LIMIT_S, in_s and quotient_s(deg.limit, check_membership=False) == q)


# -- registry and runner ------------------------------------------------------------------


@dataclass(frozen=True)
class Suite:
    name: str
    algebra: str  # "W" or "S": which algebra ``n`` refers to
    trial: Callable[[TrialContext], None] | None = None
    fixed: Callable[[SuiteParams], list[Check]] | None = None
    summary: Callable[[SuiteParams, list], list[Check]] | None = None
    count: Callable[[SuiteParams], int] | None = None
    min_n: int = 2
    description: str = ""

    @property
    def default_n(self) -> int:
        return 2 if self.algebra == "W" else 3

    def trial_count(self, params: SuiteParams) -> int:
        if self.trial is None:
            return 0
        return self.count(params) if self.count else params.trials


SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("charpoly-shape", "W", trial_charpoly_shape, description="p-polynomial shape and Cayley-Hamilton, random x"),
        Suite("lemma-for-1", "W", trial_lemma_for1, description="M_ad x identity with dual-number differentials"),
        Suite("prop-pro-1", "W", trial_prop_pro1, description="U_1 = U_3 (fail) and U_1 = U_2 (anomaly) on mixed samples"),
        Suite("prop-pro-2-evidence", "W", trial_prop_pro2, description="sampled differential ranks at regular and nilpotent points"),
        Suite("invariance", "W", trial_invariance, description="automorphism invariance and homogeneity of the quotient"),
        Suite("prop-2-4", "S", trial_prop24, description="phi_0 = 0 on random S_n elements"),
        Suite("commutative-diagram", "S", trial_commutative_diagram, description="quotient of sigma(y) equals quotient of y"),
        Suite("phig-delta", "S", trial_phig_delta, summary=summary_phig_delta, count=_sweep_count, description="exhaustive eps sweep of Delta_eps"),
        Suite("omega-fiber", "S", trial_omega_fiber, min_n=3, description="Omega^eps in S_n and in the fiber over eps"),
        Suite("tangent-sum", "S", trial_tangent_sum, count=_sweep_count, description="orbit/slice tangent decomposition at Delta_eps"),
        Suite("bukong-degeneration", "S", trial_bukong, min_n=3, description="degeneration along x_n -> c x_n"),
        Suite("nilpotency", "W", trial_nilpotency, fixed=fixed_nilpotency, description="nilpotency criteria, Jordan-Chevalley, minimal p-polynomials, W_1 example"),
        Suite("dimensions", "S", fixed=fixed_dimensions, description="basis counts of W_n, S_n, S~_n"),
    ]
}


class UsageError(ValueError):
    """Invalid suite name or parameters."""


def validate(suite: str, p: int, n: int | None, seed: int, trials: int) -> tuple[Suite, SuiteParams]:
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    s = SUITES[suite]
    if not is_prime(p) or p <= 3:
        raise UsageError(f"p must be a prime > 3, got {p}")
    n = s.default_n if n is None else n
    if n < s.min_n:
        raise UsageError(f"suite {suite} needs n >= {s.min_n}, got {n}")
    if trials < 0:
        raise UsageError("trials must be non-negative")
    return s, SuiteParams(p, n, seed, trials)


def run_trial(suite: str, params: SuiteParams, trial: int) -> tuple[list[Check], object]:
    ctx = TrialContext(suite, params, trial)
    try:
        SUITES[suite].trial(ctx)
    except Exception as e:  # a crash is a failed check with its replay witness
        ctx.checks.append(Check(f"trial {trial}: completed", "suite executes without error", FAIL, ctx._witness(f"{type(e).__name__}: {e}")))
    return ctx.checks, ctx.data


def _run_trial_args(args):
    return run_trial(*args)


def run_suite(suite: str, p: int = 5, n: int | None = None, seed: int = 0, trials: int = 100, jobs: int = 1) -> SuiteReport:
    s, params = validate(suite, p, n, seed, trials)
    start = time.perf_counter()
    checks: list[Check] = list(s.fixed(params)) if s.fixed else []
    count = s.trial_count(params)
    args = [(suite, params, t) for t in range(count)]
    if jobs > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_trial_args, args, chunksize=max(1, count // (4 * jobs))))
    else:
        results = [run_trial(*a) for a in args]
    for trial_checks, _ in results:
        checks.extend(trial_checks)
    if s.summary:
        checks.extend(s.summary(params, [d for _, d in results]))
    elapsed = int((time.perf_counter() - start) * 1000)
    return SuiteReport(suite, params, checks, elapsed)
