"""Acceptance criteria at desk scale (p = 5, n in {2, 3}); every check is exact.

Each test records its criterion number, wall time and budget; the terminal
summary prints one PASS/FAIL line per criterion.
"""

import time

import pytest

from wittquot import suites
from wittquot.derlie import Derivation
from wittquot.invariants import (
    lemma_for1_rhs,
    m_adx_apply,
    p_powers_independent,
    phi_differential,
    phi_differential_lemma,
)
from wittquot.suites import run_suite, trial_rng, validate
from wittquot.truncpoly import ambient


@pytest.fixture
def criterion(record_property):
    """Time a criterion, check it ran within budget and record a summary line."""

    class Timer:
        def __call__(self, number, budget):
            self.budget = budget
            record_property("criterion", number)
            record_property("budget_s", budget)
            self.start = time.perf_counter()
            return self

        def __enter__(self):
            return self

        def __exit__(self, *exc):
            self.elapsed = time.perf_counter() - self.start
            record_property("elapsed_s", self.elapsed)
            return False

        def detail(self, text):
            record_property("detail", text)

        def within_budget(self):
            assert self.elapsed < self.budget, f"took {self.elapsed:.1f}s, budget {self.budget}s"

    return Timer()


def _assert_ok(rep, anchor=None, expected=None):
    assert rep.ok, [c.as_dict() for c in rep.failures]
    if anchor is not None:
        got = sum(1 for c in rep.checks if c.anchor == anchor and c.status == "pass")
        assert got == expected, f"{anchor}: {got} passing checks, expected {expected}"


def test_criterion_1_dimensions(criterion):
    with criterion(1, 10) as t:
        reps = [run_suite("dimensions", p, n) for p, n in [(5, 2), (5, 3), (7, 2)]]
    for rep in reps:
        _assert_ok(rep)
        assert len(rep.checks) == 3
    t.detail("; ".join(", ".join(c.name for c in r.checks) for r in reps))
    t.within_budget()


def test_criterion_2_charpoly_shape_and_cayley_hamilton(criterion):
    with criterion(2, 120) as t:
        r2 = run_suite("charpoly-shape", n=2, trials=100)
        r3 = run_suite("charpoly-shape", n=3, trials=25)
    _assert_ok(r2, suites.A_CH_RES, 100)
    _assert_ok(r3, suites.A_CH_RES, 25)
    _assert_ok(r2, suites.A_SHAPE, 100)
    _assert_ok(r3, suites.A_SHAPE, 25)
    t.detail("100 x in W_2, 25 x in W_3")
    t.within_budget()


def test_criterion_3_lemma_for1(criterion):
    with criterion(3, 300) as t:
        r2 = run_suite("lemma-for-1", n=2, trials=50)
        amb = ambient(5, 3)
        fast_used = 0
        for trial in range(10):
            rng = trial_rng(1, trial)
            x, y = Derivation.random(amb, rng), Derivation.random(amb, rng)
            lhs = m_adx_apply(x, y)
            dual = phi_differential(x, y)
            if p_powers_independent(x):
                fast = phi_differential_lemma(x, y)
                assert fast is not None and lhs == lemma_for1_rhs(x, fast)
                assert fast == dual
                fast_used += 1
            else:
                assert lhs == lemma_for1_rhs(x, dual)
    _assert_ok(r2, suites.A_FOR1, 50)
    t.detail(f"50 pairs in W_2 (dual), 10 in W_3 ({fast_used} via fast path, all dual-checked)")
    t.within_budget()


def test_criterion_4_u1_equals_u3(criterion):
    with criterion(4, 120) as t:
        _, params = validate("prop-pro-1", 5, 2, 0, 200)
        results = [suites.run_trial("prop-pro-1", params, trial) for trial in range(200)]
    checks = [c for cs, _ in results for c in cs]
    u13 = [c for c in checks if c.anchor == suites.A_U1U3]
    assert len(u13) == 200 and all(c.status == "pass" for c in u13), [c.as_dict() for c in u13 if c.status != "pass"]
    kinds = {kind for kind, _ in (d for _, d in results)}
    regular = sum(1 for _, (_, u1) in results if u1)
    mismatches = [c for c in checks if c.status == "anomaly"]
    t.detail(f"200 samples of kinds {sorted(kinds)}, {regular} regular; U_2 mismatches: {len(mismatches)}")
    assert {"nilpotent", "torus-perturbed", "delta-conjugate"} <= kinds and 0 < regular < 200
    assert not mismatches, [c.as_dict() for c in mismatches]
    t.within_budget()


def test_criterion_5_invariance(criterion):
    with criterion(5, 60) as t:
        rep = run_suite("invariance", n=2, trials=20)
    _assert_ok(rep, suites.A_INV, 20)
    t.detail(f"20 automorphisms x {suites.INVARIANCE_ELEMENTS} elements")
    t.within_budget()


def test_criterion_6_slice_quotients(criterion):
    with criterion(6, 30) as t:
        rep = run_suite("phig-delta", n=3, trials=25)
    _assert_ok(rep, suites.A_PHIG, 25)
    _assert_ok(rep, suites.A_CONST, 25)
    _assert_ok(rep, suites.A_INJECTIVE, 1)
    t.detail("all 25 eps in F_5^2")
    t.within_budget()


def test_criterion_7_diagram_and_phi0(criterion):
    with criterion(7, 300) as t:
        diag = run_suite("commutative-diagram", n=3, trials=100)
        phi0 = run_suite("prop-2-4", n=3, trials=100)
    _assert_ok(diag, suites.A_DIAGRAM, 100)
    _assert_ok(phi0, suites.A_PHI0, 100)
    t.detail("100 sigma(y), y in W_2; 100 random elements of S_3")
    t.within_budget()


def test_criterion_8_omega_fiber(criterion):
    with criterion(8, 300) as t:
        rep = run_suite("omega-fiber", n=3, trials=25)
    _assert_ok(rep, suites.A_OMEGA_FIBER, 25)
    zeros = sum(1 for c in rep.checks if c.anchor == suites.A_OMEGA_NIL)
    assert zeros >= 5
    t.detail(f"25 (eps, f) at (5, 3), {zeros} with eps = 0 all nilpotent")
    t.within_budget()


def test_criterion_9_tangent_geometry(criterion):
    with criterion(9, 120) as t:
        rep = run_suite("tangent-sum", n=3, trials=25)
    _assert_ok(rep, suites.A_TANGENT, 25)
    _assert_ok(rep, suites.A_STAB, 25)
    _assert_ok(rep, suites.A_DPHI_ORBIT, 25)
    t.detail("dims (48, 2, 0, 50) at all 25 eps")
    t.within_budget()


def test_criterion_10_degeneration(criterion):
    with criterion(10, 60) as t:
        rep = run_suite("bukong-degeneration", n=3, trials=10)
    for anchor in (suites.A_BUKONG_CONST, suites.A_BUKONG_LIMIT, suites.A_BUKONG_LIMIT_S):
        _assert_ok(rep, anchor, 10)
    t.detail("10 elements of S_3, all c in F_5^*")
    t.within_budget()


def test_criterion_11_w1_example(criterion):
    with criterion(11, 5) as t:
        _, params = validate("nilpotency", 5, 2, 0, 0)
        checks = suites.fixed_nilpotency(params)
    assert len(checks) == 5 and all(c.status == "pass" for c in checks)
    t.detail("(1+x)d and lambda x d, lambda in F_5^*")
    t.within_budget()


def test_criterion_12_differential_rank_evidence(criterion):
    with criterion(12, 300) as t:
        rep = run_suite("prop-pro-2-evidence", n=2, trials=40)
    _assert_ok(rep, suites.A_SMOOTH, 20)
    _assert_ok(rep, suites.A_SINGULAR, 20)
    assert "sampled evidence" in suites.A_SMOOTH and "sampled evidence" in suites.A_SINGULAR
    t.detail("sampled evidence: 20 regular points rank n, 20 nilpotent points rank < n")
    t.within_budget()
