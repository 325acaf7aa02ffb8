"""Randomized conformance checks for n-inner products.

Each checker draws inputs from a seeded generator, evaluates an identity that
every n-inner product satisfies, and records the largest residual normalized
by a Hadamard-type bound on the values involved. The first input that breaks
the identity is kept as a witness.

Axiom ids:

========  ===========================================================
D21-i′    <A|A> > 0 for independent A, = 0 for dependent A
D21-ii    <A|B> = <B|A>
D21-iii   <λa_1, a_2, ...|B> = λ<A|B>
D21-iv    odd permutations of the left slots negate the value
D21-v     additivity in the first left slot
D21-vi    a_1 orthogonal to span(B) forces <a_1, a_2, ...|B> = 0
D11-i..v  the (n+1)-argument conditions on (a, b | x_1, ..., x_{n-1})
========  ===========================================================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import InputError
from .linalg import RANK_TOL, nullspace, permutation_sign
from .ninner import NInnerForm, value_scale
from .sampling import dependent_tuple, independent_tuple, uniform_tuple

__all__ = [
    "AXIOM_IDS",
    "AxiomReport",
    "SampleConfig",
    "aggregate_verdict",
    "check_all",
    "check_axiom_additivity",
    "check_axiom_alternating",
    "check_axiom_homogeneity",
    "check_axiom_positivity",
    "check_axiom_symmetry",
    "check_axiom_vi",
    "check_definition_1_1",
    "check_definition_2_1",
]

AXIOM_IDS = (
    "D21-i′",
    "D21-ii",
    "D21-iii",
    "D21-iv",
    "D21-v",
    "D21-vi",
    "D11-i",
    "D11-ii",
    "D11-iii",
    "D11-iv",
    "D11-v",
)
HOMOGENEITY_FACTORS = (-2.0, 0.0, 0.5, 3.0)
SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class SampleConfig:
    m: int
    n: int
    seed: int = 0
    trials: int = 200
    tol: float = 1e-9
    rank_tol: float = RANK_TOL

    def __post_init__(self):
        if not 1 <= self.n <= self.m:
            raise InputError(f"need 1 <= n <= m, got m={self.m}, n={self.n}")
        if self.trials < 1:
            raise InputError("trials must be positive")
        if not self.tol > 0 or not self.rank_tol > 0:
            raise InputError("tolerances must be positive")

    def rng(self, axiom: str) -> np.random.Generator:
        """Independent stream per axiom, so checks can run in any order."""
        seq = np.random.SeedSequence(self.seed & SEED_MASK, spawn_key=(AXIOM_IDS.index(axiom),))
        return np.random.default_rng(seq)


@dataclass
class AxiomReport:
    axiom: str
    verdict: str  # "pass" | "fail" | "undecided"
    trials: int
    max_residual: float
    witness: dict | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        out = {
            "axiom": self.axiom,
            "verdict": self.verdict,
            "trials": self.trials,
            "max_residual": self.max_residual,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note is not None:
            out["note"] = self.note
        return out


def _plain(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _relative(value: float, scale: float) -> float:
    if scale > 0.0:
        return abs(value) / scale
    return 0.0 if value == 0.0 else float("inf")


@dataclass
class _Probe:
    axiom: str
    cfg: SampleConfig
    max_residual: float = 0.0
    witness: dict | None = None
    failed: bool = False
    undecided: bool = False
    notes: list[str] = field(default_factory=list)

    def record(self, residual: float, failed: bool | None = None, **inputs) -> None:
        if not residual <= self.max_residual:  # also catches NaN
            self.max_residual = float(residual) if residual == residual else float("inf")
        bad = (residual > self.cfg.tol) if failed is None else failed
        if bad:
            self.failed = True
            if self.witness is None:
                self.witness = {k: _plain(v) for k, v in inputs.items()}
                self.witness["residual"] = float(residual)

    def report(self) -> AxiomReport:
        verdict = "fail" if self.failed else ("undecided" if self.undecided else "pass")
        note = "; ".join(dict.fromkeys(self.notes)) or None
        return AxiomReport(self.axiom, verdict, self.cfg.trials, self.max_residual, self.witness, note)


def _vacuous(axiom: str, cfg: SampleConfig, why: str) -> AxiomReport:
    return AxiomReport(axiom, "pass", 0, 0.0, note=why)


def _odd_permutation(rng: np.random.Generator, n: int) -> np.ndarray:
    perm = rng.permutation(n)
    if permutation_sign(perm.tolist()) == 1:
        perm[[0, 1]] = perm[[1, 0]]
    return perm


def check_axiom_positivity(form: NInnerForm, cfg: SampleConfig) -> AxiomReport:
    """Strictly positive on independent tuples, zero on constructed dependent ones."""
    probe = _Probe("D21-i′", cfg)
    rng = cfg.rng(probe.axiom)
    for _ in range(cfg.trials):
        A = independent_tuple(rng, cfg.n, cfg.m, cfg.rank_tol)
        v = form.inner(A, A)
        probe.record(max(0.0, -v) / value_scale(form, A, A), failed=not v > 0.0,
                     case="independent", A=A, value=v)
        D = dependent_tuple(rng, cfg.n, cfg.m)
        v = form.inner(D, D)
        probe.record(_relative(v, value_scale(form, D, D)), case="dependent", A=D, value=v)
    return probe.report()


def check_axiom_symmetry(form: NInnerForm, cfg: SampleConfig) -> AxiomReport:
    probe = _Probe("D21-ii", cfg)
    rng = cfg.rng(probe.axiom)
    for _ in range(cfg.trials):
        A, B = uniform_tuple(rng, cfg.n, cfg.m), uniform_tuple(rng, cfg.n, cfg.m)
        ab, ba = form.inner(A, B), form.inner(B, A)
        probe.record(_relative(ab - ba, value_scale(form, A, B)), A=A, B=B, left_right=ab, right_left=ba)
    return probe.report()


def check_axiom_homogeneity(form: NInnerForm, cfg: SampleConfig) -> AxiomReport:
    probe = _Probe("D21-iii", cfg)
    rng = cfg.rng(probe.axiom)
    for t in range(cfg.trials):
        lam = HOMOGENEITY_FACTORS[t] if t < len(HOMOGENEITY_FACTORS) else rng.uniform(-3.0, 3.0)
        A, B = uniform_tuple(rng, cfg.n, cfg.m), uniform_tuple(rng, cfg.n, cfg.m)
        scaled = A.copy()
        scaled[0] *= lam
        lhs, base = form.inner(scaled, B), form.inner(A, B)
        scale = max(1.0, abs(lam)) * value_scale(form, A, B)
        probe.record(_relative(lhs - lam * base, scale), A=A, B=B, factor=lam, scaled=lhs, unscaled=base)
    return probe.report()


def check_axiom_alternating(form: NInnerForm, cfg: SampleConfig) -> AxiomReport:
    """Odd permutations negate; the double-permutation sign rule; repeated vectors give 0."""
    if cfg.n == 1:
        return _vacuous("D21-iv", cfg, "no odd permutation of a single slot")
    probe = _Probe("D21-iv", cfg)
    rng = cfg.rng(probe.axiom)
    n = cfg.n
    for _ in range(cfg.trials):
        A, B = uniform_tuple(rng, n, cfg.m), uniform_tuple(rng, n, cfg.m)
        base = form.inner(A, B)
        scale = value_scale(form, A, B)

        sigma = _odd_permutation(rng, n)
        swapped = form.inner(A[sigma], B)
        probe.record(_relative(base + swapped, scale), check="odd", A=A, B=B,
                     permutation=sigma, value=base, permuted=swapped)

        pi, tau = rng.permutation(n), rng.permutation(n)
        sign = permutation_sign(pi.tolist()) * permutation_sign(tau.tolist())
        both = form.inner(A[pi], B[tau])
        probe.record(_relative(base - sign * both, scale), check="double", A=A, B=B,
                     left_permutation=pi, right_permutation=tau, value=base, permuted=both)

        i, j = rng.choice(n, size=2, replace=False)
        repeated = A.copy()
        repeated[j] = repeated[i]
        v = form.inner(repeated, B)
        probe.record(_relative(v, value_scale(form, repeated, B)), check="repeated", A=repeated, B=B, value=v)
    return probe.report()


def check_axiom_additivity(form: NInnerForm, cfg: SampleConfig) -> AxiomReport:
    probe = _Probe("D21-v", cfg)
    rng = cfg.rng(probe.axiom)
    for _ in range(cfg.trials):
        A, B = uniform_tuple(rng, cfg.n, cfg.m), uniform_tuple(rng, cfg.n, cfg.m)
        c = rng.uniform(-1.0, 1.0, cfg.m)
        summed, only_c = A.copy(), A.copy()
        summed[0] += c
        only_c[0] = c
        lhs = form.inner(summed, B)
        parts = form.inner(A, B) + form.inner(only_c, B)
        scale = max(value_scale(form, T, B) for T in (summed, A, only_c))
        probe.record(_relative(lhs - parts, scale), A=A, B=B, c=c, combined=lhs, separate=parts)
    return probe.report()


def _orthogonality_system(form: NInnerForm, B: np.ndarray) -> np.ndarray:
    # row i, column k: <e_k, b_1..^b_i..b_n | B>, linear in the first slot
    n, m = B.shape
    E = np.eye(m)
    K = np.empty((n, m))
    for i in range(n):
        rest = np.delete(B, i, axis=0)
        for k in range(m):
            K[i, k] = form.inner(np.vstack([E[k], rest]), B)
    return K


def check_axiom_vi(form: NInnerForm, cfg: SampleConfig) -> AxiomReport:
    """Build a_1 orthogonal to span(B) from the nullspace of the linear conditions,
    then require <a_1, a_2, ..., a_n | B> = 0 for random a_2..a_n."""
    if cfg.m <= cfg.n:
        return _vacuous("D21-vi", cfg, "m <= n: no vector is orthogonal to an n-dimensional subspace")
    probe = _Probe("D21-vi", cfg)
    rng = cfg.rng(probe.axiom)
    for _ in range(cfg.trials):
        B = independent_tuple(rng, cfg.n, cfg.m, cfg.rank_tol)
        N = nullspace(_orthogonality_system(form, B), cfg.rank_tol)
        if N.shape[0] == 0:
            probe.undecided = True
            probe.notes.append("no orthogonal vector found for some B")
            continue
        a1 = rng.uniform(-1.0, 1.0, N.shape[0]) @ N
        length = float(np.linalg.norm(a1))
        if length == 0.0:
            probe.undecided = True
            probe.notes.append("orthogonal vector vanished")
            continue
        a1 /= length
        A = np.vstack([a1, uniform_tuple(rng, cfg.n - 1, cfg.m)])
        v = form.inner(A, B)
        probe.record(_relative(v, value_scale(form, A, B)), A=A, B=B, value=v)
    return probe.report()


def check_definition_2_1(form: NInnerForm, cfg: SampleConfig) -> list[AxiomReport]:
    return [
        check_axiom_positivity(form, cfg),
        check_axiom_symmetry(form, cfg),
        check_axiom_homogeneity(form, cfg),
        check_axiom_alternating(form, cfg),
        check_axiom_additivity(form, cfg),
        check_axiom_vi(form, cfg),
    ]


def _reducer(form: NInnerForm) -> Callable:
    def reduce(a, b, X):
        return form.inner(np.vstack([a, X]), np.vstack([b, X]))

    return reduce


def _misiak_scale(form, a, b, X) -> float:
    return value_scale(form, np.vstack([a, X]), np.vstack([b, X]))


def _check_d11_i(form, cfg) -> AxiomReport:
    probe = _Probe("D11-i", cfg)
    rng = cfg.rng(probe.axiom)
    red = _reducer(form)
    for _ in range(cfg.trials):
        for case, x in (
            ("independent", independent_tuple(rng, cfg.n, cfg.m, cfg.rank_tol)),
            ("dependent", dependent_tuple(rng, cfg.n, cfg.m)),
        ):
            v = red(x[0], x[0], x[1:])
            scale = _misiak_scale(form, x[0], x[0], x[1:])
            if case == "independent":
                probe.record(max(0.0, -v) / scale, failed=not v > 0.0, case=case, x=x, value=v)
            else:
                probe.record(_relative(v, scale), case=case, x=x, value=v)
    return probe.report()


def _check_d11_ii(form, cfg) -> AxiomReport:
    probe = _Probe("D11-ii", cfg)
    rng = cfg.rng(probe.axiom)
    red = _reducer(form)
    for t in range(cfg.trials):
        a, b = rng.uniform(-1.0, 1.0, (2, cfg.m))
        X = uniform_tuple(rng, cfg.n - 1, cfg.m)
        pi = rng.permutation(cfg.n - 1)
        fa, fb = (b, a) if t % 2 else (a, b)
        base, moved = red(a, b, X), red(fa, fb, X[pi])
        probe.record(_relative(base - moved, _misiak_scale(form, a, b, X)),
                     a=a, b=b, X=X, permutation=pi, swapped=bool(t % 2), value=base, permuted=moved)
    return probe.report()


def _check_d11_iii(form, cfg) -> AxiomReport:
    if cfg.n == 1:
        return _vacuous("D11-iii", cfg, "condition only applies for n > 1")
    probe = _Probe("D11-iii", cfg)
    rng = cfg.rng(probe.axiom)
    red = _reducer(form)
    for _ in range(cfg.trials):
        x = uniform_tuple(rng, cfg.n, cfg.m)
        first = red(x[0], x[0], x[1:])
        exchanged = x[[1, 0] + list(range(2, cfg.n))]
        second = red(exchanged[0], exchanged[0], exchanged[1:])
        probe.record(_relative(first - second, value_scale(form, x, x)), x=x, value=first, exchanged=second)
    return probe.report()


def _check_d11_iv(form, cfg) -> AxiomReport:
    probe = _Probe("D11-iv", cfg)
    rng = cfg.rng(probe.axiom)
    red = _reducer(form)
    for t in range(cfg.trials):
        alpha = HOMOGENEITY_FACTORS[t] if t < len(HOMOGENEITY_FACTORS) else rng.uniform(-3.0, 3.0)
        a, b = rng.uniform(-1.0, 1.0, (2, cfg.m))
        X = uniform_tuple(rng, cfg.n - 1, cfg.m)
        lhs, base = red(alpha * a, b, X), red(a, b, X)
        scale = max(1.0, abs(alpha)) * _misiak_scale(form, a, b, X)
        probe.record(_relative(lhs - alpha * base, scale), a=a, b=b, X=X, factor=alpha, scaled=lhs, unscaled=base)
    return probe.report()


def _check_d11_v(form, cfg) -> AxiomReport:
    probe = _Probe("D11-v", cfg)
    rng = cfg.rng(probe.axiom)
    red = _reducer(form)
    for _ in range(cfg.trials):
        a, a1, b = rng.uniform(-1.0, 1.0, (3, cfg.m))
        X = uniform_tuple(rng, cfg.n - 1, cfg.m)
        lhs = red(a + a1, b, X)
        parts = red(a, b, X) + red(a1, b, X)
        scale = max(_misiak_scale(form, u, b, X) for u in (a + a1, a, a1))
        probe.record(_relative(lhs - parts, scale), a=a, a1=a1, b=b, X=X, combined=lhs, separate=parts)
    return probe.report()


def check_definition_1_1(form: NInnerForm, cfg: SampleConfig) -> list[AxiomReport]:
    """The five (n+1)-argument conditions, applied to the reduced product."""
    return [f(form, cfg) for f in (_check_d11_i, _check_d11_ii, _check_d11_iii, _check_d11_iv, _check_d11_v)]


def check_all(form: NInnerForm, cfg: SampleConfig) -> list[AxiomReport]:
    if (getattr(form, "m", cfg.m), getattr(form, "n", cfg.n)) != (cfg.m, cfg.n):
        raise InputError(f"form has (m, n) = {(form.m, form.n)}, config asks for {(cfg.m, cfg.n)}")
    return check_definition_2_1(form, cfg) + check_definition_1_1(form, cfg)


def aggregate_verdict(reports: list[AxiomReport]) -> str:
    verdicts = {r.verdict for r in reports}
    if "fail" in verdicts:
        return "fail"
    if "undecided" in verdicts:
        return "undecided"
    return "pass"
