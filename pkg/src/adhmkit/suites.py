"""
Seeded property suites over the monad and bar-construction layers.

Trial ``i`` of every suite draws from ``numpy.random.default_rng(seed + i)``
so any single failure can be replayed on its own: the counterexample payload
carries a ready-made one-trial :class:`SuiteConfig`.
"""

from __future__ import annotations

import platform
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .adhm import (AdhmConfig, BlowupConfig, config_distance, config_norm, gauge_apply,
                   gauge_equivalent, is_valid, nondegenerate, random_gauge,
                   random_nondegenerate, random_nondegenerate_blowup, residual)
from .bar.complex import build_bar, check_simplicial_identities, homology, truncated_euler
from .bar.monoids import FiniteMonoid, MonoidModule, all_monoids
from .bar.multidegree import check_support_initiality
from .bar.ordinals import check_cofinal_inclusion, check_initial_object
from .errors import ConfigInvalid
from .gluing import (GluingContext, Isometry, boxplus_oo, boxplus_oy, boxplus_xo,
                     from_delta_chart, glue_denominators, isometry_act, pullback,
                     to_delta_chart, translate, whitney_sum)
from .io import config_to_json, context_from_json, context_to_json

SUITES = ("integrability", "nondegeneracy", "gauge", "delta_chart", "prop245_1",
          "prop245_2", "prop245_3", "bar_lemmas", "bar_homology", "multidegree")

CHART_TOL = 1e-12
MIN_DENOMINATOR = 0.1
WHITNEY_CONVENTION = ("framing V1 + V2 with b, c block diagonal; factors translated "
                      "to x and y before summing")


def default_context() -> GluingContext:
    return GluingContext((0, 0), (3, 0), 1.0)


@dataclass
class SuiteConfig:
    seed: int = 0
    trials: int = 20
    k_range: tuple[int, int] = (1, 2)
    r_range: tuple[int, int] = (2, 3)
    gluing: GluingContext = field(default_factory=default_context)
    residual_tol: float = 1e-9
    gauge_tol: float = 1e-6
    suites: tuple[str, ...] = SUITES

    def __post_init__(self):
        self.k_range = tuple(int(v) for v in self.k_range)
        self.r_range = tuple(int(v) for v in self.r_range)
        self.suites = tuple(self.suites)
        if not (self.residual_tol > 0 and self.gauge_tol > 0):
            raise ConfigInvalid("tolerances must be positive")
        if self.trials < 1:
            raise ConfigInvalid("trials must be at least 1")
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ConfigInvalid(f"unknown suites: {sorted(unknown)}")
        for lo, hi in (self.k_range, self.r_range):
            if not 0 <= lo <= hi:
                raise ConfigInvalid("ranges must satisfy 0 <= lo <= hi")
        if self.r_range[0] < 2:
            raise ConfigInvalid("charge-one draws need framing rank r >= 2")

    def to_json(self) -> dict:
        return {"seed": self.seed, "trials": self.trials, "k_range": list(self.k_range),
                "r_range": list(self.r_range), "gluing": context_to_json(self.gluing),
                "residual_tol": self.residual_tol, "gauge_tol": self.gauge_tol,
                "suites": list(self.suites)}

    @classmethod
    def from_json(cls, obj: dict) -> "SuiteConfig":
        if not isinstance(obj, dict):
            raise ConfigInvalid("suite config must be a JSON object")
        known = {"seed", "trials", "k_range", "r_range", "gluing", "residual_tol",
                 "gauge_tol", "suites"}
        extra = set(obj) - known
        if extra:
            raise ConfigInvalid(f"unknown suite config keys: {sorted(extra)}")
        kw = dict(obj)
        if "gluing" in kw:
            kw["gluing"] = context_from_json(kw["gluing"])
        return cls(**kw)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    trials: int
    worst_residual: float
    counterexample: dict | None = None
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"passed": self.passed, "trials": self.trials,
               "worst_residual": self.worst_residual, "counterexample": self.counterexample}
        if self.notes:
            out["notes"] = self.notes
        return out


@dataclass
class SuiteReport:
    config: SuiteConfig
    results: dict[str, SuiteResult]
    timing: dict[str, float]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "passed": self.passed,
            "config": self.config.to_json(),
            "tolerances": {"residual_tol": self.config.residual_tol,
                           "gauge_tol": self.config.gauge_tol, "chart_tol": CHART_TOL,
                           "min_denominator": MIN_DENOMINATOR},
            "versions": {"adhmkit": __version__, "numpy": np.__version__,
                         "python": platform.python_version()},
            "suites": {name: r.to_json() for name, r in self.results.items()},
        }
        if timing:
            out["timing"] = self.timing
        return out


# -- drawing helpers -----------------------------------------------------------

def _subseed(rng) -> int:
    return int(rng.integers(2**31))


def _pick(rng, lo_hi) -> int:
    return int(rng.integers(lo_hi[0], lo_hi[1] + 1))


def _charge_one(rng, r: int, ctx: GluingContext) -> AdhmConfig:
    return to_delta_chart(random_nondegenerate(1, r, _subseed(rng)), ctx)


def _charge_one_blowup(rng, r: int, ctx: GluingContext) -> BlowupConfig:
    return to_delta_chart(random_nondegenerate_blowup(1, r, _subseed(rng)), ctx)


def _glue_pair(rng, r, ctx, blowup_side=None, tries=100):
    """Two charge-one factors whose gluing denominators exceed ``MIN_DENOMINATOR``."""
    for _ in range(tries):
        first = (_charge_one_blowup if blowup_side == "x" else _charge_one)(rng, r, ctx)
        second = (_charge_one_blowup if blowup_side == "y" else _charge_one)(rng, r, ctx)
        side = {"x": "xo", "y": "oy"}.get(blowup_side, "oo")
        if glue_denominators(first, second, ctx, side) > MIN_DENOMINATOR:
            return first, second
    raise ConfigInvalid("gluing context leaves no room for denominators above the floor")


def _rerun(cfg: SuiteConfig, name: str, trial_seed: int) -> dict:
    one = SuiteConfig(trial_seed, 1, cfg.k_range, cfg.r_range, cfg.gluing,
                      cfg.residual_tol, cfg.gauge_tol, (name,))
    return one.to_json()


def _payload(cfg, name, trial_seed, configs: dict, **extra) -> dict:
    out = {"rerun": _rerun(cfg, name, trial_seed),
           "configs": {k: config_to_json(v) for k, v in configs.items()}}
    out.update(extra)
    return out


def _gauge_residual(c1, c2, tol):
    """Apply-residual of the recovered gauge element, or inf when none is found."""
    g = gauge_equivalent(c1, c2, tol)
    if g is None:
        return float("inf"), None
    return config_distance(gauge_apply(g, c1), c2) / max(1.0, config_norm(c2)), g


def _gauge_attempt(g) -> dict | None:
    if g is None:
        return None
    from .io import matrix_to_json
    out = {"g1": matrix_to_json(g.g1)}
    if g.g0 is not None:
        out["g0"] = matrix_to_json(g.g0)
    return out


# -- randomized suites: each trial returns (residual, passed, payload-or-None) -------

def _trial_integrability(cfg, rng, seed):
    ctx = cfg.gluing
    r = _pick(rng, cfg.r_range)
    c1, c2 = _glue_pair(rng, r, ctx)
    m1, d1 = _glue_pair(rng, r, ctx, "x")
    d2, m2 = _glue_pair(rng, r, ctx, "y")
    outs = {"oo": boxplus_oo(c1, c2, ctx), "xo": boxplus_xo(m1, d1, ctx),
            "oy": boxplus_oy(d2, m2, ctx)}
    res = max(residual(o) for o in outs.values())
    ok = res < cfg.residual_tol and all(o.k == 2 for o in outs.values())
    payload = None if ok else _payload(cfg, "integrability", seed,
                                       {"c1": c1, "c2": c2, "m1": m1, "d1": d1, "d2": d2, "m2": m2})
    return res, ok, payload


def _trial_nondegeneracy(cfg, rng, seed):
    k, r = _pick(rng, cfg.k_range), _pick(rng, cfg.r_range)
    base = random_nondegenerate(k, r, _subseed(rng))
    moved = gauge_apply(random_gauge(k, rng), base)
    # a summand with no framing is invisible to b and c: never stable nor costable
    loose = AdhmConfig(rng.standard_normal((1, 1)), rng.standard_normal((1, 1)),
                       np.zeros((1, 0)), np.zeros((0, 1)))
    bad = whitney_sum(base, loose)
    ok = (is_valid(base) and nondegenerate(base) and nondegenerate(moved)
          and is_valid(bad) and not nondegenerate(bad))
    payload = None if ok else _payload(cfg, "nondegeneracy", seed, {"base": base, "bad": bad})
    return residual(base), ok, payload


def _trial_gauge(cfg, rng, seed):
    k, r = _pick(rng, cfg.k_range), _pick(rng, cfg.r_range)
    blowup = bool(rng.integers(2))
    draw = random_nondegenerate_blowup if blowup else random_nondegenerate
    src = draw(k, r, _subseed(rng))
    g = random_gauge(k, rng, blowup=blowup)
    dst = gauge_apply(g, src)
    res, found = _gauge_residual(src, dst, cfg.gauge_tol)
    other = draw(k, r, _subseed(rng))
    spurious = gauge_equivalent(src, other, cfg.gauge_tol) if k else None
    ok = res < cfg.gauge_tol and spurious is None
    payload = None if ok else _payload(cfg, "gauge", seed, {"src": src, "dst": dst, "other": other},
                                       gauge_attempt=_gauge_attempt(found or spurious))
    return res, ok, payload


def _trial_delta_chart(cfg, rng, seed):
    ctx = cfg.gluing
    r = _pick(rng, cfg.r_range)
    m = random_nondegenerate_blowup(1, r, _subseed(rng))
    inside = to_delta_chart(random_nondegenerate_blowup(1, r, _subseed(rng)), ctx)
    res = max(config_distance(from_delta_chart(to_delta_chart(m, ctx), ctx), m)
              / max(1.0, config_norm(m)),
              config_distance(to_delta_chart(from_delta_chart(inside, ctx), ctx), inside)
              / max(1.0, config_norm(inside)))
    ok = res < CHART_TOL
    payload = None if ok else _payload(cfg, "delta_chart", seed, {"m": m, "inside": inside})
    return res, ok, payload


def _random_d(rng, k):
    return np.asarray(random_gauge(k, rng).g1)


def _trial_prop245_1(cfg, rng, seed):
    ctx = cfg.gluing
    r = _pick(rng, cfg.r_range)
    c1, c2 = _glue_pair(rng, r, ctx)
    glued = boxplus_oo(c1, c2, ctx)
    pairs = {
        "x": (pullback(glued, _random_d(rng, 2), ctx.x),
              boxplus_xo(pullback(c1, _random_d(rng, 1)), c2, ctx)),
        "y": (pullback(glued, _random_d(rng, 2), ctx.y),
              boxplus_oy(c1, pullback(c2, _random_d(rng, 1)), ctx)),
    }
    res = max(_gauge_residual(a, b, cfg.gauge_tol)[0] for a, b in pairs.values())
    ok = res < cfg.gauge_tol
    payload = None if ok else _payload(cfg, "prop245_1", seed, {"c1": c1, "c2": c2})
    return res, ok, payload


def _trial_prop245_2(cfg, rng, seed):
    ctx = cfg.gluing
    r = _pick(rng, cfg.r_range)
    c1, c2 = _glue_pair(rng, r, ctx)
    alpha = Isometry.random(r, 2 * r, rng)
    lhs = isometry_act(alpha, boxplus_oo(c1, c2, ctx))
    rhs = boxplus_oo(isometry_act(alpha, c1), isometry_act(alpha, c2), ctx)
    res, _ = _gauge_residual(lhs, rhs, cfg.gauge_tol)
    ok = res < cfg.gauge_tol
    payload = None if ok else _payload(cfg, "prop245_2", seed, {"c1": c1, "c2": c2},
                                       isometry=[[[float(v.real), float(v.imag)] for v in row]
                                                 for row in alpha.matrix])
    return res, ok, payload


def _trial_prop245_3(cfg, rng, seed):
    ctx = cfg.gluing
    r = _pick(rng, cfg.r_range)
    c1, c2 = _glue_pair(rng, r, ctx)
    lhs = whitney_sum(translate(c1, ctx.x), translate(c2, ctx.y))
    rhs = boxplus_oo(isometry_act(Isometry.inclusion(r, 2 * r, 0), c1),
                     isometry_act(Isometry.inclusion(r, 2 * r, r), c2), ctx)
    res, _ = _gauge_residual(lhs, rhs, cfg.gauge_tol)
    ok = res < cfg.gauge_tol
    payload = None if ok else _payload(cfg, "prop245_3", seed, {"c1": c1, "c2": c2})
    return res, ok, payload


_TRIALS = {
    "integrability": _trial_integrability,
    "nondegeneracy": _trial_nondegeneracy,
    "gauge": _trial_gauge,
    "delta_chart": _trial_delta_chart,
    "prop245_1": _trial_prop245_1,
    "prop245_2": _trial_prop245_2,
    "prop245_3": _trial_prop245_3,
}


def _run_randomized(cfg: SuiteConfig, name: str) -> SuiteResult:
    worst, first_failure = 0.0, None
    for i in range(cfg.trials):
        seed = cfg.seed + i
        res, ok, payload = _TRIALS[name](cfg, np.random.default_rng(seed), seed)
        worst = max(worst, float(res))
        if not ok and first_failure is None:
            first_failure = payload
    notes = {"convention": WHITNEY_CONVENTION} if name == "prop245_3" else {}
    return SuiteResult(name, first_failure is None, cfg.trials, worst, first_failure, notes)


# -- exhaustive suites ---------------------------------------------------------

def _bar_lemmas(cfg: SuiteConfig) -> SuiteResult:
    checks = {}
    for flavor in ("DeltaBar", "DeltaHat"):
        rep = check_initial_object(flavor, 5)
        checks[f"{flavor}_initial"] = (rep.initial, {str(n): v for n, v in rep.hom_from_empty.items()})
        checks[f"{flavor}_final"] = (rep.final, {str(n): v for n, v in rep.hom_to_empty.items()})
    for which in ("Delta->DeltaBar", "DeltaBar->DeltaHat"):
        rep = check_cofinal_inclusion(which, 5)
        checks[which] = (rep.passed, rep.failures)
    failed = {k: detail for k, (ok, detail) in checks.items() if not ok}
    cex = None
    if failed:
        cex = {"rerun": _rerun(cfg, "bar_lemmas", cfg.seed), "failed_checks": failed}
    return SuiteResult("bar_lemmas", not failed, 1, 0.0, cex,
                       {"checks": {k: ok for k, (ok, _) in checks.items()}})


def _bar_homology(cfg: SuiteConfig) -> SuiteResult:
    c2 = FiniteMonoid.cyclic(2)
    problems = {}
    point_l, point_r = MonoidModule.point(c2, "right"), MonoidModule.point(c2, "left")
    bc = build_bar(point_l, c2, point_r, 5)
    got = [(g.rank, g.torsion) for g in homology(bc, 3)]
    if got != [(1, ()), (0, (2,)), (0, ()), (0, (2,))]:
        problems["B(*,C2,*)"] = [str(g) for g in homology(bc, 3)]
    if check_simplicial_identities(build_bar(point_l, c2, point_r, 4)):
        problems["simplicial_identities"] = "C2, N=4"
    checked = 0
    for order in (1, 2, 3):
        for m in all_monoids(order):
            reg = MonoidModule.regular(m, "right")
            bc = build_bar(reg, m, MonoidModule.point(m, "left"), 4)
            groups = homology(bc, 3)
            checked += 1
            if [(g.rank, g.torsion) for g in groups] != [(1, ())] + [(0, ())] * 3:
                problems[f"B(M,M,*) order {order} table {m.table}"] = [str(g) for g in groups]
            lhs, rhs = truncated_euler(bc, 3)
            if lhs != rhs:
                problems[f"euler order {order} table {m.table}"] = [lhs, rhs]
    cex = {"rerun": _rerun(cfg, "bar_homology", cfg.seed), "problems": problems} if problems else None
    return SuiteResult("bar_homology", not problems, 1 + checked, 0.0, cex)


def _multidegree(cfg: SuiteConfig) -> SuiteResult:
    points = ("x", "y", "z")
    failures, count = [], 0
    for size in range(len(points) + 1):
        for k in range(4):
            rep = check_support_initiality(k, points[:size], n=1)
            count += rep.checked
            if not rep.passed:
                failures.append({"k": k, "I": list(points[:size]),
                                 "first": repr(rep.failures[0]["multidegree"])})
    cex = {"rerun": _rerun(cfg, "multidegree", cfg.seed), "failures": failures} if failures else None
    return SuiteResult("multidegree", not failures, count, 0.0, cex)


_EXHAUSTIVE = {"bar_lemmas": _bar_lemmas, "bar_homology": _bar_homology,
               "multidegree": _multidegree}


def run_suites(cfg: SuiteConfig) -> SuiteReport:
    """Run the selected suites in canonical order."""
    if not isinstance(cfg, SuiteConfig):
        raise ConfigInvalid("run_suites needs a SuiteConfig")
    results, timing = {}, {}
    start = time.perf_counter()
    for name in SUITES:
        if name not in cfg.suites:
            continue
        t0 = time.perf_counter()
        if name in _EXHAUSTIVE:
            results[name] = _EXHAUSTIVE[name](cfg)
        else:
            results[name] = _run_randomized(cfg, name)
        timing[name] = time.perf_counter() - t0
    timing["total"] = time.perf_counter() - start
    return SuiteReport(cfg, results, timing)
