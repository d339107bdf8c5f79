"""Acceptance checks at two scales.

``smoke`` runs the exact checks (group axioms, enumeration counts, the
certificate verifier and the small-scale area oracle) in about a minute.
``desk`` adds the statistical checks on exponents, heat kernels, shift
invariance, ratio limits, sampler agreement and reproducibility.
"""
import logging
import math
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from toposort import toposort_flatten

from dehnlab.estimate.area import avg_area_curve, get_area_function
from dehnlab.estimate.enumerate import enumerate_loops
from dehnlab.estimate.fit import exponent_fit
from dehnlab.estimate.moments import central_moment_curve, moment_curve, moment_ratio_check
from dehnlab.estimate.ratio import ratio_limit_check
from dehnlab.estimate.sampling import draw_block
from dehnlab.estimate.shift import chi_square_expected, chi_square_uniform, ks_compare, shift_invariance_test
from dehnlab.fill.certificate import FillingCertificate, verify_certificate
from dehnlab.fill.collect import fill_word
from dehnlab.fill.dyadic import dyadic_fill
from dehnlab.fill.oracle import exact_area_search, winding_area
from dehnlab.group.catalog import eval_word, get_group, return_available_groups, trace
from dehnlab.group.law import filiform_to_heisenberg, heisenberg_to_z2
from dehnlab.group.metric import norm, word_metric
from dehnlab.group.words import format_word
from dehnlab.information.write_info import write_json
from dehnlab.walk.heat_kernel import hsc_check
from dehnlab.walk.rng import substream

LEVELS = ["smoke", "desk"]

# loops of the lazy walk on Z^2 by length, from the constant term of (1 + x + 1/x + y + 1/y)^n
Z2_LOOP_COUNTS = {0: 1, 1: 1, 2: 5, 3: 13, 4: 61, 5: 221, 6: 1001}

FILLED_GROUPS = ["z2", "z3", "heis3", "fnil2-3"]

GROUND_TRUTH_LENGTHS = (2, 4, 6)
GROUND_TRUTH_ALPHA = 0.001

logger = logging.getLogger("suite_logger")


@dataclass
class SuiteContext:
    level: str
    seed: int
    map_fn: Callable = map

    @property
    def desk(self) -> bool:
        return self.level == "desk"

    def scale(self, smoke, desk):
        return desk if self.desk else smoke


@dataclass(frozen=True)
class Criterion:
    name: str
    levels: Tuple[str, ...]
    check: Callable[[SuiteContext], Tuple[bool, dict]]
    requires: Tuple[str, ...] = ()


@dataclass
class CriterionResult:
    name: str
    status: str
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "passed"


def _random_word(spec, length: int, rng: np.random.Generator):
    letters = spec.letters
    return tuple(int(letters[i]) for i in rng.integers(0, len(letters), size=length))


def check_group_axioms(ctx: SuiteContext):
    rng = substream(ctx.seed, 0)
    trials = ctx.scale(50, 10000)
    bad = []
    for gid in return_available_groups():
        spec = get_group(gid)
        for _ in range(trials):
            u, v, w = (_random_word(spec, 12, rng) for _ in range(3))
            x, y, z = (eval_word(spec, s) for s in (u, v, w))
            if spec.multiply(spec.multiply(x, y), z) != spec.multiply(x, spec.multiply(y, z)):
                bad.append(f"{gid}: associativity at {x}, {y}, {z}")
            if spec.multiply(x, spec.identity()) != x or spec.multiply(spec.identity(), x) != x:
                bad.append(f"{gid}: identity at {x}")
            if spec.multiply(x, spec.inverse(x)) != spec.identity():
                bad.append(f"{gid}: inverse at {x}")
            if eval_word(spec, u + v) != spec.multiply(x, y):
                bad.append(f"{gid}: evaluation of {format_word(u + v)}")
    fil, heis, z2 = get_group("filiform4"), get_group("heis3"), get_group("z2")
    for _ in range(trials):
        u = _random_word(heis, 16, rng)
        if filiform_to_heisenberg(eval_word(fil, u)) != eval_word(heis, u):
            bad.append(f"filiform4 -> heis3 at {format_word(u)}")
        if heisenberg_to_z2(eval_word(heis, u)) != eval_word(z2, u):
            bad.append(f"heis3 -> z2 at {format_word(u)}")
    return not bad, {"failures": bad[:20], "trials": trials}


def check_enumeration(ctx: SuiteContext):
    spec = get_group("z2")
    counts = {n: enumerate_loops(spec, n).loop_count for n in Z2_LOOP_COUNTS}
    return counts == Z2_LOOP_COUNTS, {"loop_counts": counts}


def _tamper(cert: FillingCertificate) -> FillingCertificate:
    c, idx, sign = cert.steps[0]
    return FillingCertificate(cert.group_id, cert.target, ((c, idx, -sign),) + cert.steps[1:])


def check_verifier(ctx: SuiteContext):
    per_group = ctx.scale(20, 1000)
    dyadic_per_group = ctx.scale(5, 50)
    detail = {}
    ok = True
    for gid in FILLED_GROUPS:
        spec = get_group(gid)
        loops = draw_block(gid, 16, ctx.seed, 0, per_group, "auto")
        accepted, tampered = 0, 0
        for loop in loops:
            cert = fill_word(spec, loop.word)
            accepted += verify_certificate(spec, cert)
            if cert.steps and verify_certificate(spec, _tamper(cert)):
                tampered += 1
        dyadic = 0
        if gid in ("z2", "heis3"):
            for loop in loops[:dyadic_per_group]:
                dyadic += verify_certificate(spec, dyadic_fill(spec, loop.word, verify=False))
            dyadic_ok = dyadic == min(dyadic_per_group, len(loops))
        else:
            dyadic_ok = True
        detail[gid] = {"loops": len(loops), "accepted": accepted, "tampered_accepted": tampered, "dyadic": dyadic}
        ok = ok and accepted == len(loops) and tampered == 0 and dyadic_ok
    return ok, detail


def check_area_oracle(ctx: SuiteContext):
    spec = get_group("z2")
    longest = ctx.scale(4, 8)
    mismatches = []
    checked = 0
    for n in range(0, longest + 1):
        for w in enumerate_loops(spec, n).loops:
            checked += 1
            exact = exact_area_search(spec, w, budget=longest)
            if exact != winding_area(w):
                mismatches.append(f"{format_word(w)}: winding {winding_area(w)}, search {exact}")
    return not mismatches, {"loops": checked, "mismatches": mismatches[:20]}


def _sampled_distances(spec, drawn, s: int, t: int) -> List[int]:
    out = []
    for loop in drawn:
        tr = trace(spec, loop.word)
        out.append(word_metric(spec, tr[s], tr[t]))
    return out


def check_ground_truth(ctx: SuiteContext):
    """Monte Carlo against full enumeration on Z^2, for every sampler and loop length."""
    spec = get_group("z2")
    samples = ctx.scale(2000, 10000)
    area_fn = get_area_function("winding")
    detail = {}
    ok = True
    for n in GROUND_TRUTH_LENGTHS:
        exact = enumerate_loops(spec, n)
        exact_area = float(exact.mean(lambda w: area_fn(spec, w)))
        half = exact.distance_distribution(0, n // 2)
        for sampler in ("rejection", "bridge"):
            drawn = draw_block("z2", n, ctx.seed, 0, samples, sampler)
            freq = Counter(format_word(s.word) for s in drawn)
            counts = [freq.get(format_word(w), 0) for w in exact.loops]
            outside = len(drawn) - sum(counts)
            _, p_uniform = chi_square_uniform(counts)

            dist = Counter(_sampled_distances(spec, drawn, 0, n // 2))
            unexpected = sorted(set(dist) - set(half))
            _, p_half = chi_square_expected([dist.get(k, 0) for k in half], [float(v) for v in half.values()])

            areas = np.array([area_fn(spec, s.word) for s in drawn], dtype=np.float64)
            mean = float(areas.mean())
            stderr = float(areas.std(ddof=1) / np.sqrt(len(areas))) if len(areas) > 1 else 0.0
            area_ok = abs(mean - exact_area) <= 3 * stderr + 1e-12

            detail[f"n{n}_{sampler}"] = {
                "samples": len(drawn),
                "loops": exact.loop_count,
                "distinct": len(freq),
                "outside": outside,
                "uniform_p_value": p_uniform,
                "half_distance_p_value": p_half,
                "unexpected_distances": unexpected,
                "avg_winding": mean,
                "avg_winding_stderr": stderr,
                "avg_winding_exact": exact_area,
            }
            half_ok = len(half) == 1 or p_half > GROUND_TRUTH_ALPHA
            ok = (
                ok
                and len(drawn) == samples
                and outside == 0
                and (exact.loop_count == 1 or p_uniform > GROUND_TRUTH_ALPHA)
                and not unexpected
                and half_ok
                and area_ok
            )
    return ok, detail


def check_moment_growth(ctx: SuiteContext):
    n = ctx.scale(128, 512)
    t_list = [t for t in (16, 32, 64, 128, 256) if t <= n // 2]
    ratio = moment_ratio_check(
        get_group("z2"), n, t_list, ctx.scale(500, 2000), ctx.seed, "bridge",
        map_fn=ctx.map_fn, time="bridge",
    )
    ok = ratio.first.within(0.5, 0.1) and ratio.second.within(1.0, 0.15)
    return ok, {
        "n": n,
        "time": "bridge",
        "m1_slope": ratio.first.slope,
        "m2_slope": ratio.second.slope,
        "m1_walk_slope": ratio.walk_first.slope,
        "m2_walk_slope": ratio.walk_second.slope,
    }


def check_lower_bound(ctx: SuiteContext):
    samples = ctx.scale(300, 2000)
    detail = {}
    ok = True
    for gid, n_list, expected, tol in (
        ("z2", [32, 64, 128, 256, 512], 1.0, 0.15),
        ("heis3", [32, 64, 128, 256], 1.5, 0.25),
    ):
        if not ctx.desk:
            n_list = n_list[:3]
        curve = central_moment_curve(get_group(gid), n_list, samples, ctx.seed, map_fn=ctx.map_fn)
        fit = exponent_fit(curve)
        detail[gid] = {"slope": fit.slope, "slope_stderr": fit.slope_stderr}
        ok = ok and fit.within(expected, tol)
    return ok, detail


def check_upper_bound(ctx: SuiteContext):
    samples = ctx.scale(50, 200)
    detail = {}
    ok = True
    for gid, n_list, ceiling in (
        ("z2", [64, 128, 256, 512, 1024], 1.25),
        ("heis3", [32, 64, 128, 256], 1.75),
    ):
        if not ctx.desk:
            n_list = n_list[:3]
        # dyadic_area verifies every local certificate and raises on a bad one
        curve = avg_area_curve(get_group(gid), n_list, samples, ctx.seed, area="dyadic", map_fn=ctx.map_fn)
        fit = exponent_fit(curve)
        detail[gid] = {"slope": fit.slope, "slope_stderr": fit.slope_stderr}
        ok = ok and fit.slope <= ceiling
    return ok, detail


def check_heat_kernel(ctx: SuiteContext):
    detail = {}
    ok = True
    for gid, n_max, expected, tol in (("z2", 512, -1.0, 0.1), ("heis3", 128, -2.0, 0.3)):
        n_max = n_max if ctx.desk else n_max // 4
        n_list = [n for n in (16, 32, 64, 128, 256, 512) if n <= n_max]
        report = hsc_check(get_group(gid), n_list)
        detail[gid] = {
            "slope": report.slope,
            "C": report.C,
            "C_prime": report.C_prime,
            "bounded_at_last": report.points[-1].bounded,
            "unresolved_at_last": report.points[-1].unresolved,
            "violations": report.violations,
        }
        ok = (
            ok
            and abs(report.slope - expected) <= tol
            and math.isfinite(report.C)
            and not report.violations
            and report.points[-1].unresolved == 0
        )
    return ok, detail


def check_shift_invariance(ctx: SuiteContext):
    spec = get_group("z2")
    n = 6
    unequal = []
    for s in range(n):
        for t in range(s + 1, n + 1):
            if not shift_invariance_test(spec, n, s, t, "exact").passed():
                unequal.append((s, t))
    big = ctx.scale(64, 128)
    report = shift_invariance_test(
        spec, big, big // 4, 3 * big // 4, "sampled", ctx.scale(1000, 5000), ctx.seed
    )
    ok = not unequal and report.passed(0.01)
    return ok, {"exact_unequal": unequal, "ks": report.statistic, "p_value": report.p_value}


def check_ratio_limit(ctx: SuiteContext):
    spec = get_group("z2")
    n_max = ctx.scale(128, 512)
    xs = [(1, 0), (1, 1)]
    report = ratio_limit_check(spec, xs, [n for n in (64, 128, 256, 512) if n <= n_max])
    last = {str(x): report.last_ratio(x) for x in xs}
    return all(abs(v - 1.0) <= 0.1 for v in last.values()), {"n": n_max, "ratios": last}


def _half_distances(loops):
    out = []
    for loop in loops:
        spec = get_group(loop.group_id)
        out.append(norm(spec, trace(spec, loop.word)[len(loop.word) // 2]))
    return out


def check_sampler_agreement(ctx: SuiteContext):
    n = 64
    samples = ctx.scale(1000, 5000)
    a = _half_distances(draw_block("z2", n, ctx.seed, 0, samples, "bridge"))
    b = _half_distances(draw_block("z2", n, ctx.seed, samples, samples, "rejection"))
    stat, p = ks_compare(a, b)
    return p > 0.01, {"ks": stat, "p_value": p}


def check_reproducibility(ctx: SuiteContext):
    spec = get_group("heis3")
    runs = [
        moment_curve(spec, 32, [4, 8, 16], 1, ctx.scale(64, 256), ctx.seed, map_fn=ctx.map_fn).to_rows()
        for _ in range(2)
    ]
    return runs[0] == runs[1], {"rows": runs[0]}


CRITERIA: List[Criterion] = [
    Criterion("group-axioms", ("smoke", "desk"), check_group_axioms),
    Criterion("enumeration", ("smoke", "desk"), check_enumeration, ("group-axioms",)),
    Criterion("verifier", ("smoke", "desk"), check_verifier, ("group-axioms",)),
    Criterion("area-oracle", ("smoke", "desk"), check_area_oracle, ("enumeration",)),
    Criterion("ground-truth", ("desk",), check_ground_truth, ("enumeration",)),
    Criterion("moment-growth", ("desk",), check_moment_growth, ("ground-truth",)),
    Criterion("lower-bound", ("desk",), check_lower_bound, ("ground-truth",)),
    Criterion("upper-bound", ("desk",), check_upper_bound, ("verifier",)),
    Criterion("heat-kernel", ("desk",), check_heat_kernel, ("group-axioms",)),
    Criterion("shift-invariance", ("desk",), check_shift_invariance, ("enumeration",)),
    Criterion("ratio-limit", ("desk",), check_ratio_limit, ("heat-kernel",)),
    Criterion("sampler-agreement", ("desk",), check_sampler_agreement, ("ground-truth",)),
    Criterion("reproducibility", ("smoke", "desk"), check_reproducibility, ("group-axioms",)),
]


def return_available_criteria() -> Dict[str, Criterion]:
    return {c.name: c for c in CRITERIA}


def criteria_order(level: str, criteria: Optional[Sequence[Criterion]] = None) -> List[Criterion]:
    """Criteria of ``level`` with every prerequisite ahead of its dependents."""
    if level not in LEVELS:
        raise ValueError(f"level {level} not available in options {LEVELS}")
    chosen = {c.name: c for c in (criteria or CRITERIA) if level in c.levels}
    deps = {name: {r for r in c.requires if r in chosen} for name, c in chosen.items()}
    return [chosen[name] for name in toposort_flatten(deps, sort=True)]


def suite(
    level: str,
    seed: int = 0,
    out_dir=None,
    map_fn: Callable = map,
    criteria: Optional[Sequence[Criterion]] = None,
) -> Dict[str, CriterionResult]:
    ctx = SuiteContext(level, seed, map_fn)
    results: Dict[str, CriterionResult] = {}
    for crit in criteria_order(level, criteria):
        blocked = [r for r in crit.requires if r in results and not results[r].passed]
        if blocked:
            results[crit.name] = CriterionResult(crit.name, "skipped", {"failed_prerequisites": blocked})
            logger.warning(f"{crit.name}: skipped, prerequisites {blocked} did not pass")
            continue
        start = time.perf_counter()
        try:
            ok, detail = crit.check(ctx)
            status = "passed" if ok else "failed"
        except Exception as e:
            logger.exception(f"{crit.name}: raised")
            status, detail = "failed", {"error": f"{type(e).__name__}: {e}"}
        seconds = time.perf_counter() - start
        results[crit.name] = CriterionResult(crit.name, status, detail, seconds)
        logger.info(f"{crit.name}: {status} in {seconds:.1f}s")

    if out_dir is not None:
        write_json(
            Path(out_dir).joinpath(f"suite_{level}.json"),
            {
                "level": level,
                "seed": seed,
                "passed": all(r.passed for r in results.values()),
                "criteria": {
                    name: {"status": r.status, "seconds": r.seconds, "detail": r.detail}
                    for name, r in results.items()
                },
            },
        )
    return results


def failed_criteria(results: Dict[str, CriterionResult]) -> List[str]:
    return [name for name, r in results.items() if not r.passed]
