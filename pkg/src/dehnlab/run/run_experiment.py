"""Run one configured experiment and persist its results.

Every file lands in the config's output directory through an atomic write.
result.json carries the config hash and seed, so a directory never mixes
results of two configs.
"""
import datetime
import multiprocessing
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List

from dehnlab import __version__
from dehnlab.errors import (
    BudgetExceededError,
    DomainError,
    PartialResultsError,
    SamplerExhaustedError,
    UnsupportedGroupError,
)
from dehnlab.estimate.area import avg_area_curve, delta_avg_bracket, exact_avg_area
from dehnlab.estimate.curve import Curve
from dehnlab.estimate.enumerate import enumerate_loops
from dehnlab.estimate.fit import exponent_fit, fit_to_dict
from dehnlab.estimate.moments import central_moment_curve, moment_curve, on_bridge_time
from dehnlab.estimate.ratio import ratio_limit_check
from dehnlab.estimate.sampling import draw_block
from dehnlab.estimate.shift import shift_invariance_test
from dehnlab.fill.certificate import verify_certificate, write_certificate
from dehnlab.fill.collect import fill_word
from dehnlab.fill.dyadic import dyadic_fill
from dehnlab.group.catalog import GroupSpec, eval_word, get_group
from dehnlab.group.words import format_word, parse_word
from dehnlab.information.write_info import write_csv, write_json, write_result_record
from dehnlab.log.dl_logging import config_loggers
from dehnlab.walk.heat_kernel import hsc_check
from dehnlab.walk.samplers import words_to_text
from dehnlab.walk.table import heat_kernel, table_to_csv

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_PARTIAL = 3


def _now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


@dataclass
class ResultRecord:
    config_hash: str
    seed: int
    kind: str
    group: str
    version: str
    started: str
    finished: str = ""
    statistics: Dict[str, Any] = field(default_factory=dict)
    fits: Dict[str, Any] = field(default_factory=dict)
    brackets: List[list] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    files: List[str] = field(default_factory=list)
    partial: bool = False

    @property
    def exit_code(self) -> int:
        return EXIT_PARTIAL if self.partial else EXIT_OK

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@contextmanager
def worker_map(workers: int):
    if workers <= 1:
        yield map
        return
    with multiprocessing.Pool(processes=workers) as pool:
        yield pool.map


class _Run:
    """State shared by the kind handlers of one run."""

    def __init__(self, config: dict, map_fn: Callable, loggers: dict):
        self.config = config
        self.exp = config["experiment"]
        self.seed = config["meta"]["seed"]
        self.spec: GroupSpec = get_group(self.exp["group"])
        self.out_dir = Path(config["output"]["out_dir"])
        self.map_fn = map_fn
        self.logger = loggers["run"]
        self.record = ResultRecord(
            config_hash=config["config_hash"],
            seed=self.seed,
            kind=self.exp["kind"],
            group=self.spec.id,
            version=__version__,
            started=_now(),
        )

    @property
    def csv_meta(self) -> dict:
        return {"config_hash": self.record.config_hash, "seed": self.seed}

    def wrote(self, path):
        self.record.files.append(Path(path).name)

    def warn(self, msg: str):
        self.logger.warning(msg)
        self.record.warnings.append(msg)

    def samplers(self) -> List[str]:
        return [self.exp["sampler"]] + list(self.exp.get("fallbacks") or [])

    def with_fallbacks(self, fn: Callable[[str], Any]):
        """fn(sampler) with the configured sampler, then each fallback in turn."""
        names = self.samplers()
        for i, name in enumerate(names):
            try:
                return fn(name)
            except (BudgetExceededError, SamplerExhaustedError) as e:
                if i == len(names) - 1:
                    raise
                self.warn(f"sampler {name} failed ({e}), falling back to {names[i + 1]}")

    def curve(self, curve: Curve, name: str = "curve", fit: bool = True):
        self.wrote(curve.to_csv(self.out_dir.joinpath(f"{name}.csv"), self.csv_meta))
        self.record.statistics[name] = curve.to_dict()
        for n, failed in sorted(curve.failures.items()):
            self.warn(f"{name}: {failed} failed samples at scale {n}")
        for err in curve.meta.get("errors", []):
            self.warn(f"{name}: {err}")
        if not fit:
            return
        try:
            self.record.fits[name] = fit_to_dict(exponent_fit(curve))
        except DomainError as e:
            self.warn(f"{name}: no exponent fit ({e})")

    def partial_curve(self, fn: Callable[[str], Curve], name: str = "curve", fit: bool = True):
        try:
            curve = self.with_fallbacks(fn)
        except PartialResultsError as e:
            self.record.partial = True
            self.warn(str(e))
            curve = e.partial
        self.curve(curve, name, fit)
        return curve


def _run_sample(r: _Run):
    exp = r.exp
    loops = r.with_fallbacks(
        lambda s: draw_block(r.spec.id, exp["n"], r.seed, 0, exp["samples"], s)
    )
    attempts = [s.attempts for s in loops]
    r.record.statistics.update(
        {
            "n": exp["n"],
            "count": len(loops),
            "method": loops[0].method if loops else None,
            "mean_attempts": sum(attempts) / len(attempts) if attempts else 0.0,
        }
    )
    if r.config["output"]["write_samples"]:
        r.wrote(words_to_text(loops, r.out_dir.joinpath("samples.txt")))


def _run_fill(r: _Run):
    w = parse_word(r.exp["word"], r.spec.generator_count)
    if r.exp["filler"] == "dyadic":
        cert = dyadic_fill(r.spec, w, r.exp["radius_cap"])
    else:
        cert = fill_word(r.spec, w)
    verified = verify_certificate(r.spec, cert)
    r.record.statistics.update(
        {"word": format_word(w), "length": len(w), "area": cert.area, "verified": verified}
    )
    if not verified:
        r.record.partial = True
        r.warn(f"certificate for {format_word(w)} failed verification")
    r.wrote(write_certificate(cert, r.out_dir.joinpath("certificate.tsv")))


def _run_avg_area(r: _Run):
    exp = r.exp
    if exp["area"] != "bracket":
        r.partial_curve(
            lambda s: avg_area_curve(
                r.spec, exp["n_list"], exp["samples"], r.seed, s, exp["area"],
                exp["radius_cap"], exp["budget"], exp["block_size"], r.map_fn,
            )
        )
        return
    try:
        bracket = r.with_fallbacks(
            lambda s: delta_avg_bracket(
                r.spec, exp["n_list"], exp["samples"], r.seed, s,
                exp["radius_cap"], exp["block_size"], r.map_fn,
            )
        )
    except PartialResultsError as e:
        # bracket curves fail together, the partial one is the lower curve
        r.record.partial = True
        r.warn(str(e))
        r.curve(e.partial, "lower")
        return
    r.curve(bracket.upper, "curve")
    r.curve(bracket.lower, "lower")
    r.record.brackets = [list(row) for row in bracket.rows()]
    r.wrote(write_csv(r.out_dir.joinpath("bracket.csv"), ["scale", "lower", "upper"], bracket.rows(), r.csv_meta))


def _run_moments(r: _Run):
    exp = r.exp
    curve = r.partial_curve(
        lambda s: moment_curve(
            r.spec, exp["n"], exp["t_list"], exp["m"], exp["samples"], r.seed, s,
            exp["radius_cap"], exp["block_size"], r.map_fn,
        )
    )
    if max(exp["t_list"]) * 2 <= exp["n"]:
        try:
            r.record.fits["curve_bridge_time"] = fit_to_dict(exponent_fit(on_bridge_time(curve, exp["n"])))
        except DomainError as e:
            r.warn(f"curve: no bridge-time fit ({e})")


def _run_central_moments(r: _Run):
    exp = r.exp
    r.partial_curve(
        lambda s: central_moment_curve(
            r.spec, exp["n_list"], exp["samples"], r.seed, s, exp["block_size"], r.map_fn
        )
    )


def _last_table(r: _Run):
    if not r.config["output"]["write_table"]:
        return
    table = None
    for table in heat_kernel(r.spec, r.exp["n_list"][-1], r.exp["relative_floor"], r.exp["arithmetic"]):
        pass
    r.wrote(table_to_csv(table, r.out_dir.joinpath("table.csv"), r.csv_meta))
    if table.lost_mass:
        r.warn(f"p^({table.step_count}) lost mass {float(table.lost_mass):.3e} to truncation")


def _run_hsc(r: _Run):
    exp = r.exp
    report = hsc_check(r.spec, exp["n_list"], exp["c_double_prime"], exp["radius_cap"], exp["relative_floor"])
    r.record.statistics["hsc"] = report.summary()
    r.record.fits["return_probability"] = {"slope": report.slope}
    for v in report.violations:
        r.warn(v)
    for pt in report.points:
        if pt.bounded:
            r.logger.info(f"n={pt.n}: {pt.bounded} support points checked with a word-length bound")
    _last_table(r)


def _run_ratio(r: _Run):
    exp = r.exp
    xs = [eval_word(r.spec, parse_word(x, r.spec.generator_count)) for x in exp["x_list"]]
    report = ratio_limit_check(r.spec, xs, exp["n_list"], exp["relative_floor"], exp["arithmetic"])
    r.record.statistics["ratio"] = report.to_dict()
    for x, n in report.missing:
        r.warn(f"{x} is outside the support of p^({n})")
    rows = [
        (exp["x_list"][i], p.scale, p.value)
        for i, x in enumerate(xs)
        for p in report.curves[tuple(x)].points
    ]
    r.wrote(write_csv(r.out_dir.joinpath("ratio.csv"), ["x", "scale", "ratio"], rows, r.csv_meta))
    _last_table(r)


def _run_shift_test(r: _Run):
    exp = r.exp
    report = r.with_fallbacks(
        lambda s: shift_invariance_test(
            r.spec, exp["n"], exp["s"], exp["t"], exp["shift_mode"], exp["samples"],
            r.seed, s, exp["radius_cap"],
        )
    )
    r.record.statistics["shift"] = dict(report.to_dict(), passed=report.passed())
    if report.failures:
        r.warn(f"{report.failures} samples beyond the radius cap")


def _run_enumerate(r: _Run):
    exp = r.exp
    loops = enumerate_loops(r.spec, exp["n"])
    stats = {
        "n": exp["n"],
        "word_count": loops.word_count,
        "loop_count": loops.loop_count,
        "return_probability": str(loops.return_probability),
    }
    try:
        avg = exact_avg_area(r.spec, loops.loops, exp["area"], exp["budget"])
    except (UnsupportedGroupError, DomainError, KeyError) as e:
        r.warn(f"no exact average {exp['area']} area on {r.spec.id} ({e})")
    else:
        if avg is None:
            r.warn(f"some loop is past the area budget of {exp['budget']}")
        else:
            stats["avg_area"] = str(avg)
            stats["avg_area_float"] = float(avg)
    r.record.statistics.update(stats)


def return_available_kinds() -> Dict[str, Callable[[_Run], None]]:
    return {
        "sample": _run_sample,
        "fill": _run_fill,
        "avg-area": _run_avg_area,
        "moments": _run_moments,
        "central-moments": _run_central_moments,
        "hsc": _run_hsc,
        "ratio": _run_ratio,
        "shift-test": _run_shift_test,
        "enumerate": _run_enumerate,
    }


def run(config: dict, map_fn: Callable = None) -> ResultRecord:
    """Dispatch a validated config (see create_configs) and write its outputs."""
    out_dir = Path(config["output"]["out_dir"])
    loggers = config_loggers(out_dir, config["logging"])
    kinds = return_available_kinds()
    try:
        handler = kinds[config["experiment"]["kind"]]
    except KeyError:
        raise KeyError(
            f"kind {config['experiment']['kind']} not available in options {list(kinds.keys())}"
        )

    with worker_map(config["experiment"]["workers"]) as pool_map:
        r = _Run(config, map_fn or pool_map, loggers)
        r.logger.info(
            f"{r.record.kind} on {r.spec.id}, seed {r.seed}, hash {r.record.config_hash[:12]}"
        )
        handler(r)

    record = r.record
    if record.fits:
        r.wrote(write_json(out_dir.joinpath("fit.json"), record.fits))
    record.finished = _now()
    r.wrote("result.json")
    write_result_record(out_dir, record.to_dict())
    r.logger.info(f"finished with {len(record.warnings)} warnings, partial={record.partial}")
    return record
