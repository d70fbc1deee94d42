"""Experiment configuration, seeded Monte-Carlo runner, and CSV emission.

One experiment sweeps a single variable (number of sampling points, region
length at fixed resolution, or number of propagation paths) and runs every
requested method on identical per-realization channels. Substream seeds
derive from (master seed, realization index) alone, so method comparisons
are paired on identical channels and path draws are shared across sweep
points. Identical config and master seed reproduce identical output bytes;
wall-clock timing is therefore off unless requested.
"""

from __future__ import annotations

import csv
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import yaml

from .baselines import PsoConfig, brute_force_optimum, fpa_indices, pso_optimize
from .errors import ConfigError, LayoutDoesNotFit, MasimError, UnknownPreset
from .grid_channel import build_grid, draw_paths, generate_channel_map
from .optimizer import (AlgorithmConfig, CachedUtility, random_feasible,
                        run_algorithm_1, sequential_update_round)
from .oracles import oracle_for_scenario

KNOWN_METHODS = ("proposed", "su", "pso", "fpa", "brute_force")
_METHOD_STREAM = {name: 11 + i for i, name in enumerate(KNOWN_METHODS)}
_INITIAL_STREAM = 0
_INT_TOL = 1e-9

UTILITY_UNITS = {"single_user": "snr_linear", "multi_user": "bits_per_s_per_hz"}


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


# ----------------------------------------------------------------------
# Configuration
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class AlgorithmSettings:
    """Search settings; None means size-dependent defaults (iterations one
    per sampling point, candidates three per antenna)."""

    rounds: int = 5
    gs_iterations: int | None = None
    candidates: int | None = None
    max_shift: int = 1
    gibbs_scale: float | None = None
    initial: str = "fpa"  # fpa | random


@dataclass(frozen=True)
class PsoSettings:
    """Swarm settings; swarm_size None means two particles per antenna."""

    swarm_size: int | None = None
    iterations: int = 200
    inertia: float = 0.72
    cognitive: float = 1.49
    social: float = 1.49


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str
    users: int
    antennas: int
    wavelength: float                       # meters
    min_spacing: float                      # meters
    region_length: tuple[float, ...]        # meters; >1 entries = region sweep
    points: tuple[int, ...] | None          # >1 entries = point-count sweep
    paths: tuple[int, ...]                  # >1 entries = path-count sweep
    resolution: float | None                # meters; derives points per region
    pathloss_exponent: float
    reference_gain_db: float
    distances: tuple[float, ...]            # meters, one per user
    power_dbm: float
    noise_dbm: float
    realizations: int
    methods: tuple[str, ...]
    seed: int
    output: str
    algorithm: AlgorithmSettings = field(default_factory=AlgorithmSettings)
    pso: PsoSettings = field(default_factory=PsoSettings)
    workers: int = 1
    record_timing: bool = False
    rho_tolerance: float = 1e-6
    rho_mode: str = "power"
    share_initial: bool = True


@dataclass(frozen=True)
class SweepPoint:
    var: str          # points | region_length | paths
    value: float
    num_points: int
    region_length: float
    num_paths: int


@dataclass(frozen=True)
class RunRecord:
    sweep_var: str
    sweep_value: float
    realization: int
    method: str
    utility: float
    utility_units: str
    eval_count: int
    wall_ms: float | None
    seed: int


@dataclass(frozen=True)
class TraceRecord:
    sweep_var: str
    sweep_value: float
    realization: int
    round_index: int
    utility_after_update: float
    utility_after_gibbs: float
    evals_total: int


@dataclass(frozen=True)
class SummaryRecord:
    sweep_var: str
    sweep_value: float
    method: str
    mean_utility: float
    std_utility: float
    realizations: int


@dataclass(frozen=True)
class ResultTable:
    runs: tuple[RunRecord, ...]
    traces: tuple[TraceRecord, ...]

    def summary(self) -> list[SummaryRecord]:
        """Per sweep point and method: mean and population std of the runs."""
        groups: dict[tuple, list[float]] = {}
        order = []
        for row in self.runs:
            key = (row.sweep_var, row.sweep_value, row.method)
            if key not in groups:
                groups[key] = []
                order.append(key)
            groups[key].append(row.utility)
        out = []
        for key in order:
            values = np.asarray(groups[key])
            out.append(SummaryRecord(sweep_var=key[0], sweep_value=key[1],
                                     method=key[2],
                                     mean_utility=float(np.mean(values)),
                                     std_utility=float(np.std(values)),
                                     realizations=values.size))
        return out


# ----------------------------------------------------------------------
# Validation and sweep resolution
# ----------------------------------------------------------------------

def _require(condition, message):
    if not condition:
        raise ConfigError(message)


def validate_config(cfg: ExperimentConfig) -> list[SweepPoint]:
    """Check every field and resolve the sweep axis.

    Also pre-builds every grid (rejecting incompatible discretizations with
    the original error message) and checks that the requested initial
    placement exists at every sweep point.
    """
    _require(cfg.scenario in UTILITY_UNITS,
             f"scenario must be one of {sorted(UTILITY_UNITS)}, got {cfg.scenario!r}")
    _require(cfg.users >= 1, f"users must be >= 1, got {cfg.users}")
    if cfg.scenario == "single_user":
        _require(cfg.users == 1, "single_user scenario forces users: 1")
    _require(cfg.antennas >= 1, f"antennas must be >= 1, got {cfg.antennas}")
    _require(cfg.wavelength > 0, "wavelength must be positive")
    _require(cfg.min_spacing > 0, "min_spacing must be positive")
    _require(len(cfg.distances) == cfg.users,
             f"need {cfg.users} distances, got {len(cfg.distances)}")
    _require(all(d > 0 for d in cfg.distances), "distances must be positive")
    _require(cfg.realizations >= 1, "realizations must be >= 1")
    _require(cfg.workers >= 1, "workers must be >= 1")
    _require(len(cfg.methods) >= 1, "methods must not be empty")
    for m in cfg.methods:
        _require(m in KNOWN_METHODS,
                 f"unknown method {m!r}; known: {', '.join(KNOWN_METHODS)}")
    _require(len(set(cfg.methods)) == len(cfg.methods), "methods listed twice")
    _require(cfg.rho_mode in ("power", "rate_golden"),
             f"rho_mode must be power or rate_golden, got {cfg.rho_mode!r}")
    _require(cfg.rho_tolerance > 0, "rho_tolerance must be positive")
    _require(0 <= cfg.seed < 2 ** 63, "seed must be a nonnegative 63-bit integer")
    alg = cfg.algorithm
    _require(alg.rounds >= 1, "algorithm.rounds must be >= 1")
    _require(alg.gs_iterations is None or alg.gs_iterations >= 1,
             "algorithm.gs_iterations must be >= 1 or auto")
    _require(alg.candidates is None or alg.candidates >= 1,
             "algorithm.candidates must be >= 1 or auto")
    _require(alg.max_shift >= 1, "algorithm.max_shift must be >= 1")
    _require(alg.gibbs_scale is None or alg.gibbs_scale >= 0,
             "algorithm.gibbs_scale must be >= 0 or adaptive")
    _require(alg.initial in ("fpa", "random"),
             "algorithm.initial must be fpa or random")
    pso = cfg.pso
    _require(pso.swarm_size is None or pso.swarm_size >= 2,
             "pso.swarm_size must be >= 2 or auto")
    _require(pso.iterations >= 1, "pso.iterations must be >= 1")
    _require(min(pso.inertia, pso.cognitive, pso.social) >= 0,
             "pso coefficients must be nonnegative")

    sweep = _resolve_sweep(cfg)
    for point in sweep:
        try:
            grid = build_grid(point.num_points, point.region_length,
                              cfg.wavelength, cfg.min_spacing)
        except MasimError as exc:
            raise ConfigError(
                f"sweep point {point.var}={point.value}: {exc}") from exc
        _require((cfg.antennas - 1) * grid.min_index_gap < grid.num_points,
                 f"sweep point {point.var}={point.value}: {cfg.antennas} antennas "
                 f"with index gap {grid.min_index_gap} cannot fit on "
                 f"{grid.num_points} points")
        if alg.initial == "fpa" or "fpa" in cfg.methods:
            try:
                fpa_indices(grid, cfg.antennas)
            except LayoutDoesNotFit as exc:
                raise ConfigError(
                    f"sweep point {point.var}={point.value}: centered layout "
                    f"does not fit ({exc}); use algorithm.initial: random and "
                    f"drop the fpa method") from exc
    return sweep


def _resolve_sweep(cfg: ExperimentConfig) -> list[SweepPoint]:
    swept = []
    if cfg.points is not None and len(cfg.points) > 1:
        swept.append("points")
    if len(cfg.region_length) > 1:
        swept.append("region_length")
    if len(cfg.paths) > 1:
        swept.append("paths")
    _require(len(swept) <= 1, f"only one variable may sweep, got {swept}")

    _require(len(cfg.region_length) >= 1, "region_length must not be empty")
    _require(len(cfg.paths) >= 1, "paths must not be empty")
    _require(all(p >= 1 for p in cfg.paths), "paths entries must be >= 1")
    _require(all(a > 0 for a in cfg.region_length),
             "region_length entries must be positive")
    for name, seq in (("points", cfg.points), ("region_length", cfg.region_length),
                      ("paths", cfg.paths)):
        if seq is not None and len(seq) > 1:
            _require(all(b > a for a, b in zip(seq, seq[1:])),
                     f"{name} sweep must be strictly ascending")

    if cfg.points is None:
        _require(cfg.resolution is not None,
                 "points omitted: resolution is required to derive them "
                 "from region_length")
        points_of = []
        for a in cfg.region_length:
            m = a / cfg.resolution
            _require(abs(m - round(m)) <= _INT_TOL * max(1.0, abs(m)),
                     f"region_length {a} is not a whole number of resolution "
                     f"steps {cfg.resolution}")
            points_of.append(int(round(m)))
    else:
        _require(len(cfg.region_length) == 1,
                 "sweeping region_length requires omitting points and giving "
                 "a resolution")
        _require(cfg.resolution is None,
                 "resolution is only used when points are omitted")
        _require(all(p >= 2 for p in cfg.points), "points entries must be >= 2")

    if len(cfg.region_length) > 1:
        return [SweepPoint(var="region_length", value=a, num_points=m,
                           region_length=a, num_paths=cfg.paths[0])
                for a, m in zip(cfg.region_length, points_of)]
    if cfg.points is None:
        points = (points_of[0],)
    else:
        points = cfg.points
    if len(cfg.paths) > 1:
        return [SweepPoint(var="paths", value=lt, num_points=points[0],
                           region_length=cfg.region_length[0], num_paths=lt)
                for lt in cfg.paths]
    # point-count sweep, or a single-point experiment reported on that axis
    return [SweepPoint(var="points", value=m, num_points=m,
                       region_length=cfg.region_length[0], num_paths=cfg.paths[0])
            for m in points]


# ----------------------------------------------------------------------
# Running
# ----------------------------------------------------------------------

def _initial_placement(cfg: ExperimentConfig, grid, realization: int):
    if cfg.algorithm.initial == "fpa":
        return fpa_indices(grid, cfg.antennas)
    rng = np.random.default_rng(
        np.random.SeedSequence(cfg.seed, spawn_key=(realization, _INITIAL_STREAM)))
    return random_feasible(grid.num_points, cfg.antennas, grid.min_index_gap,
                           1, rng)[0]


def _algorithm_config(cfg: ExperimentConfig, grid) -> AlgorithmConfig:
    alg = cfg.algorithm
    iterations = alg.gs_iterations if alg.gs_iterations is not None else grid.num_points
    candidates = alg.candidates if alg.candidates is not None else 3 * cfg.antennas
    return AlgorithmConfig(rounds=alg.rounds, gs_iterations=iterations,
                           num_candidates=candidates, max_shift=alg.max_shift,
                           gibbs_scale=alg.gibbs_scale)


def _pso_config(cfg: ExperimentConfig) -> PsoConfig:
    swarm = cfg.pso.swarm_size if cfg.pso.swarm_size is not None else 2 * cfg.antennas
    return PsoConfig(swarm_size=swarm, iterations=cfg.pso.iterations,
                     inertia=cfg.pso.inertia, cognitive=cfg.pso.cognitive,
                     social=cfg.pso.social)


def _run_method(method, cfg, grid, oracle, a0, rng):
    """Returns (indices, utility, trace_or_None)."""
    if method == "proposed":
        result = run_algorithm_1(a0, oracle, _algorithm_config(cfg, grid), grid, rng)
        return result.indices, result.utility, result.trace
    if method == "su":
        cached = CachedUtility(oracle)
        a = a0
        for _ in range(cfg.algorithm.rounds):
            updated = sequential_update_round(a, cached, grid)
            if np.array_equal(updated, a):
                break
            a = updated
        return a, cached.cached_value(a), None
    if method == "fpa":
        indices = fpa_indices(grid, cfg.antennas)
        return indices, oracle.evaluate(indices), None
    if method == "pso":
        result = pso_optimize(oracle, grid, cfg.antennas, _pso_config(cfg), rng,
                              initial=a0 if cfg.share_initial else None)
        utility = result.utility if result.feasible else float("nan")
        return result.indices, utility, None
    if method == "brute_force":
        indices, utility = brute_force_optimum(grid.num_points, cfg.antennas,
                                               grid.min_index_gap, oracle)
        return indices, utility, None
    raise ConfigError(f"unknown method {method!r}")


def _realization_job(job):
    """Run every method of one realization at one sweep point."""
    cfg, point, realization = job
    grid = build_grid(point.num_points, point.region_length, cfg.wavelength,
                      cfg.min_spacing)
    paths_rng = np.random.default_rng(
        np.random.SeedSequence(cfg.seed, spawn_key=(realization,)))
    paths = draw_paths(cfg.users, point.num_paths, cfg.distances,
                       cfg.pathloss_exponent, db_to_linear(cfg.reference_gain_db),
                       paths_rng)
    channel = generate_channel_map(paths, grid)
    digest = channel.checksum()
    power = dbm_to_watts(cfg.power_dbm)
    noise = dbm_to_watts(cfg.noise_dbm)
    units = UTILITY_UNITS[cfg.scenario]
    seed_report = int(np.random.SeedSequence(
        cfg.seed, spawn_key=(realization,)).generate_state(1, np.uint64)[0])
    a0 = _initial_placement(cfg, grid, realization)

    rows = []
    trace_rows = []
    for method in cfg.methods:
        oracle = oracle_for_scenario(cfg.scenario, channel, power, noise,
                                     tol=cfg.rho_tolerance, rho_mode=cfg.rho_mode)
        rng = np.random.default_rng(np.random.SeedSequence(
            cfg.seed, spawn_key=(realization, _METHOD_STREAM[method])))
        started = time.perf_counter() if cfg.record_timing else None
        _, utility, trace = _run_method(method, cfg, grid, oracle, a0, rng)
        wall_ms = ((time.perf_counter() - started) * 1e3
                   if started is not None else None)
        # every method must have seen the identical, unmodified channel
        assert channel.checksum() == digest, "channel mutated during a method run"
        rows.append(RunRecord(sweep_var=point.var, sweep_value=point.value,
                              realization=realization, method=method,
                              utility=float(utility), utility_units=units,
                              eval_count=oracle.eval_count, wall_ms=wall_ms,
                              seed=seed_report))
        if trace is not None:
            for record in trace:
                trace_rows.append(TraceRecord(
                    sweep_var=point.var, sweep_value=point.value,
                    realization=realization, round_index=record.round_index,
                    utility_after_update=record.utility_after_update,
                    utility_after_gibbs=record.utility_after_gibbs,
                    evals_total=record.evals_total))
    return rows, trace_rows


def run_experiment(cfg: ExperimentConfig) -> ResultTable:
    """Run every sweep point, realization, and method; deterministic for a
    given config and master seed regardless of worker count."""
    sweep = validate_config(cfg)
    jobs = [(cfg, point, r) for point in sweep for r in range(cfg.realizations)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(_realization_job, jobs, chunksize=4))
    else:
        outcomes = [_realization_job(job) for job in jobs]
    runs = []
    traces = []
    for rows, trace_rows in outcomes:
        runs.extend(rows)
        traces.extend(trace_rows)
    return ResultTable(runs=tuple(runs), traces=tuple(traces))


# ----------------------------------------------------------------------
# CSV emission
# ----------------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def emit_csv(table: ResultTable, out_base) -> tuple[str, str]:
    """Write <base>.runs.csv and <base>.summary.csv in full precision."""
    if not table.runs:
        raise ConfigError("no results to emit")
    out_base = str(out_base)
    parent = os.path.dirname(out_base)
    if parent:
        os.makedirs(parent, exist_ok=True)
    runs_path = out_base + ".runs.csv"
    with open(runs_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["sweep_var", "sweep_value", "realization", "method",
                         "utility", "utility_units", "eval_count", "wall_ms",
                         "seed"])
        for row in table.runs:
            writer.writerow([row.sweep_var, _fmt(row.sweep_value),
                             row.realization, row.method, _fmt(row.utility),
                             row.utility_units, row.eval_count,
                             _fmt(row.wall_ms), row.seed])
    summary_path = out_base + ".summary.csv"
    with open(summary_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["sweep_var", "sweep_value", "method", "mean_utility",
                         "std_utility", "realizations"])
        for row in table.summary():
            writer.writerow([row.sweep_var, _fmt(row.sweep_value), row.method,
                             _fmt(row.mean_utility), _fmt(row.std_utility),
                             row.realizations])
    return runs_path, summary_path


def emit_trace_csv(table: ResultTable, out_base) -> str:
    """Write the per-round utility trace of the proposed method."""
    out_base = str(out_base)
    parent = os.path.dirname(out_base)
    if parent:
        os.makedirs(parent, exist_ok=True)
    trace_path = out_base + ".trace.csv"
    with open(trace_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["sweep_var", "sweep_value", "realization", "round",
                         "utility_after_update", "utility_after_gibbs",
                         "evals_total"])
        for row in table.traces:
            writer.writerow([row.sweep_var, _fmt(row.sweep_value),
                             row.realization, row.round_index,
                             _fmt(row.utility_after_update),
                             _fmt(row.utility_after_gibbs), row.evals_total])
    return trace_path


# ----------------------------------------------------------------------
# Config files
# ----------------------------------------------------------------------

_ALGORITHM_KEYS = {"rounds", "gs_iterations", "candidates", "max_shift",
                   "gibbs_scale", "initial"}
_PSO_KEYS = {"swarm_size", "iterations", "inertia", "cognitive", "social"}
_TOP_KEYS = {"scenario", "users", "antennas", "wavelength_m", "min_spacing_wl",
             "points", "region_length_wl", "resolution_wl", "paths",
             "pathloss_exponent", "reference_gain_db", "distances_m",
             "power_dbm", "noise_dbm", "realizations", "methods", "seed",
             "output", "workers", "record_timing", "rho_tolerance", "rho_mode",
             "share_initial", "algorithm", "pso"}
_REQUIRED_KEYS = {"scenario", "users", "antennas", "wavelength_m",
                  "min_spacing_wl", "region_length_wl", "paths", "distances_m",
                  "methods"}


def _as_tuple(value, kind, key):
    items = value if isinstance(value, list) else [value]
    out = []
    for item in items:
        if kind is int:
            if isinstance(item, bool) or not isinstance(item, int):
                raise ConfigError(f"{key}: expected integer(s), got {item!r}")
            out.append(item)
        else:
            if isinstance(item, bool) or not isinstance(item, (int, float)):
                raise ConfigError(f"{key}: expected number(s), got {item!r}")
            out.append(float(item))
    if not out:
        raise ConfigError(f"{key}: list must not be empty")
    return tuple(out)


def _scalar(value, kind, key, sentinel=None):
    if sentinel is not None and value == sentinel:
        return None
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ConfigError(f"{key}: expected an integer, got {value!r}")
    if kind is float and (isinstance(value, bool) or not isinstance(value, (int, float))):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    if kind is bool and not isinstance(value, bool):
        raise ConfigError(f"{key}: expected true/false, got {value!r}")
    if kind is str and not isinstance(value, str):
        raise ConfigError(f"{key}: expected a string, got {value!r}")
    return kind(value)


def config_from_dict(data: dict) -> ExperimentConfig:
    """Build a config from a parsed mapping; unknown keys are errors."""
    if not isinstance(data, dict):
        raise ConfigError("config root must be a mapping of keys to values")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    missing = _REQUIRED_KEYS - set(data)
    if missing:
        raise ConfigError(f"missing config keys: {', '.join(sorted(missing))}")

    wavelength = _scalar(data["wavelength_m"], float, "wavelength_m")
    algorithm_data = data.get("algorithm", {}) or {}
    if not isinstance(algorithm_data, dict):
        raise ConfigError("algorithm: expected a mapping")
    unknown = set(algorithm_data) - _ALGORITHM_KEYS
    if unknown:
        raise ConfigError(f"unknown algorithm keys: {', '.join(sorted(unknown))}")
    pso_data = data.get("pso", {}) or {}
    if not isinstance(pso_data, dict):
        raise ConfigError("pso: expected a mapping")
    unknown = set(pso_data) - _PSO_KEYS
    if unknown:
        raise ConfigError(f"unknown pso keys: {', '.join(sorted(unknown))}")

    algorithm = AlgorithmSettings(
        rounds=_scalar(algorithm_data.get("rounds", 5), int, "algorithm.rounds"),
        gs_iterations=_scalar(algorithm_data.get("gs_iterations", "auto"), int,
                              "algorithm.gs_iterations", sentinel="auto"),
        candidates=_scalar(algorithm_data.get("candidates", "auto"), int,
                           "algorithm.candidates", sentinel="auto"),
        max_shift=_scalar(algorithm_data.get("max_shift", 1), int,
                          "algorithm.max_shift"),
        gibbs_scale=_scalar(algorithm_data.get("gibbs_scale", "adaptive"), float,
                            "algorithm.gibbs_scale", sentinel="adaptive"),
        initial=_scalar(algorithm_data.get("initial", "fpa"), str,
                        "algorithm.initial"),
    )
    pso = PsoSettings(
        swarm_size=_scalar(pso_data.get("swarm_size", "auto"), int,
                           "pso.swarm_size", sentinel="auto"),
        iterations=_scalar(pso_data.get("iterations", 200), int, "pso.iterations"),
        inertia=_scalar(pso_data.get("inertia", 0.72), float, "pso.inertia"),
        cognitive=_scalar(pso_data.get("cognitive", 1.49), float, "pso.cognitive"),
        social=_scalar(pso_data.get("social", 1.49), float, "pso.social"),
    )

    points = data.get("points")
    resolution_wl = data.get("resolution_wl")
    methods = data["methods"]
    if not isinstance(methods, list) or not all(isinstance(m, str) for m in methods):
        raise ConfigError("methods: expected a list of method names")

    return ExperimentConfig(
        scenario=_scalar(data["scenario"], str, "scenario"),
        users=_scalar(data["users"], int, "users"),
        antennas=_scalar(data["antennas"], int, "antennas"),
        wavelength=wavelength,
        min_spacing=_scalar(data["min_spacing_wl"], float, "min_spacing_wl") * wavelength,
        region_length=tuple(v * wavelength for v in
                            _as_tuple(data["region_length_wl"], float,
                                      "region_length_wl")),
        points=None if points is None else _as_tuple(points, int, "points"),
        paths=_as_tuple(data["paths"], int, "paths"),
        resolution=(None if resolution_wl is None else
                    _scalar(resolution_wl, float, "resolution_wl") * wavelength),
        pathloss_exponent=_scalar(data.get("pathloss_exponent", 2.8), float,
                                  "pathloss_exponent"),
        reference_gain_db=_scalar(data.get("reference_gain_db", -46.0), float,
                                  "reference_gain_db"),
        distances=_as_tuple(data["distances_m"], float, "distances_m"),
        power_dbm=_scalar(data.get("power_dbm", 30.0), float, "power_dbm"),
        noise_dbm=_scalar(data.get("noise_dbm", -80.0), float, "noise_dbm"),
        realizations=_scalar(data.get("realizations", 200), int, "realizations"),
        methods=tuple(methods),
        seed=_scalar(data.get("seed", 12345), int, "seed"),
        output=_scalar(data.get("output", "results/run"), str, "output"),
        algorithm=algorithm,
        pso=pso,
        workers=_scalar(data.get("workers", 1), int, "workers"),
        record_timing=_scalar(data.get("record_timing", False), bool,
                              "record_timing"),
        rho_tolerance=_scalar(data.get("rho_tolerance", 1e-6), float,
                              "rho_tolerance"),
        rho_mode=_scalar(data.get("rho_mode", "power"), str, "rho_mode"),
        share_initial=_scalar(data.get("share_initial", True), bool,
                              "share_initial"),
    )


def load_config(path) -> ExperimentConfig:
    """Parse a YAML config file into an ExperimentConfig."""
    try:
        with open(path) as f:
            data = yaml.safe_load(f)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc
    if data is None:
        raise ConfigError(f"config {path} is empty")
    return config_from_dict(data)


# ----------------------------------------------------------------------
# Figure presets
# ----------------------------------------------------------------------

_WAVELENGTH = 0.06  # 5 GHz carrier

_PRESET_NOTES = {
    "fig2": "single-user received SNR versus number of sampling points",
    "fig3": "multi-user sum rate versus number of sampling points",
    "fig4": "multi-user sum rate versus number of transmit paths",
    "fig5": "multi-user sum rate versus region length at fixed resolution",
}


def figure_presets(name: str, realizations: int = 200) -> ExperimentConfig:
    """Named experiment designs at desk scale (200 realizations by default;
    restore 1000 for full scale)."""
    lam = _WAVELENGTH
    common = dict(
        antennas=8,
        wavelength=lam,
        min_spacing=lam / 2,
        pathloss_exponent=2.8,
        reference_gain_db=-46.0,
        power_dbm=30.0,
        noise_dbm=-80.0,
        realizations=realizations,
        methods=("proposed", "su", "pso", "fpa"),
        seed=12345,
        resolution=None,
    )
    if name == "fig2":
        return ExperimentConfig(
            scenario="single_user", users=1, distances=(100.0,),
            points=(12, 24, 36, 48), region_length=(6 * lam,), paths=(9,),
            output="results/fig2",
            algorithm=AlgorithmSettings(rounds=2), **common)
    if name == "fig3":
        return ExperimentConfig(
            scenario="multi_user", users=3, distances=(100.0, 60.0, 40.0),
            points=(12, 24, 36, 48), region_length=(6 * lam,), paths=(9,),
            output="results/fig3",
            algorithm=AlgorithmSettings(rounds=5), **common)
    if name == "fig4":
        return ExperimentConfig(
            scenario="multi_user", users=3, distances=(100.0, 60.0, 40.0),
            points=(48,), region_length=(6 * lam,), paths=(3, 6, 9, 12, 15),
            output="results/fig4",
            algorithm=AlgorithmSettings(rounds=5), **common)
    if name == "fig5":
        # 8 antennas at half-wavelength spacing span 3.5 wavelengths, so the
        # region sweep starts at 4 wavelengths
        common["resolution"] = lam / 8
        return ExperimentConfig(
            scenario="multi_user", users=3, distances=(100.0, 60.0, 40.0),
            points=None,
            region_length=tuple(c * lam for c in range(4, 9)), paths=(9,),
            output="results/fig5",
            algorithm=AlgorithmSettings(rounds=5), **common)
    raise UnknownPreset(f"no preset named {name!r}; "
                        f"known: {', '.join(sorted(_PRESET_NOTES))}")


def preset_note(name: str) -> str:
    return _PRESET_NOTES.get(name, "")
