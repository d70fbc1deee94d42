"""Sequential index updates with a randomized exploration phase.

The decision variable is a vector of integer sampling indices, one per
antenna, constrained to keep any two indices at least ``min_index_gap``
apart. Optimization alternates two stages for a configured number of
rounds:

1. a sequential update, re-optimizing each antenna's index over its
   feasibility set while all others stay fixed, and
2. an exploration phase that repeatedly selects among adjacent and randomly
   generated feasible candidates with probability proportional to
   exp(scale * utility), keeping a history of visited solutions and
   returning the best one seen.

The history of each exploration phase contains its input, so every phase
is guaranteed not to lose utility, and the per-round utility trace is
non-decreasing. Utility evaluation is delegated to a pluggable oracle so
the same machinery serves single-user SNR, multi-user sum rate, or
synthetic test functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleGeometry, InfeasibleInitial
from .grid_channel import SamplingGrid

# A placement is a 1-D numpy array of N integer sampling indices (1-based).
IndexVector = np.ndarray

_REFILL_ATTEMPTS = 50
_ADAPTIVE_SHARPNESS = 5.0
_ADAPTIVE_EPS = 1e-9


def as_index_vector(indices) -> IndexVector:
    a = np.asarray(indices, dtype=np.int64)
    if a.ndim != 1 or a.size == 0:
        raise ValueError(f"expected a non-empty 1-D index vector, got shape {a.shape}")
    return a


def is_feasible(indices, min_gap: int, num_points: int | None = None) -> bool:
    """True when all pairwise index distances reach min_gap (and indices lie
    on the grid, when its size is given)."""
    a = np.sort(np.asarray(indices, dtype=np.int64))
    if num_points is not None and (a[0] < 1 or a[-1] > num_points):
        return False
    if a.size == 1:
        return True
    return bool(np.min(np.diff(a)) >= min_gap)


# ----------------------------------------------------------------------
# Utility oracles
# ----------------------------------------------------------------------

class UtilityOracle:
    """Scores an index vector and counts how many evaluations were spent.

    Subclasses implement ``_score``. ``evaluate`` increments the counter by
    exactly one per call; wrap an oracle in :class:`CachedUtility` to make
    repeated vectors free.
    """

    def __init__(self):
        self._count = 0

    @property
    def eval_count(self) -> int:
        return self._count

    def evaluate(self, indices) -> float:
        self._count += 1
        return self._score(np.asarray(indices, dtype=np.int64))

    def _score(self, indices: np.ndarray) -> float:
        raise NotImplementedError


class CallableUtility(UtilityOracle):
    """Adapter turning any function of an index vector into an oracle."""

    def __init__(self, fn):
        super().__init__()
        self._fn = fn

    def _score(self, indices):
        return float(self._fn(indices))


class CachedUtility:
    """Memoizing front for an oracle: cache hits do not recount.

    ``eval_count`` reports the number of fresh evaluations spent by the
    wrapped oracle.
    """

    def __init__(self, inner: UtilityOracle):
        self._inner = inner
        self._table: dict[tuple, float] = {}

    @property
    def eval_count(self) -> int:
        return self._inner.eval_count

    def evaluate(self, indices) -> float:
        key = tuple(int(v) for v in indices)
        value = self._table.get(key)
        if value is None:
            value = self._inner.evaluate(indices)
            self._table[key] = value
        return value

    def cached_value(self, indices) -> float:
        """Utility of an already-evaluated vector, without any counting."""
        return self._table[tuple(int(v) for v in indices)]


# ----------------------------------------------------------------------
# Configuration and state
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class AlgorithmConfig:
    """Tuning knobs of the alternating search.

    rounds:         number of sequential-update rounds (each followed by an
                    exploration phase).
    gs_iterations:  iterations per exploration phase.
    num_candidates: candidates considered per exploration iteration. With
                    the default sizing of 3 per antenna and max_shift 1, the
                    adjacent candidates are never truncated.
    max_shift:      largest single-coordinate shift for adjacent candidates.
    gibbs_scale:    selection sharpness; None switches to an adaptive value
                    of 5 / (utility spread) per iteration.
    seed:           used only to build a generator when none is supplied.
    """

    rounds: int
    gs_iterations: int
    num_candidates: int
    max_shift: int = 1
    gibbs_scale: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.rounds < 1:
            raise ValueError(f"rounds must be >= 1, got {self.rounds}")
        if self.gs_iterations < 1:
            raise ValueError(f"gs_iterations must be >= 1, got {self.gs_iterations}")
        if self.num_candidates < 1:
            raise ValueError(f"num_candidates must be >= 1, got {self.num_candidates}")
        if self.max_shift < 1:
            raise ValueError(f"max_shift must be >= 1, got {self.max_shift}")
        if self.gibbs_scale is not None and self.gibbs_scale < 0:
            raise ValueError(f"gibbs_scale must be >= 0, got {self.gibbs_scale}")


def default_config(num_antennas: int, num_points: int, rounds: int,
                   seed: int = 0) -> AlgorithmConfig:
    """Default sizing: 3 candidates per antenna, one iteration per point."""
    return AlgorithmConfig(rounds=rounds, gs_iterations=num_points,
                           num_candidates=3 * num_antennas, max_shift=1,
                           gibbs_scale=None, seed=seed)


@dataclass
class GsState:
    """Bookkeeping of one exploration phase, filled in for inspection.

    history holds (vector, utility) pairs, entry 0 being the phase input;
    adjacent/random/probabilities describe the latest iteration.
    """

    history: list
    adjacent: list
    random: list
    probabilities: np.ndarray | None = None


@dataclass(frozen=True)
class RoundRecord:
    """One row of the per-round utility trace.

    evals_update and evals_gibbs are the fresh evaluations spent by each
    stage of the round; evals_total is cumulative over the whole run.
    """

    round_index: int
    utility_after_update: float
    utility_after_gibbs: float
    evals_total: int
    evals_update: int = 0
    evals_gibbs: int = 0


@dataclass(frozen=True)
class AlgorithmResult:
    indices: IndexVector
    utility: float
    trace: tuple[RoundRecord, ...]
    eval_count: int
    stagnation_stop: bool


# ----------------------------------------------------------------------
# Sequential update
# ----------------------------------------------------------------------

def feasibility_set(prefix, suffix, grid: SamplingGrid) -> np.ndarray:
    """Grid indices at least min_index_gap away from every occupied index.

    prefix holds the already-updated indices of earlier antennas, suffix the
    still-frozen indices of later ones. During a legal update round the set
    is never empty: the antenna's own current index always qualifies.
    """
    occupied = np.concatenate([np.asarray(prefix, dtype=np.int64).ravel(),
                               np.asarray(suffix, dtype=np.int64).ravel()])
    candidates = np.arange(1, grid.num_points + 1, dtype=np.int64)
    if occupied.size == 0:
        return candidates
    ok = np.all(np.abs(candidates[:, None] - occupied[None, :]) >= grid.min_index_gap,
                axis=1)
    return candidates[ok]


def sequential_update_round(previous, oracle, grid: SamplingGrid) -> IndexVector:
    """One round of coordinate-wise maximization.

    Antennas are visited in order; each index is set to the utility argmax
    over its feasibility set while the rest stay at their current values.
    Ties keep the incumbent index, and the lowest index wins among other
    ties, so the round is deterministic. The output utility never falls
    below the input's (the incumbent is always a candidate).
    """
    a = as_index_vector(previous).copy()
    n_antennas = a.size
    for n in range(n_antennas):
        allowed = feasibility_set(a[:n], a[n + 1:], grid)
        incumbent = int(a[n])
        best_m = incumbent
        best_u = oracle.evaluate(a)
        for m in allowed:
            m = int(m)
            if m == incumbent:
                continue
            a[n] = m
            u = oracle.evaluate(a)
            if u > best_u:
                best_u, best_m = u, m
        a[n] = best_m
    return a


# ----------------------------------------------------------------------
# Exploration phase
# ----------------------------------------------------------------------

def adjacent_candidates(indices, max_shift: int, grid: SamplingGrid) -> list:
    """All feasible single-coordinate shifts of up to max_shift steps.

    Shifts leaving the grid count as infeasible. The enumeration order
    (antenna, then shift size, minus before plus) is deterministic.
    """
    a = as_index_vector(indices)
    gap = grid.min_index_gap
    out = []
    for n in range(a.size):
        for j in range(1, max_shift + 1):
            for shifted in (int(a[n]) - j, int(a[n]) + j):
                if not 1 <= shifted <= grid.num_points:
                    continue
                candidate = a.copy()
                candidate[n] = shifted
                if is_feasible(candidate, gap):
                    out.append(candidate)
    return out


def spread_ascending(draw, min_gap: int) -> np.ndarray:
    """Map an ascending draw of distinct integers onto a feasible placement
    by adding (n-1)*(min_gap-1) to the n-th smallest entry."""
    base = np.sort(np.asarray(draw, dtype=np.int64))
    return base + np.arange(base.size, dtype=np.int64) * (min_gap - 1)


def random_feasible(num_points: int, num_antennas: int, min_gap: int,
                    count: int, rng: np.random.Generator) -> list:
    """Uniform random feasible placements, in ascending index order.

    Draws num_antennas distinct integers from a shrunken range, then spreads
    them by the gap offsets. The construction is a bijection onto the
    feasible ascending configurations, hence uniform over them.
    """
    base = num_points - (num_antennas - 1) * (min_gap - 1)
    if base < num_antennas:
        raise InfeasibleGeometry(
            f"no feasible placement: {num_antennas} antennas with gap {min_gap} "
            f"do not fit on {num_points} points")
    out = []
    for _ in range(count):
        draw = rng.choice(base, size=num_antennas, replace=False) + 1
        out.append(spread_ascending(draw, min_gap))
    return out


def _selection_probabilities(utilities, scale: float) -> np.ndarray:
    """exp(scale*u) / sum(exp(scale*u)), stabilized against overflow."""
    z = scale * np.asarray(utilities, dtype=float)
    z -= z.max()
    p = np.exp(z)
    return p / p.sum()


def _inverse_cdf_pick(probabilities: np.ndarray, rng: np.random.Generator) -> int:
    """First index whose cumulative probability reaches a uniform draw on
    (0, 1]."""
    p_t = 1.0 - rng.random()
    cumulative = np.cumsum(probabilities)
    idx = int(np.searchsorted(cumulative, p_t, side="left"))
    return min(idx, probabilities.size - 1)


def gibbs_select(candidates, oracle, scale: float, rng: np.random.Generator):
    """Select one candidate with probability proportional to
    exp(scale * utility)."""
    utilities = [oracle.evaluate(c) for c in candidates]
    probabilities = _selection_probabilities(utilities, scale)
    return candidates[_inverse_cdf_pick(probabilities, rng)]


def _generate_candidates(current, cfg: AlgorithmConfig, grid: SamplingGrid,
                         rng: np.random.Generator):
    """Adjacent candidates first, then distinct random fills up to the
    configured count. Duplicates would silently double a candidate's
    selection probability, so the refill keeps drawing distinct vectors
    (bounded attempts, after which a smaller set is accepted)."""
    adjacent = adjacent_candidates(current, cfg.max_shift, grid)
    if len(adjacent) >= cfg.num_candidates:
        return adjacent[:cfg.num_candidates], adjacent[:cfg.num_candidates], []
    candidates = list(adjacent)
    seen = {tuple(int(v) for v in c) for c in candidates}
    randoms = []
    n_antennas = as_index_vector(current).size
    attempts = 0
    while len(candidates) < cfg.num_candidates and attempts < _REFILL_ATTEMPTS:
        needed = cfg.num_candidates - len(candidates)
        for vec in random_feasible(grid.num_points, n_antennas,
                                   grid.min_index_gap, needed, rng):
            key = tuple(int(v) for v in vec)
            if key not in seen:
                seen.add(key)
                candidates.append(vec)
                randoms.append(vec)
        attempts += 1
    return candidates, adjacent, randoms


def _adaptive_scale(utilities) -> float:
    spread = max(utilities) - min(utilities)
    return _ADAPTIVE_SHARPNESS / (spread + _ADAPTIVE_EPS)


def gibbs_phase(start, oracle, cfg: AlgorithmConfig, grid: SamplingGrid,
                rng: np.random.Generator, state: GsState | None = None):
    """Run one exploration phase and return the best solution in its history.

    Each iteration builds the feasible adjacent set of the current solution,
    fills it to the configured size with distinct random feasible
    placements, selects the next solution by the exponential-weight law, and
    appends it to the history. The history starts from the phase input, so
    the returned utility never falls below the input's. Ties resolve to the
    earliest history entry.
    """
    current = as_index_vector(start)
    history = [(current, oracle.evaluate(current))]
    last_probs = None
    adjacent: list = []
    randoms: list = []
    for _ in range(cfg.gs_iterations):
        candidates, adjacent, randoms = _generate_candidates(current, cfg, grid, rng)
        utilities = [oracle.evaluate(c) for c in candidates]
        scale = cfg.gibbs_scale if cfg.gibbs_scale is not None else _adaptive_scale(utilities)
        last_probs = _selection_probabilities(utilities, scale)
        pick = _inverse_cdf_pick(last_probs, rng)
        current = candidates[pick]
        history.append((current, utilities[pick]))
    best_vec, best_u = history[0]
    for vec, u in history[1:]:
        if u > best_u:
            best_vec, best_u = vec, u
    if state is not None:
        state.history = history
        state.adjacent = adjacent
        state.random = randoms
        state.probabilities = last_probs
    return best_vec


# ----------------------------------------------------------------------
# Full algorithm
# ----------------------------------------------------------------------

def run_algorithm_1(start, oracle, cfg: AlgorithmConfig, grid: SamplingGrid,
                    rng: np.random.Generator | None = None) -> AlgorithmResult:
    """Alternate sequential updates and exploration phases for cfg.rounds.

    The per-round utility trace is non-decreasing by construction. The run
    stops early, flagged as a stagnation stop, when a round changes no
    coordinate and its exploration phase returns its input. Each round's
    fresh evaluations stay within num_antennas*num_points for the update
    and num_candidates*gs_iterations for the exploration (checked here, so
    every harness run exercises the budget).
    """
    a = as_index_vector(start)
    n_antennas = a.size
    if not is_feasible(a, grid.min_index_gap, grid.num_points):
        raise InfeasibleInitial(
            f"initial placement {a.tolist()} violates the spacing constraint "
            f"(gap {grid.min_index_gap}) or leaves the grid")
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    cached = oracle if isinstance(oracle, CachedUtility) else CachedUtility(oracle)

    trace = []
    previous_best = -np.inf
    stagnation = False
    utility = cached.evaluate(a)
    for round_index in range(1, cfg.rounds + 1):
        before = cached.eval_count
        updated = sequential_update_round(a, cached, grid)
        evals_update = cached.eval_count - before
        assert evals_update <= n_antennas * grid.num_points, \
            "sequential update exceeded its evaluation budget"
        u_updated = cached.cached_value(updated)

        before = cached.eval_count
        explored = gibbs_phase(updated, cached, cfg, grid, rng)
        evals_gibbs = cached.eval_count - before
        assert evals_gibbs <= cfg.num_candidates * cfg.gs_iterations, \
            "exploration phase exceeded its evaluation budget"
        utility = cached.cached_value(explored)

        assert u_updated >= previous_best or round_index == 1
        assert utility >= u_updated
        previous_best = utility
        trace.append(RoundRecord(round_index=round_index,
                                 utility_after_update=u_updated,
                                 utility_after_gibbs=utility,
                                 evals_total=cached.eval_count,
                                 evals_update=evals_update,
                                 evals_gibbs=evals_gibbs))
        stagnated = bool(np.array_equal(updated, a) and np.array_equal(explored, updated))
        a = explored
        if stagnated and round_index < cfg.rounds:
            stagnation = True
            break
    return AlgorithmResult(indices=a, utility=utility, trace=tuple(trace),
                           eval_count=cached.eval_count, stagnation_stop=stagnation)
