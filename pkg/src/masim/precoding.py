"""Linear precoders, per-user rates, and the power-budget search.

The multi-user precoder is regularized zero forcing,

    W(rho) = H^H (H H^H + rho*I)^(-1),

with H the (num_users x num_antennas) channel matrix whose k-th row is the
Hermitian transpose of user k's channel vector. The K x K inverse above is
mathematically identical to the (H^H H + rho*I)^(-1) H^H form through the
push-through identity and is the one implemented (K <= N here, smaller
inverse). The regularization weight alone enforces the transmit power
budget: rho is found by bisection so that the squared Frobenius norm of W
hits the budget.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import BracketFailure, SingularSystem, ZeroChannel
from .grid_channel import ChannelMap, channel_at

_COND_LIMIT = 1e12
_MAX_DOUBLINGS = 60
_MAX_BISECT = 500


@dataclass(frozen=True)
class PrecoderSolution:
    """A precoding matrix with its regularization, power, and rates.

    weights:     (num_antennas, num_users) matrix, column k serves user k.
    rho:         regularization weight used.
    total_power: squared Frobenius norm of weights, watts.
    rates:       per-user achievable rates, bits/s/Hz.
    sum_rate:    their sum.
    """

    weights: np.ndarray
    rho: float
    total_power: float
    rates: np.ndarray
    sum_rate: float


def _channel_rows(channel: ChannelMap, indices) -> np.ndarray:
    """(num_users x num_antennas) matrix with rows h_k^H (raw table values)."""
    return np.conj(channel_at(channel, indices))


def rzf_precoder(H: np.ndarray, rho: float) -> np.ndarray:
    """Regularized zero-forcing precoder for a stacked channel matrix.

    H has one row per user; the result has one column per user and one row
    per antenna. rho = 0 is accepted only while the Gram matrix is
    numerically nonsingular.
    """
    if rho < 0:
        raise ValueError(f"regularization must be nonnegative, got {rho}")
    H = np.asarray(H, dtype=complex)
    num_users = H.shape[0]
    gram = H @ H.conj().T
    lam = np.linalg.eigvalsh(gram).real
    lam = np.clip(lam, 0.0, None)
    smallest, largest = lam[0] + rho, lam[-1] + rho
    if smallest <= 0.0 or largest / smallest > _COND_LIMIT:
        raise SingularSystem(
            f"regularized Gram matrix is numerically singular "
            f"(condition estimate {largest / smallest if smallest > 0 else np.inf:.3e})")
    return np.linalg.solve(gram + rho * np.eye(num_users), H).conj().T


def user_rates(indices, weights: np.ndarray, channel: ChannelMap,
               noise_power: float) -> np.ndarray:
    """Achievable rate of every user for a given placement and precoder.

    rates[k] = log2(1 + |h_k^H w_k|^2 / (sum_{i != k} |h_k^H w_i|^2 + noise)).
    """
    if noise_power <= 0:
        raise ValueError(f"noise power must be positive, got {noise_power}")
    H = _channel_rows(channel, indices)
    effective = H @ weights  # [k, i] = h_k^H w_i
    signal = np.abs(np.diag(effective)) ** 2
    interference = np.sum(np.abs(effective) ** 2, axis=1) - signal
    return np.log2(1.0 + signal / (interference + noise_power))


def _precoder_power(eigenvalues, rho: float) -> float:
    """Squared Frobenius norm of the RZF precoder, from the Gram spectrum.

    ||W(rho)||_F^2 = tr(G (G + rho*I)^(-2)) = sum_i lam_i / (lam_i + rho)^2,
    a strictly decreasing function of rho whenever some lam_i > 0. Python
    floats keep this hot loop cheap; equality with the direct matrix norm is
    asserted in the test suite.
    """
    total = 0.0
    for lam in eigenvalues:
        d = lam + rho
        total += lam / (d * d)
    return total


def bisect_rho(indices, channel: ChannelMap, power_budget: float,
               noise_power: float, tol: float = 1e-6,
               rho_mode: str = "power") -> PrecoderSolution:
    """Find the regularization weight meeting the transmit power budget.

    Bisection drives ||W(rho)||_F^2 to the budget within the relative
    tolerance. The monotone direction is detected from the bracket endpoints
    rather than assumed. When even the near-unregularized precoder already
    satisfies the budget, rho is clamped to the lower bracket edge.

    rho_mode "power" (default) returns the budget-active weight; mode
    "rate_golden" additionally runs a bounded scalar search maximizing the
    sum rate over the budget-feasible rho range (sensitivity studies only).
    """
    if power_budget <= 0:
        raise ValueError(f"power budget must be positive, got {power_budget}")
    H = _channel_rows(channel, indices)
    num_users = H.shape[0]
    gram = H @ H.conj().T
    lam = [max(float(v), 0.0) for v in np.linalg.eigvalsh(gram).real]
    trace = sum(lam)
    if lam[-1] <= 1e-300:
        raise BracketFailure("channel matrix is numerically zero; no power "
                             "level can be bracketed")
    rho_lo = 1e-9 * trace / num_users

    p_lo = _precoder_power(lam, rho_lo)
    probe = max(1.0, 2.0 * rho_lo)
    decreasing = _precoder_power(lam, probe) <= p_lo

    if decreasing and p_lo <= power_budget:
        rho_star = rho_lo  # budget met at the bracket edge
    elif not decreasing and p_lo >= power_budget:
        rho_star = rho_lo
    else:
        over_at_lo = p_lo > power_budget
        rho_hi = 1.0
        doublings = 0
        while (_precoder_power(lam, rho_hi) > power_budget) == over_at_lo:
            rho_hi *= 2.0
            doublings += 1
            if doublings > _MAX_DOUBLINGS:
                raise BracketFailure(
                    f"budget side never flipped after {_MAX_DOUBLINGS} doublings")
        lo, hi = rho_lo, rho_hi
        rho_star = 0.5 * (lo + hi)
        for _ in range(_MAX_BISECT):
            p_mid = _precoder_power(lam, rho_star)
            if abs(p_mid - power_budget) <= tol * power_budget:
                break
            if (p_mid > power_budget) == over_at_lo:
                lo = rho_star
            else:
                hi = rho_star
            rho_star = 0.5 * (lo + hi)
        else:
            # interval exhausted in floats; take the side within budget
            rho_star = hi if over_at_lo else lo

    if rho_mode == "rate_golden":
        rho_star = _rate_optimal_rho(indices, H, channel, noise_power,
                                     rho_star, lam[-1])
    elif rho_mode != "power":
        raise ValueError(f"unknown rho_mode {rho_mode!r}")

    weights = rzf_precoder(H, rho_star)
    total_power = float(np.sum(np.abs(weights) ** 2))
    rates = user_rates(indices, weights, channel, noise_power)
    return PrecoderSolution(weights=weights, rho=float(rho_star),
                            total_power=total_power, rates=rates,
                            sum_rate=float(np.sum(rates)))


def _rate_optimal_rho(indices, H, channel, noise_power, rho_floor, lam_max):
    """Bounded search for the sum-rate-maximizing rho above the budget floor."""
    def negative_rate(rho):
        w = rzf_precoder(H, rho)
        return -float(np.sum(user_rates(indices, w, channel, noise_power)))

    upper = rho_floor * 1e3 + 10.0 * lam_max + 1.0
    res = minimize_scalar(negative_rate, bounds=(rho_floor, upper), method="bounded")
    return float(res.x) if -res.fun >= -negative_rate(rho_floor) else rho_floor


def mrt_precoder(indices, channel: ChannelMap, power_budget: float) -> np.ndarray:
    """Matched (maximum ratio) beamformer for the single-user case.

    Returns the (num_antennas, 1) vector sqrt(P) * h / ||h||; its squared
    norm equals the budget exactly.
    """
    if channel.num_users != 1:
        raise ValueError(f"matched beamforming needs exactly 1 user, "
                         f"got {channel.num_users}")
    h = channel_at(channel, indices)[0, :]
    norm = float(np.linalg.norm(h))
    if norm == 0.0:
        raise ZeroChannel("channel vector has zero norm")
    return (np.sqrt(power_budget) * h / norm)[:, None]


def received_snr(indices, channel: ChannelMap, power_budget: float,
                 noise_power: float) -> float:
    """Received SNR of the single user under matched beamforming:
    power * ||h||^2 / noise."""
    if channel.num_users != 1:
        raise ValueError(f"received SNR is a single-user quantity, "
                         f"got {channel.num_users} users")
    a = np.asarray(indices, dtype=np.int64)
    if np.any(a < 1) or np.any(a > channel.num_points):
        from .errors import IndexOutOfRange
        raise IndexOutOfRange(f"indices {a.tolist()} outside 1..{channel.num_points}")
    gains2 = np.abs(channel.h[a - 1, 0]) ** 2
    return power_budget * float(gains2.sum()) / noise_power
