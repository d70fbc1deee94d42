"""Utility oracles for the broadcast case study.

Single-user runs score a placement by the received SNR under matched
beamforming; multi-user runs score it by the sum rate under power-budgeted
regularized zero forcing. Both are pure functions of the channel table, so
oracles are safe to share across concurrent readers.
"""

from __future__ import annotations

import numpy as np

from .grid_channel import ChannelMap
from .optimizer import UtilityOracle
from .precoding import bisect_rho


class SnrUtility(UtilityOracle):
    """Received SNR (linear) of the single user under matched beamforming.

    Arithmetic matches received_snr exactly; per-point gains are precomputed
    since every evaluation is a table lookup.
    """

    def __init__(self, channel: ChannelMap, power_budget: float, noise_power: float):
        super().__init__()
        if channel.num_users != 1:
            raise ValueError(f"single-user oracle needs 1 user, got {channel.num_users}")
        self._gains2 = np.abs(channel.h[:, 0]) ** 2
        self._power = power_budget
        self._noise = noise_power

    def _score(self, indices):
        return self._power * float(self._gains2[indices - 1].sum()) / self._noise


class SumRateUtility(UtilityOracle):
    """Sum rate under regularized zero forcing at the power budget."""

    def __init__(self, channel: ChannelMap, power_budget: float, noise_power: float,
                 tol: float = 1e-6, rho_mode: str = "power"):
        super().__init__()
        self._channel = channel
        self._power = power_budget
        self._noise = noise_power
        self._tol = tol
        self._rho_mode = rho_mode

    def _score(self, indices):
        return bisect_rho(indices, self._channel, self._power, self._noise,
                          tol=self._tol, rho_mode=self._rho_mode).sum_rate


def oracle_for_scenario(scenario: str, channel: ChannelMap, power_budget: float,
                        noise_power: float, tol: float = 1e-6,
                        rho_mode: str = "power") -> UtilityOracle:
    if scenario == "single_user":
        return SnrUtility(channel, power_budget, noise_power)
    if scenario == "multi_user":
        return SumRateUtility(channel, power_budget, noise_power, tol=tol,
                              rho_mode=rho_mode)
    raise ValueError(f"unknown scenario {scenario!r}")
