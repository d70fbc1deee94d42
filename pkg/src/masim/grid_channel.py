"""Sampling grid of the antenna movement region and point-wise channels.

The movement region [0, A] is discretized into M uniform points; index m
(1-based) sits at position m*A/M. Channels are generated once per
realization for every (point, user) pair under a sum-of-plane-waves field
response, so that any later evaluation of an antenna placement is a pure
table lookup.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, InvalidGeometry, NonIntegerIndexSpacing

_INT_TOL = 1e-9


@dataclass(frozen=True)
class SamplingGrid:
    """Uniform discretization of a linear movement region.

    num_points:    M, number of sampling points (indices are 1-based).
    region_length: region length in meters; point M sits at that position.
    wavelength:    carrier wavelength in meters.
    min_spacing:   minimum physical distance between two antennas, meters.
    min_index_gap: the same constraint in index units (exact integer).
    """

    num_points: int
    region_length: float
    wavelength: float
    min_spacing: float
    min_index_gap: int

    def positions(self) -> np.ndarray:
        """Positions of all points: m * region_length / num_points, m = 1..M."""
        m = np.arange(1, self.num_points + 1, dtype=float)
        return m * self.region_length / self.num_points


def build_grid(num_points: int, region_length: float, wavelength: float,
               min_spacing: float) -> SamplingGrid:
    """Build a sampling grid, rejecting discretizations where the minimum
    antenna distance is not an exact whole number of index steps.

    Silent rounding would change the feasible set, so a non-integer spacing
    is a hard error rather than a ceiling.
    """
    if num_points < 2:
        raise InvalidGeometry(f"need at least 2 sampling points, got {num_points}")
    if region_length <= 0 or wavelength <= 0:
        raise InvalidGeometry("region length and wavelength must be positive")
    if min_spacing <= 0:
        raise InvalidGeometry("minimum spacing must be positive")
    if min_spacing >= region_length:
        raise InvalidGeometry(
            f"minimum spacing {min_spacing} m does not fit in a region of "
            f"{region_length} m")
    gap = min_spacing * num_points / region_length
    gap_int = round(gap)
    if abs(gap - gap_int) > _INT_TOL * max(1.0, abs(gap)):
        raise NonIntegerIndexSpacing(
            f"min_spacing*num_points/region_length = {gap} is not an integer; "
            "choose a compatible discretization")
    return SamplingGrid(num_points=int(num_points), region_length=float(region_length),
                        wavelength=float(wavelength), min_spacing=float(min_spacing),
                        min_index_gap=int(gap_int))


def index_to_position(grid: SamplingGrid, m: int) -> float:
    """Position in meters of sampling index m (1-based)."""
    if not 1 <= m <= grid.num_points:
        raise IndexOutOfRange(f"index {m} outside 1..{grid.num_points}")
    return m * grid.region_length / grid.num_points


@dataclass(frozen=True)
class PathSet:
    """Per-user propagation paths: complex gains and departure angles.

    gains:  (num_paths, num_users) complex path coefficients.
    angles: (num_paths, num_users) departure angles, radians in [0, pi].
    distances, pathloss_exponent, reference_gain: generation parameters
    (reference gain in linear scale); None when loaded from CSV.
    """

    gains: np.ndarray
    angles: np.ndarray
    distances: np.ndarray | None = None
    pathloss_exponent: float | None = None
    reference_gain: float | None = None

    @property
    def num_paths(self) -> int:
        return self.gains.shape[0]

    @property
    def num_users(self) -> int:
        return self.gains.shape[1]


def draw_paths(num_users: int, num_paths: int, distances, pathloss_exponent: float,
               reference_gain: float, rng: np.random.Generator) -> PathSet:
    """Draw a random path set.

    Path gains for user k are circularly-symmetric complex Gaussian with
    variance reference_gain * distance_k**(-pathloss_exponent) / num_paths;
    departure angles are uniform on [0, pi]. Deterministic given the rng
    state.
    """
    if num_paths < 1:
        raise ValueError(f"need at least one path, got {num_paths}")
    distances = np.asarray(distances, dtype=float)
    if distances.shape != (num_users,):
        raise ValueError(f"expected {num_users} distances, got shape {distances.shape}")
    if np.any(distances <= 0):
        raise ValueError("all distances must be positive")
    variances = reference_gain * distances ** (-pathloss_exponent) / num_paths
    scale = np.sqrt(variances / 2.0)  # per real/imag component
    shape = (num_paths, num_users)
    gains = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * scale
    angles = rng.uniform(0.0, np.pi, size=shape)
    gains.flags.writeable = False
    angles.flags.writeable = False
    return PathSet(gains=gains, angles=angles, distances=distances,
                   pathloss_exponent=float(pathloss_exponent),
                   reference_gain=float(reference_gain))


@dataclass(frozen=True)
class ChannelMap:
    """Complex channel values for every (sampling point, user) pair.

    h[m-1, k-1] is the baseband channel from point m to user k. The table is
    immutable after construction; concurrent readers may share it freely.
    """

    h: np.ndarray
    grid: SamplingGrid | None = None
    paths: PathSet | None = None

    @property
    def num_points(self) -> int:
        return self.h.shape[0]

    @property
    def num_users(self) -> int:
        return self.h.shape[1]

    def checksum(self) -> str:
        """Hex digest of the channel table, used to assert that methods
        compared within one realization saw identical channels."""
        return hashlib.sha256(np.ascontiguousarray(self.h).tobytes()).hexdigest()


def generate_channel_map(paths: PathSet, grid: SamplingGrid) -> ChannelMap:
    """Evaluate the field response at every sampling point for every user.

    h[m, k] = sum_l gains[l, k] * exp(j * (2*pi/wavelength) * x_m * cos(angles[l, k]))

    with x_m the position of point m. A linear array sees one azimuth angle
    per path, and any fixed bijection of [0, pi] leaves the statistics
    unchanged, so the cosine convention is adopted throughout.
    """
    x = grid.positions()  # (M,)
    wavenumber = 2.0 * np.pi / grid.wavelength
    phase = wavenumber * x[:, None, None] * np.cos(paths.angles)[None, :, :]
    h = np.sum(paths.gains[None, :, :] * np.exp(1j * phase), axis=1)
    h.flags.writeable = False
    return ChannelMap(h=h, grid=grid, paths=paths)


def channel_at(channel: ChannelMap, indices) -> np.ndarray:
    """Extract the per-user channel vectors for one antenna placement.

    Returns a (num_users, num_antennas) matrix whose row k, column n is the
    conjugate of h[indices[n], k], i.e. the Hermitian-transposed per-point
    values stacked user by user. Pure lookup: the map is never mutated.
    """
    a = np.asarray(indices, dtype=np.int64)
    if a.ndim != 1 or a.size == 0:
        raise IndexOutOfRange(f"expected a non-empty 1-D index vector, got shape {a.shape}")
    if np.any(a < 1) or np.any(a > channel.num_points):
        raise IndexOutOfRange(
            f"indices {a.tolist()} outside 1..{channel.num_points}")
    return np.conj(channel.h[a - 1, :].T)


# ----------------------------------------------------------------------
# CSV forms for cross-implementation testing
# ----------------------------------------------------------------------

def channel_map_to_csv(channel: ChannelMap, path) -> None:
    """Write the channel table as rows (m, k, re, im), 1-based indices."""
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["m", "k", "re", "im"])
        for m in range(channel.num_points):
            for k in range(channel.num_users):
                v = channel.h[m, k]
                writer.writerow([m + 1, k + 1, repr(float(v.real)), repr(float(v.imag))])


def channel_map_from_csv(path, grid: SamplingGrid | None = None) -> ChannelMap:
    """Read a channel table written by channel_map_to_csv."""
    entries = {}
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        for row in reader:
            entries[(int(row["m"]), int(row["k"]))] = float(row["re"]) + 1j * float(row["im"])
    if not entries:
        raise ValueError(f"no channel rows in {path}")
    num_points = max(m for m, _ in entries)
    num_users = max(k for _, k in entries)
    h = np.zeros((num_points, num_users), dtype=complex)
    for (m, k), v in entries.items():
        h[m - 1, k - 1] = v
    h.flags.writeable = False
    return ChannelMap(h=h, grid=grid, paths=None)


def path_set_to_csv(paths: PathSet, path) -> None:
    """Write paths as rows (k, l, re_gamma, im_gamma, theta), 1-based."""
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["k", "l", "re_gamma", "im_gamma", "theta"])
        for k in range(paths.num_users):
            for l in range(paths.num_paths):
                g = paths.gains[l, k]
                writer.writerow([k + 1, l + 1, repr(float(g.real)),
                                 repr(float(g.imag)), repr(float(paths.angles[l, k]))])


def path_set_from_csv(path) -> PathSet:
    """Read a path set written by path_set_to_csv."""
    entries = {}
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        for row in reader:
            key = (int(row["l"]), int(row["k"]))
            entries[key] = (float(row["re_gamma"]) + 1j * float(row["im_gamma"]),
                            float(row["theta"]))
    if not entries:
        raise ValueError(f"no path rows in {path}")
    num_paths = max(l for l, _ in entries)
    num_users = max(k for _, k in entries)
    gains = np.zeros((num_paths, num_users), dtype=complex)
    angles = np.zeros((num_paths, num_users), dtype=float)
    for (l, k), (g, theta) in entries.items():
        gains[l - 1, k - 1] = g
        angles[l - 1, k - 1] = theta
    gains.flags.writeable = False
    angles.flags.writeable = False
    return PathSet(gains=gains, angles=angles)
