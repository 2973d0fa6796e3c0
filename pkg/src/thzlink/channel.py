"""Per-frequency channel losses: spreading, layered molecular transmittance,
aperture antenna gains, and rain/cloud attenuation.

Rain and cloud specific-attenuation coefficients come from bundled CSV
tables (see ``data/rain_p838.csv`` and ``data/cloud_p840.csv``), interpolated
log-log in frequency. Queries beyond a table's formal validity are clamped
or computed and flagged as extrapolated rather than refused, since weather
loss above the models' formal band limits is still of qualitative interest.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .absorption import AbsorptionSpectrum
from .constants import SPEED_OF_LIGHT
from .errors import MisalignedLayers

RAIN_TABLE_RANGE_GHZ = (1.0, 1000.0)
CLOUD_VALID_MAX_GHZ = 200.0


@dataclass(frozen=True)
class WeatherConfig:
    """Rain and cloud state resolved to path lengths through each volume."""

    rain_rate: float = 0.0       # mm/h
    rain_path: float = 0.0       # m
    cloud_density: float = 0.0   # g/m^3
    cloud_path: float = 0.0      # m

    def __post_init__(self):
        for name in ("rain_rate", "rain_path", "cloud_density", "cloud_path"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be nonnegative")


@dataclass(frozen=True)
class AntennaConfig:
    """Circular-aperture dish described by diameter and efficiency."""

    diameter: float          # m
    efficiency: float = 1.0  # (0, 1]

    def __post_init__(self):
        if self.diameter <= 0.0:
            raise ValueError("antenna diameter must be positive")
        if not 0.0 < self.efficiency <= 1.0:
            raise ValueError("antenna efficiency must be in (0, 1]")


class Attenuation(NamedTuple):
    """Attenuation in dB plus a flag for beyond-table extrapolation."""

    db: float
    extrapolated: bool


def spreading_loss(f, r: float):
    """Power gain (c / 4 pi f r)^2 of an isotropic pair at distance r."""
    return (SPEED_OF_LIGHT / (4.0 * math.pi * np.asarray(f, dtype=float) * r)) ** 2


def dish_gain(antenna: AntennaConfig, f):
    """Boresight gain of a fixed circular aperture, dimensionless."""
    f = np.asarray(f, dtype=float)
    return antenna.efficiency * (
        math.pi * antenna.diameter * f / SPEED_OF_LIGHT) ** 2


def transmittance(
    grid,
    segments: Sequence[tuple[int, float]],
    layer_spectra: Mapping[int, AbsorptionSpectrum],
):
    """Beer-Lambert transmittance over a segmented path, in (0, 1].

    ``segments`` pairs layer indices with path lengths; ``layer_spectra``
    maps the same indices to absorption spectra on the same grid.
    """
    grid = np.asarray(grid, dtype=float)
    optical_depth = np.zeros_like(grid)
    for index, length in segments:
        spectrum = layer_spectra.get(index)
        if spectrum is None:
            raise MisalignedLayers(f"no spectrum for layer {index}")
        if spectrum.grid.shape != grid.shape or not np.array_equal(
                spectrum.grid, grid):
            raise MisalignedLayers(
                f"layer {index} spectrum grid differs from the path grid")
        optical_depth += spectrum.kappa * length
    return np.exp(-optical_depth)


@lru_cache(maxsize=1)
def _rain_table():
    path = Path(__file__).parent / "data" / "rain_p838.csv"
    freqs, ks, alphas = [], [], []
    with path.open(newline="") as fh:
        for row in csv.DictReader(r for r in fh if not r.startswith("#")):
            freqs.append(float(row["freq_ghz"]))
            ks.append(float(row["k"]))
            alphas.append(float(row["alpha"]))
    return np.array(freqs), np.array(ks), np.array(alphas)


def rain_attenuation(f: float, rain_rate: float, path: float) -> Attenuation:
    """Rain attenuation A = k R^alpha * path over ``path`` meters, in dB.

    Coefficients are log-log interpolated from the bundled table covering
    1-1000 GHz; outside that band the edge value is used and the result is
    flagged extrapolated.
    """
    if rain_rate < 0.0:
        raise ValueError("rain_rate must be nonnegative")
    if rain_rate == 0.0 or path <= 0.0:
        return Attenuation(0.0, False)
    freqs, ks, alphas = _rain_table()
    f_ghz = f / 1e9
    extrapolated = not RAIN_TABLE_RANGE_GHZ[0] <= f_ghz <= RAIN_TABLE_RANGE_GHZ[1]
    f_ghz = min(max(f_ghz, freqs[0]), freqs[-1])
    log_f = math.log(f_ghz)
    k = math.exp(np.interp(log_f, np.log(freqs), np.log(ks)))
    alpha = math.exp(np.interp(log_f, np.log(freqs), np.log(alphas)))
    return Attenuation(k * rain_rate ** alpha * (path / 1000.0), extrapolated)


@lru_cache(maxsize=1)
def _cloud_table():
    path = Path(__file__).parent / "data" / "cloud_p840.csv"
    with path.open(newline="") as fh:
        reader = csv.reader(r for r in fh if not r.startswith("#"))
        header = next(reader)
        temps = np.array([float(name[3:-1]) for name in header[1:]])
        rows = [[float(v) for v in row] for row in reader]
    data = np.array(rows)
    return data[:, 0], temps, data[:, 1:]


def cloud_attenuation(f: float, density: float, path: float,
                      t: float) -> Attenuation:
    """Cloud/fog attenuation over ``path`` meters of droplets, in dB.

    Rayleigh-regime specific attenuation K_l(f, T) is interpolated log-log
    in frequency and linearly in temperature from the bundled table. The
    underlying model is formally valid up to 200 GHz; higher frequencies
    return the computed value flagged as extrapolated.
    """
    if density < 0.0:
        raise ValueError("cloud density must be nonnegative")
    if density == 0.0 or path <= 0.0:
        return Attenuation(0.0, False)
    freqs, temps, kl = _cloud_table()
    f_ghz = f / 1e9
    extrapolated = f_ghz > CLOUD_VALID_MAX_GHZ or f_ghz < freqs[0]
    f_ghz = min(max(f_ghz, freqs[0]), freqs[-1])
    t = min(max(t, temps[0]), temps[-1])
    log_f = math.log(f_ghz)
    per_temp = np.array([
        math.exp(np.interp(log_f, np.log(freqs), np.log(kl[:, j])))
        for j in range(len(temps))
    ])
    coefficient = np.interp(t, temps, per_temp)
    return Attenuation(coefficient * density * (path / 1000.0), extrapolated)


def total_path_loss(
    grid,
    r: float,
    tau,
    g_tx=1.0,
    g_rx=1.0,
    rain_db: float = 0.0,
    cloud_db: float = 0.0,
):
    """Total linear path loss (>= 1): spreading, absorption, weather, gains.

    With isotropic antennas, full transmittance, and no weather this reduces
    to the bare free-space loss (4 pi r f / c)^2.
    """
    grid = np.asarray(grid, dtype=float)
    weather = 10.0 ** ((rain_db + cloud_db) / 10.0)
    # tau underflows to 0 at opaque line centers; the loss is then inf
    with np.errstate(divide="ignore"):
        return weather / (spreading_loss(grid, r) * np.asarray(tau)
                          * np.asarray(g_tx) * np.asarray(g_rx))


def write_path_loss_csv(
    file,
    grid,
    path_loss_db,
    tau,
    fspl_db,
    rain_db=0.0,
    cloud_db=0.0,
    provenance: str | None = None,
) -> None:
    """CSV export: frequency_hz,path_loss_db,tau,fspl_db,rain_db,cloud_db.

    Rain and cloud columns accept scalars or per-frequency arrays.
    """
    grid = np.asarray(grid, dtype=float)
    rain_db = np.broadcast_to(np.asarray(rain_db, dtype=float), grid.shape)
    cloud_db = np.broadcast_to(np.asarray(cloud_db, dtype=float), grid.shape)
    close = False
    if isinstance(file, (str, Path)):
        file = open(file, "w", newline="")
        close = True
    try:
        if provenance:
            file.write(f"# {provenance}\n")
        file.write("frequency_hz,path_loss_db,tau,fspl_db,rain_db,cloud_db\n")
        for f, pl, t_, fs, rn, cl in zip(grid, path_loss_db, tau, fspl_db,
                                         rain_db, cloud_db):
            file.write(f"{f:.10g},{pl:.10g},{t_:.10g},{fs:.10g},"
                       f"{rn:.10g},{cl:.10g}\n")
    finally:
        if close:
            file.close()
