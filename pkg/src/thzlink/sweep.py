"""Parameter sweeps over frequency, altitude, or elevation.

A sweep re-resolves the scenario at each axis point and emits one long-format
CSV, ``axis_value,frequency_hz,metric,value``, with a deterministic row
order (axis ascending, then metric name, then frequency). Sweep points are
independent and may run on a thread pool; the shared spectrum cache makes
altitude sweeps cheap because the layer states repeat across points.
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import math
from pathlib import Path
from typing import Iterable


from .errors import ConfigError
from .geometry import central_angle_for_elevation
from .scenario import (
    ResolvedLink,
    Scenario,
    SpectrumCache,
    load_scenario_catalog,
    make_grid,
    resolve,
)

AXES = ("frequency", "altitude", "elevation")


def sweep_points(start: float, stop: float, step: float) -> list[float]:
    if step <= 0.0:
        raise ConfigError("sweep step must be positive", field="step")
    if stop < start:
        raise ConfigError("sweep range is empty (stop < start)", field="to")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    points = [start + i * step for i in range(count)]
    if not points:
        raise ConfigError("sweep range is empty", field="to")
    return points


def _scenario_at(base: Scenario, axis: str, value: float) -> Scenario:
    if axis == "altitude":
        if "A" not in (base.kind[0], base.kind[2]):
            raise ConfigError(
                f"altitude sweep needs an airplane terminal, kind is "
                f"{base.kind}", field="axis")
        return dataclasses.replace(base, h_airplane=value)
    if axis == "elevation":
        if base.kind == "A2A":
            raise ConfigError("elevation sweep is not applicable to A2A",
                              field="axis")
        h_low, h_high = base.endpoints()
        rho = central_angle_for_elevation(h_low, h_high,
                                          math.radians(value))
        return dataclasses.replace(base, central_angle=rho)
    raise ConfigError(f"unknown sweep axis {axis!r}", field="axis")


def run_sweep(
    base: Scenario,
    axis: str,
    start: float,
    stop: float,
    step: float,
    cache: SpectrumCache | None = None,
    threads: int = 1,
) -> tuple[list[float], list[ResolvedLink]]:
    """Resolve the scenario across the axis range. Returns (points, results).

    Axis units: frequency in GHz, altitude in m, elevation in degrees.
    """
    if axis not in AXES:
        raise ConfigError(f"axis must be one of {', '.join(AXES)}",
                          field="axis")
    points = sweep_points(start, stop, step)

    if axis == "frequency":
        swept = dataclasses.replace(base, f_min=start * 1e9, f_max=stop * 1e9,
                                    f_step=step * 1e9)
        grid = make_grid(swept.f_min, swept.f_max, swept.f_step)
        catalog = load_scenario_catalog(swept, grid)
        return points, [resolve(swept, cache, catalog)]

    scenarios = [_scenario_at(base, axis, value) for value in points]
    grid = make_grid(base.f_min, base.f_max, base.f_step)
    catalog = load_scenario_catalog(base, grid)
    if threads <= 1:
        results = [resolve(s, cache, catalog) for s in scenarios]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(
                lambda s: resolve(s, cache, catalog), scenarios))
    return points, results


def write_sweep_csv(
    file,
    axis: str,
    points: Iterable[float],
    results: list[ResolvedLink],
    provenance: str | None = None,
) -> None:
    """Long-format CSV: axis_value,frequency_hz,metric,value."""
    close = False
    if isinstance(file, (str, Path)):
        file = open(file, "w", newline="")
        close = True
    try:
        if provenance:
            file.write(f"# {provenance}\n")
        file.write("axis_value,frequency_hz,metric,value\n")
        if axis == "frequency":
            resolved = results[0]
            rows = []
            for f, pl, s in zip(resolved.grid, resolved.path_loss_db,
                                resolved.snr):
                rows.append((f / 1e9, f, "path_loss_db", pl))
                rows.append((f / 1e9, f, "snr_db",
                             10.0 * math.log10(s) if s > 0 else -math.inf))
            for value, f, metric, v in sorted(
                    rows, key=lambda r: (r[0], r[2], r[1])):
                file.write(f"{value:.10g},{f:.10g},{metric},{v:.10g}\n")
            return
        for value, resolved in zip(points, results):
            rows = []
            center = resolved.scenario.transceiver.center_frequency
            rows.append((value, center, "capacity_bit_s",
                         resolved.budget.capacity))
            for f, pl, s in zip(resolved.grid, resolved.path_loss_db,
                                resolved.snr):
                rows.append((value, f, "path_loss_db", pl))
                rows.append((value, f, "snr_db",
                             10.0 * math.log10(s) if s > 0 else -math.inf))
            for v0, f, metric, v in sorted(
                    rows, key=lambda r: (r[0], r[2], r[1])):
                file.write(f"{v0:.10g},{f:.10g},{metric},{v:.10g}\n")
    finally:
        if close:
            file.close()


def crossover_altitude(
    base: Scenario,
    frequency: float,
    altitudes: Iterable[float],
    cache: SpectrumCache | None = None,
) -> float | None:
    """Altitude where the airplane-satellite loss drops below the
    airplane-ground loss at ``frequency`` (Hz), or None if no sign change.

    Both links are evaluated zenith with the scenario's antennas, so antenna
    gains cancel in the comparison.
    """
    altitudes = sorted(altitudes)
    previous = None
    crossover = None
    for h in altitudes:
        down = dataclasses.replace(
            base, kind="A2E", h_airplane=h, central_angle=0.0,
            f_min=frequency, f_max=frequency + 2 * base.f_step)
        up = dataclasses.replace(
            base, kind="A2S", h_airplane=h, central_angle=0.0,
            f_min=frequency, f_max=frequency + 2 * base.f_step)
        pl_down = resolve(down, cache, with_capacity=False).path_loss_db[0]
        pl_up = resolve(up, cache, with_capacity=False).path_loss_db[0]
        delta = pl_down - pl_up
        if previous is not None and previous[1] < 0.0 <= delta:
            h0, d0 = previous
            crossover = h0 + (h - h0) * (-d0) / (delta - d0)
            break
        previous = (h, delta)
    return crossover
