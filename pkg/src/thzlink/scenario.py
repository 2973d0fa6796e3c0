"""Scenario configuration, resolution, and batch execution.

A scenario names a link kind (airplane/satellite/ground endpoints), a
frequency grid, antennas, transceiver, weather, and atmosphere controls.
Resolution turns it into per-frequency path loss, noise, SNR, and a
band-integrated capacity, reusing cached per-layer absorption spectra.

Config files are flat ``key = value`` text with explicit units embedded in
the key names; unknown keys and malformed values are rejected with the
offending line, since silent unit inference is the classic link-budget
failure mode.
"""

from __future__ import annotations

import dataclasses
import hashlib
import math
import struct
import threading
import uuid
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .absorption import (
    DEFAULT_WING_CUTOFF,
    AbsorptionSpectrum,
    absorption_coefficient,
)
from .atmosphere import (
    MAX_ALTITUDE,
    AtmosphericState,
    Layer,
    LayerStack,
    build_layers,
    profile_at,
)
from .catalog import (
    LineCatalog,
    bundled_catalog_path,
    frequency_to_wavenumber,
    load_catalog,
)
from .channel import (
    AntennaConfig,
    Attenuation,
    WeatherConfig,
    cloud_attenuation,
    dish_gain,
    rain_attenuation,
    spreading_loss,
    total_path_loss,
    transmittance,
    write_path_loss_csv,
)
from .errors import ConfigError
from .geometry import (
    LinkEndpoints,
    atmospheric_path_length,
    central_angle_for_elevation,
    elevation_angle,
    layer_path_segments,
    slant_range,
)
from .link import (
    LinkBudget,
    SkyPath,
    TransceiverConfig,
    capacity as shannon_capacity,
    modulation_threshold,
    snr as compute_snr,
    total_noise_psd,
)

KINDS = ("A2S", "S2A", "E2A", "A2E", "E2S", "S2E", "A2A")

_GHZ = 1e9
_KM = 1e3


@dataclass(frozen=True)
class Scenario:
    """Fully validated scenario, all quantities in SI units."""

    kind: str
    h_airplane: float
    h_satellite: float
    h_ground: float
    central_angle: float          # rad
    link_distance: float          # m, used by A2A only
    tx_antenna: AntennaConfig
    rx_antenna: AntennaConfig
    transceiver: TransceiverConfig
    rain_rate: float              # mm/h
    rain_base: float              # m
    rain_thickness: float         # m
    cloud_density: float          # g/m^3
    cloud_base: float             # m
    cloud_thickness: float        # m
    layer_resolution: float       # m
    atmosphere_top: float         # m
    ground_humidity: float        # volume mixing ratio at sea level
    water_scale_height: float     # m
    f_min: float                  # Hz
    f_max: float                  # Hz
    f_step: float                 # Hz
    catalog_path: str             # "bundled" or a filesystem path
    wing_cutoff: float            # Hz

    def endpoints(self) -> tuple[float, float]:
        """(h_low, h_high) of the two terminals, lower first."""
        by_letter = {"A": self.h_airplane, "S": self.h_satellite,
                     "E": self.h_ground}
        a, b = by_letter[self.kind[0]], by_letter[self.kind[2]]
        return (min(a, b), max(a, b))

    @property
    def rx_altitude(self) -> float:
        by_letter = {"A": self.h_airplane, "S": self.h_satellite,
                     "E": self.h_ground}
        return by_letter[self.kind[2]]


_DEFAULTS: dict[str, float | str] = {
    "kind": "A2S",
    "h_airplane_km": 11.0,
    "h_satellite_km": 500.0,
    "h_ground_m": 0.0,
    "central_angle_deg": 0.0,
    "elevation_deg": None,
    "link_distance_m": 100.0,
    "f_min_ghz": 100.0,
    "f_max_ghz": 400.0,
    "f_step_ghz": 1.0,
    "tx_power_mw": 1.0,
    "bandwidth_ghz": 5.0,
    "center_frequency_ghz": 300.0,
    "noise_figure_db": 10.0,
    "rx_temperature_k": 296.0,
    "tx_dish_diameter_m": 0.5,
    "tx_dish_efficiency": 1.0,
    "rx_dish_diameter_m": 1.0,
    "rx_dish_efficiency": 1.0,
    "rain_rate_mm_h": 0.0,
    "rain_base_km": 0.0,
    "rain_thickness_km": 0.0,
    "cloud_density_g_m3": 0.0,
    "cloud_base_km": 0.7,
    "cloud_thickness_km": 1.0,
    "layer_resolution_m": 500.0,
    "atmosphere_top_km": 500.0,
    "ground_humidity_vmr": 0.0078,
    "water_scale_height_m": 2000.0,
    "catalog_path": "bundled",
    "wing_cutoff_ghz": DEFAULT_WING_CUTOFF / _GHZ,
}


def parse_config(path) -> Scenario:
    """Parse and validate a scenario config file."""
    values: dict[str, float | str | None] = dict(_DEFAULTS)
    seen: dict[str, int] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError("expected 'key = value'", line=lineno)
        key, _, value = (part.strip() for part in stripped.partition("="))
        if key not in _DEFAULTS:
            raise ConfigError("unknown key", field=key, line=lineno)
        if key in seen:
            raise ConfigError(f"duplicate of line {seen[key]}", field=key,
                              line=lineno)
        seen[key] = lineno
        if key in ("kind", "catalog_path"):
            values[key] = value
        else:
            try:
                values[key] = float(value)
            except ValueError:
                raise ConfigError(f"not a number: {value!r}", field=key,
                                  line=lineno) from None
    return build_scenario(values, seen)


def build_scenario(values: dict, seen: dict[str, int] | None = None) -> Scenario:
    """Validate raw config values and construct a :class:`Scenario`."""
    seen = seen or {}

    def fail(field: str, message: str):
        raise ConfigError(message, field=field, line=seen.get(field))

    kind = str(values["kind"]).upper()
    if kind not in KINDS:
        fail("kind", f"must be one of {', '.join(KINDS)}")

    def positive(field: str) -> float:
        v = float(values[field])
        if v <= 0.0:
            fail(field, f"must be positive, got {v}")
        return v

    def nonnegative(field: str) -> float:
        v = float(values[field])
        if v < 0.0:
            fail(field, f"must be nonnegative, got {v}")
        return v

    h_airplane = nonnegative("h_airplane_km") * _KM
    h_satellite = positive("h_satellite_km") * _KM
    h_ground = nonnegative("h_ground_m")
    atmosphere_top = positive("atmosphere_top_km") * _KM
    if atmosphere_top > MAX_ALTITUDE:
        fail("atmosphere_top_km",
             f"profiles end at {MAX_ALTITUDE / _KM:.0f} km")

    if kind in ("A2S", "S2A") and not h_airplane < h_satellite:
        fail("h_airplane_km", "airplane must be below the satellite")
    if kind in ("E2A", "A2E") and not h_ground < h_airplane:
        fail("h_airplane_km", "airplane must be above the ground terminal")
    if kind in ("E2S", "S2E") and not h_ground < h_satellite:
        fail("h_satellite_km", "satellite must be above the ground terminal")
    if "A" in (kind[0], kind[2]) and h_airplane >= atmosphere_top:
        fail("h_airplane_km", "airplane must be inside the atmosphere")

    f_min = positive("f_min_ghz") * _GHZ
    f_max = positive("f_max_ghz") * _GHZ
    f_step = positive("f_step_ghz") * _GHZ
    if not f_min < f_max:
        fail("f_min_ghz", "must be below f_max_ghz")

    bandwidth = positive("bandwidth_ghz") * _GHZ
    center = positive("center_frequency_ghz") * _GHZ
    if center - bandwidth / 2.0 <= 0.0:
        fail("center_frequency_ghz", "band must not extend below 0 Hz")

    elevation = values.get("elevation_deg")
    central = float(values["central_angle_deg"])
    if elevation is not None:
        if "central_angle_deg" in seen:
            fail("elevation_deg",
                 "give either elevation_deg or central_angle_deg, not both")
        if kind == "A2A":
            fail("elevation_deg", "not applicable to A2A links")
        psi = math.radians(float(elevation))
        if not 0.0 < psi <= math.pi / 2:
            fail("elevation_deg", "must be in (0, 90]")
        by_letter = {"A": h_airplane, "S": h_satellite, "E": h_ground}
        h_low = min(by_letter[kind[0]], by_letter[kind[2]])
        h_high = max(by_letter[kind[0]], by_letter[kind[2]])
        central_angle = central_angle_for_elevation(h_low, h_high, psi)
    else:
        central_angle = math.radians(central)
        if not 0.0 <= central_angle < math.pi / 2:
            fail("central_angle_deg", "must be in [0, 90)")

    try:
        tx_antenna = AntennaConfig(positive("tx_dish_diameter_m"),
                                   float(values["tx_dish_efficiency"]))
    except ValueError as exc:
        fail("tx_dish_efficiency", str(exc))
    try:
        rx_antenna = AntennaConfig(positive("rx_dish_diameter_m"),
                                   float(values["rx_dish_efficiency"]))
    except ValueError as exc:
        fail("rx_dish_efficiency", str(exc))

    transceiver = TransceiverConfig(
        tx_power=positive("tx_power_mw") * 1e-3,
        bandwidth=bandwidth,
        center_frequency=center,
        noise_figure=float(values["noise_figure_db"]),
        rx_temperature=positive("rx_temperature_k"),
    )

    humidity = nonnegative("ground_humidity_vmr")
    if humidity >= 1.0:
        fail("ground_humidity_vmr", "is a volume mixing ratio, must be < 1")

    return Scenario(
        kind=kind,
        h_airplane=h_airplane,
        h_satellite=h_satellite,
        h_ground=h_ground,
        central_angle=central_angle,
        link_distance=positive("link_distance_m"),
        tx_antenna=tx_antenna,
        rx_antenna=rx_antenna,
        transceiver=transceiver,
        rain_rate=nonnegative("rain_rate_mm_h"),
        rain_base=nonnegative("rain_base_km") * _KM,
        rain_thickness=nonnegative("rain_thickness_km") * _KM,
        cloud_density=nonnegative("cloud_density_g_m3"),
        cloud_base=nonnegative("cloud_base_km") * _KM,
        cloud_thickness=nonnegative("cloud_thickness_km") * _KM,
        layer_resolution=positive("layer_resolution_m"),
        atmosphere_top=atmosphere_top,
        ground_humidity=humidity,
        water_scale_height=positive("water_scale_height_m"),
        f_min=f_min,
        f_max=f_max,
        f_step=f_step,
        catalog_path=str(values["catalog_path"]),
        wing_cutoff=positive("wing_cutoff_ghz") * _GHZ,
    )


def make_grid(f_min: float, f_max: float, f_step: float) -> np.ndarray:
    """Uniform frequency grid from f_min to at most f_max, inclusive."""
    count = int(math.floor((f_max - f_min) / f_step + 1e-9)) + 1
    return f_min + f_step * np.arange(count)


class SpectrumCache:
    """Thread-safe cache of per-layer absorption spectra.

    Keys combine the catalog hash, the atmospheric state, the grid, and the
    engine options, so identical layers are computed once per sweep. With a
    directory the arrays persist on disk across runs; values are exact, so
    caching never changes results.
    """

    def __init__(self, directory: Path | str | None = None):
        self.directory = Path(directory) if directory is not None else None
        if self.directory is not None:
            self.directory.mkdir(parents=True, exist_ok=True)
        self._memory: dict[str, np.ndarray] = {}
        self._lock = threading.Lock()

    @staticmethod
    def key(catalog_sha: str, state: AtmosphericState, grid: np.ndarray,
            wing_cutoff: float) -> str:
        hasher = hashlib.sha256()
        hasher.update(catalog_sha.encode())
        hasher.update(struct.pack("<ddd", state.altitude, state.pressure,
                                  state.temperature))
        for name in sorted(state.mixing_ratios):
            hasher.update(name.encode())
            hasher.update(struct.pack("<d", state.mixing_ratios[name]))
        hasher.update(struct.pack("<d", wing_cutoff))
        hasher.update(grid.tobytes())
        return hasher.hexdigest()

    def get_or_compute(self, key: str, compute) -> np.ndarray:
        with self._lock:
            if key in self._memory:
                return self._memory[key]
        path = None
        if self.directory is not None:
            path = self.directory / f"{key}.npy"
            if path.exists():
                kappa = np.load(path)
                with self._lock:
                    self._memory[key] = kappa
                return kappa
        kappa = compute()
        with self._lock:
            self._memory[key] = kappa
        if path is not None:
            # unique temp name per writer: concurrent workers may race on
            # the same key, and both replacements carry identical bytes
            tmp = path.with_name(f"{key}.{uuid.uuid4().hex}.tmp.npy")
            np.save(tmp, kappa)
            tmp.replace(path)
        return kappa


@dataclass
class ResolvedLink:
    """All computed artifacts for one scenario on its survey grid."""

    scenario: Scenario
    grid: np.ndarray
    catalog_sha: str
    r_as: float
    psi: float
    tau: np.ndarray
    fspl_db: np.ndarray
    rain: Attenuation
    cloud: Attenuation
    rain_db: np.ndarray
    cloud_db: np.ndarray
    weather: WeatherConfig
    path_loss: np.ndarray       # linear
    sky: SkyPath
    noise_psd: np.ndarray
    snr: np.ndarray
    budget: LinkBudget

    @property
    def path_loss_db(self) -> np.ndarray:
        return 10.0 * np.log10(self.path_loss)

    @property
    def provenance(self) -> str:
        return f"thzlink {__version__} catalog_sha256={self.catalog_sha[:16]}"


def load_scenario_catalog(scenario: Scenario, grid: np.ndarray) -> LineCatalog:
    """Load the scenario's catalog over the grid window plus the wing cutoff.

    The window also covers the transceiver band so the capacity integral
    sees the same lines even when the band sits outside the survey grid.
    """
    path = scenario.catalog_path
    if path == "bundled":
        path = bundled_catalog_path()
    tx = scenario.transceiver
    f_low = min(float(grid[0]), tx.center_frequency - tx.bandwidth / 2.0)
    f_high = max(float(grid[-1]), tx.center_frequency + tx.bandwidth / 2.0)
    nu_min = max(frequency_to_wavenumber(f_low - scenario.wing_cutoff), 0.0)
    nu_max = frequency_to_wavenumber(f_high + scenario.wing_cutoff)
    return load_catalog(path, nu_min, nu_max)


def _band_path_length(h_start: float, psi: float, lo: float, hi: float,
                      top: float) -> float:
    """Slant path length through the altitude band [lo, hi] from h_start."""
    hi = min(hi, top)
    lo = max(lo, h_start)
    if hi <= lo:
        return 0.0
    to_hi = atmospheric_path_length(h_start, psi, hi)
    to_lo = (0.0 if lo <= h_start
             else atmospheric_path_length(h_start, psi, lo))
    return to_hi - to_lo


def _weather_paths(scenario: Scenario, h_low: float, h_high: float,
                   psi: float) -> WeatherConfig:
    if scenario.kind == "A2A":
        h = scenario.h_airplane
        in_rain = (scenario.rain_thickness > 0.0
                   and scenario.rain_base <= h
                   <= scenario.rain_base + scenario.rain_thickness)
        in_cloud = (scenario.cloud_thickness > 0.0
                    and scenario.cloud_base <= h
                    <= scenario.cloud_base + scenario.cloud_thickness)
        rain_path = scenario.link_distance if in_rain else 0.0
        cloud_path = scenario.link_distance if in_cloud else 0.0
    else:
        rain_path = _band_path_length(
            h_low, psi, scenario.rain_base,
            scenario.rain_base + scenario.rain_thickness, h_high)
        cloud_path = _band_path_length(
            h_low, psi, scenario.cloud_base,
            scenario.cloud_base + scenario.cloud_thickness, h_high)
    return WeatherConfig(
        rain_rate=scenario.rain_rate if scenario.rain_thickness > 0 else 0.0,
        rain_path=rain_path,
        cloud_density=scenario.cloud_density,
        cloud_path=cloud_path,
    )


def _weather_spectra(scenario: Scenario, weather: WeatherConfig,
                     grid: np.ndarray) -> tuple[np.ndarray, np.ndarray,
                                                Attenuation, Attenuation]:
    cloud_mid = scenario.cloud_base + 0.5 * scenario.cloud_thickness
    cloud_t = profile_at(min(cloud_mid, scenario.atmosphere_top),
                         scenario.ground_humidity,
                         scenario.water_scale_height).temperature
    rain_db = np.zeros_like(grid)
    cloud_db = np.zeros_like(grid)
    rain_any = Attenuation(0.0, False)
    cloud_any = Attenuation(0.0, False)
    if weather.rain_rate > 0.0 and weather.rain_path > 0.0:
        flags = False
        for i, f in enumerate(grid):
            att = rain_attenuation(float(f), weather.rain_rate,
                                   weather.rain_path)
            rain_db[i] = att.db
            flags = flags or att.extrapolated
        rain_any = Attenuation(float(np.max(rain_db)), flags)
    if weather.cloud_density > 0.0 and weather.cloud_path > 0.0:
        flags = False
        for i, f in enumerate(grid):
            att = cloud_attenuation(float(f), weather.cloud_density,
                                    weather.cloud_path, cloud_t)
            cloud_db[i] = att.db
            flags = flags or att.extrapolated
        cloud_any = Attenuation(float(np.max(cloud_db)), flags)
    return rain_db, cloud_db, rain_any, cloud_any


def _layer_spectra(
    catalog: LineCatalog,
    stack: LayerStack,
    indices,
    grid: np.ndarray,
    wing_cutoff: float,
    cache: SpectrumCache | None,
):
    spectra = {}
    for index in indices:
        state = stack[index].state
        if cache is None:
            spectra[index] = absorption_coefficient(
                catalog, state, grid, wing_cutoff)
            continue
        key = SpectrumCache.key(catalog.source_id, state, grid, wing_cutoff)
        kappa = cache.get_or_compute(
            key,
            lambda s=state: absorption_coefficient(
                catalog, s, grid, wing_cutoff).kappa,
        )
        spectra[index] = AbsorptionSpectrum(grid=grid, kappa=kappa, state=state)
    return spectra


def _path_quantities(scenario: Scenario, catalog: LineCatalog,
                     grid: np.ndarray, cache: SpectrumCache | None):
    """Geometry, transmittance, and sky view for the scenario on a grid."""
    if scenario.kind == "A2A":
        h = scenario.h_airplane
        state = profile_at(h, scenario.ground_humidity,
                           scenario.water_scale_height)
        spectrum = _layer_spectra(
            catalog, LayerStack((_pseudo_layer(h, state),), h + 1.0), [0],
            grid, scenario.wing_cutoff, cache)[0]
        r_as = scenario.link_distance
        psi = 0.0
        optical = spectrum.kappa * scenario.link_distance
        tau = np.exp(-optical)
        layer_temps = np.array([state.temperature])
        layer_taus = tau.reshape(1, -1)
        return r_as, psi, tau, layer_temps, layer_taus

    h_low, h_high = scenario.endpoints()
    ep = LinkEndpoints(h_low, h_high, scenario.central_angle)
    r_as = slant_range(ep)
    psi = elevation_angle(ep)
    if psi <= 0.0:
        raise ConfigError(
            f"geometry gives a non-positive elevation angle ({psi:.4f} rad); "
            f"reduce central_angle_deg", field="central_angle_deg")
    stack_top = min(scenario.atmosphere_top, h_high)
    stack = build_layers(0.0, stack_top, scenario.layer_resolution,
                         ground_humidity=scenario.ground_humidity,
                         water_scale_height=scenario.water_scale_height)
    segments = layer_path_segments(h_low, psi, stack)
    spectra = _layer_spectra(catalog, stack, [i for i, _ in segments], grid,
                             scenario.wing_cutoff, cache)
    tau = transmittance(grid, segments, spectra)

    temps = np.array([stack[i].state.temperature for i, _ in segments])
    layer_taus = np.vstack([
        np.exp(-spectra[i].kappa * length) for i, length in segments
    ])
    if scenario.rx_altitude >= h_high:
        temps = temps[::-1]
        layer_taus = layer_taus[::-1]
    return r_as, psi, tau, temps, layer_taus


def _pseudo_layer(h: float, state: AtmosphericState) -> Layer:
    """Single homogeneous layer standing in for a constant-altitude path."""
    return Layer(h, h + 1.0, state)


def resolve(scenario: Scenario, cache: SpectrumCache | None = None,
            catalog: LineCatalog | None = None,
            with_capacity: bool = True) -> ResolvedLink:
    """Compute the full link budget for a scenario.

    ``with_capacity=False`` skips the band-capacity integral, which needs
    its own fine frequency grid; comparisons that only want path loss
    (crossover searches, sweeps of other metrics) run much faster without it.
    """
    grid = make_grid(scenario.f_min, scenario.f_max, scenario.f_step)
    if catalog is None:
        catalog = load_scenario_catalog(scenario, grid)
    catalog_sha = catalog.source_id.rsplit("sha256:", 1)[-1]

    r_as, psi, tau, layer_temps, layer_taus = _path_quantities(
        scenario, catalog, grid, cache)

    h_low, h_high = scenario.endpoints()
    weather = _weather_paths(scenario, h_low, h_high, max(psi, 1e-9))
    rain_db, cloud_db, rain, cloud = _weather_spectra(scenario, weather, grid)

    g_tx = dish_gain(scenario.tx_antenna, grid)
    g_rx = dish_gain(scenario.rx_antenna, grid)
    path_loss = total_path_loss(grid, r_as, tau, g_tx, g_rx,
                                rain_db=rain_db, cloud_db=cloud_db)
    fspl_db = -10.0 * np.log10(spreading_loss(grid, r_as))

    sky = SkyPath(layer_temps, layer_taus)
    noise = total_noise_psd(grid, sky, scenario.transceiver)
    snr_values = compute_snr(grid, path_loss, noise, scenario.transceiver)

    band = (_band_budget(scenario, catalog, cache) if with_capacity
            else float("nan"))
    budget = LinkBudget(grid=grid, path_loss=path_loss, noise_psd=noise,
                        snr=snr_values, capacity=band)

    return ResolvedLink(
        scenario=scenario,
        grid=grid,
        catalog_sha=catalog_sha,
        r_as=r_as,
        psi=psi,
        tau=tau,
        fspl_db=fspl_db,
        rain=rain,
        cloud=cloud,
        rain_db=rain_db,
        cloud_db=cloud_db,
        weather=weather,
        path_loss=path_loss,
        sky=sky,
        noise_psd=noise,
        snr=snr_values,
        budget=budget,
    )


def _band_budget(scenario: Scenario, catalog: LineCatalog,
                 cache: SpectrumCache | None) -> float:
    """Capacity over the transceiver band around the center frequency."""
    tx = scenario.transceiver
    band = np.linspace(tx.center_frequency - tx.bandwidth / 2.0,
                       tx.center_frequency + tx.bandwidth / 2.0, 129)
    r_as, psi, tau, layer_temps, layer_taus = _path_quantities(
        scenario, catalog, band, cache)
    h_low, h_high = scenario.endpoints()
    weather = _weather_paths(scenario, h_low, h_high, max(psi, 1e-9))
    rain_db, cloud_db, _, _ = _weather_spectra(scenario, weather, band)
    g_tx = dish_gain(scenario.tx_antenna, band)
    g_rx = dish_gain(scenario.rx_antenna, band)
    path_loss = total_path_loss(band, r_as, tau, g_tx, g_rx,
                                rain_db=rain_db, cloud_db=cloud_db)
    noise = total_noise_psd(band, SkyPath(layer_temps, layer_taus), tx)
    snr_values = compute_snr(band, path_loss, noise, tx)
    return shannon_capacity(band, snr_values)


def describe(scenario: Scenario) -> str:
    """Human-readable dump of a resolved scenario."""
    lines = [f"scenario {scenario.kind}"]
    for field in dataclasses.fields(scenario):
        value = getattr(scenario, field.name)
        lines.append(f"  {field.name} = {value}")
    return "\n".join(lines)


def write_outputs(resolved: ResolvedLink, out_dir: Path) -> list[Path]:
    """Write path-loss, SNR, and capacity CSVs plus a summary. Returns paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    prov = resolved.provenance
    scenario = resolved.scenario

    paths = []
    path_loss_csv = out_dir / "path_loss.csv"
    write_path_loss_csv(path_loss_csv, resolved.grid, resolved.path_loss_db,
                        resolved.tau, resolved.fspl_db, resolved.rain_db,
                        resolved.cloud_db, provenance=prov)
    paths.append(path_loss_csv)

    snr_csv = out_dir / "snr.csv"
    resolved.budget.to_csv(snr_csv, provenance=prov)
    paths.append(snr_csv)

    capacity_csv = out_dir / "capacity.csv"
    tx = scenario.transceiver
    bpsk = modulation_threshold("BPSK", 1e-6)
    qam16 = modulation_threshold("16QAM", 1e-6)
    with capacity_csv.open("w", newline="") as fh:
        fh.write(f"# {prov}\n")
        fh.write("quantity,value\n")
        fh.write(f"capacity_bit_s,{resolved.budget.capacity:.10g}\n")
        fh.write(f"center_frequency_hz,{tx.center_frequency:.10g}\n")
        fh.write(f"bandwidth_hz,{tx.bandwidth:.10g}\n")
        fh.write(f"bpsk_snr_db_for_bep_1e-6,{10 * math.log10(bpsk):.10g}\n")
        fh.write(f"qam16_snr_db_for_bep_1e-6,{10 * math.log10(qam16):.10g}\n")
    paths.append(capacity_csv)

    summary = out_dir / "summary.txt"
    with summary.open("w") as fh:
        fh.write(f"{prov}\n\n{describe(scenario)}\n\n")
        fh.write(f"slant range: {resolved.r_as:.3f} m\n")
        fh.write(f"elevation angle: {math.degrees(resolved.psi):.4f} deg\n")
        fh.write(f"in-atmosphere rain path: {resolved.weather.rain_path:.1f} m, "
                 f"cloud path: {resolved.weather.cloud_path:.1f} m\n")
        if resolved.rain.extrapolated or resolved.cloud.extrapolated:
            fh.write("warning: weather attenuation extrapolated beyond its "
                     "table's formal frequency range\n")
        pl_db = resolved.path_loss_db
        fh.write(f"path loss over grid: min {pl_db.min():.2f} dB, "
                 f"max {pl_db.max():.2f} dB\n")
        fh.write(f"band capacity: {resolved.budget.capacity / 1e9:.3f} Gbit/s\n")
    paths.append(summary)
    return paths
