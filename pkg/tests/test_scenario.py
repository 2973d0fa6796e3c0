import dataclasses
import math
from pathlib import Path

import numpy as np
import pytest

from thzlink.errors import ConfigError
from thzlink.scenario import (
    _DEFAULTS,
    Scenario,
    SpectrumCache,
    build_scenario,
    describe,
    make_grid,
    parse_config,
    resolve,
    write_outputs,
)
from thzlink.sweep import crossover_altitude, run_sweep, sweep_points, write_sweep_csv

CONFIG_DIR = Path(__file__).parent.parent / "src" / "thzlink" / "data" / "configs"


def write_config(tmp_path, text):
    path = tmp_path / "scenario.cfg"
    path.write_text(text)
    return path


MINIMAL = """
kind = A2S
h_airplane_km = 11
h_satellite_km = 500
f_min_ghz = 295
f_max_ghz = 305
f_step_ghz = 1
"""


class TestConfigParsing:
    def test_minimal_config(self, tmp_path):
        scenario = parse_config(write_config(tmp_path, MINIMAL))
        assert scenario.kind == "A2S"
        assert scenario.h_airplane == 11_000.0
        assert scenario.transceiver.bandwidth == 5e9
        assert scenario.tx_antenna.diameter == 0.5

    def test_unknown_key_rejected_with_line(self, tmp_path):
        path = write_config(tmp_path, MINIMAL + "launch_speed = 7\n")
        with pytest.raises(ConfigError) as err:
            parse_config(path)
        assert "launch_speed" in str(err.value)

    def test_negative_bandwidth_names_field(self, tmp_path):
        path = write_config(tmp_path, MINIMAL + "bandwidth_ghz = -5\n")
        with pytest.raises(ConfigError) as err:
            parse_config(path)
        assert "bandwidth_ghz" in str(err.value)

    def test_bad_number_names_field_and_line(self, tmp_path):
        path = write_config(tmp_path, MINIMAL + "tx_power_mw = lots\n")
        with pytest.raises(ConfigError) as err:
            parse_config(path)
        assert "tx_power_mw" in str(err.value)

    def test_altitude_ordering_enforced(self, tmp_path):
        path = write_config(tmp_path, MINIMAL.replace(
            "h_satellite_km = 500", "h_satellite_km = 5"))
        with pytest.raises(ConfigError):
            parse_config(path)

    def test_elevation_and_central_angle_exclusive(self, tmp_path):
        path = write_config(
            tmp_path, MINIMAL + "central_angle_deg = 1\nelevation_deg = 45\n")
        with pytest.raises(ConfigError):
            parse_config(path)

    def test_elevation_resolves_central_angle(self, tmp_path):
        path = write_config(tmp_path, MINIMAL + "elevation_deg = 45\n")
        scenario = parse_config(path)
        assert scenario.central_angle > 0.0

    def test_duplicate_key_rejected(self, tmp_path):
        path = write_config(tmp_path, MINIMAL + "f_step_ghz = 2\n")
        with pytest.raises(ConfigError):
            parse_config(path)

    def test_bundled_configs_parse(self):
        for cfg in sorted(CONFIG_DIR.glob("*.cfg")):
            scenario = parse_config(cfg)
            assert scenario.kind in ("A2S", "E2A")


class TestMakeGrid:
    def test_inclusive_endpoints(self):
        grid = make_grid(100e9, 110e9, 1e9)
        assert len(grid) == 11
        assert grid[0] == 100e9
        assert grid[-1] == 110e9

    def test_non_divisible_step_stops_short(self):
        grid = make_grid(100e9, 100.55e9, 0.2e9)
        assert len(grid) == 3


@pytest.fixture(scope="module")
def resolved(default_scenario, spectrum_cache):
    scenario = dataclasses.replace(default_scenario, f_min=290e9,
                                   f_max=310e9, f_step=2e9)
    return resolve(scenario, spectrum_cache)


class TestResolve:
    def test_zenith_geometry(self, resolved):
        assert resolved.r_as == pytest.approx(489e3)
        assert resolved.psi == pytest.approx(math.pi / 2)

    def test_path_loss_envelope(self, resolved):
        # isotropic-equivalent loss (gains removed) stays inside the
        # 190-260 dB envelope expected for this geometry between line centers
        g_db = 10 * np.log10(
            2.470814e6 * (resolved.grid / 300e9) ** 2)  # 0.5 m dish
        g2_db = 10 * np.log10(
            9.883256e6 * (resolved.grid / 300e9) ** 2)  # 1.0 m dish
        iso = resolved.path_loss_db + g_db + g2_db
        assert np.all(iso > 190.0)
        assert np.all(iso < 260.0)

    def test_snr_and_capacity_are_finite(self, resolved):
        assert np.all(np.isfinite(resolved.snr))
        assert resolved.budget.capacity > 0.0

    def test_cache_and_no_cache_identical(self, default_scenario,
                                          spectrum_cache):
        scenario = dataclasses.replace(default_scenario, f_min=299e9,
                                       f_max=301e9, f_step=1e9)
        with_cache = resolve(scenario, spectrum_cache)
        without = resolve(scenario, None)
        np.testing.assert_array_equal(with_cache.path_loss, without.path_loss)
        np.testing.assert_array_equal(with_cache.noise_psd, without.noise_psd)

    def test_disk_cache_round_trip(self, default_scenario, tmp_path):
        scenario = dataclasses.replace(default_scenario, f_min=299e9,
                                       f_max=301e9, f_step=1e9)
        first = resolve(scenario, SpectrumCache(tmp_path / "cache"))
        second = resolve(scenario, SpectrumCache(tmp_path / "cache"))
        np.testing.assert_array_equal(first.path_loss, second.path_loss)
        assert list((tmp_path / "cache").glob("*.npy"))

    def test_reciprocity_endpoint_swap(self, default_scenario, spectrum_cache):
        a2s = dataclasses.replace(default_scenario, f_min=299e9, f_max=301e9,
                                  f_step=1e9)
        s2a = dataclasses.replace(
            a2s, kind="S2A", tx_antenna=a2s.rx_antenna,
            rx_antenna=a2s.tx_antenna)
        down = resolve(s2a, spectrum_cache)
        up = resolve(a2s, spectrum_cache)
        np.testing.assert_allclose(down.path_loss, up.path_loss, rtol=1e-12)

    def test_a2a_homogeneous_link(self, default_scenario, spectrum_cache):
        scenario = dataclasses.replace(default_scenario, kind="A2A",
                                       f_min=299e9, f_max=301e9, f_step=1e9)
        resolved = resolve(scenario, spectrum_cache)
        assert resolved.r_as == scenario.link_distance
        assert np.all(resolved.tau > 0.999)  # 100 m at 11 km is nearly clear

    def test_e2a_truncates_path_at_airplane(self, default_scenario,
                                            spectrum_cache):
        scenario = dataclasses.replace(default_scenario, kind="E2A",
                                       f_min=299e9, f_max=301e9, f_step=1e9)
        resolved = resolve(scenario, spectrum_cache)
        assert resolved.r_as == pytest.approx(11_000.0)
        assert resolved.sky.transmittances.shape[0] == 22  # 11 km / 500 m

    def test_rain_affects_only_low_links(self, default_scenario,
                                         spectrum_cache):
        rainy = dataclasses.replace(
            default_scenario, kind="E2A", rain_rate=5.0, rain_thickness=700.0,
            f_min=99e9, f_max=101e9, f_step=1e9)
        resolved = resolve(rainy, spectrum_cache)
        assert resolved.weather.rain_path == pytest.approx(700.0)
        assert resolved.rain.db > 0.5
        high = dataclasses.replace(rainy, kind="A2S")
        resolved_high = resolve(high, spectrum_cache)
        assert resolved_high.weather.rain_path == 0.0
        assert resolved_high.rain.db == 0.0

    def test_weather_factorizes(self, default_scenario, spectrum_cache):
        dry = dataclasses.replace(default_scenario, kind="E2A", f_min=99e9,
                                  f_max=101e9, f_step=1e9)
        wet = dataclasses.replace(dry, rain_rate=5.0, rain_thickness=700.0)
        pl_dry = resolve(dry, spectrum_cache).path_loss
        wet_resolved = resolve(wet, spectrum_cache)
        ratio = wet_resolved.path_loss / pl_dry
        np.testing.assert_allclose(
            ratio, 10.0 ** (wet_resolved.rain_db / 10.0), rtol=1e-12)


class TestOutputs:
    def test_write_outputs_files_and_determinism(self, default_scenario,
                                                 spectrum_cache, tmp_path):
        scenario = dataclasses.replace(default_scenario, f_min=295e9,
                                       f_max=305e9, f_step=1e9)
        resolved = resolve(scenario, spectrum_cache)
        first = write_outputs(resolved, tmp_path / "one")
        second = write_outputs(resolved, tmp_path / "two")
        names = [p.name for p in first]
        assert names == ["path_loss.csv", "snr.csv", "capacity.csv",
                         "summary.txt"]
        for a, b in zip(first, second):
            assert a.read_bytes() == b.read_bytes()
        header = (tmp_path / "one" / "path_loss.csv").read_text().splitlines()
        assert header[0].startswith("# thzlink ")
        assert "catalog_sha256=" in header[0]
        assert header[1] == "frequency_hz,path_loss_db,tau,fspl_db,rain_db,cloud_db"

    def test_describe_lists_fields(self, default_scenario):
        text = describe(default_scenario)
        assert "kind" in text and "A2S" in text


class TestSweep:
    def test_sweep_points_inclusive(self):
        assert sweep_points(0.0, 10.0, 5.0) == [0.0, 5.0, 10.0]

    def test_empty_range_rejected(self):
        with pytest.raises(ConfigError):
            sweep_points(10.0, 0.0, 5.0)
        with pytest.raises(ConfigError):
            sweep_points(0.0, 10.0, -1.0)

    def test_altitude_sweep_loss_decreases(self, default_scenario,
                                           spectrum_cache):
        base = dataclasses.replace(default_scenario, f_min=299e9,
                                   f_max=301e9, f_step=1e9)
        points, results = run_sweep(base, "altitude", 0.0, 10_000.0, 2_000.0,
                                    cache=spectrum_cache)
        assert points == [0.0, 2_000.0, 4_000.0, 6_000.0, 8_000.0, 10_000.0]
        losses = [float(r.path_loss_db[1]) for r in results]
        assert all(a > b for a, b in zip(losses, losses[1:]))

    def test_threaded_sweep_matches_serial(self, default_scenario, tmp_path):
        base = dataclasses.replace(default_scenario, kind="A2A", f_min=299e9,
                                   f_max=301e9, f_step=1e9)
        _, serial = run_sweep(base, "altitude", 0.0, 8_000.0, 2_000.0,
                              cache=SpectrumCache())
        _, threaded = run_sweep(base, "altitude", 0.0, 8_000.0, 2_000.0,
                                cache=SpectrumCache(), threads=3)
        for a, b in zip(serial, threaded):
            np.testing.assert_array_equal(a.path_loss, b.path_loss)
            np.testing.assert_array_equal(a.noise_psd, b.noise_psd)

    def test_axis_applicability(self, default_scenario):
        e2s = dataclasses.replace(default_scenario, kind="E2S")
        with pytest.raises(ConfigError):
            run_sweep(e2s, "altitude", 0.0, 1_000.0, 500.0)
        a2a = dataclasses.replace(default_scenario, kind="A2A")
        with pytest.raises(ConfigError):
            run_sweep(a2a, "elevation", 10.0, 90.0, 10.0)

    def test_sweep_csv_shape(self, default_scenario, spectrum_cache,
                             tmp_path):
        base = dataclasses.replace(default_scenario, f_min=299e9,
                                   f_max=301e9, f_step=1e9)
        points, results = run_sweep(base, "altitude", 0.0, 2_000.0, 2_000.0,
                                    cache=spectrum_cache)
        out = tmp_path / "sweep.csv"
        write_sweep_csv(out, "altitude", points, results, provenance="p")
        lines = out.read_text().splitlines()
        assert lines[0] == "# p"
        assert lines[1] == "axis_value,frequency_hz,metric,value"
        # 2 points x (3 freq x 2 metrics + 1 capacity row)
        assert len(lines) == 2 + 2 * 7
        assert lines[2].split(",")[2] == "capacity_bit_s"

    def test_frequency_sweep_single_resolution(self, default_scenario,
                                               spectrum_cache):
        points, results = run_sweep(default_scenario, "frequency",
                                    290.0, 310.0, 10.0, cache=spectrum_cache)
        assert len(results) == 1
        assert results[0].grid[0] == 290e9
        assert results[0].grid[-1] == 310e9

    def test_elevation_sweep_loss_increases_toward_horizon(
            self, default_scenario, spectrum_cache):
        base = dataclasses.replace(default_scenario, kind="E2S",
                                   f_min=299e9, f_max=301e9, f_step=1e9)
        points, results = run_sweep(base, "elevation", 20.0, 90.0, 35.0,
                                    cache=spectrum_cache)
        assert points == [20.0, 55.0, 90.0]
        losses = [float(r.path_loss_db[1]) for r in results]
        assert losses[0] > losses[1] > losses[2]


class TestCapacityMonotonicity:
    def test_capacity_grows_with_tx_power_and_shrinks_with_rain(
            self, default_scenario, spectrum_cache):
        base = dataclasses.replace(default_scenario, kind="E2A",
                                   f_min=299e9, f_max=301e9, f_step=1e9)
        louder = dataclasses.replace(
            base, transceiver=dataclasses.replace(base.transceiver,
                                                  tx_power=2e-3))
        rainy = dataclasses.replace(base, rain_rate=20.0,
                                    rain_thickness=700.0)
        reference = resolve(base, spectrum_cache).budget.capacity
        assert resolve(louder, spectrum_cache).budget.capacity > reference
        assert resolve(rainy, spectrum_cache).budget.capacity < reference


class TestCrossover:
    def test_crossover_exists_at_300ghz(self, default_scenario,
                                        spectrum_cache):
        altitudes = np.arange(1_000.0, 499_000.0, 16_000.0)
        h = crossover_altitude(default_scenario, 300e9, altitudes,
                               spectrum_cache)
        assert h is not None
        assert 1_000.0 < h < 499_000.0


class TestGeoSnrTrends:
    def test_snr_rises_with_altitude_and_frequency(self, default_scenario,
                                                   spectrum_cache):
        # fixed apertures gain as f^2, more than the spreading loss grows,
        # and the absorption column thins with altitude: over a
        # geostationary link the SNR surface rises along both axes
        def geo_snr(h_airplane, f_center):
            scenario = dataclasses.replace(
                default_scenario, h_satellite=36_000e3,
                h_airplane=h_airplane, f_min=f_center - 1e9,
                f_max=f_center + 1e9, f_step=1e9)
            resolved = resolve(scenario, spectrum_cache, with_capacity=False)
            return float(resolved.snr[1])

        assert geo_snr(11_000.0, 300e9) > geo_snr(2_000.0, 300e9)
        assert geo_snr(11_000.0, 660e9) > geo_snr(11_000.0, 300e9)
