import numpy as np
import pytest

from gammafts.dataio import (SCHEMAS, DatasetSchema, MinMaxScaler, SplitSpec,
                             apply_scaler, drop_missing, fit_scaler,
                             invert_scaler, load_csv, make_windows, resample,
                             save_csv)
from gammafts.errors import (ArgumentError, ParseError, SchemaError,
                             StateError)

from conftest import make_series


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestLoadCsv:
    def test_hand_written_csv(self, tmp_path):
        path = write(tmp_path, "date,a,b\n"
                               "2020-01-01 00:00:00,1.5,2\n"
                               "2020-01-01 00:10:00,2.5,3\n"
                               "2020-01-01 00:20:00,3.5,4\n")
        schema = DatasetSchema("t", ("date",), "%Y-%m-%d %H:%M:%S", target="b")
        s = load_csv(path, schema)
        assert s.names == ("a", "b")
        assert len(s) == 3
        np.testing.assert_array_equal(s.column("a"), [1.5, 2.5, 3.5])

    def test_empty_file_with_header(self, tmp_path):
        path = write(tmp_path, "timestamp,x,y\n")
        s = load_csv(path, "generic", target="y")
        assert len(s) == 0
        assert s.names == ("x", "y")

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_csv(tmp_path / "nope.csv", "generic", target="x")

    def test_missing_column(self, tmp_path):
        path = write(tmp_path, "date,a\n2020-01-01 00:00:00,1\n")
        schema = DatasetSchema("t", ("date",), "%Y-%m-%d %H:%M:%S",
                               target="b", columns=("a", "b"))
        with pytest.raises(SchemaError, match="'b'"):
            load_csv(path, schema)

    def test_unparseable_cell_non_nullable(self, tmp_path):
        path = write(tmp_path, "timestamp,x\n"
                               "2020-01-01,1\n"
                               "2020-01-02,oops\n")
        schema = DatasetSchema("t", ("timestamp",), "iso", target="x",
                               nullable=False)
        with pytest.raises(ParseError, match="line 3"):
            load_csv(path, schema)

    def test_nullable_markers_become_nan(self, tmp_path):
        path = write(tmp_path, "timestamp,x,y\n"
                               "2020-01-01,1,5\n"
                               "2020-01-02,?,6\n"
                               "2020-01-03,,7\n")
        s = load_csv(path, "generic", target="y")
        assert np.isnan(s.column("x")[1]) and np.isnan(s.column("x")[2])

    def test_rows_sorted_by_timestamp(self, tmp_path):
        path = write(tmp_path, "timestamp,x\n"
                               "2020-01-03,3\n"
                               "2020-01-01,1\n"
                               "2020-01-02,2\n")
        s = load_csv(path, "generic", target="x")
        np.testing.assert_array_equal(s.column("x"), [1.0, 2.0, 3.0])

    def test_two_column_timestamp_hpc_layout(self, tmp_path):
        path = write(tmp_path,
                     "Date;Time;Global_active_power;Global_reactive_power;"
                     "Voltage;Global_intensity;Sub_metering_1;"
                     "Sub_metering_2;Sub_metering_3\n"
                     "16/12/2006;17:24:00;4.216;0.418;234.840;18.400;0.000;1.000;17.000\n"
                     "16/12/2006;17:25:00;5.360;0.436;233.630;23.000;0.000;1.000;16.000\n"
                     "16/12/2006;17:26:00;?;?;?;?;?;?;?\n")
        s = load_csv(path, "hpc")
        assert len(s) == 3
        assert s.target_name == "Global_active_power"
        assert np.isnan(s.values[2]).all()

    def test_round_trip_bit_exact(self, tmp_path, rng):
        s = make_series(rng.normal(size=(20, 3)) * 1e3)
        path = tmp_path / "out.csv"
        save_csv(s, path)
        back = load_csv(path, "generic", target=s.target_name)
        np.testing.assert_array_equal(back.values, s.values)
        np.testing.assert_array_equal(back.timestamps, s.timestamps)


class TestDropMissing:
    def test_counts_rows_with_sentinels(self, tmp_path):
        path = write(tmp_path, "timestamp,a,b\n"
                               "2020-01-01,1,1\n"
                               "2020-01-02,?,1\n"
                               "2020-01-03,2,2\n"
                               "2020-01-04,3,?\n"
                               "2020-01-05,4,4\n")
        s = load_csv(path, "generic", target="b")
        cleaned, removed = drop_missing(s)
        assert removed == 2
        assert len(cleaned) == 3
        assert not cleaned.has_missing

    def test_clean_series_untouched(self):
        s = make_series([[1.0, 2.0], [3.0, 4.0]])
        cleaned, removed = drop_missing(s)
        assert removed == 0
        assert cleaned is s

    def test_idempotent(self):
        vals = np.array([[1.0, np.nan], [2.0, 3.0], [np.nan, 4.0]])
        s = make_series(vals)
        once, n1 = drop_missing(s)
        twice, n2 = drop_missing(once)
        assert (n1, n2) == (2, 0)
        np.testing.assert_array_equal(once.values, twice.values)


class TestResample:
    def test_constant_minute_rows_to_half_hours(self):
        s = make_series(np.full((60, 2), 7.0), step_minutes=1)
        r = resample(s, "30min")
        assert len(r) == 2
        assert (r.values == 7.0).all()

    def test_hand_mean_per_bin(self):
        s = make_series(np.arange(1.0, 7.0), step_minutes=1)
        r = resample(s, "2min")
        np.testing.assert_allclose(r.values[:, 0], [1.5, 3.5, 5.5])

    def test_finer_than_native_rejected(self):
        s = make_series(np.arange(10.0), step_minutes=10)
        with pytest.raises(ArgumentError):
            resample(s, "1min")

    def test_global_mean_preserved_on_full_bins(self, rng):
        s = make_series(rng.uniform(0, 50, size=(120, 3)), step_minutes=1)
        r = resample(s, "10min")
        np.testing.assert_allclose(r.values.mean(axis=0), s.values.mean(axis=0),
                                   rtol=1e-9)

    def test_bins_aligned_and_width_bounded(self, rng):
        # irregular gaps: bins with no rows must be omitted
        ts = np.datetime64("2020-01-01", "ns") + np.cumsum(
            rng.integers(1, 40, size=50)) * np.timedelta64(1, "m")
        s = make_series(rng.normal(size=(50, 1)))
        s = type(s)(ts, s.names, s.values, s.target_name)
        r = resample(s, "30min")
        ns = r.timestamps.astype("int64")
        assert (ns % (30 * 60 * 10 ** 9) == 0).all()
        assert len(r) <= len(s)


class TestScaler:
    def test_midpoint(self):
        s = make_series(np.array([[2.0], [6.0]]))
        sc = fit_scaler(s)
        assert sc.transform(np.array([[4.0]]), s.names)[0, 0] == 0.5

    def test_constant_variable_maps_to_zero(self):
        s = make_series(np.array([[3.0], [3.0], [3.0]]))
        sc = fit_scaler(s)
        out = apply_scaler(sc, s)
        assert (out.values == 0.0).all()
        back = invert_scaler(sc, out)
        np.testing.assert_array_equal(back.values, s.values)

    def test_direct_formula_and_roundtrip(self):
        s = make_series(np.array([[0.0], [5.0], [10.0]]))
        sc = fit_scaler(s)
        scaled = apply_scaler(sc, s)
        np.testing.assert_allclose(scaled.values[:, 0], [0.0, 0.5, 1.0])
        back = invert_scaler(sc, scaled)
        np.testing.assert_allclose(back.values, s.values, rtol=1e-9)

    def test_roundtrip_random(self, rng):
        s = make_series(rng.normal(scale=100, size=(40, 4)))
        sc = fit_scaler(s)
        back = invert_scaler(sc, apply_scaler(sc, s))
        np.testing.assert_allclose(back.values, s.values, rtol=1e-9, atol=1e-9)

    def test_unfitted_rejected(self):
        with pytest.raises(StateError):
            MinMaxScaler().transform(np.zeros((2, 1)), ("x",))

    def test_name_mismatch_rejected(self):
        s = make_series(np.zeros((3, 2)) + [[1.0, 2.0]])
        sc = fit_scaler(s)
        with pytest.raises(SchemaError):
            sc.transform(s.values, ("other", "names"))

    def test_fit_empty_rejected(self):
        s = make_series(np.empty((0, 1)))
        with pytest.raises(ArgumentError):
            fit_scaler(s)


class TestMakeWindows:
    def test_30_windows_of_4(self, rng):
        s = make_series(rng.normal(size=(120, 2)))
        windows = make_windows(s, SplitSpec(0.75, 30))
        assert len(windows) == 30
        for train, test in windows:
            assert len(train) == 3 and len(test) == 1

    def test_single_window_is_global_split(self, rng):
        s = make_series(rng.normal(size=(100, 2)))
        ((train, test),) = make_windows(s, SplitSpec(0.75, 1))
        assert len(train) == 75 and len(test) == 25

    def test_no_peeking(self, rng):
        s = make_series(rng.normal(size=(173, 2)))
        for train, test in make_windows(s, SplitSpec(0.75, 9)):
            assert train.timestamps.max() < test.timestamps.min()

    def test_disjoint_windows_reconstruct_series(self, rng):
        s = make_series(rng.normal(size=(157, 2)))
        windows = make_windows(s, SplitSpec(0.6, 7))
        parts = [w.values for pair in windows for w in pair]
        np.testing.assert_array_equal(np.vstack(parts), s.values)
        sizes = [len(a) + len(b) for a, b in windows]
        assert max(sizes) - min(sizes) <= 1

    def test_too_short_rejected(self, rng):
        s = make_series(rng.normal(size=(100, 1)))
        with pytest.raises(ArgumentError):
            make_windows(s, SplitSpec(0.75, 30))

    def test_sliding_windows_overlap_and_tile_tests(self, rng):
        s = make_series(rng.normal(size=(240, 1)))
        windows = make_windows(s, SplitSpec(0.75, 10, mode="sliding"))
        assert len(windows) == 10
        lengths = {len(a) + len(b) for a, b in windows}
        assert len(lengths) == 1
        # consecutive test blocks are contiguous
        for (_, t1), (_, t2) in zip(windows, windows[1:]):
            assert t2.timestamps[0] > t1.timestamps[-1]
        for train, test in windows:
            assert train.timestamps.max() < test.timestamps.min()


class TestBuiltinSchemas:
    def test_registry_contents(self):
        assert {"aec", "hpc", "shwi", "generic"} <= set(SCHEMAS)
        assert SCHEMAS["aec"].target == "Appliances"
        assert len(SCHEMAS["aec"].columns) == 25
        assert SCHEMAS["hpc"].delimiter == ";"
        assert len(SCHEMAS["hpc"].columns) == 7
