"""Loading, cleaning, resampling, scaling, and splitting of multivariate series.

The three energy datasets ship in different layouts (delimiter, timestamp
format, missing-value markers), so each one gets a declarative
:class:`DatasetSchema`; ``SCHEMAS`` holds the built-in descriptors plus a
``generic`` schema matching the CSV format this package itself writes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
import pandas as pd

from .errors import ArgumentError, ParseError, SchemaError, StateError

__all__ = [
    "MultivariateSeries",
    "DatasetSchema",
    "SCHEMAS",
    "get_schema",
    "load_csv",
    "save_csv",
    "drop_missing",
    "resample",
    "MinMaxScaler",
    "fit_scaler",
    "apply_scaler",
    "invert_scaler",
    "SplitSpec",
    "make_windows",
]


@dataclass(frozen=True)
class MultivariateSeries:
    """A time-indexed matrix of named real-valued variables.

    ``timestamps`` are strictly increasing ``datetime64[ns]``; ``values`` is a
    ``(T, M)`` float64 matrix whose columns follow ``names``. Instances are
    treated as immutable; slicing returns views, never copies.
    """

    timestamps: np.ndarray
    names: tuple[str, ...]
    values: np.ndarray
    target_name: str

    def __post_init__(self):
        ts = np.asarray(self.timestamps, dtype="datetime64[ns]")
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 2:
            raise ArgumentError("values must be a 2-D matrix")
        if len(ts) != vals.shape[0]:
            raise ArgumentError(
                f"timestamp count {len(ts)} != row count {vals.shape[0]}"
            )
        names = tuple(self.names)
        if len(names) != vals.shape[1]:
            raise ArgumentError(
                f"{len(names)} names for {vals.shape[1]} value columns"
            )
        if len(set(names)) != len(names):
            raise SchemaError("duplicate variable names")
        if self.target_name not in names:
            raise SchemaError(f"target {self.target_name!r} not among variables")
        if len(ts) > 1 and not np.all(ts[1:] > ts[:-1]):
            raise SchemaError("timestamps must be strictly increasing")
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "names", names)

    def __len__(self) -> int:
        return self.values.shape[0]

    @property
    def n_variables(self) -> int:
        return self.values.shape[1]

    def column(self, name: str) -> np.ndarray:
        try:
            return self.values[:, self.names.index(name)]
        except ValueError:
            raise SchemaError(f"unknown variable {name!r}") from None

    @property
    def target_values(self) -> np.ndarray:
        return self.column(self.target_name)

    def matrix_for(self, names: tuple[str, ...] | list[str]) -> np.ndarray:
        idx = [self.names.index(n) if n in self.names else -1 for n in names]
        missing = [n for n, i in zip(names, idx) if i < 0]
        if missing:
            raise SchemaError(f"unknown variables {missing}")
        return self.values[:, idx]

    @property
    def has_missing(self) -> bool:
        return bool(np.isnan(self.values).any())

    def slice(self, start: int, stop: int) -> "MultivariateSeries":
        return MultivariateSeries(
            self.timestamps[start:stop], self.names, self.values[start:stop],
            self.target_name,
        )

    def with_target(self, target_name: str) -> "MultivariateSeries":
        return replace(self, target_name=target_name)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.values, index=pd.DatetimeIndex(self.timestamps),
                            columns=list(self.names))


@dataclass(frozen=True)
class DatasetSchema:
    """Declarative description of one CSV layout.

    ``timestamp_columns`` lists one or two source columns; two columns are
    joined with a space before parsing (date + time files). ``timestamp_format``
    is a ``strptime`` pattern, ``"iso"`` for inference, or ``"unix"`` for epoch
    seconds. ``columns`` pins the numeric variables to load; ``None`` loads
    every non-timestamp column in file order. ``nullable`` marks the columns
    whose unparseable cells become missing instead of raising; ``True`` means
    all of them.
    """

    name: str
    timestamp_columns: tuple[str, ...]
    timestamp_format: str
    target: str | None
    columns: tuple[str, ...] | None = None
    nullable: frozenset[str] | bool = False
    delimiter: str = ","
    missing_markers: tuple[str, ...] = ("", "?")

    def is_nullable(self, column: str) -> bool:
        if isinstance(self.nullable, bool):
            return self.nullable
        return column in self.nullable


_AEC_COLUMNS = (
    "Appliances", "lights",
    "RH_1", "T2", "RH_2", "T3", "RH_3", "T4", "RH_4", "T5", "RH_5",
    "T6", "RH_6", "T7", "RH_7", "T8", "RH_8", "T9", "RH_9",
    "T_out", "Press_mm_hg", "RH_out", "Windspeed", "Visibility", "Tdewpoint",
)

_HPC_COLUMNS = (
    "Global_active_power", "Global_reactive_power", "Voltage",
    "Global_intensity", "Sub_metering_1", "Sub_metering_2", "Sub_metering_3",
)

_SHWI_COLUMNS = (
    "use [kW]", "gen [kW]", "Dishwasher [kW]", "Furnace 1 [kW]",
    "Furnace 2 [kW]", "Home office [kW]", "Fridge [kW]", "Wine cellar [kW]",
    "Garage door [kW]", "Kitchen 12 [kW]", "Kitchen 14 [kW]",
    "Kitchen 38 [kW]", "Barn [kW]", "Well [kW]", "Microwave [kW]",
    "Living room [kW]", "Solar [kW]",
    "temperature", "humidity", "visibility", "apparentTemperature",
    "pressure", "windSpeed", "windBearing", "dewPoint", "precipProbability",
)

SCHEMAS: dict[str, DatasetSchema] = {
    "aec": DatasetSchema(
        name="aec",
        timestamp_columns=("date",),
        timestamp_format="%Y-%m-%d %H:%M:%S",
        target="Appliances",
        columns=_AEC_COLUMNS,
    ),
    "hpc": DatasetSchema(
        name="hpc",
        timestamp_columns=("Date", "Time"),
        timestamp_format="%d/%m/%Y %H:%M:%S",
        target="Global_active_power",
        columns=_HPC_COLUMNS,
        nullable=True,
        delimiter=";",
    ),
    "shwi": DatasetSchema(
        name="shwi",
        timestamp_columns=("time",),
        timestamp_format="unix",
        target="use [kW]",
        columns=_SHWI_COLUMNS,
        nullable=True,
    ),
    # Format written by save_csv / the preprocess subcommand.
    "generic": DatasetSchema(
        name="generic",
        timestamp_columns=("timestamp",),
        timestamp_format="iso",
        target=None,
        columns=None,
        nullable=True,
    ),
}


def get_schema(schema: str | DatasetSchema) -> DatasetSchema:
    if isinstance(schema, DatasetSchema):
        return schema
    try:
        return SCHEMAS[schema]
    except KeyError:
        raise SchemaError(
            f"unknown schema {schema!r}; available: {sorted(SCHEMAS)}"
        ) from None


def _parse_timestamps(df: pd.DataFrame, schema: DatasetSchema) -> np.ndarray:
    raw = df[schema.timestamp_columns[0]]
    for col in schema.timestamp_columns[1:]:
        raw = raw.str.cat(df[col], sep=" ")
    if schema.timestamp_format == "unix":
        secs = pd.to_numeric(raw, errors="coerce")
        parsed = pd.to_datetime(secs, unit="s", errors="coerce")
    elif schema.timestamp_format == "iso":
        parsed = pd.to_datetime(raw, errors="coerce")
    else:
        parsed = pd.to_datetime(raw, format=schema.timestamp_format,
                                errors="coerce")
    bad = parsed.isna()
    if bad.any():
        i = int(np.flatnonzero(bad.to_numpy())[0])
        raise ParseError(f"unparseable timestamp {raw.iloc[i]!r}", line=i + 2)
    return parsed.to_numpy(dtype="datetime64[ns]")


def _parse_numeric(df: pd.DataFrame, col: str, schema: DatasetSchema) -> np.ndarray:
    raw = df[col]
    # to_numeric only locates unparseable cells; the actual conversion goes
    # through numpy's correctly-rounded str -> float64 cast so that values
    # round-trip bit-for-bit.
    bad = pd.to_numeric(raw, errors="coerce").isna().to_numpy()
    if bad.any() and not schema.is_nullable(col):
        i = int(np.flatnonzero(bad)[0])
        cell = raw.iloc[i]
        kind = "missing value" if cell in schema.missing_markers else \
            f"unparseable value {cell!r}"
        raise ParseError(f"{kind} in non-nullable column {col!r}", line=i + 2)
    out = np.full(len(raw), np.nan)
    good = ~bad
    if good.any():
        out[good] = raw.to_numpy()[good].astype(np.float64)
    return out


def load_csv(path, schema: str | DatasetSchema,
             target: str | None = None) -> MultivariateSeries:
    """Load a CSV file into a :class:`MultivariateSeries`.

    Rows are re-sorted by timestamp. Cells equal to a missing marker, or
    unparseable cells in nullable columns, load as NaN and are left for
    :func:`drop_missing`; anywhere else they raise :class:`ParseError` with
    the offending line. ``target`` overrides the schema's target variable
    (required for schemas that do not fix one).
    """
    schema = get_schema(schema)
    df = pd.read_csv(path, sep=schema.delimiter, dtype=str,
                     keep_default_na=False, encoding="utf-8")

    for col in schema.timestamp_columns:
        if col not in df.columns:
            raise SchemaError(f"missing timestamp column {col!r}")
    names = schema.columns
    if names is None:
        names = tuple(c for c in df.columns if c not in schema.timestamp_columns)
    for col in names:
        if col not in df.columns:
            raise SchemaError(f"missing column {col!r}")

    target = target or schema.target
    if target is None:
        raise SchemaError("schema fixes no target variable; pass target=")
    if target not in names:
        raise SchemaError(f"target {target!r} not among columns")

    if len(df) == 0:
        return MultivariateSeries(
            np.empty(0, dtype="datetime64[ns]"), names,
            np.empty((0, len(names))), target,
        )

    timestamps = _parse_timestamps(df, schema)
    values = np.column_stack([_parse_numeric(df, c, schema) for c in names])

    order = np.argsort(timestamps, kind="stable")
    if not np.array_equal(order, np.arange(len(order))):
        timestamps = timestamps[order]
        values = values[order]
    return MultivariateSeries(timestamps, names, values, target)


def save_csv(series: MultivariateSeries, path) -> None:
    """Write a series in the ``generic`` layout (ISO timestamps, NaN as empty).

    Floats are written with shortest round-trip repr, so load_csv(save_csv(s))
    reproduces values bit-for-bit.
    """
    ts = series.timestamps
    whole_seconds = np.all(ts.astype("int64") % 1_000_000_000 == 0)
    stamps = np.datetime_as_string(ts, unit="s" if whole_seconds else "ns")
    frame = pd.DataFrame({"timestamp": stamps})
    for j, name in enumerate(series.names):
        frame[name] = series.values[:, j]
    frame.to_csv(path, index=False, na_rep="")


def drop_missing(series: MultivariateSeries) -> tuple[MultivariateSeries, int]:
    """Remove every row containing a missing entry; returns (cleaned, removed)."""
    mask = np.isnan(series.values).any(axis=1)
    removed = int(mask.sum())
    if removed == 0:
        return series, 0
    keep = ~mask
    return MultivariateSeries(
        series.timestamps[keep], series.names, series.values[keep],
        series.target_name,
    ), removed


def _as_nanos(resolution) -> int:
    delta = pd.Timedelta(resolution)
    nanos = delta.value
    if nanos <= 0:
        raise ArgumentError(f"resolution must be positive, got {resolution!r}")
    return nanos


def resample(series: MultivariateSeries, resolution) -> MultivariateSeries:
    """Mean-aggregate rows into aligned bins of width ``resolution``.

    Bins are aligned to the epoch, labelled by their start instant, and
    omitted when empty. ``resolution`` accepts anything ``pandas.Timedelta``
    does (e.g. ``"30min"``).
    """
    res_ns = _as_nanos(resolution)
    if len(series) == 0:
        return series
    ts_ns = series.timestamps.astype("int64")
    if len(series) > 1:
        native = int(np.diff(ts_ns).min())
        if res_ns < native:
            raise ArgumentError(
                f"resolution {resolution!r} finer than native interval "
                f"{pd.Timedelta(native, unit='ns')}"
            )
    bins = ts_ns // res_ns
    starts = np.r_[0, np.flatnonzero(np.diff(bins)) + 1]
    counts = np.diff(np.r_[starts, len(bins)]).astype(np.float64)
    sums = np.add.reduceat(series.values, starts, axis=0)
    means = sums / counts[:, None]
    new_ts = (bins[starts] * res_ns).astype("datetime64[ns]")
    return MultivariateSeries(new_ts, series.names, means, series.target_name)


class MinMaxScaler:
    """Per-variable min-max scaling to [0, 1]; constant variables map to 0."""

    def __init__(self):
        self.names: tuple[str, ...] | None = None
        self.mins: np.ndarray | None = None
        self.maxs: np.ndarray | None = None

    @property
    def fitted(self) -> bool:
        return self.names is not None

    def fit(self, values: np.ndarray, names: tuple[str, ...]) -> "MinMaxScaler":
        values = np.asarray(values, dtype=np.float64)
        if values.size == 0:
            raise ArgumentError("cannot fit scaler on an empty series")
        self.names = tuple(names)
        self.mins = values.min(axis=0)
        self.maxs = values.max(axis=0)
        return self

    def _check(self, names: tuple[str, ...]):
        if not self.fitted:
            raise StateError("scaler used before fit")
        if tuple(names) != self.names:
            raise SchemaError(
                f"scaler fitted on {self.names}, applied to {tuple(names)}"
            )

    def transform(self, values: np.ndarray, names: tuple[str, ...]) -> np.ndarray:
        self._check(names)
        span = self.maxs - self.mins
        safe = np.where(span == 0, 1.0, span)
        out = (values - self.mins) / safe
        return np.where(span == 0, 0.0, out)

    def inverse(self, values: np.ndarray, names: tuple[str, ...]) -> np.ndarray:
        self._check(names)
        span = self.maxs - self.mins
        return values * span + self.mins

    def to_dict(self) -> dict:
        return {"names": list(self.names), "mins": self.mins.tolist(),
                "maxs": self.maxs.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "MinMaxScaler":
        s = cls()
        s.names = tuple(d["names"])
        s.mins = np.asarray(d["mins"], dtype=np.float64)
        s.maxs = np.asarray(d["maxs"], dtype=np.float64)
        return s


def fit_scaler(series: MultivariateSeries,
               variables: tuple[str, ...] | list[str] | None = None) -> MinMaxScaler:
    names = tuple(variables) if variables is not None else series.names
    return MinMaxScaler().fit(series.matrix_for(names), names)


def apply_scaler(scaler: MinMaxScaler, series: MultivariateSeries) -> MultivariateSeries:
    vals = scaler.transform(series.values, series.names)
    return MultivariateSeries(series.timestamps, series.names, vals,
                              series.target_name)


def invert_scaler(scaler: MinMaxScaler, series: MultivariateSeries) -> MultivariateSeries:
    vals = scaler.inverse(series.values, series.names)
    return MultivariateSeries(series.timestamps, series.names, vals,
                              series.target_name)


@dataclass(frozen=True)
class SplitSpec:
    """Windowed train/test split layout.

    ``disjoint`` partitions the series into ``window_count`` contiguous
    blocks, each split train/test at ``train_fraction``. ``sliding`` keeps a
    fixed-length window whose start advances by the test-block size, so the
    test blocks tile the series tail while training regions overlap.
    """

    train_fraction: float = 0.75
    window_count: int = 30
    mode: str = "disjoint"

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ArgumentError("train_fraction must be in (0, 1)")
        if self.window_count < 1:
            raise ArgumentError("window_count must be >= 1")
        if self.mode not in ("disjoint", "sliding"):
            raise ArgumentError(f"unknown window mode {self.mode!r}")


def _split_window(series: MultivariateSeries, start: int, stop: int,
                  train_fraction: float):
    n = stop - start
    n_train = math.ceil(train_fraction * n)
    return (series.slice(start, start + n_train),
            series.slice(start + n_train, stop))


def make_windows(series: MultivariateSeries,
                 spec: SplitSpec) -> list[tuple[MultivariateSeries, MultivariateSeries]]:
    """Split a series into per-window (train, test) pairs per ``spec``."""
    t = len(series)
    # Every window needs >= 4 rows (>= 1 test row at 75/25).
    if t < spec.window_count * 4:
        raise ArgumentError(
            f"series of {t} rows too short for {spec.window_count} windows"
        )
    if spec.mode == "disjoint":
        bounds = np.linspace(0, t, spec.window_count + 1).astype(int)
        return [
            _split_window(series, int(a), int(b), spec.train_fraction)
            for a, b in zip(bounds[:-1], bounds[1:])
        ]

    # Sliding: window length L with train m = ceil(f*L) and step s = L - m,
    # chosen as the largest L whose last window still fits.
    wc = spec.window_count
    f = spec.train_fraction
    length = int(t / (f + wc * (1.0 - f))) + 2
    while length > 0:
        m = math.ceil(f * length)
        s = length - m
        if s >= 1 and (wc - 1) * s + length <= t:
            break
        length -= 1
    if length <= 0:
        raise ArgumentError("series too short for sliding windows")
    return [
        _split_window(series, i * s, i * s + length, f)
        for i in range(wc)
    ]
