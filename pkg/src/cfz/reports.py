"""Experiment records, geometric-rate fits and JSON/CSV serialization.

JSON reports carry ``"schema": 1``.  Floats are written with Python's
shortest round-trip repr, so a report re-parses to bit-identical values;
complex numbers are stored as ``[re, im]`` pairs.
"""

import csv
import json
import logging
import platform
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import NamedTuple

import numpy as np
import scipy

from . import remez
from .blaschke import AsymZolotarev, BlaschkeDatum
from .cf_schur import as_sequence, solve_cf

log = logging.getLogger(__name__)

SCHEMA = 1


class InsufficientDataError(ValueError):
    pass


class GeometricFit(NamedTuple):
    ratio: float
    intercept: float
    residual: float


def fit_geometric(series, floor=0.0, min_points=5):
    """Least-squares line through (n, log gap); ratio = exp(slope).

    ``series`` is a sequence of (n, gap) pairs.  Gaps at or below
    ``floor`` (zero by default) are dropped with a warning; that is how
    rounding-level gaps at large n are kept out of the fit.  ``residual``
    is the RMS of the log-space residuals.
    """
    arr = np.asarray(series, dtype=float).reshape(-1, 2)
    keep = arr[:, 1] > floor
    if not np.all(keep):
        warnings.warn(f"fit_geometric: dropped {int(np.sum(~keep))} gaps <= {floor:g}", stacklevel=2)
    arr = arr[keep]
    if arr.shape[0] < min_points:
        raise InsufficientDataError(f"need {min_points} positive gaps, have {arr.shape[0]}")
    n, y = arr[:, 0], np.log(arr[:, 1])
    slope, intercept = np.polyfit(n, y, 1)
    resid = y - (slope * n + intercept)
    return GeometricFit(float(np.exp(slope)), float(intercept), float(np.sqrt(np.mean(resid**2))))


def _enc(x):
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.ndarray):
        return [_enc(v) for v in x.tolist()]
    if isinstance(x, (list, tuple)):
        return [_enc(v) for v in x]
    if isinstance(x, dict):
        return {k: _enc(v) for k, v in x.items()}
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


def decode_complex(v):
    return [complex(a, b) for a, b in v]


@dataclass
class RunConfig:
    subcommand: str
    taus: list = None
    mus: list = None
    n: int = None
    n_range: list = None
    l: int = None
    tol: float = 1e-10
    polish: int = 2
    seed: int = 0
    random: int = None
    jobs: int = 1
    points: int = None
    out: str = None
    csv: str = None

    def ns(self):
        if self.n_range is not None:
            start, stop, step = self.n_range
            return list(range(start, stop, step))
        return [self.n] if self.n is not None else []

    def to_dict(self):
        d = asdict(self)
        for key in ("taus", "mus"):
            if d[key] is not None:
                d[key] = _enc([complex(v) for v in d[key]])
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        for key in ("taus", "mus"):
            if d.get(key) is not None:
                d[key] = decode_complex(d[key])
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})


@dataclass
class Record:
    n: int
    E_n: float
    gamma_abs: float
    E_gap: float
    sup_gap: float
    iterations: int
    wall_time: float

    CSV_FIELDS = ("n", "E_n", "gamma_abs", "E_gap", "sup_gap", "iterations")


@dataclass
class ExperimentReport:
    config: RunConfig
    result: dict = field(default_factory=dict)
    records: list = field(default_factory=list)
    fits: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "schema": SCHEMA,
            "config": self.config.to_dict(),
            "result": _enc(self.result),
            "records": [asdict(r) for r in self.records],
            "fits": {k: dict(v._asdict()) if isinstance(v, GeometricFit) else v for k, v in self.fits.items()},
            "metadata": self.metadata,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, allow_nan=False)

    @classmethod
    def from_dict(cls, d):
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        fits = {k: GeometricFit(**v) if isinstance(v, dict) and set(v) == set(GeometricFit._fields) else v
                for k, v in d.get("fits", {}).items()}
        return cls(
            RunConfig.from_dict(d["config"]),
            d.get("result", {}),
            [Record(**r) for r in d.get("records", [])],
            fits,
            d.get("metadata", {}),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def metadata(config):
    from . import __version__

    return {
        "cfz": __version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "python": platform.python_version(),
        "seed": config.seed,
    }


def write_csv(path, header, rows):
    """Comma-separated, header row, LF endings, floats in repr form."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])


def compare_one(taus, n, tol=1e-10, polish=2):
    """Exact vs asymptotic polynomial at one degree, as a :class:`Record`."""
    t0 = time.perf_counter()
    seq = as_sequence(taus)
    datum = BlaschkeDatum.from_cf(solve_cf(seq))
    res = remez.solve(remez.FixedHead(n, seq), tol=tol, polish=polish)
    sup_gap, E_gap = remez.compare_asymptotic(res, AsymZolotarev(datum, n))
    return Record(n, res.E_n, abs(datum.gamma), E_gap, sup_gap, res.iterations, time.perf_counter() - t0)


def _compare_args(args):
    return compare_one(*args)


def sweep(taus, ns, tol=1e-10, polish=2, jobs=1):
    """One :class:`Record` per n, ordered by n; ``jobs > 1`` uses a process pool."""
    taus = list(as_sequence(taus).taus)
    tasks = [(taus, n, tol, polish) for n in sorted(ns)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_compare_args, tasks))
    return [_compare_args(t) for t in tasks]


def fit_sweep(records, floor_rel=1e-12):
    """Geometric fits of E_gap and sup_gap, dropping rounding-level gaps."""
    if not records:
        raise InsufficientDataError("empty sweep")
    floor = floor_rel * max(records[0].gamma_abs, 1.0)
    out = {}
    for key in ("E_gap", "sup_gap"):
        series = [(r.n, getattr(r, key)) for r in records]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            try:
                out[key] = fit_geometric(series, floor=floor)
            except InsufficientDataError as exc:
                log.warning("%s: %s", key, exc)
                out[key] = None
    return out
