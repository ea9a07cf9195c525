"""Parameter sweeps over (k, sigma0, R_ex) and their CSV representation."""
from concurrent.futures import ProcessPoolExecutor
import csv
from dataclasses import asdict, dataclass, field, fields
import io
import json
from typing import Optional

import numpy as np

from . import asymptotic, finite_lb, scalar_ub
from .model import ProblemParams

__all__ = [
    "MODES",
    "CSV_COLUMNS",
    "SweepSpec",
    "SweepRow",
    "SweepResult",
    "evaluate_point",
    "run_sweep",
    "write_csv",
    "read_csv",
]

MODES = ("asymptotic", "scalar", "finite_lb", "gauss_ext")
CSV_COLUMNS = ("k2", "sigma0_sq", "r_ex", "m", "mode", "lower", "upper", "ratio",
               "winner", "p_star", "sigma_g_star", "l_star", "a_star")
_FLOAT_COLUMNS = {"k2", "sigma0_sq", "r_ex", "lower", "upper", "ratio",
                  "p_star", "sigma_g_star", "l_star", "a_star"}


def _grid_tuple(value, name):
    if isinstance(value, dict):
        value = (value["min"], value["max"], value["count"])
    lo, hi, count = value
    if int(count) != count or count < 1:
        raise ValueError(f"{name}: count must be a positive integer, got {count}")
    if not (lo > 0 and hi > 0):
        raise ValueError(f"{name}: grid bounds must be positive, got ({lo}, {hi})")
    if hi < lo:
        raise ValueError(f"{name}: max {hi} is below min {lo}")
    return (float(lo), float(hi), int(count))


@dataclass(frozen=True)
class SweepSpec:
    """Log-spaced grids in k and sigma0 (not squared), a list of rates, a mode.

    In ``gauss_ext`` mode the rate list is unused; each point runs at the
    capacity of a Gaussian link of power ``p_ex`` (default: P_ex = sigma0^2).
    """

    k_grid: tuple = (1e-2, 1e2, 60)
    sigma0_grid: tuple = (1e-2, 1e2, 60)
    r_ex_list: tuple = (0.0, 1.0, 2.0, 3.0, 4.0, 5.0)
    m: int = 1
    mode: str = "asymptotic"
    p_ex: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "k_grid", _grid_tuple(self.k_grid, "k_grid"))
        object.__setattr__(self, "sigma0_grid", _grid_tuple(self.sigma0_grid, "sigma0_grid"))
        rates = tuple(float(r) for r in self.r_ex_list)
        if not rates:
            raise ValueError("r_ex_list must not be empty")
        if any(not r >= 0 for r in rates):
            raise ValueError("rates must be nonnegative")
        object.__setattr__(self, "r_ex_list", rates)
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        if self.mode == "scalar" and self.m != 1:
            raise ValueError("scalar mode requires m = 1")

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("sweep config must be a JSON object")
        unknown = set(data) - {f.name for f in fields(cls)}
        if unknown:
            raise ValueError(f"unknown sweep config keys: {sorted(unknown)}")
        return cls(**data)

    def points(self):
        ks = np.geomspace(*self.k_grid[:2], self.k_grid[2])
        ss = np.geomspace(*self.sigma0_grid[:2], self.sigma0_grid[2])
        rates = (None,) if self.mode == "gauss_ext" else self.r_ex_list
        for r in rates:
            for k in ks:
                for s in ss:
                    yield float(k * k), float(s * s), r


def _round12(x):
    return None if x is None else float(f"{x:.12g}")


@dataclass(frozen=True)
class SweepRow:
    k2: float
    sigma0_sq: float
    r_ex: float
    m: int
    mode: str
    lower: Optional[float] = None
    upper: Optional[float] = None
    ratio: Optional[float] = None
    winner: Optional[str] = None
    p_star: Optional[float] = None
    sigma_g_star: Optional[float] = None
    l_star: Optional[float] = None
    a_star: Optional[float] = None

    def __post_init__(self):
        # stored at CSV precision so that a written file parses back identically
        for name in _FLOAT_COLUMNS:
            object.__setattr__(self, name, _round12(getattr(self, name)))


@dataclass
class SweepResult:
    spec: Optional[SweepSpec]
    rows: list = field(default_factory=list)

    def max_ratio_by_rate(self):
        """{r_ex: (max ratio, row attaining it)} over rows with a ratio."""
        out = {}
        for row in self.rows:
            if row.ratio is None:
                continue
            best = out.get(row.r_ex)
            if best is None or row.ratio > best[0]:
                out[row.r_ex] = (row.ratio, row)
        return out

    def max_ratio(self):
        by_rate = self.max_ratio_by_rate()
        if not by_rate:
            return None, None
        return max(by_rate.values(), key=lambda t: t[0])

    def summary_lines(self):
        lines = []
        for r, (ratio, row) in sorted(self.max_ratio_by_rate().items()):
            lines.append(f"r_ex={r:g} max_ratio={ratio:.6g} at k2={row.k2:.6g} "
                         f"sigma0_sq={row.sigma0_sq:.6g} winner={row.winner}")
        ratio, row = self.max_ratio()
        if row is not None:
            lines.append(f"overall max_ratio={ratio:.6g} at k2={row.k2:.6g} "
                         f"sigma0_sq={row.sigma0_sq:.6g} r_ex={row.r_ex:g}")
        return lines


def _ratio(lower, upper):
    if lower is None or upper is None or not lower > 0:
        return None
    return upper / lower


def evaluate_point(mode, k2, sigma0_sq, r_ex, m=1, p_ex=None):
    """One sweep row. ``p_star`` is the lower-bound minimizer P*."""
    if mode == "asymptotic":
        b = asymptotic.bound(ProblemParams(k2, sigma0_sq, r_ex, m))
        return SweepRow(k2, sigma0_sq, r_ex, m, mode, b.lower, b.upper, b.ratio,
                        b.upper_strategy, b.p_star_lower)
    if mode in ("scalar", "finite_lb"):
        params = ProblemParams(k2, sigma0_sq, r_ex, m)
        lo = finite_lb.optimized_lower_bound(params)
        up = scalar_ub.total_upper(params) if m == 1 else None
        return SweepRow(
            k2, sigma0_sq, r_ex, m, mode, lo.value,
            up.total if up else None, _ratio(lo.value, up.total if up else None),
            up.winner if up else None, lo.p_star, lo.sigma_g_star, lo.l_star,
            up.a_star if up else None,
        )
    if mode == "gauss_ext":
        pex = sigma0_sq if p_ex is None else p_ex
        rate = float(asymptotic.effective_rate(pex))
        params = ProblemParams(k2, sigma0_sq, rate, m, p_ex=pex)
        binning = asymptotic.gauss_ext_binning_cost(params)
        baseline = asymptotic.gauss_ext_baseline_cost(params)
        _, label = asymptotic.upper_bound(params)
        return SweepRow(k2, sigma0_sq, rate, m, mode, binning, baseline,
                        _ratio(binning, baseline), label)
    raise ValueError(f"unknown mode {mode!r}")


def _eval_star(args):
    return evaluate_point(*args)


def run_sweep(spec, workers=1):
    """Evaluate every grid point; rows come back in grid order."""
    jobs = [(spec.mode, k2, s2, r, spec.m, spec.p_ex) for k2, s2, r in spec.points()]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_eval_star, jobs, chunksize=64))
    else:
        rows = [_eval_star(j) for j in jobs]
    return SweepResult(spec, rows)


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def write_csv(result, fh):
    """Write rows to an open text file (header first, fixed column order)."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in result.rows:
        d = asdict(row)
        writer.writerow([_fmt(d[c]) for c in CSV_COLUMNS])


def read_csv(fh):
    reader = csv.reader(fh)
    header = tuple(next(reader))
    if header != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {header}")
    rows = []
    for rec in reader:
        d = dict(zip(CSV_COLUMNS, rec))
        kw = {}
        for c in CSV_COLUMNS:
            v = d[c]
            if v == "":
                kw[c] = None
            elif c in _FLOAT_COLUMNS:
                kw[c] = float(v)
            elif c == "m":
                kw[c] = int(v)
            else:
                kw[c] = v
        rows.append(SweepRow(**kw))
    return SweepResult(None, rows)


def to_csv_string(result):
    buf = io.StringIO()
    write_csv(result, buf)
    return buf.getvalue()
