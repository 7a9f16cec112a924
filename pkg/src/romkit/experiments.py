"""Experiment configuration, data loading and the sweeps behind the CLI."""
from __future__ import annotations

import configparser
import csv
import io
import itertools
import json
import math
import zlib
from dataclasses import asdict, dataclass, fields
from fractions import Fraction

import numpy as np

from . import markov
from .estimators import (
    AngularEstimatorSpec,
    DotEstimatorSpec,
    angular_kernel,
    approx_gram,
    gram_error,
    gram_matrix,
    make_structure,
)
from .oracle import (
    _run_chunks,
    brute_force_mse_dot,
    dense_reference,
    estimate_angular_probs,
    monte_carlo_mse,
)
from .rng import stream
from .theory import (
    MseFormulaInputs,
    mse_angular_base,
    mse_angular_general,
    mse_base_dot,
    mse_ort_dot,
    mse_sd,
    mse_sd_hybrid,
    mse_sd_rademacher,
)
from .transforms import (
    DiagonalLaw,
    StructuredOrthogonal,
    SubsamplingPolicy,
    expected_pair_count,
    fwht,
    is_pow2,
    kron_matvec,
    measure_pair_count,
    pad_to_pow2,
    walsh_matvec,
)

EXPERIMENTS = ("mse-curve", "gram-error", "angular", "markov", "pair-count", "verify")
DOT_ESTIMATORS = ("base", "ort", "sd_rademacher", "sd_hybrid", "sd_hybrid_fourth", "sd_uniform")
ANGULAR_ESTIMATORS = ("base", "ort", "sd_rademacher")
POLICIES = {p.value: p for p in SubsamplingPolicy}

# stream keys for draws that are not tied to one result row
_SUBSET_KEY = 0x5B5E7
_DATA_KEY = 0xDA7A


class ConfigError(ValueError):
    pass


class DatasetError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    kind: str
    seed: int | None = None
    estimators: tuple = ()
    n: int = 16
    m_grid: tuple = ()
    k_grid: tuple = (3,)
    trials: int = 20000
    repetitions: int = 1000
    pairs: int = 5
    count: int = 64
    synthetic: str = "gaussian"
    dataset: str | None = None
    subset: int | None = None
    drop_label: bool = False
    kernel: str = "both"
    structure: str = "hadamard"
    policy: str = "without"
    thetas: tuple = (1 / 6, 1 / 3, 1 / 2)
    markov_n: int = 2
    tolerance: float = 1e-10
    out: str | None = None
    format: str = "csv"
    threads: int = 1

    def validate(self):
        if self.kind not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.kind!r}")
        if self.seed is None:
            raise ConfigError("a seed is required (--seed or seed= in the config file)")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError(f"seed {self.seed} is not an unsigned 64-bit integer")
        if self.format not in ("csv", "jsonl"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.policy not in POLICIES:
            raise ConfigError(f"unknown policy {self.policy!r}; use one of {sorted(POLICIES)}")
        if self.trials < 1 or self.repetitions < 1 or self.pairs < 1:
            raise ConfigError("trials, repetitions and pairs must be positive")
        if self.threads < 1:
            raise ConfigError("threads must be positive")
        if self.kernel not in ("dot", "angular", "both"):
            raise ConfigError(f"unknown kernel {self.kernel!r}")
        if self.synthetic not in ("gaussian", "spherical", "sparse"):
            raise ConfigError(f"unknown synthetic recipe {self.synthetic!r}")
        if self.structure not in ("hadamard", "walsh"):
            raise ConfigError(f"unknown structure {self.structure!r}")
        if self.kind in ("mse-curve", "gram-error", "angular", "pair-count"):
            if self.dataset is None and not is_pow2(self.n):
                raise ConfigError(f"n={self.n} must be a power of 2")
        allowed = ANGULAR_ESTIMATORS if self.kind == "angular" else DOT_ESTIMATORS
        for e in self.estimators:
            if e not in allowed:
                raise ConfigError(f"unknown estimator {e!r} for {self.kind}; use {allowed}")
        if any(k < 1 for k in self.k_grid):
            raise ConfigError("k values must be at least 1")
        return self

    def check_m_grid(self, n):
        if self.kind == "angular":
            bad = [m for m in self.m_grid if m < 1]
        else:
            bad = [m for m in self.m_grid if not 1 <= m <= n]
        if bad:
            raise ConfigError(f"m values {bad} outside [1, {n}]")


_TUPLE_INT = {"m_grid", "k_grid"}
_TUPLE_STR = {"estimators"}
_TUPLE_FLOAT = {"thetas"}


def parse_grid(text):
    """'1,2,4' or '1:8' (inclusive) or '2:16:2'."""
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            bits = [int(b) for b in part.split(":")]
            start, stop = bits[0], bits[1]
            stride = bits[2] if len(bits) > 2 else 1
            out.extend(range(start, stop + 1, stride))
        else:
            out.append(int(part))
    return tuple(out)


def _parse_fraction_list(text):
    vals = []
    for part in str(text).split(","):
        part = part.strip()
        if part:
            vals.append(float(Fraction(part)))
    return tuple(vals)


def coerce(name, value):
    """Convert a raw string from a config file or flag into the field's type."""
    if value is None:
        return None
    if name in _TUPLE_INT:
        return parse_grid(value) if isinstance(value, str) else tuple(value)
    if name in _TUPLE_STR:
        return tuple(v.strip() for v in value.split(",") if v.strip()) if isinstance(value, str) else tuple(value)
    if name in _TUPLE_FLOAT:
        return _parse_fraction_list(value) if isinstance(value, str) else tuple(value)
    if name == "drop_label":
        if isinstance(value, bool):
            return value
        return str(value).strip().lower() in ("1", "true", "yes", "on")
    if name in ("seed", "n", "trials", "repetitions", "pairs", "count", "subset", "markov_n", "threads"):
        return int(value, 0) if isinstance(value, str) else int(value)
    if name == "tolerance":
        return float(value)
    return value


def read_config_file(path):
    """Flat key=value file; section headers are optional and only group keys."""
    text = open(path, encoding="utf-8").read()
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text if text.lstrip().startswith("[") else "[experiment]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    names = {f.name for f in fields(ExperimentConfig)}
    out = {}
    for section in parser.sections():
        for key, raw in parser.items(section):
            key = key.replace("-", "_")
            if key not in names or key == "kind":
                raise ConfigError(f"{path}: unknown key {key!r} in [{section}]")
            try:
                out[key] = coerce(key, raw)
            except ValueError as exc:
                raise ConfigError(f"{path}: bad value for {key}: {raw!r}") from exc
    return out


DEFAULTS = {
    "mse-curve": dict(estimators=("base", "ort", "sd_rademacher", "sd_hybrid"), m_grid=(2, 4, 8, 12, 16)),
    "gram-error": dict(estimators=("base", "ort", "sd_rademacher", "sd_hybrid"), m_grid=(4, 8, 12)),
    "angular": dict(estimators=ANGULAR_ESTIMATORS, m_grid=(4, 16)),
    "pair-count": dict(m_grid=(2, 4, 8), trials=100000),
    "markov": {},
    "verify": dict(pairs=20),
}


def build_config(kind, file_values=None, flag_values=None):
    """Defaults, then file values, then flags (flags win)."""
    values = dict(DEFAULTS.get(kind, {}))
    values.update(file_values or {})
    values.update({k: v for k, v in (flag_values or {}).items() if v is not None})
    try:
        return ExperimentConfig(kind=kind, **values).validate()
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------- data

def load_dataset(path, drop_label=False, subset=None, seed=None):
    """Read a numeric CSV (one point per row), zero-pad to a power of 2.

    ``subset`` keeps a uniform random subset of that many rows, drawn from the
    run seed.  Problems are reported with their 1-based line number.
    """
    rows = []
    width = None
    first_line = None
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, rec in enumerate(csv.reader(fh), start=1):
            if not rec or all(not c.strip() for c in rec):
                continue
            if drop_label:
                rec = rec[:-1]
            try:
                vals = [float(c) for c in rec]
            except ValueError:
                raise DatasetError(f"{path}:{lineno}: non-numeric field in {rec!r}") from None
            if width is None:
                width, first_line = len(vals), lineno
                if width == 0:
                    raise DatasetError(f"{path}:{lineno}: no feature columns")
            elif len(vals) != width:
                raise DatasetError(
                    f"{path}:{lineno}: ragged row with {len(vals)} fields, expected {width} (from line {first_line})")
            rows.append(vals)
    if not rows:
        raise DatasetError(f"{path}: empty dataset")
    X = np.array(rows, dtype=np.float64)
    if subset is not None:
        if subset > len(X):
            raise DatasetError(f"{path}: subset of {subset} requested from {len(X)} rows")
        if seed is None:
            raise DatasetError("subset selection needs a seed")
        idx = np.sort(stream(seed, _SUBSET_KEY).choice(len(X), size=subset, replace=False))
        X = X[idx]
    return pad_to_pow2(X)


def synthetic_points(recipe, n, count, seed):
    rng = stream(seed, _DATA_KEY)
    if recipe == "gaussian":
        return rng.standard_normal((count, n))
    if recipe == "spherical":
        X = rng.standard_normal((count, n))
        return X / np.linalg.norm(X, axis=1, keepdims=True)
    # sparse: ~25% nonzero, at least one per row
    X = rng.standard_normal((count, n)) * (rng.random((count, n)) < 0.25)
    empty = ~X.any(axis=1)
    X[empty, rng.integers(0, n, size=empty.sum())] = 1.0
    return X


def config_points(cfg, default_count):
    if cfg.dataset is not None:
        return load_dataset(cfg.dataset, cfg.drop_label, cfg.subset, cfg.seed)
    return synthetic_points(cfg.synthetic, cfg.n, default_count, cfg.seed)


# -------------------------------------------------------------- results

@dataclass
class ResultRow:
    experiment: str
    estimator: str
    n: int
    m: int | None
    k: int | None
    param: str
    metric: str
    value: float
    trials: int
    seed: int


COLUMNS = [f.name for f in fields(ResultRow)]


def _sort_key(row):
    return (row.estimator, row.m if row.m is not None else -1, row.k if row.k is not None else -1,
            row.param, row.metric)


def write_rows(rows, fh, fmt):
    if fmt == "csv":
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in rows:
            w.writerow(["" if v is None else (repr(v) if isinstance(v, float) else v) for v in asdict(r).values()])
    else:
        for r in rows:
            fh.write(json.dumps(asdict(r)) + "\n")


def render_rows(rows, fmt):
    buf = io.StringIO()
    write_rows(rows, buf, fmt)
    return buf.getvalue()


def row_key(*parts):
    """Stable 32-bit key for a result row; used to seed its random stream."""
    return zlib.crc32("|".join(map(str, parts)).encode())


# ----------------------------------------------------------- estimators

def dot_spec(name, n, m, k, structure="hadamard", policy="without"):
    if name == "base":
        return DotEstimatorSpec.base(m)
    if name == "ort":
        return DotEstimatorSpec.ort(m)
    s = make_structure(structure, n)
    pol = POLICIES[policy]
    if name == "sd_rademacher":
        return DotEstimatorSpec.sd_rademacher(s, k, m, pol)
    if name == "sd_hybrid":
        return DotEstimatorSpec.sd_hybrid(s, k, m, pol)
    if name == "sd_hybrid_fourth":
        return DotEstimatorSpec.sd_hybrid(s, k, m, pol, final=DiagonalLaw.FOURTH_ROOTS)
    if name == "sd_uniform":
        return DotEstimatorSpec.sd_uniform(s, k, m, pol)
    raise ConfigError(f"unknown estimator {name!r}")


def angular_spec(name, n, m, k, structure="hadamard", policy="without"):
    if name == "base":
        return AngularEstimatorSpec.base(m)
    if name == "ort":
        return AngularEstimatorSpec.ort(m)
    if name == "sd_rademacher":
        return AngularEstimatorSpec.sd_rademacher(make_structure(structure, n), k, m, POLICIES[policy])
    raise ConfigError(f"unknown angular estimator {name!r}")


_FAMILY = {"sd_rademacher": "rademacher", "sd_hybrid": "hybrid", "sd_hybrid_fourth": "hybrid",
           "sd_uniform": "uniform"}


def theory_dot(name, x, y, m, k, policy):
    """Closed-form MSE for an estimator id, or None where there is none."""
    inp = MseFormulaInputs(x, y, m, k)
    if name == "base":
        return mse_base_dot(inp)
    if name == "ort":
        return mse_ort_dot(inp) if inp.n >= 4 else None
    if policy == "first":
        return None
    return mse_sd(inp, _FAMILY[name], policy)


def _grid(cfg, name):
    # (k, m) combinations; k only matters for the SD families
    ks = cfg.k_grid if name.startswith("sd_") else (None,)
    return [(k, m) for k in ks for m in cfg.m_grid]


# ---------------------------------------------------------------- runs

def _pairs_from(points, count, seed):
    rng = stream(seed, _DATA_KEY, 1)
    P = len(points)
    if P < 2:
        raise ConfigError("need at least two points to form pairs")
    out = []
    for _ in range(count):
        i, j = rng.choice(P, size=2, replace=False)
        out.append((points[i], points[j]))
    return out


def run_mse_curve(cfg):
    """Monte Carlo MSE per (estimator, k, m), averaged over vector pairs, with theory rows."""
    points = config_points(cfg, 2 * cfg.pairs)
    n = points.shape[1]
    cfg.check_m_grid(n)
    pairs = _pairs_from(points, cfg.pairs, cfg.seed)
    rows = []
    for name in cfg.estimators:
        for k, m in _grid(cfg, name):
            if name == "ort" and n < 4:
                continue
            spec = dot_spec(name, n, m, k or 1, cfg.structure, cfg.policy)
            key = row_key("mse-curve", name, k, m)
            mses, ses, theo = [], [], []
            for p, (x, y) in enumerate(pairs):
                st = monte_carlo_mse(spec, x, y, max(cfg.trials, 2), cfg.seed, keys=(key, p), threads=cfg.threads)
                mses.append(st.mse)
                ses.append(st.se_mse)
                theo.append(theory_dot(name, x, y, m, k or 1, cfg.policy))
            base = dict(experiment="mse-curve", estimator=name, n=n, m=m, k=k, param="",
                        trials=cfg.trials, seed=cfg.seed)
            P = len(pairs)
            rows.append(ResultRow(metric="mse", value=float(np.mean(mses)), **base))
            rows.append(ResultRow(metric="se", value=float(math.sqrt(np.sum(np.square(ses))) / P), **base))
            if all(t is not None for t in theo):
                rows.append(ResultRow(metric="theory_mse", value=float(np.mean(theo)), **base))
    return sorted(rows, key=_sort_key)


def gram_errors(spec, points, kernel, repetitions, seed, key, threads=1):
    """Normalized Frobenius errors over ``repetitions`` independent matrix draws."""
    exact = gram_matrix(points, kernel)

    def chunk(rng, size):
        return [gram_error(exact, approx_gram(spec, points, rng, kernel)) for _ in range(size)]

    parts = _run_chunks(chunk, repetitions, seed, (key,), threads)
    return np.array([e for part in parts for e in part])


def run_gram_error(cfg):
    points = config_points(cfg, cfg.count)
    n = points.shape[1]
    cfg.check_m_grid(n)
    kernels = ("dot", "angular") if cfg.kernel == "both" else (cfg.kernel,)
    rows = []
    for kernel in kernels:
        names = cfg.estimators if kernel == "dot" else [e for e in cfg.estimators if e in ANGULAR_ESTIMATORS]
        for name in names:
            for k, m in _grid(cfg, name):
                make = dot_spec if kernel == "dot" else angular_spec
                spec = make(name, n, m, k or 1, cfg.structure, cfg.policy)
                errs = gram_errors(spec, points, kernel, cfg.repetitions, cfg.seed,
                                   row_key("gram", kernel, name, k, m), cfg.threads)
                base = dict(experiment="gram-error", estimator=name, n=n, m=m, k=k, param=kernel,
                            trials=cfg.repetitions, seed=cfg.seed)
                se = float(errs.std(ddof=1) / math.sqrt(len(errs))) if len(errs) > 1 else 0.0
                rows.append(ResultRow(metric="gram_frobenius_error", value=float(errs.mean()), **base))
                rows.append(ResultRow(metric="se", value=se, **base))
    return sorted(rows, key=_sort_key)


def pair_at_angle(theta, n, rng):
    """Two unit vectors at angle ``theta`` in a random plane of R^n."""
    q, _ = np.linalg.qr(rng.standard_normal((n, 2)))
    u, v = q[:, 0], q[:, 1]
    return u, math.cos(theta) * u + math.sin(theta) * v


def run_angular(cfg):
    """Angular-kernel MSE per (estimator, m, theta) plus closed-form and plug-in values."""
    n = cfg.n
    cfg.check_m_grid(n)
    rows = []
    for ti, frac in enumerate(cfg.thetas):
        theta = frac * math.pi
        if not 0 < theta < math.pi:
            raise ConfigError(f"theta {frac}*pi must lie strictly inside (0, pi)")
        x, y = pair_at_angle(theta, n, stream(cfg.seed, _DATA_KEY, 2, ti))
        param = f"theta={frac!r}*pi"
        for name in cfg.estimators:
            for k, m in _grid(cfg, name):
                spec = angular_spec(name, n, m, k or 1, cfg.structure, cfg.policy)
                key = row_key("angular", name, k, m, ti)
                st = monte_carlo_mse(spec, x, y, max(cfg.trials, 2), cfg.seed, keys=(key, 0), threads=cfg.threads)
                base = dict(experiment="angular", estimator=name, n=n, m=m, k=k, param=param,
                            trials=cfg.trials, seed=cfg.seed)
                rows.append(ResultRow(metric="mse", value=st.mse, **base))
                rows.append(ResultRow(metric="se", value=st.se_mse, **base))
                rows.append(ResultRow(metric="mean", value=st.mean, **base))
                rows.append(ResultRow(metric="kernel", value=angular_kernel(x, y), **base))
                if name == "base":
                    rows.append(ResultRow(metric="theory_mse", value=mse_angular_base(theta, m), **base))
                if m >= 2:
                    pr = estimate_angular_probs(spec, x, y, max(cfg.trials, 2), cfg.seed, keys=(key, 1),
                                                threads=cfg.threads)
                    rows.append(ResultRow(metric="plugin_mse",
                                          value=mse_angular_general(pr.probs, pr.deltas, theta, m), **base))
                    rows.append(ResultRow(metric="mean_delta",
                                          value=float(pr.deltas.sum() / (m * (m - 1))), **base))
    return sorted(rows, key=_sort_key)


def run_pair_count(cfg):
    n = cfg.n
    if n % 2:
        raise ConfigError("pair counting needs even n")
    cfg.check_m_grid(n)
    rows = []
    for m in cfg.m_grid:
        counts = measure_pair_count(n, m, stream(cfg.seed, row_key("pair-count", n, m)), size=cfg.trials)
        base = dict(experiment="pair-count", estimator="without_replacement", n=n, m=m, k=None, param="",
                    trials=cfg.trials, seed=cfg.seed)
        se = float(counts.std(ddof=1) / math.sqrt(len(counts))) if len(counts) > 1 else 0.0
        rows.append(ResultRow(metric="mean", value=float(counts.mean()), **base))
        rows.append(ResultRow(metric="se", value=se, **base))
        rows.append(ResultRow(metric="expected", value=float(expected_pair_count(n, m)), **base))
    return sorted(rows, key=_sort_key)


def run_markov(cfg):
    rep = markov.analyze(cfg.markov_n, require_mixing=False)
    rows = []
    for metric in ("state_count", "period", "cayley_diameter", "mixing_step", "class_uniform_step"):
        value = getattr(rep, metric)
        rows.append(ResultRow(experiment="markov", estimator="hadamard_rademacher", n=cfg.markov_n, m=None,
                              k=None, param="", metric=metric,
                              value=float("nan") if value is None else float(value), trials=0, seed=cfg.seed))
    return rows


# --------------------------------------------------------------- verify

def _check(name, passed, **detail):
    return {"name": name, "passed": bool(passed), **detail}


def _rel(a, b):
    return abs(a - b) / abs(b) if b != 0 else abs(a - b)


def run_verify(cfg):
    """Oracle-versus-closed-form checks.  Returns a JSON-ready report."""
    tol = cfg.tolerance
    rng = stream(cfg.seed, row_key("verify"))
    n = 4
    S = StructuredOrthogonal.hadamard(n)
    vecs = [(rng.integers(-3, 4, n).astype(float), rng.integers(-3, 4, n).astype(float)) for _ in range(cfg.pairs)]
    checks = []

    worst = 0.0
    for x, y in vecs:
        for m in range(1, n + 1):
            for k in (1, 2, 3):
                bf = brute_force_mse_dot(DotEstimatorSpec.sd_rademacher(S, k, m), x, y)
                worst = max(worst, _rel(bf, mse_sd_rademacher(MseFormulaInputs(x, y, m, k))))
    checks.append(_check("brute_force_vs_sd_rademacher_formula", worst <= tol, max_rel_error=worst, tolerance=tol))

    worst = 0.0
    for x, y in vecs:
        for m in range(1, n + 1):
            for k in (1, 2):
                spec = DotEstimatorSpec.sd_hybrid(S, k, m, final=DiagonalLaw.FOURTH_ROOTS)
                worst = max(worst, _rel(brute_force_mse_dot(spec, x, y), mse_sd_hybrid(MseFormulaInputs(x, y, m, k))))
    checks.append(_check("brute_force_fourth_roots_vs_half_mse", worst <= tol, max_rel_error=worst, tolerance=tol))

    worst = 0.0
    for x, y in vecs:
        for m in range(1, n):
            for k in (1, 2, 3):
                w = brute_force_mse_dot(DotEstimatorSpec.sd_rademacher(S, k, m, SubsamplingPolicy.WITH_REPLACEMENT), x, y)
                wo = brute_force_mse_dot(DotEstimatorSpec.sd_rademacher(S, k, m), x, y)
                if wo > 0:
                    worst = max(worst, _rel(w / wo, (n - 1) / (n - m)))
    checks.append(_check("with_replacement_factor", worst <= tol, max_rel_error=worst, tolerance=tol))

    violations = 0
    for _ in range(1000):
        nn = int(rng.choice([4, 8, 16, 32]))
        m = int(rng.integers(1, nn))
        k = int(rng.integers(1, 5))
        inp = MseFormulaInputs(rng.standard_normal(nn), rng.standard_normal(nn), m, k)
        violations += not (mse_sd_rademacher(inp) < mse_base_dot(inp))
    checks.append(_check("sd_rademacher_beats_base", violations == 0, violations=violations, configs=1000))

    rep = markov.analyze(2)
    got = [rep.state_count, rep.period, rep.cayley_diameter, rep.mixing_step]
    checks.append(_check("markov_n2", got == [16, 2, 3, 3], got=got, expected=[16, 2, 3, 3]))

    subsets = list(itertools.combinations(range(8), 4))
    exact = Fraction(sum(sum(1 for i in range(4) if i in s and i + 4 in s) for s in subsets), len(subsets))
    checks.append(_check("pair_count_enumeration", exact == expected_pair_count(8, 4),
                         enumerated=str(exact), formula=str(expected_pair_count(8, 4))))

    worst = 0.0
    for size in (4, 8, 16, 32, 64):
        v = rng.standard_normal(size)
        worst = max(worst, float(np.abs(fwht(v) - dense_reference(StructuredOrthogonal.hadamard(size)) @ v).max()))
        worst = max(worst, float(np.abs(walsh_matvec(v) - dense_reference(StructuredOrthogonal.walsh(size)) @ v).max()))
        h2 = [[1, 1], [1, -1]]
        K = StructuredOrthogonal.kronecker([h2] * (size.bit_length() - 1))
        worst = max(worst, float(np.abs(kron_matvec(K.blocks, v) - dense_reference(K) @ v).max()))
    checks.append(_check("fast_paths_vs_dense", worst <= max(tol, 1e-10) if tol >= 0 else False,
                         max_abs_error=worst))

    return {"seed": cfg.seed, "passed": all(c["passed"] for c in checks), "checks": checks}


RUNNERS = {
    "mse-curve": run_mse_curve,
    "gram-error": run_gram_error,
    "angular": run_angular,
    "pair-count": run_pair_count,
    "markov": run_markov,
}
