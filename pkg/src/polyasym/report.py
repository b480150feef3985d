"""Comparison tables and sweep reports.

A report config is line oriented: ``key = value`` pairs at the top level, then
any number of ``[sweep]`` sections. Blank lines and ``#`` comments are ignored.

    output = polyasym-report
    precision = 128

    [sweep]
    name = watson-rate
    family = bernoulli
    methods = watson
    n = 10:80:10
    mu = 1/2
    z = 0.3
    K = 0, 1, 2

List values are comma separated, ``n`` is an inclusive ``start:stop:step``
range (or a list), and ``K`` may list several truncation orders.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import platform
import statistics
from fractions import Fraction
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import mpmath

from . import __version__
from .dispatch import METHODS, evaluate, oracle_value, parse_family
from .numeric_core import (
    DEFAULT_PRECISION,
    MIN_PRECISION,
    DomainError,
    Family,
    format_value,
    is_exact,
    parse_number,
    to_hp,
)

COLUMNS = ("family", "n", "mu", "z", "method", "terms_used", "value", "oracle",
           "abs_err", "rel_err", "error_estimate", "confidence", "notes", "error")
RATE_COLUMNS = ("sweep", "family", "method", "mu", "z", "K", "points", "slope", "err_first", "err_last")


class ConfigError(ValueError):
    """Malformed report configuration."""


def parse_n_range(text: str) -> list[int]:
    """``"A:B:step"`` (inclusive of B), ``"A:B"`` or a comma list of integers."""
    text = text.strip()
    if not text:
        return []
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) == 2:
                parts.append(1)
            if len(parts) != 3 or parts[2] <= 0:
                raise ValueError
            start, stop, step = parts
            return list(range(start, stop + 1, step))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(f"bad n range {text!r}; expected A:B:step or a comma list") from None


def _split(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip()]


@dataclass(frozen=True)
class Sweep:
    name: str
    family: Family
    methods: tuple
    ns: tuple
    mus: tuple
    zs: tuple
    terms: tuple = (None,)
    precision: int = DEFAULT_PRECISION


@dataclass
class ReportConfig:
    output: str = "polyasym-report"
    precision: int = DEFAULT_PRECISION
    sweeps: list = field(default_factory=list)


def _precision(text: str) -> int:
    try:
        prec = int(text)
    except ValueError:
        raise ConfigError(f"precision must be an integer, got {text!r}") from None
    if prec < MIN_PRECISION:
        raise ConfigError(f"precision must be >= {MIN_PRECISION} bits")
    return prec


def _build_sweep(raw: dict, index: int, default_prec: int) -> Sweep:
    unknown = set(raw) - {"name", "family", "methods", "n", "mu", "z", "k", "precision"}
    if unknown:
        raise ConfigError(f"sweep {index}: unknown keys {sorted(unknown)}")
    prec = _precision(raw["precision"]) if "precision" in raw else default_prec
    try:
        family = parse_family(raw.get("family", "bernoulli"))
        mus = tuple(parse_number(v, prec) for v in _split(raw.get("mu", "")))
        zs = tuple(parse_number(v, prec) for v in _split(raw.get("z", "")))
    except (ValueError, DomainError) as exc:
        raise ConfigError(f"sweep {index}: {exc}") from None
    methods = tuple(_split(raw.get("methods", "oracle")))
    bad = [m for m in methods if m not in METHODS]
    if bad:
        raise ConfigError(f"sweep {index}: unknown methods {bad}")
    terms = tuple(int(k) for k in _split(raw["k"])) if raw.get("k", "").strip() else (None,)
    return Sweep(
        name=raw.get("name", f"sweep{index}"),
        family=family,
        methods=methods,
        ns=tuple(parse_n_range(raw.get("n", ""))),
        mus=mus,
        zs=zs,
        terms=terms,
        precision=prec,
    )


def parse_config(text: str) -> ReportConfig:
    config = ReportConfig()
    top: dict = {}
    sections: list[dict] = []
    current = top
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "[sweep]":
            current = {}
            sections.append(current)
            continue
        if line.startswith("["):
            raise ConfigError(f"line {lineno}: unknown section {line}")
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected key = value")
        current[key.strip().lower()] = value.strip()
    unknown = set(top) - {"output", "precision"}
    if unknown:
        raise ConfigError(f"unknown top-level keys {sorted(unknown)}")
    config.output = top.get("output", config.output)
    if "precision" in top:
        config.precision = _precision(top["precision"])
    config.sweeps = [_build_sweep(raw, i, config.precision) for i, raw in enumerate(sections, 1)]
    return config


def default_config_text() -> str:
    return resources.files("polyasym").joinpath("default_report.cfg").read_text()


# -- rows ---------------------------------------------------------------------


def _fmt(x, prec) -> str:
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return format_value(x, prec)


def compare_row(family: Family, n: int, mu, z, method: str, terms, prec: int, oracle=None) -> dict:
    """One comparison row; domain errors become an ``error`` entry instead of raising."""
    row = dict.fromkeys(COLUMNS, "")
    row.update(family=family.value, n=str(n), mu=_fmt(mu, prec), z=_fmt(z, prec), method=method)
    try:
        approx = evaluate(family, n, mu, z, method, terms, prec)
        if oracle is None:
            oracle = oracle_value(family, n, mu, z, prec)
    except (DomainError, ArithmeticError) as exc:
        row["error"] = str(exc)
        return row
    value = approx.value
    if is_exact(value) and is_exact(oracle):
        diff = abs(value - oracle)
        rel = diff / abs(oracle) if oracle != 0 else None
    else:
        hp_value, hp_oracle = to_hp(value, prec + 64), to_hp(oracle, prec + 64)
        diff = abs(hp_value - hp_oracle)
        rel = diff / abs(hp_oracle) if hp_oracle != 0 else None
    row.update(
        terms_used=str(approx.terms_used),
        value=_fmt(value, prec),
        oracle=_fmt(oracle, prec),
        abs_err=_fmt(diff, prec),
        rel_err=_fmt(rel, prec),
        error_estimate=_fmt(approx.error_estimate, prec),
        confidence=approx.confidence.value,
        notes="; ".join(approx.notes),
    )
    return row


def compare_rows(family: Family, ns, mu, z, methods, terms=None, prec: int = DEFAULT_PRECISION,
                 jobs: int = 1) -> list[dict]:
    """Rows ordered by n, then method name, whatever order they were computed in."""
    methods = sorted(set(methods))
    ns = sorted(set(ns))
    oracle_cache = {}

    def one(key):
        n, method = key
        if n not in oracle_cache:
            try:
                oracle_cache[n] = oracle_value(family, n, mu, z, prec)
            except DomainError:
                oracle_cache[n] = None
        return compare_row(family, n, mu, z, method, terms, prec, oracle_cache[n])

    keys = list(itertools.product(ns, methods))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, keys))
    return [one(k) for k in keys]


def _csv_field(value) -> str:
    value = str(value)
    if _looks_complex(value) or any(c in value for c in ',"\n'):
        return '"' + value.replace('"', '""') + '"'
    return value


def _looks_complex(value: str) -> bool:
    return value.endswith("i") and any(c in value[1:] for c in "+-") and not value.startswith("-inf")


def rows_to_csv(rows, columns=COLUMNS) -> str:
    """Header plus one line per row; complex values always sit in a quoted field."""
    lines = [",".join(columns)]
    lines += [",".join(_csv_field(row.get(c, "")) for c in columns) for row in rows]
    return "\n".join(lines) + "\n"


def rows_to_json(rows, columns=COLUMNS) -> str:
    return json.dumps([{c: row.get(c, "") for c in columns} for row in rows], indent=2) + "\n"


def rows_to_text(rows, columns=COLUMNS) -> str:
    cols = [c for c in columns if any(row.get(c, "") for row in rows)] or list(columns)
    widths = {c: max(len(c), *(len(str(row.get(c, ""))) for row in rows)) if rows else len(c) for c in cols}
    lines = ["  ".join(c.ljust(widths[c]) for c in cols).rstrip()]
    for row in rows:
        lines.append("  ".join(str(row.get(c, "")).ljust(widths[c]) for c in cols).rstrip())
    return "\n".join(lines) + "\n"


def render(rows, fmt: str, columns=COLUMNS) -> str:
    if fmt == "csv":
        return rows_to_csv(rows, columns)
    if fmt == "json":
        return rows_to_json(rows, columns)
    return rows_to_text(rows, columns)


# -- report -------------------------------------------------------------------


def fit_rate(points) -> float | None:
    """Least-squares slope of log2|err| against log2 n; None with < 2 usable points."""
    usable = [(math.log2(n), math.log2(e)) for n, e in points if n > 0 and e > 0 and math.isfinite(e)]
    if len(usable) < 2:
        return None
    xs, ys = zip(*usable)
    return statistics.linear_regression(xs, ys).slope


def _float(text: str) -> float | None:
    try:
        return float(Fraction(text)) if text else None
    except (ValueError, ZeroDivisionError):
        return None


def _sweep_rows(sweep: Sweep, jobs: int):
    """Yields (method, K, mu, z, rows) groups in a fixed order."""
    for mu, z, K in itertools.product(sweep.mus, sweep.zs, sweep.terms):
        rows = compare_rows(sweep.family, sweep.ns, mu, z, sweep.methods, K, sweep.precision, jobs)
        for method in sorted(set(sweep.methods)):
            yield method, K, mu, z, [r for r in rows if r["method"] == method]


def run_report(config: ReportConfig, out_dir: str | Path, jobs: int = 1,
               config_text: str = "") -> dict:
    """Writes per-method CSVs, rates.csv and manifest.md; returns the manifest summary."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files: dict[str, str] = {}
    rate_rows = []
    error_count = 0
    row_count = 0
    for index, sweep in enumerate(config.sweeps, 1):
        per_method: dict[str, list] = {}
        for method, K, mu, z, rows in _sweep_rows(sweep, jobs):
            for row in rows:
                row["terms_requested"] = "" if K is None else str(K)
            per_method.setdefault(method, []).extend(rows)
            error_count += sum(1 for r in rows if r["error"])
            row_count += len(rows)
            points = [(int(r["n"]), _float(r["rel_err"])) for r in rows if _float(r["rel_err"]) is not None]
            slope = fit_rate(points)
            rate_rows.append({
                "sweep": sweep.name, "family": sweep.family.value, "method": method,
                "mu": _fmt(mu, sweep.precision), "z": _fmt(z, sweep.precision),
                "K": "" if K is None else str(K), "points": str(len(points)),
                "slope": "" if slope is None else f"{slope:.6f}",
                "err_first": f"{points[0][1]:.6e}" if points else "",
                "err_last": f"{points[-1][1]:.6e}" if points else "",
            })
        for method, rows in per_method.items():
            name = f"{index:02d}-{sweep.name}-{method}.csv"
            files[name] = rows_to_csv(rows, COLUMNS + ("terms_requested",))
    if config.sweeps:
        files["rates.csv"] = rows_to_csv(rate_rows, RATE_COLUMNS)
    summary = {"sweeps": len(config.sweeps), "rows": row_count, "errors": error_count}
    for name, body in files.items():
        (out / name).write_text(body)
    (out / "manifest.md").write_text(_manifest(config, config_text, files, summary, rate_rows))
    return summary


def _manifest(config, config_text, files, summary, rate_rows) -> str:
    lines = [
        "# polyasym report",
        "",
        "## Environment",
        "",
        f"- polyasym {__version__}",
        f"- mpmath {mpmath.__version__}",
        f"- python {platform.python_version()}",
        f"- default precision {config.precision} bits",
        "",
        "## Summary",
        "",
        f"- sweeps: {summary['sweeps']}",
        f"- rows: {summary['rows']}",
        f"- error rows: {summary['errors']}",
        "",
    ]
    if rate_rows:
        lines += ["## Rate fits (slope of log2 rel_err against log2 n)", "",
                  "| sweep | family | method | mu | z | K | points | slope |",
                  "|---|---|---|---|---|---|---|---|"]
        for r in rate_rows:
            mu = r["mu"] if len(r["mu"]) < 24 else r["mu"][:20] + "..."
            z = r["z"] if len(r["z"]) < 24 else r["z"][:20] + "..."
            lines.append(f"| {r['sweep']} | {r['family']} | {r['method']} | {mu} | {z} | "
                         f"{r['K']} | {r['points']} | {r['slope']} |")
        lines.append("")
    lines += ["## Files", ""]
    for name in sorted(files):
        digest = hashlib.sha256(files[name].encode()).hexdigest()
        lines.append(f"- {name} sha256:{digest}")
    lines += ["", "## Config", "", "```", config_text.rstrip("\n"), "```", ""]
    return "\n".join(lines)
