"""Command-line front end.

    dtnlab {spectrum,sweep,verify,converge} [--config PATH] [--jobs N]
           [--seed N] [--out PATH] [--format json|csv|plotdata]

Scenarios are INI files; see README.md for the grammar. Exit codes: 0 all
asserted checks pass, 1 a check failed, 2 configuration error, 3 I/O error.
"""

import argparse
import configparser
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from . import __version__, dtn, fixtures, verify
from .converge import LADDER, run_converge
from .eigensolve import problem_spectrum
from .errors import (AssemblyFailure, ConfigError, DtnLabError, InvalidArgument, InvalidDomain,
                     InvalidMass)
from .inertia import inertia_sweep
from .mesh import assemble, build_graph, build_grid, build_interval, read_graph, read_mask
from .tolerances import DEFAULT, Tolerances

EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3
COMMANDS = ("spectrum", "sweep", "verify", "converge")
FORMATS = ("json", "csv", "plotdata")
CSV_HEADER = ("check", "lambda", "status", "lhs", "rhs", "residual")
COUNTS_HEADER = ("lambda", "N_N", "N_D")


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

def _floats(text):
    return [float(tok) for tok in text.replace(",", " ").split()]


def _ints(text):
    return [int(tok) for tok in text.replace(",", " ").split()]


def _bool(text):
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


_TOL_TYPES = {f.name: (int if f.type in (int, "int") else float) for f in fields(Tolerances)}

SCHEMA = {
    "domain": {"kind": str, "name": str, "seed": int, "n": int, "h": float, "both_ends": _bool,
               "rows": int, "cols": int, "mask": Path, "graph": Path},
    "form": {"shift": float, "mass_mode": str},
    "run": {"lambdas": _floats, "count": int, "mu_from": float, "mu_to": float, "steps": int,
            "max_depth": int, "k_max": int, "n_samples": int, "seed": int, "n_probes": int,
            "n_intervals": int, "eig_limit": int, "n_filonov": int, "n_monotone": int,
            "continuum": _bool, "ladder": _ints, "dirichlet_rel": float, "neumann_rel": float},
    "tolerances": _TOL_TYPES,
    "output": {"path": Path, "format": str},
}

FIXTURE_NAMES = ("p3", "p3_triangle", "interval10", "grid8", "grid10", "lshape10", "random")


@dataclass
class ScenarioConfig:
    domain: dict = field(default_factory=lambda: {"kind": "fixture", "name": "p3"})
    form: dict = field(default_factory=dict)
    run: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)

    def tol(self):
        return DEFAULT.updated(**self.tolerances)

    def echo(self):
        out = {}
        for section in ("domain", "form", "run", "output"):
            out[section] = {k: (str(v) if isinstance(v, Path) else v)
                            for k, v in sorted(getattr(self, section).items())}
        out["tolerances"] = self.tol().as_dict()
        return out


def parse_config(text, base=Path(".")):
    """INI text -> ScenarioConfig. Unknown sections or keys are errors;
    relative file paths are taken from ``base``."""
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"unreadable config: {exc}") from None
    cfg = ScenarioConfig(domain={})
    for section in cp.sections():
        if section not in SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        target = getattr(cfg, section)
        for key, raw in cp.items(section):
            conv = SCHEMA[section].get(key)
            if conv is None:
                raise ConfigError(f"unknown key {key!r} in [{section}]")
            try:
                val = conv(raw)
            except ValueError as exc:
                raise ConfigError(f"bad value for {section}.{key}: {exc}") from None
            if conv is Path and not val.is_absolute():
                val = base / val
            target[key] = val
    if not cfg.domain:
        cfg.domain = {"kind": "fixture", "name": "p3"}
    _validate(cfg)
    return cfg


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text, base=path.parent)


def _validate(cfg):
    d = cfg.domain
    kind = d.get("kind", "fixture")
    if kind not in ("fixture", "interval", "grid", "graph"):
        raise ConfigError(f"domain.kind must be fixture, interval, grid or graph, not {kind!r}")
    if kind == "fixture" and d.get("name", "p3") not in FIXTURE_NAMES:
        raise ConfigError(f"domain.name must be one of {FIXTURE_NAMES}")
    for key in ("mask", "graph"):
        if key in d and not d[key].is_file():
            raise ConfigError(f"domain.{key}: no such file {d[key]}")
    if kind == "graph" and "graph" not in d:
        raise ConfigError("domain.kind = graph needs domain.graph")
    if kind == "interval" and "n" not in d:
        raise ConfigError("domain.kind = interval needs domain.n")
    if kind == "grid" and "mask" not in d and not ("rows" in d and "cols" in d):
        raise ConfigError("domain.kind = grid needs rows and cols, or a mask file")
    f = cfg.form
    if f.get("shift", 1.0) < 0:
        raise ConfigError("form.shift must be >= 0")
    if f.get("mass_mode", "identity") not in ("identity", "lumped"):
        raise ConfigError("form.mass_mode must be identity or lumped")
    r = cfg.run
    for key in ("count", "steps", "k_max", "n_samples", "n_probes", "eig_limit",
                "n_filonov", "n_monotone"):
        if key in r and r[key] < 1:
            raise ConfigError(f"run.{key} must be >= 1")
    for key in ("n_intervals", "max_depth"):
        if key in r and r[key] < 0:
            raise ConfigError(f"run.{key} must be >= 0")
    if "steps" in r and r["steps"] < 2:
        raise ConfigError("run.steps must be >= 2")
    if "mu_from" in r and "mu_to" in r and not r["mu_from"] < r["mu_to"]:
        raise ConfigError("run.mu_from must be below run.mu_to")
    if any(m < 2 for m in r.get("ladder", [2])):
        raise ConfigError("run.ladder entries must be >= 2")
    for key, val in cfg.tolerances.items():
        if not val > 0:
            raise ConfigError(f"tolerances.{key} must be positive")
    if cfg.output.get("format", "json") not in FORMATS:
        raise ConfigError(f"output.format must be one of {FORMATS}")


def build_domain(cfg):
    d = cfg.domain
    kind = d.get("kind", "fixture")
    if kind == "fixture":
        name = d.get("name", "p3")
        if name == "random":
            return fixtures.random_graph(d.get("seed", 0))
        return fixtures.standard_set()[name]
    if kind == "interval":
        n = d["n"]
        return build_interval(n, d.get("h", 1.0 / max(n - 1, 1)), both_ends=d.get("both_ends", False))
    if kind == "grid":
        mask = read_mask(d["mask"]) if "mask" in d else None
        rows, cols = mask.shape if mask is not None else (d["rows"], d["cols"])
        return build_grid(rows, cols, mask=mask, h=d.get("h"))
    return read_graph(d["graph"])


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

def _plain(obj):
    """numpy scalars/arrays and tuples -> JSON-native values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


@dataclass
class Report:
    version: str
    command: str
    config: dict
    fixture: dict
    checks: list = field(default_factory=list)
    spectra: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)

    def __post_init__(self):
        self.checks = [c if isinstance(c, verify.CheckResult) else verify.CheckResult.from_dict(c)
                       for c in self.checks]
        self.checks = [verify.CheckResult.from_dict(_plain(c.to_dict())) for c in self.checks]
        for name in ("config", "fixture", "spectra", "data", "timing"):
            setattr(self, name, _plain(getattr(self, name)))

    @property
    def passed(self):
        return all(c.passed or not c.asserted for c in self.checks)

    def failures(self):
        return [c for c in self.checks if c.asserted and not c.passed]

    def to_dict(self):
        d = asdict(self)
        d["checks"] = [c.to_dict() for c in self.checks]
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, d):
        return cls(**d)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    if isinstance(v, float):
        return repr(v)
    return v


def report_csv(report):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for c in report.checks:
        lam = repr(c.lam) if c.lam is not None else (
            f"{c.interval[0]!r}..{c.interval[1]!r}" if c.interval else "")
        w.writerow((c.name, lam, c.status, _cell(c.lhs), _cell(c.rhs), _cell(c.residual)))
    return buf.getvalue()


def _rows_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def plotdata_paths(path):
    path = Path(path)
    stem = path.with_suffix("") if path.suffix else path
    return stem.with_name(stem.name + ".trace.csv"), stem.with_name(stem.name + ".counts.csv")


def emit(report, fmt, path=None, stream=None):
    """Write the report. ``plotdata`` needs ``path`` and writes
    ``<stem>.trace.csv`` (mu,branch,nu,flag) and ``<stem>.counts.csv``
    (lambda,N_N,N_D); the trace file is only written when the report has one."""
    if fmt not in FORMATS:
        raise ConfigError(f"unknown format {fmt!r}")
    if fmt == "plotdata":
        if path is None:
            raise ConfigError("plotdata needs --out")
        if "counts" not in report.data:
            raise ConfigError(f"command {report.command!r} produces no plot data")
        trace_path, counts_path = plotdata_paths(path)
        written = []
        if "trace" in report.data:
            trace_path.write_text(_rows_csv(dtn.TRACE_HEADER, report.data["trace"]))
            written.append(trace_path)
        counts_path.write_text(_rows_csv(COUNTS_HEADER, report.data["counts"]))
        written.append(counts_path)
        return written
    text = report.to_json() if fmt == "json" else report_csv(report)
    if path is None:
        (stream or sys.stdout).write(text)
        return []
    Path(path).write_text(text)
    return [Path(path)]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _fixture_summary(domain, split):
    return {"kind": domain.kind, "n": int(domain.node_count), "interior": int(split.interior.size),
            "boundary": int(split.boundary.size),
            "boundary_free_components": int(len(domain.boundary_free_components))}


def _spectra(form, split, tol, count):
    return {p: problem_spectrum(form, split, p, tol).values[:count].tolist()
            for p in ("neumann", "dirichlet")}


def _counts(form, split, lams, tol, jobs):
    nn = inertia_sweep(form, split, "neumann", lams, tol, jobs)
    nd = inertia_sweep(form, split, "dirichlet", lams, tol, jobs)
    return [[lam, a[1], b[1]] for lam, a, b in zip(lams, nn, nd)]


def crossing_inventory(form, split, trace, mu_from, mu_to, tol):
    """Every eigenvalue in the window must own ``n_D`` rising and ``n_N``
    falling zero crossings, and every crossing must bracket an eigenvalue."""
    events = trace.crossings()
    eigs = [lam for lam in verify.eigen_probes(form, split, limit=form.n, tol=tol)
            if mu_from < lam < mu_to]
    used = set()
    problems = []
    table = []
    for lam in eigs:
        mult = verify.multiplicities(form, split, lam, tol)
        mine = [k for k, e in enumerate(events) if e[1] <= lam <= e[2]]
        used.update(mine)
        rising = sum(events[k][3] == "-+" for k in mine)
        falling = sum(events[k][3] == "+-" for k in mine)
        table.append({"lambda": lam, "rising": rising, "falling": falling,
                      "n_D": mult.dirichlet, "n_N": mult.neumann})
        if (rising, falling) != (mult.dirichlet, mult.neumann):
            problems.append(f"lambda={lam!r}: {rising} rising/{falling} falling, "
                            f"expected {mult.dirichlet}/{mult.neumann}")
    stray = [events[k] for k in range(len(events)) if k not in used]
    if stray:
        problems.append(f"{len(stray)} crossings bracket no eigenvalue")
    ok = not problems
    return verify.CheckResult(
        "crossing_inventory", verify.PASS if ok else verify.FAIL, interval=[mu_from, mu_to],
        lhs=len(events), rhs=sum(t["rising"] + t["falling"] for t in table) if ok else None,
        terms={"eigenvalues": table}, diagnostics="; ".join(problems))


def run_scenario(cfg, command, jobs=1, seed=None):
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}")
    tol = cfg.tol()
    r = cfg.run
    seed = r.get("seed", 0) if seed is None else seed
    timing = {}
    t0 = time.perf_counter()

    if command == "converge":
        res = run_converge(ladder=r.get("ladder", LADDER), shift=cfg.form.get("shift", 1.0),
                           count=r.get("count", 5), k_max=r.get("k_max", 10), tol=tol,
                           dirichlet_rel=r.get("dirichlet_rel", 0.01),
                           neumann_rel=r.get("neumann_rel", 0.03))
        timing.update(res.timing)
        timing["total"] = time.perf_counter() - t0
        data = {"rows": res.rows, "order": res.order}
        fixture = {"kind": "unit_square", "ladder": res.ladder}
        return Report(__version__, command, cfg.echo(), fixture, res.checks, {}, data, timing)

    domain = build_domain(cfg)
    form, split = assemble(domain, shift=cfg.form.get("shift", 1.0),
                           mass_mode=cfg.form.get("mass_mode", "identity"))
    timing["assemble"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    count = r.get("count", 10)
    spectra = _spectra(form, split, tol, count)
    timing["spectra"] = time.perf_counter() - t0
    checks = []
    data = {}
    t0 = time.perf_counter()
    if command == "spectrum":
        eigs = sorted(set(spectra["neumann"]) | set(spectra["dirichlet"]))
        lams = sorted(set(r.get("lambdas", [])) | set(eigs))
        data["counts"] = _counts(form, split, lams, tol, jobs)
        if r.get("lambdas"):
            dtn_rows = []
            for lam in r["lambdas"]:
                try:
                    s = dtn.schur_dtn(form, split, lam, tol)
                    dtn_rows.append({"lambda": lam, "S": s.S, "condition": s.condition})
                except DtnLabError as exc:
                    dtn_rows.append({"lambda": lam, "S": None, "error": str(exc)})
            data["dtn"] = dtn_rows
    elif command == "sweep":
        mu_from, mu_to = r.get("mu_from", 0.5), r.get("mu_to", 4.5)
        if not mu_from < mu_to:
            raise ConfigError("run.mu_from must be below run.mu_to")
        trace = dtn.blambda_branches(form, split, mu_from, mu_to, r.get("steps", 200), tol,
                                     max_depth=r.get("max_depth", 12), jobs=jobs)
        data["trace"] = trace.rows()
        data["crossings"] = [list(e) for e in trace.crossings()]
        data["counts"] = _counts(form, split, np.unique(trace.mu).tolist(), tol, jobs)
        checks.append(crossing_inventory(form, split, trace, mu_from, mu_to, tol))
    else:
        opts = {key: r[key] for key in ("n_probes", "n_intervals", "eig_limit", "n_samples",
                                        "n_filonov", "n_monotone", "k_max", "continuum") if key in r}
        checks = verify.run_suite(form, split, seed=seed, tol=tol, **opts)
    timing[command] = time.perf_counter() - t0
    return Report(__version__, command, cfg.echo(), _fixture_summary(domain, split), checks,
                  spectra, data, timing)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="scenario INI file")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for shift sweeps")
    common.add_argument("--seed", type=int, help="overrides run.seed")
    common.add_argument("--out", type=Path, help="output path (stdout when omitted)")
    common.add_argument("--format", choices=FORMATS, help="json (default), csv or plotdata")
    p = argparse.ArgumentParser(prog="dtnlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"dtnlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return p


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = load_config(args.config) if args.config else ScenarioConfig()
        if args.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        report = run_scenario(cfg, args.command, jobs=args.jobs, seed=args.seed)
        fmt = args.format or cfg.output.get("format", "json")
        out = args.out or cfg.output.get("path")
    except (ConfigError, InvalidArgument, InvalidDomain, AssemblyFailure, InvalidMass, KeyError) as exc:
        print(f"dtnlab: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        emit(report, fmt, out)
    except ConfigError as exc:
        print(f"dtnlab: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"dtnlab: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    failed = report.failures()
    for c in failed:
        print(f"dtnlab: FAILED {json.dumps(c.to_dict(), sort_keys=True)}", file=sys.stderr)
    return EXIT_CHECK if failed else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
