"""Command-line front end: ``python -m parazeta <area> <action> [options]``.

Exit codes: 0 when the command ran and every check passed, 1 when a check
failed, 2 for usage or configuration errors.  Reports go to standard output
(or ``--output``) as JSON with sorted keys, or CSV where a table makes sense.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import acceptance, eisenstein, lattice, periods, rootdata, truncomb

__all__ = ["run", "main", "RunConfig", "build_parser"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    area: str
    action: str
    seed: int = 0
    threads: int = 1
    output: str | None = None
    fmt: str = "json"
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")
        if self.fmt not in ("json", "csv"):
            raise UsageError("--format must be json or csv")
        for key in ("tol", "threshold"):
            if key in self.options and self.options[key] is not None and not self.options[key] > 0:
                raise UsageError(f"--{key} must be positive")


def _jsonable(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    return obj


def _emit(cfg: RunConfig, report: dict, rows: list[dict] | None = None) -> None:
    report = dict(report, seed=cfg.seed)
    if cfg.fmt == "csv" and rows:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _jsonable(v) for k, v in r.items()})
        text = buf.getvalue()
    else:
        text = json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n"
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# zeta
# ---------------------------------------------------------------------------

def _spec_from(opts) -> periods.ZetaSpec:
    if opts.get("spec"):
        return periods.ZetaSpec.from_json(Path(opts["spec"]).read_text())
    if not opts.get("group") or not opts.get("parabolic"):
        raise UsageError("give --spec FILE or both --group and --parabolic")
    try:
        name = periods.preset_name(opts["group"], opts["parabolic"])
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    return periods.load_preset(name)


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


def cmd_zeta(cfg: RunConfig) -> int:
    o = cfg.options
    if cfg.action == "calibrate":
        if o.get("all"):
            names = sorted(periods.PRESETS)
        else:
            if not o.get("group") or not o.get("parabolic"):
                raise UsageError("give --all or both --group and --parabolic")
            try:
                names = [periods.preset_name(o["group"], o["parabolic"])]
            except KeyError as exc:
                raise UsageError(str(exc)) from None
        out_dir = Path(o.get("out_dir") or ".")
        results = []
        worst = 0.0
        for name in names:
            label, alpha_p = periods.PRESETS[name]
            spec, dev = periods.calibrate_spec(label, alpha_p, name=name, seed=cfg.seed)
            if o.get("out_dir"):
                out_dir.mkdir(parents=True, exist_ok=True)
                (out_dir / (name.replace("/", "_") + ".json")).write_text(spec.to_json() + "\n")
            results.append({"name": name, "spec": spec.to_dict(), "fe_deviation": dev})
            worst = max(worst, dev)
        _emit(cfg, {"calibrations": results}, [
            {"name": r["name"], "a": r["spec"]["norm"]["a"], "b": r["spec"]["norm"]["b"],
             "clearing": r["spec"]["norm"]["clearing"], "fe_deviation": r["fe_deviation"]} for r in results])
        return 0 if worst < 1e-6 else 1

    spec = _spec_from(o)
    if cfg.action == "eval":
        sigmas = [_parse_complex(x) for x in (o.get("sigma") or [])]
        if not sigmas:
            raise UsageError("zeta eval needs at least one --sigma")
        vals = [periods.eval_zeta_GP(spec, z) for z in sigmas]
        rows = [{"sigma_re": z.real, "sigma_im": z.imag, "re": v.real, "im": v.imag}
                for z, v in zip(sigmas, vals)]
        _emit(cfg, {"spec": spec.to_dict(), "values": rows}, rows)
        return 0
    if cfg.action == "fe":
        rep = periods.fe_check(spec, n_samples=o.get("samples") or 20, seed=cfg.seed,
                               threshold=o.get("threshold") or 1e-6)
        rows = [{"sigma_re": z.real, "sigma_im": z.imag, "abs_dev": a, "rel_dev": r}
                for z, a, r in zip(rep.samples, rep.abs_deviation, rep.rel_deviation)]
        _emit(cfg, rep.to_dict(), rows)
        return 0 if rep.passed else 1
    if cfg.action == "zeros":
        rep = periods.find_zeros(spec, t_max=o.get("tmax") or 15.0, step=o.get("step") or 0.01,
                                 tol=o.get("tol") or 1e-6)
        rows = [{"re": z.real, "im": z.imag, "residual": r, "offset": off}
                for z, r, off in zip(rep.zeros, rep.residuals, rep.offsets)]
        _emit(cfg, rep.to_dict(), rows)
        return 0 if rep.passed else 1
    raise UsageError(f"unknown zeta action {cfg.action!r}")


# ---------------------------------------------------------------------------
# epstein
# ---------------------------------------------------------------------------

def cmd_epstein(cfg: RunConfig) -> int:
    o = cfg.options
    if cfg.action == "eval":
        z = complex(*o["z"]) if o.get("z") else 1j
        s = _parse_complex(o.get("s") or "2")
        out = {"z": z, "s": s, "fourier": eisenstein.epstein_fourier(z, s)}
        if s.real > 1:
            out["direct"] = eisenstein.epstein_direct(z, s)
            out["relative_difference"] = abs(out["direct"] - out["fourier"]) / abs(out["direct"])
        _emit(cfg, out, [{k: v for k, v in out.items()}])
        return 0
    if cfg.action == "rs-check":
        tol = o.get("tol") or 1e-5
        rows = []
        for s in (1.5, 2.0, 2.5 + 1j):
            for T in (1.0, 2.0, 5.0):
                geo = eisenstein.truncated_integral_geo(s, T)
                closed = eisenstein.truncated_integral_closed(s, T)
                rows.append({"s_re": complex(s).real, "s_im": complex(s).imag, "T": T,
                             "geo_re": geo.real, "geo_im": geo.imag,
                             "closed_re": closed.real, "closed_im": closed.imag,
                             "deviation": abs(geo - closed)})
        worst = max(r["deviation"] for r in rows)
        _emit(cfg, {"grid": rows, "max_deviation": worst, "tolerance": tol, "passed": worst <= tol}, rows)
        return 0 if worst <= tol else 1
    raise UsageError(f"unknown epstein action {cfg.action!r}")


# ---------------------------------------------------------------------------
# lattice
# ---------------------------------------------------------------------------

def _basis_from(o) -> lattice.LatticeBasis:
    if o.get("basis"):
        b = o["basis"]
        return lattice.LatticeBasis((b[0], b[1]), (b[2], b[3]))
    if o.get("point"):
        x, y = o["point"]
        return lattice.LatticeBasis.from_point(complex(x, y))
    raise UsageError("give --basis b11 b12 b21 b22 or --point x y")


def cmd_lattice(cfg: RunConfig) -> int:
    o = cfg.options
    if cfg.action == "bridge":
        kinds = ["micro", "fundamental", "truncation"] if o.get("kind") in (None, "all") else [o["kind"]]
        n = o.get("samples") or 10_000
        rng = np.random.default_rng(cfg.seed)
        counts = {k: {"checked": 0, "skipped": 0, "violations": 0, "lhs_ones": 0} for k in kinds}
        for _ in range(n):
            g = lattice.random_group_point(rng)
            p1 = float(rng.uniform(0.0, 1.5))
            for k in kinds:
                if k == "micro":
                    r = lattice.micro_bridge_check(g, p1)
                    lhs = r.lhs
                elif k == "fundamental":
                    r = lattice.fundamental_relation_check(g, p1)
                    lhs = r.lhs
                else:
                    r = lattice.arthur_truncation_one(g, p1)
                    lhs = r.truncated_sum
                c = counts[k]
                c["checked"] += 1
                c["skipped"] += int(r.skipped)
                c["violations"] += int(not r.holds)
                c["lhs_ones"] += int(lhs == 1 and not r.skipped)
        ok = all(c["violations"] == 0 for c in counts.values())
        _emit(cfg, {"samples": n, "results": counts, "passed": ok},
              [dict(kind=k, **v) for k, v in counts.items()])
        return 0 if ok else 1

    lat = _basis_from(o)
    if cfg.action == "h0":
        out = {"h0": lattice.h0(lat, o.get("tol") or 1e-12), "degree": lattice.degree(lat)}
        _emit(cfg, out, [out])
        return 0
    if cfg.action == "rr":
        d = lattice.rr_defect(lat)
        tol = o.get("tol") or 1e-9
        out = {"h0": lattice.h0(lat), "h0_dual": lattice.h0(lattice.dual_lattice(lat)),
               "degree": lattice.degree(lat), "defect": d, "tolerance": tol, "passed": abs(d) <= tol}
        _emit(cfg, out, [out])
        return 0 if out["passed"] else 1
    if cfg.action == "hn":
        poly = lattice.hn_polygon(lat)
        out = {"breakpoints": [list(p) for p in poly.breakpoints], "concave": poly.is_concave()}
        _emit(cfg, out, [{"r": r, "p": v} for r, v in poly.breakpoints])
        return 0
    if cfg.action == "semistable":
        v = lattice.is_semistable(lat)
        tau, _ = lattice.reduce_to_fundamental_domain(lat.scaled(1 / math.sqrt(lat.volume)))
        out = {"hn_route": v.hn_route, "cusp_route": v.cusp_route, "boundary": v.boundary,
               "reduced_point": [tau.x, tau.y], "agree": v.agree}
        _emit(cfg, out, [out])
        return 0 if v.agree else 1
    raise UsageError(f"unknown lattice action {cfg.action!r}")


# ---------------------------------------------------------------------------
# truncomb / rootdata
# ---------------------------------------------------------------------------

def cmd_truncomb(cfg: RunConfig) -> int:
    o = cfg.options
    if cfg.action != "check":
        raise UsageError(f"unknown truncomb action {cfg.action!r}")
    try:
        rs = rootdata.build_root_system(o.get("type") or "A2")
    except rootdata.ConfigurationError as exc:
        raise UsageError(str(exc)) from None
    names = truncomb.IDENTITIES if o.get("identity") in (None, "all") else [o["identity"]]
    if any(n not in truncomb.IDENTITIES for n in names):
        raise UsageError(f"unknown identity; expected one of {truncomb.IDENTITIES} or all")
    reports = [truncomb.identity_check(rs, n, samples=o.get("samples") or 10_000, seed=cfg.seed)
               for n in names]
    ok = all(r.passed for r in reports)
    _emit(cfg, {"reports": [r.to_dict() for r in reports], "passed": ok},
          [{k: v for k, v in r.to_dict().items() if k != "violations"} for r in reports])
    return 0 if ok else 1


def cmd_rootdata(cfg: RunConfig) -> int:
    if cfg.action != "dump":
        raise UsageError(f"unknown rootdata action {cfg.action!r}")
    try:
        d = rootdata.build_root_system(cfg.options.get("type") or "A2").to_dict()
    except rootdata.ConfigurationError as exc:
        raise UsageError(str(exc)) from None
    _emit(cfg, d)
    return 0


def cmd_acceptance(cfg: RunConfig) -> int:
    which = cfg.options.get("criterion") or "all"
    numbers = sorted(acceptance.CRITERIA) if which == "all" else [int(which)]
    results = []
    for n in numbers:
        r = acceptance.run_criterion(n, seed=cfg.seed)
        print(r.line(), file=sys.stderr)
        results.append(r)
    ok = all(r.passed for r in results)
    _emit(cfg, {"criteria": [r.to_dict() for r in results], "passed": ok},
          [{"number": r.number, "title": r.title, "passed": r.passed} for r in results])
    return 0 if ok else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--output", "-o")
    common.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")

    parser = argparse.ArgumentParser(prog="parazeta", description=__doc__.splitlines()[0])
    areas = parser.add_subparsers(dest="area", required=True)

    z = areas.add_parser("zeta", help="abelian zetas from periods")
    za = z.add_subparsers(dest="action", required=True)
    for name in ("eval", "fe", "zeros", "calibrate"):
        p = za.add_parser(name, parents=[common])
        p.add_argument("--group")
        p.add_argument("--parabolic")
        if name != "calibrate":
            p.add_argument("--spec", help="ZetaSpec JSON file instead of a preset")
    za.choices["eval"].add_argument("--sigma", action="append")
    za.choices["fe"].add_argument("--samples", type=int, default=20)
    za.choices["fe"].add_argument("--threshold", type=float, default=1e-6)
    za.choices["zeros"].add_argument("--tmax", type=float, default=15.0)
    za.choices["zeros"].add_argument("--step", type=float, default=0.01)
    za.choices["zeros"].add_argument("--tol", type=float, default=1e-6)
    za.choices["calibrate"].add_argument("--all", action="store_true")
    za.choices["calibrate"].add_argument("--out-dir")

    e = areas.add_parser("epstein", help="Epstein zeta and truncated integrals")
    ea = e.add_subparsers(dest="action", required=True)
    p = ea.add_parser("eval", parents=[common])
    p.add_argument("--z", type=float, nargs=2, metavar=("X", "Y"))
    p.add_argument("--s")
    p = ea.add_parser("rs-check", parents=[common])
    p.add_argument("--tol", type=float, default=1e-5)

    lat = areas.add_parser("lattice", help="rank-2 lattice checks")
    la = lat.add_subparsers(dest="action", required=True)
    for name in ("h0", "rr", "hn", "semistable"):
        p = la.add_parser(name, parents=[common])
        p.add_argument("--basis", type=float, nargs=4, metavar=("B11", "B12", "B21", "B22"))
        p.add_argument("--point", type=float, nargs=2, metavar=("X", "Y"))
        if name in ("h0", "rr"):
            p.add_argument("--tol", type=float)
    p = la.add_parser("bridge", parents=[common])
    p.add_argument("--kind", choices=["micro", "fundamental", "truncation", "all"], default="all")
    p.add_argument("--samples", type=int, default=10_000)

    t = areas.add_parser("truncomb", help="combinatorial identities")
    ta = t.add_subparsers(dest="action", required=True)
    p = ta.add_parser("check", parents=[common])
    p.add_argument("--type", default="A2")
    p.add_argument("--identity", default="all")
    p.add_argument("--samples", type=int, default=10_000)

    r = areas.add_parser("rootdata", help="root data")
    ra = r.add_subparsers(dest="action", required=True)
    p = ra.add_parser("dump", parents=[common])
    p.add_argument("--type", default="A2")

    a = areas.add_parser("acceptance", help="run the end-to-end acceptance checks")
    aa = a.add_subparsers(dest="action", required=True)
    p = aa.add_parser("run", parents=[common])
    p.add_argument("--criterion", choices=[str(n) for n in range(1, 10)] + ["all"], default="all")
    return parser


_HANDLERS = {"zeta": cmd_zeta, "epstein": cmd_epstein, "lattice": cmd_lattice,
             "truncomb": cmd_truncomb, "rootdata": cmd_rootdata, "acceptance": cmd_acceptance}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    opts = {k: v for k, v in vars(args).items()
            if k not in ("area", "action", "seed", "threads", "output", "fmt")}
    try:
        cfg = RunConfig(args.area, args.action, args.seed, args.threads, args.output, args.fmt, opts)
        periods.set_threads(cfg.threads)
        return _HANDLERS[cfg.area](cfg)
    except (UsageError, FileNotFoundError, json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"parazeta: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
