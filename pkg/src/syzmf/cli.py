"""Command-line front end: ``syzmf {build,verify,enumerate,eval}``."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import disks, toric
from .matfac import (
    FactorPair,
    MatrixFactorization,
    RingMatrix,
    mf_from_json,
    mf_from_point,
    mf_koszul,
    mf_tensor,
    mf_to_json,
    mf_to_latex,
    mf_verify,
    telescoping_pairs,
)
from .ring import DimensionError, lift, lp_subst_point
from .syz import floer_square_check, m1_eval, psi_to_factorization

SURFACE_CHOICES = ("p1", "p2", "p1xp1", "bl1p2", "bl2p2")
PIPELINES = ("disks", "koszul", "from-point")
DISK_SURFACES = ("p1", "p2", "p1xp1")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    surface: str = "p2"
    pipeline: str = "disks"
    qval: float | None = None
    samples: int = 100
    tolerance: float = 1e-9
    output: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.surface not in SURFACE_CHOICES:
            raise UsageError(f"unknown surface {self.surface!r}")
        if self.pipeline not in PIPELINES:
            raise UsageError(f"unknown pipeline {self.pipeline!r}")
        if not self.tolerance > 0:
            raise UsageError("tolerance must be positive")
        if self.samples < 1:
            raise UsageError("samples must be at least 1")
        if self.qval is not None and not 0 < self.qval < 1:
            raise UsageError(f"q must lie in (0, 1), got {self.qval}")


def surface_data(surface):
    pd = toric.surface_catalogue(surface)
    W = toric.superpotential(pd)
    z0 = toric.reference_point(toric.center_of_mass(pd))
    return pd, W, z0


def _p1_disk_factorization():
    return psi_to_factorization(disks.p1_catalogue().psi(), None)


def _lift_mf(m, n, index):
    def up(p):
        return lift(p, n, [index])

    F = RingMatrix([[up(e) for e in row] for row in m.F.to_lists()])
    G = RingMatrix([[up(e) for e in row] for row in m.G.to_lists()])
    return MatrixFactorization(m.r, F, G, None if m.lam is None else up(m.lam))


def build_factorization(cfg: RunConfig) -> MatrixFactorization:
    pd, W, z0 = surface_data(cfg.surface)
    lam = _lambda_at(W, z0)
    if cfg.pipeline == "from-point":
        return mf_from_point(W, z0)
    if cfg.pipeline == "disks":
        if cfg.surface not in DISK_SURFACES:
            raise UsageError(f"the disks pipeline supports {', '.join(DISK_SURFACES)} only")
        if cfg.surface == "p1xp1":
            a = _lift_mf(_p1_disk_factorization(), 2, 0)
            b = _lift_mf(_p1_disk_factorization(), 2, 1)
            return mf_tensor(a, b).with_lambda(lam)
        return psi_to_factorization(disks.catalogue_for(cfg.surface).psi(), lam)
    return mf_koszul(koszul_pairs(cfg.surface), lam)


def koszul_pairs(surface):
    """Factor pairs read off the disk factorization when there is one, else the telescoping pairs."""
    if surface in ("p1", "p2"):
        m = psi_to_factorization(disks.catalogue_for(surface).psi())
        if m.r == 1:
            return [FactorPair(m.F[0, 0], m.G[0, 0])]
        return [FactorPair(m.F[0, 0], m.G[0, 0]), FactorPair(m.F[0, 1], m.G[1, 0])]
    if surface == "p1xp1":
        m = _p1_disk_factorization()
        return [FactorPair(lift(m.F[0, 0], 2, [i]), lift(m.G[0, 0], 2, [i])) for i in (0, 1)]
    _, W, z0 = surface_data(surface)
    return telescoping_pairs(W, z0)[0]


def _lambda_at(W, z0):
    out = W
    for i, p in enumerate(z0):
        out = lp_subst_point(out, i, p)
    return out


# -- emitters ------------------------------------------------------------------------

def _dump_json(obj):
    return json.dumps(obj, indent=2) + "\n"


def render_mf(m, fmt):
    if fmt == "json":
        return _dump_json(mf_to_json(m))
    if fmt == "latex":
        return mf_to_latex(m) + "\n"
    lines = [f"r = {m.r}", f"lambda = {m.lam}", "F:"]
    lines += ["  [" + ", ".join(str(e) for e in row) + "]" for row in m.F.to_lists()]
    lines.append("G:")
    lines += ["  [" + ", ".join(str(e) for e in row) + "]" for row in m.G.to_lists()]
    return "\n".join(lines) + "\n"


def _emit(text, name, ext):
    sys.stdout.write(text)
    outdir = os.environ.get("SYZ_MF_OUTPUT_DIR")
    if outdir:
        os.makedirs(outdir, exist_ok=True)
        path = os.path.join(outdir, f"{name}.{ext}")
        with open(path, "w") as fh:
            fh.write(text)
        print(f"wrote {path}", file=sys.stderr)


_EXT = {"json": "json", "latex": "tex", "text": "txt"}


# -- commands ------------------------------------------------------------------------

def cmd_build(cfg: RunConfig):
    m = build_factorization(cfg)
    _emit(render_mf(m, cfg.output), f"build-{cfg.surface}-{cfg.pipeline}", _EXT[cfg.output])
    return EXIT_OK


def _report_text(report, surface):
    lines = [f"surface: {surface}", f"passed: {report.passed}", f"lambda: {report.lam}"]
    for blk, i, j, p in report.failures:
        lines.append(f"residual {blk}[{i},{j}] = {p}")
    return "\n".join(lines) + "\n"


def cmd_verify(cfg: RunConfig, path):
    try:
        if path == "-":
            data = sys.stdin.read()
        else:
            with open(path) as fh:
                data = fh.read()
        m = mf_from_json(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read factorization from {path}: {exc}") from None
    _, W, _ = surface_data(cfg.surface)
    if m.n != W.n:
        raise UsageError(f"factorization has {m.n} variables, {cfg.surface} has {W.n}")
    report = mf_verify(m, W)
    out = _dump_json(report.to_json()) if cfg.output == "json" else _report_text(report, cfg.surface)
    _emit(out, f"verify-{cfg.surface}", "json" if cfg.output == "json" else "txt")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_enumerate(cfg: RunConfig, pair=None):
    if cfg.surface not in ("p1", "p2"):
        raise UsageError("enumerate supports p1 and p2")
    labels = disks.P1_LABELS if cfg.surface == "p1" else disks.P2_LABELS
    cat = disks.catalogue_for(cfg.surface)
    if pair is not None:
        try:
            p, q = disks.parse_pair(pair, labels)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        cat = [r for r in cat if (r.p, r.q) == (p, q)]
    recs = disks.catalogue_to_json(cat, labels)
    if cfg.output == "json":
        out = _dump_json(recs)
    else:
        out = "".join(f"{r['p']} {r['q']} v={r['v']} sign={r['sign']:+d} {'/'.join(r['components'])}\n" for r in recs)
    _emit(out, f"enumerate-{cfg.surface}", "json" if cfg.output == "json" else "txt")
    return EXIT_OK


def _cjson(c):
    return [c.real, c.imag]


def cmd_eval(cfg: RunConfig, x=None, y=None):
    if cfg.surface not in ("p1", "p2"):
        raise UsageError("eval supports p1 and p2")
    cat = disks.catalogue_for(cfg.surface)
    report = floer_square_check(cat, cfg.samples, cfg.seed, cfg.tolerance, qval=cfg.qval)
    out = {"surface": cfg.surface, "seed": cfg.seed, "q": cfg.qval, "floer": report.to_json()}
    passed = report.passed
    if x is not None:
        if cfg.qval is None:
            raise UsageError("--x needs --q")
        t = -math.log(cfg.qval)
        xs = [float(Fraction(a)) * t for a in x]
        ys = [float(a) for a in (y or [0.0] * cat.n)]
        if len(xs) != cat.n or len(ys) != cat.n:
            raise UsageError(f"{cfg.surface} needs {cat.n} coordinates for --x and --y")
        try:
            m1 = m1_eval(cat, cfg.qval, xs, ys)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        out["point"] = {"x": xs, "y": ys, "m1": [[_cjson(c) for c in row] for row in m1.tolist()]}
    if cfg.output == "json":
        text = _dump_json(out)
    else:
        text = (
            f"surface: {cfg.surface}\nsamples: {report.samples}\nmax residual: {report.max_residual:.3e}\n"
            f"max oracle error: {report.max_oracle_error:.3e}\npassed: {passed}\n"
        )
        if "point" in out:
            for row in out["point"]["m1"]:
                text += "  " + "  ".join(f"{a:+.12g}{b:+.12g}j" for a, b in row) + "\n"
    _emit(text, f"eval-{cfg.surface}", "json" if cfg.output == "json" else "txt")
    return EXIT_OK if passed else EXIT_FAIL


# -- argument parsing ------------------------------------------------------------------

def _fraction_list(text):
    try:
        return [Fraction(a) for a in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated fractions, got {text!r}") from None


def _float_list(text):
    try:
        return [float(a) for a in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", default="p2", type=str.lower, choices=SURFACE_CHOICES)
    common.add_argument("--output", default=None, choices=("json", "latex", "text"))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tolerance", type=float, default=1e-9)

    parser = argparse.ArgumentParser(prog="syzmf", description="Matrix factorizations from disk counts via the SYZ transform.")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="construct and emit a matrix factorization")
    b.add_argument("--pipeline", default="disks", choices=PIPELINES)

    v = sub.add_parser("verify", parents=[common], help="check M^2 = (W - lambda) Id for a JSON factorization")
    v.add_argument("matrix", help="factorization JSON file, or - for stdin")

    e = sub.add_parser("enumerate", parents=[common], help="dump the disk catalogue")
    e.add_argument("--pair", default=None, help="restrict to one ordered pair, e.g. ++,-+")

    ev = sub.add_parser("eval", parents=[common], help="numeric Floer-square and oracle checks")
    ev.add_argument("--q", type=float, default=None)
    ev.add_argument("--samples", type=int, default=100)
    ev.add_argument("--x", type=_fraction_list, default=None, help="fiber point as fractions of t, e.g. 1/4")
    ev.add_argument("--y", type=_float_list, default=None, help="connection phases")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            surface=args.surface,
            pipeline=getattr(args, "pipeline", "disks"),
            qval=getattr(args, "q", None),
            samples=getattr(args, "samples", 100),
            tolerance=args.tolerance,
            output=args.output or "json",
            seed=args.seed,
        )
        if args.command == "build":
            return cmd_build(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args.matrix)
        if args.command == "enumerate":
            return cmd_enumerate(cfg, args.pair)
        return cmd_eval(cfg, args.x, args.y)
    except (UsageError, KeyError, ValueError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
