"""Command-line experiment runner.

Every invocation writes its artifacts plus a manifest.json echoing the
resolved parameters and the sha256 of each artifact. Artifact bytes are
deterministic for identical invocations; only the manifest carries a
timestamp. Exit codes: 0 success, 2 invalid request, 1 computation failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from .errors import ComputationError, ValidationError
from . import evolve as ev
from .functionals import functionals_fragment
from .profile import (
    build_profile,
    derive_constants,
    write_potential_csv,
    write_potential_meta,
    write_profile_csv,
    write_profile_meta,
)
from .spectral import spectral_report
from .stability import find_c0, stability_report, sweep_d2


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_manifest(outdir: Path, command: str, params: dict, artifacts: list[Path]) -> None:
    manifest = {
        "command": command,
        "params": params,
        "created_unix": time.time(),
        "artifacts": {p.name: _sha256(p) for p in sorted(artifacts)},
    }
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _outdir(args) -> Path:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _dump_json(obj: dict, path: Path) -> Path:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    return path


def cmd_profile(args) -> int:
    out = _outdir(args)
    params = derive_constants(args.c, args.k)
    p = build_profile(params, half_width=args.half_width, n=args.n)
    written = [
        write_profile_csv(p, out / "profile.csv"),
        write_profile_meta(p, out / "profile.meta.json"),
        write_potential_csv(params, out / "potential.csv"),
        write_potential_meta(params, out / "potential.meta.json"),
    ]
    _write_manifest(out, "profile", {"c": args.c, "k": args.k, "n": args.n,
                                     "half_width": p.half_width}, written)
    print(f"profile written to {out} (crest {p.phi.max():.8f})")
    return 0


def cmd_spectrum(args) -> int:
    out = _outdir(args)
    params = derive_constants(args.c, 0.0)
    p = build_profile(params, half_width=args.half_width, n=args.n)
    rep = spectral_report(p, matrix_n=args.matrix_n or None)
    written = [_dump_json(rep.to_dict(), out / "spectrum.json")]
    _write_manifest(out, "spectrum", {"c": args.c, "n": args.n,
                                      "matrix_n": args.matrix_n}, written)
    print(f"lambda* = {rep.lambda_star:.10f} in ({rep.lambda0:.6f}, 0); "
          f"theta(0) = {rep.theta_at_zero:.8f}")
    return 0


def cmd_stability(args) -> int:
    out = _outdir(args)
    rep = stability_report(args.c, fd_step=args.fd_step)
    payload = rep.to_dict()
    params = derive_constants(args.c, 0.0)
    payload["functionals"] = functionals_fragment(build_profile(params, n=args.n))
    written = [_dump_json(payload, out / "stability.json")]
    _write_manifest(out, "stability", {"c": args.c, "fd_step": args.fd_step}, written)
    print(f"c = {args.c}: d''(c) = {rep.d2_closed:.6f}, verdict {rep.verdict} "
          f"(c0 = {rep.c0:.7f})")
    return 0


def cmd_find_c0(args) -> int:
    out = _outdir(args)
    res = find_c0()
    written = [_dump_json(res.to_dict(), out / "c0.json")]
    _write_manifest(out, "find-c0", {}, written)
    print(f"c0 = {res.c0:.9f}")
    return 0


def cmd_sweep_d2(args) -> int:
    if args.steps < 1 or not (args.cmin < args.cmax):
        raise ValidationError("sweep needs cmin < cmax and steps >= 1")
    out = _outdir(args)
    cs = [args.cmin + i * (args.cmax - args.cmin) / max(args.steps - 1, 1)
          for i in range(args.steps)]
    rows = sweep_d2(cs, fd_step=args.fd_step, threads=args.threads)
    lines = ["c,Q_closed,d2_closed,d2_fd,verdict"]
    for r in rows:
        lines.append(f"{r.c!r},{r.Q_closed!r},{r.d2_closed!r},{r.d2_fd!r},{r.verdict}")
    path = out / "d2_sweep.csv"
    path.write_text("\n".join(lines) + "\n")
    _write_manifest(out, "sweep-d2", {"cmin": args.cmin, "cmax": args.cmax,
                                      "steps": args.steps}, [path])
    print(f"{len(rows)} rows -> {path}")
    return 0


def _sim_config(args) -> ev.SimConfig:
    base: dict = {}
    if args.config:
        base = ev.parse_config_text(Path(args.config).read_text())
        if "L" in base:
            base["half_width"] = base.pop("L")
    overrides = {
        "c": args.c, "rho": args.rho, "shape": args.shape,
        "half_width": args.half_width, "n": args.n, "dt": args.dt,
        "T": args.T, "stride": args.stride, "seed": args.seed, "k": args.k,
    }
    merged = {**base, **{k: v for k, v in overrides.items() if v is not None}}
    env_seed = os.environ.get("FW_SEED")
    if env_seed is not None:
        merged["seed"] = int(env_seed)
    if "c" not in merged:
        raise ValidationError("evolve needs a wave speed (--c or config file)")
    return ev.SimConfig(**merged)


def cmd_evolve(args) -> int:
    out = _outdir(args)
    config = _sim_config(args)
    trace = ev.run(config)
    path = out / "trace.csv"
    ev.write_trace_csv(trace, path)
    cfg_path = out / "evolve.config"
    cfg_path.write_text(ev.format_config_text(config))
    _write_manifest(out, "evolve",
                    {"blowup_t": trace.blowup_t, "c": config.c, "rho": config.rho,
                     "shape": config.shape, "seed": config.seed, "T": config.T},
                    [path, cfg_path])
    last = trace.rows[-1]
    if trace.blowup_t is not None:
        print(f"blow-up recorded at t = {trace.blowup_t}")
    else:
        print(f"T = {last[0]}: dist = {last[1]:.3e}, dQ_rel = {last[6]:.3e}")
    return 0


def cmd_all(args) -> int:
    out = _outdir(args)
    ns = argparse.Namespace(**vars(args))
    cmd_profile(ns)
    cmd_spectrum(ns)
    cmd_stability(ns)
    cmd_find_c0(ns)
    sweep_ns = argparse.Namespace(**{**vars(args), "cmin": 1.05, "cmax": 1.33,
                                     "steps": args.steps})
    cmd_sweep_d2(sweep_ns)
    cmd_evolve(ns)
    # aggregate manifest covering every artifact in the run directory
    artifacts = [p for p in out.iterdir() if p.name != "manifest.json"]
    _write_manifest(out, "all", {"c": args.c}, artifacts)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fw", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, c_required=True):
        if c_required:
            p.add_argument("--c", type=float, required=True, help="wave speed")
        p.add_argument("--out-dir", default="./out")
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    p = sub.add_parser("profile", help="solitary-wave profile and potential artifacts")
    common(p)
    p.add_argument("--k", type=float, default=0.0, help="background state")
    p.add_argument("--n", type=int, default=4096)
    p.add_argument("--half-width", type=float, default=None)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("spectrum", help="linearized-operator spectrum report")
    common(p)
    p.add_argument("--n", type=int, default=4096)
    p.add_argument("--half-width", type=float, default=None)
    p.add_argument("--matrix-n", type=int, default=2048,
                   help="dense cross-check size; 0 disables it")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("stability", help="stability index report at one speed")
    common(p)
    p.add_argument("--n", type=int, default=4096)
    p.add_argument("--fd-step", type=float, default=1e-4)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("find-c0", help="critical speed where d'' changes sign")
    common(p, c_required=False)
    p.set_defaults(func=cmd_find_c0)

    p = sub.add_parser("sweep-d2", help="stability index across a speed range")
    common(p, c_required=False)
    p.add_argument("--cmin", type=float, required=True)
    p.add_argument("--cmax", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--fd-step", type=float, default=1e-4)
    p.set_defaults(func=cmd_sweep_d2)

    p = sub.add_parser("evolve", help="perturbed-wave evolution and orbital trace")
    common(p, c_required=False)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--shape", choices=ev.PERTURBATION_SHAPES, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--half-width", type=float, default=None)
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--T", type=float, default=None)
    p.add_argument("--stride", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--config", default=None, help="key = value defaults file")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("all", help="run every command into one directory")
    common(p)
    p.add_argument("--k", type=float, default=0.0)
    p.add_argument("--n", type=int, default=4096)
    p.add_argument("--half-width", type=float, default=None)
    p.add_argument("--matrix-n", type=int, default=2048)
    p.add_argument("--fd-step", type=float, default=1e-4)
    p.add_argument("--steps", type=int, default=15)
    p.add_argument("--rho", type=float, default=0.01)
    p.add_argument("--shape", choices=ev.PERTURBATION_SHAPES, default="gauss_even")
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--T", type=float, default=20.0)
    p.add_argument("--stride", type=float, default=None)
    p.add_argument("--seed", type=int, default=1234)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_all)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ComputationError as e:
        print(f"computation failed: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
