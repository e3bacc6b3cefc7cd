"""Command-line front end.

Three subcommands: `figure` regenerates the stock curve families with
their standard parameters, `pip` computes a single partial information
plot from explicit parameters, and `redundancy` reports the redundancy
measures for a d list.  Curves are written as small CSVs (header
m,I_bits,stderr_bits; stderr empty for exact values; infinities spelled
`inf`), and every invocation drops a manifest.json recording how to
reproduce the run.

Output directory: --out flag, else the QDARWIN_OUT_DIR environment
variable, else the working directory.  Exit codes: 0 on success, 2 for
usage or parameter errors, 1 for filesystem trouble.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import shlex
import sys
import tempfile
import time

from . import __version__
from .curves import PIPCurve
from .ensembles import (
    bimodal_average_pip,
    empirical_average_pip,
    poisson_average_pip,
    unimodal_pip,
)
from .branch import DecoherenceProfile
from .haar import haar_average_pip, sampled_average_pip
from .redundancy import redundancy_partition

_FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5", "fig6")
_PIP_KINDS = ("haar", "unimodal", "bimodal", "poisson", "empirical")

# Flags each figure accepts beyond --out; anything else is a usage error.
_FIGURE_OVERRIDES = {
    "fig2": {"samples", "seed", "threads"},
    "fig3": {"p0"},
    "fig4": {"p0"},
    "fig5": set(),
    "fig6": {"p0"},
}

_PIP_FLAGS = {
    "haar": {"n_env", "samples", "seed", "subset_budget", "threads"},
    "unimodal": {"n_env", "d0", "p0"},
    "bimodal": {"n_total", "n_useful", "d0", "p0"},
    "poisson": {"n_env"},
    "empirical": {"d_list", "samples", "seed", "p0"},
}

_PIP_REQUIRED = {
    "haar": ("n_env",),
    "unimodal": ("n_env", "d0"),
    "bimodal": ("n_total", "n_useful", "d0"),
    "poisson": ("n_env",),
    "empirical": ("d_list",),
}


def _fmt(x: float) -> str:
    return format(x, ".12g")


def _atomic_write(path: str, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".", prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_curve(out_dir: str, name: str, curve: PIPCurve, rescale: bool = False) -> str:
    header = "m,I_bits,stderr_bits"
    if rescale:
        header += ",I_rescaled"
        total = float(curve.mi_bits[-1])
    lines = [header]
    for m, mi, se in curve.points:
        row = f"{m},{_fmt(mi)},{'' if se is None else _fmt(se)}"
        if rescale:
            row += f",{_fmt(mi / total)}"
        lines.append(row)
    path = os.path.join(out_dir, name)
    _atomic_write(path, "\n".join(lines) + "\n")
    return name

def _json_safe(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return obj
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def _parse_d_list(text: str) -> tuple:
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if not tokens:
        raise ValueError("empty d list")
    values = []
    for tok in tokens:
        try:
            values.append(float(tok))
        except ValueError:
            raise ValueError(f"bad d value {tok!r} (numbers or 'inf')") from None
    return tuple(values)


def _reject_extras(provided: set, allowed: set, context: str) -> None:
    extras = provided - allowed
    if extras:
        flags = ", ".join("--" + f.replace("_", "-") for f in sorted(extras))
        ok = ", ".join("--" + f.replace("_", "-") for f in sorted(allowed)) or "none"
        raise ValueError(f"{flags} does not apply to {context} (accepted: {ok})")


def _provided(args, names) -> set:
    return {n for n in names if getattr(args, n) is not None}


def _run_figure(args, out_dir: str):
    fig = args.id
    provided = _provided(args, ("samples", "seed", "p0", "threads"))
    _reject_extras(provided, _FIGURE_OVERRIDES[fig], fig)
    p0 = 0.5 if args.p0 is None else args.p0
    files = []
    if fig == "fig2":
        samples = 500 if args.samples is None else args.samples
        seed = 0 if args.seed is None else args.seed
        threads = 1 if args.threads is None else args.threads
        for n in range(2, 10):
            files.append(_write_curve(out_dir, f"fig2_analytic_N{n}.csv",
                                      haar_average_pip(n)))
            files.append(_write_curve(out_dir, f"fig2_sampled_N{n}.csv",
                                      sampled_average_pip(n, samples, seed,
                                                          threads=threads)))
        params = {"id": fig, "n_env": list(range(2, 10)), "samples": samples,
                  "seed": seed, "threads": threads, "subset_budget": 10_000}
        return files, params, seed
    if fig == "fig3":
        for d_s in (2, 8, 32, 128):
            files.append(_write_curve(out_dir, f"fig3_dS{d_s}.csv",
                                      unimodal_pip(32, d_s / 32.0, p0)))
        return files, {"id": fig, "n_env": 32, "d_S": [2, 8, 32, 128], "p0": p0}, None
    if fig == "fig4":
        curves = [
            ("fig4_bimodal_nu16.csv", bimodal_average_pip(32, 16, 1.5, p0)),
            ("fig4_bimodal_nu6.csv", bimodal_average_pip(32, 6, 3.0, p0)),
            ("fig4_uniform_d0.75.csv", unimodal_pip(32, 0.75, p0)),
            ("fig4_uniform_d0.5625.csv", unimodal_pip(32, 0.5625, p0)),
        ]
        for name, curve in curves:
            files.append(_write_curve(out_dir, name, curve))
        return files, {"id": fig, "n_env": 32, "p0": p0}, None
    if fig == "fig5":
        for n in (4, 8, 16, 32):
            files.append(_write_curve(out_dir, f"fig5_poisson_N{n}.csv",
                                      poisson_average_pip(n), rescale=True))
            files.append(_write_curve(out_dir, f"fig5_uniform_N{n}.csv",
                                      unimodal_pip(n, 1.0), rescale=True))
        return files, {"id": fig, "n_env": [4, 8, 16, 32], "d0": 1.0}, None
    for n in (8, 9, 12, 16, 64):
        files.append(_write_curve(out_dir, f"fig6_N{n}.csv",
                                  bimodal_average_pip(n, 8, math.inf, p0)))
    return files, {"id": fig, "n_env": [8, 9, 12, 16, 64], "n_useful": 8,
                   "d0": "inf", "p0": p0}, None


def _run_pip(args, out_dir: str):
    kind = args.kind
    names = ("n_env", "d0", "n_useful", "n_total", "d_list", "samples",
             "seed", "p0", "subset_budget", "threads")
    provided = _provided(args, names)
    _reject_extras(provided, _PIP_FLAGS[kind], f"kind={kind}")
    missing = [n for n in _PIP_REQUIRED[kind] if n not in provided]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise ValueError(f"kind={kind} requires {flags}")

    p0 = 0.5 if args.p0 is None else args.p0
    seed = args.seed if args.seed is not None else 0
    params = {"kind": kind, "p0": p0}
    if kind == "haar":
        if args.samples is None:
            curve = haar_average_pip(args.n_env)
        else:
            budget = 10_000 if args.subset_budget is None else args.subset_budget
            threads = 1 if args.threads is None else args.threads
            curve = sampled_average_pip(args.n_env, args.samples, seed,
                                        budget, threads)
            params.update(samples=args.samples, seed=seed,
                          subset_budget=budget, threads=threads)
        params.update(n_env=args.n_env)
        params.pop("p0")  # the uniform ensemble has no p0 knob
    elif kind == "unimodal":
        curve = unimodal_pip(args.n_env, args.d0, p0)
        params.update(n_env=args.n_env, d0=args.d0)
    elif kind == "bimodal":
        curve = bimodal_average_pip(args.n_total, args.n_useful, args.d0, p0)
        params.update(n_total=args.n_total, n_useful=args.n_useful, d0=args.d0)
    elif kind == "poisson":
        # closed form is specific to p0 = 1/2; the flag is rejected above
        curve = poisson_average_pip(args.n_env)
        params.update(n_env=args.n_env)
    else:
        profile = DecoherenceProfile(p0, _parse_d_list(args.d_list))
        if args.samples is None:
            curve = empirical_average_pip(profile, "exact")
        else:
            curve = empirical_average_pip(profile, "montecarlo",
                                          samples=args.samples, seed=seed)
            params.update(samples=args.samples, seed=seed)
        params.update(d_list=args.d_list)
    name = _write_curve(out_dir, f"pip_{kind}.csv", curve)
    return [name], params, params.get("seed")


def _run_redundancy(args, out_dir: str):
    p0 = 0.5 if args.p0 is None else args.p0
    profile = DecoherenceProfile(p0, _parse_d_list(args.d_list))
    report = redundancy_partition(profile, args.delta)
    payload = _json_safe({
        "delta": report.delta,
        "p0": p0,
        "d_list": list(profile.d),
        "d_r": report.d_r,
        "r_infdiv": report.r_infdiv,
        "r_partition": report.r_partition,
        "parts": [list(p) for p in report.parts],
    })
    text = json.dumps(payload, indent=2) + "\n"
    _atomic_write(os.path.join(out_dir, "redundancy.json"), text)
    print(text, end="")
    params = {"d_list": args.d_list, "delta": args.delta, "p0": p0}
    return ["redundancy.json"], params, None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdarwin",
        description="Partial information plots and redundancy measures "
                    "for a qubit recorded by a many-qubit environment.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", help="regenerate a stock curve family")
    fig.add_argument("id", choices=_FIGURE_IDS)
    fig.add_argument("--out", help="output directory")
    fig.add_argument("--samples", type=int)
    fig.add_argument("--seed", type=int)
    fig.add_argument("--p0", type=float)
    fig.add_argument("--threads", type=int)
    fig.set_defaults(func=_run_figure)

    pip = sub.add_parser("pip", help="one partial information plot as CSV")
    pip.add_argument("kind", choices=_PIP_KINDS)
    pip.add_argument("--out")
    pip.add_argument("--n-env", dest="n_env", type=int)
    pip.add_argument("--d0", type=float, help="per-environment d (inf allowed)")
    pip.add_argument("--n-useful", dest="n_useful", type=int)
    pip.add_argument("--n-total", dest="n_total", type=int)
    pip.add_argument("--d-list", dest="d_list",
                     help="comma-separated d values, e.g. 'inf,1,0'")
    pip.add_argument("--samples", type=int,
                     help="Monte Carlo samples (omit for exact)")
    pip.add_argument("--seed", type=int)
    pip.add_argument("--p0", type=float)
    pip.add_argument("--subset-budget", dest="subset_budget", type=int)
    pip.add_argument("--threads", type=int)
    pip.set_defaults(func=_run_pip)

    red = sub.add_parser("redundancy", help="redundancy report as JSON")
    red.add_argument("--out")
    red.add_argument("--d-list", dest="d_list", required=True)
    red.add_argument("--delta", type=float, required=True)
    red.add_argument("--p0", type=float)
    red.set_defaults(func=_run_redundancy)

    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    t0 = time.perf_counter()
    try:
        out_dir = args.out or os.environ.get("QDARWIN_OUT_DIR") or os.getcwd()
        os.makedirs(out_dir, exist_ok=True)
        files, params, seed = args.func(args, out_dir)
        manifest = {
            "command_line": shlex.join(["qdarwin", *argv]),
            "seed": seed,
            "parameters": _json_safe(params),
            "tool_version": __version__,
            "wall_time_s": round(time.perf_counter() - t0, 6),
        }
        _atomic_write(os.path.join(out_dir, "manifest.json"),
                      json.dumps(manifest, indent=2) + "\n")
    except ValueError as exc:
        print(f"qdarwin: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"qdarwin: error: {exc}", file=sys.stderr)
        return 1
    # status goes to stderr so stdout stays clean for payloads (redundancy JSON)
    for name in files:
        print(f"wrote {os.path.join(out_dir, name)}", file=sys.stderr)
    print(f"wrote {os.path.join(out_dir, 'manifest.json')}", file=sys.stderr)
    return 0
