"""Command-line front end.

Exit codes: 0 success / check passed, 1 check failed, 2 usage or input error.
Reports go to stdout as ``key=value`` lines; time series and sweeps are CSV.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import deformation, fullspace, transfer
from .chain import ChainSpec, chain_to_dict, load_chain, to_matrix
from .errors import ChainError, ConvergenceFailure
from .models import MODELS, shift_fields

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

COMMANDS = ("model", "deform", "evolve", "check-pst", "check-revival", "sweep-theta", "full-sim")

_PI_RE = re.compile(
    r"^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?|[+-])?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$"
)


class UsageError(Exception):
    pass


def parse_real(text: str) -> float:
    """Parse a float, also accepting ``pi``, ``2pi``, ``3*pi/4``, ``pi/2``."""
    m = _PI_RE.match(text)
    if m:
        sign_or_coef = m.group(1) or "1"
        coef = float(sign_or_coef + "1") if sign_or_coef in "+-" else float(sign_or_coef)
        den = float(m.group(2)) if m.group(2) else 1.0
        if den == 0:
            raise argparse.ArgumentTypeError(f"division by zero in {text!r}")
        return coef * math.pi / den
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return value


def fmt(x: float) -> str:
    return format(float(x), ".17g")


@dataclass
class RunConfig:
    command: str
    model: str | None = None
    file: str | None = None
    n: int | None = None
    shift: float = 0.0
    theta: float | None = None
    probe_time: float | None = None
    t_max: float | None = None
    steps: int | None = None
    tolerance: float = 1e-9
    phase_free: bool = False
    output_path: str | None = None

    def require(self, *names):
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            flags = ", ".join("--" + _FLAG_NAMES.get(n, n).replace("_", "-") for n in missing)
            raise UsageError(f"{self.command} requires {flags}")


_FLAG_NAMES = {"probe_time": "time", "output_path": "out"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--model", choices=sorted(MODELS))
    src.add_argument("--file", help="chain JSON file")
    common.add_argument("--n", type=int, help="chain order (n + 1 sites)")
    common.add_argument("--shift", type=parse_real, default=0.0, help="add this to every field")
    common.add_argument("--theta", type=parse_real)
    common.add_argument("--time", dest="probe_time", type=parse_real)
    common.add_argument("--t-max", type=parse_real)
    common.add_argument("--steps", type=int)
    common.add_argument("--tolerance", type=float, default=1e-9)
    common.add_argument("--phase-free", action="store_true",
                        help="judge PST up to a global phase")
    common.add_argument("--out", dest="output_path")

    parser = argparse.ArgumentParser(prog="spinrevival", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def parse_config(argv) -> RunConfig:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            raise
        raise UsageError("invalid arguments") from None
    return RunConfig(**vars(ns))


def load_source(cfg: RunConfig) -> ChainSpec:
    if cfg.file:
        chain = load_chain(cfg.file)
    elif cfg.model:
        if cfg.n is None:
            raise UsageError("--model requires --n")
        try:
            chain = MODELS[cfg.model](cfg.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        raise UsageError("give a chain with --model or --file")
    if cfg.shift:
        chain = shift_fields(chain, cfg.shift)
    return chain


def _write_text(path, text: str) -> None:
    """Write atomically: temp file in the target directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent if str(path.parent) else ".", prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _emit(cfg: RunConfig, text: str, out) -> None:
    if cfg.output_path:
        _write_text(cfg.output_path, text)
    else:
        out.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def _kv(out, **items) -> None:
    for key, value in items.items():
        if isinstance(value, float):
            value = fmt(value)
        out.write(f"{key}={value}\n")


def _chain_json(chain: ChainSpec) -> str:
    return json.dumps(chain_to_dict(chain), indent=2) + "\n"


def cmd_model(cfg, out) -> int:
    _emit(cfg, _chain_json(load_source(cfg)), out)
    return EXIT_OK


def cmd_deform(cfg, out) -> int:
    cfg.require("theta")
    chain = load_source(cfg)
    closed = deformation.deform_closed_form(chain, cfg.theta)
    dense = deformation.deform_conjugate(chain, cfg.theta)
    gap = max(np.max(np.abs(closed.couplings - dense.couplings), initial=0.0),
              np.max(np.abs(closed.fields - dense.fields)))
    _emit(cfg, _chain_json(closed), out)
    if gap > cfg.tolerance:
        print(f"closed form and conjugation disagree by {gap:.3e}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_evolve(cfg, out) -> int:
    chain = load_source(cfg)
    if cfg.probe_time is not None:
        times = [cfg.probe_time]
    else:
        cfg.require("t_max")
        steps = cfg.steps if cfg.steps is not None else int(round(cfg.t_max / transfer.DEFAULT_SCAN_STEP)) + 1
        if steps < 2 or cfg.t_max <= 0:
            raise UsageError("need --t-max > 0 and --steps >= 2")
        times = np.linspace(0.0, cfg.t_max, steps)
    rows = transfer.time_series(chain, times)
    _emit(cfg, _csv(["t", "site", "re", "im", "prob"], rows), out)
    return EXIT_OK


def cmd_check_pst(cfg, out) -> int:
    cfg.require("probe_time")
    rep = transfer.pst_report(load_source(cfg), cfg.probe_time)
    residual = rep.phase_opt_residual if cfg.phase_free else rep.strict_residual
    ok = residual <= cfg.tolerance
    _kv(out, probe_time=rep.probe_time, strict_residual=rep.strict_residual,
        phase_opt_residual=rep.phase_opt_residual, phi_star=rep.phi_star)
    out.write(f"end_fidelity={rep.end_fidelity:.9f}\n")
    _kv(out, result="pass" if ok else "fail")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check_revival(cfg, out) -> int:
    """With --model the chain is deformed by --theta first; a --file chain is taken as already deformed."""
    cfg.require("theta", "probe_time")
    chain = load_source(cfg)
    if cfg.model:
        chain = deformation.deform_closed_form(chain, cfg.theta)
    rep = transfer.revival_report(chain, cfg.probe_time)
    pat = transfer.revival_pattern_check(chain, cfg.probe_time, cfg.theta, cfg.tolerance)
    ok = pat.passed and rep.leak <= cfg.tolerance
    _kv(out, probe_time=rep.probe_time, abs_alpha=abs(rep.alpha), abs_beta=abs(rep.beta),
        leak=rep.leak, pattern_residual=pat.max_residual, phase=pat.phase,
        result="pass" if ok else "fail")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sweep_theta(cfg, out) -> int:
    """CSV over an evenly spaced theta grid on [0, pi): revival amplitudes and pattern residual."""
    cfg.require("probe_time")
    chain = load_source(cfg)
    steps = cfg.steps if cfg.steps is not None else 37
    if steps < 1:
        raise UsageError("--steps must be positive")
    rows = []
    worst = 0.0
    for theta in np.linspace(0.0, math.pi, steps, endpoint=False):
        deformed = deformation.deform_closed_form(chain, float(theta))
        rep = transfer.revival_report(deformed, cfg.probe_time)
        pat = transfer.revival_pattern_check(deformed, cfg.probe_time, float(theta), cfg.tolerance)
        worst = max(worst, pat.max_residual)
        rows.append((float(theta), abs(rep.alpha), abs(rep.beta), rep.leak, pat.max_residual))
    _emit(cfg, _csv(["theta", "abs_alpha", "abs_beta", "leak", "pattern_residual"], rows), out)
    return EXIT_OK if worst <= cfg.tolerance else EXIT_FAIL


def cmd_full_sim(cfg, out) -> int:
    chain = load_source(cfg)
    if cfg.theta is not None:
        chain = deformation.deform_closed_form(chain, cfg.theta)
    full = fullspace.build_full(chain)
    comm = fullspace.magnetization_commutator_residual(full)
    restr = float(np.max(np.abs(fullspace.restrict_one_excitation(full) - to_matrix(chain))))
    items = dict(dimension=full.dimension, commutator_residual=comm, restriction_residual=restr)
    if cfg.probe_time is not None and chain.n >= 1:
        items["concurrence_0_N"] = fullspace.concurrence_after_revival(chain, cfg.probe_time, 0, chain.n)
    ok = comm <= cfg.tolerance and restr <= cfg.tolerance
    _kv(out, **items, result="pass" if ok else "fail")
    return EXIT_OK if ok else EXIT_FAIL


HANDLERS = {
    "model": cmd_model,
    "deform": cmd_deform,
    "evolve": cmd_evolve,
    "check-pst": cmd_check_pst,
    "check-revival": cmd_check_revival,
    "sweep-theta": cmd_sweep_theta,
    "full-sim": cmd_full_sim,
}


def run(cfg: RunConfig, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        return HANDLERS[cfg.command](cfg, out)
    except (UsageError, ChainError, OSError, json.JSONDecodeError, TypeError) as exc:
        print(f"spinrevival {cfg.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceFailure as exc:
        print(f"spinrevival {cfg.command}: internal error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except UsageError:
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
