"""Command-line front end.

Each subcommand reads one JSON input file and writes a JSON or CSV report.
Report payloads contain no timestamps so identical inputs give identical
bytes; timing and environment details go to ``<output>.meta.json``.

Exit codes: 0 ok, 2 invalid input, 3 computation failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import platform
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import __version__
from .bohr import PowerSeries, inverse_lift, lift
from .dirichlet import DirichletSeries
from .errors import ComputationError, ValidationError, WienerDirichletError
from .hermite import QuadraticSymbol, classify, closed_form_norm, lower_bound
from .symbols import (CompositionSymbol, dirichlet_isometry_check, kronecker_inf,
                      norm_sequence, spectra_disjointness_probe, sufficient_condition)
from .torus import (GeneralSymbol, MonomialSymbol, TorusPolynomial, automorphism_check,
                    blaschke_power_norms, isometry_check_general, isometry_check_monomial,
                    loglog_slope, newman_boundedness_probe)

COMMANDS = ("analyze", "quadratic", "lift", "unlift", "torus-isometry",
            "torus-automorphism", "growth", "kronecker")
EXIT_OK, EXIT_INVALID, EXIT_COMPUTE = 0, 2, 3


@dataclass(frozen=True)
class JobSpec:
    command: str
    input_path: Path
    output_path: Path | None = None
    cutoff: int = 2**20
    n_max: int = 64
    degree_bound: int = 6
    format: str = "json"

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")
        if not self.input_path.is_file():
            raise ValidationError(f"input file not found: {self.input_path}")
        if self.output_path is not None:
            parent = self.output_path.resolve().parent
            if not parent.is_dir():
                raise ValidationError(f"output directory does not exist: {parent}")
        for name in ("cutoff", "n_max", "degree_bound"):
            if getattr(self, name) < 1:
                raise ValidationError(f"--{name.replace('_', '-')} must be positive")
        if self.format not in ("json", "csv"):
            raise ValidationError("--format must be json or csv")


class Report:
    """Payload plus an optional CSV rendering."""

    def __init__(self, payload: dict, header: str | None = None, rows: list | None = None):
        self.payload = payload
        self.header = header
        self.rows = rows or []

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            if self.header is None:
                raise ValidationError("this command has no CSV form; use --format json")
            lines = [self.header] + [",".join(_csv_cell(v) for v in row) for row in self.rows]
            return "\n".join(lines) + "\n"
        return json.dumps(_json_safe(self.payload), indent=2, sort_keys=True,
                          allow_nan=False) + "\n"


def _csv_cell(v) -> str:
    if isinstance(v, float):
        return "nan" if math.isnan(v) else f"{v:.17g}"
    return str(v)


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def _load(path: Path):
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise ValidationError(f"input is not UTF-8 text: {exc}") from exc


def _require_dict(data) -> dict:
    if not isinstance(data, dict):
        raise ValidationError("expected a JSON object at top level")
    return data


def cmd_analyze(data, job: JobSpec) -> Report:
    phi = CompositionSymbol.from_json(_require_dict(data))
    diag = sufficient_condition(phi)
    samples = norm_sequence(phi, job.n_max, job.cutoff)
    collision = spectra_disjointness_probe(phi, job.n_max, job.cutoff)
    isometry = dirichlet_isometry_check(phi)
    payload = {
        "command": "analyze",
        "symbol": phi.to_json(),
        "cutoff": job.cutoff,
        "n_max": job.n_max,
        "verdict": diag.verdict.value,
        "rule": diag.rule,
        "evidence": diag.evidence,
        "isometry": isometry,
        "isometry_rule": "isometry form c0*s + i*tau with c0 >= 1",
        "spectra_collision": None if collision is None else list(collision),
        "norm_samples": [[n, v] for n, v in samples],
    }
    return Report(payload, "n,partial_norm", [[n, v] for n, v in samples])


def cmd_quadratic(data, job: JobSpec) -> Report:
    sym = QuadraticSymbol.from_json(_require_dict(data))
    diag = classify(sym)
    rows = []
    for n in range(1, job.n_max + 1):
        try:
            lb = lower_bound(sym, n)
        except ValidationError:
            lb = math.nan
        rows.append([n, closed_form_norm(sym, n), lb])
    payload = {
        "command": "quadratic",
        "symbol": {"c0": sym.c0, "c1": [sym.c1.real, sym.c1.imag], "r": sym.r,
                   "cr": sym.cr, "cr2": sym.cr2},
        "threshold": sym.threshold,
        "verdict": diag.verdict.value,
        "rule": diag.rule,
        "evidence": diag.evidence,
        "rows": rows,
    }
    return Report(payload, "n,closed_form_norm,lower_bound", rows)


def cmd_lift(data, job: JobSpec) -> Report:
    f = DirichletSeries.from_json(data)
    F = lift(f)
    payload = {"command": "lift", "norm": F.norm(), "series": F.to_json()}
    rows = [[" ".join(map(str, alpha)) or "0", a.real, a.imag] for alpha, a in F]
    return Report(payload, "alpha,re,im", rows)


def cmd_unlift(data, job: JobSpec) -> Report:
    F = PowerSeries.from_json(data)
    f = inverse_lift(F, job.cutoff)
    payload = {"command": "unlift", "norm": math.fsum(abs(a) for _, a in f),
               "series": f.to_json()}
    return Report(payload, "n,re,im", [[n, a.real, a.imag] for n, a in f])


def _torus_symbol(data):
    data = _require_dict(data)
    if "matrix" in data:
        return MonomialSymbol.from_json(data)
    if "components" in data:
        return GeneralSymbol.from_json(data)
    raise ValidationError("torus symbol needs a 'matrix' or 'components' key")


def cmd_torus_isometry(data, job: JobSpec) -> Report:
    sym = _torus_symbol(data)
    if isinstance(sym, MonomialSymbol):
        rep = isometry_check_monomial(sym, job.degree_bound).to_json()
    else:
        rep = isometry_check_general(sym, job.degree_bound).to_json()
    rep["command"] = "torus-isometry"
    rep["evidence"] = (f"{rep['rule']}; isometry={rep['is_isometry']}"
                       + (f", witness {rep['witness']}" if rep["witness"] else ""))
    return Report(rep)


def cmd_torus_automorphism(data, job: JobSpec) -> Report:
    sym = _torus_symbol(data)
    if not isinstance(sym, MonomialSymbol):
        raise ValidationError("automorphism check needs a monomial symbol ('matrix')")
    ok = automorphism_check(sym)
    return Report({
        "command": "torus-automorphism",
        "automorphism": ok,
        "rule": "signed coordinate permutation",
        "evidence": f"matrix is{'' if ok else ' not'} a permutation with unimodular signs",
    })


def cmd_growth(data, job: JobSpec) -> Report:
    data = _require_dict(data)
    if "blaschke" in data:
        a = data["blaschke"]
        a = complex(*a) if isinstance(a, list) else complex(a)
        rows = blaschke_power_norms(a, job.n_max, data.get("taylor_len"))
        probe = {"blaschke": [a.real, a.imag]}
    elif "polynomial" in data:
        p = TorusPolynomial.from_json(data["polynomial"], dim=1)
        rows = newman_boundedness_probe(p, job.n_max)
        probe = {"polynomial": p.to_json()}
    else:
        raise ValidationError("growth input needs 'blaschke' or 'polynomial'")
    lo = max(1, job.n_max // 16)
    slope = loglog_slope(rows, lo, job.n_max) if job.n_max >= lo + 1 else None
    payload = {"command": "growth", "probe": probe, "rows": [list(r) for r in rows],
               "loglog_slope": slope, "slope_window": [lo, job.n_max]}
    return Report(payload, "n,norm", [list(r) for r in rows])


def cmd_kronecker(data, job: JobSpec) -> Report:
    data = _require_dict(data)
    phi = CompositionSymbol.from_json(data)
    sigmas = data.get("sigma", [0.25, 0.5, 1.0])
    sigmas = [float(s) for s in (sigmas if isinstance(sigmas, list) else [sigmas])]
    rows = [[s, kronecker_inf(phi, s)] for s in sigmas]
    payload = {"command": "kronecker", "symbol": phi.to_json(), "rows": rows,
               "rule": "independent-frequency infimum",
               "evidence": "inf over t of Re phi(sigma+it) = c0*sigma + Re c1 - sum |d_j| q_j^-sigma"}
    return Report(payload, "sigma,infimum", rows)


HANDLERS: dict[str, Callable] = {
    "analyze": cmd_analyze,
    "quadratic": cmd_quadratic,
    "lift": cmd_lift,
    "unlift": cmd_unlift,
    "torus-isometry": cmd_torus_isometry,
    "torus-automorphism": cmd_torus_automorphism,
    "growth": cmd_growth,
    "kronecker": cmd_kronecker,
}


def _error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message, "exit_code": code},
                                sort_keys=True) + "\n")
    return code


def run(job: JobSpec, argv: list[str] | None = None) -> int:
    started = time.perf_counter()
    try:
        job.validate()
        text = HANDLERS[job.command](_load(job.input_path), job).render(job.format)
    except ValidationError as exc:
        return _error(type(exc).__name__, str(exc), EXIT_INVALID)
    except (ComputationError, OverflowError) as exc:
        return _error(type(exc).__name__, str(exc), EXIT_COMPUTE)
    except WienerDirichletError as exc:  # pragma: no cover - every error is one of the above
        return _error(type(exc).__name__, str(exc), EXIT_COMPUTE)
    if job.output_path is None:
        sys.stdout.write(text)
        return EXIT_OK
    job.output_path.write_text(text, encoding="utf-8")
    meta = {
        "command": job.command,
        "argv": argv,
        "input": str(job.input_path),
        "input_sha256": hashlib.sha256(job.input_path.read_bytes()).hexdigest(),
        "output_sha256": hashlib.sha256(text.encode()).hexdigest(),
        "elapsed_s": time.perf_counter() - started,
        "finished_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "version": __version__,
        "python": platform.python_version(),
        "wd_threads": os.environ.get("WD_THREADS"),
    }
    Path(str(job.output_path) + ".meta.json").write_text(
        json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wiener-dirichlet",
                                description="Composition-operator analyzers for Dirichlet series.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--output", type=Path, default=None, help="default: stdout, no sidecar")
    p.add_argument("--cutoff", type=int, default=2**20)
    p.add_argument("--n-max", type=int, default=64)
    p.add_argument("--degree-bound", type=int, default=6)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    job = JobSpec(args.command, args.input, args.output, args.cutoff, args.n_max,
                  args.degree_bound, args.format)
    return run(job, argv)


if __name__ == "__main__":
    sys.exit(main())
