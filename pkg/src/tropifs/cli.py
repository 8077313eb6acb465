"""Command-line driver.

    tropifs <validate|mane|invariant|fuzzy|demo31> --config <path> --out <dir>
            [--seed N] [--threads N]

Exit codes: 0 on success, 2 on a domain failure (invalid system, empty
Aubry set, non-convergence, mode mismatch), 3 on usage or configuration
errors.  All outputs are JSON or CSV files in the output directory and are
byte-identical across runs for a fixed config and seed.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import serialize
from .config import RunConfig, build_system, load_config
from .errors import (
    ConfigError,
    DemonstrationError,
    EmptyAubryError,
    GenerationError,
    NonConvergenceError,
    NormalizationError,
    NotConstantWeightError,
    NotContractiveError,
    TropifsError,
)
from .examples import ShiftExampleSpec, demonstrate_nonuniqueness
from .fuzzy import FuzzySet, fhb_attractor, theta_conjugate
from .invariant import (
    BoundaryData,
    build_invariant,
    coding_map,
    constant_weight_density,
    enumerate_invariants,
    verify_invariant,
)
from .mane import mane_potential
from .mpifs import ValidationReport

DOMAIN_ERRORS = (
    NormalizationError,
    NotContractiveError,
    EmptyAubryError,
    NonConvergenceError,
    NotConstantWeightError,
    DemonstrationError,
    GenerationError,
)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_USAGE = 3


def _resolve_point(space, key):
    """Boundary keys may be indices or point labels."""
    if isinstance(key, int):
        return key
    if isinstance(key, str):
        if key in space.labels:
            return space.labels.index(key)
        try:
            return int(key)
        except ValueError:
            pass
    raise ConfigError(f"unknown boundary point {key!r}")


def cmd_validate(cfg: RunConfig, out: Path, seed, threads) -> int:
    try:
        system = build_system(cfg, seed)
    except DOMAIN_ERRORS as exc:
        serialize.write_json(out / "validation.json", {"valid": False, "error": str(exc)})
        return EXIT_DOMAIN
    report = ValidationReport(
        valid=True,
        gamma_hat=system.gamma_hat,
        lip_c_hat=system.lip_c_hat,
        normalization_drift=0.0,
        renormalized=False,
        messages=[],
    ).to_jsonable()
    report["points"] = system.space.n
    report["maps"] = system.num_maps
    report["constant_weights"] = system.is_constant_weight()
    serialize.write_json(out / "validation.json", report)
    return EXIT_OK


def cmd_mane(cfg: RunConfig, out: Path, seed, threads) -> int:
    system = build_system(cfg, seed)
    tol = float(cfg.mane.get("tol_aubry", 1e-9))
    pot = mane_potential(system, tol_aubry=tol)
    serialize.matrix_to_csv(out / "S.csv", pot.s, labels=system.space.labels)
    serialize.write_json(out / "aubry.json", serialize.aubry_to_jsonable(pot))
    return EXIT_OK


def cmd_invariant(cfg: RunConfig, out: Path, seed, threads) -> int:
    system = build_system(cfg, seed)
    params = cfg.invariant
    mode = params.get("mode", "constant")
    tol = float(params.get("tol", 1e-9))
    pot = mane_potential(system, tol_aubry=float(params.get("tol_aubry", 1e-9)))

    if mode == "boundary":
        raw = params.get("boundary")
        if not isinstance(raw, dict) or "levels" not in raw:
            raise ConfigError("boundary mode needs {'anchor': ..., 'levels': {...}}")
        levels = {
            _resolve_point(system.space, k): serialize.value_from_jsonable(v)
            for k, v in raw["levels"].items()
        }
        anchor = _resolve_point(system.space, raw["anchor"])
        densities = [build_invariant(pot, BoundaryData(values=levels, anchor=anchor))]
    elif mode == "constant":
        densities = [constant_weight_density(system, pot, coding_map(system))]
    elif mode == "enumerate":
        levels = [serialize.value_from_jsonable(v) for v in params.get("levels", [0.0])]
        densities = enumerate_invariants(system, pot, levels, threads=threads)
    else:
        raise ConfigError(f"unknown invariant mode {mode!r}")

    reports = [verify_invariant(system, lam, tol=tol) for lam in densities]
    serialize.write_json(
        out / "density.json", [serialize.density_to_jsonable(lam) for lam in densities]
    )
    serialize.write_json(out / "verify.json", [r.to_jsonable() for r in reports])
    if cfg.output.get("csv"):
        for i, lam in enumerate(densities):
            serialize.density_to_csv(out / f"density_{i:03d}.csv", lam)
    return EXIT_OK


def cmd_fuzzy(cfg: RunConfig, out: Path, seed, threads) -> int:
    system = build_system(cfg, seed)
    params = cfg.fuzzy
    tol = float(params.get("tol", 1e-12))
    max_iters = params.get("max_iters")
    u0_spec = params.get("u0", "uniform")
    if u0_spec == "uniform":
        u0 = FuzzySet(system.space, np.ones(system.space.n))
    elif u0_spec == "invariant":
        pot = mane_potential(system)
        u0 = theta_conjugate(constant_weight_density(system, pot, coding_map(system)))
    else:
        u0 = FuzzySet(system.space, np.asarray(u0_spec, dtype=np.float64))
    try:
        result = fhb_attractor(
            system, u0, tol=tol, max_iters=int(max_iters) if max_iters else None
        )
    except NonConvergenceError as exc:
        serialize.trace_to_csv(out / "trace.csv", exc.trace)
        serialize.fuzzy_to_csv(out / "attractor.csv", exc.last)
        raise
    serialize.fuzzy_to_csv(out / "attractor.csv", result.attractor)
    serialize.trace_to_csv(out / "trace.csv", result.trace)
    return EXIT_OK


def cmd_demo31(cfg: RunConfig, out: Path, seed, threads) -> int:
    params = cfg.demo31
    spec = ShiftExampleSpec(
        depth=int(params.get("depth", 6)),
        alphas=[float(a) for a in params.get("alphas", [0.0, 0.25, 0.5])],
    )
    report = demonstrate_nonuniqueness(spec)
    serialize.write_json(out / "report.json", report.to_jsonable())
    serialize.write_json(
        out / "density.json",
        [serialize.density_to_jsonable(lam) for lam in report.densities],
    )
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "mane": cmd_mane,
    "invariant": cmd_invariant,
    "fuzzy": cmd_fuzzy,
    "demo31": cmd_demo31,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="tropifs", description=__doc__)
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True)
    parser.add_argument("--out", default=".")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--threads", type=int, default=None)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    threads = args.threads
    if threads is None:
        env = os.environ.get("TROPIFS_THREADS")
        threads = int(env) if env else 1

    try:
        cfg = load_config(args.config)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](cfg, out, args.seed, threads)
    except ConfigError as exc:
        print(f"tropifs: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DOMAIN_ERRORS as exc:
        print(f"tropifs: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except TropifsError as exc:
        print(f"tropifs: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"tropifs: i/o error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
