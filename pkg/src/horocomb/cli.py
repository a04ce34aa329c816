"""Command-line front end: build, verify, and export models.

Subcommands:
    classify      type, displacement and factorization of a group element
    maps          SL2(R) and SO(1,2) images plus homomorphism residuals
    model build   parameters of the (t, r) model as JSON
    model verify  run a named check suite against the (t, r) model
    combine       horospherical combination of two invariants at fixed t
    cartan-limit  angle sequence and running extrapolation (CSV)
    gns-check     orbit Gram eigenvalues and signature verdict

Reports are deterministic for a fixed seed: JSON with sorted keys, CSV
with '.' decimals.  Exit codes: 0 all checks passed, 1 a check failed,
2 usage or parameter error.  The environment variable
HOROCOMB_TOLERANCE_SCALE multiplies every tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import su11
from .blockrep import RepModel, orbit_gram
from .combination import combine_models, CombinationSpec, make_representation, mix_weights_for_target
from .errors import ParameterError, ValidationError
from .invariants import (
    cartan_limit_estimate,
    geometric_schedule,
    model_arg,
    validate_params,
)
from .kernelspace import signature_count
from .su11 import SU11Element, bruhat_factor, classify_su11, displacement_su11, phi_to_so12, psi_to_sl2
from .verification import check, run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _tol_scale() -> float:
    return float(os.environ.get("HOROCOMB_TOLERANCE_SCALE", "1"))


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _complex_json(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _parse_rational_pair(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValidationError(f"expected 're,im', got {text!r}")
    return Fraction(parts[0].strip()), Fraction(parts[1].strip())


def _element_from_args(args) -> SU11Element:
    if args.lam is not None:
        return su11.g(Fraction(args.lam), Fraction(args.b if args.b is not None else 0))
    if args.alpha is None:
        raise ValidationError("give either --lam [--b] or --alpha [--beta]")
    a_re, a_im = _parse_rational_pair(args.alpha)
    b_re, b_im = _parse_rational_pair(args.beta) if args.beta else (Fraction(0), Fraction(0))
    return SU11Element(a_re, a_im, b_re, b_im)


def _matrix_json(m: np.ndarray) -> list:
    return [[float(x) for x in row] for row in np.asarray(m, dtype=float)]


def cmd_classify(args) -> int:
    el = _element_from_args(args)
    factors = bruhat_factor(el)
    if isinstance(factors, su11.ParabolicCoords):
        fac = {"kind": "P", "lam": str(factors.lam), "b": str(factors.b)}
    else:
        fac = {
            "kind": "PsP",
            "lam": str(factors.lam),
            "b": str(factors.b),
            "d": str(factors.d),
        }
    _emit_json(
        {
            "command": "classify",
            "alpha": _complex_json(el.alpha),
            "beta": _complex_json(el.beta),
            "type": classify_su11(el),
            "displacement": displacement_su11(el),
            "factorization": fac,
        }
    )
    return EXIT_OK


def cmd_maps(args) -> int:
    el = _element_from_args(args)
    rng = np.random.default_rng(args.seed)
    worst_psi = 0.0
    worst_phi = 0.0
    for _ in range(args.sample):
        x, y = su11.random_su11(rng), su11.random_su11(rng)
        worst_psi = max(worst_psi, float(np.max(np.abs(psi_to_sl2(x * y) - psi_to_sl2(x) @ psi_to_sl2(y)))))
        worst_phi = max(worst_phi, float(np.max(np.abs(phi_to_so12(x * y) - phi_to_so12(x) @ phi_to_so12(y)))))
    tol = 1e-10 * _tol_scale()
    checks = [
        check("psi_homomorphism", worst_psi, tol),
        check("phi_homomorphism", worst_phi, tol),
    ]
    _emit_json(
        {
            "command": "maps",
            "psi": _matrix_json(psi_to_sl2(el)),
            "phi": _matrix_json(phi_to_so12(el)),
            "checks": checks,
        }
    )
    return EXIT_OK if all(c["pass"] for c in checks) else EXIT_CHECK_FAILED


def _model_or_exit(t: float, r: float) -> RepModel:
    return make_representation(t, r)


def cmd_model_build(args) -> int:
    model = _model_or_exit(args.t, args.r)
    _emit_json(
        {
            "command": "model build",
            "t": model.t,
            "r": model_arg(model),
            "k1": _complex_json(model.ctx.k1),
            "verdict": validate_params(args.t, args.r),
        }
    )
    return EXIT_OK


def cmd_model_verify(args) -> int:
    model = _model_or_exit(args.t, args.r)
    rng = np.random.default_rng(args.seed)
    schedule = geometric_schedule(args.b_start, args.b_ratio, args.steps)
    checks = run_suite(model, args.suite, rng, schedule, tol_scale=_tol_scale())
    ok = all(c["pass"] for c in checks)
    _emit_json(
        {
            "command": "model verify",
            "t": model.t,
            "r": model_arg(model),
            "suite": args.suite,
            "seed": args.seed,
            "checks": checks,
            "pass": ok,
        }
    )
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_combine(args) -> int:
    m1 = _model_or_exit(args.t, args.r1)
    m2 = _model_or_exit(args.t, args.r2)
    combined = combine_models(CombinationSpec(m1, m2, u=args.u))
    target = (1.0 - args.u) * model_arg(m1) + args.u * model_arg(m2)
    p, q = mix_weights_for_target(model_arg(m1), model_arg(m2), target)
    resid = abs(model_arg(combined) - target)
    tol = 1e-12 * _tol_scale()
    checks = [check("combination_affine_arg", resid, tol)]
    _emit_json(
        {
            "command": "combine",
            "t": args.t,
            "r1": args.r1,
            "r2": args.r2,
            "u": args.u,
            "weights": {"p": p, "q": q},
            "k1": _complex_json(combined.ctx.k1),
            "arg": model_arg(combined),
            "checks": checks,
        }
    )
    return EXIT_OK if checks[0]["pass"] else EXIT_CHECK_FAILED


def cmd_cartan_limit(args) -> int:
    model = _model_or_exit(args.t, args.r)
    schedule = geometric_schedule(args.b_start, args.b_ratio, args.steps)
    est = cartan_limit_estimate(model, schedule)
    if args.format == "json":
        _emit_json(
            {
                "command": "cartan-limit",
                "t": args.t,
                "r": args.r,
                "target": -model_arg(model),
                "points": [
                    {"b": b, "cartan": v, "extrapolated": e}
                    for (b, v), e in zip(est.points, est.running)
                ],
                "extrapolated": est.extrapolated,
            }
        )
    else:
        sys.stdout.write("b,cartan,extrapolated\n")
        for (b, v), e in zip(est.points, est.running):
            sys.stdout.write(f"{b!r},{v!r},{e!r}\n")
    dev = abs(est.extrapolated + model_arg(model))
    tol = max(1e-3, 5.0 * est.points[-1][0] ** (-model.t)) * _tol_scale()
    return EXIT_OK if dev <= tol else EXIT_CHECK_FAILED


def cmd_gns_check(args) -> int:
    model = _model_or_exit(args.t, args.r)
    rng = np.random.default_rng(args.seed)
    els = [SU11Element.identity()] + [su11.random_su11(rng) for _ in range(args.sample - 1)]
    gram = orbit_gram(model, els)
    eigs = sorted(float(x) for x in np.linalg.eigvalsh(gram))
    sig = signature_count(gram)
    ok = sig[0] == 1
    _emit_json(
        {
            "command": "gns-check",
            "t": args.t,
            "r": args.r,
            "sample": args.sample,
            "seed": args.seed,
            "eigenvalues": eigs,
            "signature": {"positive": sig[0], "zero": sig[1], "negative": sig[2]},
            "pass": ok,
        }
    )
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="horocomb", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add_element_args(p):
        p.add_argument("--lam", help="parabolic coordinate lambda (rational)")
        p.add_argument("--b", help="parabolic coordinate b (rational)")
        p.add_argument("--alpha", help="alpha as 're,im' rationals")
        p.add_argument("--beta", help="beta as 're,im' rationals")

    p = sub.add_parser("classify", help="type/displacement/factorization of an element")
    add_element_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("maps", help="SL2(R) and SO(1,2) images of an element")
    add_element_args(p)
    p.add_argument("--sample", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_maps)

    model = sub.add_parser("model", help="build or verify a (t, r) model")
    msub = model.add_subparsers(dest="model_command", required=True)

    p = msub.add_parser("build")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.set_defaults(func=cmd_model_build)

    p = msub.add_parser("verify")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--suite", choices=["relations", "gram", "kernel", "limits", "all"], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--b-start", type=float, default=1.0)
    p.add_argument("--b-ratio", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=9)
    p.set_defaults(func=cmd_model_verify)

    p = sub.add_parser("combine", help="horospherical combination at fixed t")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--r1", type=float, required=True)
    p.add_argument("--r2", type=float, required=True)
    p.add_argument("--u", type=float, required=True)
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("cartan-limit", help="angle sequence along a b-schedule")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--b-start", type=float, default=1.0)
    p.add_argument("--b-ratio", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=9)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_cartan_limit)

    p = sub.add_parser("gns-check", help="orbit Gram eigenvalues and signature")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--sample", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gns_check)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ParameterError, ValidationError) as exc:
        verdict = getattr(exc, "verdict", None)
        payload = {"error": str(exc)}
        if verdict is not None:
            payload["verdict"] = verdict
        sys.stderr.write(json.dumps(payload) + "\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
