"""Named numerical checks over a model, shared by the CLI and the test suite.

Every check is a dict {name, residual, tolerance, pass}; a suite is a list
of checks.  Residuals are scale-normalized maxima over the sampled inputs.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import su11
from .blockrep import (
    RepModel,
    apply,
    compare_up_to_phase,
    compose,
    evaluate,
    identity_op,
    op_diag,
    op_sigma,
    op_unipotent,
    operator_deviation,
    orbit_gram,
    pairing,
)
from .invariants import cartan_limit_estimate, model_arg
from .kernelspace import (
    FormalVector,
    KernelContext,
    cvec,
    reconstruct_embedding,
)

RELATION_SAMPLES = (
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(-2),
    Fraction(1, 2),
    Fraction(-1, 2),
    Fraction(3),
)


def check(name: str, residual: float, tolerance: float) -> dict:
    return {
        "name": name,
        "residual": float(residual),
        "tolerance": float(tolerance),
        "pass": bool(residual <= tolerance),
    }


def _nonzero_rational(rng: np.random.Generator, lo=-2.0, hi=2.0) -> Fraction:
    while True:
        x = Fraction(float(rng.uniform(lo, hi))).limit_denominator(su11.DENOM_CAP)
        if x != 0:
            return x


def _vec_residual(v: FormalVector, scale: float) -> float:
    if not v.coeffs:
        return 0.0
    return max(abs(c) for c in v.coeffs.values()) / max(scale, 1.0)


# ---------------------------------------------------------------------------
# presentation relations

def relation_checks(
    model: RepModel,
    samples: Sequence[Fraction] = RELATION_SAMPLES,
    tolerance: float = 1e-9,
) -> list[dict]:
    """The four presentation relations, verified projectively on probes."""
    report = su11.presentation_check(
        u_image=lambda r: op_unipotent(model, r),
        w_image=op_sigma(model),
        mul=compose,
        identity=identity_op(model),
        deviation=operator_deviation(model),
        samples=samples,
    )
    return [check(f"relation_{k}", v, tolerance) for k, v in sorted(report.items())]


def sigma_relation_checks(
    model: RepModel,
    bs: Sequence[Fraction] = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3)),
    tolerance: float = 1e-9,
) -> list[dict]:
    """diag(b) = sigma unip(eps/b) sigma unip(eps b) sigma unip(eps/b),
    projectively, for both signs of eps."""
    out = []
    for eps in (1, -1):
        worst = 0.0
        for b in bs:
            word = compose(
                compose(
                    compose(op_sigma(model), op_unipotent(model, Fraction(eps) / b)),
                    compose(op_sigma(model), op_unipotent(model, eps * b)),
                ),
                compose(op_sigma(model), op_unipotent(model, Fraction(eps) / b)),
            )
            res = compare_up_to_phase(model, word, op_diag(model, b))
            worst = max(worst, res.residual, abs(abs(res.phase) - 1.0))
        tag = "plus" if eps == 1 else "minus"
        out.append(check(f"sigma_relation_eps_{tag}", worst, tolerance))
    return out


# ---------------------------------------------------------------------------
# kernel identities

def kernel_identity_checks(
    model: RepModel,
    rng: np.random.Generator,
    n_samples: int = 200,
    tolerance: float = 1e-10,
) -> list[dict]:
    """Block-operator and combined-kernel identities at seeded rational
    (lam, b, d) triples.  K below is the operator coefficient block_k."""
    ctx = model.ctx
    t = ctx.t
    worst: dict[str, float] = {}

    def bump(key: str, val: float):
        worst[key] = max(worst.get(key, 0.0), val)

    for _ in range(n_samples):
        lam = Fraction(math.exp(rng.uniform(-1.0, 1.0))).limit_denominator(su11.DENOM_CAP)
        b = _nonzero_rational(rng)
        d = _nonzero_rational(rng)
        lam_f, b_f, d_f = float(lam), float(b), float(d)
        kb, kd = ctx.block_k(b_f), ctx.block_k(d_f)
        scale = max(1.0, abs(kb), abs(kd))

        # c-cocycle: c(b+d) = c(b) + pi(b) c(d)
        pi_b_cd = apply(op_unipotent(model, b), cvec(ctx, d))
        pi_b_cd = FormalVector(ctx, {s: c for s, c in pi_b_cd.coeffs.items() if s[0] == "c"})
        rhs = cvec(ctx, b) + pi_b_cd
        lhs = cvec(ctx, b + d) if b + d != 0 else FormalVector(ctx, {})
        bump("c_cocycle", _vec_residual(lhs - rhs, scale))

        # dilation intertwiner: lam^t pi(lam,0) c(b) = c(lam^2 b)
        img = apply(op_diag(model, lam), cvec(ctx, b))
        bump(
            "c_dilation",
            _vec_residual(lam_f**t * img - cvec(ctx, lam * lam * b), scale),
        )

        # diagonal part carries no cocycle or kernel term
        diag_img = apply(op_diag(model, lam), FormalVector(ctx, {("eta2",): 1.0}))
        off = {s: c for s, c in diag_img.coeffs.items() if s != ("eta2",)}
        bump("diag_no_cocycle", _vec_residual(FormalVector(ctx, off), scale))

        # Delta scaling and oddness
        bump(
            "delta_scaling",
            abs(lam_f ** (2 * t) * ctx.delta(b_f) - ctx.delta(lam_f**2 * b_f)) / scale,
        )
        bump("delta_odd", abs(ctx.delta(b_f) + ctx.delta(-b_f)) / scale)

        # pairing vs Delta and norms (the two sesquilinear identities)
        if not ctx.degenerate:
            pd = ctx.c_pair(b_f, d_f)
            bump(
                "pair_imag_delta",
                abs(pd.imag - (ctx.delta(b_f - d_f) - ctx.delta(b_f) + ctx.delta(d_f))) / scale,
            )
            norm2 = lambda x: ctx.c_pair(x, x).real
            target = 0.0 if b == d else -norm2(b_f - d_f) / 2
            bump(
                "pair_real_norms",
                abs(pd.real - (target + norm2(b_f) / 2 + norm2(d_f) / 2)) / scale,
            )

        # K homogeneity, conjugation, addition
        bump("k_homogeneous", abs(ctx.block_k(lam_f * b_f) - lam_f**t * kb) / scale)
        bump("k_conjugation", abs(ctx.block_k(-b_f) - kb.conjugate()) / scale)
        if not ctx.degenerate:
            ksum = kb + kd + ctx.c_pair(d_f, -b_f)
            bump("k_addition", abs(ctx.block_k(b_f + d_f) - ksum) / scale)

        # sigma-helper identities at eps b and eps / b
        if not ctx.degenerate:
            for eps in (1, -1):
                eb, ebi = eps * b, Fraction(eps) / b
                ac = apply(op_sigma(model), cvec(ctx, eb))
                lhs1 = 1.0 + ctx.block_k(float(eb)) * ctx.block_k(float(ebi)) + pairing(
                    ac, cvec(ctx, -ebi)
                )
                bump("sigma_helper_scalar", abs(lhs1) / scale)
                pi_ac = apply(op_unipotent(model, ebi), ac)
                pi_ac = FormalVector(ctx, {s: c for s, c in pi_ac.coeffs.items() if s[0] == "c"})
                vec = ctx.block_k(float(eb)) * cvec(ctx, ebi) + pi_ac
                bump("sigma_helper_vector", _vec_residual(vec, scale))

    return [check(f"kernel_{k}", v, tolerance) for k, v in sorted(worst.items())]


def combined_k_additivity_check(
    t: float, k1a: complex, k1b: complex, rng: np.random.Generator,
    n_samples: int = 50, tolerance: float = 1e-10,
) -> dict:
    """K of the summed context equals the sum of the branch K's."""
    ca, cb = KernelContext(t, k1a), KernelContext(t, k1b)
    csum = KernelContext(t, k1a + k1b)
    worst = 0.0
    for _ in range(n_samples):
        b = float(_nonzero_rational(rng))
        lhs = csum.block_k(b)
        rhs = ca.block_k(b) + cb.block_k(b)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return check("kernel_branch_additivity", worst, tolerance)


def amap_checks(
    model: RepModel,
    pairs: Sequence[tuple[Fraction, Fraction]] = (
        (Fraction(2), Fraction(-3)),   # b > 0 > d
        (Fraction(3), Fraction(1)),    # b > d > 0
        (Fraction(-4), Fraction(-1)),  # b < d < 0
        (Fraction(5), Fraction(5)),
    ),
    tolerance: float = 1e-10,
) -> list[dict]:
    """Unitarity of the sigma action on the cocycle span, plus sigma^2 = 1."""
    ctx = model.ctx
    sig = op_sigma(model)
    worst = 0.0
    for b, d in pairs:
        lhs = pairing(apply(sig, cvec(ctx, b)), apply(sig, cvec(ctx, d)))
        rhs = pairing(cvec(ctx, b), cvec(ctx, d))
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    out = [check("amap_unitary", worst, tolerance)]
    res = compare_up_to_phase(model, compose(sig, sig), identity_op(model), exact=True)
    out.append(check("amap_involution", res.residual, tolerance))
    return out


# ---------------------------------------------------------------------------
# orbit geometry

def gram_checks(
    model: RepModel,
    rng: np.random.Generator,
    sizes: Sequence[int] = (4, 8, 12),
    zero_band: float = 1e-9,
    roundtrip_tol: float = 1e-7,
) -> list[dict]:
    """One positive eigenvalue in orbit Grams; embedding round-trips them."""
    out = []
    worst_sig = 0.0
    worst_rt = 0.0
    for size in sizes:
        els = [su11.SU11Element.identity()] + [su11.random_su11(rng) for _ in range(size - 1)]
        gram = orbit_gram(model, els)
        eigs = np.sort(np.linalg.eigvalsh(gram))
        scale = float(np.max(np.abs(eigs)))
        worst_sig = max(worst_sig, float(eigs[-2]) / scale)
        space, pts = reconstruct_embedding(gram, zero_band)
        n = len(pts)
        rt = max(
            abs(space.pair(pts[i], pts[j]) - gram[i, j])
            for i in range(n)
            for j in range(n)
        )
        worst_rt = max(worst_rt, rt / max(1.0, scale))
    out.append(check("gram_one_positive", worst_sig, zero_band))
    out.append(check("gram_embedding_roundtrip", worst_rt, roundtrip_tol))
    return out


def homomorphism_checks(
    model: RepModel,
    rng: np.random.Generator,
    n_pairs: int = 25,
    tolerance: float = 1e-10,
) -> list[dict]:
    """Projective group law: evaluation of products matches products of
    evaluations up to a unimodular phase (exactly, with phase 1, on the
    upper-triangular subgroup)."""
    worst_p = 0.0
    for _ in range(n_pairs):
        a = su11.g(_nonzero_rational(rng, 0.5, 2.0), _nonzero_rational(rng))
        b = su11.g(_nonzero_rational(rng, 0.5, 2.0), _nonzero_rational(rng))
        res = compare_up_to_phase(
            model, compose(evaluate(model, a), evaluate(model, b)), evaluate(model, a * b), exact=True
        )
        worst_p = max(worst_p, res.residual)
    worst_full = 0.0
    for _ in range(n_pairs):
        a, b = su11.random_su11(rng), su11.random_su11(rng)
        res = compare_up_to_phase(
            model, compose(evaluate(model, a), evaluate(model, b)), evaluate(model, a * b)
        )
        worst_full = max(worst_full, res.residual, abs(abs(res.phase) - 1.0))
    return [
        check("homomorphism_parabolic_exact", worst_p, tolerance),
        check("homomorphism_projective", worst_full, tolerance),
    ]


def limit_checks(model: RepModel, schedule, tolerance: float | None = None) -> list[dict]:
    """Cartan limit of the model approaches minus the angular invariant."""
    est = cartan_limit_estimate(model, schedule)
    b_max = est.points[-1][0]
    if tolerance is None:
        tolerance = max(1e-3, 5.0 * b_max ** (-model.t))
    raw_dev = abs(est.points[-1][1] + model_arg(model))
    ext_dev = abs(est.extrapolated + model_arg(model))
    return [
        check("cartan_limit_raw", raw_dev, max(tolerance, 2.0 * b_max ** (-model.t / 2))),
        check("cartan_limit_extrapolated", ext_dev, tolerance),
    ]


# ---------------------------------------------------------------------------
# suite assembly

def run_suite(
    model: RepModel, suite: str, rng: np.random.Generator, schedule, tol_scale: float = 1.0
) -> list[dict]:
    checks: list[dict] = []
    if suite in ("relations", "all"):
        checks += relation_checks(model)
        checks += sigma_relation_checks(model)
        checks += homomorphism_checks(model, rng)
    if suite in ("kernel", "all"):
        checks += kernel_identity_checks(model, rng, n_samples=60)
        checks += amap_checks(model)
        k1 = model.ctx.k1
        if not model.ctx.degenerate:
            ka = complex(0.4 * k1.real, 0.9 * k1.imag)
            kb = complex(0.6 * k1.real, 0.1 * k1.imag)
            checks.append(combined_k_additivity_check(model.t, ka, kb, rng))
    if suite in ("gram", "all"):
        checks += gram_checks(model, rng)
    if suite in ("limits", "all"):
        checks += limit_checks(model, schedule)
    if tol_scale != 1.0:
        for c in checks:
            c["tolerance"] *= tol_scale
            c["pass"] = bool(c["residual"] <= c["tolerance"])
    return sorted(checks, key=lambda c: c["name"])
