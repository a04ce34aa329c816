"""Block operators realizing an SU(1,1) action on formal vectors.

With respect to the splitting C.eta1 + C.eta2 + (cocycle span), the model
with parameters (t, K1), |K1| = 1, acts through three closed-form linear
isometries of the `kernelspace` form:

    diag(lam):  eta1 -> lam^t eta1, eta2 -> lam^-t eta2,
                C(b) -> lam^-t C(lam^2 b)
    unip(b):    eta1 -> eta1,
                eta2 -> k*(b) eta1 + eta2 + C(b),
                C(d) -> <C(d), C(-b)> eta1 + C(b+d) - C(b)
    sigma:      eta1 <-> eta2,  C(b) -> k*(b) C(-1/b)

where k*(b) = ctx.block_k(b) = -conj(K(b)) and <.,.> is the kernelspace
pairing.  Arbitrary group elements evaluate through the P | PsP
factorization; products of evaluated operators agree with evaluation of
products up to a unimodular phase (the action is projective on the linear
level), and `compare_up_to_phase` decides such equalities through pairings
against an auto-generated probe set.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateProbeError,
    ProbeOverflowError,
    UsageError,
    ValidationError,
)
from .kernelspace import (
    ETA1,
    ETA2,
    FormalVector,
    KernelContext,
    csym,
    cvec,
    eta1,
    eta2,
    hyperbolic_orbit_gram,
    pairing,
)
from .su11 import ParabolicCoords, SU11Element, bruhat_factor, factor_parabolic

PROBE_CAP = 64
BASE_PROBE_PARAMS = (
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(-1, 2),
    Fraction(3),
)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, float)):
        return Fraction(x)
    raise TypeError(f"expected rational, got {type(x).__name__}")


@dataclass(frozen=True)
class RepModel:
    """A kernel context normalized to |K1| = 1 (the nu = 1 gauge)."""

    ctx: KernelContext
    scale: float = 1.0  # |K1| of the context this model was normalized from

    def __post_init__(self):
        if abs(abs(self.ctx.k1) - 1.0) > 1e-12:
            raise ValidationError("RepModel requires |K1| = 1; use from_context")

    @staticmethod
    def from_context(ctx: KernelContext) -> "RepModel":
        mod = abs(ctx.k1)
        return RepModel(KernelContext(ctx.t, ctx.k1 / mod), scale=mod)

    @property
    def t(self) -> float:
        return self.ctx.t


Atom = tuple  # ("diag", Fraction) | ("unip", Fraction) | ("sigma",)


@dataclass(frozen=True)
class RepOperator:
    """Lazy composite of closed-form atoms, applied right-to-left."""

    model: RepModel
    atoms: tuple[Atom, ...]

    def __matmul__(self, other: "RepOperator") -> "RepOperator":
        return compose(self, other)


def identity_op(model: RepModel) -> RepOperator:
    return RepOperator(model, ())


def op_diag(model: RepModel, lam) -> RepOperator:
    lam = _frac(lam)
    if lam <= 0:
        raise ValidationError("diagonal parameter must be positive")
    return RepOperator(model, (("diag", lam),))


def op_unipotent(model: RepModel, b) -> RepOperator:
    return RepOperator(model, (("unip", _frac(b)),))


def op_sigma(model: RepModel) -> RepOperator:
    return RepOperator(model, (("sigma",),))


def compose(a: RepOperator, b: RepOperator) -> RepOperator:
    if a.model is not b.model and a.model.ctx is not b.model.ctx:
        raise UsageError("operators from different models")
    return RepOperator(a.model, a.atoms + b.atoms)


def _apply_diag(ctx: KernelContext, lam: Fraction, v: FormalVector) -> FormalVector:
    t = ctx.t
    lam_t = float(lam) ** t
    out: dict = {}
    for s, c in v.coeffs.items():
        if s == ETA1:
            out[ETA1] = out.get(ETA1, 0.0) + c * lam_t
        elif s == ETA2:
            out[ETA2] = out.get(ETA2, 0.0) + c / lam_t
        else:
            sym = csym(lam * lam * s[1])
            out[sym] = out.get(sym, 0.0) + c / lam_t
    return FormalVector(ctx, out)


def _add_c(out: dict, b: Fraction, coeff: complex) -> None:
    if b != 0 and coeff != 0:
        sym = csym(b)
        out[sym] = out.get(sym, 0.0) + coeff


def _apply_unip(ctx: KernelContext, b: Fraction, v: FormalVector) -> FormalVector:
    if b == 0:
        return v
    kb = ctx.block_k(b)
    out: dict = {}
    for s, c in v.coeffs.items():
        if s == ETA1:
            out[ETA1] = out.get(ETA1, 0.0) + c
        elif s == ETA2:
            out[ETA1] = out.get(ETA1, 0.0) + c * kb
            out[ETA2] = out.get(ETA2, 0.0) + c
            _add_c(out, b, c)
        else:
            d = s[1]
            out[ETA1] = out.get(ETA1, 0.0) + c * ctx.c_pair(d, -b)
            _add_c(out, b + d, c)
            _add_c(out, b, -c)
    return FormalVector(ctx, out)


def _apply_sigma(ctx: KernelContext, v: FormalVector) -> FormalVector:
    out: dict = {}
    for s, c in v.coeffs.items():
        if s == ETA1:
            out[ETA2] = out.get(ETA2, 0.0) + c
        elif s == ETA2:
            out[ETA1] = out.get(ETA1, 0.0) + c
        else:
            b = s[1]
            _add_c(out, -1 / b, c * ctx.block_k(b))
    return FormalVector(ctx, out)


def apply(op: RepOperator, v: FormalVector) -> FormalVector:
    if v.ctx is not op.model.ctx:
        raise UsageError("vector does not belong to the operator's model")
    for atom in reversed(op.atoms):
        kind = atom[0]
        if kind == "diag":
            v = _apply_diag(op.model.ctx, atom[1], v)
        elif kind == "unip":
            v = _apply_unip(op.model.ctx, atom[1], v)
        else:
            v = _apply_sigma(op.model.ctx, v)
    return v


def basepoint(model: RepModel) -> FormalVector:
    """(eta1 + eta2)/sqrt2: the unit vector fixed by sigma."""
    s = 1.0 / math.sqrt(2.0)
    return FormalVector(model.ctx, {ETA1: s, ETA2: s})


def evaluate(model: RepModel, m: SU11Element) -> RepOperator:
    """Operator for a group element via the P | PsP factorization.

    g(lam, b) maps to diag(lam) unip(b/lam); a PsP element g(lam,b) s g(1,d)
    maps to diag(lam) unip(b/lam) sigma unip(d).  Well-defined on +/- m.
    """
    f = bruhat_factor(m)
    if isinstance(f, ParabolicCoords):
        return RepOperator(model, (("diag", f.lam), ("unip", f.b / f.lam)))
    return RepOperator(
        model,
        (("diag", f.lam), ("unip", f.b / f.lam), ("sigma",), ("unip", f.d)),
    )


def busemann_character_model(model: RepModel, m: SU11Element) -> float:
    """t * ln(lambda) for m = +/- g(lambda, b); errors off the subgroup P."""
    f = factor_parabolic(m)
    if f is None:
        raise UsageError("element does not stabilize the fixed boundary point")
    return model.t * math.log(float(f.lam))


# ---------------------------------------------------------------------------
# probe machinery and projective comparison

def _op_params(op: RepOperator) -> set[Fraction]:
    out: set[Fraction] = set()
    for atom in op.atoms:
        if atom[0] == "unip" and atom[1] != 0:
            out.add(atom[1])
    return out


def probe_vectors(model: RepModel, *ops: RepOperator, extra: Iterable[Fraction] = ()) -> list[FormalVector]:
    """eta1, eta2 and C(b) probes for the base rationals and all unipotent
    parameters appearing in the operators; capped at PROBE_CAP symbols."""
    params: set[Fraction] = set(BASE_PROBE_PARAMS)
    for op in ops:
        params |= _op_params(op)
    params |= {_frac(x) for x in extra}
    params.discard(Fraction(0))
    if len(params) + 2 > PROBE_CAP:
        raise ProbeOverflowError(f"probe set would need {len(params) + 2} symbols")
    probes = [eta1(model.ctx), eta2(model.ctx)]
    if not model.ctx.degenerate:
        probes += [cvec(model.ctx, b) for b in sorted(params)]
    return probes


@dataclass(frozen=True)
class CompareResult:
    equal: bool
    phase: complex
    residual: float


def compare_up_to_phase(
    model: RepModel,
    op_a: RepOperator,
    op_b: RepOperator,
    probes: Sequence[FormalVector] | None = None,
    exact: bool = False,
    tol: float = 1e-9,
) -> CompareResult:
    """Decide op_a = theta * op_b on the probe span, |theta| = 1.

    Equality is tested through pairings against the union of the probe set
    and every symbol appearing in the images (the form is non-degenerate
    there).  ``exact`` pins theta = 1 for identities that must hold on the
    nose, not just projectively.
    """
    if probes is None:
        probes = probe_vectors(model, op_a, op_b)
    if not probes:
        raise DegenerateProbeError("empty probe set")
    images = [(apply(op_a, p), apply(op_b, p)) for p in probes]
    if any(ia.is_zero(1e-300) or ib.is_zero(1e-300) for ia, ib in images):
        raise DegenerateProbeError("an operator annihilated a probe vector")

    detectors = list(probes)
    seen = {frozenset(p.coeffs) for p in probes}
    for ia, ib in images:
        scale = max(
            [abs(c) for c in (*ia.coeffs.values(), *ib.coeffs.values())] or [1.0]
        )
        for vec in (ia, ib):
            for s, c in vec.coeffs.items():
                if abs(c) > 1e-13 * scale:
                    probe = FormalVector(model.ctx, {s: 1.0})
                    key = frozenset(probe.coeffs)
                    if key not in seen:
                        seen.add(key)
                        detectors.append(probe)

    pair_a = np.array([[pairing(ia, q) for q in detectors] for ia, _ in images])
    pair_b = np.array([[pairing(ib, q) for q in detectors] for _, ib in images])

    scale = max(1.0, float(np.max(np.abs(pair_a))), float(np.max(np.abs(pair_b))))
    if exact:
        theta = 1.0 + 0.0j
    else:
        flat_a, flat_b = pair_a.ravel(), pair_b.ravel()
        idx = np.argmax(np.minimum(np.abs(flat_a), np.abs(flat_b)))
        if min(abs(flat_a[idx]), abs(flat_b[idx])) <= 1e-12 * scale:
            raise DegenerateProbeError("no pairing-detectable nonzero coefficient")
        theta = complex(flat_a[idx] / flat_b[idx])
        theta /= abs(theta)
    residual = float(np.max(np.abs(pair_a - theta * pair_b))) / scale
    return CompareResult(residual <= tol, theta, residual)


def operator_deviation(model: RepModel, exact: bool = False):
    """Projective comparator usable as `presentation_check` deviation."""

    def deviation(op_a: RepOperator, op_b: RepOperator) -> float:
        return compare_up_to_phase(model, op_a, op_b, exact=exact).residual

    return deviation


# ---------------------------------------------------------------------------
# orbit geometry of a model

def orbit_vectors(model: RepModel, elements: Sequence[SU11Element]) -> list[FormalVector]:
    x = basepoint(model)
    return [apply(evaluate(model, m), x) for m in elements]


def orbit_gram(model: RepModel, elements: Sequence[SU11Element]) -> np.ndarray:
    """Orbit Gram at the sigma-fixed basepoint; one positive eigenvalue for
    parameters in the constructible region."""
    return hyperbolic_orbit_gram(orbit_vectors(model, elements), basepoint(model), pairing)


def model_cartan(model: RepModel, m1: SU11Element, m2: SU11Element) -> float:
    """Cart(rho(m1) x, rho(m2) x, x) from formal pairings."""
    x = basepoint(model)
    v1 = apply(evaluate(model, m1), x)
    v2 = apply(evaluate(model, m2), x)
    prod = pairing(v1, v2) * pairing(v2, x) * pairing(x, v1)
    return cmath.phase(prod)
