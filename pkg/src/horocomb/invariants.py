"""The two classifying invariants: displacement t and the angular invariant.

The angular invariant of a model is the argument of -conj(K1), which lands
in [0, pi/2] under the storage convention Re K1 <= 0 <= Im K1: 0 for models
preserving a real hyperbolic subspace, t*pi/2 for the fractional powers of
the tautological action.  Two models with the same displacement are
equivalent exactly when their angular invariants agree.

The angular invariant is also recovered dynamically: the angle of the
triple (rho(1,b) x, rho(1,-b) x, x) converges, as b grows, to minus the
invariant, with error O(b^-t); a Richardson step with exponent t/2 (a safe
under-estimate of the true rate) accelerates the tail.  The analogous
finite-dimensional limit on the complex hyperbolic line is -pi/2, with
deviation ~ 3/b, and the ratio of the two sequences recovers the invariant
as a slope against pi/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import su11
from .blockrep import RepModel, model_cartan
from .errors import ValidationError
from .kernelspace import KernelContext


@dataclass(frozen=True)
class InvariantPair:
    """Displacement t in (0, 2] and angular invariant r in [0, pi/2]."""

    t: float
    r: float

    def __post_init__(self):
        if not 0.0 < self.t <= 2.0:
            raise ValidationError(f"t = {self.t} outside (0, 2]")
        if not 0.0 <= self.r <= math.pi / 2 + 1e-12:
            raise ValidationError(f"r = {self.r} outside [0, pi/2]")
        if abs(self.t - 2.0) < 1e-12 and self.r > 1e-12:
            raise ValidationError("t = 2 forces r = 0")


def _ctx_of(model) -> KernelContext:
    return model.ctx if isinstance(model, RepModel) else model


def model_arg(model) -> float:
    """Angular invariant: standard argument of -conj(K1), in [0, pi/2]."""
    k1 = _ctx_of(model).k1
    return math.atan2(k1.imag, -k1.real)


def equivalent_models(m1, m2, tol: float = 1e-12) -> bool:
    """Same displacement and same angular invariant decide equivalence."""
    c1, c2 = _ctx_of(m1), _ctx_of(m2)
    return abs(c1.t - c2.t) <= tol and abs(model_arg(c1) - model_arg(c2)) <= tol


def validate_params(t: float, r: float) -> str:
    """'constructible' | 'boundary' | 'unknown' for a target pair (t, r).

    Constructible: 0 < t < 1 with 0 <= r <= t*pi/2, or t = 1 with
    0 <= r < pi/2.  Boundary: (t=1, r=pi/2) (a finite-dimensional model)
    and (t=2, r=0).  Everything else is unknown.
    """
    eps = 1e-12
    if t <= 0 or r < -eps:
        return "unknown"
    if abs(t - 1.0) <= eps:
        if abs(r - math.pi / 2) <= eps:
            return "boundary"
        if r < math.pi / 2:
            return "constructible"
        return "unknown"
    if abs(t - 2.0) <= eps and abs(r) <= eps:
        return "boundary"
    if 0 < t < 1 and r <= t * math.pi / 2 + eps:
        return "constructible"
    return "unknown"


# ---------------------------------------------------------------------------
# angle limits

def geometric_schedule(start: float = 1.0, ratio: float = 10.0, steps: int = 9) -> list[Fraction]:
    """b-values start * ratio^k, rationalized exactly."""
    if ratio <= 1.0 or start <= 0:
        raise ValidationError("schedule needs start > 0 and ratio > 1")
    start_f = Fraction(start).limit_denominator(10**6)
    ratio_f = Fraction(ratio).limit_denominator(10**6)
    return [start_f * ratio_f**k for k in range(steps)]


def model_cartan_at(model: RepModel, b) -> float:
    """Cart(rho(1,b) x, rho(1,-b) x, x) at the sigma-fixed basepoint."""
    b = Fraction(b) if not isinstance(b, Fraction) else b
    return model_cartan(model, su11.g(1, b), su11.g(1, -b))


def finite_cartan_at(b: float) -> float:
    """The same angle for the tautological action on the complex hyperbolic
    line, at the basepoint [xi1 + xi2]; tends to -pi/2 as b grows.

    Computed from raw pairings in the isotropic basis, where the unipotent
    is [[1, ib], [0, 1]] and [xi1 + xi2] lifts to (1, 1); this stays
    stable for b far beyond the reach of generic point validation.
    """
    b = float(b)
    pair = lambda u, v: u[0] * v[1].conjugate() + u[1] * v[0].conjugate()
    w = (1.0 + 0.0j, 1.0 + 0.0j)
    wp = (1.0 + 1.0j * b, 1.0 + 0.0j)
    wm = (1.0 - 1.0j * b, 1.0 + 0.0j)
    prod = pair(wp, wm) * pair(wm, w) * pair(w, wp)
    return math.atan2(prod.imag, prod.real)


@dataclass(frozen=True)
class CartanLimit:
    points: tuple[tuple[float, float], ...]  # (b, Cart(b))
    extrapolated: float
    running: tuple[float, ...]  # Richardson value after each step


def cartan_limit_estimate(model: RepModel, b_schedule: Sequence) -> CartanLimit:
    """Cartan values along the schedule plus a Richardson-extrapolated limit.

    The limit equals -model_arg(model).  Extrapolation assumes error
    C * b^(-t/2) between consecutive geometric points.
    """
    bs = [Fraction(b) if not isinstance(b, Fraction) else b for b in b_schedule]
    vals = [model_cartan_at(model, b) for b in bs]
    running: list[float] = [vals[0]]
    p = model.t / 2.0
    for i in range(1, len(vals)):
        q = float(bs[i] / bs[i - 1])
        factor = q**p
        running.append(vals[i] + (vals[i] - vals[i - 1]) / (factor - 1.0))
    return CartanLimit(
        points=tuple((float(b), v) for b, v in zip(bs, vals)),
        extrapolated=running[-1],
        running=tuple(running),
    )


def cartan_slope(model: RepModel, b_schedule: Sequence) -> float:
    """Least-squares ratio of the model angles to the finite-dimensional
    ones over the schedule; slope * pi/2 approximates the angular invariant."""
    num = 0.0
    den = 0.0
    for b in b_schedule:
        cm = model_cartan_at(model, b)
        cf = finite_cartan_at(float(b))
        num += cm * cf
        den += cf * cf
    return num / den
