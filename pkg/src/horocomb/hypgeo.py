"""Finite-dimensional hyperbolic geometry for forms of signature (1, n).

Points of the projective model are positive lines of a Hermitian (or real
symmetric) form B with exactly one positive eigenvalue.  The metric is
cosh d([v],[w]) = |B(v,w)| / (B(v,v) B(w,w))^(1/2).  On top of that this
module computes the angular invariant of triples, Busemann values at
boundary points, and the elliptic/parabolic/hyperbolic classification of
form isometries with their translation length.

Conventions: B is linear in the first argument, antilinear in the second.
Lifts are stored unnormalized; operations normalize on the fly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateConfigurationError, UsageError, ValidationError

STRUCT_TOL = 1e-12       # self-adjointness of the form matrix
FORM_TOL = 1e-10         # isometry / isotropy input validation
# |abs(eigenvalue) - 1| below this counts as unit modulus.  Conjugating a
# parabolic 3x3 matrix perturbs the triple eigenvalue by O(eps^(1/3)), so
# this band must sit well above 1e-6.
UNIT_EIG_TOL = 1e-4
RANK_TOL = 1e-7          # singular values below RANK_TOL*scale count as zero


@dataclass(frozen=True)
class HermitianFormSpace:
    """Coordinate space with a non-degenerate form of signature (1, n)."""

    field_tag: str
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.field_tag not in ("real", "complex"):
            raise ValidationError(f"unknown field tag {self.field_tag!r}")
        j = np.array(self.matrix, dtype=complex)
        if j.ndim != 2 or j.shape[0] != j.shape[1]:
            raise ValidationError("form matrix must be square")
        if np.max(np.abs(j - j.conj().T)) > STRUCT_TOL * max(1.0, np.max(np.abs(j))):
            raise ValidationError("form matrix is not self-adjoint")
        eigs = np.linalg.eigvalsh(j)
        npos = int(np.sum(eigs > 0))
        if npos != 1 or np.any(np.abs(eigs) < STRUCT_TOL * max(1.0, np.max(np.abs(eigs)))):
            raise ValidationError(
                f"form must have signature (1, n); eigenvalues {eigs}"
            )
        j.flags.writeable = False
        object.__setattr__(self, "matrix", j)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def pair(self, v: np.ndarray, w: np.ndarray) -> complex:
        """B(v, w), linear in v and antilinear in w."""
        return complex(np.conj(w) @ (self.matrix @ v))

    def point(self, lift) -> "HPoint":
        return HPoint(self, np.asarray(lift, dtype=complex))

    def boundary_point(self, lift) -> "BoundaryPoint":
        return BoundaryPoint(self, np.asarray(lift, dtype=complex))

    def isometry(self, m) -> "FormIsometry":
        return FormIsometry(self, np.asarray(m, dtype=complex))


def minkowski_space(n: int, field_tag: str = "complex") -> HermitianFormSpace:
    """The standard diag(1, -1, ..., -1) space of signature (1, n)."""
    j = np.diag([1.0] + [-1.0] * n)
    return HermitianFormSpace(field_tag, j)


@dataclass(frozen=True)
class HPoint:
    """A point of the projective positive cone, stored by an arbitrary lift."""

    space: HermitianFormSpace
    lift: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.lift, dtype=complex)
        norm2 = float(np.real(self.space.pair(v, v)))
        if norm2 <= STRUCT_TOL * float(np.vdot(v, v).real):
            raise ValidationError("lift is not strictly positive for the form")
        v.flags.writeable = False
        object.__setattr__(self, "lift", v)

    def normalized(self) -> np.ndarray:
        v = self.lift
        return v / math.sqrt(float(np.real(self.space.pair(v, v))))

    def __eq__(self, other) -> bool:
        if not isinstance(other, HPoint) or other.space is not self.space:
            return NotImplemented
        return projectively_equal(self.lift, other.lift)

    def __hash__(self):
        raise TypeError("HPoint compares projectively and is unhashable")


@dataclass(frozen=True)
class BoundaryPoint:
    """An ideal point: a nonzero isotropic line."""

    space: HermitianFormSpace
    lift: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.lift, dtype=complex)
        scale = float(np.vdot(v, v).real)
        if scale == 0.0:
            raise ValidationError("boundary lift must be nonzero")
        if abs(self.space.pair(v, v)) > FORM_TOL * scale:
            raise ValidationError("boundary lift is not isotropic")
        v.flags.writeable = False
        object.__setattr__(self, "lift", v)


def projectively_equal(v: np.ndarray, w: np.ndarray, tol: float = 1e-9) -> bool:
    """True when w is a scalar multiple of v up to relative tolerance."""
    nv, nw = np.linalg.norm(v), np.linalg.norm(w)
    if nv == 0.0 or nw == 0.0:
        return nv == nw
    lam = np.vdot(v, w) / np.vdot(v, v)
    return bool(np.linalg.norm(w - lam * v) <= tol * nw)


@dataclass(frozen=True)
class FormIsometry:
    """A linear map preserving the space's form: M* J M = J."""

    space: HermitianFormSpace
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        j = self.space.matrix
        resid = np.max(np.abs(m.conj().T @ j @ m - j))
        if resid > FORM_TOL * max(1.0, float(np.max(np.abs(m))) ** 2):
            raise ValidationError(f"matrix does not preserve the form (residual {resid:g})")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def __matmul__(self, other):
        if isinstance(other, FormIsometry):
            if other.space is not self.space:
                raise UsageError("isometries from different spaces")
            return FormIsometry(self.space, self.matrix @ other.matrix)
        if isinstance(other, HPoint):
            return HPoint(self.space, self.matrix @ other.lift)
        if isinstance(other, BoundaryPoint):
            return BoundaryPoint(self.space, self.matrix @ other.lift)
        return NotImplemented

    def inv(self) -> "FormIsometry":
        return FormIsometry(self.space, np.linalg.inv(self.matrix))


def _same_space(*objs) -> HermitianFormSpace:
    space = objs[0].space
    for o in objs[1:]:
        if o.space is not space:
            raise UsageError("objects belong to different spaces")
    return space


def distance(x: HPoint, y: HPoint) -> float:
    """Hyperbolic distance arccosh(|B(x,y)| / sqrt(B(x,x) B(y,y)))."""
    space = _same_space(x, y)
    num = abs(space.pair(x.lift, y.lift))
    den = math.sqrt(
        float(np.real(space.pair(x.lift, x.lift)))
        * float(np.real(space.pair(y.lift, y.lift)))
    )
    return math.acosh(max(1.0, num / den))


def cartan_argument(x, y, z) -> float:
    """Angular invariant Arg(B(x,y) B(y,z) B(z,x)) of a triple of points.

    Accepts interior or boundary points.  Independent of the choice of
    lifts, alternating under permutations, and valued in [-pi/2, pi/2];
    a value outside that range (impossible for genuine configurations)
    raises ValidationError.
    """
    space = _same_space(x, y, z)
    p1 = space.pair(x.lift, y.lift)
    p2 = space.pair(y.lift, z.lift)
    p3 = space.pair(z.lift, x.lift)
    prod = p1 * p2 * p3
    scale = (
        np.linalg.norm(x.lift) * np.linalg.norm(y.lift) * np.linalg.norm(z.lift)
    ) ** 2
    if abs(prod) <= 1e-30 * float(scale):
        raise DegenerateConfigurationError("vanishing pairing in the triple")
    val = math.atan2(prod.imag, prod.real)
    if abs(val) > math.pi / 2 + 1e-9:
        raise ValidationError(f"angular invariant {val} outside [-pi/2, pi/2]")
    return val


def busemann_value(xi: BoundaryPoint, y: HPoint) -> float:
    """ln |B(y, xi)| with y normalized to B(y, y) = 1.

    The value depends on the chosen lift of xi: rescaling xi by
    lambda > 0 shifts the value by ln lambda.
    """
    space = _same_space(xi, y)
    val = abs(space.pair(y.normalized(), xi.lift))
    if val < 1e-300:
        raise ValidationError("interior point pairs to zero with an isotropic lift")
    return math.log(val)


@dataclass(frozen=True)
class IsometryClass:
    kind: str  # "elliptic" | "parabolic" | "hyperbolic"
    displacement: float


def classify_isometry(g: FormIsometry) -> IsometryClass:
    """Classify a form isometry of a space of dimension at most 3.

    Eigenvalue-modulus analysis: an eigenvalue off the unit circle means
    hyperbolic with displacement ln(max |eig|); otherwise a defective
    (non-diagonalizable) matrix is parabolic and a diagonalizable one
    elliptic, both with displacement 0.
    """
    if g.space.dim > 3:
        raise UsageError("exact classification restricted to dimension <= 3")
    m = g.matrix
    eigs = np.linalg.eigvals(m)
    big = float(np.max(np.abs(eigs)))
    if big > 1.0 + UNIT_EIG_TOL:
        return IsometryClass("hyperbolic", math.log(big))
    # all eigenvalue moduli ~ 1: decide diagonalizability cluster by cluster
    scale = max(1.0, float(np.max(np.abs(m))))
    remaining = list(eigs)
    while remaining:
        theta = remaining.pop()
        cluster = [theta]
        for other in list(remaining):
            if abs(other - theta) < 2 * UNIT_EIG_TOL:
                cluster.append(other)
                remaining.remove(other)
        if len(cluster) < 2:
            continue
        center = np.mean(cluster)
        sigma = np.linalg.svd(m - center * np.eye(m.shape[0]), compute_uv=False)
        geo_mult = int(np.sum(sigma < RANK_TOL * scale))
        if geo_mult < len(cluster):
            return IsometryClass("parabolic", 0.0)
    return IsometryClass("elliptic", 0.0)
