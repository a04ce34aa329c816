"""Formal vectors with closed-form inner products driven by a kernel constant.

A context (t, K1) determines a sesquilinear form on finite combinations of
the symbols eta1, eta2 (isotropic, pairing 1) and C(b) for nonzero rational
b.  The C-symbols span a negative-definite complement whose pairings are
fixed by the homogeneous kernel K(b) and the phase function Delta(b):

    <C(b), C(d)> = (|b-d|^t - |b|^t - |d|^t) * (-Re K1)
                   + i (Delta(b-d) - Delta(b) + Delta(d)),

with Delta(b) = sign(b) |b|^t Im K1.  K1 is stored with Re K1 <= 0 and
Im K1 >= 0; the quantity -conj(K1), whose argument in [0, pi/2] is the
model's angular invariant, appears as the matrix coefficient of the
operators built in `blockrep` (see `KernelContext.block_k`).

C-parameters are exact rationals; symbols compare exactly, never by float
proximity.  This keeps operator pipelines decidable: |b - d|^t is wildly
non-Lipschitz at b = d, so nearby-but-distinct parameters must never be
merged.

Also here: Gram/signature utilities, the phase-corrected orbit Gram of a
family of unit vectors (one positive eigenvalue for a genuine isometric
orbit), the positive-type check for cosh-distance kernels and their
fractional powers, and reconstruction of coordinates in a (1, k) space
from a Gram matrix.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import ReconstructionError, UsageError, ValidationError
from .hypgeo import HermitianFormSpace, minkowski_space

ZERO_BAND = 1e-9  # relative eigenvalue zero band for signatures


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, float)):
        return Fraction(x)
    raise TypeError(f"expected rational, got {type(x).__name__}")


@dataclass(frozen=True)
class KernelContext:
    """The pair (t, K1) that determines a representation model.

    Invariants: 0 < t <= 2; K1 != 0; Re K1 <= 0 <= Im K1; Im K1 = 0 when
    t = 2; Re K1 = 0 forces t = 1 (and such degenerate contexts refuse
    C-symbols entirely -- the model is finite-dimensional there).
    """

    t: float
    k1: complex

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "k1", complex(self.k1))
        if not 0.0 < self.t <= 2.0 + 1e-15:
            raise ValidationError(f"displacement parameter t = {self.t} outside (0, 2]")
        if self.k1 == 0:
            raise ValidationError("K1 must be nonzero")
        if self.k1.real > 1e-12 or self.k1.imag < -1e-12:
            raise ValidationError(f"K1 = {self.k1} must satisfy Re <= 0 <= Im")
        if abs(self.t - 2.0) < 1e-12 and abs(self.k1.imag) > 1e-12:
            raise ValidationError("t = 2 forces Im K1 = 0")
        if abs(self.k1.real) < 1e-12 and abs(self.t - 1.0) > 1e-12:
            raise ValidationError("Re K1 = 0 is only consistent at t = 1")

    @property
    def degenerate(self) -> bool:
        """True when the cocycle part vanishes (Re K1 = 0): no C-symbols."""
        return abs(self.k1.real) < 1e-12

    def k(self, b) -> complex:
        """K(b) = |b|^t (Re K1 + i sign(b) Im K1); K(0) = 0 by continuity."""
        b = float(b)
        if b == 0.0:
            return 0.0
        return abs(b) ** self.t * complex(self.k1.real, math.copysign(1.0, b) * self.k1.imag)

    def block_k(self, b) -> complex:
        """-conj(K(b)): the eta1-row coefficient of the block operators.

        Form preservation on the genuine (1, infinity) space forces the
        matrix entry to have real part +|c(b)|^2/2 >= 0, i.e. the sign
        convention reflected off the imaginary axis from the stored K.
        """
        return -self.k(b).conjugate()

    def delta(self, b) -> float:
        b = float(b)
        if b == 0.0:
            return 0.0
        return math.copysign(abs(b) ** self.t, b) * self.k1.imag

    def c_pair(self, b, d) -> complex:
        """<C(b), C(d)>: the form on the cocycle span (negative definite)."""
        if self.degenerate:
            raise UsageError("degenerate context (Re K1 = 0) carries no C-symbols")
        b, d = float(b), float(d)
        if b == 0.0 or d == 0.0:
            raise ValidationError("C-symbols require nonzero parameters")
        t = self.t
        re = (abs(b - d) ** t - abs(b) ** t - abs(d) ** t) * (-self.k1.real)
        im = self.delta(b - d) - self.delta(b) + self.delta(d)
        return complex(re, im)


def k_of(ctx: KernelContext, b) -> complex:
    return ctx.k(b)


# ---------------------------------------------------------------------------
# symbols and vectors

ETA1 = ("eta1",)
ETA2 = ("eta2",)


def csym(b) -> tuple:
    b = _frac(b)
    if b == 0:
        raise ValidationError("C(0) is the zero vector, not a symbol")
    return ("c", b)


Symbol = tuple


@dataclass(frozen=True)
class FormalVector:
    """Finite complex combination of symbols, in canonical (zero-free) form."""

    ctx: KernelContext
    coeffs: Mapping[Symbol, complex]

    def __post_init__(self):
        clean = {s: complex(c) for s, c in self.coeffs.items() if c != 0}
        if self.ctx.degenerate and any(s[0] == "c" for s in clean):
            raise UsageError("degenerate context (Re K1 = 0) carries no C-symbols")
        object.__setattr__(self, "coeffs", MappingProxyType(clean))

    def __add__(self, other: "FormalVector") -> "FormalVector":
        if other.ctx is not self.ctx:
            raise UsageError("vectors from different contexts")
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            out[s] = out.get(s, 0.0) + c
        return FormalVector(self.ctx, out)

    def __sub__(self, other: "FormalVector") -> "FormalVector":
        return self + (-1.0) * other

    def __rmul__(self, scalar: complex) -> "FormalVector":
        return FormalVector(self.ctx, {s: scalar * c for s, c in self.coeffs.items()})

    def symbols(self) -> set:
        return set(self.coeffs)

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(c) <= tol for c in self.coeffs.values())


def eta1(ctx: KernelContext) -> FormalVector:
    return FormalVector(ctx, {ETA1: 1.0})


def eta2(ctx: KernelContext) -> FormalVector:
    return FormalVector(ctx, {ETA2: 1.0})


def cvec(ctx: KernelContext, b) -> FormalVector:
    return FormalVector(ctx, {csym(b): 1.0})


def _symbol_pair(ctx: KernelContext, s1: Symbol, s2: Symbol) -> complex:
    k1, k2 = s1[0], s2[0]
    if k1 == "c" and k2 == "c":
        return ctx.c_pair(s1[1], s2[1])
    if k1 == "c" or k2 == "c":
        return 0.0
    return 1.0 if k1 != k2 else 0.0  # <eta1,eta2> = 1, isotropic diagonals


def pairing(u: FormalVector, v: FormalVector) -> complex:
    """The form B: linear in u, antilinear in v."""
    if u.ctx is not v.ctx:
        raise UsageError("vectors from different contexts")
    total = 0.0 + 0.0j
    for s1, c1 in u.coeffs.items():
        for s2, c2 in v.coeffs.items():
            p = _symbol_pair(u.ctx, s1, s2)
            if p != 0.0:
                total += c1 * c2.conjugate() * p
    return complex(total)


# ---------------------------------------------------------------------------
# Gram utilities

def gram_matrix(vectors: Sequence[FormalVector]) -> np.ndarray:
    n = len(vectors)
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            out[i, j] = pairing(vectors[i], vectors[j])
            out[j, i] = out[i, j].conjugate()
    return out


def signature_count(mat: np.ndarray, zero_band: float = ZERO_BAND) -> tuple[int, int, int]:
    """(positive, zero, negative) eigenvalue counts of a Hermitian matrix."""
    eigs = np.linalg.eigvalsh(np.asarray(mat))
    scale = float(np.max(np.abs(eigs))) if eigs.size else 0.0
    if scale == 0.0:
        return (0, len(eigs), 0)
    band = zero_band * scale
    npos = int(np.sum(eigs > band))
    nzero = int(np.sum(np.abs(eigs) <= band))
    return (npos, nzero, len(eigs) - npos - nzero)


def hyperbolic_orbit_gram(
    vectors: Sequence,
    base,
    inner: Callable[[object, object], complex],
) -> np.ndarray:
    """Phase-corrected Gram M[g,k] = exp(-i alpha(g,k,e)) beta(g^-1 k).

    ``vectors`` are unit lifts of orbit points, ``base`` the unit lift of
    the basepoint, ``inner`` the ambient form.  With z = inner pairings,
    beta(g^-1 k) = |z[g,k]| and alpha(g,k,e) = Arg(z[g,k] z[k,0] z[0,g]),
    so M is unitarily congruent to the honest Gram of the orbit and has
    exactly one positive eigenvalue for a genuine isometric orbit.
    """
    n = len(vectors)
    base_pair = [complex(inner(v, base)) for v in vectors]
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        out[i, i] = 1.0
        for j in range(i + 1, n):
            z = complex(inner(vectors[i], vectors[j]))
            alpha = cmath.phase(z * base_pair[j] * base_pair[i].conjugate())
            out[i, j] = abs(z) * cmath.exp(-1j * alpha)
            out[j, i] = out[i, j].conjugate()
    return out


def positive_type_check(
    vectors: Sequence,
    base,
    inner: Callable[[object, object], complex],
    power: float = 1.0,
    unit_beta: bool = False,
    tol: float = 1e-8,
) -> dict:
    """PSD report for the kernel beta(g)beta(k) - e^{-i alpha} beta(g^-1 k).

    ``power`` replaces (beta, alpha) by (beta^power, power*alpha) -- the
    fractional-power kernels stay of positive type for 0 < power < 1.
    ``unit_beta`` replaces beta by 1 (negative control: fails for any
    configuration with a nonzero angle).
    """
    n = len(vectors)
    base_pair = [complex(inner(v, base)) for v in vectors]
    mat = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            z = complex(inner(vectors[i], vectors[j]))
            alpha = cmath.phase(z * base_pair[j] * base_pair[i].conjugate())
            beta_i = 1.0 if unit_beta else abs(base_pair[i]) ** power
            beta_j = 1.0 if unit_beta else abs(base_pair[j]) ** power
            beta_ij = 1.0 if unit_beta else abs(z) ** power
            mat[i, j] = beta_i * beta_j - cmath.exp(-1j * power * alpha) * beta_ij
    eigs = np.linalg.eigvalsh(mat)
    top = float(np.max(np.abs(eigs))) if eigs.size else 0.0
    min_eig = float(eigs[0]) if eigs.size else 0.0
    return {
        "min_eigenvalue": min_eig,
        "max_abs_eigenvalue": top,
        "psd": bool(min_eig >= -tol * max(top, 1.0)),
        "eigenvalues": [float(e) for e in eigs],
    }


def reconstruct_embedding(
    gram: np.ndarray, zero_band: float = ZERO_BAND
) -> tuple[HermitianFormSpace, list[np.ndarray]]:
    """Coordinate vectors w_i in a diag(1, -1, ..., -1) space with
    B(w_i, w_j) = gram[i, j]; requires signature (1, 0, k) after dropping
    eigenvalues inside the zero band."""
    gram = np.asarray(gram, dtype=complex)
    eigs, vecs = np.linalg.eigh(gram)
    scale = float(np.max(np.abs(eigs)))
    keep = np.abs(eigs) > zero_band * scale
    eigs, vecs = eigs[keep], vecs[:, keep]
    npos = int(np.sum(eigs > 0))
    if npos != 1:
        raise ReconstructionError(
            f"signature has {npos} positive directions, need exactly 1"
        )
    order = np.argsort(-eigs)  # positive first
    eigs, vecs = eigs[order], vecs[:, order]
    coords = vecs * np.sqrt(np.abs(eigs))[None, :]
    space = minkowski_space(len(eigs) - 1, "complex")
    points = [coords[i, :] for i in range(gram.shape[0])]
    return space, points
