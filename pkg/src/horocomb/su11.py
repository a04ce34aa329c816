"""The group layer: SU(1,1), its parabolic subgroup, and its classical maps.

Elements are stored as M(alpha, beta) = [[a, b], [conj(b), conj(a)]] with
|a|^2 - |b|^2 = 1 in the basis {e1, e2} where the form is diag(1, -1).
The parabolic coordinates g(lambda, b) = [[lam, i b], [0, 1/lam]] live in the
isotropic basis xi1 = (e1+e2)/sqrt2, xi2 = (e1-e2)/sqrt2; the basis change is
applied exactly, so elements built from rational data multiply and factor
without rounding.  That exactness is load-bearing: downstream symbolic
operators index basis vectors by these rational parameters.

Also provided: the isomorphism to SL2(R) (via its standard images on the
upper-triangular subgroup and the rotation w), the double cover onto
SO(1,2), translation lengths, and a generic checker for the four defining
relations of the group presentation by unipotents u(r) and the element w.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, TypeVar, Union

import numpy as np

from .errors import ValidationError

Rat = Union[Fraction, int]

TRACE_TOL = 1e-10  # |Re(alpha)| vs 1 band for the type trichotomy


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)  # exact binary value
    raise TypeError(f"expected a rational number, got {type(x).__name__}")


@dataclass(frozen=True)
class SU11Element:
    """M(alpha, beta) with exact rational real/imaginary parts."""

    a_re: Fraction
    a_im: Fraction
    b_re: Fraction
    b_im: Fraction

    def __post_init__(self):
        for name in ("a_re", "a_im", "b_re", "b_im"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        det = self.a_re**2 + self.a_im**2 - self.b_re**2 - self.b_im**2
        if abs(float(det) - 1.0) > 1e-12:
            raise ValidationError(f"|alpha|^2 - |beta|^2 = {float(det)} != 1")

    @staticmethod
    def from_alpha_beta(alpha: complex, beta: complex, denom_cap: int | None = None) -> "SU11Element":
        parts = [alpha.real, alpha.imag, beta.real, beta.imag]
        fracs = [Fraction(p) for p in parts]
        if denom_cap is not None:
            fracs = [f.limit_denominator(denom_cap) for f in fracs]
        return SU11Element(*fracs)

    @staticmethod
    def identity() -> "SU11Element":
        return SU11Element(Fraction(1), Fraction(0), Fraction(0), Fraction(0))

    @property
    def alpha(self) -> complex:
        return complex(float(self.a_re), float(self.a_im))

    @property
    def beta(self) -> complex:
        return complex(float(self.b_re), float(self.b_im))

    def matrix(self) -> np.ndarray:
        a, b = self.alpha, self.beta
        return np.array([[a, b], [np.conj(b), np.conj(a)]])

    def __mul__(self, other: "SU11Element") -> "SU11Element":
        # (a1 + b1 J)(a2 + b2 J) in the M(a, b) parametrization:
        # alpha = a1 a2 + b1 conj(b2), beta = a1 b2 + b1 conj(a2)
        a1r, a1i, b1r, b1i = self.a_re, self.a_im, self.b_re, self.b_im
        a2r, a2i, b2r, b2i = other.a_re, other.a_im, other.b_re, other.b_im
        ar = a1r * a2r - a1i * a2i + b1r * b2r + b1i * b2i
        ai = a1r * a2i + a1i * a2r + b1i * b2r - b1r * b2i
        br = a1r * b2r - a1i * b2i + b1r * a2r + b1i * a2i
        bi = a1r * b2i + a1i * b2r + b1i * a2r - b1r * a2i
        return SU11Element(ar, ai, br, bi)

    def inv(self) -> "SU11Element":
        return SU11Element(self.a_re, -self.a_im, -self.b_re, -self.b_im)

    def neg(self) -> "SU11Element":
        return SU11Element(-self.a_re, -self.a_im, -self.b_re, -self.b_im)

    # entries of the same element in the isotropic basis {xi1, xi2}:
    # [[p, i q], [i r, s]] with p, q, r, s rational
    def xi_entries(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        p = self.a_re + self.b_re
        q = self.a_im - self.b_im
        r = self.a_im + self.b_im
        s = self.a_re - self.b_re
        return p, q, r, s


def s_element() -> SU11Element:
    """The involution s: xi1 -> i xi2, xi2 -> i xi1 (alpha = i, beta = 0)."""
    return SU11Element(Fraction(0), Fraction(1), Fraction(0), Fraction(0))


@dataclass(frozen=True)
class ParabolicCoords:
    """g(lambda, b) with lambda > 0, both exact rationals."""

    lam: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", _frac(self.lam))
        object.__setattr__(self, "b", _frac(self.b))
        if self.lam <= 0:
            raise ValidationError("parabolic coordinate lambda must be positive")


def to_su11(p: ParabolicCoords) -> SU11Element:
    """g(lambda, b) as an M(alpha, beta); exact in the rational entries."""
    lam, b = p.lam, p.b
    half = Fraction(1, 2)
    ar = (lam + 1 / lam) * half
    ai = b * half
    br = (lam - 1 / lam) * half
    bi = -b * half
    return SU11Element(ar, ai, br, bi)


def g(lam, b) -> SU11Element:
    return to_su11(ParabolicCoords(_frac(lam), _frac(b)))


def factor_parabolic(m: SU11Element, tol: float = 1e-12) -> ParabolicCoords | None:
    """Recover (lambda, b) when m = +/- g(lambda, b); None if m is not in P."""
    p, q, r, s = m.xi_entries()
    scale = 1.0 + abs(float(m.a_re)) + abs(float(m.a_im)) + abs(float(m.b_re)) + abs(float(m.b_im))
    if abs(float(r)) > tol * scale:
        return None
    sign = 1 if p > 0 else -1
    lam = sign * p
    b = sign * q
    return ParabolicCoords(lam, b)


@dataclass(frozen=True)
class PsPFactors:
    """m = +/- g(lam, b) . s . g(1, d)."""

    lam: Fraction
    b: Fraction
    d: Fraction


def bruhat_factor(m: SU11Element) -> ParabolicCoords | PsPFactors:
    """Factor any element through the decomposition SU(1,1) = P | PsP.

    In the isotropic basis, g(lam,b) s g(1,d) = [[-b, i(lam - b d)],
    [i/lam, -d/lam]], so the lower-left entry decides the branch.  Signs
    are normalized so lambda > 0; the result reconstructs +/- m exactly.
    """
    p, q, r, s = m.xi_entries()
    if r == 0:
        factored = factor_parabolic(m, tol=0.0)
        assert factored is not None
        return factored
    sign = 1 if r > 0 else -1
    lam = 1 / (sign * r)
    b = -sign * p
    d = -lam * sign * s
    return PsPFactors(lam, b, d)


def reconstruct(f: ParabolicCoords | PsPFactors) -> SU11Element:
    if isinstance(f, ParabolicCoords):
        return to_su11(f)
    return to_su11(ParabolicCoords(f.lam, f.b)) * s_element() * g(1, f.d)


# ---------------------------------------------------------------------------
# classical maps

_T_SL2 = np.array([[1.0, -1.0], [1.0, 1.0]]) / math.sqrt(2.0)


def psi_to_sl2(m: SU11Element) -> np.ndarray:
    """Isomorphism onto SL2(R) with psi(g(lam,b)) = [[lam, b], [0, 1/lam]]
    and psi(s) = [[0, 1], [-1, 0]]."""
    a, b = m.alpha, m.beta
    raw = np.array(
        [
            [a.real + b.imag, b.real + a.imag],
            [b.real - a.imag, a.real - b.imag],
        ]
    )
    return _T_SL2.T @ raw @ _T_SL2


def phi_raw(m: SU11Element) -> np.ndarray:
    """Degree-two real 3x3 representation, from the action H -> M H M* on
    the trace-free part of the Hermitian 2x2 matrices."""
    a, b = m.alpha, m.beta
    a2, b2 = a * a, b * b
    ab = a * b
    cab = np.conj(a) * b
    return np.array(
        [
            [(a2 - b2).real, (a2 + b2).imag, 2 * ab.imag],
            [-(a2 - b2).imag, (a2 + b2).real, 2 * ab.real],
            [2 * cab.imag, 2 * cab.real, abs(a) ** 2 + abs(b) ** 2],
        ]
    )


_T_SO12 = np.array(
    [
        [0.0, 0.0, math.sqrt(2.0)],
        [1.0, -1.0, 0.0],
        [1.0, 1.0, 0.0],
    ]
) / math.sqrt(2.0)
_T_SO12_INV = np.linalg.inv(_T_SO12)

# form preserved by phi_to_so12 images: first two basis vectors isotropic
# with pairing 1, third of square -1
SO12_FORM = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, -1.0]])


def phi_to_so12(m: SU11Element) -> np.ndarray:
    """Double cover SU(1,1) -> SO(1,2) with kernel {+I, -I}.

    Images preserve SO12_FORM; Phi(g(lam,0)) = diag(lam^2, lam^-2, 1) and
    Phi(s) = [[0,1,0],[1,0,0],[0,0,-1]].
    """
    return _T_SO12_INV @ phi_raw(m) @ _T_SO12


def classify_su11(m: SU11Element) -> str:
    """Type trichotomy by |Re(alpha)| against 1."""
    tre = abs(float(m.a_re))
    if tre > 1.0 + TRACE_TOL:
        return "hyperbolic"
    if tre < 1.0 - TRACE_TOL:
        return "elliptic"
    off = abs(float(m.a_im)) + abs(float(m.b_re)) + abs(float(m.b_im))
    return "elliptic" if off < TRACE_TOL else "parabolic"


def displacement_su11(m: SU11Element) -> float:
    """Translation length on the complex hyperbolic line: 0 unless
    hyperbolic, then ln of the largest eigenvalue modulus."""
    if classify_su11(m) != "hyperbolic":
        return 0.0
    return math.acosh(abs(float(m.a_re)))


# ---------------------------------------------------------------------------
# words in the presentation generators

T = TypeVar("T")


@dataclass(frozen=True)
class Letter:
    kind: str  # "u" | "w"
    param: Fraction | None = None

    def __post_init__(self):
        if self.kind == "u":
            if self.param is None or self.param == 0:
                raise ValidationError("u-letters need a nonzero rational parameter")
        elif self.kind != "w":
            raise ValidationError(f"unknown letter kind {self.kind!r}")


def U(r) -> Letter:
    return Letter("u", _frac(r))


W = Letter("w")

GroupWord = tuple[Letter, ...]


def s_word(r) -> GroupWord:
    """Derived letter s(r) = w u(1/r) w u(r) w u(1/r)."""
    r = _frac(r)
    return (W, U(1 / r), W, U(r), W, U(1 / r))


def eval_word(
    word: Iterable[Letter],
    u_image: Callable[[Fraction], T],
    w_image: T,
    mul: Callable[[T, T], T],
    identity: T,
) -> T:
    """Left-to-right product of the images of a word's letters."""
    out = identity
    for letter in word:
        out = mul(out, w_image if letter.kind == "w" else u_image(letter.param))
    return out


def presentation_check(
    u_image: Callable[[Fraction], T],
    w_image: T,
    mul: Callable[[T, T], T],
    identity: T,
    deviation: Callable[[T, T], float],
    samples: Sequence[Rat] = (1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 3),
) -> dict[str, float]:
    """Worst-case deviation of the four presentation relations.

    1. u is additive: u(a) u(b) = u(a+b)
    2. s is multiplicative: s(a) s(b) = s(ab)
    3. w^2 = s(-1)
    4. s(a) u(b) s(1/a) = u(b a^2)

    ``deviation`` measures the distance between two images (matrix norm of
    the difference, or a projective comparator for linear-lift targets).
    """
    samples = [_frac(x) for x in samples]
    ev = lambda word: eval_word(word, u_image, w_image, mul, identity)

    report: dict[str, float] = {}
    dev = 0.0
    for a in samples:
        for b in samples:
            prod = mul(ev((U(a),)), ev((U(b),)))
            rhs = identity if a + b == 0 else ev((U(a + b),))
            dev = max(dev, deviation(prod, rhs))
    report["u_additive"] = dev

    dev = 0.0
    for a in samples:
        for b in samples:
            dev = max(dev, deviation(mul(ev(s_word(a)), ev(s_word(b))), ev(s_word(a * b))))
    report["s_multiplicative"] = dev

    report["w_squared"] = deviation(mul(w_image, w_image), ev(s_word(-1)))

    dev = 0.0
    for a in samples:
        for b in samples:
            lhs = mul(mul(ev(s_word(a)), ev((U(b),))), ev(s_word(1 / a)))
            dev = max(dev, deviation(lhs, ev((U(b * a * a),))))
    report["s_u_conjugation"] = dev
    return report


# ---------------------------------------------------------------------------
# seeded sampling (shared by the CLI and the test suites)

DENOM_CAP = 2**16


def random_su11(rng: np.random.Generator, denom_cap: int = DENOM_CAP) -> SU11Element:
    """Seeded rational group element g(lam, b) s^eps g(1, d).

    lam = exp(uniform[-1, 1]) and b, d uniform[-2, 2], all rationalized to
    denominators <= denom_cap so that downstream symbolic parameters stay
    exactly representable.
    """
    lam = Fraction(math.exp(rng.uniform(-1.0, 1.0))).limit_denominator(denom_cap)
    b = Fraction(rng.uniform(-2.0, 2.0)).limit_denominator(denom_cap)
    d = Fraction(rng.uniform(-2.0, 2.0)).limit_denominator(denom_cap)
    eps = int(rng.integers(0, 2))
    out = g(lam, b)
    if eps:
        out = out * s_element()
    return out * g(1, d)
