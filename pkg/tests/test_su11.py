import math
from fractions import Fraction

import numpy as np
import pytest

from horocomb import hypgeo
from horocomb.errors import ValidationError
from horocomb.su11 import (
    ParabolicCoords,
    PsPFactors,
    SU11Element,
    U,
    bruhat_factor,
    classify_su11,
    displacement_su11,
    eval_word,
    factor_parabolic,
    g,
    phi_to_so12,
    presentation_check,
    psi_to_sl2,
    random_su11,
    reconstruct,
    s_element,
    s_word,
    to_su11,
    SO12_FORM,
)


def matrix_deviation(a: SU11Element, b: SU11Element) -> float:
    # distance up to the overall sign +/- Id
    return min(
        float(np.max(np.abs(a.matrix() - b.matrix()))),
        float(np.max(np.abs(a.matrix() + b.matrix()))),
    )


# ---------------------------------------------------------------------------
# parabolic coordinates

def test_identity_coordinates():
    assert to_su11(ParabolicCoords(Fraction(1), Fraction(0))) == SU11Element.identity()


def test_unit_determinant_enforced():
    with pytest.raises(ValidationError):
        SU11Element(Fraction(2), Fraction(0), Fraction(0), Fraction(0))


def test_parabolic_group_law():
    rng = np.random.default_rng(2)
    for _ in range(50):
        lam = Fraction(math.exp(rng.uniform(-1, 1))).limit_denominator(9999)
        gam = Fraction(math.exp(rng.uniform(-1, 1))).limit_denominator(9999)
        b = Fraction(float(rng.uniform(-2, 2))).limit_denominator(9999)
        d = Fraction(float(rng.uniform(-2, 2))).limit_denominator(9999)
        assert g(lam, b) * g(gam, d) == g(lam * gam, b / gam + lam * d)


def test_factor_parabolic_roundtrip():
    assert factor_parabolic(g(2, 1)) == ParabolicCoords(Fraction(2), Fraction(1))
    assert factor_parabolic(g(2, 1).neg()) == ParabolicCoords(Fraction(2), Fraction(1))
    assert factor_parabolic(s_element()) is None


def test_lambda_must_be_positive():
    with pytest.raises(ValidationError):
        ParabolicCoords(Fraction(-1), Fraction(0))


# ---------------------------------------------------------------------------
# Bruhat factorization

def test_bruhat_of_s_is_trivial_sandwich():
    f = bruhat_factor(s_element())
    assert f == PsPFactors(Fraction(1), Fraction(0), Fraction(0))


def test_bruhat_of_displayed_matrix():
    # the element with isotropic-basis matrix [[-2, i(3-10)], [i/3, -5/3]]
    m = g(3, 2) * s_element() * g(1, 5)
    p, q, r, s = m.xi_entries()
    assert (p, q, r, s) == (Fraction(-2), Fraction(3 - 10), Fraction(1, 3), Fraction(-5, 3))
    assert bruhat_factor(m) == PsPFactors(Fraction(3), Fraction(2), Fraction(5))


def test_bruhat_reconstruction_random():
    rng = np.random.default_rng(4)
    for _ in range(100):
        m = random_su11(rng)
        rec = reconstruct(bruhat_factor(m))
        assert matrix_deviation(rec, m) < 1e-10


def test_bruhat_p_branch():
    assert bruhat_factor(g(2, 1)) == ParabolicCoords(Fraction(2), Fraction(1))


def test_decomposition_coverage():
    rng = np.random.default_rng(6)
    kinds = set()
    for _ in range(100):
        f = bruhat_factor(random_su11(rng))
        kinds.add(type(f).__name__)
        assert isinstance(f, (ParabolicCoords, PsPFactors))
    assert kinds == {"ParabolicCoords", "PsPFactors"}


# ---------------------------------------------------------------------------
# classical maps

def test_psi_displayed_images():
    lam, b = Fraction(3, 2), Fraction(-5, 7)
    np.testing.assert_allclose(
        psi_to_sl2(g(lam, b)),
        [[float(lam), float(b)], [0.0, float(1 / lam)]],
        atol=1e-14,
    )
    np.testing.assert_allclose(psi_to_sl2(s_element()), [[0, 1], [-1, 0]], atol=1e-14)
    np.testing.assert_allclose(psi_to_sl2(SU11Element.identity()), np.eye(2), atol=1e-15)


def test_psi_determinant_and_homomorphism():
    rng = np.random.default_rng(8)
    for _ in range(50):
        x, y = random_su11(rng), random_su11(rng)
        assert np.linalg.det(psi_to_sl2(x)) == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(
            psi_to_sl2(x * y), psi_to_sl2(x) @ psi_to_sl2(y), atol=1e-12
        )


def test_phi_displayed_images():
    np.testing.assert_allclose(
        phi_to_so12(g(2, 0)), np.diag([4.0, 0.25, 1.0]), atol=1e-13
    )
    np.testing.assert_allclose(
        phi_to_so12(s_element()), [[0, 1, 0], [1, 0, 0], [0, 0, -1]], atol=1e-13
    )
    np.testing.assert_allclose(
        phi_to_so12(SU11Element.identity().neg()), np.eye(3), atol=1e-13
    )


def test_phi_unipotent_image():
    # eta'1 fixed; the mixed entries carry sqrt(2) b, not sqrt(b)
    b = 3.0
    expect = np.array(
        [
            [1.0, b * b, -math.sqrt(2.0) * b],
            [0.0, 1.0, 0.0],
            [0.0, -math.sqrt(2.0) * b, 1.0],
        ]
    )
    np.testing.assert_allclose(phi_to_so12(g(1, 3)), expect, atol=1e-13)


def test_phi_preserves_form_and_multiplies():
    rng = np.random.default_rng(10)
    for _ in range(50):
        x, y = random_su11(rng), random_su11(rng)
        px = phi_to_so12(x)
        assert np.max(np.abs(px.T @ SO12_FORM @ px - SO12_FORM)) < 1e-11
        np.testing.assert_allclose(
            phi_to_so12(x * y), phi_to_so12(x) @ phi_to_so12(y), atol=1e-11
        )


def test_phi_kernel_is_plus_minus_identity():
    assert np.max(np.abs(phi_to_so12(SU11Element.identity()) - np.eye(3))) < 1e-14
    assert np.max(np.abs(phi_to_so12(SU11Element.identity().neg()) - np.eye(3))) < 1e-14
    rng = np.random.default_rng(12)
    for _ in range(50):
        m = random_su11(rng)
        if matrix_deviation(m, SU11Element.identity()) > 1e-6:
            assert np.max(np.abs(phi_to_so12(m) - np.eye(3))) > 1e-6


def test_phi_preserves_type():
    rng = np.random.default_rng(14)
    so12 = hypgeo.HermitianFormSpace("real", SO12_FORM)
    cases = [g(2, 1), g(1, 3), s_element(), g(1, 0)]
    count = 0
    while count < 60:
        m = random_su11(rng)
        if abs(abs(float(m.a_re)) - 1.0) < 1e-3:
            continue  # stay clear of the numerical classification boundary
        cases.append(m)
        count += 1
    for m in cases:
        got = hypgeo.classify_isometry(so12.isometry(phi_to_so12(m))).kind
        assert got == classify_su11(m)


# ---------------------------------------------------------------------------
# displacement

def test_displacement_examples():
    assert displacement_su11(g(2, 0)) == pytest.approx(math.log(2.0), abs=1e-14)
    assert displacement_su11(g(1, 7)) == 0.0
    assert displacement_su11(SU11Element.identity()) == 0.0


def test_displacement_doubles_under_phi():
    rng = np.random.default_rng(16)
    so12 = hypgeo.HermitianFormSpace("real", SO12_FORM)
    for _ in range(30):
        lam = Fraction(float(rng.uniform(1.2, 3.0))).limit_denominator(9999)
        h = random_su11(rng)
        m = h * g(lam, 0) * h.inv()
        cls = hypgeo.classify_isometry(so12.isometry(phi_to_so12(m)))
        assert cls.kind == "hyperbolic"
        assert cls.displacement == pytest.approx(2 * displacement_su11(m), abs=1e-10)


# ---------------------------------------------------------------------------
# words and the presentation

def test_empty_word_is_identity():
    out = eval_word((), lambda r: g(1, r), s_element(), lambda a, b: a * b, SU11Element.identity())
    assert out == SU11Element.identity()


def test_w_squared_equals_s_minus_one():
    ev = lambda word: eval_word(
        word, lambda r: g(1, r), s_element(), lambda a, b: a * b, SU11Element.identity()
    )
    assert matrix_deviation(s_element() * s_element(), ev(s_word(-1))) == 0.0


def test_s_conjugation_relation():
    ev = lambda word: eval_word(
        word, lambda r: g(1, r), s_element(), lambda a, b: a * b, SU11Element.identity()
    )
    lhs = ev(s_word(2)) * ev((U(3),)) * ev(s_word(Fraction(1, 2)))
    assert matrix_deviation(lhs, ev((U(12),))) == 0.0


def test_s_word_lands_on_diagonal():
    ev = lambda word: eval_word(
        word, lambda r: g(1, r), s_element(), lambda a, b: a * b, SU11Element.identity()
    )
    for a in (2, 3, Fraction(1, 2)):
        assert matrix_deviation(ev(s_word(a)), g(a, 0)) == 0.0


def test_presentation_check_canonical():
    report = presentation_check(
        u_image=lambda r: g(1, r),
        w_image=s_element(),
        mul=lambda a, b: a * b,
        identity=SU11Element.identity(),
        deviation=matrix_deviation,
    )
    assert max(report.values()) < 1e-10


def test_presentation_check_under_phi():
    report = presentation_check(
        u_image=lambda r: phi_to_so12(g(1, r)),
        w_image=phi_to_so12(s_element()),
        mul=lambda a, b: a @ b,
        identity=np.eye(3),
        deviation=lambda a, b: float(np.max(np.abs(a - b))),
    )
    assert max(report.values()) < 1e-9


def test_presentation_check_negative_control():
    # corrupting u(1) by a 1% parameter shift must blow up the additive relation
    def u_image(r):
        if r == 1:
            return g(1, Fraction(101, 100))
        return g(1, r)

    report = presentation_check(
        u_image=u_image,
        w_image=s_element(),
        mul=lambda a, b: a * b,
        identity=SU11Element.identity(),
        deviation=matrix_deviation,
    )
    assert report["u_additive"] > 1e-3


def test_letter_validation():
    with pytest.raises(ValidationError):
        U(0)
