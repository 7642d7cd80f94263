"""Curve membership, transforms, and the orbit decision procedure."""

from fractions import Fraction
from random import Random

import pytest

from ncmoduli.errors import DomainError
from ncmoduli.exact import GaussianRational
from ncmoduli.elliptic import (
    EllipticConfiguration,
    EllPoint,
    LAMBDA_WORDS,
    LambdaPair,
    apply_group_element,
    apply_symmetry,
    is_admissible,
    make_configuration,
    on_curve,
    orbit_equivalent,
    origin_point,
    point_multiple,
    random_configuration,
    random_curve_point,
    symmetry_pair,
    translate,
    two_torsion_points,
    verify_equation_preservation,
)


def test_symbolic_equation_preservation():
    assert verify_equation_preservation() == {
        "t1": True,
        "t2": True,
        "t3": True,
        "swap": True,
        "complement": True,
    }


def test_lambda_pair_validation():
    with pytest.raises(DomainError):
        LambdaPair.from_affine(0)
    with pytest.raises(DomainError):
        LambdaPair.from_affine(1)
    pair = LambdaPair.from_affine(Fraction(5, 3))
    assert pair.affine == GaussianRational(Fraction(5, 3))


def test_point_normalization():
    assert EllPoint.make(2, 4, 8) == EllPoint.make(1, 2, 2)
    assert EllPoint.make(0, 3, 9) == EllPoint.make(0, 1, 1)
    assert EllPoint.make(0, 0, 5) == EllPoint.make(0, 0, 1)
    with pytest.raises(DomainError):
        EllPoint.make(0, 0, 0)


def test_two_torsion_lies_on_curve():
    rng = Random(60)
    for _ in range(10):
        lam, _ = random_curve_point(rng)
        pair = LambdaPair.from_affine(lam)
        for pt in two_torsion_points(pair):
            assert on_curve(pair, pt)
            assert pt.z.is_zero()


def test_random_points_lie_on_curve():
    rng = Random(61)
    for _ in range(20):
        lam, pt = random_curve_point(rng)
        pair = LambdaPair.from_affine(lam)
        assert on_curve(pair, pt)
        assert not pt.z.is_zero()


def test_translations_are_involutions_and_compose():
    rng = Random(62)
    for _ in range(15):
        lam, pt = random_curve_point(rng)
        pair = LambdaPair.from_affine(lam)
        for which in ("t1", "t2", "t3"):
            moved = translate(pair, pt, which)
            assert on_curve(pair, moved)
            assert translate(pair, moved, which) == pt
        assert translate(pair, translate(pair, pt, "t2"), "t1") == translate(pair, pt, "t3")


def test_translation_images_of_the_origin():
    pair = LambdaPair.from_affine(Fraction(7, 2))
    origin = origin_point()
    assert translate(pair, origin, "t1") == EllPoint.make(pair.l0, pair.l1, 0)
    assert translate(pair, origin, "t2") == EllPoint.make(1, 1, 0)
    assert translate(pair, origin, "t3") == EllPoint.make(0, 1, 0)
    with pytest.raises(DomainError):
        translate(pair, origin, "t9")


def test_symmetries_preserve_membership_with_pairs():
    rng = Random(63)
    for _ in range(15):
        cfg = random_configuration(rng)
        for which in ("swap", "complement"):
            out = apply_symmetry(cfg, which)
            assert on_curve(out.lam, out.p1)
            assert on_curve(out.lam, out.p2)
    pair = LambdaPair.from_affine(Fraction(3, 4))
    assert symmetry_pair(pair, "swap") == LambdaPair(GaussianRational(1), GaussianRational(Fraction(3, 4)))
    assert symmetry_pair(pair, "complement") == LambdaPair(
        GaussianRational(Fraction(1, 4)), GaussianRational(1)
    )


def test_double_complement_is_the_flip():
    rng = Random(64)
    cfg = random_configuration(rng)
    twice = apply_symmetry(apply_symmetry(cfg, "complement"), "complement")
    assert twice.lam == cfg.lam
    assert twice.p1 == cfg.p1.flipped()
    assert twice.p2 == cfg.p2.flipped()


def test_configuration_validation():
    with pytest.raises(DomainError):
        make_configuration(Fraction(2), (1, 1, 1), (1, 0, 0))
    cfg = make_configuration(Fraction(2), (1, 0, 0), (0, 1, 0))
    assert not is_admissible(cfg)  # second point is 2-torsion
    with pytest.raises(DomainError):
        orbit_equivalent(cfg, cfg)


def test_point_multiples_stay_on_curve():
    rng = Random(65)
    for _ in range(10):
        lam, pt = random_curve_point(rng)
        pair = LambdaPair.from_affine(lam)
        glam = GaussianRational(lam)
        for k in (2, 3):
            multiple = point_multiple(glam, pt, k)
            if multiple is not None:
                assert on_curve(pair, multiple)


def test_orbit_search_positive_cases():
    rng = Random(66)
    for _ in range(8):
        cfg = random_configuration(rng)
        word = rng.choice(LAMBDA_WORDS)
        tr1 = rng.choice((None, "t1", "t2", "t3"))
        tr2 = rng.choice((None, "t1", "t2", "t3"))
        image = apply_group_element(cfg, word, tr1, tr2, False)
        equivalent, witness = orbit_equivalent(cfg, image)
        assert equivalent
        # the witness reproduces the image on the nose
        rebuilt = apply_group_element(
            cfg,
            witness["lambda_word"],
            witness["translate_first"],
            witness["translate_second"],
            witness["flip"],
        )
        assert rebuilt == image


def test_orbit_search_rejects_unrelated_parameters():
    rng = Random(67)
    for _ in range(8):
        c1 = random_configuration(rng)
        lam1 = c1.lam.affine.as_fraction()
        orbit = {
            lam1,
            1 / lam1,
            1 - lam1,
            1 - 1 / lam1,
            1 / (1 - lam1),
            lam1 / (lam1 - 1),
        }
        c2 = random_configuration(rng)
        while c2.lam.affine.as_fraction() in orbit:
            c2 = random_configuration(rng)
        equivalent, witness = orbit_equivalent(c1, c2)
        assert not equivalent and witness is None


def test_orbit_search_rejects_unrelated_points_same_curve():
    rng = Random(68)
    built = 0
    while built < 5:
        lam, p1 = random_curve_point(rng)
        glam = GaussianRational(lam)
        near = point_multiple(glam, p1, 2)
        far = point_multiple(glam, p1, 5)
        if near is None or far is None or near.z.is_zero() or far.z.is_zero():
            continue
        if near == far:
            continue
        pair = LambdaPair.from_affine(lam)
        c1 = EllipticConfiguration(pair, p1, near)
        c2 = EllipticConfiguration(pair, p1, far)
        equivalent, _ = orbit_equivalent(c1, c2, include_involution=True)
        assert not equivalent
        built += 1


def test_flip_requires_the_involution_flag():
    rng = Random(69)
    cfg = random_configuration(rng)
    flipped = EllipticConfiguration(cfg.lam, cfg.p1.flipped(), cfg.p2.flipped())
    plain, _ = orbit_equivalent(cfg, flipped)
    assert not plain
    extended, witness = orbit_equivalent(cfg, flipped, include_involution=True)
    assert extended and witness["flip"] is True


def _undo_witness(cfg, witness):
    """Invert a witness generator by generator.

    Translations and the flip are involutions.  A single complement
    squares to the deck flip, so its inverse is itself followed by the
    flip on both points.
    """
    out = cfg
    if witness["flip"]:
        out = EllipticConfiguration(out.lam, out.p1.flipped(), out.p2.flipped())
    tr1 = witness["translate_first"]
    tr2 = witness["translate_second"]
    p1 = translate(out.lam, out.p1, tr1) if tr1 else out.p1
    p2 = translate(out.lam, out.p2, tr2) if tr2 else out.p2
    out = EllipticConfiguration(out.lam, p1, p2)
    for step in reversed(witness["lambda_word"]):
        out = apply_symmetry(out, step)
        if step == "complement":
            out = EllipticConfiguration(
                out.lam, out.p1.flipped(), out.p2.flipped()
            )
    return out


def test_orbit_witness_inverts_exactly():
    rng = Random(70)
    for _ in range(8):
        cfg = random_configuration(rng)
        word = rng.choice(LAMBDA_WORDS)
        tr1 = rng.choice((None, "t1", "t2", "t3"))
        tr2 = rng.choice((None, "t1", "t2", "t3"))
        flip = rng.choice((False, True))
        image = apply_group_element(cfg, word, tr1, tr2, flip)
        found, witness = orbit_equivalent(cfg, image, include_involution=True)
        assert found
        assert _undo_witness(image, witness) == cfg


def test_orbit_symmetric_for_diagonal_translations():
    # With the deck map included, elements translating both points by the
    # same torsion point have their inverses inside the searched set, so
    # the relation is symmetric on them.
    rng = Random(71)
    for _ in range(6):
        cfg = random_configuration(rng)
        word = rng.choice(LAMBDA_WORDS)
        tr = rng.choice((None, "t1", "t2", "t3"))
        flip = rng.choice((False, True))
        image = apply_group_element(cfg, word, tr, tr, flip)
        fwd, _ = orbit_equivalent(cfg, image, include_involution=True)
        bwd, _ = orbit_equivalent(image, cfg, include_involution=True)
        assert fwd and bwd


def test_orbit_asymmetry_for_mixed_translations():
    # Known limitation of the fixed 192-element sweep: conjugating a
    # single-point translation through a parameter word can pick up the
    # deck sign on one point only, and no searched element carries that.
    # The witness itself still inverts exactly (previous test).
    cfg = random_configuration(Random(7))
    image = apply_group_element(cfg, ("swap",), None, "t1", False)
    fwd, _ = orbit_equivalent(cfg, image, include_involution=True)
    bwd, _ = orbit_equivalent(image, cfg, include_involution=True)
    assert fwd and not bwd
