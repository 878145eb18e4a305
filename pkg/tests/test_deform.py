"""Deformation sampling, verification verdicts, and the scaling probe."""

import math

import pytest

from geodeform.catalog import CLAIMS, FAMILIES
from geodeform.configurations import build_theorem1
from geodeform.core import Point, signed_area
from geodeform.deform import (
    APPROXIMATE_MIN_EXPONENT,
    REFUTE_FACTOR,
    DeformationFamily,
    RejectionBudgetExhausted,
    RelationClaim,
    SplitMix64,
    fit_scaling_exponent,
    sample,
    scaling_probe,
    verify,
)


def test_splitmix64_reference_sequence():
    """First outputs for seed 0, from the published reference constants."""
    gen = SplitMix64(0)
    assert gen.next_u64() == 0xE220A8397B1DCDAF
    assert gen.next_u64() == 0x6E789E6AA1B965F4
    assert gen.next_u64() == 0x06C45D188009454F


def test_splitmix64_uniform_range_and_determinism():
    a = SplitMix64(987654321)
    b = SplitMix64(987654321)
    for _ in range(1000):
        u, v = a.uniform(), b.uniform()
        assert u == v
        assert 0.0 <= u < 1.0


def test_splitmix64_disk_draws_inside():
    gen = SplitMix64(42)
    for _ in range(500):
        x, y = gen.in_unit_disk()
        assert x * x + y * y <= 1.0


def test_sample_epsilon_zero_is_the_base():
    fam = FAMILIES["theorem1"]
    config = sample(fam, 0.0, 123)
    for label, base in zip("ABCD", fam.base_points):
        assert config.point(label) == base


def test_sample_is_deterministic():
    fam = FAMILIES["theorem1"]
    c1 = sample(fam, 0.37, 999)
    c2 = sample(fam, 0.37, 999)
    assert c1.points() == c2.points()
    c3 = sample(fam, 0.37, 1000)
    assert c1.points() != c3.points()


def test_sample_keeps_quadrilaterals_strictly_convex():
    fam = FAMILIES["theorem1"]
    for seed in range(1000):
        config = sample(fam, 0.3, seed)
        a, b, c, d = (config.point(l) for l in "ABCD")
        areas = [signed_area(a, b, c), signed_area(b, c, d),
                 signed_area(c, d, a), signed_area(d, a, b)]
        assert len({x > 0 for x in areas}) == 1, seed
        assert min(abs(x) for x in areas) > 0.0


def test_sample_rejection_budget():
    def never_works(*pts):
        raise ValueError("no configuration here")

    fam = DeformationFamily("impossible", (Point(0, 0), Point(1, 0)),
                            never_works)
    with pytest.raises((RejectionBudgetExhausted, ValueError)):
        sample(fam, 0.1, 0, max_rejections=5)


def test_verify_theorem_claims():
    fam = FAMILIES["theorem1"]
    rep = verify(fam, CLAIMS["theorem1_perp"].claim, 200, 0.5, 0)
    assert rep.verdict == "theorem"
    assert rep.max_residual <= 1e-9
    assert rep.mean_residual <= rep.max_residual
    assert rep.samples == 200 and rep.seed == 0


def test_verify_refutes_false_collinearity():
    fam = FAMILIES["theorem1"]
    claim = RelationClaim("collinear", ("O_ab", "O_bc", "O_cd"),
                          "apexes collinear (false in general)")
    rep = verify(fam, claim, 100, 0.5, 0)
    assert rep.verdict == "refuted"
    assert rep.max_residual > 100.0 * rep.rel_tol


def test_verify_single_sample_degenerate_is_theorem():
    fam = FAMILIES["example1"]
    rep = verify(fam, CLAIMS["example1_equilateral"].claim, 1, 0.0, 0)
    assert rep.verdict == "theorem"
    assert rep.max_residual == 0.0


def test_verify_is_reproducible():
    fam = FAMILIES["bisector"]
    claim = CLAIMS["bisector_concyclic"].claim
    assert verify(fam, claim, 50, 0.4, 7) == verify(fam, claim, 50, 0.4, 7)


def test_scaling_probe_theorem_stays_on_noise_floor():
    rep = scaling_probe(FAMILIES["theorem1"], CLAIMS["theorem1_perp"].claim,
                        (1e-3, 1e-2, 1e-1), 40, 0)
    assert rep.verdict == "theorem"
    assert rep.max_residual <= 1e-9
    assert len(rep.median_residuals) == 3


def test_scaling_probe_flags_first_order_coincidence():
    """Apex-diagonal midpoints coincide only for the square: the defect
    grows linearly in epsilon, so the probe must fit exponent 1 and call
    the claim approximate rather than a theorem."""
    claim = RelationClaim("midpoints_coincide",
                          ("O_ab", "O_cd", "O_bc", "O_da"),
                          "diagonal midpoints coincide (square only)")
    rep = scaling_probe(FAMILIES["theorem1"], claim, (1e-3, 1e-2, 1e-1), 40, 0)
    assert rep.verdict == "approximate"
    assert rep.scaling_exponent is not None
    assert rep.scaling_exponent >= 1.0


def test_scaling_probe_epsilon_floor_respected():
    fam = FAMILIES["example2"]
    assert fam.epsilon_floor == 1e-6
    assert not fam.admits(1e-9)
    assert fam.admits(1e-3)
    with pytest.raises(ValueError):
        scaling_probe(fam, CLAIMS["example2_concyclic"].claim,
                      (1e-9, 1e-3), 10, 0)


def test_fit_scaling_exponent_recovers_powers():
    eps = (1e-3, 1e-2, 1e-1)
    quadratic = [0.7 * e * e for e in eps]
    linear = [3.1 * e for e in eps]
    assert abs(fit_scaling_exponent(eps, quadratic) - 2.0) < 1e-9
    assert abs(fit_scaling_exponent(eps, linear) - 1.0) < 1e-9
    with pytest.raises(ValueError):
        fit_scaling_exponent((1e-2,), (0.1,))


def test_probe_uses_common_random_numbers():
    """Median residual ratios between adjacent epsilon blocks track the
    epsilon ratio tightly because every block reuses the same seeds."""
    claim = RelationClaim("midpoints_coincide",
                          ("O_ab", "O_cd", "O_bc", "O_da"),
                          "diagonal midpoints coincide (square only)")
    rep = scaling_probe(FAMILIES["theorem1"], claim, (1e-3, 1e-2, 1e-1), 60, 11)
    m1, m2, m3 = rep.median_residuals
    assert abs(m2 / m1 - 10.0) < 0.05
    assert abs(m3 / m2 - 10.0) < 0.5


def test_claim_evaluate_defaults_to_configuration_diameter():
    config = build_theorem1(Point(0, 0), Point(1, 0.02),
                            Point(1.03, 1.0), Point(-0.01, 0.97))
    claim = CLAIMS["theorem1_equal"].claim
    v_default = claim.evaluate(config)
    v_scaled = claim.evaluate(config, scale=10.0 * config.diameter())
    assert v_default.passed and v_scaled.passed


def test_engine_constants():
    assert REFUTE_FACTOR == 100.0
    assert APPROXIMATE_MIN_EXPONENT == 0.5


def test_verdict_bands():
    """inconclusive sits between theorem and refuted by construction."""
    fam = FAMILIES["theorem1"]
    claim = RelationClaim("collinear", ("O_ab", "O_bc", "O_cd"),
                          "apexes collinear (false in general)")
    rep = verify(fam, claim, 20, 0.5, 3)
    assert rep.refute_tol == rep.rel_tol * REFUTE_FACTOR
    assert rep.verdict in ("theorem", "inconclusive", "refuted")
    assert rep.verdict == "refuted"
