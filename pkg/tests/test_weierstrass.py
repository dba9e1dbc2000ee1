"""Coordinate forms from rational data: conformality, regularity, periods,
and the immersion integrator."""

import math

import pytest

from minsurf4.domains import PuncturedPlane, derive_rng
from minsurf4.errors import (
    DegenerateFrame,
    DomainError,
    MultivaluedImmersion,
    RequiresExactMode,
)
from minsurf4.poly import Polynomial
from minsurf4.rational import RationalFunction
from minsurf4.scalars import GaussianRational
from minsurf4.weierstrass import (
    PhiForms,
    WeierstrassData,
    check_conformality,
    check_regularity,
    data_from_phis,
    immerse,
    induced_metric_identity,
    loop_period,
    period_residues,
    phis_from_data,
)


def _z():
    return RationalFunction.z()


def _one():
    return RationalFunction.constant(1)


def _random_poly(rng, max_deg, bound=2):
    coeffs = [
        GaussianRational(rng.randint(-bound, bound), rng.randint(-bound, bound))
        for _ in range(rng.randint(0, max_deg) + 1)
    ]
    p = Polynomial(coeffs)
    return p if not p.is_zero() else Polynomial([1])


def _random_data(rng, max_deg=3):
    g1 = RationalFunction(_random_poly(rng, max_deg), _random_poly(rng, max_deg))
    g2 = RationalFunction(_random_poly(rng, max_deg), _random_poly(rng, max_deg))
    omega = RationalFunction(_random_poly(rng, max_deg), _random_poly(rng, max_deg))
    return WeierstrassData(g1, g2, omega)


def _catenoid():
    z = _z()
    return WeierstrassData(z, -z, 1 / (z * z))


def test_phi_construction_example():
    z = _z()
    w = WeierstrassData(z, -z, 1 / (z * z))
    p = phis_from_data(w)
    # phi3 = (g1 - g2) omega / 2 = 1/z; phi4 = -(i/2)(g1 + g2) omega = 0
    assert p.phi[2] == 1 / z
    assert p.phi[3].is_zero()


def test_conformality_random_round_trip():
    rng = derive_rng(113, "weier-roundtrip")
    done = 0
    while done < 60:
        w = _random_data(rng)
        p = phis_from_data(w)
        assert check_conformality(p)
        try:
            back = data_from_phis(p)
        except DegenerateFrame:
            continue  # g1 g2 == -1 makes omega-hat vanish
        assert back == w
        done += 1


def test_conformality_detects_broken_forms():
    z = _z()
    w = WeierstrassData(z, 2 * z, _one())
    p = phis_from_data(w)
    broken = PhiForms((p.phi[0], p.phi[1], p.phi[2], p.phi[3] * 2))
    assert check_conformality(p)
    assert not check_conformality(broken)


def test_conformality_requires_exact():
    p = PhiForms(
        (
            RationalFunction(Polynomial([1.0])),
            RationalFunction(Polynomial([1.0j])),
            RationalFunction(Polynomial([0.0, 1.0])),
            RationalFunction(Polynomial([1.0])),
        )
    )
    with pytest.raises(RequiresExactMode):
        check_conformality(p)


def test_rotation_invariance():
    # a rational Givens rotation of the phi vector preserves conformality
    z = _z()
    w = WeierstrassData(z, 2 * z, _one())
    p = phis_from_data(w)
    c = GaussianRational("3/5")
    s = GaussianRational("4/5")
    rotated = PhiForms(
        (
            p.phi[0] * c - p.phi[2] * s,
            p.phi[1],
            p.phi[0] * s + p.phi[2] * c,
            p.phi[3],
        )
    )
    assert check_conformality(rotated)


def test_metric_identity():
    rng = derive_rng(127, "weier-metric")
    w = _catenoid()
    p = phis_from_data(w)
    samples = [complex(rng.uniform(0.3, 2.0), rng.uniform(0.3, 2.0)) for _ in range(50)]
    assert induced_metric_identity(p, samples) < 1e-12


def test_metric_identity_values():
    # flat data: both sides equal 1 at 0; catenoid: both sides equal 4 at 1
    flat = WeierstrassData(
        RationalFunction.constant(0), RationalFunction.constant(0), _one()
    )
    p = phis_from_data(flat)
    lhs = 2.0 * sum(abs(phi.eval_at(0j)) ** 2 for phi in p.phi)
    assert lhs == pytest.approx(1.0)
    p = phis_from_data(_catenoid())
    lhs = 2.0 * sum(abs(phi.eval_at(1.0 + 0j)) ** 2 for phi in p.phi)
    assert lhs == pytest.approx(4.0)


def test_antiparallel_components_kill_phi4():
    z = _z()
    w = WeierstrassData(z, -z, _one())
    p = phis_from_data(w)
    assert p.phi[3].is_zero()


def test_regularity():
    z = _z()
    w = WeierstrassData(z, 2 * z, _one())
    p = phis_from_data(w)
    domain = PuncturedPlane([])
    assert check_regularity(p, domain).regular
    scaled = PhiForms(tuple(phi * (z - 1) for phi in p.phi))
    rep = check_regularity(scaled, domain)
    assert not rep.regular
    assert any(abs(b - 1.0) < 1e-8 for b in rep.branch_points)


def test_period_residues_catenoid():
    p = phis_from_data(_catenoid())
    domain = PuncturedPlane([GaussianRational(0)])
    rep = period_residues(p, domain)
    assert rep.well_defined
    label, res = rep.residues[0]
    assert res[0] == GaussianRational(0)
    assert res[1] == GaussianRational(0)
    assert res[2] == GaussianRational(1)
    assert res[3] == GaussianRational(0)


def test_period_obstruction_detected():
    z = _z()
    i = GaussianRational(0, 1)
    p = PhiForms((_one(), _one() * i, i / z, _one()))
    domain = PuncturedPlane([GaussianRational(0)])
    rep = period_residues(p, domain)
    assert not rep.well_defined
    with pytest.raises(MultivaluedImmersion):
        immerse(p, domain, GaussianRational(1), [GaussianRational(2)])


def test_period_residues_need_punctured_plane():
    p = phis_from_data(_catenoid())
    with pytest.raises(DomainError):
        period_residues(p, object())


def test_loop_period_catenoid():
    p = phis_from_data(_catenoid())
    periods = loop_period(p, 0.0, 1.0)
    for val in periods:
        assert abs(val.real) < 1e-8
    # the third form has residue 1: its loop integral is 2 pi i
    assert abs(periods[2] - 2j * math.pi) < 1e-8


def test_immerse_base_is_origin():
    p = phis_from_data(_catenoid())
    domain = PuncturedPlane([GaussianRational(0)])
    (x,) = immerse(p, domain, 1.0, [1.0])
    assert max(abs(v) for v in x) < 1e-12


def test_immerse_flat_example():
    flat = WeierstrassData(
        RationalFunction.constant(0), RationalFunction.constant(0), _one()
    )
    p = phis_from_data(flat)
    domain = PuncturedPlane([])
    (x,) = immerse(p, domain, 0.0, [2.0])
    assert x[0] == pytest.approx(1.0, abs=1e-9)
    assert abs(x[1]) < 1e-9 and abs(x[2]) < 1e-9 and abs(x[3]) < 1e-9


def test_immerse_path_independence():
    p = phis_from_data(_catenoid())
    domain = PuncturedPlane([GaussianRational(0)])
    (direct,) = immerse(p, domain, 1.0, [-1.0])
    (leg1,) = immerse(p, domain, 1.0, [1j])
    (leg2,) = immerse(p, domain, 1j, [-1.0])
    for d, a, b in zip(direct, leg1, leg2):
        assert d == pytest.approx(a + b, abs=1e-6)


def test_immerse_harmonic_coordinates():
    p = phis_from_data(_catenoid())
    domain = PuncturedPlane([GaussianRational(0)])
    h = 1e-3
    z0 = 1.0 + 0j
    targets = [z0, z0 + h, z0 - h, z0 + 1j * h, z0 - 1j * h]
    xs = immerse(p, domain, 1.0, targets)
    for i in range(4):
        lap = (xs[1][i] + xs[2][i] + xs[3][i] + xs[4][i] - 4 * xs[0][i]) / (h * h)
        assert abs(lap) < 1e-5


def test_data_from_phis_rejects_degenerate_frame():
    z = _z()
    i = GaussianRational(0, 1)
    # phi1 - i phi2 == 0 identically
    p = PhiForms((_one(), _one() * (-i), z, z * i))
    with pytest.raises(DegenerateFrame):
        data_from_phis(p)
