import numpy as np
import pytest

from freeconv import (DomainError, FamilyParams, HypothesisError,
                      ResidualReport, StableParams, cauchy_G, chi_numeric,
                      mp_cauchy, mp_r_transform, mp_s_transform, psi_from_G,
                      psi_symmetric_from_G, r_transform, s_mu2_closed,
                      s_stable_closed, s_transform_numeric, stable_G,
                      verification_cone, verify_boxtimes,
                      verify_compound_poisson)


def G_delta1(z):
    return 1.0 / (z - 1.0)


def test_point_mass_transforms():
    # psi(z) = z/(1-z), chi(w) = w/(1+w), S = 1 identically
    assert psi_from_G(G_delta1, -1.0) == pytest.approx(-0.5, abs=1e-12)
    got = chi_numeric(lambda t: psi_from_G(G_delta1, t), -0.5)
    assert got == pytest.approx(-1.0, abs=1e-10)
    for z in (-0.8, -0.5, -0.2):
        assert s_transform_numeric(G_delta1, z) == pytest.approx(1.0,
                                                                 abs=1e-9)


def test_free_poisson_transforms():
    got = chi_numeric(lambda t: psi_from_G(mp_cauchy, t), -0.5)
    assert got == pytest.approx(-2.0, abs=1e-9)
    for z in np.linspace(-0.9, -0.1, 20):
        s_num = s_transform_numeric(mp_cauchy, float(z))
        assert abs(s_num - mp_s_transform(z)) < 1e-8
    assert mp_r_transform(0.5) == pytest.approx(1.0)
    assert mp_s_transform(-0.5) == pytest.approx(2.0)


def test_psi_chi_round_trip():
    psi = lambda t: psi_from_G(mp_cauchy, t)
    for w in (-0.7, -0.4, -0.1):
        t = chi_numeric(psi, w)
        assert psi(t) == pytest.approx(w, abs=1e-12)


def test_psi_symmetric_decreasing():
    p = StableParams(2.0, 1.0)
    G = lambda z: stable_G(p, z)
    vals = [psi_symmetric_from_G(G, t) for t in (0.25, 0.5, 1.0, 2.0)]
    assert all(v < 0 for v in vals)
    assert vals == sorted(vals, reverse=True)
    # psi(it) ~ -m2 t**2 near zero; arcsine on [-1, 1] has m2 = 1/2
    t = 1e-3
    assert psi_symmetric_from_G(G, t) == pytest.approx(-0.5 * t * t,
                                                       rel=1e-3)


def test_arcsine_s_transform_closed_and_numeric():
    # alpha = 2, s = 1: S(z) = i sqrt(-z(z+2)) / z, so S(-1/2) = -i sqrt(3)
    got = s_stable_closed(2.0, 1.0, -0.5)
    assert got == pytest.approx(-1j * np.sqrt(3.0), abs=1e-14)
    p = StableParams(2.0, 1.0)
    num = s_transform_numeric(lambda z: stable_G(p, z), -0.5,
                              kind="symmetric")
    assert abs(num - got) < 1e-9
    for z in (-0.8, -0.3):
        want = 1j * np.sqrt(-z * (z + 2.0)) / z
        assert s_stable_closed(2.0, 1.0, z) == pytest.approx(want, abs=1e-13)


def test_point_mass_stable_s_transform():
    # alpha = 1, s = -1 is the point mass at 1, whose S-transform is 1
    for z in (-0.9, -0.5, -0.1):
        assert s_stable_closed(1.0, -1.0, z) == pytest.approx(1.0, abs=1e-14)


def test_mu2_closed_factorization():
    # the r = 2 member factors as free Poisson boxtimes stable at s/4
    assert s_mu2_closed(1.0, 1j, -0.5) == pytest.approx(-8j, abs=1e-13)
    for alpha, s in ((2.0, 1.0), (0.5, -1.0)):
        for z in (-0.7, -0.4, -0.15):
            want = s_stable_closed(alpha, s / 4.0, z) / (1.0 + z)
            assert s_mu2_closed(alpha, s, z) == pytest.approx(want,
                                                              abs=1e-15)


def test_mu2_closed_matches_numeric():
    for alpha, s, kind in ((2.0, 1.0, "symmetric"), (0.5, -1.0, "positive")):
        params = FamilyParams(alpha, s, 2.0)
        G = lambda z: cauchy_G(params, z)
        for z in (-0.6, -0.25):
            num = s_transform_numeric(G, z, kind=kind)
            assert abs(num - s_mu2_closed(alpha, s, z)) < 1e-8


def test_closed_form_needs_matching_angle():
    with pytest.raises(HypothesisError):
        s_stable_closed(1.0, np.exp(3j * np.pi / 4.0), -0.5)
    with pytest.raises(HypothesisError):
        verify_boxtimes(1.0, np.exp(3j * np.pi / 4.0), [-0.5])


def test_r_transform():
    p1 = FamilyParams(1.0, -1.0, 1.0)
    assert r_transform(p1, -0.2 - 0.1j) == 0.0
    # r = 2: R(z) = (1/z) G_a(1/z) - 1 with a the stable law at s/4,
    # which is psi of that stable law
    for alpha, s in ((1.0, -1.0), (2.0, 1.0)):
        p = FamilyParams(alpha, s, 2.0)
        a = StableParams(alpha, s / 4.0)
        for z in (-0.2 - 0.1j, 0.1 - 0.3j):
            want = psi_from_G(lambda w: stable_G(a, w), z)
            assert abs(r_transform(p, z) - want) < 1e-10
    with pytest.raises(DomainError):
        r_transform(p1, 0.2 + 0.1j)
    with pytest.raises(DomainError):
        r_transform(p1, 0.0)


def test_verify_compound_poisson():
    for alpha, s in ((2.0, 1.0), (0.5, -1.0)):
        grid = verification_cone(alpha, s).sample(200)
        assert verify_compound_poisson(alpha, s, grid) < 1e-10
    res, argmax = verify_compound_poisson(2.0, 1.0,
                                          verification_cone(2.0, 1.0).sample(50),
                                          return_argmax=True)
    assert isinstance(argmax, complex)


def test_verify_boxtimes():
    zs = np.linspace(-0.9, -0.1, 5)
    for alpha, s in ((2.0, 1.0), (0.5, -1.0)):
        assert verify_boxtimes(alpha, s, zs) < 1e-6
    res, arg = verify_boxtimes(2.0, 1.0, [-0.5, -0.3], return_argmax=True)
    assert arg in (-0.5, -0.3)


def test_domain_gates():
    with pytest.raises(DomainError):
        psi_from_G(mp_cauchy, 0.0)
    with pytest.raises(DomainError):
        chi_numeric(lambda t: psi_from_G(mp_cauchy, t), -1.5)
    with pytest.raises(DomainError):
        s_transform_numeric(mp_cauchy, 0.5)
    with pytest.raises(DomainError):
        s_transform_numeric(mp_cauchy, -0.5, kind="sideways")
    with pytest.raises(DomainError):
        s_stable_closed(2.0, 1.0, -1.5)
    with pytest.raises(DomainError):
        psi_symmetric_from_G(mp_cauchy, -1.0)


def test_residual_report_round_trip():
    rep = ResidualReport(identity="composition", params={"alpha": 1.0},
                         grid_spec={"n": 300}, max_residual=1e-12,
                         argmax_point=1 + 2j, tolerance=1e-10, passed=True)
    d = rep.to_dict()
    assert d["argmax_point"] == {"re": 1.0, "im": 2.0}
    assert d["passed"] is True
    rep2 = ResidualReport(identity="x", params={}, grid_spec={},
                          max_residual=0.0, argmax_point=None,
                          tolerance=1.0, passed=True)
    assert rep2.to_dict()["argmax_point"] is None
