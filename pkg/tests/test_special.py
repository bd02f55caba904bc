import math

import numpy as np
import pytest

from exactpde import special as S
from exactpde.errors import DomainError
from exactpde.jet import Jet


def test_lambertw_principal_and_lower_branch():
    z = np.array([-1 / math.e, -0.2, 0.0, 1.0, 10.0, 1e6])
    w = S.lambertw(z, 0)
    assert np.allclose(w * np.exp(w), z, rtol=1e-14, atol=1e-15)
    assert S.lambertw(1.0) == pytest.approx(0.5671432904097838, abs=1e-15)
    z = -np.logspace(-300, math.log10(1 / math.e), 20)
    w = S.lambertw(z, -1)
    assert np.all(w <= -1)
    assert np.allclose(w * np.exp(w), z, rtol=1e-13, atol=0)


def test_lambertw_domain():
    with pytest.raises(DomainError):
        S.lambertw(-1.0)
    with pytest.raises(DomainError):
        S.lambertw(0.5, -1)
    with pytest.raises(ValueError):
        S.lambertw(0.5, 1)


def test_lambertw_jet_derivative():
    j = S.lambertw_jet(Jet.seed(2.0, 0, 1))
    w = S.lambertw(2.0)
    assert j.d(0) == pytest.approx(w / (2.0 * (1 + w)), rel=1e-14)


def test_kummer_closed_forms():
    for z in (-3.0, -0.5, 0.5, 4.0):
        assert S.kummer_m(1.0, 1.0, z) == pytest.approx(math.exp(z), rel=1e-14)
        assert S.kummer_m(0.5, 1.5, -z * z) == pytest.approx(
            math.sqrt(math.pi) / (2 * abs(z)) * math.erf(abs(z)), rel=1e-12
        )


def test_whittaker_against_kummer_and_derivative():
    k, m, z = 0.3, 0.8, 1.7
    ref = math.exp(-z / 2) * z ** (m + 0.5) * S.kummer_m(m - k + 0.5, 1 + 2 * m, z)
    assert S.whittaker_m(k, m, z) == pytest.approx(ref, rel=1e-15)
    j = S.whittaker_jet(Jet(k), Jet(m), Jet.seed(z, 0, 1))
    h = 1e-5
    fd = (S.whittaker_m(k, m, z + h) - S.whittaker_m(k, m, z - h)) / (2 * h)
    assert j.d(0) == pytest.approx(fd, rel=1e-8)


def test_expint1_and_erf_jets():
    j = S.expint1_jet(Jet.seed(1.3, 0, 1))
    assert j.d(0) == pytest.approx(-math.exp(-1.3) / 1.3, rel=1e-15)
    e = S.erf_jet(Jet.seed(0.4, 0, 1))
    assert e.dd(0, 0) == pytest.approx(-2 * 0.4 * 2 / math.sqrt(math.pi) * math.exp(-0.16), rel=1e-14)
    with pytest.raises(DomainError):
        S.expint1(-1.0)
