import math

import numpy as np
import pytest

import designlab as dl

# known optimal lattice packing densities, from the classical formulas:
# Z, hexagonal, FCC, D4, E8, Leech
KNOWN_DENSITIES = {
    1: 1.0,
    2: math.pi / math.sqrt(12),
    3: math.pi / math.sqrt(18),
    4: math.pi ** 2 / 16,
    8: math.pi ** 4 / 384,
    24: math.pi ** 12 / math.factorial(12),
}


def test_bessel_half_integer_zeros():
    assert dl.bessel_first_zero(-0.5) == pytest.approx(math.pi / 2, abs=1e-12)
    assert dl.bessel_first_zero(0.5) == pytest.approx(math.pi, abs=1e-12)


def test_bessel_j0_zero():
    assert dl.bessel_first_zero(0.0) == pytest.approx(2.404825557695773,
                                                      abs=1e-10)


def test_bessel_order_validation():
    with pytest.raises(ValueError):
        dl.bessel_first_zero(-0.6)


def test_bessel_zero_interlacing():
    orders = np.arange(-0.5, 32.01, 0.5)
    zeros = [dl.bessel_first_zero(float(v)) for v in orders]
    assert all(a < b for a, b in zip(zeros, zeros[1:]))


def test_ball_tone_examples():
    assert dl.ball_fundamental_tone(3, 1.0) == pytest.approx(math.pi ** 2,
                                                             abs=1e-10)
    assert dl.ball_fundamental_tone(1, 1.0) == pytest.approx(
        (math.pi / 2) ** 2, abs=1e-10)


def test_ball_tone_scaling():
    for n in (1, 2, 5):
        assert dl.ball_fundamental_tone(n, 2.0) == pytest.approx(
            dl.ball_fundamental_tone(n, 1.0) / 4, rel=1e-12)


def test_covolume_bound_1d():
    tb = dl.torus_covolume_bound(1, 1.0)
    assert tb.covolume_bound == pytest.approx(3 * math.sqrt(3) / 4, abs=1e-9)
    assert tb.rho_star == pytest.approx(1 / 3)
    # sanity on the integer lattice: covol(Z*) = 1 <= bound
    assert 1.0 <= tb.covolume_bound


def test_covolume_bound_scaling():
    for n in (1, 3, 8):
        b1 = dl.torus_covolume_bound(n, 1.0).covolume_bound
        b2 = dl.torus_covolume_bound(n, 2.0).covolume_bound
        assert b2 == pytest.approx(b1 / 2 ** n, rel=1e-12)


def test_covolume_duality_identity():
    for n in (1, 2, 4, 8, 24):
        tb = dl.torus_covolume_bound(n, 1.5)
        recon = dl.unit_ball_volume(n) * tb.r_star ** n / (1 - tb.rho_star)
        assert tb.covolume_bound == pytest.approx(recon, abs=1e-9, rel=1e-12)


def test_density_bound_values():
    assert dl.lattice_density_bound(1) == pytest.approx(3 * math.sqrt(3) / 4,
                                                        abs=1e-9)
    assert dl.lattice_density_bound(8) == pytest.approx(0.8879, abs=5e-4)


def test_density_bound_dominates_known_lattices():
    for n, density in KNOWN_DENSITIES.items():
        assert dl.lattice_density_bound(n) >= density


def test_density_scale_invariance():
    # the density bound derived from the covolume bound must not depend on s
    for n in (2, 8):
        vn = dl.unit_ball_volume(n)
        d1 = vn * (1.0 / 2) ** n * dl.torus_covolume_bound(n, 1.0).covolume_bound
        d2 = vn * (2.5 / 2) ** n * dl.torus_covolume_bound(n, 2.5).covolume_bound
        assert d1 == pytest.approx(d2, rel=1e-12)
        assert d1 == pytest.approx(dl.lattice_density_bound(n), rel=1e-12)


def test_rho_grid_agreement():
    for n in range(1, 65):
        tb = dl.torus_covolume_bound(n, 1.0)
        assert abs(tb.rho_grid - n / (n + 2)) <= 1e-6
        assert tb.covolume_grid == pytest.approx(tb.covolume_bound, rel=1e-9)


def test_cycle_discretization_matches_interval_tone():
    # path of k interior points inside cycle(256) vs the continuum interval
    space = dl.cycle(256)
    radius = 100
    k = 2 * radius + 1
    lam = dl.subset_eigen(space, space.ball(0, radius)).value
    continuum = dl.ball_fundamental_tone(1, (k + 1) / 2)
    assert abs(lam - continuum) / continuum < 0.01
