import math

import numpy as np
import pytest

import designlab as dl
from conftest import even_weight_code

TOL = 1e-9


def test_laplacian_kernel(h32):
    assert np.allclose(dl.laplacian_apply(h32, np.ones(8)), 0, atol=TOL)


def test_laplacian_delta(c4):
    out = dl.laplacian_apply(c4, [1, 0, 0, 0])
    assert np.allclose(out, [2, -1, 0, -1], atol=TOL)


def test_laplacian_parity_vector(h32):
    words = np.array(h32.labels)
    f = (-1.0) ** words.sum(axis=1)
    assert np.allclose(dl.laplacian_apply(h32, f), 6 * f, atol=TOL)


def test_dirichlet_form_examples(c4, h32):
    assert dl.dirichlet_form(c4, np.ones(4)) == pytest.approx(0, abs=TOL)
    assert dl.dirichlet_form(c4, [1, 0, 0, 0]) == pytest.approx(2, abs=TOL)
    ind = np.zeros(8)
    ind[even_weight_code(h32)] = 1.0
    assert dl.dirichlet_form(h32, ind) == pytest.approx(12, abs=TOL)


def test_dirichlet_form_edge_sum_crosscheck(j73):
    rng = np.random.default_rng(3)
    for _ in range(5):
        f = rng.normal(size=j73.n_vertices)
        assert dl.dirichlet_form(j73, f) == pytest.approx(
            dl.dirichlet_form_edges(j73, f), rel=1e-12, abs=TOL)


# ---------------------------------------------------------------------------
# dense subset eigenvalues


def test_single_vertex(h32):
    eig = dl.subset_eigen(h32, [5])
    assert eig.value == pytest.approx(3, abs=TOL)
    assert eig.eigenfunction[5] == pytest.approx(1, abs=TOL)


def test_hamming_ball_one(h32):
    eig = dl.subset_eigen(h32, h32.ball(0, 1))
    # oracle: 4x4 restriction [[3,-1,-1,-1],[-1,3,0,0],[-1,0,3,0],[-1,0,0,3]]
    oracle = np.linalg.eigvalsh(np.array([
        [3, -1, -1, -1], [-1, 3, 0, 0], [-1, 0, 3, 0], [-1, 0, 0, 3],
    ]))[0]
    assert eig.value == pytest.approx(oracle, abs=TOL)
    assert eig.value == pytest.approx(3 - math.sqrt(3), abs=TOL)


def test_cycle_path(c4):
    eig = dl.subset_eigen(c4, [3, 0, 1])
    # tridiagonal oracle: 2 - 2 cos(pi/4)
    assert eig.value == pytest.approx(2 - math.sqrt(2), abs=TOL)


def test_empty_subset(c4):
    with pytest.raises(ValueError):
        dl.subset_eigen(c4, [])


def test_full_set_and_bounds(h32):
    rng = np.random.default_rng(5)
    assert dl.subset_eigen(h32, range(8)).value == pytest.approx(0, abs=TOL)
    for _ in range(10):
        size = rng.integers(1, 9)
        omega = rng.choice(8, size=size, replace=False)
        lam = dl.subset_eigen(h32, omega).value
        assert -TOL <= lam <= 3 + TOL


def test_monotonicity(h32):
    rng = np.random.default_rng(9)
    for _ in range(10):
        size = rng.integers(1, 8)
        omega = sorted(rng.choice(8, size=size, replace=False))
        extra = rng.choice([v for v in range(8) if v not in omega])
        lam_small = dl.subset_eigen(h32, omega).value
        lam_big = dl.subset_eigen(h32, list(omega) + [int(extra)]).value
        assert lam_small >= lam_big - TOL


def test_eigenfunction_certificate(j73):
    # psi >= 0, unit norm, supported on omega, and (Lap psi)(x) <= lam psi(x)
    # on omega; Rayleigh identity ties the pieces together
    rng = np.random.default_rng(13)
    for _ in range(5):
        size = rng.integers(1, 20)
        omega = np.unique(rng.choice(j73.n_vertices, size=size, replace=False))
        eig = dl.subset_eigen(j73, omega)
        psi = eig.eigenfunction
        assert psi.min() >= -TOL
        assert np.linalg.norm(psi) == pytest.approx(1, abs=TOL)
        outside = np.setdiff1d(np.arange(j73.n_vertices), omega)
        assert np.abs(psi[outside]).max(initial=0) == 0
        assert dl.dirichlet_form(j73, psi) == pytest.approx(eig.value, abs=1e-8)
        lap_psi = dl.laplacian_apply(j73, psi)
        assert (lap_psi[omega] <= eig.value * psi[omega] + 1e-8).all()


def test_reducible_tie_breaks_to_lowest_vertex():
    c6 = dl.cycle(6)
    eig = dl.subset_eigen(c6, [0, 3])       # two singleton blocks, both lam=2
    assert eig.value == pytest.approx(2, abs=TOL)
    assert eig.eigenfunction[0] == pytest.approx(1, abs=TOL)
    assert eig.eigenfunction[3] == 0


# ---------------------------------------------------------------------------
# quotient route


def test_quotient_hamming3(h32):
    eig = dl.spherical_subset_eigen(h32, 0, [0, 1])
    assert eig.value == pytest.approx(3 - math.sqrt(3), abs=TOL)
    sym, _ = dl.quotient_matrix(h32, [0, 1])
    assert np.allclose(sym, [[3, -math.sqrt(3)], [-math.sqrt(3), 3]], atol=TOL)


def test_quotient_hamming8(h82):
    eig = dl.spherical_subset_eigen(h82, 0, [0, 1])
    assert eig.value == pytest.approx(8 - 2 * math.sqrt(2), abs=TOL)


def test_quotient_all_classes_is_zero(j73):
    eig = dl.spherical_subset_eigen(j73, 0, range(4))
    assert eig.value == pytest.approx(0, abs=TOL)


def test_quotient_requires_intersection_numbers(tmp_path):
    path = tmp_path / "c4.txt"
    path.write_text("graph 4\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 0\n")
    g = dl.load_space(str(path))
    with pytest.raises(ValueError, match="intersection numbers"):
        dl.spherical_subset_eigen(g, 0, [0, 1])


@pytest.mark.parametrize("space_fn", [
    lambda: dl.hamming(3, 2),
    lambda: dl.hamming(5, 2),
    lambda: dl.hamming(6, 2),
    lambda: dl.johnson(6, 3),
    lambda: dl.cycle(12),
])
def test_quotient_matches_dense_on_balls(space_fn):
    space = space_fn()
    for radius in range(space.n_classes + 1):
        quot = dl.spherical_subset_eigen(space, 0, range(radius + 1))
        dense = dl.subset_eigen(space, space.ball(0, radius))
        assert quot.value == pytest.approx(dense.value, abs=TOL)
        # spherical eigenfunction is a valid dense minimiser as well
        assert dl.dirichlet_form(space, quot.eigenfunction) == pytest.approx(
            dense.value, abs=1e-8)


def test_quotient_nonball_sphere_set(h82):
    # an annulus {1,2} exercises the Dirichlet drop of class 0
    quot = dl.spherical_subset_eigen(h82, 0, [1, 2])
    omega = np.flatnonzero(np.isin(h82.classes[0], [1, 2]))
    dense = dl.subset_eigen(h82, omega)
    assert quot.value == pytest.approx(dense.value, abs=TOL)


def test_load_subset(tmp_path):
    path = tmp_path / "omega.txt"
    path.write_text("3\n1\n3\n# comment\n2\n")
    assert list(dl.load_subset(str(path))) == [1, 2, 3]
