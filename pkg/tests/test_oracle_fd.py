import numpy as np
import pytest

from qbouncer.airy import ai
from qbouncer.bouncer import eigenstate, natural_system
from qbouncer.errors import DomainError
from qbouncer.oracle_fd import (
    GridEigenSolution,
    _sturm_counts,
    convergence_study,
    observed_order,
    richardson,
    solve_fd,
)
from qbouncer.spectrum import build_spectrum

LAMBDA_1 = 2.338107410459767


@pytest.fixture(scope="module")
def exact10():
    return build_spectrum(10).exact


@pytest.fixture(scope="module")
def pair():
    return solve_fd(10, 2000, 20.0), solve_fd(10, 4000, 20.0)


def test_sturm_count_matches_dense_eigensolver():
    rng = np.random.default_rng(3)
    diag = rng.uniform(-5, 5, 60)
    off = -1.3
    t = np.diag(diag) + off * (np.eye(60, k=1) + np.eye(60, k=-1))
    ev = np.linalg.eigvalsh(t)
    shifts = np.concatenate([rng.uniform(-8, 8, 30), diag[:5]])
    want = [(ev < s).sum() for s in shifts]
    assert list(_sturm_counts(diag, off * off, shifts)) == want


def test_shift_on_diagonal_entry():
    # the midpoint of the Gershgorin interval hits the constant diagonal exactly
    h = np.pi / 4000
    sol = solve_fd(3, 4000, np.pi, potential=np.zeros_like)
    assert sol.eigenvalues[0] == pytest.approx(4 / h**2 * np.sin(h / 2) ** 2, rel=1e-9)


def test_first_three_levels(pair, exact10):
    sol = pair[1]
    assert isinstance(sol, GridEigenSolution)
    assert sol.boundary == "dirichlet"
    assert np.all(np.abs(sol.eigenvalues[:3] - exact10[:3]) < 1e-4)


def test_richardson_ground_state(pair):
    r = richardson(pair[0].eigenvalues[0], pair[1].eigenvalues[0])
    assert abs(r - LAMBDA_1) < 1e-7


def test_richardson_ten_levels(pair, exact10):
    r = richardson(pair[0].eigenvalues, pair[1].eigenvalues)
    assert np.max(np.abs(r - exact10)) < 1e-6


def test_residuals_and_orthonormality(pair):
    sol = pair[1]
    assert np.all(sol.residuals < 1e-10 * np.abs(sol.eigenvalues))
    gram = sol.eigenvectors @ sol.eigenvectors.T
    assert np.max(np.abs(gram - np.eye(10))) < 1e-10
    assert np.all(sol.eigenvectors[:, 0] > 0)


def test_square_well():
    sol = solve_fd(5, 4000, np.pi, potential=np.zeros_like)
    k2 = np.arange(1, 6) ** 2
    assert np.all(np.abs(sol.eigenvalues / k2 - 1) < 1e-4)
    # the discrete spectrum is known in closed form; bisection is good to ~eps * ||T||
    h = np.pi / 4000
    assert np.allclose(sol.eigenvalues, 4 / h**2 * np.sin(np.arange(1, 6) * h / 2) ** 2, rtol=1e-9, atol=0)


def test_domain_truncation_is_negligible():
    a = solve_fd(5, 1500, 15.0)
    b = solve_fd(5, 2500, 25.0)
    assert a.h == pytest.approx(b.h)
    assert np.max(np.abs(a.eigenvalues - b.eigenvalues)) < 1e-10


def test_eigenvectors_match_airy_states(pair):
    sol = pair[1]
    nat = natural_system()
    for k in range(5):
        st = eigenstate(nat, k + 1)
        phi = st.norm_const * ai(sol.x - st.lam)
        v = sol.continuum_vector(k)
        v = v * np.sign(v @ phi)
        assert np.max(np.abs(v - phi)) < 1e-3


def test_convergence_order():
    study = convergence_study(1, [500, 1000, 2000])
    assert study.order == pytest.approx(2.0, abs=0.2)
    hs = [p[0] for p in study.points]
    assert hs == sorted(hs, reverse=True)


def test_observed_order_on_synthetic_data():
    pts = [(h, 1.0 + 0.3 * h**1.5) for h in (0.1, 0.07, 0.03)]
    assert observed_order(pts) == pytest.approx(1.5, rel=1e-9)


@pytest.mark.parametrize("grids", [[1000, 1000, 1000], [500, 1000], [500, 500, 1000]])
def test_convergence_study_needs_three_distinct_grids(grids):
    with pytest.raises(DomainError):
        convergence_study(1, grids)


@pytest.mark.parametrize("args", [(10, 499, 20.0), (0, 100, 20.0), (10, 2000, 18.0), (1, 100, -1.0)])
def test_preconditions(args):
    with pytest.raises(DomainError):
        solve_fd(*args)
