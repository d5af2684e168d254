import numpy as np
import pytest

from magtrans import linalg
from magtrans.errors import SingularSystemError


def random_systems(rng, k, n=3):
    a = rng.normal(size=(k, n, n)) + 1j * rng.normal(size=(k, n, n))
    b = rng.normal(size=(k, n)) + 1j * rng.normal(size=(k, n))
    return a + 3 * np.eye(n), b


def test_single_system():
    rng = np.random.default_rng(0)
    a, b = random_systems(rng, 1)
    x, cond = linalg.checked_solve(a[0], b[0])
    np.testing.assert_allclose(a[0] @ x, b[0], atol=1e-12)
    assert 1.0 <= cond < linalg.MAX_CONDITION


def test_batch_matches_single():
    rng = np.random.default_rng(1)
    a, b = random_systems(rng, 6)
    x, cond = linalg.checked_solve(a, b)
    for k in range(6):
        xk, ck = linalg.checked_solve(a[k], b[k])
        np.testing.assert_allclose(x[k], xk, rtol=1e-12)
        assert cond[k] == pytest.approx(ck)


def test_singular_member_is_poisoned():
    rng = np.random.default_rng(2)
    a, b = random_systems(rng, 4)
    a[1] = np.ones((3, 3))
    a[2, 0, 0] = np.nan
    x, cond = linalg.checked_solve(a, b)
    assert np.isinf(cond[1]) and np.isinf(cond[2])
    assert np.all(np.isnan(x[[1, 2]]))
    assert np.all(np.isfinite(x[[0, 3]]))


def test_single_singular_system():
    with pytest.raises(SingularSystemError):
        linalg.checked_solve(np.ones((2, 2)), np.ones(2))


def test_condition_of_identity():
    assert linalg.cond1(np.eye(4)) == 1.0
    np.testing.assert_array_equal(linalg.cond1(np.stack([np.eye(2)] * 3)), 1)
