"""Small dense complex linear algebra with condition checks.

Single systems go through :mod:`scipy.linalg`; stacks of systems, as
assembled by the sweep engine, go through the batched routines of
:mod:`numpy.linalg`.

"""

import numpy as np
import scipy.linalg

from .errors import SingularSystemError

__all__ = [
    "MAX_CONDITION",
    "inv",
    "solve",
    "norm1",
    "cond1",
    "checked_solve",
]

MAX_CONDITION = 1e12


def inv(a):
    if np.ndim(a) == 2:
        return scipy.linalg.inv(a)
    else:
        return np.linalg.inv(a)


def solve(a, b):
    if np.ndim(a) == 2:
        return scipy.linalg.solve(a, b)
    else:
        # trailing axis keeps numpy from reading b as a stack of matrices
        return np.linalg.solve(a, b[..., None])[..., 0]


def norm1(a):
    """Induced 1-norm (maximum absolute column sum) of each matrix."""
    return np.max(np.sum(np.abs(a), axis=-2), axis=-1)


def cond1(a):
    """
    Condition number in the 1-norm, from the explicit inverse.

    Parameters
    ----------
    a : (..., n, n) array-like
        Square matrix or stack of square matrices.

    Returns
    -------
    float or (...,) ndarray of float
        ``norm1(a) * norm1(inv(a))``. Exactly singular or non-finite
        matrices have an infinite condition number.

    """
    a = np.asarray(a)
    if a.ndim == 2:
        if not np.all(np.isfinite(a)):
            return np.inf
        try:
            return float(norm1(a) * norm1(inv(a)))
        except np.linalg.LinAlgError:
            return np.inf
    flat = a.reshape((-1,) + a.shape[-2:])
    out = np.full(len(flat), np.inf)
    finite = np.all(np.isfinite(flat), axis=(-2, -1))
    try:
        out[finite] = norm1(flat[finite]) * norm1(inv(flat[finite]))
    except np.linalg.LinAlgError:
        # one singular member poisons the batched inverse
        for i in np.flatnonzero(finite):
            out[i] = cond1(flat[i])
    return out.reshape(a.shape[:-2])


def checked_solve(a, b, max_cond=MAX_CONDITION):
    """
    Solve ``a @ x = b``, refusing numerically rank-deficient systems.

    Parameters
    ----------
    a : (n, n) or (k, n, n) array-like of complex
        Coefficient matrix or stack of coefficient matrices.
    b : (n,) or (k, n) array-like of complex
        Right-hand side(s).
    max_cond : float, optional
        Largest acceptable 1-norm condition number.

    Returns
    -------
    x : (n,) or (k, n) ndarray of complex
        Solution. For stacks, rows whose system is rejected are NaN.
    cond : float or (k,) ndarray of float
        Condition number of each system.

    Raises
    ------
    SingularSystemError
        For a single system whose condition number exceeds `max_cond`.

    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    cond = cond1(a)
    if a.ndim == 2:
        assert b.shape == a.shape[:1]
        if not cond <= max_cond:
            raise SingularSystemError(
                "coefficient matrix is singular to working precision "
                "(condition number {:.3g} > {:.3g})".format(cond, max_cond)
            )
        return solve(a, b), cond
    assert a.ndim == 3 and b.shape == a.shape[:2]
    ok = cond <= max_cond
    x = np.full(b.shape, np.nan, dtype=complex)
    if np.any(ok):
        x[ok] = solve(a[ok], b[ok])
    return x, cond
