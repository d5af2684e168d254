"""Nelder-Mead minimization with one restart and a residual history."""

import logging
from typing import List, NamedTuple

import numpy as np
import scipy.optimize

from ..errors import ConvergenceError

__all__ = [
    "SimplexOutcome",
    "simplex_minimize",
]

logger = logging.getLogger(__name__)


class SimplexOutcome(NamedTuple):
    x: np.ndarray
    fun: float
    nfev: int
    nit: int
    converged: bool
    history: List[float]


def simplex_minimize(
    cost, x0, maxfev=2000, xatol=1e-9, fatol=np.inf, strict=True
):
    """
    Minimize `cost` by Nelder-Mead, then restart once from the optimum.

    The restart builds a fresh simplex around the first optimum, which
    recovers from simplices that collapsed early.

    Parameters
    ----------
    cost : callable
        Function of a parameter vector.
    x0 : (n,) array-like of float
        Starting point.
    maxfev : int, optional
        Evaluation cap of each run.
    xatol, fatol : float, optional
        Termination tolerances of each run, see
        :func:`scipy.optimize.minimize`.
    strict : bool, optional
        If True, raise :class:`ConvergenceError` when the restart also
        stops at the evaluation cap.

    Returns
    -------
    SimplexOutcome

    """
    best = [np.inf]
    history = []

    def tracked(p):
        value = cost(p)
        if value < best[0]:
            best[0] = value
        return value

    def callback(xk):
        history.append(float(best[0]))

    options = dict(maxfev=maxfev, xatol=xatol, fatol=fatol)
    nfev = nit = 0
    x = np.asarray(x0, dtype=float)
    for run in range(2):
        res = scipy.optimize.minimize(
            tracked,
            x,
            method="Nelder-Mead",
            callback=callback,
            options=options,
        )
        nfev += res.nfev
        nit += res.nit
        x = res.x
        logger.debug(
            "simplex run %d: cost %.6g after %d evaluations (%s)",
            run,
            res.fun,
            res.nfev,
            res.message,
        )
    if not res.success and strict:
        raise ConvergenceError(
            "fit did not converge within {} evaluations: {}".format(
                maxfev, res.message
            )
        )
    return SimplexOutcome(x, float(res.fun), nfev, nit, res.success, history)
