"""Problem containers, normalization, and the penalized least-squares objective.

The objective is

    J(beta) = (1/2n) ||X beta - y||_2^2 + lam ||beta||_1 + (alpha/2n) ||beta||_2^2,

with ``alpha = 0`` giving the plain l1-penalized criterion. All solvers in this
package assume the columns of ``X`` are centered and scaled to Euclidean norm
sqrt(n) (see :func:`normalize`); the ``normalized`` flag records whether that
holds for a given instance.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ZeroVarianceColumn

# Column norms must sit within this absolute distance of sqrt(n) for the
# instance to count as normalized.
NORMALIZED_TOL = 1e-8


class ProblemData:
    """Immutable regression instance: design ``X``, response ``y``, ridge weight ``alpha``.

    ``X`` is stored column-major (every kernel works column-wise) and ``X'y``
    is computed once and cached. Instances are safe to share across
    concurrent solver runs; the arrays are marked read-only.
    """

    __slots__ = ("X", "y", "alpha", "xty", "normalized")

    def __init__(self, X, y, alpha=0.0):
        X = np.asfortranarray(X, dtype=np.float64)
        y = np.ascontiguousarray(y, dtype=np.float64)
        if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
            raise DimensionMismatch(f"design must be a 2-d matrix, got shape {X.shape}")
        if y.ndim != 1 or y.shape[0] != X.shape[0]:
            raise DimensionMismatch(
                f"response length {y.shape} does not match {X.shape[0]} rows"
            )
        if not np.isfinite(X).all() or not np.isfinite(y).all():
            raise ValueError("design and response must be finite")
        if not (alpha >= 0.0):
            raise ValueError(f"ridge weight must be >= 0, got {alpha}")
        self.X = X
        self.y = y
        self.alpha = float(alpha)
        self.xty = X.T @ y
        norms = np.linalg.norm(X, axis=0)
        self.normalized = bool(np.max(np.abs(norms - np.sqrt(X.shape[0]))) <= NORMALIZED_TOL)
        for arr in (self.X, self.y, self.xty):
            arr.flags.writeable = False

    @property
    def n(self):
        return self.X.shape[0]

    @property
    def p(self):
        return self.X.shape[1]

    def with_alpha(self, alpha):
        """Sibling instance sharing the data arrays but with a different ridge weight."""
        if not (alpha >= 0.0):
            raise ValueError(f"ridge weight must be >= 0, got {alpha}")
        other = object.__new__(ProblemData)
        other.X = self.X
        other.y = self.y
        other.alpha = float(alpha)
        other.xty = self.xty
        other.normalized = self.normalized
        return other

    def __repr__(self):
        return (
            f"ProblemData(n={self.n}, p={self.p}, alpha={self.alpha}, "
            f"normalized={self.normalized})"
        )


def _center_scale_columns(X):
    """Center each column and rescale it to norm sqrt(n). Rejects constant columns."""
    n = X.shape[0]
    Xc = X - X.mean(axis=0)
    norms = np.linalg.norm(Xc, axis=0)
    raw_scale = np.maximum(1.0, np.abs(X).max(axis=0))
    dead = norms <= 1e-10 * raw_scale * np.sqrt(n)
    if dead.any():
        raise ZeroVarianceColumn(np.flatnonzero(dead)[0])
    return Xc * (np.sqrt(n) / norms)


def normalize(X, y, alpha=0.0):
    """Center ``y`` and the columns of ``X``, scale columns to norm sqrt(n).

    Parameters
    ----------
    X : (n, p) array_like
        Raw design matrix, n >= 2.
    y : (n,) array_like
        Raw response.
    alpha : float
        Ridge weight carried into the instance.

    Returns
    -------
    ProblemData with the ``normalized`` flag set.

    Raises
    ------
    ZeroVarianceColumn
        If some column is constant (relative variation below 1e-10).
    DimensionMismatch
        If ``len(y)`` differs from the number of rows.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2:
        raise DimensionMismatch(f"design must be a 2-d matrix, got shape {X.shape}")
    if X.shape[0] < 2:
        raise ValueError("need at least two rows to center and scale")
    if y.ndim != 1 or y.shape[0] != X.shape[0]:
        raise DimensionMismatch(
            f"response length {y.shape} does not match {X.shape[0]} rows"
        )
    return ProblemData(_center_scale_columns(X), y - y.mean(), alpha)


def objective(prob, beta, lam):
    """Evaluate J(beta) = (1/2n)||X beta - y||^2 + lam ||beta||_1 + (alpha/2n)||beta||^2."""
    beta = np.asarray(beta, dtype=np.float64)
    r = prob.X @ beta - prob.y
    n = prob.n
    value = 0.5 * (r @ r) / n + lam * np.abs(beta).sum()
    if prob.alpha != 0.0:
        value += 0.5 * prob.alpha * (beta @ beta) / n
    return float(value)


@dataclass
class PrimalDualState:
    """Primal coefficients ``beta`` and dual correlations ``dual``, both length p.

    The dual tracks (X'y - G beta)/n with G = X'X + alpha I; see
    :func:`ssnpath.kkt.refresh_dual`.
    """

    beta: np.ndarray
    dual: np.ndarray

    def __post_init__(self):
        self.beta = np.asarray(self.beta, dtype=np.float64)
        self.dual = np.asarray(self.dual, dtype=np.float64)
        if self.beta.shape != self.dual.shape or self.beta.ndim != 1:
            raise DimensionMismatch("beta and dual must be 1-d vectors of equal length")
        if not (np.isfinite(self.beta).all() and np.isfinite(self.dual).all()):
            raise ValueError("state vectors must be finite")

    def copy(self):
        return PrimalDualState(self.beta.copy(), self.dual.copy())


def cold_start(prob):
    """The canonical all-zeros start: beta = 0, dual = X'y/n."""
    return PrimalDualState(np.zeros(prob.p), prob.xty / prob.n)
