"""Synthetic sparse-regression instances and coherence-based theory checks.

Designs
-------
- ``classical``: rows i.i.d. N(0, Sigma) with Sigma_jk = corr^|j-k|,
  realized column-by-column through the first-order recursion
  x_1 ~ N(0,1), x_j = corr * x_{j-1} + sqrt(1 - corr^2) * eps_j.
- ``autocorr``: start from an i.i.d. N(0,1) matrix E and blend neighbors,
  X_j = E_j + corr * (E_{j-1} + E_{j+1}) for interior columns; the first and
  last columns are left untouched.

Nonzero coefficients are sign * 10^u with a fair random sign and
u ~ Uniform[0, 1], placed on a uniformly random support. Responses are
X beta + N(0, sigma^2) noise.

All generators are pure functions of (config, seed). Randomness comes from
numpy's PCG64 via ``default_rng``; the instance seed is split with
``SeedSequence.spawn`` into three substreams, one each for the design, the
coefficients, and the noise, so the pieces are individually reproducible.
Bitwise equality is guaranteed across runs with the same numpy generator;
alternative generators need only match in distribution.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoiseTooLarge
from .path import sign_recovery_config
from .problem import ProblemData, _center_scale_columns

# Coherence is an O(p^2 n) dense computation; refuse silly sizes unless forced.
COHERENCE_GUARD_P = 5000


@dataclass(frozen=True)
class SimConfig:
    """One simulation cell: dimensions, design family, noise, sparsity, seed.

    ``corr`` is the design's correlation parameter: in (0, 1) for
    ``classical``, any value >= 0 for ``autocorr`` (0 gives i.i.d. entries).
    ``seed`` may be an int or a tuple of ints (entropy for SeedSequence).
    """

    n: int
    p: int
    design: str
    corr: float
    sigma: float
    T: int
    seed: int | tuple = 0
    normalize_after: bool = True

    def __post_init__(self):
        if self.design not in ("classical", "autocorr"):
            raise ValueError(f"unknown design {self.design!r}")
        if self.design == "classical" and not (0.0 < self.corr < 1.0):
            raise ValueError("classical design needs corr in (0, 1)")
        if self.design == "autocorr" and self.corr < 0.0:
            raise ValueError("autocorr design needs corr >= 0")
        if not (0 <= self.T <= self.p):
            raise ValueError("sparsity T must lie in [0, p]")
        if self.sigma < 0.0:
            raise ValueError("sigma must be >= 0")


@dataclass
class TruthModel:
    """Ground-truth coefficients for metric computation.

    ``support`` is the sorted index set of nonzeros; ``sigma`` the noise
    standard deviation used to generate the response.
    """

    beta_true: np.ndarray
    support: np.ndarray
    sigma: float

    @classmethod
    def from_beta(cls, beta_true, sigma):
        beta_true = np.asarray(beta_true, dtype=np.float64)
        return cls(beta_true, np.flatnonzero(beta_true), float(sigma))

    @property
    def T(self):
        return self.support.shape[0]

    @property
    def beta_min(self):
        if self.T == 0:
            return 0.0
        return float(np.min(np.abs(self.beta_true[self.support])))

    @property
    def magnitude_range(self):
        """max |beta_j| / min |beta_j| over the support (>= 1 when nonempty)."""
        if self.T == 0:
            return float("nan")
        mags = np.abs(self.beta_true[self.support])
        return float(mags.max() / mags.min())


def gen_classical(n, p, rho, rng):
    """Rows i.i.d. N(0, Sigma), Sigma_jk = rho^|j-k|, via the AR recursion."""
    E = rng.standard_normal((n, p))
    X = np.empty((n, p), order="F")
    X[:, 0] = E[:, 0]
    c = math.sqrt(1.0 - rho * rho)
    for j in range(1, p):
        X[:, j] = rho * X[:, j - 1] + c * E[:, j]
    return X


def gen_autocorr(n, p, nu, rng):
    """Neighbor-blended Gaussian design; first and last columns untouched."""
    E = rng.standard_normal((n, p))
    X = E.copy(order="F")
    if p >= 3 and nu != 0.0:
        X[:, 1 : p - 1] += nu * (E[:, : p - 2] + E[:, 2:])
    return X


def gen_beta(p, T, rng):
    """Sparse coefficients: uniform random support, entries sign * 10^Uniform[0,1].

    Every nonzero magnitude lies in [1, 10], so the magnitude range never
    exceeds 10.
    """
    beta = np.zeros(p)
    if T == 0:
        return beta
    support = rng.choice(p, size=T, replace=False)
    signs = np.where(rng.random(T) < 0.5, -1.0, 1.0)
    beta[support] = signs * 10.0 ** rng.random(T)
    return beta


def gen_response(X, beta_true, sigma, rng):
    """y = X beta + N(0, sigma^2) noise."""
    y = X @ beta_true
    if sigma > 0.0:
        y = y + sigma * rng.standard_normal(X.shape[0])
    return y


def make_instance(config, alpha=0.0):
    """Generate (ProblemData, TruthModel) for a simulation cell.

    The design is centered and scaled to column norm sqrt(n) before the
    response is built (when ``normalize_after`` is set), so the stored truth
    refers to the normalized columns. The response is centered; with centered
    columns that only removes the mean of the noise.
    """
    ss = np.random.SeedSequence(config.seed)
    s_design, s_coef, s_noise = ss.spawn(3)
    rng_design = np.random.default_rng(s_design)
    if config.design == "classical":
        X = gen_classical(config.n, config.p, config.corr, rng_design)
    else:
        X = gen_autocorr(config.n, config.p, config.corr, rng_design)
    if config.normalize_after:
        X = _center_scale_columns(X)
    beta_true = gen_beta(config.p, config.T, np.random.default_rng(s_coef))
    y = gen_response(X, beta_true, config.sigma, np.random.default_rng(s_noise))
    y = y - y.mean()
    return ProblemData(X, y, alpha), TruthModel.from_beta(beta_true, config.sigma)


def mutual_coherence(prob, force=False):
    """max_{i != j} |X_i'X_j| / n, the worst pairwise column correlation."""
    p = prob.p
    if p > COHERENCE_GUARD_P and not force:
        raise ValueError(
            f"coherence is O(p^2 n) dense work and p = {p} > {COHERENCE_GUARD_P}; "
            "pass force=True to override"
        )
    if p == 1:
        return 0.0
    G = prob.X.T @ prob.X
    np.fill_diagonal(G, 0.0)
    return float(np.max(np.abs(G))) / prob.n


@dataclass
class TheoryReport:
    """Checks of the coherence and signal-strength conditions for sign recovery.

    ``a1_holds``: T * coherence <= 1/4. ``a2_holds``: the smallest nonzero
    coefficient is at least 78 * lambda_u, with lambda_u the universal noise
    threshold sigma * sqrt(2 log(p) / n). ``recovery_last_knot`` is the index
    of the last knot of the sign-recovery grid when that grid exists.
    """

    coherence: float
    t_times_coherence: float
    a1_holds: bool
    lambda_u: float
    delta_u: float
    beta_min: float
    a2_holds: bool
    recovery_last_knot: int | None

    def to_dict(self):
        return {
            "coherence": self.coherence,
            "t_times_coherence": self.t_times_coherence,
            "a1_holds": self.a1_holds,
            "lambda_u": self.lambda_u,
            "delta_u": self.delta_u,
            "beta_min": self.beta_min,
            "a2_holds": self.a2_holds,
            "recovery_last_knot": self.recovery_last_knot,
        }


def theory_check(prob, truth, force=False):
    """Report-only evaluation of the recovery conditions for one instance."""
    nu = mutual_coherence(prob, force=force)
    t_nu = truth.T * nu
    lam_u = truth.sigma * math.sqrt(2.0 * math.log(prob.p) / prob.n)
    beta_min = truth.beta_min
    last_knot = None
    if truth.sigma > 0.0:
        try:
            last_knot = sign_recovery_config(prob, truth.sigma).num_knots - 1
        except NoiseTooLarge:
            last_knot = None
    return TheoryReport(
        coherence=nu,
        t_times_coherence=t_nu,
        a1_holds=bool(t_nu <= 0.25),
        lambda_u=lam_u,
        delta_u=3.0 * lam_u,
        beta_min=beta_min,
        a2_holds=bool(beta_min >= 78.0 * lam_u),
        recovery_last_knot=last_knot,
    )
