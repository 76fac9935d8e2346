import numpy as np
import pytest

from ssnpath import SimConfig, make_instance


def random_instance(n, p, alpha=0.0, seed=0, sigma=0.5, T=5, corr=0.0):
    """Normalized i.i.d.-Gaussian instance with a sparse planted signal."""
    cfg = SimConfig(
        n=n, p=p, design="autocorr", corr=corr, sigma=sigma, T=min(T, p), seed=(987001, seed)
    )
    return make_instance(cfg, alpha=alpha)


@pytest.fixture
def orthogonal_problem():
    """Scaled-identity design with dyadic response values, exact in floats."""
    from ssnpath import ProblemData

    n = 4
    X = 2.0 * np.eye(n)  # column norms sqrt(n) = 2
    y = np.array([3.0, 1.0, -5.0, 0.5])
    return ProblemData(X, y, alpha=0.0)
