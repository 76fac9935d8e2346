"""Plain-file formats: header-less CSV matrices/vectors and JSON instance sidecars.

Matrices are rows of comma-separated decimals with no header; vectors are a
single column. The sidecar written next to a simulated instance records the
generating configuration and the ground truth so metrics can be recomputed
later.
"""

import json
import os

import numpy as np

from .datagen import SimConfig, TruthModel


def load_matrix(path):
    X = np.loadtxt(path, delimiter=",", ndmin=2, dtype=np.float64)
    return X


def load_vector(path):
    y = np.loadtxt(path, delimiter=",", dtype=np.float64)
    return np.atleast_1d(y)


def save_matrix(path, X):
    np.savetxt(path, np.asarray(X), delimiter=",", fmt="%.17g")


def save_vector(path, y):
    np.savetxt(path, np.asarray(y), delimiter=",", fmt="%.17g")


def save_instance(out_dir, X, y, config, truth):
    """Write X.csv, y.csv and instance.json into ``out_dir``; returns the paths."""
    os.makedirs(out_dir, exist_ok=True)
    x_path = os.path.join(out_dir, "X.csv")
    y_path = os.path.join(out_dir, "y.csv")
    meta_path = os.path.join(out_dir, "instance.json")
    save_matrix(x_path, X)
    save_vector(y_path, y)
    meta = {
        "sim": {
            "n": config.n,
            "p": config.p,
            "design": config.design,
            "corr": config.corr,
            "sigma": config.sigma,
            "T": config.T,
            "seed": list(config.seed) if isinstance(config.seed, tuple) else config.seed,
            "normalize_after": config.normalize_after,
        },
        "truth": {
            "support": [int(j) for j in truth.support],
            "values": [float(v) for v in truth.beta_true[truth.support]],
            "sigma": truth.sigma,
        },
    }
    with open(meta_path, "w") as f:
        json.dump(meta, f, indent=2)
        f.write("\n")
    return x_path, y_path, meta_path


def load_instance_sidecar(path):
    """Read an instance.json sidecar back into (SimConfig, TruthModel).

    The truth vector is reassembled at full length p from the sparse record.
    """
    with open(path) as f:
        meta = json.load(f)
    sim = meta["sim"]
    seed = sim["seed"]
    config = SimConfig(
        n=int(sim["n"]),
        p=int(sim["p"]),
        design=sim["design"],
        corr=float(sim["corr"]),
        sigma=float(sim["sigma"]),
        T=int(sim["T"]),
        seed=tuple(seed) if isinstance(seed, list) else int(seed),
        normalize_after=bool(sim["normalize_after"]),
    )
    beta = np.zeros(config.p)
    beta[np.asarray(meta["truth"]["support"], dtype=np.intp)] = meta["truth"]["values"]
    return config, TruthModel.from_beta(beta, float(meta["truth"]["sigma"]))
