#!/usr/bin/env python3
"""Trace a full regularization path and pick the penalty with MBIC.

The path runs over a geometric grid with warm starts; each knot usually
converges in a single Newton update. The shifted schedule keeps only a tenth
of the penalty as shrinkage on the active coefficients, so the selected model
is nearly an unbiased least-squares refit on its support.
"""

import numpy as np

import ssnpath as sp

cfg = sp.SimConfig(n=400, p=2000, design="classical", corr=0.5, sigma=0.1, T=10, seed=3)
prob, truth = sp.make_instance(cfg)

pcfg = sp.PathConfig(
    lambda0=sp.default_lambda0(prob),
    gamma=1e-3 ** (1 / 100),
    num_knots=101,
    max_inner=1,
    shift_schedule="shifted",
)
path = sp.solve_path(prob, pcfg)
print(f"path: {len(path)} knots in {path.wall_time_s:.2f}s "
      f"(early stop: {path.terminated_at})")

sel = sp.mbic_select(prob, path)
print(f"mbic picks knot {sel.chosen_knot}, lam = {sel.chosen_lambda:.4f}")

print("\nknot  lambda      nnz  iters  mbic")
for rec in path.records[max(0, sel.chosen_knot - 5): sel.chosen_knot + 6]:
    marker = " <-- selected" if rec.t == sel.chosen_knot else ""
    print(f"{rec.t:4d}  {rec.lam:9.5f}  {rec.nnz:4d}  {rec.iterations:4d}  "
          f"{sel.values[rec.t]:8.4f}{marker}")

beta_hat = path.records[sel.chosen_knot].beta_dense(prob.p)
rep = sp.solution_metrics(beta_hat, truth)
print(f"\nselected model: size {rep.ms}, exact support: {rep.correct}, "
      f"sup-norm error {rep.ae:.4f}, relative l2 error {rep.re:.4f}")

sp.write_path_csv(path, "path_demo.csv", coef_file="path_demo_coefs.csv", selector=sel)
print("wrote path_demo.csv and path_demo_coefs.csv")
