"""Sweep the balance rate over a grid of conflict levels.

Starting from a perfectly balanced base graph we inject a fraction eta of
sign-violating edges and scale every existence probability by p_mul.  Both
knobs can only destroy balance, so the estimated rate must fall (up to
sampling noise) along each row and column.

Run with:  python3 demos/03_conflict_sweep.py
"""

from balancerate import SamplePlan, gen_balanced, sweep

base, side = gen_balanced(n=200, m=600, negative_ratio=0.3, seed=11)
base = base.with_probs([0.05] * base.edge_count)  # make edges uncertain

etas = [0.0, 0.01, 0.02, 0.05]
p_muls = [1.0, 2.0, 4.0]
rows = sweep(base, side, etas, p_muls,
             SamplePlan(samples=2_000, seed=3))

by_cell = {(r.eta, r.p_mul): r for r in rows}
header = "eta \\ p_mul" + "".join(f"{pm:>10}" for pm in p_muls)
print(header)
for eta in etas:
    cells = "".join(f"{by_cell[(eta, pm)].estimate:>10.4f}" for pm in p_muls)
    print(f"{eta:>11}{cells}")

print("\nrates fall left-to-right (higher edge probabilities) and "
      "top-to-bottom (more injected conflicts)")
