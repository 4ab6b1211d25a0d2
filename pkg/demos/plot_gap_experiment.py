"""
The revenue gap
===============

Exact optimum, best single price and price 1 everywhere, together with every
bound check over sampled pricings.
"""

from stacksp import generate_planted, run_gap_experiment
from stacksp.experiment import render_text

for frac in (0.0, 0.5):
    lc, _ = generate_planted(2, 2, 2, 4, decoys_per_edge=1, corrupt_fraction=frac, seed=21)
    report = run_gap_experiment(lc, pricing_samples=100, seed=1)
    print(f"corrupt fraction {frac}")
    print(render_text(report))
