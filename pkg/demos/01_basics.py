#!/usr/bin/env python3
"""Warm-up: build a two-state fail/repair model, solve it, simulate it.

The exact answer is classic: with failure rate lam and repair rate mu the
steady-state unavailability is lam / (lam + mu).  This script builds the model
programmatically, runs it through the whole pipeline, and shows the
Monte-Carlo estimator agreeing with the exact solver.
"""

from edgeavail import (Activity, CaseSpec, InputSpec, Place, RewardPredicate,
                       SanModel, eliminate_vanishing, explore,
                       parse_expression, put, simulate, steady_state_gth,
                       take, to_ctmc, unavailability)

P = parse_expression

lam, mu = 0.1, 0.9
model = SanModel(
    places=(Place("Up", 1), Place("Down", 0)),
    parameters={"lam": lam, "mu": mu},
    activities=(
        Activity("fail", P("lam"), InputSpec(P("#Up >= 1"), (take("Up"),)),
                 (CaseSpec(1.0, (put("Down"),)),)),
        Activity("repair", P("mu"), InputSpec(P("#Down >= 1"), (take("Down"),)),
                 (CaseSpec(1.0, (put("Up"),)),)),
    ),
    rewards=(RewardPredicate("up", P("#Up >= 1")),),
    description="two-state warm-up",
)

# Exact path: reachability graph -> tangible CTMC -> stationary distribution.
graph = explore(model)
chain = to_ctmc(eliminate_vanishing(graph), "up")
exact = unavailability(chain, steady_state_gth(chain))
print(f"state space: {graph.n_states} markings")
print(graph.dump_text())
print(f"exact unavailability:     {exact:.6f}   (analytic {lam / (lam + mu):.6f})")

# Independent path: discrete-event simulation with a batch-means interval.
est = simulate(model, "up", horizon=1e6, seed=42)
print(f"simulated availability:   {est.point:.6f} +/- {est.ci_halfwidth:.6f} (95% CI)")
print(f"CI covers the exact value: {abs(est.point - (1 - exact)) <= est.ci_halfwidth}")
