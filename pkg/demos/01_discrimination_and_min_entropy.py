"""
State discrimination and single-shot min-entropy
================================================

Walks through the operational layer: guessing probabilities, the Helstrom
two-state optimum, the discrimination SDP, and the duality between the
conditional min-entropy of a cq state and the optimal guessing probability.
"""

import numpy as np

from scramblemeter import Ensemble, h_min_cond, solve_discrimination, verify_duality
from scramblemeter.sdp import helstrom_value, jrf_iterate

# two pure states with overlap 1/sqrt(2): the textbook Helstrom pair
ket0 = np.array([1.0, 0.0], dtype=complex)
plus = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
states = [np.outer(ket0, ket0), np.outer(plus, plus)]

print("optimal discrimination of |0> vs |+> (uniform priors)")
print("  closed form:", helstrom_value(*states))
povm, p_sdp = solve_discrimination(states, [0.5, 0.5])
print("  SDP:        ", p_sdp)

# the fixed-point iteration brackets the same value from both sides
_, lower, upper = jrf_iterate(states, [0.5, 0.5], iters=200)
print("  JRF bracket: [%.9f, %.9f]" % (lower, upper))

# conditional min-entropy of the corresponding cq state: 2^-H equals p_guess
e = Ensemble(items=[(0.5, states[0]), (0.5, states[1])])
bits, gap = h_min_cond(e)
print("\nH_min(X|C) =", bits, "bits  (certified gap %.1e)" % gap)
print("2^-H       =", 2.0**-bits, " vs p_guess =", p_sdp)

# the identity holds for any ensemble; spot-check a random one
rng = np.random.default_rng(0)
g = [rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) for _ in range(3)]
rhos = [m @ m.conj().T / np.trace(m @ m.conj().T) for m in g]
rand = Ensemble(items=[(1 / 3, r) for r in rhos])
print("\nrandom qutrit ensemble:", verify_duality(rand))
