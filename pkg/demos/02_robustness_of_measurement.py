"""
Robustness of measurement as an ensemble-discrimination advantage
=================================================================

The robustness R of a POVM has a closed form, R + 1 = sum_x ||mu_x||_inf,
and equals the best prior-normalized guessing ratio over all input
ensembles. This script shows the closed form being attained by the
eigenvector ensemble and approached by a brute-force search.
"""

import numpy as np

from scramblemeter import Ensemble, Povm, max_ratio_over_ensembles, r_guess, robustness
from scramblemeter.engine import sic_povm_qubit

# a projective qubit measurement is maximally robust: R = 1
basis = Povm(effects=[np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
print("projective measurement: R =", robustness(basis))

# the SIC tetrahedron has four effects of norm 1/2: same robustness
sic = Povm(effects=sic_povm_qubit())
print("SIC-POVM:               R =", robustness(sic))

# noisy measurement: mixing toward the identity kills the advantage
for lam in (1.0, 0.5, 0.1, 0.0):
    noisy = Povm(effects=[lam * e + (1 - lam) * np.eye(2) / 2 for e in basis.effects])
    print("  depolarized lam=%.1f  R = %.4f" % (lam, robustness(noisy)))

# the optimal ensemble puts uniform priors on the top eigenvectors
rng = np.random.default_rng(1)
g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
a = g @ g.conj().T
a = 0.6 * a / np.trace(a)
m = Povm(effects=[a, np.eye(2) - a])

states = []
for mu in m.effects:
    _, u = np.linalg.eigh(mu)
    v = u[:, -1]
    states.append(np.outer(v, v.conj()))
eig_ensemble = Ensemble(items=[(0.5, s) for s in states])

print("\nrandom two-outcome POVM")
print("  closed form R + 1:        ", max_ratio_over_ensembles(m))
print("  eigenvector ensemble ratio:", r_guess(eig_ensemble, m))

# random ensembles never beat the bound
best = 0.0
for _ in range(2000):
    psi = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    psi /= np.linalg.norm(psi, axis=1, keepdims=True)
    rand = Ensemble(items=[(0.5, np.outer(p, p.conj())) for p in psi])
    best = max(best, r_guess(rand, m))
print("  best of 2000 random tries: ", best)
