"""
Accessible min-information of small encoders
============================================

I_min^acc measures how much information about the input any fixed-size
subsystem of an isometry's output can reveal to the best measurement. Three
canonical encoders bracket the range, and the Bell encoder shows why the
see-saw needs random restarts.
"""

import numpy as np

from scramblemeter import SeesawConfig, SiteLayout, SubsystemSpec, imin_acc, validate_isometry
from scramblemeter.engine import channel_from_isometry, seesaw_channel

cfg = SeesawConfig(restarts=10, seed=0)

# identity: everything is accessible
ident = validate_isometry(np.eye(2, dtype=complex), SiteLayout((2,)))
print("identity qubit:    ", imin_acc(ident, 2, cfg).value_bits, "bits")

# replacement: |i> -> |i>_D (x) |0>_C with a qutrit discard factor, so the
# only qubit subsystem always sees |0><0| regardless of the input
mat = np.zeros((6, 2), dtype=complex)
mat[0, 0] = 1.0
mat[2, 1] = 1.0
repl = validate_isometry(mat, SiteLayout((3, 2)))
print("replacement:       ", imin_acc(repl, 2, cfg).value_bits, "bits")

# Bell encoder: |0> -> (|00>+|11>)/sqrt2, |1> -> (|01>+|10>)/sqrt2.
# Each qubit alone looks maximally mixed in the computational basis, yet the
# X basis distinguishes the codewords perfectly on either qubit.
bell = validate_isometry(
    np.array([[1, 0], [0, 1], [0, 1], [1, 0]], dtype=complex) / np.sqrt(2),
    SiteLayout((2, 2)),
)
res = imin_acc(bell, 2, cfg)
print("Bell encoder:      ", res.value_bits, "bits",
      "(best subsystem", res.best_subsystem.sites,
      "X =", res.best_num_effects, ")")

# the computational-basis start is a see-saw fixed point stuck at zero:
# restarts are what rescue the optimization
ch = channel_from_isometry(bell, SubsystemSpec((0,)))
basis = [np.diag([1.0, 0.0]).astype(complex), np.diag([0.0, 1.0]).astype(complex)]
_, stuck, _, _ = seesaw_channel(ch, 2, cfg, init_effects=basis)
print("  computational-basis start only reaches", stuck, "bits")

print("\nwinning POVM effects (note the X-basis structure):")
for mu in res.best_povm.effects:
    print(np.round(mu, 6))
