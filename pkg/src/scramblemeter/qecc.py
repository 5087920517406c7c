"""Built-in quantum error-correcting encoders and scrambler verification.

Codes are materialized as dense encoding isometries built from stabilizer
projectors; a distance-d code must induce a replacement channel on every
subset of at most d-1 physical qubits, which is checked numerically rather
than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .engine import (
    SeesawConfig,
    certify_channel,
    channel_from_isometry,
    imin_acc,
    CERT_ATOL,
)
from .qstate import Isometry, SiteLayout, SubsystemSpec, ValidationError, tensor, validate_isometry

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_string(spec: str) -> np.ndarray:
    return tensor(*(_PAULI[ch] for ch in spec))


@dataclass(frozen=True)
class CodeSpec:
    name: str
    n: int
    j: int
    d: int
    encoder: Isometry


def _stabilizer_encoder(n: int, generators, logical_dim: int) -> np.ndarray:
    """Codewords from the stabilizer projector applied to basis states in order."""
    dim = 2**n
    proj = np.eye(dim, dtype=complex)
    for g in generators:
        proj = proj @ (np.eye(dim) + pauli_string(g)) / 2.0
    cols = []
    for idx in range(dim):
        v = proj[:, idx].copy()
        for c in cols:
            v -= c * (c.conj() @ v)
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            cols.append(v / norm)
        if len(cols) == logical_dim:
            break
    if len(cols) != logical_dim:
        raise ValidationError(
            f"stabilizer projector yielded {len(cols)} codewords, wanted {logical_dim}"
        )
    return np.column_stack(cols)


def builtin_code(name: str) -> CodeSpec:
    """One of rep3 (negative control), code422, code513."""
    if name == "rep3":
        mat = np.zeros((8, 2), dtype=complex)
        mat[0, 0] = 1.0  # |000>
        mat[7, 1] = 1.0  # |111>
        n, j, d = 3, 1, 1
    elif name == "code422":
        mat = _stabilizer_encoder(4, ["XXXX", "ZZZZ"], 4)
        n, j, d = 4, 2, 2
    elif name == "code513":
        gens = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
        mat = _stabilizer_encoder(5, gens, 2)
        n, j, d = 5, 1, 3
    else:
        raise ValidationError(f"unknown code '{name}'")
    enc = validate_isometry(mat, SiteLayout((2,) * n))
    return CodeSpec(name=name, n=n, j=j, d=d, encoder=enc)


def check_t_scrambler(
    code: CodeSpec, t: int, cfg: SeesawConfig | None = None
) -> dict:
    """Verify the perfect t-scrambler property of a code numerically.

    Pulls an IC-POVM back through every qubit subset of size <= t and reports
    the worst deviation from a trivial measurement, then cross-checks with
    the see-saw value of the accessible min-information at each subset size.
    """
    if not (1 <= t < code.n):
        raise ValidationError(f"need 1 <= t < n, got t={t}")
    cfg = cfg or SeesawConfig()
    subsets = []
    certified = True
    for size in range(1, t + 1):
        for sites in combinations(range(code.n), size):
            channel = channel_from_isometry(code.encoder, SubsystemSpec(sites))
            dev = certify_channel(channel)
            subsets.append({"sites": list(sites), "max_deviation": dev})
            certified = certified and dev <= CERT_ATOL
    imin_per_k = {}
    for size in range(1, t + 1):
        k = 2**size
        imin_per_k[k] = imin_acc(code.encoder, k, cfg).value_bits
    return {
        "code": code.name,
        "t": t,
        "certified": certified,
        "subsets": subsets,
        "imin_bits_per_k": imin_per_k,
    }
