"""Dense complex linear algebra and quantum-channel primitives.

Everything in here operates on plain complex numpy arrays. The channel of
interest maps a logical input state to the reduced state on an observed
subset of output sites: rho -> Tr_rest(V rho V†) for an isometry V.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

import numpy as np

# Tolerance hierarchy: exact algebra identities, object validation,
# iteratively computed objects.
ATOL_EXACT = 1e-12
ATOL_VALID = 1e-10
ATOL_ITER = 1e-8


class ValidationError(ValueError):
    """An object fails its defining invariants (hermiticity, PSD, ...)."""


class DimensionMismatchError(ValueError):
    """Operator dimensions are inconsistent with the declared layout."""


def _as_matrix(m) -> np.ndarray:
    m = np.ascontiguousarray(m, dtype=complex)
    if m.ndim != 2:
        raise ValidationError(f"expected a matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValidationError("matrix has non-finite entries")
    return m


def dag(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def herm_deviation(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - dag(m)))) if m.size else 0.0


def check_hermitian(m: np.ndarray, atol: float = ATOL_VALID) -> np.ndarray:
    m = _as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValidationError(f"matrix is {m.shape}, not square")
    dev = herm_deviation(m)
    if dev > atol:
        raise ValidationError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return m


def min_eig(m: np.ndarray) -> float:
    return float(np.linalg.eigvalsh((m + dag(m)) / 2)[0])


def check_density(rho, atol: float = ATOL_VALID) -> np.ndarray:
    """Validate a density matrix: Hermitian, PSD, unit trace."""
    rho = check_hermitian(rho, atol)
    lo = min_eig(rho)
    if lo < -atol:
        raise ValidationError(f"density matrix not PSD (min eigenvalue {lo:.3e})")
    tr = complex(np.trace(rho))
    if abs(tr - 1) > atol:
        raise ValidationError(f"density matrix trace {tr} != 1")
    return rho


@dataclass(frozen=True)
class SiteLayout:
    """Ordered local dimensions of the output sites of an isometry."""

    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if not self.dims or any(d < 1 for d in self.dims):
            raise ValidationError(f"invalid site dimensions {self.dims}")

    @property
    def total_dim(self) -> int:
        return prod(self.dims)

    @property
    def nsites(self) -> int:
        return len(self.dims)


@dataclass(frozen=True)
class SubsystemSpec:
    """A strictly increasing selection of site indices; the observed block."""

    sites: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(int(s) for s in self.sites))
        if any(b <= a for a, b in zip(self.sites, self.sites[1:])):
            raise ValidationError(f"sites {self.sites} not strictly increasing")

    def dim(self, layout: SiteLayout) -> int:
        if not self.sites or self.sites[-1] >= layout.nsites or self.sites[0] < 0:
            raise DimensionMismatchError(
                f"sites {self.sites} out of range for {layout.nsites} sites"
            )
        return prod(layout.dims[s] for s in self.sites)


@dataclass(frozen=True)
class Isometry:
    """A validated isometry V: C^in_dim -> C^total_dim with declared sites."""

    mat: np.ndarray
    out_layout: SiteLayout

    @property
    def in_dim(self) -> int:
        return self.mat.shape[1]

    @property
    def out_dim(self) -> int:
        return self.mat.shape[0]


def validate_isometry(mat, layout: SiteLayout, atol: float = 1e-8) -> Isometry:
    """Check V†V = I and the layout dimension, returning a validated Isometry."""
    mat = _as_matrix(mat)
    m, n = mat.shape
    if m < n:
        raise ValidationError(f"isometry must be tall, got shape {mat.shape}")
    if layout.total_dim != m:
        raise DimensionMismatchError(
            f"layout dimension {layout.total_dim} != row count {m}"
        )
    dev = float(np.max(np.abs(dag(mat) @ mat - np.eye(n))))
    if dev > atol:
        raise ValidationError(f"columns not orthonormal (max |V†V - I| = {dev:.3e})")
    return Isometry(mat=mat, out_layout=layout)


@dataclass
class Povm:
    """A finite measurement: positive effects summing to identity."""

    effects: list = field(default_factory=list)

    def __post_init__(self):
        self.effects = [_as_matrix(e) for e in self.effects]

    @property
    def dim(self) -> int:
        return self.effects[0].shape[0]

    def __len__(self) -> int:
        return len(self.effects)

    def validate(self, atol: float = ATOL_VALID) -> "Povm":
        if not self.effects:
            raise ValidationError("POVM has no effects")
        d = self.dim
        total = np.zeros((d, d), dtype=complex)
        for e in self.effects:
            check_hermitian(e, atol)
            lo = min_eig(e)
            if lo < -atol:
                raise ValidationError(f"effect not PSD (min eigenvalue {lo:.3e})")
            total += e
        dev = float(np.max(np.abs(total - np.eye(d))))
        if dev > atol:
            raise ValidationError(f"effects do not sum to identity (dev {dev:.3e})")
        return self


def tensor(*ops) -> np.ndarray:
    """Kronecker product; the first factor carries the slower-varying index."""
    out = _as_matrix(ops[0])
    for op in ops[1:]:
        out = np.kron(out, _as_matrix(op))
    return out


def _complement(layout: SiteLayout, c: SubsystemSpec) -> tuple[int, ...]:
    return tuple(s for s in range(layout.nsites) if s not in c.sites)


def partial_trace(m, layout: SiteLayout, keep: SubsystemSpec) -> np.ndarray:
    """Trace out every site not in `keep`, preserving the order of kept legs."""
    m = _as_matrix(m)
    d = layout.total_dim
    if m.shape != (d, d):
        raise DimensionMismatchError(f"matrix shape {m.shape} != layout dim {d}")
    keep.dim(layout)  # range check
    n = layout.nsites
    t = m.reshape(layout.dims * 2)
    traced = _complement(layout, keep)
    # Contract traced row/col leg pairs from the rightmost site inward so the
    # remaining axis numbering stays valid.
    for s in reversed(traced):
        t = np.trace(t, axis1=s, axis2=s + n)
        n -= 1
    dk = keep.dim(layout)
    return t.reshape(dk, dk)


def embed_effect(mu, layout: SiteLayout, c: SubsystemSpec) -> np.ndarray:
    """Extend an operator on the sites `c` by identity on the rest.

    Handles non-contiguous site selections by permuting tensor legs.
    """
    mu = _as_matrix(mu)
    k = c.dim(layout)
    if mu.shape != (k, k):
        raise DimensionMismatchError(f"effect shape {mu.shape} != subsystem dim {k}")
    rest = _complement(layout, c)
    d_rest = prod(layout.dims[s] for s in rest) if rest else 1
    big = np.kron(mu, np.eye(d_rest, dtype=complex))
    # big has leg order (c sites..., rest sites...); permute back to site order.
    order = list(c.sites) + list(rest)
    dims_in_order = tuple(layout.dims[s] for s in order)
    n = layout.nsites
    t = big.reshape(dims_in_order * 2)
    inv = np.argsort(order)
    t = np.transpose(t, list(inv) + [n + i for i in inv])
    d = layout.total_dim
    return t.reshape(d, d)


def apply_channel(v: Isometry, c: SubsystemSpec, rho) -> np.ndarray:
    """Reduced output state on the observed sites: Tr_rest(V rho V†)."""
    rho = _as_matrix(rho)
    if rho.shape != (v.in_dim, v.in_dim):
        raise DimensionMismatchError(
            f"input shape {rho.shape} != isometry input dim {v.in_dim}"
        )
    return partial_trace(v.mat @ rho @ dag(v.mat), v.out_layout, c)


def adjoint_effect(v: Isometry, c: SubsystemSpec, mu) -> np.ndarray:
    """Pull an effect on the observed sites back to the input space: V†(I⊗mu)V."""
    return dag(v.mat) @ embed_effect(mu, v.out_layout, c) @ v.mat


def operator_norm(m) -> float:
    """Spectral norm; for Hermitian input this is the top |eigenvalue|."""
    m = _as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValidationError(f"matrix is {m.shape}, not square")
    if herm_deviation(m) <= ATOL_EXACT:
        w = np.linalg.eigvalsh(m)
        return float(max(abs(w[0]), abs(w[-1])))
    return float(np.linalg.norm(m, 2))


def choi_matrix(v: Isometry, c: SubsystemSpec) -> np.ndarray:
    """Choi matrix of the induced channel, from the unnormalized max-entangled state."""
    d = v.in_dim
    k = c.dim(v.out_layout)
    choi = np.zeros((d * k, d * k), dtype=complex)
    basis_ops = {}
    for i in range(d):
        for j in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            basis_ops[(i, j)] = apply_channel(v, c, e)
    for i in range(d):
        for j in range(d):
            choi[i * k : (i + 1) * k, j * k : (j + 1) * k] = basis_ops[(i, j)]
    return choi


def haar_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """A Haar-random unit vector."""
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return z / np.linalg.norm(z)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a Ginibre matrix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
