"""Accessible min-information of an isometry by see-saw POVM optimization.

The quantity maximized is log2 sum_x ||Phi†(mu_x)||_inf, the log of one plus
the robustness of the pulled-back measurement. The outer problem is convex
in the POVM but maximized, so only local convergence holds; the engine runs
seeded restarts and reports agreement statistics instead of pretending to
certify global optimality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log2, sqrt

import numpy as np

from .qstate import (
    Isometry,
    Povm,
    SubsystemSpec,
    ValidationError,
    adjoint_effect,
    apply_channel,
    dag,
    haar_state,
    operator_norm,
)

CERT_ATOL = 1e-8


class NoSubsystemError(ValueError):
    """No subset of output sites has the requested dimension."""


# ---------------------------------------------------------------------------
# channel representation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MatrixChannel:
    """A CP map stored as a dense transfer matrix on row-major vectorizations."""

    transfer: np.ndarray  # shape (out_dim^2, in_dim^2)
    in_dim: int
    out_dim: int

    @classmethod
    def from_apply(cls, apply_fn, in_dim: int, out_dim: int) -> "MatrixChannel":
        t = np.zeros((out_dim * out_dim, in_dim * in_dim), dtype=complex)
        for i in range(in_dim):
            for j in range(in_dim):
                e = np.zeros((in_dim, in_dim), dtype=complex)
                e[i, j] = 1.0
                t[:, i * in_dim + j] = np.asarray(apply_fn(e)).ravel()
        return cls(transfer=t, in_dim=in_dim, out_dim=out_dim)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return (self.transfer @ rho.ravel()).reshape(self.out_dim, self.out_dim)

    def adjoint(self, mu: np.ndarray) -> np.ndarray:
        out = (self.transfer.conj().T @ mu.ravel()).reshape(self.in_dim, self.in_dim)
        return dag(out)


def channel_from_isometry(v: Isometry, c: SubsystemSpec) -> MatrixChannel:
    k = c.dim(v.out_layout)
    return MatrixChannel.from_apply(
        lambda rho: apply_channel(v, c, rho), v.in_dim, k
    )


# ---------------------------------------------------------------------------
# configuration and results
# ---------------------------------------------------------------------------

def default_effects_range(k: int) -> tuple[int, int]:
    # the optimal POVM needs at most k^2 effects; the scan is capped at 4,
    # matching the X = 2, 3, 4 sweeps used throughout
    return (2, min(k * k, 4))


@dataclass
class SeesawConfig:
    effects_range: tuple[int, int] | None = None  # None -> default for the k at hand
    restarts: int = 20
    max_iters: int = 500
    obj_tol: float = 1e-9
    seed: int = 42

    def resolved_range(self, k: int) -> tuple[int, int]:
        lo, hi = self.effects_range if self.effects_range else default_effects_range(k)
        if lo < 2 or hi > k * k or lo > hi:
            raise ValidationError(
                f"effects range [{lo}, {hi}] outside [2, k^2] = [2, {k * k}]"
            )
        if self.restarts < 1:
            raise ValidationError("restarts must be >= 1")
        return lo, hi


@dataclass
class IminResult:
    value_bits: float
    best_subsystem: SubsystemSpec
    best_povm: Povm
    best_num_effects: int
    per_X_values: dict
    restart_trace: list  # (subsystem, X, restart, value_bits, iterations)
    restarts_agreeing: int
    total_restarts: int
    fragile: bool
    iterations: int


# ---------------------------------------------------------------------------
# see-saw core
# ---------------------------------------------------------------------------

def objective_of_effects(channel: MatrixChannel, effects) -> float:
    """log2 sum_x ||Phi†(mu_x)||_inf, in bits."""
    total = sum(operator_norm(channel.adjoint(mu)) for mu in effects)
    return log2(total)


def objective(v: Isometry, c: SubsystemSpec, m: Povm) -> float:
    """Objective in bits, computed in both equivalent forms and cross-checked."""
    k = c.dim(v.out_layout)
    if m.dim != k:
        raise ValidationError(f"POVM dimension {m.dim} != subsystem dimension {k}")
    norms = [operator_norm(adjoint_effect(v, c, mu)) for mu in m.effects]
    direct = log2(sum(norms))
    rob = sum(norms) - 1.0  # robustness of the pulled-back POVM
    alt = log2(1.0 + rob)
    assert abs(direct - alt) <= 1e-12
    return direct


def _top_eigvec(m: np.ndarray) -> np.ndarray:
    w, u = np.linalg.eigh(m)
    return u[:, -1]


def _random_povm(dim: int, n_effects: int, rng: np.random.Generator):
    """Random rank-one directions completed to a POVM by a scaled deficit."""
    projs = []
    for _ in range(n_effects):
        psi = haar_state(dim, rng)
        projs.append(np.outer(psi, psi.conj()))
    g = sum(projs)
    scale = 1.0 / float(np.linalg.eigvalsh(g)[-1])
    deficit = np.eye(dim) - scale * g
    return [scale * p + deficit / n_effects for p in projs]


def _helstrom_step(sigmas):
    """Exact best two-outcome POVM for uniform priors."""
    delta = sigmas[0] - sigmas[1]
    w, u = np.linalg.eigh((delta + dag(delta)) / 2)
    pos = u[:, w > 0.0]
    mu0 = pos @ dag(pos)
    return [mu0, np.eye(mu0.shape[0]) - mu0]


def _guarded_fixed_point_step(sigmas, effects, inner_iters: int = 40):
    """Improve sum_x Tr(mu_x sigma_x) from the current POVM; never worsens.

    Fixed-point discrimination updates with a best-so-far guard, which is all
    see-saw monotonicity requires from this half step.
    """
    d = sigmas[0].shape[0]
    n = len(sigmas)

    def score(effs):
        return float(sum(np.real(np.trace(e @ s)) for e, s in zip(effs, sigmas)))

    best, best_val = effects, score(effects)
    cur = effects
    for _ in range(inner_iters):
        ks = [s @ e @ s for e, s in zip(cur, sigmas)]
        lam = sum(ks)
        lam = (lam + dag(lam)) / 2
        w, u = np.linalg.eigh(lam)
        if w[-1] <= 0:
            break
        inv_sqrt = (u * (1.0 / np.sqrt(np.clip(w, w[-1] * 1e-14, None)))) @ dag(u)
        cur = [inv_sqrt @ k @ inv_sqrt for k in ks]
        defect = np.eye(d) - sum(cur)
        wd, ud = np.linalg.eigh((defect + dag(defect)) / 2)
        defect = (ud * np.clip(wd, 0.0, None)) @ dag(ud)
        cur = [c + defect / n for c in cur]
        tot = sum(cur)
        wt, ut = np.linalg.eigh((tot + dag(tot)) / 2)
        fix = (ut * (1.0 / np.sqrt(np.clip(wt, 1e-15, None)))) @ dag(ut)
        cur = [fix @ c @ fix for c in cur]
        val = score(cur)
        if val > best_val + 1e-14:
            best, best_val = cur, val
        else:
            break
    return best


def seesaw_channel(
    channel: MatrixChannel,
    n_effects: int,
    cfg: SeesawConfig,
    rng: np.random.Generator | None = None,
    init_effects=None,
):
    """One see-saw run; returns (effects, value_bits, iterations, converged).

    Alternates (a) eigenvector witnesses psi_x of the pulled-back effects with
    (b) an exact or guarded discrimination step on the pushed-forward witness
    states. The objective is non-decreasing across half steps.
    """
    k = channel.out_dim
    if init_effects is not None:
        effects = [np.asarray(e, dtype=complex) for e in init_effects]
    else:
        if rng is None:
            raise ValidationError("seesaw needs either an rng or initial effects")
        effects = _random_povm(k, n_effects, rng)
    obj = objective_of_effects(channel, effects)
    converged = False
    iters = 0
    for iters in range(1, cfg.max_iters + 1):
        psis = [_top_eigvec(channel.adjoint(mu)) for mu in effects]
        sigmas = [channel.apply(np.outer(p, p.conj())) for p in psis]
        sigmas = [(s + dag(s)) / 2 for s in sigmas]
        if n_effects == 2:
            new_effects = _helstrom_step(sigmas)
        else:
            new_effects = _guarded_fixed_point_step(sigmas, effects)
        new_obj = objective_of_effects(channel, new_effects)
        if new_obj >= obj - 1e-12:
            effects = new_effects
        gain = new_obj - obj
        obj = max(obj, new_obj)
        if gain < cfg.obj_tol:
            converged = True
            break
    return effects, obj, iters, converged


def _restart_rng(seed: int, *key) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(int(x) for x in key))
    return np.random.default_rng(ss)


def optimize_channel(channel: MatrixChannel, cfg: SeesawConfig, key_prefix=()):
    """Best-over-restarts see-saw for each effect count X in the scan range.

    Returns a dict with per-X values, the winning POVM, and restart traces.
    The scan warm-starts each X from the previous X's winner padded with a
    zero effect, which guarantees monotonicity of the values in X.
    """
    k = channel.out_dim
    lo, hi = cfg.resolved_range(k)
    per_x = {}
    best = None  # (value, X, effects, restarts_agreeing, iterations)
    trace = []
    prev_winner = None
    for n_effects in range(lo, hi + 1):
        runs = []
        for r in range(cfg.restarts):
            rng = _restart_rng(cfg.seed, *key_prefix, n_effects, r)
            effects, val, iters, _ = seesaw_channel(channel, n_effects, cfg, rng=rng)
            runs.append((val, effects, iters))
            trace.append((key_prefix, n_effects, r, val, iters))
        if prev_winner is not None:
            warm = list(prev_winner) + [np.zeros((k, k), dtype=complex)]
            effects, val, iters, _ = seesaw_channel(
                channel, n_effects, cfg, init_effects=warm
            )
            runs.append((val, effects, iters))
            trace.append((key_prefix, n_effects, -1, val, iters))
        x_val, x_effects, x_iters = max(runs, key=lambda t: t[0])
        per_x[n_effects] = x_val
        prev_winner = x_effects
        agreeing = sum(1 for v, _, _ in runs if v >= x_val - 1e-6)
        # smaller X wins ties within restart noise
        if best is None or x_val > best[0] + 1e-6:
            best = (x_val, n_effects, x_effects, agreeing, x_iters, len(runs))
    value = max(per_x.values())
    return {
        "value_bits": value,
        "best_X": best[1],
        "best_effects": best[2],
        "restarts_agreeing": best[3],
        "total_restarts": best[5],
        "iterations": best[4],
        "per_X_values": per_x,
        "trace": trace,
    }


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------

def enumerate_subsystems(v: Isometry, k: int):
    """All site subsets whose dimensions multiply to k, in lexicographic order."""
    from itertools import combinations

    dims = v.out_layout.dims
    found = []
    for r in range(1, len(dims) + 1):
        for sites in combinations(range(len(dims)), r):
            d = 1
            for s in sites:
                d *= dims[s]
            if d == k:
                found.append(SubsystemSpec(sites))
    if not found:
        raise NoSubsystemError(
            f"no subsystem of dimension {k} in site layout {dims}"
        )
    return found


def seesaw(v: Isometry, c: SubsystemSpec, n_effects: int, cfg: SeesawConfig):
    """Best-over-restarts see-saw on one subsystem with a fixed effect count."""
    k = c.dim(v.out_layout)
    if not (2 <= n_effects <= k * k):
        raise ValidationError(f"effect count {n_effects} outside [2, {k * k}]")
    channel = channel_from_isometry(v, c)
    runs = []
    total_iters = 0
    for r in range(cfg.restarts):
        rng = _restart_rng(cfg.seed, *c.sites, n_effects, r)
        effects, val, iters, _ = seesaw_channel(channel, n_effects, cfg, rng=rng)
        runs.append((val, effects))
        total_iters += iters
    val, effects = max(runs, key=lambda t: t[0])
    return Povm(effects=effects), val, total_iters


def imin_acc(v: Isometry, k: int, cfg: SeesawConfig | None = None) -> IminResult:
    """Accessible min-information: max over k-dimensional subsystems and POVMs."""
    if k < 2:
        raise ValidationError("k must be >= 2")
    cfg = cfg or SeesawConfig()
    subsystems = enumerate_subsystems(v, k)
    value = -np.inf
    per_x_global: dict = {}
    best = None
    trace = []
    for si, c in enumerate(subsystems):
        channel = channel_from_isometry(v, c)
        res = optimize_channel(channel, cfg, key_prefix=(si,))
        trace.extend(
            (c.sites, x, r, val, iters) for (_, x, r, val, iters) in res["trace"]
        )
        for x, val in res["per_X_values"].items():
            per_x_global[x] = max(per_x_global.get(x, -np.inf), val)
        value = max(value, res["value_bits"])
        if best is None or res["value_bits"] > best[0] + 1e-6:
            best = (res["value_bits"], c, res)
    _, best_c, best_res = best
    agreeing = best_res["restarts_agreeing"]
    total = best_res["total_restarts"]
    return IminResult(
        value_bits=value,
        best_subsystem=best_c,
        best_povm=Povm(effects=best_res["best_effects"]),
        best_num_effects=best_res["best_X"],
        per_X_values=per_x_global,
        restart_trace=trace,
        restarts_agreeing=agreeing,
        total_restarts=total,
        fragile=agreeing < 0.25 * total,
        iterations=best_res["iterations"],
    )


# ---------------------------------------------------------------------------
# perfect-scrambler certification via IC-POVMs
# ---------------------------------------------------------------------------

def sic_povm_qubit():
    """The symmetric informationally complete qubit POVM (tetrahedron)."""
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    s3 = 1.0 / sqrt(3.0)
    dirs = [
        (s3, s3, s3), (s3, -s3, -s3), (-s3, s3, -s3), (-s3, -s3, s3),
    ]
    eye = np.eye(2, dtype=complex)
    return [(eye + a * sx + b * sy + c * sz) / 4.0 for a, b, c in dirs]


def ic_povm(dim: int):
    """An informationally complete POVM on C^dim.

    For qubits this is the SIC-POVM; otherwise dim^2 rank-one projectors
    (basis states plus +/+i superpositions) conjugated into a POVM.
    """
    if dim == 2:
        return sic_povm_qubit()
    projs = []
    eye = np.eye(dim, dtype=complex)
    for i in range(dim):
        projs.append(np.outer(eye[i], eye[i].conj()))
    for i in range(dim):
        for j in range(i + 1, dim):
            v = (eye[i] + eye[j]) / sqrt(2.0)
            projs.append(np.outer(v, v.conj()))
            w = (eye[i] + 1j * eye[j]) / sqrt(2.0)
            projs.append(np.outer(w, w.conj()))
    s = sum(projs)
    w_s, u_s = np.linalg.eigh(s)
    inv_sqrt = (u_s * (1.0 / np.sqrt(w_s))) @ dag(u_s)
    effects = [inv_sqrt @ p @ inv_sqrt for p in projs]
    # informational completeness: the vectorized effects span all operators
    stack = np.stack([e.ravel() for e in effects])
    if np.linalg.matrix_rank(stack, tol=1e-10) != dim * dim:
        raise ValidationError(f"IC-POVM construction degenerate at dim {dim}")
    return effects


@dataclass
class ScramblerCertificate:
    k: int
    certified: bool
    per_subsystem: list  # (sites, max_deviation)

    @property
    def max_deviation(self) -> float:
        return max(d for _, d in self.per_subsystem)


def certify_channel(channel: MatrixChannel, effects=None) -> float:
    """Max deviation of pulled-back IC effects from multiples of identity."""
    d = channel.in_dim
    effects = effects if effects is not None else ic_povm(channel.out_dim)
    dev = 0.0
    for mu in effects:
        back = channel.adjoint(mu)
        centered = back - (np.trace(back) / d) * np.eye(d)
        dev = max(dev, operator_norm(centered))
    return dev


def perfect_scrambler_certificate(v: Isometry, k: int) -> ScramblerCertificate:
    """Certify the replacement-channel property on every k-dimensional subsystem.

    Checking a single IC-POVM per subsystem suffices: the adjoint channel is
    linear, so trivializing an operator basis trivializes every POVM.
    """
    subsystems = enumerate_subsystems(v, k)
    per_sub = []
    for c in subsystems:
        channel = channel_from_isometry(v, c)
        per_sub.append((c.sites, certify_channel(channel)))
    certified = all(dev <= CERT_ATOL for _, dev in per_sub)
    return ScramblerCertificate(k=k, certified=certified, per_subsystem=per_sub)
