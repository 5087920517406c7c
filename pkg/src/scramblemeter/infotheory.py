"""Single-shot entropic quantities.

Guessing probability, the prior-normalized discrimination ratio, robustness
of measurement, min-entropy, and conditional min-entropy of cq states. All
entropies are in bits. The cq structure is kept as an explicit list of
(probability, conditional state) pairs; the classical register is never
materialized as a tensor factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log2

import cvxpy as cp
import numpy as np

from .qstate import Povm, ValidationError, check_density, dag, operator_norm
from .sdp import DEFAULT_TOL, _quiet_solve, _solver_tol, solve_discrimination


@dataclass
class Ensemble:
    """Letters with priors and conditional states: {(p_x, rho_x)}."""

    items: list  # [(p_x, rho_x)]

    def validated(self) -> "Ensemble":
        if not self.items:
            raise ValidationError("empty ensemble")
        d = np.asarray(self.items[0][1]).shape[0]
        total = 0.0
        items = []
        for p, rho in self.items:
            p = float(p)
            if p < -1e-12:
                raise ValidationError(f"negative prior {p}")
            rho = check_density(rho)
            if rho.shape != (d, d):
                raise ValidationError("ensemble states must share dimension")
            total += p
            items.append((p, rho))
        if abs(total - 1.0) > 1e-12:
            raise ValidationError(f"priors sum to {total}, not 1")
        return Ensemble(items=items)

    @property
    def priors(self):
        return [p for p, _ in self.items]

    @property
    def states(self):
        return [rho for _, rho in self.items]


# A classical-quantum state sum_x p_x P_x (x) rho_x shares the representation.
CqState = Ensemble


def p_guess(e: Ensemble, m: Povm) -> float:
    """Success probability of guess-on-outcome decoding: sum_x p_x Tr(mu_x rho_x)."""
    e = e.validated()
    if len(m) != len(e.items):
        raise ValidationError(
            f"POVM has {len(m)} effects for {len(e.items)} letters"
        )
    if m.dim != e.items[0][1].shape[0]:
        raise ValidationError("POVM dimension does not match ensemble states")
    return float(sum(p * np.real(np.trace(mu @ rho))
                     for (p, rho), mu in zip(e.items, m.effects)))


def r_guess(e: Ensemble, m: Povm) -> float:
    """Prior-normalized success ratio sum_x (p_x / p_max) Tr(mu_x rho_x).

    Equals the number of letters exactly when priors are uniform and the
    states are perfectly discriminated; immune to the always-guess-the-mode
    strategy that inflates p_guess under skewed priors.
    """
    e = e.validated()
    pmax = max(e.priors)
    return p_guess(e, m) / pmax


def robustness(m: Povm) -> float:
    """Robustness of measurement: sum_x ||mu_x||_inf - 1 >= 0."""
    m.validate()
    return float(sum(operator_norm(mu) for mu in m.effects)) - 1.0


def max_ratio_over_ensembles(m: Povm) -> float:
    """Closed form of max_E r_guess(E, m): equals robustness(m) + 1.

    The ensemble maximization is carried out analytically (uniform priors on
    the top eigenvectors of the effects); no numerical search is performed.
    """
    return robustness(m) + 1.0


def h_min(rho) -> float:
    """Min-entropy -log2 ||rho||_inf of a density matrix, in bits."""
    rho = check_density(rho)
    return -log2(operator_norm(rho))


def h_min_cond(rho: CqState, tol: float = DEFAULT_TOL):
    """Conditional min-entropy H_min(X|C) of a cq state, in bits.

    Solved through the convex program min Tr(sigma) s.t. sigma >= p_x rho_x,
    the cq specialization of the operator program for H_min(A|B). Returns
    (bits, certified_gap).
    """
    rho = rho.validated()
    d = rho.items[0][1].shape[0]
    sigma = cp.Variable((d, d), hermitian=True)
    cons = [sigma >> p * r for p, r in rho.items]
    prob = cp.Problem(cp.Minimize(cp.real(cp.trace(sigma))), cons)
    try:
        with _quiet_solve():
            prob.solve(solver=cp.CLARABEL, tol_gap_abs=_solver_tol(tol),
                       tol_gap_rel=_solver_tol(tol), tol_feas=_solver_tol(tol))
    except cp.error.SolverError as exc:
        raise ValidationError(f"min-entropy SDP failed: {exc}") from exc
    if prob.status not in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE):
        raise ValidationError(f"min-entropy SDP status: {prob.status}")
    sig = np.asarray(sigma.value)
    sig = (sig + dag(sig)) / 2
    # make the bound certified: shift sigma up to exact feasibility
    shift = 0.0
    for p, r in rho.items:
        lo = float(np.linalg.eigvalsh(p * r - sig)[-1])
        shift = max(shift, lo)
    upper = float(np.real(np.trace(sig))) + shift * d
    # lower bound on the optimum from the dual (discrimination) side
    lower = max(p for p, _ in rho.items)
    duals = [c.dual_value for c in cons]
    if all(dv is not None for dv in duals):
        from .sdp import _project_povm

        effects = _project_povm([np.asarray(dv) for dv in duals])
        lower = max(lower, float(sum(p * np.real(np.trace(e @ r))
                                     for (p, r), e in zip(rho.items, effects))))
    gap = upper - lower
    return -log2(upper), gap


def verify_duality(rho: CqState, tol: float = 1e-6) -> dict:
    """Check 2^-H_min(X|C) == max_mu p_guess with both sides computed independently."""
    rho = rho.validated()
    bits, gap = h_min_cond(rho)
    _, pg = solve_discrimination(rho.states, rho.priors)
    diff = abs(2.0 ** (-bits) - pg)
    return {
        "h_min_cond_bits": bits,
        "p_guess_opt": pg,
        "difference": diff,
        "sdp_gap": gap,
        "passed": diff <= tol,
    }
