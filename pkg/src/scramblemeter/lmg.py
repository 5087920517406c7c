"""Lipkin-Meshkov-Glick dynamics in the maximal-spin Dicke sector.

The chain Hamiltonian is H = -(2J/N) S_z^2 - 2 h S_x with J = 1 (time in tJ
units). A logical qubit is encoded into the fully polarized Dicke states
|S,+S> = |0...0> and |S,-S> = |1...1>, evolved, and observed through the
reduced channel on a single site. The sector has dimension N+1, with basis
ordered |S,M> for M = S, S-1, ..., -S, so the model stays cheap to simulate
for chains of hundreds of spins.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .engine import MatrixChannel, SeesawConfig, optimize_channel
from .qstate import Isometry, SiteLayout, ValidationError, validate_isometry


@dataclass(frozen=True)
class DickeSector:
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValidationError("need at least one spin")

    @property
    def dim(self) -> int:
        return self.N + 1

    @property
    def spin(self) -> float:
        return self.N / 2.0

    @property
    def m_values(self) -> np.ndarray:
        # basis index i carries M = S - i
        return self.spin - np.arange(self.dim)


@dataclass(frozen=True)
class LmgParams:
    N: int
    h: float
    t: float = 0.0

    def __post_init__(self):
        if self.N < 2:
            raise ValidationError("N must be >= 2")
        if self.t < 0:
            raise ValidationError("t must be nonnegative")


def spin_operators(sector: DickeSector):
    """Collective (S_x, S_z) in the maximal-spin sector."""
    s = sector.spin
    m = sector.m_values
    s_z = np.diag(m).astype(complex)
    # S_+ raises M by one: index i -> i - 1
    raise_amp = np.sqrt(s * (s + 1) - m[1:] * (m[1:] + 1))
    s_plus = np.diag(raise_amp, k=1).astype(complex)
    s_x = (s_plus + s_plus.conj().T) / 2.0
    return s_x, s_z


def h_lmg(p: LmgParams) -> np.ndarray:
    s_x, s_z = spin_operators(DickeSector(p.N))
    return -(2.0 / p.N) * (s_z @ s_z) - 2.0 * p.h * s_x


class LmgPropagator:
    """One-time diagonalization of H(N, h), reused across the whole time grid."""

    def __init__(self, N: int, h: float):
        self.N = N
        self.h = h
        ham = h_lmg(LmgParams(N=N, h=h))
        self.energies, self.modes = np.linalg.eigh(ham)
        dim = N + 1
        # spectral decompositions of the two codewords |S,+S>, |S,-S>
        self._codeword_amps = self.modes.conj().T @ np.eye(dim)[:, [0, dim - 1]]

    def codewords(self, t: float) -> np.ndarray:
        """Columns U(t)|S,+S> and U(t)|S,-S>, i.e. the encoder at time t."""
        phases = np.exp(-1j * self.energies * t)
        return self.modes @ (phases[:, None] * self._codeword_amps)


def v_lmg(p: LmgParams) -> Isometry:
    """The (N+1) x 2 encoding isometry e^{-itH}|i>^N for i = 0, 1."""
    cols = LmgPropagator(p.N, p.h).codewords(p.t)
    return validate_isometry(cols, SiteLayout((p.N + 1,)))


def dicke_split_coeffs(N: int, M: float, L: int) -> np.ndarray:
    """Amplitudes p_{M,l} splitting |N/2, M> across an {L, N-L} bipartition.

    p^2_{M,l} = C(L,l) C(N-L, M+N/2-l) / C(N, M+N/2); out-of-range binomials
    vanish. Computed in log space so large N does not overflow.
    """
    if not (1 <= L < N):
        raise ValidationError(f"need 1 <= L < N, got L={L}, N={N}")
    m_up = M + N / 2.0
    if abs(m_up - round(m_up)) > 1e-9 or not (0 <= round(m_up) <= N):
        raise ValidationError(f"invalid magnetization M={M} for N={N}")
    m_up = int(round(m_up))

    def log_binom(n, k):
        if k < 0 or k > n:
            return -np.inf
        return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)

    out = np.zeros(L + 1)
    denom = log_binom(N, m_up)
    for l in range(L + 1):
        lp = log_binom(L, l) + log_binom(N - L, m_up - l) - denom
        out[l] = math.exp(lp / 2.0) if np.isfinite(lp) else 0.0
    return out


def _site_amplitudes(N: int):
    """L = 1 split amplitudes for every sector basis index at once.

    Index i holds M = N/2 - i, i.e. m_up = N - i spins up; the site is up
    with amplitude sqrt(m_up/N) and down with sqrt(1 - m_up/N).
    """
    m_up = N - np.arange(N + 1)
    p_up = np.sqrt(m_up / N)
    p_down = np.sqrt(1.0 - m_up / N)
    return p_up, p_down


def _reduced_site_op(ci: np.ndarray, cj: np.ndarray, p_up, p_down) -> np.ndarray:
    """One-site reduced operator of |c_i><c_j| via the Dicke decomposition."""
    out = np.empty((2, 2), dtype=complex)
    cjc = cj.conj()
    out[0, 0] = np.sum(ci * cjc * p_up * p_up)
    out[1, 1] = np.sum(ci * cjc * p_down * p_down)
    # site-up row with site-down column pairs environment labels at i' = i + 1
    out[0, 1] = np.sum(ci[:-1] * cjc[1:] * p_up[:-1] * p_down[1:])
    out[1, 0] = np.sum(ci[1:] * cjc[:-1] * p_down[1:] * p_up[:-1])
    return out


def single_site_channel(sector: DickeSector, logical_op, v: Isometry) -> np.ndarray:
    """Reduced one-site operator of V A V† for a 2x2 logical operator A."""
    a = np.asarray(logical_op, dtype=complex)
    if a.shape != (2, 2):
        raise ValidationError(f"logical operator must be 2x2, got {a.shape}")
    if v.out_dim != sector.dim or v.in_dim != 2:
        raise ValidationError("isometry does not match the sector")
    p_up, p_down = _site_amplitudes(sector.N)
    cols = [v.mat[:, 0], v.mat[:, 1]]
    out = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            if a[i, j] != 0:
                out += a[i, j] * _reduced_site_op(cols[i], cols[j], p_up, p_down)
    return out


def site_channel_from_codewords(cols: np.ndarray, N: int) -> MatrixChannel:
    """The logical-qubit -> single-site channel as a dense 4x4 transfer matrix."""
    p_up, p_down = _site_amplitudes(N)
    t = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            t[:, 2 * i + j] = _reduced_site_op(
                cols[:, i], cols[:, j], p_up, p_down
            ).ravel()
    return MatrixChannel(transfer=t, in_dim=2, out_dim=2)


@dataclass
class SweepRecord:
    N: int
    h: float
    t: float
    value_bits: float
    best_num_effects: int
    restarts_agreeing: int
    iterations: int


def _h_key(h: float) -> int:
    return int(round(h * 1e9))


def _sweep_point(prop: LmgPropagator, t: float, t_index: int, cfg: SeesawConfig):
    channel = site_channel_from_codewords(prop.codewords(t), prop.N)
    res = optimize_channel(
        channel, cfg, key_prefix=(prop.N, _h_key(prop.h), t_index)
    )
    return SweepRecord(
        N=prop.N,
        h=prop.h,
        t=t,
        value_bits=res["value_bits"],
        best_num_effects=res["best_X"],
        restarts_agreeing=res["restarts_agreeing"],
        iterations=res["iterations"],
    )


def imin_timeseries(
    N: int,
    h: float,
    t_grid,
    cfg: SeesawConfig | None = None,
    threads: int = 1,
):
    """Accessible min-information along a time grid, one record per point.

    One representative site stands in for the whole "max over subsystems" by
    permutation symmetry of the Dicke sector. Grid points are independent
    tasks; the output order is fixed by the grid regardless of thread count.
    """
    t_grid = list(t_grid)
    if not t_grid or any(b < a for a, b in zip(t_grid, t_grid[1:])):
        raise ValidationError("t_grid must be non-empty and ascending")
    cfg = cfg or SeesawConfig()
    prop = LmgPropagator(N, h)
    if threads <= 1:
        return [_sweep_point(prop, t, i, cfg) for i, t in enumerate(t_grid)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(_sweep_point, prop, t, i, cfg)
            for i, t in enumerate(t_grid)
        ]
        return [f.result() for f in futures]


class NeverCrossedError(ValidationError):
    """The series never reached the scrambling threshold."""


def scrambling_time(series, eps: float) -> float:
    """First time the value dips to eps, linearly interpolated.

    Raises NeverCrossedError if the series stays above the threshold.
    """
    if eps <= 0:
        raise ValidationError("eps must be positive")
    prev = None
    for rec in series:
        t, val = rec.t, rec.value_bits
        if val <= eps:
            if prev is None:
                return float(t)
            t0, v0 = prev
            if v0 == val:
                return float(t)
            return float(t0 + (t - t0) * (v0 - eps) / (v0 - val))
        prev = (t, val)
    raise NeverCrossedError(f"series never reached {eps} bits")


def scrambling_time_direct(
    N: int,
    h: float,
    eps: float,
    t_max: float = 20.0,
    t_step: float = 0.05,
    cfg: SeesawConfig | None = None,
    settle_points: int = 3,
) -> float:
    """Scrambling time without materializing the full series.

    Walks the grid in order and stops a few points after the threshold
    crossing (enough to bracket and interpolate), which matters for the
    large-N scaling runs. Returns inf if the window never crosses.
    """
    cfg = cfg or SeesawConfig()
    prop = LmgPropagator(N, h)
    n_steps = int(round(t_max / t_step))
    series = []
    below = 0
    for i in range(n_steps + 1):
        rec = _sweep_point(prop, i * t_step, i, cfg)
        series.append(rec)
        below = below + 1 if rec.value_bits <= eps else 0
        if below >= settle_points:
            break
    try:
        return scrambling_time(series, eps)
    except NeverCrossedError:
        return math.inf


def logfit(points):
    """Least squares of t_scramb against ln N; returns (slope, intercept, r^2)."""
    pts = [(n, t) for n, t in points if math.isfinite(t)]
    if len(pts) < 3:
        raise ValidationError("need at least 3 finite points to fit")
    ns = np.array([n for n, _ in pts], dtype=float)
    if len(set(ns.tolist())) < len(ns):
        raise ValidationError("chain sizes must be distinct")
    x = np.log(ns)
    y = np.array([t for _, t in pts])
    if np.ptp(x) < 1e-12:
        raise ValidationError("degenerate abscissae")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - float(np.sum(resid**2)) / ss_tot
    return float(slope), float(intercept), r2
