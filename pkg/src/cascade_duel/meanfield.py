"""Six-compartment mean-field dynamics of two competing informations.

Compartments: S (uninformed), A/B (informed by one information), AB
(informed by both), a/b (supporters). The fractions always sum to 1.
Integration is classical fixed-step RK4; a trajectory is declared steady
once every transient compartment (A, B, AB) has drained below tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NEG_CLAMP = -1e-12
CONSERVATION_LIMIT = 1e-6

COMPARTMENTS = ("S", "A", "B", "AB", "a", "b")


class IntegrationError(RuntimeError):
    """Numerical failure (conservation drift or negative compartments)."""


@dataclass(frozen=True)
class CompartmentState:
    S: float
    A: float
    B: float
    AB: float
    a: float
    b: float

    def as_array(self) -> np.ndarray:
        return np.array([self.S, self.A, self.B, self.AB, self.a, self.b],
                        dtype=np.float64)

    @classmethod
    def from_array(cls, y) -> "CompartmentState":
        return cls(*(float(x) for x in y))

    def validate(self, atol: float = 1e-9) -> None:
        y = self.as_array()
        if (y < NEG_CLAMP).any():
            raise ValueError(f"negative compartment values: {self}")
        if abs(float(y.sum()) - 1.0) > atol:
            raise ValueError(f"compartments sum to {float(y.sum())}, not 1: {self}")

    def total(self) -> float:
        return float(self.as_array().sum())


def initial_state(a0: float = 0.0005, b0: float = 0.0005) -> CompartmentState:
    """All mass uninformed except the two informed seed fractions."""
    if a0 < 0 or b0 < 0 or a0 + b0 > 1:
        raise ValueError("seed fractions must be non-negative and sum to at most 1")
    return CompartmentState(S=1.0 - a0 - b0, A=a0, B=b0, AB=0.0, a=0.0, b=0.0)


@dataclass(frozen=True)
class RateParams:
    beta1: float
    beta2: float

    def __post_init__(self):
        if self.beta1 < 0 or self.beta2 < 0:
            raise ValueError("spreading rates must be non-negative")


@dataclass
class Trajectory:
    times: np.ndarray
    values: np.ndarray  # shape (T, 6), columns in COMPARTMENTS order
    steady_state_reached: bool
    steady_time: float | None

    @property
    def final(self) -> CompartmentState:
        return CompartmentState.from_array(self.values[-1])

    def state_at(self, i: int) -> CompartmentState:
        return CompartmentState.from_array(self.values[i])

    def column(self, name: str) -> np.ndarray:
        return self.values[:, COMPARTMENTS.index(name)]


def _rhs_arrays(y, beta1, beta2):
    """Vectorized right-hand side; y has shape (6, ...) and broadcasts."""
    S, A, B, AB = y[0], y[1], y[2], y[3]
    inf1 = A + AB
    inf2 = B + AB
    dS = -beta1 * S * inf1 - beta2 * S * inf2
    dA = beta1 * S * inf1 - beta2 * A * inf2 - A
    dB = beta2 * S * inf2 - beta1 * B * inf1 - B
    dAB = beta2 * A * inf2 + beta1 * B * inf1 - 2.0 * AB
    da = A + AB
    db = B + AB
    return np.stack([dS, dA, dB, dAB, da, db])


def rhs(state: CompartmentState, p: RateParams) -> CompartmentState:
    """Time derivative of every compartment at `state`."""
    return CompartmentState.from_array(
        _rhs_arrays(state.as_array(), p.beta1, p.beta2))


def _rk4_step(y, dt, beta1, beta2):
    k1 = _rhs_arrays(y, beta1, beta2)
    k2 = _rhs_arrays(y + 0.5 * dt * k1, beta1, beta2)
    k3 = _rhs_arrays(y + 0.5 * dt * k2, beta1, beta2)
    k4 = _rhs_arrays(y + dt * k3, beta1, beta2)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _clamp(y):
    bad = y < NEG_CLAMP
    if bad.any():
        worst = float(y[bad].min())
        raise IntegrationError(
            f"compartment went negative ({worst:.3e}); reduce dt")
    np.clip(y, 0.0, None, out=y)
    return y


def integrate(init: CompartmentState, p: RateParams, dt: float = 0.01,
              t_end: float = 200.0, steady_tol: float = 1e-6) -> Trajectory:
    """Integrate one trajectory, recording every accepted step.

    Halts early once max(A, B, AB) < steady_tol. Raises IntegrationError
    if the compartment sum drifts by more than 1e-6 (a smaller dt is the
    usual fix).
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    init.validate()
    y = init.as_array()
    times = [0.0]
    states = [y.copy()]
    steady = bool(max(y[1], y[2], y[3]) < steady_tol)
    steady_time = 0.0 if steady else None
    t = 0.0
    nsteps = int(round(t_end / dt))
    for k in range(1, nsteps + 1):
        if steady:
            break
        y = _rk4_step(y, dt, p.beta1, p.beta2)
        y = _clamp(y)
        drift = abs(float(y.sum()) - 1.0)
        if drift > CONSERVATION_LIMIT:
            raise IntegrationError(
                f"conservation drift {drift:.3e} at t={k * dt:.4f}; reduce dt")
        t = k * dt
        times.append(t)
        states.append(y.copy())
        if max(y[1], y[2], y[3]) < steady_tol:
            steady = True
            steady_time = t
    return Trajectory(times=np.array(times), values=np.array(states),
                      steady_state_reached=steady, steady_time=steady_time)


@dataclass
class BatchResult:
    """Vectorized integration of many independent (init, beta1, beta2) cells."""

    final: np.ndarray      # shape (m, 6)
    peak: np.ndarray       # shape (m, 3): running max of A, B, AB
    steady: np.ndarray     # bool, per cell
    failed: np.ndarray     # bool, per cell (conservation failure)
    max_drift: np.ndarray  # per-cell max |sum - 1| over all steps


def integrate_batch(inits: np.ndarray, beta1s, beta2s, dt: float = 0.01,
                    t_end: float = 200.0,
                    steady_tol: float = 1e-6) -> BatchResult:
    """Integrate m independent cells in lockstep as one vectorized system.

    `inits` has shape (m, 6). Cells that reach steady state (or fail
    conservation) are frozen and dropped from the active set
    periodically; their trajectories are unaffected, so results are
    deterministic regardless of the compaction schedule. `steady_tol=0`
    disables early stopping entirely.
    """
    inits = np.asarray(inits, dtype=np.float64)
    if inits.ndim != 2 or inits.shape[1] != 6:
        raise ValueError("inits must have shape (m, 6)")
    m = inits.shape[0]
    bb1 = np.broadcast_to(np.asarray(beta1s, dtype=np.float64), (m,)).copy()
    bb2 = np.broadcast_to(np.asarray(beta2s, dtype=np.float64), (m,)).copy()
    if (bb1 < 0).any() or (bb2 < 0).any():
        raise ValueError("spreading rates must be non-negative")

    y = inits.T.copy()
    final = inits.T.copy()
    peak = y[1:4].copy()
    steady = np.zeros(m, dtype=bool)
    failed = np.zeros(m, dtype=bool)
    max_drift = np.abs(y.sum(axis=0) - 1.0)

    already = np.max(y[1:4], axis=0) < steady_tol
    steady[already] = True
    active = np.nonzero(~already)[0]
    ya = y[:, active]
    b1a, b2a = bb1[active], bb2[active]
    nsteps = int(round(t_end / dt))
    for k in range(1, nsteps + 1):
        if active.size == 0:
            break
        ya = _rk4_step(ya, dt, b1a, b2a)
        np.clip(ya, 0.0, None, out=ya)
        drift = np.abs(ya.sum(axis=0) - 1.0)
        np.maximum(max_drift[active], drift, out=drift)
        max_drift[active] = drift
        bad = drift > CONSERVATION_LIMIT
        peak[:, active] = np.maximum(peak[:, active], ya[1:4])
        done = np.max(ya[1:4], axis=0) < steady_tol
        freeze = bad | done
        if freeze.any():
            idx = active[freeze]
            final[:, idx] = ya[:, freeze]
            steady[idx] = done[freeze] & ~bad[freeze]
            failed[idx] = bad[freeze]
            keep = ~freeze
            active = active[keep]
            ya = ya[:, keep]
            b1a, b2a = b1a[keep], b2a[keep]
    if active.size:
        final[:, active] = ya  # hit t_end without reaching steady state
    return BatchResult(final=final.T.copy(), peak=peak.T.copy(),
                       steady=steady, failed=failed, max_drift=max_drift)


@dataclass
class SweepGrid:
    """Final and peak compartment values over a (beta1, beta2) lattice."""

    beta1_values: np.ndarray
    beta2_values: np.ndarray
    final: np.ndarray       # shape (n1, n2, 6)
    peak: np.ndarray        # shape (n1, n2, 3): running max of A, B, AB
    ratio: np.ndarray       # final a / (a + b), 0.5 where a + b == 0
    steady: np.ndarray      # bool, per cell
    failed: np.ndarray      # bool, per cell (integration failure)

    def final_of(self, name: str) -> np.ndarray:
        return self.final[:, :, COMPARTMENTS.index(name)]


def sweep_grid(init: CompartmentState, beta1_values, beta2_values,
               dt: float = 0.01, t_end: float = 200.0,
               steady_tol: float = 1e-6) -> SweepGrid:
    """Integrate every (beta1, beta2) cell of the lattice."""
    init.validate()
    b1v = np.asarray(beta1_values, dtype=np.float64)
    b2v = np.asarray(beta2_values, dtype=np.float64)
    n1, n2 = b1v.shape[0], b2v.shape[0]
    m = n1 * n2
    inits = np.tile(init.as_array(), (m, 1))
    batch = integrate_batch(inits, np.repeat(b1v, n2), np.tile(b2v, n1),
                            dt=dt, t_end=t_end, steady_tol=steady_tol)
    final_grid = batch.final.reshape(n1, n2, 6)
    peak_grid = batch.peak.reshape(n1, n2, 3)
    a_f = final_grid[:, :, 4]
    b_f = final_grid[:, :, 5]
    denom = a_f + b_f
    ratio = np.where(denom > 0, np.divide(a_f, np.where(denom > 0, denom, 1.0)), 0.5)
    return SweepGrid(beta1_values=b1v, beta2_values=b2v, final=final_grid,
                     peak=peak_grid, ratio=ratio,
                     steady=batch.steady.reshape(n1, n2),
                     failed=batch.failed.reshape(n1, n2))


def contour_equilibrium(grid: SweepGrid, level: float = 0.5
                        ) -> list[tuple[float, float]]:
    """Linear-interpolation extraction of the a/(a+b) = level set.

    Scans adjacent cell pairs along both lattice axes; failed cells are
    skipped. Returns sorted, deduplicated (beta1, beta2) points.
    """
    r = grid.ratio
    ok = ~grid.failed
    b1, b2 = grid.beta1_values, grid.beta2_values
    pts = set()

    def cross(r1, r2, c1, c2, fixed, axis):
        f1, f2 = r1 - level, r2 - level
        if f1 == 0.0:
            p = (c1, fixed) if axis == 0 else (fixed, c1)
            pts.add((round(p[0], 9), round(p[1], 9)))
        if f1 * f2 < 0.0:
            t = f1 / (f1 - f2)
            c = c1 + t * (c2 - c1)
            p = (c, fixed) if axis == 0 else (fixed, c)
            pts.add((round(p[0], 9), round(p[1], 9)))

    n1, n2 = r.shape
    for j in range(n2):
        for i in range(n1 - 1):
            if ok[i, j] and ok[i + 1, j]:
                cross(r[i, j], r[i + 1, j], b1[i], b1[i + 1], b2[j], axis=0)
        if n1 and ok[n1 - 1, j] and r[n1 - 1, j] == level:
            pts.add((round(float(b1[n1 - 1]), 9), round(float(b2[j]), 9)))
    for i in range(n1):
        for j in range(n2 - 1):
            if ok[i, j] and ok[i, j + 1]:
                cross(r[i, j], r[i, j + 1], b2[j], b2[j + 1], b1[i], axis=1)
        if n2 and ok[i, n2 - 1] and r[i, n2 - 1] == level:
            pts.add((round(float(b1[i]), 9), round(float(b2[n2 - 1]), 9)))
    return sorted(pts)
