"""Single-mode kinetic evolution and the quadrature cross-check.

One momentum mode (p_perp, p3) evolves under three coupled ODEs

    df/dt = (1/2) lam u
    du/dt = lam (1 - 2f) - 2 w v
    dv/dt = 2 w u

with lam(t) = e E(t) eps_perp / w^2 and w(t) = sqrt(eps_perp^2 + P3(t)^2),
P3(t) = p3 - e*(A(t) - A_mean).  Vacuum initial conditions f = u = v = 0 are
imposed well before the first pulse; the asymptotic occupation is read at the
end of the padded window.  The quantity (1 - 2f)^2 + u^2 + v^2 is exactly
conserved and its numerical drift is the primary correctness diagnostic.

``oracle_integrate_eq1`` solves the equivalent integro-differential form
(memory integral over the past with an oscillatory phase kernel) by fixed-step
quadrature.  It shares nothing with the adaptive kernel except the field
definition, so agreement between the two routes validates both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .params import ParamError, SolverConfig
from .pulse_train import PulseTrain, electric_field, gauge_centered_potential


class SolverError(RuntimeError):
    """Mode integration failed; carries the kernel status and momentum."""

    def __init__(self, message: str, status: int, momentum: "Momentum"):
        super().__init__(message)
        self.status = status
        self.momentum = momentum


@dataclass(frozen=True)
class Momentum:
    """Canonical momentum point in [m]: transverse modulus and longitudinal p3."""

    p_perp: float
    p3: float

    def validate(self) -> "Momentum":
        if self.p_perp < 0.0:
            raise ParamError("p_perp_negative", f"p_perp must be >= 0, got {self.p_perp}")
        return self


@dataclass
class KineticState:
    """Occupation f plus the two auxiliary components, at time t."""

    f: float
    u: float
    v: float
    t: float

    def first_integral(self) -> float:
        return (1.0 - 2.0 * self.f) ** 2 + self.u ** 2 + self.v ** 2


@dataclass(frozen=True)
class ModeResult:
    momentum: Momentum
    f_out: float
    invariant_drift: float
    steps_taken: int
    steps_rejected: int
    window: tuple[float, float]
    u_out: float = 0.0
    v_out: float = 0.0
    trace: np.ndarray | None = None  # rows (t, f, u, v, first_integral)


def transverse_energy(p_perp: float, m: float = 1.0) -> float:
    """eps_perp = sqrt(m^2 + p_perp^2)."""
    return math.sqrt(m * m + p_perp * p_perp)


def quasienergy(p: Momentum, t, pt: PulseTrain):
    """w = sqrt(eps_perp^2 + (p3 - e*A_centered)^2); >= eps_perp >= m.

    Uses the potential relative to its asymptotic mean, matching the solver's
    momentum labels (spectra centered at p3 = 0).
    """
    eperp = transverse_energy(p.p_perp, pt.phys.m)
    p_kin = p.p3 - pt.phys.e_charge * gauge_centered_potential(t, pt)
    return np.sqrt(eperp * eperp + p_kin * p_kin)


def transition_amplitude(p: Momentum, t, pt: PulseTrain):
    """lam = e E(t) eps_perp / w^2; zero wherever the field vanishes."""
    eperp = transverse_energy(p.p_perp, pt.phys.m)
    w = quasienergy(p, t, pt)
    return pt.phys.e_charge * electric_field(t, pt) * eperp / (w * w)


def qve_rhs(state: KineticState, p: Momentum, pt: PulseTrain) -> tuple[float, float, float]:
    """Time derivatives (df/dt, du/dt, dv/dt) at the state's own time."""
    lam = float(transition_amplitude(p, state.t, pt))
    w = float(quasienergy(p, state.t, pt))
    df = 0.5 * lam * state.u
    du = lam * (1.0 - 2.0 * state.f) - 2.0 * w * state.v
    dv = 2.0 * w * state.u
    return df, du, dv


_TRACE_CAP = 2_000_000
_DUMMY_TRACE = np.zeros((1, 5))


def _run_kernel(p: Momentum, pt: PulseTrain, cfg: SolverConfig,
                y0=(0.0, 0.0, 0.0), window=None, trace=False):
    t0, tf = pt.window(cfg.margin_factor) if window is None else window
    eperp = transverse_energy(p.p_perp, pt.phys.m)
    max_step = -1.0 if cfg.max_step is None else float(cfg.max_step)
    buf = np.empty((_TRACE_CAP, 5)) if trace else _DUMMY_TRACE
    out = _kernels.integrate_kernel(
        float(p.p3), eperp, pt.centers, pt.signs,
        pt.phys.e0, pt.phys.tau, pt.gauge_delta, t0, tf,
        float(y0[0]), float(y0[1]), float(y0[2]),
        cfg.rel_tol, cfg.abs_tol_f, cfg.abs_tol_uv, max_step, cfg.max_drift,
        trace, buf)
    return out, (t0, tf), buf


_STATUS_MESSAGES = {
    _kernels.STATUS_STEP_UNDERFLOW: "step size underflow",
    _kernels.STATUS_DRIFT_EXCEEDED: "first-integral drift exceeded max_drift",
    _kernels.STATUS_TOO_MANY_STEPS: "step budget exhausted",
}


def integrate_mode(p: Momentum, pt: PulseTrain, cfg: SolverConfig,
                   trace: bool = False) -> ModeResult:
    """Evolve one mode from vacuum through the padded window; f_out = f(tf)."""
    p.validate()
    cfg.validate()
    (f, u, v, t_end, drift, n_acc, n_rej, status, n_tr), win, buf = _run_kernel(
        p, pt, cfg, trace=trace)
    if status != _kernels.STATUS_OK:
        msg = _STATUS_MESSAGES.get(status, "unknown failure")
        raise SolverError(
            f"{msg} at p_perp={p.p_perp}, p3={p.p3} "
            f"(t={t_end:.6g}, drift={drift:.3e}, steps={n_acc})",
            status, p)
    return ModeResult(momentum=p, f_out=f, invariant_drift=drift,
                      steps_taken=n_acc, steps_rejected=n_rej, window=win,
                      u_out=u, v_out=v,
                      trace=buf[:n_tr].copy() if trace else None)


def trace_to_csv(result: ModeResult) -> str:
    """Per-step (t, f, u, v, first_integral) dump for debugging."""
    if result.trace is None:
        raise ParamError("trace_missing", "mode was integrated without trace=True")
    lines = ["t,f,u,v,first_integral"]
    for row in result.trace:
        lines.append(",".join(f"{x:.16e}" for x in row))
    return "\n".join(lines) + "\n"


def oracle_integrate_eq1(p: Momentum, pt: PulseTrain, grid_step: float,
                         margin_factor: float = 15.0) -> float:
    """Fixed-step quadrature of the memory-integral formulation.

    The running phase is accumulated once (trapezoid on 2w) and the history
    integral is carried as running cos/sin partial sums, so each step costs
    O(1).  Marching uses a predictor-corrector (Heun) step consistent with
    the trapezoid quadrature.  Intended for validation at small N.
    """
    p.validate()
    if grid_step <= 0.0:
        raise ParamError("grid_step_nonpositive", "grid_step must be > 0")
    t0, tf = pt.window(margin_factor)
    h = float(grid_step)
    n = int(math.ceil((tf - t0) / h)) + 1
    t = t0 + h * np.arange(n)

    eperp = transverse_energy(p.p_perp, pt.phys.m)
    e = pt.phys.e_charge
    p_kin = p.p3 - e * gauge_centered_potential(t, pt)
    w = np.sqrt(eperp * eperp + p_kin * p_kin)
    lam = e * electric_field(t, pt) * eperp / (w * w)

    phi = np.empty(n)
    phi[0] = 0.0
    np.cumsum(h * (w[1:] + w[:-1]), out=phi[1:])  # 2 * trapezoid(w)
    cphi = np.cos(phi)
    sphi = np.sin(phi)

    f = 0.0
    g0_c = 0.5 * lam[0] * cphi[0]  # g(t0) = 1 - 2f(t0) = 1
    g0_s = 0.5 * lam[0] * sphi[0]
    sc = 0.0  # interior-node sums of lam*g*cos(phi), lam*g*sin(phi)
    ss = 0.0
    g_i = 1.0
    for i in range(n - 1):
        li, ci, si = lam[i], cphi[i], sphi[i]
        ic = h * (g0_c + sc + 0.5 * li * g_i * ci)
        is_ = h * (g0_s + ss + 0.5 * li * g_i * si)
        d_i = 0.5 * li * (ci * ic + si * is_)

        # node i joins the interior with the corrected g value
        sc += li * g_i * ci
        ss += li * g_i * si

        g_pred = 1.0 - 2.0 * (f + h * d_i)
        lj, cj, sj = lam[i + 1], cphi[i + 1], sphi[i + 1]
        ic1 = h * (g0_c + sc + 0.5 * lj * g_pred * cj)
        is1 = h * (g0_s + ss + 0.5 * lj * g_pred * sj)
        d_j = 0.5 * lj * (cj * ic1 + sj * is1)

        f = f + 0.5 * h * (d_i + d_j)
        g_i = 1.0 - 2.0 * f
    return f


def oracle_convergence_check(p: Momentum, pt: PulseTrain, grid_step: float,
                             margin_factor: float = 15.0,
                             rel_threshold: float = 5e-3):
    """Halving-step self-test: returns (f, f_half, rel_change, converged)."""
    f1 = oracle_integrate_eq1(p, pt, grid_step, margin_factor)
    f2 = oracle_integrate_eq1(p, pt, 0.5 * grid_step, margin_factor)
    denom = max(abs(f1), abs(f2), 1e-300)
    rel = abs(f1 - f2) / denom
    return f1, f2, rel, bool(rel < rel_threshold)
