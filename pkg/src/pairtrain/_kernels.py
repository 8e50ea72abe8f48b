"""Compiled mode-integration kernel (internal).

Dormand-Prince 5(4) embedded pair with the classic PI controller, specialized
to the three-component kinetic system.  Everything here is plain scalar math
so numba emits a tight loop; the public wrappers live in qve.py.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# Dormand-Prince 5(4) tableau
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                                49.0 / 176.0, -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
# 5th-order minus embedded 4th-order weights (error estimator)
_E1 = 71.0 / 57600.0
_E3 = -71.0 / 16695.0
_E4 = 71.0 / 1920.0
_E5 = -17253.0 / 339200.0
_E6 = 22.0 / 525.0
_E7 = -1.0 / 40.0

STATUS_OK = 0
STATUS_STEP_UNDERFLOW = 1
STATUS_DRIFT_EXCEEDED = 2
STATUS_TOO_MANY_STEPS = 3

_MAX_STEPS = 50_000_000


@njit(cache=True, nogil=True, inline="always")
def _field_sums(t, centers, signs, tau):
    # Shared tanh per pulse: sech^2 = 1 - tanh^2.  |x| > 20 saturates to +-1
    # exactly (tanh(20) rounds to 1.0 in double precision anyway).
    s_tanh = 0.0
    s_sech = 0.0
    for i in range(centers.shape[0]):
        x = (t - centers[i]) / tau
        if x > 20.0:
            th = 1.0
        elif x < -20.0:
            th = -1.0
        else:
            th = np.tanh(x)
        s_tanh += signs[i] * th
        s_sech += signs[i] * (1.0 - th * th)
    return s_tanh, s_sech


@njit(cache=True, nogil=True, inline="always")
def _rhs(t, f, u, v, p3, eperp, eperp2, centers, signs, e0, tau, gauge_delta):
    s_tanh, s_sech = _field_sums(t, centers, signs, tau)
    # kinetic momentum against the pulse-center gauge: A_kin = -e0*tau*(s_tanh+delta)
    p_kin = p3 + e0 * tau * (s_tanh + gauge_delta)
    w2 = eperp2 + p_kin * p_kin
    w = np.sqrt(w2)
    lam = e0 * s_sech * eperp / w2
    df = 0.5 * lam * u
    du = lam * (1.0 - 2.0 * f) - 2.0 * w * v
    dv = 2.0 * w * u
    return df, du, dv


@njit(cache=True, nogil=True)
def integrate_kernel(p3, eperp, centers, signs, e0, tau, gauge_delta,
                     t0, tf, f0, u0, v0,
                     rtol, atol_f, atol_uv, max_step, max_drift,
                     trace, trace_buf):
    """Adaptive DP5(4) from t0 to tf; returns state, drift and step counts.

    trace_buf rows are (t, f, u, v, first_integral); filled only when trace
    is true, up to capacity.
    """
    eperp2 = eperp * eperp
    f, u, v = f0, u0, v0
    t = t0
    span = tf - t0

    drift = 0.0
    n_acc = 0
    n_rej = 0
    n_tr = 0
    if trace and trace_buf.shape[0] > 0:
        inv0 = (1.0 - 2.0 * f) ** 2 + u * u + v * v
        trace_buf[0, 0] = t
        trace_buf[0, 1] = f
        trace_buf[0, 2] = u
        trace_buf[0, 3] = v
        trace_buf[0, 4] = inv0
        n_tr = 1

    k1f, k1u, k1v = _rhs(t, f, u, v, p3, eperp, eperp2, centers, signs, e0, tau, gauge_delta)

    # initial step: resolve the fastest rotation scale conservatively
    h = 1.0e-3
    if h > span:
        h = span
    if max_step > 0.0 and h > max_step:
        h = max_step

    # Hairer-style PI controller state
    facold = 1.0e-4
    safe = 0.9
    beta = 0.04
    expo1 = 0.2 - beta * 0.75
    hmin_floor = 1.0e-14 * span

    rejected_last = False
    status = STATUS_OK

    while t < tf:
        if n_acc + n_rej > _MAX_STEPS:
            status = STATUS_TOO_MANY_STEPS
            break
        if h < hmin_floor:
            status = STATUS_STEP_UNDERFLOW
            break
        if t + h >= tf:
            h = tf - t
        elif t + 1.05 * h >= tf:
            h = 0.5 * (tf - t)

        y2f = f + h * _A21 * k1f
        y2u = u + h * _A21 * k1u
        y2v = v + h * _A21 * k1v
        k2f, k2u, k2v = _rhs(t + _C2 * h, y2f, y2u, y2v,
                             p3, eperp, eperp2, centers, signs, e0, tau, gauge_delta)

        y3f = f + h * (_A31 * k1f + _A32 * k2f)
        y3u = u + h * (_A31 * k1u + _A32 * k2u)
        y3v = v + h * (_A31 * k1v + _A32 * k2v)
        k3f, k3u, k3v = _rhs(t + _C3 * h, y3f, y3u, y3v,
                             p3, eperp, eperp2, centers, signs, e0, tau, gauge_delta)

        y4f = f + h * (_A41 * k1f + _A42 * k2f + _A43 * k3f)
        y4u = u + h * (_A41 * k1u + _A42 * k2u + _A43 * k3u)
        y4v = v + h * (_A41 * k1v + _A42 * k2v + _A43 * k3v)
        k4f, k4u, k4v = _rhs(t + _C4 * h, y4f, y4u, y4v,
                             p3, eperp, eperp2, centers, signs, e0, tau, gauge_delta)

        y5f = f + h * (_A51 * k1f + _A52 * k2f + _A53 * k3f + _A54 * k4f)
        y5u = u + h * (_A51 * k1u + _A52 * k2u + _A53 * k3u + _A54 * k4u)
        y5v = v + h * (_A51 * k1v + _A52 * k2v + _A53 * k3v + _A54 * k4v)
        k5f, k5u, k5v = _rhs(t + _C5 * h, y5f, y5u, y5v,
                             p3, eperp, eperp2, centers, signs, e0, tau, gauge_delta)

        y6f = f + h * (_A61 * k1f + _A62 * k2f + _A63 * k3f + _A64 * k4f + _A65 * k5f)
        y6u = u + h * (_A61 * k1u + _A62 * k2u + _A63 * k3u + _A64 * k4u + _A65 * k5u)
        y6v = v + h * (_A61 * k1v + _A62 * k2v + _A63 * k3v + _A64 * k4v + _A65 * k5v)
        k6f, k6u, k6v = _rhs(t + h, y6f, y6u, y6v,
                             p3, eperp, eperp2, centers, signs, e0, tau, gauge_delta)

        ynf = f + h * (_B1 * k1f + _B3 * k3f + _B4 * k4f + _B5 * k5f + _B6 * k6f)
        ynu = u + h * (_B1 * k1u + _B3 * k3u + _B4 * k4u + _B5 * k5u + _B6 * k6u)
        ynv = v + h * (_B1 * k1v + _B3 * k3v + _B4 * k4v + _B5 * k5v + _B6 * k6v)
        # FSAL stage
        k7f, k7u, k7v = _rhs(t + h, ynf, ynu, ynv,
                             p3, eperp, eperp2, centers, signs, e0, tau, gauge_delta)

        errf = h * (_E1 * k1f + _E3 * k3f + _E4 * k4f + _E5 * k5f + _E6 * k6f + _E7 * k7f)
        erru = h * (_E1 * k1u + _E3 * k3u + _E4 * k4u + _E5 * k5u + _E6 * k6u + _E7 * k7u)
        errv = h * (_E1 * k1v + _E3 * k3v + _E4 * k4v + _E5 * k5v + _E6 * k6v + _E7 * k7v)

        sf = atol_f + rtol * max(abs(f), abs(ynf))
        su = atol_uv + rtol * max(abs(u), abs(ynu))
        sv = atol_uv + rtol * max(abs(v), abs(ynv))
        err = np.sqrt(((errf / sf) ** 2 + (erru / su) ** 2 + (errv / sv) ** 2) / 3.0)

        fac11 = err ** expo1
        if err <= 1.0:
            # accept
            t = t + h
            f, u, v = ynf, ynu, ynv
            k1f, k1u, k1v = k7f, k7u, k7v
            inv = (1.0 - 2.0 * f) ** 2 + u * u + v * v
            d = abs(inv - 1.0)
            if d > drift:
                drift = d
            if trace and n_tr < trace_buf.shape[0]:
                trace_buf[n_tr, 0] = t
                trace_buf[n_tr, 1] = f
                trace_buf[n_tr, 2] = u
                trace_buf[n_tr, 3] = v
                trace_buf[n_tr, 4] = inv
                n_tr += 1
            n_acc += 1
            if drift > max_drift:
                status = STATUS_DRIFT_EXCEEDED
                break
            fac = fac11 / facold ** beta
            fac = max(0.1, min(5.0, fac / safe))
            hnew = h / fac
            if rejected_last:
                hnew = min(hnew, h)
            facold = max(err, 1.0e-4)
            rejected_last = False
            h = hnew
        else:
            # reject
            n_rej += 1
            rejected_last = True
            h = h / min(5.0, fac11 / safe)
        if max_step > 0.0 and h > max_step:
            h = max_step

    return f, u, v, t, drift, n_acc, n_rej, status, n_tr
