"""Alternating-sign sech^2 pulse trains with optionally random inter-pulse delays.

A train of N pulses of amplitude e0 and width tau has pulse k (1-based)
centered at c_k = ((N + 1 - 2k)/2) * T_k carrying sign (-1)^(k-1), where the
delays T_k are drawn i.i.d. from Normal(mu_t, sigma_t^2).  The field and its
vector potential are

    E(t) = sum_k (-1)^(k-1) e0 sech^2((t - c_k)/tau)
    A(t) = -e0 tau [1 + sum_k (-1)^(k-1) tanh((t - c_k)/tau)]

so that E = -dA/dt.  Between pulses A(t) sits on plateaus alternating
between +-e0*tau around a common value it takes at every pulse center:
0 for even N, -e0*tau for odd N (the constant term cancels against the
saturated tanh of the earlier pulses only when their signs pair up).
Kinetic momenta are measured against that pulse-center value (see
:func:`gauge_centered_potential`): pairs are created at the pulses, so this
choice of momentum label centers every train's spectrum at p3 = 0.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .params import ParamError, PhysicalParams, TrainParams


@dataclass(frozen=True)
class DelayVector:
    """One realization of the inter-pulse delays T_1..T_N in [1/m].

    ``seed_used``/``draw_index`` identify the substream that produced the
    vector; both are None for externally supplied vectors (replayed rows).
    """

    values: np.ndarray
    seed_used: int | None
    draw_index: int | None


@dataclass(frozen=True)
class PulseTrain:
    """Immutable field configuration: parameters, delays, derived centers."""

    phys: PhysicalParams
    train: TrainParams
    delays: DelayVector
    centers: np.ndarray  # pulse-center times, [1/m]
    signs: np.ndarray    # (-1)^(k-1), k = 1..N

    @property
    def pulse_center_potential(self) -> float:
        """Common value of A(t) at the pulse centers: 0 (even N), -e0*tau (odd N)."""
        if self.train.n_pulses % 2 == 0:
            return 0.0
        return -self.phys.e0 * self.phys.tau

    @property
    def gauge_delta(self) -> float:
        """1.0 for even N, 0.0 for odd N; A_kinetic = -e0*tau*(tanh-sum + delta)."""
        return 1.0 if self.train.n_pulses % 2 == 0 else 0.0

    def window(self, margin_factor: float) -> tuple[float, float]:
        """Integration window padding the outermost centers by margin_factor*tau."""
        pad = margin_factor * self.phys.tau
        return float(self.centers.min() - pad), float(self.centers.max() + pad)


def _substream(seed: int, run_index: int) -> np.random.Generator:
    # Counter-based generator on a spawned seed sequence: the (seed, run_index)
    # pair fully determines the stream, independent of process or thread.
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(run_index,))
    return np.random.Generator(np.random.Philox(ss))


def sample_delays(train: TrainParams, run_index: int) -> DelayVector:
    """Draw T_k = mu_t + sigma_t * z_k with z_k standard normal.

    Deterministic in (train.seed, run_index).  Negative draws are kept as-is
    (the distribution is unbounded); with sigma_t = 0 every entry equals
    mu_t exactly, regardless of seed.
    """
    train.validate()
    if run_index < 0:
        raise ParamError("run_index_negative", f"run_index must be >= 0, got {run_index}")
    z = _substream(train.seed, run_index).standard_normal(train.n_pulses)
    values = train.mu_t + train.sigma_t * z
    values.flags.writeable = False
    return DelayVector(values=values, seed_used=train.seed, draw_index=run_index)


def delays_from_values(values, seed_used: int | None = None,
                       draw_index: int | None = None) -> DelayVector:
    """Wrap an externally supplied delay vector (e.g. a tabulated realization)."""
    arr = np.asarray(values, dtype=float).copy()
    if arr.ndim != 1 or arr.size < 1:
        raise ParamError("delays_shape", "delay vector must be 1-D and non-empty")
    arr.flags.writeable = False
    return DelayVector(values=arr, seed_used=seed_used, draw_index=draw_index)


def build_train(phys: PhysicalParams, train: TrainParams,
                delays: DelayVector) -> PulseTrain:
    """Assemble a PulseTrain; centers are ((N+1-2k)/2) * T_k for k = 1..N."""
    phys.validate()
    train.validate()
    n = train.n_pulses
    if delays.values.shape != (n,):
        raise ParamError(
            "delays_length_mismatch",
            f"delay vector has length {delays.values.size}, expected n_pulses={n}")
    k = np.arange(1, n + 1)
    centers = 0.5 * (n + 1 - 2 * k) * delays.values
    signs = np.where(k % 2 == 1, 1.0, -1.0)
    centers.flags.writeable = False
    signs.flags.writeable = False
    return PulseTrain(phys=phys, train=train, delays=delays,
                      centers=centers, signs=signs)


def make_train(phys: PhysicalParams, train: TrainParams,
               run_index: int = 0) -> PulseTrain:
    """Sample a delay realization and build the train in one step."""
    return build_train(phys, train, sample_delays(train, run_index))


def electric_field(t, pt: PulseTrain):
    """E(t) in units of E_c; scalar or ndarray t.

    Evaluated through tanh (sech^2 = 1 - tanh^2), which saturates cleanly for
    large arguments instead of overflowing like exp-based forms.
    """
    t = np.asarray(t, dtype=float)
    arg = (t[..., None] - pt.centers) / pt.phys.tau
    th = np.tanh(arg)
    out = pt.phys.e0 * np.sum(pt.signs * (1.0 - th * th), axis=-1)
    return out if out.ndim else float(out)


def vector_potential(t, pt: PulseTrain):
    """A(t) in [m]: -e0*tau*(1 + sum_k sign_k tanh((t - c_k)/tau))."""
    t = np.asarray(t, dtype=float)
    arg = (t[..., None] - pt.centers) / pt.phys.tau
    s = np.sum(pt.signs * np.tanh(arg), axis=-1)
    out = -pt.phys.e0 * pt.phys.tau * (1.0 + s)
    return out if out.ndim else float(out)


def gauge_centered_potential(t, pt: PulseTrain):
    """A(t) minus its common pulse-center value.

    This is the potential entering the kinetic momentum.  It vanishes at the
    pulse centers (where pairs are created) and swings between plateaus at
    +-e0*tau in between, so canonical momenta are labeled such that spectra
    are centered at p3 = 0 for every pulse count.
    """
    t = np.asarray(t, dtype=float)
    arg = (t[..., None] - pt.centers) / pt.phys.tau
    s = np.sum(pt.signs * np.tanh(arg), axis=-1)
    out = -pt.phys.e0 * pt.phys.tau * (s + pt.gauge_delta)
    return out if out.ndim else float(out)


# --- delay-vector CSV replay ----------------------------------------------

def delays_to_csv(pt: PulseTrain) -> str:
    """Rows (k, T_k, center_k) with round-trip-safe formatting."""
    buf = io.StringIO()
    buf.write(f"# n_pulses={pt.train.n_pulses}, mu_t={pt.train.mu_t!r}, "
              f"sigma_t={pt.train.sigma_t!r}, seed={pt.delays.seed_used}, "
              f"run_index={pt.delays.draw_index}\n")
    buf.write("k,T_k,center_k\n")
    for i, (tk, ck) in enumerate(zip(pt.delays.values, pt.centers), start=1):
        buf.write(f"{i},{tk:.16e},{ck:.16e}\n")
    return buf.getvalue()


def delays_from_csv(text: str) -> DelayVector:
    """Parse a (k, T_k, center_k) table; only T_k is consumed."""
    values = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#") or line.lower().startswith("k,"):
            continue
        fields = line.split(",")
        if len(fields) < 2:
            raise ParamError("delays_csv_malformed", f"bad delay row: {line!r}")
        values.append(float(fields[1]))
    if not values:
        raise ParamError("delays_csv_empty", "no delay rows found")
    return delays_from_values(values)
