"""Unit system and validated parameter sets.

Everything works in electron-mass units with hbar = c = 1: times are in
[1/m], momenta in [m], and field amplitudes are dimensionless multiples of
the critical field E_c = m^2/|e|.  With m = 1 and |e| = 1 the product
e0 * tau is the vector-potential scale in [m].

There is deliberately no SI conversion layer; every quantity elsewhere in
the package is expressed in these units.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


class ParamError(ValueError):
    """Invalid parameter value; ``code`` identifies which constraint failed."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _require(condition: bool, code: str, message: str) -> None:
    if not condition:
        raise ParamError(code, message)


@dataclass(frozen=True)
class PhysicalParams:
    """Field and particle constants.

    Attributes
    ----------
    e0 : float
        Pulse amplitude in units of the critical field E_c (dimensionless).
    tau : float
        Pulse width in [1/m].
    m : float
        Electron mass; fixed to 1.0 (mass units).
    e_charge : float
        Elementary charge magnitude; fixed to 1.0, so E_c = m^2/|e| = 1.
    """

    e0: float
    tau: float
    m: float = 1.0
    e_charge: float = 1.0

    def validate(self) -> "PhysicalParams":
        _require(self.m == 1.0, "m_not_unity", "m must be exactly 1.0 (mass units)")
        _require(self.e_charge == 1.0, "e_charge_not_unity",
                 "e_charge must be exactly 1.0 (mass units)")
        # e0 = 0 is the field-free control case and must stay representable.
        _require(self.e0 >= 0.0, "e0_negative", f"e0 must be >= 0, got {self.e0}")
        _require(self.tau > 0.0, "tau_nonpositive", f"tau must be > 0, got {self.tau}")
        return self


@dataclass(frozen=True)
class TrainParams:
    """Pulse-train geometry and delay statistics.

    Attributes
    ----------
    n_pulses : int
        Number of pulses N (>= 1).
    mu_t : float
        Mean inter-pulse delay in [1/m].
    sigma_t : float
        Standard deviation of the delay distribution in [1/m] (>= 0;
        0 gives the deterministic train bit-exactly, independent of seed).
    seed : int
        64-bit master seed for delay sampling.
    """

    n_pulses: int
    mu_t: float
    sigma_t: float
    seed: int

    def validate(self) -> "TrainParams":
        _require(isinstance(self.n_pulses, int) and self.n_pulses >= 1,
                 "n_pulses_invalid", f"n_pulses must be an integer >= 1, got {self.n_pulses}")
        _require(self.mu_t > 0.0, "mu_t_nonpositive", f"mu_t must be > 0, got {self.mu_t}")
        _require(self.sigma_t >= 0.0, "sigma_t_negative",
                 f"sigma_t must be >= 0, got {self.sigma_t}")
        _require(isinstance(self.seed, int) and 0 <= self.seed < 2 ** 64,
                 "seed_invalid", f"seed must be a 64-bit unsigned integer, got {self.seed}")
        return self


@dataclass(frozen=True)
class SolverConfig:
    """Adaptive-integrator settings for the mode solver.

    ``abs_tol_f`` sits far below the asymptotic occupation scale (~1e-13)
    so the absolute floor never masks the signal; ``margin_factor`` pads the
    integration window by that many pulse widths beyond the outermost pulse
    center (sech^2 tails decay like exp(-2*dt/tau)).
    """

    rel_tol: float = 1e-10
    abs_tol_f: float = 1e-18
    abs_tol_uv: float = 1e-14
    margin_factor: float = 15.0
    max_step: float | None = None
    max_drift: float = 1e-8  # abort threshold on the first-integral drift

    def validate(self) -> "SolverConfig":
        _require(self.rel_tol > 0.0, "rel_tol_nonpositive", "rel_tol must be > 0")
        _require(self.abs_tol_f > 0.0, "abs_tol_f_nonpositive", "abs_tol_f must be > 0")
        _require(self.abs_tol_uv > 0.0, "abs_tol_uv_nonpositive", "abs_tol_uv must be > 0")
        _require(self.margin_factor >= 10.0, "margin_factor_too_small",
                 f"margin_factor must be >= 10, got {self.margin_factor}")
        _require(self.max_step is None or self.max_step > 0.0,
                 "max_step_nonpositive", "max_step must be > 0 when given")
        _require(self.max_drift > 0.0, "max_drift_nonpositive", "max_drift must be > 0")
        return self


def default_paper_params() -> tuple[PhysicalParams, TrainParams]:
    """Baseline configuration: e0 = 0.1 E_c, tau = 20 [1/m], mu_t = 180.32 [1/m].

    The default train has four pulses, no delay randomness, and seed 0.
    """
    phys = PhysicalParams(e0=0.1, tau=20.0).validate()
    train = TrainParams(n_pulses=4, mu_t=180.32, sigma_t=0.0, seed=0).validate()
    return phys, train


# --- structured-text (dict) round trip ------------------------------------
# Field names below are the stable external configuration schema.

def params_to_dict(obj: PhysicalParams | TrainParams | SolverConfig) -> dict:
    return dataclasses.asdict(obj)


def physical_from_dict(d: dict) -> PhysicalParams:
    return PhysicalParams(**d).validate()


def train_from_dict(d: dict) -> TrainParams:
    return TrainParams(**d).validate()


def solver_from_dict(d: dict) -> SolverConfig:
    return SolverConfig(**d).validate()
