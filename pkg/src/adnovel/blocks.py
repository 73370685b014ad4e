"""Closed-form zero-/double-quantum analytics for the single-nucleus system.

The dim-4 rotating-frame Hamiltonian at zero shifting coupling and zero local
offset splits into two 2x2 blocks in the electron-X, nucleus-Z product basis.
Everything here is exact algebra on those blocks: eigenfrequencies,
quantization angles, the analytic spin-lock magnetization, the avoided
crossing transfer probability for a linear amplitude sweep, and perturbative
leakage amplitudes induced by the energy-shifting coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BlockModel",
    "block_model",
    "magnetization_analytic",
    "lz_probability",
    "LeakageRates",
    "leakage_rates",
]


@dataclass(frozen=True)
class BlockModel:
    """Block reduction of the dim-4 system at given Rabi frequency.

    freq_dq / freq_zq are the positive-branch eigenfrequencies of the
    double-/zero-quantum blocks; angle_dq / angle_zq the corresponding
    quantization angles.  All frequencies rad/s, angles rad.
    """

    rabi: float
    nuclear_larmor: float
    mixing: float
    freq_dq: float
    freq_zq: float
    angle_dq: float
    angle_zq: float


def block_model(rabi: float, nuclear_larmor: float, mixing: float) -> BlockModel:
    """Eigenfrequencies and quantization angles of the two 2x2 blocks.

    freq_dq = (1/2) sqrt((rabi + nuclear_larmor)^2 + (mixing/2)^2), same for
    the zero-quantum block with the difference of frequencies.  angle_zq uses
    the two-argument arctangent so it passes smoothly through pi/2 when the
    Rabi frequency crosses the nuclear Larmor frequency during a sweep.
    """
    if not nuclear_larmor > 0.0:
        raise ValueError("nuclear_larmor must be positive")
    half_mix = 0.5 * mixing
    s = rabi + nuclear_larmor
    d = rabi - nuclear_larmor
    return BlockModel(
        rabi=rabi,
        nuclear_larmor=nuclear_larmor,
        mixing=mixing,
        freq_dq=0.5 * math.hypot(s, half_mix),
        freq_zq=0.5 * math.hypot(d, half_mix),
        angle_dq=math.atan2(half_mix, s),
        angle_zq=math.atan2(half_mix, d),
    )


def magnetization_analytic(model: BlockModel, t):
    """Nuclear Z-polarization under a constant spin lock, dimensionless.

    Equals Tr[(1 (x) sigma_z) rho(t)] for the electron-X-polarized,
    nucleus-mixed initial state: each block contributes half its Bloch-vector
    precession at the full eigen-splitting 2*freq,

        P(t) = 1/2 [cos^2(angle_dq) + sin^2(angle_dq) cos(2 freq_dq t)]
             - 1/2 [cos^2(angle_zq) + sin^2(angle_zq) cos(2 freq_zq t)],

    a convention pinned once against dense matrix exponentiation.
    Accepts scalar or array ``t`` (seconds, >= 0).
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0):
        raise ValueError("t must be non-negative")
    dq = np.cos(model.angle_dq) ** 2 + np.sin(model.angle_dq) ** 2 * np.cos(
        2.0 * model.freq_dq * t
    )
    zq = np.cos(model.angle_zq) ** 2 + np.sin(model.angle_zq) ** 2 * np.cos(
        2.0 * model.freq_zq * t
    )
    out = 0.5 * (dq - zq)
    return float(out) if out.ndim == 0 else out


def lz_probability(mixing: float, sweep_span: float, t_sweep: float) -> float:
    """Diabatic survival probability for a linear sweep through resonance.

    The zero-quantum block under rabi(t) swept linearly across the nuclear
    Larmor frequency over +/- sweep_span is an avoided two-level crossing with
    gap mixing/2; the probability of remaining in the initial product state is

        P = exp(-2 pi g),  g = (mixing/4)^2 * t_sweep / (2 sweep_span),

    i.e. the standard exponent (gap/2)^2 / |d(detuning)/dt|.
    """
    if not t_sweep > 0.0:
        raise ValueError("t_sweep must be positive")
    if not sweep_span > 0.0:
        raise ValueError("sweep_span must be positive")
    g = (0.25 * mixing) ** 2 * t_sweep / (2.0 * sweep_span)
    return math.exp(-2.0 * math.pi * g)


@dataclass(frozen=True)
class LeakageRates:
    """Dimensionless mixing amplitudes between block eigenstates.

    ``parallel`` covers the pair of like-signed transitions
    (Phi+ <-> Psi+, Phi- <-> Psi-), ``crossed`` the opposite-signed pair.
    ``degenerate`` flags an exactly vanishing parallel denominator, in which
    case that amplitude is reported as +inf rather than silently clamped.
    """

    parallel_plus: float
    parallel_minus: float
    crossed_plus: float
    crossed_minus: float
    degenerate: bool = False

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (
            self.parallel_plus,
            self.parallel_minus,
            self.crossed_plus,
            self.crossed_minus,
        )


def leakage_rates(model: BlockModel, shifting: float) -> LeakageRates:
    """First-order leakage amplitudes induced by the energy-shifting coupling.

    parallel = (shifting/4) |sin(angle_dq - angle_zq)| / |freq_dq - freq_zq|
    crossed  = (shifting/4) |cos(angle_dq - angle_zq)| / (freq_dq + freq_zq)

    Magnitudes are returned (odd symmetry in the coupling folds away).
    """
    diff = model.angle_dq - model.angle_zq
    quarter = 0.25 * abs(shifting)
    gap_minus = abs(model.freq_dq - model.freq_zq)
    gap_plus = model.freq_dq + model.freq_zq
    degenerate = gap_minus == 0.0
    if degenerate:
        parallel = math.inf if quarter > 0.0 else 0.0
    else:
        parallel = quarter * abs(math.sin(diff)) / gap_minus
    crossed = quarter * abs(math.cos(diff)) / gap_plus if gap_plus > 0.0 else 0.0
    return LeakageRates(
        parallel_plus=parallel,
        parallel_minus=parallel,
        crossed_plus=crossed,
        crossed_minus=crossed,
        degenerate=degenerate,
    )
