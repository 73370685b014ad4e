"""Domain types, constants, spin operators and rotating-frame Hamiltonians.

All frequencies are angular (rad/s) throughout the library.  CLI-facing code
converts from ordinary MHz at the boundary, nowhere else.

Basis conventions (fixed for the whole package):
  * tensor order: electron factor first, then nuclei in list order;
  * a state/operator carries an ``electron_axis`` tag, ``"Z"`` or ``"X"``,
    naming the electron basis the matrix is written in.  In the X basis the
    electron Sx operator is diagonal and the zero-/double-quantum block
    structure of the single-nucleus Hamiltonian is explicit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import constants as sc

__all__ = [
    "PhysConstants",
    "DEFAULT_CONSTANTS",
    "SphericalPosition",
    "HyperfineParams",
    "NucleusSpec",
    "SystemSpec",
    "OperatorMatrix",
    "QuantumState",
    "hyperfine_from_geometry",
    "dipolar_coupling",
    "thermal_polarization",
    "build_rotating_hamiltonian",
    "hamiltonian_parts",
    "initial_state",
    "observables",
    "dq_projector",
    "zq_projector",
    "sigma_z_dq",
    "sigma_z_zq",
]

MAX_NUCLEI = 6  # dense propagation cap, Hilbert dimension 2^(k+1) <= 128

_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_ID2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class PhysConstants:
    """SI constants; gyromagnetic ratios stored as positive magnitudes (rad/s/T)."""

    mu0: float = sc.mu_0
    hbar: float = sc.hbar
    kB: float = sc.k
    gamma_e: float = abs(sc.physical_constants["electron gyromag. ratio"][0])
    gamma_n: float = sc.physical_constants["proton gyromag. ratio"][0]

    def __post_init__(self):
        for name in ("mu0", "hbar", "kB", "gamma_e", "gamma_n"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")


DEFAULT_CONSTANTS = PhysConstants()


@dataclass(frozen=True)
class SphericalPosition:
    """Electron-to-nucleus vector in spherical coordinates (radius m, angles rad)."""

    radius: float
    polar: float
    azimuth: float = 0.0

    def __post_init__(self):
        if not self.radius > 0.0:
            raise ValueError("radius must be positive")


@dataclass(frozen=True)
class HyperfineParams:
    """Pseudo-secular hyperfine couplings of one nucleus.

    ``mixing`` multiplies Sz(cos(azimuth) Ix + sin(azimuth) Iy) and drives
    nuclear spin flips; ``shifting`` multiplies Sz Iz and shifts nuclear
    energies.  Both in rad/s.
    """

    mixing: float
    shifting: float
    azimuth: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.mixing) and math.isfinite(self.shifting)):
            raise ValueError("hyperfine couplings must be finite")
        object.__setattr__(self, "azimuth", self.azimuth % (2.0 * math.pi))


def hyperfine_from_geometry(
    position: SphericalPosition,
    fermi_contact: float = 0.0,
    constants: PhysConstants = DEFAULT_CONSTANTS,
) -> HyperfineParams:
    """Point-dipole hyperfine couplings from electron-nucleus geometry.

    mixing  = (3/2) * mu0*gamma_e*gamma_n*hbar / (4 pi r^3) * sin(2 theta)
    shifting =        mu0*gamma_e*gamma_n*hbar / (4 pi r^3) * (3 cos^2 theta - 1)
               + fermi_contact

    ``fermi_contact`` is the scalar contact contribution to the shifting part
    (rad/s); no electronic-structure model behind it.
    """
    if not position.radius > 0.0:
        raise ValueError("radius must be positive")
    kernel = (
        constants.mu0
        * constants.gamma_e
        * constants.gamma_n
        * constants.hbar
        / (4.0 * math.pi * position.radius**3)
    )
    mixing = 1.5 * kernel * math.sin(2.0 * position.polar)
    shifting = kernel * (3.0 * math.cos(position.polar) ** 2 - 1.0) + fermi_contact
    return HyperfineParams(mixing=mixing, shifting=shifting, azimuth=position.azimuth)


def dipolar_coupling(
    pos_i: SphericalPosition,
    pos_j: SphericalPosition,
    constants: PhysConstants = DEFAULT_CONSTANTS,
) -> float:
    """Secular homonuclear coupling constant d_ij (rad/s) for two nuclei.

    Uses the same radial kernel as the hyperfine conversion with gamma_n^2 and
    the secular angular factor (1 - 3 cos^2 theta_ij)/2 of the internuclear
    vector.
    """
    ri, rj = _to_cartesian(pos_i), _to_cartesian(pos_j)
    dvec = rj - ri
    dist = float(np.linalg.norm(dvec))
    if dist <= 0.0:
        raise ValueError("nuclei must not coincide")
    cos_t = dvec[2] / dist
    kernel = constants.mu0 * constants.gamma_n**2 * constants.hbar / (
        4.0 * math.pi * dist**3
    )
    return kernel * (1.0 - 3.0 * cos_t**2) / 2.0


def _to_cartesian(p: SphericalPosition) -> np.ndarray:
    st, ct = math.sin(p.polar), math.cos(p.polar)
    return p.radius * np.array(
        [st * math.cos(p.azimuth), st * math.sin(p.azimuth), ct]
    )


def thermal_polarization(
    omega: float,
    temperature: float,
    constants: PhysConstants = DEFAULT_CONSTANTS,
) -> float:
    """Boltzmann polarization tanh(hbar*omega / 2 kB T) of a two-level spin."""
    if not temperature > 0.0:
        raise ValueError("temperature must be positive")
    return math.tanh(constants.hbar * omega / (2.0 * constants.kB * temperature))


@dataclass(frozen=True)
class NucleusSpec:
    """One nucleus: hyperfine couplings plus optional generating geometry.

    When both ``position`` and explicit couplings are supplied they must agree
    with the geometric conversion to 1e-9 relative (cross-check on build).
    """

    hyperfine: HyperfineParams
    position: SphericalPosition | None = None
    fermi_contact: float = 0.0

    def __post_init__(self):
        if self.position is None:
            return
        ref = hyperfine_from_geometry(self.position, self.fermi_contact)
        for name in ("mixing", "shifting"):
            got, want = getattr(self.hyperfine, name), getattr(ref, name)
            scale = max(abs(want), abs(got), 1.0)
            if abs(got - want) > 1e-9 * scale:
                raise ValueError(
                    f"hyperfine.{name} inconsistent with position-derived value "
                    f"({got:g} vs {want:g})"
                )

    @classmethod
    def from_geometry(
        cls,
        position: SphericalPosition,
        fermi_contact: float = 0.0,
        constants: PhysConstants = DEFAULT_CONSTANTS,
    ) -> "NucleusSpec":
        hf = hyperfine_from_geometry(position, fermi_contact, constants)
        return cls(hyperfine=hf, position=position, fermi_contact=fermi_contact)


@dataclass(frozen=True)
class SystemSpec:
    """Scalar physics parameters of one electron coupled to k nuclei.

    nuclear_larmor, electron_larmor, local_offset in rad/s; ``dipolar`` is the
    symmetric k x k matrix of homonuclear coupling constants d_ij (rad/s) with
    zero diagonal, entering as d_ij (3 Iz_i Iz_j - I_i . I_j).
    """

    nuclear_larmor: float
    nuclei: tuple[NucleusSpec, ...] = ()
    electron_larmor: float = 0.0
    local_offset: float = 0.0
    dipolar: np.ndarray | None = None

    def __post_init__(self):
        if not self.nuclear_larmor > 0.0:
            raise ValueError("nuclear_larmor must be positive")
        object.__setattr__(self, "nuclei", tuple(self.nuclei))
        k = len(self.nuclei)
        if k > MAX_NUCLEI:
            raise ValueError(f"at most {MAX_NUCLEI} nuclei supported, got {k}")
        if self.dipolar is None:
            d = np.zeros((k, k))
        else:
            d = np.asarray(self.dipolar, dtype=float)
            if d.shape != (k, k):
                raise ValueError(f"dipolar matrix must be {k}x{k}")
            if not np.array_equal(d, d.T):
                raise ValueError("dipolar matrix must be symmetric")
            if np.any(np.diag(d) != 0.0):
                raise ValueError("dipolar matrix must have zero diagonal")
        d.setflags(write=False)
        object.__setattr__(self, "dipolar", d)

    @property
    def k(self) -> int:
        return len(self.nuclei)

    @property
    def dim(self) -> int:
        return 2 ** (self.k + 1)


def _check_hermitian(m: np.ndarray, tol: float, what: str):
    if np.max(np.abs(m - m.conj().T)) >= tol:
        raise ValueError(f"{what} is not Hermitian within {tol:g}")


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense operator on the 2^(k+1)-dimensional product space.

    ``hermitian=True`` flags Hamiltonians/observables and enforces
    max|M - M^dagger| < 1e-12 at construction.
    """

    matrix: np.ndarray
    electron_axis: str = "Z"
    hermitian: bool = True

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        n = m.shape[0]
        if m.ndim != 2 or m.shape != (n, n) or n & (n - 1) or n < 2:
            raise ValueError("matrix must be square with power-of-two dimension")
        if self.electron_axis not in ("Z", "X"):
            raise ValueError("electron_axis must be 'Z' or 'X'")
        if self.hermitian:
            _check_hermitian(m, 1e-12, "operator flagged hermitian")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class QuantumState:
    """Density matrix over electron x nuclei with the package basis ordering.

    Invariants: Hermitian, unit trace to 1e-10, eigenvalues >= -1e-10.
    """

    matrix: np.ndarray
    electron_axis: str = "X"

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        n = m.shape[0]
        if m.ndim != 2 or m.shape != (n, n) or n & (n - 1) or n < 2:
            raise ValueError("matrix must be square with power-of-two dimension")
        if self.electron_axis not in ("Z", "X"):
            raise ValueError("electron_axis must be 'Z' or 'X'")
        _check_hermitian(m, 1e-10, "density matrix")
        if abs(np.trace(m).real - 1.0) > 1e-10:
            raise ValueError("density matrix trace must be 1 within 1e-10")
        if np.linalg.eigvalsh(m).min() < -1e-10:
            raise ValueError("density matrix must be positive within 1e-10")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def k(self) -> int:
        return self.dim.bit_length() - 2

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


def _electron_ops(electron_axis: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Matrices of (Sx, Sy, Sz) in the requested electron basis."""
    if electron_axis == "Z":
        return 0.5 * _SIGMA_X, 0.5 * _SIGMA_Y, 0.5 * _SIGMA_Z
    # Hadamard conjugation: matrices of Sx, Sy, Sz in the X eigenbasis
    return 0.5 * _SIGMA_Z, -0.5 * _SIGMA_Y, 0.5 * _SIGMA_X


def _embed(op: np.ndarray, site: int, k: int) -> np.ndarray:
    """Tensor ``op`` at position ``site`` among k+1 factors (electron is 0)."""
    out = np.array([[1.0 + 0.0j]])
    for j in range(k + 1):
        out = np.kron(out, op if j == site else _ID2)
    return out


def hamiltonian_parts(
    spec: SystemSpec, electron_axis: str = "X"
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Decompose H(t) = static + rabi(t)*drive + offset(t)*tilt.

    ``static`` holds nuclear Zeeman, hyperfine and dipolar terms; ``drive`` is
    Sx (x) 1 and ``tilt`` is Sz (x) 1, all as raw complex arrays in the given
    electron basis.  Time-dependent builders reuse these to avoid re-assembly
    per step.
    """
    k = spec.k
    sx_e, sy_e, sz_e = _electron_ops(electron_axis)
    drive = _embed(sx_e, 0, k)
    tilt = _embed(sz_e, 0, k)

    dim = 2 ** (k + 1)
    static = np.zeros((dim, dim), dtype=complex)
    sz_full = _embed(sz_e, 0, k)
    for i, nuc in enumerate(spec.nuclei):
        ix = _embed(0.5 * _SIGMA_X, i + 1, k)
        iy = _embed(0.5 * _SIGMA_Y, i + 1, k)
        iz = _embed(0.5 * _SIGMA_Z, i + 1, k)
        static += spec.nuclear_larmor * iz
        hf = nuc.hyperfine
        trans = math.cos(hf.azimuth) * ix + math.sin(hf.azimuth) * iy
        static += sz_full @ (hf.mixing * trans + hf.shifting * iz)
    for i in range(k):
        for j in range(i + 1, k):
            d = spec.dipolar[i, j]
            if d == 0.0:
                continue
            ops_i = [_embed(0.5 * s, i + 1, k) for s in (_SIGMA_X, _SIGMA_Y, _SIGMA_Z)]
            ops_j = [_embed(0.5 * s, j + 1, k) for s in (_SIGMA_X, _SIGMA_Y, _SIGMA_Z)]
            zz = ops_i[2] @ ops_j[2]
            dot = sum(a @ b for a, b in zip(ops_i, ops_j))
            static += d * (3.0 * zz - dot)
    return static, drive, tilt


def build_rotating_hamiltonian(
    spec: SystemSpec,
    rabi: float,
    local_offset: float | None = None,
    electron_axis: str = "X",
) -> OperatorMatrix:
    """Rotating-frame Hamiltonian at electron Rabi frequency ``rabi`` (rad/s).

    H = (local_offset Sz + rabi Sx) (x) 1 + sum_i nuclear_larmor Iz_i
        + sum_i Sz (x) (mixing_i (cos az Ix + sin az Iy) + shifting_i Iz_i)
        + sum_{i<j} d_ij (3 Iz_i Iz_j - I_i . I_j)

    ``local_offset`` defaults to ``spec.local_offset``.
    """
    if local_offset is None:
        local_offset = spec.local_offset
    static, drive, tilt = hamiltonian_parts(spec, electron_axis)
    h = static + rabi * drive + local_offset * tilt
    return OperatorMatrix(matrix=h, electron_axis=electron_axis, hermitian=True)


def initial_state(spec: SystemSpec, electron_axis: str = "X") -> QuantumState:
    """Electron pure along ``electron_axis``, nuclei maximally mixed.

    Represented in the same electron basis it is polarized along, so the
    electron block is diag(1, 0).
    """
    k = spec.k
    rho_e = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    rho = rho_e
    for _ in range(k):
        rho = np.kron(rho, 0.5 * _ID2)
    return QuantumState(matrix=rho, electron_axis=electron_axis)


def observables(state: QuantumState) -> tuple[float, np.ndarray]:
    """(electron X-polarization, per-nucleus Z-polarizations) of a state.

    Electron value is Tr[(sigma_x (x) 1) rho] in the state's own
    representation; nuclear values are Tr[(1 (x) sigma_z_i) rho].
    """
    k = state.k
    sx_e = _electron_ops(state.electron_axis)[0] * 2.0
    elec = float(np.trace(_embed(sx_e, 0, k) @ state.matrix).real)
    nuc = np.empty(k)
    for i in range(k):
        nuc[i] = np.trace(_embed(_SIGMA_Z, i + 1, k) @ state.matrix).real
    return elec, nuc


def _block_basis_op(entries: dict[tuple[int, int], complex]) -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    for (i, j), v in entries.items():
        m[i, j] = v
    return m


# Single-nucleus (dim 4) block machinery, valid in the electron-X
# representation with basis order (uu, ud, du, dd).
# Double-quantum subspace: indices {0, 3}; zero-quantum: {1, 2}.

def dq_projector() -> np.ndarray:
    return _block_basis_op({(0, 0): 1.0, (3, 3): 1.0})


def zq_projector() -> np.ndarray:
    return _block_basis_op({(1, 1): 1.0, (2, 2): 1.0})


def sigma_z_dq() -> np.ndarray:
    return _block_basis_op({(0, 0): 1.0, (3, 3): -1.0})


def sigma_z_zq() -> np.ndarray:
    return _block_basis_op({(1, 1): 1.0, (2, 2): -1.0})
