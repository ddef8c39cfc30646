#!/usr/bin/env python
"""
Apps: two floating-point worked examples.

Static friction: the largest net force ∫₀¹ f with zero torque ∫₀¹ x·f = 0
and |f| ≤ 1, solved on N cells. Qubit fidelity: √(1 - |⟨ψ₁|ψ₂⟩|²)
recovered as the largest gap |f(ρ₁) - f(ρ₂)| over affine functionals
f : Bloch ball → [0,1].

This is the only module that uses inexact arithmetic.
"""
# ========================================================
# IMPORTS
# ========================================================
import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

# --------------------------------------------------------
# Local Imports
# --------------------------------------------------------
from cst.kernel import ConvexSpaceError, DomainError, ValidationError

# ========================================================
# GLOBALS
# ========================================================
_log = logging.getLogger("CST.apps")

NORM_TOLERANCE = 1e-12
MIN_CELLS = 10
MIN_GRID_STEPS = 100


# ========================================================
# FRICTION
# ========================================================
@dataclass(frozen=True, eq=False)
class FrictionSolution:
    max_force: float
    switch_point: float
    profile: np.ndarray
    torque: float

    @property
    def cells(self) -> int:
        return len(self.profile)


def cell_midpoints(cells: int) -> np.ndarray:
    return (np.arange(cells) + 0.5) / cells


def friction_objective(profile: np.ndarray) -> float:
    """∫₀¹ f for a cellwise-constant profile."""
    return float(np.mean(profile))


def friction_torque(profile: np.ndarray) -> float:
    """∫₀¹ x·f for a cellwise-constant profile."""
    profile = np.asarray(profile, dtype=float)
    return float(np.mean(cell_midpoints(len(profile)) * profile))


def _solution(profile: np.ndarray) -> FrictionSolution:
    cells = len(profile)
    switch = float(np.sum((profile + 1) / 2)) / cells
    return FrictionSolution(friction_objective(profile), switch, profile, friction_torque(profile))


def friction_solve(cells: int) -> FrictionSolution:
    """Bang-bang optimum on *cells* equal cells.

    The profile is +1 up to a boundary cell k and -1 after it. Cell k takes
    the value t that zeroes the torque exactly: t·x_k = Σ_{i>k} x_i - Σ_{i<k} x_i.
    Cell integrals of x are exact at midpoints, so this is the optimum over
    cellwise-constant profiles and never exceeds √2 - 1.
    """
    if cells < MIN_CELLS:
        raise DomainError(f"friction needs at least {MIN_CELLS} cells, got {cells}")
    x = cell_midpoints(cells)
    before = np.concatenate(([0.0], np.cumsum(x)[:-1]))
    t = (x.sum() - 2 * before - x) / x
    k = int(np.argmax(t <= 1))
    profile = np.where(np.arange(cells) < k, 1.0, -1.0)
    profile[k] = t[k]
    solution = _solution(profile)
    _log.debug("friction N=%d: F=%.12f s=%.12f torque=%.3e",
               cells, solution.max_force, solution.switch_point, solution.torque)
    return solution


def friction_solve_lp(cells: int) -> FrictionSolution:
    """The same cell LP solved by HiGHS, for cross-checking :func:`friction_solve`."""
    if cells < MIN_CELLS:
        raise DomainError(f"friction needs at least {MIN_CELLS} cells, got {cells}")
    x = cell_midpoints(cells)
    result = linprog(-np.ones(cells) / cells,
                     A_eq=(x / cells)[np.newaxis, :],
                     b_eq=[0.0],
                     bounds=[(-1.0, 1.0)] * cells,
                     method="highs")
    if result.status != 0:
        raise ConvexSpaceError(f"linprog failed: {result.message}")
    return _solution(np.asarray(result.x))


def random_feasible_profiles(cells: int, count: int, seed: int = 0) -> np.ndarray:
    """*count* random profiles with zero torque and values in [-1, 1].

    Draws uniform profiles, removes their torque component, then shrinks
    rows that left the box.
    """
    rng = np.random.default_rng(seed)
    x = cell_midpoints(cells)
    g = rng.uniform(-1.0, 1.0, size=(count, cells))
    g -= np.outer(g @ x / (x @ x), x)
    scale = np.maximum(1.0, np.abs(g).max(axis=1))
    return g / scale[:, np.newaxis]


# ========================================================
# QUBITS
# ========================================================
@dataclass(frozen=True, eq=False)
class QubitPair:
    psi1: np.ndarray
    psi2: np.ndarray

    def __post_init__(self):
        for name in ("psi1", "psi2"):
            psi = np.asarray(getattr(self, name), dtype=complex)
            if psi.shape != (2,):
                raise ValidationError(f"{name} must be a 2-vector, got shape {psi.shape}",
                                      invariant="qubit-shape", witness=psi)
            norm = float(np.linalg.norm(psi))
            if abs(norm - 1.0) > NORM_TOLERANCE:
                raise ValidationError(f"{name} has norm {norm!r}, not 1",
                                      invariant="qubit-norm", witness=psi)
            object.__setattr__(self, name, psi)

    @property
    def overlap(self) -> complex:
        return complex(np.vdot(self.psi1, self.psi2))


def qubit_state(theta: float, phi: float) -> np.ndarray:
    """cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩, Bloch vector at polar θ, azimuth φ."""
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def bloch_vector(psi: np.ndarray) -> np.ndarray:
    a, b = np.asarray(psi, dtype=complex)
    ab = np.conj(a) * b
    return np.array([2 * ab.real, 2 * ab.imag, abs(a) ** 2 - abs(b) ** 2])


def bloch_angle(q: QubitPair) -> float:
    """Angle between the two Bloch vectors."""
    cos_alpha = float(np.dot(bloch_vector(q.psi1), bloch_vector(q.psi2)))
    return float(np.arccos(np.clip(cos_alpha, -1.0, 1.0)))


def fidelity_defect(q: QubitPair) -> float:
    """√(1 - |⟨ψ₁|ψ₂⟩|²) from the inner product."""
    return float(np.sqrt(max(0.0, 1.0 - abs(q.overlap) ** 2)))


def fidelity_defect_search(q: QubitPair, grid_steps: int = MIN_GRID_STEPS) -> float:
    """max |f(ρ₁) - f(ρ₂)| over f(ρ) = 1/2 + v·b(ρ), ‖v‖ = 1/2, v on a spherical grid.

    Linearly dependent states give 0 without searching.
    """
    if grid_steps < MIN_GRID_STEPS:
        raise DomainError(f"grid_steps must be ≥ {MIN_GRID_STEPS}, got {grid_steps}")
    if abs(abs(q.overlap) - 1.0) <= NORM_TOLERANCE:
        return 0.0
    delta = bloch_vector(q.psi1) - bloch_vector(q.psi2)
    theta = np.linspace(0.0, np.pi, grid_steps + 1)[:, np.newaxis]
    phi = np.linspace(0.0, 2 * np.pi, 2 * grid_steps, endpoint=False)[np.newaxis, :]
    gaps = 0.5 * np.abs(np.sin(theta) * np.cos(phi) * delta[0]
                        + np.sin(theta) * np.sin(phi) * delta[1]
                        + np.cos(theta) * delta[2])
    return float(gaps.max())


def random_qubit_pair(rng: np.random.Generator) -> QubitPair:
    def state():
        psi = rng.normal(size=2) + 1j * rng.normal(size=2)
        return psi / np.linalg.norm(psi)
    return QubitPair(state(), state())


def parse_qubit(text: str) -> np.ndarray:
    """``"a+bi,c+di"`` → normalized-or-not 2-vector (validation is QubitPair's job)."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ValidationError(f"a qubit needs two amplitudes, got {text!r}",
                              invariant="qubit-shape", witness=text)
    try:
        return np.array([complex(p.replace(" ", "").replace("i", "j")) for p in parts])
    except ValueError as e:
        raise ValidationError(f"cannot parse amplitudes {text!r}",
                              invariant="qubit-syntax", witness=text) from e
