"""Physical parameter set and conventions for the boundary-driven chain.

The chain is an isotropic spin-1/2 Heisenberg ring segment of N sites with
exchange constant set to 1, boundary Zeeman fields of strength h, and
polarizing Lindblad baths of rate gamma acting on the first and last site.
The left bath is quantized along +z; the right bath (and the last-site
field) is rotated by a twisting angle theta in the x-z plane.  The bath
polarization f interpolates between infinite temperature (f=0) and a
perfect magnon source/drain pair (f=1).

Sign and axis conventions fixed here and used by every downstream module:

* quantization axis of the last site: ``n = (-sin(theta), 0, cos(theta))``,
  so the last-site field points along ``-n`` and the two boundary fields
  are antiparallel at theta = 0;
* positive current means magnons flowing from the source (site 1) to the
  drain (site N), measured by <sx_i sy_{i+1} - sy_i sx_{i+1}>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError

__all__ = [
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "PAULI_PLUS",
    "PAULI_MINUS",
    "IDENTITY_2",
    "ModelParams",
    "RepresentationParameter",
    "AxisConvention",
    "representation_parameter",
    "rotated_ladder_operators",
]


def _frozen(a):
    a = np.asarray(a)
    a.flags.writeable = False
    return a


# Pauli matrices in the {|up>, |down>} basis.
PAULI_X = _frozen(np.array([[0, 1], [1, 0]], dtype=complex))
PAULI_Y = _frozen(np.array([[0, -1j], [1j, 0]], dtype=complex))
PAULI_Z = _frozen(np.array([[1, 0], [0, -1]], dtype=complex))
PAULI_PLUS = _frozen(np.array([[0, 1], [0, 0]], dtype=complex))
PAULI_MINUS = _frozen(np.array([[0, 0], [1, 0]], dtype=complex))
IDENTITY_2 = _frozen(np.eye(2, dtype=complex))


@dataclass(frozen=True)
class ModelParams:
    """Full physical configuration of one steady-state problem.

    Attributes
    ----------
    N : int
        Chain length in sites (N >= 1; bond currents need N >= 2).
    h : float
        Boundary field strength, in units of the exchange coupling.
    gamma : float
        Bath coupling rate (> 0), in units of the exchange coupling.
    theta : float
        Twisting angle of the right bath axis, radians in [0, pi).
        theta = pi (undriven limit) is excluded: the boundary coherent
        state amplitude -tan(theta/2) diverges there.
    f : float
        Bath polarization in [0, 1].  The transfer-matrix solver requires
        f = 1; the brute-force solver accepts any value.
    """

    N: int
    h: float
    gamma: float
    theta: float = 0.0
    f: float = 1.0

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise InvalidParameterError(f"N must be an integer >= 1, got {self.N}")
        object.__setattr__(self, "N", int(self.N))
        if not (self.gamma > 0):
            raise InvalidParameterError(f"gamma must be positive, got {self.gamma}")
        if not (0.0 <= self.theta < math.pi):
            raise InvalidParameterError(
                f"theta must lie in [0, pi); theta={self.theta} (theta=pi is the undriven limit)"
            )
        if not (0.0 <= self.f <= 1.0):
            raise InvalidParameterError(f"f must lie in [0, 1], got {self.f}")
        for name in ("h", "gamma", "theta", "f"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameterError(f"{name} must be finite")


@dataclass(frozen=True)
class RepresentationParameter:
    """Complex lowest-weight label of the auxiliary-space representation.

    ``value = i / (2*(gamma - i*h))``; its imaginary part is strictly
    positive for any admissible gamma.  ``doubled = 2*value`` and
    ``abs_sq = |value|^2`` are precomputed because the transfer-matrix
    entries only involve those combinations.
    """

    value: complex
    abs_sq: float
    doubled: complex


def representation_parameter(gamma: float, h: float) -> RepresentationParameter:
    """Return the representation parameter for bath rate gamma and field h.

    Equivalent closed form: ``(-h + i*gamma) / (2*(gamma**2 + h**2))``,
    so Re = -h/(2(gamma^2+h^2)) and Im = gamma/(2(gamma^2+h^2)) > 0.
    """
    if not (gamma > 0):
        raise InvalidParameterError(f"gamma must be positive, got {gamma}")
    value = 1j / (2.0 * (gamma - 1j * h))
    return RepresentationParameter(value=value, abs_sq=abs(value) ** 2, doubled=2.0 * value)


@dataclass(frozen=True)
class AxisConvention:
    """Quantization axis and ladder operators of the last site.

    Attributes
    ----------
    axis : unit 3-vector n = (-sin(theta), 0, cos(theta)).
    sigma_axis : 2x2 Hermitian matrix n . sigma.
    lowering : 2x2 lowering operator along n,
        (cos(theta) sx - i sy + sin(theta) sz) / 2.
    """

    axis: np.ndarray
    sigma_axis: np.ndarray
    lowering: np.ndarray

    @property
    def raising(self) -> np.ndarray:
        return self.lowering.conj().T


def rotated_ladder_operators(theta: float) -> AxisConvention:
    """Build the last-site axis convention for twisting angle theta.

    At theta = 0 this reproduces the standard sigma^- / sigma^+ pair and
    sigma_axis = sigma^z.  The lowering operator is nilpotent and satisfies
    [n.sigma, lowering] = -2 lowering for every admissible theta.
    """
    if not (0.0 <= theta < math.pi):
        raise InvalidParameterError(
            f"theta must lie in [0, pi); theta={theta} (theta=pi is the undriven limit)"
        )
    axis = np.array([-math.sin(theta), 0.0, math.cos(theta)])
    sigma_axis = axis[0] * PAULI_X + axis[1] * PAULI_Y + axis[2] * PAULI_Z
    lowering = (math.cos(theta) * PAULI_X - 1j * PAULI_Y + math.sin(theta) * PAULI_Z) / 2.0
    return AxisConvention(
        axis=_frozen(axis), sigma_axis=_frozen(sigma_axis), lowering=_frozen(lowering)
    )
