"""Brute-force steady-state solver for the boundary-driven chain.

Builds the full Hamiltonian, the two boundary dissipators and the
Liouvillian superoperator, extracts the (unique) steady density matrix,
and measures bond currents and magnetization.  Exponential in the chain
length; it exists as the independent cross-check for the transfer-matrix
solver at f = 1 and as the only solver for f < 1.

Vectorization convention, fixed project-wide: density matrices are
flattened row-major (C order), so vec(A rho B) = (A kron B^T) vec(rho).
The Liouvillian is

    L(rho) = -i [H, rho] + D_L(rho) + D_R(rho),
    D(rho) = sum_r 2 K_r rho K_r^dag - {K_r^dag K_r, rho},

with left jumps K_pm = sqrt(gamma (1 pm f)) sigma_1^pm and right jumps
K_pm = sqrt(gamma (1 mp f)) sigma_N^pm taken along the rotated axis.  Note
the dissipator carries the explicit factor 2 on the sandwich term; every
closed form in :mod:`spinchain_ness.transfer` assumes this normalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import (
    DegenerateSteadyStateError,
    InternalStateError,
    InvalidParameterError,
    ResourceLimitError,
    SteadyStateConvergenceError,
)
from .model import (
    IDENTITY_2,
    ModelParams,
    PAULI_MINUS,
    PAULI_PLUS,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    rotated_ladder_operators,
)

__all__ = [
    "ManyBodyOperator",
    "Liouvillian",
    "SteadyStateSolution",
    "build_hamiltonian",
    "build_liouvillian",
    "steady_state",
    "bond_currents",
    "magnetization_profile",
]

DENSE_HAMILTONIAN_MAX_SITES = 10
LIOUVILLIAN_MAX_SITES = 8
DENSE_NULLSPACE_MAX_SITES = 6


@dataclass(frozen=True)
class ManyBodyOperator:
    """Dense operator on the full 2^N-dimensional chain Hilbert space."""

    matrix: np.ndarray
    n_sites: int


@dataclass(frozen=True)
class Liouvillian:
    """Sparse superoperator of dimension 4^N acting on row-major vectorized rho."""

    superop: sp.csr_matrix
    n_sites: int
    params: ModelParams


@dataclass(frozen=True)
class SteadyStateSolution:
    """Steady density matrix with its quality certificates.

    ``residual`` is the 2-norm of L applied to the trace-normalized
    solution; ``min_eigenvalue`` is the smallest eigenvalue of the
    Hermitized density matrix (negative values diagnose solver failure
    and are reported, never clipped).
    """

    rho: np.ndarray
    residual: float
    min_eigenvalue: float
    params: ModelParams


def _site_operator(op, site, n_sites):
    out = np.array([[1.0 + 0j]])
    for j in range(n_sites):
        out = np.kron(out, op if j == site else IDENTITY_2)
    return out


def build_hamiltonian(params: ModelParams, max_sites: int = DENSE_HAMILTONIAN_MAX_SITES) -> ManyBodyOperator:
    """Isotropic exchange with half-strength bonds plus antiparallel boundary fields.

    H = 1/2 sum_i (sx_i sx_{i+1} + sy_i sy_{i+1} + sz_i sz_{i+1})
        + h (sz_1 - n.sigma_N)

    with the last-site axis from the shared convention.  The exchange sum
    is empty at N = 1.
    """
    N = params.N
    if N > max_sites:
        raise ResourceLimitError(f"dense Hamiltonian limited to {max_sites} sites, got N={N}")
    dim = 2**N
    H = np.zeros((dim, dim), dtype=complex)
    for i in range(N - 1):
        for pauli in (PAULI_X, PAULI_Y, PAULI_Z):
            H += 0.5 * _site_operator(pauli, i, N) @ _site_operator(pauli, i + 1, N)
    axis = rotated_ladder_operators(params.theta)
    H += params.h * (_site_operator(PAULI_Z, 0, N) - _site_operator(axis.sigma_axis, N - 1, N))
    defect = np.abs(H - H.conj().T).max()
    if defect > 1e-12 * max(1.0, np.abs(H).max()):
        raise InternalStateError(f"Hamiltonian failed Hermiticity check ({defect:.2e})")
    H.flags.writeable = False
    return ManyBodyOperator(matrix=H, n_sites=N)


def _jump_operators(params: ModelParams):
    """Boundary jump operators with their rates; zero-rate jumps are dropped."""
    N, gamma, f = params.N, params.gamma, params.f
    axis = rotated_ladder_operators(params.theta)
    specs = [
        (gamma * (1.0 + f), PAULI_PLUS, 0),
        (gamma * (1.0 - f), PAULI_MINUS, 0),
        (gamma * (1.0 - f), axis.raising, N - 1),
        (gamma * (1.0 + f), axis.lowering, N - 1),
    ]
    return [
        math.sqrt(rate) * _site_operator(op, site, N)
        for rate, op, site in specs
        if rate > 0.0
    ]


def build_liouvillian(params: ModelParams, max_sites: int = LIOUVILLIAN_MAX_SITES) -> Liouvillian:
    """Assemble the sparse Liouvillian and run its construction-time checks.

    Always verifies trace preservation (the vectorized identity is a left
    null vector); at f = 0 additionally verifies that the maximally mixed
    state is a fixed point.  Both checks guard the vectorization
    convention, where a single mis-transposition is the classic bug.
    """
    N = params.N
    if N > max_sites:
        raise ResourceLimitError(f"Liouvillian limited to {max_sites} sites, got N={N}")
    dim = 2**N
    H = sp.csr_matrix(build_hamiltonian(params, max_sites=max(max_sites, N)).matrix)
    eye = sp.identity(dim, format="csr", dtype=complex)

    L = -1j * (sp.kron(H, eye, format="csr") - sp.kron(eye, H.T, format="csr"))
    for K in _jump_operators(params):
        Ks = sp.csr_matrix(K)
        KdK = sp.csr_matrix(K.conj().T @ K)
        L = (
            L
            + 2.0 * sp.kron(Ks, Ks.conjugate(), format="csr")
            - sp.kron(KdK, eye, format="csr")
            - sp.kron(eye, KdK.T, format="csr")
        )
    L = L.tocsr()

    scale = max(1.0, np.abs(L.data).max() if L.nnz else 0.0)
    trace_vec = np.zeros(dim * dim, dtype=complex)
    trace_vec[np.arange(dim) * (dim + 1)] = 1.0
    left_defect = np.abs(L.T @ trace_vec).max()
    if left_defect > 1e-10 * scale:
        raise InternalStateError(
            f"Liouvillian is not trace-preserving (defect {left_defect:.2e}); "
            "vectorization convention violated"
        )
    if params.f == 0.0:
        mixed = trace_vec / dim
        fixed_defect = np.abs(L @ mixed).max()
        if fixed_defect > 1e-12 * scale:
            raise InternalStateError(
                f"maximally mixed state is not a fixed point at f=0 (defect {fixed_defect:.2e})"
            )
    return Liouvillian(superop=L, n_sites=N, params=params)


def _solve_direct(L: sp.csr_matrix, dim: int):
    """Sparse LU solve of L x = 0 with the trace row folded into row 0.

    Adding weight * trace-row to row 0 and solving against weight * e_0
    yields the exact trace-one null vector when the null space is
    one-dimensional: e_0 has nonzero overlap with the left null vector
    (the trace functional), so the correction term must vanish.
    """
    n2 = dim * dim
    diag = np.abs(L.diagonal())
    weight = float(diag.mean()) if diag.any() else 1.0
    trace_cols = np.arange(dim) * (dim + 1)
    bump = sp.csr_matrix(
        (np.full(dim, weight, dtype=complex), (np.zeros(dim, dtype=int), trace_cols)),
        shape=(n2, n2),
    )
    A = (L + bump).tocsc()
    b = np.zeros(n2, dtype=complex)
    b[0] = weight
    lu = spla.splu(A)
    x = lu.solve(b)
    x = x + lu.solve(b - A @ x)  # one step of iterative refinement
    return x


def _solve_svd(L: sp.csr_matrix, dim: int, degeneracy_rtol: float = 1e-8):
    """Dense SVD null-space extraction; reports near-zero spectrum on degeneracy."""
    if dim > 2**DENSE_NULLSPACE_MAX_SITES:
        raise ResourceLimitError(
            f"dense null-space extraction limited to {DENSE_NULLSPACE_MAX_SITES} sites"
        )
    dense = L.toarray()
    _, s, vh = np.linalg.svd(dense)
    cutoff = degeneracy_rtol * s[0]
    null_dim = int(np.sum(s < cutoff))
    if null_dim != 1:
        raise DegenerateSteadyStateError(
            f"null space dimension {null_dim} (expected 1); "
            f"smallest singular values {s[-max(null_dim, 2):].tolist()}",
            near_zero_spectrum=s[-max(null_dim, 2):].copy(),
        )
    return vh[-1].conj()


def steady_state(liouv: Liouvillian, tol: float = 1e-10, method: str = "auto") -> SteadyStateSolution:
    """Extract the steady density matrix from a Liouvillian.

    Parameters
    ----------
    tol : float
        Acceptance threshold on the residual ||L vec(rho)||_2 of the
        trace-normalized solution.
    method : {"auto", "direct", "svd"}
        "direct" uses a sparse LU solve with the trace constraint folded
        in (fast, assumes a unique steady state); "svd" extracts the null
        space from a dense SVD and detects degeneracy explicitly; "auto"
        tries "direct" and falls back to "svd" when the residual misses
        the tolerance.
    """
    if not (tol > 0):
        raise InvalidParameterError(f"tol must be positive, got {tol}")
    if method not in ("auto", "direct", "svd"):
        raise InvalidParameterError(f"unknown method {method!r}")
    L = liouv.superop
    dim = 2**liouv.n_sites

    def finish(x):
        rho = x.reshape(dim, dim)
        trace = np.trace(rho)
        if abs(trace) < 1e-300:
            raise SteadyStateConvergenceError("null vector has vanishing trace")
        rho = rho / trace
        defect = np.abs(rho - rho.conj().T).max()
        rho = (rho + rho.conj().T) / 2.0
        residual = float(np.linalg.norm(L @ rho.reshape(-1)))
        return rho, defect, residual

    attempts = ["direct", "svd"] if method == "auto" else [method]
    last_residual = math.inf
    for attempt in attempts:
        x = _solve_direct(L, dim) if attempt == "direct" else _solve_svd(L, dim)
        rho, defect, residual = finish(x)
        last_residual = residual
        if residual <= tol and defect <= max(1e-10, tol):
            min_eig = float(np.linalg.eigvalsh(rho).min())
            rho.flags.writeable = False
            return SteadyStateSolution(
                rho=rho, residual=residual, min_eigenvalue=min_eig, params=liouv.params
            )
    raise SteadyStateConvergenceError(
        f"steady-state residual {last_residual:.2e} exceeds tol {tol:.2e}",
        residual=last_residual,
    )


def bond_currents(sol: SteadyStateSolution) -> np.ndarray:
    """Expectation of sx_i sy_{i+1} - sy_i sx_{i+1} on every bond i = 1..N-1.

    In the steady state all bonds carry the same current.  Imaginary
    parts are checked to be below 1e-10 and discarded.
    """
    N = sol.params.N
    if N < 2:
        raise InvalidParameterError("bond currents need at least two sites")
    out = np.empty(N - 1)
    for i in range(N - 1):
        op = _site_operator(PAULI_X, i, N) @ _site_operator(PAULI_Y, i + 1, N)
        op -= _site_operator(PAULI_Y, i, N) @ _site_operator(PAULI_X, i + 1, N)
        val = np.trace(op @ sol.rho)
        if abs(val.imag) > 1e-10:
            raise InternalStateError(f"bond current has imaginary part {val.imag:.2e}")
        out[i] = val.real
    out.flags.writeable = False
    return out


def magnetization_profile(sol: SteadyStateSolution) -> np.ndarray:
    """Expectation of sigma^z on every site, each in [-1, 1]."""
    N = sol.params.N
    out = np.empty(N)
    for i in range(N):
        out[i] = np.trace(_site_operator(PAULI_Z, i, N) @ sol.rho).real
    out.flags.writeable = False
    return out
