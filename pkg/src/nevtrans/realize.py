"""Realization constructions: defect operators, the block-contraction dilation
realizing gamma of a compressed resolvent, chain operators realizing the
gamma_hat iterates, Schur-Frobenius compressed resolvents, and simplicity
(Krylov minimality) checks.

The distinguished subspace is always embedded as the leading d coordinates,
so block patterns are directly assertable on the assembled matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotContractionError, PoleError

#: singular values below RANK_TOL * s_max count as zero
RANK_TOL = 1e-10

#: dense dimension cap for chain assembly
CHAIN_DIM_CAP = 2000


@dataclass(frozen=True)
class SubspaceRealization:
    """Hermitian operator T on an n-dim space with a distinguished d-dim subspace."""

    T: np.ndarray
    M_basis: np.ndarray  # n x d, orthonormal columns

    def __post_init__(self):
        T, B = self.T, self.M_basis
        if np.max(np.abs(T - T.conj().T)) > 1e-10 * (1.0 + np.max(np.abs(T))):
            raise ValueError("T must be Hermitian")
        gram = B.conj().T @ B
        if np.max(np.abs(gram - np.eye(B.shape[1]))) > 1e-10:
            raise ValueError("M_basis columns must be orthonormal")

    @classmethod
    def of(cls, T, M_basis) -> "SubspaceRealization":
        T = np.atleast_2d(np.asarray(T, dtype=complex))
        M_basis = np.asarray(M_basis, dtype=complex)
        if M_basis.ndim == 1:
            M_basis = M_basis[:, None]
        return cls(T=T, M_basis=M_basis)

    @property
    def H_dim(self) -> int:
        return self.T.shape[0]

    @property
    def d(self) -> int:
        return self.M_basis.shape[1]

    def m_function(self, lam: complex) -> np.ndarray:
        return compressed_resolvent(self.T, self.M_basis, lam)


@dataclass(frozen=True)
class ChainOperator:
    """Realization of the (n+1)-th gamma_hat iterate: n copies of the corner
    subspace chained onto the seed realization (K, That)."""

    n: int
    K: np.ndarray
    That: np.ndarray
    assembled: np.ndarray

    @property
    def d(self) -> int:
        return self.K.shape[1]

    def m_basis(self) -> np.ndarray:
        B = np.zeros((self.assembled.shape[0], self.d), dtype=complex)
        B[: self.d, :] = np.eye(self.d)
        return B


def defect_operator(T: np.ndarray, rank_tol: float = RANK_TOL):
    """(I - T^2)^{1/2} of a Hermitian contraction and a basis of its range.

    Eigenvalues of 1 - t^2 are clamped at zero; range vectors are eigenvectors
    with defect above the relative rank tolerance.
    """
    T = np.atleast_2d(np.asarray(T, dtype=complex))
    norm = np.linalg.norm(T, 2)
    if norm > 1.0 + 1e-12:
        raise NotContractionError(f"||T|| = {norm} exceeds 1")
    w, V = np.linalg.eigh(T)
    defect = np.maximum(1.0 - w * w, 0.0)
    s = np.sqrt(defect)
    D = (V * s) @ V.conj().T
    smax = s.max() if len(s) else 0.0
    keep = s > rank_tol * max(smax, 1.0)
    return D, V[:, keep]


def bold_T(R: SubspaceRealization) -> SubspaceRealization:
    """Block contraction on M + ran(I-T^2)^{1/2} realizing gamma of R's m-function.

    Blocks: [[-P_M T|_M, P_M D_T], [D_T|_M, T]] re-expressed with the
    distinguished subspace leading.
    """
    T, B = R.T, R.M_basis
    D, Q = defect_operator(T)
    top_left = -B.conj().T @ T @ B
    top_right = B.conj().T @ D @ Q
    bottom_right = Q.conj().T @ T @ Q
    big = np.block([[top_left, top_right], [top_right.conj().T, bottom_right]])
    big = (big + big.conj().T) / 2.0
    d = R.d
    basis = np.zeros((big.shape[0], d), dtype=complex)
    basis[:d, :] = np.eye(d)
    return SubspaceRealization(T=big, M_basis=basis)


def compressed_resolvent(A: np.ndarray, M_basis: np.ndarray, lam: complex) -> np.ndarray:
    """M_basis* (A - lam I)^{-1} M_basis with a residual-based pole guard."""
    lam = complex(lam)
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    M_basis = np.asarray(M_basis, dtype=complex)
    if M_basis.ndim == 1:
        M_basis = M_basis[:, None]
    shifted = A - lam * np.eye(A.shape[0])
    try:
        x = np.linalg.solve(shifted, M_basis)
    except np.linalg.LinAlgError as exc:
        raise PoleError(f"lambda={lam} is an eigenvalue of A") from exc
    if np.linalg.norm(shifted @ x - M_basis) > 1e-8 * np.linalg.norm(M_basis):
        raise PoleError(f"lambda={lam} is numerically an eigenvalue of A")
    return M_basis.conj().T @ x


def compressed_resolvent_schur(D: np.ndarray, K: np.ndarray, T: np.ndarray, lam: complex) -> np.ndarray:
    """Compressed resolvent of [[D, K*], [K, T]] via the Schur-complement form
    -(-D + K*(T - lam)^{-1}K + lam)^{-1}."""
    lam = complex(lam)
    D = np.atleast_2d(np.asarray(D, dtype=complex))
    K = np.asarray(K, dtype=complex)
    if K.ndim == 1:
        K = K[:, None]
    T = np.atleast_2d(np.asarray(T, dtype=complex))
    d = D.shape[0]
    inner = K.conj().T @ np.linalg.solve(T - lam * np.eye(T.shape[0]), K)
    return -np.linalg.inv(-D + inner + lam * np.eye(d))


def chain_A(K: np.ndarray, That: np.ndarray, n: int) -> ChainOperator:
    """Assemble the depth-n chain operator.

    A_1 = [[0, K*], [K, That]]; each further level prepends a corner copy of
    the subspace coupled by identity blocks, reproducing the free discrete
    Schroedinger pattern in the top-left n x n block corner.
    """
    if n < 1:
        raise ValueError("need chain index n >= 1")
    K = np.asarray(K, dtype=complex)
    if K.ndim == 1:
        K = K[:, None]
    That = np.atleast_2d(np.asarray(That, dtype=complex))
    h, d = K.shape
    if That.shape[0] != h:
        raise ValueError("K and That dimensions are inconsistent")
    if np.linalg.norm(K, 2) > 1.0 + 1e-12:
        raise NotContractionError("||K|| exceeds 1")
    size = n * d + h
    if size > CHAIN_DIM_CAP:
        raise ValueError(f"chain dimension {size} exceeds cap {CHAIN_DIM_CAP}")
    A = np.zeros((size, size), dtype=complex)
    eye = np.eye(d, dtype=complex)
    for i in range(n - 1):
        A[i * d : (i + 1) * d, (i + 1) * d : (i + 2) * d] = eye
        A[(i + 1) * d : (i + 2) * d, i * d : (i + 1) * d] = eye
    A[(n - 1) * d : n * d, n * d :] = K.conj().T
    A[n * d :, (n - 1) * d : n * d] = K
    A[n * d :, n * d :] = That
    return ChainOperator(n=n, K=K, That=That, assembled=A)


def simplicity_check(R: SubspaceRealization, rank_tol: float = RANK_TOL):
    """Krylov test: is span{T^k M, k >= 0} the whole space?

    Returns (is_simple, krylov_rank) with rank computed from singular values
    of the block Krylov matrix.
    """
    T, B = R.T, R.M_basis
    n = T.shape[0]
    blocks = [B]
    for _ in range(n - 1):
        blocks.append(T @ blocks[-1])
    krylov = np.hstack(blocks)
    s = np.linalg.svd(krylov, compute_uv=False)
    rank = int(np.sum(s > rank_tol * s.max()))
    return rank == n, rank
