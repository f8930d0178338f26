"""Block Jacobi truncations and their m-functions.

The m-function is the top-left d x d block of (J - lam I)^{-1}, computed two
independent ways: a block-tridiagonal (Thomas) solve and the backward
continued-fraction (J-fraction) recursion.  The two must agree; tests exploit
this as a dual-route check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import CutError, PoleError
from .herglotz import _matrix_from_json, _matrix_to_json

#: residual threshold (relative to the rhs) above which a solve counts as a pole
POLE_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class BlockJacobi:
    """Finite N-block truncation of a (block) Jacobi matrix.

    ``a`` are the Hermitian diagonal blocks, ``b`` the superdiagonal blocks;
    the subdiagonal carries ``b_k*`` so the assembled matrix is Hermitian.
    """

    a: tuple
    b: tuple
    d: int

    def __post_init__(self):
        if len(self.a) < 1 or len(self.b) != len(self.a) - 1:
            raise ValueError("need N >= 1 diagonal blocks and N-1 off-diagonal blocks")
        for ak in self.a:
            if np.max(np.abs(ak - ak.conj().T)) > 1e-12 * (1.0 + np.max(np.abs(ak))):
                raise ValueError("diagonal blocks must be Hermitian")
        for bk in self.b:
            if abs(np.linalg.det(bk)) == 0.0:
                raise ValueError("off-diagonal blocks must be invertible")

    @classmethod
    def of(cls, a, b) -> "BlockJacobi":
        a = tuple(np.atleast_2d(np.asarray(x, dtype=complex)) for x in a)
        b = tuple(np.atleast_2d(np.asarray(x, dtype=complex)) for x in b)
        return cls(a=a, b=b, d=a[0].shape[0])

    @property
    def N(self) -> int:
        return len(self.a)

    def dense(self) -> np.ndarray:
        d, N = self.d, self.N
        J = np.zeros((N * d, N * d), dtype=complex)
        for k, ak in enumerate(self.a):
            J[k * d : (k + 1) * d, k * d : (k + 1) * d] = ak
        for k, bk in enumerate(self.b):
            J[k * d : (k + 1) * d, (k + 1) * d : (k + 2) * d] = bk
            J[(k + 1) * d : (k + 2) * d, k * d : (k + 1) * d] = bk.conj().T
        return J

    def truncate(self, N: int) -> "BlockJacobi":
        if not 1 <= N <= self.N:
            raise ValueError("truncation length out of range")
        return BlockJacobi(a=self.a[:N], b=self.b[: N - 1], d=self.d)

    def to_json(self) -> str:
        return json.dumps(
            {
                "d": self.d,
                "a": [_matrix_to_json(x) for x in self.a],
                "b": [_matrix_to_json(x) for x in self.b],
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "BlockJacobi":
        doc = json.loads(text)
        a = [_matrix_from_json(x) for x in doc["a"]]
        b = [_matrix_from_json(x) for x in doc["b"]]
        J = cls.of(a, b)
        if J.d != doc["d"]:
            raise ValueError("declared block dimension does not match the blocks")
        return J


def build_J0(d: int, N: int) -> BlockJacobi:
    """Truncation of the Chebyshev (first kind) matrix: a_k = 0, b_0 = I/sqrt(2), b_k = I/2."""
    if d < 1 or N < 2:
        raise ValueError("need d >= 1 and N >= 2")
    eye = np.eye(d, dtype=complex)
    a = [np.zeros((d, d), dtype=complex) for _ in range(N)]
    b = [eye / np.sqrt(2.0)] + [eye / 2.0 for _ in range(N - 2)]
    return BlockJacobi.of(a, b)


def build_Jhat0(d: int, N: int) -> BlockJacobi:
    """Truncation of the free discrete Schroedinger matrix: a_k = 0, b_k = I."""
    if d < 1 or N < 2:
        raise ValueError("need d >= 1 and N >= 2")
    eye = np.eye(d, dtype=complex)
    a = [np.zeros((d, d), dtype=complex) for _ in range(N)]
    b = [eye.copy() for _ in range(N - 1)]
    return BlockJacobi.of(a, b)


def m_resolvent(J: BlockJacobi, lam: complex) -> np.ndarray:
    """Top-left block of (J - lam I)^{-1} via a block Thomas solve, O(N)."""
    lam = complex(lam)
    d, N = J.d, J.N
    eye = np.eye(d, dtype=complex)
    # forward elimination on (J - lam) X = E0
    diag = [None] * N
    rhs = [None] * N
    diag[0] = J.a[0] - lam * eye
    rhs[0] = eye
    try:
        for k in range(1, N):
            factor = np.linalg.solve(diag[k - 1].T, J.b[k - 1].conj()).T  # b_{k-1}^* d_{k-1}^{-1}
            diag[k] = (J.a[k] - lam * eye) - factor @ J.b[k - 1]
            rhs[k] = -factor @ rhs[k - 1]
        x = [None] * N
        x[N - 1] = np.linalg.solve(diag[N - 1], rhs[N - 1])
        for k in range(N - 2, -1, -1):
            x[k] = np.linalg.solve(diag[k], rhs[k] - J.b[k] @ x[k + 1])
    except np.linalg.LinAlgError as exc:
        raise PoleError(f"singular shift at lambda={lam}") from exc
    _check_residual(J, lam, x)
    return x[0]


def _check_residual(J: BlockJacobi, lam: complex, x: list) -> None:
    d, N = J.d, J.N
    eye = np.eye(d, dtype=complex)
    res = 0.0
    for k in range(N):
        r = (J.a[k] - lam * eye) @ x[k]
        if k > 0:
            r = r + J.b[k - 1].conj().T @ x[k - 1]
        if k + 1 < N:
            r = r + J.b[k] @ x[k + 1]
        if k == 0:
            r = r - eye
        res = max(res, float(np.linalg.norm(r)))
    if res > POLE_RESIDUAL_TOL * np.sqrt(d):
        raise PoleError(f"solve residual {res:.3e}: lambda={lam} is near the truncation spectrum")


def m_cf(J: BlockJacobi, lam: complex) -> np.ndarray:
    """Finite J-fraction by backward Schur-complement recursion.

    m_N = (a_{N-1} - lam)^{-1};  m_k = (a_k - lam - b_k m_{k+1} b_k^*)^{-1}.
    Equals m_resolvent exactly in exact arithmetic.
    """
    lam = complex(lam)
    d, N = J.d, J.N
    eye = np.eye(d, dtype=complex)
    m = _safe_inv(J.a[N - 1] - lam * eye, lam)
    for k in range(N - 2, -1, -1):
        m = _safe_inv(J.a[k] - lam * eye - J.b[k] @ m @ J.b[k].conj().T, lam)
    return m


def _safe_inv(M: np.ndarray, lam: complex) -> np.ndarray:
    try:
        inv = np.linalg.inv(M)
    except np.linalg.LinAlgError as exc:
        raise PoleError(f"singular shift in the J-fraction at lambda={lam}") from exc
    if not np.all(np.isfinite(inv)):
        raise PoleError(f"singular shift in the J-fraction at lambda={lam}")
    return inv


def quadrature_m0(lam: complex, nodes: int, kind: int) -> complex:
    """Gauss-Chebyshev oracle for the two closed-form fixed points.

    kind 1: (1/pi) int_{-1}^{1} (t-lam)^{-1} (1-t^2)^{-1/2} dt
    kind 2: (1/2pi) int_{-2}^{2} (t-lam)^{-1} sqrt(4-t^2) dt
    """
    lam = complex(lam)
    if nodes < 1:
        raise ValueError("need at least one node")
    if kind == 1:
        if lam.imag == 0.0 and -1.0 <= lam.real <= 1.0:
            raise CutError("lambda on the cut [-1, 1]")
        i = np.arange(1, nodes + 1)
        t = np.cos((2 * i - 1) * np.pi / (2 * nodes))
        return complex(np.sum(1.0 / (t - lam)) / nodes)
    if kind == 2:
        if lam.imag == 0.0 and -2.0 <= lam.real <= 2.0:
            raise CutError("lambda on the cut [-2, 2]")
        i = np.arange(1, nodes + 1)
        theta = i * np.pi / (nodes + 1)
        t = 2.0 * np.cos(theta)
        w = np.sin(theta) ** 2
        return complex(2.0 / (nodes + 1) * np.sum(w / (t - lam)))
    raise ValueError("kind must be 1 or 2")
