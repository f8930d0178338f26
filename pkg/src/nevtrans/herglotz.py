"""Finite-data matrix-valued Nevanlinna functions.

A function is stored either as a discrete-measure triple (A, B, atoms) or as
a realization pair (T, K) with selfadjoint T, giving the compressed resolvent
K* (T - lam)^{-1} K.  Values are d x d complex matrices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import NotContractionError, PoleError, UnboundedLimitError

#: tolerance on ||K|| <= 1 for realization variants
CONTRACTION_TOL = 1e-12

#: relative floor below which a Gram matrix still counts as PSD
PSD_TOL = 1e-10

_POLE_TOL = 1e-12


def _hermitian(M: np.ndarray, tol: float = 1e-10) -> bool:
    return bool(np.max(np.abs(M - M.conj().T)) <= tol * (1.0 + np.max(np.abs(M))))


def _psd(M: np.ndarray, tol: float = 1e-10) -> bool:
    w = np.linalg.eigvalsh((M + M.conj().T) / 2.0)
    return bool(w.min() >= -tol * (1.0 + abs(w).max()))


def _matrix_to_json(M: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.atleast_2d(M)]


def _matrix_from_json(rows: list) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


@dataclass(frozen=True)
class RealizedFunction:
    """A matrix-valued Nevanlinna function given by finite data.

    Exactly one of the two variants is populated:

    * ``measure``: value A + B*lam + sum_j W_j ((t_j-lam)^{-1} - t_j/(t_j^2+1))
    * ``realization``: value K* (T - lam I)^{-1} K with T = T*, ||K|| <= 1
    """

    variant: str
    dim: int
    A: np.ndarray | None = None
    B: np.ndarray | None = None
    atoms: tuple = ()
    T: np.ndarray | None = None
    K: np.ndarray | None = None

    def __post_init__(self):
        if self.variant == "measure":
            if not _hermitian(self.A):
                raise ValueError("A must be Hermitian")
            if not _psd(self.B):
                raise ValueError("B must be PSD")
            ts = [t for t, _ in self.atoms]
            if len(set(ts)) != len(ts):
                raise ValueError("atom positions must be distinct")
            for _, W in self.atoms:
                if not _psd(W):
                    raise ValueError("atom weights must be PSD")
        elif self.variant == "realization":
            if not _hermitian(self.T):
                raise ValueError("T must be Hermitian")
            if np.linalg.norm(self.K, 2) > 1.0 + CONTRACTION_TOL:
                raise NotContractionError("||K|| exceeds 1 beyond tolerance")
        else:
            raise ValueError(f"unknown variant {self.variant!r}")

    @classmethod
    def from_measure(cls, A, B, atoms, *, validate: bool = True) -> "RealizedFunction":
        A = np.atleast_2d(np.asarray(A, dtype=complex))
        B = np.atleast_2d(np.asarray(B, dtype=complex))
        atoms = tuple((float(t), np.atleast_2d(np.asarray(W, dtype=complex))) for t, W in atoms)
        obj = object.__new__(cls)
        object.__setattr__(obj, "variant", "measure")
        object.__setattr__(obj, "dim", A.shape[0])
        object.__setattr__(obj, "A", A)
        object.__setattr__(obj, "B", B)
        object.__setattr__(obj, "atoms", atoms)
        object.__setattr__(obj, "T", None)
        object.__setattr__(obj, "K", None)
        if validate:
            obj.__post_init__()
        return obj

    @classmethod
    def from_realization(cls, T, K, *, validate: bool = True) -> "RealizedFunction":
        T = np.atleast_2d(np.asarray(T, dtype=complex))
        K = np.asarray(K, dtype=complex)
        if K.ndim == 1:
            K = K[:, None]
        obj = object.__new__(cls)
        object.__setattr__(obj, "variant", "realization")
        object.__setattr__(obj, "dim", K.shape[1])
        object.__setattr__(obj, "A", None)
        object.__setattr__(obj, "B", None)
        object.__setattr__(obj, "atoms", ())
        object.__setattr__(obj, "T", T)
        object.__setattr__(obj, "K", K)
        if validate:
            obj.__post_init__()
        return obj

    @classmethod
    def zero(cls, dim: int = 1) -> "RealizedFunction":
        """The identically-zero function (empty measure)."""
        z = np.zeros((dim, dim), dtype=complex)
        return cls.from_measure(z, z, ())

    # -- evaluation ------------------------------------------------------

    def __call__(self, lam: complex) -> np.ndarray:
        return evaluate(self, lam)

    def derivative(self, lam: complex) -> np.ndarray:
        """M'(lam), exact for the finite representations."""
        lam = complex(lam)
        if self.variant == "measure":
            out = self.B.astype(complex).copy()
            for t, W in self.atoms:
                out = out + W / (t - lam) ** 2
            return out
        R = np.linalg.inv(self.T - lam * np.eye(self.T.shape[0]))
        return self.K.conj().T @ R @ R @ self.K

    def measure_form(self) -> "RealizedFunction":
        """Equivalent measure variant: diagonalize T, atoms (t_j, K* P_j K)."""
        if self.variant == "measure":
            return self
        w, V = np.linalg.eigh(self.T)
        KV = V.conj().T @ self.K  # rows are P_j-components of K in eigenbasis
        atoms: list[tuple[float, np.ndarray]] = []
        i = 0
        while i < len(w):
            j = i
            while j + 1 < len(w) and w[j + 1] - w[i] < 1e-12:
                j += 1
            block = KV[i : j + 1]
            atoms.append((float(np.mean(w[i : j + 1])), block.conj().T @ block))
            i = j + 1
        d = self.dim
        # measure form carries the atom-shifted affine part of the standard
        # integral representation so that values agree exactly
        A = sum(W * (t / (t * t + 1.0)) for t, W in atoms) if atoms else np.zeros((d, d), dtype=complex)
        return RealizedFunction.from_measure(np.atleast_2d(A), np.zeros((d, d)), atoms)

    # -- JSON ------------------------------------------------------------

    def to_json(self) -> str:
        if self.variant == "measure":
            doc = {
                "variant": "measure",
                "dim": self.dim,
                "A": _matrix_to_json(self.A),
                "B": _matrix_to_json(self.B),
                "atoms": [{"t": t, "W": _matrix_to_json(W)} for t, W in self.atoms],
            }
        else:
            doc = {
                "variant": "realization",
                "dim": self.dim,
                "T": _matrix_to_json(self.T),
                "K": _matrix_to_json(self.K),
            }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str, *, validate: bool = True) -> "RealizedFunction":
        doc = json.loads(text)
        if doc["variant"] == "measure":
            return cls.from_measure(
                _matrix_from_json(doc["A"]),
                _matrix_from_json(doc["B"]),
                [(a["t"], _matrix_from_json(a["W"])) for a in doc["atoms"]],
                validate=validate,
            )
        if doc["variant"] == "realization":
            return cls.from_realization(
                _matrix_from_json(doc["T"]), _matrix_from_json(doc["K"]), validate=validate
            )
        raise ValueError(f"unknown variant {doc['variant']!r}")


@dataclass(frozen=True)
class SampleSet:
    """Finite set of off-axis sample points with one test vector per point."""

    points: tuple
    vectors: tuple = field(default=())

    def __post_init__(self):
        if not self.points:
            raise ValueError("sample set must be nonempty")
        for p in self.points:
            if complex(p).imag == 0.0:
                raise ValueError("sample points must be off the real axis")

    @classmethod
    def of(cls, points, vectors) -> "SampleSet":
        return cls(tuple(complex(p) for p in points), tuple(np.asarray(v, dtype=complex) for v in vectors))


def evaluate(F: RealizedFunction, lam: complex) -> np.ndarray:
    """Value of F at lam; raises PoleError at atoms / eigenvalues of T."""
    lam = complex(lam)
    d = F.dim
    if F.variant == "measure":
        for t, _ in F.atoms:
            if abs(lam - t) < _POLE_TOL:
                raise PoleError(f"lambda={lam} coincides with atom t={t}")
        out = F.A + F.B * lam
        for t, W in F.atoms:
            out = out + W * (1.0 / (t - lam) - t / (t * t + 1.0))
        return np.asarray(out, dtype=complex)
    n = F.T.shape[0]
    shifted = F.T - lam * np.eye(n)
    try:
        rhs = np.linalg.solve(shifted, F.K)
    except np.linalg.LinAlgError as exc:
        raise PoleError(f"lambda={lam} is an eigenvalue of T") from exc
    if np.linalg.norm(shifted @ rhs - F.K) > 1e-8 * max(np.linalg.norm(F.K), 1e-300):
        raise PoleError(f"lambda={lam} is numerically an eigenvalue of T")
    return F.K.conj().T @ rhs


def asymptotic_C(F: RealizedFunction) -> np.ndarray:
    """C = -lim iy M(iy): K*K for realizations, total atom mass for measures."""
    if F.variant == "realization":
        return F.K.conj().T @ F.K
    if np.max(np.abs(F.B)) > 0:
        raise UnboundedLimitError("linear term B != 0: iy M(iy) is unbounded")
    C = np.zeros((F.dim, F.dim), dtype=complex)
    for _, W in F.atoms:
        C = C + W
    return C


def _nev_kernel(F: RealizedFunction, lam: complex, mu: complex) -> np.ndarray:
    denom = lam - np.conj(mu)
    if abs(denom) < 1e-12:
        return F.derivative(lam)
    return (evaluate(F, lam) - evaluate(F, mu).conj().T) / denom


def nevanlinna_gram(F: RealizedFunction, S: SampleSet) -> np.ndarray:
    """Gram matrix of the Nevanlinna kernel (M(lam)-M(mu)*)/(lam-conj(mu)).

    PSD (up to tolerance) for every genuine Nevanlinna function.  Coincident
    points lam = conj(mu) fall back to the derivative limit M'(lam).
    """
    pts, vecs = S.points, S.vectors
    if len(vecs) != len(pts):
        raise ValueError("one vector per sample point is required")
    n = len(pts)
    G = np.empty((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            G[k, l] = vecs[k].conj() @ _nev_kernel(F, pts[k], pts[l]) @ vecs[l]
    return (G + G.conj().T) / 2.0


def class_n0_interval_gram(F: RealizedFunction, S: SampleSet) -> np.ndarray:
    """Gram matrix of the kernel characterizing m-functions of selfadjoint
    contractions (functions holomorphic off [-1,1] with iy M(iy) -> -I).

    L(lam, xi) = [(1-lam^2) M(lam) - (1-conj(xi)^2) M(xi)* - (lam-conj(xi)) I]
                 / (lam - conj(xi)).
    """
    pts, vecs = S.points, S.vectors
    if len(vecs) != len(pts):
        raise ValueError("one vector per sample point is required")
    n = len(pts)
    eye = np.eye(F.dim)
    vals = [evaluate(F, p) for p in pts]
    G = np.empty((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            lam, xi = pts[k], np.conj(pts[l])
            denom = lam - xi
            if abs(denom) < 1e-12:
                raise ValueError("lam = conj(xi) collision: kernel has no defined diagonal limit")
            L = ((1 - lam * lam) * vals[k] - (1 - xi * xi) * vals[l].conj().T - denom * eye) / denom
            G[k, l] = vecs[k].conj() @ L @ vecs[l]
    return (G + G.conj().T) / 2.0


def min_eig(G: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(G).min())


def is_psd_gram(G: np.ndarray, tol: float = PSD_TOL) -> bool:
    """Scale-relative PSD check: min eigenvalue >= -tol * (1 + ||G||)."""
    return min_eig(G) >= -tol * (1.0 + np.linalg.norm(G, 2))


def random_nevanlinna(seed: int, d: int, n: int, *, contraction: bool = True) -> RealizedFunction:
    """Deterministic random realization variant with ||K|| <= 1.

    With ``contraction=True`` the operator T is scaled to spectrum in [-1,1].
    """
    if d < 1 or n < d:
        raise ValueError("need d >= 1 and n >= d")
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    T = (G + G.conj().T) / 2.0
    if contraction:
        T = T / np.linalg.norm(T, 2)
    K = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    K = K / max(1.0, np.linalg.norm(K, 2))
    return RealizedFunction.from_realization(T, K)


def random_contraction_resolvent(seed: int, d: int, n: int) -> RealizedFunction:
    """Deterministic compressed resolvent P_M (T - lam)^{-1}|_M of a random
    Hermitian contraction, i.e. a member of the class realized by selfadjoint
    contractions (K is a random isometric embedding)."""
    if d < 1 or n < d:
        raise ValueError("need d >= 1 and n >= d")
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    T = (G + G.conj().T) / 2.0
    T = T / np.linalg.norm(T, 2)
    Q, _ = np.linalg.qr(rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d)))
    return RealizedFunction.from_realization(T, Q[:, :d])
