"""Scalar Jacobi coefficients -> piecewise-constant rank-one Hamiltonians.

Implements the angle/length recursion converting (a_k, b_k) into a step
Hamiltonian whose canonical-system m-function equals the Jacobi m-function,
plus the explicit alternating Hamiltonian of the free discrete Schroedinger
matrix and the angle-shift constructions for the gamma_hat iterates.

Angles are stored unreduced (never taken mod pi) so the strict monotonicity
theta_{j+1} in (theta_j, theta_j + pi) stays testable; evaluation reduces
implicitly through cos/sin.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStepError, OutOfRangeError

_SIN_TOL = 1e-14


@dataclass(frozen=True)
class StepHamiltonian:
    """Breakpoints t_0 = 0 < t_1 < ... < t_m and one angle per interval.

    H(t) on [t_j, t_{j+1}) is the rank-one trace-one projector onto
    (cos theta_j, sin theta_j).  The first interval always carries pi/2.
    """

    breakpoints: tuple
    thetas: tuple

    def __post_init__(self):
        bp, th = self.breakpoints, self.thetas
        if len(bp) != len(th) + 1 or len(th) < 1:
            raise ValueError("need one more breakpoint than angles")
        if bp[0] != 0.0:
            raise ValueError("domain must start at t = 0")
        if any(b1 - b0 <= 0 for b0, b1 in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if abs(th[0] - math.pi / 2) > 1e-12:
            raise ValueError("first interval must carry theta = pi/2")

    @classmethod
    def of(cls, breakpoints, thetas) -> "StepHamiltonian":
        return cls(tuple(float(t) for t in breakpoints), tuple(float(x) for x in thetas))

    @property
    def m(self) -> int:
        return len(self.thetas)

    @property
    def t_end(self) -> float:
        return self.breakpoints[-1]

    def lengths(self) -> np.ndarray:
        bp = np.asarray(self.breakpoints)
        return bp[1:] - bp[:-1]

    def to_json(self) -> str:
        return json.dumps({"breakpoints": list(self.breakpoints), "thetas": list(self.thetas)}, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "StepHamiltonian":
        doc = json.loads(text)
        return cls.of(doc["breakpoints"], doc["thetas"])


def evaluate_H(H: StepHamiltonian, t: float) -> np.ndarray:
    """The 2x2 rank-one Hamiltonian value at time t."""
    t = float(t)
    if t < 0.0 or t >= H.t_end:
        raise OutOfRangeError(f"t={t} outside covered range [0, {H.t_end})")
    j = int(np.searchsorted(H.breakpoints, t, side="right")) - 1
    th = H.thetas[j]
    c, s = math.cos(th), math.sin(th)
    return np.array([[c * c, c * s], [c * s, s * s]])


def kac_algorithm(a, b, m: int) -> StepHamiltonian:
    """Angle/length recursion from scalar Jacobi coefficients.

    l_0 = 1, theta_0 = pi/2, theta_1 = arctan(a_0) + pi, then alternately
    l_j = 1 / (l_{j-1} b_{j-1}^2 sin^2(theta_j - theta_{j-1})) and
    cot(theta_{j+1} - theta_j) = -a_j l_j - cot(theta_j - theta_{j-1}) with
    theta_{j+1} in (theta_j, theta_j + pi).  Returns the first m intervals.
    """
    if m < 1:
        raise ValueError("need at least one interval")
    a = [float(x) for x in a]
    b = [float(x) for x in b]
    if any(x <= 0 for x in b):
        raise ValueError("off-diagonal coefficients must be positive")
    if m > 1 and (len(a) < m - 1 or len(b) < m - 1):
        raise ValueError("not enough coefficients for the requested interval count")

    thetas = [math.pi / 2.0]
    lengths = [1.0]
    theta_prev = 0.0  # theta_{-1}
    l_prev = 1.0  # l_{-1}, bookkeeping only
    for j in range(1, m):
        if j == 1:
            theta_next = math.atan(a[0]) + math.pi
        else:
            gap = thetas[-1] - theta_prev
            s = math.sin(gap)
            if abs(s) < _SIN_TOL:
                raise DegenerateStepError(f"degenerate angle step at j={j}")
            c = -a[j - 1] * lengths[-1] - math.cos(gap) / s
            # acot branch mapping R onto (0, pi)
            theta_next = thetas[-1] + (math.pi / 2.0 - math.atan(c))
        gap_new = theta_next - thetas[-1]
        s_new = math.sin(gap_new)
        if abs(s_new) < _SIN_TOL:
            raise DegenerateStepError(f"degenerate angle step at j={j}")
        l_next = 1.0 / (lengths[-1] * b[j - 1] ** 2 * s_new * s_new)
        theta_prev = thetas[-1]
        thetas.append(theta_next)
        lengths.append(l_next)
    breakpoints = [0.0]
    for l in lengths:
        breakpoints.append(breakpoints[-1] + l)
    return StepHamiltonian.of(breakpoints, thetas)


def hamiltonian_H0(m: int) -> StepHamiltonian:
    """Unit intervals with theta_j = (j+1) pi/2: the alternating diagonal
    Hamiltonian of the free discrete Schroedinger matrix."""
    if m < 1:
        raise ValueError("need at least one interval")
    return StepHamiltonian.of([float(j) for j in range(m + 1)], _quarter_turns(m))


def _quarter_turns(count: int, start: float = 0.0) -> list:
    """start + pi/2, start + 2*(pi/2), ... by repeated addition.

    Every angle-shift construction in this module accumulates pi/2 steps in
    this one order, so Hamiltonians built along different routes agree
    bit-for-bit, not just to rounding.
    """
    out = []
    th = start
    for _ in range(count):
        th = th + math.pi / 2.0
        out.append(th)
    return out


def hamiltonian_Hn(H: StepHamiltonian, n: int) -> StepHamiltonian:
    """Hamiltonian of the n-th gamma_hat iterate of H's m-function.

    The alternating prefix covers [0, n+1); H's angle data from its second
    interval onward is shifted right by n with angles raised by n pi/2.
    """
    if n < 1:
        raise OutOfRangeError("need shift index n >= 1")
    prefix_thetas = _quarter_turns(n)
    prefix_bp = [float(j) for j in range(n + 1)]
    # H's first interval [0, 1) shifts to [n, n+1) with angle
    # pi/2 + n pi/2 = (n+1) pi/2, so the prefix continues seamlessly and the
    # whole of [0, n+1) matches the alternating Hamiltonian.
    shifted_thetas = [_quarter_turns(n, start=th)[-1] for th in H.thetas]
    shifted_bp = [t + n for t in H.breakpoints[1:]]
    return StepHamiltonian.of(prefix_bp + shifted_bp, prefix_thetas + shifted_thetas)


def gammahat_hamiltonian(H: StepHamiltonian) -> StepHamiltonian:
    """Hamiltonian realizing gamma_hat of H's m-function: the alternating
    prefix on [0, 2), then I - H(t-1) which shifts each angle by pi/2."""
    return hamiltonian_Hn(H, 1)
