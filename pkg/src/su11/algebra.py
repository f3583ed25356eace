"""Truncated number-basis representation of the su(1,1) ladder algebra.

A state is a finite vector of amplitudes c[0..dim-1] over the lowest-weight
basis |n> of the discrete series labelled by the Bargmann index k > 0.  The
ladder operators act as

    raise:  |n> -> sqrt((n+1)(2k+n)) |n+1>
    lower:  |n> -> sqrt(n(2k+n-1))   |n-1>
    level:  |n> -> (n+k) |n>

All residual checks in this module are evaluated in extended precision
(longdouble) on the banded structure so that the reported defect measures
the identity, not float64 round-off of the band entries themselves.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "NORMALIZED_TOL",
    "TAIL_TOL",
    "ConvergenceError",
    "NonlinearFunction",
    "StateVector",
    "basis_state",
    "check_bargmann",
    "raising_factors",
    "apply_kplus",
    "apply_kminus",
    "apply_k0",
    "apply_number",
    "apply_diag",
    "kplus_truncation_loss",
    "structure_function",
    "ladder_function_from_state",
    "ladder_residual_general",
    "eigen_residual_lowering",
    "mus_residual",
    "mus_expectation",
    "GdoResiduals",
    "gdo_residuals",
    "CommutatorResiduals",
    "commutator_residuals",
    "casimir_residual",
    "kplus_matrix",
    "kminus_matrix",
    "k0_matrix",
    "number_matrix",
]

NORMALIZED_TOL = 1e-10
TAIL_TOL = 1e-12

# Map from a level index to the value of a diagonal operator function there.
NonlinearFunction = Callable[[int], float]


class ConvergenceError(RuntimeError):
    """A state did not fit in the requested truncation dimension."""


def check_bargmann(k: float) -> float:
    k = float(k)
    if not np.isfinite(k) or k <= 0.0:
        raise ValueError(f"Bargmann index must be a positive real, got {k}")
    return k


@dataclass(frozen=True)
class StateVector:
    """Immutable amplitude vector over the lowest-weight basis.

    Not necessarily normalized; `normalized()` returns a unit-norm copy.
    """

    amplitudes: np.ndarray
    k: float

    def __post_init__(self):
        check_bargmann(self.k)
        amp = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if amp.ndim != 1 or amp.size < 2:
            raise ValueError("amplitudes must be a 1-d vector of length >= 2")
        if not np.all(np.isfinite(amp.view(np.float64))):
            raise ValueError("amplitudes must be finite")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)
        object.__setattr__(self, "k", float(self.k))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def is_normalized(self) -> bool:
        return abs(self.norm - 1.0) <= NORMALIZED_TOL

    @property
    def tail_fraction(self) -> float:
        """Weight of the top level relative to the total squared norm."""
        total = self.norm**2
        if total == 0.0:
            return 0.0
        return float(abs(self.amplitudes[-1]) ** 2 / total)

    @property
    def is_converged(self) -> bool:
        return self.tail_fraction <= TAIL_TOL

    def normalized(self) -> "StateVector":
        n = self.norm
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.amplitudes / n, self.k)

    def inner(self, other: "StateVector") -> complex:
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if other.k != self.k:
            raise ValueError(f"Bargmann index mismatch: {self.k} vs {other.k}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __repr__(self):
        return f"StateVector(dim={self.dim}, k={self.k}, norm={self.norm:.6g})"


def basis_state(n: int, dim: int, k: float) -> StateVector:
    """The basis vector |n> in a dim-level truncation."""
    if not 0 <= n < dim:
        raise ValueError(f"level {n} outside truncation of dimension {dim}")
    amp = np.zeros(dim, dtype=np.complex128)
    amp[n] = 1.0
    return StateVector(amp, k)


def raising_factors(dim: int, k: float, dtype=np.float64) -> np.ndarray:
    """Transition factors sqrt((n+1)(2k+n)) for n = 0 .. dim-2.

    Entry n is both the raising amplitude n -> n+1 and the lowering
    amplitude n+1 -> n.
    """
    check_bargmann(k)
    n = np.arange(dim - 1, dtype=dtype)
    return np.sqrt((n + 1.0) * (2.0 * np.asarray(k, dtype=dtype) + n))


def apply_kplus(state: StateVector) -> StateVector:
    """Raising operator.  The amplitude leaving the top level is dropped;
    `kplus_truncation_loss` reports how much weight that was."""
    f = raising_factors(state.dim, state.k)
    out = np.zeros_like(state.amplitudes)
    out[1:] = f * state.amplitudes[:-1]
    return StateVector(out, state.k)


def apply_kminus(state: StateVector) -> StateVector:
    f = raising_factors(state.dim, state.k)
    out = np.zeros_like(state.amplitudes)
    out[:-1] = f * state.amplitudes[1:]
    return StateVector(out, state.k)


def apply_k0(state: StateVector) -> StateVector:
    n = np.arange(state.dim)
    return StateVector((n + state.k) * state.amplitudes, state.k)


def apply_number(state: StateVector) -> StateVector:
    """Level-number operator, k subtracted off the diagonal of K0."""
    n = np.arange(state.dim)
    return StateVector(n * state.amplitudes, state.k)


def apply_diag(state: StateVector, func: NonlinearFunction) -> StateVector:
    """Apply a diagonal operator func(N) levelwise.

    func is only evaluated at occupied levels, so poles of func at levels
    carrying exactly zero amplitude are harmless.
    """
    out = np.array(state.amplitudes, dtype=np.complex128)
    for n in range(state.dim):
        if out[n] != 0.0:
            g = complex(func(n))
            if not (np.isfinite(g.real) and np.isfinite(g.imag)):
                raise ValueError(f"diagonal function not finite at level {n}")
            out[n] *= g
    return StateVector(out, state.k)


def kplus_truncation_loss(state: StateVector) -> float:
    """Squared norm of the component the raising operator pushes past the top."""
    top = state.dim - 1
    f_top = np.sqrt(state.dim * (2.0 * state.k + top))
    return float(abs(f_top * state.amplitudes[top]) ** 2)


def structure_function(state: StateVector, n: int) -> float:
    """S(n) = n^2 |c_n|^2 / |c_{n-1}|^2 read off the state's amplitudes.

    This is the eigenvalue of the product (raise then lower) of the
    generalized ladder pair attached to the state, see `gdo_residuals`.
    """
    if not 1 <= n < state.dim:
        raise ValueError(f"transition index {n} outside 1 .. {state.dim - 1}")
    below = abs(state.amplitudes[n - 1]) ** 2
    if below == 0.0:
        raise ZeroDivisionError(f"amplitude at level {n - 1} is zero")
    return float(n * n * abs(state.amplitudes[n]) ** 2 / below)


def ladder_function_from_state(state: StateVector) -> Callable[[int], complex]:
    """The diagonal raising factor a state defines through its own amplitudes.

    f(n) = C(n) sqrt(n) / (C(n-1) sqrt(n + 2k - 1)) for n >= 1 (and 0 at
    n = 0, where it is never reached by raising); with this f the state is
    annihilated by N - f(N) K+, see `ladder_residual_general`.
    """
    c = state.amplitudes
    k = state.k

    def f(n: int) -> complex:
        if n == 0:
            return 0j
        if not 1 <= n < state.dim:
            raise ValueError(f"level {n} outside truncation of dimension {state.dim}")
        below = c[n - 1]
        if below == 0:
            raise ZeroDivisionError(f"amplitude at level {n - 1} is zero")
        return complex(c[n] / below) * math.sqrt(n / (n + 2.0 * k - 1.0))

    return f


def ladder_residual_general(state: StateVector, func: Callable[[int], complex]) -> float:
    """Norm of (N - func(N) K+) applied to the state, over levels 0..dim-2.

    func is evaluated on the level the raising lands on.  A state paired
    with its own `ladder_function_from_state` factor gives zero up to
    round-off.
    """
    raised = apply_diag(apply_kplus(state), func)
    n = np.arange(state.dim)
    resid = n * state.amplitudes - raised.amplitudes
    return float(np.linalg.norm(resid[: state.dim - 1]))


def eigen_residual_lowering(
    state: StateVector, func: NonlinearFunction, alpha: complex
) -> float:
    """Norm of (func(N) K- - alpha) applied to the state, truncation-safe.

    func(n) = 1/(n+2k) tests the exponential-family coherence property,
    func = 1 the plain lowering-eigenvector property.  The top component
    of the residual only reflects the missing level dim and is excluded.
    """
    lowered = apply_diag(apply_kminus(state), func)
    resid = lowered.amplitudes - complex(alpha) * state.amplitudes
    return float(np.linalg.norm(resid[: state.dim - 1]))


def mus_residual(
    state: StateVector, mu: complex, nu: complex, alpha: complex
) -> float:
    """Norm of (mu K+ + nu K- - alpha) applied to the state.

    Normalizable solutions need |mu| < |nu|; outside that region the check
    still runs but a warning is issued.  The top residual component is
    contaminated by truncation and excluded.
    """
    if nu == 0 or abs(mu) >= abs(nu):
        warnings.warn(
            f"mixed ladder eigenproblem with |mu|={abs(mu):.3g} >= |nu|={abs(nu):.3g} "
            "has no normalizable solutions",
            stacklevel=2,
        )
    raised = apply_kplus(state).amplitudes
    lowered = apply_kminus(state).amplitudes
    resid = mu * raised + nu * lowered - complex(alpha) * state.amplitudes
    return float(np.linalg.norm(resid[: state.dim - 1]))


def mus_expectation(state: StateVector, mu: complex, nu: complex) -> complex:
    """Expectation value of mu K+ + nu K- in the (normalized) state."""
    total = state.norm**2
    if total == 0.0:
        raise ValueError("expectation value of the zero vector")
    raised = apply_kplus(state).amplitudes
    lowered = apply_kminus(state).amplitudes
    val = np.vdot(state.amplitudes, mu * raised + nu * lowered)
    return complex(val / total)


@dataclass(frozen=True)
class GdoResiduals:
    """Defects of the deformed-oscillator relations a state's ladder pair obeys.

    product_lowering: raise-then-lower product against S(N)
    product_raising:  lower-then-raise product against S(N+1)
    number_raising:   [N, A+] - A+
    number_lowering:  [N, A-] + A-
    all as max absolute entrywise defects over interior levels 1..dim-2.
    """

    product_lowering: float
    product_raising: float
    number_raising: float
    number_lowering: float

    @property
    def worst(self) -> float:
        return max(
            self.product_lowering,
            self.product_raising,
            self.number_raising,
            self.number_lowering,
        )


def gdo_residuals(state: StateVector) -> GdoResiduals:
    """Check the generalized ladder pair attached to a state.

    For amplitudes C(n) the deformed raising operator has the single band
    entry n-1 -> n equal to n C(n)/C(n-1), its adjoint lowers, and the two
    ordered products must be diagonal with values S(N) and S(N+1) where
    S(n) = n^2 |C(n)|^2/|C(n-1)|^2.  The band entries are formed by complex
    division, S by the magnitude ratio, so the comparison exercises two
    genuinely different arithmetic routes; everything runs in extended
    precision.  Requires every amplitude below the top level to be nonzero.
    """
    c = state.amplitudes
    dim = state.dim
    if dim < 4:
        raise ValueError("need at least 4 levels for an interior")
    zero = np.flatnonzero(c[:-1] == 0.0)
    if zero.size:
        raise ValueError(f"amplitude at level {zero[0]} is zero")

    ch = c.astype(np.clongdouble)
    t = np.arange(1, dim, dtype=np.longdouble)  # transition t-1 -> t
    band = t.astype(np.clongdouble) * ch[1:] / ch[:-1]
    prod = (band * np.conjugate(band)).real

    mag = ch.real * ch.real + ch.imag * ch.imag
    s = t * t * mag[1:] / mag[:-1]

    diff = np.abs(prod - s)  # diff[i] is transition t = i+1
    # A+A- = S(N) at level L uses transition L; A-A+ = S(N+1) at level L
    # uses transition L+1; interior levels are 1..dim-2.
    product_lowering = float(np.max(diff[0 : dim - 2]))
    product_raising = float(np.max(diff[1 : dim - 1]))

    # [N, A+] on the band entry t-1 -> t is (t - (t-1)) a_t, so the defect
    # against A+ itself; same with the sign flipped for the adjoint.
    up = t * band - (t - 1.0) * band - band
    down = (t - 1.0) * np.conjugate(band) - t * np.conjugate(band) + np.conjugate(band)
    inner = slice(1, dim - 2)  # transitions with both endpoints interior
    number_raising = float(np.max(np.abs(up[inner])))
    number_lowering = float(np.max(np.abs(down[inner])))
    return GdoResiduals(
        product_lowering=product_lowering,
        product_raising=product_raising,
        number_raising=number_raising,
        number_lowering=number_lowering,
    )


@dataclass(frozen=True)
class CommutatorResiduals:
    plus_minus: float  # [K+, K-] + 2 K0
    zero_plus: float  # [K0, K+] - K+
    zero_minus: float  # [K0, K-] + K-

    @property
    def worst(self) -> float:
        return max(self.plus_minus, self.zero_plus, self.zero_minus)


def commutator_residuals(k: float, dim: int) -> CommutatorResiduals:
    """Max-abs entrywise defect of the three commutation relations on the
    truncated basis, over the entries the truncation leaves intact."""
    check_bargmann(k)
    kl = np.longdouble(k)
    n = np.arange(dim, dtype=np.longdouble)
    f = np.sqrt((n[:-1] + 1.0) * (2.0 * kl + n[:-1]))  # transition n -> n+1

    # [K+,K-] is diagonal: f(n-1)^2 - f(n)^2; the top entry misses the
    # raise-then-lower excursion through level dim and is skipped.
    up_down = np.zeros(dim, dtype=np.longdouble)
    up_down[1:] = f * f
    down_up = np.zeros(dim, dtype=np.longdouble)
    down_up[:-1] = f * f
    comm = up_down - down_up
    target = -2.0 * (n + kl)
    pm = np.max(np.abs(comm[:-1] - target[:-1]))

    # [K0, K+-] live on the single band; no truncation issue there.
    zp = np.max(np.abs((n[1:] + kl) * f - f * (n[:-1] + kl) - f))
    zm = np.max(np.abs((n[:-1] + kl) * f - f * (n[1:] + kl) + f))
    return CommutatorResiduals(
        plus_minus=float(pm), zero_plus=float(zp), zero_minus=float(zm)
    )


def casimir_residual(k: float, dim: int) -> float:
    """Defect of K0^2 - (K+K- + K-K+)/2 against its scalar value k(k-1)."""
    check_bargmann(k)
    kl = np.longdouble(k)
    n = np.arange(dim, dtype=np.longdouble)
    f2 = (n[:-1] + 1.0) * (2.0 * kl + n[:-1])
    up_down = np.zeros(dim, dtype=np.longdouble)
    up_down[1:] = f2
    down_up = np.zeros(dim, dtype=np.longdouble)
    down_up[:-1] = f2
    diag = (n + kl) ** 2 - 0.5 * (up_down + down_up)
    return float(np.max(np.abs(diag[:-1] - kl * (kl - 1.0))))


def kplus_matrix(dim: int, k: float, dtype=np.float64) -> np.ndarray:
    m = np.zeros((dim, dim), dtype=dtype)
    f = raising_factors(dim, k)
    m[np.arange(1, dim), np.arange(dim - 1)] = f
    return m


def kminus_matrix(dim: int, k: float, dtype=np.float64) -> np.ndarray:
    return kplus_matrix(dim, k, dtype=dtype).T.copy()


def k0_matrix(dim: int, k: float, dtype=np.float64) -> np.ndarray:
    check_bargmann(k)
    diag = np.arange(dim, dtype=np.float64) + k
    return np.diag(diag.astype(dtype))


def number_matrix(dim: int, dtype=np.float64) -> np.ndarray:
    return np.diag(np.arange(dim, dtype=dtype))
