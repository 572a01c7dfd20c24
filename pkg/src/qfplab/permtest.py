"""The k-copy state-distinguishing test built on register permutations.

With k copies each of |phi> and |psi| in 2k registers, superposing all
(2k)! register permutations and uncomputing accepts identical states with
certainty; for states with overlap gamma the accept probability has the
closed form

    p_eq(k, gamma) = (k!)^2/(2k)! * sum_j C(k,j)^2 gamma^(2j).

This module provides that closed form (exact over the rationals), a
brute-force projection oracle that symmetrizes the actual 2k-register
product state, a seeded sampler, the matching upper/lower/asymptotic
bounds, the two-state discrimination optimum, and the worst-case product
instance those bounds are tight against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, cos, factorial, pi, sqrt

import numpy as np

from .errors import CapabilityError, DomainError, InputShapeError
from .qstate import MAX_STATE_DIM, PureState, tensor, tensor_power

# Brute-force projection guards: permutation count and total element work.
_MAX_PERMUTATIONS = 4_000_000
_MAX_PROJECTION_WORK = 4_000_000_000


@dataclass(frozen=True)
class PermTestSpec:
    """Copies per state and the promised overlap bound."""

    k: int
    delta: float | Fraction

    def __post_init__(self) -> None:
        if self.k < 1:
            raise DomainError(f"copy count k must be >= 1, got {self.k}")
        if not 0 <= self.delta <= 1:
            raise DomainError(f"delta must lie in [0,1], got {self.delta}")


@dataclass(frozen=True)
class PermTestOutcome:
    p_equal: float
    method: str
    samples: int | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_equal <= 1.0:
            raise DomainError(f"p_equal = {self.p_equal!r} outside [0,1]")


def _as_fraction(value) -> Fraction | None:
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    return None


def p_eq_closed_form(k: int, gamma):
    """Accept probability at overlap magnitude gamma; exact for rational gamma."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if not 0 <= gamma <= 1:
        raise DomainError(f"gamma must lie in [0,1], got {gamma}")
    prefactor = Fraction(factorial(k) ** 2, factorial(2 * k))
    g = _as_fraction(gamma)
    if g is not None:
        g2 = g * g
        return prefactor * sum(comb(k, j) ** 2 * g2**j for j in range(k + 1))
    g2 = float(gamma) ** 2
    total = sum(comb(k, j) ** 2 * g2**j for j in range(k + 1))
    return float(prefactor * Fraction(total))


def p_eq_projection(phi: PureState, psi: PureState, k: int) -> float:
    """Squared norm of the symmetrized 2k-register product state.

    Materializes phi^k x psi^k, averages every register permutation in
    S_{2k}, and measures the result: a brute-force oracle independent of
    the closed-form sum.
    """
    if phi.shape != psi.shape:
        raise InputShapeError(f"shape mismatch: {phi.shape} vs {psi.shape}")
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    d = phi.dim
    n_regs = 2 * k
    n_perms = factorial(n_regs)
    if d**n_regs > MAX_STATE_DIM or n_perms > _MAX_PERMUTATIONS or (
        n_perms * d**n_regs > _MAX_PROJECTION_WORK
    ):
        raise CapabilityError(
            f"brute-force symmetrization over ({n_regs})! register "
            f"permutations in dimension {d}^{n_regs} exceeds the guard; "
            f"use the closed form for k = {k}"
        )
    vecs = [phi.amplitudes] * k + [psi.amplitudes] * k
    product = reduce(np.kron, vecs).reshape((d,) * n_regs)
    acc = np.zeros_like(product)
    for sigma in itertools.permutations(range(n_regs)):
        acc += product.transpose(sigma)
    p = float(np.vdot(acc, acc).real) / n_perms**2
    return min(max(p, 0.0), 1.0)


def simulate_perm_test(
    phi: PureState, psi: PureState, k: int, trials: int, seed
) -> PermTestOutcome:
    """Seeded equal/not-equal verdicts at the projection rate."""
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    p = p_eq_projection(phi, psi, k)
    rng = np.random.default_rng(seed)
    hits = int(np.count_nonzero(rng.random(trials) < p))
    return PermTestOutcome(p_equal=hits / trials, method="sampled", samples=trials)


def p_eq_upper_bound(k: int, delta):
    """(k!)^2/(2k)! * (1 + delta)^(2k); may exceed 1 and is still a bound."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    prefactor = Fraction(factorial(k) ** 2, factorial(2 * k))
    d = _as_fraction(delta)
    if d is not None:
        return prefactor * (1 + d) ** (2 * k)
    return float(prefactor * Fraction(float(delta) + 1.0) ** (2 * k))


def p_eq_asymptotic(k: int, delta: float) -> float:
    """sqrt(pi k) ((1 + delta)/2)^(2k); loose at small k, reported not asserted."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    return sqrt(pi * k) * ((1.0 + float(delta)) / 2.0) ** (2 * k)


def distinguisher_lower_bound(k: int, delta):
    """No test on k copies beats error 1/4 ((1 + delta)/2)^(2k)."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    d = _as_fraction(delta)
    if d is not None:
        return Fraction(1, 4) * ((1 + d) / 2) ** (2 * k)
    return 0.25 * ((1.0 + float(delta)) / 2.0) ** (2 * k)


def helstrom_error(overlap: float) -> float:
    """Minimum discrimination error for two pure states with this overlap.

    Equals (1 - sqrt(1 - overlap^2))/2, evaluated in the cancellation-free
    form overlap^2 / (2 (1 + sqrt(1 - overlap^2))) so the bound
    result >= overlap^2/4 survives rounding near overlap = 0.
    """
    c = float(overlap)
    if not 0.0 <= c <= 1.0:
        raise DomainError(f"overlap must lie in [0,1], got {overlap}")
    return c * c / (2.0 * (1.0 + sqrt(max(0.0, 1.0 - c * c))))


def build_hard_instance(
    k: int, delta: float
) -> tuple[PureState, PureState, float]:
    """Worst-case pair for any k-copy distinguisher.

    One branch is 2k copies of |0>; the other takes k copies each of the
    two single-qubit states at angle +/- theta/2 from |0>, theta chosen so
    their mutual overlap is delta.  The branches then meet at overlap
    ((1 + delta)/2)^k, which is verified against the built vectors.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if not 0.0 <= delta <= 1.0:
        raise DomainError(f"delta must lie in [0,1], got {delta}")
    c = sqrt((1.0 + delta) / 2.0)  # cos(theta/2) with theta = arccos(delta)
    s = sqrt((1.0 - delta) / 2.0)
    zero = PureState(np.array([1.0, 0.0]), (2,))
    phi2 = PureState(np.array([c, s]), (2,))
    psi2 = PureState(np.array([c, -s]), (2,))
    state_a = tensor_power(zero, 2 * k)
    state_b = tensor(tensor_power(phi2, k), tensor_power(psi2, k))
    overlap = float(np.vdot(state_a.amplitudes, state_b.amplitudes).real)
    expected = ((1.0 + delta) / 2.0) ** k
    if abs(overlap - expected) > 1e-12:
        raise ArithmeticError(
            f"hard-instance overlap {overlap!r} deviates from {expected!r}"
        )
    return state_a, state_b, overlap


def overlap_qubit_pair(gamma: float) -> tuple[PureState, PureState]:
    """A fixed qubit pair with real overlap gamma, for oracle grids."""
    if not 0.0 <= gamma <= 1.0:
        raise DomainError(f"gamma must lie in [0,1], got {gamma}")
    phi = PureState(np.array([1.0, 0.0]), (2,))
    psi = PureState(np.array([gamma, sqrt(max(0.0, 1.0 - gamma * gamma))]), (2,))
    return phi, psi
