"""Random sign-vector fingerprint sets with audited pairwise overlaps.

Vectors live in {+1,-1}^d / sqrt(d), so unit norm is exact and the inner
product of any two vectors is the rational (2d' - d)/d, with d' the number
of agreeing coordinates.  Audits compare measured overlaps against a
threshold delta and report the per-pair concentration bound 2 e^{-delta^2 d/2}
alongside.  A Gram-matrix check demonstrates that sets with small pairwise
overlap are linearly independent via strict diagonal dominance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, exp, floor, log2
from math import e as _E

import numpy as np

from .errors import CapabilityError, DomainError, InputShapeError
from .qstate import PureState

# Pairwise audits touch count*(count-1)/2 inner products.
AUDIT_MAX_COUNT = 1 << 14


def required_dimension(n: int, delta: float) -> int:
    """Smallest d satisfying d >= 4n / (delta^2 log2(e)).

    At this dimension the union bound over all pairs of 2^n random sign
    vectors drops below 1, so a set with pairwise overlaps within delta
    exists.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta must lie in (0,1), got {delta}")
    return ceil(4.0 * n / (delta * delta * log2(_E)))


def chernoff_pair_bound(d: int, delta: float) -> float:
    """Per-pair bound: Pr[|<v,w>| > delta] <= 2 e^{-delta^2 d / 2}."""
    return 2.0 * exp(-float(delta) ** 2 * d / 2.0)


@dataclass(frozen=True, eq=False)
class VectorSet:
    """Sign vectors (rows of ``signs``, entries +/-1) scaled by 1/sqrt(d)."""

    signs: np.ndarray
    d: int
    seed: int | None = None
    delta_target: float | None = None

    def __post_init__(self) -> None:
        s = np.asarray(self.signs, dtype=np.int8)
        if s.ndim != 2 or s.shape[1] != self.d or not np.isin(s, (-1, 1)).all():
            raise InputShapeError(
                f"signs must be a (count, {self.d}) matrix of +/-1 entries"
            )
        object.__setattr__(self, "signs", s)

    @property
    def count(self) -> int:
        return self.signs.shape[0]

    def vectors(self) -> np.ndarray:
        return self.signs.astype(np.float64) / np.sqrt(self.d)

    def state(self, index: int) -> PureState:
        """Vector ``index`` as a d-dimensional state, for use as a fingerprint."""
        return PureState(self.vectors()[index], (self.d,))

    def overlap(self, i: int, j: int) -> Fraction:
        """Exact rational inner product (2d' - d)/d."""
        num = int(self.signs[i].astype(np.int64) @ self.signs[j].astype(np.int64))
        return Fraction(num, self.d)


def sample_vector_set(
    count: int, d: int, seed, delta_target: float | None = None
) -> VectorSet:
    """count i.i.d. uniform sign vectors, one derived sub-seed per vector."""
    if count < 2:
        raise DomainError(f"count must be >= 2, got {count}")
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    root = seed if isinstance(seed, np.random.SeedSequence) \
        else np.random.SeedSequence(seed)
    rows = np.empty((count, d), dtype=np.int8)
    for i, child in enumerate(root.spawn(count)):
        rng = np.random.default_rng(child)
        rows[i] = rng.integers(0, 2, size=d, dtype=np.int8) * 2 - 1
    plain_seed = seed if isinstance(seed, int) else None
    return VectorSet(signs=rows, d=d, seed=plain_seed, delta_target=delta_target)


@dataclass(frozen=True)
class OverlapAudit:
    d: int
    count: int
    delta: float
    max_abs_overlap: float
    violating_pairs: int
    total_pairs: int
    chernoff_bound: float
    seed: int | None = None

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "count": self.count,
            "delta": self.delta,
            "max_abs_overlap": self.max_abs_overlap,
            "violating_pairs": self.violating_pairs,
            "total_pairs": self.total_pairs,
            "chernoff_bound": self.chernoff_bound,
            "seed": self.seed,
        }


def _violation_threshold(d: int, delta: float) -> int:
    # smallest integer numerator T with T/d > delta, compared exactly
    return floor(Fraction(delta) * d) + 1


def audit_overlaps(vset: VectorSet, delta: float) -> OverlapAudit:
    """Exact pairwise overlap audit of a whole vector set."""
    if vset.count > AUDIT_MAX_COUNT:
        raise CapabilityError(
            f"pairwise audit of {vset.count} vectors exceeds the guard "
            f"{AUDIT_MAX_COUNT}"
        )
    if not 0.0 < float(delta) < 1.0:
        raise DomainError(f"delta must lie in (0,1), got {delta}")
    signs = vset.signs.astype(np.int32)
    threshold = _violation_threshold(vset.d, delta)
    max_num = 0
    violations = 0
    block = 1024
    for start in range(0, vset.count, block):
        rows = signs[start:start + block]
        grams = rows @ signs.T  # integer coordinate-agreement counts
        # keep strictly-upper-triangle entries only
        cols = np.arange(vset.count)[None, :]
        mask = cols > (start + np.arange(rows.shape[0]))[:, None]
        vals = np.abs(grams[mask])
        if vals.size:
            max_num = max(max_num, int(vals.max()))
            violations += int(np.count_nonzero(vals >= threshold))
    return OverlapAudit(
        d=vset.d,
        count=vset.count,
        delta=float(delta),
        max_abs_overlap=max_num / vset.d,
        violating_pairs=violations,
        total_pairs=comb(vset.count, 2),
        chernoff_bound=chernoff_pair_bound(vset.d, delta),
        seed=vset.seed,
    )


def sample_pair_audit(pairs: int, d: int, delta: float, seed) -> OverlapAudit:
    """Overlap audit over independently sampled vector pairs.

    For counts where a full 2^n set is infeasible, the concentration claim
    is still checkable pair by pair: each trial draws a fresh (v, w) and
    tests |<v,w>| > delta.
    """
    if pairs < 1:
        raise DomainError(f"pairs must be >= 1, got {pairs}")
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    if not 0.0 < float(delta) < 1.0:
        raise DomainError(f"delta must lie in (0,1), got {delta}")
    threshold = _violation_threshold(d, delta)
    root = np.random.SeedSequence(seed)
    max_num = 0
    violations = 0
    block = 4096
    chunks = [block] * (pairs // block) + ([pairs % block] if pairs % block else [])
    for child, size in zip(root.spawn(len(chunks)), chunks):
        rng = np.random.default_rng(child)
        v = rng.integers(0, 2, size=(size, d), dtype=np.int8) * 2 - 1
        w = rng.integers(0, 2, size=(size, d), dtype=np.int8) * 2 - 1
        nums = np.abs((v.astype(np.int32) * w).sum(axis=1))
        max_num = max(max_num, int(nums.max()))
        violations += int(np.count_nonzero(nums >= threshold))
    return OverlapAudit(
        d=d,
        count=2 * pairs,
        delta=float(delta),
        max_abs_overlap=max_num / d,
        violating_pairs=violations,
        total_pairs=pairs,
        chernoff_bound=chernoff_pair_bound(d, delta),
        seed=seed if isinstance(seed, int) else None,
    )


@dataclass(frozen=True)
class GramCheck:
    dominant: bool
    rank: int


def gram_dominance_check(vectors: np.ndarray, delta: float) -> GramCheck:
    """Strict diagonal dominance and numerical rank of a unit-vector Gram matrix.

    When every off-diagonal overlap is at most delta and (a-1) delta < 1
    the Gram matrix is strictly diagonally dominant, hence full rank; the
    returned rank counts singular values above 1e-9 of the largest.
    """
    v = np.asarray(vectors, dtype=np.float64)
    if v.ndim != 2:
        raise InputShapeError("vectors must form a 2-D (count, dim) array")
    a = v.shape[0]
    norms = np.linalg.norm(v, axis=1)
    if not np.allclose(norms, 1.0, atol=1e-9):
        raise InputShapeError("all vectors must have unit norm")
    if (a - 1) * float(delta) >= 1.0:
        raise DomainError(
            f"dominance claim needs (count-1)*delta < 1; got "
            f"({a}-1)*{delta} >= 1"
        )
    # dominance is tested on the honest float Gram matrix (diagonal = true
    # squared norms, within 1e-9 of 1): forcing the diagonal to exactly 1
    # would let a duplicate pair pass as dominant on rounding noise alone,
    # breaking the dominance => full-rank implication the check certifies
    gram = v @ v.T
    diag = np.diag(gram).copy()
    off_sums = np.abs(gram).sum(axis=1) - np.abs(diag)
    dominant = bool(np.all(diag > off_sums))
    svals = np.linalg.svd(gram, compute_uv=False)
    rank = int(np.count_nonzero(svals > 1e-9 * svals[0]))
    return GramCheck(dominant=dominant, rank=rank)


def qubit_lower_bound_from_delta(delta: float) -> float:
    """log2(1/delta): qubits forced by packing 1/delta near-orthogonal states."""
    if not 0.0 < float(delta) <= 1.0:
        raise DomainError(f"delta must lie in (0,1], got {delta}")
    return -log2(float(delta))
