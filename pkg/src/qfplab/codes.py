"""Binary error-correcting codes used as the classical substrate of fingerprints.

Three code families are supported:

* ``hadamard`` — the [2^n, n] code whose i-th codeword bit is the GF(2) inner
  product <i, x>.  Exact agreement bound 1/2, codeword length 2^n.
* ``random-linear`` — an explicit m x n generator matrix over GF(2) with
  m = c*n for an integer c >= 2, either supplied or sampled from a seed.
* ``declared`` — a caller-supplied encoder together with a claimed bound on
  the pairwise agreement fraction.

Distance certification is exact (weight enumeration for linear codes,
pairwise comparison otherwise) up to the enumeration guard; agreement
fractions are exact rationals throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Callable

import numpy as np

from .errors import CapabilityError, DomainError, InputShapeError

HADAMARD = "hadamard"
RANDOM_LINEAR = "random-linear"
DECLARED = "declared"

# Largest message length for which we enumerate all 2^n - 1 nonzero encodings.
CERTIFY_MAX_N = 24


def _check_bits(s: str, n: int, name: str) -> str:
    if not isinstance(s, str) or len(s) != n or any(ch not in "01" for ch in s):
        raise InputShapeError(
            f"{name} must be a bit-string of length {n}, got {s!r}"
        )
    return s


def _gf2_rank(rows: list[int], limit: int) -> int:
    """Rank of a GF(2) matrix given as row bit-masks (LSB = column 1)."""
    pivots: list[int] = []
    rank = 0
    for row in rows:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
            pivots.sort(reverse=True)
            rank += 1
            if rank == limit:
                break
    return rank


@dataclass(frozen=True, eq=False)
class BinaryCode:
    """An encoder {0,1}^n -> {0,1}^m with a certified or declared distance.

    ``generator`` is an (m, n) uint8 matrix over GF(2) for linear kinds;
    ``encoder`` is a bit-string callable for the ``declared`` kind;
    ``declared_delta`` is a claimed upper bound on the pairwise agreement
    fraction of distinct codewords.
    """

    kind: str
    n: int
    m: int
    generator: np.ndarray | None = None
    declared_delta: Fraction | None = None
    seed: int | None = None
    encoder: Callable[[str], str] | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"message length must be >= 1, got {self.n}")
        if self.kind == HADAMARD:
            if self.m != 2**self.n:
                raise DomainError(
                    f"hadamard codes have m = 2^n; got m={self.m}, n={self.n}"
                )
        elif self.kind == RANDOM_LINEAR:
            if self.generator is None:
                raise DomainError("random-linear codes require a generator")
            if self.m % self.n != 0 or self.m // self.n < 2:
                raise DomainError(
                    f"random-linear codes need m = c*n with integer c >= 2; "
                    f"got m={self.m}, n={self.n}"
                )
        elif self.kind == DECLARED:
            if self.encoder is None and self.generator is None:
                raise DomainError("declared codes require an encoder or generator")
        else:
            raise DomainError(f"unknown code kind {self.kind!r}")
        if self.generator is not None:
            g = np.asarray(self.generator, dtype=np.uint8)
            if g.shape != (self.m, self.n) or not np.isin(g, (0, 1)).all():
                raise InputShapeError(
                    f"generator must be an (m, n)={self.m, self.n} 0/1 matrix"
                )
            object.__setattr__(self, "generator", g)
            rows = [_row_int(g[r]) for r in range(self.m)]
            if _gf2_rank(rows, self.n) != self.n:
                raise DomainError(
                    "generator is not injective: some nonzero message encodes to 0"
                )
        if self.declared_delta is not None:
            d = Fraction(self.declared_delta)
            if not 0 <= d <= 1:
                raise DomainError(f"declared delta must lie in [0,1], got {d}")
            object.__setattr__(self, "declared_delta", d)

    @property
    def is_linear(self) -> bool:
        return self.kind == HADAMARD or self.generator is not None

    @property
    def label(self) -> str:
        parts = [self.kind, f"n{self.n}", f"m{self.m}"]
        if self.seed is not None:
            parts.append(f"seed{self.seed}")
        return "-".join(parts)

    def to_json(self) -> dict:
        """Serializable description: generator rows are hex, LSB = column 1."""
        out: dict = {"kind": self.kind, "n": self.n, "m": self.m}
        if self.seed is not None:
            out["seed"] = self.seed
        if self.generator is not None:
            width = (self.n + 3) // 4
            out["generator"] = [
                format(_row_int(self.generator[r]), f"0{width}x")
                for r in range(self.m)
            ]
        if self.declared_delta is not None:
            out["declared_delta"] = str(self.declared_delta)
        return out


def _row_int(row: np.ndarray) -> int:
    return sum(int(b) << j for j, b in enumerate(row))


def code_from_json(desc: dict) -> BinaryCode:
    """Rebuild a code from its JSON description.

    Declared codes round-trip only when they carry a generator; a bare
    encoder callable cannot be serialized.
    """
    kind = desc["kind"]
    n, m = int(desc["n"]), int(desc["m"])
    gen = None
    if "generator" in desc:
        gen = np.zeros((m, n), dtype=np.uint8)
        for r, hx in enumerate(desc["generator"]):
            val = int(hx, 16)
            for j in range(n):
                gen[r, j] = (val >> j) & 1
    delta = Fraction(desc["declared_delta"]) if "declared_delta" in desc else None
    if kind == DECLARED and gen is None:
        raise DomainError("cannot rebuild a declared code without a generator")
    return BinaryCode(kind=kind, n=n, m=m, generator=gen,
                      declared_delta=delta, seed=desc.get("seed"))


def hadamard_code(n: int) -> BinaryCode:
    """The [2^n, n] code with codeword bits <i, x> over GF(2)."""
    return BinaryCode(kind=HADAMARD, n=n, m=2**n)


def random_linear_code(n: int, c: int, seed: int) -> BinaryCode:
    """Uniformly random injective (c*n, n) generator over GF(2).

    The generator is resampled from the seeded stream until it has full
    column rank, so encoding is injective by construction.
    """
    if c < 2:
        raise DomainError(f"rate multiple c must be >= 2, got c={c}")
    rng = np.random.default_rng(seed)
    while True:
        g = rng.integers(0, 2, size=(c * n, n), dtype=np.uint8)
        rows = [_row_int(g[r]) for r in range(c * n)]
        if _gf2_rank(rows, n) == n:
            return BinaryCode(kind=RANDOM_LINEAR, n=n, m=c * n,
                              generator=g, seed=seed)


def linear_code(generator: np.ndarray) -> BinaryCode:
    """A random-linear-kind code with an explicitly supplied generator."""
    g = np.asarray(generator, dtype=np.uint8)
    return BinaryCode(kind=RANDOM_LINEAR, n=g.shape[1], m=g.shape[0], generator=g)


def declared_code(
    n: int,
    m: int,
    encoder: Callable[[str], str] | None = None,
    delta: Fraction | None = None,
    generator: np.ndarray | None = None,
) -> BinaryCode:
    """A code taken on trust: caller supplies the encoder and/or a delta bound."""
    return BinaryCode(kind=DECLARED, n=n, m=m, generator=generator,
                      declared_delta=delta, encoder=encoder)


def _message_vector(code: BinaryCode, x: str) -> np.ndarray:
    # column j of the generator multiplies message character j (1-based)
    return np.frombuffer(x.encode(), dtype=np.uint8) - ord("0")


def _codeword_bits(code: BinaryCode, x: str) -> np.ndarray:
    """Codeword as a uint8 array of length m."""
    if code.kind == HADAMARD:
        x_int = np.uint64(int(x, 2))
        idx = np.arange(code.m, dtype=np.uint64)
        return (np.bitwise_count(idx & x_int) & np.uint64(1)).astype(np.uint8)
    if code.generator is not None:
        v = _message_vector(code, x).astype(np.int64)
        return ((code.generator.astype(np.int64) @ v) & 1).astype(np.uint8)
    word = code.encoder(x)  # type: ignore[misc]
    if len(word) != code.m or any(ch not in "01" for ch in word):
        raise InputShapeError(
            f"declared encoder returned an invalid codeword for x={x!r}"
        )
    return np.frombuffer(word.encode(), dtype=np.uint8) - ord("0")


def encode(code: BinaryCode, x: str) -> str:
    """Full codeword of ``x`` as a bit-string of length m."""
    _check_bits(x, code.n, "x")
    bits = _codeword_bits(code, x)
    return "".join("1" if b else "0" for b in bits)


def bit_at(code: BinaryCode, x: str, i: int) -> int:
    """The i-th codeword bit, 1-based.

    For hadamard codes this is a single masked popcount, so it costs O(1)
    work per query and never materializes the 2^n-bit codeword.
    """
    _check_bits(x, code.n, "x")
    if not 1 <= i <= code.m:
        raise InputShapeError(f"index i must lie in 1..{code.m}, got {i}")
    if code.kind == HADAMARD:
        return ((i - 1) & int(x, 2)).bit_count() & 1
    if code.generator is not None:
        v = _message_vector(code, x)
        return int(code.generator[i - 1] @ v.astype(np.int64)) & 1
    return int(_codeword_bits(code, x)[i - 1])


def agreement_fraction(code: BinaryCode, x: str, y: str) -> Fraction:
    """Exact fraction of positions where the codewords of x and y agree."""
    _check_bits(x, code.n, "x")
    _check_bits(y, code.n, "y")
    if code.is_linear:
        # linearity: positions of agreement = m - weight(E(x XOR y))
        z = format(int(x, 2) ^ int(y, 2), f"0{code.n}b")
        weight = int(_codeword_bits(code, z).sum())
        return Fraction(code.m - weight, code.m)
    wx = _codeword_bits(code, x)
    wy = _codeword_bits(code, y)
    return Fraction(int((wx == wy).sum()), code.m)


@dataclass(frozen=True)
class DistanceCertificate:
    """Exact or declared minimum distance, with the agreement bound it implies."""

    min_distance: int
    max_agreement: Fraction
    method: str
    m: int

    def __post_init__(self) -> None:
        assert self.max_agreement == 1 - Fraction(self.min_distance, self.m)

    def to_json(self) -> dict:
        return {
            "min_distance": self.min_distance,
            "max_agreement": str(self.max_agreement),
            "method": self.method,
        }


def _hadamard_column(n: int, b: int) -> int:
    """Codeword of message 2^b as a bit-mask over the 2^n positions."""
    bits = ((np.arange(2**n, dtype=np.uint64) >> np.uint64(b)) & np.uint64(1))
    packed = np.packbits(bits.astype(np.uint8), bitorder="little").tobytes()
    return int.from_bytes(packed, "little")


def _min_nonzero_weight(columns: list[int], n: int) -> int:
    # Gray-code walk over all 2^n - 1 nonzero messages: one XOR per step.
    cw = 0
    best: int | None = None
    for g in range(1, 1 << n):
        cw ^= columns[(g & -g).bit_length() - 1]
        w = cw.bit_count()
        if best is None or w < best:
            best = w
    assert best is not None
    return best


def certify_distance(code: BinaryCode) -> DistanceCertificate:
    """Exact minimum Hamming distance over all distinct codeword pairs.

    Linear codes use the minimum nonzero-codeword weight; declared codes with
    a claimed delta return it verbatim; a declared encoder without a claim is
    compared pairwise.  Above the enumeration guard a non-declared code is
    rejected with instructions to declare a bound instead.
    """
    if code.kind == DECLARED and code.declared_delta is not None:
        agree = floor(code.declared_delta * code.m)
        return DistanceCertificate(
            min_distance=code.m - agree,
            max_agreement=Fraction(agree, code.m),
            method="declared",
            m=code.m,
        )
    if code.n > CERTIFY_MAX_N:
        raise CapabilityError(
            f"exact certification enumerates 2^{code.n} codewords; "
            f"guard is n <= {CERTIFY_MAX_N}.  Construct the code with a "
            f"declared delta bound instead."
        )
    if code.is_linear:
        if code.kind == HADAMARD:
            columns = [_hadamard_column(code.n, b) for b in range(code.n)]
        else:
            gen = code.generator
            columns = [
                int.from_bytes(
                    np.packbits(gen[:, j], bitorder="little").tobytes(), "little"
                )
                for j in range(code.n)
            ]
        dist = _min_nonzero_weight(columns, code.n)
        return DistanceCertificate(
            min_distance=dist,
            max_agreement=Fraction(code.m - dist, code.m),
            method="weight-enumeration",
            m=code.m,
        )
    words = []
    for v in range(2**code.n):
        bits = _codeword_bits(code, format(v, f"0{code.n}b"))
        words.append(int.from_bytes(
            np.packbits(bits, bitorder="little").tobytes(), "little"))
    if len(set(words)) != len(words):
        raise DomainError("declared encoder is not injective")
    dist = min(
        (words[a] ^ words[b]).bit_count()
        for a in range(len(words))
        for b in range(a + 1, len(words))
    )
    return DistanceCertificate(
        min_distance=dist,
        max_agreement=Fraction(code.m - dist, code.m),
        method="exhaustive",
        m=code.m,
    )
