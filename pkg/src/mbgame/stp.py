"""Semi-tensor product (STP) algebra over dense numpy matrices.

Matrices are plain 2-D ``float64`` arrays. Indices exposed by this module
(logical vectors, mixed-radix digits, lexicographic positions) are 1-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

# Hard ceiling on the entry count of any matrix built here.
MAX_ENTRIES = 2**28


class DimensionOverflow(ValueError):
    """A dimension product exceeds what this module is willing to allocate."""


def _checked_size(*dims: int) -> int:
    n = math.prod(int(d) for d in dims)
    if n > MAX_ENTRIES:
        raise DimensionOverflow(f"matrix with dims {dims} has {n} entries (> {MAX_ENTRIES})")
    return n


def as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {A.shape}")
    return A


def kron(*mats) -> np.ndarray:
    """Kronecker product of one or more matrices, left to right."""
    mats = [as_matrix(M) for M in mats]
    _checked_size(
        math.prod(M.shape[0] for M in mats), math.prod(M.shape[1] for M in mats)
    )
    return reduce(np.kron, mats)


def stp(A, B) -> np.ndarray:
    """Left semi-tensor product ``(A ⊗ I_{x/b})(B ⊗ I_{x/c})`` with ``x = lcm(b, c)``."""
    A = as_matrix(A)
    B = as_matrix(B)
    a, b = A.shape
    c, d = B.shape
    if b == c:
        return A @ B
    x = math.lcm(b, c)
    _checked_size(a * (x // b), x)
    _checked_size(x, d * (x // c))
    left = np.kron(A, np.eye(x // b)) if x != b else A
    right = np.kron(B, np.eye(x // c)) if x != c else B
    return left @ right


def stp_chain(*mats) -> np.ndarray:
    """STP of several factors; the product is associative so order of grouping is free."""
    if not mats:
        raise ValueError("stp_chain needs at least one factor")
    return reduce(stp, (as_matrix(M) for M in mats))


def logical_matrix(n: int, indices: Sequence[int]) -> np.ndarray:
    """``δ_n[i_1, ..., i_k]``: the n×k matrix whose j-th column is ``δ_n^{i_j}``."""
    idx = np.asarray(indices, dtype=int)
    if idx.size and (idx.min() < 1 or idx.max() > n):
        raise ValueError(f"logical indices must lie in [1, {n}]")
    _checked_size(n, idx.size)
    M = np.zeros((n, idx.size))
    M[idx - 1, np.arange(idx.size)] = 1.0
    return M


def swap_matrix(h: int, q: int) -> np.ndarray:
    """Swap matrix ``W_[h,q]``: satisfies ``Q ⋉ H = W_[h,q] ⋉ H ⋉ Q`` for column vectors."""
    if h < 1 or q < 1:
        raise ValueError("swap_matrix needs positive dimensions")
    i = np.repeat(np.arange(1, h + 1), q)
    j = np.tile(np.arange(1, q + 1), h)
    # column (i-1)q + j is delta_{hq}^{i + (j-1)h}; columns enumerate in that order
    return logical_matrix(h * q, i + (j - 1) * h)


def order_reduce_matrix(q: int) -> np.ndarray:
    """Order-reducing matrix ``O_q = δ_{q²}[1, q+2, 2q+3, ..., q²]``."""
    if q < 1:
        raise ValueError("order_reduce_matrix needs q >= 1")
    k = np.arange(1, q + 1)
    return logical_matrix(q * q, (k - 1) * q + k)


def selector_matrix(h: int, q: int, x: int) -> np.ndarray:
    """``M_[h,q,x] = 1_hᵀ ⊗ I_q ⊗ 1_xᵀ``; picks the middle factor out of ``H ⋉ Q ⋉ X``."""
    if min(h, q, x) < 1:
        raise ValueError("selector_matrix needs positive dimensions")
    return kron(np.ones((1, h)), np.eye(q), np.ones((1, x)))


@dataclass(frozen=True)
class LogicalVector:
    """The canonical basis vector ``δ_dim^index``."""

    dim: int
    index: int

    def __post_init__(self):
        if self.dim < 1 or not 1 <= self.index <= self.dim:
            raise ValueError(f"invalid logical vector δ_{self.dim}^{self.index}")

    def dense(self) -> np.ndarray:
        v = np.zeros((self.dim, 1))
        v[self.index - 1, 0] = 1.0
        return v


def lex_encode(digits: Sequence[int], radices: Sequence[int]) -> int:
    """Lexicographic position (1-based) of ``digits`` in the product of ``radices``.

    The first digit is the most significant, which matches the STP of the
    corresponding logical vectors.
    """
    if len(digits) != len(radices):
        raise ValueError("digits and radices differ in length")
    alpha = 0
    for d, k in zip(digits, radices):
        if k < 1 or not 1 <= d <= k:
            raise ValueError(f"digit {d} outside [1, {k}]")
        alpha = alpha * k + (d - 1)
    return alpha + 1


def lex_decode(alpha: int, radices: Sequence[int]) -> tuple[int, ...]:
    total = math.prod(radices)
    if not 1 <= alpha <= total:
        raise ValueError(f"index {alpha} outside [1, {total}]")
    rem = alpha - 1
    digits = []
    for k in reversed(radices):
        rem, d = divmod(rem, k)
        digits.append(d + 1)
    return tuple(reversed(digits))


def lex_digits_table(radices: Sequence[int]) -> np.ndarray:
    """All digit tuples in lexicographic order, shape ``(∏ radices, len(radices))``, 1-based."""
    total = _checked_size(*radices) if radices else 1
    if not radices:
        return np.zeros((1, 0), dtype=np.int64)
    cols = np.unravel_index(np.arange(total), tuple(radices))
    return np.stack(cols, axis=1).astype(np.int64) + 1


@dataclass(frozen=True)
class MixedRadixIndex:
    radices: tuple[int, ...]
    digits: tuple[int, ...]

    def __post_init__(self):
        lex_encode(self.digits, self.radices)  # validates

    @property
    def alpha(self) -> int:
        return lex_encode(self.digits, self.radices)

    @classmethod
    def from_alpha(cls, alpha: int, radices: Sequence[int]) -> "MixedRadixIndex":
        radices = tuple(radices)
        return cls(radices, lex_decode(alpha, radices))


def eval_structure(L, variables: Sequence[LogicalVector]) -> float:
    """Evaluate a pseudo-logical function from its structure row ``L`` at ``variables``."""
    L = as_matrix(L)
    n = math.prod(v.dim for v in variables)
    if L.shape != (1, n):
        raise ValueError(f"structure vector has shape {L.shape}, expected (1, {n})")
    x = stp_chain(*(v.dense() for v in variables))
    return float((L @ x)[0, 0])


def inner_sum(Lf, Lg) -> float:
    """``Σ_x f(x) g(x)`` from the two structure rows."""
    Lf = as_matrix(Lf)
    Lg = as_matrix(Lg)
    if Lf.shape != Lg.shape or Lf.shape[0] != 1:
        raise ValueError(f"structure rows must share shape (1, k): {Lf.shape} vs {Lg.shape}")
    return float((Lf @ Lg.T)[0, 0])
