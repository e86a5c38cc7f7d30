"""Hamming-distance mixing operator and its fast transform implementation.

The mixing matrix U over 2**n assignments has entries that depend only on
the Hamming distance between assignments: U[r,s] = u_d with d = |r ^ s|.
It diagonalizes in the Walsh-Hadamard basis, U = (1/N) * Wh @ diag(tau) @ Wh
where Wh[r,s] = (-1)^{|r & s|} is the unnormalized transform, N = 2**n, and
tau depends only on the Hamming weight h of the index: +1 for h <= alpha,
-1 above.  The default threshold alpha = n // 2; alpha = 0 reduces U to the
diffusion operator of unstructured amplitude search.

Weight-h transform coefficients enter through the integer kernel

    S(n, h, d) = sum_z (-1)**z * comb(d, z) * comb(n - d, h - z)

with u_d = (1/N) * sum_h tau_h * S(n, h, d).  All integer work is exact;
the single division by N happens last.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .sat import CapacityError

# Dense 2**n x 2**n matrices are for oracle checks only.
DEFAULT_DENSE_LIMIT = 12


@dataclass(frozen=True)
class MixerSpec:
    """Mixing operator parameters: problem size n and weight threshold alpha."""

    n: int
    alpha: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.alpha is None:
            object.__setattr__(self, "alpha", self.n // 2)
        if not 0 <= self.alpha <= self.n:
            raise ValueError(f"need 0 <= alpha <= n, got alpha={self.alpha}")

    def tau_vector(self) -> np.ndarray:
        """Signs tau_h for h = 0..n: +1 up to alpha, -1 beyond."""
        h = np.arange(self.n + 1)
        return np.where(h <= self.alpha, 1.0, -1.0)


def s_coefficient(n: int, h: int, d: int) -> int:
    """Exact transform kernel S(n, h, d)."""
    if not (0 <= h <= n and 0 <= d <= n):
        raise ValueError(f"need 0 <= h, d <= n, got h={h}, d={d}, n={n}")
    lo = max(0, h - (n - d))
    hi = min(d, h)
    return sum(
        (-1) ** z * comb(d, z) * comb(n - d, h - z) for z in range(lo, hi + 1)
    )


def kernel_rows(n: int):
    """Yield exact integer rows S(n, h, 0..n) for h = 0, 1, ..., n.

    Uses the three-term recurrence
        (h+1) S(n, h+1, d) = (n - 2d) S(n, h, d) - (n - h + 1) S(n, h-1, d)
    so the whole table streams in O(n) big-integer space.
    """
    prev = [1] * (n + 1)
    yield prev
    if n == 0:
        return
    cur = [n - 2 * d for d in range(n + 1)]
    yield cur
    for h in range(1, n):
        nxt = [
            ((n - 2 * d) * cur[d] - (n - h + 1) * prev[d]) // (h + 1)
            for d in range(n + 1)
        ]
        prev, cur = cur, nxt
        yield cur


def u_numerators(spec: MixerSpec) -> list[int]:
    """Exact integers 2**n * u_d for d = 0..n."""
    n = spec.n
    totals = [0] * (n + 1)
    for h, row in enumerate(kernel_rows(n)):
        sign = 1 if h <= spec.alpha else -1
        for d in range(n + 1):
            totals[d] += sign * row[d]
    return totals


def u_coefficients(spec: MixerSpec) -> np.ndarray:
    """Mixing coefficients u_d for d = 0..n as float64."""
    scale = 1 << spec.n
    return np.array([t / scale for t in u_numerators(spec)])


@lru_cache(maxsize=4)
def popcounts(n: int) -> np.ndarray:
    """Hamming weights of 0..2**n-1 (read-only uint8 table)."""
    pc = np.zeros(1 << n, dtype=np.uint8)
    for i in range(n):
        half = 1 << i
        pc[half : 2 * half] = pc[:half] + 1
    pc.setflags(write=False)
    return pc


def fwht(x: np.ndarray, inplace: bool = False) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform, iterative butterflies.

    Satisfies fwht(fwht(x)) == len(x) * x.  O(n * 2**n) time.
    """
    a = np.asarray(x, dtype=np.float64)
    if a.ndim != 1 or a.size == 0 or a.size & (a.size - 1):
        raise ValueError("length must be a power of two")
    if not inplace:
        a = a.copy()
    h = 1
    while h < a.size:
        pairs = a.reshape(-1, 2 * h)
        top = pairs[:, :h] + pairs[:, h:]
        bot = pairs[:, :h] - pairs[:, h:]
        pairs[:, :h] = top
        pairs[:, h:] = bot
        h *= 2
    return a


def apply_u(spec: MixerSpec, x: np.ndarray) -> np.ndarray:
    """U @ x via transform, sign flip on high-weight components, transform.

    The 1/N normalization is applied once, after the second transform.
    """
    if len(x) != 1 << spec.n:
        raise ValueError(f"state length {len(x)} does not match n={spec.n}")
    y = fwht(x)
    tau = spec.tau_vector()[popcounts(spec.n)]
    y *= tau
    y = fwht(y, inplace=True)
    y /= 1 << spec.n
    return y


def dense_w_hat(n: int, limit: int | None = DEFAULT_DENSE_LIMIT) -> np.ndarray:
    """Dense unnormalized transform matrix, (-1)**|r & s|.  Oracle use only."""
    if limit is not None and n > limit:
        raise CapacityError(f"dense matrix needs 4**{n} entries; limit is n <= {limit}")
    idx = np.arange(1 << n)
    overlap = popcounts(n)[idx[:, None] & idx[None, :]]
    return np.where(overlap & 1, -1.0, 1.0)


def dense_u(spec: MixerSpec, limit: int | None = DEFAULT_DENSE_LIMIT) -> np.ndarray:
    """Dense mixing matrix U[r,s] = u_{|r ^ s|}.  Oracle use only."""
    if limit is not None and spec.n > limit:
        raise CapacityError(
            f"dense matrix needs 4**{spec.n} entries; limit is n <= {limit}"
        )
    idx = np.arange(1 << spec.n)
    dist = popcounts(spec.n)[idx[:, None] ^ idx[None, :]]
    return u_coefficients(spec)[dist]
