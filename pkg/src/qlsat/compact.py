"""Shell-space simulation of fully constrained 1-SAT in O(n**2) per step.

When every variable carries exactly one 1-SAT clause, an assignment's
conflict count is its Hamming distance from the unique solution, and both
phase policies depend only on that count.  Amplitudes therefore stay
constant on the "shells" of equal conflict count and the 2**n dynamics
collapses to n + 1 numbers.  The shell-space mixing matrix is

    V[b, c] = sum_d u_d * comb(b, (c+b-d)/2) * comb(n-b, (c-b+d)/2)

which factors as V = W @ diag(d_sign) @ W with W[b, c] = S(n, c, b)/sqrt(N)
and d_sign[b] = +1 for b <= n/2, else -1.

The same collapse works for 1-SAT with m < n constrained variables
(shells indexed 0..m); the diagonal then keeps the full problem's weight
threshold floor(n/2), which makes V the identity whenever m <= n/2.

Internally the engine evolves scaled amplitudes phi_c = psi_c * sqrt(w_c),
where w_c = comb(m, c) * 2**(n-m) counts the assignments in shell c.  In
those coordinates the mixing matrix is orthogonal with entries bounded by
one, so norms survive to n in the thousands; the raw per-assignment
amplitudes psi_c are recovered on demand.  All combinatorial integers are
exact (Python big-ints) and are rounded to float only at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

import numpy as np

from .engine import RunResult, select_best
from .mixer import MixerSpec, kernel_rows, u_numerators
from .phases import PolicySpec, resolve_policy, signs_for_counts


@dataclass
class CompactState:
    """Per-assignment amplitudes by conflict count, for shells 0..m."""

    n: int
    m: int
    amps: np.ndarray

    def shell_norm(self) -> float:
        """Total probability: sum over shells of w_c * amps[c]**2."""
        return float(np.sum(shell_weights(self.n, self.m) * self.amps**2))


def shell_weights(n: int, m: int) -> np.ndarray:
    """Number of assignments in each shell: comb(m, c) * 2**(n-m)."""
    return np.array([float(comb(m, c) << (n - m)) for c in range(m + 1)])


def initial_compact(n: int, m: int | None = None) -> CompactState:
    """Uniform superposition collapsed to shells."""
    m = n if m is None else m
    return CompactState(n, m, np.full(m + 1, math.sqrt(2.0**-n)))


def _int_ratio_sqrt(num: int, den: int) -> float:
    """sqrt(num/den) for non-negative exact integers, one rounding each."""
    return math.sqrt(num / den)


def build_d_max(n: int) -> np.ndarray:
    """Transform-side signs: +1 for weights up to n/2, -1 above."""
    return np.where(np.arange(n + 1) <= n // 2, 1.0, -1.0)


def build_w_max(n: int) -> np.ndarray:
    """Shell transform matrix, W[b, c] = S(n, c, b) / sqrt(2**n).

    Entries are exact integers divided by the exact power of two, so each
    value is correctly rounded (odd n costs one extra rounding for the
    residual sqrt(2)).
    """
    w = np.empty((n + 1, n + 1))
    half = 1 << (n // 2)
    odd = math.sqrt(2.0) if n % 2 else 1.0
    for c, row in enumerate(kernel_rows(n)):
        for b in range(n + 1):
            w[b, c] = (row[b] / half) / odd
    return w


def build_v_max(n: int, u: np.ndarray | None = None) -> np.ndarray:
    """Shell mixing matrix from the distance-coefficient sum.

    With ``u`` omitted the default-threshold coefficients are used and the
    whole sum is exact integer arithmetic with a single final division.
    Passing an explicit coefficient vector falls back to float terms.
    """
    pascal = [[comb(r, x) for x in range(r + 1)] for r in range(n + 1)]
    numerators = None
    if u is None:
        numerators = u_numerators(MixerSpec(n))
    v = np.empty((n + 1, n + 1))
    for b in range(n + 1):
        row_b, row_nb = pascal[b], pascal[n - b]
        for c in range(n + 1):
            lo = abs(b - c)
            hi = min(b + c, 2 * n - b - c)
            acc = 0 if numerators is not None else 0.0
            for d in range(lo, hi + 1, 2):
                ways = row_b[(c + b - d) // 2] * row_nb[(c - b + d) // 2]
                acc += (numerators[d] if numerators is not None else u[d]) * ways
            v[b, c] = acc / (1 << n) if numerators is not None else acc
    return v


def _scaled_shell_transform(m: int) -> np.ndarray:
    """Orthogonal form of the shell transform over m constrained variables.

    T[b, c] = S(m, c, b) * sqrt(comb(m, b) / (comb(m, c) * 2**m)); entries
    are bounded by one, so the exact integer ratio under the square root
    is representable at any m.
    """
    t = np.empty((m + 1, m + 1))
    binom = [comb(m, b) for b in range(m + 1)]
    scale = 1 << m
    for c, row in enumerate(kernel_rows(m)):
        den = binom[c] * scale
        for b in range(m + 1):
            k = row[b]
            t[b, c] = math.copysign(_int_ratio_sqrt(k * k * binom[b], den), k)
    return t


def build_v_scaled(n: int, m: int | None = None) -> np.ndarray:
    """Shell mixing matrix in scaled (orthonormal) coordinates.

    Equal to G @ V @ G^-1 with G = diag(sqrt(shell weights)); orthogonal,
    entries in [-1, 1].  For m < n the diagonal threshold still comes from
    the full problem size n.
    """
    m = n if m is None else m
    t = _scaled_shell_transform(m)
    d_sign = np.where(np.arange(m + 1) <= n // 2, 1.0, -1.0)
    return (t * d_sign) @ t


def compact_histogram(state: CompactState) -> np.ndarray:
    """Probability by conflict count: entry c is w_c * amps[c]**2."""
    return shell_weights(state.n, state.m) * state.amps**2


def compact_run(
    n: int,
    policy: PolicySpec,
    j_max: int | None = None,
    m: int | None = None,
    record_histograms: bool = False,
    record_states: bool = False,
) -> RunResult:
    """Shell-space trial on the planted 1-SAT instance with m constraints.

    Matches the full engine on the same instance step for step; solution
    probability is the squared scaled amplitude of the zero-conflict
    shell.  m defaults to n (the fully constrained case).
    """
    m = n if m is None else m
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    resolved = resolve_policy(policy, n=n, m=m, k=1)
    steps = resolved.max_steps if j_max is None else min(j_max, resolved.max_steps)

    counts = np.arange(m + 1)
    v = build_v_scaled(n, m)
    # scaled initial state: phi_c = sqrt(w_c / 2**n) = sqrt(comb(m,c) / 2**m)
    phi = np.array([math.sqrt(comb(m, c) / (1 << m)) for c in range(m + 1)])
    g = np.sqrt(shell_weights(n, m))  # phi = g * psi

    probs = [float(phi[0] ** 2)]
    hists = [phi**2] if record_histograms else None
    states = [CompactState(n, m, phi / g)] if record_states else None
    for j in range(1, steps + 1):
        signs = signs_for_counts(resolved, counts, counts, j)
        phi = v @ (signs * phi)
        probs.append(float(phi[0] ** 2))
        if record_histograms:
            hists.append(phi**2)
        if record_states:
            states.append(CompactState(n, m, phi / g))

    best_j, best_cost = select_best(probs)
    return RunResult(
        engine="compact",
        p_soln_by_step=probs,
        best_j=best_j,
        best_cost=best_cost,
        histograms=hists,
        states=states,
    )
