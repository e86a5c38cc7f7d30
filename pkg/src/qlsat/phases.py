"""Step-dependent phase choices that steer amplitude toward solutions.

A phase vector holds the factor (+1 or -1) applied to each assignment's
amplitude before mixing.  Two policies are provided:

* ``simple-threshold``: at step j, invert assignments with strictly more
  than c_start - (j - 1) conflicts.  c_start defaults to the exact mean
  conflict count m / 2**k and the threshold comparison is exact rational
  arithmetic.  After floor(c_start) + 1 steps the threshold is negative,
  every assignment is inverted, and relative amplitudes freeze, so that
  is the step cap.
* ``neighborhood``: phases depend on how many single-flip neighbors
  improve an assignment.  At step 1, invert when |n_start - n_better|
  mod 4 is 2 or 3 (matching the sign of the mixing coefficient at that
  distance); at step j > 1, keep +1 only when n_start - n_better is
  j - 1 or j - 2.  n_start defaults to floor(n/2) and the cap is
  n_start + 1 steps.  Validated against reference dynamics for even n;
  odd n runs the same literal rule.

Phases are functions of the instance and the step index only, never of
the evolving amplitudes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

import numpy as np

from .sat import DEFAULT_FULL_LIMIT, SatProblem, conflict_vector, n_better_vector

KIND_SIMPLE = "simple-threshold"
KIND_NEIGHBORHOOD = "neighborhood"
POLICY_KINDS = (KIND_SIMPLE, KIND_NEIGHBORHOOD)


@dataclass(frozen=True)
class PolicySpec:
    """Policy kind plus optional overrides of its instance-derived defaults."""

    kind: str
    c_start: Fraction | None = None
    n_start: int | None = None
    max_steps: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in POLICY_KINDS:
            raise ValueError(f"unknown policy kind {self.kind!r}")
        if self.c_start is not None:
            object.__setattr__(self, "c_start", Fraction(self.c_start))
            if self.c_start < 0:
                raise ValueError("c_start must be non-negative")
        if self.n_start is not None and self.n_start < 0:
            raise ValueError("n_start must be non-negative")
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")


@dataclass(frozen=True)
class ResolvedPolicy:
    """A PolicySpec bound to instance parameters, with the step cap fixed."""

    kind: str
    max_steps: int
    c_start: Fraction | None = None
    n_start: int | None = None


def step_cap(kind: str, c_start: Fraction | None, n_start: int | None) -> int:
    if kind == KIND_SIMPLE:
        return floor(c_start) + 1
    return n_start + 1


def resolve_policy(spec: PolicySpec, n: int, m: int, k: int) -> ResolvedPolicy:
    """Fill in instance-derived defaults and validate the step cap."""
    c_start = n_start = None
    if spec.kind == KIND_SIMPLE:
        c_start = spec.c_start if spec.c_start is not None else Fraction(m, 1 << k)
    else:
        n_start = spec.n_start if spec.n_start is not None else n // 2
    cap = step_cap(spec.kind, c_start, n_start)
    max_steps = spec.max_steps if spec.max_steps is not None else cap
    if max_steps > cap:
        raise ValueError(
            f"max_steps={max_steps} exceeds the {spec.kind} policy cap of {cap}"
        )
    return ResolvedPolicy(spec.kind, max_steps, c_start=c_start, n_start=n_start)


def simple_signs(conflicts: np.ndarray, j: int, c_start: Fraction) -> np.ndarray:
    """Phase vector for step j: -1 where conflicts > c_start - (j - 1).

    The comparison is exact: with threshold p/q, invert where
    conflicts * q > p.
    """
    if j < 1:
        raise ValueError("steps are numbered from 1")
    t = c_start - (j - 1)
    invert = np.asarray(conflicts) * t.denominator > t.numerator
    return np.where(invert, -1.0, 1.0)


def neighborhood_signs(n_better: np.ndarray, j: int, n_start: int) -> np.ndarray:
    """Phase vector for step j of the neighborhood policy."""
    if j < 1:
        raise ValueError("steps are numbered from 1")
    nb = np.asarray(n_better)
    if j == 1:
        invert = np.isin(np.abs(n_start - nb) % 4, (2, 3))
        return np.where(invert, -1.0, 1.0)
    keep = np.isin(n_start - nb, (j - 1, j - 2))
    return np.where(keep, 1.0, -1.0)


def signs_for_counts(
    policy: ResolvedPolicy, conflicts: np.ndarray, n_better: np.ndarray, j: int
) -> np.ndarray:
    if policy.kind == KIND_SIMPLE:
        return simple_signs(conflicts, j, policy.c_start)
    return neighborhood_signs(n_better, j, policy.n_start)


def phase_schedule(
    problem: SatProblem,
    spec: PolicySpec,
    j_max: int | None = None,
    limit: int | None = DEFAULT_FULL_LIMIT,
) -> list[np.ndarray]:
    """Phase vectors for steps 1..min(j_max, cap) over all 2**n assignments."""
    policy = resolve_policy(spec, problem.n, problem.m, problem.k)
    steps = policy.max_steps if j_max is None else min(j_max, policy.max_steps)
    conflicts = conflict_vector(problem, limit)
    n_better = None
    if policy.kind == KIND_NEIGHBORHOOD:
        n_better = n_better_vector(problem, limit)
    return [signs_for_counts(policy, conflicts, n_better, j) for j in range(1, steps + 1)]
