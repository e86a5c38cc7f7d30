"""Bit-level k-SAT representation and conflict statistics.

An assignment of n boolean variables is an integer in [0, 2**n): variable
V_i lives in bit i-1, so V_1 is the least significant bit.  A clause is
stored as the unique bit pattern that falsifies it, which makes conflict
tests single AND/compare operations and keeps instances compact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

# Full-state operations allocate 2**n vectors; refuse past this point
# unless the caller raises the limit explicitly.
DEFAULT_FULL_LIMIT = 26


class CapacityError(Exception):
    """Raised when a dense or full-state operation exceeds its size limit."""


def ones(s: int) -> int:
    """Number of 1-bits in the assignment."""
    return int(s).bit_count()


def hamming(r: int, s: int) -> int:
    """Hamming distance between two assignments."""
    return int(r ^ s).bit_count()


def check_full_capacity(n: int, limit: int | None = DEFAULT_FULL_LIMIT) -> None:
    """Raise CapacityError if a 2**n-sized computation is over the limit."""
    if limit is not None and n > limit:
        raise CapacityError(
            f"full-state operation needs 2**{n} entries; limit is n <= {limit}"
        )


@dataclass(frozen=True)
class ConflictPattern:
    """A clause, stored as the single assignment pattern it forbids.

    ``mask`` selects the k variables in the clause and ``value`` gives the
    bit values (within the mask) that falsify it.  An assignment s
    conflicts with the clause exactly when (s & mask) == value.
    """

    mask: int
    value: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.value < 0:
            raise ValueError("mask and value must be non-negative")
        if self.value & ~self.mask:
            raise ValueError("value has bits outside the mask")

    @property
    def k(self) -> int:
        return self.mask.bit_count()

    def conflicts_with(self, s: int) -> bool:
        return (s & self.mask) == self.value


@dataclass(frozen=True)
class SatProblem:
    """A k-SAT instance over n variables with m distinct clauses."""

    n: int
    k: int
    clauses: tuple[ConflictPattern, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.n:
            raise ValueError(f"need 0 <= k <= n, got k={self.k}, n={self.n}")
        if len(set(self.clauses)) != len(self.clauses):
            raise ValueError("duplicate clauses")
        for c in self.clauses:
            if c.mask >> self.n:
                raise ValueError(f"clause {c} uses variables beyond n={self.n}")
            if c.k != self.k:
                raise ValueError(f"clause {c} has {c.k} variables, expected k={self.k}")

    @property
    def m(self) -> int:
        return len(self.clauses)


def count_conflicts(problem: SatProblem, s: int) -> int:
    """Number of clauses the assignment falsifies."""
    return sum(1 for c in problem.clauses if c.conflicts_with(s))


def is_solution(problem: SatProblem, s: int) -> bool:
    return count_conflicts(problem, s) == 0


def conflict_vector(
    problem: SatProblem, limit: int | None = DEFAULT_FULL_LIMIT
) -> np.ndarray:
    """Conflict counts for all 2**n assignments, indexed by assignment.

    Returns an int64 vector of length 2**n.  Raises CapacityError when n
    exceeds ``limit`` (pass None to disable the guard).
    """
    check_full_capacity(problem.n, limit)
    idx = np.arange(1 << problem.n, dtype=np.int64)
    counts = np.zeros(1 << problem.n, dtype=np.int64)
    for c in problem.clauses:
        counts += (idx & c.mask) == c.value
    return counts


def avg_conflicts(problem: SatProblem) -> Fraction:
    """Mean conflict count over all assignments, exactly m / 2**k."""
    return Fraction(problem.m, 1 << problem.k)


def n_better(problem: SatProblem, s: int) -> int:
    """Number of single-bit-flip neighbors with strictly fewer conflicts."""
    base = count_conflicts(problem, s)
    return sum(
        1 for i in range(problem.n) if count_conflicts(problem, s ^ (1 << i)) < base
    )


def n_better_vector(
    problem: SatProblem, limit: int | None = DEFAULT_FULL_LIMIT
) -> np.ndarray:
    """n_better for all 2**n assignments, indexed by assignment."""
    counts = conflict_vector(problem, limit)
    idx = np.arange(1 << problem.n, dtype=np.int64)
    better = np.zeros(1 << problem.n, dtype=np.int64)
    for i in range(problem.n):
        better += counts[idx ^ (1 << i)] < counts
    return better


def solution_indices(
    problem: SatProblem, limit: int | None = DEFAULT_FULL_LIMIT
) -> np.ndarray:
    """Indices of all satisfying assignments (by exhaustive evaluation)."""
    return np.flatnonzero(conflict_vector(problem, limit) == 0)


# --- DIMACS CNF interchange -------------------------------------------------
#
# Literal +i means V_i true, -i means V_i false.  A clause is falsified by
# the assignment that sets every literal false, so +i contributes a 0 bit
# and -i a 1 bit to the falsifying pattern.


def clause_from_literals(literals: list[int]) -> ConflictPattern:
    """Build the falsifying pattern for a DIMACS-style literal list."""
    mask = 0
    value = 0
    for lit in literals:
        if lit == 0:
            raise ValueError("literal 0 is reserved as the clause terminator")
        bit = 1 << (abs(lit) - 1)
        if mask & bit:
            raise ValueError(f"variable {abs(lit)} repeats within a clause")
        mask |= bit
        if lit < 0:
            value |= bit
    return ConflictPattern(mask, value)


def clause_to_literals(clause: ConflictPattern) -> list[int]:
    """Inverse of clause_from_literals, variables in increasing order."""
    literals = []
    mask = clause.mask
    while mask:
        bit = mask & -mask
        i = bit.bit_length()
        literals.append(-i if clause.value & bit else i)
        mask ^= bit
    return literals


def to_dimacs(problem: SatProblem) -> str:
    lines = [f"p cnf {problem.n} {problem.m}"]
    for c in problem.clauses:
        lines.append(" ".join(str(lit) for lit in clause_to_literals(c)) + " 0")
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> SatProblem:
    """Parse DIMACS CNF into a SatProblem.

    All clauses must have the same width k, with no repeated variables in
    a clause and no duplicate clauses; anything else is rejected because
    the simulator's statistics assume a uniform-k instance.
    """
    n = None
    declared_m = None
    clauses: list[ConflictPattern] = []
    pending: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise ValueError(f"bad problem line: {line!r}")
            n, declared_m = int(fields[2]), int(fields[3])
            continue
        if n is None:
            raise ValueError("clause before 'p cnf' header")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(clause_from_literals(pending))
                pending = []
            else:
                if abs(lit) > n:
                    raise ValueError(f"literal {lit} out of range for n={n}")
                pending.append(lit)
    if pending:
        raise ValueError("unterminated clause at end of file")
    if n is None:
        raise ValueError("missing 'p cnf' header")
    if declared_m is not None and declared_m != len(clauses):
        raise ValueError(f"header declares {declared_m} clauses, found {len(clauses)}")
    widths = {c.k for c in clauses}
    if len(widths) > 1:
        raise ValueError(f"mixed clause widths {sorted(widths)}; need uniform k")
    k = widths.pop() if widths else 0
    return SatProblem(n=n, k=k, clauses=tuple(clauses))
