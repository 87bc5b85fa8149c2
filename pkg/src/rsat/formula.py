"""Exact representation and semantics of regular signed k-SAT formulas.

A formula is a conjunction of clauses; a clause is a disjunction of exactly
``k`` inequality literals ``x <= a`` or ``x >= a`` with ``a`` drawn from an
ordered truth-value set ``V`` inside the unit interval.  All thresholds are
exact rationals (`fractions.Fraction`), so comparisons, ties and ordering
are reproducible bit for bit; no floating point enters the semantics.

Truth-value sets come in three families:

* ``Finite(v)``   -- V = {u/(v-1) : u = 0..v-1}, v >= 2;
* ``Dyadic(lam)`` -- V = {u/2^lam : u = 0..2^lam}, i.e. 2^lam + 1 values;
* ``Continuous``  -- V = [0, 1].

All families are symmetric (V = 1 - V) and contain 0 and 1.

Literals store their bound directly: ``Literal(j, Rel.GE, b)`` means
``x_j >= b``.  Samplers that draw a right-hand side ``a`` for a ``>=``
relation perform the ``b = 1 - a`` flip once at sampling time, so nothing
downstream ever needs to undo an encoding.  The *innocuous* literals
``x <= 1`` and ``x >= 0`` (satisfied by every value) are rejected at
construction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .errors import EmptyDomain, MissingAssignment

Threshold = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Truth-value sets


@dataclass(frozen=True)
class Finite:
    v: int

    def __post_init__(self):
        if self.v < 2:
            raise ValueError(f"Finite truth-value set needs v >= 2, got {self.v}")


@dataclass(frozen=True)
class Dyadic:
    lam: int

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError(f"Dyadic truth-value set needs lam >= 0, got {self.lam}")


@dataclass(frozen=True)
class Continuous:
    pass


TruthValueSpec = Union[Finite, Dyadic, Continuous]

CONTINUOUS = Continuous()


def vspec_cardinality(vspec: TruthValueSpec) -> Optional[int]:
    """|V|, or None for the continuous set."""
    if isinstance(vspec, Finite):
        return vspec.v
    if isinstance(vspec, Dyadic):
        return 2**vspec.lam + 1
    return None


def vspec_values(vspec: TruthValueSpec) -> list[Fraction]:
    """All values of a finite or dyadic V, ascending."""
    if isinstance(vspec, Finite):
        return [Fraction(u, vspec.v - 1) for u in range(vspec.v)]
    if isinstance(vspec, Dyadic):
        d = 1 << vspec.lam
        return [Fraction(u, d) for u in range(d + 1)]
    raise ValueError("continuous truth-value set cannot be enumerated")


def vspec_contains(vspec: TruthValueSpec, x: Fraction) -> bool:
    if x < 0 or x > 1:
        return False
    if isinstance(vspec, Finite):
        return (x * (vspec.v - 1)).denominator == 1
    if isinstance(vspec, Dyadic):
        return (x * (1 << vspec.lam)).denominator == 1
    return True


# ---------------------------------------------------------------------------
# Literals, clauses, formulas


class Rel(enum.Enum):
    LE = "le"
    GE = "ge"

    def __repr__(self):  # noqa: D105 - compact reprs help test output
        return self.value


@dataclass(frozen=True)
class Literal:
    """Inequality literal on variable ``var`` (1-based): value REL bound."""

    var: int
    rel: Rel
    bound: Fraction

    def __post_init__(self):
        if self.var < 1:
            raise ValueError(f"variable index must be >= 1, got {self.var}")
        if not (ZERO <= self.bound <= ONE):
            raise ValueError(f"bound outside [0, 1]: {self.bound}")
        if (self.rel is Rel.LE and self.bound == ONE) or (
            self.rel is Rel.GE and self.bound == ZERO
        ):
            raise ValueError("innocuous literal (x <= 1 or x >= 0) is forbidden")

    def encoded_rhs(self) -> Fraction:
        """Right-hand side in the sampling encoding: bound for <=, 1-bound for >=.

        Always lies in V \\ {1}; the encoded side is what the monotone
        couplings rescale, bump and truncate.
        """
        return self.bound if self.rel is Rel.LE else ONE - self.bound

    def __repr__(self):
        op = "<=" if self.rel is Rel.LE else ">="
        return f"(x{self.var} {op} {self.bound})"


Clause = tuple[Literal, ...]

Interpretation = Mapping[int, Fraction]


@dataclass(frozen=True)
class Formula:
    """A regular signed k-SAT formula: conjunction of m width-k clauses.

    ``distinct_vars_per_clause`` records which sampling model produced the
    formula (True: clause variables forced distinct; False: repeats
    allowed).  It is provenance metadata and excluded from equality.
    """

    k: int
    n: int
    clauses: tuple[Clause, ...]
    vspec: TruthValueSpec
    distinct_vars_per_clause: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"clause width k must be >= 2, got {self.k}")
        if self.n < 0:
            raise ValueError(f"variable count must be >= 0, got {self.n}")
        for ci, clause in enumerate(self.clauses):
            if len(clause) != self.k:
                raise ValueError(f"clause {ci} has {len(clause)} literals, expected {self.k}")
            seen = set()
            for lit in clause:
                if not (1 <= lit.var <= self.n):
                    raise ValueError(f"clause {ci}: variable x{lit.var} outside 1..{self.n}")
                if not vspec_contains(self.vspec, lit.bound):
                    raise ValueError(f"clause {ci}: bound {lit.bound} not in V of {self.vspec}")
                if self.distinct_vars_per_clause:
                    if lit.var in seen:
                        raise ValueError(f"clause {ci}: repeated variable x{lit.var}")
                    seen.add(lit.var)

    @property
    def m(self) -> int:
        return len(self.clauses)

    def variables(self) -> set[int]:
        """Indices of variables that occur in at least one slot."""
        return {lit.var for clause in self.clauses for lit in clause}


# ---------------------------------------------------------------------------
# Semantics


def eval_literal(lit: Literal, value: Fraction) -> bool:
    """Closed-half-line semantics: boundary values satisfy the literal."""
    if lit.rel is Rel.LE:
        return value <= lit.bound
    return value >= lit.bound


def eval_formula(f: Formula, interp: Interpretation) -> bool:
    """True iff every clause has at least one satisfied literal.

    Raises MissingAssignment when any variable occurring in the formula
    has no value, even if short-circuiting would never read it.
    """
    for clause in f.clauses:
        for lit in clause:
            if lit.var not in interp:
                raise MissingAssignment(f"no value for variable x{lit.var}")
    for clause in f.clauses:
        sat = False
        for lit in clause:
            if eval_literal(lit, interp[lit.var]):
                sat = True
                break
        if not sat:
            return False
    return True


def signs_disjoint(l1: Literal, l2: Literal) -> bool:
    """True iff no value of V satisfies both literals.

    With closed half-lines this happens exactly when the relations differ
    and the >=-bound strictly exceeds the <=-bound; a tie (equal bounds) is
    satisfied by the shared boundary point.
    """
    if l1.rel is l2.rel:
        return False
    le, ge = (l1, l2) if l1.rel is Rel.LE else (l2, l1)
    return ge.bound > le.bound


def complement_literal(lit: Literal, domain: Sequence[Fraction]) -> Optional[Literal]:
    """Weakest literal over ``domain`` disjoint from ``lit``.

    ``domain`` must be the sorted candidate value list for the literal's
    variable.  Returns None when every domain value satisfies ``lit`` (then
    no disjoint literal over the domain exists).
    """
    if not domain:
        raise EmptyDomain(f"empty candidate domain for x{lit.var}")
    if lit.rel is Rel.LE:
        for value in domain:
            if value > lit.bound:
                return Literal(lit.var, Rel.GE, value)
        return None
    for value in reversed(domain):
        if value < lit.bound:
            return Literal(lit.var, Rel.LE, value)
    return None


def occurrence_profile(f: Formula) -> list[int]:
    """Slot counts per variable: entry j-1 is the number of slots holding x_j.

    The counts always sum to k*m.
    """
    counts = [0] * f.n
    for clause in f.clauses:
        for lit in clause:
            counts[lit.var - 1] += 1
    return counts
