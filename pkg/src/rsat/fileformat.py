"""Bit-exact text formats for formulas and certificates.

Formula files::

    c free-form comment
    p rsat <k> <n> <m> <vspec>
    <var>:<le|ge>:<num>/<den>  ...   (exactly k literal tokens per line,
    ...                               exactly m clause lines)

with ``<vspec>`` one of ``finite:<v>``, ``dyadic:<lambda>``,
``continuous``.  Fractions must be in lowest terms with positive
denominator; innocuous literals, out-of-range variables and wrong-arity
clauses are rejected with the offending line number.

Certificate files::

    cert bicycle <ell> <i0> <i1>          cert snake <ell>
    <clause_index> <lit> <lit>            <clause_index> <lit> <lit>
    ... (ell+1 chain lines, clause indices 0-based into the formula)

Rendering then parsing reproduces every object exactly (the formula's
model-provenance flag is recomputed, not stored, and is excluded from
equality).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .certificates import Bicycle, Snake
from .errors import ParseError
from .formula import (
    CONTINUOUS,
    Clause,
    Dyadic,
    Finite,
    Formula,
    Literal,
    Rel,
    TruthValueSpec,
)


def vspec_to_token(vspec: TruthValueSpec) -> str:
    if isinstance(vspec, Finite):
        return f"finite:{vspec.v}"
    if isinstance(vspec, Dyadic):
        return f"dyadic:{vspec.lam}"
    return "continuous"


def vspec_from_token(token: str, line: int | None = None) -> TruthValueSpec:
    if token == "continuous":
        return CONTINUOUS
    kind, sep, arg = token.partition(":")
    if sep:
        try:
            value = int(arg)
        except ValueError:
            raise ParseError(f"bad truth-value-set parameter {arg!r}", line) from None
        try:
            if kind == "finite":
                return Finite(value)
            if kind == "dyadic":
                return Dyadic(value)
        except ValueError as exc:
            raise ParseError(str(exc), line) from None
    raise ParseError(f"unknown truth-value set {token!r}", line)


def literal_to_token(lit: Literal) -> str:
    return f"{lit.var}:{lit.rel.value}:{lit.bound.numerator}/{lit.bound.denominator}"


def literal_from_token(token: str, line: int | None = None) -> Literal:
    parts = token.split(":")
    if len(parts) != 3:
        raise ParseError(f"bad literal token {token!r}", line)
    var_s, rel_s, frac_s = parts
    try:
        var = int(var_s)
    except ValueError:
        raise ParseError(f"bad variable index {var_s!r}", line) from None
    if rel_s not in ("le", "ge"):
        raise ParseError(f"bad relation {rel_s!r} (expected le or ge)", line)
    num_s, sep, den_s = frac_s.partition("/")
    if not sep:
        raise ParseError(f"bad fraction {frac_s!r} (expected num/den)", line)
    try:
        num, den = int(num_s), int(den_s)
    except ValueError:
        raise ParseError(f"bad fraction {frac_s!r}", line) from None
    if den <= 0:
        raise ParseError(f"fraction denominator must be positive in {frac_s!r}", line)
    if num < 0:
        raise ParseError(f"fraction must be nonnegative in {frac_s!r}", line)
    if math.gcd(num, den) != 1:
        raise ParseError(f"fraction {frac_s!r} is not in lowest terms", line)
    try:
        return Literal(var, Rel(rel_s), Fraction(num, den))
    except ValueError as exc:
        raise ParseError(str(exc), line) from None


# ---------------------------------------------------------------------------
# Formulas


def render_formula(f: Formula) -> str:
    lines = [f"p rsat {f.k} {f.n} {f.m} {vspec_to_token(f.vspec)}"]
    for clause in f.clauses:
        lines.append(" ".join(literal_to_token(lit) for lit in clause))
    return "\n".join(lines) + "\n"


def parse_formula(text: str) -> Formula:
    header = None
    clauses: list[Clause] = []
    k = n = m = 0
    vspec: TruthValueSpec = CONTINUOUS
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c ") or line == "c":
            continue
        if header is None:
            fields = line.split()
            if len(fields) != 6 or fields[0] != "p" or fields[1] != "rsat":
                raise ParseError("expected header 'p rsat <k> <n> <m> <vspec>'", lineno)
            try:
                k, n, m = int(fields[2]), int(fields[3]), int(fields[4])
            except ValueError:
                raise ParseError("header k, n, m must be integers", lineno) from None
            vspec = vspec_from_token(fields[5], lineno)
            header = lineno
            continue
        tokens = line.split()
        if len(tokens) != k:
            raise ParseError(f"clause has {len(tokens)} literals, expected {k}", lineno)
        lits = []
        for token in tokens:
            lit = literal_from_token(token, lineno)
            if not (1 <= lit.var <= n):
                raise ParseError(f"variable x{lit.var} outside 1..{n}", lineno)
            lits.append(lit)
        clauses.append(tuple(lits))
    if header is None:
        raise ParseError("missing 'p rsat' header")
    if len(clauses) != m:
        raise ParseError(f"expected {m} clause lines, found {len(clauses)}")
    distinct = all(len({lit.var for lit in cl}) == len(cl) for cl in clauses)
    try:
        return Formula(k, n, tuple(clauses), vspec, distinct)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# Certificates


def render_certificate(cert: Bicycle | Snake) -> str:
    if isinstance(cert, Bicycle):
        lines = [f"cert bicycle {cert.ell} {cert.i0} {cert.i1}"]
        for i in range(cert.ell + 1):
            lines.append(
                f"{cert.clause_indices[i]} "
                f"{literal_to_token(cert.wf(i))} {literal_to_token(cert.wt(i + 1))}"
            )
    else:
        lines = [f"cert snake {cert.ell}"]
        for i in range(cert.ell + 1):
            lead, trail = cert.pairs[i]
            lines.append(
                f"{cert.clause_indices[i]} "
                f"{literal_to_token(lead)} {literal_to_token(trail)}"
            )
    return "\n".join(lines) + "\n"


def _parse_chain_lines(entries: list[tuple[int, str]], expected: int):
    if len(entries) != expected:
        raise ParseError(f"expected {expected} chain lines, found {len(entries)}")
    chain = []
    for lineno, line in entries:
        fields = line.split()
        if len(fields) != 3:
            raise ParseError("expected '<clause_index> <lit> <lit>'", lineno)
        try:
            ci = int(fields[0])
        except ValueError:
            raise ParseError(f"bad clause index {fields[0]!r}", lineno) from None
        lead = literal_from_token(fields[1], lineno)
        trail = literal_from_token(fields[2], lineno)
        chain.append((ci, lead, trail))
    return chain


def parse_certificate(text: str) -> Bicycle | Snake:
    header: list[str] | None = None
    header_line = 0
    entries: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c ") or line == "c":
            continue
        if header is None:
            header = line.split()
            header_line = lineno
        else:
            entries.append((lineno, line))
    if header is None:
        raise ParseError("missing 'cert' header")
    if len(header) < 2 or header[0] != "cert" or header[1] not in ("bicycle", "snake"):
        raise ParseError("expected header 'cert bicycle ...' or 'cert snake ...'", header_line)

    if header[1] == "bicycle":
        if len(header) != 5:
            raise ParseError("expected 'cert bicycle <ell> <i0> <i1>'", header_line)
        try:
            ell, i0, i1 = int(header[2]), int(header[3]), int(header[4])
        except ValueError:
            raise ParseError("bicycle header fields must be integers", header_line) from None
        chain = _parse_chain_lines(entries, ell + 1)
        literals = [chain[0][1]]
        for i in range(1, ell + 1):
            literals.append(chain[i - 1][2])
            literals.append(chain[i][1])
        literals.append(chain[ell][2])
        try:
            return Bicycle(ell, tuple(literals), i0, i1, tuple(c[0] for c in chain))
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    if len(header) != 3:
        raise ParseError("expected 'cert snake <ell>'", header_line)
    try:
        ell = int(header[2])
    except ValueError:
        raise ParseError("snake header field must be an integer", header_line) from None
    chain = _parse_chain_lines(entries, ell + 1)
    b = tuple(entry[1].var for entry in chain[1:])
    try:
        return Snake(
            ell,
            b,
            tuple((lead, trail) for _, lead, trail in chain),
            tuple(c[0] for c in chain),
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from None
