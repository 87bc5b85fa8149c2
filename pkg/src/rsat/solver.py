"""Satisfiability deciders.

Two routes, deliberately independent so they can cross-validate:

* :func:`solve_complete` -- backtracking with unit propagation over the
  finite candidate domains.  Restricting each variable to the bounds of
  its own literals is sound and complete: any satisfying interpretation
  can be slid, variable by variable, onto an endpoint of the interval cut
  out by its satisfied literals, and those endpoints are literal bounds.
  Works for every k; exponential worst case, intended for oracle scale.

* :func:`solve_2rsat_scc` -- for k = 2, strongly connected components of
  the implication digraph whose nodes are the formula's literals plus
  their domain-complements.  UNSAT iff some literal shares a component
  with its complement.  Linear-plus-sorting time.

Both return witnesses that are *tight*: every assigned value is a bound of
a literal on that variable (0 for variables that do not occur).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ResourceLimit, WrongArity
from .formula import ZERO, Formula, Literal, Rel, eval_formula

DEFAULT_NODE_BUDGET = 5_000_000
DEFAULT_COUNT_BUDGET = 2_000_000


@dataclass(frozen=True)
class SolveResult:
    sat: bool
    witness: Optional[dict[int, Fraction]] = None

    def __repr__(self):
        return "SAT" if self.sat else "UNSAT"


def candidate_domains(f: Formula) -> dict[int, list[Fraction]]:
    """Per-variable sorted candidate values: the bounds of the variable's own
    literals, deduplicated; [0] for variables without occurrences."""
    bounds: dict[int, set[Fraction]] = {}
    for clause in f.clauses:
        for lit in clause:
            bounds.setdefault(lit.var, set()).add(lit.bound)
    return {
        var: sorted(bounds[var]) if var in bounds else [ZERO]
        for var in range(1, f.n + 1)
    }


# ---------------------------------------------------------------------------
# Complete backtracking decider


def _compile(f: Formula, domains: dict[int, list[Fraction]]):
    """Clauses as (var, candidate-bitmask) pairs; masks select satisfying ranks."""
    rank = {var: {val: i for i, val in enumerate(vals)} for var, vals in domains.items()}
    full = {var: (1 << len(vals)) - 1 for var, vals in domains.items()}
    compiled = []
    for clause in f.clauses:
        per_var: dict[int, int] = {}
        for lit in clause:
            vals = domains[lit.var]
            if lit.rel is Rel.LE:
                r = _rank_le(vals, lit.bound)
                mask = (1 << (r + 1)) - 1 if r >= 0 else 0
            else:
                r = _rank_ge(vals, lit.bound)
                mask = ((1 << (len(vals) - r)) - 1) << r if r < len(vals) else 0
            per_var[lit.var] = per_var.get(lit.var, 0) | mask
        if any(mask == full[var] for var, mask in per_var.items()):
            continue  # satisfied by every candidate value of that variable
        compiled.append(tuple(per_var.items()))
    return compiled, full, rank


def _rank_le(vals: list[Fraction], bound: Fraction) -> int:
    """Largest index with vals[i] <= bound, or -1."""
    lo, hi = 0, len(vals)
    while lo < hi:
        mid = (lo + hi) // 2
        if vals[mid] <= bound:
            lo = mid + 1
        else:
            hi = mid
    return lo - 1


def _rank_ge(vals: list[Fraction], bound: Fraction) -> int:
    """Smallest index with vals[i] >= bound, or len(vals)."""
    lo, hi = 0, len(vals)
    while lo < hi:
        mid = (lo + hi) // 2
        if vals[mid] >= bound:
            hi = mid
        else:
            lo = mid + 1
    return lo


def solve_complete(f: Formula, budget: int = DEFAULT_NODE_BUDGET) -> SolveResult:
    """Exact satisfiability over V by search on the candidate domains.

    Raises ResourceLimit when more than ``budget`` branch nodes are
    expanded; never returns a wrong answer.
    """
    domains = candidate_domains(f)
    compiled, full, _ = _compile(f, domains)
    dom = {var: full[var] for var in full}
    nodes = [0]

    assignment = _search(dom, list(range(len(compiled))), compiled, nodes, budget)
    if assignment is None:
        return SolveResult(False)
    witness = {}
    for var, vals in domains.items():
        witness[var] = vals[assignment[var].bit_length() - 1]
    result = SolveResult(True, witness)
    if not eval_formula(f, witness):  # pragma: no cover - internal consistency
        raise AssertionError("complete decider produced an invalid witness")
    return result


def _search(dom, active, compiled, nodes, budget):
    nodes[0] += 1
    if nodes[0] > budget:
        raise ResourceLimit(f"search budget of {budget} nodes exhausted")

    # unit propagation to fixpoint
    while True:
        changed = False
        still = []
        for cid in active:
            satisfied = False
            live = []
            for var, mask in compiled[cid]:
                d = dom[var]
                dm = d & mask
                if dm == d:
                    satisfied = True
                    break
                if dm:
                    live.append((var, mask))
            if satisfied:
                continue
            if not live:
                return None
            if len(live) == 1:
                var, mask = live[0]
                dom[var] &= mask
                changed = True
            else:
                still.append(cid)
        active = still
        if not changed:
            break

    if not active:
        return {var: d & (-d) for var, d in dom.items()}  # lowest remaining value

    # branch on the tightest unsatisfied clause: branch i makes its first
    # i-1 live literals false and the i-th true, a complete partition that
    # reaches conflicts far sooner than blind domain splitting
    branch_cid = min(
        active,
        key=lambda cid: sum(1 for var, mask in compiled[cid] if dom[var] & mask),
    )
    live = [(var, mask) for var, mask in compiled[branch_cid] if dom[var] & mask]
    for i, (var, mask) in enumerate(live):
        child = dict(dom)
        feasible = True
        for prev_var, prev_mask in live[:i]:
            narrowed = child[prev_var] & ~prev_mask
            if narrowed == 0:
                feasible = False
                break
            child[prev_var] = narrowed
        if not feasible:
            continue
        child[var] &= mask
        found = _search(child, active, compiled, nodes, budget)
        if found is not None:
            return found
    return None


# ---------------------------------------------------------------------------
# SCC decider for k = 2


@dataclass
class ImplicationDigraph:
    """Literal-implication digraph of a width-2 formula.

    Nodes are (var, rel, rank) triples over the candidate domains: the
    formula's literals together with their complements.  Edges are the
    clause contrapositives plus the entailment chains within each
    variable and relation.  The complement pairing is stored per node
    (-1 when the complement leaves the domain, i.e. the literal holds
    for every candidate value).
    """

    nodes: list[tuple[int, Rel, int]]
    succ: list[list[int]]
    complement: list[int]
    node_id: dict[tuple[int, Rel, int], int]


def build_implication_digraph(f: Formula, domains=None) -> ImplicationDigraph:
    if f.k != 2:
        raise WrongArity(f"implication digraph requires k = 2, got k = {f.k}")
    if domains is None:
        domains = candidate_domains(f)

    rank = {var: {val: i for i, val in enumerate(vals)} for var, vals in domains.items()}
    size = {var: len(vals) for var, vals in domains.items()}

    node_id: dict[tuple[int, Rel, int], int] = {}
    nodes: list[tuple[int, Rel, int]] = []

    def intern(var: int, rel: Rel, r: int) -> int:
        key = (var, rel, r)
        nid = node_id.get(key)
        if nid is None:
            nid = len(nodes)
            node_id[key] = nid
            nodes.append(key)
        return nid

    def comp_key(var: int, rel: Rel, r: int):
        if rel is Rel.LE:
            return (var, Rel.GE, r + 1) if r + 1 < size[var] else None
        return (var, Rel.LE, r - 1) if r >= 1 else None

    clause_arcs = []
    for clause in f.clauses:
        u, w = clause
        ku = (u.var, u.rel, rank[u.var][u.bound])
        kw = (w.var, w.rel, rank[w.var][w.bound])
        cu = comp_key(*ku)
        cw = comp_key(*kw)
        if cu is None or cw is None:
            continue  # one side holds for every candidate value: vacuous clause
        iu, iw = intern(*ku), intern(*kw)
        icu, icw = intern(*cu), intern(*cw)
        clause_arcs.append((icu, iw))
        clause_arcs.append((icw, iu))

    succ: list[list[int]] = [[] for _ in nodes]
    for a, b in clause_arcs:
        succ[a].append(b)

    # entailment chains: within a variable, stronger literals imply weaker ones
    by_var_rel: dict[tuple[int, Rel], list[tuple[int, int]]] = {}
    for nid, (var, rel, r) in enumerate(nodes):
        by_var_rel.setdefault((var, rel), []).append((r, nid))
    for (var, rel), entries in by_var_rel.items():
        entries.sort()
        if rel is Rel.LE:
            for (_, a), (_, b) in zip(entries, entries[1:]):
                succ[a].append(b)
        else:
            for (_, a), (_, b) in zip(entries, entries[1:]):
                succ[b].append(a)

    complement = [-1] * len(nodes)
    for nid, key in enumerate(nodes):
        ck = comp_key(*key)
        if ck is not None:
            complement[nid] = node_id.get(ck, -1)
    # the node set is complement-closed, so -1 only appears for literals
    # whose complement leaves the candidate domain
    return ImplicationDigraph(nodes, succ, complement, node_id)


def _tarjan(succ: list[list[int]]) -> list[int]:
    """Component index per node; components numbered sinks-first."""
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = bytearray(n)
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = 1
            advanced = False
            sv = succ[v]
            for i in range(pi, len(sv)):
                w = sv[i]
                if index[w] == -1:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
    return comp


def solve_2rsat_scc(f: Formula) -> SolveResult:
    """Decide a width-2 formula via the implication digraph.

    UNSAT iff some literal and its complement land in one strongly
    connected component; otherwise a witness is read off the condensation
    order (a literal counts as true when its component is closer to the
    sinks than its complement's).
    """
    if f.k != 2:
        raise WrongArity(f"solve_2rsat_scc requires k = 2, got k = {f.k}")
    domains = candidate_domains(f)
    graph = build_implication_digraph(f, domains)
    comp = _tarjan(graph.succ)

    for nid, cid in enumerate(graph.complement):
        if cid != -1 and comp[nid] == comp[cid]:
            return SolveResult(False)

    true_ge: dict[int, Fraction] = {}
    true_le: dict[int, Fraction] = {}
    for nid, (var, rel, r) in enumerate(graph.nodes):
        cid = graph.complement[nid]
        if cid != -1 and not comp[nid] < comp[cid]:
            continue
        bound = domains[var][r]
        if rel is Rel.GE:
            if var not in true_ge or bound > true_ge[var]:
                true_ge[var] = bound
        else:
            if var not in true_le or bound < true_le[var]:
                true_le[var] = bound

    witness: dict[int, Fraction] = {}
    for var in range(1, f.n + 1):
        if var in true_ge:
            witness[var] = true_ge[var]
        elif var in true_le:
            witness[var] = true_le[var]
        else:
            witness[var] = domains[var][0]
    if not eval_formula(f, witness):  # pragma: no cover - internal consistency
        raise AssertionError("SCC decider produced an invalid witness")
    return SolveResult(True, witness)


# ---------------------------------------------------------------------------
# Tight-interpretation counting


def count_tight_satisfying(f: Formula, budget: int = DEFAULT_COUNT_BUDGET) -> int:
    """Number of satisfying slot-tight interpretations.

    Counts assignments x_j = (right-hand side found in one of x_j's own
    slots), with slot multiplicity: two slots carrying the same bound
    contribute two choices.  A variable with no occurrence has no slot to
    pick from, so the count is 0 by convention.
    """
    slot_values: dict[int, list[Fraction]] = {var: [] for var in range(1, f.n + 1)}
    for clause in f.clauses:
        for lit in clause:
            slot_values[lit.var].append(lit.bound)

    total = 1
    for vals in slot_values.values():
        total *= len(vals)
        if total == 0:
            return 0
        if total > budget:
            raise ResourceLimit(
                f"tight-interpretation space exceeds budget of {budget}"
            )

    variables = sorted(slot_values)
    weighted: list[list[tuple[Fraction, int]]] = []
    for var in variables:
        mult: dict[Fraction, int] = {}
        for val in slot_values[var]:
            mult[val] = mult.get(val, 0) + 1
        weighted.append(sorted(mult.items()))

    domains = {var: [val for val, _ in weighted[i]] for i, var in enumerate(variables)}
    compiled, full, _ = _compile(f, domains)

    count = 0
    for combo in itertools.product(*[range(len(w)) for w in weighted]):
        bits = {var: 1 << combo[i] for i, var in enumerate(variables)}
        ok = True
        for clause in compiled:
            if not any(bits[var] & mask for var, mask in clause):
                ok = False
                break
        if ok:
            weight = 1
            for i, ci in enumerate(combo):
                weight *= weighted[i][ci][1]
            count += weight
    return count
