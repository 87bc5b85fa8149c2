from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import rsat
from rsat import (
    CONTINUOUS,
    Dyadic,
    DuplicateThresholds,
    Finite,
    Formula,
    GenConfig,
    InvalidConfig,
    Literal,
    ProfileMismatch,
    Rel,
    Stream,
    WrongVspec,
    couple_increase_v,
    min_safe_lambda,
    occurrence_profile,
    sample_formula,
    sample_formula_given_profile,
    truncate_thresholds,
)
from oracles import three_sigma


def test_invalid_config():
    with pytest.raises(InvalidConfig):
        GenConfig(k=2, n=1, m=1, distinct_vars_per_clause=True)
    with pytest.raises(InvalidConfig):
        GenConfig(k=1, n=5, m=1)


def test_determinism_bit_identical():
    cfg = GenConfig(k=3, n=20, m=40, vspec=CONTINUOUS, seed=987654321)
    assert sample_formula(cfg) == sample_formula(cfg)
    assert rsat.render_formula(sample_formula(cfg)) == rsat.render_formula(sample_formula(cfg))
    other = GenConfig(k=3, n=20, m=40, vspec=CONTINUOUS, seed=987654322)
    assert sample_formula(other) != sample_formula(cfg)


def test_finite2_produces_classical_literals():
    f = sample_formula(GenConfig(k=2, n=6, m=40, vspec=Finite(2), seed=5))
    for clause in f.clauses:
        for lit in clause:
            assert (lit.rel, lit.bound) in ((Rel.LE, F(0)), (Rel.GE, F(1)))


@pytest.mark.parametrize("vspec", [Finite(2), Finite(5), Dyadic(0), Dyadic(3), CONTINUOUS])
def test_no_innocuous_literals_and_bounds_in_v(vspec):
    f = sample_formula(GenConfig(k=2, n=8, m=60, vspec=vspec, seed=11))
    for clause in f.clauses:
        for lit in clause:
            assert not (lit.rel is Rel.LE and lit.bound == 1)
            assert not (lit.rel is Rel.GE and lit.bound == 0)
            assert rsat.vspec_contains(vspec, lit.bound)


def test_distinct_vars_per_clause():
    f = sample_formula(GenConfig(k=4, n=6, m=50, distinct_vars_per_clause=True, seed=3))
    for clause in f.clauses:
        assert len({lit.var for lit in clause}) == 4


def test_variable_marginal_is_uniform():
    n, m = 5, 4000
    f = sample_formula(GenConfig(k=2, n=n, m=m, seed=17))
    prof = occurrence_profile(f)
    expected = 2 * m / n
    for r in prof:
        assert abs(r - expected) < 3 * (2 * m * (1 / n) * (1 - 1 / n)) ** 0.5


def test_satisfaction_probability_at_half():
    # fraction of random continuous constraints satisfied by x = 1/2 is 1/2
    f = sample_formula(GenConfig(k=2, n=1, m=50_000, vspec=CONTINUOUS, seed=23))
    half = F(1, 2)
    hits = sum(rsat.eval_literal(lit, half) for cl in f.clauses for lit in cl)
    assert abs(hits / 100_000 - 0.5) < three_sigma(0.5, 100_000)


def test_distinct_thresholds_switch():
    f = sample_formula(
        GenConfig(k=2, n=4, m=6, vspec=Finite(17), seed=29, distinct_thresholds=True)
    )
    sides = [lit.encoded_rhs() for cl in f.clauses for lit in cl]
    assert len(set(sides)) == len(sides)
    with pytest.raises(InvalidConfig):  # only 1 available side for 4 slots
        sample_formula(GenConfig(k=2, n=2, m=2, vspec=Finite(2), seed=1, distinct_thresholds=True))


# ---------------------------------------------------------------------------
# profile-conditioned sampling


def test_profile_identity_and_extremes():
    cfg = GenConfig(k=2, n=4, m=6, seed=31)
    prof = [12, 0, 0, 0]
    f = sample_formula_given_profile(cfg, prof)
    assert occurrence_profile(f) == prof
    assert all(lit.var == 1 for cl in f.clauses for lit in cl)

    prof = [3, 3, 3, 3]
    f = sample_formula_given_profile(cfg, prof)
    assert occurrence_profile(f) == prof


def test_profile_mismatch_and_distinct_flag():
    cfg = GenConfig(k=2, n=3, m=2, seed=1)
    with pytest.raises(ProfileMismatch):
        sample_formula_given_profile(cfg, [1, 1, 1])
    with pytest.raises(ProfileMismatch):
        sample_formula_given_profile(cfg, [4, 0])
    bad = GenConfig(k=2, n=3, m=2, seed=1, distinct_vars_per_clause=True)
    with pytest.raises(InvalidConfig):
        sample_formula_given_profile(bad, [2, 1, 1])


def test_occurrence_law_matches_multinomial():
    # n=2, k=2, m=1: Pr[R=(2,0)] = 1/4, Pr[R=(1,1)] = 1/2, Pr[R=(0,2)] = 1/4
    trials = 100_000
    counts = {(2, 0): 0, (1, 1): 0, (0, 2): 0}
    for seed in range(trials):
        f = sample_formula(GenConfig(k=2, n=2, m=1, seed=seed))
        counts[tuple(occurrence_profile(f))] += 1
    for profile, p in (((2, 0), 0.25), ((1, 1), 0.5), ((0, 2), 0.25)):
        assert abs(counts[profile] / trials - p) < three_sigma(p, trials)


# ---------------------------------------------------------------------------
# coupling: one step up in v


def test_couple_requires_finite():
    f = sample_formula(GenConfig(k=2, n=3, m=3, vspec=CONTINUOUS, seed=2))
    with pytest.raises(WrongVspec):
        couple_increase_v(f, seed=0)


def test_couple_shape_and_step():
    v = 4
    f = sample_formula(GenConfig(k=2, n=6, m=25, vspec=Finite(v), seed=41))
    pair = couple_increase_v(f, seed=42)
    assert pair.low is f
    assert pair.high.vspec == Finite(v + 1)
    assert pair.high.m == f.m and pair.high.n == f.n
    for low_cl, high_cl in zip(f.clauses, pair.high.clauses):
        for low_lit, high_lit in zip(low_cl, high_cl):
            assert low_lit.var == high_lit.var
            assert low_lit.rel is high_lit.rel
            u = int(low_lit.encoded_rhs() * (v - 1))
            assert high_lit.encoded_rhs() in (F(u, v), F(u + 1, v))


def test_couple_marginal_uniform_v2():
    # single step from v=2: encoded side 0 bumps to 1/2 with probability 1/2
    f = sample_formula(GenConfig(k=2, n=1, m=20_000, vspec=Finite(2), seed=43))
    pair = couple_increase_v(f, seed=44)
    sides = [lit.encoded_rhs() for cl in pair.high.clauses for lit in cl]
    frac_half = sum(s == F(1, 2) for s in sides) / len(sides)
    assert abs(frac_half - 0.5) < three_sigma(0.5, len(sides))


def test_couple_marginal_uniform_two_steps():
    # v=2 -> v=3 -> v=4: after two steps the sides are uniform on {0, 1/3, 2/3}
    f = sample_formula(GenConfig(k=2, n=1, m=50_000, vspec=Finite(2), seed=45))
    mid = couple_increase_v(f, seed=46).high
    high = couple_increase_v(mid, seed=47).high
    sides = [lit.encoded_rhs() for cl in high.clauses for lit in cl]
    total = len(sides)
    for target in (F(0), F(1, 3), F(2, 3)):
        frac = sum(s == target for s in sides) / total
        assert abs(frac - 1 / 3) < three_sigma(1 / 3, total)


# ---------------------------------------------------------------------------
# truncation and the dyadic ladder


def test_truncate_examples():
    lit = Literal(1, Rel.LE, F(5, 8))  # encoded 0.101
    f = Formula(2, 1, ((lit, lit),), CONTINUOUS)
    g = truncate_thresholds(f, 2)
    assert g.vspec == Dyadic(2)
    assert g.clauses[0][0].bound == F(1, 2)

    zeroed = truncate_thresholds(f, 0)
    assert zeroed.vspec == Dyadic(0)
    assert zeroed.clauses[0][0].bound == F(0)

    ge_lit = Literal(1, Rel.GE, F(3, 8))  # encoded 0.101
    g2 = truncate_thresholds(Formula(2, 1, ((ge_lit, ge_lit),), CONTINUOUS), 2)
    assert g2.clauses[0][0].bound == F(1, 2)  # encoded floor 1/2, bound 1 - 1/2


def test_truncate_only_strengthens():
    f = sample_formula(GenConfig(k=2, n=8, m=30, vspec=CONTINUOUS, seed=51))
    g = truncate_thresholds(f, 6)
    for fc, gc in zip(f.clauses, g.clauses):
        for fl, gl in zip(fc, gc):
            if fl.rel is Rel.LE:
                assert gl.bound <= fl.bound
            else:
                assert gl.bound >= fl.bound


@pytest.mark.parametrize("seed", range(30))
def test_dyadic_ladder_is_monotone(seed):
    # sharing one continuous draw: satisfiable at lam implies satisfiable at lam' > lam
    f = sample_formula(GenConfig(k=2, n=8, m=20, vspec=CONTINUOUS, seed=1000 + seed))
    previous = False
    for lam in (0, 1, 2, 4, 8, 53):
        sat = rsat.solve_complete(truncate_thresholds(f, lam)).sat
        assert not (previous and not sat)
        previous = sat
    assert rsat.solve_complete(f).sat == previous or rsat.solve_complete(f).sat


# ---------------------------------------------------------------------------
# min_safe_lambda


def _formula_from_sides(pairs):
    lits = []
    for rel, side in pairs:
        bound = side if rel is Rel.LE else 1 - side
        lits.append(Literal(1, rel, bound))
    if len(lits) % 2:
        lits.append(lits[-1])
    clauses = tuple(tuple(lits[i : i + 2]) for i in range(0, len(lits), 2))
    return Formula(2, 1, clauses, CONTINUOUS)


def test_min_safe_lambda_frozen_examples():
    f = _formula_from_sides([(Rel.LE, F(1, 4)), (Rel.LE, F(3, 4))])
    assert min_safe_lambda(f) == 1

    f = _formula_from_sides([(Rel.LE, F(10, 16)), (Rel.LE, F(11, 16))])
    assert min_safe_lambda(f) == 4

    # sides 0.011 and 0.0101 first differ at bit 3, but the complement set
    # {0.101, 0.1011} agrees through bit 3, so 4 bits are needed
    f = _formula_from_sides([(Rel.LE, F(3, 8)), (Rel.LE, F(5, 16))])
    assert min_safe_lambda(f) == 4


def test_min_safe_lambda_duplicate_sides():
    f = _formula_from_sides([(Rel.LE, F(1, 4)), (Rel.GE, F(1, 4))])
    with pytest.raises(DuplicateThresholds):
        min_safe_lambda(f)
    f = _formula_from_sides([(Rel.LE, F(1, 4)), (Rel.GE, F(3, 4))])  # bounds meet at 1/4
    with pytest.raises(DuplicateThresholds):
        min_safe_lambda(f)


def test_min_safe_lambda_order_preservation():
    for seed in range(200):
        stream = Stream(seed)
        sides = sorted({F(stream.bits(8), 256) for _ in range(6)} - {F(1)})
        if len(sides) < 2:
            continue
        f = _formula_from_sides([(Rel.LE, s) for s in sides])
        try:
            lam = min_safe_lambda(f)
        except DuplicateThresholds:
            continue
        scale = 1 << lam
        floors = [(s.numerator * scale) // s.denominator for s in sides]
        assert floors == sorted(set(floors)), "strict order must survive truncation"


@pytest.mark.parametrize("seed", range(60))
def test_truncation_at_min_safe_preserves_satisfiability(seed):
    cfg = GenConfig(k=2 + seed % 2, n=4 + seed % 8, m=4 + (3 * seed) % 20, seed=3000 + seed)
    f = sample_formula(cfg)
    lam = min_safe_lambda(f)
    assert rsat.solve_complete(truncate_thresholds(f, lam)).sat == rsat.solve_complete(f).sat


# ---------------------------------------------------------------------------
# model equivalence


def test_conditional_equivalence_of_models():
    # F' conditioned on distinct clause variables has the law of F
    trials = 60_000
    seen = {}
    for seed in range(trials):
        f = sample_formula(GenConfig(k=2, n=3, m=1, seed=7_000_000 + seed))
        u, w = f.clauses[0]
        if u.var == w.var:
            continue
        seen[(u.var, w.var)] = seen.get((u.var, w.var), 0) + 1
    total = sum(seen.values())
    assert set(seen) == {(a, b) for a in (1, 2, 3) for b in (1, 2, 3) if a != b}
    for count in seen.values():
        assert abs(count / total - 1 / 6) < three_sigma(1 / 6, total)

    direct = {}
    for seed in range(trials // 2):
        f = sample_formula(
            GenConfig(k=2, n=3, m=1, seed=9_000_000 + seed, distinct_vars_per_clause=True)
        )
        u, w = f.clauses[0]
        assert u.var != w.var
        direct[(u.var, w.var)] = direct.get((u.var, w.var), 0) + 1
    for count in direct.values():
        assert abs(count / (trials // 2) - 1 / 6) < three_sigma(1 / 6, trials // 2)
