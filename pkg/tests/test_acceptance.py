"""Acceptance criteria 1-11; each test prints one PASS/FAIL line, all checks exact."""

import random
import time
from fractions import Fraction
from itertools import product

import pytest
import sympy

from corpus import ROUND_TRIP, round_trip
from ramond.algebra import NEVEU_SCHWARZ, RAMOND, G, L
from ramond.bmodules import (
    HighOrderWhittakerModule,
    LaurentFraction,
    SolvableModule,
    WhittakerModule,
    bmodule_axiom_check,
    solvable_xy,
    x_action_cleared,
)
from ramond.cli import main
from ramond.induced import nilpotency_probe, random_element, restricted_bound, weight_of
from ramond.pbw import (
    RAMOND_PBW,
    SVector,
    cmp_principal,
    depth_D,
    enumerate_svectors,
    monomial_of,
    weight_W,
    word_degree,
)
from ramond.scalars import C, ScalarPoly
from ramond.verify import (
    suite_jacobi,
    suite_lemma31,
    suite_lemma32_33,
    suite_theorem34,
    suite_theorem42,
)

WHIT = WhittakerModule({2: 1})
HIGH = HighOrderWhittakerModule(2, {4: 1})
SOLV = SolvableModule()


@pytest.fixture
def emit(capsys):
    def _emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail

    return _emit


def test_criterion_01_super_jacobi(emit):
    t0 = time.perf_counter()
    rep = suite_jacobi(8, ("Ramond", "NeveuSchwarz"))
    dt = time.perf_counter() - t0
    triples = len(RAMOND.generators(8)) ** 3 + len(NEVEU_SCHWARZ.generators(8)) ** 3
    ok = rep.passed and rep.cases_checked == triples and dt < 60
    emit(1, ok, f"{rep.cases_checked} triples, {len(rep.failures)} defects, {dt:.1f}s")


def test_criterion_02_pbw_engine(emit):
    rng = random.Random(20240)
    letters = RAMOND.generators(4)
    bad = 0
    for _ in range(500):
        u = tuple(rng.choice(letters) for _ in range(rng.randint(0, 4)))
        v = tuple(rng.choice(letters) for _ in range(rng.randint(0, 4)))
        nu = RAMOND_PBW.normal_order(u)
        if RAMOND_PBW.normal_order_terms(nu) != nu:
            bad += 1
        if RAMOND_PBW.normal_order(u + v) != RAMOND_PBW.normal_order_terms({w + v: x for w, x in nu.items()}):
            bad += 1
    one = ScalarPoly.const(1)
    squares = [
        RAMOND_PBW.normal_order((G(-1), G(-1))) == {(L(-2),): -one},
        RAMOND_PBW.normal_order((G(0), G(0))) == {(L(0),): -one, (): C * Fraction(-1, 24)},
        RAMOND_PBW.normal_order((G(1), G(1))) == {(L(2),): -one},
    ]
    emit(2, bad == 0 and all(squares), f"500 word pairs, {bad} mismatches; square identities {squares}")


def test_criterion_03_order_laws(emit):
    vecs = enumerate_svectors(5)
    n = len(vecs)
    cmp = [[cmp_principal(a, b) for b in vecs] for a in vecs]
    tri = all((cmp[i][j] == 0) == (i == j) and cmp[i][j] == -cmp[j][i] for i in range(n) for j in range(n))
    trans = all(
        not (cmp[i][j] > 0 and cmp[j][k] > 0) or cmp[i][k] > 0 for i in range(n) for j in range(n) for k in range(n)
    )
    wd = all(weight_W(v) == -word_degree(monomial_of(v)) and depth_D(v) == len(monomial_of(v)) for v in vecs)
    emit(3, tri and trans and wd, f"{n} vectors; trichotomy {tri}, transitivity {trans}, W/D {wd}")


def test_criterion_04_bmodule_axioms(emit):
    runs = {
        "whittaker L1=0": bmodule_axiom_check(WHIT, 6),
        "whittaker L1=1": bmodule_axiom_check(WhittakerModule({1: 1, 2: 1}), 6),
        "highorder s=2": bmodule_axiom_check(HIGH, 6, label_cap=2),
        "solvable": bmodule_axiom_check(SOLV, 6, sample_size=50, seed=0),
    }
    control = bmodule_axiom_check(WhittakerModule({2: 1, 3: 1}, validate=False), 6)
    ok = all(r.passed for r in runs.values()) and not control.passed
    detail = ", ".join(f"{k} {'ok' if r.passed else 'failed'}" for k, r in runs.items())
    emit(4, ok, f"{detail}; corrupted control fails: {not control.passed}")


def test_criterion_05_lemma31(emit):
    reps = [suite_lemma31(WHIT, 2, 8), suite_lemma31(SOLV, 2, 8), suite_lemma31(HIGH, 4, 8)]
    emit(5, all(r.passed for r in reps), "cases " + ", ".join(str(r.cases_checked) for r in reps))


def test_criterion_06_lemmas_32_33(emit):
    reps = [suite_lemma32_33(WHIT, 2, 6), suite_lemma32_33(SOLV, 2, 6), suite_lemma32_33(HIGH, 4, 5)]
    counts = [r.info["case_counts"] for r in reps]
    covered = all(c[k] > 0 for c in counts for k in ("degree_L", "degree_G", "absence_L", "absence_G"))
    ok = all(r.passed for r in reps) and covered
    emit(6, ok, "; ".join(f"{r.target}: {sum(c.values())} cases, {len(r.failures)} failures" for r, c in zip(reps, counts)))


def test_criterion_07_theorem34(emit):
    reps = [suite_theorem34(m, r, 100, 6, seed=34) for m, r in ((WHIT, 2), (SOLV, 2), (HIGH, 4))]
    emit(7, all(r.passed and r.cases_checked == 100 for r in reps), "failures " + ", ".join(str(len(r.failures)) for r in reps))


def test_criterion_08_theorem42(emit):
    rep = suite_theorem42(WHIT, 2, weight_cap=3, window=6, label_cap=3)
    emit(8, rep.passed, f"dim M_1 = {rep.info['dim_M_below']}, dim M_2 = {rep.info['dim_M_b']} (slice {len(WHIT.basis(3))})")


def test_criterion_09_prop41(emit):
    rng = random.Random(41)
    worst_gap = None
    bad = 0
    for _ in range(50):
        w = random_element(WHIT, rng, 6, label_cap=1)
        W = weight_of(w)
        res = nilpotency_probe(L(4), w, WHIT, 2)
        limit = -(-W // 2) + 2
        if res.exponent is None or res.exponent > limit:
            bad += 1
        else:
            gap = limit - res.exponent
            worst_gap = gap if worst_gap is None else min(worst_gap, gap)
        if not restricted_bound(w, WHIT, 2, 8).verified:
            bad += 1
    emit(9, bad == 0, f"50 samples, {bad} violations, tightest slack {worst_gap}")


def test_criterion_10_solvable_calculus(emit):
    d = sympy.Symbol("d")
    rng = random.Random(10)
    bad = 0
    for _ in range(50):
        q = {rng.randint(-4, 4): Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(rng.randint(1, 4))}
        q = {e: v for e, v in q.items() if v} or {0: Fraction(1)}
        qx = sum(sympy.Rational(v.numerator, v.denominator) * d**e for e, v in q.items())
        f = qx / (d - 1)
        formula = d * sympy.diff(f, d) + f / (d**2 * (d - 1))
        num = solvable_xy("x", LaurentFraction(q)).numerator
        closed = sum(sympy.Rational(v.numerator, v.denominator) * d**e for e, v in num.items()) / (d - 1)
        cleared = sympy.expand(sympy.cancel((formula - closed) * d**2 * (d - 1) ** 2))
        raw, closed_cleared = x_action_cleared(q)
        if cleared != 0 or raw != closed_cleared:
            bad += 1
        fy = LaurentFraction(q)
        comm = solvable_xy("x", solvable_xy("y", fy)) + solvable_xy("y", solvable_xy("x", fy)).scale(-1)
        if comm != solvable_xy("y", fy):
            bad += 1
    emit(10, bad == 0, f"50 numerators, {bad} mismatches")


def test_criterion_11_cli_determinism(emit, tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text("module = highorder\ntrials = 10\nweight-cap = 4\nseed = 11\n")
    outputs = []
    for n in range(2):
        report = tmp_path / f"out{n}.json"
        code = main(["--config", str(cfg), "suite", "theorem34", "--output", str(report)])
        capsys.readouterr()
        outputs.append((code, report.read_bytes()))
    same = outputs[0] == outputs[1] and outputs[0][0] == 0
    trips = sum(round_trip(k, m, t) == t for k, m, t in ROUND_TRIP)
    emit(11, same and trips == len(ROUND_TRIP) == 30, f"byte-identical reports {same}; round trips {trips}/{len(ROUND_TRIP)}")
