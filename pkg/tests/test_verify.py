import json

import pytest
import sympy

from ramond.bmodules import HighOrderWhittakerModule, SolvableModule, WhittakerModule
from ramond.verify import (
    search_ns_embedding,
    suite_axioms,
    suite_jacobi,
    suite_lemma31,
    suite_lemma32_33,
    suite_prop41,
    suite_theorem34,
    suite_theorem42,
)

W = WhittakerModule({2: 1})
H = HighOrderWhittakerModule(2, {4: 1})
S = SolvableModule()
FAMILIES = [(W, 2), (S, 2), (H, 4)]
IDS = ["whittaker", "solvable", "highorder"]


def test_jacobi_suite_and_control():
    assert suite_jacobi(4).passed
    bad = suite_jacobi(4, ("Ramond",), corrupt=True)
    assert not bad.passed
    assert any("L(2)" in f["case"] and "G(-2)" in f["case"] for f in bad.failures)


def test_axioms_suite():
    assert suite_axioms(W, 5).passed
    assert not suite_axioms(WhittakerModule({2: 1, 3: 1}, validate=False), 5).passed


@pytest.mark.parametrize("module, t", FAMILIES, ids=IDS)
def test_lemma31(module, t):
    rep = suite_lemma31(module, t, window=6)
    assert rep.passed and rep.cases_checked > 0


def test_lemma31_premise_failure_is_reported():
    rep = suite_lemma31(H, 2, window=3, label_cap=1)
    assert any(f["case"].startswith("premise L(4)") for f in rep.failures)
    with pytest.raises(ValueError):
        suite_lemma31(W, 1)


@pytest.mark.parametrize("module, r", FAMILIES, ids=IDS)
def test_lemma32_33(module, r):
    rep = suite_lemma32_33(module, r, weight_cap=4)
    assert rep.passed, rep.failures[:3]
    counts = rep.info["case_counts"]
    assert all(counts[k] > 0 for k in ("weight_drop", "degree_L", "degree_G"))


def test_lemmas_fail_without_the_hypothesis():
    # phi(L_2) = 0 so nothing forces L_3 g_{eps_1} v0 to be nonzero
    rep = suite_lemma32_33(WhittakerModule({1: 1}), 2, weight_cap=2)
    assert not rep.passed


@pytest.mark.parametrize("module, r", FAMILIES, ids=IDS)
def test_theorem34(module, r):
    rep = suite_theorem34(module, r, trials=15, weight_cap=4, seed=3)
    assert rep.passed, rep.failures[:2]
    assert rep.info["longest_trace"] > 0


def test_theorem34_negative_control():
    assert not suite_theorem34(WhittakerModule({1: 1}), 2, trials=10, weight_cap=3, seed=0).passed


def test_theorem42_whittaker():
    rep = suite_theorem42(W, 2, weight_cap=2, window=5, label_cap=2)
    assert rep.passed, rep.failures
    assert rep.info["dim_M_below"] == 0 and rep.info["dim_M_b"] == len(W.basis(2))
    assert rep.info["L_b_injective_on_slice"]


def test_theorem42_highorder():
    rep = suite_theorem42(H, 4, weight_cap=2, window=5, label_cap=1)
    assert rep.passed, rep.failures


def test_theorem42_detects_nonsimple_module():
    assert not suite_theorem42(WhittakerModule({1: 1}), 2, weight_cap=1, window=4, label_cap=1).passed


@pytest.mark.parametrize("module, r", FAMILIES, ids=IDS)
def test_prop41(module, r):
    rep = suite_prop41(module, r, samples=12, weight_cap=4, seed=2)
    assert rep.passed, rep.failures[:2]


def _ns_reference():
    # brackets [L_m, L_n] = (n - m) L_{m+n} + (m^3 - m)/12 C, [G_p, G_q] = -2 L_{p+q} + (p^2 - 1/4)/3 C
    # pushed through L'_m = a L_{2m} + gamma delta C, G'_p = b G_{2p}, C' = lam C
    a, b, g, lam, m, p = sympy.symbols("a b gamma lam m p")
    eqs = [
        sympy.expand(-4 * m * a**2 - (-2 * m) * a),
        sympy.expand(a**2 * ((2 * m) ** 3 - 2 * m) / 12 - (-2 * m * g + lam * (m**3 - m) / 12)),
        sympy.expand(-2 * b**2 + 2 * a),
        sympy.expand(b**2 * ((2 * p) ** 2 - sympy.Rational(1, 4)) / 3 - (-2 * g + lam * (p**2 - sympy.Rational(1, 4)) / 3)),
    ]
    coeffs = []
    for e in eqs:
        coeffs.extend(sympy.Poly(e, m, p).coeffs())
    return sympy.solve(coeffs, [a, b, g, lam], dict=True)


def test_ns_embedding_matches_hand_reduction():
    rep = search_ns_embedding(3)
    assert rep.passed
    ref = _ns_reference()
    names = dict(zip(("a", "b", "gamma", "lam"), sympy.symbols("a b gamma lam")))
    want = [{n: str(s.get(sym, sym)) for n, sym in names.items()} for s in ref if s.get(names["b"], 1) != 0]
    got = [s for s in rep.info["solutions"] if s["b"] != "0"]
    assert sorted(map(json.dumps, got)) == sorted(map(json.dumps, want))
    assert {s["a"] for s in got} == {"1/2"} and {s["gamma"] for s in got} == {"-1/16"} and {s["lam"] for s in got} == {"2"}
    assert rep.info["central_shift_required"]


def test_reports_are_deterministic():
    a = suite_theorem34(S, 2, trials=5, weight_cap=3, seed=9).to_text()
    b = suite_theorem34(S, 2, trials=5, weight_cap=3, seed=9).to_text()
    assert a == b
    assert json.loads(a)["params"]["seed"] == 9
