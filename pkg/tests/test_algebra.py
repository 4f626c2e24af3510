from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import ref_bracket
from ramond.algebra import (
    NEVEU_SCHWARZ,
    RAMOND,
    DomainError,
    G,
    L,
    LinearCombo,
    bracket,
    check_super_jacobi,
    grading_ok,
    super_jacobi_defect,
)
from ramond.scalars import ScalarPoly


def combo(terms, central=0):
    return LinearCombo({g: ScalarPoly.const(v) for g, v in terms.items()}, ScalarPoly.const(central))


def test_bracket_examples():
    assert bracket(RAMOND, L(1), L(-1)) == combo({L(0): -2})
    assert bracket(RAMOND, G(1), G(-1)) == combo({L(0): -2}, Fraction(1, 4))
    assert bracket(RAMOND, L(2), G(0)) == combo({G(2): -1})
    assert bracket(RAMOND, G(0), G(0)) == combo({L(0): -2}, Fraction(-1, 12))


def test_virasoro_cocycle_sign():
    # (m^3 - m)/12 with m the left index: [L_2, L_-2] carries +1/2 C
    assert bracket(RAMOND, L(2), L(-2)) == combo({L(0): -4}, Fraction(1, 2))
    assert bracket(RAMOND, L(-2), L(2)) == combo({L(0): 4}, Fraction(-1, 2))


def test_the_other_cocycle_sign_breaks_jacobi():
    # (n^3 - n)/12 is inconsistent with the [G, G] central term
    bad = RAMOND.corrupted()
    assert bracket(bad, L(2), L(-2)) == combo({L(0): -4}, Fraction(-1, 2))
    triple = (L(2), G(0), G(-2))
    defect = super_jacobi_defect(bad, *(LinearCombo.of(g) for g in triple))
    assert not defect.terms and defect.central == ScalarPoly.const(-2)
    assert super_jacobi_defect(RAMOND, *(LinearCombo.of(g) for g in triple)).is_zero()


@pytest.mark.parametrize("bound", [1, 3, 8])
def test_jacobi_passes(bound):
    for alg in (RAMOND, NEVEU_SCHWARZ):
        rep = check_super_jacobi(alg, bound)
        assert rep.passed, rep.failures[:3]
        assert rep.cases_checked == len(alg.generators(bound)) ** 3


def test_jacobi_bound_validation():
    with pytest.raises(ValueError):
        check_super_jacobi(RAMOND, 0)


def test_jacobi_with_zero_argument():
    zero = LinearCombo()
    assert super_jacobi_defect(RAMOND, zero, LinearCombo.of(L(1)), LinearCombo.of(G(2))).is_zero()


def test_matches_formula_table():
    gens = RAMOND.generators(5)
    for a, b in product(gens, repeat=2):
        terms, central = ref_bracket((a.family, a.index), (b.family, b.index))
        want = combo({(L if f == "L" else G)(m): v for (f, m), v in terms.items()}, central)
        assert bracket(RAMOND, a, b) == want


def test_neveu_schwarz_examples():
    h = Fraction(1, 2)
    assert bracket(NEVEU_SCHWARZ, G(h), G(-h)) == combo({L(0): -2})
    assert bracket(NEVEU_SCHWARZ, G(Fraction(3, 2)), G(Fraction(-3, 2))) == combo({L(0): -2}, Fraction(8, 12))
    assert bracket(NEVEU_SCHWARZ, L(1), G(h)) == combo({G(Fraction(3, 2)): 0})


def test_domain_errors():
    with pytest.raises(DomainError):
        bracket(RAMOND, G(Fraction(1, 2)), L(0))
    with pytest.raises(DomainError):
        bracket(NEVEU_SCHWARZ, G(1), L(0))
    with pytest.raises(DomainError):
        bracket(RAMOND, L(Fraction(1, 3)), L(0))


indices = st.integers(min_value=-6, max_value=6)
gens = st.builds(lambda f, m: (L if f else G)(m), st.booleans(), indices)


@settings(max_examples=300, deadline=None)
@given(gens, gens)
def test_antisupersymmetry(a, b):
    sign = -1 if a.parity and b.parity else 1
    assert bracket(RAMOND, a, b) == bracket(RAMOND, b, a).scale(-sign)


@settings(max_examples=300, deadline=None)
@given(gens, gens)
def test_grading(a, b):
    assert grading_ok(RAMOND, a, b)
    res = bracket(RAMOND, a, b)
    assert all(g.parity == (a.parity + b.parity) % 2 for g in res.terms)


def test_generator_parity_and_text():
    assert L(3).parity == 0 and G(-2).parity == 1
    assert str(G(-2)) == "G(-2)"
    assert L(4).degree == 4
