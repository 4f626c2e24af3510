"""Generators, structure constants and the super-Jacobi checker.

Two algebras are bundled: the N=1 Ramond algebra (all indices integral) and
the Neveu-Schwarz algebra (odd generators on half-integers).  Brackets are
returned as :class:`LinearCombo` objects whose central part is the
coefficient of ``C``; modules in this package always read it as a multiple
of the central charge ``c``.

Sign conventions: ``[L_m, L_n] = (n-m) L_{m+n} + (m^3-m)/12 delta C``,
``[G_m, G_n] = -2 L_{m+n} + (4m^2-1)/12 delta C`` and
``[L_m, G_n] = (n - m/2) G_{m+n}``.  The Virasoro cocycle sign is the one
forced by the graded Jacobi identity for these [G, G] and [L, G] brackets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

from .scalars import ONE, ZERO, ScalarPoly

Index = Union[int, Fraction]


class DomainError(ValueError):
    """A generator index lies outside the algebra's index set."""


class Generator(NamedTuple):
    """``L(m)`` or ``G(m)``; ``C`` is never a generator (it is folded into c)."""

    family: str
    index: Index

    @property
    def parity(self) -> int:
        return 1 if self.family == "G" else 0

    @property
    def degree(self) -> Index:
        return self.index

    def __str__(self) -> str:
        return f"{self.family}({self.index})"

    def __repr__(self) -> str:
        return f"{self.family}({self.index})"


def L(m: Index) -> Generator:
    return Generator("L", _norm_index(m))


def G(m: Index) -> Generator:
    return Generator("G", _norm_index(m))


def _norm_index(m: Index) -> Index:
    m = Fraction(m)
    return int(m) if m.denominator == 1 else m


@dataclass(frozen=True)
class LinearCombo:
    """A finite combination of generators plus a multiple of ``C``."""

    terms: Mapping[Generator, ScalarPoly] = field(default_factory=dict)
    central: ScalarPoly = ZERO

    def __post_init__(self):
        clean = {g: v for g, v in self.terms.items() if v}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def of(cls, g: Generator, coeff=ONE) -> "LinearCombo":
        return cls({g: ScalarPoly.coerce(coeff)})

    def is_zero(self) -> bool:
        return not self.terms and not self.central

    def __add__(self, other: "LinearCombo") -> "LinearCombo":
        terms = dict(self.terms)
        for g, v in other.terms.items():
            terms[g] = terms.get(g, ZERO) + v
        return LinearCombo(terms, self.central + other.central)

    def __neg__(self) -> "LinearCombo":
        return self.scale(-1)

    def __sub__(self, other: "LinearCombo") -> "LinearCombo":
        return self + (-other)

    def scale(self, k) -> "LinearCombo":
        k = ScalarPoly.coerce(k)
        return LinearCombo({g: v * k for g, v in self.terms.items()}, self.central * k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCombo):
            return NotImplemented
        return self.terms == other.terms and self.central == other.central

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.central))

    def parity(self) -> int:
        """Parity of a homogeneous combination (zero counts as even)."""
        pars = {g.parity for g in self.terms}
        if len(pars) > 1:
            raise ValueError("inhomogeneous combination")
        return pars.pop() if pars else 0

    def __str__(self) -> str:
        from .parsing import format_coeff

        parts = [f"{format_coeff(v)}*{g}" for g, v in sorted(self.terms.items(), key=_gen_sort)]
        if self.central:
            parts.append(f"{format_coeff(self.central)}*C")
        return " + ".join(parts) if parts else "0"


def _gen_sort(item):
    g = item[0]
    return (g.index, g.family)


@dataclass(frozen=True)
class AlgebraSpec:
    """One of the two bundled superalgebras.

    ``virasoro_cocycle_sign`` exists only to build corrupted copies for
    negative controls; ``-1`` reproduces ``(n^3-n)/12`` in [L, L], which
    breaks super-Jacobi.
    """

    name: str
    virasoro_cocycle_sign: int = 1
    gg_cocycle_sign: int = 1

    def __post_init__(self):
        if self.name not in ("Ramond", "NeveuSchwarz"):
            raise ValueError(f"unknown algebra {self.name!r}")

    # Neveu-Schwarz odd indices are doubled into odd integers for domain work.
    def _g_key(self, index: Index) -> int:
        doubled = Fraction(index) * 2
        if doubled.denominator != 1:
            raise DomainError(f"G({index}) has no index in {self.name}")
        return int(doubled)

    def in_domain(self, g: Generator) -> bool:
        idx = Fraction(g.index)
        if g.family == "L":
            return idx.denominator == 1
        if g.family != "G":
            return False
        if idx.denominator not in (1, 2):
            return False
        key = self._g_key(idx)
        if self.name == "Ramond":
            return key % 2 == 0
        return key % 2 == 1

    def check(self, g: Generator) -> None:
        if not self.in_domain(g):
            raise DomainError(f"{g} is not a generator of {self.name}")

    def generators(self, bound: int) -> list[Generator]:
        """All generators with ``|index| <= bound``, L's then G's, ascending."""
        ls = [L(m) for m in range(-bound, bound + 1)]
        if self.name == "Ramond":
            gs = [G(m) for m in range(-bound, bound + 1)]
        else:
            gs = [G(Fraction(k, 2)) for k in range(-2 * bound, 2 * bound + 1) if k % 2]
        return ls + gs

    def corrupted(self) -> "AlgebraSpec":
        return AlgebraSpec(self.name, -self.virasoro_cocycle_sign, self.gg_cocycle_sign)


RAMOND = AlgebraSpec("Ramond")
NEVEU_SCHWARZ = AlgebraSpec("NeveuSchwarz")


def get_algebra(name: str) -> AlgebraSpec:
    key = name.lower().replace("-", "").replace("_", "")
    if key in ("ramond", "r"):
        return RAMOND
    if key in ("neveuschwarz", "ns"):
        return NEVEU_SCHWARZ
    raise ValueError(f"unknown algebra {name!r}")


@lru_cache(maxsize=None)
def _bracket_data(alg: AlgebraSpec, a: Generator, b: Generator):
    """Bracket as ``((generator, Fraction) or None, central Fraction)``."""
    m, n = Fraction(a.index), Fraction(b.index)
    diag = m + n == 0
    if a.family == "L" and b.family == "L":
        central = alg.virasoro_cocycle_sign * (m**3 - m) / 12 if diag else Fraction(0)
        return ((L(m + n), n - m) if n != m else None), central
    if a.family == "G" and b.family == "G":
        central = alg.gg_cocycle_sign * (4 * m * m - 1) / 12 if diag else Fraction(0)
        return (L(m + n), Fraction(-2)), central
    if a.family == "L":
        coef = n - m / 2
        return ((G(m + n), coef) if coef else None), Fraction(0)
    # [G_m, L_n] = -[L_n, G_m]
    coef = -(m - n / 2)
    return ((G(m + n), coef) if coef else None), Fraction(0)


def bracket_data(alg: AlgebraSpec, a: Generator, b: Generator):
    alg.check(a)
    alg.check(b)
    return _bracket_data(alg, a, b)


def bracket(alg: AlgebraSpec, a: Generator, b: Generator) -> LinearCombo:
    term, central = bracket_data(alg, a, b)
    terms = {term[0]: ScalarPoly.const(term[1])} if term else {}
    return LinearCombo(terms, ScalarPoly.const(central))


def bracket_combos(alg: AlgebraSpec, x: LinearCombo, y: LinearCombo) -> LinearCombo:
    """Bilinear extension of :func:`bracket`; central parts bracket to zero."""
    out = LinearCombo()
    for a, u in x.terms.items():
        for b, v in y.terms.items():
            out = out + bracket(alg, a, b).scale(u * v)
    return out


def super_jacobi_defect(alg: AlgebraSpec, x: LinearCombo, y: LinearCombo, z: LinearCombo) -> LinearCombo:
    """The graded cyclic sum; zero exactly when super-Jacobi holds."""
    px, py, pz = x.parity(), y.parity(), z.parity()
    s1 = -1 if px * pz else 1
    s2 = -1 if py * px else 1
    s3 = -1 if pz * py else 1
    return (
        bracket_combos(alg, bracket_combos(alg, x, y), z).scale(s1)
        + bracket_combos(alg, bracket_combos(alg, y, z), x).scale(s2)
        + bracket_combos(alg, bracket_combos(alg, z, x), y).scale(s3)
    )


@dataclass
class JacobiReport:
    algebra: str
    bound: int
    cases_checked: int
    failures: list[tuple[Generator, Generator, Generator, LinearCombo]]

    @property
    def passed(self) -> bool:
        return not self.failures


def _iter_triples(gens: list[Generator]) -> Iterator[tuple[Generator, Generator, Generator]]:
    return product(gens, repeat=3)


def _fast_defect(alg: AlgebraSpec, a: Generator, b: Generator, c: Generator):
    """Cyclic sum for three generators as ``{generator: Fraction}`` plus central."""
    acc: dict[Generator, Fraction] = {}
    central = Fraction(0)
    for x, y, z, sign in (
        (a, b, c, -1 if a.parity * c.parity else 1),
        (b, c, a, -1 if b.parity * a.parity else 1),
        (c, a, b, -1 if c.parity * b.parity else 1),
    ):
        term, _ = _bracket_data(alg, x, y)
        if term is None:
            continue
        inner, coef = term
        outer, cen = _bracket_data(alg, inner, z)
        if outer is not None:
            acc[outer[0]] = acc.get(outer[0], Fraction(0)) + sign * coef * outer[1]
        central += sign * coef * cen
    return {g: v for g, v in acc.items() if v}, central


def check_super_jacobi(alg: AlgebraSpec, index_bound: int) -> JacobiReport:
    """Exhaustive graded Jacobi over all generator triples with |index| <= bound."""
    if index_bound < 1:
        raise ValueError("index_bound must be >= 1")
    gens = alg.generators(index_bound)
    failures = []
    checked = 0
    for a, b, c in _iter_triples(gens):
        checked += 1
        terms, central = _fast_defect(alg, a, b, c)
        if terms or central:
            defect = LinearCombo(
                {g: ScalarPoly.const(v) for g, v in terms.items()}, ScalarPoly.const(central)
            )
            failures.append((a, b, c, defect))
    return JacobiReport(alg.name, index_bound, checked, failures)


def grading_ok(alg: AlgebraSpec, a: Generator, b: Generator) -> bool:
    """Every output generator has degree deg(a)+deg(b); central only in degree 0."""
    res = bracket(alg, a, b)
    total = Fraction(a.index) + Fraction(b.index)
    if any(Fraction(g.index) != total for g in res.terms):
        return False
    return not res.central or total == 0


def iter_pairs(gens: Iterable[Generator]):
    gens = list(gens)
    return product(gens, repeat=2)
