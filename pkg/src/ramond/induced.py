"""The induced module Ind(V) = U(R) (x)_{U(B)} V and its degree machinery.

Elements are stored in the unique normal form ``sum coeff * g_i (x) u`` with
``i`` an :class:`SVector` and ``u`` a basis label of the B-module ``V``.
The probes below the action code follow the degree arguments used to show
these modules are simple: each is a finite, exact check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .algebra import G, Generator, L
from .bmodules import BModule, Vector
from .pbw import (
    RAMOND_PBW,
    SVector,
    ZERO_VECTOR,
    add_into,
    enumerate_svectors,
    monomial_of,
    principal_key,
    split_word,
    svector_sub,
    weight_W,
)
from .scalars import ONE, ScalarPoly

Key = tuple  # (SVector, label)


class ZeroElementError(ValueError):
    """deg, W and probes are undefined on the zero element."""


@dataclass
class InducedElement:
    terms: dict[Key, ScalarPoly] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def basis(cls, i: SVector, label, coeff=ONE) -> "InducedElement":
        return cls({(SVector(i), label): ScalarPoly.coerce(coeff)})

    @classmethod
    def from_vector(cls, v: Vector, i: SVector = ZERO_VECTOR) -> "InducedElement":
        """``1 (x) v`` (or ``g_i (x) v``)."""
        return cls({(i, u): x for u, x in v.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "InducedElement") -> "InducedElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            add_into(out, k, v)
        return InducedElement(out)

    def scale(self, k) -> "InducedElement":
        k = ScalarPoly.coerce(k)
        return InducedElement({key: v * k for key, v in self.terms.items()})

    def __sub__(self, other: "InducedElement") -> "InducedElement":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, InducedElement):
            return NotImplemented
        return self.terms == other.terms

    def specialize(self, c_value) -> "InducedElement":
        return InducedElement({k: v.specialize(c_value) for k, v in self.terms.items()})

    def row(self, i: SVector) -> Vector:
        """The V-component sitting over ``g_i``."""
        return {u: v for (j, u), v in self.terms.items() if j == i}


class InducedModule:
    """``Ind(V)`` for a fixed B-module, with the straightened action cached per (g, i)."""

    def __init__(self, module: BModule):
        self.module = module
        self._split_cache: dict[tuple[Generator, SVector], list] = {}
        self._act_cache: dict[tuple[Generator, Key], dict[Key, ScalarPoly]] = {}

    def _split(self, g: Generator, i: SVector):
        key = (g, i)
        hit = self._split_cache.get(key)
        if hit is None:
            hit = []
            for word, coeff in RAMOND_PBW.normal_order((g,) + monomial_of(i)).items():
                low, high = split_word(word)
                hit.append((low, high, coeff))
            self._split_cache[key] = hit
        return hit

    def act_term(self, g: Generator, i: SVector, label) -> dict[Key, ScalarPoly]:
        key = (g, (i, label))
        hit = self._act_cache.get(key)
        if hit is None:
            hit = {}
            for low, high, coeff in self._split(g, i):
                for u, x in self.module.act_word_label(high, label).items():
                    add_into(hit, (low, u), coeff * x)
            self._act_cache[key] = hit
        return hit

    def act(self, g: Generator, w: InducedElement) -> InducedElement:
        out: dict[Key, ScalarPoly] = {}
        for (i, u), v in w.terms.items():
            for k, x in self.act_term(g, i, u).items():
                add_into(out, k, v * x)
        return InducedElement(out)

    def act_word(self, word, w: InducedElement) -> InducedElement:
        for g in reversed(tuple(word)):
            w = self.act(g, w)
        return w


_INDUCED: dict[int, InducedModule] = {}


def induced_module(module: BModule) -> InducedModule:
    hit = _INDUCED.get(id(module))
    if hit is None or hit.module is not module:
        hit = InducedModule(module)
        _INDUCED[id(module)] = hit
    return hit


def induced_act(g: Generator, w: InducedElement, V: BModule) -> InducedElement:
    return induced_module(V).act(g, w)


# -- support and degree -----------------------------------------------------------


def supp(w: InducedElement) -> set[SVector]:
    return {i for (i, _u) in w.terms}


def supp_m(w: InducedElement, m: int) -> set[SVector]:
    return {i for i in supp(w) if weight_W(i) == m}


def deg(w: InducedElement) -> SVector:
    if not w.terms:
        raise ZeroElementError("deg is defined only for nonzero elements")
    return max(supp(w), key=principal_key)


def weight_of(w: InducedElement) -> int:
    return weight_W(deg(w))


def supp_deg(w: InducedElement) -> tuple[set[SVector], SVector, int]:
    d = deg(w)
    return supp(w), d, weight_W(d)


# -- simplicity probe --------------------------------------------------------------


def reducing_generator(i: SVector, r: int) -> Generator:
    """``L_{r+k}`` when the first nonzero position is ``2k-1``, ``G_{r+k-1}`` when it is ``2k``."""
    pos = i.min_position()
    if pos == 0:
        raise ValueError("the zero vector needs no reduction")
    k = (pos + 1) // 2
    return L(r + k) if pos % 2 else G(r + k - 1)


@dataclass
class ProbeStep:
    op: Generator
    deg_after: SVector | None


@dataclass
class ProbeTrace:
    steps: list[ProbeStep]
    terminal: InducedElement
    ok: bool
    reason: str = ""

    def to_dict(self, module: BModule):
        from .parsing import format_induced

        return {
            "steps": [{"op": str(s.op), "deg_after": repr(s.deg_after) if s.deg_after is not None else None} for s in self.steps],
            "terminal": format_induced(self.terminal, module),
            "ok": self.ok,
            "reason": self.reason,
        }


def simplicity_probe(w: InducedElement, r: int, V: BModule, max_steps: int | None = None) -> ProbeTrace:
    """Drive ``w`` down to ``1 (x) V`` by the degree-reducing generators.

    A zero intermediate or a non-decreasing degree is reported through
    ``ok=False`` rather than raised: it is the observable that would
    refute the hypotheses on ``V``.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    if not w:
        raise ZeroElementError("the probe needs a nonzero element")
    ind = induced_module(V)
    d = deg(w)
    limit = max_steps if max_steps is not None else sum(d) + 1
    steps: list[ProbeStep] = []
    while d:
        if len(steps) >= limit:
            return ProbeTrace(steps, w, False, "step limit reached")
        g = reducing_generator(d, r)
        w = ind.act(g, w)
        if not w:
            steps.append(ProbeStep(g, None))
            return ProbeTrace(steps, w, False, f"{g} gave zero")
        nd = deg(w)
        steps.append(ProbeStep(g, nd))
        if principal_key(nd) >= principal_key(d):
            return ProbeTrace(steps, w, False, f"deg did not drop: {d} -> {nd}")
        d = nd
    return ProbeTrace(steps, w, True)


# -- annihilator space -------------------------------------------------------------


def annihilation_generators(b: int, window: int) -> list[Generator]:
    """``L_m`` for ``b < m <= b + window`` and ``G_n`` for ``b - 1 < n <= b - 1 + window``."""
    return [L(m) for m in range(b + 1, b + window + 1)] + [G(n) for n in range(b, b + window)]


def _to_domain(p: ScalarPoly, K, c_sym, c_value):
    import sympy

    if c_value is not None:
        v = p.eval(c_value)
        return K.from_sympy(sympy.Rational(v.numerator, v.denominator))
    expr = sum(sympy.Rational(x.numerator, x.denominator) * c_sym**k for k, x in enumerate(p.coeffs))
    return K.from_sympy(expr)


def _from_poly(poly) -> ScalarPoly:
    coeffs: dict[int, Fraction] = {}
    for (k,), x in poly.terms():
        coeffs[k] = Fraction(int(x.numerator), int(x.denominator))
    top = max(coeffs) if coeffs else -1
    return ScalarPoly(coeffs.get(k, Fraction(0)) for k in range(top + 1))


def _clear_row(row: dict[int, object], symbolic: bool) -> dict[int, ScalarPoly]:
    """Normalise a nullspace row: primitive over Q[c], monic first entry."""
    if not symbolic:
        out = {j: ScalarPoly.const(Fraction(int(x.numerator), int(x.denominator))) for j, x in row.items()}
    else:
        g = None
        for p in row.values():
            g = p if g is None else g.gcd(p)
        out = {j: _from_poly(p.exquo(g)) for j, p in row.items()}
    lead = out[min(out)]
    return {j: v * (1 / lead.coeffs[-1]) for j, v in out.items()}


_PROBE_C = Fraction(7, 3)


@dataclass
class AnnihilatorResult:
    basis: list[InducedElement]
    columns: int
    constraints: int
    generators: list[Generator]


def annihilator_space(
    V: BModule,
    b: int,
    weight_cap: int,
    index_window: int,
    label_cap: int = 3,
    c_value=None,
) -> AnnihilatorResult:
    """Exact solution space of ``L_m w = G_n w = 0`` on the slice ``W <= weight_cap``.

    The slice is spanned by ``g_i (x) u`` for ``W(i) <= weight_cap`` and
    ``u`` in ``V.basis(label_cap)``; images are compared on every
    coordinate they reach.  With ``c_value=None`` the system is solved over
    Q(c), otherwise ``c`` is replaced by the given rational first.
    """
    import sympy
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix

    if weight_cap < 0:
        raise ValueError("weight_cap must be >= 0")
    labels = V.basis(label_cap)
    if not labels:
        raise ValueError("empty label truncation")
    ind = induced_module(V)
    gens = annihilation_generators(b, index_window)
    columns = [(i, u) for i in enumerate_svectors(weight_cap) for u in labels]

    rows: dict[tuple, int] = {}
    entries: dict[int, dict[int, ScalarPoly]] = {}  # column -> row -> value
    for j, (i, u) in enumerate(columns):
        col: dict[int, ScalarPoly] = {}
        for g in gens:
            for key, x in ind.act_term(g, i, u).items():
                x = x.specialize(c_value)
                if not x:
                    continue
                r = rows.setdefault((g, key), len(rows))
                col[r] = x
        entries[j] = col

    # connected components of the column/row incidence graph
    parent = list(range(len(columns)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    owner: dict[int, int] = {}
    for j, col in entries.items():
        for r in col:
            if r in owner:
                ra, rb = find(owner[r]), find(j)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
            else:
                owner[r] = j
    groups: dict[int, list[int]] = {}
    for j in range(len(columns)):
        groups.setdefault(find(j), []).append(j)

    symbolic = c_value is None
    c_sym = sympy.Symbol("c")
    # fraction-free elimination over Q[c] is far cheaper than working in Q(c)
    K = QQ[c_sym] if symbolic else QQ

    def nullspace(cols: list[int], ring, at) -> list[dict[int, object]]:
        row_ids = sorted({r for j in cols for r in entries[j]})
        rpos = {r: n for n, r in enumerate(row_ids)}
        data: dict[int, dict[int, object]] = {}
        for cpos, j in enumerate(cols):
            for r, x in entries[j].items():
                val = _to_domain(x, ring, c_sym, at)
                if val:
                    data.setdefault(rpos[r], {})[cpos] = val
        N = DomainMatrix(data, (len(row_ids), len(cols)), ring).nullspace()
        by_row: dict[int, dict[int, object]] = {}
        for (a, cpos), x in (N.to_dok() if N.shape[0] else {}).items():
            if x:
                by_row.setdefault(a, {})[cpos] = x
        return [by_row[a] for a in sorted(by_row)]

    basis: list[InducedElement] = []
    for root in sorted(groups):
        cols = groups[root]
        if not any(entries[j] for j in cols):
            for j in cols:
                basis.append(InducedElement({columns[j]: ONE}))
            continue
        if not symbolic:
            found = [(cols, row) for row in nullspace(cols, QQ, c_value)]
        else:
            # The nullity at one rational c bounds the nullity over Q(c).
            # Solve symbolically on the columns the specialised solutions
            # touch; if that already reaches the bound it is the whole answer.
            probe = nullspace(cols, QQ, _PROBE_C)
            if not probe:
                continue
            touched = sorted({cols[cpos] for row in probe for cpos in row})
            found = [(touched, row) for row in nullspace(touched, K, None)]
            if len(found) != len(probe):
                found = [(cols, row) for row in nullspace(cols, K, None)]
        for sub, row in found:
            clean = _clear_row(row, symbolic)
            basis.append(InducedElement({columns[sub[cpos]]: v for cpos, v in clean.items()}))
    basis.sort(key=lambda e: min((principal_key(i), repr(u)) for (i, u) in e.terms))
    return AnnihilatorResult(basis, len(columns), len(rows), gens)


def annihilates(V: BModule, w: InducedElement, gens: Iterable[Generator]) -> list[Generator]:
    """Generators in ``gens`` that do not kill ``w``."""
    ind = induced_module(V)
    return [g for g in gens if ind.act(g, w)]


# -- restricted bound and nilpotency ----------------------------------------------


@dataclass
class BoundResult:
    k: int
    verified: bool
    offenders: list[Generator]


def restricted_bound(w: InducedElement, V: BModule, r: int, index_window: int = 8) -> BoundResult:
    """``k = W(w) + r``; every ``L_m``, ``G_m`` with ``k < m <= k + window`` must kill ``w``."""
    k = weight_of(w) + r
    gens = [L(m) for m in range(k + 1, k + index_window + 1)] + [G(m) for m in range(k + 1, k + index_window + 1)]
    bad = annihilates(V, w, gens)
    return BoundResult(k, not bad, bad)


def nilpotency_bound(g: Generator, W: int, r: int) -> int:
    m = g.index
    if g.family == "L":
        if m <= r:
            raise ValueError(f"L_{m} needs index > r = {r}")
        return math.ceil(W / (m - r)) + 2
    if m <= r - 1:
        raise ValueError(f"G_{m} needs index > r - 1 = {r - 1}")
    # G^2 = -L_{2m}, so the L bound for L_{2m} doubles
    return 2 * (math.ceil(W / (2 * m - r)) + 2)


@dataclass
class NilpotencyResult:
    exponent: int | None
    bound: int

    @property
    def within_bound(self) -> bool:
        return self.exponent is not None and self.exponent <= self.bound


def nilpotency_probe(g: Generator, w: InducedElement, V: BModule, r: int) -> NilpotencyResult:
    """Least ``n`` with ``g^n w = 0``; searched up to the proven bound."""
    if not w:
        raise ZeroElementError("nilpotency of the zero element is trivial")
    bound = nilpotency_bound(g, weight_of(w), r)
    ind = induced_module(V)
    cur = w
    for n in range(1, bound + 1):
        cur = ind.act(g, cur)
        if not cur:
            return NilpotencyResult(n, bound)
    return NilpotencyResult(None, bound)


# -- lemma transcriptions ------------------------------------------------------------


def check_weight_drop(V: BModule, F: Generator, w: InducedElement, r: int) -> str | None:
    """Weight drop and support shape of ``F_k w`` for ``k >= r``; None when both hold."""
    k = F.index
    q = weight_of(w)
    img = induced_act(F, w, V)
    if not img:
        return None
    wq = weight_of(img)
    if wq > q - k + r:
        return f"W({F} w) = {wq} > {q - k + r}"
    top = supp_m(w, q)
    for jp in sorted(supp_m(img, q - k + r), key=principal_key):
        if not any(svector_sub(i, jp) is not None for i in top):
            return f"{jp} in supp_{q - k + r}({F} w) is not i - j for i in supp_{q}"
    return None


def check_degree_prediction(V: BModule, i: SVector, label, r: int) -> str | None:
    """``deg(F g_i u) = i - eps_k`` for the reducing generator of ``i``."""
    F = reducing_generator(i, r)
    img = induced_act(F, InducedElement.basis(i, label), V)
    target = svector_sub(i, SVector.epsilon(i.min_position()))
    if not img:
        return f"{F} g_{i} {V.format_label(label)} = 0"
    d = deg(img)
    if d != target:
        return f"deg({F} g_{i} {V.format_label(label)}) = {d}, expected {target}"
    return None


def random_element(V: BModule, rng, weight_cap: int, terms: int = 4, label_cap: int = 2) -> InducedElement:
    """A nonzero element with ``W <= weight_cap`` and small rational coefficients."""
    from .bmodules import _small_rational

    vecs = enumerate_svectors(weight_cap)
    heavy = [v for v in vecs if weight_W(v) == weight_cap] or vecs
    labels = V.basis(label_cap)
    out: dict[Key, ScalarPoly] = {}
    while not out:
        # one term at the cap keeps the sample spread over the top weights
        add_into(out, (rng.choice(heavy), rng.choice(labels)), ScalarPoly.const(_small_rational(rng)))
        for _ in range(rng.randint(0, terms - 1)):
            add_into(out, (rng.choice(vecs), rng.choice(labels)), ScalarPoly.const(_small_rational(rng)))
    return InducedElement(out)
