"""Modules over B = R_+ + C L_0 + C C.

Three families are provided:

* :class:`WhittakerModule` -- the classical Whittaker module
  ``U(B) (x)_{b-hat} C v0`` with basis ``L_0^a v0`` and ``L_0^a v1``
  (``v1 = G_1 v0``), acting by closed formulas;
* :class:`HighOrderWhittakerModule` -- induced from a two-dimensional
  module over ``Gamma(s)``, acting by straightening in U(B);
* :class:`SolvableModule` -- the extension of the simple module
  ``(d-1)^{-1} C[d, d^{-1}]`` over the solvable algebra ``[x, y] = y``.

Labels are plain hashable tuples; elements are ``dict[label, ScalarPoly]``.
"""

from __future__ import annotations

import random
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Hashable, Iterable

from .algebra import RAMOND, G, Generator, L, _bracket_data
from .pbw import RAMOND_PBW, Straightener, Word, add_into
from .scalars import C, ONE, ZERO, ScalarPoly

Label = Hashable
Vector = dict  # label -> ScalarPoly


class NotInSubalgebra(ValueError):
    """A generator outside B was applied to a B-module."""


def in_B(g: Generator) -> bool:
    return g.index >= 0 if g.family == "L" else g.index >= 1


@dataclass(frozen=True)
class SubalgebraSpec:
    """Membership for the subalgebras that appear in the constructions.

    ``B``: L_m (m >= 0), G_m (m >= 1); ``B-hat``: L_m (m >= 0), G_n (n >= 2);
    ``b-hat``: L_m (m >= 1), G_n (n >= 2); ``Gamma(s)``: L_m, G_n with
    m, n >= s; ``R^(r)``: L_m (m > r), G_n (n > r - 1).  The central element
    is contained in B only and is not a generator here.
    """

    name: str
    param: int | None = None

    def __post_init__(self):
        if self.name not in ("B", "B-hat", "b-hat", "Gamma", "R^"):
            raise ValueError(f"unknown subalgebra {self.name!r}")
        if self.name in ("Gamma", "R^") and (self.param is None or self.param < 2):
            raise ValueError(f"{self.name} needs a parameter >= 2")

    def __contains__(self, g: Generator) -> bool:
        m, fam = g.index, g.family
        if self.name == "B":
            return in_B(g)
        if self.name == "B-hat":
            return m >= 0 if fam == "L" else m >= 2
        if self.name == "b-hat":
            return m >= 1 if fam == "L" else m >= 2
        if self.name == "Gamma":
            return m >= self.param
        return m > self.param if fam == "L" else m > self.param - 1


def scale_vec(v: Vector, k: ScalarPoly) -> Vector:
    if not k:
        return {}
    return {u: x * k for u, x in v.items()}


def add_vec(acc: Vector, v: Vector, k: ScalarPoly = ONE) -> None:
    for u, x in v.items():
        add_into(acc, u, x * k)


class BModule(ABC):
    """A module over B with C acting as the formal central charge c.

    Subclasses implement :meth:`_act_label`; everything else (linear
    extension, words, caching) lives here.  ``r`` is the parameter for
    which the simplicity hypotheses (``L_r`` injective, ``L_m V = G_r V = 0``
    for ``m > r``) are claimed.
    """

    name: str = "module"
    r: int = 2

    def __init__(self):
        self._cache: dict[tuple[Generator, Label], Vector] = {}
        self._word_cache: dict[tuple[Word, Label], Vector] = {}

    # -- subclass interface -------------------------------------------------

    @abstractmethod
    def _act_label(self, g: Generator, label: Label) -> Vector: ...

    @abstractmethod
    def parity(self, label: Label) -> int: ...

    @abstractmethod
    def basis(self, cap: int) -> list[Label]:
        """A finite truncation of the basis, growing with ``cap``."""

    @abstractmethod
    def format_label(self, label: Label) -> str: ...

    @abstractmethod
    def parse_label(self, text: str) -> Label: ...

    def label_sort_key(self, label: Label):
        return label

    def params(self) -> dict[str, Any]:
        return {}

    def random_element(self, rng: random.Random, cap: int = 2, terms: int = 3) -> Vector:
        labels = self.basis(cap)
        out: Vector = {}
        for _ in range(rng.randint(1, terms)):
            add_into(out, rng.choice(labels), ScalarPoly.const(_small_rational(rng)))
        return out

    # -- action ---------------------------------------------------------------

    def act_label(self, g: Generator, label: Label) -> Vector:
        key = (g, label)
        hit = self._cache.get(key)
        if hit is None:
            if not in_B(g):
                raise NotInSubalgebra(f"{g} is not in B")
            hit = {u: v for u, v in self._act_label(g, label).items() if v}
            self._cache[key] = hit
        return hit

    def act(self, g: Generator, v: Vector) -> Vector:
        out: Vector = {}
        for u, x in v.items():
            add_vec(out, self.act_label(g, u), x)
        return out

    def act_word_label(self, word: Word, label: Label) -> Vector:
        """Apply ``word`` to a basis vector, rightmost letter first."""
        if not word:
            return {label: ONE}
        key = (word, label)
        hit = self._word_cache.get(key)
        if hit is None:
            inner = self.act_word_label(word[1:], label)
            hit = self.act(word[0], inner)
            self._word_cache[key] = hit
        return hit

    def act_word(self, word: Word, v: Vector) -> Vector:
        out: Vector = {}
        for u, x in v.items():
            add_vec(out, self.act_word_label(word, u), x)
        return out

    def format_vector(self, v: Vector) -> str:
        from .parsing import format_coeff

        items = sorted(v.items(), key=lambda kv: self.label_sort_key(kv[0]))
        return " + ".join(f"{format_coeff(x)}*{self.format_label(u)}" for u, x in items) or "0"


def _small_rational(rng: random.Random) -> Fraction:
    while True:
        num = rng.randint(-4, 4)
        if num:
            return Fraction(num, rng.randint(1, 3))


def _binomial_shift(a: int, m: int) -> list[tuple[int, Fraction]]:
    """Coefficients of ``(L_0 - m)^a`` as ``[(j, coeff of L_0^j)]``."""
    return [(j, Fraction(comb(a, j) * (-m) ** (a - j))) for j in range(a + 1)]


# -- classical Whittaker --------------------------------------------------------


class WhittakerModule(BModule):
    """``V_phi`` on the basis ``L_0^a v_tau`` (``tau = 0, 1``; ``v1 = G_1 v0``).

    ``phi`` is a character of b-hat; only ``phi(L_1)`` and ``phi(L_2)`` may
    be nonzero.  ``validate=False`` admits any assignment, which is how the
    corrupted negative controls are built.
    """

    name = "whittaker"
    r = 2

    def __init__(self, phi: dict[int, Fraction | int] | None = None, *, validate: bool = True):
        super().__init__()
        phi = {int(m): Fraction(v) for m, v in (phi or {}).items() if v}
        if validate:
            bad = [m for m in phi if m not in (1, 2)]
            if bad:
                raise ValueError(f"phi(L_{bad[0]}) must vanish: only phi(L_1), phi(L_2) are free on b-hat")
        self.phi = phi

    @property
    def simple(self) -> bool:
        return self.phi.get(2, 0) != 0

    def phi_of(self, m: int) -> Fraction:
        return self.phi.get(m, Fraction(0))

    def params(self):
        return {"phi": {f"L{m}": str(v) for m, v in sorted(self.phi.items())}}

    def _shifted(self, a: int, m: int, tau: int, scale: Fraction) -> Vector:
        if not scale:
            return {}
        return {(j, tau): ScalarPoly.const(scale * x) for j, x in _binomial_shift(a, m) if x}

    def _act_label(self, g, label):
        a, tau = label
        m = g.index
        if g.family == "L":
            if m == 0:
                return {(a + 1, tau): ONE}
            return self._shifted(a, m, tau, self.phi_of(m))
        if m == 1:
            if tau == 0:
                return self._shifted(a, 1, 1, Fraction(1))
            return self._shifted(a, 1, 0, -self.phi_of(2))
        if tau == 0:
            return {}
        return self._shifted(a, m, 0, -2 * self.phi_of(m + 1))

    def parity(self, label):
        return label[1]

    def basis(self, cap):
        return [(a, tau) for a in range(cap + 1) for tau in (0, 1)]

    def label_sort_key(self, label):
        return (label[1], label[0])

    def format_label(self, label):
        a, tau = label
        v = f"v{tau}"
        if a == 0:
            return v
        return f"L0 {v}" if a == 1 else f"L0^{a} {v}"

    def parse_label(self, text):
        m = re.fullmatch(r"\s*(?:L0(?:\^(\d+))?\s+)?v([01])\s*", text)
        if not m:
            raise ValueError(f"expected L0^a v0 or L0^a v1, got {text!r}")
        if m.group(0).strip().startswith("L0"):
            a = int(m.group(1) or 1)
        else:
            a = 0
        return (a, int(m.group(2)))


# -- induction from a finite-dimensional head -----------------------------------


class InducedBModule(BModule):
    """``U(B) (x)_{U(H)} head`` for a subalgebra H of B spanned by generators.

    Labels are ``(quotient_word, head_index)`` where ``quotient_word`` is a
    normal word in the letters of B outside H.  ``head_act(g, h)`` gives
    the action of a letter of H on head basis vector ``h`` as
    ``{h': Fraction}``.
    """

    def __init__(
        self,
        in_head_algebra,
        head_act,
        head_parities: tuple[int, ...],
        quotient_letters: list[Generator],
        head_names: tuple[str, ...] | None = None,
    ):
        super().__init__()
        self.head_names = head_names or tuple(f"h{n}" for n in range(len(head_parities)))
        self._in_h = in_head_algebra
        self._head_act = head_act
        self.head_parities = head_parities
        self.quotient_letters = quotient_letters
        self._straightener = Straightener(RAMOND, self._key)

    def _key(self, g: Generator):
        return (1 if self._in_h(g) else 0, g.index, g.parity)

    def _act_label(self, g, label):
        word, h = label
        out: Vector = {}
        for nw, coeff in self._straightener.normal_order((g,) + word).items():
            cut = len(nw)
            for pos, x in enumerate(nw):
                if self._in_h(x):
                    cut = pos
                    break
            prefix, suffix = nw[:cut], nw[cut:]
            head_vec = {h: Fraction(1)}
            for x in reversed(suffix):
                nxt: dict[int, Fraction] = {}
                for hh, val in head_vec.items():
                    for h2, val2 in self._head_act(x, hh).items():
                        nxt[h2] = nxt.get(h2, Fraction(0)) + val * val2
                head_vec = {k: v for k, v in nxt.items() if v}
                if not head_vec:
                    break
            for h2, val in head_vec.items():
                add_into(out, (prefix, h2), coeff * val)
        return out

    def parity(self, label):
        word, h = label
        return (sum(g.parity for g in word) + self.head_parities[h]) % 2

    def basis(self, cap):
        """Normal quotient words with total even exponent <= cap, times heads."""
        evens = [g for g in self.quotient_letters if g.parity == 0]
        odds = [g for g in self.quotient_letters if g.parity == 1]
        words: list[Word] = []

        def rec(i: int, left: int, acc: list[Generator]):
            if i == len(evens):
                for mask in range(1 << len(odds)):
                    chosen = acc + [odds[j] for j in range(len(odds)) if mask >> j & 1]
                    words.append(tuple(sorted(chosen, key=self._key)))
                return
            for e in range(left + 1):
                rec(i + 1, left - e, acc + [evens[i]] * e)

        rec(0, cap, [])
        return [(w, h) for w in sorted(set(words), key=self._word_sort) for h in range(len(self.head_parities))]

    def _word_sort(self, w: Word):
        return (len(w), [self._key(g) for g in w])

    def label_sort_key(self, label):
        return (label[1], self._word_sort(label[0]))

    def _format_word(self, word: Word) -> str:
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            tok = f"{word[i].family}{word[i].index}"
            parts.append(tok if j - i == 1 else f"{tok}^{j - i}")
            i = j
        return " ".join(parts)

    def format_label(self, label):
        word, h = label
        w = self._format_word(word)
        return f"{w} {self.head_names[h]}" if w else self.head_names[h]

    def parse_label(self, text):
        for h in sorted(range(len(self.head_names)), key=lambda n: -len(self.head_names[n])):
            name = self.head_names[h]
            stripped = text.strip()
            if stripped == name or stripped.endswith(" " + name):
                return (self._parse_word(stripped[: len(stripped) - len(name)]), h)
        raise ValueError(f"label must end with a head vector {self.head_names}: {text!r}")

    def _parse_word(self, text: str) -> Word:
        letters: list[Generator] = []
        for tok in text.split():
            m = re.fullmatch(r"([LG])(\d+)(?:\^(\d+))?", tok)
            if not m:
                raise ValueError(f"bad letter {tok!r}")
            g = Generator(m.group(1), int(m.group(2)))
            if g not in self.quotient_letters:
                raise ValueError(f"{tok} is not a basis letter")
            letters.extend([g] * int(m.group(3) or 1))
        word = tuple(letters)
        if not self._straightener.is_normal(word):
            raise ValueError(f"{text!r} is not in basis order")
        return word


class HighOrderWhittakerModule(InducedBModule):
    """``V_{phi_s}``, induced from a 2-dimensional module over Gamma(s).

    The head is ``C v0 + C G_s v0``: ``L_m`` acts by the scalar
    ``phi(L_m)`` (nonzero only for ``s <= m <= 2s``), ``G_s v0 = G_s v0``,
    ``G_s (G_s v0) = -phi(L_{2s}) v0`` and ``G_n`` (``n > s``) acts by 0.
    Induction runs over the letters ``L_0..L_{s-1}, G_1..G_{s-1}``.
    """

    name = "highorder"

    def __init__(self, s: int, phi: dict[int, Fraction | int] | None = None, *, validate: bool = True):
        if s < 2:
            raise ValueError("s must be >= 2")
        phi = {int(m): Fraction(v) for m, v in (phi or {}).items() if v}
        if validate:
            bad = [m for m in phi if not s <= m <= 2 * s]
            if bad:
                raise ValueError(f"phi_s(L_{bad[0]}) must vanish: only L_{s}..L_{2 * s} are free on Gamma({s})")
        self.s = s
        self.phi = phi
        self.r = 2 * s
        quotient = [L(m) for m in range(s)] + [G(m) for m in range(1, s)]
        super().__init__(lambda g, s=s: g.index >= s, self._head, (0, 1), quotient, ("v0", f"G{s} v0"))

    @property
    def simple(self) -> bool:
        return self.phi.get(2 * self.s, 0) != 0

    def params(self):
        return {"s": self.s, "phi": {f"L{m}": str(v) for m, v in sorted(self.phi.items())}}

    def _head(self, g: Generator, h: int) -> dict[int, Fraction]:
        if g.family == "L":
            val = self.phi.get(g.index, Fraction(0))
            return {h: val} if val else {}
        if g.index != self.s:
            return {}
        if h == 0:
            return {1: Fraction(1)}
        val = -self.phi.get(2 * self.s, Fraction(0))
        return {0: val} if val else {}


def whittaker_by_induction(phi: dict[int, Fraction | int]) -> InducedBModule:
    """The classical Whittaker module rebuilt by brute-force induction from b-hat.

    Independent of :class:`WhittakerModule`'s closed formulas; the label
    ``(L_0^a G_1^tau, 0)`` corresponds to ``(a, tau)`` there.
    """
    phi = {int(m): Fraction(v) for m, v in phi.items()}

    def head(g: Generator, h: int):
        if g.family == "G":
            return {}
        val = phi.get(g.index, Fraction(0))
        return {0: val} if val else {}

    in_bhat = lambda g: g.index >= 1 if g.family == "L" else g.index >= 2  # noqa: E731
    mod = InducedBModule(in_bhat, head, (0,), [L(0), G(1)], ("v0",))
    mod.name = "whittaker-induced"
    return mod


# -- the solvable-algebra module --------------------------------------------------


@dataclass(frozen=True)
class LaurentFraction:
    """``q(d) / (d - 1)`` for a Laurent polynomial ``q``, stored as its numerator."""

    numerator: dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "numerator", {k: Fraction(v) for k, v in self.numerator.items() if v})

    def is_zero(self) -> bool:
        return not self.numerator

    def __add__(self, other: "LaurentFraction") -> "LaurentFraction":
        return LaurentFraction(laurent_add(self.numerator, other.numerator))

    def scale(self, k) -> "LaurentFraction":
        return LaurentFraction({e: v * k for e, v in self.numerator.items()})

    def __eq__(self, other):
        if not isinstance(other, LaurentFraction):
            return NotImplemented
        return self.numerator == other.numerator

    def __hash__(self):
        return hash(frozenset(self.numerator.items()))


def laurent_add(p: dict[int, Fraction], q: dict[int, Fraction]) -> dict[int, Fraction]:
    out = dict(p)
    for e, v in q.items():
        out[e] = out.get(e, Fraction(0)) + v
    return {e: v for e, v in out.items() if v}


def laurent_mul(p: dict[int, Fraction], q: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for e, v in p.items():
        for f, w in q.items():
            out[e + f] = out.get(e + f, Fraction(0)) + v * w
    return {e: v for e, v in out.items() if v}


def laurent_derivative(p: dict[int, Fraction]) -> dict[int, Fraction]:
    return {e - 1: v * e for e, v in p.items() if e}


def _x_numerator(q: dict[int, Fraction]) -> dict[int, Fraction]:
    # d*q' - (1 + d^-1 + d^-2) * q
    out = {e: v * e for e, v in q.items() if e}
    return laurent_add(out, laurent_mul({0: Fraction(-1), -1: Fraction(-1), -2: Fraction(-1)}, q))


def solvable_xy(which: str, f: LaurentFraction) -> LaurentFraction:
    """``y`` multiplies by d; ``x`` is ``d d/dd + 1/(d^2 (d-1))`` on numerators."""
    if which == "y":
        return LaurentFraction({e + 1: v for e, v in f.numerator.items()})
    if which == "x":
        return LaurentFraction(_x_numerator(f.numerator))
    raise ValueError("which must be 'x' or 'y'")


def x_action_cleared(q: dict[int, Fraction]) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
    """Both sides of ``d^2 (d-1)^2 * (x . q/(d-1))`` as Laurent polynomials.

    First entry: the raw fraction formula ``d f' + f/(d^2 (d-1))`` with
    ``f = q/(d-1)``, multiplied through, i.e. ``d^3 (q'(d-1) - q) + q``.
    Second entry: the numerator closed form times ``d^2 (d-1)``.
    """
    dm1 = {1: Fraction(1), 0: Fraction(-1)}
    raw = laurent_add(
        laurent_mul({3: Fraction(1)}, laurent_add(laurent_mul(laurent_derivative(q), dm1), {e: -v for e, v in q.items()})),
        q,
    )
    closed = laurent_mul(laurent_mul({2: Fraction(1)}, dm1), _x_numerator(q))
    return raw, closed


class SolvableModule(BModule):
    """``V_k``: plain labels ``(n, 0)`` = ``d^n/(d-1)``, partner labels ``(n, 1)`` = ``G_1 d^n/(d-1)``."""

    name = "solvable"
    r = 2

    def _plain(self, q: dict[int, Fraction], flag: int) -> Vector:
        return {(e, flag): ScalarPoly.const(v) for e, v in q.items() if v}

    def _act_label(self, g, label):
        n, flag = label
        m = g.index
        mono = {n: Fraction(1)}
        if g.family == "L":
            if m == 0:
                twice_x = {e: 2 * v for e, v in _x_numerator(mono).items()}
                if flag:
                    twice_x = laurent_add(twice_x, mono)
                return self._plain(twice_x, flag)
            if m == 2:
                return {(n + 1, flag): ONE}
            return {}
        if m == 1:
            return {(n, 1): ONE} if flag == 0 else {(n + 1, 0): -ONE}
        return {}

    def parity(self, label):
        return label[1]

    def basis(self, cap):
        return [(n, flag) for n in range(-cap, cap + 1) for flag in (0, 1)]

    def label_sort_key(self, label):
        return (label[1], label[0])

    def random_element(self, rng, cap=3, terms=4):
        out: Vector = {}
        for _ in range(rng.randint(1, terms)):
            add_into(out, (rng.randint(-cap, cap), rng.randint(0, 1)), ScalarPoly.const(_small_rational(rng)))
        return out

    def format_label(self, label):
        n, flag = label
        return f"G1 d^{n}" if flag else f"d^{n}"

    def parse_label(self, text):
        m = re.fullmatch(r"\s*(G1\s+)?d\^(-?\d+)\s*", text)
        if not m:
            raise ValueError(f"expected d^n or G1 d^n, got {text!r}")
        return (int(m.group(2)), 1 if m.group(1) else 0)


def element_from_fraction(f: LaurentFraction, partner: bool = False) -> Vector:
    flag = 1 if partner else 0
    return {(e, flag): ScalarPoly.const(v) for e, v in f.numerator.items()}


# -- axiom checker ----------------------------------------------------------------


@dataclass
class AxiomReport:
    module: str
    index_bound: int
    cases_checked: int
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def b_generators(index_bound: int) -> list[Generator]:
    return [L(m) for m in range(index_bound + 1)] + [G(m) for m in range(1, index_bound + 1)]


def bracket_on_vector(module: BModule, x: Generator, y: Generator, v: Vector) -> Vector:
    """``[x, y] v`` with C acting as c."""
    term, central = _bracket_data(RAMOND, x, y)
    out: Vector = {}
    if term is not None:
        add_vec(out, module.act(term[0], v), ScalarPoly.const(term[1]))
    if central:
        add_vec(out, v, C * central)
    return out


def axiom_defect(module: BModule, x: Generator, y: Generator, v: Vector) -> Vector:
    """``x(yv) - (-1)^{|x||y|} y(xv) - [x,y]v``."""
    sign = -1 if x.parity and y.parity else 1
    out: Vector = {}
    add_vec(out, module.act(x, module.act(y, v)))
    add_vec(out, module.act(y, module.act(x, v)), ScalarPoly.const(-sign))
    add_vec(out, bracket_on_vector(module, x, y, v), -ONE)
    return out


def bmodule_axiom_check(
    module: BModule, index_bound: int, sample_size: int = 0, seed: int = 0, label_cap: int = 3
) -> AxiomReport:
    """Exhaustive super module axiom on truncated basis labels plus random elements.

    Also checks that each generator maps a basis label into labels of
    parity ``|g| + |label|``.
    """
    if index_bound < 2:
        raise ValueError("index_bound must be >= 2")
    rng = random.Random(seed)
    gens = b_generators(index_bound)
    vectors: list[tuple[str, Vector]] = [(module.format_label(u), {u: ONE}) for u in module.basis(label_cap)]
    for _ in range(sample_size):
        v = module.random_element(rng)
        vectors.append((module.format_vector(v), v))
    report = AxiomReport(module.name, index_bound, 0)
    for u in module.basis(label_cap):
        for g in gens:
            want = (g.parity + module.parity(u)) % 2
            for u2 in module.act_label(g, u):
                if module.parity(u2) != want:
                    report.failures.append({"case": f"parity {g} on {module.format_label(u)}", "expected": want, "actual": module.parity(u2)})
    for x in gens:
        for y in gens:
            for desc, v in vectors:
                report.cases_checked += 1
                d = axiom_defect(module, x, y, v)
                if d:
                    report.failures.append({"case": f"{x},{y} on {desc}", "expected": "0", "actual": module.format_vector(d)})
    return report
