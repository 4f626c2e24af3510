"""PBW straightening in U(R) and the exponent-vector combinatorics.

Normal words put every lowering letter (``L_m`` with ``m <= -1`` and
``G_m`` with ``m <= 0``) first, in the order

    ... G_{-2} L_{-3} G_{-1} L_{-2} G_0 L_{-1}

and then the letters of B (``L_m``, ``m >= 0`` and ``G_m``, ``m >= 1``)
ascending by index with L before G.  Odd letters never repeat in a normal
word: ``G_a G_a`` is rewritten to ``[G_a, G_a]/2``.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import RAMOND, AlgebraSpec, G, Generator, L, _bracket_data
from .scalars import C, ONE, ZERO, ScalarPoly

Word = tuple[Generator, ...]
Terms = dict[Word, ScalarPoly]


def add_into(acc: dict, key, value: ScalarPoly) -> None:
    """``acc[key] += value`` dropping keys that cancel to zero."""
    if not value:
        return
    new = acc.get(key, ZERO) + value
    if new:
        acc[key] = new
    else:
        acc.pop(key, None)


class Straightener:
    """Memoized normal ordering for a fixed algebra and letter order.

    ``key`` maps a generator to a sortable value; normal words are sorted by
    it (non-strictly for even letters, strictly for odd ones).
    """

    def __init__(self, algebra: AlgebraSpec, key: Callable[[Generator], tuple]):
        self.algebra = algebra
        self.key = key
        self._insert_cache: dict[tuple[Generator, Word], Terms] = {}
        self._nf_cache: dict[Word, Terms] = {}
        self.rewrites = 0

    def is_normal(self, word: Word) -> bool:
        key = self.key
        for x, y in zip(word, word[1:]):
            kx, ky = key(x), key(y)
            if kx > ky or (kx == ky and x.parity):
                return False
        return True

    def normal_order(self, word: Word, coeff: ScalarPoly = ONE) -> Terms:
        coeff = ScalarPoly.coerce(coeff)
        if not coeff:
            return {}
        for g in word:
            self.algebra.check(g)
        base = self._nf(tuple(word))
        if coeff == ONE:
            return dict(base)
        return {w: v * coeff for w, v in base.items()}

    def normal_order_terms(self, terms: dict[Word, ScalarPoly]) -> Terms:
        out: Terms = {}
        for w, v in terms.items():
            for u, x in self.normal_order(w).items():
                add_into(out, u, v * x)
        return out

    def _nf(self, word: Word) -> Terms:
        hit = self._nf_cache.get(word)
        if hit is not None:
            return hit
        if len(word) <= 1:
            res = {word: ONE}
        else:
            res = {}
            head = word[0]
            for u, v in self._nf(word[1:]).items():
                for w, x in self._insert(head, u).items():
                    add_into(res, w, v * x)
        self._nf_cache[word] = res
        return res

    def _insert(self, x: Generator, u: Word) -> Terms:
        """Normal form of ``x * u`` for a normal word ``u``."""
        ck = (x, u)
        hit = self._insert_cache.get(ck)
        if hit is not None:
            return hit
        if not u:
            res = {(x,): ONE}
            self._insert_cache[ck] = res
            return res
        y, rest = u[0], u[1:]
        kx, ky = self.key(x), self.key(y)
        if kx < ky or (x == y and not x.parity):
            res = {(x,) + u: ONE}
            self._insert_cache[ck] = res
            return res
        self.rewrites += 1
        res: Terms = {}
        if x == y:
            # odd square: x x = [x, x] / 2
            term, central = _bracket_data(self.algebra, x, x)
            if term is not None:
                for w, v in self._insert(term[0], rest).items():
                    add_into(res, w, v * (term[1] / 2))
            if central:
                add_into(res, rest, C * (central / 2))
        else:
            sign = -1 if x.parity and y.parity else 1
            for v_word, v in self._insert(x, rest).items():
                for w, z in self._insert(y, v_word).items():
                    add_into(res, w, v * z * sign)
            term, central = _bracket_data(self.algebra, x, y)
            if term is not None:
                for w, v in self._insert(term[0], rest).items():
                    add_into(res, w, v * term[1])
            if central:
                add_into(res, rest, C * central)
        self._insert_cache[ck] = res
        return res


# -- the Ramond letter order --------------------------------------------------


def is_lowering(g: Generator) -> bool:
    """True for letters outside B: ``L_m`` (m <= -1) and ``G_m`` (m <= 0)."""
    return g.index <= -1 if g.family == "L" else g.index <= 0


def lowering_position(g: Generator) -> int:
    """Position in an exponent vector: ``L_{-k}`` -> 2k-1, ``G_{-k+1}`` -> 2k."""
    if g.family == "L":
        return -2 * g.index - 1
    return 2 * (1 - g.index)


def letter_at(position: int) -> Generator:
    k = (position + 1) // 2
    return L(-k) if position % 2 else G(1 - k)


def pbw_key(g: Generator) -> tuple:
    if is_lowering(g):
        return (0, -lowering_position(g), 0)
    return (1, g.index, g.parity)


RAMOND_PBW = Straightener(RAMOND, pbw_key)


# -- exponent vectors -----------------------------------------------------------


class SVector(tuple):
    """Exponent vector ``(i_1, i_2, ...)`` over the lowering letters.

    Stored with trailing zeros stripped, so Python tuple comparison is the
    reverse lexicographic order (first differing position decides, the zero
    vector is the minimum).
    """

    __slots__ = ()

    def __new__(cls, entries=()):
        entries = list(entries)
        for pos, v in enumerate(entries, start=1):
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"entry i_{pos} = {v!r} must be a nonnegative integer")
            if pos % 2 == 0 and v > 1:
                raise ValueError(f"entry i_{pos} = {v} must be 0 or 1 (odd letter)")
        while entries and entries[-1] == 0:
            entries.pop()
        return tuple.__new__(cls, entries)

    @classmethod
    def _make(cls, entries) -> "SVector":
        entries = list(entries)
        while entries and entries[-1] == 0:
            entries.pop()
        return tuple.__new__(cls, entries)

    @classmethod
    def epsilon(cls, k: int) -> "SVector":
        if k < 1:
            raise ValueError("positions start at 1")
        return cls._make([0] * (k - 1) + [1])

    def entry(self, position: int) -> int:
        return self[position - 1] if 0 < position <= len(self) else 0

    @property
    def weight(self) -> int:
        return weight_W(self)

    @property
    def depth(self) -> int:
        return depth_D(self)

    @property
    def parity(self) -> int:
        return sum(self[1::2]) % 2

    def is_zero(self) -> bool:
        return not self

    def min_position(self) -> int:
        """Smallest position with a nonzero entry (0 for the zero vector)."""
        for pos, v in enumerate(self, start=1):
            if v:
                return pos
        return 0

    def __repr__(self) -> str:
        return "[" + ",".join(str(v) for v in self) + "]" if self else "[0]"

    __str__ = __repr__


ZERO_VECTOR = SVector()


def weight_W(i: SVector) -> int:
    """``sum k*i_{2k-1} + sum (k-1)*i_{2k}``."""
    total = 0
    for pos, v in enumerate(i, start=1):
        if v:
            k = (pos + 1) // 2
            total += v * (k if pos % 2 else k - 1)
    return total


def depth_D(i: SVector) -> int:
    return sum(i)


def principal_key(i: SVector) -> tuple:
    """Sort key realising the principal order: W, then D, then reverse lex."""
    return (weight_W(i), depth_D(i), tuple(i))


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def cmp_revlex(i: SVector, j: SVector) -> int:
    """-1, 0, 1 as ``i < j``, ``i == j``, ``i > j`` in reverse lex order."""
    a, b = tuple(i), tuple(j)
    return _sign((a > b) - (a < b))


def cmp_principal(i: SVector, j: SVector) -> int:
    a, b = principal_key(i), principal_key(j)
    return (a > b) - (a < b)


def monomial_of(i: SVector) -> Word:
    letters: list[Generator] = []
    for pos in range(len(i), 0, -1):
        letters.extend([letter_at(pos)] * i[pos - 1])
    return tuple(letters)


def svector_sub(i: SVector, j: SVector) -> SVector | None:
    """Entrywise ``i - j`` or ``None`` if some entry leaves the admissible range."""
    n = max(len(i), len(j))
    out = []
    for pos in range(1, n + 1):
        v = i.entry(pos) - j.entry(pos)
        if v < 0 or (pos % 2 == 0 and v > 1):
            return None
        out.append(v)
    return SVector._make(out)


def svector_add(i: SVector, j: SVector) -> SVector | None:
    n = max(len(i), len(j))
    out = []
    for pos in range(1, n + 1):
        v = i.entry(pos) + j.entry(pos)
        if pos % 2 == 0 and v > 1:
            return None
        out.append(v)
    return SVector._make(out)


def enumerate_svectors(max_weight: int) -> list[SVector]:
    """Every SVector with ``W <= max_weight``, sorted by the principal order.

    ``G_0`` has weight 0, so each weight class contains vectors with and
    without it.
    """
    # letters with positive weight: L_{-k} (weight k) and G_{-k+1} for k >= 2 (weight k-1)
    out: list[SVector] = []

    def rec(pos: int, remaining: int, acc: list[int]):
        if pos < 3:
            # positions 1 (L_{-1}, weight 1) and 2 (G_0, weight 0)
            for i1 in range(remaining + 1):
                for i2 in (0, 1):
                    out.append(SVector._make([i1, i2] + acc))
            return
        k = (pos + 1) // 2
        w = k if pos % 2 else k - 1
        top = remaining // w
        if pos % 2 == 0:
            top = min(top, 1)
        for e in range(top + 1):
            rec(pos - 1, remaining - e * w, [e] + acc)

    # highest useful position: L_{-k} with k <= max_weight -> 2*max_weight - 1;
    # G_{-k+1} with k - 1 <= max_weight -> 2*(max_weight + 1)
    top_pos = max(2, 2 * (max_weight + 1))
    rec(top_pos, max_weight, [])
    return sorted(set(out), key=principal_key)


# -- normal elements ------------------------------------------------------------


def split_word(word: Word) -> tuple[SVector, Word]:
    """Split a normal word into its lowering exponent vector and B-part."""
    counts: dict[int, int] = {}
    n = 0
    for g in word:
        if not is_lowering(g):
            break
        p = lowering_position(g)
        counts[p] = counts.get(p, 0) + 1
        n += 1
    top = max(counts) if counts else 0
    vec = SVector._make([counts.get(p, 0) for p in range(1, top + 1)])
    return vec, word[n:]


@dataclass(frozen=True)
class NormalTerm:
    lowering: SVector
    raising: Word
    coeff: ScalarPoly


@dataclass
class NormalElement:
    """A PBW-normal element: ``(lowering, raising) -> coefficient``."""

    terms: dict[tuple[SVector, Word], ScalarPoly] = field(default_factory=dict)

    @classmethod
    def from_words(cls, words: Terms) -> "NormalElement":
        out: dict[tuple[SVector, Word], ScalarPoly] = {}
        for w, v in words.items():
            add_into(out, split_word(w), v)
        return cls(out)

    def flatten(self) -> Terms:
        return {monomial_of(i) + r: v for (i, r), v in self.terms.items()}

    def normal_terms(self) -> list[NormalTerm]:
        return [NormalTerm(i, r, v) for (i, r), v in self.terms.items()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormalElement):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self) -> str:
        from .parsing import format_terms

        return format_terms(self.flatten())


def normal_order(w: Word, coeff: ScalarPoly | int | Fraction = ONE) -> NormalElement:
    """Straighten ``coeff * w`` in U(Ramond)."""
    return NormalElement.from_words(RAMOND_PBW.normal_order(tuple(w), ScalarPoly.coerce(coeff)))


def word_degree(w: Word):
    return sum((Fraction(g.index) for g in w), Fraction(0))


def word_parity(w: Word) -> int:
    return sum(g.parity for g in w) % 2


def iter_words(letters: list[Generator], max_len: int) -> Iterator[Word]:
    from itertools import product

    for n in range(max_len + 1):
        yield from product(letters, repeat=n)
