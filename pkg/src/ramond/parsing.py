"""Text grammars for generators, words, exponent vectors and induced elements.

    word      := letter (ws letter)*          letter := L(m) | G(m)
    svector   := "[" int ("," int)* "]"
    induced   := term (" + " term)*           term := [coeff "*"] svector label
    coeff     := scalar term like -1/2*c, or a parenthesised Q[c] sum

Formatting is canonical, so ``format(parse(t))`` is a fixed point and
``parse(format(x)) == x``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import TYPE_CHECKING

from .algebra import Generator, _norm_index
from .pbw import SVector, Word
from .scalars import ONE, ScalarPoly, format_scalar, parse_scalar

if TYPE_CHECKING:
    from .bmodules import BModule
    from .induced import InducedElement


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}: {text!r}" if text else message)


_LETTER_RE = re.compile(r"\s*([LG])\(\s*([+-]?\d+(?:/\d+)?)\s*\)\s*")


def parse_generator(text: str) -> Generator:
    m = _LETTER_RE.fullmatch(text)
    if not m:
        raise ParseError("expected L(m) or G(m)", text, 0)
    return Generator(m.group(1), _norm_index(Fraction(m.group(2))))


def parse_word(text: str) -> Word:
    letters = []
    pos = 0
    text_s = text.rstrip()
    while pos < len(text_s):
        m = _LETTER_RE.match(text_s, pos)
        if not m:
            raise ParseError("expected L(m) or G(m)", text, pos)
        letters.append(Generator(m.group(1), _norm_index(Fraction(m.group(2)))))
        pos = m.end()
    return tuple(letters)


def format_word(word: Word) -> str:
    return " ".join(str(g) for g in word)


_SVEC_RE = re.compile(r"\s*\[\s*([^\]]*)\]\s*")


def parse_svector(text: str) -> SVector:
    m = _SVEC_RE.fullmatch(text)
    if not m:
        raise ParseError("expected [i1,i2,...]", text, 0)
    return _svector_body(m.group(1), text, m.start(1))


def _svector_body(body: str, text: str, offset: int) -> SVector:
    body = body.strip()
    if not body:
        return SVector()
    entries = []
    for part in body.split(","):
        part = part.strip()
        if not re.fullmatch(r"\d+", part):
            raise ParseError(f"bad exponent {part!r}", text, offset)
        entries.append(int(part))
    try:
        return SVector(entries)
    except ValueError as exc:
        raise ParseError(f"inadmissible vector: {exc}", text, offset) from None


def format_svector(i: SVector) -> str:
    return repr(i)


def format_coeff(p: ScalarPoly) -> str:
    s = format_scalar(p)
    nonzero = sum(1 for v in p.coeffs if v)
    return f"({s})" if nonzero > 1 else s


def parse_coeff(text: str) -> ScalarPoly:
    t = text.strip()
    if t.startswith("(") and t.endswith(")"):
        t = t[1:-1]
    return parse_scalar(t)


def _term_sort_key(item):
    word, _ = item
    return (-len(word), [(g.index, g.parity) for g in word])


def format_terms(terms: dict[Word, ScalarPoly]) -> str:
    """Canonical text for a combination of words, longest words first."""
    parts = []
    for word, v in sorted(terms.items(), key=_term_sort_key):
        if word:
            parts.append(f"{format_coeff(v)}*{format_word(word)}")
        else:
            parts.append(format_coeff(v))
    return " + ".join(parts) if parts else "0"


# -- induced elements -------------------------------------------------------------

_COEFF = r"(?:\((?P<pc>[^()]*)\)|(?P<sc>[+-]?\s*(?:\d+(?:/\d+)?(?:\s*\*\s*c(?:\^\d+)?)?|c(?:\^\d+)?)))"
_INDUCED_TERM_RE = re.compile(
    rf"\s*(?:{_COEFF}\s*\*\s*)?\[(?P<vec>[^\]]*)\]\s*(?P<label>[^+\[\]]*?)\s*(?=\+|$)"
)


def parse_induced(text: str, module: "BModule") -> "InducedElement":
    from .induced import InducedElement

    terms: dict = {}
    pos = 0
    n = len(text)
    if not text.strip():
        raise ParseError("empty element", text, 0)
    while True:
        m = _INDUCED_TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("expected coeff * [svector] label", text, pos)
        if m.group("pc") is not None:
            coeff = parse_coeff(m.group("pc"))
        elif m.group("sc") is not None:
            coeff = parse_scalar(m.group("sc"))
        else:
            coeff = ONE
        vec = _svector_body(m.group("vec"), text, m.start("vec"))
        label_text = m.group("label")
        if not label_text:
            raise ParseError("missing basis label", text, m.start("label"))
        try:
            label = module.parse_label(label_text)
        except ValueError as exc:
            raise ParseError(f"bad label: {exc}", text, m.start("label")) from None
        key = (vec, label)
        new = terms.get(key, ScalarPoly()) + coeff
        if new:
            terms[key] = new
        else:
            terms.pop(key, None)
        pos = m.end()
        if pos >= n:
            break
        if text[pos] != "+":
            raise ParseError("expected '+'", text, pos)
        pos += 1
    return InducedElement(terms)


def format_induced(w: "InducedElement", module: "BModule") -> str:
    """Terms by descending principal order of the vector, then label order."""
    from .pbw import principal_key

    items = sorted(w.terms.items(), key=lambda kv: module.label_sort_key(kv[0][1]))
    items.sort(key=lambda kv: principal_key(kv[0][0]), reverse=True)
    parts = [f"{format_coeff(v)}*{format_svector(i)} {module.format_label(u)}" for (i, u), v in items]
    return " + ".join(parts) if parts else "0"


def parse_element(text: str, module: "BModule | None" = None):
    """Dispatch on shape: SVector literal, induced element, or word."""
    stripped = text.strip()
    if _SVEC_RE.fullmatch(stripped):
        return parse_svector(stripped)
    if "[" in stripped:
        if module is None:
            raise ParseError("induced elements need a module to parse labels", text, 0)
        return parse_induced(stripped, module)
    return parse_word(stripped)
