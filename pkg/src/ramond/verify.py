"""Named verification suites.

Each suite returns a :class:`Report`.  Reports are plain data with a fixed
case order, so serialising the same suite with the same parameters and seed
always produces the same bytes.

The Neveu-Schwarz embedding search is informational: it records the exact
solution set of the constraint system and never fails.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .algebra import NEVEU_SCHWARZ, RAMOND, G, L, _bracket_data, check_super_jacobi, get_algebra
from .bmodules import BModule, b_generators, bmodule_axiom_check
from .induced import (
    InducedElement,
    annihilation_generators,
    annihilator_space,
    check_degree_prediction,
    check_weight_drop,
    deg,
    induced_act,
    induced_module,
    nilpotency_probe,
    random_element,
    reducing_generator,
    restricted_bound,
    simplicity_probe,
    supp,
)
from .pbw import SVector, enumerate_svectors, principal_key, svector_sub, weight_W
from .scalars import ONE, ScalarPoly


@dataclass
class Report:
    suite: str
    target: str
    params: dict[str, Any]
    cases_checked: int = 0
    failures: list[dict[str, str]] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, case: str, expected: Any, actual: Any) -> None:
        self.failures.append({"case": case, "expected": str(expected), "actual": str(actual)})

    def to_dict(self) -> dict[str, Any]:
        out = {
            "suite": self.suite,
            "target": self.target,
            "params": self.params,
            "cases_checked": self.cases_checked,
            "failures": self.failures,
        }
        if self.info:
            out["info"] = self.info
        return out

    def to_text(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _target(module: BModule) -> str:
    params = module.params()
    if not params:
        return module.name
    return f"{module.name}({json.dumps(params, sort_keys=True)})"


def _fmt(module: BModule, w: InducedElement) -> str:
    from .parsing import format_induced

    return format_induced(w, module)


def _labels(module: BModule, cap: int):
    return sorted(module.basis(cap), key=module.label_sort_key)


# -- algebra -----------------------------------------------------------------------


def suite_jacobi(bound: int, algebras: tuple[str, ...] = ("Ramond", "NeveuSchwarz"), corrupt: bool = False) -> Report:
    """Graded Jacobi on all triples; ``corrupt`` flips the Virasoro cocycle sign."""
    algs = [get_algebra(a) for a in algebras]
    if corrupt:
        algs = [a.corrupted() for a in algs]
    rep = Report("jacobi", "+".join(a.name for a in algs), {"bound": bound, "corrupt": corrupt})
    for alg in algs:
        res = check_super_jacobi(alg, bound)
        rep.cases_checked += res.cases_checked
        for a, b, c, defect in res.failures:
            rep.fail(f"{alg.name} ({a}, {b}, {c})", "0", defect)
    return rep


def suite_axioms(module: BModule, index_bound: int = 6, sample_size: int = 0, seed: int = 0, label_cap: int = 3) -> Report:
    res = bmodule_axiom_check(module, index_bound, sample_size, seed, label_cap)
    rep = Report(
        "axioms",
        _target(module),
        {"index_bound": index_bound, "sample_size": sample_size, "seed": seed, "label_cap": label_cap},
        res.cases_checked,
    )
    for f in res.failures:
        rep.fail(f["case"], f["expected"], f["actual"])
    return rep


# -- lemmas -----------------------------------------------------------------------


def suite_lemma31(module: BModule, t: int, window: int = 8, label_cap: int = 3) -> Report:
    """If ``L_k`` kills V for ``t < k``, so does ``G_m`` for ``t < m`` (checked up to ``t + window``).

    The premise is checked on the same truncation; a premise failure is
    reported, since the conclusion is then not meaningful.
    """
    if t < 2:
        raise ValueError("t must be >= 2")
    rep = Report("lemma31", _target(module), {"t": t, "window": window, "label_cap": label_cap})
    labels = _labels(module, label_cap)
    for k in range(t + 1, t + window + 1):
        for u in labels:
            rep.cases_checked += 1
            img = module.act_label(L(k), u)
            if img:
                rep.fail(f"premise L({k}) {module.format_label(u)}", "0", module.format_vector(img))
    for m in range(t + 1, t + window + 1):
        for u in labels:
            rep.cases_checked += 1
            img = module.act_label(G(m), u)
            if img:
                rep.fail(f"G({m}) {module.format_label(u)}", "0", module.format_vector(img))
    return rep


def suite_lemma32_33(
    module: BModule,
    r: int,
    weight_cap: int,
    label_cap: int = 1,
    k_window: int = 3,
    samples_per_vector: int = 1,
    seed: int = 0,
) -> Report:
    """Weight drop, support shape, degree prediction and the absence claims.

    * weight drop / support shape: ``F_k (g_i u)`` for ``F in {L, G}`` and
      ``r <= k < r + k_window``, for every ``W(i) <= weight_cap`` and label;
    * degree prediction: ``deg(F g_i v) = i - eps_khat`` for the reducing
      generator of ``i``, on labels and on random ``v``;
    * absence: ``i - eps_khat`` is not in ``supp(F g_j u)`` for any ``j < i``.
    """
    rng = random.Random(seed)
    rep = Report(
        "lemma32_33",
        _target(module),
        {"r": r, "weight_cap": weight_cap, "label_cap": label_cap, "k_window": k_window, "seed": seed},
    )
    vecs = enumerate_svectors(weight_cap)
    labels = _labels(module, label_cap)
    counts = {"weight_drop": 0, "degree_L": 0, "degree_G": 0, "absence_L": 0, "absence_G": 0}

    for i in vecs:
        for u in labels:
            w = InducedElement.basis(i, u)
            for k in range(r, r + k_window):
                for F in (L(k), G(k)):
                    rep.cases_checked += 1
                    counts["weight_drop"] += 1
                    msg = check_weight_drop(module, F, w, r)
                    if msg:
                        rep.fail(f"{F} on {_fmt(module, w)}", f"W <= {weight_W(i) - k + r}", msg)

    # a few mixed elements exercise cancellation between terms
    for _ in range(len(vecs) // 4 + 1):
        w = random_element(module, rng, weight_cap, label_cap=label_cap)
        for F in (L(r), G(r), L(r + 1), G(r + 1)):
            rep.cases_checked += 1
            counts["weight_drop"] += 1
            msg = check_weight_drop(module, F, w, r)
            if msg:
                rep.fail(f"{F} on {_fmt(module, w)}", "weight drop and support shape", msg)

    nonzero = [i for i in vecs if i]
    for i in nonzero:
        side = "L" if i.min_position() % 2 else "G"
        for u in labels:
            rep.cases_checked += 1
            counts[f"degree_{side}"] += 1
            msg = check_degree_prediction(module, i, u, r)
            if msg:
                rep.fail(f"deg prediction for {i}", svector_sub(i, SVector.epsilon(i.min_position())), msg)
        for _ in range(samples_per_vector):
            v = module.random_element(rng, cap=label_cap)
            img = induced_act(reducing_generator(i, r), InducedElement.from_vector(v, i), module)
            target = svector_sub(i, SVector.epsilon(i.min_position()))
            rep.cases_checked += 1
            counts[f"degree_{side}"] += 1
            if not img or deg(img) != target:
                rep.fail(f"deg prediction for {i} on {module.format_vector(v)}", target, deg(img) if img else "zero")

    # absence: group targets by reducing generator, then scan smaller vectors
    by_gen: dict = {}
    for i in nonzero:
        by_gen.setdefault(reducing_generator(i, r), []).append(i)
    ind = induced_module(module)
    for F in sorted(by_gen, key=lambda g: (g.index, g.parity)):
        supports: dict[SVector, set[SVector]] = {}
        for j in vecs:
            s: set[SVector] = set()
            for u in labels:
                s.update(i2 for (i2, _u2) in ind.act_term(F, j, u))
            supports[j] = s
        for i in by_gen[F]:
            target = svector_sub(i, SVector.epsilon(i.min_position()))
            ki = principal_key(i)
            side = "L" if F.family == "L" else "G"
            for j in vecs:
                if principal_key(j) >= ki:
                    continue
                rep.cases_checked += 1
                counts[f"absence_{side}"] += 1
                if target in supports[j]:
                    rep.fail(f"absence for i={i}, j={j}", f"{target} not in supp({F} g_j V)", "present")
    rep.info["case_counts"] = counts
    return rep


# -- theorems ---------------------------------------------------------------------


def suite_theorem34(module: BModule, r: int, trials: int = 50, weight_cap: int = 5, seed: int = 0, label_cap: int = 2) -> Report:
    """Random nonzero elements are driven into ``1 (x) V`` by the probe."""
    rng = random.Random(seed)
    rep = Report("theorem34", _target(module), {"r": r, "trials": trials, "weight_cap": weight_cap, "seed": seed})
    longest = 0
    for n in range(trials):
        w = random_element(module, rng, weight_cap, label_cap=label_cap)
        d0 = deg(w)
        trace = simplicity_probe(w, r, module)
        rep.cases_checked += 1
        longest = max(longest, len(trace.steps))
        if not trace.ok:
            rep.fail(f"trial {n}: {_fmt(module, w)}", "nonzero terminal in 1 (x) V", trace.reason)
            continue
        if supp(trace.terminal) != {SVector()}:
            rep.fail(f"trial {n}", "terminal supported on [0]", sorted(map(repr, supp(trace.terminal))))
        if len(trace.steps) > sum(d0):
            rep.fail(f"trial {n}", f"at most D(deg) = {sum(d0)} steps", len(trace.steps))
    rep.info["longest_trace"] = longest
    return rep


def _is_slice_of_V(basis: list[InducedElement], labels) -> bool:
    if len(basis) != len(labels):
        return False
    return all(i == SVector() for e in basis for (i, _u) in e.terms)


def suite_theorem42(
    module: BModule,
    b: int,
    weight_cap: int = 3,
    window: int = 6,
    label_cap: int = 3,
    closure: tuple[str, ...] = ("L0", "L1", "L2", "G1", "G2"),
    c_value=None,
) -> Report:
    """``M_{b-1} = 0`` and ``M_b`` equals the ``1 (x) V`` slice; ``M_b`` is closed under B."""
    rep = Report(
        "theorem42",
        _target(module),
        {"b": b, "weight_cap": weight_cap, "window": window, "label_cap": label_cap, "c_value": None if c_value is None else str(c_value)},
    )
    labels = _labels(module, label_cap)
    below = annihilator_space(module, b - 1, weight_cap, window, label_cap, c_value)
    rep.cases_checked += 1
    if below.basis:
        rep.fail(f"M_{b - 1}", "0", f"dimension {len(below.basis)}")
    at = annihilator_space(module, b, weight_cap, window, label_cap, c_value)
    rep.cases_checked += 1
    if not _is_slice_of_V(at.basis, labels):
        rep.fail(f"M_{b}", f"the 1 (x) V slice (dimension {len(labels)})", f"dimension {len(at.basis)}")

    gens = annihilation_generators(b, window)
    ind = induced_module(module)
    closers = [L(int(x[1:])) if x[0] == "L" else G(int(x[1:])) for x in closure]
    for e in at.basis:
        for x in closers:
            rep.cases_checked += 1
            img = ind.act(x, e)
            bad = [str(g) for g in gens if ind.act(g, img)]
            if bad:
                rep.fail(f"{x} {_fmt(module, e)}", "annihilated", ", ".join(bad))

    # injectivity of L_b on the computed slice, reported only
    images = [ind.act(L(b), e) for e in at.basis]
    rep.info["dim_M_below"] = len(below.basis)
    rep.info["dim_M_b"] = len(at.basis)
    rep.info["L_b_injective_on_slice"] = _independent(images)
    return rep


def _independent(vectors: list[InducedElement]) -> bool:
    """Linear independence over Q(c), tested through sympy's rank."""
    import sympy
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix

    if not vectors:
        return True
    if any(not v for v in vectors):
        return False
    c = sympy.Symbol("c")
    K = QQ[c]
    keys = sorted({k for v in vectors for k in v.terms}, key=lambda k: (principal_key(k[0]), repr(k[1])))
    pos = {k: n for n, k in enumerate(keys)}
    data: dict[int, dict[int, object]] = {}
    for a, v in enumerate(vectors):
        for k, x in v.terms.items():
            expr = sum(sympy.Rational(q.numerator, q.denominator) * c**p for p, q in enumerate(x.coeffs))
            data.setdefault(a, {})[pos[k]] = K.from_sympy(expr)
    M = DomainMatrix(data, (len(vectors), len(keys)), K)
    return M.rank() == len(vectors)


# -- restricted-module bounds ------------------------------------------------------


def suite_prop41(module: BModule, r: int, samples: int = 50, weight_cap: int = 6, window: int = 8, seed: int = 0) -> Report:
    """Nilpotency exponents of ``L_{r+2}`` within the bound, and the restricted bound ``W(w) + r``."""
    rng = random.Random(seed)
    rep = Report("prop41", _target(module), {"r": r, "samples": samples, "weight_cap": weight_cap, "window": window, "seed": seed})
    g = L(r + 2)
    worst = 0
    for n in range(samples):
        w = random_element(module, rng, weight_cap, label_cap=1)
        res = nilpotency_probe(g, w, module, r)
        rep.cases_checked += 1
        if not res.within_bound:
            rep.fail(f"sample {n}: {g} on {_fmt(module, w)}", f"exponent <= {res.bound}", res.exponent)
        else:
            worst = max(worst, res.exponent)
        rb = restricted_bound(w, module, r, window)
        rep.cases_checked += 1
        if not rb.verified:
            rep.fail(f"sample {n}: bound k = {rb.k}", "annihilated", ", ".join(map(str, rb.offenders)))
    rep.info["max_exponent"] = worst
    return rep


# -- Neveu-Schwarz embedding ------------------------------------------------------


def search_ns_embedding(index_bound: int = 3) -> Report:
    """Solve for ``L'_m = a L_{2m} + gamma delta_{m,0} C``, ``G'_p = b G_{2p}``, ``C' = lam C``.

    Every Neveu-Schwarz bracket with indices up to ``index_bound`` is pushed
    into the Ramond algebra and compared coefficientwise; the resulting
    polynomial system in ``(a, b, gamma, lam)`` is solved exactly.
    """
    import sympy

    a, bb, gamma, lam = sympy.symbols("a b gamma lam")

    def image(g):
        """Ramond image as ({ramond generator: coeff}, central coeff)."""
        if g.family == "L":
            return {L(2 * g.index): a}, (gamma if g.index == 0 else sympy.Integer(0))
        return {G(int(2 * g.index)): bb}, sympy.Integer(0)

    def rat(x: Fraction):
        return sympy.Rational(x.numerator, x.denominator)

    eqs: set = set()
    gens = NEVEU_SCHWARZ.generators(index_bound)
    pairs = 0
    for x in gens:
        for y in gens:
            pairs += 1
            lhs: dict = {}
            lhs_c = sympy.Integer(0)
            (ix, _), (iy, _) = image(x), image(y)
            for gx, cx in ix.items():
                for gy, cy in iy.items():
                    term, cen = _bracket_data(RAMOND, gx, gy)
                    if term is not None:
                        lhs[term[0]] = lhs.get(term[0], 0) + cx * cy * rat(term[1])
                    lhs_c += cx * cy * rat(cen)
            term, cen = _bracket_data(NEVEU_SCHWARZ, x, y)
            rhs: dict = {}
            rhs_c = rat(cen) * lam
            if term is not None:
                it, ic = image(term[0])
                for gz, cz in it.items():
                    rhs[gz] = rhs.get(gz, 0) + rat(term[1]) * cz
                rhs_c += rat(term[1]) * ic
            for gz in set(lhs) | set(rhs):
                e = sympy.expand(lhs.get(gz, 0) - rhs.get(gz, 0))
                if e != 0:
                    eqs.add(e)
            e = sympy.expand(lhs_c - rhs_c)
            if e != 0:
                eqs.add(e)
    ordered = sorted(eqs, key=sympy.default_sort_key)
    sols = sympy.solve(ordered, [a, bb, gamma, lam], dict=True)
    rendered = sorted(
        ({"a": str(s.get(a, a)), "b": str(s.get(bb, bb)), "gamma": str(s.get(gamma, gamma)), "lam": str(s.get(lam, lam))} for s in sols),
        key=lambda d: json.dumps(d, sort_keys=True),
    )
    nontrivial = [s for s in sols if s.get(bb, bb) != 0]
    rep = Report("ns_embedding", "NeveuSchwarz->Ramond", {"index_bound": index_bound}, pairs)
    rep.info = {
        "equations": len(ordered),
        "solutions": rendered,
        "nontrivial": len(nontrivial),
        "central_shift_required": bool(nontrivial) and all(s.get(gamma, gamma) != 0 for s in nontrivial),
    }
    return rep


SUITES = ("jacobi", "axioms", "lemma31", "lemma32_33", "theorem34", "theorem42", "prop41", "ns_embedding")
