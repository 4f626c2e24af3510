"""Command-line front end.

    ramond bracket L(2) L(-2)
    ramond normal-form --word "G(0) G(0)"
    ramond act --module whittaker --phi L2=1 --generator "L(3)" --element "1*[1] v0"
    ramond probe --module whittaker --phi L1=0,L2=1 --r 2 --element "1*[1] v0"
    ramond annihilator --module whittaker --b 2 --weight-cap 3 --window 6
    ramond suite theorem34 --module solvable --trials 100 --seed 7

Every command builds a report.  The human-readable result goes to stdout;
``--output`` writes the JSON report to a file and ``--format json`` prints
it instead.  The exit status is 0 exactly when the report has no failures.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from typing import Any

from .algebra import DomainError, bracket, get_algebra
from .bmodules import BModule, HighOrderWhittakerModule, SolvableModule, WhittakerModule
from .induced import ZeroElementError, annihilator_space, induced_act, simplicity_probe
from .parsing import ParseError, format_induced, format_terms, parse_generator, parse_induced, parse_word
from .pbw import RAMOND_PBW, Straightener
from . import verify

COMMANDS = ("bracket", "normal-form", "act", "probe", "annihilator", "suite")
SUITE_NAMES = ("jacobi", "axioms", "lemma31", "lemma32_33", "theorem34", "theorem42", "prop41", "ns_embedding", "all")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    suite: str | None = None
    algebra: str = "ramond"
    module: str = "whittaker"
    phi: str | None = None
    s: int = 2
    r: int | None = None
    b: int | None = None
    t: int | None = None
    left: str | None = None
    right: str | None = None
    word: str | None = None
    generator: str | None = None
    element: str | None = None
    bound: int | None = None
    weight_cap: int = 5
    index_bound: int = 6
    window: int | None = None
    label_cap: int = 3
    trials: int = 50
    c_value: str | None = None
    seed: int = 0
    corrupt: bool = False
    output: str | None = None
    format: str = "text"

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.command == "suite" and self.suite not in SUITE_NAMES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITE_NAMES)}")
        for name in ("weight_cap", "index_bound", "label_cap", "trials"):
            if getattr(self, name) is not None and getattr(self, name) < 0:
                raise ConfigError(f"{name} must be nonnegative")
        for name in ("window", "bound"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.module not in ("whittaker", "highorder", "solvable"):
            raise ConfigError(f"unknown module {self.module!r}")
        if self.format not in ("text", "json"):
            raise ConfigError("format must be text or json")
        if self.c_value is not None:
            try:
                Fraction(self.c_value)
            except ValueError:
                raise ConfigError(f"bad --c-value {self.c_value!r}") from None

    @property
    def c(self) -> Fraction | None:
        return None if self.c_value is None else Fraction(self.c_value)


def parse_phi(text: str | None) -> dict[int, Fraction]:
    """``L1=0,L2=1`` -> ``{1: 0, 2: 1}``."""
    out: dict[int, Fraction] = {}
    if not text:
        return out
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        key, sep, val = part.partition("=")
        key = key.strip()
        if not sep or not key.startswith("L") or not key[1:].isdigit():
            raise ConfigError(f"bad phi assignment {part!r}; expected Lm=value")
        try:
            out[int(key[1:])] = Fraction(val.strip())
        except ValueError:
            raise ConfigError(f"bad phi value in {part!r}") from None
    return out


def build_module(cfg: RunConfig) -> BModule:
    try:
        if cfg.module == "whittaker":
            phi = parse_phi(cfg.phi) if cfg.phi is not None else {2: Fraction(1)}
            return WhittakerModule(phi)
        if cfg.module == "highorder":
            phi = parse_phi(cfg.phi) if cfg.phi is not None else {2 * cfg.s: Fraction(1)}
            return HighOrderWhittakerModule(cfg.s, phi)
        return SolvableModule()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _run_bracket(cfg: RunConfig) -> verify.Report:
    if not cfg.left or not cfg.right:
        raise ConfigError("bracket needs two generators")
    alg = get_algebra(cfg.algebra)
    a, b = parse_generator(cfg.left), parse_generator(cfg.right)
    res = bracket(alg, a, b)
    if cfg.c is not None:
        from .algebra import LinearCombo

        res = LinearCombo({g: v.specialize(cfg.c) for g, v in res.terms.items()}, res.central.specialize(cfg.c))
    rep = verify.Report("bracket", alg.name, {"a": str(a), "b": str(b)}, 1)
    rep.info["result"] = str(res)
    return rep


def _run_normal_form(cfg: RunConfig) -> verify.Report:
    if cfg.word is None:
        raise ConfigError("normal-form needs --word")
    alg = get_algebra(cfg.algebra)
    word = parse_word(cfg.word)
    engine = RAMOND_PBW if alg.name == "Ramond" else Straightener(alg, _ns_key)
    terms = engine.normal_order(word)
    terms = {w: v.specialize(cfg.c) for w, v in terms.items() if v.specialize(cfg.c)}
    rep = verify.Report("normal-form", alg.name, {"word": " ".join(map(str, word)), "c_value": cfg.c_value}, 1)
    rep.info["result"] = format_terms(terms)
    return rep


def _ns_key(g):
    # same shape as the Ramond order: negative, then zero, then positive indices
    return (0 if g.index < 0 else 1, g.index, g.parity)


def _element(cfg: RunConfig, module: BModule):
    if cfg.element is None:
        raise ConfigError(f"{cfg.command} needs --element")
    return parse_induced(cfg.element, module)


def _run_act(cfg: RunConfig) -> verify.Report:
    module = build_module(cfg)
    if cfg.generator is None:
        raise ConfigError("act needs --generator")
    g = parse_generator(cfg.generator)
    get_algebra("ramond").check(g)
    w = _element(cfg, module)
    img = induced_act(g, w, module).specialize(cfg.c)
    rep = verify.Report("act", verify._target(module), {"generator": str(g), "element": format_induced(w, module), "c_value": cfg.c_value}, 1)
    rep.info["result"] = format_induced(img, module)
    return rep


def _run_probe(cfg: RunConfig) -> verify.Report:
    module = build_module(cfg)
    r = cfg.r if cfg.r is not None else module.r
    w = _element(cfg, module)
    trace = simplicity_probe(w, r, module)
    rep = verify.Report("probe", verify._target(module), {"r": r, "element": format_induced(w, module)}, 1)
    data = trace.to_dict(module)
    if cfg.c is not None:
        data["terminal"] = format_induced(trace.terminal.specialize(cfg.c), module)
    rep.info.update({"steps": data["steps"], "terminal": data["terminal"]})
    if not trace.ok:
        rep.fail("probe", "nonzero terminal in 1 (x) V", trace.reason)
    return rep


def _run_annihilator(cfg: RunConfig) -> verify.Report:
    module = build_module(cfg)
    b = cfg.b if cfg.b is not None else module.r
    window = cfg.window or 6
    res = annihilator_space(module, b, cfg.weight_cap, window, cfg.label_cap, cfg.c)
    rep = verify.Report(
        "annihilator",
        verify._target(module),
        {"b": b, "weight_cap": cfg.weight_cap, "window": window, "label_cap": cfg.label_cap, "c_value": cfg.c_value},
        res.columns,
    )
    rep.info["dimension"] = len(res.basis)
    rep.info["basis"] = [format_induced(e, module) for e in res.basis]
    return rep


def _run_suite(cfg: RunConfig) -> list[verify.Report]:
    name = cfg.suite
    if name == "all":
        reports: list[verify.Report] = []
        for sub in SUITE_NAMES[:-1]:
            cfg_sub = RunConfig(**{**asdict(cfg), "suite": sub})
            if sub == "jacobi":
                cfg_sub.algebra = "both"
            if sub in ("jacobi", "ns_embedding"):
                reports.extend(_run_suite(cfg_sub))
                continue
            for mod in ("whittaker", "solvable", "highorder"):
                if sub == "theorem42" and mod == "solvable":
                    continue
                reports.extend(_run_suite(RunConfig(**{**asdict(cfg_sub), "module": mod, "phi": None})))
        return reports
    if name == "jacobi":
        algs = ("Ramond", "NeveuSchwarz") if cfg.algebra in (None, "both") else (get_algebra(cfg.algebra).name,)
        return [verify.suite_jacobi(cfg.bound or 8, algs, cfg.corrupt)]
    if name == "ns_embedding":
        return [verify.search_ns_embedding(cfg.bound or 3)]
    module = build_module(cfg)
    r = cfg.r if cfg.r is not None else module.r
    if name == "axioms":
        return [verify.suite_axioms(module, cfg.bound or cfg.index_bound, cfg.trials, cfg.seed, cfg.label_cap)]
    if name == "lemma31":
        t = cfg.t if cfg.t is not None else module.r
        return [verify.suite_lemma31(module, t, cfg.window or 8, cfg.label_cap)]
    if name == "lemma32_33":
        return [verify.suite_lemma32_33(module, r, cfg.weight_cap, seed=cfg.seed)]
    if name == "theorem34":
        return [verify.suite_theorem34(module, r, cfg.trials, cfg.weight_cap, cfg.seed)]
    if name == "theorem42":
        b = cfg.b if cfg.b is not None else module.r
        cap = min(cfg.weight_cap, 3)
        return [verify.suite_theorem42(module, b, cap, cfg.window or 6, cfg.label_cap if cfg.module == "whittaker" else 2, c_value=cfg.c)]
    if name == "prop41":
        return [verify.suite_prop41(module, r, cfg.trials, cfg.weight_cap + 1, cfg.window or 8, cfg.seed)]
    raise ConfigError(f"unknown suite {name!r}")


def run(cfg: RunConfig) -> tuple[int, list[verify.Report]]:
    """Execute a validated config; exit code 0 iff no report has failures."""
    cfg.validate()
    handlers = {
        "bracket": _run_bracket,
        "normal-form": _run_normal_form,
        "act": _run_act,
        "probe": _run_probe,
        "annihilator": _run_annihilator,
    }
    if cfg.command == "suite":
        reports = _run_suite(cfg)
    else:
        reports = [handlers[cfg.command](cfg)]
    code = 0 if all(r.passed for r in reports) else 1
    return code, reports


def render_json(reports: list[verify.Report]) -> str:
    body = [r.to_dict() for r in reports]
    return json.dumps(body[0] if len(body) == 1 else body, indent=2) + "\n"


def render_text(cfg: RunConfig, reports: list[verify.Report]) -> str:
    if cfg.command in ("bracket", "normal-form", "act"):
        return reports[0].info["result"] + "\n"
    if cfg.command == "probe":
        info = reports[0].info
        lines = [f"step {n + 1}: {s['op']} -> deg {s['deg_after']}" for n, s in enumerate(info["steps"])]
        lines.append(f"terminal: {info['terminal']}")
        for f in reports[0].failures:
            lines.append(f"FAILED: {f['actual']}")
        return "\n".join(lines) + "\n"
    if cfg.command == "annihilator":
        info = reports[0].info
        return "\n".join([f"dimension {info['dimension']}"] + info["basis"]) + "\n"
    width = max(len(f"{r.suite} {r.target}") for r in reports)
    lines = [f"{'suite':<{width}}  cases  failures  status"]
    for r in reports:
        lines.append(f"{(r.suite + ' ' + r.target):<{width}}  {r.cases_checked:>5}  {len(r.failures):>8}  {'PASS' if r.passed else 'FAIL'}")
        for f in r.failures[:5]:
            lines.append(f"    {f['case']}: expected {f['expected']}, got {f['actual']}")
        if r.suite == "ns_embedding":
            for sol in r.info["solutions"]:
                lines.append("    " + ", ".join(f"{k}={v}" for k, v in sol.items()))
    return "\n".join(lines) + "\n"


# -- argument parsing ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ramond", description="Exact computations in the N=1 Ramond superalgebra.")
    p.add_argument("--config", help="key = value file mirroring the flags")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--algebra", default=None, help="ramond, ns (or both, for suite jacobi)")
        sp.add_argument("--module", default=None, choices=("whittaker", "highorder", "solvable"))
        sp.add_argument("--phi", default=None, help="character values, e.g. L1=0,L2=1")
        sp.add_argument("--s", type=int, default=None, help="order of a high-order Whittaker module")
        sp.add_argument("--r", type=int, default=None)
        sp.add_argument("--b", type=int, default=None)
        sp.add_argument("--t", type=int, default=None)
        sp.add_argument("--element", default=None, help='induced element, e.g. "1*[1] v0"')
        sp.add_argument("--generator", default=None)
        sp.add_argument("--word", default=None)
        sp.add_argument("--bound", type=int, default=None)
        sp.add_argument("--weight-cap", type=int, default=None)
        sp.add_argument("--index-bound", type=int, default=None)
        sp.add_argument("--window", type=int, default=None)
        sp.add_argument("--label-cap", type=int, default=None)
        sp.add_argument("--trials", type=int, default=None)
        sp.add_argument("--c-value", default=None, help="substitute a rational for c")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--corrupt", action="store_true", default=None, help="negative control for suite jacobi")
        sp.add_argument("--output", default=None, help="write the JSON report here")
        sp.add_argument("--format", default=None, choices=("text", "json"))

    b = sub.add_parser("bracket", help="structure constants [a, b]")
    b.add_argument("left")
    b.add_argument("right")
    common(b)
    for name in ("normal-form", "act", "probe", "annihilator"):
        common(sub.add_parser(name))
    s = sub.add_parser("suite", help="run a verification suite")
    s.add_argument("suite", choices=SUITE_NAMES)
    common(s)
    return p


def _read_config_file(path: str) -> dict[str, str]:
    parser = configparser.ConfigParser()
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    parser.read_string("[run]\n" + text)
    return {k.replace("-", "_"): v for k, v in parser["run"].items()}


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    ns = _build_parser().parse_args(argv)
    values = {k: v for k, v in vars(ns).items() if v is not None and k != "config"}
    types = {f.name: f.type for f in fields(RunConfig)}
    if ns.config:
        for key, raw in _read_config_file(ns.config).items():
            if key not in types:
                raise ConfigError(f"unknown config key {key!r}")
            if key in values:
                continue
            values[key] = _coerce(key, raw, types[key])
    if values.get("command") == "suite" and values.get("suite") == "jacobi" and "algebra" not in values:
        values["algebra"] = "both"
    if "algebra" not in values:
        values["algebra"] = "ramond"
    return RunConfig(**values)


def _coerce(key: str, raw: str, typ: Any):
    typ = str(typ)
    if "bool" in typ:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if "int" in typ:
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"config key {key} needs an integer") from None
    return raw.strip()


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
        code, reports = run(cfg)
    except (ConfigError, ParseError, DomainError, ZeroElementError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render_json(reports)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text if cfg.format == "json" else render_text(cfg, reports))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
