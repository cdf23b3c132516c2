"""Command-line interface.

Every command except ``build`` and ``catalog`` reads a structure given by
``--structure``: a cache file written by ``build``, a cache name inside
``$GARSIDE_PC_CACHE_DIR``, or a catalog name such as ``B3`` or ``G24``.

Exit status: 0 on success, 1 when a verification fails (the counterexample is
printed as JSON), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import catalog
from .conjugacy import minimal_positive_conjugators, rho, swap_orbit
from .garside import Element, GarsideStructure, StructureError, join_pos, left_fraction, meet_pos, right_fraction
from .groups import FiniteGroup, Interval, _members, check_hypdual, is_balanced, lattice_check, word_metric
from .parabolic import (
    NotBalanced,
    ParabolicHandle,
    UnverifiedStructure,
    adjacency,
    check_lcm_garside,
    check_support_preserving,
    curve_graph,
    exponent,
    godelle_check,
    handle,
    intersect,
    names_of,
    parabolic_closure,
    support,
    z_element,
)

CACHE_ENV = "GARSIDE_PC_CACHE_DIR"
CACHE_VERSION = 1


class InputError(ValueError):
    """Malformed command-line input (exit status 2)."""


class VerificationFailure(RuntimeError):
    """A requested check failed (exit status 1)."""

    def __init__(self, payload: dict):
        super().__init__(json.dumps(payload, sort_keys=True))
        self.payload = payload


# ---------------------------------------------------------------------------
# structure cache


def structure_to_cache(S: GarsideStructure, source: dict, stamps: dict | None = None) -> dict:
    W = S.group
    metric = S.interval.metric
    return {
        "version": CACHE_VERSION,
        "name": S.name,
        "source": source,
        "group": {
            "family": W.spec.family,
            "params": list(W.spec.params),
            "names": list(W.spec.names),
            "generators": [list(p) for p in W.gen_perms],
            "order": W.order,
        },
        "metric": {"names": list(metric.names), "generators": [list(p) for p in metric.gens]},
        "interval": {
            "apex": S.DELTA,
            "c": list(S.interval.c),
            "members": [list(p) for p in S.perms],
            "lengths": list(S.length),
            "words": [S.simple_word(i) for i in range(S.N)],
            "atoms": list(S.atom_names),
        },
        "tau": list(S.tau),
        "stamps": stamps or {},
    }


def dump_cache(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def structure_from_cache(doc: dict) -> GarsideStructure:
    if doc.get("version") != CACHE_VERSION:
        raise InputError("unsupported cache version")
    g = doc["group"]
    W = FiniteGroup.from_perms(g["family"], tuple(g["params"]), g["names"], g["generators"])
    if W.order != g["order"]:
        raise InputError("cached generators do not reproduce the group order")
    m = doc["metric"]
    metric = word_metric(W, [tuple(p) for p in m["generators"]], m["names"])
    c = tuple(doc["interval"]["c"])
    members = [tuple(p) for p in doc["interval"]["members"]]
    if members != _members(metric, c):
        raise InputError("cached interval does not match the recomputed interval")
    S = GarsideStructure(Interval(metric, c, members), doc["name"])
    if list(S.tau) != doc["tau"] or [S.simple_word(i) for i in range(S.N)] != doc["interval"]["words"]:
        raise InputError("cached tables differ from the rebuilt tables")
    stamps = doc.get("stamps", {})
    S.hypotheses_verified = bool(stamps.get("lcm_garside")) and bool(
        stamps.get("support_preserving", {}).get("passed")
    )
    return S


def _build_source(arg: str) -> tuple[GarsideStructure, dict, dict]:
    path = Path(arg)
    if path.suffix == ".json" and path.exists():
        try:
            spec = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"bad spec file: {exc}") from exc
        if "version" in spec:
            return structure_from_cache(spec), spec["source"], spec.get("stamps", {})
        return _build_from_spec(spec)
    try:
        e = catalog.entry(arg)
    except catalog.CatalogError as exc:
        raise InputError(str(exc)) from exc
    stamps = {
        "balanced": True,
        "lattice": True,
        "lcm_garside": e.expected.get("lcm_garside", False),
        "support_preserving": {"passed": e.expected.get("support_preserving", False), "mode": "catalog"},
    }
    return e.structure, {"catalog": arg}, stamps


def _build_from_spec(spec: dict) -> tuple[GarsideStructure, dict, dict]:
    """Spec file: ``{"family": "symmetric"|"G(de,e,n)", "params": [...], "apex": [names]}``."""
    from .groups import build_group, monomial_spec, symmetric_spec

    try:
        fam = spec["family"]
        params = spec["params"]
        apex = spec["apex"]
    except KeyError as exc:
        raise InputError(f"spec file lacks {exc}") from exc
    if fam == "symmetric":
        gspec = symmetric_spec(*params)
    elif fam == "G(de,e,n)":
        gspec = monomial_spec(*params)
    else:
        raise InputError(f"unsupported family {fam!r}")
    W = build_group(gspec)
    gens = spec.get("generators", list(gspec.names))
    metric = word_metric(W, [W.generator(n) for n in gens], gens)
    interval = Interval(metric, W.word(apex))
    S = GarsideStructure(interval, spec.get("name", "custom"))
    return S, {"spec": spec}, {"balanced": True, "lattice": True}


def load_structure(arg: str) -> GarsideStructure:
    path = Path(arg)
    if not path.exists() and os.environ.get(CACHE_ENV):
        alt = Path(os.environ[CACHE_ENV]) / arg
        if alt.exists():
            path = alt
    if path.exists():
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"bad cache file: {exc}") from exc
        return structure_from_cache(doc)
    try:
        return catalog.structure(arg)
    except catalog.CatalogError as exc:
        raise InputError(f"no cache file or catalog entry named {arg!r}") from exc


# ---------------------------------------------------------------------------
# parsing helpers


def parse_element(S: GarsideStructure, text: str) -> Element:
    try:
        return S.word(text)
    except (KeyError, ValueError) as exc:
        raise InputError(f"malformed word {text!r}: {exc}") from exc


def parse_positive(S: GarsideStructure, text: str) -> Element:
    x = parse_element(S, text)
    if "^-" in text:
        raise InputError("a positive word is required")
    return x


def parse_atoms(S: GarsideStructure, text: str) -> list[str]:
    names = text.replace(",", " ").split()
    for n in names:
        if n not in S.atom_of_name:
            raise InputError(f"unknown atom {n!r}")
    return names


def parse_handle(S: GarsideStructure, text: str) -> ParabolicHandle:
    text = text.strip()
    try:
        if text.startswith("{"):
            doc = json.loads(text)
            X = parse_atoms(S, " ".join(doc.get("X", [])))
            g = parse_element(S, doc.get("g", ""))
        else:
            X = parse_atoms(S, text)
            g = S.identity()
        return handle(S, X, g)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad handle {text!r}") from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def word_text(x: Element) -> str:
    return " ".join(n if e == 1 else f"{n}^{e}" for n, e in x.atom_word())


def positive_text(x: Element) -> str:
    return " ".join(x.structure.atom_names[k] for k in x.positive_atoms())


def element_json(x: Element) -> dict:
    S = x.structure
    return {"p": x.p, "factors": [" ".join(S.simple_word(f)) for f in x.factors], "text": str(x)}


# ---------------------------------------------------------------------------
# commands


def _emit(args, text: str, payload) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_build(args) -> int:
    S, source, stamps = _build_source(args.source)
    doc = dump_cache(structure_to_cache(S, source, stamps))
    if args.out:
        Path(args.out).write_text(doc)
        _emit(args, f"wrote {args.out} ({S.N} simples, {len(S.atoms)} atoms)", {"out": args.out, "simples": S.N})
    else:
        sys.stdout.write(doc)
    return 0


def cmd_catalog(args) -> int:
    rows = []
    for n in catalog.names():
        rows.append({"name": n})
    print(json.dumps(rows, sort_keys=True))
    return 0


def cmd_nf(args) -> int:
    S = load_structure(args.structure)
    x = parse_element(S, args.word)
    _emit(args, str(x), element_json(x))
    return 0


def cmd_lattice(args) -> int:
    S = load_structure(args.structure)
    a, b = parse_positive(S, args.w1), parse_positive(S, args.w2)
    r = join_pos(a, b) if args.command == "lcm" else meet_pos(a, b)
    _emit(args, str(r), element_json(r))
    return 0


def cmd_fraction(args) -> int:
    S = load_structure(args.structure)
    x = parse_element(S, args.word)
    lf, rf = left_fraction(x), right_fraction(x)
    payload = {
        "left": {"den": positive_text(lf.den), "num": positive_text(lf.num)},
        "right": {"num": positive_text(rf.num), "den": positive_text(rf.den)},
    }
    text = (
        f"left:  ({positive_text(lf.den)})^-1 ({positive_text(lf.num)})\n"
        f"right: ({positive_text(rf.num)}) ({positive_text(rf.den)})^-1"
    )
    _emit(args, text, payload)
    return 0


def cmd_swap_orbit(args) -> int:
    S = load_structure(args.structure)
    tr = swap_orbit(parse_element(S, args.word))
    payload = {
        "preperiod": tr.preperiod,
        "period": tr.period,
        "elements": [str(y) for y in tr.elements],
        "conjugators": [positive_text(a) for a, _ in tr.steps],
    }
    text = "\n".join(payload["elements"]) + f"\npreperiod {tr.preperiod} period {tr.period}"
    _emit(args, text, payload)
    return 0


def cmd_rho(args) -> int:
    S = load_structure(args.structure)
    if args.atom not in S.atom_of_name:
        raise InputError(f"unknown atom {args.atom!r}")
    r = rho(args.atom, parse_positive(S, args.word))
    _emit(args, positive_text(r), {"rho": positive_text(r)})
    return 0


def cmd_min_conj(args) -> int:
    S = load_structure(args.structure)
    out = [positive_text(c) for c in minimal_positive_conjugators(parse_positive(S, args.word))]
    _emit(args, "\n".join(out), {"conjugators": out})
    return 0


def cmd_support(args) -> int:
    S = load_structure(args.structure)
    names = names_of(S, support(parse_element(S, args.word)))
    _emit(args, " ".join(names), {"support": names})
    return 0


def cmd_pc(args) -> int:
    S = load_structure(args.structure)
    P = parabolic_closure(parse_element(S, args.word), override=args.override)
    _emit(args, json.dumps(P.to_json(), sort_keys=True), P.to_json())
    return 0


def cmd_z(args) -> int:
    S = load_structure(args.structure)
    P = parse_handle(S, args.handle)
    z = z_element(P)
    _emit(args, str(z), element_json(z) | {"e": exponent(P)})
    return 0


def _report(args, name: str, passed: bool, payload: dict) -> int:
    payload = {"check": name, "passed": passed} | payload
    if args.json or not passed:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"{name}: pass")
    if not passed:
        raise VerificationFailure(payload)
    return 0


def cmd_check(args) -> int:
    S = load_structure(args.structure)
    what = args.what
    if what == "balanced":
        return _report(args, what, is_balanced(S.interval), {})
    if what == "lattice":
        return _report(args, what, lattice_check(S.interval), {})
    if what == "hypdual":
        return _report(args, what, check_hypdual(S.interval), {})
    if what == "lcm-garside":
        rep = check_lcm_garside(S)
        return _report(args, what, rep.passed, rep.to_json())
    if what == "support-preserving":
        rep = check_support_preserving(S, args.mode, args.samples, args.len, args.seed)
        return _report(args, what, rep.passed, rep.to_json())
    if what == "godelle":
        if not args.simple:
            raise InputError("godelle needs a simple element word")
        try:
            d = S.simple_from_word(parse_atoms(S, args.simple))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        try:
            ok = godelle_check(S, d)
        except NotBalanced as exc:
            return _report(args, what, False, {"reason": str(exc)})
        return _report(args, what, ok, {})
    raise InputError(f"unknown check {what!r}")


def cmd_intersect(args) -> int:
    S = load_structure(args.structure)
    r = intersect(parse_handle(S, args.h1), parse_handle(S, args.h2), bound=args.bound)
    _emit(args, json.dumps(r.to_json(), sort_keys=True), r.to_json())
    return 0


def cmd_adjacent(args) -> int:
    S = load_structure(args.structure)
    try:
        ok = adjacency(parse_handle(S, args.h1), parse_handle(S, args.h2))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(args, "adjacent" if ok else "not adjacent", {"adjacent": ok})
    return 0


def cmd_curve_graph(args) -> int:
    S = load_structure(args.structure)
    g = curve_graph(S, args.bound)
    print(g.to_dot() if args.format == "dot" else g.to_json())
    return 0


# ---------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="garside-pc", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--structure", default="B3", help="cache file, cache name or catalog name")
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1, help="accepted for compatibility; work is sequential")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common])
    b.add_argument("source")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    sub.add_parser("catalog", parents=[common]).set_defaults(func=cmd_catalog)

    for name, func in [("nf", cmd_nf), ("fraction", cmd_fraction), ("swap-orbit", cmd_swap_orbit),
                       ("support", cmd_support), ("min-conj", cmd_min_conj)]:
        q = sub.add_parser(name, parents=[common])
        q.add_argument("word")
        q.set_defaults(func=func)

    q = sub.add_parser("pc", parents=[common])
    q.add_argument("word")
    q.add_argument("--override", action="store_true", help="skip the hypothesis stamp check")
    q.set_defaults(func=cmd_pc)

    for name in ("lcm", "gcd"):
        q = sub.add_parser(name, parents=[common])
        q.add_argument("w1")
        q.add_argument("w2")
        q.set_defaults(func=cmd_lattice)

    q = sub.add_parser("rho", parents=[common])
    q.add_argument("atom")
    q.add_argument("word")
    q.set_defaults(func=cmd_rho)

    q = sub.add_parser("z", parents=[common])
    q.add_argument("handle", help='atoms "s1 s2" or a handle {"X": [...], "g": "word"}')
    q.set_defaults(func=cmd_z)

    q = sub.add_parser("check", parents=[common])
    q.add_argument("what", choices=["balanced", "lattice", "lcm-garside", "support-preserving", "hypdual", "godelle"])
    q.add_argument("simple", nargs="?")
    q.add_argument("--mode", choices=["sampled", "certificate"], default="sampled")
    q.add_argument("--len", type=int, default=8)
    q.add_argument("--samples", type=int, default=2000)
    q.set_defaults(func=cmd_check)

    for name, func in [("intersect", cmd_intersect), ("adjacent", cmd_adjacent)]:
        q = sub.add_parser(name, parents=[common])
        q.add_argument("h1")
        q.add_argument("h2")
        q.add_argument("--bound", type=int, default=3)
        q.set_defaults(func=func)

    q = sub.add_parser("curve-graph", parents=[common])
    q.add_argument("--bound", type=int, default=0)
    q.add_argument("--format", choices=["dot", "json"], default="dot")
    q.set_defaults(func=cmd_curve_graph)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except VerificationFailure:
        return 1
    except (UnverifiedStructure, StructureError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    except (InputError, catalog.CatalogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
