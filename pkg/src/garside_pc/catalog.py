"""Catalog of the Garside structures treated here.

Entries are addressed by name:

* ``B3``, ``B4``, ...          classical braid groups (type A_{n-1})
* ``A3``, ``B3``/``artin:B3``, ``D4``, ``I2(6)``  Artin groups with the classical structure
* ``CP(e,n)``                   the Corran-Picantin structure on B(e,e,n)
* ``dual_sym(n)``               the dual braid monoid of S_n
* ``G24``, ``G29``              dual braid monoids of exceptional 2-reflection groups
* ``G12``, ``G22``, ``G13``     rank-2 models (G13 is modelled by I2(6))
"""

from __future__ import annotations

import dataclasses
import functools
import re
from importlib import resources

from . import cyclotomic as cyc
from .garside import GarsideStructure
from .groups import (
    FiniteGroup,
    GroupError,
    GroupSpec,
    Interval,
    MatrixElement,
    MonomialElement,
    build_group,
    check_hypdual,
    enumerate_closure,
    perm_inv,
    perm_mul,
    perm_order,
    symmetric_spec,
    word_metric,
)


class CatalogError(KeyError):
    """Unknown catalog name or unsupported entry."""


# Relations of the G24 dual braid monoid: along each cycle every product of
# two consecutive atoms gives the same element.
G24_TRIANGLES = [(1, 2, 4), (8, 5, 7), (12, 6, 14), (2, 11, 10), (5, 1, 3), (6, 8, 9), (11, 12, 13)]
G24_SQUARES = [
    (6, 13, 10, 1), (11, 4, 3, 8), (1, 7, 9, 12), (8, 14, 13, 2),
    (12, 10, 4, 5), (2, 3, 7, 6), (5, 9, 14, 11),
]
G24_TAU_CYCLES = [(1, 8, 12, 2, 5, 6, 11), (4, 7, 14, 10, 3, 9, 13)]

SHEPHARD_ALIASES = {"G25": "artin:A3", "G26": "artin:B3", "G32": "artin:A4"}


@dataclasses.dataclass
class CatalogEntry:
    """A named structure with its metadata and expected verification outcomes."""

    name: str
    spec: GroupSpec
    atom_names: tuple
    apex_word: tuple
    kind: str
    flags: dict
    expected: dict
    structure: GarsideStructure
    representatives: tuple = ()

    @property
    def group(self) -> FiniteGroup:
        return self.structure.group


def _flags(order2: bool = True, dual: bool = False) -> dict:
    return {
        "order2_atoms": order2,
        "distinct_hyperplanes": True,
        "homogeneous": True,
        "square_free": order2,
        "dual": dual,
    }


def _finish(
    name: str,
    W: FiniteGroup,
    gens,
    names,
    apex,
    kind: str,
    expected: dict,
    dual: bool = False,
    representatives: tuple = (),
) -> CatalogEntry:
    metric = word_metric(W, gens, names)
    c = apex if isinstance(apex, tuple) and apex in W else W.word(apex)
    interval = Interval(metric, c)
    S = GarsideStructure(interval, name)
    S.hypotheses_verified = expected.get("support_preserving", False)
    apex_word = tuple(S.simple_word(S.DELTA))
    order2 = all(perm_order(S.perms[a]) == 2 for a in S.atoms)
    return CatalogEntry(
        name,
        W.spec,
        tuple(S.atom_names),
        apex_word,
        kind,
        _flags(order2, dual),
        expected,
        S,
        representatives,
    )


def _longest(W: FiniteGroup, gens) -> tuple:
    metric = word_metric(W, gens)
    return max(metric.length, key=lambda g: (metric.length[g], g))


_CLASSICAL = {"balanced": True, "lattice": True, "lcm_garside": True, "support_preserving": True}


# ---------------------------------------------------------------------------
# classical and Artin structures


@functools.lru_cache(maxsize=None)
def classical_braid(n: int) -> GarsideStructure:
    return classical_entry(n).structure


@functools.lru_cache(maxsize=None)
def classical_entry(n: int) -> CatalogEntry:
    if n < 2:
        raise CatalogError("classical_braid needs n >= 2")
    W = build_group(symmetric_spec(n))
    return _finish(f"B{n}", W, W.gen_perms, W.spec.names, _longest(W, W.gen_perms), "classical", dict(_CLASSICAL))


def _type_b_spec(n: int) -> GroupSpec:
    gens = [MonomialElement.diagonal(n, 2, (1,) + (0,) * (n - 1))]
    gens += [MonomialElement.transposition(n, 2, i, i + 1) for i in range(n - 1)]
    names = ["t"] + [f"s{i + 1}" for i in range(n - 1)]
    return GroupSpec("coxeter", ("B", n), tuple(gens), tuple(names))


def _type_d_spec(n: int) -> GroupSpec:
    gens = [MonomialElement((1, 0) + tuple(range(2, n)), (1, 1) + (0,) * (n - 2), 2)]
    gens += [MonomialElement.transposition(n, 2, i, i + 1) for i in range(n - 1)]
    names = ["u"] + [f"s{i + 1}" for i in range(n - 1)]
    return GroupSpec("coxeter", ("D", n), tuple(gens), tuple(names))


def _dihedral_spec(m: int, names=("a", "b")) -> GroupSpec:
    a = MonomialElement((1, 0), (0, 0), m)
    b = MonomialElement((1, 0), (m - 1, 1), m)
    return GroupSpec("coxeter", ("I2", m), (a, b), tuple(names))


@functools.lru_cache(maxsize=None)
def artin_entry(ctype: str) -> CatalogEntry:
    m = re.fullmatch(r"([ABD])(\d+)|I2\((\d+)\)", ctype)
    if not m:
        raise CatalogError(f"unsupported Coxeter type {ctype!r}")
    if m.group(3):
        k = int(m.group(3))
        if k < 2:
            raise CatalogError("I2(m) needs m >= 2")
        spec = _dihedral_spec(k)
    else:
        fam, n = m.group(1), int(m.group(2))
        if fam == "A":
            if n < 1:
                raise CatalogError("A_n needs n >= 1")
            e = classical_entry(n + 1)
            return dataclasses.replace(e, name=ctype)
        if fam == "B":
            if n < 2:
                raise CatalogError("B_n needs n >= 2")
            spec = _type_b_spec(n)
        else:
            if n < 3:
                raise CatalogError("D_n needs n >= 3")
            spec = _type_d_spec(n)
    W = build_group(spec)
    return _finish(ctype, W, W.gen_perms, spec.names, _longest(W, W.gen_perms), "artin", dict(_CLASSICAL))


def artin(ctype: str) -> GarsideStructure:
    return artin_entry(ctype).structure


# ---------------------------------------------------------------------------
# Corran-Picantin


def corran_picantin_spec(e: int, n: int) -> GroupSpec:
    """Generators t_0..t_{e-1}, s_3..s_n of G(e,e,n).

    t_i swaps the first two coordinates with phases so that t_i t_{i+1} is
    the diagonal matrix diag(zeta^-1, zeta, 1, ...).
    """
    if e < 1 or n < 2:
        raise CatalogError("corran_picantin needs e >= 1 and n >= 2")
    gens, names = [], []
    for i in range(e):
        gens.append(MonomialElement((1, 0) + tuple(range(2, n)), (-i, i) + (0,) * (n - 2), e))
        names.append(f"t{i}")
    for j in range(3, n + 1):
        gens.append(MonomialElement.transposition(n, e, j - 2, j - 1))
        names.append(f"s{j}")
    return GroupSpec("G(de,e,n)", (e, e, n), tuple(gens), tuple(names))


@functools.lru_cache(maxsize=None)
def corran_picantin_entry(e: int, n: int) -> CatalogEntry:
    spec = corran_picantin_spec(e, n)
    W = build_group(spec)
    names = list(spec.names)
    if e == 1:
        # T_1 = {t0}: the presentation is the Artin monoid of type A_{n-1}
        word = _longest(W, W.gen_perms)
    else:
        word = (["t0", "t1"] + [f"s{j}" for j in range(3, n + 1)]) * (n - 1)
    return _finish(f"CP({e},{n})", W, W.gen_perms, names, word, "corran-picantin", dict(_CLASSICAL))


def corran_picantin(e: int, n: int) -> GarsideStructure:
    return corran_picantin_entry(e, n).structure


# ---------------------------------------------------------------------------
# dual braid monoids


@functools.lru_cache(maxsize=None)
def dual_sym_entry(n: int, cap: int = 7) -> CatalogEntry:
    if n < 2 or n > cap:
        raise CatalogError(f"dual_sym needs 2 <= n <= {cap}")
    spec = symmetric_spec(n)
    W = build_group(spec)
    # all transpositions (i j), ordered (1 2), (1 3), ..., (2 3), ...
    gens, names = [], []
    for i in range(n):
        for j in range(i + 1, n):
            gens.append(MonomialElement.transposition(n, 1, i, j).action())
            names.append(f"r{i + 1}{j + 1}" if n < 10 else f"r{i + 1}_{j + 1}")
    c = W.word(spec.names)  # s1 s2 ... s_{n-1}, an n-cycle
    expected = {"balanced": True, "lattice": True, "lcm_garside": True, "hypdual": True}
    return _finish(f"dual_sym({n})", W, gens, names, c, "dual", expected, dual=True)


def dual_sym(n: int) -> GarsideStructure:
    return dual_sym_entry(n).structure


def _field_for(modulus: tuple) -> cyc.CyclotomicField:
    for m in range(1, 200):
        if cyc.cyclotomic_poly(m) == modulus:
            return cyc.CyclotomicField(m)
    raise GroupError(f"modulus {modulus} is not a cyclotomic polynomial")


@dataclasses.dataclass
class DataFile:
    name: str
    field: cyc.CyclotomicField
    records: list  # (name, MatrixElement)
    directives: dict


def load_data(name: str) -> DataFile:
    """Read ``data/<name>.txt``: records ``name; degree; modulus; row | row ...``."""
    try:
        text = resources.files(__package__).joinpath("data", f"{name}.txt").read_text()
    except FileNotFoundError as exc:
        raise CatalogError(f"no data file for {name}") from exc
    records, directives = [], {}
    field = None
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("@"):
            key, _, rest = line[1:].partition(" ")
            directives[key] = rest.split()
            continue
        parts = [p.strip() for p in line.split(";")]
        if len(parts) != 4:
            raise GroupError(f"malformed record in {name}: {line[:60]}")
        rname, degree, modulus, rows = parts
        mod = _parse_int_poly(modulus)
        if field is None:
            field = _field_for(mod)
        elif field.modulus != mod:
            raise GroupError("records use different fields")
        matrix = tuple(
            tuple(field.parse(entry) for entry in row.split(","))
            for row in rows.split("|")
        )
        if len(matrix) != int(degree) or any(len(r) != int(degree) for r in matrix):
            raise GroupError(f"record {rname} is not a {degree}x{degree} matrix")
        records.append((rname, MatrixElement(field, matrix)))
    return DataFile(name, field, records, directives)


def _parse_int_poly(text: str) -> tuple:
    coeffs: dict[int, int] = {}
    for sign, body in re.findall(r"([+-]?)([^+-]+)", text.replace(" ", "")):
        if "x" in body:
            head, _, tail = body.partition("x")
            head = head.rstrip("*")
            c = int(head) if head else 1
            p = int(tail[1:]) if tail.startswith("^") else 1
        else:
            c, p = int(body), 0
        coeffs[p] = coeffs.get(p, 0) + (-c if sign == "-" else c)
    top = max(coeffs)
    return tuple(coeffs.get(i, 0) for i in range(top + 1))


def _reflection_closure(W: FiniteGroup, gens: list) -> list:
    """Conjugates of the given reflections, in discovery order."""
    seen = list(gens)
    have = set(gens)
    i = 0
    while i < len(seen):
        r = seen[i]
        for g in W.gen_perms:
            q = perm_mul(perm_mul(perm_inv(g), r), g)
            if q not in have:
                have.add(q)
                seen.append(q)
        i += 1
    return seen


@functools.lru_cache(maxsize=None)
def dual_exceptional_entry(name: str) -> CatalogEntry:
    if name == "G27":
        raise CatalogError(
            "G27 is not shipped: no generator data file is available; "
            "add data/G27.txt in the documented record format to enable it"
        )
    if name in ("G33", "G34"):
        raise CatalogError(f"{name} exceeds the default element cap and is not shipped")
    data = load_data(name)
    names = [r for r, _ in data.records]
    spec = GroupSpec("exceptional", (name,), tuple(m for _, m in data.records), tuple(names))
    W = build_group(spec)
    refl = _reflection_closure(W, list(W.gen_perms))
    c = W.word(data.directives["coxeter"])
    extra = refl[len(names):]
    extra_names = [f"r{k}" for k in range(len(names) + 1, len(refl) + 1)]
    metric = word_metric(W, list(W.gen_perms) + extra, names + extra_names)
    interval = Interval(metric, c)
    atom_perms = {interval.members[a] for a in interval.atoms}
    # atoms first, in file order, then the remaining atoms, then other reflections
    ordered = [p for p in refl if p in atom_perms] + [p for p in refl if p not in atom_perms]
    if ordered != list(W.gen_perms) + extra:
        lookup = dict(zip(list(W.gen_perms) + extra, names + extra_names))
        new_names = []
        k = len(names)
        for p in ordered:
            if p in W.gen_perms:
                new_names.append(lookup[p])
            else:
                k += 1
                new_names.append(f"r{k}")
        metric = word_metric(W, ordered, new_names)
        interval = Interval(metric, c)
    rank = int(data.directives.get("rank", ["0"])[0])
    if metric.length[c] != rank:
        raise GroupError(f"reflection length of c is {metric.length[c]}, expected {rank}")
    S = GarsideStructure(interval, name)
    S.hypotheses_verified = True
    expected = {
        "balanced": True,
        "lattice": True,
        "lcm_garside": True,
        "hypdual": True,
        "support_preserving": True,
    }
    return CatalogEntry(
        name, spec, tuple(S.atom_names), tuple(S.simple_word(S.DELTA)), "dual",
        _flags(True, True), expected, S,
    )


def dual_exceptional(name: str) -> GarsideStructure:
    return dual_exceptional_entry(name).structure


# ---------------------------------------------------------------------------
# rank 2


@functools.lru_cache(maxsize=None)
def rank2_entry(name: str) -> CatalogEntry:
    if name == "G13":
        spec = _dihedral_spec(6)
        W = build_group(spec)
        reps = ("b^-1", "D a^-2")
        return _finish("G13", W, W.gen_perms, spec.names, ["a", "b"] * 3, "rank2", dict(_CLASSICAL), representatives=reps)
    if name not in ("G12", "G22"):
        raise CatalogError(f"unknown rank-2 model {name!r}")
    data = load_data(name)
    names = [r for r, _ in data.records]
    spec = GroupSpec("exceptional", (name,), tuple(m for _, m in data.records), tuple(names))
    W = build_group(spec)
    return _finish(name, W, W.gen_perms, names, data.directives["apex"], "rank2", dict(_CLASSICAL), representatives=("s",))


def rank2(name: str) -> GarsideStructure:
    return rank2_entry(name).structure


# ---------------------------------------------------------------------------
# lookup


def shephard_alias(name: str) -> str:
    """Artin entry sharing the parabolic subgroups of a Shephard group."""
    if name in SHEPHARD_ALIASES:
        return SHEPHARD_ALIASES[name]
    m = re.fullmatch(r"G\((\d+),1,(\d+)\)", name)
    if m:
        return f"artin:B{m.group(2)}" if int(m.group(2)) >= 2 else "artin:A1"
    raise CatalogError(f"no alias for {name!r}")


def entry(name: str) -> CatalogEntry:
    name = name.strip()
    if m := re.fullmatch(r"B(\d+)", name):
        return classical_entry(int(m.group(1)))
    if m := re.fullmatch(r"artin:(.+)", name):
        return artin_entry(m.group(1))
    if re.fullmatch(r"[AD]\d+|I2\(\d+\)", name):
        return artin_entry(name)
    if m := re.fullmatch(r"CP\((\d+),(\d+)\)", name):
        return corran_picantin_entry(int(m.group(1)), int(m.group(2)))
    if re.fullmatch(r"G\(\d+,1,\d+\)", name):
        return entry(shephard_alias(name))
    if m := re.fullmatch(r"G\((\d+),\1,(\d+)\)", name):
        return corran_picantin_entry(int(m.group(1)), int(m.group(2)))
    if m := re.fullmatch(r"dual_sym\((\d+)\)", name):
        return dual_sym_entry(int(m.group(1)))
    if name in ("G12", "G13", "G22"):
        return rank2_entry(name)
    if re.fullmatch(r"G\d+", name):
        if name in SHEPHARD_ALIASES:
            return entry(SHEPHARD_ALIASES[name])
        return dual_exceptional_entry(name)
    raise CatalogError(f"unknown catalog name {name!r}")


def structure(name: str) -> GarsideStructure:
    return entry(name).structure


def names() -> list[str]:
    return [
        "B3", "B4", "A3", "artin:B3", "D4", "I2(6)", "CP(3,3)", "CP(4,3)", "CP(3,4)",
        "dual_sym(3)", "dual_sym(4)", "dual_sym(5)", "G24", "G29", "G12", "G13", "G22",
    ]


def hypdual_holds(S: GarsideStructure) -> bool:
    return check_hypdual(S.interval)
