"""Parabolic closures in the rank-2 models G12, G22 and G13 (as I2(6)).

In rank 2 every proper nontrivial parabolic subgroup is cyclic, generated by
a conjugate of a braided reflection.  Closures are therefore returned as
:class:`CyclicClosure` values instead of standard-parabolic handles, because
for G13 the subgroups conjugate to <Δ a^-2> are not standard for the Garside
structure.
"""

from __future__ import annotations

import dataclasses
from collections import deque

from .conjugacy import conjugate_to_positive, minimal_simple_conjugators
from .garside import Element, GarsideStructure


@dataclasses.dataclass(frozen=True, eq=False)
class CyclicClosure:
    """``kind`` is ``trivial``, ``cyclic`` or ``whole``; ``generator`` spans the cyclic case."""

    kind: str
    generator: Element | None = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclicClosure):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if self.kind != "cyclic":
            return True
        g, h = self.generator, other.generator
        return g == h or g == h.inverse()

    def __hash__(self) -> int:
        return hash(self.kind)

    def contains(self, x: Element) -> bool:
        if self.kind == "whole" or x.is_identity():
            return True
        if self.kind == "trivial":
            return False
        g = self.generator
        k = x.length() // g.length() if g.length() else 0
        return k != 0 and g ** k == x


def abelianization(x: Element) -> tuple[int, ...]:
    """Signed letter counts of x, indexed by atom position."""
    S = x.structure
    out = [0] * len(S.atoms)
    for name, e in x.atom_word():
        out[S.atom_of_name[name]] += e
    return tuple(out)


def _path_to(y: Element, target: Element, cap: int = 10**4) -> Element | None:
    """Positive u with y^u = target, searched in the graph of positive conjugates."""
    S = y.structure
    prev: dict = {y: None}
    queue = deque([y])
    while queue:
        v = queue.popleft()
        if v == target:
            u = S.identity()
            while prev[v] is not None:
                w, s = prev[v]
                u = S.simple(s) * u
                v = w
            return u
        for s in minimal_simple_conjugators(v):
            w = v.conj(S.simple(s))
            if w not in prev:
                if len(prev) >= cap:
                    return None
                prev[w] = (v, s)
                queue.append(w)
    return None


def _power_of_atom_conjugate(x: Element, atoms: list[str], k: int):
    """(name, g) with x = g^-1 t^k g for an atom t in ``atoms``, or None."""
    S = x.structure
    found = conjugate_to_positive(x)
    if found is None:
        return None
    c, p = found  # p = c x c^-1
    for name in atoms:
        target = S.atom_element(name) ** k
        u = _path_to(p, target)
        if u is not None:
            # t^k = u^-1 p u = u^-1 c x c^-1 u, so x = g^-1 t^k g with g = u^-1 c
            return name, u.inverse() * c
    return None


def pc_rank2(x: Element, tag: str) -> CyclicClosure:
    S = x.structure
    if tag not in ("G12", "G22", "G13"):
        raise ValueError(f"unknown rank-2 tag {tag!r}")
    if S.name != tag:
        raise ValueError(f"element lives in {S.name!r}, not {tag!r}")
    if x.is_identity():
        return CyclicClosure("trivial")
    if tag in ("G12", "G22"):
        k = x.length()
        if k == 0:
            return CyclicClosure("whole")
        y = x if k > 0 else x.inverse()
        hit = _power_of_atom_conjugate(y, list(S.atom_names), abs(k))
        if hit is None:
            return CyclicClosure("whole")
        name, g = hit
        return CyclicClosure("cyclic", S.atom_element(name).conj(g))
    return _pc_g13(x)


def _pc_g13(x: Element) -> CyclicClosure:
    S = x.structure
    p, q = abelianization(x)
    if p == 0 and q != 0:
        y = x if q > 0 else x.inverse()
        hit = _power_of_atom_conjugate(y, ["b"], abs(q))
        if hit is not None:
            _, g = hit
            return CyclicClosure("cyclic", S.atom_element("b").conj(g))
        return CyclicClosure("whole")
    if p != 0 and q == 3 * p:
        k = abs(p)
        xk = x if p > 0 else x.inverse()
        y = (S.delta(-k) * xk).inverse()  # conjugate of a^{2k} when xk is one of (Δ a^-2)^k
        hit = _power_of_atom_conjugate(y, ["a"], 2 * k)
        if hit is not None:
            _, g = hit
            r = S.delta(1) * S.atom_element("a") ** -2
            return CyclicClosure("cyclic", r.conj(g))
        return CyclicClosure("whole")
    return CyclicClosure("whole")


# ---------------------------------------------------------------------------
# the atom property used above


@dataclasses.dataclass
class DMMReport:
    passed: bool
    length: int
    elements: int
    counterexamples: list


def positive_ball(S: GarsideStructure, max_len: int, max_elements: int) -> tuple[list[Element], int]:
    """Positive elements by length, stopping at the last complete level within the cap."""
    letters = [S.simple(a) for a in S.atoms]
    level = [S.identity()]
    out = [S.identity()]
    done = 0
    for ln in range(1, max_len + 1):
        nxt = {}
        for w in level:
            for l in letters:
                v = w * l
                nxt.setdefault(v, None)
        if len(out) + len(nxt) > max_elements:
            break
        level = list(nxt)
        out += level
        done = ln
    return out, done


def dmm_check(S: GarsideStructure, max_len: int = 5, max_power: int = 3, max_elements: int = 1500) -> DMMReport:
    """If r^n x = x y with x, y positive, then y = t^n for an atom t with r x = x t."""
    xs, reached = positive_ball(S, max_len, max_elements)
    bad = []
    for x in xs:
        xinv = x.inverse()
        for a in S.atoms:
            r = S.simple(a)
            t = xinv * r * x
            t_atom = t.p == 0 and len(t.factors) == 1 and S.length[t.factors[0]] == 1
            rn = r
            for n in range(1, max_power + 1):
                y = xinv * rn * x
                if y.is_positive() and not (t_atom and y == t ** n):
                    bad.append({"x": str(x), "r": S.simple_word(a)[0], "n": n})
                rn = rn * r
    return DMMReport(not bad, reached, len(xs), bad)
