"""Swap conjugation, recurrent elements, transports and minimal positive conjugators."""

from __future__ import annotations

import dataclasses
from collections import deque

from .garside import (
    Element,
    GarsideStructure,
    complement_into_simple,
    left_fraction,
    meet_pos,
)

DEFAULT_GRAPH_CAP = 10**5


class GraphCapExceeded(RuntimeError):
    """The positive conjugacy class is larger than the configured cap."""


# ---------------------------------------------------------------------------
# swap


def swap(x: Element) -> tuple[Element, Element]:
    """Return ``(a, b a^-1)`` where ``x = a^-1 b`` is the reduced left fraction."""
    fr = left_fraction(x)
    a, b = fr.den, fr.num
    if a.is_identity():
        return a, x
    return a, b * a.inverse()


@dataclasses.dataclass(frozen=True)
class SwapTrace:
    """The swap orbit x = y_0, y_1, ... with y_{k+1} = a_k y_k a_k^-1.

    ``preperiod`` is m and ``period`` is n - m, where y_m = y_n is the first
    repetition.  ``steps[k] = (a_k, y_{k+1})``.
    """

    start: Element
    steps: tuple
    preperiod: int
    period: int

    @property
    def elements(self) -> list[Element]:
        return [self.start] + [y for _, y in self.steps]

    def conjugator_to(self, k: int) -> Element:
        """C = a_{k-1} ... a_0, so that y_k = C x C^-1."""
        S = self.start.structure
        c = S.identity()
        for a, _ in self.steps[:k]:
            c = a * c
        return c

    @property
    def recurrent(self) -> Element:
        return self.elements[self.preperiod]

    def recurrent_conjugator(self) -> Element:
        return self.conjugator_to(self.preperiod)

    def cycle(self) -> list[Element]:
        ys = self.elements
        return ys[self.preperiod : self.preperiod + self.period]


def swap_orbit(x: Element, max_steps: int = 10**5) -> SwapTrace:
    seen = {x: 0}
    cur = x
    steps = []
    for _ in range(max_steps):
        a, y = swap(cur)
        steps.append((a, y))
        if y in seen:
            m = seen[y]
            return SwapTrace(x, tuple(steps), m, len(steps) - m)
        seen[y] = len(steps)
        cur = y
    raise RuntimeError("swap orbit did not close")


def is_recurrent(x: Element) -> bool:
    return swap_orbit(x).preperiod == 0


def verify_trace(trace: SwapTrace) -> bool:
    """Each step is the swap of the previous element and the last one closes the period."""
    ys = trace.elements
    for k, (a, y) in enumerate(trace.steps):
        if a * ys[k] * a.inverse() != y:
            return False
        if swap(ys[k]) != (a, y):
            return False
    n = trace.preperiod + trace.period
    return ys[n] == ys[trace.preperiod] and len(set(ys[:n])) == n


def conjugate_to_positive(x: Element) -> tuple[Element, Element] | None:
    """``(c, y)`` with ``y = c x c^-1`` positive and c a product of swap conjugators.

    Returns None when the swap orbit closes without reaching a positive
    element; then x has no positive conjugate.
    """
    trace = swap_orbit(x)
    for k, y in enumerate(trace.elements):
        if y.is_positive():
            return trace.conjugator_to(k), y
    return None


# ---------------------------------------------------------------------------
# transport


def transport(y: Element, u: Element) -> Element:
    """u^(1) = a u ∧ b u, where y = a^-1 b is reduced."""
    if not u.is_positive():
        raise ValueError("transport needs a positive conjugator")
    fr = left_fraction(y)
    return meet_pos(fr.den * u, fr.num * u)


# ---------------------------------------------------------------------------
# minimal positive conjugators


def rho_chain(a: int, x: Element) -> list[int]:
    """Converging prefixes c_0 = a, c_{j+1} = c_j ∨ x\\c_j (simple indices)."""
    if not x.is_positive():
        raise ValueError("rho needs a positive element")
    S = x.structure
    chain = [a]
    while True:
        c = chain[-1]
        nxt = S.join(c, complement_into_simple(x, c))
        if nxt == c:
            return chain
        chain.append(nxt)


def rho(a, x: Element) -> Element:
    """The prefix-minimal positive c with a ≼ c and x^c positive.

    ``a`` is an atom name, atom position or simple index of an atom.
    """
    S = x.structure
    s = _atom_simple(S, a)
    return S.simple(rho_chain(s, x)[-1])


def _atom_simple(S: GarsideStructure, a) -> int:
    if isinstance(a, str):
        return S.atom(a)
    if isinstance(a, Element):
        if a.p != 0 or len(a.factors) != 1 or S.length[a.factors[0]] != 1:
            raise ValueError("not an atom")
        return a.factors[0]
    return S.atoms[a]


def rho_all(x: Element) -> dict[int, int]:
    """Atom position -> simple index of rho for every atom."""
    S = x.structure
    return {k: rho_chain(s, x)[-1] for k, s in enumerate(S.atoms)}


def minimal_simple_conjugators(x: Element) -> list[int]:
    """Simple indices of the prefix-minimal elements among the rho_a(x)."""
    S = x.structure
    cands = sorted(set(rho_all(x).values()))
    out = []
    for c in cands:
        if not any(d != c and S.is_prefix(d, c) for d in cands):
            out.append(c)
    return out


def minimal_positive_conjugators(x: Element) -> list[Element]:
    S = x.structure
    return [S.simple(c) for c in minimal_simple_conjugators(x)]


@dataclasses.dataclass
class ConjGraph:
    """Positive conjugates of a positive element and the minimal conjugators between them."""

    vertices: list
    arrows: list  # (source index, simple index, target index)

    def to_dot(self) -> str:
        lines = ["digraph conj {"]
        for i, v in enumerate(self.vertices):
            lines.append(f'  v{i} [label="{_label(v)}"];')
        for i, s, j in self.arrows:
            S = self.vertices[i].structure
            lines.append(f'  v{i} -> v{j} [label="{" ".join(S.simple_word(s))}"];')
        lines.append("}")
        return "\n".join(lines)


def _label(x: Element) -> str:
    return " ".join(f"{n}" if e == 1 else f"{n}^{e}" for n, e in x.atom_word())


def positive_conjugates_graph(x: Element, cap: int = DEFAULT_GRAPH_CAP) -> ConjGraph:
    if not x.is_positive():
        raise ValueError("the graph is defined for positive elements")
    S = x.structure
    where = {x: 0}
    vertices = [x]
    arrows = []
    queue = deque([x])
    while queue:
        v = queue.popleft()
        for c in minimal_simple_conjugators(v):
            w = v.conj(S.simple(c))
            if w not in where:
                if len(vertices) >= cap:
                    raise GraphCapExceeded(f"more than {cap} positive conjugates")
                where[w] = len(vertices)
                vertices.append(w)
                queue.append(w)
            arrows.append((where[v], c, where[w]))
    return ConjGraph(vertices, arrows)


def positive_conjugates(x: Element, cap: int = DEFAULT_GRAPH_CAP) -> set[Element]:
    return set(positive_conjugates_graph(x, cap).vertices)


# ---------------------------------------------------------------------------
# bounded recurrent sets


def fraction_sups(y: Element) -> tuple[int, int]:
    fr = left_fraction(y)
    return fr.num.sup, fr.den.sup


def r_m_set(x: Element, m: int, cap: int = DEFAULT_GRAPH_CAP) -> set[Element]:
    """Recurrent conjugates y of x with sup(N_L(y)) <= m and sup(D_L(y)) <= m.

    The set is explored from the recurrent elements of the swap orbit of x
    by conjugating with all simples.  Empty when no orbit element qualifies.
    """
    S = x.structure

    def inside(y: Element) -> bool:
        num, den = fraction_sups(y)
        return num <= m and den <= m and is_recurrent(y)

    seeds = [y for y in swap_orbit(x).cycle() if inside(y)]
    found = set(seeds)
    queue = deque(seeds)
    simples = [S.simple(s) for s in range(1, S.N)]
    while queue:
        y = queue.popleft()
        for u in simples:
            z = y.conj(u)
            if z not in found and inside(z):
                if len(found) >= cap:
                    raise GraphCapExceeded(f"more than {cap} recurrent conjugates")
                found.add(z)
                queue.append(z)
    return found
