"""Supports, standard parabolic subgroups, parabolic closures and z-elements.

Atom sets are plain ``int`` bitmasks over atom positions of a structure.
A :class:`ParabolicHandle` ``(X, g)`` stands for ``g^-1 G_X g``.
"""

from __future__ import annotations

import dataclasses
import functools
import json
import math
import random
from collections import deque
from typing import Iterable

from .conjugacy import conjugate_to_positive, minimal_simple_conjugators, swap_orbit
from .garside import Element, GarsideStructure, left_fraction
from .groups import perm_inv, perm_mul, perm_order


class UnverifiedStructure(RuntimeError):
    """Parabolic closures need a verified support-preserving LCM-Garside structure."""


class NotBalanced(ValueError):
    """The simple passed to a Godelle check is not balanced."""


# ---------------------------------------------------------------------------
# atom sets


def _tables(S: GarsideStructure) -> dict:
    t = S.cache.get("parabolic")
    if t is None:
        pos = {s: k for k, s in enumerate(S.atoms)}
        below = []
        for s in range(S.N):
            m, d, k = 0, S.down[s], 0
            for k, a in enumerate(S.atoms):
                if d >> a & 1:
                    m |= 1 << k
            below.append(m)
        word_mask = []
        for w in S.words:
            m = 0
            for k in w:
                m |= 1 << k
            word_mask.append(m)
        t = {"pos": pos, "below": below, "word_mask": word_mask, "delta": {}}
        S.cache["parabolic"] = t
    return t


def full_set(S: GarsideStructure) -> int:
    return (1 << len(S.atoms)) - 1


def mask_of(S: GarsideStructure, names: Iterable) -> int:
    m = 0
    for n in names:
        m |= 1 << (S.atom_of_name[n] if isinstance(n, str) else n)
    return m


def names_of(S: GarsideStructure, X: int) -> list[str]:
    return [n for k, n in enumerate(S.atom_names) if X >> k & 1]


def delta_X(S: GarsideStructure, X: int) -> int:
    """Simple index of Δ_X, the join of the atoms in X."""
    cache = _tables(S)["delta"]
    d = cache.get(X)
    if d is None:
        d = S.ID
        for k, a in enumerate(S.atoms):
            if X >> k & 1:
                d = S.join(d, a)
        cache[X] = d
    return d


def atoms_below(S: GarsideStructure, s: int) -> int:
    return _tables(S)["below"][s]


def closure(S: GarsideStructure, X: int) -> int:
    return atoms_below(S, delta_X(S, X))


def is_saturated(S: GarsideStructure, X: int) -> bool:
    return closure(S, X) == X


def saturated_sets(S: GarsideStructure) -> list[int]:
    """All saturated atom sets, in breadth-first order from the empty set."""
    cached = S.cache.get("saturated")
    if cached is not None:
        return cached
    n = len(S.atoms)
    seen = {0}
    out = [0]
    queue = deque([0])
    while queue:
        X = queue.popleft()
        for k in range(n):
            if not X >> k & 1:
                Y = closure(S, X | 1 << k)
                if Y not in seen:
                    seen.add(Y)
                    out.append(Y)
                    queue.append(Y)
    S.cache["saturated"] = out
    return out


def rank(S: GarsideStructure, X: int) -> int:
    """Height of a saturated X in the poset of saturated sets."""
    heights = S.cache.get("sat_height")
    if heights is None:
        sats = sorted(saturated_sets(S), key=lambda m: bin(m).count("1"))
        heights = {}
        for Y in sats:
            below = [heights[Z] for Z in heights if Z != Y and Z & Y == Z]
            heights[Y] = 1 + max(below) if below else 0
        S.cache["sat_height"] = heights
    return heights[closure(S, X)]


def element_atoms(x: Element) -> int:
    """Atoms occurring in the stored words of a positive element."""
    wm = _tables(x.structure)["word_mask"]
    m = 0
    for s in x.simples():
        m |= wm[s]
    return m


def fraction_atoms(x: Element) -> int:
    fr = left_fraction(x)
    return element_atoms(fr.den) | element_atoms(fr.num)


def support(x: Element) -> int:
    """Closure of the atoms in the reduced left fraction of x."""
    return closure(x.structure, fraction_atoms(x))


def ribbon(S: GarsideStructure, X: int, u) -> Element:
    """r_{X,u} = Δ_X^-1 Δ_{X ∪ {u}}."""
    k = S.atom_of_name[u] if isinstance(u, str) else u
    d = delta_X(S, X)
    return S.simple(S.ldiv(d, delta_X(S, X | 1 << k)))


# ---------------------------------------------------------------------------
# structure checks


def balanced_simple(S: GarsideStructure, d: int) -> bool:
    pre = S.down[d]
    suf = S.sdown[d]
    return pre == suf


def godelle_check(S: GarsideStructure, d: int) -> bool:
    """Div(d) is closed under left and right normal-form heads of products."""
    if not balanced_simple(S, d):
        raise NotBalanced(f"simple {S.simple_word(d)} is not balanced")
    div = S.down[d]
    members = [i for i in range(S.N) if div >> i & 1]
    for x in members:
        for y in members:
            if not div >> S.head(x, y) & 1:
                return False
            if not div >> S.tail(x, y) & 1:
                return False
    return True


@dataclasses.dataclass
class LCMReport:
    delta_is_join: bool
    unbalanced: list
    not_closed: list
    checked: int

    @property
    def passed(self) -> bool:
        return self.delta_is_join and not self.unbalanced and not self.not_closed

    def to_json(self) -> dict:
        return dataclasses.asdict(self) | {"passed": self.passed}


def check_lcm_garside(S: GarsideStructure) -> LCMReport:
    ok1 = delta_X(S, full_set(S)) == S.DELTA
    unbalanced, not_closed = [], []
    sats = saturated_sets(S)
    for X in sats:
        d = delta_X(S, X)
        if not balanced_simple(S, d):
            unbalanced.append(names_of(S, X))
        elif not godelle_check(S, d):
            not_closed.append(names_of(S, X))
    return LCMReport(ok1, unbalanced, not_closed, len(sats))


@dataclasses.dataclass
class ChainCertificate:
    ok: bool
    chain: list  # atom masks A_0 ⊂ A_1 ⊂ ...
    remaining: list  # triples left over when the certificate fails


def chain_certificate(S: GarsideStructure, X: int) -> ChainCertificate:
    """Grow A_0 ⊂ A_1 ⊂ ... by discarding LCM triples (a, b, V) until none is left."""
    full = full_set(S)
    if not is_saturated(S, X) or X == full:
        raise ValueError("X must be a proper saturated set")
    n = len(S.atoms)
    dX = delta_X(S, X)
    A = atoms_below(S, S.rcomp[dX])
    B = full & ~(X | A)
    D = []
    for a in range(n):
        if not B >> a & 1:
            continue
        for b in range(n):
            if not X >> b & 1:
                continue
            q = S.complement(S.atoms[b], S.atoms[a])
            V = atoms_below(S, q)
            if delta_X(S, V) == q:
                D.append((a, b, V))
    chain = [A]
    N = 0
    while True:
        A |= N
        if N:
            chain.append(A)
        D = [t for t in D if not A & t[2]]
        for a in range(n):
            trip = [t for t in D if t[0] == a]
            if not all(t[2] >> a & 1 for t in trip):
                continue
            bs = 0
            for t in trip:
                bs |= 1 << t[1]
            if closure(S, bs) != X:
                D = [t for t in D if t[0] != a]
        firsts = 0
        for t in D:
            firsts |= 1 << t[0]
        N = B & ~A & ~firsts
        if not N:
            break
    return ChainCertificate(not D, chain, D)


@dataclasses.dataclass
class SupportReport:
    mode: str
    passed: bool
    checked: int
    seed: int | None = None
    length: int | None = None
    counterexamples: list = dataclasses.field(default_factory=list)

    def to_json(self) -> dict:
        return dataclasses.asdict(self)


def random_positive(S: GarsideStructure, length: int, rng: random.Random) -> Element:
    return S.positive([rng.randrange(len(S.atoms)) for _ in range(length)])


def standard_member(S: GarsideStructure, w: Element, X: int) -> bool:
    return fraction_atoms(w) & ~X == 0


def conjugation_maps(S: GarsideStructure, X: int, Y: int, u: Element) -> bool:
    """(G_X)^u = G_Y, tested on atoms in both directions."""
    uinv = u.inverse()
    for k in range(len(S.atoms)):
        if X >> k & 1:
            if not standard_member(S, uinv * S.simple(S.atoms[k]) * u, Y):
                return False
        if Y >> k & 1:
            if not standard_member(S, u * S.simple(S.atoms[k]) * uinv, X):
                return False
    return True


def check_support_preserving(
    S: GarsideStructure,
    mode: str = "sampled",
    samples: int = 2000,
    length: int = 8,
    seed: int = 0,
) -> SupportReport:
    """Minimal positive conjugators carry G_Supp(x) onto G_Supp(x^rho)."""
    if mode == "certificate":
        bad = []
        sats = [X for X in saturated_sets(S) if X != full_set(S)]
        for X in sats:
            if not chain_certificate(S, X).ok:
                bad.append({"X": names_of(S, X)})
        return SupportReport("certificate", not bad, len(sats), counterexamples=bad)
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        x = random_positive(S, length, rng)
        X = support(x)
        for c in minimal_simple_conjugators(x):
            u = S.simple(c)
            y = x.conj(u)
            Y = support(y)
            if not conjugation_maps(S, X, Y, u):
                bad.append(
                    {
                        "x": str(x),
                        "rho": " ".join(S.simple_word(c)),
                        "supp_x": names_of(S, X),
                        "supp_y": names_of(S, Y),
                    }
                )
    return SupportReport("sampled", not bad, samples, seed, length, bad)


# ---------------------------------------------------------------------------
# z-elements and handles


def z_exponent(S: GarsideStructure, X: int) -> int:
    """Order of the permutation of X induced by conjugation by Δ_X."""
    if not X:
        raise ValueError("z is undefined for the empty atom set")
    d = S.perms[delta_X(S, X)]
    dinv = perm_inv(d)
    order = 1
    seen = 0
    image = {}
    for k, a in enumerate(S.atoms):
        if X >> k & 1:
            img = S.index[perm_mul(perm_mul(dinv, S.perms[a]), d)]
            image[k] = S.atoms.index(img)
    for k in image:
        if seen >> k & 1:
            continue
        j, ln = k, 0
        while not seen >> j & 1:
            seen |= 1 << j
            j = image[j]
            ln += 1
        order = math.lcm(order, ln)
    return order


def z_standard(S: GarsideStructure, X: int) -> Element:
    if not X:
        return S.identity()
    return S.from_simples([delta_X(S, X)] * z_exponent(S, X))


@dataclasses.dataclass(frozen=True, eq=False)
class ParabolicHandle:
    """The subgroup g^-1 G_X g for a saturated X."""

    structure: GarsideStructure
    X: int
    g: Element

    def __post_init__(self):
        if not is_saturated(self.structure, self.X):
            raise ValueError("X must be saturated")

    @functools.cached_property
    def z(self) -> Element:
        return z_standard(self.structure, self.X).conj(self.g)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ParabolicHandle):
            return NotImplemented
        return self.structure is other.structure and self.z == other.z

    def __hash__(self) -> int:
        return hash(self.z)

    @property
    def names(self) -> list[str]:
        return names_of(self.structure, self.X)

    def is_standard(self) -> bool:
        return self.z.is_positive()

    def conjugate(self, c: Element) -> ParabolicHandle:
        """The handle of c^-1 P c."""
        return ParabolicHandle(self.structure, self.X, self.g * c)

    def generators(self) -> list[Element]:
        S = self.structure
        ginv = self.g.inverse()
        return [
            ginv * S.simple(a) * self.g for k, a in enumerate(S.atoms) if self.X >> k & 1
        ]

    def to_json(self) -> dict:
        word = " ".join(f"{n}" if e == 1 else f"{n}^{e}" for n, e in self.g.atom_word())
        return {"X": self.names, "g": word}

    def __repr__(self) -> str:
        return f"ParabolicHandle(X={self.names}, g={self.g})"


def handle(S: GarsideStructure, X, g: Element | str | None = None) -> ParabolicHandle:
    if not isinstance(X, int):
        X = mask_of(S, X)
    if g is None:
        g = S.identity()
    elif isinstance(g, str):
        g = S.word(g)
    return ParabolicHandle(S, X, g)


def z_element(P: ParabolicHandle) -> Element:
    if not P.X:
        raise ValueError("z is undefined for the trivial subgroup")
    return P.z


def exponent(P: ParabolicHandle) -> int:
    return z_exponent(P.structure, P.X)


def _require_verified(S: GarsideStructure, override: bool) -> None:
    if not (override or S.hypotheses_verified):
        raise UnverifiedStructure(
            f"structure {S.name!r} is not marked support-preserving LCM-Garside"
        )


def parabolic_closure(x: Element, override: bool = False) -> ParabolicHandle:
    """Smallest parabolic subgroup containing x."""
    S = x.structure
    _require_verified(S, override)
    trace = swap_orbit(x)
    y = trace.recurrent
    c = trace.recurrent_conjugator()  # y = c x c^-1
    return ParabolicHandle(S, support(y), c)


def varphi(x: Element, override: bool = False) -> int:
    S = x.structure
    _require_verified(S, override)
    y = swap_orbit(x).recurrent
    return S.length[delta_X(S, support(y))]


def standardize(P: ParabolicHandle) -> tuple[Element, int]:
    """(c, Y) with c^-1 P c = G_Y."""
    S = P.structure
    if not P.X:
        return S.identity(), 0
    found = conjugate_to_positive(P.z)
    assert found is not None, "z-elements always have positive conjugates"
    c, y = found
    return c.inverse(), support(y)


def membership(w: Element, P: ParabolicHandle) -> bool:
    return standard_member(P.structure, P.g * w * P.g.inverse(), P.X)


def contains(P1: ParabolicHandle, P2: ParabolicHandle) -> bool:
    """P2 ⊆ P1."""
    return all(membership(h, P1) for h in P2.generators())


# ---------------------------------------------------------------------------
# intersections and adjacency


@dataclasses.dataclass
class IntersectionResult:
    handle: ParabolicHandle
    exact: bool
    method: str

    def to_json(self) -> dict:
        return {"handle": self.handle.to_json(), "exact": self.exact, "method": self.method}


def _simultaneous_standard(P1: ParabolicHandle, P2: ParabolicHandle):
    """Conjugate so that P1 is standard, then swap z_2 while z_1 stays positive."""
    S = P1.structure
    c1, X = standardize(P1)
    total = c1  # P^{total} is the current pair
    z1 = z_standard(S, X)
    z2 = P2.z.conj(c1)
    for _ in range(10**4):
        if z2.is_positive():
            return total, support(z1), support(z2)
        a = left_fraction(z2).den
        ainv = a.inverse()
        z1n = a * z1 * ainv
        if not z1n.is_positive():
            return None
        z1, z2 = z1n, a * z2 * ainv
        total = total * ainv
    return None


def _elements_of(P: ParabolicHandle, bound: int) -> list[Element]:
    S = P.structure
    gens = [S.simple(S.atoms[k]) for k in range(len(S.atoms)) if P.X >> k & 1]
    letters = gens + [g.inverse() for g in gens]
    ball = {S.identity()}
    frontier = [S.identity()]
    for _ in range(bound):
        nxt = []
        for w in frontier:
            for l in letters:
                v = w * l
                if v not in ball:
                    ball.add(v)
                    nxt.append(v)
        frontier = nxt
    ginv = P.g.inverse()
    return [ginv * w * P.g for w in ball if not w.is_identity()]


def intersect(P1: ParabolicHandle, P2: ParabolicHandle, bound: int = 3) -> IntersectionResult:
    S = P1.structure
    if not P1.X or not P2.X:
        return IntersectionResult(handle(S, 0), True, "trivial")
    pair = _simultaneous_standard(P1, P2)
    if pair is not None:
        c, X, Y = pair
        return IntersectionResult(ParabolicHandle(S, X & Y, c.inverse()), True, "standard")
    pair = _simultaneous_standard(P2, P1)
    if pair is not None:
        c, Y, X = pair
        return IntersectionResult(ParabolicHandle(S, X & Y, c.inverse()), True, "standard")
    if contains(P2, P1):
        return IntersectionResult(P1, True, "containment")
    if contains(P1, P2):
        return IntersectionResult(P2, True, "containment")
    best = None
    for w in _elements_of(P1, bound):
        if membership(w, P2):
            f = varphi(w, override=True)
            if best is None or f > best[0]:
                best = (f, w)
    if best is None:
        return IntersectionResult(handle(S, 0), False, "bounded-search")
    return IntersectionResult(parabolic_closure(best[1], override=True), False, "bounded-search")


def is_irreducible(P: ParabolicHandle) -> bool:
    """Connectivity of the non-commutation graph of the atom images of X in W."""
    S = P.structure
    ks = [k for k in range(len(S.atoms)) if P.X >> k & 1]
    if not ks:
        return False
    imgs = {k: S.perms[S.atoms[k]] for k in ks}
    for p in imgs.values():
        if perm_order(p) != 2:
            raise ValueError("irreducibility test needs atom images of order 2")
    reached = {ks[0]}
    queue = [ks[0]]
    while queue:
        i = queue.pop()
        for j in ks:
            if j not in reached and perm_mul(imgs[i], imgs[j]) != perm_mul(imgs[j], imgs[i]):
                reached.add(j)
                queue.append(j)
    return len(reached) == len(ks)


def adjacency(P1: ParabolicHandle, P2: ParabolicHandle) -> bool:
    if not (is_irreducible(P1) and is_irreducible(P2)):
        raise ValueError("adjacency is defined for irreducible parabolic subgroups")
    z1, z2 = P1.z, P2.z
    return z1 != z2 and z1 * z2 == z2 * z1


def conjugating_test(P1: ParabolicHandle, P2: ParabolicHandle, g: Element) -> bool:
    """P1^g = P2."""
    return P1.z.conj(g) == P2.z


# ---------------------------------------------------------------------------
# curve graph


def signed_ball(S: GarsideStructure, radius: int) -> list[Element]:
    letters = [S.simple(a) for a in S.atoms]
    letters += [l.inverse() for l in letters]
    ball = [S.identity()]
    seen = set(ball)
    frontier = list(ball)
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for l in letters:
                v = w * l
                if v not in seen:
                    seen.add(v)
                    ball.append(v)
                    nxt.append(v)
        frontier = nxt
    return ball


@dataclasses.dataclass
class CurveGraph:
    vertices: list  # ParabolicHandle
    edges: list  # (i, j)

    def to_dot(self) -> str:
        lines = ["graph curves {"]
        for i, P in enumerate(self.vertices):
            lines.append(f'  v{i} [label="{" ".join(P.names)} | {P.g}"];')
        for i, j in self.edges:
            lines.append(f"  v{i} -- v{j};")
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> str:
        verts = []
        for P in self.vertices:
            verts.append(
                {
                    "handle": P.to_json(),
                    "z": str(P.z),
                    "rank": rank(P.structure, P.X),
                    "irreducible": True,
                }
            )
        return json.dumps({"vertices": verts, "edges": self.edges}, sort_keys=True)

    def cliques(self) -> list[list[int]]:
        import networkx as nx

        G = nx.Graph()
        G.add_nodes_from(range(len(self.vertices)))
        G.add_edges_from(self.edges)
        return [sorted(c) for c in nx.find_cliques(G)]


def curve_graph(S: GarsideStructure, bound: int = 0) -> CurveGraph:
    std = [X for X in saturated_sets(S) if X and is_irreducible(ParabolicHandle(S, X, S.identity()))]
    verts: list[ParabolicHandle] = []
    seen = set()
    for g in signed_ball(S, bound):
        for X in std:
            P = ParabolicHandle(S, X, g)
            if P.z not in seen:
                seen.add(P.z)
                verts.append(P)
    edges = []
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            if adjacency(verts[i], verts[j]):
                edges.append((i, j))
    return CurveGraph(verts, edges)
