"""Finite complex reflection groups, word lengths and intervals [1, c].

Two exact backends are available for group elements:

* :class:`MonomialElement` -- a monomial matrix over mu_m, stored as a
  permutation together with a vector of phase residues mod m;
* :class:`MatrixElement` -- a square matrix over a cyclotomic field.

A :class:`FiniteGroup` converts its generators into permutations of a finite
set of vectors on which the group acts faithfully, and then works only with
permutation tuples.  Composition follows matrix multiplication:
``mul(p, q)[i] == p[q[i]]`` corresponds to the matrix product ``P @ Q``.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from typing import Iterable, Sequence

from . import cyclotomic as cyc

Perm = tuple  # tuple[int, ...]

DEFAULT_ELEMENT_CAP = 10**6


class GroupError(ValueError):
    """Raised for invalid group specifications or bad generator data."""


# ---------------------------------------------------------------------------
# backends


@dataclasses.dataclass(frozen=True)
class MonomialElement:
    """Monomial matrix sending e_i to zeta_m^phase[i] * e_perm[i]."""

    perm: tuple[int, ...]
    phase: tuple[int, ...]
    m: int

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise GroupError(f"not a permutation: {self.perm}")
        object.__setattr__(self, "phase", tuple(p % self.m for p in self.phase))

    @classmethod
    def identity(cls, n: int, m: int) -> MonomialElement:
        return cls(tuple(range(n)), (0,) * n, m)

    @classmethod
    def transposition(cls, n: int, m: int, i: int, j: int) -> MonomialElement:
        perm = list(range(n))
        perm[i], perm[j] = j, i
        return cls(tuple(perm), (0,) * n, m)

    @classmethod
    def diagonal(cls, n: int, m: int, phases: Sequence[int]) -> MonomialElement:
        return cls(tuple(range(n)), tuple(phases), m)

    @property
    def n(self) -> int:
        return len(self.perm)

    def __mul__(self, other: MonomialElement) -> MonomialElement:
        if (self.m, self.n) != (other.m, other.n):
            raise GroupError("incompatible monomial elements")
        perm = tuple(self.perm[other.perm[i]] for i in range(self.n))
        phase = tuple(other.phase[i] + self.phase[other.perm[i]] for i in range(self.n))
        return MonomialElement(perm, phase, self.m)

    def inverse(self) -> MonomialElement:
        perm = [0] * self.n
        phase = [0] * self.n
        for i, j in enumerate(self.perm):
            perm[j] = i
            phase[j] = -self.phase[i]
        return MonomialElement(tuple(perm), tuple(phase), self.m)

    def key(self) -> tuple:
        return ("monomial", self.m, self.perm, self.phase)

    def phase_product(self) -> int:
        """Exponent k with (product of the nonzero entries) = zeta_m^k."""
        return sum(self.phase) % self.m

    def action(self) -> tuple[int, ...]:
        """Permutation of the n*m points zeta^k e_i, point index i*m + k."""
        m = self.m
        out = [0] * (self.n * m)
        for i in range(self.n):
            for k in range(m):
                out[i * m + k] = self.perm[i] * m + (k + self.phase[i]) % m
        return tuple(out)


@dataclasses.dataclass(frozen=True)
class MatrixElement:
    """Square matrix with entries in Q(zeta_m)."""

    field: cyc.CyclotomicField
    rows: tuple

    @property
    def n(self) -> int:
        return len(self.rows)

    def __mul__(self, other: MatrixElement) -> MatrixElement:
        return MatrixElement(self.field, cyc.mat_mul(self.field, self.rows, other.rows))

    def key(self) -> tuple:
        return ("matrix", self.field.m, self.rows)

    def apply(self, v: tuple) -> tuple:
        return cyc.mat_vec(self.field, self.rows, v)

    def inverse(self) -> MatrixElement:
        # finite order: the inverse is a positive power
        ident = cyc.identity(self.field, self.n)
        power = self
        prev = MatrixElement(self.field, ident)
        for _ in range(10**4):
            if power.rows == ident:
                return prev
            prev = power
            power = power * self
        raise GroupError("matrix of infinite or very large order")

    def trace(self) -> tuple:
        return cyc.trace(self.field, self.rows)


FiniteGroupElement = MonomialElement | MatrixElement


# ---------------------------------------------------------------------------
# permutation helpers


def perm_mul(p: Perm, q: Perm) -> Perm:
    return tuple([p[i] for i in q])


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_identity(n: int) -> Perm:
    return tuple(range(n))


def perm_order(p: Perm) -> int:
    ident = perm_identity(len(p))
    q, k = p, 1
    while q != ident:
        q = perm_mul(q, p)
        k += 1
    return k


# ---------------------------------------------------------------------------
# group specs and groups


@dataclasses.dataclass(frozen=True)
class GroupSpec:
    """A finite group given by generators.

    ``family`` is one of ``symmetric``, ``G(de,e,n)``, ``coxeter`` or
    ``exceptional``; ``params`` records the family parameters.
    """

    family: str
    params: tuple
    generators: tuple
    names: tuple[str, ...]

    def __post_init__(self):
        if len(self.generators) != len(self.names):
            raise GroupError("one name per generator is required")
        if self.family not in ("symmetric", "G(de,e,n)", "coxeter", "exceptional"):
            raise GroupError(f"unknown family {self.family!r}")


class FiniteGroup:
    """A finite group realised as permutations of a faithful point set."""

    def __init__(self, spec: GroupSpec, cap: int = DEFAULT_ELEMENT_CAP):
        self.spec = spec
        self.gen_perms = tuple(_faithful_action(spec.generators, cap))
        self.degree = len(self.gen_perms[0]) if self.gen_perms else 0
        self.identity = perm_identity(self.degree)
        self.elements = enumerate_closure(self.gen_perms, self.identity, cap)
        self.index = {g: i for i, g in enumerate(self.elements)}

    @classmethod
    def from_perms(
        cls, family: str, params: tuple, names: Sequence[str], gen_perms: Sequence[Perm],
        cap: int = DEFAULT_ELEMENT_CAP,
    ) -> FiniteGroup:
        """Rebuild a group from stored generator permutations (e.g. a cache file)."""
        self = cls.__new__(cls)
        self.gen_perms = tuple(tuple(p) for p in gen_perms)
        self.spec = GroupSpec(family, tuple(params), self.gen_perms, tuple(names))
        self.degree = len(self.gen_perms[0]) if self.gen_perms else 0
        self.identity = perm_identity(self.degree)
        self.elements = enumerate_closure(self.gen_perms, self.identity, cap)
        self.index = {g: i for i, g in enumerate(self.elements)}
        return self

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self.index

    def generator(self, name: str) -> Perm:
        return self.gen_perms[self.spec.names.index(name)]

    def mul(self, p: Perm, q: Perm) -> Perm:
        return perm_mul(p, q)

    def inv(self, p: Perm) -> Perm:
        return perm_inv(p)

    def word(self, letters: Iterable[str]) -> Perm:
        out = self.identity
        for name in letters:
            out = perm_mul(out, self.generator(name))
        return out

    def perm_of(self, g: FiniteGroupElement) -> Perm:
        """Permutation image of an arbitrary element written in the same backend."""
        return _faithful_action(self.spec.generators + (g,), DEFAULT_ELEMENT_CAP)[-1]


def _faithful_action(gens: Sequence[FiniteGroupElement], cap: int) -> list[Perm]:
    if not gens:
        raise GroupError("at least one generator is required")
    if all(isinstance(g, MonomialElement) for g in gens):
        return [g.action() for g in gens]
    if not all(isinstance(g, MatrixElement) for g in gens):
        raise GroupError("mixed backends")
    F = gens[0].field
    n = gens[0].n
    mats = [cyc.integral_matrix(F, g.rows) for g in gens]
    # orbit of the standard basis; it spans, so the action is faithful
    points: list[tuple] = []
    where: dict[tuple, int] = {}
    edges: list[list[tuple]] = [[] for _ in gens]
    for i in range(n):
        v = cyc.integral_vector(F, tuple(F.one if j == i else F.zero for j in range(n)))
        if v not in where:
            where[v] = len(points)
            points.append(v)
    head = 0
    while head < len(points):
        v = points[head]
        for k, M in enumerate(mats):
            w = cyc.integral_apply(F, M, v)
            if w not in where:
                if len(points) >= cap:
                    raise GroupError("vector orbit exceeds cap; generators do not generate a finite group")
                where[w] = len(points)
                points.append(w)
            edges[k].append(where[w])
        head += 1
    images = edges
    return [tuple(im) for im in images]


def enumerate_closure(gens: Sequence[Perm], identity: Perm, cap: int = DEFAULT_ELEMENT_CAP) -> list[Perm]:
    """All products of ``gens`` in breadth-first order starting from ``identity``."""
    seen = {identity}
    out = [identity]
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = perm_mul(g, s)
            if h not in seen:
                if len(out) >= cap:
                    raise GroupError(f"group exceeds element cap {cap}")
                seen.add(h)
                out.append(h)
                queue.append(h)
    return out


def build_group(spec: GroupSpec, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    return FiniteGroup(spec, cap)


def group_center(gens: Sequence[Perm]) -> int:
    """Order of the center of the group generated by ``gens`` (brute force)."""
    gens = list(gens)
    ident = perm_identity(len(gens[0]))
    elements = enumerate_closure(gens, ident)
    return sum(
        1 for z in elements if all(perm_mul(z, g) == perm_mul(g, z) for g in gens)
    )


# ---------------------------------------------------------------------------
# standard specs


def symmetric_spec(n: int) -> GroupSpec:
    gens = tuple(MonomialElement.transposition(n, 1, i, i + 1) for i in range(n - 1))
    return GroupSpec("symmetric", (n,), gens, tuple(f"s{i + 1}" for i in range(n - 1)))


def monomial_spec(de: int, e: int, n: int) -> GroupSpec:
    """Generators of G(de, e, n): transpositions, a twisted transposition, a diagonal."""
    if e < 1 or de % e:
        raise GroupError("e must divide de")
    m = de
    gens = [MonomialElement.transposition(n, m, i, i + 1) for i in range(n - 1)]
    names = [f"s{i + 2}" for i in range(n - 1)]
    if n >= 2 and m > 1:
        gens.append(MonomialElement((1, 0) + tuple(range(2, n)), (1, m - 1) + (0,) * (n - 2), m))
        names.append("t1")
    if e < de:
        gens.append(MonomialElement.diagonal(n, m, (e,) + (0,) * (n - 1)))
        names.append("d")
    if n == 1:
        gens = [MonomialElement.diagonal(1, m, (e,))]
        names = ["d"]
    return GroupSpec("G(de,e,n)", (de, e, n), tuple(gens), tuple(names))


# ---------------------------------------------------------------------------
# length function and intervals


@dataclasses.dataclass
class WordMetric:
    """Word lengths and lexicographically least reduced words over ``S``."""

    group: FiniteGroup
    gens: tuple  # tuple[Perm, ...]
    names: tuple
    length: dict
    word: dict

    def __call__(self, p: Perm) -> int:
        return self.length[p]


def word_metric(W: FiniteGroup, S: Sequence[Perm], names: Sequence[str] | None = None) -> WordMetric:
    """Breadth-first search over right multiplication by ``S``.

    Processing vertices level by level in discovery order, with generators in
    declared order, makes the first word found the lexicographically least
    reduced word.
    """
    S = tuple(S)
    length = {W.identity: 0}
    word = {W.identity: ()}
    queue = deque([W.identity])
    while queue:
        g = queue.popleft()
        for k, s in enumerate(S):
            h = perm_mul(g, s)
            if h not in length:
                length[h] = length[g] + 1
                word[h] = word[g] + (k,)
                queue.append(h)
    if len(length) != W.order:
        raise GroupError("S does not generate W")
    names = tuple(names) if names is not None else tuple(f"g{k}" for k in range(len(S)))
    return WordMetric(W, S, names, length, word)


class Interval:
    """The poset [1, c] of a finite group with respect to a word length.

    Members are listed in breadth-first order, so lengths never decrease along
    the list.  Down-sets are stored as bitmasks over member indices.
    """

    def __init__(self, metric: WordMetric, c: Perm, members: Sequence[Perm] | None = None):
        self.metric = metric
        self.group = metric.group
        self.c = c
        ell = metric.length
        if members is None:
            members = _members(metric, c)
        self.members: list[Perm] = list(members)
        self.index = {u: i for i, u in enumerate(self.members)}
        self.length = [ell[u] for u in self.members]
        self.words = [metric.word[u] for u in self.members]
        self.apex = self.index.get(c, -1)
        self.atoms = [i for i, ln in enumerate(self.length) if ln == 1]
        self._build_orders()

    def __len__(self) -> int:
        return len(self.members)

    def _build_orders(self) -> None:
        gens = self.metric.gens
        inv_gens = [perm_inv(s) for s in gens]
        N = len(self.members)
        down = [0] * N
        sdown = [0] * N
        for i, u in enumerate(self.members):
            mask = 1 << i
            smask = 1 << i
            for s, si in zip(gens, inv_gens):
                v = perm_mul(u, si)  # u = v s
                j = self.index.get(v)
                if j is not None and self.length[j] == self.length[i] - 1:
                    mask |= down[j]
                w = perm_mul(si, u)  # u = s w
                j = self.index.get(w)
                if j is not None and self.length[j] == self.length[i] - 1:
                    smask |= sdown[j]
            down[i] = mask
            sdown[i] = smask
        self.down = down
        self.sdown = sdown
        self.up = _transpose(down)
        self.sup = _transpose(sdown)

    def prefix(self, i: int, j: int) -> bool:
        """Member i precedes member j in the prefix order."""
        return bool(self.down[j] >> i & 1)

    def suffix(self, i: int, j: int) -> bool:
        """Member i is a suffix of member j."""
        return bool(self.sdown[j] >> i & 1)

    def word_names(self, i: int) -> list[str]:
        return [self.metric.names[k] for k in self.words[i]]

    def restricted(self, drop: Iterable[int]) -> Interval:
        """Copy with some members removed (used to exhibit non-lattices)."""
        drop = set(drop)
        keep = [u for i, u in enumerate(self.members) if i not in drop]
        return Interval(self.metric, self.c, keep)


def _members(metric: WordMetric, c: Perm) -> list[Perm]:
    ell = metric.length
    lc = ell[c]
    ordered = sorted(ell, key=lambda g: (ell[g], metric.word[g]))
    return [u for u in ordered if ell[u] + ell[perm_mul(perm_inv(u), c)] == lc]


def _transpose(down: list[int]) -> list[int]:
    up = [0] * len(down)
    for j, mask in enumerate(down):
        i = 0
        while mask:
            if mask & 1:
                up[i] |= 1 << j
            mask >>= 1
            i += 1
    return up


def length_and_interval(
    W: FiniteGroup, S: Sequence[Perm], c: Perm, names: Sequence[str] | None = None
) -> Interval:
    return Interval(word_metric(W, S, names), c)


def is_balanced(I: Interval) -> bool:
    """Prefix set of c equals its suffix set in the whole group."""
    metric = I.metric
    ell = metric.length
    lc = ell[I.c]
    suffixes = {u for u in ell if ell[perm_mul(I.c, perm_inv(u))] + ell[u] == lc}
    return suffixes == set(I.members)


def _is_lattice(down: list[int], up: list[int]) -> bool:
    N = len(down)
    for i in range(N):
        for j in range(i + 1, N):
            lower = down[i] & down[j]
            if not lower:
                return False
            m = lower.bit_length() - 1
            if lower & ~down[m]:
                return False
            upper = up[i] & up[j]
            if not upper:
                return False
            top = (upper & -upper).bit_length() - 1
            if upper & ~up[top]:
                return False
    return True


def lattice_check(I: Interval) -> bool:
    """Both divisibility orders on the members are lattices."""
    return _is_lattice(I.down, I.up) and _is_lattice(I.sdown, I.sup)


def check_hypdual(I: Interval, W: FiniteGroup | None = None) -> bool:
    """For each c0 in [1,c]: the subgroup generated by reflections below c0 meets [1,c] in [1,c0]."""
    return not hypdual_failures(I)


def hypdual_failures(I: Interval) -> list[int]:
    W = I.group
    failures = []
    for k in range(len(I)):
        refl = [I.members[a] for a in I.atoms if I.prefix(a, k)]
        W0 = set(enumerate_closure(refl, W.identity)) if refl else {W.identity}
        inside = {i for i, u in enumerate(I.members) if u in W0}
        below = {i for i in range(len(I)) if I.prefix(i, k)}
        if inside != below:
            failures.append(k)
    return failures
