"""Garside structures built from balanced lattice intervals, and their elements.

A :class:`GarsideStructure` tabulates the simples of an interval monoid (the
members of [1, c]) together with divisibility bitmasks, complements and the
conjugation tau by Delta.  Elements of the Garside group are
:class:`Element` objects ``Delta^p x_1 ... x_r`` in left normal form, with the
``x_i`` stored as simple indices.

Conventions: ``tau(s) = Delta^-1 s Delta``; ``rcomp(s) = s^-1 Delta``;
``lcomp(s) = Delta s^-1``; ``a \\ b = a^-1 (a v b)``.
"""

from __future__ import annotations

import dataclasses
import re
from typing import Iterable, Sequence

from .groups import Interval, is_balanced, lattice_check, perm_inv, perm_mul


class StructureError(ValueError):
    """The interval does not define a Garside structure."""


class GarsideStructure:
    """Immutable tables of an interval Garside structure."""

    def __init__(self, interval: Interval, name: str = "", check: bool = True):
        if check:
            if not is_balanced(interval):
                raise StructureError("interval is not balanced")
            if not lattice_check(interval):
                raise StructureError("interval is not a lattice")
        self.name = name
        self.interval = interval
        self.group = interval.group
        self.perms: list = list(interval.members)
        self.index = dict(interval.index)
        self.length = list(interval.length)
        self.down = interval.down
        self.up = interval.up
        self.sdown = interval.sdown
        self.sup = interval.sup
        self.N = len(self.perms)
        self.ID = 0
        self.DELTA = interval.apex
        if self.perms[0] != self.group.identity or self.DELTA < 0:
            raise StructureError("malformed interval")

        metric = interval.metric
        self.atoms: list[int] = list(interval.atoms)
        gen_to_atom = {}
        for pos, a in enumerate(self.atoms):
            gen_to_atom[metric.word[self.perms[a]][0]] = pos
        self.atom_names: list[str] = [metric.names[metric.word[self.perms[a]][0]] for a in self.atoms]
        self.atom_of_name = {n: i for i, n in enumerate(self.atom_names)}
        # reduced words of simples as atom positions
        self.words: list[tuple[int, ...]] = [
            tuple(gen_to_atom[k] for k in metric.word[u]) for u in self.perms
        ]

        c = self.perms[self.DELTA]
        cinv = perm_inv(c)
        ix = self.index
        self.rcomp = [ix[perm_mul(perm_inv(u), c)] for u in self.perms]
        self.lcomp = [ix[perm_mul(c, perm_inv(u))] for u in self.perms]
        self.tau = [ix[perm_mul(perm_mul(cinv, u), c)] for u in self.perms]
        self.tau_inv = [0] * self.N
        for i, j in enumerate(self.tau):
            self.tau_inv[j] = i
        E = 1
        t = list(self.tau)
        while t != list(range(self.N)):
            t = [self.tau[i] for i in t]
            E += 1
        self.tau_order = E
        self._tau_pow = {0: list(range(self.N)), 1: self.tau}
        self._mul_cache: dict = {}
        self._ldiv_cache: dict = {}
        self._rdiv_cache: dict = {}
        # set once LCM-Garside and support-preservation are established
        self.hypotheses_verified = False
        self.cache: dict = {}

    def __repr__(self) -> str:
        return f"GarsideStructure({self.name!r}, simples={self.N}, atoms={len(self.atoms)})"

    # --- simple-level operations -----------------------------------------

    @property
    def delta_length(self) -> int:
        return self.length[self.DELTA]

    def tau_power(self, k: int) -> list[int]:
        k %= self.tau_order
        if k not in self._tau_pow:
            prev = self.tau_power(k - 1)
            self._tau_pow[k] = [self.tau[i] for i in prev]
        return self._tau_pow[k]

    def is_prefix(self, a: int, b: int) -> bool:
        return bool(self.down[b] >> a & 1)

    def is_suffix(self, a: int, b: int) -> bool:
        return bool(self.sdown[b] >> a & 1)

    def meet(self, a: int, b: int) -> int:
        return (self.down[a] & self.down[b]).bit_length() - 1

    def join(self, a: int, b: int) -> int:
        m = self.up[a] & self.up[b]
        return (m & -m).bit_length() - 1

    def rmeet(self, a: int, b: int) -> int:
        """Greatest common suffix."""
        return (self.sdown[a] & self.sdown[b]).bit_length() - 1

    def rjoin(self, a: int, b: int) -> int:
        m = self.sup[a] & self.sup[b]
        return (m & -m).bit_length() - 1

    def product(self, a: int, b: int) -> int | None:
        """Index of the simple ab, or None when ab is not simple."""
        key = (a, b)
        hit = self._mul_cache.get(key, -2)
        if hit != -2:
            return hit
        j = self.index.get(perm_mul(self.perms[a], self.perms[b]))
        if j is not None and self.length[j] != self.length[a] + self.length[b]:
            j = None
        self._mul_cache[key] = j
        return j

    def ldiv(self, a: int, b: int) -> int:
        """a^-1 b for a prefix a of b."""
        key = a * self.N + b
        hit = self._ldiv_cache.get(key)
        if hit is None:
            hit = self._ldiv_cache[key] = self.index[perm_mul(perm_inv(self.perms[a]), self.perms[b])]
        return hit

    def rdiv(self, b: int, a: int) -> int:
        """b a^-1 for a suffix a of b."""
        key = a * self.N + b
        hit = self._rdiv_cache.get(key)
        if hit is None:
            hit = self._rdiv_cache[key] = self.index[perm_mul(self.perms[b], perm_inv(self.perms[a]))]
        return hit

    def complement(self, a: int, b: int) -> int:
        """a \\ b for simples."""
        return self.ldiv(a, self.join(a, b))

    def head(self, a: int, b: int) -> int:
        """Maximal simple prefix of ab."""
        t = self.meet(self.rcomp[a], b)
        return self.product(a, t)

    def tail(self, a: int, b: int) -> int:
        """Maximal simple suffix of ab."""
        t = self.rmeet(a, self.lcomp[b])
        return self.product(t, b)

    def simple_word(self, s: int) -> list[str]:
        return [self.atom_names[k] for k in self.words[s]]

    def atom(self, name_or_pos) -> int:
        """Simple index of an atom given by name or position."""
        if isinstance(name_or_pos, str):
            return self.atoms[self.atom_of_name[name_or_pos]]
        return self.atoms[name_or_pos]

    def simple_from_word(self, names: Iterable[str]) -> int:
        perm = self.group.identity
        total = 0
        for n in names:
            perm = perm_mul(perm, self.perms[self.atom(n)])
            total += 1
        j = self.index.get(perm)
        if j is None or self.length[j] != total:
            raise ValueError("word does not represent a simple element")
        return j

    # --- element constructors ---------------------------------------------

    def identity(self) -> Element:
        return Element(self, 0, ())

    def delta(self, k: int = 1) -> Element:
        return Element(self, k, ())

    def simple(self, s: int) -> Element:
        if s == self.ID:
            return self.identity()
        if s == self.DELTA:
            return self.delta()
        return Element(self, 0, (s,))

    def atom_element(self, name) -> Element:
        return self.simple(self.atom(name))

    def from_simples(self, seq: Sequence[int], p: int = 0) -> Element:
        """Normal form of Delta^p s_1 ... s_k for arbitrary simples s_i."""
        q, factors = self._push(p, [], seq)
        return Element(self, q, tuple(factors))

    def positive(self, atoms: Sequence) -> Element:
        """Positive element from a word of atom names or positions."""
        return self.from_simples([self.atom(a) for a in atoms])

    def word(self, text_or_letters) -> Element:
        """Element of a signed word, e.g. ``"s1 s2^-1"`` or ``[("s1", 1), ("s2", -1)]``.

        The letter ``D`` stands for Δ unless some atom carries that name.
        """
        letters = parse_word(text_or_letters) if isinstance(text_or_letters, str) else list(text_or_letters)
        out = self.identity()
        run: list[int] = []
        for name, e in letters:
            if name == "D" and name not in self.atom_of_name:
                if run:
                    out = out * self.from_simples(run)
                    run = []
                out = out * self.delta(e)
                continue
            a = self.atom(name)
            if e > 0:
                run.extend([a] * e)
                continue
            if run:
                out = out * self.from_simples(run)
                run = []
            inv = Element(self, -1, (self.tau_inv[self.rcomp[a]],)).normalized()
            for _ in range(-e):
                out = out * inv
        if run:
            out = out * self.from_simples(run)
        return out

    # --- normal form machinery ------------------------------------------

    def _push(self, p: int, factors: list[int], seq: Iterable[int]) -> tuple[int, list[int]]:
        """Right-multiply Delta^p * factors (left-weighted) by simples in ``seq``."""
        res = list(factors)
        ID, DELTA = self.ID, self.DELTA
        rcomp, meet, product, ldiv = self.rcomp, self.meet, self.product, self.ldiv
        for s in seq:
            if s == ID:
                continue
            if s == DELTA:
                p += 1
                t = self.tau
                res = [t[x] for x in res]
                continue
            res.append(s)
            j = len(res) - 1
            while j > 0:
                a, b = res[j - 1], res[j]
                t = meet(rcomp[a], b)
                if t == ID:
                    break
                res[j - 1] = product(a, t)
                res[j] = ldiv(t, b)
                j -= 1
            while res and res[-1] == ID:
                res.pop()
        k = 0
        while k < len(res) and res[k] == DELTA:
            k += 1
        if k:
            p += k
            res = res[k:]
        # the domino rule guarantees left-weightedness; identities can only trail
        res = [x for x in res if x != ID]
        return p, res

    def is_left_weighted(self, factors: Sequence[int]) -> bool:
        for a, b in zip(factors, factors[1:]):
            if self.meet(self.rcomp[a], b) != self.ID:
                return False
        return all(x not in (self.ID, self.DELTA) for x in factors)

    def right_normal_factors(self, p: int, factors: Sequence[int]) -> list[int]:
        """Right normal form (as simples, Delta's included) of a positive element."""
        if p < 0:
            raise ValueError("right normal form is only computed for positive elements")
        seq = [self.DELTA] * p + list(factors)
        changed = True
        while changed:
            changed = False
            for i in range(len(seq) - 1):
                a, b = seq[i], seq[i + 1]
                t = self.rmeet(a, self.lcomp[b])
                if t != self.ID:
                    seq[i] = self.rdiv(a, t)
                    seq[i + 1] = self.product(t, b)
                    changed = True
        return [x for x in seq if x != self.ID]


def build_structure(interval: Interval, name: str = "") -> GarsideStructure:
    return GarsideStructure(interval, name)


# ---------------------------------------------------------------------------


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?$")


def parse_word(text: str) -> list[tuple[str, int]]:
    """Whitespace-separated atom names with optional ``^k`` exponents."""
    out = []
    for tok in text.replace(".", " ").split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"malformed letter {tok!r}")
        e = int(m.group(2)) if m.group(2) is not None else 1
        if e:
            out.append((m.group(1), e))
    return out


@dataclasses.dataclass(frozen=True, eq=False)
class Element:
    """Delta^p x_1 ... x_r in left normal form (x_i proper simples)."""

    structure: GarsideStructure
    p: int
    factors: tuple

    def normalized(self) -> Element:
        q, f = self.structure._push(self.p, [], self.factors)
        return Element(self.structure, q, tuple(f))

    # identity and hashing use the canonical form
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.structure is other.structure
            and self.p == other.p
            and self.factors == other.factors
        )

    def __hash__(self) -> int:
        return hash((self.p, self.factors))

    @property
    def inf(self) -> int:
        return self.p

    @property
    def sup(self) -> int:
        return self.p + len(self.factors)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def is_identity(self) -> bool:
        return self.p == 0 and not self.factors

    def is_positive(self) -> bool:
        return self.p >= 0

    def length(self) -> int:
        """Exponent sum with respect to the homogeneous length of atoms."""
        S = self.structure
        return self.p * S.delta_length + sum(S.length[x] for x in self.factors)

    def simples(self) -> list[int]:
        """Delta's followed by the factors (for positive elements)."""
        if self.p < 0:
            raise ValueError("not a positive element")
        return [self.structure.DELTA] * self.p + list(self.factors)

    def head(self) -> int:
        S = self.structure
        if self.p > 0:
            return S.DELTA
        return self.factors[0] if self.factors else S.ID

    def __mul__(self, other: Element) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        S = self.structure
        if other.structure is not S:
            raise ValueError("elements of different structures")
        t = S.tau_power(other.p)
        left = [t[x] for x in self.factors]
        q, f = S._push(self.p + other.p, left, other.factors)
        return Element(S, q, tuple(f))

    def inverse(self) -> Element:
        S = self.structure
        q = 0
        L: list[int] = []
        tinv = S.tau_inv
        for x in reversed(self.factors):
            L.append(S.rcomp[x])
            L = [tinv[y] for y in L]
            q -= 1
        t = S.tau_power(-self.p)
        L = [t[y] for y in L]
        q -= self.p
        q2, f = S._push(q, [], L)
        return Element(S, q2, tuple(f))

    __invert__ = inverse

    def __pow__(self, k: int) -> Element:
        base = self if k >= 0 else self.inverse()
        out = self.structure.identity()
        for _ in range(abs(k)):
            out = out * base
        return out

    def conj(self, u: Element) -> Element:
        """x^u = u^-1 x u."""
        return u.inverse() * self * u

    def tau(self, k: int = 1) -> Element:
        t = self.structure.tau_power(k)
        return Element(self.structure, self.p, tuple(t[x] for x in self.factors))

    def image(self):
        """Image in the finite group."""
        S = self.structure
        out = S.group.identity
        for x in self.factors:
            out = perm_mul(out, S.perms[x])
        d = S.perms[S.DELTA]
        dp = S.group.identity
        base = d if self.p >= 0 else perm_inv(d)
        for _ in range(abs(self.p)):
            dp = perm_mul(dp, base)
        return perm_mul(dp, out)

    def atom_word(self) -> list[tuple[str, int]]:
        """A signed atom word: Delta^p written with its stored word."""
        S = self.structure
        dw = S.simple_word(S.DELTA)
        letters: list[tuple[str, int]] = []
        if self.p >= 0:
            letters += [(a, 1) for _ in range(self.p) for a in dw]
        else:
            letters += [(a, -1) for _ in range(-self.p) for a in reversed(dw)]
        for x in self.factors:
            letters += [(a, 1) for a in S.simple_word(x)]
        return letters

    def positive_atoms(self) -> list[int]:
        """Atom positions of a positive word representing this positive element."""
        S = self.structure
        return [k for s in self.simples() for k in S.words[s]]

    def __str__(self) -> str:
        S = self.structure
        parts = [f"D^{self.p}"] + [" ".join(S.simple_word(x)) for x in self.factors]
        return " . ".join(parts)

    def __repr__(self) -> str:
        return f"<{self}>"


# ---------------------------------------------------------------------------
# lattice operations on positive elements


def left_divide(s: int, x: Element) -> Element:
    """s^-1 x for a simple s."""
    S = x.structure
    return S.simple(s).inverse() * x


def meet_pos(a: Element, b: Element) -> Element:
    """Greatest common prefix of two positive elements."""
    S = a.structure
    acc: list[int] = []
    while True:
        s = S.meet(a.head(), b.head())
        if s == S.ID:
            break
        acc.append(s)
        a = left_divide(s, a)
        b = left_divide(s, b)
    return S.from_simples(acc)


def _fill(S: GarsideStructure, s: int, seq: Sequence[int]) -> tuple[int, list[int]]:
    """LCM diagram of a simple s against t_1...t_l.

    Returns ``(T \\ s, [b_1, ..., b_l])`` with ``s v T = T (T \\ s) = s b_1 ... b_l``.
    """
    cur = s
    bottom = []
    for t in seq:
        j = S.join(cur, t)
        bottom.append(S.ldiv(cur, j))
        cur = S.ldiv(t, j)
    return cur, bottom


def complement(a: Element, b: Element) -> Element:
    """a \\ b = a^-1 (a v b), by filling the LCM diagram square by square."""
    S = a.structure
    cur = b.simples()
    for A in a.simples():
        _, cur = _fill(S, A, cur)
    return S.from_simples(cur)


def complement_into_simple(x: Element, s: int) -> int:
    """x \\ s for a positive x and a simple s (the result is simple)."""
    S = x.structure
    cur, _ = _fill(S, s, x.simples())
    return cur


def join_pos(a: Element, b: Element) -> Element:
    return a * complement(a, b)


def is_prefix(a: Element, b: Element) -> bool:
    """a is a prefix of b (both in the group: a^-1 b positive)."""
    return (a.inverse() * b).is_positive()


def is_suffix(a: Element, b: Element) -> bool:
    return (b * a.inverse()).is_positive()


def tail_simple(x: Element) -> int:
    S = x.structure
    rf = S.right_normal_factors(x.p, x.factors)
    return rf[-1] if rf else S.ID


def rmeet_pos(a: Element, b: Element) -> Element:
    """Greatest common suffix of two positive elements."""
    S = a.structure
    acc: list[int] = []
    while True:
        s = S.rmeet(tail_simple(a), tail_simple(b))
        if s == S.ID:
            break
        acc.append(s)
        sinv = S.simple(s).inverse()
        a = a * sinv
        b = b * sinv
    return S.from_simples(list(reversed(acc)))


# ---------------------------------------------------------------------------
# fractions


@dataclasses.dataclass(frozen=True)
class FractionPair:
    """x = den^-1 num (left) or x = num den^-1 (right), reduced."""

    den: Element
    num: Element


def left_fraction(x: Element) -> FractionPair:
    S = x.structure
    if x.p >= 0:
        return FractionPair(S.identity(), x)
    k = -x.p
    c = S.delta(k)
    d = Element(S, 0, x.factors)
    alpha = S.from_simples(list(x.factors[:k]))  # Delta^k meet d
    a = alpha.inverse() * c
    b = alpha.inverse() * d
    return FractionPair(a, b)


def right_fraction(x: Element) -> FractionPair:
    S = x.structure
    if x.p >= 0:
        return FractionPair(S.identity(), x)
    k = -x.p
    w = Element(S, 0, x.factors).tau(k)
    y = S.delta(k)
    gamma = rmeet_pos(w, y)
    ginv = gamma.inverse()
    return FractionPair(y * ginv, w * ginv)


# ---------------------------------------------------------------------------


class RescaledStructure:
    """The structure (G, G+, Delta^N), with simples the divisors of Delta^N."""

    def __init__(self, base: GarsideStructure, N: int):
        if N < 1:
            raise ValueError("N must be positive")
        self.base = base
        self.N = N

    def delta(self) -> Element:
        return self.base.delta(self.N)

    def is_simple(self, x: Element) -> bool:
        return x.p >= 0 and x.sup <= self.N

    def normal_form(self, x: Element) -> tuple[int, list[Element]]:
        """(p, [y_1, ...]) with x = (Delta^N)^p y_1 ... in the rescaled normal form."""
        S = self.base
        p, rest = divmod(x.p, self.N)
        seq = [S.DELTA] * rest + list(x.factors)
        blocks = [S.from_simples(seq[i : i + self.N]) for i in range(0, len(seq), self.N)]
        return p, blocks


def rescale(structure: GarsideStructure, N: int) -> GarsideStructure | RescaledStructure:
    return structure if N == 1 else RescaledStructure(structure, N)
