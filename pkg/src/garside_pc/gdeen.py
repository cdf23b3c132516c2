"""Parabolic subgroups of B(de,e,n), d > 1, seen inside the braid group of G(de,1,n).

The braid group B̂ of G(de,1,n) carries the Artin structure of type B_n with
atoms ``t, s1, ..., s_{n-1}``.  Its image in G(de,1,n) sends t to
diag(zeta_de, 1, ..., 1) and s_i to the transposition (i, i+1).  The map
φ: B̂ -> Z/e reads the product of the nonzero entries of the image modulo
the subgroup mu_d.
"""

from __future__ import annotations

import dataclasses

from .garside import Element
from .groups import MonomialElement, enumerate_closure, perm_mul
from .parabolic import ParabolicHandle


def _image(x: Element, de: int, n: int) -> MonomialElement:
    out = MonomialElement.identity(n, de)
    gens = {"t": MonomialElement.diagonal(n, de, (1,) + (0,) * (n - 1))}
    for i in range(1, n):
        gens[f"s{i}"] = MonomialElement.transposition(n, de, i - 1, i)
    for name, e in x.atom_word():
        g = gens[name]
        if e < 0:
            g = g.inverse()
        for _ in range(abs(e)):
            out = out * g
    return out


def phi(x: Element, de: int, e: int) -> int:
    """Class of x in Z/e."""
    n = len(x.structure.atoms)
    return _image(x, de, n).phase_product() % e


@dataclasses.dataclass(frozen=True)
class WrappedHandle:
    """B_0 = B̂_0 ∩ ker φ for the parabolic B̂_0 = ``base``."""

    base: ParabolicHandle
    de: int
    e: int
    m0: int
    z: Element


def _center_order(elements: list) -> int:
    return sum(1 for z in elements if all(perm_mul(z, g) == perm_mul(g, z) for g in elements))


def gdeen_wrap(P: ParabolicHandle, de: int, e: int, n: int) -> WrappedHandle:
    S = P.structure
    if sorted(S.atom_names) != sorted(["t"] + [f"s{i}" for i in range(1, n)]):
        raise ValueError("the handle must live in the type B_n Artin structure")
    if e <= 1 or de % e or de // e <= 1:
        raise ValueError("need e > 1 and d = de/e > 1")
    gens = [_image(h, de, n) for h in P.generators()]
    acts = [g.action() for g in gens]
    ident = MonomialElement.identity(n, de).action()
    if not acts:
        return WrappedHandle(P, de, e, 1, S.identity())
    hat = enumerate_closure(acts, ident)
    # recover phases from the action on points i*de + k
    kernel = [p for p in hat if _phase_of_action(p, n, de) % e == 0]
    num = _center_order(hat)
    den = _center_order(kernel)
    if num % den:
        raise ValueError(f"|Z(Ŵ0)|/|Z(W0)| = {num}/{den} is not an integer")
    m0 = num // den
    return WrappedHandle(P, de, e, m0, P.z ** m0)


def _phase_of_action(p: tuple, n: int, m: int) -> int:
    total = 0
    for i in range(n):
        total += p[i * m] % m
    return total % m
