from __future__ import annotations

import random

from hypothesis import settings

from garside_pc import catalog
from garside_pc.garside import Element, GarsideStructure

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def cat(name: str) -> GarsideStructure:
    return catalog.structure(name)


def random_element(S: GarsideStructure, rng: random.Random, length: int, signed: bool = True) -> Element:
    """Product of ``length`` random atoms, each inverted with probability 1/2 when signed."""
    x = S.identity()
    for _ in range(length):
        a = S.atom_element(rng.randrange(len(S.atoms)))
        if signed and rng.random() < 0.5:
            a = a.inverse()
        x = x * a
    return x


def positive_ball(S: GarsideStructure, radius: int) -> list[list[Element]]:
    """Distinct positive elements grouped by length, built from atom words only."""
    letters = [S.atom_element(k) for k in range(len(S.atoms))]
    levels = [[S.identity()]]
    for _ in range(radius):
        nxt = {}
        for w in levels[-1]:
            for l in letters:
                nxt.setdefault(w * l, None)
        levels.append(list(nxt))
    return levels


def rho_oracle(S: GarsideStructure, a: int, x: Element, max_len: int) -> list[Element]:
    """Shortest positive u with atom ``a`` as a prefix and x^u positive.

    Breadth-first over atom words a w with |a w| <= max_len; returns every
    solution of minimal length (the least element is unique when it exists).
    """
    letters = [S.atom_element(k) for k in range(len(S.atoms))]
    level = {S.atom_element(a): None}
    for _ in range(max_len):
        hits = [u for u in level if x.conj(u).is_positive()]
        if hits:
            return hits
        nxt = {}
        for u in level:
            for l in letters:
                nxt.setdefault(u * l, None)
        level = nxt
    return []
