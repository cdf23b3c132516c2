"""Exact arithmetic in cyclotomic fields Q(zeta_m) and small matrices over them.

Field elements are tuples of ``Fraction`` coefficients of length phi(m), read as
polynomials in ``x = zeta_m`` reduced modulo the m-th cyclotomic polynomial.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from functools import lru_cache
from typing import Sequence

Scalar = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[tuple[Scalar, ...], ...]


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # integer polynomials, lowest degree first, den monic
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    return q, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_poly(d)))
            assert not any(rem)
    while poly and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


class CyclotomicField:
    """The field Q(zeta_m) with exact rational coefficients."""

    def __init__(self, m: int):
        self.m = m
        self.modulus = cyclotomic_poly(m)
        self.degree = len(self.modulus) - 1
        self.zero = tuple(Fraction(0) for _ in range(self.degree))
        self.one = self.from_coeffs([1])

    def __repr__(self) -> str:
        return f"CyclotomicField({self.m})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CyclotomicField) and other.m == self.m

    def __hash__(self) -> int:
        return hash(("cyclotomic", self.m))

    def reduce(self, coeffs: Sequence) -> Scalar:
        c = [Fraction(v) for v in coeffs]
        mod = self.modulus
        n = self.degree
        for i in range(len(c) - 1, n - 1, -1):
            lead = c[i]
            if lead:
                for j in range(n + 1):
                    c[i - n + j] -= lead * mod[j]
        c = c[:n] + [Fraction(0)] * (n - len(c))
        return tuple(c)

    def from_coeffs(self, coeffs: Sequence) -> Scalar:
        return self.reduce(coeffs)

    def zeta(self, k: int = 1) -> Scalar:
        k %= self.m
        return self.reduce([0] * k + [1])

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a: Scalar) -> Scalar:
        return tuple(-x for x in a)

    def scale(self, a: Scalar, r) -> Scalar:
        r = Fraction(r)
        return tuple(x * r for x in a)

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        prod = [Fraction(0)] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self.reduce(prod)

    def conj(self, a: Scalar) -> Scalar:
        """Complex conjugation zeta -> zeta^-1."""
        out = [Fraction(0)] * self.m
        for i, x in enumerate(a):
            out[(-i) % self.m] += x
        return self.reduce(out)

    def is_zero(self, a: Scalar) -> bool:
        return not any(a)

    # --- text form -------------------------------------------------------

    def format(self, a: Scalar) -> str:
        terms = []
        for i, c in enumerate(a):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                t = mono
            elif mono and c == -1:
                t = "-" + mono
            elif mono:
                t = f"{c}*{mono}"
            else:
                t = str(c)
            terms.append(t)
        if not terms:
            return "0"
        return "+".join(terms).replace("+-", "-")

    _TERM = re.compile(r"([+-]?)([^+-]+)")

    def parse(self, text: str) -> Scalar:
        """Parse a polynomial in ``x`` such as ``-1/7*x^3+2*x+1``."""
        text = text.replace(" ", "")
        if not text:
            raise ValueError("empty field element")
        coeffs: dict[int, Fraction] = {}
        for sign, body in self._TERM.findall(text):
            if "x" in body:
                head, _, tail = body.partition("x")
                head = head.rstrip("*")
                coef = Fraction(head) if head else Fraction(1)
                power = int(tail[1:]) if tail.startswith("^") else 1
                if tail and not tail.startswith("^"):
                    raise ValueError(f"bad term {body!r}")
            else:
                coef, power = Fraction(body), 0
            if sign == "-":
                coef = -coef
            coeffs[power] = coeffs.get(power, Fraction(0)) + coef
        top = max(coeffs) if coeffs else 0
        return self.reduce([coeffs.get(i, 0) for i in range(top + 1)])


def mat_mul(F: CyclotomicField, A: Matrix, B: Matrix) -> Matrix:
    n, k, p = len(A), len(B), len(B[0])
    rows = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = F.zero
            for t in range(k):
                if F.is_zero(A[i][t]) or F.is_zero(B[t][j]):
                    continue
                acc = F.add(acc, F.mul(A[i][t], B[t][j]))
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def mat_vec(F: CyclotomicField, A: Matrix, v: tuple) -> tuple:
    out = []
    for row in A:
        acc = F.zero
        for a, x in zip(row, v):
            if not F.is_zero(a) and not F.is_zero(x):
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return tuple(out)


def identity(F: CyclotomicField, n: int) -> Matrix:
    return tuple(tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n))


def conj_transpose(F: CyclotomicField, A: Matrix) -> Matrix:
    n = len(A)
    return tuple(tuple(F.conj(A[j][i]) for j in range(n)) for i in range(n))


def trace(F: CyclotomicField, A: Matrix) -> Scalar:
    acc = F.zero
    for i in range(len(A)):
        acc = F.add(acc, A[i][i])
    return acc


# --- integral fast path --------------------------------------------------
# A matrix (or vector) over Q(zeta_m) is stored as integer coefficient tuples
# with one common positive denominator, kept in lowest terms.


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def integral_matrix(F: CyclotomicField, A: Matrix) -> tuple[tuple, int]:
    den = 1
    for row in A:
        for x in row:
            for c in x:
                den = _lcm(den, c.denominator)
    N = tuple(tuple(tuple(int(c * den) for c in x) for x in row) for row in A)
    return N, den


def integral_vector(F: CyclotomicField, v: tuple) -> tuple[tuple, int]:
    (N,), den = integral_matrix(F, (v,))
    return _normalize(N, den)


def _normalize(N: tuple, den: int) -> tuple[tuple, int]:
    g = den
    for x in N:
        for c in x:
            if c:
                g = gcd(g, c)
                if g == 1:
                    return N, den
    return tuple(tuple(c // g for c in x) for x in N), den // g


def _polymul_int(mod: tuple, a: tuple, b: tuple) -> list:
    n = len(mod) - 1
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    for i in range(len(prod) - 1, n - 1, -1):
        lead = prod[i]
        if lead:
            for j in range(n + 1):
                prod[i - n + j] -= lead * mod[j]
    return prod[:n]


def integral_apply(F: CyclotomicField, M: tuple[tuple, int], v: tuple[tuple, int]) -> tuple[tuple, int]:
    """Exact product of an integral matrix and an integral vector, in lowest terms."""
    N, d = M
    u, e = v
    mod = F.modulus
    n = F.degree
    out = []
    for row in N:
        acc = [0] * n
        for a, x in zip(row, u):
            if any(a) and any(x):
                for k, c in enumerate(_polymul_int(mod, a, x)):
                    acc[k] += c
        out.append(tuple(acc))
    return _normalize(tuple(out), d * e)
