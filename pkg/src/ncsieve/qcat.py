"""Fuss-Catalan numbers and exact values of their q-analogue at roots of unity.

Cat^m(W; q) = prod_i [m h + d_i]_q / [d_i]_q  with  [a]_q = (1 - q^a)/(1 - q).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .cyclotomic import CycloNumber, root_of_unity, to_rational
from .groups import ReflectionGroup
from .ncm import ActionKind

__all__ = [
    "QCatFactors",
    "RootSpec",
    "TheoryViolation",
    "eval_at",
    "eval_phi",
    "eval_psi",
    "fuss_catalan",
    "qcat_factors",
    "qcat_limit",
    "subgroup_value",
]


class TheoryViolation(ArithmeticError):
    """A structural fact the evaluation relies on failed for this input."""


@dataclass(frozen=True)
class QCatFactors:
    numerator_exponents: tuple[int, ...]
    denominator_exponents: tuple[int, ...]


@dataclass(frozen=True)
class RootSpec:
    kind: ActionKind
    m: int
    p: int

    def modulus(self, h: int) -> int:
        return self.m * h if self.kind is ActionKind.PHI else (self.m + 1) * h

    def root_order(self, h: int) -> int:
        mod = self.modulus(h)
        return mod // gcd(self.p % mod, mod)


def qcat_factors(g: ReflectionGroup, m: int) -> QCatFactors:
    return QCatFactors(tuple(m * g.h + d for d in g.degrees), tuple(g.degrees))


def fuss_catalan(g: ReflectionGroup, m: int) -> int:
    value = prod((Fraction(m * g.h + d, d) for d in g.degrees), start=Fraction(1))
    if value.denominator != 1:
        raise TheoryViolation(f"Fuss-Catalan number of {g.name} at m={m} is not an integer")
    return int(value)


def _one_minus_power(zeta: CycloNumber, k: int) -> CycloNumber:
    return 1 - zeta ** k


def _check_range(p: int, modulus: int):
    if not 0 <= p < modulus:
        raise ValueError(f"p must lie in [0, {modulus}), got {p}")


def eval_phi(g: ReflectionGroup, m: int, p: int) -> Fraction:
    """Cat^m(W; q) at q = exp(2 pi i p / (m h)), pairing factors by index."""
    mh = m * g.h
    _check_range(p, mh)
    order = mh // gcd(p, mh)
    zeta = root_of_unity(order, 1)
    value = CycloNumber.rational(1, order)
    for d in g.degrees:
        num = mh + d
        if d % order == 0:
            value = value * Fraction(num, d)
        else:
            value = value * _one_minus_power(zeta, num) / _one_minus_power(zeta, d)
    return to_rational(value)


def eval_psi(g: ReflectionGroup, m: int, p: int) -> Fraction:
    """Cat^m(W; q) at q = exp(2 pi i p / ((m + 1) h)).

    Numerator factors vanish for i in S1 = {i : zeta^(d_i - h) = 1} and
    denominator factors for i in S2 = {i : zeta^d_i = 1}.  The value is 0
    when |S1| > |S2|; when the sizes agree the vanishing factors contribute
    their limits and the remaining ones must cancel as multisets.
    """
    mod = (m + 1) * g.h
    _check_range(p, mod)
    order = mod // gcd(p, mod)
    h = g.h
    s1 = [i for i, d in enumerate(g.degrees) if (d - h) % order == 0]
    s2 = [i for i, d in enumerate(g.degrees) if d % order == 0]
    if len(s1) > len(s2):
        return Fraction(0)
    if len(s1) < len(s2):
        raise TheoryViolation(
            f"{g.name}, m={m}, p={p}: more vanishing denominator factors than numerator factors"
        )
    rest_num = Counter((g.degrees[i] - h) % order for i in range(g.rank) if i not in s1)
    rest_den = Counter(g.degrees[i] % order for i in range(g.rank) if i not in s2)
    if rest_num != rest_den:
        raise TheoryViolation(f"{g.name}, m={m}, p={p}: non-vanishing factors do not cancel pairwise")
    zeta = root_of_unity(order, 1)
    value = CycloNumber.rational(1, order)
    for i in s1:
        value = value * (m * h + g.degrees[i])
    for i in s2:
        value = value / g.degrees[i]
    for i in range(g.rank):
        if i not in s1:
            value = value * _one_minus_power(zeta, m * h + g.degrees[i])
        if i not in s2:
            value = value / _one_minus_power(zeta, g.degrees[i])
    return to_rational(value)


def qcat_limit(numerators, denominators, order: int) -> Fraction:
    """lim_{q -> zeta} prod [a]_q / prod [b]_q for a primitive order-th root zeta.

    Vanishing factors are matched by count: more on top gives 0, more at
    the bottom is a pole and raises.  Equal counts contribute the ratio of
    their exponents times the exact value of the remaining factors.
    """
    num = list(numerators)
    den = list(denominators)
    if len(num) != len(den):
        raise ValueError("numerator and denominator need the same number of factors")
    zn = [a for a in num if a % order == 0]
    zd = [b for b in den if b % order == 0]
    if len(zn) > len(zd):
        return Fraction(0)
    if len(zn) < len(zd):
        raise TheoryViolation(f"pole at a primitive {order}-th root of unity")
    value = CycloNumber.rational(prod(zn, start=1), order) / prod(zd, start=1)
    zeta = root_of_unity(order, 1)
    for a in num:
        if a % order:
            value = value * _one_minus_power(zeta, a)
    for b in den:
        if b % order:
            value = value / _one_minus_power(zeta, b)
    return to_rational(value)


def subgroup_value(degrees, h: int, m: int, p: int, kind) -> Fraction:
    """Cat^m(W'; q) at the root of ``eval_at`` for a group W' given by its degrees.

    W' shares the Coxeter number h of the ambient group (it is the
    centralizer of a power of c, so h stays among its degrees).
    """
    kind = ActionKind.parse(kind)
    mod = m * h if kind is ActionKind.PHI else (m + 1) * h
    _check_range(p, mod)
    order = mod // gcd(p, mod)
    return qcat_limit([m * h + d for d in degrees], list(degrees), order)


def eval_at(g: ReflectionGroup, m: int, p: int, kind) -> Fraction:
    kind = ActionKind.parse(kind)
    return eval_phi(g, m, p) if kind is ActionKind.PHI else eval_psi(g, m, p)
