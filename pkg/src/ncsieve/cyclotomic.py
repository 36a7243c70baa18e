"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element of Q(zeta_N) is stored as its residue modulo the N-th cyclotomic
polynomial, i.e. as a vector of phi(N) rational coefficients with respect to
the power basis 1, z, ..., z^(phi(N)-1).  Elements living in different fields
are compared and combined inside the field of order lcm(N, N').
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

from sympy import cyclotomic_poly, mobius, totient
from sympy.abc import x as _x

__all__ = [
    "CycloNumber",
    "NonRationalError",
    "cyc_arith",
    "root_of_unity",
    "to_rational",
    "parse_fraction",
    "format_fraction",
]


class NonRationalError(ValueError):
    """Raised when a cyclotomic number that is not rational is forced into Q."""


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class _Field:
    """Cached per-order data: degree, reduction table and trace weights."""

    __slots__ = ("order", "degree", "powers", "trace_weights")

    def __init__(self, order: int):
        self.order = order
        poly = [int(c) for c in cyclotomic_poly(order, _x, polys=True).all_coeffs()]
        poly.reverse()  # poly[i] is the coefficient of x^i, poly[-1] == 1
        deg = len(poly) - 1
        self.degree = deg
        # powers[k] = x^k mod Phi_N for 0 <= k < N (x^N = 1 in the field)
        powers = []
        cur = [0] * deg
        if deg:
            cur[0] = 1
        for _ in range(order):
            powers.append(tuple(cur))
            # multiply by x and reduce
            top = cur[-1] if deg else 0
            nxt = [0] + cur[:-1] if deg else []
            if top:
                for i in range(deg):
                    nxt[i] -= top * poly[i]
            cur = nxt
        self.powers = tuple(powers)
        # normalized trace of z^k is mu(M)/phi(M) with M = N / gcd(N, k)
        weights = []
        for k in range(deg):
            m = order // gcd(order, k)
            weights.append(Fraction(int(mobius(m)), int(totient(m))))
        self.trace_weights = tuple(weights)


@lru_cache(maxsize=None)
def _field(order: int) -> _Field:
    if order < 1:
        raise ValueError(f"cyclotomic order must be positive, got {order}")
    return _Field(order)


def _reduce(order: int, acc: dict[int, Fraction]) -> tuple[Fraction, ...]:
    """Collapse a sparse exponent -> coefficient map into canonical coefficients."""
    f = _field(order)
    out = [Fraction(0)] * f.degree
    for k, a in acc.items():
        if not a:
            continue
        row = f.powers[k % order]
        for i, r in enumerate(row):
            if r:
                out[i] += a * r
    return tuple(out)


def parse_fraction(text: str | int | Fraction) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(text.strip())


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


class CycloNumber:
    """An immutable element of Q(zeta_N) in canonical (mod Phi_N) form.

    >>> i = root_of_unity(4, 1)
    >>> i * i == -1
    True
    """

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs):
        f = _field(order)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != f.degree:
            raise ValueError(
                f"order {order} needs {f.degree} coefficients, got {len(coeffs)}"
            )
        self.order = order
        self.coeffs = coeffs
        self._hash = None

    # construction helpers -------------------------------------------------
    @classmethod
    def rational(cls, value, order: int = 1) -> "CycloNumber":
        deg = _field(order).degree
        return cls(order, (Fraction(value),) + (Fraction(0),) * (deg - 1))

    @classmethod
    def from_exponents(cls, order: int, terms: dict[int, Fraction] | None = None) -> "CycloNumber":
        """Build sum(c_k * z^k) from an exponent map; exponents are taken mod N."""
        return cls(order, _reduce(order, {k: Fraction(v) for k, v in (terms or {}).items()}))

    @classmethod
    def coerce(cls, value) -> "CycloNumber":
        if isinstance(value, CycloNumber):
            return value
        if isinstance(value, (int, Rational)):
            return cls.rational(value)
        raise TypeError(f"cannot interpret {value!r} as a cyclotomic number")

    # basic queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise NonRationalError(f"{self!r} is not rational")
        return self.coeffs[0]

    def normalized_trace(self) -> Fraction:
        """Trace to Q divided by the field degree; independent of the ambient order."""
        w = _field(self.order).trace_weights
        return sum((c * t for c, t in zip(self.coeffs, w) if c), Fraction(0))

    # field embeddings -------------------------------------------------------
    def embed(self, order: int) -> "CycloNumber":
        """Image of self in Q(zeta_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed order {self.order} into order {order}")
        step = order // self.order
        acc = {k * step: c for k, c in enumerate(self.coeffs) if c}
        return CycloNumber(order, _reduce(order, acc))

    def restrict(self, order: int) -> "CycloNumber":
        """Express self inside the subfield Q(zeta_order), if it lies there."""
        if order == self.order:
            return self
        big = _lcm(order, self.order)
        target = self.embed(big)
        basis = [root_of_unity(order, k).embed(big).coeffs for k in range(_field(order).degree)]
        sol = _solve_rational([list(col) for col in zip(*basis)], list(target.coeffs))
        if sol is None:
            raise ValueError(f"{self!r} does not lie in Q(zeta_{order})")
        return CycloNumber(order, sol)

    def galois(self, k: int) -> "CycloNumber":
        """Apply the automorphism z -> z^k (k coprime to the order)."""
        if gcd(k, self.order) != 1:
            raise ValueError(f"{k} is not a unit modulo {self.order}")
        acc = {(j * k) % self.order: c for j, c in enumerate(self.coeffs) if c}
        return CycloNumber(self.order, _reduce(self.order, acc))

    def conjugate(self) -> "CycloNumber":
        return self.galois(-1 % self.order if self.order > 1 else 1)

    # arithmetic -------------------------------------------------------------
    def _common(self, other) -> tuple["CycloNumber", "CycloNumber"]:
        other = CycloNumber.coerce(other)
        if other.order == self.order:
            return self, other
        n = _lcm(self.order, other.order)
        return self.embed(n), other.embed(n)

    def __add__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CycloNumber(a.order, (x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.order, (-c for c in self.coeffs))

    def __sub__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CycloNumber(a.order, (x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        try:
            return CycloNumber.coerce(other) - self
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycloNumber):
            q = Fraction(other)
            return CycloNumber(self.order, (c * q for c in self.coeffs))
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    k = i + j
                    acc[k] = acc.get(k, 0) + x * y
        return CycloNumber(a.order, _reduce(a.order, acc))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in a cyclotomic field")
        if self.is_rational():
            return CycloNumber.rational(1 / self.coeffs[0], self.order)
        n = self.order
        cof = CycloNumber.rational(1, n)
        for k in range(2, n):
            if gcd(k, n) == 1:
                cof = cof * self.galois(k)
        norm = (cof * self).to_rational()
        return cof * (1 / norm)

    def __truediv__(self, other):
        try:
            other = CycloNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        try:
            return CycloNumber.coerce(other) * self.inverse()
        except TypeError:
            return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = CycloNumber.rational(1, self.order)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison -------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, CycloNumber):
            if isinstance(other, (int, Rational)):
                return self.is_rational() and self.coeffs[0] == other
            return NotImplemented
        if other.order == self.order:
            return self.coeffs == other.coeffs
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.normalized_trace())
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # serialization ----------------------------------------------------------
    def to_dict(self) -> dict:
        return {"order": self.order, "coeffs": [format_fraction(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: dict) -> "CycloNumber":
        return cls(int(data["order"]), [parse_fraction(c) for c in data["coeffs"]])

    def __repr__(self):
        if self.is_rational():
            return f"CycloNumber({self.coeffs[0]})"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z{self.order}^{k}" if k else str(c))
        return "CycloNumber(" + " + ".join(terms) + ")"


def _solve_rational(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Solve an overdetermined consistent system A x = b over Q; None if inconsistent."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    aug = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    if any(aug[i][n] for i in range(r, m)):
        return None
    sol = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        sol[col] = aug[i][n]
    return sol


def root_of_unity(order: int, k: int = 1) -> CycloNumber:
    """zeta_order ** k in canonical form."""
    if order < 1:
        raise ValueError(f"order must be positive, got {order}")
    return CycloNumber.from_exponents(order, {k % order: 1})


def to_rational(a: CycloNumber) -> Fraction:
    return CycloNumber.coerce(a).to_rational()


def cyc_arith(a: CycloNumber, b: CycloNumber, op: str) -> CycloNumber:
    """Dispatch one of add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def kernel_basis(rows: list[list[CycloNumber]]) -> list[list[CycloNumber]]:
    """Basis of the right null space of a matrix over one cyclotomic field."""
    if not rows:
        return []
    order = 1
    for row in rows:
        for a in row:
            order = _lcm(order, CycloNumber.coerce(a).order)
    m, n = len(rows), len(rows[0])
    a = [[CycloNumber.coerce(v).embed(order) for v in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if not a[i][col].is_zero()), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][col].inverse()
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and not a[i][col].is_zero():
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    zero = CycloNumber.rational(0, order)
    one = CycloNumber.rational(1, order)
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [zero] * n
        v[free] = one
        for i, col in enumerate(pivots):
            v[col] = -a[i][free]
        basis.append(v)
    return basis
