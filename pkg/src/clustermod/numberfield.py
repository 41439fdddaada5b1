"""Finite extensions of the rationals given by a monic irreducible
polynomial, with exact element arithmetic and the regular-representation
trace.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import List, Sequence, Tuple

from . import linalg


class ReducibleError(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def is_irreducible(coeffs: Sequence[Fraction]) -> bool:
    """Irreducibility over Q of the polynomial with ascending ``coeffs``."""
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in coeffs])), x, domain="QQ")
    return poly.is_irreducible


class NumberField:
    """``Q[x] / (minpoly)`` with power basis ``1, a, ..., a^(d-1)``.

    ``minpoly`` is given in ascending order, e.g. ``[-2, 0, 1]`` for
    ``x^2 - 2``.
    """

    def __init__(self, minpoly: Sequence, check: bool = True, name: str | None = None):
        coeffs = tuple(_frac(c) for c in minpoly)
        if len(coeffs) < 2 or coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic of degree >= 1")
        if check and not is_irreducible(coeffs):
            raise ReducibleError(f"{format_poly(coeffs)} is reducible over Q")
        self.minpoly = coeffs
        self.degree = len(coeffs) - 1
        self.name = name or format_poly(coeffs)
        d = self.degree
        # reductions of a^k for k < 2d - 1 in the power basis
        red: List[Tuple[Fraction, ...]] = []
        for k in range(max(2 * d - 1, d)):
            if k < d:
                v = [Fraction(0)] * d
                v[k] = Fraction(1)
            else:
                prev = red[k - 1]
                # a * prev, then reduce a^d = -sum c_i a^i
                v = [Fraction(0)] + list(prev[:-1])
                top = prev[-1]
                if top:
                    for i in range(d):
                        v[i] -= top * coeffs[i]
            red.append(tuple(v))
        self._red = red
        self.zero = FieldElement(self, (Fraction(0),) * d)
        self.one = FieldElement(self, (Fraction(1),) + (Fraction(0),) * (d - 1))

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return f"NumberField({self.name})"

    def __call__(self, coords) -> "FieldElement":
        if isinstance(coords, FieldElement):
            return coords
        if isinstance(coords, (int, Fraction)):
            return FieldElement(self, (Fraction(coords),) + (Fraction(0),) * (self.degree - 1))
        coords = tuple(_frac(c) for c in coords)
        if len(coords) != self.degree:
            raise ValueError("wrong coordinate length")
        return FieldElement(self, coords)

    def gen(self) -> "FieldElement":
        return self(self._red[1]) if self.degree > 1 else self(-self.minpoly[0])

    def basis(self) -> List["FieldElement"]:
        return [self(self._red[k]) for k in range(self.degree)]

    def mul_coords(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        conv = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = conv[:d]
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                r = self._red[k]
                for i in range(d):
                    if r[i]:
                        out[i] += c * r[i]
        return tuple(out)

    def mul_matrix(self, a: Sequence[Fraction]) -> List[List[Fraction]]:
        """Matrix of ``x -> a*x`` in the power basis (columns are images)."""
        cols = [self.mul_coords(a, self._red[j]) for j in range(self.degree)]
        return linalg.transpose(cols)

    @cached_property
    def basis_traces(self) -> Tuple[Fraction, ...]:
        return tuple(sum((self.mul_matrix(self._red[k])[i][i] for i in range(self.degree)), Fraction(0))
                     for k in range(self.degree))

    def trace(self, a) -> Fraction:
        a = a.c if isinstance(a, FieldElement) else a
        return sum((x * t for x, t in zip(a, self.basis_traces)), Fraction(0))

    @cached_property
    def gram(self) -> List[List[Fraction]]:
        """``[t(e_a e_b)]`` for the power basis."""
        d = self.degree
        return [[self.trace(self.mul_coords(self._red[a], self._red[b])) for b in range(d)] for a in range(d)]

    @cached_property
    def gram_inverse(self) -> List[List[Fraction]]:
        return linalg.inverse(self.gram)

    def is_trace_nondegenerate(self) -> bool:
        return linalg.det(self.gram) != 0

    def from_trace_values(self, values: Sequence[Fraction]) -> "FieldElement":
        """The unique ``u`` with ``t(e_a u) = values[a]`` for every basis ``e_a``."""
        return self(linalg.matvec(self.gram_inverse, values))

    def inverse_coords(self, a: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        if self.degree == 1:
            return (1 / a[0],)
        return tuple(linalg.solve(self.mul_matrix(a), self.one.c))

    def to_json(self) -> dict:
        return {"minpoly": [str(c) for c in self.minpoly]}

    @classmethod
    def from_json(cls, obj) -> "NumberField":
        coeffs = obj["minpoly"] if isinstance(obj, dict) else obj
        return cls([Fraction(c) for c in coeffs])


def make_field_algebra(minpoly: Sequence) -> NumberField:
    """Field algebra with trace form; rejects reducible polynomials and
    checks the trace is non-degenerate."""
    K = NumberField(minpoly)
    if not K.is_trace_nondegenerate():
        raise ValueError("degenerate trace form")
    return K


def format_poly(coeffs: Sequence[Fraction]) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        mag = abs(c)
        body = (str(mag) if not mono or mag != 1 else "") + ("*" if mono and mag != 1 else "") + mono
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sg, body in terms[1:]:
        s += f" {sg} {body}"
    return s


class FieldElement:
    __slots__ = ("field", "c")

    def __init__(self, field: NumberField, coords: Tuple[Fraction, ...]):
        self.field = field
        self.c = coords

    def _wrap(self, other):
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.c))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.c))
        if not isinstance(other, FieldElement):
            return NotImplemented
        return FieldElement(self.field, self.field.mul_coords(self.c, other.c))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(self.field, self.field.inverse_coords(self.c))

    def __truediv__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        return isinstance(other, FieldElement) and self.c == other.c

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.c)

    def trace(self) -> Fraction:
        return self.field.trace(self.c)

    def __repr__(self):
        return f"[{', '.join(str(x) for x in self.c)}]"


RATIONALS = NumberField([-1, 1], check=False, name="Q")
