"""Multivariate Laurent polynomials with integer coefficients.

Terms are kept in a dict ``{exponent tuple: nonzero int}``; ordering and
hashing go through the lexicographically sorted term tuple.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, Mapping, Tuple

Exponent = Tuple[int, ...]


class NotDivisible(ArithmeticError):
    """No Laurent quotient exists."""


class LaurentPoly:
    __slots__ = ("nvars", "terms", "_key")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | Iterable = ()):
        self.nvars = nvars
        clean: Dict[Exponent, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            c = int(c)
            if c:
                c += clean.get(e, 0)
                if c:
                    clean[e] = c
                else:
                    clean.pop(e, None)
        self.terms = clean
        self._key = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponent, int]) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.nvars, p.terms, p._key = nvars, terms, None
        return p

    @classmethod
    def const(cls, nvars: int, c: int) -> "LaurentPoly":
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def monomial(cls, nvars: int, exps: Exponent, c: int = 1) -> "LaurentPoly":
        return cls(nvars, {tuple(exps): c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "LaurentPoly":
        """The variable ``x_i`` (1-based)."""
        e = [0] * nvars
        e[i - 1] = 1
        return cls._raw(nvars, {tuple(e): 1})

    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(sorted(self.terms.items()))
        return self._key

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(self.nvars, other)
        return isinstance(other, LaurentPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.key()))

    def __lt__(self, other: "LaurentPoly") -> bool:
        return self.key() < other.key()

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.const(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise NotDivisible("only monomials have Laurent inverses")
            (e, c), = self.terms.items()
            if abs(c) != 1:
                raise NotDivisible("monomial with non-unit coefficient")
            return LaurentPoly._raw(self.nvars, {tuple(x * k for x in e): c ** (-k)})
        result = LaurentPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other) -> "LaurentPoly":
        return div_exact(self, self._coerce(other))

    def min_exponent(self) -> Exponent:
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def shift(self, exps: Exponent) -> "LaurentPoly":
        """Multiply by the monomial ``x^exps``."""
        return LaurentPoly._raw(self.nvars, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()})

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, '{to_text(self)}')"


def div_exact(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return ``r`` with ``r * q == p`` in the Laurent ring, or raise
    :class:`NotDivisible`."""
    if p.nvars != q.nvars:
        raise ValueError("variable count mismatch")
    if not q:
        raise ZeroDivisionError("division by zero Laurent polynomial")
    if not p:
        return p
    nv = p.nvars
    mq, mp = q.min_exponent(), p.min_exponent()
    qq = q.shift(tuple(-x for x in mq))
    rem = dict(p.shift(tuple(-x for x in mp)).terms)
    lead_e = max(qq.terms)
    lead_c = qq.terms[lead_e]
    qterms = list(qq.terms.items())
    quot: Dict[Exponent, int] = {}
    while rem:
        e = max(rem)
        c = rem[e]
        d = tuple(a - b for a, b in zip(e, lead_e))
        if min(d) < 0 or c % lead_c:
            raise NotDivisible(f"{p} is not divisible by {q}")
        f = c // lead_c
        quot[d] = f
        for eq, cq in qterms:
            t = tuple(a + b for a, b in zip(d, eq))
            v = rem.get(t, 0) - f * cq
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    shift = tuple(a - b for a, b in zip(mp, mq))
    return LaurentPoly._raw(nv, quot).shift(shift)


def _fmt_mono(e: Exponent, names) -> str:
    parts = []
    for i, x in enumerate(e):
        if x == 1:
            parts.append(names[i])
        elif x:
            parts.append(f"{names[i]}^{x}")
    return "*".join(parts)


def to_text(p: LaurentPoly, names=None) -> str:
    """Canonical text, terms in descending lexicographic exponent order,
    e.g. ``"3*x1^2*x2^-1 + 1"``."""
    if names is None:
        names = [f"x{i + 1}" for i in range(p.nvars)]
    if not p.terms:
        return "0"
    out = []
    for e, c in sorted(p.terms.items(), reverse=True):
        mono = _fmt_mono(e, names)
        mag = abs(c)
        body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def parse(text: str, nvars: int) -> LaurentPoly:
    """Parse the canonical text form (``*`` products, ``^`` with optional
    negative integer exponents, variables ``x1..xm``)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    # split on +/- that are not exponent signs
    tokens, cur, i = [], "", 0
    while i < len(s):
        ch = s[i]
        if ch in "+-" and cur and not cur.endswith("^"):
            tokens.append(cur)
            cur = ch
        else:
            cur += ch
        i += 1
    tokens.append(cur)
    terms: Dict[Exponent, int] = {}
    for tok in tokens:
        neg = tok.startswith("-")
        tok = tok.lstrip("+-")
        coef, exps = 1, [0] * nvars
        for factor in tok.split("*"):
            if not factor:
                raise ValueError(f"malformed term in {text!r}")
            m = re.fullmatch(r"x(\d+)(?:\^(-?\d+))?", factor)
            if m:
                idx = int(m.group(1))
                if not 1 <= idx <= nvars:
                    raise ValueError(f"variable x{idx} outside x1..x{nvars}")
                exps[idx - 1] += int(m.group(2) or 1)
            elif re.fullmatch(r"\d+", factor):
                coef *= int(factor)
            else:
                raise ValueError(f"cannot parse factor {factor!r}")
        e = tuple(exps)
        terms[e] = terms.get(e, 0) + (-coef if neg else coef)
    return LaurentPoly(nvars, terms)
