"""Exact arithmetic in Z[q, t, ...] and its fraction field.

Polynomials are ``flint.fmpz_mpoly`` objects over one fixed context holding
every formal variable the library uses.  Elements that only involve ``q`` and
``t`` are unaffected by the extra variables (sparse storage), so the extra
parameters ``u, v, w, x, z`` are available to any computation without
changing the common case.

:class:`RatQT` is the coefficient field.  Values are kept in a canonical form
(gcd-free, denominator with positive leading coefficient in graded-lex order)
so that ``==`` is structural equality of canonical forms.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

import flint

VARIABLES = ("q", "t", "u", "v", "w", "x", "z")
CTX = flint.fmpz_mpoly_ctx.get(VARIABLES, "deglex")
NVARS = len(VARIABLES)
_INDEX = {name: i for i, name in enumerate(VARIABLES)}

IntPoly = flint.fmpz_mpoly

_ZERO = CTX.constant(0)
_ONE = CTX.constant(1)


class PoleError(ArithmeticError):
    """Raised when a specialisation hits a vanishing denominator."""


def var_index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise ValueError(f"unknown variable {name!r}; known: {', '.join(VARIABLES)}") from None


def _poly(value) -> IntPoly:
    if isinstance(value, IntPoly):
        return value
    return CTX.constant(int(value))


def _poly_key(p: IntPoly) -> tuple:
    return tuple(sorted((e, int(c)) for e, c in p.terms()))


class RatQT:
    """Element of Q(q, t, u, v, w, x, z) in canonical form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, *, normalized: bool = False):
        num = _poly(num)
        den = _poly(den)
        if not normalized:
            if den.is_zero():
                raise ZeroDivisionError("RatQT with zero denominator")
            if num.is_zero():
                den = _ONE
            elif not den.is_one():
                g = num.gcd(den)
                if not g.is_one():
                    num = num / g
                    den = den / g
                if den.leading_coefficient() < 0:
                    num = -num
                    den = -den
        self.num = num
        self.den = den
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def coerce(cls, value) -> RatQT:
        if isinstance(value, RatQT):
            return value
        if isinstance(value, int):
            return cls(CTX.constant(value), _ONE, normalized=True)
        if isinstance(value, Fraction):
            return cls(value.numerator, value.denominator)
        if isinstance(value, IntPoly):
            return cls(value, _ONE, normalized=True)
        raise TypeError(f"cannot coerce {type(value).__name__} to RatQT")

    @classmethod
    def monomial(cls, coeff: int = 1, **exponents: int) -> RatQT:
        """``coeff * q^a * t^b * ...``; negative exponents allowed."""
        up = [0] * NVARS
        down = [0] * NVARS
        for name, e in exponents.items():
            if e >= 0:
                up[var_index(name)] = e
            else:
                down[var_index(name)] = -e
        num = CTX.from_dict({tuple(up): coeff}) if coeff else _ZERO
        return cls(num, CTX.from_dict({tuple(down): 1}))

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def free_of(self, name: str) -> bool:
        i = var_index(name)
        return self.num.degrees()[i] <= 0 and self.den.degrees()[i] <= 0

    def variables(self) -> set[str]:
        out = set()
        for p in (self.num, self.den):
            if not p.is_constant():
                for name, d in zip(VARIABLES, p.degrees()):
                    if d > 0:
                        out.add(name)
        return out

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            o = RatQT.coerce(other)
        except TypeError:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den.is_one() and o.den.is_one():
            return RatQT(self.num + o.num, _ONE, normalized=True)
        if self.den == o.den:
            return RatQT(self.num + o.num, self.den)
        if o.den.is_one():
            return RatQT(self.num + o.num * self.den, self.den, normalized=True)
        if self.den.is_one():
            return RatQT(self.num * o.den + o.num, o.den, normalized=True)
        g = self.den.gcd(o.den)
        if g.is_one():
            return RatQT(self.num * o.den + o.num * self.den, self.den * o.den)
        b1 = self.den / g
        d1 = o.den / g
        return RatQT(self.num * d1 + o.num * b1, b1 * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatQT(-self.num, self.den, normalized=True)

    def __sub__(self, other):
        try:
            o = RatQT.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return RatQT.coerce(other) - self

    def __mul__(self, other):
        try:
            o = RatQT.coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return ZERO
        if o.den.is_one() and o.num.is_constant():
            c = o.num
            if c.is_one():
                return self
            if self.den.is_one():
                return RatQT(self.num * c, _ONE, normalized=True)
        if self.den.is_one() and o.den.is_one():
            return RatQT(self.num * o.num, _ONE, normalized=True)
        a, b, c, d = self.num, self.den, o.num, o.den
        if not d.is_one():
            g = a.gcd(d)
            if not g.is_one():
                a = a / g
                d = d / g
        if not b.is_one():
            g = c.gcd(b)
            if not g.is_one():
                c = c / g
                b = b / g
        num, den = a * c, b * d
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatQT(num, den, normalized=True)

    __rmul__ = __mul__

    def inverse(self) -> RatQT:
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero in RatQT")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatQT(num, den, normalized=True)

    def __truediv__(self, other):
        try:
            o = RatQT.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return RatQT.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatQT(self.num ** k, self.den ** k, normalized=True)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, RatQT):
            try:
                other = RatQT.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((_poly_key(self.num), _poly_key(self.den)))
        return self._hash

    # -- substitutions ----------------------------------------------------
    def subs_powers(self, k: int) -> RatQT:
        """Replace every variable ``x`` by ``x^k`` (a ring endomorphism)."""
        if k == 1 or (self.num.is_constant() and self.den.is_constant()):
            return self
        ks = [k] * NVARS
        num = self.num.inflate(ks)
        den = self.den.inflate(ks)
        # inflation keeps coprimality and the sign of the leading term
        return RatQT(num, den, normalized=True)

    def invert(self, names=("q", "t")) -> RatQT:
        """Substitute ``x -> 1/x`` for the named variables and renormalize."""
        idx = [var_index(n) for n in names]
        dn = self.num.degrees()
        dd = self.den.degrees()
        top = [max(dn[i], dd[i], 0) for i in range(NVARS)]

        def flip(p, deg):
            terms = {}
            for e, c in p.terms():
                e = list(e)
                for i in idx:
                    e[i] = top[i] - e[i]
                terms[tuple(e)] = c
            return CTX.from_dict(terms)

        return RatQT(flip(self.num, dn), flip(self.den, dd))

    def evaluate(self, name: str, value: int) -> RatQT:
        """Specialise one variable to an integer; raises PoleError on a pole."""
        i = var_index(name)
        if self.num.degrees()[i] <= 0 and self.den.degrees()[i] <= 0:
            return self
        den = self.den.subs({name: value})
        if den.is_zero():
            raise PoleError(f"denominator vanishes at {name}={value}: ({render_poly(self.den)})")
        return RatQT(self.num.subs({name: value}), den)

    def coefficient(self, name: str, k: int) -> RatQT:
        """Coefficient of ``name^k``; the denominator must not involve ``name``."""
        i = var_index(name)
        if self.den.degrees()[i] > 0:
            raise ValueError(f"denominator depends on {name}; expand as a series first")
        if self.num.degrees()[i] < k or k < 0:
            return ZERO
        terms = {}
        for e, c in self.num.terms():
            if e[i] == k:
                e = list(e)
                e[i] = 0
                terms[tuple(e)] = c
        if not terms:
            return ZERO
        return RatQT(CTX.from_dict(terms), self.den)

    def degree_in(self, name: str) -> int:
        """Degree in ``name`` of the numerator (the denominator must be free of it)."""
        i = var_index(name)
        return self.num.degrees()[i]

    def truncate(self, name: str, k: int) -> RatQT:
        """Drop numerator terms of degree > k in ``name``."""
        i = var_index(name)
        if self.den.degrees()[i] > 0:
            raise ValueError(f"denominator depends on {name}")
        if self.num.degrees()[i] <= k:
            return self
        terms = {e: c for e, c in self.num.terms() if e[i] <= k}
        return RatQT(CTX.from_dict(terms) if terms else _ZERO, self.den)

    # -- rendering --------------------------------------------------------
    def __str__(self):
        if self.den.is_one():
            return render_poly(self.num)
        return f"({render_poly(self.num)})/({render_poly(self.den)})"

    def __repr__(self):
        return f"RatQT({self})"


ZERO = RatQT(_ZERO, _ONE, normalized=True)
ONE = RatQT(_ONE, _ONE, normalized=True)


def gen(name: str) -> RatQT:
    return RatQT(CTX.gens()[var_index(name)], _ONE, normalized=True)


q = gen("q")
t = gen("t")
M = (1 - q) * (1 - t)


def render_poly(p: IntPoly) -> str:
    """Canonical text: terms in ascending graded-lex order, e.g. ``1 - q*t``."""
    if p.is_zero():
        return "0"
    out = []
    for exps, c in reversed(list(p.terms())):
        c = int(c)
        mono = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(VARIABLES, exps) if e
        )
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*((?:[a-z](?:\^\d+)?\*?)*)")


def parse_poly(text: str) -> IntPoly:
    """Inverse of :func:`render_poly`."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"[+-][^+-]+", s)
    if "".join(pieces) != s:
        raise ValueError(f"malformed polynomial {text!r}")
    terms: dict[tuple, int] = {}
    for piece in pieces:
        sign = -1 if piece[0] == "-" else 1
        coeff = 1
        exps = [0] * NVARS
        for factor in piece[1:].split("*"):
            if not factor:
                raise ValueError(f"malformed term {piece!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, _, power = factor.partition("^")
            if name not in _INDEX or (power and not power.isdigit()):
                raise ValueError(f"malformed factor {factor!r}")
            exps[_INDEX[name]] += int(power) if power else 1
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + sign * coeff
    return CTX.from_dict({k: v for k, v in terms.items() if v})


def parse_ratqt(text: str) -> RatQT:
    s = text.strip()
    if s.startswith("(") and ")/(" in s and s.endswith(")"):
        num, den = s[1:-1].split(")/(")
        return RatQT(parse_poly(num), parse_poly(den))
    return RatQT(parse_poly(s))


# -- q-combinatorics -------------------------------------------------------

def binom2(n: int) -> int:
    """n(n-1)/2, valid for every integer n."""
    return n * (n - 1) // 2


def qpow(k: int) -> RatQT:
    return RatQT.monomial(q=k)


def tpow(k: int) -> RatQT:
    return RatQT.monomial(t=k)


@lru_cache(maxsize=None)
def qint(n: int) -> RatQT:
    """[n]_q = 1 + q + ... + q^(n-1); [0]_q = 0."""
    if n < 0:
        raise ValueError("qint needs n >= 0")
    return RatQT(CTX.from_dict({(i,) + (0,) * (NVARS - 1): 1 for i in range(n)}) if n else _ZERO)


@lru_cache(maxsize=None)
def tint(n: int) -> RatQT:
    """[n]_t, the same polynomial in t."""
    if n < 0:
        raise ValueError("tint needs n >= 0")
    return RatQT(CTX.from_dict({(0, i) + (0,) * (NVARS - 2): 1 for i in range(n)}) if n else _ZERO)


@lru_cache(maxsize=None)
def qfactorial(n: int) -> RatQT:
    out = ONE
    for i in range(2, n + 1):
        out = out * qint(i)
    return out


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> RatQT:
    """Gaussian binomial; 0 when k < 0, n < k or n < 0."""
    if k < 0 or n < k or n < 0:
        return ZERO
    return RatQT(qfactorial(n).num / (qfactorial(k).num * qfactorial(n - k).num), _ONE, normalized=True)


def qrising(a, s: int) -> RatQT:
    """(a; q)_s = (1 - a)(1 - q a)...(1 - q^(s-1) a)."""
    if s < 0:
        raise ValueError("qrising needs s >= 0")
    a = RatQT.coerce(a)
    out = ONE
    for i in range(s):
        out = out * (1 - qpow(i) * a)
    return out


def substitute_powers(f, k: int) -> RatQT:
    if k < 1:
        raise ValueError("substitute_powers needs k >= 1")
    return RatQT.coerce(f).subs_powers(k)


def invert_qt(f) -> RatQT:
    return RatQT.coerce(f).invert(("q", "t"))
