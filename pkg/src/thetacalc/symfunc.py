"""Symmetric functions over Q(q, t), stored in the power-sum basis.

A :class:`SymFunc` is a finite dict ``Partition -> RatQT`` read as
``sum c_lambda p_lambda``.  Everything that is diagonal or multiplicative on
power sums (plethysm, omega, the Hall and star pairings, skewing) is then a
short loop.  Schur, monomial, h and e coefficients are read off by pairing.

Plethysm takes an :class:`Alphabet`, a formal sum of terms
``scalar * (X or 1) * (eps or 1)``.  Coefficients of the function being
substituted into are left alone; only the power sums move.
"""
from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .qfield import ONE, ZERO, RatQT, gen, parse_ratqt


# ---------------------------------------------------------------------------
# partitions

class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        if isinstance(parts, int):
            parts = (parts,) if parts > 0 else ()
        parts = tuple(int(x) for x in parts if x != 0)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_unsorted(cls, parts) -> Partition:
        return cls(sorted(parts, reverse=True))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> Partition:
        return _conjugate(self)

    def multiplicities(self) -> Counter:
        return Counter(self)

    def z(self) -> int:
        return _z(self)

    def cells(self):
        """Cells (i, j): row i, column j, both 0-based."""
        for i, row in enumerate(self):
            for j in range(row):
                yield i, j

    def arm(self, i, j) -> int:
        return self[i] - j - 1

    def leg(self, i, j) -> int:
        return self.conjugate()[j] - i - 1

    def coarm(self, i, j) -> int:
        return j

    def coleg(self, i, j) -> int:
        return i

    def n_stat(self) -> int:
        return sum(i * part for i, part in enumerate(self))

    def is_hook(self) -> bool:
        return len(self) <= 1 or self[1] <= 1

    def dominates(self, other: Partition) -> bool:
        a = b = 0
        for i in range(max(len(self), len(other))):
            a += self[i] if i < len(self) else 0
            b += other[i] if i < len(other) else 0
            if a < b:
                return False
        return True

    def label(self, sep: str = ".") -> str:
        return sep.join(map(str, self)) if self else "0"

    def __repr__(self):
        return f"[{','.join(map(str, self))}]"

    def __add__(self, other):
        return Partition.from_unsorted(tuple(self) + tuple(other))


@lru_cache(maxsize=None)
def _conjugate(lam: tuple) -> Partition:
    if not lam:
        return Partition()
    return Partition(sum(1 for x in lam if x > j) for j in range(lam[0]))


@lru_cache(maxsize=None)
def _z(lam: tuple) -> int:
    out = 1
    for i, m in Counter(lam).items():
        out *= i ** m * math.factorial(m)
    return out


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[Partition, ...]:
    """Partitions of n in lexicographically decreasing order."""
    if n < 0:
        return ()
    if n == 0:
        return (Partition(),)
    out = []

    def rec(rest, cap, acc):
        if rest == 0:
            out.append(Partition(acc))
            return
        for k in range(min(rest, cap), 0, -1):
            rec(rest - k, k, acc + [k])

    rec(n, n, [])
    return tuple(out)


def partitions_upto(n: int):
    for k in range(n + 1):
        yield from partitions(k)


@lru_cache(maxsize=None)
def _merge(a: tuple, b: tuple) -> Partition:
    if not a:
        return b if isinstance(b, Partition) else Partition(b)
    if not b:
        return a if isinstance(a, Partition) else Partition(a)
    return Partition(sorted(a + b, reverse=True))


def _sign(lam: tuple) -> int:
    """(-1)^(|lam| - len(lam)), the sign of omega on p_lam."""
    return -1 if (sum(lam) - len(lam)) % 2 else 1


# ---------------------------------------------------------------------------
# characters (Murnaghan-Nakayama via beta numbers)

@lru_cache(maxsize=None)
def character(lam: tuple, rho: tuple) -> int:
    """chi^lam evaluated at cycle type rho."""
    if sum(lam) != sum(rho):
        return 0
    if not rho:
        return 1
    k, rest = rho[0], rho[1:]
    n = len(lam)
    beta = [lam[i] + n - 1 - i for i in range(n)]
    beta_set = set(beta)
    total = 0
    for b in beta:
        nb = b - k
        if nb < 0 or nb in beta_set:
            continue
        height = sum(1 for x in beta if nb < x < b)
        new = sorted((nb if x == b else x for x in beta), reverse=True)
        m = len(new)
        shape = tuple(new[i] - (m - 1 - i) for i in range(m))
        total += (-1) ** height * character(Partition(shape), rest)
    return total


# ---------------------------------------------------------------------------
# the ring

def _coerce(c) -> RatQT:
    return c if isinstance(c, RatQT) else RatQT.coerce(c)


class SymFunc:
    """Finite sum of power sums with RatQT coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[Partition, RatQT] = {}
        if terms:
            for lam, c in terms.items():
                c = _coerce(c)
                if not c.is_zero():
                    self.terms[lam if isinstance(lam, Partition) else Partition(lam)] = c

    @classmethod
    def _raw(cls, terms: dict) -> SymFunc:
        out = cls.__new__(cls)
        out.terms = terms
        return out

    @classmethod
    def scalar(cls, c) -> SymFunc:
        c = _coerce(c)
        return cls._raw({} if c.is_zero() else {Partition(): c})

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __getitem__(self, lam) -> RatQT:
        return self.terms.get(Partition(lam), ZERO)

    def degrees(self) -> list[int]:
        return sorted({lam.size for lam in self.terms})

    def max_degree(self) -> int:
        return max((lam.size for lam in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def component(self, n: int) -> SymFunc:
        return SymFunc._raw({lam: c for lam, c in self.terms.items() if lam.size == n})

    def truncate(self, maxdeg: int) -> SymFunc:
        return SymFunc._raw({lam: c for lam, c in self.terms.items() if lam.size <= maxdeg})

    def constant_term(self) -> RatQT:
        return self.terms.get(Partition(), ZERO)

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, SymFunc):
            other = SymFunc.scalar(other)
        out = dict(self.terms)
        for lam, c in other.terms.items():
            if lam in out:
                s = out[lam] + c
                if s.is_zero():
                    del out[lam]
                else:
                    out[lam] = s
            else:
                out[lam] = c
        return SymFunc._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc._raw({lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SymFunc):
            other = SymFunc.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return SymFunc.scalar(other) - self

    def scale(self, c) -> SymFunc:
        c = _coerce(c)
        if c.is_zero():
            return SymFunc()
        if c.is_one():
            return self
        return SymFunc._raw({lam: v * c for lam, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SymFunc):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        if len(other.terms) == 1 and Partition() in other.terms:
            return self.scale(other.terms[Partition()])
        out: dict[Partition, RatQT] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                lam = _merge(a, b)
                c = ca * cb
                if lam in out:
                    c = out[lam] + c
                    if c.is_zero():
                        del out[lam]
                        continue
                out[lam] = c
        return SymFunc._raw(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(ONE / _coerce(c))

    def __pow__(self, k: int):
        out = SymFunc.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            try:
                other = SymFunc.scalar(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- coefficientwise maps ---------------------------------------------
    def map_coeffs(self, fn) -> SymFunc:
        out = {}
        for lam, c in self.terms.items():
            v = fn(c)
            if not v.is_zero():
                out[lam] = v
        return SymFunc._raw(out)

    def coefficient(self, name: str, k: int) -> SymFunc:
        """Coefficient of ``name^k`` (coefficients must be polynomial in it)."""
        return self.map_coeffs(lambda c: c.coefficient(name, k))

    def evaluate(self, name: str, value: int) -> SymFunc:
        return self.map_coeffs(lambda c: c.evaluate(name, value))

    def truncate_in(self, name: str, k: int) -> SymFunc:
        return self.map_coeffs(lambda c: c.truncate(name, k))

    def degree_in(self, name: str) -> int:
        return max((c.degree_in(name) for c in self.terms.values()), default=-1)

    def invert_qt(self) -> SymFunc:
        return self.map_coeffs(lambda c: c.invert(("q", "t")))

    # -- text -------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _graded_key(kv[0]))

    def serialize(self) -> str:
        lines = ["basis=p;"]
        for lam, c in self.sorted_terms():
            lines.append(f"{lam.label()} : {c}")
        return "\n".join(lines) + "\n"

    @classmethod
    def deserialize(cls, text: str) -> SymFunc:
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines or lines[0] != "basis=p;":
            raise ValueError("missing 'basis=p;' header")
        terms = {}
        for ln in lines[1:]:
            key, sep, val = ln.partition(" : ")
            if not sep:
                raise ValueError(f"malformed line {ln!r}")
            lam = Partition() if key == "0" else Partition(int(x) for x in key.split("."))
            if lam in terms:
                raise ValueError(f"duplicate partition {key}")
            terms[lam] = parse_ratqt(val)
        return cls(terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*p{lam!r}" for lam, c in self.sorted_terms())

    __repr__ = __str__


def _graded_key(lam: Partition):
    return (lam.size, tuple(-x for x in lam))


ZERO_SF = SymFunc()


def one() -> SymFunc:
    return SymFunc.scalar(1)


# ---------------------------------------------------------------------------
# bases

def p(lam) -> SymFunc:
    return SymFunc._raw({Partition(lam): ONE})


@lru_cache(maxsize=None)
def h(n: int) -> SymFunc:
    if n < 0:
        return SymFunc()
    return SymFunc({lam: Fraction(1, lam.z()) for lam in partitions(n)})


@lru_cache(maxsize=None)
def e(n: int) -> SymFunc:
    if n < 0:
        return SymFunc()
    return SymFunc({lam: Fraction(_sign(lam), lam.z()) for lam in partitions(n)})


def _product(fn, lam) -> SymFunc:
    out = one()
    for k in Partition(lam):
        out = out * fn(k)
    return out


def s(lam) -> SymFunc:
    return _schur(Partition(lam))


@lru_cache(maxsize=None)
def _schur(lam: Partition) -> SymFunc:
    return SymFunc({rho: Fraction(character(lam, rho), rho.z()) for rho in partitions(lam.size)})


@lru_cache(maxsize=None)
def _p_to_m(n: int) -> dict:
    """L[rho][mu] = coefficient of m_mu in p_rho."""

    def count(parts, targets):
        if not parts:
            return 1 if all(x == 0 for x in targets) else 0
        k, rest = parts[0], parts[1:]
        total = 0
        for j, tj in enumerate(targets):
            if tj >= k:
                nt = list(targets)
                nt[j] -= k
                total += count(rest, tuple(nt))
        return total

    return {rho: {mu: count(rho, tuple(mu)) for mu in partitions(n)} for rho in partitions(n)}


@lru_cache(maxsize=None)
def _m_in_p(n: int) -> dict:
    """Inverse of the p-to-m matrix: m_mu = sum_rho A[mu][rho] p_rho."""
    parts = partitions(n)
    L = _p_to_m(n)
    size = len(parts)
    mat = [[Fraction(L[r][c]) for c in parts] + [Fraction(int(i == j)) for j in range(size)]
           for i, r in enumerate(parts)]
    for col in range(size):
        piv = next(r for r in range(col, size) if mat[r][col] != 0)
        mat[col], mat[piv] = mat[piv], mat[col]
        pv = mat[col][col]
        mat[col] = [x / pv for x in mat[col]]
        for r in range(size):
            if r != col and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    inv = [row[size:] for row in mat]  # inv = L^{-1}; m = L^{-1} p
    return {mu: {rho: inv[i][j] for j, rho in enumerate(parts) if inv[i][j] != 0}
            for i, mu in enumerate(parts)}


def m(lam) -> SymFunc:
    return _monomial(Partition(lam))


@lru_cache(maxsize=None)
def _monomial(lam: Partition) -> SymFunc:
    return SymFunc(_m_in_p(lam.size)[lam])


def e_lam(lam) -> SymFunc:
    return _product(e, lam)


def h_lam(lam) -> SymFunc:
    return _product(h, lam)


def basis_element(basis: str, lam) -> SymFunc:
    """e/h/p/m/s basis element; an integer index means a one-row partition."""
    if isinstance(lam, int):
        if lam < 0:
            return SymFunc()
        lam = Partition((lam,)) if lam else Partition()
    else:
        lam = Partition(lam)
    if basis == "p":
        return p(lam)
    if basis == "e":
        return e_lam(lam)
    if basis == "h":
        return h_lam(lam)
    if basis == "s":
        return s(lam)
    if basis == "m":
        return m(lam)
    raise ValueError(f"unknown basis {basis!r}")


# ---------------------------------------------------------------------------
# pairings and bases read-out

def hall(f: SymFunc, g: SymFunc) -> RatQT:
    out = ZERO
    small, big = (f, g) if len(f.terms) <= len(g.terms) else (g, f)
    for lam, c in small.terms.items():
        d = big.terms.get(lam)
        if d is not None:
            out = out + c * d * lam.z()
    return out


@lru_cache(maxsize=None)
def star_weight(lam: Partition) -> RatQT:
    w = RatQT.coerce(_sign(lam) * lam.z())
    for k in lam:
        w = w * (1 - RatQT.monomial(q=k)) * (1 - RatQT.monomial(t=k))
    return w


@lru_cache(maxsize=None)
def star_mod_weight(lam: Partition) -> RatQT:
    w = RatQT.coerce((-1) ** len(lam) * lam.z())
    for k in lam:
        w = w * (1 - RatQT.monomial(q=k)) * (1 - RatQT.monomial(t=k))
    return w


def _weighted(f, g, weight) -> RatQT:
    out = ZERO
    for lam, c in f.terms.items():
        d = g.terms.get(lam)
        if d is not None:
            out = out + c * d * weight(lam)
    return out


def star(f: SymFunc, g: SymFunc) -> RatQT:
    return _weighted(f, g, star_weight)


def star_mod(f: SymFunc, g: SymFunc) -> RatQT:
    """<f[-MX], g>, evaluated directly on power sums."""
    return _weighted(f, g, star_mod_weight)


def to_schur(f: SymFunc) -> dict[Partition, RatQT]:
    out = {}
    for n in f.degrees():
        comp = f.component(n)
        for lam in partitions(n):
            c = ZERO
            for rho, v in comp.terms.items():
                ch = character(lam, rho)
                if ch:
                    c = c + v * ch
            if not c.is_zero():
                out[lam] = c
    return out


def to_basis(f: SymFunc, basis: str) -> dict[Partition, RatQT]:
    """Coefficients of f in the given basis, keyed by partition."""
    if basis == "p":
        return dict(f.terms)
    if basis == "s":
        return to_schur(f)
    if basis == "e":
        return to_basis(omega(f), "h")
    dual = {"h": m, "m": h_lam}.get(basis)
    if dual is None:
        raise ValueError(f"unknown basis {basis!r}")
    out = {}
    for n in f.degrees():
        comp = f.component(n)
        for lam in partitions(n):
            c = hall(comp, dual(lam))
            if not c.is_zero():
                out[lam] = c
    return out


def from_basis(coeffs: dict, basis: str) -> SymFunc:
    out = SymFunc()
    for lam, c in coeffs.items():
        out = out + basis_element(basis, Partition(lam)).scale(c)
    return out


# ---------------------------------------------------------------------------
# involutions and skewing

def omega(f: SymFunc) -> SymFunc:
    return SymFunc._raw({lam: (c if _sign(lam) > 0 else -c) for lam, c in f.terms.items()})


def omega_bar(f: SymFunc) -> SymFunc:
    return omega(f).invert_qt()


def _perp_monomial(mu: Partition, rho: Partition):
    """p_mu^perp p_rho = factor * p_(rho minus mu), or None."""
    cm = Counter(mu)
    cr = Counter(rho)
    factor = 1
    for k, a in cm.items():
        b = cr.get(k, 0)
        if b < a:
            return None
        factor *= k ** a * math.factorial(b) // math.factorial(b - a)
        cr[k] = b - a
    rest = Partition(sorted(cr.elements(), reverse=True))
    return factor, rest


def perp(f: SymFunc, g: SymFunc) -> SymFunc:
    """f^perp g, the Hall adjoint of multiplication by f."""
    out: dict[Partition, RatQT] = {}
    for mu, c in f.terms.items():
        for rho, d in g.terms.items():
            r = _perp_monomial(mu, rho)
            if r is None:
                continue
            factor, rest = r
            v = c * d * factor
            if rest in out:
                v = out[rest] + v
                if v.is_zero():
                    del out[rest]
                    continue
            out[rest] = v
    return SymFunc._raw(out)


# ---------------------------------------------------------------------------
# alphabets and plethysm

class Alphabet:
    """Formal sum of terms ``scalar * (X if uses_x) * (eps if eps)``."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        merged: dict[tuple, RatQT] = {}
        for scal, uses_x, eps in terms:
            key = (bool(uses_x), bool(eps))
            merged[key] = merged.get(key, ZERO) + _coerce(scal)
        self.terms = tuple((c, ux, ep) for (ux, ep), c in sorted(merged.items()) if not c.is_zero())

    @classmethod
    def X(cls) -> Alphabet:
        return cls([(ONE, True, False)])

    @classmethod
    def const(cls, c) -> Alphabet:
        return cls([(_coerce(c), False, False)])

    def eps(self) -> Alphabet:
        return Alphabet((c, ux, not ep) for c, ux, ep in self.terms)

    def uses_x(self) -> bool:
        return any(ux for _, ux, _ in self.terms)

    def __add__(self, other):
        other = other if isinstance(other, Alphabet) else Alphabet.const(other)
        return Alphabet(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return Alphabet((-c, ux, ep) for c, ux, ep in self.terms)

    def __sub__(self, other):
        other = other if isinstance(other, Alphabet) else Alphabet.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Alphabet.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Alphabet):
            c = _coerce(other)
            return Alphabet((s_ * c, ux, ep) for s_, ux, ep in self.terms)
        out = []
        for c1, x1, e1 in self.terms:
            for c2, x2, e2 in other.terms:
                if x1 and x2:
                    raise ValueError("X*X is not an alphabet")
                out.append((c1 * c2, x1 or x2, e1 != e2))
        return Alphabet(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (ONE / _coerce(c))

    def power_image(self, k: int) -> tuple[RatQT, RatQT]:
        """p_k[A] = a + b * p_k, returned as (a, b)."""
        a = b = ZERO
        for c, ux, ep in self.terms:
            v = c.subs_powers(k)
            if ep and k % 2:
                v = -v
            if ux:
                b = b + v
            else:
                a = a + v
        return a, b

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        parts = []
        for c, ux, ep in self.terms:
            parts.append(f"({c})" + ("*X" if ux else "") + ("*eps" if ep else ""))
        return " + ".join(parts) or "0"


X = Alphabet.X()


def alphabet_presets(n: int = 2) -> dict[str, Alphabet]:
    """The standard alphabets; ``n`` sets the q-integer in X[n]_q."""
    from .qfield import M, q, qint
    z = gen("z")
    u = gen("u")
    return {
        "X": X,
        "-X": -X,
        "epsX": X.eps(),
        "X+u": X + u,
        "XM": X * M,
        "X/M": X / M,
        "X[n]_q": X * qint(n),
        "X(1-z)/(1-q)": X * ((1 - z) / (1 - q)),
    }


def plethysm(f: SymFunc, A: Alphabet) -> SymFunc:
    """f[A]; a ring homomorphism fixed by p_k -> p_k[A]."""
    images: dict[int, tuple[RatQT, RatQT]] = {}
    cache: dict[Partition, SymFunc] = {}

    def image(k):
        if k not in images:
            images[k] = A.power_image(k)
        return images[k]

    def p_image(lam: Partition) -> SymFunc:
        got = cache.get(lam)
        if got is not None:
            return got
        if not lam:
            val = one()
        else:
            a, b = image(lam[-1])
            rest = p_image(Partition(lam[:-1]))
            piece = {}
            if not a.is_zero():
                piece[Partition()] = a
            if not b.is_zero():
                piece[Partition((lam[-1],))] = b
            val = rest * SymFunc._raw(piece)
        cache[lam] = val
        return val

    out: dict[Partition, RatQT] = {}
    for lam, c in f.terms.items():
        for mu, d in p_image(lam).terms.items():
            v = c * d
            if mu in out:
                v = out[mu] + v
                if v.is_zero():
                    del out[mu]
                    continue
            out[mu] = v
    return SymFunc._raw(out)


def pleth_scalar(f: SymFunc, A: Alphabet) -> RatQT:
    """f[A] for an alphabet without X, as a field element."""
    if A.uses_x():
        raise ValueError("alphabet involves X")
    return plethysm(f, A).constant_term()


def translate(f: SymFunc, Y) -> SymFunc:
    """T_Y f = f[X + Y]."""
    Y = Y if isinstance(Y, Alphabet) else Alphabet.const(Y)
    return plethysm(f, X + Y)


def exp_pleth(A: Alphabet, maxdeg: int) -> SymFunc:
    """Exp[A] = sum_n h_n[A], truncated at n <= maxdeg."""
    out = SymFunc()
    for n in range(maxdeg + 1):
        out = out + plethysm(h(n), A)
    return out


def mult_series(Z, f: SymFunc, maxdeg: int) -> SymFunc:
    """P_Z f = Exp[ZX] f, keeping symmetric-function degree <= maxdeg."""
    Z = Z if isinstance(Z, Alphabet) else Alphabet.const(Z)
    lo = min(f.degrees(), default=0)
    ex = exp_pleth(X * Z, max(maxdeg - lo, 0))
    return (ex * f).truncate(maxdeg)


# ---------------------------------------------------------------------------
# two-alphabet expressions

def pleth_xy(f: SymFunc, scalar=1) -> dict[tuple[Partition, Partition], RatQT]:
    """f[X*Y*scalar] as a tensor: p_k[XY c] = c(q^k, t^k) p_k[X] p_k[Y]."""
    c = _coerce(scalar)
    out = {}
    for lam, v in f.terms.items():
        w = v
        for k in lam:
            w = w * c.subs_powers(k)
        if not w.is_zero():
            out[(lam, lam)] = w
    return out


def tensor(f: SymFunc, g: SymFunc) -> dict[tuple[Partition, Partition], RatQT]:
    return {(a, b): ca * cb for a, ca in f.terms.items() for b, cb in g.terms.items()}


def tensor_add(acc: dict, other: dict) -> dict:
    out = dict(acc)
    for key, v in other.items():
        w = out.get(key, ZERO) + v
        if w.is_zero():
            out.pop(key, None)
        else:
            out[key] = w
    return out


def random_p(n: int, rng) -> SymFunc:
    """A seeded-random power sum of degree n with small integer coefficients."""
    parts = partitions(n)
    out = SymFunc()
    for lam in rng.sample(parts, k=min(2, len(parts))):
        out = out + p(lam).scale(rng.randint(1, 5))
    return out


__all__ = [
    "Partition", "partitions", "partitions_upto", "character", "SymFunc", "one",
    "p", "h", "e", "s", "m", "e_lam", "h_lam", "basis_element", "hall", "star", "star_mod",
    "to_schur", "to_basis", "from_basis", "omega", "omega_bar", "perp", "Alphabet", "X",
    "alphabet_presets", "plethysm", "pleth_scalar", "translate", "exp_pleth", "mult_series",
    "pleth_xy", "tensor", "tensor_add", "random_p"
]
