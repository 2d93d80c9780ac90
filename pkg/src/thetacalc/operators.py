"""Operators on symmetric functions: nabla, Delta, Pi, Theta and friends.

Every diagonal operator goes through :func:`macdonald.apply_diagonal`
(expand in H~, scale, resum).  Series operators in a formal parameter
(T_u, P_{z/M}, Delta_v, Theta~(z, v)) are exposed coefficient by coefficient,
which is how the identities consume them.
"""
from __future__ import annotations

import contextlib
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from . import macdonald as mac
from .qfield import M, ONE, ZERO, PoleError, RatQT, gen
from .symfunc import (
    Alphabet, Partition, SymFunc, X, alphabet_presets, basis_element, e, h,
    omega, omega_bar, partitions, perp, plethysm, pleth_scalar,
)

v = gen("v")

# ---------------------------------------------------------------------------
# mutation hooks (used to show the checks are not vacuous)

MUTATIONS = ("nabla_sign_flip", "drop_theta_tilde_v_factor")
_active: set[str] = set()


@contextlib.contextmanager
def perturb(name: str):
    if name not in MUTATIONS:
        raise ValueError(f"unknown mutation {name!r}; known: {', '.join(MUTATIONS)}")
    _active.add(name)
    try:
        yield
    finally:
        _active.discard(name)


def set_mutation(name: str | None) -> None:
    _active.clear()
    if name:
        if name not in MUTATIONS:
            raise ValueError(f"unknown mutation {name!r}")
        _active.add(name)


def active_mutations() -> frozenset:
    return frozenset(_active)


# ---------------------------------------------------------------------------
# small helpers

def fstar(f: SymFunc) -> SymFunc:
    """f* = f[X/M]."""
    return plethysm(f, X / M)


def phi(f: SymFunc) -> SymFunc:
    """f[MX]."""
    return plethysm(f, X * M)


def mult(f: SymFunc, F: SymFunc) -> SymFunc:
    return f * F


def skew(f: SymFunc, F: SymFunc) -> SymFunc:
    return perp(f, F)


def _as_sf(f) -> SymFunc:
    return f if isinstance(f, SymFunc) else SymFunc.scalar(f)


# ---------------------------------------------------------------------------
# spectra

def nabla_eigen(mu: Partition) -> RatQT:
    T = mac.stats(mu).T
    if "nabla_sign_flip" in _active:
        return T
    return -T if mu.size % 2 else T


@lru_cache(maxsize=4096)
def _delta_eigen(f: SymFunc, mu: Partition, primed: bool) -> RatQT:
    B = mac.stats(mu).B
    return pleth_scalar(f, Alphabet.const(B - 1 if primed else B))


def delta_eigen(f: SymFunc, mu, primed: bool = False) -> RatQT:
    return _delta_eigen(_as_sf(f), Partition(mu), primed)


def pi_eigen(mu: Partition) -> RatQT:
    return mac.stats(mu).Pi


@lru_cache(maxsize=None)
def _dv_eigen(mu: Partition, drop_corner: bool) -> RatQT:
    out = ONE
    for i, j in mu.cells():
        if drop_corner and (i, j) == (0, 0):
            continue
        out = out * (1 - v * RatQT.monomial(q=j, t=i))
    return out


def delta_v_eigen(mu: Partition, drop_corner: bool = False) -> RatQT:
    """prod over cells of (1 - v q^a' t^l'), i.e. sum_n (-v)^n e_n[B_mu]."""
    return _dv_eigen(Partition(mu), drop_corner)


def _inverse_spectrum(fn, label):
    def inv(mu):
        ev = fn(mu)
        if ev.is_zero():
            raise ZeroDivisionError(f"{label} is not invertible: eigenvalue 0 at {mu!r}")
        return ONE / ev
    return inv


# ---------------------------------------------------------------------------
# diagonal operators

def nabla(F: SymFunc, inverse: bool = False) -> SymFunc:
    spec = _inverse_spectrum(nabla_eigen, "nabla") if inverse else nabla_eigen
    return mac.apply_diagonal(F, spec)


def delta(f, F: SymFunc, primed: bool = False, inverse: bool = False) -> SymFunc:
    f = _as_sf(f)

    def spec(mu):
        return delta_eigen(f, mu, primed)

    if inverse:
        spec = _inverse_spectrum(spec, "Delta_f")
    return mac.apply_diagonal(F, spec)


def delta_prime(f, F: SymFunc, inverse: bool = False) -> SymFunc:
    return delta(f, F, primed=True, inverse=inverse)


def pi_op(F: SymFunc, inverse: bool = False) -> SymFunc:
    if not inverse:
        return mac.apply_diagonal(F, pi_eigen)
    if not F.constant_term().is_zero():
        raise ValueError("Pi^-1 is not defined on constants")
    return mac.apply_diagonal(F, lambda mu: ONE / pi_eigen(mu))


def theta(f, F: SymFunc) -> SymFunc:
    """Theta_f F, extended bilinearly over homogeneous components."""
    f = _as_sf(f)
    F = _as_sf(F)
    out = SymFunc()
    for k in f.degrees():
        fk = f.component(k)
        for n in F.degrees():
            Fn = F.component(n)
            if n == 0:
                if k == 0:
                    out = out + fk * Fn
                continue
            out = out + _theta_hom(fk, Fn)
    return out


@lru_cache(maxsize=2048)
def _theta_hom(fk: SymFunc, Fn: SymFunc) -> SymFunc:
    # homogeneous pieces recur across check instances; results are immutable
    return pi_op(fstar(fk) * pi_op(Fn, inverse=True))


def delta_v_series(F: SymFunc, inverse: bool = False, drop_corner: bool = False) -> SymFunc:
    """Delta_v = sum (-v)^n Delta_{e_n}; the inverse is sum v^n Delta_{h_n}."""
    if inverse:
        return mac.apply_diagonal(F, lambda mu: ONE / delta_v_eigen(mu, drop_corner))
    return mac.apply_diagonal(F, lambda mu: delta_v_eigen(mu, drop_corner))


def delta_uzv_coeff(n: int, F: SymFunc, inverse: bool = False) -> SymFunc:
    """Coefficient of (uz)^n in Delta_{uzv} (or its inverse) applied to F."""
    if inverse:
        return delta(h(n), F).scale(v ** n)
    return delta(e(n), F).scale((-v) ** n)


def theta_tilde(F: SymFunc, z_power: int, inverse: bool = False, limit: bool = False) -> SymFunc:
    """Coefficient of z^k in Theta~(z, v) F, or in its inverse.

    With ``limit`` the result is specialised at v = 1, which for the forward
    operator is (-1)^k Theta_{e_k} F.
    """
    if z_power < 0:
        raise ValueError("z_power must be >= 0")
    k = z_power
    drop = limit and "drop_theta_tilde_v_factor" in _active
    G = delta_v_series(F, inverse=True)
    if inverse:
        G = fstar(h(k)) * G
    else:
        G = fstar(e(k)).scale(-1 if k % 2 else 1) * G
    G = delta_v_series(G, drop_corner=drop)
    if limit:
        try:
            G = G.evaluate("v", 1)
        except PoleError as exc:
            raise PoleError(f"v -> 1 limit of Theta~ left a pole: {exc}") from None
    return G


# ---------------------------------------------------------------------------
# series in a formal parameter, one coefficient at a time

def T_coeff(k: int, F: SymFunc, sign: int = 1) -> SymFunc:
    """u^k coefficient of T_{sign*u} F: h_k^perp, or (-1)^k e_k^perp for sign -1."""
    if sign > 0:
        return perp(h(k), F)
    return perp(e(k), F).scale(-1 if k % 2 else 1)


def P_coeff(k: int, F: SymFunc, sign: int = 1) -> SymFunc:
    """z^k coefficient of P_{sign*z/M} F: h_k* F, or (-1)^k e_k* F."""
    if sign > 0:
        return fstar(h(k)) * F
    return (fstar(e(k)) * F).scale(-1 if k % 2 else 1)


def exp_scalar_coeff(k: int, A: Alphabet) -> RatQT:
    """Coefficient h_k[A] of Exp[A * w] in w^k, for a scalar alphabet A."""
    return pleth_scalar(h(k), A)


def delta_u_prime_coeff(k: int, F: SymFunc) -> SymFunc:
    """u^k coefficient of Delta'_u = Exp[u/M] Delta_u applied to F."""
    out = SymFunc()
    for a in range(k + 1):
        b = k - a
        c = exp_scalar_coeff(a, Alphabet.const(ONE / M))
        if c.is_zero():
            continue
        out = out + delta(e(b), F).scale(c * (-1 if b % 2 else 1))
    return out


# ---------------------------------------------------------------------------
# operator words

@dataclass(frozen=True)
class LinearOp:
    """A named operator; ``shift`` is its degree shift (None if not homogeneous)."""

    text: str
    fn: Callable[[SymFunc], SymFunc] = field(compare=False)
    shift: int | None = 0
    invertible: bool = False
    inverse_of: Callable[[], "LinearOp"] | None = field(default=None, compare=False)

    def __call__(self, F) -> SymFunc:
        return self.fn(_as_sf(F))

    def then(self, other: LinearOp) -> LinearOp:
        """self . other (other applied first)."""
        shift = None if self.shift is None or other.shift is None else self.shift + other.shift
        text = " . ".join(x for x in (self.text, other.text) if x)
        return LinearOp(text, lambda F: self.fn(other.fn(F)), shift)

    def inverse(self) -> LinearOp:
        if not self.invertible or self.inverse_of is None:
            raise ValueError(f"operator {self.text} is not invertible")
        return self.inverse_of()


IDENTITY = LinearOp("", lambda F: F, 0, True, lambda: IDENTITY)


_BASIS_TOKEN = re.compile(r"^(?P<b>[ehpsmH])(?:(?P<n>\d+)|\[(?P<parts>[\d,\s]*)\])(?P<star>\*?)$")


def parse_symfunc(token: str) -> SymFunc:
    """``e3``, ``h[2,1]``, ``s[2,1]``, ``H[3,1]``, ``p2*`` (trailing * = plethysm by X/M), or an integer."""
    tok = token.strip()
    if re.fullmatch(r"-?\d+", tok):
        return SymFunc.scalar(int(tok))
    mt = _BASIS_TOKEN.match(tok)
    if not mt:
        raise ValueError(f"cannot parse symmetric function {token!r}")
    if mt["n"] is not None:
        lam = Partition((int(mt["n"]),)) if int(mt["n"]) else Partition()
    else:
        body = mt["parts"].replace(" ", "")
        lam = Partition(int(x) for x in body.split(",") if x) if body else Partition()
    if mt["b"] == "H":
        f = mac.modified_H(lam)
    else:
        f = basis_element(mt["b"], lam)
    return fstar(f) if mt["star"] else f


def _diag(text, fn, inv_fn, shift=0):
    def make():
        return LinearOp(text, fn, shift, inv_fn is not None,
                        (lambda: LinearOp(text + "^-1", inv_fn, -shift, True, make)) if inv_fn else None)
    return make()


def make_atom(name: str, arg: str | None = None, power: int = 1) -> LinearOp:
    """One operator atom, optionally inverted with ``power=-1``."""
    f = parse_symfunc(arg) if arg is not None else None
    deg = f.max_degree() if f is not None and f.is_homogeneous() else None
    label = f"{name}({arg})" if arg is not None else name
    if name == "nabla":
        op = _diag(label, lambda F: nabla(F), lambda F: nabla(F, inverse=True))
    elif name == "pi":
        op = _diag(label, lambda F: pi_op(F), lambda F: pi_op(F, inverse=True))
    elif name == "delta":
        op = _diag(label, lambda F: delta(f, F), lambda F: delta(f, F, inverse=True))
    elif name in ("deltap", "delta_prime"):
        op = _diag(label, lambda F: delta_prime(f, F), lambda F: delta_prime(f, F, inverse=True))
    elif name == "theta":
        op = LinearOp(label, lambda F: theta(f, F), deg)
    elif name == "mult":
        op = LinearOp(label, lambda F: f * F, deg)
    elif name == "skew":
        op = LinearOp(label, lambda F: perp(f, F), None if deg is None else -deg)
    elif name == "omega":
        op = _diag(label, omega, omega)
    elif name == "omegabar":
        op = _diag(label, omega_bar, omega_bar)
    elif name == "pleth":
        presets = alphabet_presets()
        if arg not in presets:
            raise ValueError(f"unknown alphabet {arg!r}; known: {', '.join(presets)}")
        A = presets[arg]
        op = LinearOp(label, lambda F: plethysm(F, A), 0)
    elif name == "scalar":
        from .qfield import parse_ratqt
        c = parse_ratqt(arg)
        op = _diag(label, lambda F: F.scale(c), (lambda F: F.scale(ONE / c)) if not c.is_zero() else None)
    else:
        raise ValueError(f"unknown operator {name!r}")
    if power == -1:
        return op.inverse()
    if power != 1:
        raise ValueError("only powers 1 and -1 are supported")
    return op


_ATOM = re.compile(r"^(?P<name>[a-z_]+)(?:\((?P<arg>[^()]*)\))?(?:\^(?P<pow>-?1))?$")


def parse_atom(text: str) -> LinearOp:
    mt = _ATOM.match(text.strip())
    if not mt:
        raise ValueError(f"cannot parse operator {text!r}")
    return make_atom(mt["name"], mt["arg"], int(mt["pow"] or 1))


def op_from_word(word) -> LinearOp:
    """Compose atoms; the rightmost atom is applied first.

    ``word`` is a list of LinearOp / atom strings, or a string in the text
    form ``skew(h2) . theta(e3) . pi^-1``.
    """
    if isinstance(word, str):
        word = [w for w in re.split(r"\s*\.\s*|\s+", word.strip()) if w]
    out = IDENTITY
    for atom in word:
        op = atom if isinstance(atom, LinearOp) else parse_atom(atom)
        out = out.then(op) if out is not IDENTITY else op
    return out


__all__ = [
    "MUTATIONS", "perturb", "set_mutation", "active_mutations", "fstar", "phi", "mult", "skew",
    "nabla", "nabla_eigen", "delta", "delta_prime", "delta_eigen", "pi_op", "pi_eigen", "theta",
    "delta_v_series", "delta_v_eigen", "delta_uzv_coeff", "theta_tilde", "T_coeff", "P_coeff",
    "exp_scalar_coeff", "delta_u_prime_coeff", "LinearOp", "IDENTITY", "parse_symfunc",
    "make_atom", "parse_atom", "op_from_word", "v",
]
