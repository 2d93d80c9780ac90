"""Registry of executable identity checks.

Each check enumerates a finite list of parameter assignments (bounded by
``Bound``) and, for every assignment, computes both sides exactly and compares
canonical forms.  Operator identities are applied to a spanning set of inputs:
all H~_mu of the relevant degree plus e_n and a seeded random power sum.
"""
from __future__ import annotations

import difflib
import fnmatch
import itertools
import random
import time
from functools import lru_cache
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

from . import macdonald as mac
from . import operators as ops
from .qfield import (
    M, ONE, ZERO, RatQT, binom2, gen, qbinom, qint, qrising, q, t, tint,
)
from .symfunc import (
    Alphabet, Partition, SymFunc, X, e, h, hall, omega, omega_bar, one, p,
    partitions, perp, plethysm, pleth_scalar, pleth_xy, random_p, s, star,
    tensor, tensor_add, translate, exp_pleth, mult_series,
)

u = gen("u")
v = gen("v")
x = gen("x")
z = gen("z")


class UnknownCheckError(KeyError):
    def __init__(self, name, suggestions):
        hint = f"; did you mean: {', '.join(suggestions)}" if suggestions else ""
        super().__init__(f"unknown check {name!r}{hint}")
        self.name = name
        self.suggestions = suggestions

    def __str__(self):
        return self.args[0]


@dataclass(frozen=True)
class Bound:
    N: int = 4
    qbound: int = 8

    @property
    def D(self) -> int:
        """Largest symmetric-function degree any instance may touch."""
        return min(2 * self.N, mac.MAX_DEGREE)


@dataclass
class Check:
    name: str
    group: str
    ref: str
    params: str
    instances: Callable[[Bound], list[dict]] = field(repr=False)
    evaluate: Callable[[dict], Any] = field(repr=False)


@dataclass
class CheckResult:
    name: str
    ref: str
    instances_run: int
    status: str
    counterexample: dict | None = None
    elapsed_ms: float = 0.0

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "name": self.name,
            "ref": self.ref,
            "instances": self.instances_run,
            "status": self.status,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        out["ms"] = round(self.elapsed_ms, 1) if timings else 0
        return out


# ---------------------------------------------------------------------------
# shorthand used by the checks

def qb(n, k):
    return qbinom(n, k)


def qp(k):
    return RatQT.monomial(q=k)


def tp(k):
    return RatQT.monomial(t=k)


def sgn(k):
    return -1 if k % 2 else 1


def H(mu) -> SymFunc:
    if isinstance(mu, int):
        if mu < 0:
            return SymFunc()
        mu = (mu,) if mu else ()
    return mac.modified_H(Partition(mu))


def E(n, k) -> SymFunc:
    return mac.enk0(n, k)


def eX(m, k) -> SymFunc:
    """e_m[X [k]_q]."""
    if m < 0 or k < 0:
        return SymFunc()
    return plethysm(e(m), X * qint(k))


def Th(f, F) -> SymFunc:
    return ops.theta(f, F)


def De(f, F) -> SymFunc:
    return ops.delta(f, F)


def Dp(f, F) -> SymFunc:
    return ops.delta_prime(f, F)


def hp(j, F) -> SymFunc:
    return perp(h(j), F) if j >= 0 else SymFunc()


def ep(j, F) -> SymFunc:
    return perp(e(j), F) if j >= 0 else SymFunc()


def st(f) -> SymFunc:
    return ops.fstar(f)


def Pi(F) -> SymFunc:
    return ops.pi_op(F)


def alpha(n) -> RatQT:
    return RatQT.coerce(sgn(n - 1)) / (qint(n) * tint(n))


def scal(f, A) -> RatQT:
    return pleth_scalar(f, Alphabet.const(A))


def B(mu) -> RatQT:
    return mac.stats(mu).B


def total(terms) -> SymFunc:
    out = SymFunc()
    for term in terms:
        out = out + term
    return out


def rsum(terms) -> RatQT:
    out = ZERO
    for term in terms:
        out = out + term
    return out


def t0(F: SymFunc) -> SymFunc:
    return F.evaluate("t", 0)


def schur_basis(n):
    return [(f"s{list(lam)}", s(lam)) for lam in partitions(n)]


def input_labels(n: int) -> list[str]:
    """Spanning inputs of degree n: every H~_mu, plus e_n and a random power sum."""
    if n == 0:
        return ["1"]
    return [f"H{list(mu)}" for mu in partitions(n)] + [f"e{n}", f"rand{n}"]


def make_input(label: str) -> SymFunc:
    if label == "1":
        return one()
    if label.startswith("H["):
        body = label[2:-1]
        return H(tuple(int(x) for x in body.split(",") if x.strip()))
    if label.startswith("rand"):
        n = int(label[4:])
        return random_p(n, random.Random(7919 * n + 1))
    if label.startswith("e"):
        return e(int(label[1:]))
    if label.startswith("s["):
        body = label[2:-1]
        return s(tuple(int(x) for x in body.split(",") if x.strip()))
    raise ValueError(f"unknown input label {label!r}")


def grid(ranges: dict, cond=None) -> list[dict]:
    keys = list(ranges)
    out = []
    for combo in itertools.product(*(ranges[k] for k in keys)):
        d = dict(zip(keys, combo))
        if cond is None or cond(d):
            out.append(d)
    return out


def with_inputs(base: list[dict], degree_of, key: str = "F") -> list[dict]:
    out = []
    for d in base:
        for lab in input_labels(degree_of(d)):
            dd = dict(d)
            dd[key] = lab
            out.append(dd)
    return out


def with_schur(base: list[dict], degree_of, key: str) -> list[dict]:
    out = []
    for d in base:
        n = degree_of(d)
        for lam in partitions(n):
            dd = dict(d)
            dd[key] = f"s{list(lam)}"
            out.append(dd)
    return out


def parts_upto(n, nonempty=False):
    return [mu for k in range(1 if nonempty else 0, n + 1) for mu in partitions(k)]


# ---------------------------------------------------------------------------
# registry

_CATALOG: list[Check] = []


def _register(name, group, ref, params, instances):
    def deco(fn):
        _CATALOG.append(Check(name, group, ref, params, instances, fn))
        return fn
    return deco


def builtin_catalog() -> list[Check]:
    return list(_CATALOG)


def get_check(name: str) -> Check:
    for c in _CATALOG:
        if c.name == name:
            return c
    names = [c.name for c in _CATALOG]
    raise UnknownCheckError(name, difflib.get_close_matches(name, names, n=3, cutoff=0.5))


def select(pattern: str | None) -> list[Check]:
    """Checks whose name or group tag matches the glob ``pattern``."""
    if not pattern:
        return builtin_catalog()
    return [c for c in _CATALOG if fnmatch.fnmatchcase(c.name, pattern) or fnmatch.fnmatchcase(c.group, pattern)]


def R(n):
    return range(n + 1)


# ===========================================================================
# q-lemmas

@_register("q-recurrence", "q-lemmas", 'qrecurrence: [n,k] = q^k [n-1,k] + [n-1,k-1] = [n-1,k] + q^(n-k) [n-1,k-1]',
           "0 <= k <= n <= qbound, n >= 1",
           lambda b: grid({"n": range(1, b.qbound + 1), "k": R(b.qbound)}, lambda d: d["k"] <= d["n"]))
def _q_recurrence(d):
    n, k = d["n"], d["k"]
    return [("first", qb(n, k), qp(k) * qb(n - 1, k) + qb(n - 1, k - 1)),
            ("second", qb(n, k), qb(n - 1, k) + qp(n - k) * qb(n - 1, k - 1))]


@_register("q-binomial-thm", "q-lemmas", 'qbinom: sum_j (-x)^j q^C(j,2) [n,j] = (x;q)_n',
           "0 <= n <= qbound, x a formal variable",
           lambda b: grid({"n": R(b.qbound)}))
def _q_binomial_thm(d):
    n = d["n"]
    lhs = rsum((-x) ** j * qp(binom2(j)) * qb(n, j) for j in range(n + 1))
    return lhs, qrising(x, n)


@_register("q-chu-vandermonde", "q-lemmas", 'qChuVander: sum_j q^((n-j)(k-j)) [n,j][m,k-j] = [m+n,k]',
           "0 <= m, n, k <= qbound",
           lambda b: grid({"m": R(b.qbound), "n": R(b.qbound), "k": R(b.qbound)}))
def _q_chu(d):
    m, n, k = d["m"], d["n"], d["k"]
    lhs = rsum(qp((n - j) * (k - j)) * qb(n, j) * qb(m, k - j) for j in range(k + 1))
    return lhs, qb(m + n, k)


@_register("lemma-1-4-11", "q-lemmas", 'first_qlemma: sum_r [i-1,r-1][r+s+a-1,s-1] q^(C(r,2)+r-ir) (-1)^(i-r) = q^(C(i,2)+(i-1)a) [s+a,i+a]',
           "1 <= i <= qbound, -i <= a <= qbound, 0 <= s <= qbound, s + a >= 0",
           lambda b: [{"i": i, "a": a, "s": s_} for i in range(1, b.qbound + 1)
                      for a in range(-i, b.qbound + 1) for s_ in R(b.qbound) if s_ + a >= 0])
def _first_qlemma(d):
    i, a, s_ = d["i"], d["a"], d["s"]
    lhs = rsum(qb(i - 1, r - 1) * qb(r + s_ + a - 1, s_ - 1) * qp(binom2(r) + r - i * r) * sgn(i - r)
               for r in range(1, i + 1))
    return lhs, qp(binom2(i) + (i - 1) * a) * qb(s_ + a, i + a)


@_register("lemma-elem", "q-lemmas", 'lemmaelem: sum_c [i-a,i-c][c-a+b-1,c-1] q^(C(c,2)+c-ic) (-1)^(i-c) = [b-1,i-1] q^(C(i,2)-a(i-1))',
           "0 <= i, a <= qbound, 1 <= b <= qbound, i >= a, b >= a",
           lambda b: grid({"i": R(b.qbound), "a": R(b.qbound), "b": range(1, b.qbound + 1)},
                          lambda d: d["i"] >= d["a"] and d["b"] >= d["a"]))
def _lemma_elem(d):
    i, a, b_ = d["i"], d["a"], d["b"]
    lhs = rsum(qb(i - a, i - c) * qb(c - a + b_ - 1, c - 1) * qp(binom2(c) + c - i * c) * sgn(i - c)
               for c in range(a, i + 1))
    return lhs, qb(b_ - 1, i - 1) * qp(binom2(i) - a * (i - 1))


@_register("lemma-elem2", "q-lemmas", 'lemelem2: three-binomial sum over s equals a two-term closed form',
           "0 <= r, k, a, b <= qbound",
           lambda b: grid({"r": R(b.qbound), "k": R(b.qbound), "a": R(b.qbound), "b": R(b.qbound)}))
def _lemma_elem2(d):
    r, k, a, b_ = d["r"], d["k"], d["a"], d["b"]
    lhs = rsum(qp(binom2(r - s_)) * qb(r, r - s_) * qp(binom2(a)) * qb(k - s_, a)
               * qp(binom2(k - s_) - a * (k - s_ - 1)) * qb(b_ - 1, k - s_ - 1) for s_ in range(r + 1))
    rhs = (qp(binom2(k - r - a)) * qb(b_ - 1, a) * qb(b_ + r - a - 1, k - a - 1)
           + qp(binom2(k - r - a + 1)) * qb(b_ - 1, a - 1) * qb(b_ + r - a, k - a))
    return lhs, rhs


@_register("lemma-elem3", "q-lemmas", 'lemelem3: two-term sum equals q^C(k-a,2) [k,a][b-1,k-1]',
           "0 <= k, a, b <= qbound",
           lambda b: grid({"k": R(b.qbound), "a": R(b.qbound), "b": R(b.qbound)}))
def _lemma_elem3(d):
    k, a, b_ = d["k"], d["a"], d["b"]
    lhs = (qp(binom2(k - a)) * qb(b_ - 1, a) * qb(b_ - a - 1, k - a - 1)
           + qp(binom2(k - a + 1)) * qb(b_ - 1, a - 1) * qb(b_ - a, k - a))
    return lhs, qp(binom2(k - a)) * qb(k, a) * qb(b_ - 1, k - 1)


# ===========================================================================
# Macdonald basics

def _mu(d, key="mu"):
    return Partition(d[key])


@_register("mac-normalization", "macdonald", 'MacNormal: h_n^perp H_mu = 1',
           "mu with |mu| <= N",
           lambda b: [{"mu": list(mu)} for mu in parts_upto(b.N)])
def _mac_norm(d):
    mu = _mu(d)
    return hp(mu.size, H(mu)), one()


@_register("mac-orthogonality", "macdonald", "H_orthogonality: <H_lam, H_mu>_* = w_mu delta",
           "pairs lambda, mu of equal size <= N",
           lambda b: [{"lam": list(a), "mu": list(c)} for n in R(b.N)
                      for a in partitions(n) for c in partitions(n)])
def _mac_orth(d):
    lam, mu = _mu(d, "lam"), _mu(d)
    return star(H(lam), H(mu)), (mac.stats(mu).w if lam == mu else ZERO)


@_register("mac-cauchy", "macdonald", 'Mac_Cauchy: e_n[XY/M] = sum_mu H_mu[X] H_mu[Y] / w_mu',
           "0 <= n <= N, compared as a tensor in X and Y",
           lambda b: grid({"n": R(b.N)}))
def _mac_cauchy(d):
    n = d["n"]
    lhs = pleth_xy(e(n), ONE / M)
    rhs: dict = {}
    for mu in partitions(n):
        Hm = H(mu)
        rhs = tensor_add(rhs, {k: c / mac.stats(mu).w for k, c in tensor(Hm, Hm).items()})
    return lhs, rhs


@_register("mac-row", "macdonald", 'Hnhn: H_(n) = (q;q)_n h_n[X/(1-q)]',
           "0 <= n <= N", lambda b: grid({"n": R(b.N)}))
def _mac_row(d):
    n = d["n"]
    return H(n), plethysm(h(n), X / (1 - q)).scale(qrising(q, n))


@_register("mac-1mv", "macdonald", "H1mv: H_lam[1-v] = prod (1 - v q^a' t^l')",
           "lambda with |lambda| <= N, v formal",
           lambda b: [{"lam": list(mu)} for mu in parts_upto(b.N)])
def _mac_1mv(d):
    lam = _mu(d, "lam")
    prod = ONE
    for i, j in lam.cells():
        prod = prod * (1 - v * RatQT.monomial(q=j, t=i))
    return scal(H(lam), 1 - v), prod


@_register("mac-hooks", "macdonald", 'ehMacId: <H_lam, e_k h_(n-k)> = e_k[B_lam], <H_lam, s_(n-k,1^k)> = e_k[B_lam - 1]',
           "lambda |- n <= N, 0 <= k <= n",
           lambda b: [{"lam": list(mu), "k": k} for mu in parts_upto(b.N, True) for k in R(mu.size)])
def _mac_hooks(d):
    lam, k = _mu(d, "lam"), d["k"]
    n = lam.size
    Hl = H(lam)
    out = [("e_k h_(n-k)", hall(Hl, e(k) * h(n - k)), scal(e(k), B(lam)))]
    if k < n:
        hook = s((n - k,) + (1,) * k)
        out.append(("hook schur", hall(Hl, hook), scal(e(k), B(lam) - 1)))
    return out


@_register("nabla-omegabar", "macdonald", 'nablaomegabar: nabla omegabar H_mu = (-1)^|mu| H_mu',
           "mu with |mu| <= N",
           lambda b: [{"mu": list(mu)} for mu in parts_upto(b.N)])
def _nabla_omegabar(d):
    mu = _mu(d)
    Hm = H(mu)
    return ops.nabla(omega_bar(Hm)), Hm.scale(sgn(mu.size))


@_register("pi-omegabar", "macdonald", 'PiomegabarPi: omegabar Pi omegabar F = -nabla^-1 Pi F',
           "1 <= n <= N, F in the spanning set of degree n",
           lambda b: with_inputs(grid({"n": range(1, b.N + 1)}), lambda d: d["n"]))
def _pi_omegabar(d):
    F = make_input(d["F"])
    return omega_bar(Pi(omega_bar(F))), -ops.nabla(Pi(F), inverse=True)


@_register("pi-family", "macdonald", 'Pien/Pienen/Pienhn/omegapn: Pi e_n* = alpha_n p_n / M and its companions (h_n form with exponent n-1)',
           "1 <= n <= N", lambda b: grid({"n": range(1, b.N + 1)}))
def _pi_family(d):
    n = d["n"]
    pien = Pi(st(e(n)))
    target = p(n).scale(alpha(n) / M)
    out = [
        ("Pi e_n* = alpha_n p_n / M", pien, target),
        ("omega p_n* = alpha_n p_n / M", omega(st(p(n))), target),
        ("Delta_e1 Pi e_n* = e_n / M", De(e(1), pien), e(n).scale(ONE / M)),
        # the exponent is n-1; with 1-n the two sides already differ at n = 2
        ("(-qt)^(n-1) Delta_en^-1 Delta_e(n-1) Pi e_n* = h_n / M",
         ops.delta(e(n), De(e(n - 1), pien), inverse=True).scale((-q * t) ** (n - 1)), h(n).scale(ONE / M)),
        ("omega p_n = [n]_q [n]_t M Pi e_n*", omega(p(n)), pien.scale(qint(n) * tint(n) * M)),
        ("omega p_n = sum [n]_q/[k]_q E_nk", omega(p(n)),
         total(E(n, k).scale(qint(n) / qint(k)) for k in range(1, n + 1))),
    ]
    return out


@_register("enk-def", "macdonald", 'Enkdef: e_n[X(1-z)/(1-q)] = sum_k (z;q)_k/(q;q)_k E_nk',
           "1 <= n <= N, z formal", lambda b: grid({"n": range(1, b.N + 1)}))
def _enk_def(d):
    n = d["n"]
    lhs = plethysm(e(n), X * ((1 - z) / (1 - q)))
    rhs = total(E(n, k).scale(qrising(z, k) / qrising(q, k)) for k in range(1, n + 1))
    return lhs, rhs


@_register("enk-substitution", "macdonald", 'enEnkformula: e_n[X[j]_q] = sum_k [k+j-1,k] E_nk',
           "1 <= n <= N, 0 <= j <= N", lambda b: grid({"n": range(1, b.N + 1), "j": R(b.N)}))
def _enk_subs(d):
    n, j = d["n"], d["j"]
    return eX(n, j), total(E(n, k).scale(qb(k + j - 1, k)) for k in range(1, n + 1))


# ===========================================================================
# series and plethystic operators

def _fz_inputs(b: Bound):
    return with_inputs(grid({"k": R(b.N), "n": R(b.N)}, lambda d: d["n"] + d["k"] <= b.N), lambda d: d["n"])


@_register("ty-pz-commutation", "series", 'translationmultiplication: T_Y P_Z = Exp[YZ] P_Z T_Y',
           "Y = u, Z = z/M; coefficient of z^k, k <= N; F spanning of degree n <= N",
           _fz_inputs)
def _ty_pz(d):
    k, F = d["k"], make_input(d["F"])
    lhs = translate(ops.P_coeff(k, F), u)
    TF = translate(F, u)
    rhs = total(ops.P_coeff(k - a, TF).scale(u ** a * scal(h(a), ONE / M)) for a in range(k + 1))
    return lhs, rhs


def _tp_exp_inputs(b: Bound):
    return with_inputs(grid({"n": R(b.N), "Y": ["u", "-u", "u+v"]}), lambda d: d["n"])


_ALPH = {"u": u, "-u": -u, "u+v": u + v}


@_register("ty-pz-expansions", "series", 'defTY/defPu: T_Y = sum s_mu[Y] s_mu^perp, P_Z = sum s_mu[Z] s_mu',
           "Y in {u, -u, u+v}, Z = Y/M; F spanning of degree n <= N; P_Z truncated at degree N",
           _tp_exp_inputs)
def _ty_pz_exp(d):
    F = make_input(d["F"])
    n = d["F"] != "1" and max(F.degrees()) or 0
    Y = _ALPH[d["Y"]]
    Dmax = _CURRENT_BOUND.N
    out = []
    TY = total(ops.skew(s(lam), F).scale(scal(s(lam), Y)) for lam in parts_upto(n))
    out.append(("T_Y = sum s[Y] s^perp", translate(F, Y), TY))
    Z = Y / M
    PZ = total((s(lam) * F).scale(scal(s(lam), Z)) for lam in parts_upto(Dmax - n))
    out.append(("P_Z = sum s[Z] s", mult_series(Z, F, Dmax), PZ.truncate(Dmax)))
    if d["Y"] == "u":
        out.append(("T_u = sum u^k h_k^perp", translate(F, u),
                    total(hp(k, F).scale(u ** k) for k in range(n + 1))))
        PmuM = mult_series(-u / M, F, Dmax)
        out.append(("P_(-u/M) = sum (-u)^k e_k*", PmuM,
                    total((st(e(k)) * F).scale((-u) ** k) for k in range(Dmax - n + 1))))
    return out


def _five_inputs(b: Bound, dual: bool):
    base = grid({"j": R(b.N), "n": R(b.N)}, lambda d: (d["n"] + d["j"] <= b.N) if dual else True)
    return with_inputs(base, lambda d: d["n"])


@_register("five-term", "series", '5trel: nabla^-1 T_(uv) nabla = Delta_v^-1 T_u Delta_v T_(-u)',
           "coefficient of u^j, j <= N; v formal; F spanning of degree n <= N",
           lambda b: _five_inputs(b, False))
def _five_term(d):
    j, F = d["j"], make_input(d["F"])
    lhs = ops.nabla(hp(j, ops.nabla(F)), inverse=True).scale(v ** j)
    rhs = SymFunc()
    for a in range(j + 1):
        b_ = j - a
        G = ep(b_, F).scale(sgn(b_))
        G = ops.delta_v_series(G)
        G = hp(a, G)
        rhs = rhs + ops.delta_v_series(G, inverse=True)
    return lhs, rhs


@_register("five-term-dual", "series", 'dual5trel: nabla P_(-uv/M) nabla^-1 = P_(u/M) Delta_v P_(-u/M) Delta_v^-1',
           "coefficient of u^j, j <= N; v formal; F spanning of degree n <= N, n + j <= N",
           lambda b: _five_inputs(b, True))
def _five_term_dual(d):
    j, F = d["j"], make_input(d["F"])
    lhs = ops.nabla(st(e(j)) * ops.nabla(F, inverse=True)).scale((-v) ** j)
    rhs = SymFunc()
    for a in range(j + 1):
        b_ = j - a
        G = ops.delta_v_series(F, inverse=True)
        G = (st(e(b_)) * G).scale(sgn(b_))
        G = ops.delta_v_series(G)
        rhs = rhs + st(h(a)) * G
    return lhs, rhs


def _pm1_T1(F: SymFunc, d: int) -> SymFunc:
    """X-degree d part of P_{-1/M} T_1 F."""
    T1 = translate(F, 1)
    return total((st(e(i)) * T1.component(d - i)).scale(sgn(i)) for i in range(d + 1))


@_register("sinverse-deltaprime", "series", "SinverseDeltaprime: nabla^-1 T_u nabla P_(-1/M) T_1 = P_(-1/M) T_1 Delta'_u",
           "coefficient of u^k, k <= N; X-degree d with d + k <= N; F spanning of degree n <= N",
           lambda b: with_inputs(grid({"k": R(b.N), "n": R(b.N)}), lambda d: d["n"]))
def _sinv(d):
    k, F = d["k"], make_input(d["F"])
    Dmax = _CURRENT_BOUND.N
    Hk = ops.delta_u_prime_coeff(k, F)
    out = []
    for deg in range(Dmax - k + 1):
        lhs = ops.nabla(hp(k, ops.nabla(_pm1_T1(F, deg + k))), inverse=True)
        rhs = _pm1_T1(Hk, deg)
        out.append((f"X-degree {deg}", lhs, rhs))
    return out


@_register("tesler", "series", 'TeslerId: T_(-1/z) P_(z/M) nabla^-1 Exp[-zX D_mu/M] = H_mu[zX]',
           "mu with |mu| <= N; z formal; series truncated at X-degree N",
           lambda b: [{"mu": list(mu)} for mu in parts_upto(b.N)])
def _tesler(d):
    mu = _mu(d)
    Dmax = _CURRENT_BOUND.N
    Dm = mac.stats(mu).D
    E_ = exp_pleth(X * (-z * Dm / M), Dmax)
    S = mult_series(Alphabet.const(z / M), ops.nabla(E_, inverse=True), Dmax)
    target = plethysm(H(mu), X * z + 1)
    final = translate(S, Alphabet.const(-1 / z))
    return [("P_(z/M) nabla^-1 Exp[-zXD/M] = H[zX+1] up to degree N", S, target),
            ("T_(-1/z) of the truncation = H[zX]", final, plethysm(H(mu), X * z))]


# ===========================================================================
# main identity and its direct consequences

def _exp_coeff(n, A) -> RatQT:
    return scal(h(n), A)


def _main_instances(b: Bound):
    out = []
    for n in R(b.N):
        for k in R(b.N - n):
            for j in R(b.N - k):
                for lab in input_labels(n):
                    out.append({"n": n, "k": k, "j": j, "F": lab})
    return out


def hjek_rhs(j, k, F, theta_fn=None):
    theta_fn = theta_fn or (lambda kk, G: Th(e(kk), G))
    return total(theta_fn(k - j + r, De(e(j - r), hp(r, F))) for r in range(j + 1) if k - j + r >= 0)


@_register("main-identity", "main", 'mainidentity: Theta~(z,v)^-1 T_u Theta~(z,v) = Exp[uz(v-1)/M] Delta_(uzv) T_u, coefficientwise',
           "coefficient of u^j z^k, j + k <= N; v formal; F spanning of degree n <= N - k; "
           "plus the v -> 1 consistency with theta-commutation-h-e",
           _main_instances)
def _main_identity(d):
    j, k, F = d["j"], d["k"], make_input(d["F"])
    lhs = SymFunc()
    for a in range(k + 1):
        b_ = k - a
        G = ops.theta_tilde(F, b_)
        G = hp(j, G)
        lhs = lhs + ops.theta_tilde(G, a, inverse=True)
    rhs = SymFunc()
    if j >= k:
        base = hp(j - k, F)
        for n1 in range(k + 1):
            n2 = k - n1
            c = _exp_coeff(n1, (v - 1) / M)
            if c.is_zero():
                continue
            rhs = rhs + ops.delta_uzv_coeff(n2, base).scale(c)
    out = [("u^j z^k coefficient", lhs, rhs)]
    # v -> 1: (-1)^k h_j^perp Theta_ek = sum_r (-1)^(k-j+r) Theta_e(k-j+r) (-1)^(j-r) Delta_e(j-r) h_r^perp
    lim_lhs = hp(j, ops.theta_tilde(F, k, limit=True))
    lim_rhs = total(ops.theta_tilde(De(e(j - r), hp(r, F)), k - j + r, limit=True).scale(sgn(j - r))
                    for r in range(j + 1) if k - j + r >= 0)
    out.append(("v -> 1 limit", lim_lhs, lim_rhs))
    out.append(("v -> 1 limit agrees with Theta_ek", lim_lhs.scale(sgn(k)), hp(j, Th(e(k), F))))
    return out


@_register("tesler-theta", "main", 'vThetareciprocity: [Exp[uz(1-v)/M] T_u Theta~ H_mu]_(u^k) = Exp[-zX(v D_mu + 1)/M]',
           "mu |- k <= N; coefficient of z^m, m <= N; v formal",
           lambda b: [{"mu": list(mu), "m": m} for mu in parts_upto(b.N) for m in R(b.N)
                      if mu.size + m <= b.D])
def _tesler_theta(d):
    mu, m = _mu(d), d["m"]
    k = mu.size
    Hm = H(mu)
    lhs = SymFunc()
    for n_ in range(min(k, m) + 1):
        c = _exp_coeff(n_, (1 - v) / M)
        if c.is_zero():
            continue
        lhs = lhs + hp(k - n_, ops.theta_tilde(Hm, m - n_)).scale(c)
    Dm = mac.stats(mu).D
    rhs = plethysm(h(m), X * (-(v * Dm + 1) / M))
    return lhs, rhs


@_register("theta-reciprocity", "main", 'Thetareciprocity: h_k^perp Theta_(e_m) H_mu = e_m[X B_mu]',
           "mu |- k <= N, 0 <= m <= N",
           lambda b: [{"mu": list(mu), "m": m} for mu in parts_upto(b.N) for m in R(b.N)])
def _theta_rec(d):
    mu, m = _mu(d), d["m"]
    return hp(mu.size, Th(e(m), H(mu))), plethysm(e(m), X * B(mu))


def _vd_ratio_pairs(b: Bound):
    return [{"lam": list(a), "mu": list(c)} for a in parts_upto(b.N) for c in parts_upto(b.N)]


@_register("mac-koornwinder", "main", 'vMacRec: H_lam[v D_mu + 1] prod_mu (1 - v q t) = H_mu[v D_lam + 1] prod_lam (1 - v q t)',
           "lambda, mu with sizes <= N; v formal", _vd_ratio_pairs)
def _koornwinder(d):
    lam, mu = _mu(d, "lam"), _mu(d)
    sl, sm = mac.stats(lam), mac.stats(mu)
    lhs = scal(H(lam), v * sm.D + 1) * ops.delta_v_eigen(mu)
    rhs = scal(H(mu), v * sl.D + 1) * ops.delta_v_eigen(lam)
    return lhs, rhs


@_register("mac-reciprocity", "main", 'MacRec: Pi_mu H_lam[M B_mu] = Pi_lam H_mu[M B_lam]',
           "nonempty lambda, mu with sizes <= N",
           lambda b: [{"lam": list(a), "mu": list(c)} for a in parts_upto(b.N, True) for c in parts_upto(b.N, True)])
def _mac_rec(d):
    lam, mu = _mu(d, "lam"), _mu(d)
    sl, sm = mac.stats(lam), mac.stats(mu)
    return sm.Pi * scal(H(lam), M * sm.B), sl.Pi * scal(H(mu), M * sl.B)


def _jk_inputs(b: Bound):
    base = grid({"j": R(b.N), "k": R(b.N), "n": R(b.N)}, lambda d: d["n"] + d["k"] <= b.D)
    return with_inputs(base, lambda d: d["n"])


@_register("theta-commutation-h-e", "main", 'hjek/ejek/hjhk: h_j^perp and e_j^perp moved past Theta_(e_k), Theta_(h_k)',
           "0 <= j, k <= N; F spanning of degree n <= N with n + k <= D", _jk_inputs)
def _theta_comm(d):
    j, k, F = d["j"], d["k"], make_input(d["F"])
    rng = range(j + 1)
    return [
        ("hjek", hp(j, Th(e(k), F)), hjek_rhs(j, k, F)),
        ("ejek", ep(j, Th(e(k), F)), total(Th(e(k - j + r), ep(r, De(h(j - r), F))) for r in rng)),
        ("hjhk", hp(j, Th(h(k), F)), total(De(h(j - r), Th(h(k - j + r), hp(r, F))) for r in rng)),
    ]


@_register("theta-commutation-inverse", "main", 'TmuThetaz/TuThetamz: T_u^(-1) Theta~ and T_u Theta~^(-1) reordered',
           "coefficient of u^j z^k, j + k <= N; v formal; F spanning of degree n <= N - k",
           _main_instances)
def _theta_comm_inv(d):
    j, k, F = d["j"], d["k"], make_input(d["F"])
    lhs1 = ep(j, ops.theta_tilde(F, k)).scale(sgn(j))
    lhs2 = hp(j, ops.theta_tilde(F, k, inverse=True))
    rhs1 = SymFunc()
    rhs2 = SymFunc()
    for n_ in range(min(j, k) + 1):
        c = _exp_coeff(n_, (1 - v) / M)
        if c.is_zero():
            continue
        for b_ in range(min(j, k) - n_ + 1):
            a = j - n_ - b_
            cc = k - n_ - b_
            G = ops.delta_uzv_coeff(b_, F, inverse=True)
            G = ep(a, G).scale(sgn(a))
            rhs1 = rhs1 + ops.theta_tilde(G, cc).scale(c)
            G2 = ops.theta_tilde(hp(a, F), cc, inverse=True)
            rhs2 = rhs2 + ops.delta_uzv_coeff(b_, G2, inverse=True).scale(c)
    return [("TmuThetaz", lhs1, rhs1), ("TuThetamz", lhs2, rhs2)]


@_register("theta-right-perp", "main", 'Thkej/Thkhj/Tekej: Theta_f moved past e_j^perp and h_j^perp from the right',
           "0 <= j, k <= N; F spanning of degree n <= N with n + k <= D", _jk_inputs)
def _theta_right(d):
    j, k, F = d["j"], d["k"], make_input(d["F"])
    rng = range(j + 1)
    return [
        ("Thkej", Th(h(k), ep(j, F)),
         total(ep(r, De(h(j - r), Th(h(k - j + r), F))).scale(sgn(j - r)) for r in rng)),
        ("Thkhj", Th(h(k), hp(j, F)),
         total(De(e(j - r), hp(r, Th(h(k - j + r), F))).scale(sgn(j - r)) for r in rng)),
        ("Tekej", Th(e(k), ep(j, F)),
         total(ep(r, Th(e(k - j + r), De(e(j - r), F))).scale(sgn(j - r)) for r in rng)),
    ]


# ===========================================================================
# consequences of theta reciprocity

@_register("theta-MBmu", "theta-consequences", 'ThetaMBmu: <h_k^perp Theta_(e_n) H_mu, F>_* = F[M B_mu]',
           "mu |- k <= N, 0 <= n <= N, F over the Schur basis of degree n",
           lambda b: with_schur([{"mu": list(mu), "n": n} for mu in parts_upto(b.N) for n in R(b.N)
                                 if mu.size + n <= b.D], lambda d: d["n"], "F"))
def _theta_mbmu(d):
    mu, n, F = _mu(d), d["n"], make_input(d["F"])
    return star(hp(mu.size, Th(e(n), H(mu))), F), scal(F, M * B(mu))


@_register("aperp-delta", "theta-consequences", 'AperpDeltaomegaA: A^perp h_k^perp Theta_(e_m) F = h_k^perp Theta_(e_(m-d)) Delta_(omega A) F',
           "0 <= m, d, k <= N; A over the Schur basis of degree d; F spanning of degree k",
           lambda b: with_inputs(with_schur(grid({"m": R(b.N), "d": R(b.N), "k": R(b.N)},
                                                 lambda d: d["m"] + d["k"] <= b.D),
                                            lambda d: d["d"], "A"), lambda d: d["k"]))
def _aperp(d):
    m, dd, k = d["m"], d["d"], d["k"]
    A, F = make_input(d["A"]), make_input(d["F"])
    lhs = perp(A, hp(k, Th(e(m), F)))
    rhs = hp(k, Th(e(m - dd), De(omega(A), F))) if m >= dd else SymFunc()
    return lhs, rhs


def _fam(ell):
    """Test functions of degree ell: e, h and a random power sum."""
    if ell == 0:
        return ["1"]
    return [f"e{ell}", f"h{ell}", f"rand{ell}"]


def _make_fam(label):
    if label.startswith("h") and label[1:].isdigit():
        return h(int(label[1:]))
    return make_input(label)


@_register("theta-factor", "theta-consequences", 'newthm: h_(k+l)^perp Theta_(e_m) Theta_F G = Delta_F h_k^perp Theta_(e_m) G',
           "1 <= m <= N, 0 <= k, l <= N, m + k + l <= D; G spanning of degree k; F in {e_l, h_l, random}",
           lambda b: [dict(base, Fl=fl, G=g) for base in grid({"m": range(1, b.N + 1), "k": R(b.N), "l": R(b.N)},
                                                            lambda d: d["m"] + d["k"] + d["l"] <= b.D)
                      for fl in _fam(base["l"]) for g in input_labels(base["k"])])
def _theta_factor(d):
    m, k, l_ = d["m"], d["k"], d["l"]
    F, G = _make_fam(d["Fl"]), make_input(d["G"])
    return hp(k + l_, Th(e(m), Th(F, G))), De(F, hp(k, Th(e(m), G)))


@_register("deltaF-pi-em", "theta-consequences", 'DeltaFPiemstar: h_k^perp Theta_(e_m) Pi F* = Delta_F Pi e_m*',
           "1 <= m, k <= N, m + k <= D; F over the Schur basis of degree k",
           lambda b: with_schur(grid({"m": range(1, b.N + 1), "k": range(1, b.N + 1)},
                                     lambda d: d["m"] + d["k"] <= b.D), lambda d: d["k"], "F"))
def _deltaF_pi(d):
    m, k, F = d["m"], d["k"], make_input(d["F"])
    return hp(k, Th(e(m), Pi(st(F)))), De(F, Pi(st(e(m))))


@_register("deltaF-em", "theta-consequences", 'DeltaFem: h_(k+l)^perp Theta_(e_m) Theta_F H_mu = Delta_F e_m[X B_mu]',
           "1 <= m <= N, mu |- k <= N, 0 <= l <= N, m + k + l <= D; F in {e_l, h_l, random}",
           lambda b: [{"m": m, "mu": list(mu), "l": l_, "Fl": fl}
                      for m in range(1, b.N + 1) for mu in parts_upto(b.N) for l_ in R(b.N)
                      if m + mu.size + l_ <= b.D for fl in _fam(l_)])
def _deltaF_em(d):
    m, mu, l_ = d["m"], _mu(d), d["l"]
    F = _make_fam(d["Fl"])
    return hp(mu.size + l_, Th(e(m), Th(F, H(mu)))), De(F, plethysm(e(m), X * B(mu)))


@_register("pieri-reciprocity", "theta-consequences", 'Pieri reciprocity: sum_mu Pi_mu d^(A*)_(mu nu) F[M B_mu] = Pi_nu (Delta_A F)[M B_nu]',
           "nonempty nu |- k, 0 <= d <= N, k + d <= N; A over the Schur basis of degree d; "
           "F over the Schur basis of degree 1 <= m <= N",
           lambda b: [{"nu": list(nu), "A": f"s{list(a)}", "F": f"s{list(f)}"}
                      for nu in parts_upto(b.N, True) for dd in R(b.N - nu.size) for a in partitions(dd)
                      for mm in range(1, b.N + 1) for f in partitions(mm)])
def _pieri_rec(d):
    nu = _mu(d, "nu")
    A, F = make_input(d["A"]), make_input(d["F"])
    coeffs = mac.mac_expand(st(A) * H(nu))
    lhs = rsum(mac.stats(mu).Pi * c * scal(F, M * B(mu)) for mu, c in coeffs.items())
    rhs = mac.stats(nu).Pi * scal(De(A, F), M * B(nu))
    return lhs, rhs


def _PQ_pairs(b: Bound, pos=True):
    lo = 1 if pos else 0
    return [{"n": n, "k": k, "P": f"s{list(a)}", "Q": f"s{list(c)}"}
            for n in range(lo, b.N + 1) for k in range(lo, b.N + 1)
            for a in partitions(n) for c in partitions(k)]


@_register("haglund-rec", "theta-consequences", 'HaglundRec: h_k^perp Delta_P Pi Q* = h_n^perp Delta_Q Pi P*',
           "1 <= n, k <= N; P, Q over Schur bases of degrees n, k", _PQ_pairs)
def _haglund_rec(d):
    n, k = d["n"], d["k"]
    P, Q = make_input(d["P"]), make_input(d["Q"])
    return hp(k, De(P, Pi(st(Q)))), hp(n, De(Q, Pi(st(P))))


@_register("ghr-thm1", "theta-consequences", 'GHR symmetry: <Delta_P alpha_k p_k, omega Q> = <Delta_Q alpha_n p_n, omega P>',
           "1 <= n, k <= N; P, Q over Schur bases of degrees n, k", _PQ_pairs)
def _ghr1(d):
    n, k = d["n"], d["k"]
    P, Q = make_input(d["P"]), make_input(d["Q"])
    return hall(De(P, p(k).scale(alpha(k))), omega(Q)), hall(De(Q, p(n).scale(alpha(n))), omega(P))


@_register("haglund-lem", "theta-consequences", 'HaglundLem: <Delta_(e_(k-1)) e_n, omega Q> = <Delta_Q e_k, h_k>',
           "1 <= n, k <= N; Q over the Schur basis of degree n",
           lambda b: with_schur(grid({"n": range(1, b.N + 1), "k": range(1, b.N + 1)}), lambda d: d["n"], "Q"))
def _haglund_lem(d):
    n, k, Q = d["n"], d["k"], make_input(d["Q"])
    return hall(De(e(k - 1), e(n)), omega(Q)), hall(De(Q, e(k)), h(k))


@_register("delta-prime-hh", "theta-consequences", "scalarDeltaprimehh: <Delta_(h_n) Delta'_(e_(m-k)) e_(m+1), h_(m+1)> = <Delta'_(e_(m+n-k-1)) e_(m+n), h_m h_n>",
           "0 <= m, n, k <= N, n >= k, 1 <= m + n <= D",
           lambda b: grid({"m": R(b.N), "n": R(b.N), "k": R(b.N)},
                          lambda d: d["n"] >= d["k"] and 1 <= d["m"] + d["n"] <= b.D and d["m"] + 1 <= b.D))
def _dp_hh(d):
    m, n, k = d["m"], d["n"], d["k"]
    lhs = hall(De(h(n), Dp(e(m - k), e(m + 1))), h(m + 1))
    rhs = hall(Dp(e(m + n - k - 1), e(m + n)), h(m) * h(n))
    return lhs, rhs


@_register("ghr-cor2", "theta-consequences", 'GHR h-form: <Delta_(h_(k-1)) e_n, omega Q> = (-qt)^(1-k) <Delta_Q h_k, e_k>',
           "1 <= n, k <= N; Q over the Schur basis of degree n",
           lambda b: with_schur(grid({"n": range(1, b.N + 1), "k": range(1, b.N + 1)}), lambda d: d["n"], "Q"))
def _ghr_cor2(d):
    n, k, Q = d["n"], d["k"], make_input(d["Q"])
    return hall(De(h(k - 1), e(n)), omega(Q)), (-q * t) ** (1 - k) * hall(De(Q, h(k)), e(k))


# ===========================================================================
# consequences of the commutation relations

@_register("hkperp-zero", "delta-consequences", 'hkperpThetamFzero: h_k^perp Theta_(e_m) F = 0 for k > deg F',
           "1 <= m <= N, 0 <= l < k <= N, m + l <= D; F spanning of degree l",
           lambda b: with_inputs(grid({"m": range(1, b.N + 1), "l": R(b.N), "k": R(b.N)},
                                      lambda d: d["k"] > d["l"] and d["m"] + d["l"] <= b.D), lambda d: d["l"]))
def _hk_zero(d):
    m, k, F = d["m"], d["k"], make_input(d["F"])
    return hp(k, Th(e(m), F)), SymFunc()


@_register("theta-delta-h", "delta-consequences", 'lemThetaekDeltahk: <Theta_(e_l) F, h_k e_(n-k)> = <Delta_(h_l) F, h_k e_(n-k-l)>',
           "0 <= l <= n <= D, n <= 2N, 0 <= k <= n; F spanning of degree n - l <= N",
           lambda b: with_inputs(grid({"n": R(b.D), "l": R(b.N), "k": R(b.D)},
                                      lambda d: d["l"] <= d["n"] and d["k"] <= d["n"] and d["n"] - d["l"] <= b.N),
                                 lambda d: d["n"] - d["l"]))
def _theta_delta_h(d):
    n, l_, k, F = d["n"], d["l"], d["k"], make_input(d["F"])
    return hall(Th(e(l_), F), h(k) * e(n - k)), hall(De(h(l_), F), h(k) * e(n - k - l_))


@_register("hperp-basics", "delta-consequences", 'hrperppn/hrperpen: h_r^perp p_n = delta_(rn), h_r^perp e_n = delta_(r1) e_(n-1)',
           "1 <= r <= N, 0 <= n <= N",
           lambda b: grid({"r": range(1, b.N + 1), "n": R(b.N)}))
def _hperp_basics(d):
    r, n = d["r"], d["n"]
    pn = p(n) if n else one()
    return [("h_r^perp p_n", hp(r, pn), SymFunc.scalar(1 if r == n else 0)),
            ("h_r^perp e_n", hp(r, e(n)), e(n - 1) if r == 1 else SymFunc())]


@_register("hk-theta-en", "delta-consequences", 'hkThetaemen: h_k^perp Theta_(e_m) e_n = Theta_(e_(m-k)) Delta_(e_k) e_n + Theta_(e_(m-k+1)) Delta_(e_(k-1)) e_(n-1)',
           "0 <= k, m <= N, 1 <= n <= N, m + n <= D",
           lambda b: grid({"k": R(b.N), "m": R(b.N), "n": range(1, b.N + 1)}, lambda d: d["m"] + d["n"] <= b.D))
def _hk_theta_en(d):
    k, m, n = d["k"], d["m"], d["n"]
    return hp(k, Th(e(m), e(n))), Th(e(m - k), De(e(k), e(n))) + Th(e(m - k + 1), De(e(k - 1), e(n - 1)))


@_register("delta-prime-en", "delta-consequences", "Deltaprimeen: Delta'_(e_(n-k-1)) e_n = Theta_(e_k) Delta_(e_(n-k)) e_(n-k)",
           "0 <= k < n <= D, n <= 2N", lambda b: grid({"n": R(b.D), "k": R(b.D)}, lambda d: d["k"] < d["n"]))
def _dp_en(d):
    n, k = d["n"], d["k"]
    a = Th(e(k), De(e(n - k), e(n - k)))
    # second summand as produced by the argument: Theta_e(k-1) Delta_e(n-k+1) e_(n-k+1), zero for k = 0
    b_ = Th(e(k - 1), De(e(n - k + 1), e(n - k + 1))) if k >= 1 else SymFunc()
    return [("Delta_e(n-k) e_n", De(e(n - k), e(n)), a + b_),
            ("Delta'_e(n-k-1) e_n", Dp(e(n - k - 1), e(n)), a)]


@_register("delta-pn", "delta-consequences", 'Deltapn: Delta_(e_(n-k)) Pi e_n* = Theta_(e_k) Delta_(e_(n-k)) Pi e_(n-k)*',
           "0 <= k < n <= D, n <= 2N", lambda b: grid({"n": R(b.D), "k": R(b.D)}, lambda d: d["k"] < d["n"]))
def _delta_pn(d):
    n, k = d["n"], d["k"]
    return De(e(n - k), Pi(st(e(n)))), Th(e(k), De(e(n - k), Pi(st(e(n - k)))))


@_register("hkperp-theta-pi", "delta-consequences", 'hkperpThetaem: h_k^perp Theta_(e_m) Pi e_n* = Pi (h_k* e_(m-k)* e_(n-k)*)',
           "0 <= k <= N, 1 <= m, n <= N, m + n <= D",
           lambda b: grid({"k": R(b.N), "m": range(1, b.N + 1), "n": range(1, b.N + 1)},
                          lambda d: d["m"] + d["n"] <= b.D))
def _hk_theta_pi(d):
    k, m, n = d["k"], d["m"], d["n"]
    return hp(k, Th(e(m), Pi(st(e(n))))), Pi(st(h(k)) * st(e(m - k)) * st(e(n - k)))


@_register("newdinv-4-4", "delta-consequences", "dinv scalar product: <Delta_(e_(m+n-k)) e_(m+n-k), e_k h_(n-k) h_(m-k)> = <Delta_(h_n) Delta'_(e_(m-k)) e_(m+1), h_(m+1)>",
           "1 <= n <= N, 0 <= k < m <= N, m + n <= D",
           lambda b: grid({"m": R(b.N), "n": range(1, b.N + 1), "k": R(b.N)},
                          lambda d: d["m"] > d["k"] and d["m"] + d["n"] <= b.D))
def _newdinv(d):
    m, n, k = d["m"], d["n"], d["k"]
    lhs = hall(De(e(m + n - k), e(m + n - k)), e(k) * h(n - k) * h(m - k))
    rhs = hall(De(h(n), Dp(e(m - k), e(m + 1))), h(m + 1))
    return lhs, rhs


@_register("bible-4-22", "delta-consequences", "Delta/Delta' scalar products: <Delta_(e_a) Delta'_(e_(a+b-k-1)) e_(a+b), h_(a+b)> = <Delta_(h_k) Delta_(e_(a-k)) e_(a+b-k), e_(a+b-k)>",
           "1 <= k <= a <= N, 1 <= b <= N, a + b <= D",
           lambda b: grid({"a": range(1, b.N + 1), "b": range(1, b.N + 1), "k": range(1, b.N + 1)},
                          lambda d: d["a"] >= d["k"] and d["a"] + d["b"] <= b.D))
def _bible(d):
    a, b_, k = d["a"], d["b"], d["k"]
    n = a + b_
    first = (hall(De(e(a), Dp(e(n - k - 1), e(n))), h(n)),
             hall(De(h(k), De(e(a - k), e(n - k))), e(n - k)))
    second = (hall(Dp(e(a), Dp(e(n - k - 1), e(n))), h(n)),
              hall(De(h(k), Dp(e(a - k), e(n - k))), e(n - k)))
    return [("Delta", *first), ("Delta'", *second)]


@_register("ghr-thm2", "delta-consequences", 'GHRthm2: h_j^perp Delta_(e_(n-k)) alpha_n p_n = Delta_(e_(n-k-j) h_j) alpha_(n-j) p_(n-j)',
           "1 <= k <= n <= N, 1 <= j < n",
           lambda b: grid({"n": range(1, b.N + 1), "k": range(1, b.N + 1), "j": range(1, b.N + 1)},
                          lambda d: d["n"] >= d["k"] and d["n"] > d["j"]))
def _ghr2(d):
    n, k, j = d["n"], d["k"], d["j"]
    lhs = hp(j, De(e(n - k), p(n).scale(alpha(n))))
    rhs = De(e(n - k - j) * h(j), p(n - j).scale(alpha(n - j)))
    return lhs, rhs


@_register("ghr-thm3", "delta-consequences", 'GHR h-shift: h_j^perp Delta_(h_(n-k)) alpha_n p_n = h_(n-k)^perp Delta_(h_j) Delta_(e_(n-k-j)) alpha_(2n-k-j) p_(2n-k-j)',
           "1 <= k <= n <= N, 1 <= j < n, 2n - k - j <= D",
           lambda b: grid({"n": range(1, b.N + 1), "k": range(1, b.N + 1), "j": range(1, b.N + 1)},
                          lambda d: d["n"] >= d["k"] and d["n"] > d["j"] and 2 * d["n"] - d["k"] - d["j"] <= b.D))
def _ghr3(d):
    n, k, j = d["n"], d["k"], d["j"]
    lhs = hp(j, De(h(n - k), p(n).scale(alpha(n))))
    big = 2 * n - k - j
    rhs = hp(n - k, De(h(j), De(e(n - k - j), p(big).scale(alpha(big)))))
    return lhs, rhs


# ===========================================================================
# simplified proofs

@_register("perp-Hn", "short-proofs", 'ejperpHn/hjperpHn: e_j^perp H_(n) = q^C(j,2) [n,j] H_(n-j), h_j^perp H_(n) = [n,j] H_(n-j)',
           "0 <= j <= n <= N", lambda b: grid({"n": R(b.N), "j": R(b.N)}, lambda d: d["j"] <= d["n"]))
def _perp_hn(d):
    n, j = d["n"], d["j"]
    return [("e_j^perp", ep(j, H(n)), H(n - j).scale(qp(binom2(j)) * qb(n, j))),
            ("h_j^perp", hp(j, H(n)), H(n - j).scale(qb(n, j)))]


def _thetaHj_coef(j, r):
    return RatQT.coerce(sgn(j - r)) * qp(r - j * r + binom2(r)) * qb(j, r)


@_register("theta-Hj", "short-proofs", 'thetaHj: Theta_(e_(k-j)) H_(j) = sum_r (-1)^(j-r) q^(r-jr+C(r,2)) [j,r] e_k[X[r]_q]',
           "1 <= j <= k <= N (lemma and corollary forms)",
           lambda b: grid({"j": range(1, b.N + 1), "k": R(b.N)}, lambda d: d["k"] >= d["j"]))
def _theta_hj(d):
    j, k = d["j"], d["k"]
    lhs = Th(e(k - j), H(j))
    lemma = total(hp(r, Th(e(k), H(r))).scale(_thetaHj_coef(j, r)) for r in range(j + 1))
    cor = total(eX(k, r).scale(_thetaHj_coef(j, r)) for r in range(j + 1))
    return [("lemma", lhs, lemma), ("corollary", lhs, cor)]


@_register("nabla-Enk", "short-proofs", 'nablaEnk: Delta_(e_k) E_kj = t^(k-j) Theta_(h_(k-j)) H_(j)',
           "1 <= j <= k <= N", lambda b: grid({"k": range(1, b.N + 1), "j": range(1, b.N + 1)},
                                                lambda d: d["j"] <= d["k"]))
def _nabla_enk(d):
    k, j = d["k"], d["j"]
    return De(e(k), E(k, j)), Th(h(k - j), H(j)).scale(tp(k - j))


@_register("nabla-theta-Hi", "short-proofs", 'nablaThetaejHi: Delta_(e_k) Theta_(e_(k-j)) H_(j) = sum_s q^C(j,2) [s-1,j-1] t^(k-s) Theta_(h_(k-s)) H_(s)',
           "1 <= j, k <= N", lambda b: grid({"k": range(1, b.N + 1), "j": range(1, b.N + 1)}))
def _nabla_theta_hi(d):
    k, j = d["k"], d["j"]
    lhs = De(e(k), Th(e(k - j), H(j)))
    rhs = total(Th(h(k - s_), H(s_)).scale(qp(binom2(j)) * qb(s_ - 1, j - 1) * tp(k - s_)) for s_ in range(1, k + 1))
    return lhs, rhs


def _mysum_rhs(m, k, l_, theta_e=True):
    out = SymFunc()
    for r in range(k + 1):
        c = qp(binom2(r)) * qb(k, r)
        if c.is_zero():
            continue
        for b_ in range(1, l_ + r + 1):
            cc = qb(k - r + b_ - 1, k - 1)
            if cc.is_zero():
                continue
            if theta_e:
                term = Th(h(l_ + r - b_), Th(e(m - l_ - r), H(b_))).scale(tp(l_ + r - b_))
            else:
                term = Th(e(m - l_ - r), De(e(l_ + r), E(l_ + r, b_)))
            out = out + term.scale(c * cc)
    return out


@_register("my-summation", "short-proofs", 'mysummation: h_(k+l)^perp Theta_(e_m) Theta_(e_l) H_(k) as a double sum of Theta_h Theta_e H_(b)',
           "1 <= m <= N, 0 <= k, l <= N, m + k + l <= D",
           lambda b: grid({"m": range(1, b.N + 1), "k": R(b.N), "l": R(b.N)},
                          lambda d: d["m"] + d["k"] + d["l"] <= b.D))
def _mysum(d):
    m, k, l_ = d["m"], d["k"], d["l"]
    return hp(k + l_, Th(e(m), Th(e(l_), H(k)))), _mysum_rhs(m, k, l_)


@_register("cor-delta-elem", "short-proofs", 'corDeltaelemXk: Delta_(e_l) e_m[X[k]_q] as a double sum of Theta_e Delta_e E',
           "1 <= m <= N, 0 <= k, l <= N",
           lambda b: grid({"m": range(1, b.N + 1), "k": R(b.N), "l": R(b.N)}))
def _cor_delta_elem(d):
    m, k, l_ = d["m"], d["k"], d["l"]
    return De(e(l_), eX(m, k)), _mysum_rhs(m, k, l_, theta_e=False)


def _gds_range(b: Bound):
    return grid({"s": R(b.N), "l": R(b.N), "m": range(1, b.N + 1), "j": R(b.N)},
                lambda d: d["j"] <= d["m"] and d["s"] + d["l"] <= b.D)


def _gds_lhs(s_, l_, m, j, weight):
    return rsum(weight(k) * tp(s_ - k) * hall(De(h(s_ - k), De(e(l_), eX(m, k))), e(j) * h(m - j))
                for k in range(1, s_ + 1))


@_register("gendelta-schroeder-3-7", "short-proofs", "generalized Delta Schroeder: sum_k t^(s-k) <Delta_(h_(s-k)) Delta_(e_l) e_m[X[k]_q], e_j h_(m-j)> = <Delta_(h_j) Delta'_(e_(s-1)) e_(s+l), e_(m-j) h_(s+l+j-m)>",
           "0 <= s, l, j <= N, 1 <= m <= N, j <= m", _gds_range)
def _gds37(d):
    s_, l_, m, j = d["s"], d["l"], d["m"], d["j"]
    lhs = _gds_lhs(s_, l_, m, j, lambda k: ONE)
    rhs = hall(De(h(j), Dp(e(s_ - 1), e(s_ + l_))), e(m - j) * h(s_ + l_ + j - m))
    return lhs, rhs


@_register("delta-square-4-7", "short-proofs", 'Delta square: weighted version of the generalized Schroeder sum against Delta_(e_s) omega p_(s+l)',
           "1 <= s <= N, 0 <= l, j <= N, 1 <= m <= N, j <= m",
           lambda b: [d for d in _gds_range(b) if d["s"] >= 1])
def _ds47(d):
    s_, l_, m, j = d["s"], d["l"], d["m"], d["j"]
    lhs = _gds_lhs(s_, l_, m, j, lambda k: qint(s_ + l_) / qint(k))
    rhs = tint(s_) / tint(s_ + l_) * hall(De(h(j), De(e(s_), omega(p(s_ + l_)))), e(m - j) * h(s_ + l_ + j - m))
    return lhs, rhs


# ===========================================================================
# new identities

def _gen_rhs_terms(j, m, l_, k):
    """The two triple sums of the general summation, as (coef, theta index, E index) triples."""
    for r in range(j + 1):
        cr = qb(k, r)
        if cr.is_zero():
            continue
        for a in range(k + 1):
            for b_ in range(1, j - r + a + 1):
                c1 = qp(binom2(k - r - a)) * qb(b_ - 1, a) * qb(b_ + r - a - 1, k - a - 1)
                c2 = qp(binom2(k - r - a + 1)) * qb(b_ - 1, a - 1) * qb(b_ + r - a, k - a)
                c = cr * (c1 + c2)
                if not c.is_zero():
                    yield c, r, a, b_


@_register("delta-theta-eHk", "new-summations", 'DeltaThetaeHk: Delta_(e_J) Theta_(e_L) H_(K) as a double sum of Theta_e Delta_e E',
           "the identity depends on J = j - r, L = l - r + s, K = k - s only; 0 <= J, L <= N, 1 <= K <= N, L + K <= D",
           lambda b: grid({"J": R(b.N), "L": R(b.N), "K": range(1, b.N + 1)}, lambda d: d["L"] + d["K"] <= b.D))
def _delta_theta_ehk(d):
    J, L, K = d["J"], d["L"], d["K"]
    lhs = De(e(J), Th(e(L), H(K)))
    rhs = SymFunc()
    for a in range(K + 1):
        ca = qp(binom2(a)) * qb(K, a)
        for b_ in range(1, J + a + 1):
            c = ca * qb(b_ - 1, K - 1) * qp(binom2(K) - a * (K - 1))
            if c.is_zero():
                continue
            rhs = rhs + Th(e(L + K - J - a), De(e(J + a), E(J + a, b_))).scale(c)
    return lhs, rhs


@_register("general-summation", "new-summations", 'newsummationhjperp: h_j^perp Theta_(e_m) Theta_(e_l) H_(k) as two triple sums',
           "0 <= j, m, l <= N, 1 <= k <= N, m + l + k <= D, j != m + l + k",
           lambda b: grid({"j": R(b.N), "m": R(b.N), "l": R(b.N), "k": range(1, b.N + 1)},
                          lambda d: d["m"] + d["l"] + d["k"] <= b.D and d["j"] != d["m"] + d["l"] + d["k"]))
def _general_sum(d):
    j, m, l_, k = d["j"], d["m"], d["l"], d["k"]
    lhs = hp(j, Th(e(m), Th(e(l_), H(k))))
    rhs = SymFunc()
    for c, r, a, b_ in _gen_rhs_terms(j, m, l_, k):
        rhs = rhs + Th(e(m - j + r), Th(e(l_ + k - j - a), De(e(j - r + a), E(j - r + a, b_)))).scale(c)
    return lhs, rhs


@_register("gen-sum-corollary", "new-summations", 'general summation, Schroeder form: h_j^perp Delta_(e_l) e_m[X[k]_q] as a double sum',
           "0 <= j, l, m <= N, 1 <= k <= N",
           lambda b: grid({"j": R(b.N), "l": R(b.N), "m": R(b.N), "k": range(1, b.N + 1)}))
def _gen_sum_cor(d):
    j, l_, m, k = d["j"], d["l"], d["m"], d["k"]
    lhs = hp(j, De(e(l_), eX(m, k)))
    rhs = SymFunc()
    for a in range(k + 1):
        for b_ in range(1, j + a + 1):
            c = qp(binom2(k - a)) * qb(k, a) * qb(b_ - 1, k - 1)
            if c.is_zero():
                continue
            term = De(h(j + a - b_), De(e(l_ + k - j - a), eX(m - j, b_)))
            rhs = rhs + term.scale(c * tp(j + a - b_))
    return lhs, rhs


# ===========================================================================
# t = 0 and friends

def _push_terms(j, k):
    for s_ in range(j + 1):
        for r in range(s_ + 1):
            c = qp(binom2(s_ - r)) * qb(k - r, s_ - r) * qb(k, r)
            if not c.is_zero():
                yield s_, r, c


@_register("gen-delta-push", "t-zero", 'thmimplygenDelta: h_j^perp t^p Theta_(h_p) Theta_(e_m) H_(k) as a double sum',
           "0 <= j, m, p <= N, 1 <= k <= N, p + m + k <= D",
           lambda b: grid({"j": R(b.N), "m": R(b.N), "p": R(b.N), "k": range(1, b.N + 1)},
                          lambda d: d["p"] + d["m"] + d["k"] <= b.D))
def _gen_push(d):
    j, m, p_, k = d["j"], d["m"], d["p"], d["k"]
    lhs = hp(j, Th(h(p_), Th(e(m), H(k)))).scale(tp(p_))
    rhs = SymFunc()
    for s_, r, c in _push_terms(j, k):
        pp = p_ - j + s_
        if pp < 0:
            continue
        term = De(h(j - s_), Th(h(pp), Th(e(m - s_ + r), H(k - r))).scale(tp(pp)))
        rhs = rhs + term.scale(c * tp(j - s_))
    return lhs, rhs


@_register("gen-delta-enk", "t-zero", 'genDeltaId: h_j^perp Theta_(e_m) Delta_(e_(p+k)) E_(p+k,k) as a double sum',
           "0 <= j, m, p <= N, 1 <= k <= N, p + m + k <= D",
           lambda b: grid({"j": R(b.N), "m": R(b.N), "p": R(b.N), "k": range(1, b.N + 1)},
                          lambda d: d["p"] + d["m"] + d["k"] <= b.D))
def _gen_enk(d):
    j, m, p_, k = d["j"], d["m"], d["p"], d["k"]
    lhs = hp(j, Th(e(m), De(e(p_ + k), E(p_ + k, k))))
    rhs = SymFunc()
    for s_, r, c in _push_terms(j, k):
        nn = p_ - j + s_ + k - r
        if nn < 0:
            continue
        term = De(h(j - s_), Th(e(m - s_ + r), De(e(nn), E(nn, k - r))))
        rhs = rhs + term.scale(c * tp(j - s_))
    return lhs, rhs


def _dp_t0(k, n):
    """Delta'_{e_(k-1)} e_n at t = 0."""
    if n < 0:
        return SymFunc()
    return t0(Dp(e(k - 1), e(n)))


@_register("delta-t0", "t-zero", "Deltat0: Theta_(e_m) H_(k) = Delta'_(e_(k-1)) e_(m+k) at t = 0",
           "0 <= m <= N, 1 <= k <= N, m + k <= D",
           lambda b: grid({"m": R(b.N), "k": range(1, b.N + 1)}, lambda d: d["m"] + d["k"] <= b.D))
def _delta_t0(d):
    m, k = d["m"], d["k"]
    lhs = Th(e(m), H(k))
    return [("Theta_em H_k = Delta' e at t=0", lhs, _dp_t0(k, m + k)),
            ("Theta_em H_k is free of t", lhs, t0(lhs))]


def _t0_range(b: Bound):
    return grid({"j": R(b.N), "m": R(b.N), "k": range(1, b.N + 1)},
                lambda d: d["m"] + d["k"] <= b.D and d["j"] != d["m"] + d["k"])


@_register("delta-t0-recursion", "t-zero", "t = 0 recursion: h_j^perp Delta'_(e_(k-1)) e_(m+k)|_(t=0) as a sum over r",
           "0 <= j, m <= N, 1 <= k <= N, m + k <= D, j != m + k", _t0_range)
def _t0_rec(d):
    j, m, k = d["j"], d["m"], d["k"]
    lhs = hp(j, _dp_t0(k, m + k))
    rhs = total(_dp_t0(k - r, m - j + k).scale(qp(binom2(j - r)) * qb(k - r, j - r) * qb(k, r))
                for r in range(j + 1) if not qb(k, r).is_zero())
    return lhs, rhs


@_register("hrs-advances", "t-zero", "t = 0 omegabar recursion: e_j^perp of the q-shifted omegabar Delta'_(e_(k-1)) e_(m+k)|_(t=0)",
           "0 <= j, m <= N, 1 <= k <= N, m + k <= D, j != m + k", _t0_range)
def _hrs_adv(d):
    j, m, k = d["j"], d["m"], d["k"]
    lhs = ep(j, omega_bar(_dp_t0(k, m + k)).scale(qp(binom2(m + k) - binom2(m + 1))))
    rhs = SymFunc()
    for r in range(j + 1):
        c = qp(binom2(j) + r * (m - j + r)) * qb(k - r, j - r) * qb(k, r)
        if c.is_zero():
            continue
        inner = omega_bar(_dp_t0(k - r, m + k - j)).scale(qp(binom2(m + k - j) - binom2(m - j + r + 1)))
        rhs = rhs + inner.scale(c)
    return lhs, rhs


@_register("hrs-schur", "t-zero", "t = 0 Schur recursion: e_j^perp Delta'_(e_(k-1)) e_(m+k)|_(t=0) as a sum over r",
           "0 <= j, m <= N, 1 <= k <= N, m + k <= D, j != m + k", _t0_range)
def _hrs_schur(d):
    j, m, k = d["j"], d["m"], d["k"]
    lhs = ep(j, _dp_t0(k, m + k))
    rhs = total(_dp_t0(k - r, m + k - j).scale(qp(binom2(r)) * qb(k, r) * qb(k + j - r - 1, j - r))
                for r in range(j + 1) if not qb(k, r).is_zero())
    return lhs, rhs


@lru_cache(maxsize=None)
def _hp_el_eX(a: int, b: int, n: int, c: int) -> SymFunc:
    """Delta_(h_a) Delta_(e_b) e_n[X [c]_q], shared across instances."""
    if a < 0 or b < 0:
        return SymFunc()
    ha, eb = h(a), e(b)
    return mac.apply_diagonal(eX(n, c), lambda mu: ops.delta_eigen(ha, mu) * ops.delta_eigen(eb, mu))


@_register("gendelta-3-4", "t-zero", 'generalized Delta scalar product: t^p <Delta_(h_p) Delta_(e_l) e_m[X[k]_q], e_j h_(m-j)> as a double sum',
           "1 <= m <= N, 0 <= k, l, j, p <= N, j <= m, p + l <= D",
           lambda b: grid({"m": range(1, b.N + 1), "k": R(b.N), "l": R(b.N), "j": R(b.N), "p": R(b.N)},
                          lambda d: d["j"] <= d["m"] and d["p"] + d["l"] <= b.D))
def _gd34(d):
    m, k, l_, j, p_ = d["m"], d["k"], d["l"], d["j"], d["p"]
    lhs = tp(p_) * hall(_hp_el_eX(p_, l_, m, k), e(j) * h(m - j))
    rhs = ZERO
    for r in range(k + 1):
        c = qp(binom2(r)) * qb(k, r)
        if c.is_zero():
            continue
        for b_ in range(1, j + r + 1):
            cc = qb(k - r + b_ - 1, k - 1)
            if cc.is_zero():
                continue
            val = hall(_hp_el_eX(j + r - b_, m - j - r, p_ + l_, b_), e(p_) * h(l_))
            rhs = rhs + c * cc * tp(j + r - b_) * val
    return lhs, tp(p_) * rhs


# ===========================================================================
# running

_CURRENT_BOUND = Bound()


def _render(value) -> str:
    if isinstance(value, SymFunc):
        return value.serialize()
    if isinstance(value, dict):
        items = sorted(value.items(), key=lambda kv: repr(kv[0]))
        return "; ".join(f"{k!r} : {c}" for k, c in items) or "0"
    return str(value)


def _difference(a, b):
    if isinstance(a, dict):
        return tensor_add(a, {k: -c for k, c in b.items()})
    return a - b


def _normalize(result):
    if isinstance(result, tuple) and len(result) == 2:
        return [("", result[0], result[1])]
    return result


def _run_instance(check: Check, inst: dict):
    """None on success, else a counterexample dict."""
    try:
        pairs = _normalize(check.evaluate(inst))
        for tag, lhs, rhs in pairs:
            if lhs != rhs:
                return {
                    "params": inst,
                    "part": tag,
                    "lhs": _render(lhs),
                    "rhs": _render(rhs),
                    "difference": _render(_difference(lhs, rhs)),
                }
    except Exception as exc:  # a pole or degree overflow is a failed instance
        return {"params": inst, "error": f"{type(exc).__name__}: {exc}"}
    return None


def _run_chunk(args):
    name, bound, mutation, indices = args
    global _CURRENT_BOUND
    _CURRENT_BOUND = bound
    ops.set_mutation(mutation)
    check = get_check(name)
    insts = check.instances(bound)
    for i in indices:
        cx = _run_instance(check, insts[i])
        if cx is not None:
            return i, cx
    return None


def run_check(name: str, bound: Bound | int = Bound(), jobs: int = 1, mutation: str | None = None) -> CheckResult:
    """Run every instance of a check; the reported failure is the first in instance order."""
    global _CURRENT_BOUND
    if isinstance(bound, int):
        bound = Bound(N=bound)
    check = get_check(name)
    start = time.perf_counter()
    prev = _CURRENT_BOUND
    _CURRENT_BOUND = bound
    prev_mut = ops.active_mutations()
    ops.set_mutation(mutation)
    try:
        insts = check.instances(bound)
        failure = None
        if jobs <= 1 or len(insts) < 2:
            for i, inst in enumerate(insts):
                cx = _run_instance(check, inst)
                if cx is not None:
                    failure = (i, cx)
                    break
        else:
            chunks = [list(range(w, len(insts), jobs)) for w in range(jobs)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                found = [r for r in pool.map(_run_chunk, [(name, bound, mutation, c) for c in chunks]) if r]
            if found:
                failure = min(found, key=lambda r: r[0])
    finally:
        _CURRENT_BOUND = prev
        ops.set_mutation(next(iter(prev_mut), None))
    elapsed = (time.perf_counter() - start) * 1000
    if failure is None:
        return CheckResult(check.name, check.ref, len(insts), "pass", None, elapsed)
    idx, cx = failure
    return CheckResult(check.name, check.ref, idx + 1, "fail", cx, elapsed)


@dataclass
class Summary:
    results: list[CheckResult]
    bound: Bound
    total_ms: float

    @property
    def failures(self) -> int:
        return sum(1 for r in self.results if r.status == "fail")

    @property
    def instances(self) -> int:
        return sum(r.instances_run for r in self.results)

    def to_json(self, timings: bool = True) -> dict:
        return {
            "bound": self.bound.N,
            "checks": [r.to_json(timings) for r in self.results],
            "failures": self.failures,
            "total_ms": round(self.total_ms, 1) if timings else 0,
        }


def run_all(bound: Bound | int = Bound(), filter: str | None = None, jobs: int = 1,
            fail_fast: bool = False, mutation: str | None = None, progress=None) -> Summary:
    if isinstance(bound, int):
        bound = Bound(N=bound)
    start = time.perf_counter()
    results = []
    for check in select(filter):
        res = run_check(check.name, bound, jobs=jobs, mutation=mutation)
        results.append(res)
        if progress is not None:
            progress(res)
        if fail_fast and res.status == "fail":
            break
    return Summary(results, bound, (time.perf_counter() - start) * 1000)
