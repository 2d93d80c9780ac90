"""Modified Macdonald polynomials and partition statistics.

H~_mu is built from the monomial basis: Gram-Schmidt under the (q,t) Hall
form gives P_mu, scaling by the hook product gives J_mu, and

    H~_mu = t^n(mu) * J_mu[X / (1 - 1/t); q, 1/t].

A second construction straight from the triangularity axioms is kept for
cross-checking at small degree.
"""
from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .qfield import M, ONE, ZERO, RatQT, q, qbinom, qrising, t
from .symfunc import (
    Alphabet, Partition, SymFunc, X, e, hall, h, m, partitions, plethysm, s,
    star_weight, to_schur,
)

MAX_DEGREE = 8


class DegreeError(ValueError):
    pass


class CacheCorruptError(RuntimeError):
    def __init__(self, partition, reason):
        super().__init__(f"cache entry for {partition.label('-')} is corrupt: {reason}")
        self.partition = partition


# ---------------------------------------------------------------------------
# statistics

@dataclass(frozen=True)
class PartitionStats:
    B: RatQT
    D: RatQT
    T: RatQT
    Pi: RatQT
    w: RatQT
    n_stat: int


def _qt(a: int, b: int) -> RatQT:
    return RatQT.monomial(q=a, t=b)


def stats(mu) -> PartitionStats:
    return _stats(Partition(mu))


@lru_cache(maxsize=None)
def _stats(mu: Partition) -> PartitionStats:
    conj = mu.conjugate()
    B = ZERO
    T = ONE
    Pi = ONE
    w = ONE
    for i, j in mu.cells():
        mono = _qt(j, i)  # co-arm j, co-leg i
        B = B + mono
        T = T * mono
        if (i, j) != (0, 0):
            Pi = Pi * (1 - mono)
        a = mu[i] - j - 1
        l = conj[j] - i - 1
        w = w * (_qt(a, 0) - _qt(0, l + 1)) * (_qt(0, l) - _qt(a + 1, 0))
    return PartitionStats(B=B, D=M * B - 1, T=T, Pi=Pi, w=w, n_stat=mu.n_stat())


def B_alphabet(mu) -> Alphabet:
    """B_mu as a scalar alphabet, so that f[B_mu] is a plethysm."""
    return Alphabet.const(stats(mu).B)


# ---------------------------------------------------------------------------
# construction by Gram-Schmidt

@lru_cache(maxsize=None)
def _qt_weight(lam: Partition) -> RatQT:
    w = RatQT.coerce(lam.z())
    for k in lam:
        w = w * (1 - RatQT.monomial(q=k)) / (1 - RatQT.monomial(t=k))
    return w


def _qt_pair(f: SymFunc, g: SymFunc) -> RatQT:
    out = ZERO
    for lam, c in f.terms.items():
        d = g.terms.get(lam)
        if d is not None:
            out = out + c * d * _qt_weight(lam)
    return out


def macdonald_P(n: int, order=None) -> dict[Partition, SymFunc]:
    """All P_mu of degree n.  ``order`` must be a linear extension of dominance
    listed from the bottom; the default is lexicographically increasing."""
    order = list(order) if order is not None else list(reversed(partitions(n)))
    done: list[tuple[Partition, SymFunc, RatQT]] = []
    out = {}
    for mu in order:
        f = m(mu)
        for nu, P, norm in done:
            if mu.dominates(nu):
                c = _qt_pair(f, P) / norm
                if not c.is_zero():
                    f = f - P.scale(c)
        done.append((mu, f, _qt_pair(f, f)))
        out[mu] = f
    return out


def _hook_product(mu: Partition) -> RatQT:
    conj = mu.conjugate()
    out = ONE
    for i, j in mu.cells():
        a = mu[i] - j - 1
        l = conj[j] - i - 1
        out = out * (1 - _qt(a, l + 1))
    return out


def _from_P(mu: Partition, P: SymFunc) -> SymFunc:
    J = P.scale(_hook_product(mu))
    Jinv = J.map_coeffs(lambda c: c.invert(("t",)))
    alpha = X / (1 - RatQT.monomial(t=-1))
    return plethysm(Jinv, alpha).scale(RatQT.monomial(t=mu.n_stat()))


def compute_H_degree(n: int, order=None) -> dict[Partition, SymFunc]:
    if n == 0:
        return {Partition(): SymFunc.scalar(1)}
    Ps = macdonald_P(n, order)
    return {mu: _from_P(mu, P) for mu, P in Ps.items()}


# ---------------------------------------------------------------------------
# construction from the axioms (independent cross-check)

def solve_linear(rows: list[list[RatQT]], rhs: list[RatQT]) -> list[RatQT]:
    """Unique solution of an overdetermined but consistent system."""
    ncols = len(rows[0]) if rows else 0
    mat = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if not mat[i][col].is_zero()), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = ONE / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][col].is_zero():
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        piv_cols.append(col)
        r += 1
    if len(piv_cols) != ncols:
        raise ArithmeticError("system is underdetermined")
    if any(not mat[i][-1].is_zero() for i in range(r, len(mat))):
        raise ArithmeticError("system is inconsistent")
    return [mat[i][-1] for i in range(ncols)]


def H_from_axioms(mu) -> SymFunc:
    mu = Partition(mu)
    n = mu.size
    if n == 0:
        return SymFunc.scalar(1)
    lams = partitions(n)
    conj = mu.conjugate()
    A1 = X * (1 - q)
    A2 = X * (1 - t)
    # schur expansions of s_lam[X(1-q)] and s_lam[X(1-t)]
    img1 = [to_schur(plethysm(s(lam), A1)) for lam in lams]
    img2 = [to_schur(plethysm(s(lam), A2)) for lam in lams]
    rows, rhs = [], []
    for nu in lams:
        if not nu.dominates(mu):
            rows.append([img[nu] if nu in img else ZERO for img in img1])
            rhs.append(ZERO)
        if not nu.dominates(conj):
            rows.append([img[nu] if nu in img else ZERO for img in img2])
            rhs.append(ZERO)
    rows.append([ONE if lam == Partition((n,)) else ZERO for lam in lams])
    rhs.append(ONE)
    coeffs = solve_linear(rows, rhs)
    out = SymFunc()
    for lam, c in zip(lams, coeffs):
        out = out + s(lam).scale(c)
    return out


# ---------------------------------------------------------------------------
# memo + on-disk cache

class MacStore:
    """Memo of H~ by degree, optionally backed by a cache directory."""

    def __init__(self, cache_dir=None, max_degree: int = MAX_DEGREE):
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self.max_degree = max_degree
        self._by_degree: dict[int, dict[Partition, SymFunc]] = {}
        self._rows: dict[int, dict[Partition, dict]] = {}
        self._lock = threading.Lock()

    def degree(self, n: int) -> dict[Partition, SymFunc]:
        if n > self.max_degree:
            raise DegreeError(f"degree {n} exceeds the configured maximum {self.max_degree}")
        got = self._by_degree.get(n)
        if got is not None:
            return got
        with self._lock:
            got = self._by_degree.get(n)
            if got is None:
                got = self._load_degree(n)
                if got is None:
                    got = compute_H_degree(n)
                    self._store_degree(n, got)
                self._by_degree[n] = got
        return got

    def H(self, mu) -> SymFunc:
        mu = Partition(mu)
        return self.degree(mu.size)[mu]

    def rows(self, n: int) -> dict[Partition, dict]:
        """Per-mu linear forms f -> <f, H~_mu>_* / w_mu on the p-basis."""
        got = self._rows.get(n)
        if got is None:
            got = {}
            for mu, H in self.degree(n).items():
                inv_w = ONE / stats(mu).w
                got[mu] = {lam: c * star_weight(lam) * inv_w for lam, c in H.terms.items()}
            self._rows[n] = got
        return got

    # -- files ------------------------------------------------------------
    def _manifest_path(self) -> Path:
        return self.cache_dir / "manifest"

    def _read_manifest(self) -> dict:
        path = self._manifest_path()
        if not path.exists():
            return {"max_degree": 0, "entries": {}}
        try:
            data = json.loads(path.read_text())
            data["entries"]
        except (ValueError, KeyError, TypeError) as exc:
            raise CacheCorruptError(Partition(), f"unreadable manifest ({exc})") from None
        return data

    def _load_degree(self, n: int):
        if self.cache_dir is None or n == 0:
            return None
        entries = self._read_manifest()["entries"]
        out = {}
        for mu in partitions(n):
            name = mu.label("-")
            path = self.cache_dir / f"{name}.sym"
            if not path.exists() or name not in entries:
                return None
            text = path.read_text()
            if hashlib.sha256(text.encode()).hexdigest() != entries[name]:
                raise CacheCorruptError(mu, "content hash does not match manifest")
            try:
                H = SymFunc.deserialize(text)
            except ValueError as exc:
                raise CacheCorruptError(mu, str(exc)) from None
            if hall(H, h(n)) != ONE or H.degrees() != [n]:
                raise CacheCorruptError(mu, "normalization h_n^perp H != 1")
            out[mu] = H
        return out

    def _store_degree(self, n: int, values: dict):
        if self.cache_dir is None or n == 0:
            return
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        man = self._read_manifest()
        for mu, H in values.items():
            name = mu.label("-")
            text = H.serialize()
            tmp = self.cache_dir / f".{name}.sym.tmp{os.getpid()}"
            tmp.write_text(text)
            os.replace(tmp, self.cache_dir / f"{name}.sym")
            man["entries"][name] = hashlib.sha256(text.encode()).hexdigest()
        man["max_degree"] = max(man.get("max_degree", 0), n)
        tmp = self.cache_dir / f".manifest.tmp{os.getpid()}"
        tmp.write_text(json.dumps(man, indent=1, sort_keys=True) + "\n")
        os.replace(tmp, self._manifest_path())


_store = MacStore()


def default_store() -> MacStore:
    return _store


def set_store(store: MacStore) -> None:
    global _store
    _store = store


def modified_H(mu) -> SymFunc:
    return _store.H(mu)


def cache_io(directory, mode: str, max_degree: int = 5) -> dict:
    """Load or store all H~ up to ``max_degree`` in ``directory``."""
    store = MacStore(directory)
    if mode == "store":
        count = 0
        for n in range(1, max_degree + 1):
            vals = _store.degree(n)
            store._store_degree(n, vals)
            count += len(vals)
        return {"stored": count}
    if mode == "load":
        loaded = missing = 0
        for n in range(1, max_degree + 1):
            got = store._load_degree(n)
            if got is None:
                missing += len(partitions(n))
            else:
                loaded += len(got)
        return {"loaded": loaded, "missing": missing}
    raise ValueError(f"mode must be 'load' or 'store', got {mode!r}")


# ---------------------------------------------------------------------------
# expansion in the H~ basis

def mac_expand(f: SymFunc) -> dict[Partition, RatQT]:
    out = {}
    for n in f.degrees():
        rows = _store.rows(n)
        comp = {lam: c for lam, c in f.terms.items() if lam.size == n}
        for mu, row in rows.items():
            acc = ZERO
            for lam, c in comp.items():
                r = row.get(lam)
                if r is not None:
                    acc = acc + c * r
            if not acc.is_zero():
                out[mu] = acc
    return out


def mac_resum(coeffs: dict) -> SymFunc:
    out: dict[Partition, RatQT] = {}
    for mu, c in coeffs.items():
        for lam, v in modified_H(mu).terms.items():
            w = out.get(lam, ZERO) + c * v
            if w.is_zero():
                out.pop(lam, None)
            else:
                out[lam] = w
    return SymFunc._raw(out)


def apply_diagonal(f: SymFunc, spectrum) -> SymFunc:
    """Operator with H~_mu -> spectrum(mu) H~_mu."""
    coeffs = mac_expand(f)
    scaled = {}
    for mu, c in coeffs.items():
        ev = spectrum(mu)
        if not ev.is_zero():
            scaled[mu] = c * ev
    return mac_resum(scaled)


# ---------------------------------------------------------------------------
# E_{n,k}

@lru_cache(maxsize=None)
def enk(n: int, k: int) -> SymFunc:
    if not (1 <= k <= n):
        raise ValueError(f"E_{{n,k}} needs 1 <= k <= n, got n={n}, k={k}")
    out = SymFunc()
    for r in range(k + 1):
        coef = RatQT.monomial((-1) ** r, q=k + r * (r - 1) // 2) * qbinom(k, r)
        alpha = X * ((1 - RatQT.monomial(q=-r)) / (1 - q))
        out = out + plethysm(e(n), alpha).scale(coef)
    return out


def enk0(n: int, k: int) -> SymFunc:
    """E_{n,k} extended by E_{0,0} = 1 and zero elsewhere."""
    if n == 0 and k == 0:
        return SymFunc.scalar(1)
    if 1 <= k <= n:
        return enk(n, k)
    return SymFunc()


def qq(k: int) -> RatQT:
    """(q; q)_k."""
    return qrising(q, k)
