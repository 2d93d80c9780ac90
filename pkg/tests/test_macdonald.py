import json

import pytest

from thetacalc import macdonald as mac
from thetacalc.qfield import M, ONE, ZERO, RatQT, q, t
from thetacalc.symfunc import Partition, e, h, hall, partitions, s, star, to_schur


def schur_sum(terms):
    out = None
    for lam, c in terms.items():
        piece = s(lam).scale(c)
        out = piece if out is None else out + piece
    return out


# literature tables of modified Macdonald polynomials in the Schur basis
H_TABLE = {
    (1,): {(1,): ONE},
    (2,): {(2,): ONE, (1, 1): q},
    (1, 1): {(2,): ONE, (1, 1): t},
    (2, 1): {(3,): ONE, (2, 1): q + t, (1, 1, 1): q * t},
    (3,): {(3,): ONE, (2, 1): q + q**2, (1, 1, 1): q**3},
    (1, 1, 1): {(3,): ONE, (2, 1): t + t**2, (1, 1, 1): t**3},
    (2, 2): {(4,): ONE, (3, 1): q + t + q * t, (2, 2): q**2 + t**2,
             (2, 1, 1): q * t + q**2 * t + q * t**2, (1, 1, 1, 1): q**2 * t**2},
    (3, 1): {(4,): ONE, (3, 1): q + q**2 + t, (2, 2): q**2 + q * t,
             (2, 1, 1): q**3 + q * t + q**2 * t, (1, 1, 1, 1): q**3 * t},
}


def test_stats_examples():
    st = mac.stats([2, 1])
    assert st.B == 1 + q + t
    assert st.T == q * t
    assert st.D == M * (1 + q + t) - 1
    assert st.Pi == (1 - q) * (1 - t)
    assert mac.stats([1]).w == M
    empty = mac.stats([])
    assert empty.B == ZERO and empty.T == ONE and empty.w == ONE


@pytest.mark.parametrize("mu", sorted(H_TABLE))
def test_modified_H_tables(mu):
    assert mac.modified_H(mu) == schur_sum(H_TABLE[mu])


def test_H_from_axioms_matches_store():
    for n in range(1, 5):
        for mu in partitions(n):
            assert mac.H_from_axioms(mu) == mac.modified_H(mu), mu


def test_normalization_and_orthogonality():
    for n in range(1, 5):
        mus = partitions(n)
        for mu in mus:
            H = mac.modified_H(mu)
            assert hall(H, h(n)) == ONE
            assert star(H, H) == mac.stats(mu).w
            for nu in mus:
                if nu != mu:
                    assert star(H, mac.modified_H(nu)).is_zero()


def test_kostka_positive_up_to_5():
    for n in range(1, 6):
        for mu in partitions(n):
            for lam, c in to_schur(mac.modified_H(mu)).items():
                assert c.den == ONE.den, (mu, lam)
                coeffs = c.num.coeffs()
                assert all(x > 0 for x in coeffs), (mu, lam, c)


def swap_qt(c):
    assert c.is_polynomial()
    out = ZERO
    for exps, coeff in c.num.terms():
        out = out + RatQT.monomial(int(coeff), q=exps[1], t=exps[0])
    return out


def test_qt_symmetry():
    for n in range(1, 5):
        for mu in partitions(n):
            swapped = to_schur(mac.modified_H(Partition(mu).conjugate()))
            H = to_schur(mac.modified_H(mu))
            assert {lam: swap_qt(c) for lam, c in H.items()} == swapped


def test_order_independence():
    forward = mac.compute_H_degree(4)
    backward = mac.compute_H_degree(4, order=list(reversed(partitions(4))))
    assert forward == backward


def test_expand_roundtrip():
    f = e(3) + h(2) * e(1) + s([1, 1, 1]).scale(q)
    assert mac.mac_resum(mac.mac_expand(f)) == f
    coeffs = mac.mac_expand(mac.modified_H([2, 1]))
    assert coeffs == {Partition([2, 1]): ONE}


def test_apply_diagonal_scales_eigenvectors():
    H = mac.modified_H([3, 1])
    got = mac.apply_diagonal(H, lambda mu: mac.stats(mu).B)
    assert got == H.scale(mac.stats([3, 1]).B)


def test_enk():
    assert mac.enk(1, 1) == e(1)
    for n in range(1, 6):
        total = mac.enk(n, 1)
        for k in range(2, n + 1):
            total = total + mac.enk(n, k)
        assert total == e(n)
    assert mac.enk0(0, 0) == mac.enk0(0, 0).scalar(1)
    assert mac.enk0(2, 3).is_zero()
    with pytest.raises(ValueError):
        mac.enk(2, 0)


def test_qq():
    assert mac.qq(0) == ONE
    assert mac.qq(2) == (1 - q) * (1 - q**2)


def test_degree_error():
    store = mac.MacStore(max_degree=3)
    with pytest.raises(mac.DegreeError):
        store.degree(4)


def test_cache_store_and_load(tmp_path):
    info = mac.cache_io(tmp_path, "store", 3)
    assert info == {"stored": 1 + 2 + 3}
    assert mac.cache_io(tmp_path, "load", 3) == {"loaded": 6, "missing": 0}
    assert mac.cache_io(tmp_path, "load", 4) == {"loaded": 6, "missing": 5}
    fresh = mac.MacStore(tmp_path)
    assert fresh.H([2, 1]) == mac.modified_H([2, 1])
    manifest = json.loads((tmp_path / "manifest").read_text())
    assert manifest["max_degree"] == 3


def test_cache_tamper_detected(tmp_path):
    mac.cache_io(tmp_path, "store", 2)
    path = next(tmp_path.glob("*.sym"))
    path.write_text(path.read_text().replace("1", "2", 1))
    with pytest.raises(mac.CacheCorruptError):
        mac.cache_io(tmp_path, "load", 2)


def test_cache_bad_manifest(tmp_path):
    mac.cache_io(tmp_path, "store", 1)
    (tmp_path / "manifest").write_text("{not json")
    with pytest.raises(mac.CacheCorruptError):
        mac.MacStore(tmp_path).degree(1)
