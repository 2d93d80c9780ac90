import random

import pytest

from thetacalc import macdonald as mac
from thetacalc import operators as ops
from thetacalc.qfield import ONE, PoleError, gen, q, t
from thetacalc.symfunc import SymFunc, e, h, p, partitions, random_p, s, star

v = gen("v")


def H(*mu):
    return mac.modified_H(mu)


# hand-derived from H~_2 = s2 + q s11, H~_11 = s2 + t s11

def test_nabla_small():
    assert ops.nabla(H(2)) == H(2).scale(q)
    assert ops.nabla(e(1)) == -e(1)
    assert ops.nabla(e(2)) == s([2]) + s([1, 1]).scale(q + t)
    assert ops.nabla(SymFunc.scalar(5)) == SymFunc.scalar(5)


def test_nabla_inverse():
    F = e(3) + h(2)
    assert ops.nabla(ops.nabla(F), inverse=True) == F


def test_delta_small():
    assert ops.delta(e(1), H(2, 1)) == H(2, 1).scale(1 + q + t)
    assert ops.delta(e(1), e(2)) == s([2]) + s([1, 1]).scale(1 + q + t)
    assert ops.delta_prime(e(1), e(2)) == s([2]) + s([1, 1]).scale(q + t)


def test_delta_vanishes_above_degree():
    for n in range(1, 4):
        for mu in partitions(n):
            assert ops.delta(e(n + 1), H(*mu)).is_zero()


def test_delta_top_is_nabla():
    for n in range(1, 5):
        assert ops.delta(e(n), e(n)) == ops.nabla(e(n)).scale(-1 if n % 2 else 1)


def test_theta_small():
    assert ops.theta(e(1), e(1)) == e(2)
    assert ops.theta(e(0), e(2)) == e(2)
    assert ops.theta(e(2), SymFunc.scalar(1)).is_zero()


def test_pi_inverse_on_constants():
    with pytest.raises(ValueError):
        ops.pi_op(SymFunc.scalar(1), inverse=True)
    F = e(2) + s([2, 1])
    assert ops.pi_op(ops.pi_op(F), inverse=True) == F


def test_star_self_adjoint():
    rng = random.Random(3)
    f, g = random_p(3, rng), random_p(3, rng)
    assert star(ops.nabla(f), g) == star(f, ops.nabla(g))
    assert star(ops.delta(e(2), f), g) == star(f, ops.delta(e(2), g))


def test_delta_v_inverse_pair():
    F = e(2) + h(1)
    assert ops.delta_v_series(ops.delta_v_series(F), inverse=True) == F
    assert ops.delta_v_series(SymFunc.scalar(1)) == SymFunc.scalar(1)


def test_delta_v_eigen():
    assert ops.delta_v_eigen((1,)) == 1 - v
    assert ops.delta_v_eigen((2,)) == (1 - v) * (1 - v * q)
    assert ops.delta_v_eigen((1, 1), drop_corner=True) == 1 - v * t


def test_theta_tilde():
    F = e(2)
    assert ops.theta_tilde(F, 0) == F
    assert ops.theta_tilde(F, 1, limit=True) == ops.theta(e(1), F).scale(-1)
    assert ops.theta_tilde(F, 2, limit=True) == ops.theta(e(2), F)
    with pytest.raises(ValueError):
        ops.theta_tilde(F, -1)


def test_mutations():
    with ops.perturb("nabla_sign_flip"):
        assert ops.active_mutations() == {"nabla_sign_flip"}
        assert ops.nabla(e(1)) == e(1)
    assert ops.nabla(e(1)) == -e(1)
    with pytest.raises(ValueError):
        with ops.perturb("bogus"):
            pass
    ops.set_mutation("drop_theta_tilde_v_factor")
    try:
        assert not ops.theta_tilde(SymFunc.scalar(1), 1, limit=True).is_zero()
        with pytest.raises(PoleError):
            ops.theta_tilde(e(1), 1, limit=True)
    finally:
        ops.set_mutation(None)
    assert not ops.active_mutations()


def test_parse_symfunc():
    assert ops.parse_symfunc("e0") == SymFunc.scalar(1)
    assert ops.parse_symfunc("3") == SymFunc.scalar(3)
    assert ops.parse_symfunc("H[2]") == s([2]) + s([1, 1]).scale(q)
    assert ops.parse_symfunc("p2*") == p(2).scale(ONE / ((1 - q**2) * (1 - t**2)))
    assert ops.parse_symfunc("s[]") == SymFunc.scalar(1)
    with pytest.raises(ValueError):
        ops.parse_symfunc("x3")


def test_op_from_word():
    # theta(e1) e1 = e2, then h1^perp e2 = e1
    assert ops.op_from_word("skew(h1) . theta(e1)")(e(1)) == e(1)
    assert ops.op_from_word("skew(h1)")(e(2)) == e(1)
    assert ops.op_from_word("nabla . nabla^-1")(e(3)) == e(3)
    assert ops.op_from_word([ops.parse_atom("mult(e1)"), ops.parse_atom("mult(h1)")])(SymFunc.scalar(1)) == e(1) * h(1)
    assert ops.parse_atom("theta(e2)").shift == 2
    assert ops.parse_atom("skew(e2)").shift == -2
    with pytest.raises(ValueError):
        ops.parse_atom("theta(e1)^-1")
    with pytest.raises(ValueError):
        ops.parse_atom("frobnicate")
    with pytest.raises(ValueError):
        ops.parse_atom("pleth(nope)")


def test_series_coefficients():
    F = e(2)
    assert ops.T_coeff(1, F) == e(1)
    assert ops.T_coeff(1, F, sign=-1) == -e(1)
    assert ops.T_coeff(0, F) == F
    assert ops.P_coeff(0, F) == F
    assert ops.delta_u_prime_coeff(0, F) == F
