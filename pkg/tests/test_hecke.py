"""Normal forms, defining relations, and standard modules for H_N."""

import random
from fractions import Fraction as F

import pytest

from cherednik_lab import hecke_algebra as hk
from cherednik_lab.linalg import OperatorMatrix
from cherednik_lab.permutations import (
    adjacent,
    all_perms,
    apply_perm,
    compose,
    identity,
    inverse,
    transposition,
)
from cherednik_lab.scalars import ParameterSet


def random_element(rng, n, max_terms=2, max_exp=1):
    perms = list(all_perms(n))
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        w = rng.choice(perms)
        k = tuple(rng.randint(0, max_exp) for _ in range(n))
        terms[(w, k)] = F(rng.randint(-4, 4), rng.randint(1, 3))
    return hk.HeckeElement(n, terms)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_defining_relations_reduce_to_zero(n):
    for p in range(1, n):
        sp = hk.group_element(adjacent(n, p))
        for q in range(1, n + 1):
            lhs = hk.multiply(sp, hk.u_gen(n, q))
            if q == p:
                rhs = hk.multiply(hk.u_gen(n, p + 1), sp) - hk.one(n)
            elif q == p + 1:
                rhs = hk.multiply(hk.u_gen(n, p), sp) + hk.one(n)
            else:
                rhs = hk.multiply(hk.u_gen(n, q), sp)
            assert (lhs - rhs).is_zero()
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            a = hk.multiply(hk.u_gen(n, p), hk.u_gen(n, q))
            b = hk.multiply(hk.u_gen(n, q), hk.u_gen(n, p))
            assert (a - b).is_zero()


def test_u_past_sigma_example():
    n = 2
    prod = hk.multiply(hk.u_gen(n, 1), hk.group_element(adjacent(n, 1)))
    assert prod.terms == {
        (adjacent(n, 1), (0, 1)): F(1),
        (identity(n), (0, 0)): F(-1),
    }


def test_z_commutator_normal_form():
    n = 3
    z1, z2 = hk.z_element(n, 1), hk.z_element(n, 2)
    comm = hk.multiply(z1, z2) - hk.multiply(z2, z1)
    want = hk.multiply(hk.group_element(transposition(n, 1, 2)), z1 - z2)
    assert (comm - want).is_zero()


def test_z_element_examples():
    assert hk.z_element(3, 1) == hk.u_gen(3, 1)
    n = 2
    assert hk.z_element(n, 2) == hk.u_gen(n, 2) - hk.group_element(
        transposition(n, 1, 2)
    )
    with pytest.raises(ValueError):
        hk.z_element(2, 3)


def test_z_conjugation_random():
    rng = random.Random(7)
    n = 4
    perms = list(all_perms(n))
    for _ in range(10):
        w = rng.choice(perms)
        p = rng.randint(1, n)
        lhs = hk.multiply(
            hk.multiply(hk.group_element(w), hk.z_element(n, p)),
            hk.group_element(inverse(w)),
        )
        assert (lhs - hk.z_element(n, w[p - 1] + 1)).is_zero()


def test_associativity_random():
    rng = random.Random(11)
    for n in (2, 3):
        for _ in range(40):
            a, b, c = (random_element(rng, n) for _ in range(3))
            lhs = hk.multiply(hk.multiply(a, b), c)
            rhs = hk.multiply(a, hk.multiply(b, c))
            assert (lhs - rhs).is_zero()


def test_evaluation_examples():
    n = 2
    assert hk.evaluate_to_group_algebra(hk.u_gen(n, 2)) == hk.group_element(
        transposition(n, 1, 2)
    )
    for n in (2, 3):
        for p in range(1, n + 1):
            assert hk.evaluate_to_group_algebra(hk.z_element(n, p)).is_zero()
    w = (1, 2, 0)
    assert hk.evaluate_to_group_algebra(hk.group_element(w)) == hk.group_element(w)


def test_shift_examples_and_multiplicativity():
    n = 3
    a = hk.u_gen(n, 1)
    assert hk.shift_automorphism(a, 0) == a
    assert hk.shift_automorphism(a, 3) == a + hk.one(n).scale(3)
    assert hk.shift_automorphism(hk.z_element(n, 2), F(1, 2)) == hk.z_element(
        n, 2
    ) + hk.one(n).scale(F(1, 2))
    rng = random.Random(3)
    f = F(2, 3)
    for _ in range(10):
        a, b = random_element(rng, n), random_element(rng, n)
        lhs = hk.shift_automorphism(hk.multiply(a, b), f)
        rhs = hk.multiply(
            hk.shift_automorphism(a, f), hk.shift_automorphism(b, f)
        )
        assert (lhs - rhs).is_zero()


def test_text_format_round_trip():
    n = 3
    rng = random.Random(5)
    for _ in range(10):
        a = random_element(rng, n, max_terms=3, max_exp=2)
        assert hk.parse_element(n, hk.format_element(a)) == a
    assert hk.format_element(hk.zero(n)) == "0"


def test_standard_module_one_dimensional():
    # a single block: the whole module is one line, every z_p acts by mu_1
    f = F(2, 7)
    ps = ParameterSet(1, 3, F(5, 2), (f,), (f + 3,))
    mod = hk.StandardModule(ps)
    assert mod.dim == 1
    for p in (1, 2, 3):
        op = mod.action(hk.z_element(3, p))
        assert op.cols[0] == {0: f}


def test_standard_module_characters_and_action():
    ps = ParameterSet.from_nu(F(5, 2), (F(0), F(1, 3)), (1, 1))
    mod = hk.StandardModule(ps)
    assert mod.dim == 2
    assert mod.character == (F(0), F(-2, 3))
    e, s1 = identity(2), adjacent(2, 1)
    u1 = mod.u_matrix(1)
    assert u1.column(mod.index[e]) == {}  # mu_1 = 0
    assert u1.column(mod.index[s1]) == {s1: F(1, 3) - 1, e: F(-1)}


def test_standard_action_is_homomorphism():
    rng = random.Random(13)
    ps = ParameterSet.from_nu(F(5, 2), (F(0), F(1, 3)), (2, 1))
    mod = hk.StandardModule(ps)
    for _ in range(8):
        a, b = random_element(rng, 3), random_element(rng, 3)
        lhs = mod.action(hk.multiply(a, b))
        rhs = mod.action(a).compose(mod.action(b))
        assert lhs.same_mapping(rhs)


def test_z_commutator_on_standard_modules():
    for nu in [(1, 1), (2, 1), (1, 1, 1)]:
        n = sum(nu)
        mu = (F(0), F(1, 3), F(5, 7))[: len(nu)]
        ps = ParameterSet.from_nu(F(5, 2), mu, nu)
        mod = hk.StandardModule(ps)
        for p in range(1, n + 1):
            for q in range(1, n + 1):
                if p == q:
                    continue
                zp = mod.action(hk.z_element(n, p))
                zq = mod.action(hk.z_element(n, q))
                lhs = zp.compose(zq).sub(zq.compose(zp))
                rhs = mod.perm_matrix(transposition(n, p, q)).compose(
                    zp.sub(zq)
                )
                assert lhs.same_mapping(rhs)


def test_shift_pullback_matches_shifted_parameters():
    rng = random.Random(17)
    f = F(3, 5)
    base = ParameterSet.from_nu(F(5, 2), (F(0), F(1, 3)), (1, 2))
    shifted = ParameterSet.from_nu(
        F(5, 2), tuple(x + f for x in base.mu), (1, 2)
    )
    mod0, mod1 = hk.StandardModule(base), hk.StandardModule(shifted)
    assert mod0.basis == mod1.basis
    for _ in range(6):
        a = random_element(rng, 3)
        assert mod1.action(a).same_mapping(
            mod0.action(hk.shift_automorphism(a, f))
        )
