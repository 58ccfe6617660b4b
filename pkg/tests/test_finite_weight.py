"""Verma straightening, weight components, coinvariants, standard-module test."""

import random
from fractions import Fraction as F

import pytest

from cherednik_lab import finite_weight as fwt
from cherednik_lab.permutations import adjacent, coset_dimension, transposition
from cherednik_lab.scalars import ParameterSet

MU2 = (F(0), F(1, 3))
MU3 = (F(0), F(1, 3), F(5, 7))


def test_lie_act_on_vacuum():
    # raising kills the vacuum, the Cartan reads off the weight
    assert fwt.unit_act(MU2, (1, 2), ()) == {}
    assert fwt.unit_act(MU2, (1, 1), ()) == {(): MU2[0]}
    # [E_12, E_21] = E_11 - E_22 on the vacuum
    out = fwt.unit_act(MU2, (1, 2), ((2, 1),))
    assert out == {(): MU2[0] - MU2[1]}


def test_straighten_reorders_with_commutators():
    # E_32 E_21 = E_21 E_32 + E_31 in U(n)
    out = fwt.straighten(((3, 2), (2, 1)))
    assert out == {((2, 1), (3, 2)): F(1), ((3, 1),): F(1)}
    # straightening twice is stable
    for mono in out:
        assert fwt.straighten(mono) == {mono: F(1)}


def test_weight_component_n1():
    comp = fwt.weight_component(2, 1, MU2, (MU2[0] + 1, MU2[1]))
    assert comp.basis == (((1,), ()),)
    z = fwt.z_matrix(comp, 1)
    assert z.column(0) == {((1,), ()): MU2[0]}


def test_sl_variant_shifts_by_mean():
    ps = ParameterSet.from_nu(F(5, 2), MU2, (1, 1))
    comp = fwt.weight_component(2, 2, ps.mu, ps.lam)
    for p in (1, 2):
        gl = fwt.z_matrix(comp, p, "gl")
        sl = fwt.z_matrix(comp, p, "sl")
        diff = gl.sub(sl)
        expected = sum(MU2, F(0)) / 2
        assert diff.same_mapping(
            fwt.perm_matrix(comp, (0, 1)).scale(0).add(
                fwt.z_matrix(comp, p).sub(fwt.z_matrix(comp, p)).add(
                    fwt.perm_matrix(comp, (0, 1))
                    .compose(fwt.perm_matrix(comp, (0, 1)))
                    .scale(expected)
                )
            )
        )


def test_hecke_relations_as_matrices():
    for m, nu in [(2, (1, 1)), (2, (2, 1)), (3, (1, 1, 1))]:
        n = sum(nu)
        mu = MU3[:m]
        ps = ParameterSet.from_nu(F(5, 2), mu, nu)
        comp = fwt.weight_component(m, n, ps.mu, ps.lam)
        for variant in ("gl", "sl"):
            zs = [fwt.z_matrix(comp, p, variant) for p in range(1, n + 1)]
            for p in range(1, n + 1):
                for q in range(p + 1, n + 1):
                    lhs = zs[p - 1].compose(zs[q - 1]).sub(
                        zs[q - 1].compose(zs[p - 1])
                    )
                    rhs = fwt.perm_matrix(comp, transposition(n, p, q)).compose(
                        zs[p - 1].sub(zs[q - 1])
                    )
                    assert lhs.same_mapping(rhs)
            # conjugation by adjacent transpositions permutes the family
            for i in range(1, n):
                s = fwt.perm_matrix(comp, adjacent(n, i))
                for p in range(1, n + 1):
                    img = adjacent(n, i)[p - 1] + 1
                    assert s.compose(zs[p - 1]).same_mapping(
                        zs[img - 1].compose(s)
                    )


@pytest.mark.parametrize(
    "m, nu",
    [
        (1, (1,)),
        (1, (3,)),
        (2, (1, 0)),
        (2, (1, 1)),
        (2, (2, 1)),
        (3, (1, 1, 1)),
        (3, (2, 0, 1)),
    ],
)
def test_coinvariant_dimension(m, nu):
    n = sum(nu)
    ps = ParameterSet.from_nu(F(5, 2), MU3[:m], nu)
    space = fwt.n_coinvariants(m, n, ps.mu, ps.lam)
    assert space.dim == coset_dimension(nu)


def test_coinvariants_n1_eigenvalue():
    space = fwt.n_coinvariants(2, 1, MU2, (MU2[0] + 1, MU2[1]))
    assert space.dim == 1
    assert space.z_quotient(1).column(0) in ({0: MU2[0]}, {})


def test_hecke_action_descends():
    # the quotient action is a homomorphism for the defining relations
    ps = ParameterSet.from_nu(F(5, 2), MU2, (1, 1))
    space = fwt.n_coinvariants(2, 2, ps.mu, ps.lam)
    z1, z2 = space.z_quotient(1), space.z_quotient(2)
    s = space.perm_quotient(transposition(2, 1, 2))
    lhs = z1.compose(z2).sub(z2.compose(z1))
    assert lhs.same_mapping(s.compose(z1.sub(z2)))


@pytest.mark.parametrize(
    "m, nu",
    [(1, (2,)), (2, (1, 1)), (2, (2, 1)), (2, (0, 2)), (3, (1, 1, 1))],
)
def test_check_standard_iso_passes(m, nu):
    ps = ParameterSet.from_nu(F(5, 2), MU3[:m], nu)
    space = fwt.n_coinvariants(m, sum(nu), ps.mu, ps.lam)
    for variant in ("gl", "sl"):
        report = fwt.check_standard_iso(space, ps, variant)
        assert report.passed, (variant, report)


def test_check_standard_iso_refuses_non_generic():
    ps = ParameterSet.from_nu(F(5, 2), (F(0), F(1)), (1, 1))
    space = fwt.n_coinvariants(2, 2, ps.mu, ps.lam)
    with pytest.raises(ValueError):
        fwt.check_standard_iso(space, ps)


def test_cyclic_eigenvalues_match_characters():
    # mu = (0, 1/3), nu = (1, 1): eigenvalues mu_1 and mu_2 - 1, and the sl
    # variant shifts both down by the mean
    ps = ParameterSet.from_nu(F(5, 2), MU2, (1, 1))
    space = fwt.n_coinvariants(2, 2, ps.mu, ps.lam)
    cyc = space.project_vector({((1, 2), ()): F(1)})
    for variant, offset in (("gl", F(0)), ("sl", -F(1, 6))):
        u1 = space.z_quotient(1, variant)
        img = u1.apply(cyc)
        want = {k: (MU2[0] + offset) * v for k, v in cyc.items() if v}
        want = {k: v for k, v in want.items() if v}
        assert img == want
        u2 = space.z_quotient(2, variant).add(
            space.perm_quotient(transposition(2, 1, 2))
        )
        img2 = u2.apply(cyc)
        assert img2 == {k: (MU2[1] - 1 + offset) * v for k, v in cyc.items()}
