"""Symmetric group plumbing: composition, coset representatives, actions."""

import random
from math import factorial

import pytest

from cherednik_lab.permutations import (
    adjacent,
    all_perms,
    apply_perm,
    blocks,
    compose,
    coset_dimension,
    coset_rep,
    identity,
    in_young_subgroup,
    inverse,
    min_coset_reps,
    reduced_word,
    transposition,
)


def inversions(w):
    return sum(
        1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j]
    )


def test_compose_examples():
    n = 3
    s1, s2 = adjacent(n, 1), adjacent(n, 2)
    assert compose(s1, s1) == identity(n)
    # direct evaluation: s1 o s2 o s1 exchanges 1 and 3
    assert compose(compose(s1, s2), s1) == transposition(n, 1, 3)
    w = (2, 0, 1)
    assert compose(identity(n), w) == w


def test_compose_size_mismatch():
    with pytest.raises(ValueError):
        compose(identity(2), identity(3))


def test_reduced_word_reconstructs():
    for n in (2, 3, 4):
        for w in all_perms(n):
            prod = identity(n)
            for j in reduced_word(w):
                prod = compose(prod, adjacent(n, j))
            assert prod == w
            assert len(reduced_word(w)) == inversions(w)


def test_apply_perm_is_left_action():
    rng = random.Random(1)
    perms = list(all_perms(4))
    seq = ("a", "b", "c", "d")
    for _ in range(50):
        s, t = rng.choice(perms), rng.choice(perms)
        assert apply_perm(s, apply_perm(t, seq)) == apply_perm(compose(s, t), seq)


def brute_min_reps(nu):
    """Oracle: enumerate cosets of the block subgroup, take shortest member."""
    n = sum(nu)
    members = [
        w for w in all_perms(n) if in_young_subgroup(w, nu)
    ]
    seen = set()
    reps = []
    for w in all_perms(n):
        coset = frozenset(compose(w, s) for s in members)
        if coset in seen:
            continue
        seen.add(coset)
        reps.append(min(coset, key=lambda u: (inversions(u), u)))
    return sorted(reps)


@pytest.mark.parametrize(
    "nu", [(1, 1), (2,), (2, 1), (1, 1, 1), (3, 1), (2, 2), (0, 2, 1)]
)
def test_min_coset_reps_against_enumeration(nu):
    reps = min_coset_reps(nu)
    assert list(reps) == brute_min_reps(nu)
    assert len(reps) == coset_dimension(nu)


def test_min_coset_reps_examples():
    assert min_coset_reps((1, 1)) == (identity(2), adjacent(2, 1))
    assert min_coset_reps((2,)) == (identity(2),)
    assert len(min_coset_reps((2, 1))) == 3


@pytest.mark.parametrize("nu", [(1, 1, 1, 1, 1, 1), (2, 2, 2), (3, 2, 1), (4, 2)])
def test_coset_count_n6(nu):
    assert len(min_coset_reps(nu)) == coset_dimension(nu)


def test_unique_factorization():
    # every w is uniquely (minimal rep) * (block element)
    for nu in [(2, 1), (1, 2), (2, 2), (1, 1, 2)]:
        n = sum(nu)
        for w in all_perms(n):
            rep = coset_rep(w, nu)
            assert rep in min_coset_reps(nu)
            s = compose(inverse(rep), w)
            assert in_young_subgroup(s, nu)
            assert compose(rep, s) == w


def test_blocks():
    assert [list(b) for b in blocks((2, 0, 1))] == [[0, 1], [], [2]]
