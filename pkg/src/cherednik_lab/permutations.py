"""The symmetric group S_N on positions 1..N, stored as 0-based image tuples.

A permutation ``w`` is a tuple with ``w[i]`` the 0-based image of position
``i``; mathematical indices (the p in sigma_p, u_p, spin slots) stay 1-based
at every public boundary.  The action on sequences is by positions,

    (w . v)[w[i]] = v[i],

so that ``compose(s, t)`` acting equals s acting after t.

>>> compose(adjacent(3, 1), adjacent(3, 2))
(1, 2, 0)
>>> min_coset_reps((2, 1))
((0, 1, 2), (0, 2, 1), (1, 2, 0))
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations as _all_perms
from math import factorial, prod
from typing import Iterator, Sequence

Perm = tuple[int, ...]

__all__ = [
    "Perm",
    "identity",
    "adjacent",
    "transposition",
    "compose",
    "inverse",
    "apply_perm",
    "reduced_word",
    "all_perms",
    "is_composition",
    "blocks",
    "coset_dimension",
    "min_coset_reps",
    "coset_rep",
    "in_young_subgroup",
]


def identity(n: int) -> Perm:
    return tuple(range(n))


def adjacent(n: int, p: int) -> Perm:
    """The transposition of p and p+1 (1-based), 1 <= p <= n-1."""
    if not 1 <= p <= n - 1:
        raise ValueError(f"adjacent transposition index {p} out of range for n={n}")
    w = list(range(n))
    w[p - 1], w[p] = w[p], w[p - 1]
    return tuple(w)


def transposition(n: int, p: int, q: int) -> Perm:
    """The transposition of p and q (1-based, distinct)."""
    if p == q or not (1 <= p <= n and 1 <= q <= n):
        raise ValueError(f"bad transposition ({p}, {q}) for n={n}")
    w = list(range(n))
    w[p - 1], w[q - 1] = w[q - 1], w[p - 1]
    return tuple(w)


def compose(s: Perm, t: Perm) -> Perm:
    """(s o t)(p) = s(t(p))."""
    if len(s) != len(t):
        raise ValueError("size mismatch in permutation composition")
    return tuple(s[t[i]] for i in range(len(t)))


def inverse(s: Perm) -> Perm:
    inv = [0] * len(s)
    for i, si in enumerate(s):
        inv[si] = i
    return tuple(inv)


def apply_perm(s: Perm, seq: Sequence) -> tuple:
    """Position action: entry at slot i moves to slot s(i)."""
    out = [None] * len(seq)
    for i, x in enumerate(seq):
        out[s[i]] = x
    return tuple(out)


@lru_cache(maxsize=None)
def reduced_word(w: Perm) -> tuple[int, ...]:
    """1-based adjacent indices (j_1, ..., j_k) with w = s_{j_1} o ... o s_{j_k}."""
    w = list(w)
    word: list[int] = []
    # peel descents from the right: w = w' o s_i drops length iff w[i-1] > w[i]
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                word.append(i + 1)
                changed = True
    word.reverse()
    return tuple(word)


def all_perms(n: int) -> Iterator[Perm]:
    return _all_perms(range(n))


def is_composition(nu: Sequence[int], n: int) -> bool:
    return all(isinstance(v, int) and v >= 0 for v in nu) and sum(nu) == n


def blocks(nu: Sequence[int]) -> list[range]:
    """Consecutive position blocks (0-based) of sizes nu_1, ..., nu_m."""
    out, start = [], 0
    for v in nu:
        out.append(range(start, start + v))
        start += v
    return out


def coset_dimension(nu: Sequence[int]) -> int:
    return factorial(sum(nu)) // prod(factorial(v) for v in nu)


def min_coset_reps(nu: Sequence[int]) -> tuple[Perm, ...]:
    """Minimal-length representatives of S_N / S_nu, sorted lexicographically.

    A representative is increasing on each nu-block, so it is determined by
    the set of values it assigns to each block.
    """
    n = sum(nu)
    if not is_composition(nu, n):
        raise ValueError(f"{nu} is not a composition")
    reps: list[Perm] = []

    def fill(rest: tuple[int, ...], remaining: list[int], acc: list[int]) -> None:
        if not remaining:
            reps.append(tuple(acc))
            return
        size, tail = remaining[0], remaining[1:]
        for chosen in combinations(rest, size):
            left = tuple(x for x in rest if x not in chosen)
            fill(left, tail, acc + list(chosen))

    fill(tuple(range(n)), list(nu), [])
    return tuple(sorted(reps))


def coset_rep(w: Perm, nu: Sequence[int]) -> Perm:
    """The minimal representative of the coset w S_nu: sort w block-wise."""
    out = list(w)
    for blk in blocks(nu):
        vals = sorted(out[i] for i in blk)
        for i, v in zip(blk, vals):
            out[i] = v
    return tuple(out)


def in_young_subgroup(s: Perm, nu: Sequence[int]) -> bool:
    return all(all(s[i] in blk for i in blk) for blk in blocks(nu))
