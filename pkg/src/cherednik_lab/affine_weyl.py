"""The extended affine Weyl group on m letters and its standard actions.

Words are free strings over t0..t{m-1}, pi, pi^-1; equality of words is
decided through the semidirect-product image in S_m x Z^m, where pi maps to
the translation (1,0,...,0) times the long cycle and t0 maps to
(1,0,...,0,-1) times the transposition of 1 and m.  The group also acts

  * on the integers, with period m,
  * on level-ell weight sequences, plainly and through the rho-shifted
    circle action,
  * on the loop generators E_ab t^i (with central corrections) and on the
    loop basis vectors e_a t^i.

>>> act_sequence(("t1",), (Fraction(0), Fraction(1, 3)), Fraction(1, 2), shifted=True)
(Fraction(-2, 3), Fraction(1, 1))
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .permutations import Perm, adjacent, compose, identity, inverse, transposition
from .scalars import Scalar, scalar

__all__ = [
    "Letter",
    "WeylWord",
    "parse_word",
    "format_word",
    "word_inverse",
    "word_degree",
    "SemidirectElement",
    "semidirect_image",
    "act_on_integers",
    "act_sequence",
    "semidirect_act_sequence",
    "act_loop_vector",
    "act_affine_generator",
    "GEN_C",
]

Letter = str
WeylWord = tuple[Letter, ...]

# symbol tags for the affine Lie algebra generators
GEN_C = ("C",)


def parse_word(text: str, m: int) -> WeylWord:
    """Parse words like "pi t0 t1 pi^-1"; whitespace separated."""
    letters = []
    for tok in text.split():
        if tok in ("pi", "pi^-1"):
            letters.append(tok)
        elif tok.startswith("t") and tok[1:].isdigit() and 0 <= int(tok[1:]) < m:
            letters.append(tok)
        else:
            raise ValueError(f"unknown generator {tok!r} for m={m}")
    return tuple(letters)


def format_word(word: WeylWord) -> str:
    return " ".join(word)


def word_inverse(word: WeylWord) -> WeylWord:
    out = []
    for letter in reversed(word):
        if letter == "pi":
            out.append("pi^-1")
        elif letter == "pi^-1":
            out.append("pi")
        else:
            out.append(letter)
    return tuple(out)


def word_degree(word: WeylWord) -> int:
    """Degree in the Z-grading: pi counts 1, pi^-1 counts -1, t_c counts 0."""
    return sum(1 if l == "pi" else -1 if l == "pi^-1" else 0 for l in word)


@dataclass(frozen=True)
class SemidirectElement:
    """Element (translation) * (permutation) of S_m x Z^m."""

    perm: Perm
    translation: tuple[int, ...]

    def __mul__(self, other: "SemidirectElement") -> "SemidirectElement":
        # (v1 s1)(v2 s2) = (v1 + s1(v2)) (s1 s2), with s(v)_a = v_{s^{-1}(a)}
        moved = [0] * len(self.translation)
        for i, v in enumerate(other.translation):
            moved[self.perm[i]] = v
        return SemidirectElement(
            compose(self.perm, other.perm),
            tuple(a + b for a, b in zip(self.translation, moved)),
        )

    def inverse(self) -> "SemidirectElement":
        inv = inverse(self.perm)
        moved = [0] * len(self.translation)
        for i, v in enumerate(self.translation):
            moved[inv[i]] = -v
        return SemidirectElement(inv, tuple(moved))

    @property
    def degree(self) -> int:
        return sum(self.translation)

    @classmethod
    def one(cls, m: int) -> "SemidirectElement":
        return cls(identity(m), (0,) * m)


def _letter_image(letter: Letter, m: int) -> SemidirectElement:
    if m < 2:
        raise ValueError("the semidirect image needs m >= 2")
    if letter == "pi":
        cycle = tuple((i + 1) % m for i in range(m))  # long cycle a -> a+1
        return SemidirectElement(cycle, (1,) + (0,) * (m - 1))
    if letter == "pi^-1":
        return _letter_image("pi", m).inverse()
    c = int(letter[1:])
    if c == 0:
        return SemidirectElement(
            transposition(m, 1, m), (1,) + (0,) * (m - 2) + (-1,)
        )
    return SemidirectElement(adjacent(m, c), (0,) * m)


def semidirect_image(word: WeylWord, m: int) -> SemidirectElement:
    out = SemidirectElement.one(m)
    for letter in word:
        out = out * _letter_image(letter, m)
    return out


def _letter_on_integer(letter: Letter, m: int, d: int) -> int:
    if letter == "pi":
        return d + 1
    if letter == "pi^-1":
        return d - 1
    c = int(letter[1:])
    if (d - c) % m == 0:
        return d + 1
    if (d - c - 1) % m == 0:
        return d - 1
    return d


def act_on_integers(word: WeylWord, m: int, d: int) -> int:
    """Period-m permutation action on Z; rightmost letter acts first."""
    for letter in reversed(word):
        d = _letter_on_integer(letter, m, d)
    return d


def _letter_on_sequence(
    letter: Letter, entries: tuple[Scalar, ...], ell: Scalar, shifted: bool
) -> tuple[Scalar, ...]:
    m = len(entries)
    one = Fraction(1) if shifted else Fraction(0)
    if letter == "pi":
        return (entries[-1] + ell + one,) + tuple(e + one for e in entries[:-1])
    if letter == "pi^-1":
        return tuple(e - one for e in entries[1:]) + (entries[0] - ell - one,)
    c = int(letter[1:])
    if c == 0:
        if m == 1:
            raise ValueError("t0 needs m >= 2 on sequences")
        return (
            (entries[-1] + ell + one,)
            + entries[1:-1]
            + (entries[0] - ell - one,)
        )
    out = list(entries)
    out[c - 1], out[c] = out[c] - one, out[c - 1] + one
    return tuple(out)


def act_sequence(
    word: WeylWord,
    entries: Sequence[Scalar],
    ell: Scalar,
    shifted: bool = False,
) -> tuple[Scalar, ...]:
    """Plain or shifted action on a level-ell weight sequence."""
    cur = tuple(scalar(e) for e in entries)
    ell = scalar(ell)
    for letter in reversed(word):
        cur = _letter_on_sequence(letter, cur, ell, shifted)
    return cur


def semidirect_act_sequence(
    g: SemidirectElement,
    entries: Sequence[Scalar],
    ell: Scalar,
    shifted: bool = False,
) -> tuple[Scalar, ...]:
    """The same actions computed through S_m x Z^m.

    Plainly, S_m permutes and Z^m adds multiples of ell; in the shifted
    version the permutation part is rho-conjugated and the translations add
    multiples of kappa = ell + m.
    """
    m = len(entries)
    ell = scalar(ell)
    vals = tuple(scalar(e) for e in entries)
    if shifted:
        rho = tuple(Fraction(a) for a in range(1, m + 1))
        vals = tuple(v - r for v, r in zip(vals, rho))
        permuted = [Fraction(0)] * m
        for i, v in enumerate(vals):
            permuted[g.perm[i]] = v
        scale = ell + m
        return tuple(
            p + scale * t + r for p, t, r in zip(permuted, g.translation, rho)
        )
    permuted = [Fraction(0)] * m
    for i, v in enumerate(vals):
        permuted[g.perm[i]] = v
    return tuple(p + ell * t for p, t in zip(permuted, g.translation))


def _wrap(a: int, m: int) -> int:
    return ((a - 1) % m) + 1


def act_loop_vector(letter: Letter, m: int, a: int, i: int) -> tuple[int, int]:
    """Image of the loop basis vector e_a t^i (monomial action)."""
    if letter == "pi":
        return (_wrap(a + 1, m), i - (1 if a == m else 0))
    if letter == "pi^-1":
        return (_wrap(a - 1, m), i + (1 if a == 1 else 0))
    c = int(letter[1:])
    if c == 0:
        if a == 1:
            return (m, i + 1)
        if a == m:
            return (1, i - 1)
        return (a, i)
    if a == c:
        return (c + 1, i)
    if a == c + 1:
        return (c, i)
    return (a, i)


def act_affine_generator(letter: Letter, m: int, sym: tuple) -> list:
    """Image of C or E_ab t^i under one group generator.

    Symbols are ("C",) or ("E", a, b, i); the result is a list of
    (symbol, coefficient) pairs including central corrections.
    """
    if sym == GEN_C:
        return [(GEN_C, Fraction(1))]
    _, a, b, i = sym
    if letter in ("pi", "pi^-1"):
        shift = 1 if letter == "pi" else -1
        a2, b2 = _wrap(a + shift, m), _wrap(b + shift, m)
        if letter == "pi":
            i2 = i - (1 if a == m else 0) + (1 if b == m else 0)
            central = -Fraction(1) if (i == 0 and a == b and a == m) else None
        else:
            i2 = i + (1 if a == 1 else 0) - (1 if b == 1 else 0)
            central = Fraction(1) if (i == 0 and a == b and a == 1) else None
        out = [(("E", a2, b2, i2), Fraction(1))]
        if central is not None:
            out.append((GEN_C, central))
        return out
    c = int(letter[1:])
    if c == 0:
        t0 = {1: m, m: 1}
        a2, b2 = t0.get(a, a), t0.get(b, b)
        i2 = i + (a == 1) - (a == m) - (b == 1) + (b == m)
        out = [(("E", a2, b2, i2), Fraction(1))]
        if i == 0 and a == b and a in (1, m):
            out.append((GEN_C, Fraction(1 if a == 1 else -1)))
        return out
    tc = {c: c + 1, c + 1: c}
    return [(("E", tc.get(a, a), tc.get(b, b), i), Fraction(1))]
