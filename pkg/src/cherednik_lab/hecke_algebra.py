"""The degenerate affine Hecke algebra H_N in PBW normal form.

Elements are finite sums of basis words (permutation) * (monomial in the
commuting generators u_1..u_N), stored as a map from (perm, u-exponents) to
an exact scalar.  Products are normalised by pushing u-monomials rightward
past permutations with

    u_{p+1} s_p = s_p u_p + 1,      u_p s_p = s_p u_{p+1} - 1,

and u_q s_p = s_p u_q otherwise; each rewrite strictly reduces the number
of (u, s) inversions at fixed u-degree, so the recursion terminates.

>>> N = 2
>>> u1, s1 = u_gen(N, 1), group_element(adjacent(N, 1))
>>> print(format_element(multiply(u1, s1)))
1 * s1 * u2 + -1 * e * 1
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .linalg import OperatorMatrix, add_into
from .permutations import (
    Perm,
    adjacent,
    blocks,
    compose,
    coset_rep,
    identity,
    min_coset_reps,
    reduced_word,
    transposition,
)
from .scalars import ParameterSet, Scalar, scalar

__all__ = [
    "HeckeElement",
    "zero",
    "one",
    "group_element",
    "u_gen",
    "u_monomial",
    "jm_element",
    "z_element",
    "multiply",
    "evaluate_to_group_algebra",
    "shift_automorphism",
    "format_element",
    "parse_element",
    "StandardModule",
]

Term = tuple[Perm, tuple[int, ...]]


@dataclass(frozen=True, eq=False)
class HeckeElement:
    """Normal-form element: map (permutation, u-exponents) -> coefficient."""

    n: int
    terms: dict

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "terms", {k: v for k, v in self.terms.items() if v}
        )

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            add_into(out, k, v)
        return HeckeElement(self.n, out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scale(-1)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return multiply(self, other)

    def scale(self, c: Scalar | int) -> "HeckeElement":
        c = scalar(c)
        return HeckeElement(self.n, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, HeckeElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def is_zero(self) -> bool:
        return not self.terms

    def u_degree(self) -> int:
        return max((sum(k) for (_, k) in self.terms), default=0)

    def _check(self, other: "HeckeElement") -> None:
        if self.n != other.n:
            raise ValueError("size mismatch between Hecke elements")


def zero(n: int) -> HeckeElement:
    return HeckeElement(n, {})


def one(n: int) -> HeckeElement:
    return group_element(identity(n))


def group_element(w: Perm, coeff: Scalar | int = 1) -> HeckeElement:
    return HeckeElement(len(w), {(w, (0,) * len(w)): scalar(coeff)})


def u_gen(n: int, p: int) -> HeckeElement:
    if not 1 <= p <= n:
        raise ValueError(f"u index {p} out of range")
    k = [0] * n
    k[p - 1] = 1
    return HeckeElement(n, {(identity(n), tuple(k)): Fraction(1)})


def u_monomial(n: int, exps: tuple[int, ...]) -> HeckeElement:
    return HeckeElement(n, {(identity(n), tuple(exps)): Fraction(1)})


def jm_element(n: int, p: int) -> HeckeElement:
    """The transposition sum s_{1p} + ... + s_{p-1,p} (zero for p = 1)."""
    out = zero(n)
    for q in range(1, p):
        out = out + group_element(transposition(n, q, p))
    return out


def z_element(n: int, p: int) -> HeckeElement:
    """u_p minus the transposition sum."""
    if not 1 <= p <= n:
        raise ValueError(f"z index {p} out of range")
    return u_gen(n, p) - jm_element(n, p)


@lru_cache(maxsize=None)
def _xy_s(a: int, b: int) -> tuple:
    """Normal form of u_p^a u_{p+1}^b s_p inside the rank-one subalgebra.

    Terms are ((has_s, (c, d)), coeff) standing for (s_p or 1) u_p^c u_{p+1}^d.
    """
    if a == 0 and b == 0:
        return (((True, (0, 0)), Fraction(1)),)
    out: dict = {}
    if b > 0:
        # x^a y^b s = (x^a y^{b-1} s) x + x^a y^{b-1}
        for (has_s, (c, d)), co in _xy_s(a, b - 1):
            add_into(out, (has_s, (c + 1, d)), co)
        add_into(out, (False, (a, b - 1)), Fraction(1))
    else:
        # x^a s = (x^{a-1} s) y - x^{a-1}
        for (has_s, (c, d)), co in _xy_s(a - 1, 0):
            add_into(out, (has_s, (c, d + 1)), co)
        add_into(out, (False, (a - 1, 0)), Fraction(-1))
    return tuple(out.items())


@lru_cache(maxsize=200000)
def _umono_times_word(
    n: int, k: tuple[int, ...], word: tuple[int, ...]
) -> tuple:
    """Normal form of u^k * (s_{j_1} o ... o s_{j_r}), as ((perm, exps), coeff) pairs."""
    if not word:
        return (((identity(n), k), Fraction(1)),)
    j, rest = word[0], word[1:]
    out: dict = {}
    for (has_s, (c, d)), co in _xy_s(k[j - 1], k[j]):
        k2 = list(k)
        k2[j - 1], k2[j] = c, d
        g = adjacent(n, j) if has_s else identity(n)
        for (h, m), co2 in _umono_times_word(n, tuple(k2), rest):
            add_into(out, (compose(g, h), m), co * co2)
    return tuple(out.items())


def multiply(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Exact normal-form product."""
    a._check(b)
    n = a.n
    out: dict = {}
    words = {wb: reduced_word(wb) for (wb, _) in b.terms}
    for (wa, ka), ca in a.terms.items():
        for (wb, kb), cb in b.terms.items():
            for (g, m), c in _umono_times_word(n, ka, words[wb]):
                key = (compose(wa, g), tuple(x + y for x, y in zip(m, kb)))
                add_into(out, key, ca * cb * c)
    return HeckeElement(n, out)


def evaluate_to_group_algebra(a: HeckeElement) -> HeckeElement:
    """Image under u_p -> s_{1p} + ... + s_{p-1,p}; lands in the group algebra."""
    n = a.n
    jms = [jm_element(n, p) for p in range(1, n + 1)]
    out = zero(n)
    for (w, k), c in a.terms.items():
        img = group_element(w, c)
        for p, e in enumerate(k):
            for _ in range(e):
                img = multiply(img, jms[p])
        out = out + img
    return out


def shift_automorphism(a: HeckeElement, f: Scalar | int) -> HeckeElement:
    """Image under u_p -> u_p + f (an algebra automorphism)."""
    f = scalar(f)
    n = a.n
    out: dict = {}

    def expand(k: tuple[int, ...]) -> dict:
        # product of binomial expansions of (u_p + f)^{k_p}
        acc = {(0,) * n: Fraction(1)}
        for p, e in enumerate(k):
            if e == 0:
                continue
            nxt: dict = {}
            for j in range(e + 1):
                coeff = comb(e, j) * f ** (e - j)
                for m, c in acc.items():
                    m2 = list(m)
                    m2[p] += j
                    add_into(nxt, tuple(m2), c * coeff)
            acc = nxt
        return acc

    for (w, k), c in a.terms.items():
        for m, c2 in expand(k).items():
            add_into(out, (w, m), c * c2)
    return HeckeElement(n, out)


def _format_perm(w: Perm) -> str:
    word = reduced_word(w)
    return " ".join(f"s{j}" for j in word) if word else "e"


def _format_umono(k: tuple[int, ...]) -> str:
    parts = [
        f"u{p + 1}" + (f"^{e}" if e != 1 else "")
        for p, e in enumerate(k)
        if e
    ]
    return " ".join(parts) if parts else "1"


def format_element(a: HeckeElement) -> str:
    """Text form, e.g. "3/2 * s1 s2 * u1^2 u3"; terms sorted for stability."""
    if not a.terms:
        return "0"
    bits = []
    for (w, k), c in sorted(a.terms.items()):
        bits.append(f"{c} * {_format_perm(w)} * {_format_umono(k)}")
    return " + ".join(bits)


def parse_element(n: int, text: str) -> HeckeElement:
    """Inverse of format_element."""
    text = text.strip()
    if text == "0":
        return zero(n)
    out: dict = {}
    for chunk in text.split(" + "):
        coeff_s, perm_s, u_s = (part.strip() for part in chunk.split("*"))
        w = identity(n)
        if perm_s != "e":
            for tok in perm_s.split():
                w = compose(w, adjacent(n, int(tok[1:])))
        k = [0] * n
        if u_s != "1":
            for tok in u_s.split():
                body = tok[1:]
                idx, _, exp = body.partition("^")
                k[int(idx) - 1] += int(exp) if exp else 1
        add_into(out, (w, tuple(k)), scalar(coeff_s))
    return HeckeElement(n, out)


class StandardModule:
    """The induced module with basis the minimal coset representatives.

    The generator subgroup S_nu acts trivially on the inducing line and u_p
    acts there by the character value mu_a - a + h, where p sits at place h
    of block a.
    """

    def __init__(self, params: ParameterSet):
        self.params = params
        self.basis = min_coset_reps(params.nu)
        self.index = {w: i for i, w in enumerate(self.basis)}
        char: list[Scalar] = []
        for a, blk in enumerate(blocks(params.nu), start=1):
            for h, _ in enumerate(blk, start=1):
                char.append(params.mu[a - 1] - a + h)
        self.character = tuple(char)
        self._u_cache: dict[int, OperatorMatrix] = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def perm_matrix(self, w: Perm) -> OperatorMatrix:
        nu = self.params.nu
        return OperatorMatrix.from_action(
            self.basis,
            self.basis,
            lambda b: {coset_rep(compose(w, b), nu): Fraction(1)},
        )

    def _u_image(self, p: int, word: tuple[int, ...]) -> dict:
        """u_p applied to the coset of s_{j_1} o ... o s_{j_r}, as label -> coeff."""
        nu = self.params.nu
        if not word:
            return {identity(self.params.n): self.character[p - 1]}
        j, rest = word[0], word[1:]
        s = adjacent(self.params.n, j)
        rest_perm = identity(self.params.n)
        for jj in rest:
            rest_perm = compose(rest_perm, adjacent(self.params.n, jj))
        rest_label = coset_rep(rest_perm, nu)
        if p == j:
            inner, corr = self._u_image(j + 1, rest), Fraction(-1)
        elif p == j + 1:
            inner, corr = self._u_image(j, rest), Fraction(1)
        else:
            inner, corr = self._u_image(p, rest), None
        out: dict = {}
        for lab, c in inner.items():
            add_into(out, coset_rep(compose(s, lab), nu), c)
        if corr is not None:
            add_into(out, rest_label, corr)
        return out

    def u_matrix(self, p: int) -> OperatorMatrix:
        if p not in self._u_cache:
            self._u_cache[p] = OperatorMatrix.from_action(
                self.basis,
                self.basis,
                lambda b: self._u_image(p, reduced_word(b)),
            )
        return self._u_cache[p]

    def action(self, a: HeckeElement) -> OperatorMatrix:
        """Matrix of a normal-form element on the coset basis."""
        if a.n != self.params.n:
            raise ValueError("element size does not match the module")
        total = OperatorMatrix.zero(self.basis, self.basis)
        for (w, k), c in a.terms.items():
            op = OperatorMatrix.identity(self.basis)
            for p, e in enumerate(k, start=1):
                for _ in range(e):
                    op = self.u_matrix(p).compose(op)
            op = self.perm_matrix(w).compose(op)
            total = total.add(op.scale(c))
        return total
