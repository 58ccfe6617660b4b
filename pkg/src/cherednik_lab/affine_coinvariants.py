"""Affine coinvariant fibers with their monomial Y-basis and operators.

A fiber is indexed by a parameter point whose level is kappa - m; its basis
keys pair a spin sequence in {1..m}^N with a Laurent exponent sequence.  A
box truncates to fixed spin content, fixed total degree, and exponents in
[lo, hi]; the reduced Cherednik operators preserve every box because their
divided-difference part only contracts exponent pairs towards each other.

General elements upstairs carry a word of loop-algebra letters E_ab t^i
still to be applied to the Verma vacuum.  ``reduce_to_y_basis`` eliminates
the word: letters from the lowering half are traded for the (sign-reversed)
loop action on the monomial factors, Cartan letters are evaluated on the
weight of what remains, and letters from the raising half are commuted down
to the vacuum, which they kill.  The central element is evaluated eagerly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .affine_weyl import act_sequence
from .linalg import OperatorMatrix, add_into
from .permutations import Perm, apply_perm
from .scalars import ParameterSet, Scalar, mean

__all__ = [
    "YKey",
    "BoxBasis",
    "DepthExceededError",
    "divided_difference",
    "theta_matrix",
    "theta_matrix_via_reduction",
    "reduce_to_y_basis",
    "loop_apply",
    "bracket_letters",
    "weyl_on_terms",
    "pi_operator",
    "pi_inverse_operator",
    "x_operator",
    "perm_operator",
    "transposition_sum_operator",
    "tau_weights",
    "pi_weights",
]

# a fiber basis key: (spin sequence, exponent sequence)
YKey = tuple[tuple[int, ...], tuple[int, ...]]

# a letter of the loop algebra: (a, b, i) for E_ab t^i; C never appears in
# words because it is evaluated to the level as soon as it is produced
Letter = tuple[int, int, int]

# an element upstairs: {(x-exponents, spins, word of letters): coeff}
BTerms = dict


class DepthExceededError(ValueError):
    """A reduction word exceeded the allowed depth."""


@dataclass(frozen=True)
class BoxBasis:
    """Finite truncation of a fiber: fixed content, degree, exponent window."""

    m: int
    n: int
    content: tuple[int, ...]
    degree: int
    lo: int
    hi: int
    keys: tuple[YKey, ...]
    index: dict

    @classmethod
    def build(
        cls, fw: ParameterSet, degree: int, lo: int, hi: int
    ) -> "BoxBasis":
        if lo > hi:
            raise ValueError("empty exponent window")
        spins = _spins_with_content(fw.m, fw.nu)
        exps = _exponents(fw.n, degree, lo, hi)
        keys = tuple(sorted((a, i) for a in spins for i in exps))
        return cls(
            fw.m,
            fw.n,
            fw.nu,
            degree,
            lo,
            hi,
            keys,
            {k: j for j, k in enumerate(keys)},
        )

    @property
    def dim(self) -> int:
        return len(self.keys)

    def matches(self, fw: ParameterSet) -> bool:
        return self.m == fw.m and self.n == fw.n and self.content == fw.nu


def _spins_with_content(m: int, content: tuple[int, ...]) -> list:
    out = [()]
    for _ in range(sum(content)):
        out = [s + (a,) for s in out for a in range(1, m + 1)]
    want = tuple(content)
    return sorted(
        s for s in out if tuple(s.count(a) for a in range(1, m + 1)) == want
    )


def _exponents(n: int, degree: int, lo: int, hi: int) -> list:
    out = [()]
    for _ in range(n):
        out = [v + (e,) for v in out for e in range(lo, hi + 1)]
    return sorted(v for v in out if sum(v) == degree)


def divided_difference(p: int, r: int, v: tuple[int, ...]) -> list:
    """Expansion of x_p/(x_p - x_r) (1 - swap_{pr}) on the monomial x^v.

    Returns (sign, exponent sequence) pairs; the output exponents at p and r
    stay inside [min(v_p, v_r), max(v_p, v_r)], all other slots unchanged.
    """
    if p == r:
        raise ValueError("divided difference needs p != r")
    vp, vr = v[p - 1], v[r - 1]
    if vp == vr:
        return []
    out = []
    sign = 1 if vp > vr else -1
    small, large = min(vp, vr), max(vp, vr)
    for j in range(large - small):
        w = list(v)
        w[p - 1] = small + 1 + j
        w[r - 1] = large - 1 - j
        out.append((sign, tuple(w)))
    return out


def _swap(seq: tuple, p: int, q: int) -> tuple:
    out = list(seq)
    out[p - 1], out[q - 1] = out[q - 1], out[p - 1]
    return tuple(out)


def theta_matrix(p: int, box: BoxBasis, fw: ParameterSet) -> OperatorMatrix:
    """Closed form of the reduced Cherednik operator on a box."""
    if not box.matches(fw):
        raise ValueError("box content does not match the parameter point")
    mu_mean = mean(fw.mu)

    def image(key: YKey) -> dict:
        spins, v = key
        ap = spins[p - 1]
        out: dict = {}
        diag = fw.kappa * v[p - 1] + fw.mu[ap - 1] - mu_mean - (ap - 1)
        add_into(out, key, diag)
        for r in range(1, fw.n + 1):
            if r == p:
                continue
            swapped = _swap(spins, p, r)
            for sign, w in divided_difference(p, r, v):
                add_into(out, (swapped, w), Fraction(sign))
        for q in range(1, fw.n + 1):
            if q != p and spins[q - 1] < ap:
                add_into(out, (_swap(spins, p, q), v), Fraction(-1))
        return out

    return OperatorMatrix.from_action(box.keys, box.keys, image)


def loop_apply(letter: Letter, xexp: tuple, spins: tuple) -> list:
    """Action of E_ab t^i on the loop factors: all slots carrying spin b."""
    a, b, i = letter
    out = []
    for q, s in enumerate(spins):
        if s == b:
            new_spins = spins[:q] + (a,) + spins[q + 1 :]
            new_x = xexp[:q] + (xexp[q] + i,) + xexp[q + 1 :]
            out.append((new_x, new_spins))
    return out


def bracket_letters(x: Letter, y: Letter, ell: Scalar) -> tuple[list, Scalar]:
    """[E_x, E_y] as (list of (letter, coeff), central scalar contribution)."""
    a, b, i = x
    c, d, j = y
    letters = []
    if b == c:
        letters.append(((a, d, i + j), Fraction(1)))
    if d == a:
        letters.append(((c, b, i + j), Fraction(-1)))
    central = Fraction(0)
    if i == -j and b == c and d == a:
        central = Fraction(i) * ell
    return letters, central


def _letter_kind(letter: Letter) -> str:
    a, b, i = letter
    if i < 0 or (i == 0 and a > b):
        return "lower"
    if i > 0 or (i == 0 and a < b):
        return "raise"
    return "cartan"


def _rest_weight_at(fw: ParameterSet, rest: tuple, a: int) -> Scalar:
    """Value on E_aa of the weight of (word rest) applied to the vacuum."""
    val = fw.mu[a - 1]
    for (c, d, _) in rest:
        val += (c == a) - (d == a)
    return val


def reduce_to_y_basis(
    terms: BTerms, fw: ParameterSet, depth: int | None = 64
) -> dict:
    """Rewrite an element upstairs into fiber coordinates {YKey: coeff}."""
    out: dict = {}

    def rec(xexp: tuple, spins: tuple, word: tuple, coeff: Scalar) -> None:
        if not coeff:
            return
        if not word:
            add_into(out, (spins, xexp), coeff)
            return
        head, rest = word[0], word[1:]
        kind = _letter_kind(head)
        if kind == "lower":
            for x2, s2 in loop_apply(head, xexp, spins):
                rec(x2, s2, rest, -coeff)
        elif kind == "cartan":
            a = head[0]
            rec(xexp, spins, rest, coeff * _rest_weight_at(fw, rest, a))
        else:
            # raising letter: commute down to the vacuum, which it kills
            for j, other in enumerate(rest):
                letters, central = bracket_letters(head, other, fw.ell)
                tail = rest[j + 1 :]
                pre = rest[:j]
                for letter, c in letters:
                    rec(xexp, spins, pre + (letter,) + tail, coeff * c)
                if central:
                    rec(xexp, spins, pre + tail, coeff * central)

    for (xexp, spins, word), coeff in terms.items():
        if depth is not None and len(word) > depth:
            raise DepthExceededError(
                f"word of length {len(word)} exceeds depth bound {depth}"
            )
        rec(tuple(xexp), tuple(spins), tuple(word), coeff)
    return out


def theta_matrix_via_reduction(
    p: int, box: BoxBasis, fw: ParameterSet, current_bound: int = 2
) -> OperatorMatrix:
    """The reduced Cherednik operator computed literally, term group by term
    group, through the generic reduction machinery; dual path to the closed
    form.  The divided-difference part is expanded by actual polynomial
    division, not by the closed-form helper."""
    if not box.matches(fw):
        raise ValueError("box content does not match the parameter point")

    def image(key: YKey) -> dict:
        spins, v = key
        terms: BTerms = {}
        # degree part: kappa x_p d/dx_p
        add_into(terms, (v, spins, ()), fw.kappa * v[p - 1])
        # divided differences against every other slot, by long division
        for r in range(1, fw.n + 1):
            if r == p:
                continue
            for xv, c in _divide_by_difference(p, r, v).items():
                add_into(terms, (xv, _swap(spins, p, r), ()), c)
        # current terms x_p^{-i} E_ab^{(p)} E_ba t^i, with the trace removed
        for i in range(0, current_bound + 1):
            xv = v[: p - 1] + (v[p - 1] - i,) + v[p:]
            b = spins[p - 1]
            for a in range(1, fw.m + 1):
                new_spins = spins[: p - 1] + (a,) + spins[p:]
                add_into(terms, (xv, new_spins, ((b, a, i),)), Fraction(1))
            for e in range(1, fw.m + 1):
                add_into(
                    terms, (xv, spins, ((e, e, i),)), Fraction(-1, fw.m)
                )
        return reduce_to_y_basis(terms, fw)

    return OperatorMatrix.from_action(box.keys, box.keys, image)


def _divide_by_difference(p: int, r: int, v: tuple) -> dict:
    """(x_p x^v - x_p swap_{pr}(x^v)) / (x_p - x_r) as {exponents: coeff}."""
    num: dict = {}
    vp, vr = v[p - 1], v[r - 1]
    plus = list(v)
    plus[p - 1] += 1
    add_into(num, (plus[p - 1], plus[r - 1]), Fraction(1))
    add_into(num, (vr + 1, vp), Fraction(-1))
    quot: dict = {}
    while num:
        (ep, er) = max(num)  # leading term in x_p
        c = num.pop((ep, er))
        quot_key = (ep - 1, er)
        add_into(quot, quot_key, c)
        add_into(num, (ep - 1, er + 1), c)
    out: dict = {}
    for (ep, er), c in quot.items():
        w = list(v)
        w[p - 1], w[r - 1] = ep, er
        add_into(out, tuple(w), c)
    return out


def _weyl_image_with_central(letter: str, m: int, lt: Letter, ell: Scalar):
    """Image of one word letter: (list of (letter, coeff), central scalar)."""
    from .affine_weyl import GEN_C, act_affine_generator

    letters = []
    central = Fraction(0)
    for sym, c in act_affine_generator(letter, m, ("E",) + lt):
        if sym == GEN_C:
            central += c * ell
        else:
            letters.append((sym[1:], c))
    return letters, central


def weyl_on_terms(letter: str, m: int, terms: BTerms, ell: Scalar) -> BTerms:
    """Action of a group generator on elements upstairs.

    Loop factors transform slot by slot; word letters transform by the
    Lie-algebra automorphism, with central corrections evaluated at the
    level as soon as they appear.
    """
    from .affine_weyl import act_loop_vector

    out: BTerms = {}
    for (xexp, spins, word), coeff in terms.items():
        new_x, new_s = list(xexp), list(spins)
        for q in range(len(spins)):
            a2, i2 = act_loop_vector(letter, m, spins[q], xexp[q])
            new_s[q], new_x[q] = a2, i2
        expansions: list[tuple[tuple, Scalar]] = [((), Fraction(1))]
        for lt in word:
            letters, central = _weyl_image_with_central(letter, m, lt, ell)
            nxt = []
            for wrd, c0 in expansions:
                for sym, c in letters:
                    nxt.append((wrd + (sym,), c0 * c))
                if central:
                    nxt.append((wrd, c0 * central))
            expansions = nxt
        for wrd, c0 in expansions:
            add_into(out, (tuple(new_x), tuple(new_s), wrd), coeff * c0)
    return out


def tau_weights(c: int, fw: ParameterSet) -> ParameterSet:
    """Parameter point of the target fiber of the c-th intertwiner."""
    mu2 = act_sequence((f"t{c}",), fw.mu, fw.ell, shifted=True)
    lam2 = act_sequence((f"t{c}",), fw.lam, fw.ell, shifted=True)
    return ParameterSet(fw.m, fw.n, fw.kappa, mu2, lam2)


def pi_weights(fw: ParameterSet, inverse: bool = False) -> ParameterSet:
    word = ("pi^-1",) if inverse else ("pi",)
    mu2 = act_sequence(word, fw.mu, fw.ell, shifted=True)
    lam2 = act_sequence(word, fw.lam, fw.ell, shifted=True)
    return ParameterSet(fw.m, fw.n, fw.kappa, mu2, lam2)


def pi_operator(
    box: BoxBasis, fw: ParameterSet
) -> tuple[OperatorMatrix, BoxBasis, ParameterSet]:
    """The degree-one map: spins rotate forward, top spins drop one t-degree."""
    if not box.matches(fw):
        raise ValueError("box content does not match the parameter point")
    fw2 = pi_weights(fw)
    box2 = BoxBasis.build(fw2, box.degree - fw.nu[-1], box.lo - 1, box.hi)

    def image(key: YKey) -> dict:
        spins, v = key
        new_s = tuple(a % box.m + 1 for a in spins)
        new_v = tuple(
            e - (1 if a == box.m else 0) for a, e in zip(spins, v)
        )
        return {(new_s, new_v): Fraction(1)}

    return OperatorMatrix.from_action(box.keys, box2.keys, image), box2, fw2


def pi_inverse_operator(
    box: BoxBasis, fw: ParameterSet
) -> tuple[OperatorMatrix, BoxBasis, ParameterSet]:
    if not box.matches(fw):
        raise ValueError("box content does not match the parameter point")
    fw2 = pi_weights(fw, inverse=True)
    box2 = BoxBasis.build(fw2, box.degree + fw.nu[0], box.lo, box.hi + 1)

    def image(key: YKey) -> dict:
        spins, v = key
        new_s = tuple((a - 2) % box.m + 1 for a in spins)
        new_v = tuple(e + (1 if a == 1 else 0) for a, e in zip(spins, v))
        return {(new_s, new_v): Fraction(1)}

    return OperatorMatrix.from_action(box.keys, box2.keys, image), box2, fw2


def x_operator(q: int, box: BoxBasis, target: BoxBasis) -> OperatorMatrix:
    """Multiplication by x_q as a map into the degree+1 box."""

    def image(key: YKey) -> dict:
        spins, v = key
        w = v[: q - 1] + (v[q - 1] + 1,) + v[q:]
        return {(spins, w): Fraction(1)}

    return OperatorMatrix.from_action(box.keys, target.keys, image)


def perm_operator(w: Perm, box: BoxBasis) -> OperatorMatrix:
    """Simultaneous position action on spins and exponents."""

    def image(key: YKey) -> dict:
        spins, v = key
        return {(apply_perm(w, spins), apply_perm(w, v)): Fraction(1)}

    return OperatorMatrix.from_action(box.keys, box.keys, image)


def transposition_sum_operator(p: int, box: BoxBasis) -> OperatorMatrix:
    """The sum of transposition maps swapping slot p with each q < p."""
    from .permutations import transposition

    total = OperatorMatrix.zero(box.keys, box.keys)
    for q in range(1, p):
        total = total.add(perm_operator(transposition(box.n, q, p), box))
    return total
