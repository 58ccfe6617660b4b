"""The trigonometric Cherednik algebra C_N and its induced modules.

Normal form is (Laurent x-monomial) * (permutation) * (u-monomial), per the
PBW bijection.  Multiplication pushes u-generators right past x-monomials
one variable at a time: the commutator of u_p with a single x_q^{+-1} lives
in the group-Laurent subalgebra, where products are monomial, and the
remaining crossing of u past a permutation is the Hecke rewriting.  Every
commutator term has strictly smaller u-degree, so the recursion terminates.
The inverse variables are handled through
[u, x^{-1}] = -x^{-1} [u, x] x^{-1}, not separate axioms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import hecke_algebra as hk
from .linalg import OperatorMatrix, add_into
from .permutations import (
    Perm,
    apply_perm,
    compose,
    identity,
    reduced_word,
    transposition,
)
from .scalars import ParameterSet, Scalar, scalar

__all__ = [
    "CherednikElement",
    "BoxOverflowError",
    "czero",
    "cone",
    "x_gen",
    "c_group",
    "c_u",
    "c_z",
    "from_hecke",
    "multiply_c",
    "shift_automorphism_c",
    "format_element_c",
    "parse_element_c",
    "InducedModuleBox",
    "induced_action",
]

CTerm = tuple[tuple[int, ...], Perm, tuple[int, ...]]


class BoxOverflowError(ValueError):
    """An x-generator pushed an exponent outside the truncation box."""


@dataclass(frozen=True, eq=False)
class CherednikElement:
    """Normal-form element: map (x-exponents, perm, u-exponents) -> coeff."""

    n: int
    kappa: Scalar
    terms: dict

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "terms", {k: v for k, v in self.terms.items() if v}
        )

    def _check(self, other: "CherednikElement") -> None:
        if self.n != other.n:
            raise ValueError("size mismatch between Cherednik elements")
        if self.kappa != other.kappa:
            raise ValueError("kappa mismatch between Cherednik elements")

    def __add__(self, other: "CherednikElement") -> "CherednikElement":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            add_into(out, k, v)
        return CherednikElement(self.n, self.kappa, out)

    def __sub__(self, other: "CherednikElement") -> "CherednikElement":
        return self + other.scale(-1)

    def __mul__(self, other: "CherednikElement") -> "CherednikElement":
        return multiply_c(self, other)

    def scale(self, c: Scalar | int) -> "CherednikElement":
        c = scalar(c)
        return CherednikElement(
            self.n, self.kappa, {k: c * v for k, v in self.terms.items()}
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CherednikElement)
            and self.n == other.n
            and self.kappa == other.kappa
            and self.terms == other.terms
        )

    def is_zero(self) -> bool:
        return not self.terms


def czero(n: int, kappa: Scalar) -> CherednikElement:
    return CherednikElement(n, scalar(kappa), {})


def cone(n: int, kappa: Scalar) -> CherednikElement:
    return c_group(identity(n), kappa)


def _zeros(n: int) -> tuple[int, ...]:
    return (0,) * n


def c_group(w: Perm, kappa: Scalar, coeff: Scalar | int = 1) -> CherednikElement:
    n = len(w)
    return CherednikElement(
        n, scalar(kappa), {(_zeros(n), w, _zeros(n)): scalar(coeff)}
    )


def x_gen(n: int, kappa: Scalar, q: int, power: int = 1) -> CherednikElement:
    v = [0] * n
    v[q - 1] = power
    return CherednikElement(
        n, scalar(kappa), {(tuple(v), identity(n), _zeros(n)): Fraction(1)}
    )


def c_u(n: int, kappa: Scalar, p: int) -> CherednikElement:
    k = [0] * n
    k[p - 1] = 1
    return CherednikElement(
        n, scalar(kappa), {(_zeros(n), identity(n), tuple(k)): Fraction(1)}
    )


def c_z(n: int, kappa: Scalar, p: int) -> CherednikElement:
    return from_hecke(hk.z_element(n, p), kappa)


def from_hecke(a: hk.HeckeElement, kappa: Scalar) -> CherednikElement:
    n = a.n
    return CherednikElement(
        n,
        scalar(kappa),
        {(_zeros(n), w, k): c for (w, k), c in a.terms.items()},
    )


def _u_comm_x(p: int, q: int, sign: int, kappa: Scalar, n: int) -> list:
    """[u_p, x_q^{sign}] as group-Laurent terms (x-exponents, perm, coeff)."""
    base: list[tuple[tuple[int, ...], Perm, Scalar]] = []

    def mono(var: int, perm: Perm, coeff: Scalar) -> tuple:
        v = [0] * n
        v[var - 1] = 1
        return (tuple(v), perm, coeff)

    if q != p:
        var = q if q < p else p
        base.append(mono(var, transposition(n, p, q), Fraction(-1)))
    else:
        v0 = [0] * n
        v0[p - 1] = 1
        base.append((tuple(v0), identity(n), kappa))
        for r in range(1, n + 1):
            if r == p:
                continue
            var = r if r < p else p
            base.append(mono(var, transposition(n, p, r), Fraction(1)))
    if sign == 1:
        return base
    # [u, x^{-1}] = -x^{-1} [u, x] x^{-1}, and w x_q^{-1} = x_{w(q)}^{-1} w
    out = []
    for v, w, c in base:
        v2 = list(v)
        v2[q - 1] -= 1
        v2[w[q - 1]] -= 1
        out.append((tuple(v2), w, -c))
    return out


@lru_cache(maxsize=200000)
def _u_past_x(p: int, v: tuple[int, ...], kappa: Scalar, n: int) -> tuple:
    """u_p x^v = x^v u_p + (returned group-Laurent terms, no u part)."""
    if all(e == 0 for e in v):
        return ()
    q = next(i + 1 for i, e in enumerate(v) if e)
    sign = 1 if v[q - 1] > 0 else -1
    v_rest = list(v)
    v_rest[q - 1] -= sign
    v_rest = tuple(v_rest)
    out: dict = {}
    # x_q^{sign} times the lower terms from u_p x^{v_rest}
    for (xv, w, c) in _u_past_x(p, v_rest, kappa, n):
        xv2 = list(xv)
        xv2[q - 1] += sign
        add_into(out, (tuple(xv2), w), c)
    # [u_p, x_q^{sign}] x^{v_rest}: commute x^{v_rest} through each perm
    for (xv, w, c) in _u_comm_x(p, q, sign, kappa, n):
        moved = apply_perm(w, v_rest)
        add_into(out, (tuple(x + y for x, y in zip(xv, moved)), w), c)
    return tuple((xv, w, c) for (xv, w), c in out.items())


def _lmul_u(p: int, el: CherednikElement) -> CherednikElement:
    n, kappa = el.n, el.kappa
    out: dict = {}
    for (v, w, k), c in el.terms.items():
        # main term: x^v (u_p w) u^k, crossing u_p past w in the Hecke algebra
        for (g, m), c2 in hk._umono_times_word(
            n, tuple(1 if i == p - 1 else 0 for i in range(n)), reduced_word(w)
        ):
            key = (v, g, tuple(x + y for x, y in zip(m, k)))
            add_into(out, key, c * c2)
        # lower terms: (group-Laurent) w u^k
        for (xv, g, c2) in _u_past_x(p, v, kappa, n):
            key = (tuple(xv), compose(g, w), k)
            add_into(out, key, c * c2)
    return CherednikElement(n, kappa, out)


def multiply_c(a: CherednikElement, b: CherednikElement) -> CherednikElement:
    """Exact normal-form product in C_N."""
    a._check(b)
    n, kappa = a.n, a.kappa
    total: dict = {}
    for (va, wa, ka), ca in a.terms.items():
        part = b
        for p in range(n, 0, -1):
            for _ in range(ka[p - 1]):
                part = _lmul_u(p, part)
        for (v, w, k), c in part.terms.items():
            key = (
                tuple(x + y for x, y in zip(va, apply_perm(wa, v))),
                compose(wa, w),
                k,
            )
            add_into(total, key, ca * c)
    return CherednikElement(n, kappa, total)


def shift_automorphism_c(a: CherednikElement, f: Scalar | int) -> CherednikElement:
    """u_p -> u_p + f extended to C_N, fixing the x's and permutations."""
    f = scalar(f)
    out: dict = {}
    for (v, w, k), c in a.terms.items():
        shifted = hk.shift_automorphism(
            hk.HeckeElement(a.n, {(w, k): c}), f
        )
        for (w2, k2), c2 in shifted.terms.items():
            add_into(out, (v, w2, k2), c2)
    return CherednikElement(a.n, a.kappa, out)


def _format_xmono(v: tuple[int, ...]) -> str:
    parts = [
        f"x{q + 1}" + (f"^{e}" if e != 1 else "")
        for q, e in enumerate(v)
        if e
    ]
    return " ".join(parts) if parts else "1"


def format_element_c(a: CherednikElement) -> str:
    """Text form, e.g. "1 * x1^-2 x3 * s2 * u1"."""
    if not a.terms:
        return "0"
    bits = []
    for (v, w, k), c in sorted(a.terms.items()):
        bits.append(
            f"{c} * {_format_xmono(v)} * {hk._format_perm(w)} * {hk._format_umono(k)}"
        )
    return " + ".join(bits)


def parse_element_c(n: int, kappa: Scalar, text: str) -> CherednikElement:
    text = text.strip()
    if text == "0":
        return czero(n, kappa)
    out: dict = {}
    for chunk in text.split(" + "):
        coeff_s, x_s, perm_s, u_s = (part.strip() for part in chunk.split("*"))
        v = [0] * n
        if x_s != "1":
            for tok in x_s.split():
                body = tok[1:]
                idx, _, exp = body.partition("^")
                v[int(idx) - 1] += int(exp) if exp else 1
        w = identity(n)
        if perm_s != "e":
            from .permutations import adjacent

            for tok in perm_s.split():
                w = compose(w, adjacent(n, int(tok[1:])))
        k = [0] * n
        if u_s != "1":
            for tok in u_s.split():
                body = tok[1:]
                idx, _, exp = body.partition("^")
                k[int(idx) - 1] += int(exp) if exp else 1
        add_into(out, (tuple(v), w, tuple(k)), scalar(coeff_s))
    return CherednikElement(n, scalar(kappa), out)


@dataclass(frozen=True)
class InducedModuleBox:
    """Finite slice of the induced module: x-monomials of fixed total degree
    with exponents in [lo, hi], tensored with the coset basis."""

    params: ParameterSet
    degree: int
    lo: int
    hi: int
    basis: tuple  # of (x-exponents, coset representative)
    index: dict

    @classmethod
    def build(
        cls, params: ParameterSet, degree: int, lo: int, hi: int
    ) -> "InducedModuleBox":
        from .permutations import min_coset_reps

        exps = _bounded_exponents(params.n, degree, lo, hi)
        reps = min_coset_reps(params.nu)
        basis = tuple((v, w) for v in exps for w in reps)
        return cls(
            params, degree, lo, hi, basis, {lab: i for i, lab in enumerate(basis)}
        )

    @property
    def dim(self) -> int:
        return len(self.basis)


def _bounded_exponents(n: int, degree: int, lo: int, hi: int) -> list:
    out = [()]
    for _ in range(n):
        out = [v + (e,) for v in out for e in range(lo, hi + 1)]
    return sorted(v for v in out if sum(v) == degree)


_module_cache: dict = {}


def _standard_module(params: ParameterSet) -> hk.StandardModule:
    if params not in _module_cache:
        _module_cache[params] = hk.StandardModule(params)
    return _module_cache[params]


def induced_action(
    box: InducedModuleBox,
    a: CherednikElement,
    target: InducedModuleBox | None = None,
) -> OperatorMatrix:
    """Matrix of an element on a box, into the same or an explicit target box."""
    params = box.params
    if a.n != params.n:
        raise ValueError("element size does not match the module")
    if a.kappa != params.kappa:
        raise ValueError("element kappa does not match the module")
    tgt = target if target is not None else box
    module = _standard_module(params)
    nu = params.nu

    def image(label):
        v, w = label
        prod = multiply_c(
            a,
            CherednikElement(
                a.n, a.kappa, {(v, identity(a.n), _zeros(a.n)): Fraction(1)}
            ),
        )
        out: dict = {}
        for (xv, sig, k), c in prod.terms.items():
            if any(e < tgt.lo or e > tgt.hi for e in xv):
                raise BoxOverflowError(
                    f"exponent {xv} leaves [{tgt.lo}, {tgt.hi}]"
                )
            vec = {w: Fraction(1)}
            for p, e in enumerate(k, start=1):
                for _ in range(e):
                    vec = module.u_matrix(p).apply(vec)
            for lab, d in vec.items():
                from .permutations import coset_rep

                add_into(out, (xv, coset_rep(compose(sig, lab), nu)), c * d)
        return out

    return OperatorMatrix.from_action(box.basis, tgt.basis, image)
