"""gl_m-side realisation: Verma modules, weight components, n-coinvariants.

The Verma module for a highest weight mu is presented on monomials in the
lowering matrix units E_ab (a > b) applied to a vacuum vector; monomials
are kept normal-ordered under the lexicographic order on (a, b) and any
product is straightened back with [E_ab, E_cd] = d_bc E_ad - d_da E_cb.
The weight-lambda component of (C^m)^{tensor N} (x) M_mu is spanned by
pairs (spin sequence, monomial) whose combined weight is lambda; the
quotient by the diagonal lowering action is computed as an exact cokernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import OperatorMatrix, add_into, rref
from .permutations import Perm, adjacent, blocks, coset_dimension
from .scalars import ParameterSet, Scalar, mean

__all__ = [
    "Monomial",
    "straighten",
    "unit_act",
    "WeightComponent",
    "weight_component",
    "CoinvariantSpaceFin",
    "n_coinvariants",
    "IsoReport",
    "check_standard_iso",
]

# a normal-ordered product of lowering units, each (a, b) with a > b
Monomial = tuple[tuple[int, int], ...]


def _bracket(x: tuple[int, int], y: tuple[int, int]) -> list[tuple[tuple[int, int], int]]:
    """[E_x, E_y] as a list of (unit, sign)."""
    a, b = x
    c, d = y
    out = []
    if b == c:
        out.append(((a, d), 1))
    if d == a:
        out.append(((c, b), -1))
    return out


def straighten(word: tuple[tuple[int, int], ...]) -> dict:
    """Normal form of a product of lowering units, as {Monomial: coeff}."""
    for i in range(len(word) - 1):
        if word[i] > word[i + 1]:
            swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2 :]
            out: dict = {}
            for mono, c in straighten(swapped).items():
                add_into(out, mono, c)
            for unit, sign in _bracket(word[i], word[i + 1]):
                shorter = word[:i] + (unit,) + word[i + 2 :]
                for mono, c in straighten(shorter).items():
                    add_into(out, mono, Fraction(sign) * c)
            return out
    return {word: Fraction(1)}


def _mono_weight_at(mono: Monomial, a: int) -> int:
    """Coefficient of epsilon_a in the weight of the monomial."""
    return sum((u[0] == a) - (u[1] == a) for u in mono)


def unit_act(mu: Sequence[Scalar], unit: tuple[int, int], mono: Monomial) -> dict:
    """E_unit applied to mono * vacuum in the Verma module for mu."""
    a, b = unit
    if a > b:
        return straighten((unit,) + mono)
    if a == b:
        return {mono: mu[a - 1] + _mono_weight_at(mono, a)}
    # raising: commute towards the vacuum, which it kills
    if not mono:
        return {}
    y, rest = mono[0], mono[1:]
    out: dict = {}
    for mono2, c in unit_act(mu, unit, rest).items():
        for mono3, c2 in unit_act(mu, y, mono2).items():
            add_into(out, mono3, c * c2)
    for unit2, sign in _bracket(unit, y):
        for mono2, c in unit_act(mu, unit2, rest).items():
            add_into(out, mono2, Fraction(sign) * c)
    return out


def _monomials_of_weight(m: int, delta: tuple[int, ...]) -> list[Monomial]:
    """All normal-ordered monomials whose weight is the integer vector delta."""
    roots = [(a, b) for a in range(1, m + 1) for b in range(1, a)]
    roots.sort()
    # sum of (a - b) over the multiset bounds its size
    height = sum(a * d for a, d in enumerate(delta, start=1))
    if height < 0:
        return []
    out: list[Monomial] = []

    def rec(idx: int, remaining: tuple[int, ...], budget: int, acc: list) -> None:
        if idx == len(roots):
            if all(x == 0 for x in remaining):
                out.append(tuple(acc))
            return
        a, b = roots[idx]
        rem = list(remaining)
        for count in range(budget + 1):
            rec(idx + 1, tuple(rem), budget - count * (a - b), acc + [(a, b)] * count)
            rem[a - 1] -= 1
            rem[b - 1] += 1
            if budget - (count + 1) * (a - b) < 0:
                break

    rec(0, delta, height, [])
    return sorted(set(out))


@dataclass(frozen=True)
class WeightComponent:
    """The weight-lambda piece of (C^m)^{tensor N} (x) M_mu."""

    m: int
    n: int
    mu: tuple[Scalar, ...]
    lam: tuple[Scalar, ...]
    basis: tuple  # of (spins, Monomial)
    index: dict

    @property
    def dim(self) -> int:
        return len(self.basis)


def weight_component(
    m: int, n: int, mu: Sequence[Scalar], lam: Sequence[Scalar]
) -> WeightComponent:
    mu = tuple(mu)
    lam = tuple(lam)
    basis = []
    for spins in _all_spins(m, n):
        delta = [lam[a] - mu[a] for a in range(m)]
        for s in spins:
            delta[s - 1] -= 1
        if any(d.denominator != 1 for d in map(Fraction, delta)):
            continue
        delta_t = tuple(int(d) for d in delta)
        for mono in _monomials_of_weight(m, delta_t):
            basis.append((spins, mono))
    basis.sort()
    index = {lab: i for i, lab in enumerate(basis)}
    return WeightComponent(m, n, mu, lam, tuple(basis), index)


def _all_spins(m: int, n: int) -> list[tuple[int, ...]]:
    out = [()]
    for _ in range(n):
        out = [s + (a,) for s in out for a in range(1, m + 1)]
    return sorted(out)


def _diag_unit_image(comp: WeightComponent, unit: tuple[int, int], label) -> dict:
    """Diagonal action of one matrix unit on a basis label, as label -> coeff."""
    a, b = unit
    spins, mono = label
    out: dict = {}
    for p, s in enumerate(spins):
        if s == b:
            new_spins = spins[:p] + (a,) + spins[p + 1 :]
            add_into(out, (new_spins, mono), Fraction(1))
    for mono2, c in unit_act(comp.mu, unit, mono).items():
        add_into(out, (spins, mono2), c)
    return out


def lie_matrix(
    source: WeightComponent, target: WeightComponent, unit: tuple[int, int]
) -> OperatorMatrix:
    """Matrix of the diagonal action of E_unit between two weight components."""
    return OperatorMatrix.from_action(
        source.basis, target.basis, lambda lab: _diag_unit_image(source, unit, lab)
    )


def z_image(comp: WeightComponent, p: int, label, variant: str = "gl") -> dict:
    """Image of a basis label under sum_{a,b} E_ab^(p) (x) E_ba (optionally
    minus the 1/m central correction for the sl variant)."""
    spins, mono = label
    old = spins[p - 1]
    out: dict = {}
    for a in range(1, comp.m + 1):
        new_spins = spins[: p - 1] + (a,) + spins[p:]
        for mono2, c in unit_act(comp.mu, (old, a), mono).items():
            add_into(out, (new_spins, mono2), c)
    if variant == "sl":
        add_into(out, label, -sum(comp.mu, Fraction(0)) / comp.m)
    elif variant != "gl":
        raise ValueError(f"unknown variant {variant!r}")
    return out


def z_matrix(comp: WeightComponent, p: int, variant: str = "gl") -> OperatorMatrix:
    return OperatorMatrix.from_action(
        comp.basis, comp.basis, lambda lab: z_image(comp, p, lab, variant)
    )


def perm_matrix(comp: WeightComponent, w: Perm) -> OperatorMatrix:
    """Permutation of the N tensor slots (position action on spins)."""
    from .permutations import apply_perm

    return OperatorMatrix.from_action(
        comp.basis,
        comp.basis,
        lambda lab: {(apply_perm(w, lab[0]), lab[1]): Fraction(1)},
    )


@dataclass(frozen=True)
class CoinvariantSpaceFin:
    """Cokernel of the diagonal lowering action on a weight component.

    ``class_basis`` lists the ambient basis indices whose classes form a
    basis of the quotient; ``projection[i]`` expresses the class of ambient
    basis vector i in those coordinates.
    """

    component: WeightComponent
    class_basis: tuple[int, ...]
    projection: tuple[dict, ...]
    generic: bool

    @property
    def dim(self) -> int:
        return len(self.class_basis)

    def project_vector(self, vec: dict) -> dict:
        """Ambient {label: coeff} -> quotient coordinates {class pos: coeff}."""
        out: dict = {}
        for lab, c in vec.items():
            for pos, d in self.projection[self.component.index[lab]].items():
                add_into(out, pos, c * d)
        return out

    def quotient_matrix(self, ambient_image) -> OperatorMatrix:
        """Descend an ambient action (label -> {label: coeff}) to the quotient."""
        labels = tuple(range(self.dim))

        def image(pos):
            amb_label = self.component.basis[self.class_basis[pos]]
            return self.project_vector(ambient_image(amb_label))

        return OperatorMatrix.from_action(labels, labels, image)

    def z_quotient(self, p: int, variant: str = "gl") -> OperatorMatrix:
        return self.quotient_matrix(
            lambda lab: z_image(self.component, p, lab, variant)
        )

    def perm_quotient(self, w: Perm) -> OperatorMatrix:
        from .permutations import apply_perm

        return self.quotient_matrix(
            lambda lab: {(apply_perm(w, lab[0]), lab[1]): Fraction(1)}
        )


def n_coinvariants(
    m: int, n: int, mu: Sequence[Scalar], lam: Sequence[Scalar]
) -> CoinvariantSpaceFin:
    """Quotient of the weight-lambda component by the lowering images."""
    from .scalars import is_generic

    comp = weight_component(m, n, mu, lam)
    rows: list[list[Scalar]] = []
    for a in range(1, m + 1):
        for b in range(1, a):
            lam_src = list(comp.lam)
            lam_src[b - 1] += 1
            lam_src[a - 1] -= 1
            src = weight_component(m, n, mu, lam_src)
            if src.dim == 0:
                continue
            op = lie_matrix(src, comp, (a, b))
            for j in range(src.dim):
                row = [Fraction(0)] * comp.dim
                for r, c in op.cols[j].items():
                    row[r] = c
                if any(row):
                    rows.append(row)
    if rows:
        reduced, pivots = rref(rows)
    else:
        reduced, pivots = [], []
    pivot_set = set(pivots)
    class_basis = tuple(j for j in range(comp.dim) if j not in pivot_set)
    class_pos = {j: pos for pos, j in enumerate(class_basis)}
    projection: list[dict] = []
    pivot_row = {c: r for r, c in enumerate(pivots)}
    for j in range(comp.dim):
        if j in class_pos:
            projection.append({class_pos[j]: Fraction(1)})
        else:
            row = reduced[pivot_row[j]]
            projection.append(
                {class_pos[c]: -row[c] for c in class_basis if row[c]}
            )
    kappa_free_generic = is_generic(tuple(mu), Fraction(0))
    return CoinvariantSpaceFin(comp, class_basis, tuple(projection), kappa_free_generic)


@dataclass(frozen=True)
class IsoReport:
    dim_expected: int
    dim_found: int
    eigen_ok: bool
    invariance_ok: bool
    generates_ok: bool
    details: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return (
            self.dim_expected == self.dim_found
            and self.eigen_ok
            and self.invariance_ok
            and self.generates_ok
        )


def check_standard_iso(
    space: CoinvariantSpaceFin, params: ParameterSet, variant: str = "gl"
) -> IsoReport:
    """Test the standard-module presentation on the coinvariant quotient.

    Checks (i) the dimension count, (ii) that the class of the cyclic vector
    is fixed by the block subgroup and is a u_p-eigenvector with the block
    character (shifted by -mean(mu) in the sl variant), and (iii) that the
    algebra orbit of that class spans the quotient.
    """
    if not space.generic:
        raise ValueError("check_standard_iso needs mu_a - mu_b outside Z")
    m, n, nu = params.m, params.n, params.nu
    comp = space.component
    details: list[str] = []
    expected = coset_dimension(nu)
    found = space.dim

    cyc_spins = tuple(a for a, v in enumerate(nu, start=1) for _ in range(v))
    cyc_label = (cyc_spins, ())
    cyc = space.project_vector({cyc_label: Fraction(1)})

    invariance_ok = True
    for blk in blocks(nu):
        for i in range(len(blk) - 1):
            p = blk[i] + 1  # 1-based adjacent index inside the block
            img = space.perm_quotient(adjacent(n, p)).apply(cyc)
            if img != cyc:
                invariance_ok = False
                details.append(f"cyclic class moved by s_{p}")

    offset = params.shift if variant == "sl" else Fraction(0)
    char = []
    for a, blk in enumerate(blocks(nu), start=1):
        for h, _ in enumerate(blk, start=1):
            char.append(params.mu[a - 1] - a + h + offset)
    eigen_ok = True
    z_ops = [space.z_quotient(p, variant) for p in range(1, n + 1)]
    perm_gens = [space.perm_quotient(adjacent(n, p)) for p in range(1, n)]
    for p in range(1, n + 1):
        u_op = z_ops[p - 1]
        for q in range(1, p):
            from .permutations import transposition

            u_op = u_op.add(space.perm_quotient(transposition(n, q, p)))
        img = u_op.apply(cyc)
        want = {k: char[p - 1] * v for k, v in cyc.items() if char[p - 1] * v}
        if img != want:
            eigen_ok = False
            details.append(f"u_{p} eigenvalue mismatch: {img} vs {want}")

    # Krylov span of the algebra orbit of the cyclic class
    span_rows: list[list[Scalar]] = []
    seen: list[dict] = []

    def try_add(vec: dict) -> bool:
        row = [Fraction(0)] * space.dim
        for pos, c in vec.items():
            row[pos] = c
        span_rows.append(row)
        reduced, pivots = rref(span_rows)
        if len(pivots) == len(seen):
            span_rows.pop()
            return False
        seen.append(vec)
        return True

    try_add(cyc)
    frontier = [cyc]
    gens = z_ops + perm_gens
    while frontier:
        nxt = []
        for vec in frontier:
            for g in gens:
                img = g.apply(vec)
                if img and try_add(img):
                    nxt.append(img)
        frontier = nxt
    generates_ok = len(seen) == space.dim
    if not generates_ok:
        details.append(f"orbit spans {len(seen)} of {space.dim}")

    return IsoReport(expected, found, eigen_ok, invariance_ok, generates_ok, tuple(details))
