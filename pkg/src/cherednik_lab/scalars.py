"""Exact rational scalars, the shared parameter record, and genericity tests.

Every number in this package is a ``fractions.Fraction``; nothing is ever
rounded.  A parameter point consists of two weight sequences mu, lambda of
length m whose difference is a composition of N, together with a rational
deformation parameter kappa.  The derived quantities (the composition nu,
the level ell = kappa - m, the mean shift f = -mean(mu)) are computed once
and cached on the record.

>>> in_lattice(Fraction(7, 2), Fraction(5, 2))
True
>>> is_generic((Fraction(0), Fraction(1, 3)), Fraction(5, 2))
True
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction

__all__ = [
    "Scalar",
    "scalar",
    "parse_scalar",
    "format_scalar",
    "mean",
    "in_lattice",
    "is_generic",
    "generic_violation",
    "NonGenericError",
    "ParameterSet",
]


class NonGenericError(ValueError):
    """Raised when an operation needs mu_a - mu_b outside Z + kappa*Z."""


def scalar(value: int | str | Fraction) -> Scalar:
    """Coerce an int, Fraction, or "p/q" string to an exact scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def parse_scalar(text: str) -> Scalar:
    """Parse "p/q" or "p" (no floats accepted)."""
    return Fraction(text.strip())


def format_scalar(x: Scalar) -> str:
    """Render as "p/q", or "p" when the denominator is 1."""
    return str(x)


def mean(values: Iterable[Scalar]) -> Scalar:
    vals = list(values)
    return sum(vals, Fraction(0)) / len(vals)


def in_lattice(x: Scalar, kappa: Scalar) -> bool:
    """Whether x lies in Z + kappa*Z.

    For kappa = p/q in lowest terms that lattice is (1/q)*Z, so the test
    is just integrality of q*x.  (kappa = 0 gives q = 1, i.e. plain Z.)
    """
    x = scalar(x)
    kappa = scalar(kappa)
    return (x * kappa.denominator).denominator == 1


def generic_violation(
    mu: Sequence[Scalar], kappa: Scalar
) -> tuple[int, int] | None:
    """First pair (a, b), 1-based, with mu_a - mu_b in Z + kappa*Z, else None."""
    for a in range(len(mu)):
        for b in range(a + 1, len(mu)):
            if in_lattice(scalar(mu[a]) - scalar(mu[b]), kappa):
                return (a + 1, b + 1)
    return None


def is_generic(mu: Sequence[Scalar], kappa: Scalar) -> bool:
    """Whether mu_a - mu_b avoids Z + kappa*Z for every pair a < b."""
    return generic_violation(mu, kappa) is None


@dataclass(frozen=True)
class ParameterSet:
    """A point (m, N, kappa, mu, lambda) with its derived data.

    Invariants enforced at construction: len(mu) = len(lam) = m, every
    lam_a - mu_a is a non-negative integer, and the differences sum to N.
    The level is always ell = kappa - m; a different level has no module
    attached here, so it cannot be represented.
    """

    m: int
    n: int
    kappa: Scalar
    mu: tuple[Scalar, ...]
    lam: tuple[Scalar, ...]
    nu: tuple[int, ...] = field(init=False)
    ell: Scalar = field(init=False)
    shift: Scalar = field(init=False)
    generic: bool = field(init=False)

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 0:
            raise ValueError("need m >= 1 and N >= 0")
        mu = tuple(scalar(x) for x in self.mu)
        lam = tuple(scalar(x) for x in self.lam)
        if len(mu) != self.m or len(lam) != self.m:
            raise ValueError("mu and lambda must have length m")
        diffs = [la - muv for la, muv in zip(lam, mu)]
        if any(d.denominator != 1 or d < 0 for d in diffs):
            raise ValueError("lambda - mu must be non-negative integers")
        nu = tuple(int(d) for d in diffs)
        if sum(nu) != self.n:
            raise ValueError(f"lambda - mu must sum to N = {self.n}, got {sum(nu)}")
        kappa = scalar(self.kappa)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "ell", kappa - self.m)
        object.__setattr__(self, "shift", -mean(mu))
        object.__setattr__(self, "generic", is_generic(mu, kappa))

    @classmethod
    def from_nu(
        cls,
        kappa: Scalar | int | str,
        mu: Sequence[Scalar | int | str],
        nu: Sequence[int],
    ) -> "ParameterSet":
        """Build from mu and the composition nu, setting lambda = mu + nu."""
        mu_t = tuple(scalar(x) for x in mu)
        lam = tuple(x + v for x, v in zip(mu_t, nu))
        return cls(len(mu_t), sum(nu), scalar(kappa), mu_t, lam)

    def require_generic(self) -> None:
        """Raise NonGenericError with the offending pair unless generic."""
        pair = generic_violation(self.mu, self.kappa)
        if pair is not None:
            a, b = pair
            raise NonGenericError(
                f"mu_{a} - mu_{b} = {self.mu[a - 1] - self.mu[b - 1]} lies in "
                f"Z + ({self.kappa})Z; denominator q = {self.kappa.denominator}"
            )
