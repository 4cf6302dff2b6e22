"""Parameter sets for Bernstein-Szegő families and composite configurations."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class ParameterError(ValueError):
    """Raised when a parameter set falls outside the admissible domain."""


@dataclass(frozen=True)
class BSFamily:
    """One Bernstein-Szegő parameter set.

    ``alpha`` holds the factors of the weight denominator; non-real entries
    must come in exact conjugate pairs.  ``d_eps`` is the half-degree
    ``(d - eps_plus - eps_minus) / 2`` kept as an exact fraction because the
    basis, weight and Jacobi-matrix branches all switch on it.
    """

    eps_plus: int
    eps_minus: int
    alpha: tuple[complex, ...] = ()

    @property
    def d(self) -> int:
        return len(self.alpha)

    @property
    def d_eps(self) -> Fraction:
        return Fraction(self.d - self.eps_plus - self.eps_minus, 2)

    @property
    def ceil_d_eps(self) -> int:
        return math.ceil(self.d_eps)

    @property
    def is_real(self) -> bool:
        return all(a.imag == 0 for a in self.alpha)

    def real_alphas(self) -> list[float]:
        return [a.real for a in self.alpha if a.imag == 0]

    def pair_alphas(self) -> list[complex]:
        """One representative (positive imaginary part) per conjugate pair."""
        return [a for a in self.alpha if a.imag > 0]

    def alpha_product(self) -> float:
        prod = complex(1.0)
        for a in self.alpha:
            prod *= a
        return prod.real

    def to_dict(self) -> dict:
        return {
            "eps_plus": self.eps_plus,
            "eps_minus": self.eps_minus,
            "alpha": [a.real if a.imag == 0 else [a.real, a.imag] for a in self.alpha],
        }


@dataclass(frozen=True)
class CompositeConfig:
    """A pair of families glued on a grid of ``m + 1`` nodes."""

    fam: BSFamily
    fam_t: BSFamily
    m: int

    @property
    def d_sum(self) -> Fraction:
        """``d_eps + d~_eps~`` (exact)."""
        return self.fam.d_eps + self.fam_t.d_eps

    @property
    def reduced_m(self) -> Fraction:
        """``m - d_eps - d~_eps~``; always positive under the m-condition."""
        return self.m - self.d_sum

    @property
    def alphas(self) -> tuple[complex, ...]:
        return self.fam.alpha + self.fam_t.alpha

    @property
    def left_endpoint(self) -> bool:
        """Whether the grid contains the node 0."""
        return self.fam.eps_minus == 0 and self.fam_t.eps_minus == 0

    @property
    def right_endpoint(self) -> bool:
        """Whether the grid contains the node pi."""
        return self.fam.eps_plus == 0 and self.fam_t.eps_plus == 0

    def to_dict(self) -> dict:
        return {"family": self.fam.to_dict(), "family_tilde": self.fam_t.to_dict(), "m": self.m}


def _as_complex(value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ParameterError(f"complex alpha must be a [re, im] pair, got {value!r}")
        return complex(float(value[0]), float(value[1]))
    return complex(value)


def validate_family(eps_plus: int, eps_minus: int, alpha: Iterable = ()) -> BSFamily:
    """Check a raw parameter set and return it as a :class:`BSFamily`.

    Entries of ``alpha`` may be numbers or ``[re, im]`` pairs.  Input order is
    preserved.
    """
    for name, eps in (("eps_plus", eps_plus), ("eps_minus", eps_minus)):
        if isinstance(eps, bool) or eps not in (0, 1):
            raise ParameterError(f"{name} must be 0 or 1, got {eps!r}")
    values = tuple(_as_complex(a) for a in alpha)
    for r, a in enumerate(values):
        if a == 0:
            raise ParameterError(f"alpha[{r}] = 0 is not allowed; omit the factor instead")
        if not abs(a) < 1:
            raise ParameterError(f"alpha[{r}] = {a} must satisfy |alpha| < 1")
        if math.isnan(a.real) or math.isnan(a.imag):
            raise ParameterError(f"alpha[{r}] is NaN")
    nonreal = Counter(a for a in values if a.imag != 0)
    conjugates = Counter(a.conjugate() for a in values if a.imag != 0)
    if nonreal != conjugates:
        missing = sorted((a for a in nonreal if nonreal[a] != conjugates[a]), key=lambda z: (z.real, z.imag))
        raise ParameterError(f"non-real alpha without exact conjugate partner: {missing}")
    return BSFamily(int(eps_plus), int(eps_minus), values)


def validate_pair(fam: BSFamily, fam_t: BSFamily, m: int) -> CompositeConfig:
    """Combine two families with a grid size, enforcing ``m > ceil(d_eps) + ceil(d~_eps~)``."""
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise ParameterError(f"m must be a positive integer, got {m!r}")
    m = int(m)
    c1, c2 = fam.ceil_d_eps, fam_t.ceil_d_eps
    if m <= c1 + c2:
        raise ParameterError(
            f"m = {m} too small: need m > ceil(d_eps) + ceil(d~_eps~) = {c1} + {c2} = {c1 + c2}"
        )
    return CompositeConfig(fam, fam_t, m)


def make_config(fam: Sequence, fam_t: Sequence, m: int) -> CompositeConfig:
    """Shorthand: ``make_config((1, 1, [0.3]), (1, 1, []), 4)``."""
    return validate_pair(validate_family(*fam), validate_family(*fam_t), m)
