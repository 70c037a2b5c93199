"""Cyclic actions of type (m; m1, m2, m3) and the ξ-weight grading they induce.

Roots of unity are never evaluated. An action is a ℤ/m-grading: the monomial
x^α has weight Σ αᵢmᵢ, ∂ᵢ has weight −mᵢ, wedges add weights and Hom values
subtract the weight of their source. ``XiScalar`` is the one place where a
formal ξ-combination is needed (twisting by a group element); it lives in the
group ring ℚ[ℤ/m] and is compared after reduction modulo the m-th cyclotomic
polynomial, i.e. as an element of ℚ(ξ).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Sequence, Tuple, Union

from sympy import cyclotomic_poly

from .wpoly import Monomial, Poly

XiWeight = int


@dataclass(frozen=True)
class CyclicActionType:
    m: int
    exponents: Tuple[int, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"group order must be >= 1, got {self.m}")
        object.__setattr__(self, "exponents", tuple(int(e) % self.m for e in self.exponents))

    @classmethod
    def trivial(cls, nvars: int = 3) -> "CyclicActionType":
        return cls(1, (0,) * nvars)

    @property
    def is_trivial(self) -> bool:
        return self.m == 1

    def weights(self) -> range:
        return range(self.m)

    def reduce(self, w: int) -> XiWeight:
        return w % self.m

    def monomial_weight(self, alpha: Monomial) -> XiWeight:
        return sum(a * e for a, e in zip(alpha, self.exponents)) % self.m

    def weight_components(self, p: Poly) -> Dict[XiWeight, Poly]:
        buckets: Dict[XiWeight, Dict[Monomial, object]] = {}
        for mon, c in p.terms.items():
            buckets.setdefault(self.monomial_weight(mon), {})[mon] = c
        return {w: Poly(p.nvars, terms) for w, terms in buckets.items()}

    def poly_weight(self, p: Poly):
        """The common weight of all monomials of p, None if mixed, 0 for zero."""
        ws = {self.monomial_weight(mon) for mon in p.terms}
        if not ws:
            return 0
        return ws.pop() if len(ws) == 1 else None

    def twist(self, p: Poly, k: int, shift: int = 0) -> Poly:
        """g^k applied to p, then multiplied by ξ^(k*shift).

        Each monomial of weight w picks up ξ^(k*(w + shift)).
        """
        if self.is_trivial:
            return p
        terms = {}
        for mon, c in p.terms.items():
            e = (k * (self.monomial_weight(mon) + shift)) % self.m
            terms[mon] = XiScalar.monomial(self.m, e) * c
        return Poly(p.nvars, terms)


@lru_cache(maxsize=None)
def _cyclotomic(m: int) -> Tuple[int, ...]:
    """Coefficients of Φ_m, highest degree first."""
    return tuple(int(c) for c in cyclotomic_poly(m, polys=True).all_coeffs())


Scalar = Union[int, Fraction, "XiScalar"]


class XiScalar:
    """Element Σ c_k ξ^k of ℚ[ℤ/m]; equality is taken in ℚ(ξ)."""

    __slots__ = ("m", "coeffs", "_reduced")

    def __init__(self, m: int, coeffs: Sequence):
        if len(coeffs) != m:
            raise ValueError("XiScalar needs one coefficient per residue")
        self.m = m
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        self._reduced = None

    @classmethod
    def monomial(cls, m: int, exponent: int, value: Scalar = 1) -> "XiScalar":
        coeffs = [Fraction(0)] * m
        coeffs[exponent % m] = Fraction(1)
        return cls(m, coeffs) * value

    @classmethod
    def scalar(cls, m: int, value) -> "XiScalar":
        return cls.monomial(m, 0) * Fraction(value)

    def _lift(self, other) -> "XiScalar":
        if isinstance(other, XiScalar):
            if other.m != self.m:
                raise ValueError(f"mixing Z/{self.m} and Z/{other.m} scalars")
            return other
        if isinstance(other, (int, Fraction)):
            return XiScalar.scalar(self.m, other)
        return NotImplemented

    def reduced(self) -> Tuple[Fraction, ...]:
        """Coordinates in ℚ(ξ) ≅ ℚ[x]/Φ_m, lowest power first."""
        if self._reduced is None:
            phi = _cyclotomic(self.m)
            deg = len(phi) - 1
            work = list(self.coeffs)
            for k in range(self.m - 1, deg - 1, -1):
                c = work[k]
                if c:
                    # Φ_m is monic: x^k = x^(k-deg) * (x^deg - Φ_m)
                    for i, pc in enumerate(phi):
                        work[k - i] -= c * pc
            self._reduced = tuple(work[:deg])
        return self._reduced

    def rational_value(self):
        """The rational number this equals, or None if it is irrational."""
        red = self.reduced()
        if all(not c for c in red[1:]):
            return red[0] if red else Fraction(0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return XiScalar(self.m, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return XiScalar(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return XiScalar(self.m, [a * other for a in self.coeffs])
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = [Fraction(0)] * self.m
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    out[(i + j) % self.m] += a * b
        return XiScalar(self.m, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return XiScalar(self.m, [a / other for a in self.coeffs])
        return NotImplemented

    def __bool__(self):
        return any(self.reduced())

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.reduced() == o.reduced()

    def __hash__(self):
        value = self.rational_value()
        return hash(value) if value is not None else hash((self.m, self.reduced()))

    def __repr__(self):
        parts = [f"{c}*xi^{k}" for k, c in enumerate(self.coeffs) if c]
        return "XiScalar(" + (" + ".join(parts) or "0") + ")"
