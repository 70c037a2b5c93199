"""Weighted-graded polynomials over ℚ and the hypersurface algebra A = ℚ[x]/(f).

A ``Poly`` is a sparse map from exponent tuples to coefficients. Coefficients
are ``Fraction`` in every user-facing computation; the arithmetic only needs
``+``, ``*``, ``==`` and truthiness, so the same code also runs over the formal
ξ-scalars used when a group element twists a cochain or a connection.

The monomial order is the weighted degree refined by lex with x1 > x2 > x3.
Since (f) is principal, {f} is a Gröbner basis of (f) for every order, so
division by f is a complete normal form.
"""

import heapq
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import pyparsing as pp

from .errors import NotHomogeneousError, PolyParseError

Monomial = Tuple[int, ...]

DEFAULT_VARIABLES = ("x1", "x2", "x3")


def _is_scalar(x) -> bool:
    return not isinstance(x, Poly)


class Poly:
    """Immutable sparse polynomial; zero coefficients are never stored."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Monomial, object]] = None):
        self.nvars = nvars
        clean = {}
        for mon, c in (terms or {}).items():
            if isinstance(c, int):
                c = Fraction(c)
            if c:
                if len(mon) != nvars:
                    raise ValueError(f"monomial {mon} in a {nvars}-variable ring")
                clean[tuple(mon)] = c
        self.terms: Dict[Monomial, object] = clean
        self._hash = None

    # ---------- constructors ----------

    @classmethod
    def zero(cls, nvars: int = 3) -> "Poly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value) -> "Poly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int = 3) -> "Poly":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, i: int, nvars: int = 3) -> "Poly":
        return cls(nvars, {tuple(1 if k == i else 0 for k in range(nvars)): 1})

    @classmethod
    def monomial(cls, alpha: Sequence[int], coefficient=1) -> "Poly":
        return cls(len(alpha), {tuple(alpha): coefficient})

    # ---------- queries ----------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(mon) for mon in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, alpha: Monomial):
        return self.terms.get(tuple(alpha), Fraction(0))

    def support(self) -> List[Monomial]:
        return sorted(self.terms)

    def weighted_degrees(self, weights: Sequence[int]) -> set:
        return {weighted_degree(mon, weights) for mon in self.terms}

    def homogeneous_degree(self, weights: Sequence[int]) -> Optional[int]:
        """The weighted degree if p is homogeneous (None if not; zero has none)."""
        degs = self.weighted_degrees(weights)
        return degs.pop() if len(degs) == 1 else None

    def homogeneous_components(self, weights: Sequence[int]) -> Dict[int, "Poly"]:
        buckets: Dict[int, Dict[Monomial, object]] = {}
        for mon, c in self.terms.items():
            buckets.setdefault(weighted_degree(mon, weights), {})[mon] = c
        return {e: Poly(self.nvars, t) for e, t in sorted(buckets.items())}

    # ---------- arithmetic ----------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable sets")
            return other
        return Poly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for mon, c in other.terms.items():
            terms[mon] = terms[mon] + c if mon in terms else c
        return Poly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {mon: -c for mon, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if _is_scalar(other):
            return Poly(self.nvars, {mon: c * other for mon, c in self.terms.items()})
        other = self._coerce(other)
        terms: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mon = tuple(a + b for a, b in zip(m1, m2))
                v = c1 * c2
                terms[mon] = terms[mon] + v if mon in terms else v
        return Poly(self.nvars, terms)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def diff(self, i: int) -> "Poly":
        terms = {}
        for mon, c in self.terms.items():
            if mon[i]:
                lowered = mon[:i] + (mon[i] - 1,) + mon[i + 1:]
                terms[lowered] = c * mon[i]
        return Poly(self.nvars, terms)

    def map_coefficients(self, fn) -> "Poly":
        return Poly(self.nvars, {mon: fn(mon, c) for mon, c in self.terms.items()})

    def restrict(self, keep) -> "Poly":
        return Poly(self.nvars, {mon: c for mon, c in self.terms.items() if keep(mon)})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def weighted_degree(m: Monomial, w) -> int:
    weights = w.weights if isinstance(w, WeightSystem) else w
    return sum(a * d for a, d in zip(m, weights))


def _order_key(mon: Monomial, weights: Sequence[int]):
    return (weighted_degree(mon, weights), mon)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


class WeightSystem:
    """Weights (d; d1, ..., dn): deg(x_i) = d_i, deg(f) = d."""

    __slots__ = ("degree", "weights")

    def __init__(self, degree: int, weights: Sequence[int]):
        weights = tuple(int(x) for x in weights)
        if degree < 1 or any(x < 1 for x in weights):
            raise ValueError(f"weights must be positive, got ({degree}; {weights})")
        self.degree = int(degree)
        self.weights = weights

    def __eq__(self, other):
        return isinstance(other, WeightSystem) and (self.degree, self.weights) == (other.degree, other.weights)

    def __hash__(self):
        return hash((self.degree, self.weights))

    def __repr__(self):
        return f"WeightSystem({self.degree}; {', '.join(map(str, self.weights))})"

    @property
    def shift(self) -> int:
        """d - d1 - ... - dn, the degree carrying H^1 and H^2."""
        return self.degree - sum(self.weights)


class WeightedAlgebra:
    """A = ℚ[x1..xn]/(f) with f weighted homogeneous.

    Irreducibility of f is a user obligation and is not checked.
    """

    def __init__(self, f: Poly, weights: WeightSystem):
        if f.is_zero() or f.is_constant():
            raise ValueError("f must be a non-zero non-unit")
        offending = [mon for mon in f.terms if weighted_degree(mon, weights) != weights.degree]
        if offending:
            raise NotHomogeneousError(offending, weights.degree)
        if f.nvars != len(weights.weights):
            raise ValueError("weight count does not match the number of variables")
        self.f = f
        self.ws = weights
        self.nvars = f.nvars
        self.lm = max(f.terms, key=lambda mon: _order_key(mon, weights.weights))
        lc = f.terms[self.lm]
        self._tail = [(mon, c / lc) for mon, c in f.terms.items() if mon != self.lm]
        self._basis: Dict[int, Tuple[Monomial, ...]] = {}
        self._index: Dict[int, Dict[Monomial, int]] = {}
        self._partials: Optional[Tuple[Poly, ...]] = None
        # derivation slices and kernel bases, filled by deriv
        self.der_cache: Dict[tuple, object] = {}

    @property
    def weights(self) -> Tuple[int, ...]:
        return self.ws.weights

    @property
    def degree(self) -> int:
        return self.ws.degree

    def __eq__(self, other):
        return isinstance(other, WeightedAlgebra) and self.f == other.f and self.ws == other.ws

    def __hash__(self):
        return hash((self.f, self.ws))

    def __repr__(self):
        return f"WeightedAlgebra(f={format_poly(self.f)!r}, {self.ws!r})"

    def partials(self) -> Tuple[Poly, ...]:
        if self._partials is None:
            self._partials = tuple(self.f.diff(i) for i in range(self.nvars))
        return self._partials

    def order_key(self, mon: Monomial):
        return _order_key(mon, self.weights)

    def graded_basis(self, e: int) -> Tuple[Monomial, ...]:
        if e not in self._basis:
            mons = [mon for mon in monomials_of_degree(self.weights, e) if not _divides(self.lm, mon)]
            mons.sort(key=self.order_key, reverse=True)
            self._basis[e] = tuple(mons)
            self._index[e] = {mon: i for i, mon in enumerate(mons)}
        return self._basis[e]

    def basis_index(self, e: int) -> Dict[Monomial, int]:
        self.graded_basis(e)
        return self._index[e]

    def dim(self, e: int) -> int:
        return len(self.graded_basis(e))

    def coordinates(self, p: Poly, e: int) -> Dict[int, object]:
        """Sparse coordinates of a normal-form element of A_e."""
        index = self.basis_index(e)
        out = {}
        for mon, c in p.terms.items():
            try:
                out[index[mon]] = c
            except KeyError:
                raise ValueError(f"monomial {mon} is not a degree-{e} normal-form monomial")
        return out

    def from_coordinates(self, e: int, coords: Mapping[int, object]) -> Poly:
        basis = self.graded_basis(e)
        return Poly(self.nvars, {basis[i]: c for i, c in coords.items()})

    def normal_form(self, p: Poly) -> Poly:
        return normal_form(p, self)


@lru_cache(maxsize=None)
def monomials_of_degree(weights: Tuple[int, ...], e: int) -> Tuple[Monomial, ...]:
    """All exponent tuples of weighted degree e (empty for e < 0)."""
    if e < 0:
        return ()
    if len(weights) == 1:
        return ((e // weights[0],),) if e % weights[0] == 0 else ()
    out = []
    head, rest = weights[0], weights[1:]
    for a in range(e // head + 1):
        for tail in monomials_of_degree(rest, e - a * head):
            out.append((a,) + tail)
    return tuple(out)


def normal_form(p: Poly, alg: WeightedAlgebra) -> Poly:
    """Remainder of p on division by f; no monomial of it is divisible by LM(f)."""
    if not p.terms:
        return p
    lm = alg.lm
    ws = alg.weights

    def key(mon):
        return (-weighted_degree(mon, ws), tuple(-a for a in mon))

    work = dict(p.terms)
    heap = [(key(mon), mon) for mon in work]
    heapq.heapify(heap)
    result = {}
    while heap:
        _, mon = heapq.heappop(heap)
        c = work.pop(mon, None)
        if c is None or not c:
            continue
        if not _divides(lm, mon):
            result[mon] = c
            continue
        q = tuple(a - b for a, b in zip(mon, lm))
        # tail monomials are smaller than LM(f), so every new monomial is
        # smaller than mon and still waiting in the heap or new
        for tm, tc in alg._tail:
            nm = tuple(a + b for a, b in zip(q, tm))
            if nm not in work:
                work[nm] = Fraction(0)
                heapq.heappush(heap, (key(nm), nm))
            work[nm] = work[nm] - c * tc
    return Poly(p.nvars, result)


def graded_basis(alg: WeightedAlgebra, e: int) -> List[Monomial]:
    return list(alg.graded_basis(e))


def hilbert_series(weights: WeightSystem, upto: int) -> List[int]:
    """Coefficients of (1 - t^d) / prod(1 - t^di) for degrees 0..upto."""
    series = [0] * (upto + 1)
    series[0] = 1
    if weights.degree <= upto:
        series[weights.degree] -= 1
    for di in weights.weights:
        for k in range(di, upto + 1):
            series[k] += series[k - di]
    return series


# ============================================================
#  PARSING / PRINTING
# ============================================================

pp.ParserElement.enable_packrat()


class PolyParser:
    """Grammar for polynomial text: integers, variables, + - * / ^ and parentheses.

    Division is only allowed by a non-zero constant (rational coefficients);
    ``^`` takes a non-negative integer constant; implicit multiplication is a
    syntax error.
    """

    def __init__(self, variables: Sequence[str] = DEFAULT_VARIABLES):
        self.variables = tuple(variables)
        self.nvars = len(self.variables)
        integer = pp.Regex(r"\d+").set_parse_action(self._integer)
        identifier = pp.Regex(r"[A-Za-z_][A-Za-z0-9_]*").set_parse_action(self._identifier)
        operand = integer | identifier
        self.grammar = pp.infix_notation(
            operand,
            [
                (pp.Literal("^"), 2, pp.OpAssoc.RIGHT, self._power),
                (pp.one_of("+ -"), 1, pp.OpAssoc.RIGHT, self._sign),
                (pp.one_of("* /"), 2, pp.OpAssoc.LEFT, self._product),
                (pp.one_of("+ -"), 2, pp.OpAssoc.LEFT, self._sum),
            ],
        )

    def parse(self, text: str) -> Poly:
        try:
            return self.grammar.parse_string(text, parse_all=True)[0]
        except pp.ParseBaseException as e:
            raise PolyParseError(e.msg, e.loc) from None

    # ---------- parse actions ----------

    def _integer(self, s, loc, toks):
        return Poly.constant(self.nvars, int(toks[0]))

    def _identifier(self, s, loc, toks):
        name = toks[0]
        if name not in self.variables:
            raise pp.ParseFatalException(s, loc, f"unknown identifier {name!r}")
        return Poly.variable(self.variables.index(name), self.nvars)

    def _power(self, s, loc, toks):
        items = list(toks[0])
        result = items[-1]
        for base in reversed(items[:-2:2]):
            if not result.is_constant():
                raise pp.ParseFatalException(s, loc, "exponent must be a constant")
            k = result.constant_value()
            if k.denominator != 1 or k < 0:
                raise pp.ParseFatalException(s, loc, "exponent must be a non-negative integer")
            result = base ** int(k)
        return result

    def _sign(self, s, loc, toks):
        op, value = toks[0][0], toks[0][1]
        return -value if op == "-" else value

    def _product(self, s, loc, toks):
        items = list(toks[0])
        result = items[0]
        for op, rhs in zip(items[1::2], items[2::2]):
            if op == "*":
                result = result * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise pp.ParseFatalException(s, loc, "division only by a non-zero constant")
                result = result * (1 / rhs.constant_value())
        return result

    def _sum(self, s, loc, toks):
        items = list(toks[0])
        result = items[0]
        for op, rhs in zip(items[1::2], items[2::2]):
            result = result + rhs if op == "+" else result - rhs
        return result


@lru_cache(maxsize=8)
def _parser(variables: Tuple[str, ...]) -> PolyParser:
    return PolyParser(variables)


def parse_poly(text: str, variables: Sequence[str] = DEFAULT_VARIABLES) -> Poly:
    return _parser(tuple(variables)).parse(text)


def _format_monomial(mon: Monomial, variables: Sequence[str]) -> str:
    parts = []
    for name, a in zip(variables, mon):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def format_poly(p: Poly, variables: Optional[Sequence[str]] = None) -> str:
    """Print p in the parse_poly grammar, largest monomials first."""
    if variables is None:
        variables = DEFAULT_VARIABLES if p.nvars == 3 else tuple(f"x{i + 1}" for i in range(p.nvars))
    if not p.terms:
        return "0"
    out = []
    for mon in sorted(p.terms, key=lambda m: (sum(m), m), reverse=True):
        c = p.terms[mon]
        body = _format_monomial(mon, variables)
        negative = isinstance(c, Fraction) and c < 0
        mag = -c if negative else c
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if not out:
            out.append(f"-{text}" if negative else text)
        else:
            out.append(f" - {text}" if negative else f" + {text}")
    return "".join(out)
