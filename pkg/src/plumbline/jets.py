"""Sparse truncated multivariate polynomial ("jet") arithmetic.

A jet lives in a ring with a fixed ordered variable list and a total-degree
truncation order; every product silently discards monomials whose total
degree exceeds the order.  Two coefficient fields are supported:

* exact: Gaussian rationals (pairs of big Fractions), arithmetic is exact
  and zero-tests are literal;
* float: ordinary Python complex, zero-tests are relative to the largest
  coefficient modulus of the jet being tested (default tolerance 1e-10,
  overridable per call or via the field).

Jets are immutable values; all operations return fresh jets, so instances
can be shared freely across threads.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .errors import RangeError, StructureError
from .gaussian import GaussianRational

DEFAULT_TOLERANCE = 1e-10

Exponents = Tuple[int, ...]


class FieldKind(enum.Enum):
    EXACT_GAUSSIAN_RATIONAL = "exact"
    COMPLEX_FLOAT = "float"


@dataclass(frozen=True)
class CoefficientField:
    kind: FieldKind
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def is_exact(self) -> bool:
        return self.kind is FieldKind.EXACT_GAUSSIAN_RATIONAL

    def coerce(self, x):
        """Force ``x`` into the field, refusing lossy conversions."""
        if self.is_exact:
            if isinstance(x, GaussianRational):
                return x
            if isinstance(x, (int, Fraction)):
                return GaussianRational(x)
            raise TypeError(
                f"exact field cannot absorb {type(x).__name__}; "
                "convert floats explicitly if that is really intended"
            )
        if isinstance(x, GaussianRational):
            return x.to_complex()
        if isinstance(x, (int, float, complex, Fraction)):
            return complex(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into the float field")

    def zero(self):
        return GaussianRational(0) if self.is_exact else 0j

    def one(self):
        return GaussianRational(1) if self.is_exact else complex(1)

    def modulus(self, c) -> float:
        if self.is_exact:
            return float(c.abs2()) ** 0.5
        return abs(c)


EXACT_FIELD = CoefficientField(FieldKind.EXACT_GAUSSIAN_RATIONAL)
FLOAT_FIELD = CoefficientField(FieldKind.COMPLEX_FLOAT)


@dataclass(frozen=True)
class JetRing:
    variables: Tuple[str, ...]
    order: int
    field: CoefficientField = EXACT_FIELD

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise StructureError(f"duplicate variable names in {self.variables}")
        if self.order < 0:
            raise RangeError(f"truncation order must be >= 0, got {self.order}")
        object.__setattr__(self, "variables", tuple(self.variables))

    def var_index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise StructureError(f"variable {name!r} not declared in ring {self.variables}") from None

    def zero(self) -> "Jet":
        return Jet(self, {})

    def one(self) -> "Jet":
        return self.constant(1)

    def constant(self, c) -> "Jet":
        c = self.field.coerce(c)
        if not c:
            return Jet(self, {})
        return Jet(self, {(0,) * len(self.variables): c})

    def variable(self, name: str) -> "Jet":
        if self.order < 1:
            raise RangeError("ring of order 0 holds no degree-1 monomials")
        exp = [0] * len(self.variables)
        exp[self.var_index(name)] = 1
        return Jet(self, {tuple(exp): self.field.coerce(1)})

    def jet(self, terms: Mapping[Exponents, object]) -> "Jet":
        """Build a jet from an exponent->coefficient mapping, validating degrees."""
        clean: Dict[Exponents, object] = {}
        n = len(self.variables)
        for exp, c in terms.items():
            exp = tuple(exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise StructureError(f"bad exponent vector {exp} for {n} variables")
            if sum(exp) > self.order:
                raise RangeError(f"monomial {exp} exceeds truncation order {self.order}")
            c = self.field.coerce(c)
            if c:
                clean[exp] = c
        return Jet(self, clean)

    def linear_form(self, coeffs: Mapping[str, object], constant=0) -> "Jet":
        """Constant + sum of coeff*variable, a convenience for unit factors."""
        out = self.constant(constant)
        for name, c in coeffs.items():
            out = out + self.variable(name) * c
        return out


class Jet:
    """Immutable sparse truncated polynomial over its ring's field."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: JetRing, terms: Dict[Exponents, object]):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_terms", dict(terms))

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    # -- inspection ---------------------------------------------------

    @property
    def terms(self) -> Dict[Exponents, object]:
        return dict(self._terms)

    def coefficient(self, exponents: Iterable[int]):
        exp = tuple(exponents)
        if len(exp) != len(self.ring.variables):
            raise StructureError(
                f"exponent vector of length {len(exp)} against {len(self.ring.variables)} variables"
            )
        return self._terms.get(exp, self.ring.field.zero())

    def coefficient_of_var(self, name: str):
        """Coefficient of the degree-1 monomial of a single variable."""
        exp = [0] * len(self.ring.variables)
        exp[self.ring.var_index(name)] = 1
        return self.coefficient(exp)

    def constant_term(self):
        return self.coefficient((0,) * len(self.ring.variables))

    def is_zero(self, tolerance: float | None = None) -> bool:
        if not self._terms:
            return True
        if self.ring.field.is_exact:
            return False
        return self.vanishes_through_degree(self.ring.order, tolerance)

    def vanishes_through_degree(self, d: int, tolerance: float | None = None) -> bool:
        """True iff every monomial of total degree <= d has zero coefficient.

        Exact field: literal.  Float field: small relative to the largest
        coefficient modulus anywhere in the jet.
        """
        if d > self.ring.order:
            raise RangeError(f"degree {d} exceeds truncation order {self.ring.order}")
        field = self.ring.field
        if field.is_exact:
            return all(sum(exp) > d for exp in self._terms)
        scale = max((abs(c) for c in self._terms.values()), default=0.0)
        if scale == 0.0:
            return True
        tol = field.tolerance if tolerance is None else tolerance
        return all(sum(exp) > d or abs(c) <= tol * scale for exp, c in self._terms.items())

    def min_nonzero_degree(self, tolerance: float | None = None) -> int | None:
        """Smallest total degree carrying a (tolerance-aware) nonzero coefficient."""
        field = self.ring.field
        if field.is_exact:
            degs = [sum(exp) for exp in self._terms]
        else:
            scale = max((abs(c) for c in self._terms.values()), default=0.0)
            if scale == 0.0:
                return None
            tol = field.tolerance if tolerance is None else tolerance
            degs = [sum(exp) for exp, c in self._terms.items() if abs(c) > tol * scale]
        return min(degs) if degs else None

    def total_degree(self) -> int:
        return max((sum(exp) for exp in self._terms), default=0)

    # -- arithmetic ---------------------------------------------------

    def _check_ring(self, other: "Jet"):
        if self.ring != other.ring:
            raise StructureError(f"jets from different rings: {self.ring} vs {other.ring}")

    def _wrap(self, x) -> "Jet":
        if isinstance(x, Jet):
            self._check_ring(x)
            return x
        return self.ring.constant(x)

    def __add__(self, other):
        try:
            other = self._wrap(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for exp, c in other._terms.items():
            s = terms.get(exp)
            s = c if s is None else s + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return Jet(self.ring, terms)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = self._wrap(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Jet(self.ring, {exp: -c for exp, c in self._terms.items()})

    def __mul__(self, other):
        try:
            other = self._wrap(other)
        except TypeError:
            return NotImplemented
        order = self.ring.order
        out: Dict[Exponents, object] = {}
        # iterate over the smaller operand outside for fewer dict rebuilds
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        for ea, ca in a.items():
            da = sum(ea)
            for eb, cb in b.items():
                if da + sum(eb) > order:
                    continue
                exp = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                s = out.get(exp)
                s = c if s is None else s + c
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
        return Jet(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, Jet):
            return NotImplemented
        c = self.ring.field.coerce(scalar)
        if not c:
            raise ZeroDivisionError("jet division by zero scalar")
        return Jet(self.ring, {exp: v / c for exp, v in self._terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "Jet(0)"
        names = self.ring.variables
        bits = []
        for exp in sorted(self._terms, key=lambda e: (sum(e), e)):
            mono = "*".join(
                f"{n}^{e}" if e > 1 else n for n, e in zip(names, exp) if e
            )
            c = self._terms[exp]
            bits.append(f"({c})*{mono}" if mono else f"({c})")
        return "Jet(" + " + ".join(bits) + ")"

    # -- evaluation & serialization ------------------------------------

    def evaluate(self, values: Mapping[str, object]):
        """Substitute field values for every variable (plain monomial sum)."""
        field = self.ring.field
        vals = [field.coerce(values[name]) for name in self.ring.variables]
        acc = field.zero()
        for exp, c in self._terms.items():
            term = c
            for v, e in zip(vals, exp):
                for _ in range(e):
                    term = term * v
            acc = acc + term
        return acc

    def to_json_dict(self) -> dict:
        field = self.ring.field
        terms = []
        for exp in sorted(self._terms):
            c = self._terms[exp]
            if field.is_exact:
                terms.append({"exp": list(exp), "re": str(c.re), "im": str(c.im)})
            else:
                terms.append({"exp": list(exp), "re": c.real, "im": c.imag})
        return {"vars": list(self.ring.variables), "order": self.ring.order, "terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def jet_from_json_dict(data: dict, field: CoefficientField = EXACT_FIELD) -> Jet:
    ring = JetRing(tuple(data["vars"]), int(data["order"]), field)
    terms = {}
    for t in data["terms"]:
        if field.is_exact:
            c = GaussianRational(Fraction(str(t["re"])), Fraction(str(t["im"])))
        else:
            c = complex(float(t["re"]), float(t["im"]))
        terms[tuple(t["exp"])] = c
    return ring.jet(terms)


# spec-facing functional aliases

def jet_add(a: Jet, b: Jet) -> Jet:
    a._check_ring(b)
    return a + b


def jet_mul(a: Jet, b: Jet) -> Jet:
    a._check_ring(b)
    return a * b


def jet_coefficient(a: Jet, exponents: Iterable[int]):
    return a.coefficient(exponents)


def jet_vanishes_through_degree(a: Jet, d: int, tolerance: float | None = None) -> bool:
    return a.vanishes_through_degree(d, tolerance)
