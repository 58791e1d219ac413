"""Exact sparse multivariate polynomial arithmetic over Q and Q(i).

A polynomial is a map from exponent vectors (one nonnegative integer per
variable) to nonzero coefficients.  Two coefficient kinds exist and are
never mixed silently:

  * ``RATIONAL`` -- coefficients are ``fractions.Fraction``;
  * ``GAUSS``    -- coefficients are :class:`GaussRational` (a + b*i with
    rational a, b), as needed for hermitian pencils.

A rational polynomial is lifted with :func:`widen_to_gauss`; the reverse
direction, :meth:`Polynomial.as_rational`, insists that every imaginary
part is exactly zero.

The canonical term order used for serialization and first-difference
certificates is graded lexicographic: sort by total degree, ties broken
lexicographically on the exponent vector.

Univariate restrictions (the inputs of all real-rootedness machinery) use
the dense representation :class:`UnivariatePoly`, lowest degree first and
rational-only.  The zero polynomial has no degree: ``degree()`` returns
``None`` for it, and the JSON encoding reports ``"none"``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Iterator, Mapping, Sequence, Union

RATIONAL = "rational"
GAUSS = "gauss"

_RATIONAL_TYPES = (int, Fraction)

RationalLike = Union[int, Fraction]


class GaussRational:
    """Gaussian rational ``re + im*i`` with exact rational components."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def from_value(cls, value) -> "GaussRational":
        if isinstance(value, GaussRational):
            return value
        if isinstance(value, _RATIONAL_TYPES):
            return cls(value, 0)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|z|^2, exact."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        d = other.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _RATIONAL_TYPES):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        # Consistent with equality against plain rationals when im == 0.
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussRational({self.re!s}, {self.im!s})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _gauss_or_none(value):
    if isinstance(value, GaussRational):
        return value
    if isinstance(value, _RATIONAL_TYPES):
        return GaussRational(value, 0)
    return None


def _grlex_key(exponents: tuple) -> tuple:
    return (sum(exponents), exponents)


class Polynomial:
    """Immutable sparse polynomial in ``num_vars`` variables.

    ``terms`` maps exponent tuples to nonzero coefficients of a single
    scalar kind.  All arithmetic is pure: every operation returns a fresh
    polynomial and instances are safe to share between threads.
    """

    __slots__ = ("num_vars", "kind", "_terms")

    def __init__(self, num_vars: int, terms=(), kind: str | None = None):
        if num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        store = {}
        seen_gauss = False
        for exponents, coeff in items:
            exponents = tuple(exponents)
            if len(exponents) != num_vars:
                raise ValueError(
                    f"exponent vector {exponents} has length {len(exponents)}, "
                    f"expected {num_vars}"
                )
            if any(e < 0 for e in exponents):
                raise ValueError(f"negative exponent in {exponents}")
            if isinstance(coeff, GaussRational):
                seen_gauss = True
            if exponents in store:
                raise ValueError(f"duplicate exponent vector {exponents}")
            store[exponents] = coeff
        if kind is None:
            kind = GAUSS if seen_gauss else RATIONAL
        if kind == RATIONAL:
            if seen_gauss:
                raise ValueError(
                    "Gaussian coefficients in a rational polynomial; "
                    "use kind=GAUSS or as_rational() to demote explicitly"
                )
            store = {e: Fraction(c) for e, c in store.items() if c != 0}
        elif kind == GAUSS:
            store = {
                e: GaussRational.from_value(c) for e, c in store.items()
            }
            store = {e: c for e, c in store.items() if c}
        else:
            raise ValueError(f"unknown coefficient kind {kind!r}")
        self.num_vars = num_vars
        self.kind = kind
        self._terms = store

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int, kind: str = RATIONAL) -> "Polynomial":
        return cls(num_vars, {}, kind)

    @classmethod
    def one(cls, num_vars: int, kind: str = RATIONAL) -> "Polynomial":
        return cls.constant(num_vars, 1, kind)

    @classmethod
    def constant(cls, num_vars: int, value, kind: str | None = None) -> "Polynomial":
        return cls(num_vars, {(0,) * num_vars: value}, kind)

    @classmethod
    def variable(cls, num_vars: int, index: int, kind: str = RATIONAL) -> "Polynomial":
        if not 0 <= index < num_vars:
            raise ValueError(f"variable index {index} out of range for {num_vars} variables")
        exponents = [0] * num_vars
        exponents[index] = 1
        return cls(num_vars, {tuple(exponents): 1}, kind)

    # -- basic queries ------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int | None:
        """Total degree, or ``None`` for the zero polynomial."""
        if not self._terms:
            return None
        return max(sum(e) for e in self._terms)

    def coefficient(self, exponents: Sequence[int]):
        exponents = tuple(exponents)
        if exponents in self._terms:
            return self._terms[exponents]
        return Fraction(0) if self.kind == RATIONAL else GaussRational()

    def iter_terms(self) -> Iterator[tuple[tuple, object]]:
        return iter(self._terms.items())

    def canonical_terms(self) -> list[tuple[tuple, object]]:
        """Terms sorted in graded lexicographic order."""
        return sorted(self._terms.items(), key=lambda item: _grlex_key(item[0]))

    def support(self) -> frozenset:
        """Exponent vectors of the nonzero terms."""
        return frozenset(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # -- ring operations ----------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if self.num_vars != other.num_vars:
            raise ValueError(
                f"variable-count mismatch: {self.num_vars} vs {other.num_vars}"
            )
        if self.kind != other.kind:
            raise ValueError(
                f"coefficient kind mismatch: {self.kind} vs {other.kind}; "
                "widen the rational operand explicitly"
            )

    def _coerce_operand(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, _RATIONAL_TYPES):
            return Polynomial.constant(self.num_vars, other, self.kind)
        if isinstance(other, GaussRational):
            if self.kind != GAUSS:
                raise ValueError(
                    "Gaussian scalar applied to a rational polynomial; widen first"
                )
            return Polynomial.constant(self.num_vars, other, GAUSS)
        return None

    def __add__(self, other):
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        self._check_compatible(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return self._wrap(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return self._wrap({e: -c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            if isinstance(other, GaussRational) and self.kind != GAUSS:
                raise ValueError(
                    "Gaussian scalar applied to a rational polynomial; widen first"
                )
            if not other:
                return Polynomial.zero(self.num_vars, self.kind)
            return self._wrap({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        out = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return self._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.one(self.num_vars, self.kind)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _wrap(self, terms: dict) -> "Polynomial":
        p = Polynomial.__new__(Polynomial)
        p.num_vars = self.num_vars
        p.kind = self.kind
        p._terms = terms
        return p

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.num_vars != other.num_vars:
            return False
        if len(self._terms) != len(other._terms):
            return False
        for e, c in self._terms.items():
            if e not in other._terms or other._terms[e] != c:
                return False
        return True

    __hash__ = None

    def __repr__(self) -> str:
        if self.is_zero:
            return f"Polynomial({self.num_vars}, 0)"
        parts = []
        for e, c in self.canonical_terms()[:6]:
            mono = "*".join(f"x{i + 1}^{k}" for i, k in enumerate(e) if k)
            parts.append(f"{c}{'*' + mono if mono else ''}")
        tail = " + ..." if len(self._terms) > 6 else ""
        return f"Polynomial({self.num_vars}, {' + '.join(parts)}{tail})"

    # -- substitution and evaluation ----------------------------------

    def compose(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``images[i]`` for variable ``i``.  Exact."""
        if len(images) != self.num_vars:
            raise ValueError(
                f"arity mismatch: {self.num_vars} variables, {len(images)} images"
            )
        if self.num_vars == 0:
            raise ValueError("compose needs at least one image to fix the target arity")
        m = images[0].num_vars
        for q in images:
            if q.num_vars != m:
                raise ValueError("images must share a variable count")
            if q.kind != self.kind:
                raise ValueError("image coefficient kind must match the polynomial")
        powers: list[list[Polynomial]] = [[Polynomial.one(m, self.kind)] for _ in images]
        acc = Polynomial.zero(m, self.kind)
        for exponents, coeff in self._terms.items():
            term = Polynomial.constant(m, coeff, self.kind)
            for i, e in enumerate(exponents):
                if e == 0:
                    continue
                cache = powers[i]
                while len(cache) <= e:
                    cache.append(cache[-1] * images[i])
                term = term * cache[e]
            acc = acc + term
        return acc

    def restrict(self, base: Sequence, direction: Sequence) -> "UnivariatePoly":
        """The univariate polynomial ``t -> p(base + t*direction)``, exact."""
        if self.kind != RATIONAL:
            raise ValueError("univariate restriction is defined for rational polynomials")
        base = [Fraction(b) for b in base]
        direction = [Fraction(d) for d in direction]
        if len(base) != self.num_vars or len(direction) != self.num_vars:
            raise ValueError(
                f"length mismatch: expected vectors of length {self.num_vars}"
            )
        # (base_j + t*dir_j)^k as dense coefficient lists, cached per (j, k)
        power_cache: dict[tuple[int, int], list[Fraction]] = {}

        def linear_power(j: int, k: int) -> list[Fraction]:
            got = power_cache.get((j, k))
            if got is not None:
                return got
            if k == 0:
                out = [Fraction(1)]
            else:
                lower = linear_power(j, k - 1)
                lin = [base[j], direction[j]] if direction[j] else [base[j]]
                out = _dense_mul(lower, lin)
            power_cache[(j, k)] = out
            return out

        acc: list[Fraction] = []
        for exponents, coeff in self._terms.items():
            prod = [coeff]
            for j, e in enumerate(exponents):
                if e:
                    prod = _dense_mul(prod, linear_power(j, e))
            if len(prod) > len(acc):
                acc.extend([Fraction(0)] * (len(prod) - len(acc)))
            for i, v in enumerate(prod):
                acc[i] += v
        return UnivariatePoly(acc)

    def eval(self, point: Sequence):
        """Evaluate exactly (rational/Gaussian point) or in complex floats."""
        if len(point) != self.num_vars:
            raise ValueError(f"length mismatch: expected point of length {self.num_vars}")
        if any(isinstance(v, (float, complex)) for v in point):
            return self._eval_complex([complex(v) for v in point])
        values = []
        for v in point:
            if isinstance(v, GaussRational):
                values.append(v)
            else:
                values.append(Fraction(v))
        powers: list[list] = [[1] for _ in values]
        total = 0
        for exponents, coeff in self._terms.items():
            term = coeff
            for i, e in enumerate(exponents):
                if e == 0:
                    continue
                cache = powers[i]
                while len(cache) <= e:
                    cache.append(cache[-1] * values[i])
                term = term * cache[e]
            total = total + term
        if not self._terms:
            total = Fraction(0) if self.kind == RATIONAL else GaussRational()
        return total

    def _eval_complex(self, point: list[complex]) -> complex:
        powers: list[list[complex]] = [[1.0 + 0.0j] for _ in point]
        total = 0.0 + 0.0j
        for exponents, coeff in self._terms.items():
            term = complex(coeff) if isinstance(coeff, GaussRational) else complex(float(coeff))
            for i, e in enumerate(exponents):
                if e == 0:
                    continue
                cache = powers[i]
                while len(cache) <= e:
                    cache.append(cache[-1] * point[i])
                term *= cache[e]
            total += term
        return total

    # -- kind conversions ----------------------------------------------

    def as_rational(self) -> "Polynomial":
        """Demote to rational coefficients; every imaginary part must vanish."""
        if self.kind == RATIONAL:
            return self
        out = {}
        for e, c in self._terms.items():
            if c.im != 0:
                raise ValueError(f"term {e} has nonzero imaginary part {c.im}")
            out[e] = c.re
        return Polynomial(self.num_vars, out, RATIONAL)


def widen_to_gauss(p: Polynomial) -> Polynomial:
    """Lift a rational polynomial into the Gaussian-coefficient ring."""
    if p.kind == GAUSS:
        return p
    return Polynomial(p.num_vars, dict(p.iter_terms()), GAUSS)


def shift(p: Polynomial, offsets: Sequence) -> Polynomial:
    """The translate ``p(x + offsets)`` via exact composition."""
    if len(offsets) != p.num_vars:
        raise ValueError(f"length mismatch: expected {p.num_vars} offsets")
    images = [
        Polynomial.variable(p.num_vars, i, p.kind)
        + Polynomial.constant(p.num_vars, o, p.kind)
        for i, o in enumerate(offsets)
    ]
    return p.compose(images)


# ---------------------------------------------------------------------
# dense univariate polynomials over Q
# ---------------------------------------------------------------------


def _dense_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return out


class UnivariatePoly:
    """Dense univariate polynomial over Q, lowest-degree coefficient first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        lst = [Fraction(c) for c in coeffs]
        while lst and lst[-1] == 0:
            lst.pop()
        self.coeffs = tuple(lst)

    @classmethod
    def zero(cls) -> "UnivariatePoly":
        return cls(())

    @classmethod
    def constant(cls, c) -> "UnivariatePoly":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c=1) -> "UnivariatePoly":
        return cls((0,) * degree + (c,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int | None:
        """Degree, or ``None`` for the zero polynomial."""
        if not self.coeffs:
            return None
        return len(self.coeffs) - 1

    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __add__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            other = UnivariatePoly((other,))
        if not isinstance(other, UnivariatePoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return UnivariatePoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UnivariatePoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            other = UnivariatePoly((other,))
        if not isinstance(other, UnivariatePoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return UnivariatePoly([c * other for c in self.coeffs])
        if not isinstance(other, UnivariatePoly):
            return NotImplemented
        return UnivariatePoly(_dense_mul(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def __divmod__(self, other):
        if not isinstance(other, UnivariatePoly):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("univariate division by zero polynomial")
        rem = list(self.coeffs)
        db = other.degree()
        lb = other.leading_coefficient()
        if len(rem) - 1 < db:
            return UnivariatePoly.zero(), self
        quot = [Fraction(0)] * (len(rem) - db)
        while len(rem) - 1 >= db and rem:
            k = len(rem) - 1 - db
            f = rem[-1] / lb
            quot[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
        return UnivariatePoly(quot), UnivariatePoly(rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def derivative(self) -> "UnivariatePoly":
        return UnivariatePoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x):
        total = 0
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def content_normalized(self) -> "UnivariatePoly":
        """Scale by a positive rational to primitive integer coefficients.

        The scaling factor is positive, so the sign pattern (and thus any
        sign-variation count) is unchanged.
        """
        if not self.coeffs:
            return self
        den_lcm = 1
        for c in self.coeffs:
            den_lcm = den_lcm * c.denominator // _int_gcd(den_lcm, c.denominator)
        num_gcd = 0
        for c in self.coeffs:
            num_gcd = _int_gcd(num_gcd, abs(c.numerator * (den_lcm // c.denominator)))
        factor = Fraction(den_lcm, num_gcd)
        return UnivariatePoly([c * factor for c in self.coeffs])

    def __eq__(self, other) -> bool:
        if isinstance(other, _RATIONAL_TYPES):
            other = UnivariatePoly((other,))
        if not isinstance(other, UnivariatePoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self) -> str:
        if not self.coeffs:
            return "UnivariatePoly(0)"
        parts = [f"{c}*t^{i}" if i else f"{c}" for i, c in enumerate(self.coeffs) if c]
        return f"UnivariatePoly({' + '.join(parts)})"


def univariate_gcd(a: UnivariatePoly, b: UnivariatePoly) -> UnivariatePoly:
    """Primitive gcd with positive leading coefficient (zero if both zero)."""
    while not b.is_zero:
        a, b = b, (a % b)
        if not b.is_zero:
            b = b.content_normalized()
    if a.is_zero:
        return a
    a = a.content_normalized()
    if a.leading_coefficient() < 0:
        a = -a
    return a


def exact_divide(a: UnivariatePoly, b: UnivariatePoly) -> UnivariatePoly:
    q, r = divmod(a, b)
    if not r.is_zero:
        raise ValueError("inexact univariate division")
    return q


# ---------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------


def coefficient_to_json(c):
    if isinstance(c, GaussRational):
        return {"re": str(c.re), "im": str(c.im)}
    return str(Fraction(c))


def coefficient_from_json(obj):
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, dict):
        return GaussRational(Fraction(str(obj["re"])), Fraction(str(obj["im"])))
    raise ValueError(f"cannot parse coefficient {obj!r}")


def poly_to_json(p: Polynomial) -> dict:
    """``{"vars": n, "terms": [{"c": ..., "e": [...]}, ...]}`` in canonical order."""
    return {
        "vars": p.num_vars,
        "terms": [
            {"c": coefficient_to_json(c), "e": list(e)} for e, c in p.canonical_terms()
        ],
    }


def poly_from_json(obj: dict) -> Polynomial:
    """Parse polynomial JSON; any term order, duplicate exponents rejected."""
    n = int(obj["vars"])
    seen = set()
    terms = {}
    for item in obj["terms"]:
        e = tuple(int(k) for k in item["e"])
        if e in seen:
            raise ValueError(f"duplicate exponent vector {list(e)}")
        seen.add(e)
        terms[e] = coefficient_from_json(item["c"])
    return Polynomial(n, terms)
