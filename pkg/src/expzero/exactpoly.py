"""Exact multivariate (Laurent) polynomials over Q(i) with transcendental symbols.

Coefficients are Gaussian rationals multiplied by Laurent monomials in named
symbols such as ``E`` (Euler's number), ``C`` (a line constant) and ``CHAT``
(its exponential).  Symbols are treated as algebraically independent, so
``E - 1`` is a nonzero constant and no relation between symbols is ever
inferred.  The only bridge to actual numbers is :class:`NumericValuation`.

A polynomial term is keyed by its variable exponent vector *and* its symbol
monomial, so a coefficient such as ``CHAT - 1`` is stored as two terms
sharing one exponent vector.  This matches the JSON interchange encoding,
where every term carries its own ``syms`` map.
"""

from __future__ import annotations

import cmath
import json
import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

__all__ = [
    "ExactScalar",
    "LaurentPoly",
    "MultiPoly",
    "NumericValuation",
    "PolyRing",
    "VariableMismatch",
    "NonUnitImage",
    "parse_rational",
    "format_rational",
]

MAX_EXPONENT = 2**31 - 1
DEFAULT_SYMBOLS = ("E", "C", "CHAT")


class VariableMismatch(ValueError):
    pass


class NonUnitImage(ValueError):
    pass


def parse_rational(text: str | int | Fraction) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _sym_key(powers: Mapping[str, int] | Iterable[tuple[str, int]]) -> tuple:
    items = powers.items() if isinstance(powers, Mapping) else powers
    acc: dict[str, int] = {}
    for name, k in items:
        acc[name] = acc.get(name, 0) + int(k)
    return tuple(sorted((n, k) for n, k in acc.items() if k != 0))


def _sym_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return _sym_key(list(a) + list(b))


def _sym_pow(a: tuple, n: int) -> tuple:
    return tuple((s, k * n) for s, k in a) if n else ()


def _check_exponent(k: int) -> int:
    if abs(k) > MAX_EXPONENT:
        raise ValueError(f"exponent {k} exceeds 2**31-1 in magnitude")
    return k


# Gaussian rationals are plain (re, im) Fraction pairs inside polynomials.

def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _ginv(a):
    d = a[0] * a[0] + a[1] * a[1]
    if d == 0:
        raise ZeroDivisionError("inverse of zero")
    return (a[0] / d, -a[1] / d)


def _gpow(a, n: int):
    if n < 0:
        a, n = _ginv(a), -n
    out = (Fraction(1), Fraction(0))
    base = a
    while n:
        if n & 1:
            out = _gmul(out, base)
        base = _gmul(base, base)
        n >>= 1
    return out


_ONE = (Fraction(1), Fraction(0))


class ExactScalar:
    """Gaussian rational times a Laurent monomial in tracked symbols."""

    __slots__ = ("re", "im", "sym_powers")

    def __init__(self, re=0, im=0, sym_powers: Mapping[str, int] | tuple = ()):
        self.re = parse_rational(re)
        self.im = parse_rational(im)
        key = _sym_key(sym_powers)
        for _, k in key:
            _check_exponent(k)
        self.sym_powers = key if (self.re or self.im) else ()

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "ExactScalar":
        return cls(1, 0, {name: power})

    @classmethod
    def coerce(cls, value) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact; use Fractions")
        raise TypeError(f"cannot coerce {value!r} to ExactScalar")

    @property
    def gaussian(self):
        return (self.re, self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_rational(self) -> bool:
        return self.im == 0 and not self.sym_powers

    def is_integer(self) -> bool:
        return self.is_rational() and self.re.denominator == 1

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return (self.re, self.im, self.sym_powers) == (other.re, other.im, other.sym_powers)

    def __hash__(self):
        return hash((self.re, self.im, self.sym_powers))

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return NotImplemented
        other = ExactScalar.coerce(other)
        re, im = _gmul(self.gaussian, other.gaussian)
        return ExactScalar(re, im, _sym_mul(self.sym_powers, other.sym_powers))

    __rmul__ = __mul__

    def __neg__(self):
        return ExactScalar(-self.re, -self.im, self.sym_powers)

    def __pow__(self, n: int):
        if n < 0 and self.is_zero():
            raise ZeroDivisionError("negative power of zero")
        re, im = _gpow(self.gaussian, n)
        return ExactScalar(re, im, _sym_pow(self.sym_powers, n))

    def inverse(self) -> "ExactScalar":
        return self ** -1

    def __truediv__(self, other):
        return self * ExactScalar.coerce(other).inverse()

    def evaluate(self, valuation: "NumericValuation | None" = None) -> complex:
        val = complex(float(self.re), float(self.im))
        for name, k in self.sym_powers:
            val *= (valuation or NumericValuation()).value(name) ** k
        return val

    def to_json(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im),
                "syms": dict(self.sym_powers)}

    def __repr__(self):
        parts = []
        if self.im == 0:
            if abs(self.re) != 1 or not self.sym_powers:
                parts.append(str(self.re))
            elif self.re == -1:
                parts.append("-1")
        else:
            parts.append(f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)")
        for name, k in self.sym_powers:
            parts.append(name if k == 1 else f"{name}^{k}")
        return "*".join(parts).replace("-1*", "-")


class NumericValuation:
    """Assignment of complex values to symbols.

    ``E`` defaults to Euler's number.  When both ``C`` and ``CHAT`` are
    assigned, ``|CHAT - exp(C)|`` must stay below ``tolerance``.
    """

    def __init__(self, values: Mapping[str, complex] | None = None, tolerance: float = 1e-12):
        vals = {"E": complex(math.e)}
        vals.update({k: complex(v) for k, v in (values or {}).items()})
        self.values = vals
        self.tolerance = tolerance
        if "C" in vals and "CHAT" in vals:
            gap = abs(vals["CHAT"] - cmath.exp(vals["C"]))
            if gap > tolerance * max(1.0, abs(vals["CHAT"])):
                raise ValueError(f"inconsistent valuation: |CHAT - exp(C)| = {gap:.3e}")

    def value(self, name: str) -> complex:
        try:
            return self.values[name]
        except KeyError:
            raise KeyError(f"symbol {name!r} has no numeric value in this valuation") from None

    def with_values(self, **extra) -> "NumericValuation":
        merged = dict(self.values)
        merged.update(extra)
        return NumericValuation(merged, self.tolerance)

    def __repr__(self):
        return f"NumericValuation({self.values!r})"


class LaurentPoly:
    """Exact Laurent polynomial; negative exponents only in ``unit_vars``."""

    __slots__ = ("variables", "unit_vars", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms=None, unit_vars: Iterable[str] = ()):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.unit_vars = frozenset(unit_vars)
        if not self.unit_vars <= set(self.variables):
            raise ValueError("unit variables must be among the variables")
        self._hash = None
        store: dict = {}
        nvar = len(self.variables)
        for key, coeff in (terms.items() if isinstance(terms, Mapping) else (terms or ())):
            exps, syms = key
            exps = tuple(_check_exponent(int(e)) for e in exps)
            if len(exps) != nvar:
                raise ValueError(f"exponent vector {exps} does not match {nvar} variables")
            syms = _sym_key(syms)
            if isinstance(coeff, ExactScalar):
                syms = _sym_mul(syms, coeff.sym_powers)
                coeff = coeff.gaussian
            else:
                coeff = (parse_rational(coeff[0]), parse_rational(coeff[1]))
            k = (exps, syms)
            store[k] = _gadd(store[k], coeff) if k in store else coeff
        self._terms = {k: v for k, v in store.items() if v[0] or v[1]}
        self._validate()

    def _validate(self):
        units = [i for i, v in enumerate(self.variables) if v in self.unit_vars]
        for exps, _ in self._terms:
            for i, e in enumerate(exps):
                if e < 0 and i not in units:
                    raise ValueError(f"negative exponent in non-unit variable {self.variables[i]}")

    # construction helpers -------------------------------------------------

    def _like(self, terms, cls=None):
        cls = cls or type(self)
        out = cls.__new__(cls)
        out.variables = self.variables
        out.unit_vars = self.unit_vars
        out._hash = None
        out._terms = {k: v for k, v in terms.items() if v[0] or v[1]}
        if cls is MultiPoly:
            out._validate()
        return out

    def zero(self):
        return self._like({})

    def constant(self, value):
        s = ExactScalar.coerce(value)
        return self._like({((0,) * len(self.variables), s.sym_powers): s.gaussian})

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise VariableMismatch(f"{other.variables} vs {self.variables}")
            return other
        return self.constant(other)

    def _result_cls(self, other):
        if isinstance(self, MultiPoly) and (not isinstance(other, LaurentPoly) or isinstance(other, MultiPoly)):
            return MultiPoly
        return LaurentPoly

    # inspection ----------------------------------------------------------

    def terms(self) -> Iterator[tuple[tuple[int, ...], ExactScalar]]:
        for (exps, syms), (re, im) in sorted(self._terms.items()):
            yield exps, ExactScalar(re, im, syms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(exps) for exps, _ in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_polynomial(self) -> bool:
        return all(e >= 0 for exps, _ in self._terms for e in exps)

    def exponent_vectors(self) -> set[tuple[int, ...]]:
        return {exps for exps, _ in self._terms}

    def symbols(self) -> set[str]:
        return {name for (_, syms) in self._terms for name, _ in syms}

    def depends_on(self, var: str) -> bool:
        i = self.variables.index(var)
        return any(exps[i] for exps, _ in self._terms)

    def degree(self, var: str) -> int:
        i = self.variables.index(var)
        return max((exps[i] for exps, _ in self._terms), default=0)

    def min_degree(self, var: str) -> int:
        i = self.variables.index(var)
        return min((exps[i] for exps, _ in self._terms), default=0)

    def total_degree(self, vars: Iterable[str] | None = None) -> int:
        idx = [self.variables.index(v) for v in (vars or self.variables)]
        return max((sum(exps[i] for i in idx) for exps, _ in self._terms), default=0)

    def coefficient(self, exps: Sequence[int]) -> "LaurentPoly":
        """Symbol-polynomial coefficient of one monomial, as a constant poly."""
        exps = tuple(exps)
        zero = (0,) * len(self.variables)
        return self._like({(zero, syms): c for (e, syms), c in self._terms.items() if e == exps})

    def constant_terms(self) -> list[ExactScalar]:
        return [ExactScalar(re, im, syms) for (e, syms), (re, im) in sorted(self._terms.items())]

    def as_scalar(self) -> ExactScalar | None:
        """The sole ExactScalar if this is a constant single-term polynomial."""
        if self.is_zero():
            return ExactScalar(0)
        if self.is_constant() and self.is_monomial():
            return self.constant_terms()[0]
        return None

    # arithmetic ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ExactScalar)):
            other = self.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.variables == other.variables and self.unit_vars == other.unit_vars
                and self._terms == other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, self.unit_vars, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        cls = self._result_cls(other)
        other = self._coerce(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = _gadd(out[k], v) if k in out else v
        return self._like(out, cls)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: (-a, -b) for k, (a, b) in self._terms.items()})

    def __sub__(self, other):
        cls = self._result_cls(other)
        return (self + (-self._coerce(other)))._like_cls(cls)

    def __rsub__(self, other):
        return (-self) + other

    def _like_cls(self, cls):
        return self if type(self) is cls else self._like(self._terms, cls)

    def __mul__(self, other):
        cls = self._result_cls(other)
        other = self._coerce(other)
        out: dict = {}
        for (e1, s1), c1 in self._terms.items():
            for (e2, s2), c2 in other._terms.items():
                k = (tuple(_check_exponent(a + b) for a, b in zip(e1, e2)), _sym_mul(s1, s2))
                c = _gmul(c1, c2)
                out[k] = _gadd(out[k], c) if k in out else c
        return self._like(out, cls)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.unit_inverse() ** (-n)
        for e, _ in self._terms:
            for k in e:
                _check_exponent(k * n)
        out = self.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, LaurentPoly):
            if not other.is_unit():
                raise ZeroDivisionError("division only by units (scalar times unit monomial)")
            return self * other.unit_inverse()
        inv = ExactScalar.coerce(other).inverse()
        return self * self.constant(inv)

    def is_unit(self) -> bool:
        if len(self._terms) != 1:
            return False
        ((exps, _),) = self._terms
        return all(e == 0 or v in self.unit_vars for e, v in zip(exps, self.variables))

    def unit_inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self!r} is not a unit")
        ((exps, syms), c), = self._terms.items()
        key = (tuple(-e for e in exps), _sym_pow(syms, -1))
        cls = MultiPoly if isinstance(self, MultiPoly) and not any(exps) else LaurentPoly
        return self._like({key: _ginv(c)}, cls)

    def scale(self, s: ExactScalar) -> "LaurentPoly":
        return self * self.constant(s)

    # calculus and composition ---------------------------------------------

    def diff(self, var: str) -> "LaurentPoly":
        if var not in self.variables:
            raise VariableMismatch(f"unknown variable {var!r}")
        i = self.variables.index(var)
        out: dict = {}
        for (exps, syms), (re, im) in self._terms.items():
            e = exps[i]
            if e == 0:
                continue
            new = exps[:i] + (e - 1,) + exps[i + 1:]
            out[(new, syms)] = (re * e, im * e)
        return self._like(out)

    def substitute(self, images: Sequence["LaurentPoly"]) -> "LaurentPoly":
        if len(images) != len(self.variables):
            raise VariableMismatch("one image per variable is required")
        target = images[0]
        for img in images[1:]:
            if img.variables != target.variables or img.unit_vars != target.unit_vars:
                raise VariableMismatch("images must share one target variable list")
        for v, img in zip(self.variables, images):
            if v in self.unit_vars and not img.is_unit():
                raise NonUnitImage(f"image for unit variable {v} is not a unit: {img!r}")
        cache: dict = {}

        def power(i, e):
            if (i, e) not in cache:
                cache[(i, e)] = images[i] ** e
            return cache[(i, e)]

        result = LaurentPoly(target.variables, {}, target.unit_vars)
        for (exps, syms), c in self._terms.items():
            term = LaurentPoly(target.variables, {((0,) * len(target.variables), syms): c},
                               target.unit_vars)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def rename(self, variables: Sequence[str], unit_vars: Iterable[str] | None = None):
        out = self._like(self._terms)
        out.variables = tuple(variables)
        out.unit_vars = frozenset(self.unit_vars if unit_vars is None else unit_vars)
        return out

    def embed(self, variables: Sequence[str], unit_vars: Iterable[str] = ()) -> "LaurentPoly":
        """Re-express over a larger variable list containing this one."""
        idx = [variables.index(v) for v in self.variables]
        terms = {}
        for (exps, syms), c in self._terms.items():
            new = [0] * len(variables)
            for j, e in zip(idx, exps):
                new[j] = e
            terms[(tuple(new), syms)] = c
        return type(self)(variables, terms, unit_vars)

    def restrict(self, variables: Sequence[str], unit_vars: Iterable[str] = ()) -> "LaurentPoly":
        """Drop variables that do not occur; raises if a dropped variable occurs."""
        for v in self.variables:
            if v not in variables and self.depends_on(v):
                raise VariableMismatch(f"variable {v} occurs and cannot be dropped")
        idx = [self.variables.index(v) if v in self.variables else None for v in variables]
        terms = {}
        for (exps, syms), c in self._terms.items():
            terms[(tuple(exps[i] if i is not None else 0 for i in idx), syms)] = c
        return type(self)(variables, terms, unit_vars)

    # numerics -----------------------------------------------------------

    def evaluate(self, point: Sequence[complex], valuation: NumericValuation | None = None) -> complex:
        """Complex value at ``point``.

        Each term is evaluated in double precision, so the relative error is
        bounded by roughly ``(d + 2) * len(self) * eps`` times the ratio of the
        summed term magnitudes to the result, ``d`` being the largest degree.
        """
        if len(point) != len(self.variables):
            raise VariableMismatch("point length does not match variable count")
        for v, x in zip(self.variables, point):
            if v in self.unit_vars and x == 0:
                raise ZeroDivisionError(f"unit variable {v} must be nonzero")
        return complex(self.compile(valuation)(np.asarray([point], dtype=complex))[0])

    def compile(self, valuation: NumericValuation | None = None) -> "CompiledPoly":
        return CompiledPoly.from_poly(self, valuation)

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        terms = []
        for (exps, syms), (re, im) in sorted(self._terms.items()):
            terms.append({"exps": list(exps), "re": format_rational(re),
                          "im": format_rational(im), "syms": dict(syms)})
        return {"vars": list(self.variables),
                "unit_vars": [v for v in self.variables if v in self.unit_vars],
                "terms": terms}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, data: Mapping | str) -> "LaurentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        variables = data["vars"]
        terms = []
        for t in data.get("terms", []):
            coeff = (parse_rational(t.get("re", "0")), parse_rational(t.get("im", "0")))
            terms.append(((tuple(t["exps"]), t.get("syms", {})), coeff))
        poly = cls(variables, terms, data.get("unit_vars", ()))
        if cls is LaurentPoly and poly.is_polynomial():
            return poly._like(poly._terms, MultiPoly)
        return poly

    def __repr__(self):
        if not self._terms:
            return "0"
        pieces = []
        for exps, s in self.terms():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exps) if e)
            coeff = repr(s)
            if mono and coeff == "1":
                pieces.append(mono)
            elif mono and coeff == "-1":
                pieces.append("-" + mono)
            else:
                pieces.append(coeff + ("*" + mono if mono else ""))
        return " + ".join(pieces).replace("+ -", "- ")


class MultiPoly(LaurentPoly):
    """Polynomial (no negative exponents) over the same coefficient ring."""

    __slots__ = ()

    def _validate(self):
        for exps, _ in self._terms:
            if any(e < 0 for e in exps):
                raise ValueError("MultiPoly exponents must be non-negative")


class CompiledPoly:
    """Numeric snapshot of a polynomial: complex coefficients and exponents."""

    def __init__(self, coeffs: np.ndarray, exps: np.ndarray, nvars: int):
        self.coeffs = coeffs
        self.exps = exps
        self.nvars = nvars

    @classmethod
    def from_poly(cls, poly: LaurentPoly, valuation: NumericValuation | None = None):
        merged: dict = {}
        for exps, s in poly.terms():
            merged[exps] = merged.get(exps, 0j) + s.evaluate(valuation)
        keys = sorted(merged)
        coeffs = np.array([merged[k] for k in keys], dtype=complex)
        exps = np.array(keys, dtype=np.int64).reshape(len(keys), len(poly.variables))
        return cls(coeffs, exps, len(poly.variables))

    def __call__(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=complex)
        if points.ndim == 1:
            points = points[:, None] if self.nvars == 1 else points[None, :]
        if len(self.coeffs) == 0:
            return np.zeros(points.shape[0], dtype=complex)
        monos = np.prod(points[:, None, :] ** self.exps[None, :, :], axis=2)
        return monos @ self.coeffs


class PolyRing:
    """Convenience factory: generators and symbols over a fixed variable list.

    >>> R = PolyRing(["X1", "X2", "Xh1", "Xh2"], unit_vars=["Xh1", "Xh2"])
    >>> X1, X2, Xh1, Xh2 = R.gens
    >>> (X1 + X2) * (X1 - X2) == X1**2 - X2**2
    True
    """

    def __init__(self, variables: Sequence[str], unit_vars: Iterable[str] = (), polynomial: bool = True):
        self.variables = tuple(variables)
        self.unit_vars = frozenset(unit_vars)
        self.cls = MultiPoly if polynomial else LaurentPoly

    @property
    def gens(self) -> tuple[LaurentPoly, ...]:
        return tuple(self.gen(v) for v in self.variables)

    def gen(self, name: str) -> LaurentPoly:
        i = self.variables.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(self.variables)))
        return self.cls(self.variables, {(exps, ()): (Fraction(1), Fraction(0))}, self.unit_vars)

    def symbol(self, name: str, power: int = 1) -> LaurentPoly:
        return self.const(ExactScalar.symbol(name, power))

    def const(self, value) -> LaurentPoly:
        return self.cls(self.variables, {}, self.unit_vars).constant(value)

    def zero(self) -> LaurentPoly:
        return self.cls(self.variables, {}, self.unit_vars)

    def from_json(self, data) -> LaurentPoly:
        p = LaurentPoly.from_json(data)
        return p.embed(self.variables, self.unit_vars) if p.variables != self.variables else p
