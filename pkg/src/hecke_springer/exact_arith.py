"""Exact arithmetic: multivariate Laurent polynomials over Q, their fraction
field, and sparse rational matrices with a fraction-free rank engine.

Rationals are :class:`fractions.Fraction`.  A :class:`MultiLaurent` is an
immutable map from integer exponent vectors to nonzero rational
coefficients, tagged with an ordered tuple of variable names.  Binary
operations align variable lists by name union, so ``q`` and ``t`` polys can
be freely mixed.

>>> q = MultiLaurent.variable("q")
>>> (q - 1) * (q + 1)
MultiLaurent('q^2 - 1')
>>> (q * q**-1).is_one()
True
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Union

from .errors import (
    DivisionByZero,
    NotAComplex,
    NotDivisible,
    SubstitutionNotInvertible,
)

Scalar = Union[int, Fraction]
Exp = tuple

__all__ = [
    "MultiLaurent",
    "RationalFunction",
    "RationalMatrix",
    "homology_ranks",
    "laurent_arith",
    "rf_arith",
    "to_fraction",
]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _small(c):
    """Integral Fractions are stored as ints; int arithmetic is much cheaper."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _quotient(a, b):
    if type(a) is int and type(b) is int and a % b == 0:
        return a // b
    return _small(Fraction(a) / b)


class MultiLaurent:
    """Element of Q[x_1^{±1}, ..., x_k^{±1}]."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: Iterable[str] = (), terms: Mapping | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable names: {variables}")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(variables):
                raise ValueError(f"exponent {exp} does not match variables {variables}")
            c = to_fraction(c)
            if c:
                c = clean.get(exp, 0) + c
                if c:
                    clean[exp] = _small(c)
                else:
                    del clean[exp]
        self.vars = variables
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "MultiLaurent":
        """Trusted constructor: exponent tuples of the right length, no zero coefficients."""
        obj = cls.__new__(cls)
        obj.vars = variables
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def constant(cls, c: Scalar, variables: Iterable[str] = ()) -> "MultiLaurent":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, name: str, variables: Iterable[str] | None = None) -> "MultiLaurent":
        variables = tuple(variables) if variables is not None else (name,)
        exp = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise ValueError(f"{name} not among {variables}")
        return cls(variables, {exp: 1})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff: Scalar = 1,
                 variables: Iterable[str] | None = None) -> "MultiLaurent":
        variables = tuple(variables) if variables is not None else tuple(exponents)
        exp = tuple(exponents.get(v, 0) for v in variables)
        return cls(variables, {exp: coeff})

    # -- variable alignment ---------------------------------------------
    def with_vars(self, variables: Iterable[str]) -> "MultiLaurent":
        variables = tuple(variables)
        if variables == self.vars:
            return self
        missing = [v for v in self.vars if v not in variables]
        for v in missing:
            idx = self.vars.index(v)
            if any(e[idx] for e in self.terms):
                raise ValueError(f"cannot drop variable {v} in use")
        pos = [self.vars.index(v) if v in self.vars else None for v in variables]
        terms = {tuple(e[p] if p is not None else 0 for p in pos): c
                 for e, c in self.terms.items()}
        return MultiLaurent(variables, terms)

    def _align(self, other: "MultiLaurent"):
        if self.vars == other.vars:
            return self, other
        variables = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.with_vars(variables), other.with_vars(variables)

    def _coerce(self, other) -> "MultiLaurent":
        if isinstance(other, MultiLaurent):
            return other
        return MultiLaurent.constant(to_fraction(other), self.vars)

    def used_vars(self) -> tuple:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_one(self) -> bool:
        return self.is_constant() and self.constant_term() == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> Fraction:
        return Fraction(self.terms.get((0,) * len(self.vars), 0))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        a, b = self._align(self._coerce(other))
        terms = dict(a.terms)
        for e, c in b.terms.items():
            c = terms.get(e, 0) + c
            if c:
                terms[e] = _small(c)
            else:
                terms.pop(e, None)
        return MultiLaurent._raw(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiLaurent._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiLaurent):
            c = _small(to_fraction(other))
            if not c:
                return MultiLaurent._raw(self.vars, {})
            return MultiLaurent._raw(self.vars, {e: _small(c * v) for e, v in self.terms.items()})
        a, b = self._align(other)
        terms: dict = {}
        get = terms.get
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(map(int.__add__, e1, e2))
                terms[e] = get(e, 0) + c1 * c2
        return MultiLaurent._raw(a.vars, {e: _small(c) for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise SubstitutionNotInvertible(f"({self}) is not a unit")
            (e, c), = self.terms.items()
            return MultiLaurent(self.vars, {tuple(-x * (-n) for x in e): Fraction(1) / c ** (-n)})
        result = MultiLaurent.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "MultiLaurent":
        return self ** -1

    def __truediv__(self, other):
        if isinstance(other, MultiLaurent):
            return self.exact_div(other)
        c = to_fraction(other)
        if not c:
            raise DivisionByZero("division by zero scalar")
        return self * (Fraction(1) / c)

    # -- ordering helpers (lex on exponent vectors) ---------------------
    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def trailing(self):
        e = min(self.terms)
        return e, self.terms[e]

    def min_exponents(self) -> tuple:
        return tuple(min(e[i] for e in self.terms) for i in range(len(self.vars)))

    def max_exponents(self) -> tuple:
        return tuple(max(e[i] for e in self.terms) for i in range(len(self.vars)))

    def shift(self, exp) -> "MultiLaurent":
        """Multiply by the monomial with exponent vector ``exp``."""
        exp = tuple(exp)
        return MultiLaurent._raw(self.vars, {tuple(map(int.__add__, e, exp)): c
                                             for e, c in self.terms.items()})

    def exact_div(self, other: "MultiLaurent") -> "MultiLaurent":
        """Quotient in the Laurent ring; raises NotDivisible if there is none.

        Lex division with the quotient support confined to the box cut out by
        the Newton polytopes, which makes the loop finite.
        """
        a, b = self._align(other)
        if b.is_zero():
            raise DivisionByZero("division by zero polynomial")
        if a.is_zero():
            return MultiLaurent(a.vars)
        if b.is_monomial():
            (e, c), = b.terms.items()
            return a.shift(tuple(-x for x in e)) * (Fraction(1) / c)
        lo = tuple(x - y for x, y in zip(a.min_exponents(), b.min_exponents()))
        hi = tuple(x - y for x, y in zip(a.max_exponents(), b.max_exponents()))
        if any(l > h for l, h in zip(lo, hi)):
            raise NotDivisible(f"({a}) / ({b})")
        lead_e, lead_c = b.leading()
        rem = dict(a.terms)
        quot = {}
        while rem:
            e = max(rem)
            qe = tuple(x - y for x, y in zip(e, lead_e))
            if any(x < l or x > h for x, l, h in zip(qe, lo, hi)):
                raise NotDivisible(f"({a}) / ({b})")
            qc = _quotient(rem[e], lead_c)
            quot[qe] = qc
            for be, bc in b.terms.items():
                k = tuple(map(int.__add__, qe, be))
                v = rem.get(k, 0) - qc * bc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return MultiLaurent._raw(a.vars, quot)

    def divides(self, other: "MultiLaurent") -> bool:
        try:
            other.exact_div(self)
        except NotDivisible:
            return False
        return True

    # -- evaluation -----------------------------------------------------
    def substitute(self, assignments: Mapping) -> "MultiLaurent":
        """Ring homomorphism sending each named variable to a Laurent poly or scalar.

        Negative powers need invertible images (nonzero scalars or monomials).
        """
        images = {}
        for name, val in assignments.items():
            if name not in self.vars:
                continue
            images[name] = val if isinstance(val, MultiLaurent) else MultiLaurent.constant(to_fraction(val))
        if not images:
            return self
        keep = tuple(v for v in self.vars if v not in images)
        out_vars = keep
        for img in images.values():
            out_vars = out_vars + tuple(v for v in img.vars if v not in out_vars)
        cache: dict = {}

        def power(name, k):
            key = (name, k)
            if key not in cache:
                img = images[name]
                if k < 0 and not img.is_monomial():
                    raise SubstitutionNotInvertible(
                        f"negative power of {name} -> ({img}) which is not a unit")
                cache[key] = (img ** k).with_vars(out_vars)
            return cache[key]

        result = MultiLaurent(out_vars)
        for e, c in self.terms.items():
            term = MultiLaurent(out_vars, {tuple(e[self.vars.index(v)] if v in keep else 0
                                                 for v in out_vars): c})
            for i, v in enumerate(self.vars):
                if v in images and e[i]:
                    term = term * power(v, e[i])
            result = result + term
        return result

    def evaluate(self, point: Mapping) -> Fraction:
        val = self.substitute(point)
        if not val.is_constant():
            raise ValueError(f"variables left after evaluation: {val.used_vars()}")
        return val.constant_term()

    # -- equality / hashing ---------------------------------------------
    def _canonical(self):
        used = tuple(sorted(self.used_vars()))
        p = self.with_vars(used)
        return used, frozenset(p.terms.items())

    def __eq__(self, other):
        if isinstance(other, MultiLaurent):
            return self._canonical() == other._canonical()
        try:
            c = to_fraction(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_term() == c

    def __hash__(self):
        if self._hash is None:
            used, terms = self._canonical()
            if not used and len(terms) <= 1:
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash((used, terms))
        return self._hash

    # -- (de)serialisation ----------------------------------------------
    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                      for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiLaurent":
        terms = {}
        for t in data["terms"]:
            terms[tuple(t["exp"])] = Fraction(int(t["num"]), int(t.get("den", "1")))
        return cls(data["vars"], terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", s))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    def __repr__(self):
        return f"MultiLaurent('{self}')"


def laurent_arith(a: MultiLaurent, b: MultiLaurent, op: str) -> MultiLaurent:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


class RationalFunction:
    """Normalized pair numerator/denominator of Laurent polynomials.

    No gcd is taken.  Normalization divides out the denominator exactly when
    it divides the numerator, otherwise clears the common monomial content and
    scales the denominator's lex-leading coefficient to 1.  Equality is by
    cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, RationalFunction) and den is None:
            self.num, self.den = num.num, num.den
            return
        num = num if isinstance(num, MultiLaurent) else MultiLaurent.constant(to_fraction(num))
        if den is None:
            den = MultiLaurent.constant(1, num.vars)
        elif not isinstance(den, MultiLaurent):
            den = MultiLaurent.constant(to_fraction(den), num.vars)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        num, den = num._align(den)
        self.num, self.den = self._normalize(num, den)

    @staticmethod
    def _normalize(num, den):
        if den.is_monomial() or den.divides(num):
            return num.exact_div(den), MultiLaurent.constant(1, num.vars)
        if num.is_zero():
            return num, MultiLaurent.constant(1, num.vars)
        shift = tuple(-x for x in den.min_exponents())
        num, den = num.shift(shift), den.shift(shift)
        _, lc = den.leading()
        return num * (Fraction(1) / lc), den * (Fraction(1) / lc)

    @classmethod
    def lift(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        return cls(x)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def as_laurent(self) -> MultiLaurent:
        if not self.is_laurent():
            raise NotDivisible(f"{self} is not a Laurent polynomial")
        return self.num

    def __add__(self, other):
        other = RationalFunction.lift(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.lift(other))

    def __rsub__(self, other):
        return RationalFunction.lift(other) - self

    def __mul__(self, other):
        other = RationalFunction.lift(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalFunction.lift(other)
        if other.is_zero():
            raise DivisionByZero(f"division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunction.lift(other) / self

    def __eq__(self, other):
        try:
            other = RationalFunction.lift(other)
        except TypeError:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def substitute(self, assignments: Mapping) -> "RationalFunction":
        den = self.den.substitute(assignments)
        if den.is_zero():
            raise DivisionByZero(f"pole of {self} at {dict(assignments)}")
        return RationalFunction(self.num.substitute(assignments), den)

    def evaluate(self, point: Mapping) -> Fraction:
        d = self.den.evaluate(point)
        if not d:
            raise DivisionByZero(f"pole of {self} at {dict(point)}")
        return self.num.evaluate(point) / d

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RationalFunction":
        return cls(MultiLaurent.from_json(data["num"]), MultiLaurent.from_json(data["den"]))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction('{self}')"


def rf_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


class RationalMatrix:
    """Sparse matrix over Q; entries keyed by (row, col)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Mapping | None = None):
        self.rows, self.cols = int(rows), int(cols)
        self.entries = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            v = to_fraction(v)
            if v:
                self.entries[(i, j)] = v

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        return cls(len(rows), ncols, {(i, j): v for i, r in enumerate(rows)
                                      for j, v in enumerate(r) if v})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def to_rows(self) -> list:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row: dict = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return RationalMatrix(self.rows, other.cols, out)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return RationalMatrix(self.rows, self.cols, out)

    def __neg__(self):
        return RationalMatrix(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = to_fraction(c)
        return RationalMatrix(self.rows, self.cols, {k: c * v for k, v in self.entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    __hash__ = None

    def _integer_rows(self) -> list:
        rows: dict = {}
        for (i, j), v in self.entries.items():
            rows.setdefault(i, {})[j] = v
        out = []
        for r in rows.values():
            den = 1
            for v in r.values():
                den = den * v.denominator // math.gcd(den, v.denominator)
            out.append({j: int(v * den) for j, v in r.items()})
        return out

    def rank(self) -> int:
        """Rank over Q by fraction-free elimination on integer-scaled rows."""
        pivots: dict = {}
        for row in self._integer_rows():
            while row:
                c = min(row)
                piv = pivots.get(c)
                if piv is None:
                    pivots[c] = _primitive(row)
                    break
                a, b = piv[c], row[c]
                new = {j: a * v for j, v in row.items()}
                for j, v in piv.items():
                    w = new.get(j, 0) - b * v
                    if w:
                        new[j] = w
                    else:
                        new.pop(j, None)
                row = _primitive(new)
        return len(pivots)

    def rref(self):
        """Reduced row echelon form (dense, Fraction); returns (rows, pivot_cols)."""
        m = self.to_rows()
        pivots = []
        r = 0
        for c in range(self.cols):
            p = next((i for i in range(r, self.rows) if m[i][c]), None)
            if p is None:
                continue
            m[r], m[p] = m[p], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m[:r], pivots

    def nullspace(self) -> list:
        """Basis of the right kernel as a list of Fraction column vectors."""
        rows, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in set(pivots)]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for row, p in zip(rows, pivots):
                v[p] = -row[f]
            basis.append(v)
        return basis

    @classmethod
    def from_columns(cls, columns, rows: int) -> "RationalMatrix":
        return cls(rows, len(columns), {(i, j): v for j, col in enumerate(columns)
                                        for i, v in enumerate(col) if v})

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def _primitive(row: dict) -> dict:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
    if g > 1:
        row = {j: v // g for j, v in row.items()}
    return row


def homology_ranks(d_in: RationalMatrix, d_out: RationalMatrix) -> int:
    """dim ker(d_out) - rank(d_in) for the segment  . --d_in--> V --d_out--> .

    ``d_in`` has ``dim V`` rows, ``d_out`` has ``dim V`` columns.
    """
    if d_in.rows != d_out.cols:
        raise ValueError(f"middle dimensions disagree: {d_in.rows} vs {d_out.cols}")
    if not (d_out @ d_in).is_zero():
        raise NotAComplex("d_out * d_in != 0")
    return d_out.cols - d_out.rank() - d_in.rank()
