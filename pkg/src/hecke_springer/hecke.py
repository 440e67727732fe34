"""Affine Hecke algebra of an extended affine Weyl group.

Elements live in the T_w basis over Z[v, v^-1] with q = v^2 and the
quadratic relation (T_s - q)(T_s + 1) = 0.  Multiplication peels the right
factor into affine simple reflections and a length-zero part, so only the
rule for T_x * T_s is ever needed.

Bernstein elements: theta_lam = v^(l(t_lam2) - l(t_lam1)) T_{t_lam1} T_{t_lam2}^-1
for the canonical split lam = lam1 - lam2 into dominant cocharacters.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DivisionByZero, NeedsSquareRoot, NotDominant
from .exact_arith import MultiLaurent, RationalFunction, to_fraction
from .root_weyl import (
    ExtAffineElement,
    RootDatum,
    _check_same,
    load_datum,
    reduced_word,
    wa_length,
    wa_multiply,
)

VARS = ("v",)
V = MultiLaurent.variable("v")
ONE = MultiLaurent.constant(1, VARS)
Q = V * V
QINV = Q ** -1


def _coeff(c) -> MultiLaurent:
    if isinstance(c, MultiLaurent):
        if set(c.used_vars()) - {"v"}:
            raise ValueError(f"Hecke coefficients are Laurent polynomials in v, got {c}")
        return c.with_vars(VARS) if c.vars != VARS else c
    return MultiLaurent.constant(to_fraction(c), VARS)


class HeckeElement:
    """Finitely supported map  W_a -> Z[v^{+-1}]  (coefficients of T_w)."""

    __slots__ = ("datum", "terms")

    def __init__(self, datum: RootDatum, terms: Mapping | None = None):
        self.datum = datum
        clean = {}
        for x, c in (terms or {}).items():
            _check_same(datum, x.datum)
            c = _coeff(c)
            if not c.is_zero():
                clean[x] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, datum) -> "HeckeElement":
        return cls(datum)

    @classmethod
    def one(cls, datum) -> "HeckeElement":
        return cls(datum, {datum.identity(): ONE})

    @classmethod
    def T(cls, x: ExtAffineElement, coeff=1) -> "HeckeElement":
        return cls(x.datum, {x: coeff})

    @classmethod
    def Ts(cls, datum: RootDatum, i: int) -> "HeckeElement":
        return cls.T(datum.affine_generators[i])

    # -- linear structure -----------------------------------------------
    def _same(self, other):
        _check_same(self.datum, other.datum)

    def __add__(self, other):
        if not isinstance(other, HeckeElement):
            other = HeckeElement.one(self.datum) * other
        self._same(other)
        terms = dict(self.terms)
        for x, c in other.terms.items():
            terms[x] = terms[x] + c if x in terms else c
        return HeckeElement(self.datum, terms)

    __radd__ = __add__

    def __neg__(self):
        return HeckeElement(self.datum, {x: -c for x, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "HeckeElement":
        c = _coeff(c)
        return HeckeElement(self.datum, {x: c * a for x, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return hecke_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            return hecke_invert(self) ** (-n)
        out = HeckeElement.one(self.datum)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, HeckeElement):
            return (self.datum == other.datum or not self.terms and not other.terms) and \
                self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, x: ExtAffineElement) -> MultiLaurent:
        return self.terms.get(x, MultiLaurent(VARS))

    def support(self) -> list:
        return sorted(self.terms, key=lambda x: (wa_length(x), x.translation, x.finite))

    def max_length(self) -> int:
        return max((wa_length(x) for x in self.terms), default=0)

    # -- serialisation --------------------------------------------------
    def to_json(self) -> dict:
        return {
            "datum": self.datum.name,
            "terms": [dict(x.to_json(), coeff=self.terms[x].to_json()) for x in self.support()],
        }

    @classmethod
    def from_json(cls, data: Mapping, datum: RootDatum | None = None, data_dir=None) -> "HeckeElement":
        datum = datum or load_datum(data["datum"], data_dir)
        terms = {}
        for t in data["terms"]:
            x = datum.from_word(t.get("lambda"), t.get("word", ()))
            c = t.get("coeff", 1)
            c = MultiLaurent.from_json(c) if isinstance(c, Mapping) else to_fraction(c)
            terms[x] = terms[x] + _coeff(c) if x in terms else _coeff(c)
        return cls(datum, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({self.terms[x]})*T[{x}]" for x in self.support())

    def __repr__(self):
        return f"HeckeElement({self.datum.name}: {self})"


# -- multiplication ------------------------------------------------------

_TS_CACHE: dict = {}


def _times_Ts(x: ExtAffineElement, s: ExtAffineElement) -> dict:
    """T_x * T_s as {element: coefficient}."""
    key = (x, s)
    hit = _TS_CACHE.get(key)
    if hit is not None and hit[0] == x.datum:
        return hit[1]
    xs = wa_multiply(x, s)
    if wa_length(xs) > wa_length(x):
        out = {xs: ONE}
    else:
        out = {x: Q - 1, xs: Q}
    if len(_TS_CACHE) > 500000:
        _TS_CACHE.clear()
    _TS_CACHE[key] = (x.datum, out)
    return out


def _accumulate(terms: dict, x, c):
    if x in terms:
        v = terms[x] + c
        if v.is_zero():
            del terms[x]
        else:
            terms[x] = v
    else:
        terms[x] = c


def _right_mul_word(terms: dict, datum: RootDatum, word, omega) -> dict:
    gens = datum.affine_generators
    for i in word:
        s = gens[i]
        new: dict = {}
        for x, c in terms.items():
            for y, d in _times_Ts(x, s).items():
                _accumulate(new, y, c * d if not d.is_one() else c)
        terms = new
    if omega is not None and not omega.is_identity():
        terms = {wa_multiply(x, omega): c for x, c in terms.items()}
    return terms


def hecke_multiply(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    _check_same(a.datum, b.datum)
    result: dict = {}
    for y, cy in b.terms.items():
        omega, word = reduced_word(y)
        part = _right_mul_word(dict(a.terms), a.datum, word, omega)
        for x, c in part.items():
            _accumulate(result, x, c * cy)
    return HeckeElement(a.datum, result)


def Ts_inverse(datum: RootDatum, i: int) -> HeckeElement:
    """T_s^-1 = q^-1 T_s + (q^-1 - 1) T_e."""
    s = datum.affine_generators[i]
    e = datum.identity()
    return HeckeElement(datum, {s: QINV, e: QINV - 1})


def hecke_invert_Tw(w: ExtAffineElement) -> HeckeElement:
    datum = w.datum
    omega, word = reduced_word(w)
    out = HeckeElement.T(omega.inverse())
    for i in reversed(word):
        out = out * Ts_inverse(datum, i)
    return out


def hecke_invert(h: HeckeElement) -> HeckeElement:
    """Inverse of an arbitrary element.

    Single terms c*T_w with c a unit invert directly.  Otherwise the support
    must generate a finite subgroup whose T-span is a subalgebra; the inverse
    is then found by solving h * g = 1 there over Q(v).
    """
    if len(h.terms) == 1:
        (x, c), = h.terms.items()
        if not c.is_monomial():
            raise DivisionByZero(f"coefficient {c} is not a unit")
        return hecke_invert_Tw(x).scale(c ** -1)
    group = _finite_closure(h.datum, h.terms, cap=200)
    if group is None:
        raise ValueError("support does not generate a finite subgroup; cannot invert")
    index = {g: k for k, g in enumerate(group)}
    n = len(group)
    cols = []
    for g in group:
        prod = h * HeckeElement.T(g)
        col = [MultiLaurent(VARS)] * n
        for x, c in prod.terms.items():
            if x not in index:
                raise ValueError("T-span of the support is not a subalgebra")
            col[index[x]] = c
        cols.append(col)
    rhs = [ONE if g.is_identity() else MultiLaurent(VARS) for g in group]
    sol = _solve_rf([[cols[j][i] for j in range(n)] for i in range(n)], rhs)
    out = {}
    for g, val in zip(group, sol):
        if not val.is_zero():
            out[g] = val.as_laurent()
    return HeckeElement(h.datum, out)


def _finite_closure(datum, gens, cap):
    elems = {datum.identity()}
    frontier = list(elems)
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = wa_multiply(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
                    if len(elems) > cap:
                        return None
        frontier = nxt
    return sorted(elems, key=lambda x: (wa_length(x), x.translation, x.finite))


def _solve_rf(matrix, rhs):
    n = len(matrix)
    m = [[RationalFunction(c) for c in row] + [RationalFunction(rhs[i])] for i, row in enumerate(matrix)]
    for c in range(n):
        p = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
        if p is None:
            raise DivisionByZero("singular system; element is not invertible")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for i in range(n):
            if i != c and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


# -- Bernstein presentation ----------------------------------------------

def theta_from_split(datum: RootDatum, lam1, lam2) -> HeckeElement:
    if not (datum.is_dominant(lam1) and datum.is_dominant(lam2)):
        raise NotDominant(f"split parts must be dominant: {lam1}, {lam2}")
    t1, t2 = datum.translation(lam1), datum.translation(lam2)
    norm = V ** (wa_length(t2) - wa_length(t1))
    return (HeckeElement.T(t1) * hecke_invert_Tw(t2)).scale(norm)


def theta(datum: RootDatum, lam) -> HeckeElement:
    lam1, lam2 = datum.dominant_split(lam)
    return theta_from_split(datum, lam1, lam2)


def center_element(datum: RootDatum, lam) -> HeckeElement:
    """z_lam = sum of theta_mu over the W-orbit of a dominant lam."""
    lam = tuple(lam)
    if not datum.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant for {datum.name}")
    out = HeckeElement.zero(datum)
    for mu in datum.weyl_orbit(lam):
        out = out + theta(datum, mu)
    return out


def generators(datum: RootDatum) -> list:
    """T_s for every affine simple reflection, plus T_omega for Omega generators."""
    gens = [HeckeElement.Ts(datum, i) for i in datum.affine_generators]
    gens += [HeckeElement.T(om) for om in datum.omega_generators]
    return gens


def commutator(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    return a * b - b * a


def is_central(h: HeckeElement) -> bool:
    return all(commutator(h, g).is_zero() for g in generators(h.datum))


def bernstein_relation_residue(datum: RootDatum, lam, i: int) -> HeckeElement:
    """(theta_lam T_s - T_s theta_{s lam})(1 - theta_{-alpha^vee}) - (q-1)(theta_lam - theta_{s lam})
    for the finite simple reflection s = s_i; vanishes identically."""
    lam = tuple(lam)
    s_mat = datum.simple_reflections[i - 1]
    slam = tuple(sum(a * b for a, b in zip(row, lam)) for row in s_mat)
    neg_coroot = tuple(-x for x in datum.simple_coroots[i - 1])
    ts = HeckeElement.Ts(datum, i)
    th, ths = theta(datum, lam), theta(datum, slam)
    lhs = (th * ts - ts * ths) * (HeckeElement.one(datum) - theta(datum, neg_coroot))
    return lhs - (th - ths).scale(Q - 1)


# -- specialization -------------------------------------------------------

class GroupAlgebraElement:
    """Element of Q[W_a]; multiplication is the group law."""

    __slots__ = ("datum", "terms")

    def __init__(self, datum: RootDatum, terms: Mapping | None = None):
        self.datum = datum
        self.terms = {x: to_fraction(c) for x, c in (terms or {}).items() if c}

    @classmethod
    def basis(cls, x: ExtAffineElement) -> "GroupAlgebraElement":
        return cls(x.datum, {x: 1})

    def __add__(self, other):
        terms = dict(self.terms)
        for x, c in other.terms.items():
            terms[x] = terms.get(x, 0) + c
        return GroupAlgebraElement(self.datum, terms)

    def __mul__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            c = to_fraction(other)
            return GroupAlgebraElement(self.datum, {x: c * a for x, a in self.terms.items()})
        terms: dict = {}
        for x, a in self.terms.items():
            for y, b in other.terms.items():
                z = wa_multiply(x, y)
                terms[z] = terms.get(z, 0) + a * b
        return GroupAlgebraElement(self.datum, terms)

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def to_json(self) -> dict:
        return {"datum": self.datum.name,
                "terms": [dict(x.to_json(), coeff=str(c)) for x, c in
                          sorted(self.terms.items(), key=lambda kv: (wa_length(kv[0]), kv[0].translation))]}

    def __repr__(self):
        return "GroupAlgebraElement(" + " + ".join(f"{c}*[{x}]" for x, c in self.terms.items()) + ")"


def specialize_q(h: HeckeElement, q=None, v=None) -> GroupAlgebraElement:
    """Coefficientwise substitution q -> value (needs even v-powers) or v -> value."""
    if (q is None) == (v is None):
        raise ValueError("give exactly one of q, v")
    out = {}
    if v is not None:
        v = to_fraction(v)
        if not v:
            raise DivisionByZero("v = 0")
        for x, c in h.terms.items():
            out[x] = c.evaluate({"v": v})
    else:
        q = to_fraction(q)
        if not q:
            raise DivisionByZero("q = 0")
        for x, c in h.terms.items():
            if any(e[0] % 2 for e in c.terms):
                raise NeedsSquareRoot(f"coefficient {c} has odd powers of v; give v instead")
            out[x] = sum((a * q ** (e[0] // 2) for e, a in c.terms.items()), Fraction(0))
    return GroupAlgebraElement(h.datum, out)


def elements_up_to_length(datum: RootDatum, max_len: int, omegas: Iterable[ExtAffineElement] | None = None) -> list:
    """All x = w * omega with l(x) <= max_len, omega ranging over ``omegas``."""
    omegas = list(omegas) if omegas is not None else [datum.identity()]
    found = {}
    for om in omegas:
        level = [om]
        found.setdefault(om, 0)
        for ell in range(1, max_len + 1):
            nxt = []
            for x in level:
                for s in datum.affine_generators.values():
                    y = wa_multiply(s, x)
                    if y not in found and wa_length(y) == ell:
                        found[y] = ell
                        nxt.append(y)
            level = nxt
    return sorted(found, key=lambda x: (found[x], x.translation, x.finite))


def omega_elements(datum: RootDatum, radius: int = 1) -> list:
    """Products of at most ``radius`` Omega generators and their inverses."""
    gens = list(datum.omega_generators)
    gens += [g.inverse() for g in gens]
    out = {datum.identity()}
    for k in range(1, radius + 1):
        for combo in itertools.product(gens, repeat=k):
            x = datum.identity()
            for g in combo:
                x = wa_multiply(x, g)
            out.add(x)
    return sorted(out, key=lambda x: (x.translation, x.finite))


# -- algebra maps out of the Bernstein presentation --------------------------

class BernsteinMap:
    """Algebra map out of the Hecke algebra of ``datum``.

    It is fixed by the images of theta_lam and of the finite T_s; the target
    only needs ``+``, ``*`` and ``scale`` by Laurent polynomials in v.  The
    images of T_{s_0} and T_omega are derived from

        T_{t_theta^vee} = T_{s_0} T_{s_theta},    T_{t_nu} = T_omega T_u,

    with nu the dominant representative of omega's translation part and
    u = omega^-1 t_nu in the affine Coxeter group.
    """

    def __init__(self, datum: RootDatum, theta_image, finite_image, one):
        self.datum = datum
        self._theta_image = theta_image
        self._finite_image = finite_image
        self.one = one
        self._gen: dict = {}
        self._gen_inv: dict = {}
        self._basis: dict = {}

    def theta(self, lam):
        return self._theta_image(tuple(lam))

    def generator(self, i: int):
        if i not in self._gen:
            if i > 0:
                self._gen[i] = self._finite_image(i)
            else:
                self._gen[i] = self._affine_reflection(i)
        return self._gen[i]

    def generator_inverse(self, i: int):
        if i not in self._gen_inv:
            self._gen_inv[i] = self.generator(i).scale(QINV) + self.one.scale(QINV - 1)
        return self._gen_inv[i]

    def _word_inverse(self, word):
        out = self.one
        for i in reversed(word):
            out = out * self.generator_inverse(i)
        return out

    def _affine_reflection(self, i: int):
        datum = self.datum
        s0 = datum.affine_generators[i]
        t = datum.translation(s0.translation)
        s_theta = wa_multiply(s0.inverse(), t)
        _, word = reduced_word(s_theta)
        assert wa_length(t) == 1 + len(word)
        return (self.theta(s0.translation) * self._word_inverse(word)).scale(V ** wa_length(t))

    def omega(self, om: ExtAffineElement):
        datum = self.datum
        nu = max(datum.weyl_orbit(om.translation), key=datum.is_dominant)
        t = datum.translation(nu)
        u = wa_multiply(om.inverse(), t)
        u_omega, word = reduced_word(u)
        if not u_omega.is_identity():
            raise ValueError(f"{om} is not congruent to t_{nu} modulo the affine Coxeter group")
        return (self.theta(nu) * self._word_inverse(word)).scale(V ** wa_length(t))

    def basis(self, x: ExtAffineElement):
        """Image of T_x."""
        hit = self._basis.get(x)
        if hit is None:
            om, word = reduced_word(x)
            hit = self.one
            for i in word:
                hit = hit * self.generator(i)
            if not om.is_identity():
                hit = hit * self.omega(om)
            self._basis[x] = hit
        return hit

    def __call__(self, h: HeckeElement):
        _check_same(self.datum, h.datum)
        out = None
        for x, c in h.terms.items():
            part = self.basis(x).scale(c)
            out = part if out is None else out + part
        return out if out is not None else self.one.scale(MultiLaurent(VARS))
