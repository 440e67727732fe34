"""Fixed-point localization model of equivariant K-theory of the SL2 Steinberg variety.

T*P^1 has two torus-fixed points, ``e`` (the point 0) and ``s`` (the point
infinity).  A class on Z = T*P^1 x_N T*P^1 is recorded by its restrictions to
the four fixed points (x, y) of the product, and convolution is

    (a * b)(x, z) = sum_y a(x, y) b(y, z) / euler(y).

Everything is a Laurent polynomial or rational function in (t, v) with q = v^2.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import ModelInconsistent, NotDivisible
from .exact_arith import MultiLaurent, RationalFunction
from .hecke import BernsteinMap, HeckeElement, elements_up_to_length, omega_elements
from .root_weyl import data_dir, load_datum

VARS = ("t", "v")
POINTS = ("e", "s")
T = MultiLaurent.variable("t", VARS)
V = MultiLaurent.variable("v", VARS)
Q = V * V
ONE = MultiLaurent.constant(1, VARS)
ZERO = MultiLaurent(VARS)

# q-exponent of the fiber weight at e; the fiber weight is q^k * t^-2
Q_CONVENTIONS = {"a": -1, "b": 1}


def _flip(f: MultiLaurent) -> MultiLaurent:
    """Weyl action on weights: t -> t^-1."""
    return MultiLaurent(f.vars, {(-e[0],) + tuple(e[1:]): c for e, c in f.with_vars(VARS).terms.items()})


def _twist(point: str, n: int) -> MultiLaurent:
    return T ** n if point == "e" else T ** (-n)


@dataclass(frozen=True)
class TangentData:
    """Tangent weights (base, fiber) at each fixed point of T*P^1."""

    convention: str
    weights: tuple

    @classmethod
    def for_convention(cls, convention: str = "a") -> "TangentData":
        if convention not in Q_CONVENTIONS:
            raise ValueError(f"unknown q-convention {convention!r}; expected one of {sorted(Q_CONVENTIONS)}")
        base = T ** 2
        fiber = Q ** Q_CONVENTIONS[convention] * base ** -1
        return cls(convention, (("e", base, fiber), ("s", _flip(base), _flip(fiber))))

    def at(self, point: str) -> tuple:
        for p, base, fiber in self.weights:
            if p == point:
                return base, fiber
        raise ValueError(f"unknown fixed point {point!r}")

    def fiber_factor(self, point: str) -> MultiLaurent:
        """K-theoretic Euler factor of the cotangent-fiber direction."""
        return 1 - self.at(point)[1] ** -1


def euler_class(point: str, tangent: TangentData | None = None) -> MultiLaurent:
    """prod over tangent weights chi of (1 - chi^-1)."""
    tangent = tangent or TangentData.for_convention("a")
    base, fiber = tangent.at(point)
    return (1 - base ** -1) * (1 - fiber ** -1)


def _as_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, MultiLaurent):
        return RationalFunction(x.with_vars(VARS) if set(x.vars) <= set(VARS) else x)
    return RationalFunction(MultiLaurent.constant(x, VARS))


class FixedPointClass:
    """Localized class: a RationalFunction at each of the four fixed points of Z."""

    __slots__ = ("tangent", "entries")

    def __init__(self, tangent: TangentData, entries):
        self.tangent = tangent
        self.entries = {(x, y): _as_rf(entries.get((x, y), ZERO)) for x in POINTS for y in POINTS}
        if len(entries) > 4 or set(entries) - set(self.entries):
            raise ValueError(f"entries must be indexed by pairs in {POINTS}")

    def __getitem__(self, key):
        return self.entries[key]

    def _same(self, other: "FixedPointClass"):
        if self.tangent != other.tangent:
            raise ModelInconsistent("classes built from different tangent data")

    def __add__(self, other):
        self._same(other)
        return FixedPointClass(self.tangent, {k: self.entries[k] + other.entries[k] for k in self.entries})

    def __neg__(self):
        return FixedPointClass(self.tangent, {k: -a for k, a in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FixedPointClass":
        c = _as_rf(c)
        return FixedPointClass(self.tangent, {k: a * c for k, a in self.entries.items()})

    def __mul__(self, other):
        return convolve(self, other)

    def __eq__(self, other):
        if not isinstance(other, FixedPointClass):
            return NotImplemented
        return self.tangent == other.tangent and all(self.entries[k] == other.entries[k] for k in self.entries)

    __hash__ = None

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.entries.values())

    def is_integral(self) -> bool:
        return all(a.is_laurent() for a in self.entries.values())

    def weyl_involution(self) -> "FixedPointClass":
        """Swap e <-> s in both slots and substitute t -> t^-1."""
        sw = {"e": "s", "s": "e"}
        out = {}
        for (x, y), a in self.entries.items():
            out[(sw[x], sw[y])] = RationalFunction(_flip(a.num), _flip(a.den))
        return FixedPointClass(self.tangent, out)

    def transpose(self) -> "FixedPointClass":
        return FixedPointClass(self.tangent, {(y, x): a for (x, y), a in self.entries.items()})

    def to_json(self) -> dict:
        return {"convention": self.tangent.convention,
                "entries": [{"x": x, "y": y, "value": a.to_json()} for (x, y), a in sorted(self.entries.items())]}

    def __repr__(self):
        body = ", ".join(f"{x}{y}: {a}" for (x, y), a in sorted(self.entries.items()))
        return f"FixedPointClass({body})"


@lru_cache(maxsize=None)
def _eulers(tangent: TangentData):
    e = {p: euler_class(p, tangent) for p in POINTS}
    return e, e["e"] * e["s"]


def convolve(a: FixedPointClass, b: FixedPointClass) -> FixedPointClass:
    """(a*b)(x, z) = sum_y a(x, y) b(y, z) / euler(y)."""
    a._same(b)
    eul, both = _eulers(a.tangent)
    cofactor = {"e": eul["s"], "s": eul["e"]}
    out = {}
    for x in POINTS:
        for z in POINTS:
            pairs = [(a.entries[(x, y)], b.entries[(y, z)], y) for y in POINTS]
            if all(p.is_laurent() and r.is_laurent() for p, r, _ in pairs):
                num = ZERO
                for p, r, y in pairs:
                    if not p.is_zero() and not r.is_zero():
                        num = num + p.num * r.num * cofactor[y]
                try:
                    out[(x, z)] = RationalFunction(num.exact_div(both))
                except NotDivisible:
                    out[(x, z)] = RationalFunction(num, both)
            else:
                out[(x, z)] = sum((p * r / RationalFunction(eul[y]) for p, r, y in pairs),
                                  RationalFunction(ZERO))
    return FixedPointClass(a.tangent, out)


# -- basic classes ---------------------------------------------------------

def unit(tangent: TangentData | None = None) -> FixedPointClass:
    """Structure sheaf of the diagonal: euler(x) on the diagonal."""
    tangent = tangent or TangentData.for_convention("a")
    return FixedPointClass(tangent, {(x, x): euler_class(x, tangent) for x in POINTS})


def class_theta(n: int, tangent: TangentData | None = None) -> FixedPointClass:
    """Diagonal class twisted by t^n at e and t^-n at s; class_theta(0) is the unit."""
    tangent = tangent or TangentData.for_convention("a")
    return FixedPointClass(tangent, {(x, x): euler_class(x, tangent) * _twist(x, n) for x in POINTS})


def class_line_bundle(a: int, b: int, tangent: TangentData | None = None) -> FixedPointClass:
    """O(a, b) on the zero-section component P^1 x P^1 of Z."""
    tangent = tangent or TangentData.for_convention("a")
    return FixedPointClass(tangent, {
        (x, y): _twist(x, a) * _twist(y, b) * tangent.fiber_factor(x) * tangent.fiber_factor(y)
        for x in POINTS for y in POINTS})


def _ts_from(tangent, sign, twist, unit_coefficient) -> FixedPointClass:
    return class_line_bundle(*twist, tangent).scale(sign) + unit(tangent).scale(unit_coefficient)


def load_convention(directory=None) -> dict:
    path = data_dir(directory) / "steinberg_convention.json"
    with open(path) as fh:
        return json.load(fh)


def class_Ts(convention: str | None = None, directory=None) -> FixedPointClass:
    """Image of T_s.  The frozen convention is used when it matches; otherwise the
    twist is searched for and ModelInconsistent is raised if none exists."""
    frozen = load_convention(directory)
    convention = convention or frozen["q_convention"]
    tangent = TangentData.for_convention(convention)
    if convention == frozen["q_convention"]:
        return _ts_from(tangent, frozen["ts_sign"], tuple(frozen["twist"]), frozen["unit_coefficient"])
    found = search_class_Ts(convention)
    if not found:
        raise ModelInconsistent(
            f"no twist in [-2, 2]^2 gives a class satisfying the quadratic and Bernstein "
            f"relations under q-convention {convention!r}")
    sign, twist = found[0]["sign"], tuple(found[0]["twist"])
    return _ts_from(tangent, sign, twist, -1)


# -- relations ---------------------------------------------------------------

def quadratic_residue(ts: FixedPointClass) -> FixedPointClass:
    """Ts*Ts - (q-1) Ts - q unit."""
    return ts * ts - ts.scale(Q - 1) - unit(ts.tangent).scale(Q)


def bernstein_residue(ts: FixedPointClass, lam: int) -> FixedPointClass:
    """(theta_lam Ts - Ts theta_-lam)(1 - theta_-2) - (q-1)(theta_lam - theta_-lam)
    in the coweight normalization where the simple coroot is theta_2."""
    tg = ts.tangent
    th, ths = class_theta(lam, tg), class_theta(-lam, tg)
    lhs = (th * ts - ts * ths) * (unit(tg) - class_theta(-2, tg))
    return lhs - (th - ths).scale(Q - 1)


def search_class_Ts(convention: str, twists: Iterable[int] = range(-2, 3),
                    signs=(1, -1), symmetric: bool = True) -> list:
    """All sign * O(a, b) - unit satisfying the quadratic and Bernstein relations.

    Conjugation by theta_m preserves both relations and moves the twist along
    a + b = const, so with ``symmetric`` the transpose-invariant (a = b) class
    is singled out."""
    tangent = TangentData.for_convention(convention)
    found = []
    twists = list(twists)
    for sign, a, b in itertools.product(signs, twists, twists):
        if symmetric and a != b:
            continue
        ts = _ts_from(tangent, sign, (a, b), -1)
        if not quadratic_residue(ts).is_zero():
            continue
        if all(bernstein_residue(ts, lam).is_zero() for lam in (1, 2)):
            found.append({"sign": sign, "twist": [a, b]})
    return found


def sl2_hecke_map(ts: FixedPointClass, datum_name: str = "SL2") -> BernsteinMap:
    """Algebra map from the affine Hecke algebra of SL2 (theta_n -> class_theta(2n))
    or PGL2 (theta_n -> class_theta(n)) into the localization model."""
    datum = load_datum(datum_name)
    factor = {"SL2": 2, "PGL2": 1}[datum_name]
    tg = ts.tangent
    return BernsteinMap(datum,
                        lambda lam: class_theta(factor * lam[0], tg),
                        lambda i: ts,
                        unit(tg))


def _check_hom(ts, datum_name, max_len):
    hmap = sl2_hecke_map(ts, datum_name)
    datum = hmap.datum
    elems = elements_up_to_length(datum, max_len, omega_elements(datum, 1))
    for x, y in itertools.product(elems, repeat=2):
        prod = HeckeElement.T(x) * HeckeElement.T(y)
        if hmap(prod) != hmap.basis(x) * hmap.basis(y):
            return f"T_{x} * T_{y}"
    return None


def _bracketings(word):
    if len(word) == 1:
        yield word[0]
        return
    for k in range(1, len(word)):
        for left in _bracketings(word[:k]):
            for right in _bracketings(word[k:]):
                yield (left, right)


def _evaluate(tree, cache):
    if isinstance(tree, str):
        return cache[tree]
    if tree not in cache:
        cache[tree] = _evaluate(tree[0], cache) * _evaluate(tree[1], cache)
    return cache[tree]


def hecke_model_check(convention: str | None = None, strict: bool = True,
                      max_word: int = 4, hom_length: int = 3, directory=None) -> dict:
    """Check the localization model against the affine Hecke algebra.

    Returns {check: "pass"|"fail"} plus the first counterexample per failing
    check; with ``strict`` a failure raises ModelInconsistent instead."""
    ts = class_Ts(convention, directory)
    tg = ts.tangent
    one = unit(tg)
    th = {n: class_theta(n, tg) for n in range(-4, 5)}
    report: dict = {}
    witness: dict = {}

    def record(name, counterexample):
        report[name] = "pass" if counterexample is None else "fail"
        if counterexample is not None:
            witness[name] = counterexample

    record("quadratic", None if quadratic_residue(ts).is_zero() else "Ts*Ts")
    bad = None
    for m, n in itertools.product(range(-2, 3), repeat=2):
        if th[m] * th[n] != th[m + n]:
            bad = f"theta_{m} * theta_{n}"
            break
    record("theta_homomorphism", bad)
    record("theta_inverse", None if th[1] * th[-1] == one else "theta_1 * theta_-1")
    bad = None
    for name, a in (("Ts", ts), ("theta_1", th[1]), ("theta_-1", th[-1])):
        if one * a != a or a * one != a:
            bad = name
            break
    record("unit", bad)
    z = th[1] + th[-1]
    record("centrality", None if (z * ts - ts * z).is_zero() else "(theta_1 + theta_-1) Ts")
    bad = next((f"lambda = {lam}" for lam in range(-2, 3) if not bernstein_residue(ts, lam).is_zero()), None)
    record("bernstein", bad)

    letters = {"T": ts, "P": th[1], "M": th[-1]}
    cache = dict(letters)
    bad = None
    for k in range(3, max_word + 1):
        for word in itertools.product("TPM", repeat=k):
            values = [_evaluate(tree, cache) for tree in _bracketings(word)]
            if any(v != values[0] for v in values[1:]):
                bad = "".join(word)
                break
            if not values[0].is_integral():
                witness.setdefault("integrality", "".join(word))
        if bad:
            break
    record("associativity", bad)
    record("integrality", witness.pop("integrality", None) if all(
        c.is_integral() for c in (one, ts, *th.values())) else "generators")

    for dname in ("SL2", "PGL2"):
        record(f"hecke_homomorphism_{dname}", _check_hom(ts, dname, hom_length))

    bad = None
    gens = {"Ts": ts, "theta_1": th[1], "theta_-1": th[-1]}
    for (na, a), (nb, b) in itertools.product(gens.items(), repeat=2):
        if (a * b).weyl_involution() != a.weyl_involution() * b.weyl_involution():
            bad = f"{na} * {nb}"
            break
        if a.weyl_involution().weyl_involution() != a:
            bad = na
            break
    record("weyl_involution", bad)
    bad = None if ts.transpose() == ts else "Ts"
    if bad is None:
        for (na, a), (nb, b) in itertools.product(gens.items(), repeat=2):
            if (a * b).transpose() != b.transpose() * a.transpose():
                bad = f"{na} * {nb}"
                break
    record("transpose_anti_involution", bad)

    frozen = load_convention(directory)
    report["convention"] = {"q_convention": tg.convention,
                            "fiber_weight_at_e": str(tg.at("e")[1])}
    if tg.convention == frozen["q_convention"]:
        report["convention"].update({k: frozen[k] for k in ("ts_sign", "twist", "unit_coefficient")})
    if witness:
        report["counterexamples"] = witness
        if strict:
            raise ModelInconsistent(f"localization model fails: {witness}")
    return report
