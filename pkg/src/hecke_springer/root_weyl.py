"""Root data, finite Weyl groups and extended affine Weyl groups.

Conventions
-----------
* Cocharacters and characters are integer vectors; the pairing is the dot
  product.  ``cartan_matrix[i][j] = <alpha_i^vee, alpha_j>``.
* ``W`` acts on cocharacters by ``s_i(lam) = lam - <lam, alpha_i> alpha_i^vee``;
  a Weyl element is stored as its integer matrix on the cocharacter lattice.
* An element ``(lam, w)`` of ``W_a = W x| X_*(T)`` acts on ``X_* (x) R`` by
  ``v -> lam + w v``.  Products follow ``(l1, w1)(l2, w2) = (l1 + w1 l2, w1 w2)``.
* The fundamental alcove is ``0 < <v, alpha> < 1`` for positive ``alpha``.
  Finite simple reflections carry indices ``1..r``; the affine reflection
  ``t_{theta^vee} s_theta`` of the c-th irreducible component carries index
  ``-c`` (so ``0`` in the irreducible case).
* ``reduced_word(x)`` returns ``(omega, word)`` with ``x = s_word[0] ... s_word[-1] * omega``
  and ``word`` the lexicographically smallest reduced word.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .errors import RootDatumMismatch, UnknownDatum

DATA_ENV = "HECKE_SPRINGER_DATA"
DEFAULT_DATA_DIR = Path(__file__).parent / "data"

Vector = tuple
Matrix = tuple


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _matvec(m: Matrix, v: Vector) -> Vector:
    return tuple(_dot(row, v) for row in m)


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(_dot(row, c) for c in cols) for row in a)


def _transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class RootDatum:
    name: str
    cochar_rank: int
    simple_roots: tuple
    simple_coroots: tuple

    def __post_init__(self):
        object.__setattr__(self, "simple_roots", tuple(tuple(r) for r in self.simple_roots))
        object.__setattr__(self, "simple_coroots", tuple(tuple(c) for c in self.simple_coroots))
        if len(self.simple_roots) != len(self.simple_coroots):
            raise ValueError("need as many simple roots as simple coroots")
        for v in self.simple_roots + self.simple_coroots:
            if len(v) != self.cochar_rank:
                raise ValueError(f"vector {v} has wrong length for rank {self.cochar_rank}")
        a = self.cartan_matrix
        for i in range(self.rank):
            if a[i][i] != 2:
                raise ValueError(f"<alpha_{i+1}^vee, alpha_{i+1}> = {a[i][i]} != 2")
            for j in range(self.rank):
                if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                    raise ValueError("not a generalized Cartan matrix")
        if len(self.weyl_elements) > 100000:
            raise ValueError("Weyl group too large / not of finite type")

    # -- basic data -----------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @cached_property
    def cartan_matrix(self) -> tuple:
        return tuple(tuple(_dot(c, r) for r in self.simple_roots) for c in self.simple_coroots)

    def pair(self, cochar, char) -> int:
        return _dot(cochar, char)

    @cached_property
    def simple_reflections(self) -> tuple:
        """Matrices of s_1..s_r on the cocharacter lattice."""
        n = self.cochar_rank
        mats = []
        for a, c in zip(self.simple_roots, self.simple_coroots):
            mats.append(tuple(tuple(int(i == j) - c[i] * a[j] for j in range(n)) for i in range(n)))
        return tuple(mats)

    @cached_property
    def identity_matrix(self) -> Matrix:
        return _identity(self.cochar_rank)

    @cached_property
    def _roots(self):
        """Positive roots with their coroots and simple-root coordinates."""
        r = self.rank
        found = {}
        frontier = []
        for i in range(r):
            coords = tuple(int(j == i) for j in range(r))
            found[coords] = (self.simple_roots[i], self.simple_coroots[i])
            frontier.append(coords)
        while frontier:
            nxt = []
            for coords in frontier:
                root, coroot = found[coords]
                for i in range(r):
                    k = _dot(self.simple_coroots[i], root)
                    new = tuple(c - k * int(j == i) for j, c in enumerate(coords))
                    if new in found or any(x < 0 for x in new) or not any(new):
                        continue
                    kc = _dot(coroot, self.simple_roots[i])
                    found[new] = (
                        tuple(x - k * y for x, y in zip(root, self.simple_roots[i])),
                        tuple(x - kc * y for x, y in zip(coroot, self.simple_coroots[i])),
                    )
                    nxt.append(new)
            frontier = nxt
        return found

    @cached_property
    def positive_roots(self) -> tuple:
        return tuple(sorted(v[0] for v in self._roots.values()))

    @cached_property
    def coroot_of(self) -> dict:
        out = {}
        for root, coroot in self._roots.values():
            out[root] = coroot
            out[tuple(-x for x in root)] = tuple(-x for x in coroot)
        return out

    @cached_property
    def _positive_set(self) -> frozenset:
        return frozenset(self.positive_roots)

    def is_positive_root(self, char) -> bool:
        return tuple(char) in self._positive_set

    @cached_property
    def components(self) -> tuple:
        """Irreducible components as sorted tuples of simple-root indices (0-based)."""
        a = self.cartan_matrix
        seen, comps = set(), []
        for i in range(self.rank):
            if i in seen:
                continue
            comp, stack = set(), [i]
            while stack:
                j = stack.pop()
                if j in comp:
                    continue
                comp.add(j)
                stack.extend(k for k in range(self.rank) if a[j][k] and k not in comp)
            seen |= comp
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    @cached_property
    def highest_roots(self) -> tuple:
        out = []
        for comp in self.components:
            best = max(
                (coords for coords in self._roots
                 if all(coords[j] == 0 for j in range(self.rank) if j not in comp)),
                key=lambda c: (sum(c), c),
            )
            out.append(self._roots[best])
        return tuple(out)

    # -- finite Weyl group ------------------------------------------------
    @cached_property
    def weyl_elements(self) -> dict:
        """matrix -> lexicographically smallest reduced word (1-based letters)."""
        ident = self.identity_matrix
        words = {ident: ()}
        level = [ident]
        while level:
            nxt = []
            for m in level:
                for i, s in enumerate(self.simple_reflections, start=1):
                    new = _matmul(m, s)
                    if new not in words:
                        words[new] = words[m] + (i,)
                        nxt.append(new)
            level = nxt
            if len(words) > 100000:
                break
        return words

    def weyl_element(self, matrix) -> "WeylElement":
        matrix = tuple(tuple(r) for r in matrix)
        try:
            return WeylElement(matrix, self.weyl_elements[matrix])
        except KeyError:
            raise ValueError(f"{matrix} is not in the Weyl group of {self.name}") from None

    def weyl_from_word(self, word: Iterable[int]) -> "WeylElement":
        m = self.identity_matrix
        for i in word:
            m = _matmul(m, self.simple_reflections[i - 1])
        return self.weyl_element(m)

    @cached_property
    def longest_element(self) -> Matrix:
        return max(self.weyl_elements, key=lambda m: len(self.weyl_elements[m]))

    def weyl_orbit(self, lam) -> list:
        lam = tuple(lam)
        return sorted({_matvec(m, lam) for m in self.weyl_elements})

    # -- dominance ----------------------------------------------------
    def is_dominant(self, lam) -> bool:
        return all(_dot(lam, a) >= 0 for a in self.simple_roots)

    @cached_property
    def dominant_basis(self) -> tuple:
        """For each i an integral cocharacter d_i with <d_i, alpha_j> = 0 (j != i)
        and <d_i, alpha_i> > 0 minimal; smallest L1 norm, then lex-largest."""
        out = []
        n = self.cochar_rank
        for i in range(self.rank):
            best = None
            for bound in (1, 2, 3):
                for v in itertools.product(range(-bound, bound + 1), repeat=n):
                    p = [_dot(v, a) for a in self.simple_roots]
                    if p[i] <= 0 or any(p[j] for j in range(self.rank) if j != i):
                        continue
                    key = (p[i], sum(abs(x) for x in v), tuple(-x for x in v))
                    if best is None or key < best[0]:
                        best = (key, v)
                if best is not None:
                    break
            if best is None:
                best = (None, self._rational_fundamental_coweight(i))
            out.append(tuple(best[1]))
        return tuple(out)

    def _rational_fundamental_coweight(self, i) -> tuple:
        # x = A^T y with (A A^T) y = e_i, scaled to a primitive integer vector
        import math
        a = [list(map(Fraction, r)) for r in self.simple_roots]
        gram = [[sum(x * y for x, y in zip(r1, r2)) for r2 in a] for r1 in a]
        rhs = [Fraction(int(j == i)) for j in range(self.rank)]
        y = _solve(gram, rhs)
        x = [sum(y[k] * a[k][j] for k in range(self.rank)) for j in range(self.cochar_rank)]
        den = 1
        for v in x:
            den = den * v.denominator // math.gcd(den, v.denominator)
        xi = [int(v * den) for v in x]
        g = 0
        for v in xi:
            g = math.gcd(g, v)
        return tuple(v // g for v in xi)

    def dominant_split(self, lam) -> tuple:
        """(lam1, lam2), both dominant, lam = lam1 - lam2, lam2 minimal in the
        cone spanned by ``dominant_basis``."""
        lam = tuple(lam)
        lam2 = [0] * self.cochar_rank
        for i, d in enumerate(self.dominant_basis):
            need = -_dot(lam, self.simple_roots[i])
            if need > 0:
                step = _dot(d, self.simple_roots[i])
                c = -(-need // step)
                lam2 = [x + c * y for x, y in zip(lam2, d)]
        lam2 = tuple(lam2)
        lam1 = tuple(x + y for x, y in zip(lam, lam2))
        return lam1, lam2

    # -- affine Weyl group ------------------------------------------------
    def element(self, translation=None, finite=None) -> "ExtAffineElement":
        t = tuple(translation) if translation is not None else (0,) * self.cochar_rank
        if len(t) != self.cochar_rank:
            raise ValueError(f"translation {t} has wrong length for {self.name}")
        if finite is None:
            m = self.identity_matrix
        elif isinstance(finite, WeylElement):
            m = finite.matrix
        else:
            m = tuple(tuple(r) for r in finite)
        if m not in self.weyl_elements:
            raise ValueError(f"{m} is not in W({self.name})")
        return ExtAffineElement(t, m, self)

    def from_word(self, translation=None, word: Iterable[int] = ()) -> "ExtAffineElement":
        """``t_translation * w`` with w given by a finite word (letters 1..r)."""
        return self.element(translation, self.weyl_from_word(word))

    def identity(self) -> "ExtAffineElement":
        return self.element()

    def translation(self, lam) -> "ExtAffineElement":
        return self.element(lam)

    @cached_property
    def affine_generators(self) -> dict:
        """index -> ExtAffineElement for every affine simple reflection."""
        gens = {}
        for i, s in enumerate(self.simple_reflections, start=1):
            gens[i] = ExtAffineElement((0,) * self.cochar_rank, s, self)
        for c, (theta, theta_v) in enumerate(self.highest_roots):
            n = self.cochar_rank
            s_theta = tuple(tuple(int(i == j) - theta_v[i] * theta[j] for j in range(n))
                            for i in range(n))
            gens[-c] = ExtAffineElement(tuple(theta_v), s_theta, self)
        return dict(sorted(gens.items()))

    @cached_property
    def omega_generators(self) -> tuple:
        """Length-zero elements generating Omega = W_a / W_aff (from t_{e_k})."""
        out = []
        for k in range(self.cochar_rank):
            e = tuple(int(i == k) for i in range(self.cochar_rank))
            om, _ = reduced_word(self.translation(e))
            if not om.is_identity() and om not in out:
                out.append(om)
        return tuple(out)

    def to_json(self) -> dict:
        return {"name": self.name, "cochar_rank": self.cochar_rank,
                "simple_roots": [list(r) for r in self.simple_roots],
                "simple_coroots": [list(c) for c in self.simple_coroots]}


def _solve(a, b):
    n = len(a)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for c in range(n):
        p = next(i for i in range(c, n) if m[i][c])
        m[c], m[p] = m[p], m[c]
        inv = Fraction(1) / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


@dataclass(frozen=True)
class WeylElement:
    matrix: tuple
    word: tuple = field(compare=False)

    def __len__(self):
        return len(self.word)


@dataclass(frozen=True)
class ExtAffineElement:
    translation: tuple
    finite: tuple
    datum: RootDatum = field(compare=False, repr=False)

    def __hash__(self):
        return hash((self.translation, self.finite))

    def __mul__(self, other: "ExtAffineElement") -> "ExtAffineElement":
        return wa_multiply(self, other)

    def inverse(self) -> "ExtAffineElement":
        winv = _transpose(self.finite) if _is_orthogonal(self.finite) else _inverse_in(self.datum, self.finite)
        lam = tuple(-x for x in _matvec(winv, self.translation))
        return ExtAffineElement(lam, winv, self.datum)

    def act(self, v) -> tuple:
        return tuple(a + b for a, b in zip(self.translation, _matvec(self.finite, v)))

    def is_identity(self) -> bool:
        return not any(self.translation) and self.finite == self.datum.identity_matrix

    @property
    def finite_part(self) -> WeylElement:
        return self.datum.weyl_element(self.finite)

    def length(self) -> int:
        return wa_length(self)

    def to_json(self) -> dict:
        return {"lambda": list(self.translation), "word": list(self.datum.weyl_elements[self.finite])}

    def __str__(self):
        w = "".join(f"s{i}" for i in self.datum.weyl_elements[self.finite]) or "e"
        return f"t{list(self.translation)}*{w}"


def _is_orthogonal(m) -> bool:
    return _matmul(m, _transpose(m)) == _identity(len(m))


def _inverse_in(datum: RootDatum, m) -> Matrix:
    word = datum.weyl_elements[m]
    return datum.weyl_from_word(reversed(word)).matrix


def _check_same(a: RootDatum, b: RootDatum):
    if a is not b and a != b:
        raise RootDatumMismatch(f"{a.name} vs {b.name}")


def wa_multiply(a: ExtAffineElement, b: ExtAffineElement) -> ExtAffineElement:
    _check_same(a.datum, b.datum)
    lam = tuple(x + y for x, y in zip(a.translation, _matvec(a.finite, b.translation)))
    return ExtAffineElement(lam, _matmul(a.finite, b.finite), a.datum)


def wa_length(x: ExtAffineElement) -> int:
    """Number of affine root hyperplanes separating the base alcove from its
    image: sum over alpha > 0 of |<lam, alpha>| if w^{-1} alpha > 0, else
    |<lam, alpha> - 1|."""
    return _length(x.datum, x.translation, x.finite)


@lru_cache(maxsize=1 << 18)
def _length(datum: RootDatum, lam, w) -> int:
    wt = _transpose(w)
    total = 0
    for alpha in datum.positive_roots:
        p = _dot(lam, alpha)
        if datum.is_positive_root(_matvec(wt, alpha)):
            total += abs(p)
        else:
            total += abs(p - 1)
    return total


def reduced_word(x: ExtAffineElement) -> tuple:
    """(omega, word): x = s_{word[0]} ... s_{word[-1]} * omega, word lex-minimal."""
    gens = x.datum.affine_generators
    word = []
    cur = x
    ell = wa_length(cur)
    while ell:
        for i, s in gens.items():
            y = wa_multiply(s, cur)
            ly = wa_length(y)
            if ly < ell:
                word.append(i)
                cur, ell = y, ly
                break
        else:  # pragma: no cover - a positive-length element always has a descent
            raise AssertionError(f"no left descent for {x}")
    return cur, tuple(word)


def from_affine_word(datum: RootDatum, word: Sequence[int],
                     omega: ExtAffineElement | None = None) -> ExtAffineElement:
    x = datum.identity()
    for i in word:
        x = wa_multiply(x, datum.affine_generators[i])
    if omega is not None:
        x = wa_multiply(x, omega)
    return x


def dominant_split(datum: RootDatum, lam) -> tuple:
    return datum.dominant_split(lam)


def in_affine_coxeter_group(x: ExtAffineElement) -> bool:
    """Filter for the non-extended affine Weyl group W_aff (Omega-part trivial)."""
    om, _ = reduced_word(x)
    return om.is_identity()


# -- presets --------------------------------------------------------------

def data_dir(explicit: str | os.PathLike | None = None) -> Path:
    if explicit:
        return Path(explicit)
    env = os.environ.get(DATA_ENV)
    if env:
        return Path(env)
    return DEFAULT_DATA_DIR


def available_data(directory=None) -> list:
    return sorted(p.stem for p in data_dir(directory).glob("*.json"))


@lru_cache(maxsize=None)
def _load(path: str) -> RootDatum:
    with open(path) as f:
        raw = json.load(f)
    return RootDatum(raw["name"], raw["cochar_rank"], raw["simple_roots"], raw["simple_coroots"])


def load_datum(name: str, directory=None) -> RootDatum:
    path = data_dir(directory) / f"{name}.json"
    if not path.exists():
        levi = _parse_levi(name)
        if levi is not None:
            return levi_datum(levi)
        raise UnknownDatum(f"no preset {name!r} in {path.parent}; have {available_data(directory)}")
    return _load(str(path))


def _parse_levi(name: str):
    # "GL2xGL1" style products of general linear groups
    parts = name.split("x")
    if len(parts) < 2 or not all(p.startswith("GL") and p[2:].isdigit() for p in parts):
        return None
    return tuple(int(p[2:]) for p in parts)


def levi_datum(composition: Sequence[int]) -> RootDatum:
    """Standard Levi GL_{m1} x ... x GL_{mk} inside GL_n (block-diagonal torus)."""
    composition = tuple(int(m) for m in composition)
    if not composition or any(m <= 0 for m in composition):
        raise ValueError(f"bad composition {composition}")
    n = sum(composition)
    roots = []
    start = 0
    for m in composition:
        for i in range(start, start + m - 1):
            roots.append(tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n)))
        start += m
    name = "x".join(f"GL{m}" for m in composition)
    return _levi_cached(name, n, tuple(roots))


@lru_cache(maxsize=None)
def _levi_cached(name, n, roots) -> RootDatum:
    return RootDatum(name, n, roots, roots)


def gl(n: int) -> RootDatum:
    return levi_datum((n,))
