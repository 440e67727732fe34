"""q-commuting pairs (s, N): multisegments for GL_n and the SL_2 casework.

For GL_n the eigenvalues of s are formal symbols tagged with q-powers,
("a", k) meaning a*q^k.  N maps the a*q^k eigenspace to the a*q^(k+1) one, so
a class is a representation of a chain quiver per q-orbit, classified by a
multiset of segments [a*q^k; length].

For SL_2 the inputs are exact algebraic numbers (sympy), and component groups
of stabilizers come out of torus-character arithmetic.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy as sp

from .errors import NotQCommuting, RootOfUnityQ
from .exact_arith import RationalMatrix

ROOT_OF_UNITY_BOUND = 24


# -- q handling ------------------------------------------------------------

def _sym(x):
    if isinstance(x, sp.Basic):
        return x
    if isinstance(x, Fraction):
        return sp.Rational(x.numerator, x.denominator)
    if isinstance(x, str):
        return sp.sympify(x.replace("^", "**"), rational=True)
    return sp.nsimplify(x, rational=True) if isinstance(x, float) else sp.sympify(x)


def _is_zero(x) -> bool:
    x = sp.nsimplify(sp.simplify(x)) if not isinstance(x, sp.Integer) else x
    return bool(sp.simplify(x) == 0)


def _equal(a, b) -> bool:
    return _is_zero(sp.expand(a - b))


def check_q(q, bound: int = ROOT_OF_UNITY_BOUND):
    """None for generic q; otherwise the exact value after refusing roots of unity."""
    if q is None or (isinstance(q, str) and q == "generic"):
        return None
    qv = _sym(q)
    if _is_zero(qv):
        raise RootOfUnityQ("q = 0 is not allowed")
    for k in range(1, bound + 1):
        if _equal(qv ** k, 1):
            raise RootOfUnityQ(f"q = {qv} satisfies q^{k} = 1")
    if _is_zero(sp.Abs(qv) - 1) and not qv.is_rational:
        raise RootOfUnityQ(f"|q| = 1 and q^k != 1 only checked up to k = {bound}; refusing")
    return qv


# -- GL_n multisegments --------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    orbit: str
    start: int
    length: int

    def eigenvalues(self) -> list:
        return [(self.orbit, self.start + i) for i in range(self.length)]

    def to_json(self) -> dict:
        return {"orbit": self.orbit, "start": self.start, "length": self.length}

    def __str__(self):
        base = self.orbit if self.start == 0 else f"q^{self.start}{self.orbit}"
        return f"[{base};{self.length}]"


@dataclass(frozen=True)
class DLParameterGLn:
    segments: tuple

    @property
    def n(self) -> int:
        return sum(s.length for s in self.segments)

    def eigenvalue_data(self) -> dict:
        out: Counter = Counter()
        for s in self.segments:
            out.update(s.eigenvalues())
        return dict(out)

    def nilpotent_rank(self) -> int:
        return sum(s.length - 1 for s in self.segments)

    def to_json(self) -> dict:
        return {"segments": [s.to_json() for s in self.segments], "n": self.n,
                "N_is_zero": self.nilpotent_rank() == 0}

    def __str__(self):
        return "{" + ", ".join(str(s) for s in self.segments) + "}"


def _normalize_data(eigen: Mapping) -> dict:
    data = {}
    for key, m in eigen.items():
        if isinstance(key, str):
            key = (key, 0)
        orbit, k = key
        if int(m) < 0:
            raise ValueError("multiplicities must be non-negative")
        if int(m):
            data[(str(orbit), int(k))] = data.get((str(orbit), int(k)), 0) + int(m)
    return data


def _chain_multisegments(mult: Sequence[int], offset: int = 0) -> list:
    """Multisets of segments (start, length) filling a chain with these multiplicities."""
    mult = list(mult)
    while mult and mult[0] == 0:
        mult.pop(0)
        offset += 1
    if not mult:
        return [()]
    out = []
    # the segments starting at the first position: choose their lengths as a multiset
    first = mult[0]

    def lengths(count, max_len):
        if count == 0:
            yield ()
            return
        for l in range(max_len, 0, -1):
            for rest in lengths(count - 1, l):
                yield (l,) + rest

    for ls in lengths(first, len(mult)):
        rest = list(mult)
        ok = True
        for l in ls:
            for i in range(l):
                rest[i] -= 1
                if rest[i] < 0:
                    ok = False
        if not ok:
            continue
        for tail in _chain_multisegments(rest, offset):
            out.append(tuple(sorted(((offset, l) for l in ls))) + tail)
    return [tuple(sorted(x)) for x in out]


def enumerate_gln(n: int | None = None, q=None, eigenvalues: Mapping | None = None,
                  eigenvalue_budget: int | None = None) -> list:
    """Classes of q-commuting pairs in GL_n.

    With ``eigenvalues`` ({(orbit, k): multiplicity}) the classes for that s
    are listed.  With ``eigenvalue_budget`` every eigenvalue shape of size n
    using at most that many q-orbits is enumerated, orbits named a, b, ...
    with the smallest q-power in each orbit normalized to 0.
    """
    check_q(q)
    if eigenvalues is not None:
        data = _normalize_data(eigenvalues)
        if n is not None and sum(data.values()) != n:
            raise ValueError(f"multiplicities sum to {sum(data.values())}, not n = {n}")
        return _classes_for(data)
    if n is None or n < 1:
        raise ValueError("n must be a positive integer")
    budget = eigenvalue_budget if eigenvalue_budget is not None else n
    out = []
    for data in eigenvalue_shapes(n, budget):
        out.extend(_classes_for(data))
    return out


def _classes_for(data: dict) -> list:
    orbits = sorted({o for o, _ in data})
    per_orbit = []
    for o in orbits:
        ks = [k for oo, k in data if oo == o]
        lo, hi = min(ks), max(ks)
        mult = [data.get((o, k), 0) for k in range(lo, hi + 1)]
        per_orbit.append([tuple(Segment(o, s, l) for s, l in ms) for ms in _chain_multisegments(mult, lo)])
    out = []
    for combo in itertools.product(*per_orbit):
        segs = tuple(sorted(itertools.chain.from_iterable(combo), key=lambda s: (s.orbit, s.start, s.length)))
        out.append(DLParameterGLn(segs))
    return out


def eigenvalue_shapes(n: int, budget: int) -> list:
    """Eigenvalue data of total multiplicity n, at most ``budget`` q-orbits,
    up to renaming orbits and shifting each orbit; within an orbit the
    occupied q-powers are consecutive."""
    def chains(size):
        # contiguous multiplicity vectors (compositions of size); a gap inside an
        # orbit behaves exactly like two separate orbits
        out = []

        def rec(prefix, remaining):
            if remaining == 0:
                out.append(tuple(prefix))
                return
            for m in range(1, remaining + 1):
                rec(prefix + [m], remaining - m)

        rec([], size)
        return out

    shapes = set()
    for k in range(1, budget + 1):
        for sizes in _partitions(n, k):
            for vecs in itertools.product(*(chains(s) for s in sizes)):
                shapes.add(tuple(sorted(vecs)))
    out = []
    for shape in sorted(shapes):
        data = {}
        for idx, vec in enumerate(shape):
            for pos, m in enumerate(vec):
                if m:
                    data[(chr(ord("a") + idx), pos)] = m
        out.append(data)
    return out


def _partitions(n: int, k: int, max_part: int | None = None) -> list:
    max_part = n if max_part is None else max_part
    if k == 0:
        return [()] if n == 0 else []
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, k - 1, first):
            out.append((first,) + rest)
    return out


def single_orbit_count(n: int) -> int:
    """Segment decompositions of a chain of n distinct eigenvalues a, qa, ...:
    f(n) = sum_{k=1..n} f(n-k), f(0) = 1."""
    f = [1]
    for m in range(1, n + 1):
        f.append(sum(f[m - k] for k in range(1, m + 1)))
    return f[n]


# -- brute-force oracle over F_2 -----------------------------------------------

def _gl_f2(d: int) -> list:
    mats = []
    for bits in itertools.product((0, 1), repeat=d * d):
        m = tuple(tuple(bits[i * d:(i + 1) * d]) for i in range(d))
        if _det_f2(m):
            mats.append(m)
    return mats


def _det_f2(m) -> int:
    d = len(m)
    a = [list(r) for r in m]
    for c in range(d):
        p = next((r for r in range(c, d) if a[r][c]), None)
        if p is None:
            return 0
        a[c], a[p] = a[p], a[c]
        for r in range(c + 1, d):
            if a[r][c]:
                a[r] = [(x + y) % 2 for x, y in zip(a[r], a[c])]
    return 1


def _mul_f2(a, b):
    if not a or not b or not b[0]:
        rows = len(a)
        cols = len(b[0]) if b else 0
        return tuple(tuple(0 for _ in range(cols)) for _ in range(rows))
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) % 2 for j in range(len(b[0])))
                 for i in range(len(a)))


def _inv_f2(m):
    d = len(m)
    a = [list(r) + [int(i == j) for j in range(d)] for i, r in enumerate(m)]
    for c in range(d):
        p = next(r for r in range(c, d) if a[r][c])
        a[c], a[p] = a[p], a[c]
        for r in range(d):
            if r != c and a[r][c]:
                a[r] = [(x + y) % 2 for x, y in zip(a[r], a[c])]
    return tuple(tuple(r[d:]) for r in a)


def oracle_orbit_count(eigenvalues: Mapping) -> int:
    """Orbits of prod GL(V_lambda)(F_2) on the q-commuting N (maps V_lambda -> V_{q lambda}),
    found by union-find over all 0/1 block matrices."""
    data = _normalize_data(eigenvalues)
    total = 1
    for o in sorted({o for o, _ in data}):
        ks = [k for oo, k in data if oo == o]
        dims = [data.get((o, k), 0) for k in range(min(ks), max(ks) + 1)]
        total *= _chain_orbits(dims)
    return total


def _chain_orbits(dims: Sequence[int]) -> int:
    arrows = [(dims[i + 1], dims[i]) for i in range(len(dims) - 1)]  # (rows, cols) of V_i -> V_{i+1}
    spaces = []
    for r, c in arrows:
        spaces.append([tuple(tuple(bits[i * c:(i + 1) * c]) for i in range(r))
                       for bits in itertools.product((0, 1), repeat=r * c)])
    points = list(itertools.product(*spaces)) if spaces else [()]
    index = {p: i for i, p in enumerate(points)}
    parent = list(range(len(points)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    groups = [_gl_f2(d) if d else [()] for d in dims]
    inverses = [[_inv_f2(g) if g else () for g in grp] for grp in groups]
    for p in points:
        for pos in range(len(dims)):
            for g, ginv in zip(groups[pos], inverses[pos]):
                if not dims[pos]:
                    continue
                new = list(p)
                # g acts on V_pos: N_in -> g N_in, N_out -> N_out g^-1
                if pos > 0:
                    new[pos - 1] = _mul_f2(g, new[pos - 1])
                if pos < len(arrows):
                    new[pos] = _mul_f2(new[pos], ginv)
                a, b = find(index[p]), find(index[tuple(new)])
                if a != b:
                    parent[a] = b
    return len({find(i) for i in range(len(points))})


# -- stabilizers -----------------------------------------------------------------

def nilpotent_matrix(param: DLParameterGLn) -> tuple:
    """(basis labels, N) with N sending each segment's a q^k basis vector to the next one."""
    labels = []
    for si, seg in enumerate(param.segments):
        for i in range(seg.length):
            labels.append((seg.orbit, seg.start + i, si))
    n = len(labels)
    N = [[0] * n for _ in range(n)]
    for col, (o, k, si) in enumerate(labels):
        for row, (o2, k2, sj) in enumerate(labels):
            if sj == si and o2 == o and k2 == k + 1:
                N[row][col] = 1
    return labels, N


def stabilizer_algebra_dimension(param: DLParameterGLn) -> int:
    """dim {X : X s = s X, X N = N X}; s only enters through its eigenspaces."""
    labels, N = nilpotent_matrix(param)
    n = len(labels)
    unknowns = [(i, j) for i in range(n) for j in range(n)
                if labels[i][:2] == labels[j][:2]]  # commute with s: preserve eigenspaces
    col = {u: c for c, u in enumerate(unknowns)}
    eqs = []
    for i in range(n):
        for j in range(n):
            # (XN - NX)_{ij} = sum_k X_ik N_kj - N_ik X_kj
            row = {}
            for k in range(n):
                if N[k][j] and (i, k) in col:
                    row[col[(i, k)]] = row.get(col[(i, k)], 0) + N[k][j]
                if N[i][k] and (k, j) in col:
                    row[col[(k, j)]] = row.get(col[(k, j)], 0) - N[i][k]
            row = {c: v for c, v in row.items() if v}
            if row:
                eqs.append(row)
    m = RationalMatrix(len(eqs), len(unknowns), {(r, c): v for r, e in enumerate(eqs) for c, v in e.items()})
    return len(unknowns) - m.rank()


def stabilizer_report(param: DLParameterGLn) -> dict:
    """The stabilizer is the unit group of a linear algebra containing 1: a nonempty
    Zariski-open subset of affine space, hence connected."""
    dim = stabilizer_algebra_dimension(param)
    return {"dimension": dim, "connected": dim > 0, "component_group": "trivial"}


def count_irreducibles_gln(n: int | None = None, q=None, eigenvalues: Mapping | None = None,
                           eigenvalue_budget: int | None = None) -> int:
    """Classes times local systems; every stabilizer is connected so each class counts once."""
    classes = enumerate_gln(n, q, eigenvalues, eigenvalue_budget)
    total = 0
    for c in classes:
        if not stabilizer_report(c)["connected"]:
            raise AssertionError(f"disconnected stabilizer for {c}")
        total += 1
    return total


# -- SL_2 -------------------------------------------------------------------------

GEOMETRY = {
    "q=1, lambda=+-1": "Ñ→𝒩",
    "q=-1, lambda=+-i": "nodal-normalization",
    "q!=1, lambda=+-1": "ℙ¹→pt",
    "q!=+-1, lambda=+-sqrt(q)": "𝔸¹∪pt→𝔸¹",
    "generic": "pt∪pt→pt",
}


@dataclass(frozen=True)
class SL2ParameterRow:
    lambda_descriptor: str
    q_descriptor: str
    n_stratum: str
    component_group: str
    geometry_label: str
    centralizer: str
    component_group_gtilde: str = "trivial"

    def to_json(self) -> dict:
        return {"lambda": self.lambda_descriptor, "q": self.q_descriptor, "n": self.n_stratum,
                "A(s,n)": self.component_group, "geometry": self.geometry_label,
                "G^s": self.centralizer, "A_tilde(s,n)": self.component_group_gtilde}


def sl2_regime(lam, q) -> str:
    lam, q = _sym(lam), _sym(q)
    if _is_zero(lam):
        raise ValueError("lambda must be nonzero")
    if _is_zero(q):
        raise ValueError("q must be nonzero")
    central = _equal(lam ** 2, 1)
    if central:
        return "q=1, lambda=+-1" if _equal(q, 1) else "q!=1, lambda=+-1"
    up, down = _equal(lam ** 2, q), _equal(lam ** -2, q)
    if up and down:
        return "q=-1, lambda=+-i"
    if up or down:
        return "q!=+-1, lambda=+-sqrt(q)"
    return "generic"


def _descriptors(regime):
    return {
        "q=1, lambda=+-1": ("±1", "1"),
        "q=-1, lambda=+-i": ("±i", "-1"),
        "q!=1, lambda=+-1": ("±1", "≠1"),
        "q!=+-1, lambda=+-sqrt(q)": ("±√q", "≠±1"),
        "generic": ("≠±1,±√q", "any"),
    }[regime]


def nilpotent_choices(lam, q) -> list:
    """Representatives of the q-commuting nilpotents up to the centralizer of s."""
    lam, q = _sym(lam), _sym(q)
    zero = sp.zeros(2, 2)
    out = [("zero", zero)]
    if _equal(lam ** 2, 1):
        if _equal(q, 1):
            out.append(("nonzero", sp.Matrix([[0, 1], [0, 0]])))
        return out
    if _equal(lam ** 2, q):
        out.append(("upper", sp.Matrix([[0, 1], [0, 0]])))
    if _equal(lam ** -2, q):
        out.append(("lower", sp.Matrix([[0, 0], [1, 0]])))
    return out


def _character_component_order(character: Sequence[int]) -> int:
    """|pi_0| of the kernel of a character of a split torus."""
    g = 0
    for c in character:
        g = math.gcd(g, int(c))
    return g if g else 1


def _group_name(order: int) -> str:
    return "trivial" if order == 1 else f"Z/{order}"


def component_group_sl2(lam, q, n, gtilde: bool = False, s=None) -> str:
    """pi_0 of {g in SL_2 : g s = s g, g n g^-1 = n}, or of the stabilizer in
    SL_2 x G_m (with c in G_m acting on n by scaling) when ``gtilde``.

    ``n`` is "zero", "upper", "lower", "nonzero" or an explicit 2x2 matrix; ``s``
    defaults to diag(lambda, lambda^-1) and may be any conjugate of it."""
    lam, q = _sym(lam), _sym(q)
    s = sp.Matrix(s) if s is not None else sp.diag(lam, 1 / lam)
    if isinstance(n, str):
        choices = dict(nilpotent_choices(lam, q))
        if n not in choices:
            raise NotQCommuting(f"no nilpotent of type {n!r} q-commutes with s for lambda={lam}, q={q}")
        n = choices[n]
    n = sp.Matrix(n)
    zero = sp.zeros(2, 2)
    if not _is_zero(s.det() - 1) or not _is_zero(s.trace() - lam - 1 / lam):
        raise ValueError("s must be conjugate to diag(lambda, lambda^-1)")
    if (n * n).applyfunc(sp.simplify) != zero:
        raise NotQCommuting("n is not nilpotent")
    if (s * n - q * n * s).applyfunc(sp.simplify) != zero:
        raise NotQCommuting("s n s^-1 != q n")
    if n.applyfunc(sp.simplify) == zero:
        # the stabilizer is the centralizer of s: SL_2 or a maximal torus
        return "trivial"
    if not _equal(lam ** 2, 1):
        # move s to diagonal form; n becomes a root vector for the diagonal torus
        P, _ = s.diagonalize()
        n = (P.inv() * n * P).applyfunc(sp.simplify)
    # otherwise s is central and n is conjugate to an upper root vector.  Either
    # way the stabilizer is (kernel of +-alpha on the torus) x (unipotent part),
    # and c in G_m contributes one more unit to the character.
    weight = -2 if n[0, 1] == 0 else 2
    character = (weight, 1) if gtilde else (weight,)
    return _group_name(_character_component_order(character))


def sl2_table(lam, q) -> list:
    """All rows of the fixed-point table for one (lambda, q)."""
    regime = sl2_regime(lam, q)
    lam_d, q_d = _descriptors(regime)
    central = _equal(_sym(lam) ** 2, 1)
    centralizer = "G" if central else "T"
    rows = []
    for label, n in nilpotent_choices(lam, q):
        stratum = {"zero": "n=0", "nonzero": "n≠0", "upper": "n≠0, upper triangular",
                   "lower": "n≠0, lower triangular"}[label]
        rows.append(SL2ParameterRow(
            lambda_descriptor=lam_d, q_descriptor=q_d, n_stratum=stratum,
            component_group=component_group_sl2(lam, q, n),
            geometry_label=GEOMETRY[regime], centralizer=centralizer,
            component_group_gtilde=component_group_sl2(lam, q, n, gtilde=True)))
    return rows


def sl2_reference_points() -> list:
    """One (lambda, q) per regime: q = 1, -1, 2 and sqrt(2) as a square root."""
    return [("1", "1"), ("I", "-1"), ("-1", "2"), ("sqrt(2)", "2"), ("3", "2")]
