"""Hochschild, negative-cyclic and periodic homology of weight-graded algebras.

Chains are normalized Hochschild tensors a_0 (x) a_1 (x) ... (x) a_n with
a_1..a_n taken from the non-unit basis.  Faces multiply neighbours; the last
face wraps a_n around to the front with the Koszul sign and, in the
equivariant/twisted modes, the coaction factor z^wt(a_n) (z := q when
twisted).  Cohomological degree is internal degree minus n.

Three modes:

* ``plain``       - ordinary Hochschild complex, sliced by total weight.
* ``equivariant`` - invariants of (A^{(x) n+1} (x) k[z^{+-1}]) under G_m; the
  torus acts trivially on k[z^{+-1}], so a slice is the total-weight-0
  tensors times one power of z.
* ``twisted``     - the last face and the cyclic operator pick up q^wt(a_n);
  the cyclic operator is then only paracyclic, so there is no B.

Every slice is a finite complex, so ranks are exact; the truncation N only
bounds which slices are complete, recorded in a certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DifferentialNotSquareZero, NotAComplex, TruncationTooSmall
from .exact_arith import RationalMatrix, homology_ranks, to_fraction

MODES = ("plain", "equivariant", "twisted")


# -- graded algebras -------------------------------------------------------

@dataclass
class GradedAlgebra:
    """Finite-dimensional truncation of a bigraded algebra.

    ``table[(i, j)]`` is the product of basis elements i and j as {k: coeff};
    products of total weight above ``max_weight`` are dropped.
    """

    names: list
    degrees: list
    weights: list
    unit: int
    table: dict
    max_weight: int

    def __len__(self):
        return len(self.names)

    def mul(self, i: int, j: int) -> dict:
        if i == self.unit:
            return {j: Fraction(1)}
        if j == self.unit:
            return {i: Fraction(1)}
        return self.table.get((i, j), {})

    def non_unit(self) -> list:
        return [i for i in range(len(self)) if i != self.unit]

    def check(self) -> None:
        """Unit laws, grading additivity and associativity on all stored triples."""
        n = len(self)
        if self.degrees[self.unit] != 0 or self.weights[self.unit] != 0:
            raise ValueError("unit must sit in bidegree (0, 0)")
        for (i, j), prod in self.table.items():
            for k in prod:
                if (self.degrees[k], self.weights[k]) != (self.degrees[i] + self.degrees[j],
                                                          self.weights[i] + self.weights[j]):
                    raise ValueError(f"product {self.names[i]}*{self.names[j]} is not homogeneous")
        for i, j, k in itertools.product(range(n), repeat=3):
            if self.weights[i] + self.weights[j] + self.weights[k] > self.max_weight:
                continue
            left = _lin_mul(self, _lin_mul(self, {i: 1}, {j: 1}), {k: 1})
            right = _lin_mul(self, {i: 1}, _lin_mul(self, {j: 1}, {k: 1}))
            if left != right:
                raise ValueError(f"associativity fails on {self.names[i]}, {self.names[j]}, {self.names[k]}")

    def graded_dimensions(self) -> dict:
        out: dict = {}
        for d, w in zip(self.degrees, self.weights):
            out[(d, w)] = out.get((d, w), 0) + 1
        return out


def _lin_mul(alg: GradedAlgebra, x: dict, y: dict) -> dict:
    out: dict = {}
    for i, a in x.items():
        for j, b in y.items():
            for k, c in alg.mul(i, j).items():
                out[k] = out.get(k, 0) + a * b * c
    return {k: v for k, v in out.items() if v}


def _monomial_product(m1: tuple, m2: tuple, parity: Sequence[int]):
    """Product of graded-commutative monomials as (sign, monomial) or None."""
    sign = 1
    for j, b in enumerate(m2):
        if b and parity[j]:
            if m1[j]:
                return None
            if sum(m1[i] for i in range(j + 1, len(m1)) if parity[i]) % 2:
                sign = -sign
    return sign, tuple(a + b for a, b in zip(m1, m2))


def _monomials(gen_weights: Sequence[int], parity: Sequence[int], max_weight: int) -> list:
    if any(w <= 0 for w in gen_weights):
        raise ValueError("generators need positive weight for a finite truncation")
    out = []

    def rec(k, prefix, weight):
        if k == len(gen_weights):
            out.append(tuple(prefix))
            return
        top = 1 if parity[k] else (max_weight - weight) // gen_weights[k]
        for e in range(top + 1):
            if weight + e * gen_weights[k] > max_weight:
                break
            rec(k + 1, prefix + [e], weight + e * gen_weights[k])

    rec(0, [], 0)
    return sorted(out, key=lambda m: (sum(a * w for a, w in zip(m, gen_weights)), m))


def _monomial_name(m, names) -> str:
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
    return "*".join(parts) or "1"


def free_graded_commutative(generators: Sequence[tuple], max_weight: int) -> GradedAlgebra:
    """Free graded-commutative algebra on (name, degree, weight) generators, truncated by weight."""
    names = [g[0] for g in generators]
    degs = [int(g[1]) for g in generators]
    wts = [int(g[2]) for g in generators]
    parity = [d % 2 for d in degs]
    monos = _monomials(wts, parity, max_weight)
    index = {m: i for i, m in enumerate(monos)}
    table = {}
    for m1, m2 in itertools.product(monos, repeat=2):
        if not any(m1) or not any(m2):
            continue
        res = _monomial_product(m1, m2, parity)
        if res is None:
            continue
        sign, m = res
        if m in index:
            table[(index[m1], index[m2])] = {index[m]: Fraction(sign)}
    return GradedAlgebra(
        names=[_monomial_name(m, names) for m in monos],
        degrees=[sum(a * d for a, d in zip(m, degs)) for m in monos],
        weights=[sum(a * w for a, w in zip(m, wts)) for m in monos],
        unit=index[(0,) * len(generators)],
        table=table,
        max_weight=max_weight,
    )


def sym_algebra(rank: int, max_weight: int, degree: int = 2) -> GradedAlgebra:
    """Sym of a rank-``rank`` space placed in cohomological degree ``degree``, weight 1."""
    return free_graded_commutative([(f"x{i + 1}", degree, 1) for i in range(rank)], max_weight)


def trivial_algebra() -> GradedAlgebra:
    return GradedAlgebra(["1"], [0], [0], 0, {}, 0)


def tensor_algebras(a: GradedAlgebra, b: GradedAlgebra, max_weight: int | None = None) -> GradedAlgebra:
    """A (x) B with (a (x) b)(a' (x) b') = (-1)^{|b||a'|} aa' (x) bb'."""
    max_weight = min(a.max_weight, b.max_weight) if max_weight is None else max_weight
    pairs = [(i, j) for i in range(len(a)) for j in range(len(b))
             if a.weights[i] + b.weights[j] <= max_weight]
    index = {p: k for k, p in enumerate(pairs)}
    table = {}
    for (i, j), (k, l) in itertools.product(pairs, repeat=2):
        sign = -1 if (b.degrees[j] * a.degrees[k]) % 2 else 1
        out = {}
        for x, cx in a.mul(i, k).items():
            for y, cy in b.mul(j, l).items():
                if (x, y) in index:
                    out[index[(x, y)]] = out.get(index[(x, y)], 0) + sign * cx * cy
        out = {z: c for z, c in out.items() if c}
        if out and (i, j) != (a.unit, b.unit) and (k, l) != (a.unit, b.unit):
            table[(index[(i, j)], index[(k, l)])] = out
    return GradedAlgebra(
        names=[f"{a.names[i]}|{b.names[j]}" for i, j in pairs],
        degrees=[a.degrees[i] + b.degrees[j] for i, j in pairs],
        weights=[a.weights[i] + b.weights[j] for i, j in pairs],
        unit=index[(a.unit, b.unit)],
        table=table,
        max_weight=max_weight,
    )


# -- the complex -----------------------------------------------------------

@dataclass
class Slice:
    """One finite graded piece: chains[n] lists basis tensors, b[n]: C_n -> C_{n-1},
    B[n]: C_n -> C_{n+1}."""

    key: tuple
    chains: dict
    b: dict
    B: dict | None
    complete: bool

    @property
    def internal_degree(self) -> int:
        return self.key[1]

    def degree_of(self, n: int) -> int:
        return self.internal_degree - n


@dataclass
class MixedComplexTruncation:
    algebra: GradedAlgebra
    mode: str
    N: int
    window: int
    q: Fraction | None
    normalized: bool
    slices: dict = field(default_factory=dict)
    z_powers: tuple = ()

    def chain_ranks(self) -> dict:
        return {key: {n: len(c) for n, c in s.chains.items()} for key, s in self.slices.items()}


def _tensors(alg: GradedAlgebra, n: int, weight: int, normalized: bool) -> list:
    """Basis tensors of length n+1 and total weight ``weight``."""
    tail_basis = alg.non_unit() if normalized else list(range(len(alg)))
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for i in tail_basis:
            w = alg.weights[i]
            if w <= remaining:
                rec(prefix + [i], remaining - w, slots - 1)

    for a0 in range(len(alg)):
        if alg.weights[a0] <= weight:
            rec([a0], weight - alg.weights[a0], n)
    return out


def _koszul(alg, first: Sequence[int], second: Sequence[int]) -> int:
    d1 = sum(alg.degrees[i] for i in first)
    d2 = sum(alg.degrees[i] for i in second)
    return -1 if (d1 * d2) % 2 else 1


def _internal(alg, tensor) -> int:
    return sum(alg.degrees[i] for i in tensor)


def _faces(alg: GradedAlgebra, tensor: tuple, twist, normalized: bool) -> dict:
    """b = sum (-1)^i d_i applied to one basis tensor."""
    n = len(tensor) - 1
    out: dict = {}
    unit = alg.unit
    for i in range(n):
        for k, c in alg.mul(tensor[i], tensor[i + 1]).items():
            if normalized and i > 0 and k == unit:
                continue
            new = tensor[:i] + (k,) + tensor[i + 2:]
            out[new] = out.get(new, 0) + (-1) ** i * c
    last = tensor[n]
    factor = (-1) ** n * _koszul(alg, [last], tensor[:n]) * twist(alg.weights[last])
    for k, c in alg.mul(last, tensor[0]).items():
        new = (k,) + tensor[1:n]
        out[new] = out.get(new, 0) + factor * c
    return {t: c for t, c in out.items() if c}


def _connes(alg: GradedAlgebra, tensor: tuple) -> dict:
    """B = s N on normalized chains, N = sum_j tau^j, tau = (-1)^n t."""
    n = len(tensor) - 1
    out: dict = {}
    for j in range(n + 1):
        head, tail = tensor[n + 1 - j:], tensor[:n + 1 - j]
        rotated = head + tail
        if alg.unit in rotated:
            continue
        sign = (-1) ** (n * j) * _koszul(alg, head, tail)
        new = (alg.unit,) + rotated
        out[new] = out.get(new, 0) + sign
    return {t: c for t, c in out.items() if c}


def _matrix(source: list, target: list, op) -> RationalMatrix:
    index = {t: r for r, t in enumerate(target)}
    entries = {}
    for col, tensor in enumerate(source):
        for t, c in op(tensor).items():
            if t not in index:
                raise TruncationTooSmall(f"image tensor {t} outside the built slice")
            entries[(index[t], col)] = Fraction(c)
    return RationalMatrix(len(target), len(source), entries)


def _slice_weight_bound(alg: GradedAlgebra, weight: int, normalized: bool):
    """Largest n with a nonzero normalized tensor of this total weight, or None if unbounded."""
    tail = [alg.weights[i] for i in (alg.non_unit() if normalized else range(len(alg)))]
    if not tail:
        return 0
    m = min(tail)
    if m <= 0:
        return None
    return weight // m


def build_bg_complex(alg: GradedAlgebra, mode: str = "plain", N: int = 8, window: int = 6,
                     q=None, normalized: bool = True, check: bool = True) -> MixedComplexTruncation:
    """Truncated cyclic complex of ``alg``: simplicial degrees 0..N+1, weights 0..window
    (equivariant: z-powers -window..window)."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if window > alg.max_weight:
        raise TruncationTooSmall(f"window {window} exceeds the algebra truncation {alg.max_weight}")
    if N < 0:
        raise ValueError("N must be non-negative")
    if mode == "twisted":
        if q is None:
            raise ValueError("twisted mode needs q")
        q = to_fraction(q)
        if q == 0:
            raise ValueError("q must be nonzero")
        twist = lambda w: q ** w
    else:
        q = None
        twist = lambda w: 1
    if mode == "equivariant" and any(w < 0 for w in alg.weights):
        raise ValueError("equivariant mode needs a non-negatively weighted algebra")

    cx = MixedComplexTruncation(alg, mode, N, window, q, normalized)
    weights = [0] if mode == "equivariant" else range(window + 1)
    for w in weights:
        by_degree: dict = {}
        for n in range(N + 2):
            for t in _tensors(alg, n, w, normalized):
                by_degree.setdefault(_internal(alg, t), {}).setdefault(n, []).append(t)
        bound = _slice_weight_bound(alg, w, normalized)
        for deg, chains in sorted(by_degree.items()):
            for n in range(N + 2):
                chains.setdefault(n, [])
            complete = bound is not None and bound <= N and not chains[N + 1]
            b = {n: _matrix(chains[n], chains[n - 1], lambda t: _faces(alg, t, twist, normalized))
                 for n in range(1, N + 2)}
            B = None
            if mode != "twisted" and normalized:
                B = {n: _matrix(chains[n], chains[n + 1], lambda t: _connes(alg, t))
                     for n in range(0, N + 1)}
            cx.slices[(w, deg)] = Slice((w, deg), chains, b, B, complete)
    if mode == "equivariant":
        cx.z_powers = tuple(range(-window, window + 1))
    if check:
        check_axioms(cx)
    return cx


def check_axioms(cx: MixedComplexTruncation) -> None:
    """b^2 = 0, B^2 = 0 and bB + Bb = 0 as exact matrix identities."""
    for key, s in cx.slices.items():
        for n in range(2, cx.N + 2):
            if not (s.b[n - 1] @ s.b[n]).is_zero():
                raise NotAComplex(f"b^2 != 0 on slice {key} at n = {n}")
        if s.B is None:
            continue
        for n in range(0, cx.N):
            if not (s.B[n + 1] @ s.B[n]).is_zero():
                raise NotAComplex(f"B^2 != 0 on slice {key} at n = {n}")
        for n in range(1, cx.N + 1):
            if not (s.b[n + 1] @ s.B[n] + s.B[n - 1] @ s.b[n]).is_zero():
                raise NotAComplex(f"bB + Bb != 0 on slice {key} at n = {n}")


# -- homology ----------------------------------------------------------------

def _slice_homology(s: Slice, N: int) -> dict:
    """cohomological degree -> rank for n = 0..N (exact since b_{N+1} is built)."""
    out = {}
    for n in range(N + 1):
        dim = len(s.chains[n])
        if not dim:
            continue
        d_in = s.b[n + 1]
        d_out = s.b[n] if n > 0 else RationalMatrix(0, dim)
        r = homology_ranks(d_in, d_out)
        if r:
            out[s.degree_of(n)] = r
    return out


def certificate_slope(alg: GradedAlgebra):
    """mu with  cohomological degree >= mu * weight  for every normalized tensor, or None."""
    ratios = []
    for i in range(len(alg)):
        w, d = alg.weights[i], alg.degrees[i]
        if i == alg.unit:
            continue
        if w <= 0:
            return None
        ratios.append(Fraction(d - 1, w))
        ratios.append(Fraction(d, w))
    return min(ratios) if ratios else None


def hh_ranks(cx: MixedComplexTruncation) -> dict:
    """Hochschild ranks per slice plus a stable-range certificate.

    Returns {"slices": {label: {degree: rank}}, "totals": {degree: rank},
    "certified_degrees": [...], "complete_slices": [...]}.  In equivariant mode
    the labels are z-powers; otherwise they are total weights.
    """
    per_weight: dict = {}
    complete: dict = {}
    for (w, _deg), s in cx.slices.items():
        ranks = _slice_homology(s, cx.N)
        slot = per_weight.setdefault(w, {})
        for d, r in ranks.items():
            slot[d] = slot.get(d, 0) + r
        complete[w] = complete.get(w, True) and s.complete
    if cx.mode == "equivariant":
        labels = {m: dict(per_weight.get(0, {})) for m in cx.z_powers}
        done = [m for m in cx.z_powers if complete.get(0, True)]
        cert_degrees = _equivariant_certified(cx, complete.get(0, True))
    else:
        labels = {w: per_weight.get(w, {}) for w in range(cx.window + 1)}
        done = [w for w in labels if complete.get(w, True)]
        cert_degrees = _certified(cx, complete)
    totals: dict = {}
    if cx.mode != "equivariant":
        for ranks in labels.values():
            for d, r in ranks.items():
                totals[d] = totals.get(d, 0) + r
    return {"mode": cx.mode, "slices": labels, "totals": totals,
            "certified_degrees": cert_degrees, "complete_slices": done}


def _degree_span(cx) -> tuple:
    degs = [s.degree_of(n) for s in cx.slices.values() for n in range(cx.N + 1) if s.chains[n]]
    return (min(degs), max(degs)) if degs else (0, 0)


def _certified(cx, complete) -> list:
    mu = certificate_slope(cx.algebra)
    lo, hi = _degree_span(cx)
    if not cx.algebra.non_unit():
        return list(range(lo, hi + 1)) if all(complete.values()) else []
    out = []
    for d in range(lo, hi + 1):
        if mu is None or mu <= 0:
            break
        reach = d / mu
        if reach >= cx.window + 1:
            continue
        if all(complete.get(w, True) for w in range(0, min(cx.window, int(reach)) + 1)):
            out.append(d)
    return out


def _equivariant_certified(cx, complete) -> list:
    # a complete weight-0 slice is the whole complex for every z-power
    if complete:
        return list(range(-cx.N, cx.N + 1))
    return []


def connes_induced_rank(cx: MixedComplexTruncation, weight: int, degree: int) -> int:
    """Rank of the map HH^degree -> HH^{degree-1} induced by B on a weight slice."""
    total = 0
    for (w, _deg), s in cx.slices.items():
        if w != weight or s.B is None:
            continue
        n = s.internal_degree - degree
        if n < 0 or n > cx.N:
            continue
        cycles_src = (s.b[n] if n > 0 else RationalMatrix(0, len(s.chains[n]))).nullspace()
        if not cycles_src:
            continue
        image = s.B[n] @ RationalMatrix.from_columns(cycles_src, len(s.chains[n]))
        boundaries = s.b[n + 2]
        stacked = _hstack(image, boundaries)
        total += stacked.rank() - boundaries.rank()
    return total


def _hstack(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    entries = dict(a.entries)
    entries.update({(r, c + a.cols): v for (r, c), v in b.entries.items()})
    return RationalMatrix(a.rows, a.cols + b.cols, entries)


def _vstack(blocks: list, cols: int) -> RationalMatrix:
    entries = {}
    offset = 0
    for m in blocks:
        entries.update({(r + offset, c): v for (r, c), v in m.entries.items()})
        offset += m.rows
    return RationalMatrix(offset, cols, entries)


def _total_complex_rank_table(s: Slice, N: int, variant: str, degrees: Iterable[int]) -> dict:
    """Ranks of the (b + uB) total complex on one slice, u of cohomological degree 2."""
    by_deg = {s.degree_of(n): n for n in range(N + 2) if s.chains[n]}
    if not by_deg:
        return {}
    dmin, dmax = min(by_deg), max(by_deg)

    def blocks(D):
        ks = []
        for d in range(dmin, dmax + 1):
            if (D - d) % 2 or d not in by_deg:
                continue
            k = (D - d) // 2
            if variant == "negative" and k < 0:
                continue
            ks.append((d, k))
        return ks

    def differential(D):
        src, tgt = blocks(D), blocks(D + 1)
        src_off, tgt_off = {}, {}
        o = 0
        for d, k in src:
            src_off[(d, k)] = o
            o += len(s.chains[by_deg[d]])
        cols = o
        o = 0
        for d, k in tgt:
            tgt_off[(d, k)] = o
            o += len(s.chains[by_deg[d]])
        rows = o
        entries = {}
        for d, k in src:
            n = by_deg[d]
            if n >= 1 and (d + 1, k) in tgt_off:
                for (r, c), v in s.b[n].entries.items():
                    entries[(r + tgt_off[(d + 1, k)], c + src_off[(d, k)])] = v
            if s.B is not None and n <= N and (d - 1, k + 1) in tgt_off:
                for (r, c), v in s.B[n].entries.items():
                    entries[(r + tgt_off[(d - 1, k + 1)], c + src_off[(d, k)])] = v
        return RationalMatrix(rows, cols, entries)

    out = {}
    for D in degrees:
        d_in, d_out = differential(D - 1), differential(D)
        r = homology_ranks(d_in, d_out)
        if r:
            out[D] = r
    return out


def cyclic_ranks(cx: MixedComplexTruncation, variant: str = "negative", u_bound: int = 3) -> dict:
    """Negative-cyclic or periodic ranks per slice, total degrees up to the top
    Hochschild degree + 2 * u_bound.  Only complete slices are reported."""
    if variant not in ("negative", "periodic"):
        raise ValueError("variant must be 'negative' or 'periodic'")
    if cx.mode == "twisted" or not cx.normalized:
        raise ValueError("cyclic homology needs a mixed complex (plain or equivariant, normalized)")
    per_weight: dict = {}
    for (w, _deg), s in cx.slices.items():
        if not s.complete:
            continue
        by_deg = [s.degree_of(n) for n in range(cx.N + 1) if s.chains[n]]
        if not by_deg:
            continue
        lo = min(by_deg) - (2 * u_bound if variant == "periodic" else 0)
        hi = max(by_deg) + 2 * u_bound
        ranks = _total_complex_rank_table(s, cx.N, variant, range(lo, hi + 1))
        slot = per_weight.setdefault(w, {})
        for D, r in ranks.items():
            slot[D] = slot.get(D, 0) + r
    if cx.mode == "equivariant":
        return {"variant": variant, "slices": {m: dict(per_weight.get(0, {})) for m in cx.z_powers}}
    return {"variant": variant, "slices": {w: per_weight.get(w, {}) for w in range(cx.window + 1)
                                           if all(s.complete for (v, _), s in cx.slices.items() if v == w)}}


# -- dg algebras ----------------------------------------------------------------

@dataclass
class DgAlgebraSpec:
    """Free graded-commutative algebra on generators with a differential.

    ``generators``: list of (name, degree, weight); ``differential``: name ->
    list of (coeff, {generator: exponent}); ``relations``: monomials
    ({generator: exponent}) set to zero.
    """

    generators: list
    differential: dict = field(default_factory=dict)
    relations: list = field(default_factory=list)

    @classmethod
    def from_json(cls, data: Mapping) -> "DgAlgebraSpec":
        gens = [(g["name"], int(g["degree"]), int(g["weight"])) for g in data.get("generators", [])]
        diff = {name: [(to_fraction(t.get("coeff", 1)), dict(t.get("monomial", {}))) for t in terms]
                for name, terms in data.get("differential", {}).items()}
        rels = [dict(r) for r in data.get("relations", [])]
        return cls(gens, diff, rels)

    def to_json(self) -> dict:
        return {"generators": [{"name": n, "degree": d, "weight": w} for n, d, w in self.generators],
                "differential": {k: [{"coeff": str(c), "monomial": m} for c, m in v]
                                 for k, v in self.differential.items()},
                "relations": self.relations}


def shifted_dual_numbers(n) -> DgAlgebraSpec:
    """k[t, et] with |t| = 0, |et| = -1, both of weight 1, and d(et) = n t."""
    n = to_fraction(n)
    diff = {"et": [(n, {"t": 1})]} if n else {}
    return DgAlgebraSpec([("t", 0, 1), ("et", -1, 1)], diff)


class _DgAlgebra:
    def __init__(self, spec: DgAlgebraSpec, max_weight: int):
        self.spec = spec
        self.names = [g[0] for g in spec.generators]
        if len(set(self.names)) != len(self.names):
            raise ValueError("repeated generator names")
        self.degs = [g[1] for g in spec.generators]
        self.wts = [g[2] for g in spec.generators]
        self.parity = [d % 2 for d in self.degs]
        self.relations = [self._mono(r) for r in spec.relations]
        self.monos = [m for m in _monomials(self.wts, self.parity, max_weight) if not self._killed(m)] \
            if self.names else [()]
        self.d_gen = {}
        for i, name in enumerate(self.names):
            poly = {}
            for c, mono in spec.differential.get(name, []):
                m = self._mono(mono)
                if self.degree(m) != self.degs[i] + 1 or self.weight(m) != self.wts[i]:
                    raise ValueError(f"d({name}) must have degree {self.degs[i] + 1} and weight {self.wts[i]}")
                if any(e > 1 and p for e, p in zip(m, self.parity)):
                    continue
                poly[m] = poly.get(m, 0) + c
            self.d_gen[i] = self._reduce(poly)
        unknown = set(spec.differential) - set(self.names)
        if unknown:
            raise ValueError(f"differential on unknown generators {sorted(unknown)}")

    def _mono(self, mono: Mapping) -> tuple:
        bad = set(mono) - set(self.names)
        if bad:
            raise ValueError(f"unknown generators {sorted(bad)}")
        return tuple(int(mono.get(n, 0)) for n in self.names)

    def _killed(self, m) -> bool:
        return any(all(a >= r for a, r in zip(m, rel)) for rel in self.relations)

    def _reduce(self, poly: dict) -> dict:
        return {m: c for m, c in poly.items() if c and not self._killed(m)}

    def degree(self, m) -> int:
        return sum(a * d for a, d in zip(m, self.degs))

    def weight(self, m) -> int:
        return sum(a * w for a, w in zip(m, self.wts))

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for m1, c1 in x.items():
            for m2, c2 in y.items():
                res = _monomial_product(m1, m2, self.parity)
                if res is None:
                    continue
                sign, m = res
                out[m] = out.get(m, 0) + sign * c1 * c2
        return self._reduce(out)

    def d(self, x: dict) -> dict:
        """Leibniz extension over the ordered product of generators."""
        out: dict = {}
        for m, c in x.items():
            factors = [i for i, e in enumerate(m) for _ in range(e)]
            for pos, gi in enumerate(factors):
                if not self.d_gen.get(gi):
                    continue
                before = sum(self.degs[f] for f in factors[:pos])
                term = {tuple(0 for _ in m): Fraction((-1) ** (before % 2)) * c}
                for f in factors[:pos]:
                    term = self.mul(term, {_unit_vec(len(m), f): 1})
                term = self.mul(term, self.d_gen[gi])
                for f in factors[pos + 1:]:
                    term = self.mul(term, {_unit_vec(len(m), f): 1})
                for mm, cc in term.items():
                    out[mm] = out.get(mm, 0) + cc
        return self._reduce(out)


def _unit_vec(k, i) -> tuple:
    return tuple(int(j == i) for j in range(k))


def dg_cohomology(spec: DgAlgebraSpec, max_weight: int = 6) -> dict:
    """Cohomology ranks {(degree, weight): rank} for weights 0..max_weight."""
    alg = _DgAlgebra(spec, max_weight)
    k = len(alg.names)
    for i in range(k):
        if alg.d(alg.d({_unit_vec(k, i): 1})):
            raise DifferentialNotSquareZero(f"d^2({alg.names[i]}) != 0")
    if alg.relations:
        free = _DgAlgebra(DgAlgebraSpec(spec.generators, spec.differential, []), max_weight)
        for rel in alg.relations:
            leak = [m for m in free.d({rel: 1}) if not alg._killed(m)]
            if leak:
                raise DifferentialNotSquareZero(
                    f"differential does not preserve the relation ideal at {rel}")
    groups: dict = {}
    for m in alg.monos:
        groups.setdefault((alg.degree(m), alg.weight(m)), []).append(m)
    mats = {}
    for (deg, w), monos in groups.items():
        target = groups.get((deg + 1, w), [])
        index = {m: r for r, m in enumerate(target)}
        entries = {}
        for col, m in enumerate(monos):
            for mm, c in alg.d({m: 1}).items():
                entries[(index[mm], col)] = Fraction(c)
        mats[(deg, w)] = RationalMatrix(len(target), len(monos), entries)
    out = {}
    for (deg, w), monos in sorted(groups.items()):
        d_out = mats[(deg, w)]
        prev = groups.get((deg - 1, w), [])
        d_in = mats.get((deg - 1, w), RationalMatrix(len(monos), 0))
        if not prev:
            d_in = RationalMatrix(len(monos), 0)
        r = homology_ranks(d_in, d_out)
        if r:
            out[(deg, w)] = r
    return out


def rank_table_json(table: Mapping) -> list:
    return [{"degree": d, "weight": w, "rank": r} for (d, w), r in sorted(table.items())]
