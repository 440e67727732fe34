"""Inertial types of GL_n, their block Hecke algebras, and Levi embeddings.

A type is a multiset of entries (label, d, r, m): an irreducible inertia
representation of dimension d, whose stabilizer field has degree r, occurring
with multiplicity m.  The block algebra is the tensor product over entries of
the affine Hecke algebra of GL_m with parameter q^r.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import BadComposition, DimensionMismatch, DuplicateLabel
from .hecke import Q, BernsteinMap, HeckeElement, center_element, elements_up_to_length, omega_elements, theta
from .root_weyl import RootDatum, levi_datum


@dataclass(frozen=True)
class TypeEntry:
    label: str
    d: int
    r: int
    multiplicity: int

    def size(self) -> int:
        return self.d * self.r * self.multiplicity

    def to_json(self) -> dict:
        return {"label": self.label, "d": self.d, "r": self.r, "n": self.multiplicity}


@dataclass(frozen=True)
class InertialTypeSpec:
    n: int
    entries: tuple

    @classmethod
    def from_json(cls, data: Mapping) -> "InertialTypeSpec":
        entries = tuple(TypeEntry(str(e["label"]), int(e["d"]), int(e["r"]), int(e.get("n", e.get("multiplicity"))))
                        for e in data["entries"])
        return cls(int(data["n"]), entries)

    @classmethod
    def trivial(cls, n: int) -> "InertialTypeSpec":
        return cls(n, (TypeEntry("1", 1, 1, n),))

    def to_json(self) -> dict:
        return {"n": self.n, "entries": [e.to_json() for e in self.entries]}

    def shape(self) -> tuple:
        return tuple(sorted((e.d, e.r, e.multiplicity) for e in self.entries))


def validate_type(nu: InertialTypeSpec) -> None:
    labels = [e.label for e in nu.entries]
    dup = {l for l in labels if labels.count(l) > 1}
    if dup:
        raise DuplicateLabel(f"repeated labels {sorted(dup)}")
    for e in nu.entries:
        if min(e.d, e.r, e.multiplicity) < 1:
            raise DimensionMismatch(f"entry {e.label} needs positive d, r, n")
    total = sum(e.size() for e in nu.entries)
    if total != nu.n:
        raise DimensionMismatch(f"sum of n*r*d is {total}, not {nu.n}")


@dataclass
class BlockDescriptor:
    levi_blocks: list
    hecke_factors: list
    moduli_factors: list
    springer_sheaf_note: str
    labels: list = field(default_factory=list)

    def hecke_string(self) -> str:
        parts = []
        for r, m in self.hecke_factors:
            qr = "q" if r == 1 else f"q^{r}"
            parts.append(f"H_{{{qr}}}({m})")
        return " ⊗ ".join(parts)

    def to_json(self) -> dict:
        return {"levi_blocks": self.levi_blocks,
                "hecke_factors": [{"q_exponent": r, "rank": m} for r, m in self.hecke_factors],
                "moduli_factors": [{"field_degree": deg, "rank": m} for deg, m in self.moduli_factors],
                "labels": self.labels,
                "hecke_algebra": self.hecke_string(),
                "springer_sheaf": self.springer_sheaf_note}


def block_decompose(nu: InertialTypeSpec, q: str = "q") -> BlockDescriptor:
    """Entries are processed in lexicographic label order."""
    validate_type(nu)
    entries = sorted(nu.entries, key=lambda e: e.label)
    levi = []
    for e in entries:
        levi.extend([e.r * e.d] * e.multiplicity)
    hecke = [(e.r, e.multiplicity) for e in entries]
    moduli = [(e.r, e.multiplicity) for e in entries]
    pieces = ", ".join(f"GL_{e.multiplicity} over E_{e.label} (degree {e.r})" for e in entries)
    note = (f"S_nu = pushforward of the structure sheaf of the parabolic Springer "
            f"resolution for L_nu = {' x '.join(f'GL_{b}' for b in levi)}; "
            f"the parameter stack factors as a product of unipotent parameter stacks of {pieces}; "
            f"endomorphisms H_nu = {_hecke_string(hecke, q)}")
    return BlockDescriptor(levi, hecke, moduli, note, [e.label for e in entries])


def _hecke_string(factors, q) -> str:
    return " ⊗ ".join(f"H_{{{q if r == 1 else f'{q}^{r}'}}}({m})" for r, m in factors)


# -- enumeration ---------------------------------------------------------------

def enumerate_types(n: int, catalog: Iterable[Sequence[int]]) -> list:
    """All multisets of entries (d, r, m) with (d, r) in the catalog and
    sum m*r*d = n.  Distinct entries get distinct labels; two entries with the
    same (d, r) are two inertially inequivalent pieces."""
    if n < 1:
        raise ValueError("n must be positive")
    shapes = sorted({(int(d), int(r)) for d, r in catalog})
    # every possible entry (d, r, m), ordered; multisets = non-increasing sequences
    atoms = sorted(((d, r, m) for d, r in shapes for m in range(1, n // (d * r) + 1)), reverse=True)
    out = []

    def rec(start, remaining, chosen):
        if remaining == 0:
            entries = tuple(TypeEntry(f"eta{i + 1}", d, r, m) for i, (d, r, m) in enumerate(chosen))
            out.append(InertialTypeSpec(n, entries))
            return
        for idx in range(start, len(atoms)):
            d, r, m = atoms[idx]
            if d * r * m <= remaining:
                rec(idx, remaining - d * r * m, chosen + [(d, r, m)])

    rec(0, n, [])
    return out


def count_types_oracle(n: int, catalog: Iterable[Sequence[int]]) -> int:
    """Coefficient of x^n in prod over (d, r) and m >= 1 of 1/(1 - x^{m r d})."""
    weights = [m * d * r for d, r in {(int(d), int(r)) for d, r in catalog}
               for m in range(1, n + 1) if m * d * r <= n]
    ways = [1] + [0] * n
    for w in weights:
        for k in range(w, n + 1):
            ways[k] += ways[k - w]
    return ways[n]


# -- Levi embeddings ---------------------------------------------------------------

def _check_composition(comp, n=None) -> tuple:
    comp = tuple(int(m) for m in comp)
    if not comp or any(m < 1 for m in comp):
        raise BadComposition(f"{comp} is not a composition")
    if n is not None and sum(comp) != n:
        raise BadComposition(f"{comp} does not sum to {n}")
    return comp


def refines(fine: Sequence[int], coarse: Sequence[int]) -> bool:
    """Whether consecutive parts of ``fine`` group into the parts of ``coarse``."""
    if sum(fine) != sum(coarse):
        return False
    cuts_f = set(itertools.accumulate(fine))
    return set(itertools.accumulate(coarse)) <= cuts_f


@dataclass
class LeviEmbedding:
    source: tuple
    target: tuple
    source_datum: RootDatum
    target_datum: RootDatum
    reflection_map: dict
    hmap: BernsteinMap

    def __call__(self, h: HeckeElement) -> HeckeElement:
        return self.hmap(h)

    def generator_images(self) -> dict:
        """Images of theta_{+-e_i}, finite T_s and (via the map) the affine generators."""
        src = self.source_datum
        out = {}
        for i in range(src.cochar_rank):
            for sgn in (1, -1):
                lam = tuple(sgn * int(k == i) for k in range(src.cochar_rank))
                out[("theta", lam)] = self(theta(src, lam))
        for i in src.affine_generators:
            out[("T", i)] = self(HeckeElement.Ts(src, i))
        for k, om in enumerate(src.omega_generators):
            out[("omega", k)] = self(HeckeElement.T(om))
        return out

    def to_json(self) -> dict:
        return {"source": list(self.source), "target": list(self.target),
                "reflections": {str(k): v for k, v in self.reflection_map.items()},
                "theta": "theta_lambda -> theta_lambda"}


def hecke_embedding(composition: Sequence[int], target: Sequence[int] | None = None, q: str = "q") -> LeviEmbedding:
    """Algebra map H(L_source) -> H(L_target) for a composition refining the target
    (default: the single block GL_n)."""
    source = _check_composition(composition)
    target = _check_composition(target, sum(source)) if target is not None else (sum(source),)
    if not refines(source, target):
        raise BadComposition(f"{source} does not refine {target}")
    src, tgt = levi_datum(source), levi_datum(target)
    index = {root: i + 1 for i, root in enumerate(tgt.simple_roots)}
    refl = {}
    for i, root in enumerate(src.simple_roots, start=1):
        if root not in index:
            raise BadComposition(f"simple root {root} of the source is not simple in the target")
        refl[i] = index[root]
    hmap = BernsteinMap(src,
                        lambda lam: theta(tgt, lam),
                        lambda i: HeckeElement.Ts(tgt, refl[i]),
                        HeckeElement.one(tgt))
    return LeviEmbedding(source, target, src, tgt, refl, hmap)


def compose_embeddings(first: LeviEmbedding, second: LeviEmbedding):
    if first.target != second.source:
        raise BadComposition("embeddings do not compose")
    return lambda h: second(first(h))


def check_embedding(emb: LeviEmbedding, max_len: int = 2) -> dict:
    """Relation checks for the image algebra.  Returns {check: bool}."""
    src, tgt = emb.source_datum, emb.target_datum
    one = HeckeElement.one(tgt)
    report = {}
    images = emb.generator_images()
    ts_imgs = {i: images[("T", i)] for i in src.affine_generators}
    report["quadratic"] = all((t * t - t.scale(Q - 1) - one.scale(Q)).is_zero() for t in ts_imgs.values())
    braid = True
    a = src.cartan_matrix
    for i, j in itertools.combinations(sorted(i for i in src.affine_generators if i > 0), 2):
        m = {0: 2, 1: 3, 2: 4, 3: 6}[a[i - 1][j - 1] * a[j - 1][i - 1]]
        x, y = ts_imgs[i], ts_imgs[j]
        lhs, rhs = one, one
        for k in range(m):
            lhs = lhs * (x if k % 2 == 0 else y)
            rhs = rhs * (y if k % 2 == 0 else x)
        braid = braid and lhs == rhs
    report["braid"] = braid
    thetas = [v for k, v in images.items() if k[0] == "theta"]
    report["theta_commute"] = all((x * y - y * x).is_zero() for x, y in itertools.combinations(thetas, 2))
    elems = elements_up_to_length(src, max_len, omega_elements(src, 1))
    report["homomorphism"] = all(
        emb(HeckeElement.T(x) * HeckeElement.T(y)) == emb.hmap.basis(x) * emb.hmap.basis(y)
        for x, y in itertools.product(elems, repeat=2))
    centers = []
    for i in range(src.cochar_rank):
        lam = tuple(int(k <= i) for k in range(src.cochar_rank))
        if src.is_dominant(lam):
            centers.append(emb(center_element(src, lam)))
    gens = list(images.values())
    report["center_in_centralizer"] = all((z * g - g * z).is_zero() for z in centers for g in gens)
    return report


def refinement_chains(n: int) -> list:
    """All chains c_0 < c_1 < ... < (n) of strict coarsenings of compositions of n."""
    comps = [c for k in range(1, n + 1) for c in _compositions(n, k)]
    chains = []

    def extend(chain):
        last = chain[-1]
        if last == (n,):
            chains.append(tuple(chain))
            return
        for c in comps:
            if c != last and refines(last, c):
                extend(chain + [c])

    for c in comps:
        extend([c])
    return chains


def _compositions(n: int, k: int) -> list:
    if k == 1:
        return [(n,)]
    return [(first,) + rest for first in range(1, n) for rest in _compositions(n - first, k - 1)]


def check_transitivity(chain: Sequence[Sequence[int]]) -> bool:
    """Composite of successive embeddings along the chain equals the direct one on generators."""
    chain = [tuple(c) for c in chain]
    if len(chain) < 2:
        return True
    direct = hecke_embedding(chain[0], chain[-1])
    src = direct.source_datum
    gens = [HeckeElement.Ts(src, i) for i in src.affine_generators]
    gens += [HeckeElement.T(om) for om in src.omega_generators]
    gens += [theta(src, tuple(s * int(k == i) for k in range(src.cochar_rank)))
             for i in range(src.cochar_rank) for s in (1, -1)]
    steps = [hecke_embedding(a, b) for a, b in zip(chain, chain[1:])]
    for g in gens:
        img = g
        for st in steps:
            img = st(img)
        if img != direct(g):
            return False
    return True
