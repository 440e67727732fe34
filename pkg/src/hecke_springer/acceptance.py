"""The eleven acceptance checks, each an exact computation with a pass/fail verdict.

Every check returns a :class:`CheckResult`; ``run_all`` runs a selection, optionally
on a thread pool, and ``format_table`` renders the verdicts one per line.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import block_getzler as bg
from . import dl_params, gln_blocks, steinberg_sl2
from .hecke import (HeckeElement, center_element, elements_up_to_length, omega_elements,
                    specialize_q, theta, GroupAlgebraElement)
from .root_weyl import load_datum, wa_length, wa_multiply


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] criterion {self.number:2d}: {self.name} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name,
                "result": "pass" if self.passed else "fail",
                "seconds": round(self.seconds, 3), "detail": self.detail}


# -- 1. localization model ---------------------------------------------------------

def check_steinberg(data_dir=None) -> tuple:
    ts = steinberg_sl2.class_Ts(None, data_dir)
    tg = ts.tangent
    one = steinberg_sl2.unit(tg)
    th = {n: steinberg_sl2.class_theta(n, tg) for n in range(-3, 4)}
    detail = {"quadratic": (ts * ts) == (ts.scale(steinberg_sl2.Q - 1) + one.scale(steinberg_sl2.Q))}
    detail["theta_additive"] = all(th[m] * th[n] == th[m + n]
                                   for m, n in itertools.product(range(-1, 2), repeat=2))
    detail["central"] = all(((th[k] + th[-k]) * ts - ts * (th[k] + th[-k])).is_zero() for k in (1, 2))
    return all(detail.values()), detail


# -- 2. Hecke algebra integrity --------------------------------------------------------

def check_hecke_integrity(samples: int = 20, seed: int = 20240601, data_dir=None) -> tuple:
    rng = random.Random(seed)
    detail = {}
    for name in ("SL2", "GL2", "GL3"):
        datum = load_datum(name, data_dir)
        elems = elements_up_to_length(datum, 5, omega_elements(datum, 1))
        assoc = True
        for _ in range(samples):
            x, y, z = (HeckeElement.T(rng.choice(elems)) for _ in range(3))
            assoc = assoc and (x * y) * z == x * (y * z)
        detail[f"associativity_{name}"] = assoc
        ts = {i: HeckeElement.Ts(datum, i) for i in datum.affine_generators}
        braid = True
        for i, j in itertools.combinations(sorted(ts), 2):
            si, sj = datum.affine_generators[i], datum.affine_generators[j]
            m = _coxeter_order(si, sj)
            if m is None:
                continue
            a, b = HeckeElement.one(datum), HeckeElement.one(datum)
            for k in range(m):
                a = a * (ts[i] if k % 2 == 0 else ts[j])
                b = b * (ts[j] if k % 2 == 0 else ts[i])
            braid = braid and a == b
        detail[f"braid_{name}"] = braid
        r = datum.cochar_rank
        lams = [lam for lam in itertools.product(range(-3, 4), repeat=r)]
        pairs = [(rng.choice(lams), rng.choice(lams)) for _ in range(samples)]
        detail[f"theta_additive_{name}"] = all(
            theta(datum, a) * theta(datum, b) == theta(datum, tuple(p + q for p, q in zip(a, b)))
            for a, b in pairs)
        gens = [HeckeElement.Ts(datum, i) for i in datum.affine_generators]
        gens += [HeckeElement.T(om) for om in datum.omega_generators]
        gens += [HeckeElement.T(om.inverse()) for om in datum.omega_generators]
        central = True
        for lam in itertools.product(range(-3, 4), repeat=r):
            if not datum.is_dominant(lam) or wa_length(datum.translation(lam)) > 6:
                continue
            z = center_element(datum, lam)
            central = central and all((z * g - g * z).is_zero() for g in gens)
        detail[f"centrality_{name}"] = central
    return all(detail.values()), detail


def _coxeter_order(a, b, cap: int = 8):
    x = wa_multiply(a, b)
    y = x
    for m in range(1, cap + 1):
        if y.is_identity():
            return m
        y = wa_multiply(y, x)
    return None


# -- 3. q = 1 specialization -----------------------------------------------------

def specialization_mismatches(datum, max_len: int, omega_radius: int) -> list:
    elems = elements_up_to_length(datum, max_len, omega_elements(datum, omega_radius))
    bad = []
    for x, y in itertools.product(elems, repeat=2):
        got = specialize_q(HeckeElement.T(x) * HeckeElement.T(y), q=1)
        want = GroupAlgebraElement.basis(x) * GroupAlgebraElement.basis(y)
        if got != want:
            bad.append((str(x), str(y)))
    return bad


def check_specialization(data_dir=None) -> tuple:
    detail = {"SL2_mismatches": len(specialization_mismatches(load_datum("SL2", data_dir), 5, 0)),
              "GL2_mismatches": len(specialization_mismatches(load_datum("GL2", data_dir), 4, 1))}
    return not any(detail.values()), detail


# -- 4-7. Hochschild computations ------------------------------------------------------

def check_equivariant_hh(N: int = 8, window: int = 6) -> tuple:
    detail = {}
    for rank in (1, 2):
        cx = bg.build_bg_complex(bg.sym_algebra(rank, window), "equivariant", N, window)
        res = bg.hh_ranks(cx)
        cert = set(res["certified_degrees"])
        ok = bool(cert) and all(
            all(ranks.get(d, 0) == (1 if d == 0 else 0) for d in cert) for ranks in res["slices"].values())
        ok = ok and set(res["slices"]) == set(range(-window, window + 1))
        detail[f"rank{rank}"] = ok
    return all(detail.values()), detail


def check_plain_hh(N: int = 8, window: int = 6) -> tuple:
    cx = bg.build_bg_complex(bg.sym_algebra(1, window), "plain", N, window)
    res = bg.hh_ranks(cx)
    cert = set(res["certified_degrees"])
    # generator eta in degree 1 and xi in degree 2, both of weight 1
    model = bg.free_graded_commutative([("eta", 1, 1), ("xi", 2, 1)], window).graded_dimensions()
    profile = all(res["slices"][w].get(d, 0) == model.get((d, w), 0)
                  for w in range(window + 1) for d in cert)
    totals = all(res["totals"].get(d, 0) == 1 for d in cert if d >= 0)
    connes = bg.connes_induced_rank(cx, 1, 2) == 1
    per = bg.cyclic_ranks(cx, "periodic", u_bound=3)["slices"]
    periodic = (set(per[0].values()) == {1} and all(D % 2 == 0 for D in per[0])
                and all(not per[w] for w in per if w > 0))
    detail = {"certified_degrees": sorted(cert), "rank_profile": profile, "ranks_one": totals,
              "connes_iso": connes, "periodic_collapse": periodic}
    return bool(cert) and profile and totals and connes and periodic, detail


def check_twisted_hh(N: int = 8, window: int = 6) -> tuple:
    cx = bg.build_bg_complex(bg.sym_algebra(1, window), "twisted", N, window, q=2)
    res = bg.hh_ranks(cx)
    cert = set(res["certified_degrees"])
    ranks = {d: r for d, r in res["totals"].items() if d in cert and r}
    return ranks == {0: 1}, {"ranks": ranks, "certified_degrees": sorted(cert)}


def check_dg_example(max_weight: int = 6) -> tuple:
    one = bg.dg_cohomology(bg.shifted_dual_numbers(1), max_weight)
    zero = bg.dg_cohomology(bg.shifted_dual_numbers(0), max_weight)
    expected_zero = {(0, w): 1 for w in range(max_weight + 1)}
    expected_zero.update({(-1, w): 1 for w in range(1, max_weight + 1)})
    detail = {"n=1": one == {(0, 0): 1}, "n=0": zero == expected_zero}
    return all(detail.values()), detail


# -- 8-10. parameters and blocks -----------------------------------------------------------

SL2_EXPECTED = [
    # (lambda, q, n, A(s,n), geometry, G^s)
    ("±1", "1", "n=0", "trivial", "Ñ→𝒩", "G"),
    ("±1", "1", "n≠0", "Z/2", "Ñ→𝒩", "G"),
    ("±i", "-1", "n=0", "trivial", "nodal-normalization", "T"),
    ("±i", "-1", "n≠0, upper triangular", "Z/2", "nodal-normalization", "T"),
    ("±i", "-1", "n≠0, lower triangular", "Z/2", "nodal-normalization", "T"),
    ("±1", "≠1", "n=0", "trivial", "ℙ¹→pt", "G"),
    ("±√q", "≠±1", "n=0", "trivial", "𝔸¹∪pt→𝔸¹", "T"),
    ("±√q", "≠±1", "n≠0, upper triangular", "Z/2", "𝔸¹∪pt→𝔸¹", "T"),
    ("≠±1,±√q", "any", "n=0", "trivial", "pt∪pt→pt", "T"),
]


def check_sl2_table() -> tuple:
    rows = [r for lam, q in dl_params.sl2_reference_points() for r in dl_params.sl2_table(lam, q)]
    got = [(r.lambda_descriptor, r.q_descriptor, r.n_stratum, r.component_group,
            r.geometry_label, r.centralizer) for r in rows]
    gtilde = {r.component_group_gtilde for r in rows}
    detail = {"rows_match": got == SL2_EXPECTED, "rows": len(got), "gtilde_trivial": gtilde == {"trivial"}}
    return detail["rows_match"] and detail["gtilde_trivial"], detail


def check_gln_parameters() -> tuple:
    shapes = 0
    bad = []
    for n in range(1, 4):
        for data in dl_params.eigenvalue_shapes(n, 2):
            shapes += 1
            ours = len(dl_params.enumerate_gln(eigenvalues=data))
            oracle = dl_params.oracle_orbit_count(data)
            if ours != oracle:
                bad.append({"eigenvalues": str(data), "enumerated": ours, "oracle": oracle})
    single = [len(dl_params.enumerate_gln(eigenvalues={("a", k): 1 for k in range(n)}))
              for n in range(1, 7)]
    recursion = [dl_params.single_orbit_count(n) for n in range(1, 7)]
    detail = {"shapes": shapes, "mismatches": bad, "single_orbit": single, "recursion": recursion}
    return not bad and single == recursion, detail


BLOCK_CASES = [
    # (n, entries (label, d, r, m), expected levi blocks, expected Hecke factors (q-exponent, rank))
    (1, [("1", 1, 1, 1)], [1], [(1, 1)]),
    (2, [("1", 1, 1, 2)], [1, 1], [(1, 2)]),
    (3, [("1", 1, 1, 3)], [1, 1, 1], [(1, 3)]),
    (4, [("1", 1, 1, 4)], [1, 1, 1, 1], [(1, 4)]),
    (2, [("a", 1, 2, 1)], [2], [(2, 1)]),
    (2, [("a", 2, 1, 1)], [2], [(1, 1)]),
    (3, [("a", 1, 1, 1), ("b", 1, 1, 2)], [1, 1, 1], [(1, 1), (1, 2)]),
    (4, [("a", 1, 2, 2)], [2, 2], [(2, 2)]),
    (5, [("b", 1, 1, 1), ("a", 2, 1, 2)], [2, 2, 1], [(1, 2), (1, 1)]),
    (6, [("x", 1, 3, 1), ("y", 1, 1, 1), ("z", 2, 1, 1)], [3, 1, 2], [(3, 1), (1, 1), (1, 1)]),
]


def check_blocks() -> tuple:
    decomp_bad = []
    for n, entries, levi, factors in BLOCK_CASES:
        nu = gln_blocks.InertialTypeSpec(n, tuple(gln_blocks.TypeEntry(*e) for e in entries))
        desc = gln_blocks.block_decompose(nu)
        if desc.levi_blocks != levi or desc.hecke_factors != factors:
            decomp_bad.append(nu.to_json())
    catalog = [(1, 1), (1, 2), (2, 1), (1, 3)]
    counts = {n: (len(gln_blocks.enumerate_types(n, catalog)), gln_blocks.count_types_oracle(n, catalog))
              for n in range(1, 7)}
    chains = [c for n in range(1, 4) for c in gln_blocks.refinement_chains(n)]
    failing_chains = [list(map(list, c)) for c in chains if not gln_blocks.check_transitivity(c)]
    detail = {"decomposition_mismatches": decomp_bad,
              "type_counts": {n: c[0] for n, c in counts.items()},
              "counts_match": all(a == b for a, b in counts.values()),
              "chains": len(chains), "failing_chains": failing_chains}
    return not decomp_bad and detail["counts_match"] and not failing_chains, detail


# -- 11. length oracle ------------------------------------------------------------------

def bfs_lengths(datum, max_len: int, omegas) -> dict:
    """Word length by breadth-first search from the given length-zero elements."""
    dist = {}
    queue = deque()
    for om in omegas:
        dist[om] = 0
        queue.append(om)
    gens = list(datum.affine_generators.values())
    while queue:
        x = queue.popleft()
        if dist[x] == max_len:
            continue
        for s in gens:
            y = wa_multiply(s, x)
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def _gl2_rotation(datum):
    """t_{e_1} s_1: it swaps the two alcove walls, so it has length zero."""
    return datum.element((1, 0), datum.simple_reflections[0])


def check_length_oracle(max_len: int = 8, data_dir=None) -> tuple:
    detail = {}
    sl2 = load_datum("SL2", data_dir)
    gl2 = load_datum("GL2", data_dir)
    rot = _gl2_rotation(gl2)
    powers = [gl2.identity()]
    for sign in (1, -1):
        x = gl2.identity()
        step = rot if sign > 0 else rot.inverse()
        for _ in range(2):
            x = wa_multiply(x, step)
            powers.append(x)
    for name, datum, omegas in (("SL2", sl2, [sl2.identity()]), ("GL2", gl2, powers)):
        dist = bfs_lengths(datum, max_len, omegas)
        agree = all(wa_length(x) == d for x, d in dist.items())
        # every element of length <= max_len in the covered components is reached
        box = range(-max_len, max_len + 1)
        comps = {sum(om.translation) for om in omegas}
        missed = 0
        for lam in itertools.product(box, repeat=datum.cochar_rank):
            if sum(lam) not in comps and name == "GL2":
                continue
            for w in datum.weyl_elements:
                x = datum.element(lam, w)
                if wa_length(x) <= max_len and x not in dist:
                    missed += 1
        detail[name] = {"elements": len(dist), "agree": agree, "missed": missed}
    ok = all(d["agree"] and not d["missed"] for d in detail.values())
    return ok, detail


# -- driver ----------------------------------------------------------------------------------

CHECKS = {
    1: ("Steinberg localization model", check_steinberg),
    2: ("Hecke algebra integrity", check_hecke_integrity),
    3: ("q = 1 specialization", check_specialization),
    4: ("equivariant Hochschild homology", check_equivariant_hh),
    5: ("plain Hochschild and cyclic homology", check_plain_hh),
    6: ("twisted trace", check_twisted_hh),
    7: ("dg example", check_dg_example),
    8: ("SL2 parameter table", check_sl2_table),
    9: ("GL_n parameter enumeration", check_gln_parameters),
    10: ("blocks and Levi embeddings", check_blocks),
    11: ("length oracle", check_length_oracle),
}


def run_check(number: int) -> CheckResult:
    name, fn = CHECKS[number]
    start = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported with its cause
        passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return CheckResult(number, name, bool(passed), detail, time.perf_counter() - start)


def run_all(numbers=None, threads: int = 1) -> list:
    numbers = sorted(numbers or CHECKS)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run_check, numbers))
    return [run_check(k) for k in numbers]


def format_table(results) -> str:
    lines = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria pass")
    return "\n".join(lines)
