"""Verification campaigns, the leaf-bound scanner, and exact property checks.

Every run is deterministic in its arguments. Instances may be evaluated in a
process pool, but results are always merged back in instance order.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .errors import InvalidSpec, SizeLimit
from .exact_linalg import (
    Inertia, RatMatrix, congruence_transform, haynsworth_inertia, inverse, ldlt_inertia, rank,
    rational_nullspace,
)
from .graph_core import (
    Cycle, CyclePendants, Graph, OppositePendants, SaturatedCycle, all_pairs_distance_squared,
    attach_tree, build_family, enumerate_trees, format_family, graph_stats, random_unicyclic,
)
from .numeric_spectra import jacobi_eigenvalues
from .predictors import (
    Prediction, conjecture_bounds, null_witness_opposite_pendants, predict_inertia,
    witness_checks,
)
from .rng import SplitMix64

SCHEMA = "inertia-lab/1"
DEFAULT_MAX_N = 24
FAMILIES = ("tree", "cycle", "cycle-pendant", "evencycle-tree", "saturated", "pendants",
            "triangle-tree", "opposite")
SCAN_MODEL = ("n uniform on 3..max_n; cycle length p uniform on 3..n; each vertex "
              "v = p..n-1 joined to a uniform earlier vertex")


def oracle_cap() -> int:
    return int(os.environ.get("INERTIA_LAB_MAX_N", DEFAULT_MAX_N))


def graph_hash(g: Graph) -> str:
    blob = json.dumps(g.to_json(), separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _pmap(fn: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


# ---------------------------------------------------------------------------
# campaigns

@dataclass
class CampaignReport:
    family: str
    lo: int
    hi: int
    records: list[dict]
    duration_s: float = 0.0
    params: dict = field(default_factory=dict)

    @property
    def instance_count(self) -> int:
        return len(self.records)

    @property
    def mismatches(self) -> list[dict]:
        return [r for r in self.records if not r["match"]]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "family": self.family,
            "range": [self.lo, self.hi],
            "params": self.params,
            "instance_count": self.instance_count,
            "mismatch_count": len(self.mismatches),
            "mismatches": [r["index"] for r in self.mismatches],
            "boundary": [r["index"] for r in self.records if r.get("boundary")],
            "duration_s": round(self.duration_s, 3),
            "records": self.records,
        }


def campaign_instances(family: str, lo: int, hi: int, tree_max: int = 5) -> list[tuple[str, Graph]]:
    """(descriptor, graph) pairs for a campaign, in a fixed order."""
    out: list[tuple[str, Graph]] = []
    evens = [p for p in range(max(lo, 4), hi + 1) if p % 2 == 0]
    if family == "tree":
        for n in range(max(lo, 1), hi + 1):
            for i, t in enumerate(enumerate_trees(n)):
                out.append((f"tree n={n} #{i}", t))
    elif family == "cycle":
        for p in range(max(lo, 3), hi + 1):
            out.append((format_family(Cycle(p)), build_family(Cycle(p))))
    elif family == "cycle-pendant":
        for p in evens:
            out.append((f"cycle:{p}+pendant", attach_tree(p, Graph(1))))
    elif family == "evencycle-tree":
        for p in evens:
            for size in range(1, tree_max + 1):
                for i, t in enumerate(enumerate_trees(size)):
                    for a in range(t.n):
                        out.append((f"evencycle:{p} tree n={size} #{i} @{a}", attach_tree(p, t, a)))
    elif family == "saturated":
        for p in evens:
            out.append((format_family(SaturatedCycle(p)), build_family(SaturatedCycle(p))))
    elif family == "pendants":
        for p in evens:
            q = p // 2
            for s in (q, q + 1, q + 2):
                spec = CyclePendants(p, s)
                out.append((format_family(spec), build_family(spec)))
    elif family == "triangle-tree":
        for size in range(max(lo, 1), hi + 1):
            for i, t in enumerate(enumerate_trees(size)):
                for a in range(t.n):
                    out.append((f"triangle tree n={size} #{i} @{a}", attach_tree(3, t, a)))
    elif family == "opposite":
        for k in range(max(lo, 2), hi + 1):
            out.append((format_family(OppositePendants(k)), build_family(OppositePendants(k))))
    else:
        raise InvalidSpec(f"unknown campaign family {family!r}; choose from {', '.join(FAMILIES)}")
    return out


def check_instance(item: tuple[int, str, Graph, str]) -> dict:
    index, desc, g, family = item
    delta = all_pairs_distance_squared(g)
    oracle = ldlt_inertia(delta)
    stats = graph_stats(g)
    rec = {
        "index": index,
        "instance": desc,
        "graph_hash": graph_hash(g),
        "stats": stats.to_json(),
        "oracle": oracle.to_json(),
    }
    match = sum(oracle) == g.n
    if family == "opposite":
        k = (g.n - 2) // 2
        w = null_witness_opposite_pendants(k)
        null_dim = len(rational_nullspace(delta))
        rec["predicted"] = None
        rec["witness_ok"] = w.verify(g)
        rec["nullspace_dim"] = null_dim
        match = match and rec["witness_ok"] and null_dim >= 1 and null_dim == oracle.i_zero
    else:
        pred = predict_inertia(g)
        rec["predicted"] = pred.to_json()
        if isinstance(pred, Prediction):
            rec["boundary"] = pred.boundary
            match = match and pred.matches(oracle)
        else:
            match = False
    wc = witness_checks(g)
    rec["witnesses"] = {"checked": wc["checked"], "failed": wc["failed"], "span": wc["span"]}
    match = match and wc["failed"] == 0
    rec["match"] = bool(match)
    return rec


def verify_campaign(family: str, lo: int, hi: int, *, tree_max: int = 5,
                    max_n: Optional[int] = None, jobs: int = 1) -> CampaignReport:
    cap = oracle_cap() if max_n is None else max_n
    t0 = time.perf_counter()
    instances = campaign_instances(family, lo, hi, tree_max)
    too_big = [d for d, g in instances if g.n > cap]
    if too_big:
        raise SizeLimit(f"{len(too_big)} instance(s) exceed the oracle cap n <= {cap} "
                        f"(first: {too_big[0]}); raise it with --max-n or INERTIA_LAB_MAX_N")
    items = [(i, d, g, family) for i, (d, g) in enumerate(instances)]
    records = _pmap(check_instance, items, jobs)
    return CampaignReport(family, lo, hi, records, time.perf_counter() - t0,
                          {"tree_max": tree_max, "max_n": cap})


# ---------------------------------------------------------------------------
# leaf-bound scanner

DEFAULT_PROBES = (CyclePendants(6, 3),)


def scan_record(g: Graph) -> dict:
    lo, hi = conjecture_bounds(g)
    i_minus = ldlt_inertia(all_pairs_distance_squared(g)).i_minus
    stats = graph_stats(g)
    return {
        "n": g.n,
        "graph": g.to_json(),
        "leaves": stats.leaves,
        "q": stats.q,
        "cycle_length": stats.cycle_length,
        "i_minus": i_minus,
        "lo": lo,
        "hi": hi,
        "in_bounds": lo <= i_minus <= hi,
    }


def _scan_one(args: tuple[int, int]) -> dict:
    n, seed = args
    return scan_record(random_unicyclic(n, seed))


def conjecture_scan(samples: int, max_n: int, seed: int, *, probes=DEFAULT_PROBES,
                    jobs: int = 1) -> Iterator[dict]:
    """Yield a header line, one record per sample and probe, then a summary line."""
    cap = oracle_cap()
    if max_n > cap:
        raise SizeLimit(f"max_n={max_n} exceeds the oracle cap {cap}")
    if max_n < 3:
        raise InvalidSpec("max_n must be >= 3")
    yield {"type": "header", "schema": SCHEMA, "samples": samples, "max_n": max_n, "seed": seed,
           "rng": "splitmix64", "model": SCAN_MODEL,
           "probes": [format_family(p) for p in probes]}
    rng = SplitMix64(seed)
    draws = []
    for _ in range(samples):
        n = rng.randint(3, max_n)
        draws.append((n, rng.next_u64()))
    outside, at_lo, at_hi = [], 0, 0
    batch = 512
    for start in range(0, samples, batch):
        chunk = draws[start:start + batch]
        for offset, rec in enumerate(_pmap(_scan_one, chunk, jobs)):
            i = start + offset
            out = {"type": "sample", "index": i, "seed": chunk[offset][1], **rec}
            at_lo += rec["i_minus"] == rec["lo"]
            at_hi += rec["i_minus"] == rec["hi"]
            if not rec["in_bounds"]:
                outside.append(i)
            yield out
    probe_outside = []
    for spec in probes:
        rec = scan_record(build_family(spec))
        if not rec["in_bounds"]:
            probe_outside.append(format_family(spec))
        yield {"type": "probe", "family": format_family(spec), **rec}
    yield {"type": "summary", "samples": samples, "in_bounds": samples - len(outside),
           "out_of_bounds": len(outside), "out_of_bounds_indices": outside,
           "at_lower_bound": at_lo, "at_upper_bound": at_hi,
           "probes_out_of_bounds": probe_outside}


# ---------------------------------------------------------------------------
# exact property checks

def _rand_frac(rng: SplitMix64) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 4))


def random_symmetric(rng: SplitMix64, n: int) -> RatMatrix:
    """Random symmetric rational matrix; one draw in three is deliberately rank deficient."""
    if n > 1 and rng.randint(0, 2) == 0:
        r = rng.randint(0, n - 1)
        a = [[Fraction(0)] * n for _ in range(n)]
        for _ in range(r):
            v = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
            sgn = rng.choice((-1, 1))
            for i in range(n):
                for j in range(n):
                    a[i][j] += sgn * v[i] * v[j]
        return RatMatrix.of(a)
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = _rand_frac(rng)
    return RatMatrix.of(a)


def random_nonsingular(rng: SplitMix64, n: int) -> RatMatrix:
    while True:
        s = RatMatrix.of([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        if rank(s) == n:
            return s


def _check(name: str, results: dict, ok: bool, detail) -> None:
    entry = results.setdefault(name, {"trials": 0, "passed": 0, "failures": []})
    entry["trials"] += 1
    entry["passed"] += bool(ok)
    if not ok and len(entry["failures"]) < 5:
        entry["failures"].append(detail)


def _steps_ok(whole: Inertia, part: Inertia) -> bool:
    return (whole.i_plus - 1 <= part.i_plus <= whole.i_plus
            and whole.i_minus - 1 <= part.i_minus <= whole.i_minus)


def property_suite(seed: int, trials: int, *, tree_max: int = 9, jacobi_trials: Optional[int] = None) -> dict:
    """Seeded exact checks of the inertia laws used throughout the package.

    ``sylvester``: i(SᵀMS) = i(M) for nonsingular S.  ``haynsworth``: the
    Schur-complement split agrees with direct elimination.  ``interlacing``:
    deleting a row/column lowers each of i₊, i₋ by at most one, on random
    matrices and on Δ of every tree with at most ``tree_max`` vertices.
    ``subadditivity``: i±(A+B) <= i±(A) + i±(B).  ``jacobi``: floating sign
    counts agree with the exact ones whenever no eigenvalue is within 1e-6 of 0.
    """
    rng = SplitMix64(seed)
    results: dict = {}

    for t in range(trials):
        n = rng.randint(1, 8)
        m = random_symmetric(rng, n)
        s = random_nonsingular(rng, n)
        a, b = ldlt_inertia(m), ldlt_inertia(congruence_transform(m, s))
        _check("sylvester", results, a == b, {"trial": t, "n": n})

    for t in range(trials):
        n = rng.randint(2, 8)
        k = rng.randint(1, n - 1)
        while True:
            h = random_symmetric(rng, n)
            try:
                inverse(h.submatrix(range(k)))
                break
            except ZeroDivisionError:
                continue
        a, b = haynsworth_inertia(h, k), ldlt_inertia(h)
        _check("haynsworth", results, a == b, {"trial": t, "n": n, "k": k})

    for t in range(trials):
        n = rng.randint(2, 8)
        m = random_symmetric(rng, n)
        whole = ldlt_inertia(m)
        i = rng.randint(0, n - 1)
        _check("interlacing", results, _steps_ok(whole, ldlt_inertia(m.delete(i))),
               {"trial": t, "n": n, "deleted": i})
    for n in range(2, tree_max + 1):
        for idx, tree in enumerate(enumerate_trees(n)):
            d = RatMatrix.of(all_pairs_distance_squared(tree).rows)
            whole = ldlt_inertia(d)
            ok = all(_steps_ok(whole, ldlt_inertia(d.delete(v))) for v in range(n))
            _check("interlacing", results, ok, {"tree_n": n, "tree": idx})

    for t in range(trials):
        n = rng.randint(1, 8)
        a, b = random_symmetric(rng, n), random_symmetric(rng, n)
        ia, ib, iab = ldlt_inertia(a), ldlt_inertia(b), ldlt_inertia(a + b)
        ok = iab.i_plus <= ia.i_plus + ib.i_plus and iab.i_minus <= ia.i_minus + ib.i_minus
        _check("subadditivity", results, ok, {"trial": t, "n": n})

    for t in range(trials if jacobi_trials is None else jacobi_trials):
        n = rng.randint(1, 12)
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                a[i][j] = a[j][i] = rng.randint(-9, 9)
        spec = jacobi_eigenvalues(a)
        if min(abs(x) for x in spec.eigenvalues) <= 1e-6:
            continue
        _check("jacobi", results, spec.inertia() == ldlt_inertia(a), {"trial": t, "n": n})

    for entry in results.values():
        entry["ok"] = entry["passed"] == entry["trials"]
    return {"schema": SCHEMA, "seed": seed, "trials": trials, "checks": results,
            "ok": all(e["ok"] for e in results.values())}
