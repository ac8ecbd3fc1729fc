"""Closed-form inertia predictions and explicit null-space witnesses.

Family recognition is structural: strip leaves to expose the cycle, then look
at how the remaining vertices hang off it. Anything not covered by a known
formula is reported as :class:`Unsupported` instead of guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import BadK, NotDeg2Cut, NotUnicyclic, PreconditionViolated
from .exact_linalg import Inertia, annihilates, rank
from .graph_core import (
    Graph, OppositePendants, all_pairs_distance_squared, build_family,
    find_cycle, graph_stats, is_deg2_cut,
)
from .numeric_spectra import cycle_inertia_closed, saturated_beta


@dataclass(frozen=True)
class Prediction:
    """Predicted inertia; components the formula does not determine are None."""

    rule: str
    n: int
    i_plus: Optional[int]
    i_minus: Optional[int]
    i_zero: Optional[int]
    inputs: dict = field(default_factory=dict)
    boundary: bool = False

    def matches(self, actual: Inertia) -> bool:
        return all(p is None or p == a for p, a in zip(self.triple, actual))

    @property
    def triple(self) -> tuple[Optional[int], Optional[int], Optional[int]]:
        return (self.i_plus, self.i_minus, self.i_zero)

    def to_json(self) -> dict:
        return {"rule": self.rule, "inputs": dict(self.inputs),
                "i_plus": self.i_plus, "i_minus": self.i_minus, "i_zero": self.i_zero,
                "boundary": self.boundary}


@dataclass(frozen=True)
class Unsupported:
    reason: str

    def to_json(self) -> dict:
        return {"unsupported": self.reason}


def _full(rule: str, n: int, i_minus: int, i_zero: int, **inputs) -> Prediction:
    return Prediction(rule, n, n - i_minus - i_zero, i_minus, i_zero, inputs)


def predict_inertia(g: Graph) -> Union[Prediction, Unsupported]:
    stats = graph_stats(g)
    ell, t, n = stats.leaves, stats.deg2_cut, g.n

    if stats.cycle_length is None:
        if n < 3:
            return Unsupported("trees with fewer than 3 vertices")
        return _full("tree", n, ell, max(t - 1, 0), leaves=ell, t=t)

    cycle = find_cycle(g)
    p, q = stats.cycle_length, stats.q
    on_cycle = set(cycle)
    hubs = [v for v in cycle if g.degree(v) > 2]

    if not hubs:
        c = cycle_inertia_closed(p)
        return Prediction("cycle", n, *c, inputs={"p": p, "q": q})

    if p == 3 and len(hubs) == 1:
        return Prediction("triangle-one-tree", n, None, ell + 2, None,
                          {"leaves": ell, "p": 3})

    if p % 2:
        return Unsupported(f"odd cycle of length {p} with attachments")

    if len(hubs) == 1 and g.degree(hubs[0]) == 3:
        return _full("even-cycle-one-tree", n, ell + q, t, leaves=ell, t=t, p=p, q=q)

    pendant_counts = _pendant_counts(g, cycle, on_cycle)
    if pendant_counts is not None and len(set(pendant_counts)) == 1:
        s = pendant_counts[0]
        m = p // 2
        if s == 1:
            beta = saturated_beta(m)
            return Prediction("saturated-cycle", n, None, ell + q - beta, None,
                              {"leaves": ell, "p": p, "q": q, "beta": beta},
                              boundary=(m == 2))
        if s >= q:
            return Prediction("uniform-pendants", n, None, ell, None,
                              {"leaves": ell, "p": p, "q": q, "s": s})
        return Unsupported(f"{s} pendants per vertex is below q={q}")

    return Unsupported("unicyclic graph outside the known families")


def _pendant_counts(g: Graph, cycle: list[int], on_cycle: set[int]) -> Optional[list[int]]:
    """Pendants per cycle vertex, or None if some off-cycle vertex is not a leaf on the cycle."""
    counts = []
    for v in cycle:
        off = [w for w in g.adj[v] if w not in on_cycle]
        if any(g.degree(w) != 1 for w in off):
            return None
        counts.append(len(off))
    if sum(counts) != g.n - len(cycle):
        return None
    return counts


def conjecture_bounds(g: Graph) -> tuple[int, int]:
    """(ℓ, ℓ + q) for a unicyclic graph."""
    stats = graph_stats(g)
    if stats.cycle_length is None:
        raise NotUnicyclic("graph has no cycle")
    return stats.leaves, stats.leaves + stats.q


# ---------------------------------------------------------------------------
# witnesses

@dataclass(frozen=True)
class NullWitness:
    kind: str
    vector: tuple[Fraction, ...]

    def verify(self, g: Graph) -> bool:
        return any(self.vector) and annihilates(all_pairs_distance_squared(g), self.vector)

    def to_json(self) -> dict:
        return {"kind": self.kind, "vector": [str(x) for x in self.vector]}


def row_witness_deg2(g: Graph, v: int) -> tuple[Fraction, ...]:
    """+1 on both neighbors of a degree-2 cut vertex v, -2 on v; Δx is all 2s."""
    if not is_deg2_cut(g, v):
        raise NotDeg2Cut(f"vertex {v} is not a degree-2 cut vertex")
    x = [Fraction(0)] * g.n
    for w in g.adj[v]:
        x[w] = Fraction(1)
    x[v] = Fraction(-2)
    return tuple(x)


def null_witness_deg2_pair(g: Graph, v1: int, v2: int) -> NullWitness:
    if v1 == v2:
        raise NotDeg2Cut("the two vertices must differ")
    x1, x2 = row_witness_deg2(g, v1), row_witness_deg2(g, v2)
    return NullWitness("deg2-pair", tuple(a - b for a, b in zip(x1, x2)))


def null_witness_even_cycle_branch(g: Graph, u: int) -> NullWitness:
    """Null vector for an even cycle with one branch and an off-cycle degree-2 vertex u.

    With c the attachment vertex, f its off-cycle neighbor and o the cycle
    vertex opposite c, the vector is ``-e_o + (m+1) e_c - m e_f`` plus
    ``m(m+1)/2`` times the degree-2 pattern (1, -2, 1) centred at u.
    """
    cycle = find_cycle(g)
    if cycle is None or len(cycle) % 2:
        raise PreconditionViolated("need an even cycle")
    on_cycle = set(cycle)
    hubs = [v for v in cycle if g.degree(v) > 2]
    if len(hubs) != 1 or g.degree(hubs[0]) != 3:
        raise PreconditionViolated("need exactly one cycle vertex of degree 3, the rest degree 2")
    if u in on_cycle or g.degree(u) != 2:
        raise PreconditionViolated(f"vertex {u} is not an off-cycle degree-2 vertex")
    m = len(cycle) // 2
    c = hubs[0]
    f = next(w for w in g.adj[c] if w not in on_cycle)
    o = cycle[(cycle.index(c) + m) % len(cycle)]
    v = [Fraction(0)] * g.n
    v[o] -= 1
    v[c] += m + 1
    v[f] -= m
    half = Fraction(m * (m + 1), 2)
    for w in g.adj[u]:
        v[w] += half
    v[u] -= 2 * half
    return NullWitness("even-cycle-branch", tuple(v))


def null_witness_opposite_pendants(k: int) -> NullWitness:
    """x - y - (k/(k+2))(z - w) over the columns of cycle vertices 0, k and their pendants."""
    if k < 2:
        raise BadK(f"need k >= 2, got {k}")
    v = [Fraction(0)] * (2 * k + 2)
    r = Fraction(k, k + 2)
    v[0], v[k], v[2 * k], v[2 * k + 1] = Fraction(1), Fraction(-1), -r, r
    return NullWitness("opposite-pendants", tuple(v))


def opposite_pendants_graph(k: int) -> Graph:
    return build_family(OppositePendants(k))


def deg2_cut_vertices(g: Graph) -> list[int]:
    return [v for v in range(g.n) if is_deg2_cut(g, v)]


def witness_checks(g: Graph) -> dict:
    """Build and verify every witness that applies to g.

    Returns counts of checked and failed witnesses per kind, plus the rank of
    the null witnesses found (a lower bound on i_zero).
    """
    delta = all_pairs_distance_squared(g)
    cuts = deg2_cut_vertices(g)
    out = {"row": [0, 0], "deg2-pair": [0, 0], "even-cycle-branch": [0, 0]}
    null_vectors = []
    twos = [Fraction(2)] * g.n
    for v in cuts:
        ok = _matvec(delta, row_witness_deg2(g, v)) == twos
        out["row"][0] += 1
        out["row"][1] += not ok
    for v2 in cuts[1:]:
        w = null_witness_deg2_pair(g, cuts[0], v2)
        out["deg2-pair"][0] += 1
        out["deg2-pair"][1] += not annihilates(delta, w.vector)
        null_vectors.append(w.vector)
    cycle = find_cycle(g)
    if cycle is not None and len(cycle) % 2 == 0:
        hubs = [v for v in cycle if g.degree(v) > 2]
        if len(hubs) == 1 and g.degree(hubs[0]) == 3:
            on_cycle = set(cycle)
            for u in range(g.n):
                if u not in on_cycle and g.degree(u) == 2:
                    w = null_witness_even_cycle_branch(g, u)
                    out["even-cycle-branch"][0] += 1
                    out["even-cycle-branch"][1] += not annihilates(delta, w.vector)
                    null_vectors.append(w.vector)
    span = rank(null_vectors) if null_vectors else 0
    checked = sum(c for c, _ in out.values())
    failed = sum(f for _, f in out.values())
    return {"checked": checked, "failed": failed, "span": span,
            "by_kind": {k: {"checked": c, "failed": f} for k, (c, f) in out.items()}}


def _matvec(delta, x) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, x)), Fraction(0)) for row in delta.rows]


__all__ = [
    "Prediction", "Unsupported", "NullWitness", "predict_inertia", "conjecture_bounds",
    "row_witness_deg2", "null_witness_deg2_pair", "null_witness_even_cycle_branch",
    "null_witness_opposite_pendants", "opposite_pendants_graph", "witness_checks",
    "deg2_cut_vertices",
]
