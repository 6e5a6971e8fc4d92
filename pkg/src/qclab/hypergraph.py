"""Uniform hypergraphs on vertex set [0, n).

Graphs are the d=2 case. Edges are stored canonically: each edge is a
strictly increasing tuple of d vertex ids, the edge list is lexicographically
sorted and duplicate-free. All iteration orders downstream are therefore
deterministic, which is what makes oracle answers replayable.

The module also provides seeded instance generators (random, and "planted"
instances whose optimum is controlled by construction) and a plain text file
format: optional '#' comment lines, a header line "n d m", then m lines of d
space-separated vertex ids.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .rng import rng_from

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """Immutable d-uniform hypergraph; safe to share across threads."""

    n: int
    d: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one vertex, got n={self.n}")
        if self.d < 2:
            raise ValueError(f"edge arity must be at least 2, got d={self.d}")
        prev = None
        for e in self.edges:
            if len(e) != self.d:
                raise ValueError(f"edge {e} has arity {len(e)}, expected {self.d}")
            if any(e[i] >= e[i + 1] for i in range(len(e) - 1)):
                raise ValueError(f"edge {e} is not strictly increasing")
            if e[0] < 0 or e[-1] >= self.n:
                raise ValueError(f"edge {e} has a vertex outside [0, {self.n})")
            if prev is not None and e <= prev:
                raise ValueError("edge list is not sorted and duplicate-free")
            prev = e

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg


def new_hypergraph(n: int, d: int, edges: Iterable[Sequence[int]]) -> Hypergraph:
    """Build a hypergraph, canonicalizing the edge list.

    Each listed edge must consist of d distinct vertices below n; edges are
    sorted internally and globally and duplicates are dropped.
    """
    canon = set()
    for raw in edges:
        e = tuple(sorted(int(v) for v in raw))
        if len(e) != d:
            raise ValueError(f"edge {tuple(raw)} has arity {len(raw)}, expected {d}")
        if len(set(e)) != d:
            raise ValueError(f"edge {tuple(raw)} repeats a vertex")
        if e[0] < 0 or e[-1] >= n:
            raise ValueError(f"edge {tuple(raw)} has a vertex outside [0, {n})")
        canon.add(e)
    return Hypergraph(n=n, d=d, edges=tuple(sorted(canon)))


def union(a: Hypergraph, b: Hypergraph) -> Hypergraph:
    """Edge-set union of two hypergraphs on the same vertex set."""
    if a.n != b.n:
        raise ValueError(f"vertex count mismatch: {a.n} != {b.n}")
    if a.d != b.d:
        raise ValueError(f"arity mismatch: {a.d} != {b.d}")
    return Hypergraph(n=a.n, d=a.d, edges=tuple(sorted(set(a.edges) | set(b.edges))))


@dataclass(frozen=True)
class PlantedTruth:
    """Ground-truth bookkeeping attached to a planted instance.

    kind is one of "hitting-set", "packing", "cut". The witness is a lower
    bound / feasibility certificate, never trusted as the optimum: a vertex
    tuple hit by every edge, a tuple of pairwise-disjoint edges, or a
    per-vertex part assignment.
    """

    kind: str
    k: int
    witness: tuple

    def validate(self, h: Hypergraph) -> bool:
        if self.kind == "hitting-set":
            s = set(self.witness)
            return all(s.intersection(e) for e in h.edges)
        if self.kind == "packing":
            seen: set[int] = set()
            for e in self.witness:
                if tuple(e) not in h.edges or seen.intersection(e):
                    return False
                seen.update(e)
            return len(self.witness) >= self.k
        if self.kind == "cut":
            parts = self.witness
            if len(parts) != h.n:
                return False
            crossing = sum(1 for u, v in h.edges if parts[u] != parts[v])
            return crossing >= self.k
        raise ValueError(f"unknown planted kind {self.kind!r}")

    def to_json(self) -> dict:
        witness: object
        if self.kind == "packing":
            witness = [list(e) for e in self.witness]
        else:
            witness = list(self.witness)
        return {"kind": self.kind, "k": self.k, "witness": witness}

    @staticmethod
    def from_json(obj: dict) -> "PlantedTruth":
        if obj["kind"] == "packing":
            witness = tuple(tuple(e) for e in obj["witness"])
        else:
            witness = tuple(obj["witness"])
        return PlantedTruth(kind=obj["kind"], k=int(obj["k"]), witness=witness)


def gen_gnp(n: int, d: int, p: float, seed: int) -> Hypergraph:
    """Include each of the C(n, d) potential edges independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    if p == 0.0:
        return new_hypergraph(n, d, [])
    rng = rng_from(seed, "gnp", n, d)
    keep = rng.random(math.comb(n, d)) < p
    edges = [c for c, k in zip(itertools.combinations(range(n), d), keep) if k]
    return Hypergraph(n=n, d=d, edges=tuple(edges))


def gen_planted_hitting_set(
    n: int, d: int, k: int, m: int, seed: int
) -> tuple[Hypergraph, PlantedTruth]:
    """Instance whose minimum hitting set has size at most k.

    A hidden k-set S is drawn; every generated edge meets S, so S witnesses
    feasibility (the true optimum can be smaller and is recomputed by exact
    solvers where needed).
    """
    if k < 1:
        raise ValueError("k must be positive")
    if n < d:
        raise ValueError("need n >= d")
    feasible = math.comb(n, d) - math.comb(max(n - k, 0), d)
    if m > feasible:
        raise ValueError(f"cannot place {m} distinct edges meeting a {k}-set (max {feasible})")
    rng = rng_from(seed, "planted-hs", n, d, k, m)
    witness = tuple(sorted(rng.choice(n, size=k, replace=False).tolist()))
    edges: set[Edge] = set()
    while len(edges) < m:
        s = int(witness[rng.integers(k)])
        # draw d-1 companions from [0, n) \ {s} by skipping s
        rest = rng.choice(n - 1, size=d - 1, replace=False)
        e = tuple(sorted([s] + [int(v) if v < s else int(v) + 1 for v in rest]))
        edges.add(e)
    return (
        Hypergraph(n=n, d=d, edges=tuple(sorted(edges))),
        PlantedTruth(kind="hitting-set", k=k, witness=witness),
    )


def gen_planted_packing(
    n: int, d: int, k: int, extra: int, seed: int
) -> tuple[Hypergraph, PlantedTruth]:
    """Instance containing k pairwise-disjoint planted edges plus extra random edges.

    The witness records the planted packing, a lower bound on the maximum;
    with extra=0 the maximum is exactly k.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if d * k > n:
        raise ValueError(f"cannot pack {k} disjoint {d}-edges into {n} vertices")
    rng = rng_from(seed, "planted-packing", n, d, k, extra)
    perm = rng.permutation(n)
    planted = tuple(
        sorted(tuple(sorted(int(v) for v in perm[i * d : (i + 1) * d])) for i in range(k))
    )
    edges: set[Edge] = set(planted)
    while len(edges) < k + extra:
        e = tuple(sorted(int(v) for v in rng.choice(n, size=d, replace=False)))
        edges.add(e)
    return (
        Hypergraph(n=n, d=d, edges=tuple(sorted(edges))),
        PlantedTruth(kind="packing", k=k, witness=planted),
    )


def gen_planted_cut(n: int, t: int, k: int, seed: int) -> tuple[Hypergraph, PlantedTruth]:
    """Graph (d=2) with a planted t-partition crossed by at least k edges."""
    if t < 2:
        raise ValueError("t must be at least 2")
    if k < 1:
        raise ValueError("k must be positive")
    if n < t:
        raise ValueError("need n >= t so every part can be non-empty")
    rng = rng_from(seed, "planted-cut", n, t, k)
    order = rng.permutation(n)
    parts = [0] * n
    for i, v in enumerate(order):
        parts[int(v)] = i % t if i < t else int(rng.integers(t))
    sizes = [parts.count(i) for i in range(t)]
    capacity = math.comb(n, 2) - sum(math.comb(s, 2) for s in sizes)
    if k > capacity:
        raise ValueError(f"partition admits at most {capacity} crossing edges, need {k}")
    edges: set[Edge] = set()
    while len(edges) < k:
        u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
        if parts[u] != parts[v]:
            edges.add((u, v) if u < v else (v, u))
    return (
        Hypergraph(n=n, d=2, edges=tuple(sorted(edges))),
        PlantedTruth(kind="cut", k=k, witness=tuple(parts)),
    )


def serialize_hypergraph(h: Hypergraph) -> str:
    lines = [f"{h.n} {h.d} {h.m}"]
    lines.extend(" ".join(str(v) for v in e) for e in h.edges)
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the text format; inverse of serialize_hypergraph on canonical form."""
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise ValueError("empty hypergraph file")
    header = rows[0].split()
    if len(header) != 3:
        raise ValueError(f"malformed header {rows[0]!r}, expected 'n d m'")
    try:
        n, d, m = (int(x) for x in header)
    except ValueError as exc:
        raise ValueError(f"malformed header {rows[0]!r}") from exc
    body = rows[1:]
    if len(body) != m:
        raise ValueError(f"header claims {m} edges but file has {len(body)} edge lines")
    edges = []
    for ln in body:
        try:
            e = [int(x) for x in ln.split()]
        except ValueError as exc:
            raise ValueError(f"malformed edge line {ln!r}") from exc
        edges.append(e)
    return new_hypergraph(n, d, edges)


def save_hypergraph(h: Hypergraph, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_hypergraph(h))


def load_hypergraph(path: str) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_hypergraph(fh.read())
