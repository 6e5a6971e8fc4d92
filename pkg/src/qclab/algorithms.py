"""Query algorithms over a hidden instance, with exact query accounting.

Every algorithm consumes an OracleSession (its only access to the hidden
edge set), colors vertices, samples through the oracle, and hands the small
sampled or quotient instance to an exact solver. Randomized variants boost a
constant-probability core procedure: optimization algorithms repeat and keep
the best outcome, decision algorithms repeat and take a majority vote. The
number of repetitions is boost_c * ceil(log2 k), clamped so k <= 1 still
runs one round.

Results report the witness (verified against the sampled evidence before
returning), the exact per-kind query counts consumed, and the colorings used
per round so the query spend can be recomputed independently: a round whose
coloring has q non-empty classes costs exactly C(q, d) queries.

AlgorithmConstants collects every tunable: color counts, round counts, and
the boosting constant. Defaults follow the analysis that makes each core
round succeed with constant probability; override any field to experiment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

from .coloring import HashColoring, perfect_family, random_coloring
from .hypergraph import Edge, Hypergraph
from .oracle import OracleSession, QueryStats
from .rng import rng_from
from .sampler import quotient_existence, sample_subhypergraph, sample_union
from .solvers import (
    DEFAULT_LIMITS,
    SolverLimits,
    max_matching,
    max_set_packing,
    max_t_cut,
    min_hitting_set,
    min_vertex_cover,
)


def log_k(k: int) -> int:
    """ceil(log2 k) clamped to at least 1; the repetition scale."""
    return max(1, (max(k, 1) - 1).bit_length())


@dataclass(frozen=True)
class AlgorithmConstants:
    """Every named constant in one overridable record.

    Fields ending in _factor multiply a power of k fixed by the algorithm;
    pack_gamma, hs_alpha, hs_beta and hs_decision_gamma default to their
    arity-dependent values when left as None.
    """

    vc_colors_factor: int = 1000        # cover sampler colors: 1000 * k
    vc_rounds_factor: int = 100         # cover sampler rounds: 100 * log k
    vc_decision_colors_factor: int = 100  # decision quotient colors: 100 * k^4
    match_colors_factor: int = 2000     # matching sampler colors: 2000 * k
    match_rounds_factor: int = 200      # matching sampler rounds: 200 * log k
    pack_gamma: Optional[int] = None    # packing colors: gamma * k^2; default 100 d^2
    hs_alpha: Optional[int] = None      # hitting-set rounds: alpha * log k; default 100 d^2
    hs_beta: Optional[int] = None       # hitting-set colors: beta * k; default 100 d^3 2^(d+5)
    hs_decision_gamma: Optional[int] = None  # decision colors: gamma * k^(2d); default 100 9^d d^2
    cut_colors_factor: int = 100        # cut colors: 100 * k^2
    boost_c: int = 10                   # rounds per unit of log k in boosted loops

    def __post_init__(self) -> None:
        for name in (
            "vc_colors_factor",
            "vc_rounds_factor",
            "vc_decision_colors_factor",
            "match_colors_factor",
            "match_rounds_factor",
            "cut_colors_factor",
            "boost_c",
        ):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        for name in ("pack_gamma", "hs_alpha", "hs_beta", "hs_decision_gamma"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be at least 1")

    def pack_gamma_for(self, d: int) -> int:
        return self.pack_gamma if self.pack_gamma is not None else 100 * d * d

    def hs_alpha_for(self, d: int) -> int:
        return self.hs_alpha if self.hs_alpha is not None else 100 * d * d

    def hs_beta_for(self, d: int) -> int:
        return self.hs_beta if self.hs_beta is not None else 100 * d**3 * 2 ** (d + 5)

    def hs_decision_gamma_for(self, d: int) -> int:
        return self.hs_decision_gamma if self.hs_decision_gamma is not None else 100 * 9**d * d * d

    def override(self, **kwargs) -> "AlgorithmConstants":
        return replace(self, **kwargs)


DEFAULT_CONSTANTS = AlgorithmConstants()


@dataclass(frozen=True)
class AlgorithmResult:
    """Outcome of one algorithm run.

    answer True means "found" for optimization and "yes" for decision
    variants. A non-None witness was checked against the sampled evidence
    before return; whether it is also valid for the hidden instance is a
    statistical claim that the harness tests separately.
    """

    answer: bool
    witness: object | None
    stats: QueryStats
    rounds_used: int
    constants: AlgorithmConstants
    colorings: tuple[HashColoring, ...] = field(repr=False, default=())

    def query_counts_by_round(self, d: int) -> tuple[int, ...]:
        """Closed-form C(q_r, d) per round, recomputed from the colorings."""
        counts = []
        for c in self.colorings:
            q = len(set(c.color))
            counts.append(math.comb(q, d))
        return tuple(counts)


def _delta(session: OracleSession, before: QueryStats) -> QueryStats:
    return session.stats() - before


def _check_cover(witness: tuple[int, ...], graph: Hypergraph) -> None:
    s = set(witness)
    for e in graph.edges:
        if not s.intersection(e):
            raise AssertionError("returned cover misses a sampled edge; algorithm bug")


def _check_packing(witness: tuple[Edge, ...], graph: Hypergraph) -> None:
    seen: set[int] = set()
    edge_set = set(graph.edges)
    for e in witness:
        if e not in edge_set or seen.intersection(e):
            raise AssertionError("returned packing invalid on sampled evidence; algorithm bug")
        seen.update(e)


# -- packing / matching ------------------------------------------------


def packing(
    session: OracleSession,
    k: int,
    seed: int = 0,
    constants: AlgorithmConstants = DEFAULT_CONSTANTS,
    limits: SolverLimits = DEFAULT_LIMITS,
) -> AlgorithmResult:
    """Report a packing of at least k pairwise-disjoint edges, or that none exists.

    Each round colors the vertices with gamma*k^2 colors, samples one
    sub-hypergraph through the witness oracle, and solves it exactly; the
    best packing over boost_c*log k rounds is kept.
    """
    if k < 1:
        raise ValueError("k must be positive")
    d = session.d
    before = session.stats()
    b = constants.pack_gamma_for(d) * k * k
    rounds = constants.boost_c * log_k(k)
    best: tuple[Edge, ...] = ()
    colorings = []
    best_graph = None
    for r in range(rounds):
        c = random_coloring(session.n, b, rng_from(seed, "round", r))
        colorings.append(c)
        sample = sample_subhypergraph(session, c)
        pack = max_set_packing(sample.graph, limits)
        if len(pack) > len(best):
            best = pack
            best_graph = sample.graph
    answer = len(best) >= k
    if answer:
        assert best_graph is not None
        _check_packing(best, best_graph)
    return AlgorithmResult(
        answer=answer,
        witness=best if answer else None,
        stats=_delta(session, before),
        rounds_used=rounds,
        constants=constants,
        colorings=tuple(colorings),
    )


def packing_deterministic(
    session: OracleSession,
    k: int,
    constants: AlgorithmConstants = DEFAULT_CONSTANTS,
    limits: SolverLimits = DEFAULT_LIMITS,
) -> AlgorithmResult:
    """Seed-free packing: exhaust an injective-family of colorings.

    Some family member colors the vertices of any fixed k-edge packing
    injectively, so the maximum over all members is exact, with no failure
    probability. Costs a factor of the family size (about max(n, colors))
    more queries than one randomized round.
    """
    if k < 1:
        raise ValueError("k must be positive")
    d = session.d
    before = session.stats()
    s = d * k
    range_b = max(constants.pack_gamma_for(d) * k * k, 4 * s * s)
    family = perfect_family(session.n, s, range_b)
    best: tuple[Edge, ...] = ()
    best_graph = None
    for c in family.members:
        sample = sample_subhypergraph(session, c)
        pack = max_set_packing(sample.graph, limits)
        if len(pack) > len(best):
            best = pack
            best_graph = sample.graph
    answer = len(best) >= k
    if answer:
        assert best_graph is not None
        _check_packing(best, best_graph)
    return AlgorithmResult(
        answer=answer,
        witness=best if answer else None,
        stats=_delta(session, before),
        rounds_used=len(family.members),
        constants=constants,
        colorings=tuple(family.members),
    )


def matching_promised(
    session: OracleSession,
    k: int,
    seed: int = 0,
    constants: AlgorithmConstants = DEFAULT_CONSTANTS,
    limits: SolverLimits = DEFAULT_LIMITS,
) -> AlgorithmResult:
    """Maximum matching under the promise that it has at most k edges."""
    if k < 1:
        raise ValueError("k must be positive")
    if session.d != 2:
        raise ValueError("matching needs a graph (d=2)")
    before = session.stats()
    b = constants.match_colors_factor * k
    t = constants.match_rounds_factor * log_k(k)
    sample = sample_union(session, b, t, seed)
    witness = max_matching(sample.graph, limits)
    _check_packing(witness, sample.graph)
    return AlgorithmResult(
        answer=True,
        witness=witness,
        stats=_delta(session, before),
        rounds_used=t,
        constants=constants,
        colorings=sample.provenance,
    )


# -- vertex cover ------------------------------------------------------


def vc_promised(
    session: OracleSession,
    k: int,
    seed: int = 0,
    constants: AlgorithmConstants = DEFAULT_CONSTANTS,
    limits: SolverLimits = DEFAULT_LIMITS,
) -> AlgorithmResult:
    """Minimum vertex cover under the promise that it has at most k vertices.

    Takes the union of 100*log k samples at 1000k colors and solves it
    exactly; under the promise the union's minimum cover is, with high
    probability, a minimum cover of the hidden graph. The promise itself is
    not checked.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if session.d != 2:
        raise ValueError("vertex cover needs a graph (d=2)")
    before = session.stats()
    b = constants.vc_colors_factor * k
    t = constants.vc_rounds_factor * log_k(k)
    sample = sample_union(session, b, t, seed)
    witness = min_vertex_cover(sample.graph, limits)
    _check_cover(witness, sample.graph)
    return AlgorithmResult(
        answer=True,
        witness=witness,
        stats=_delta(session, before),
        rounds_used=t,
        constants=constants,
        colorings=sample.provenance,
    )


def vertex_cover(
    session: OracleSession,
    k: int,
    seed: int = 0,
    constants: AlgorithmConstants = DEFAULT_CONSTANTS,
    limits: SolverLimits = DEFAULT_LIMITS,
) -> AlgorithmResult:
    """Find a vertex cover of size at most k, or report none exists.

    A matching of k+1 disjoint edges certifies that no k-cover exists;
    otherwise the cover is at most 2k and the promised algorithm finishes.
    """
    if k < 1:
        raise ValueError("k must be positive")
    before = session.stats()
    phase1 = packing(session, k + 1, seed=seed, constants=constants, limits=limits)
    colorings = phase1.colorings
    if phase1.answer:
        return AlgorithmResult(
            answer=False,
            witness=None,
            stats=_delta(session, before),
            rounds_used=phase1.rounds_used,
            constants=constants,
            colorings=colorings,
        )
    phase2 = vc_promised(session, 2 * k, seed=seed, constants=constants, limits=limits)
    witness = phase2.witness
    assert isinstance(witness, tuple)
    answer = len(witness) <= k
    return AlgorithmResult(
        answer=answer,
        witness=witness if answer else None,
        stats=_delta(session, before),
        rounds_used=phase1.rounds_used + phase2.rounds_used,
        constants=constants,
        colorings=colorings + phase2.colorings,
    )


def vc_decision(
    session: OracleSession,
    k: int,
    seed: int = 0,
    constants: AlgorithmConstants = DEFAULT_CONSTANTS,
    limits: SolverLimits = DEFAULT_LIMITS,
) -> AlgorithmResult:
    """Decide whether a vertex cover of size at most k exists, using only
    existence (yes/no) queries.

    Each round colors at 100*k^4 colors, builds the class quotient graph,
    and votes on the quotient's exact cover size; the majority wins (ties
    resolve to "no").
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if session.d != 2:
        raise ValueError("vertex cover needs a graph (d=2)")
    before = session.stats()
    b = max(1, constants.vc_decision_colors_factor * k**4)
    rounds = constants.boost_c * log_k(k)
    votes = 0
    colorings = []
    for r in range(rounds):
        c = random_coloring(session.n, b, rng_from(seed, "round", r))
        colorings.append(c)
        quotient = quotient_existence(session, c)
        if len(min_vertex_cover(quotient.graph, limits)) <= k:
            votes += 1
    return AlgorithmResult(
        answer=2 * votes > rounds,
        witness=None,
        stats=_delta(session, before),
        rounds_used=rounds,
        constants=constants,
        colorings=tuple(colorings),
    )


# -- hitting set -------------------------------------------------------


def hs_promised(
    session: OracleSession,
    k: int,
    seed: int = 0,
    constants: AlgorithmConstants = DEFAULT_CONSTANTS,
    limits: SolverLimits = DEFAULT_LIMITS,
) -> AlgorithmResult:
    """Minimum hitting set under the promise that it has at most k vertices.

    The union of alpha*log k samples at beta*k colors retains, with high
    probability, every edge without a large sunflower core and keeps every
    minimal large core significant, which is exactly what makes its minimum
    hitting set transfer back to the hidden instance.
    """
    if k < 1:
        raise ValueError("k must be positive")
    d = session.d
    before = session.stats()
    b = constants.hs_beta_for(d) * k
    t = constants.hs_alpha_for(d) * log_k(k)
    sample = sample_union(session, b, t, seed)
    witness = min_hitting_set(sample.graph, limits)
    _check_cover(witness, sample.graph)
    return AlgorithmResult(
        answer=True,
        witness=witness,
        stats=_delta(session, before),
        rounds_used=t,
        constants=constants,
        colorings=sample.provenance,
    )


def hitting_set(
    session: OracleSession,
    k: int,
    seed: int = 0,
    constants: AlgorithmConstants = DEFAULT_CONSTANTS,
    limits: SolverLimits = DEFAULT_LIMITS,
) -> AlgorithmResult:
    """Find a hitting set of size at most k, or report none exists.

    A packing of k+1 disjoint edges certifies that no k-set hits everything;
    otherwise the optimum is at most d*k and the promised algorithm runs
    with that bound.
    """
    if k < 1:
        raise ValueError("k must be positive")
    d = session.d
    before = session.stats()
    phase1 = packing(session, k + 1, seed=seed, constants=constants, limits=limits)
    if phase1.answer:
        return AlgorithmResult(
            answer=False,
            witness=None,
            stats=_delta(session, before),
            rounds_used=phase1.rounds_used,
            constants=constants,
            colorings=phase1.colorings,
        )
    phase2 = hs_promised(session, d * k, seed=seed, constants=constants, limits=limits)
    witness = phase2.witness
    assert isinstance(witness, tuple)
    answer = len(witness) <= k
    return AlgorithmResult(
        answer=answer,
        witness=witness if answer else None,
        stats=_delta(session, before),
        rounds_used=phase1.rounds_used + phase2.rounds_used,
        constants=constants,
        colorings=phase1.colorings + phase2.colorings,
    )


def hs_decision(
    session: OracleSession,
    k: int,
    seed: int = 0,
    constants: AlgorithmConstants = DEFAULT_CONSTANTS,
    limits: SolverLimits = DEFAULT_LIMITS,
) -> AlgorithmResult:
    """Decide whether a hitting set of size at most k exists, via existence
    queries on class quotients and a majority vote (ties resolve to "no")."""
    if k < 0:
        raise ValueError("k must be non-negative")
    d = session.d
    before = session.stats()
    b = max(1, constants.hs_decision_gamma_for(d) * k ** (2 * d))
    rounds = constants.boost_c * log_k(k)
    votes = 0
    colorings = []
    for r in range(rounds):
        c = random_coloring(session.n, b, rng_from(seed, "round", r))
        colorings.append(c)
        quotient = quotient_existence(session, c)
        if len(min_hitting_set(quotient.graph, limits)) <= k:
            votes += 1
    return AlgorithmResult(
        answer=2 * votes > rounds,
        witness=None,
        stats=_delta(session, before),
        rounds_used=rounds,
        constants=constants,
        colorings=tuple(colorings),
    )


# -- cut ---------------------------------------------------------------


def cut(
    session: OracleSession,
    t: int,
    k: int,
    seed: int = 0,
    constants: AlgorithmConstants = DEFAULT_CONSTANTS,
    limits: SolverLimits = DEFAULT_LIMITS,
) -> AlgorithmResult:
    """Find a t-partition crossed by at least k edges, or report none exists.

    Each round samples a subgraph at 100*k^2 colors and maximizes the cut
    over partitions that keep each color class whole; any partition achieving
    k on sampled edges achieves at least k on the hidden graph, so the first
    round reaching k settles the answer (the best round is reported).
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    if k < 1:
        raise ValueError("k must be positive")
    if session.d != 2:
        raise ValueError("cut needs a graph (d=2)")
    before = session.stats()
    b = constants.cut_colors_factor * k * k
    rounds = constants.boost_c * log_k(k)
    best_size = -1
    best_partition: tuple[int, ...] | None = None
    colorings = []
    for r in range(rounds):
        c = random_coloring(session.n, b, rng_from(seed, "round", r))
        colorings.append(c)
        sample = sample_subhypergraph(session, c)
        size, partition = _cut_round(sample.graph, c, t, limits)
        if size > best_size:
            best_size = size
            best_partition = partition
    answer = best_size >= k
    return AlgorithmResult(
        answer=answer,
        witness=best_partition if answer else None,
        stats=_delta(session, before),
        rounds_used=rounds,
        constants=constants,
        colorings=tuple(colorings),
    )


def _cut_round(
    sampled: Hypergraph, c: HashColoring, t: int, limits: SolverLimits
) -> tuple[int, tuple[int, ...]]:
    """Exact max t-cut of the sampled edges over whole-class assignments."""
    # contract each color class to one node; sampled edges join distinct classes
    color_of = c.color
    used_colors = sorted({color_of[v] for e in sampled.edges for v in e})
    if not used_colors:
        return 0, tuple([0] * c.n)
    index = {col: i for i, col in enumerate(used_colors)}
    contracted = Hypergraph(
        n=len(used_colors),
        d=2,
        edges=tuple(
            sorted(
                tuple(sorted((index[color_of[u]], index[color_of[v]])))
                for u, v in sampled.edges
            )
        ),
    )
    class_parts, size = max_t_cut(contracted, t, limits)
    lifted = tuple(
        class_parts[index[color_of[v]]] if color_of[v] in index else 0 for v in range(c.n)
    )
    # verify against the sampled evidence
    crossing = sum(1 for u, v in sampled.edges if lifted[u] != lifted[v])
    if crossing != size:
        raise AssertionError("lifted partition does not reproduce the class cut; bug")
    return size, lifted


def cut_decision(
    session: OracleSession,
    t: int,
    k: int,
    seed: int = 0,
    constants: AlgorithmConstants = DEFAULT_CONSTANTS,
    limits: SolverLimits = DEFAULT_LIMITS,
) -> AlgorithmResult:
    """Decide whether some t-partition is crossed by at least k edges, using
    existence queries only.

    The class quotient is sound for this one-sided question: a quotient
    partition cutting k quotient edges lifts to a hidden cut of at least k,
    so the answer is yes exactly when some round's quotient reaches k.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    if k < 1:
        raise ValueError("k must be positive")
    if session.d != 2:
        raise ValueError("cut needs a graph (d=2)")
    before = session.stats()
    b = constants.cut_colors_factor * k * k
    rounds = constants.boost_c * log_k(k)
    best = -1
    colorings = []
    for r in range(rounds):
        c = random_coloring(session.n, b, rng_from(seed, "round", r))
        colorings.append(c)
        quotient = quotient_existence(session, c)
        _, size = max_t_cut(quotient.graph, t, limits) if quotient.graph.m else ((), 0)
        best = max(best, size)
    return AlgorithmResult(
        answer=best >= k,
        witness=None,
        stats=_delta(session, before),
        rounds_used=rounds,
        constants=constants,
        colorings=tuple(colorings),
    )


def cut_deterministic(
    session: OracleSession,
    t: int,
    k: int,
    constants: AlgorithmConstants = DEFAULT_CONSTANTS,
    limits: SolverLimits = DEFAULT_LIMITS,
) -> AlgorithmResult:
    """Seed-free cut: exhaust an injective-family of colorings.

    Some member colors the 2k endpoints of any fixed k-edge cut injectively,
    so the best class-level cut over the family is exact."""
    if t < 2:
        raise ValueError("t must be at least 2")
    if k < 1:
        raise ValueError("k must be positive")
    if session.d != 2:
        raise ValueError("cut needs a graph (d=2)")
    before = session.stats()
    s = 2 * k
    range_b = max(constants.cut_colors_factor * k * k, 4 * s * s)
    family = perfect_family(session.n, s, range_b)
    best_size = -1
    best_partition: tuple[int, ...] | None = None
    for c in family.members:
        sample = sample_subhypergraph(session, c)
        size, partition = _cut_round(sample.graph, c, t, limits)
        if size > best_size:
            best_size = size
            best_partition = partition
    answer = best_size >= k
    return AlgorithmResult(
        answer=answer,
        witness=best_partition if answer else None,
        stats=_delta(session, before),
        rounds_used=len(family.members),
        constants=constants,
        colorings=family.members,
    )
