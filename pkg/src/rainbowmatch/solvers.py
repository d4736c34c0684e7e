"""Constructive rainbow-matching solvers: the Hall-type size check, the
longest-edge algorithm with a full step trace, the greedy bipartite solver,
the shifted-pair construction on K_n, the 3-partite link reduction, the
degree-matrix permutation solver, and the prefix-block procedure."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (GENERAL, PARTITE, Edge, Family, GroundSet, Hypergraph,
                   RainbowMatching)
from .errors import InputError, PreconditionError, TheoremViolationError
from .extremal import f_r2
from .shifting import is_shifted, pullback_rainbow, shifted_closure


def _require_kind(family: Family, kind: str, r: int | None = None) -> None:
    if family.ground.kind != kind:
        raise InputError(f"needs a {kind} ground, got {family.ground.kind}")
    if r is not None and family.ground.r != r:
        raise InputError(f"needs uniformity r={r}, got r={family.ground.r}")


@dataclass(frozen=True)
class HallCheck:
    """Result of the Hall-type size condition; falsy when violated."""

    ok: bool
    witness: tuple[int, ...] | None = None  # violating member indices (0-based)
    total: int | None = None                # their size sum
    bound: int | None = None                # the bound n * |I| * (|I| - 1)

    def __bool__(self) -> bool:
        return self.ok


def check_hall_condition(family: Family) -> HallCheck:
    """True iff sum of |F_i| over I strictly exceeds n|I|(|I|-1) for every
    nonempty I. Only the ascending-size prefixes need checking: for fixed |I|
    the minimum sum is attained by the smallest members."""
    _require_kind(family, PARTITE, r=2)
    n = family.ground.n
    order = sorted(range(family.k), key=lambda i: (len(family[i]), i))
    total = 0
    for j, idx in enumerate(order, start=1):
        total += len(family[idx])
        bound = n * j * (j - 1)
        if total <= bound:
            return HallCheck(False, tuple(sorted(order[:j])), total, bound)
    return HallCheck(True)


@dataclass(frozen=True)
class StepRecord:
    """State and choice of one step of the longest-edge algorithm.

    a and b are the least uncovered indices on sides M and W (0-based); the
    initial-segment set R_t is {m_i : i < a} + {w_j : j < b}. A halt step
    carries edge=None. The short flag classifies the chosen edge against the
    final initial-segment set of the whole run.
    """

    t: int
    member: int
    a: int
    b: int
    covered_m: tuple[int, ...]
    covered_w: tuple[int, ...]
    edge: Edge | None
    length: int | None = None
    tail_side: int | None = None  # 0: tail is m_a, 1: tail is w_b
    short: bool | None = None

    @property
    def r_m(self) -> tuple[int, ...]:
        return tuple(range(self.a))

    @property
    def r_w(self) -> tuple[int, ...]:
        return tuple(range(self.b))


@dataclass(frozen=True)
class AlgoTrace:
    """Full record of a longest-edge run: per-step states, the outcome, and
    the processing order (original member indices, ascending by size)."""

    ground: GroundSet
    order: tuple[int, ...]
    steps: tuple[StepRecord, ...]
    matching: RainbowMatching | None  # in original member order when successful
    halt_t: int | None
    final_a: int
    final_b: int

    @property
    def succeeded(self) -> bool:
        return self.matching is not None

    def to_text(self) -> str:
        """Line-oriented rendering with 1-based m_i / w_j labels."""
        lines = []
        for rec in self.steps:
            lines.append(f"R_{rec.t} = " + _label_set(rec.r_m, rec.r_w))
            if rec.edge is None:
                lines.append(f"HALT at t={rec.t}")
            else:
                lines.append(f"e_{rec.t} = m_{rec.edge[0] + 1} w_{rec.edge[1] + 1}")
        if self.succeeded:
            lines.append("SUCCESS")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        steps = []
        for rec in self.steps:
            entry: dict = {
                "t": rec.t,
                "member": rec.member + 1,
                "a": rec.a + 1,
                "b": rec.b + 1,
                "R": {"m": [i + 1 for i in rec.r_m], "w": [j + 1 for j in rec.r_w]},
                "Z": {"m": [i + 1 for i in rec.covered_m],
                      "w": [j + 1 for j in rec.covered_w]},
                "edge": None,
            }
            if rec.edge is not None:
                entry["edge"] = [rec.edge[0] + 1, rec.edge[1] + 1]
                entry["length"] = rec.length
                if rec.tail_side == 0:
                    entry["tail"] = f"m_{rec.a + 1}"
                    entry["head"] = f"w_{rec.edge[1] + 1}"
                else:
                    entry["tail"] = f"w_{rec.b + 1}"
                    entry["head"] = f"m_{rec.edge[0] + 1}"
                entry["short"] = rec.short
            steps.append(entry)
        if self.succeeded:
            outcome: dict = {
                "status": "success",
                "matching": [[e[0] + 1, e[1] + 1] for e in self.matching.choices],
            }
        else:
            outcome = {"status": "halt", "t": self.halt_t}
        return {
            "schema_version": 1,
            "kind": "hall_trace",
            "n": self.ground.n,
            "order": [i + 1 for i in self.order],
            "steps": steps,
            "outcome": outcome,
            "final_R": {"m": list(range(1, self.final_a + 1)),
                        "w": list(range(1, self.final_b + 1))},
        }


def _label_set(m_indices, w_indices) -> str:
    labels = [f"m_{i + 1}" for i in m_indices] + [f"w_{j + 1}" for j in w_indices]
    return "{" + ", ".join(labels) + "}"


def hall_size_algorithm(family: Family) -> AlgoTrace:
    """Run the longest-edge algorithm on a shifted bipartite family.

    Members are processed in ascending size order. At step t the edges meeting
    previously chosen vertices are discarded and a longest remaining edge is
    taken, length being |(q - b_t) - (p - a_t)| for an edge (m_p, w_q). Among
    longest edges the one through w_{b_t} is preferred, then the
    lexicographically least. Halts at step t if no edge remains.
    """
    _require_kind(family, PARTITE, r=2)
    for i, h in enumerate(family.members):
        if not is_shifted(h):
            raise PreconditionError(f"member {i + 1} is not shifted; "
                                    "run shifted_closure first")
    n, k = family.ground.n, family.k
    order = tuple(sorted(range(k), key=lambda i: (len(family[i]), i)))
    covered_m: set[int] = set()
    covered_w: set[int] = set()
    raw: list[dict] = []
    halt_t = None
    for t, idx in enumerate(order, start=1):
        a = _first_free(covered_m, n)
        b = _first_free(covered_w, n)
        state = {"t": t, "member": idx, "a": a, "b": b,
                 "covered_m": tuple(sorted(covered_m)),
                 "covered_w": tuple(sorted(covered_w))}
        cand = [e for e in family[idx].edges
                if e[0] not in covered_m and e[1] not in covered_w]
        if not cand:
            halt_t = t
            raw.append(state | {"edge": None})
            break
        length = lambda e: abs((e[1] - b) - (e[0] - a))
        best_len = max(length(e) for e in cand)
        best = [e for e in cand if length(e) == best_len]
        through_w = [e for e in best if e[1] == b]
        e = min(through_w) if through_w else min(best)
        if e[0] != a and e[1] != b:
            raise TheoremViolationError(
                "a longest edge avoids both first uncovered vertices although "
                "the member is shifted", instance=family)
        raw.append(state | {"edge": e, "length": best_len,
                            "tail_side": 0 if e[0] == a else 1})
        covered_m.add(e[0])
        covered_w.add(e[1])

    final_a = raw[-1]["a"] if halt_t is not None else _first_free(covered_m, n)
    final_b = raw[-1]["b"] if halt_t is not None else _first_free(covered_w, n)

    steps = []
    for state in raw:
        short = None
        if state["edge"] is not None:
            short = state["edge"][0] < final_a and state["edge"][1] < final_b
        steps.append(StepRecord(**state, short=short))

    _assert_tail_observation(steps, family)

    matching = None
    if halt_t is None:
        choices: list[Edge | None] = [None] * k
        for rec in steps:
            choices[rec.member] = rec.edge
        matching = RainbowMatching(tuple(choices))  # type: ignore[arg-type]
        if not matching.is_valid_for(family):
            raise TheoremViolationError("trace output is not a rainbow matching",
                                        instance=family)
    return AlgoTrace(family.ground, order, tuple(steps), matching, halt_t,
                     final_a, final_b)


def _first_free(covered: set[int], n: int) -> int:
    i = 0
    while i < n and i in covered:
        i += 1
    return i


def _assert_tail_observation(steps, family) -> None:
    # tail(e_i) must lie in R_j for every later step j
    for i, early in enumerate(steps):
        if early.edge is None:
            continue
        for later in steps[i + 1:]:
            if early.tail_side == 0:
                ok = early.edge[0] < later.a
            else:
                ok = early.edge[1] < later.b
            if not ok:
                raise TheoremViolationError(
                    f"tail of e_{early.t} escapes R_{later.t}", instance=family)


def greedy_bipartite(family: Family) -> RainbowMatching | None:
    """Forward pass: pick distinct side-M vertices v_1..v_k where member i,
    restricted away from the earlier picks, still has degree >= k-i+1 at v_i
    (maximum-degree vertex, ties to the smallest index). Backward pass: give
    each v_i an edge avoiding the later choices. Guaranteed to succeed when
    every member is larger than (k-1)n; returns None when a pass gets stuck.
    """
    _require_kind(family, PARTITE, r=2)
    n, k = family.ground.n, family.k
    if k > n:
        return None
    picked: list[int] = []
    for i in range(k):
        banned = set(picked)
        degs = [0] * n
        for e in family[i].edges:
            if e[0] not in banned:
                degs[e[0]] += 1
        v = max((u for u in range(n) if u not in banned),
                key=lambda u: (degs[u], -u))
        if degs[v] < k - i:
            return None
        picked.append(v)
    choices: list[Edge | None] = [None] * k
    used_w: set[int] = set()
    for i in range(k - 1, -1, -1):
        cand = [e for e in family[i].edges if e[0] == picked[i] and e[1] not in used_w]
        if not cand:
            return None
        e = min(cand)
        choices[i] = e
        used_w.add(e[1])
    return RainbowMatching(tuple(choices))  # type: ignore[arg-type]


def meshulam_r2(family: Family) -> RainbowMatching:
    """Rainbow matching for graph families on K_n above the exact threshold.

    Shifts the family; the shifted member i must then contain the edge
    (v_i, v_{2k-i+1}), and those k edges form a rainbow matching which is
    pulled back through the shift log.
    """
    _require_kind(family, GENERAL, r=2)
    n, k = family.ground.n, family.k
    if n < 2 * k:
        raise PreconditionError(f"needs n >= 2k, got n={n}, k={k}")
    bound = f_r2(n, k)
    for i, h in enumerate(family.members):
        if len(h) <= bound:
            raise PreconditionError(
                f"member {i + 1} has {len(h)} edges; needs more than {bound}")
    shifted, log = shifted_closure(family)
    choices = []
    for i in range(k):
        e = (i, 2 * k - i - 1)
        if e not in shifted[i]:
            raise TheoremViolationError(
                f"shifted member {i + 1} misses the edge (v_{i + 1}, v_{2 * k - i})",
                instance=family)
        choices.append(e)
    return pullback_rainbow(log, family, RainbowMatching(tuple(choices)))


def r3_solve(family: Family) -> RainbowMatching:
    """Rainbow matching for 3-partite families with every member larger than
    (k-1)n^2.

    Shifts the family, assigns to each of the first k vertices of side 1 the
    remaining member of maximal degree there, takes the bipartite links of
    those vertices, solves the link family with the longest-edge algorithm
    (its size condition holds under the precondition), lifts the 2-edges back
    to 3-edges and pulls the result back through the shift log.
    """
    _require_kind(family, PARTITE, r=3)
    n, k = family.ground.n, family.k
    bound = (k - 1) * n * n
    for i, h in enumerate(family.members):
        if len(h) <= bound:
            raise PreconditionError(
                f"member {i + 1} has {len(h)} edges; needs more than {bound}")
    shifted, log = shifted_closure(family)
    remaining = set(range(k))
    assign: list[int] = []
    for j in range(k):
        deg = {i: sum(1 for e in shifted[i].edges if e[0] == j) for i in remaining}
        best = max(remaining, key=lambda i: (deg[i], -i))
        assign.append(best)
        remaining.discard(best)
    bip = GroundSet(PARTITE, 2, n)
    links = Family([
        Hypergraph(bip, ((e[1], e[2]) for e in shifted[assign[j]].edges if e[0] == j))
        for j in range(k)
    ])
    trace = hall_size_algorithm(links)
    if not trace.succeeded:
        raise TheoremViolationError(
            f"link family halted at t={trace.halt_t} although the size "
            "condition is guaranteed", instance=family)
    choices: list[Edge | None] = [None] * k
    for j in range(k):
        p, q = trace.matching.choices[j]
        choices[assign[j]] = (j, p, q)
    return pullback_rainbow(log, family, RainbowMatching(tuple(choices)))  # type: ignore[arg-type]


@dataclass(frozen=True)
class DegreeMatrix:
    """Row i holds the degrees of w_1..w_n in member i. For shifted members
    every row is non-increasing, and row sums equal the member sizes."""

    entries: tuple[tuple[int, ...], ...]
    n: int

    def __post_init__(self) -> None:
        if not self.entries:
            raise InputError("degree matrix needs at least one row")
        for row in self.entries:
            if len(row) != self.n:
                raise InputError(f"row length {len(row)} != n={self.n}")
            if any(d < 0 or d > self.n for d in row):
                raise InputError("degrees must lie in [0, n]")

    @property
    def k(self) -> int:
        return len(self.entries)

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.entries)

    @classmethod
    def from_family(cls, family: Family, side: int = 1) -> "DegreeMatrix":
        _require_kind(family, PARTITE, r=2)
        n = family.ground.n
        entries = tuple(
            tuple(sum(1 for e in h.edges if e[side] == j) for j in range(n))
            for h in family.members)
        return cls(entries, n)


def _perfect_assignment(allowed: list[list[bool]]) -> tuple[int, ...] | None:
    """Kuhn's augmenting-path matcher on a k x k boolean matrix.
    Returns pi with pi[j] = the row assigned to column j, or None."""
    k = len(allowed)
    match_col = [-1] * k
    def augment(i: int, seen: list[bool]) -> bool:
        for j in range(k):
            if allowed[i][j] and not seen[j]:
                seen[j] = True
                if match_col[j] == -1 or augment(match_col[j], seen):
                    match_col[j] = i
                    return True
        return False
    for i in range(k):
        if not augment(i, [False] * k):
            return None
    return tuple(match_col)


def simple_algorithm(family: Family) -> RainbowMatching | None:
    """Degree-matrix solver for bipartite families with |F_i| >= i*n after
    ascending relabeling, valid for n > C(k, 2).

    Shifts, marks matrix cell (i, j) when member i has degree > k-j at w_j,
    finds a permutation through the marked cells by bipartite matching, and
    matches w_k down to w_1 greedily. When the size hypothesis holds a missing
    permutation is a guarantee violation; below the hypothesis it is reported
    as an ordinary failure (None).
    """
    _require_kind(family, PARTITE, r=2)
    n, k = family.ground.n, family.k
    if n <= math.comb(k, 2):
        raise PreconditionError(f"needs n > C(k, 2) = {math.comb(k, 2)}, got n={n}")
    order = sorted(range(k), key=lambda i: (len(family[i]), i))
    sizes_ok = all(len(family[order[i]]) >= (i + 1) * n for i in range(k))
    shifted, log = shifted_closure(family)
    dm = DegreeMatrix.from_family(shifted)
    allowed = [[dm.entries[order[i]][j] > k - (j + 1) for j in range(k)]
               for i in range(k)]
    pi = _perfect_assignment(allowed)
    if pi is None:
        if sizes_ok:
            raise TheoremViolationError(
                "no permutation through the marked degree-matrix cells although "
                "the size hypothesis holds", instance=family)
        return None
    choices: list[Edge | None] = [None] * k
    used_m: set[int] = set()
    for j in range(k - 1, -1, -1):
        member = order[pi[j]]
        cand = [e for e in shifted[member].edges
                if e[1] == j and e[0] not in used_m]
        if not cand:
            raise TheoremViolationError(
                f"greedy completion stuck at w_{j + 1} despite the marked cell",
                instance=family)
        e = min(cand)
        used_m.add(e[0])
        choices[member] = e
    return pullback_rainbow(log, family, RainbowMatching(tuple(choices)))  # type: ignore[arg-type]


def large_n_procedure(family: Family) -> RainbowMatching | None:
    """Prefix-block procedure for r-partite families above (k-1)n^(r-1).

    Shifts the family, takes the first k-1 vertices of each side as the block
    A, picks for the first k-1 members edges meeting A in exactly one fresh
    point x_i, finds a last-member edge avoiding all x_i, then pulls each
    earlier edge coordinatewise down into unused block vertices (membership is
    implied by shiftedness and verified). Succeeds for all large enough n; for
    small n any impossible selection step returns None.
    """
    _require_kind(family, PARTITE)
    g = family.ground
    n, r, k = g.n, g.r, family.k
    bound = (k - 1) * n ** (r - 1)
    for i, h in enumerate(family.members):
        if len(h) <= bound:
            raise PreconditionError(
                f"member {i + 1} has {len(h)} edges; needs more than {bound}")
    shifted, log = shifted_closure(family)
    if k == 1:
        return pullback_rainbow(log, family, RainbowMatching((shifted[0].edges[0],)))
    a = k - 1
    used_x: set[tuple[int, int]] = set()
    xs: list[tuple[int, int]] = []
    for i in range(k - 1):
        found = None
        for side in range(r):
            for v in range(a):
                if (side, v) in used_x:
                    continue
                if any(e[side] == v and all(e[s] >= a for s in range(r) if s != side)
                       for e in shifted[i].edges):
                    found = (side, v)
                    break
            if found:
                break
        if found is None:
            return None
        used_x.add(found)
        xs.append(found)
    ek_cands = [e for e in shifted[k - 1].edges
                if all(e[side] != v for side, v in xs)]
    if not ek_cands:
        return None
    # the k-1 block edges must tile the block, so prefer a last edge outside it
    ek = min(ek_cands, key=lambda e: (sum(1 for v in e if v < a), e))
    x_values: list[set[int]] = [set() for _ in range(r)]
    for s, v in xs:
        x_values[s].add(v)
    used: list[set[int]] = [set() for _ in range(r)]
    for s in range(r):
        if ek[s] < a:
            used[s].add(ek[s])
    choices: list[Edge | None] = [None] * k
    choices[k - 1] = ek
    for i in range(k - 1):
        side_i, x_i = xs[i]
        coords = []
        for s in range(r):
            if s == side_i:
                # descent cannot raise this coordinate; x_i itself is reserved
                opts = [u for u in range(x_i + 1) if u not in used[s]]
            else:
                free = [u for u in range(a) if u not in used[s]]
                nonx = [u for u in free if u not in x_values[s]]
                opts = nonx or free
            if not opts:
                return None
            coords.append(max(opts))
        e2 = tuple(coords)
        if e2 not in shifted[i]:
            raise TheoremViolationError(
                "shifted member misses a coordinatewise-dominated edge",
                instance=family)
        for s in range(r):
            used[s].add(e2[s])
        choices[i] = e2
    return pullback_rainbow(log, family, RainbowMatching(tuple(choices)))  # type: ignore[arg-type]
