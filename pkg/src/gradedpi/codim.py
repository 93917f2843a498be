"""Exact graded codimension sequences via streaming evaluation ranks.

For a degree composition (n_1, ..., n_s) the component codimension is the
rank of the matrix whose rows are the n! multilinear monomials and whose
columns are the coordinates of their evaluations at every degree-matching
basis tuple.  Columns are generated tuple by tuple and folded into an
orthogonal-complement tracker, so work stops as soon as the rank saturates
at n!; surviving tracker rows are exact graded identities of the component.
"""

from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product as iproduct
from math import factorial, prod

from .algebra import GradedAlgebra
from .groups import GroupElement, ValidationError
from .linalg import OrthogonalComplementTracker, SparseVec
from .polynomials import CeilingExceeded, GradedPolynomial, GradedVariable

DegreeComposition = tuple[int, ...]

DEFAULT_N_CEILING = 7
DEFAULT_TUPLE_CEILING = 5_000_000


def compositions(n: int, s: int):
    """All length-s tuples of non-negative integers summing to n, lexicographic."""
    if s == 0:
        if n == 0:
            yield ()
        return
    if s == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, s - 1):
            yield (first,) + rest


def multinomial(n: int, comp: DegreeComposition) -> int:
    out = factorial(n)
    for c in comp:
        out //= factorial(c)
    return out


def component_roster(group, comp: DegreeComposition) -> tuple[GradedVariable, ...]:
    """Variables x_1 ... x_n with the first n_1 of degree g_1, and so on."""
    if len(comp) != group.order:
        raise ValidationError(
            f"composition length {len(comp)} does not match the group order {group.order}"
        )
    roster = []
    i = 0
    for g, count in zip(group.elements, comp):
        for _ in range(count):
            i += 1
            roster.append(GradedVariable(f"x{i}", g))
    return tuple(roster)


def enumerate_monomials(group, comp: DegreeComposition) -> list[GradedPolynomial]:
    """The n! multilinear monomials of the component, in deterministic order."""
    roster = component_roster(group, comp)
    return [
        GradedPolynomial.monomial(roster, word)
        for word in permutations(range(len(roster)))
    ]


def _slot_degrees(group, comp: DegreeComposition) -> list[GroupElement]:
    slots = []
    for g, count in zip(group.elements, comp):
        slots.extend([g] * count)
    return slots


def component_rank(
    a: GradedAlgebra,
    slot_degrees: list[GroupElement],
    max_tuples: int = DEFAULT_TUPLE_CEILING,
    collect_identities: bool = False,
):
    """Rank of the evaluation matrix for an explicit slot-degree sequence.

    Returns the rank, or (rank, identities) where identities are coefficient
    vectors over the monomial list that vanish on every matching tuple.
    """
    n = len(slot_degrees)
    words = list(permutations(range(n)))
    word_pos = {w: i for i, w in enumerate(words)}
    candidates = [a.component_indices(g) for g in slot_degrees]
    n_fact = len(words)
    tracker = OrthogonalComplementTracker(n_fact, a.one)

    if all(candidates):
        total = prod(len(c) for c in candidates)
        if total > max_tuples:
            raise CeilingExceeded(
                f"component needs {total} basis tuples (ceiling {max_tuples}); "
                "raise the tuple ceiling to proceed"
            )
        for tup in iproduct(*candidates):
            columns = _tuple_columns(a, tup, n, word_pos)
            for coord in sorted(columns):
                tracker.process_column(columns[coord])
                if tracker.rank == n_fact:
                    break
            if tracker.rank == n_fact:
                break
    rank = tracker.rank
    if collect_identities:
        return rank, (words, tracker.surviving())
    return rank


def _tuple_columns(a, tup, n, word_pos) -> dict[int, SparseVec]:
    """Columns contributed by one basis tuple, keyed by output coordinate."""
    columns: dict[int, SparseVec] = {}
    slots = list(range(n))

    def walk(prefix: tuple[int, ...], vec: SparseVec, remaining: tuple[int, ...]):
        if not remaining:
            w = word_pos[prefix]
            for coord, s in vec.items():
                columns.setdefault(coord, {})[w] = s
            return
        for idx, slot in enumerate(remaining):
            nxt = a.multiply_by_basis(vec, tup[slot]) if prefix else a.basis_vector(tup[slot])
            if not nxt:
                continue
            walk(prefix + (slot,), nxt, remaining[:idx] + remaining[idx + 1 :])

    walk((), {}, tuple(slots))
    return columns


def codim_component(
    a: GradedAlgebra,
    comp: DegreeComposition,
    max_tuples: int = DEFAULT_TUPLE_CEILING,
) -> int:
    """dim of the component of multilinear graded polynomials mod identities."""
    slots = _slot_degrees(a.group, comp)
    # short-circuit: a required degree with zero component kills everything
    for g, count in zip(a.group.elements, comp):
        if count and not a.component_indices(g):
            return 0
    return component_rank(a, slots, max_tuples=max_tuples)


@dataclass
class CodimRow:
    n: int
    components: dict[DegreeComposition, int]
    graded: int
    ordinary: int | None = None


@dataclass
class CodimTable:
    group_orders: tuple[int, ...]
    group_order: int
    rows: list[CodimRow]

    def row(self, n: int) -> CodimRow:
        for r in self.rows:
            if r.n == n:
                return r
        raise KeyError(n)


def _component_job(payload):
    a, comp, max_tuples = payload
    return codim_component(a, comp, max_tuples=max_tuples)


def _map_jobs(fn, payloads, workers: int):
    if workers <= 1 or len(payloads) <= 1:
        return [fn(p) for p in payloads]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as ex:
        return list(ex.map(fn, payloads))


def graded_codimension(
    a: GradedAlgebra,
    n: int,
    workers: int = 1,
    max_tuples: int = DEFAULT_TUPLE_CEILING,
) -> CodimRow:
    """Codimension row for degree n: per-composition values and their
    multinomial-weighted sum."""
    if n < 1:
        raise ValidationError(f"degree must be >= 1, got {n}")
    comps = list(compositions(n, a.group.order))
    payloads = [(a, comp, max_tuples) for comp in comps]
    values = _map_jobs(_component_job, payloads, workers)
    components = dict(zip(comps, values))
    graded = sum(multinomial(n, comp) * c for comp, c in components.items())
    return CodimRow(n=n, components=components, graded=graded)


def ordinary_codimension(
    a: GradedAlgebra, n: int, max_tuples: int = DEFAULT_TUPLE_CEILING
) -> int:
    """Ordinary codimension: the graded codimension of the trivial regrading."""
    trivial = a.with_trivial_grading()
    return codim_component(trivial, (n,), max_tuples=max_tuples)


def build_table(
    a: GradedAlgebra,
    max_n: int,
    include_ordinary: bool = False,
    workers: int = 1,
    ceiling_n: int = DEFAULT_N_CEILING,
    max_tuples: int = DEFAULT_TUPLE_CEILING,
) -> CodimTable:
    if max_n > ceiling_n:
        raise CeilingExceeded(
            f"max degree {max_n} exceeds the configured ceiling {ceiling_n}; "
            "pass a larger ceiling to proceed"
        )
    rows = []
    for n in range(1, max_n + 1):
        row = graded_codimension(a, n, workers=workers, max_tuples=max_tuples)
        if include_ordinary:
            row.ordinary = ordinary_codimension(a, n, max_tuples=max_tuples)
        rows.append(row)
    return CodimTable(
        group_orders=a.group.orders, group_order=a.group.order, rows=rows
    )


def check_sandwich(table: CodimTable) -> list[dict]:
    """Verify ordinary <= graded <= |G|^n * ordinary for every computed row.

    A violation raises: exact computation admits no tolerance here.
    """
    report = []
    problems = []
    for row in table.rows:
        if row.ordinary is None:
            continue
        upper = table.group_order**row.n * row.ordinary
        ok = row.ordinary <= row.graded <= upper
        report.append(
            {
                "n": row.n,
                "ordinary": row.ordinary,
                "graded": row.graded,
                "upper": upper,
                "ok": ok,
            }
        )
        if not ok:
            problems.append(
                f"degree {row.n}: sandwich violated "
                f"({row.ordinary} <= {row.graded} <= {upper} fails)"
            )
    if problems:
        raise ValidationError(problems)
    return report


def exponent_trend(table: CodimTable, d: int) -> list[dict]:
    """n-th roots and successive ratios of the graded codimensions.

    Display-only decimals next to the structural exponent d; no convergence
    is asserted at desk scale.
    """
    rows = []
    for i, row in enumerate(table.rows):
        root = row.graded ** (1.0 / row.n) if row.graded else 0.0
        nxt = table.rows[i + 1].graded if i + 1 < len(table.rows) else None
        ratio = (nxt / row.graded) if (nxt is not None and row.graded) else None
        rows.append({"n": row.n, "graded": row.graded, "root": root, "ratio": ratio, "d": d})
    return rows
