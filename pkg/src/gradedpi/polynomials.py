"""Multilinear graded polynomials: alternation, central and witness polynomials.

A polynomial lives on a fixed roster of graded variables and is a sparse
exact linear combination of words, each word using every roster variable
exactly once.  This multilinear fragment is all the identity theory needs:
vanishing on basis tuples decides vanishing everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product as iproduct
from math import prod

from .algebra import GradedAlgebra
from .bsz import BlockConstruction, basis_partition
from .cyclo import CycloScalar
from .groups import GroupElement, ValidationError
from .linalg import SparseVec, vec_add_scaled


class CeilingExceeded(RuntimeError):
    """A configured resource ceiling would be exceeded; raise it explicitly."""


@dataclass(frozen=True)
class GradedVariable:
    name: str
    degree: GroupElement


Word = tuple[int, ...]


class GradedPolynomial:
    """Multilinear polynomial over a roster of graded variables."""

    __slots__ = ("roster", "terms")

    def __init__(self, roster: tuple[GradedVariable, ...], terms: dict[Word, CycloScalar]):
        names = [v.name for v in roster]
        if len(set(names)) != len(names):
            raise ValidationError("roster variable names must be unique")
        full = frozenset(range(len(roster)))
        clean: dict[Word, CycloScalar] = {}
        for word, coeff in terms.items():
            if frozenset(word) != full or len(word) != len(roster):
                raise ValidationError(
                    f"word {word} is not a permutation of the full roster"
                )
            if coeff:
                clean[word] = coeff
        self.roster = tuple(roster)
        self.terms = clean

    # -- basic algebra -------------------------------------------------------

    @staticmethod
    def monomial(roster, word=None, coeff=1) -> "GradedPolynomial":
        roster = tuple(roster)
        if word is None:
            word = tuple(range(len(roster)))
        c = coeff if isinstance(coeff, CycloScalar) else CycloScalar.rational(coeff)
        return GradedPolynomial(roster, {tuple(word): c})

    @staticmethod
    def unit() -> "GradedPolynomial":
        """Empty-roster unit for concatenation products."""
        return GradedPolynomial((), {(): CycloScalar.one()})

    def __add__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        if self.roster != other.roster:
            raise ValidationError("can only add polynomials over the same roster")
        terms = dict(self.terms)
        for w, c in other.terms.items():
            v = terms.get(w)
            v = c if v is None else v + c
            if v:
                terms[w] = v
            else:
                terms.pop(w, None)
        return GradedPolynomial(self.roster, terms)

    def __sub__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        return self + other.scale(-1)

    def scale(self, c) -> "GradedPolynomial":
        s = c if isinstance(c, CycloScalar) else CycloScalar.rational(c)
        if not s:
            return GradedPolynomial(self.roster, {})
        return GradedPolynomial(self.roster, {w: v * s for w, v in self.terms.items()})

    def concat(self, other: "GradedPolynomial") -> "GradedPolynomial":
        """Word-concatenation product; rosters must be disjoint by name."""
        mine = {v.name for v in self.roster}
        if any(v.name in mine for v in other.roster):
            raise ValidationError("concatenation requires disjoint variable rosters")
        shift = len(self.roster)
        roster = self.roster + other.roster
        terms: dict[Word, CycloScalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                terms[w1 + tuple(i + shift for i in w2)] = c1 * c2
        return GradedPolynomial(roster, terms)

    def rename(self, prefix: str) -> "GradedPolynomial":
        roster = tuple(
            GradedVariable(prefix + v.name, v.degree) for v in self.roster
        )
        return GradedPolynomial(roster, dict(self.terms))

    def permute_variables(self, mapping: dict[int, int]) -> "GradedPolynomial":
        """Substitute variable mapping[i] for variable i."""
        terms = {}
        for w, c in self.terms.items():
            nw = tuple(mapping.get(i, i) for i in w)
            v = terms.get(nw)
            v = c if v is None else v + c
            if v:
                terms[nw] = v
            else:
                terms.pop(nw, None)
        return GradedPolynomial(self.roster, terms)

    def __eq__(self, other):
        return (
            isinstance(other, GradedPolynomial)
            and self.roster == other.roster
            and self.terms == other.terms
        )

    def __len__(self):
        return len(self.terms)

    def canonical_text(self) -> str:
        """Deterministic text form: sorted words with scalar literals."""
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            c = self.terms[w]
            word = "*".join(self.roster[i].name for i in w)
            lit = c.literal()
            if lit == "1":
                parts.append(word)
            elif lit == "-1":
                parts.append(f"-{word}")
            elif " " in lit:
                parts.append(f"({lit})*{word}")
            else:
                parts.append(f"{lit}*{word}")
        return " + ".join(parts)

    def __repr__(self):
        text = self.canonical_text()
        if len(text) > 60:
            text = text[:57] + "..."
        return f"GradedPolynomial({len(self.roster)} vars, {len(self.terms)} terms: {text})"

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, algebra: GradedAlgebra, assignment: list[SparseVec]) -> SparseVec:
        """Exact evaluation; each assigned vector must be homogeneous of the
        variable's degree (zero vectors are allowed)."""
        if len(assignment) != len(self.roster):
            raise ValidationError("assignment length does not match the roster")
        for i, var in enumerate(self.roster):
            vec = assignment[i]
            if vec:
                deg = algebra.degree_of_vector(vec)
                if deg != var.degree:
                    raise ValidationError(
                        f"variable {var.name} has degree {list(var.degree.exponents)} "
                        "but was assigned an element of a different degree"
                    )
        total: SparseVec = {}
        memo: dict[Word, SparseVec] = {}
        for word in sorted(self.terms):
            if not word:
                raise ValidationError("cannot evaluate a constant word")
            coeff = self.terms[word]
            vec = None
            start = 0
            for k in range(len(word) - 1, 0, -1):
                got = memo.get(word[:k])
                if got is not None:
                    vec = got
                    start = k
                    break
            if vec is None:
                vec = assignment[word[0]]
                start = 1
                memo[word[:1]] = vec
            for pos in range(start, len(word)):
                vec = algebra.multiply(vec, assignment[word[pos]])
                memo[word[: pos + 1]] = vec
                if not vec:
                    break
            if vec:
                total = vec_add_scaled(total, vec, coeff)
        return total

    def is_identity(self, algebra: GradedAlgebra, max_assignments: int = 2_000_000) -> bool:
        """True iff the polynomial vanishes on every degree-matching basis tuple.

        Sound and complete for multilinear polynomials.
        """
        candidates = [algebra.component_indices(v.degree) for v in self.roster]
        count = prod((len(c) for c in candidates), start=1)
        if count > max_assignments:
            raise CeilingExceeded(
                f"identity check needs {count} basis tuples (ceiling {max_assignments}); "
                "raise the ceiling to proceed"
            )
        for combo in iproduct(*candidates):
            assignment = [algebra.basis_vector(i) for i in combo]
            if self.evaluate(algebra, assignment):
                return False
        return True


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alternate(poly: GradedPolynomial, var_indices) -> GradedPolynomial:
    """Alternation operator: signed sum over permutations of the given set.

    All listed variables must share one homogeneous degree so the result is
    a graded polynomial again.
    """
    var_indices = tuple(var_indices)
    degs = {poly.roster[i].degree for i in var_indices}
    if len(degs) > 1:
        raise ValidationError("alternation set mixes homogeneous degrees")
    if len(var_indices) <= 1:
        return poly
    total = GradedPolynomial(poly.roster, {})
    for perm in permutations(range(len(var_indices))):
        mapping = {var_indices[i]: var_indices[perm[i]] for i in range(len(var_indices))}
        image = poly.permute_variables(mapping)
        sign = _perm_sign(perm)
        total = total + (image if sign > 0 else image.scale(-1))
    return total


# -- Regev polynomials --------------------------------------------------------


def _regev_pattern(d: int) -> list[tuple[str, int]]:
    # word layout: x-block then y-block of sizes 1, 3, ..., 2d-1
    pattern = []
    pos = 0
    for j in range(1, d + 1):
        size = 2 * j - 1
        pattern.extend(("x", t) for t in range(pos, pos + size))
        pattern.extend(("y", t) for t in range(pos, pos + size))
        pos += size
    return pattern


def regev_polynomial(d: int, degrees: list[GroupElement] | None = None,
                     name_prefix: str = "") -> GradedPolynomial:
    """The doubly alternating central polynomial for d x d matrices.

    Signed sum over pairs of permutations of d^2 x-variables and d^2
    y-variables interleaved in odd-sized blocks; (d^2!)^2 terms.  With
    ``degrees`` the variables get the listed homogeneous degrees (the same
    list for the x- and the y-family); otherwise the polynomial is ungraded
    (trivial-group degrees).
    """
    if d < 1:
        raise ValidationError(f"matrix size must be >= 1, got {d}")
    n = d * d
    if degrees is None:
        from .groups import AbelianGroup

        e = AbelianGroup(()).identity()
        degrees = [e] * n
    if len(degrees) != n:
        raise ValidationError(f"need {n} degrees, got {len(degrees)}")
    roster = tuple(
        [GradedVariable(f"{name_prefix}x{i + 1}", degrees[i]) for i in range(n)]
        + [GradedVariable(f"{name_prefix}y{i + 1}", degrees[i]) for i in range(n)]
    )
    pattern = _regev_pattern(d)
    signed_perms = [(p, _perm_sign(p)) for p in permutations(range(n))]
    one = CycloScalar.one()
    terms: dict[Word, CycloScalar] = {}
    for sigma, s_sig in signed_perms:
        for tau, s_tau in signed_perms:
            word = tuple(
                sigma[slot] if fam == "x" else n + tau[slot] for fam, slot in pattern
            )
            terms[word] = one if s_sig * s_tau > 0 else -one
    return GradedPolynomial(roster, terms)


def graded_regev(construction: BlockConstruction,
                 partition: tuple[tuple[tuple[GroupElement, int, int], ...], ...],
                 p: int, name_prefix: str = "") -> GradedPolynomial:
    """Regev polynomial regraded by the degrees of the p-th partition slice.

    Variable i (in both families) carries the degree of the i-th slice
    element, pairing variables with slice elements in slice order.
    """
    if not 1 <= p <= len(partition):
        raise ValidationError(f"slice index {p} out of range 1..{len(partition)}")
    part = partition[p - 1]
    d = construction.matrix_rank * construction.spec.matrix_size
    if len(part) != d * d:
        raise ValidationError("partition slice size does not match the matrix rank")
    algebra = construction.algebra
    degrees = [algebra.degrees[construction.triple_index[t]] for t in part]
    return regev_polynomial(d, degrees, name_prefix=name_prefix)


def central_alternating_polynomial(
    construction: BlockConstruction, t: int
) -> tuple[GradedPolynomial, list[SparseVec], dict[tuple[int, GroupElement], tuple[int, ...]]]:
    """Product of t fresh copies of the per-slice Regev polynomials.

    Returns (polynomial, canonical assignment, alternating sets).  The
    canonical assignment sends each variable to its paired slice element, and
    evaluating there gives a central invertible value.  The alternating sets,
    keyed by (level, degree) with levels 1..2t, have sizes equal to the
    block's homogeneous dimensions, making the polynomial 2t-fold
    multialternating in the block's graded dimension.
    """
    if t < 1:
        raise ValidationError(f"need t >= 1, got {t}")
    partition = basis_partition(construction)
    algebra = construction.algebra
    poly = GradedPolynomial.unit()
    assignment: list[SparseVec] = []
    sets: dict[tuple[int, GroupElement], list[int]] = {}
    for copy in range(1, t + 1):
        for p in range(1, len(partition) + 1):
            factor = graded_regev(construction, partition, p, name_prefix=f"c{copy}s{p}_")
            base = len(poly.roster)
            poly = poly.concat(factor)
            part = partition[p - 1]
            n = len(part)
            for i, triple in enumerate(part):
                vec = construction.triple_vector(triple)
                assignment.append(vec)   # x_i
                deg = algebra.degrees[construction.triple_index[triple]]
                sets.setdefault((2 * copy - 1, deg), []).append(base + i)
            for i, triple in enumerate(part):
                assignment.append(construction.triple_vector(triple))  # y_i
                deg = algebra.degrees[construction.triple_index[triple]]
                sets.setdefault((2 * copy, deg), []).append(base + n + i)
    return poly, assignment, {k: tuple(v) for k, v in sets.items()}


# -- witness polynomials ------------------------------------------------------


@dataclass
class WitnessPolynomial:
    """Alternated bridge product certifying an admissible block chain."""

    polynomial: GradedPolynomial
    alternating_sets: dict[tuple[int, GroupElement], tuple[int, ...]]
    bridge_indices: tuple[int, ...]
    block_var_indices: tuple[tuple[int, ...], ...]
    block_assignments: tuple[tuple[SparseVec, ...], ...]


def witness_polynomial(
    constructions: list[BlockConstruction],
    t: int,
    bridge_degrees: list[GroupElement],
) -> WitnessPolynomial:
    """Bridge the blocks' central polynomials and alternate the merged sets.

    The underlying word is y_1 f_1 z_1 y_2 f_2 z_2 ... f_(k-1) z_(k-1) y_k f_k
    with 2k-1 bridge variables of the given degrees; the merged (level,
    degree) sets are then alternated, so the result is 2t-fold alternating
    with set sizes equal to the chain's combined graded dimension.  For a
    single block the bridge degenerates to one leading variable.
    """
    k = len(constructions)
    if k < 1:
        raise ValidationError("witness chain must contain at least one block")
    if len(bridge_degrees) != 2 * k - 1:
        raise ValidationError(
            f"need {2 * k - 1} bridge degrees for a chain of {k} blocks"
        )
    group = constructions[0].algebra.group
    poly = GradedPolynomial.unit()
    merged: dict[tuple[int, GroupElement], list[int]] = {}
    bridge_indices = []
    block_vars: list[tuple[int, ...]] = []
    block_assignments = []
    bridge_pos = 0

    def append_bridge(name: str):
        nonlocal poly, bridge_pos
        deg = bridge_degrees[bridge_pos]
        if deg.group != group:
            raise ValidationError("bridge degree outside the grading group")
        idx = len(poly.roster)
        poly = poly.concat(GradedPolynomial.monomial((GradedVariable(name, deg),)))
        bridge_indices.append(idx)
        bridge_pos += 1

    for bi, construction in enumerate(constructions, start=1):
        append_bridge(f"w{2 * bi - 1}")
        factor, assignment, sets = central_alternating_polynomial(construction, t)
        base = len(poly.roster)
        poly = poly.concat(factor.rename(f"b{bi}"))
        block_vars.append(tuple(range(base, base + len(factor.roster))))
        block_assignments.append(tuple(assignment))
        for (level, deg), idxs in sets.items():
            merged.setdefault((level, deg), []).extend(base + i for i in idxs)
        if bi < k:
            append_bridge(f"w{2 * bi}")

    ordered_keys = sorted(
        merged, key=lambda key: (key[0], group.index(key[1]))
    )
    for key in ordered_keys:
        poly = alternate(poly, merged[key])
    return WitnessPolynomial(
        polynomial=poly,
        alternating_sets={key: tuple(merged[key]) for key in ordered_keys},
        bridge_indices=tuple(bridge_indices),
        block_var_indices=tuple(block_vars),
        block_assignments=tuple(block_assignments),
    )


# -- lazy Regev evaluation on matrix units ------------------------------------


def regev_value_on_matrix_units(
    d: int,
    x_units: list[tuple[int, int]],
    y_units: list[tuple[int, int]],
) -> dict[tuple[int, int], int]:
    """Value of the d x d Regev polynomial on matrix-unit assignments.

    Computed without expanding the (d^2!)^2 terms: signed block-product
    tensors for each family are accumulated by a pruned depth-first search
    and then contracted through the interleaved word.  Returns the value as
    a sparse integer matrix {(row, col): coefficient}.
    """
    n = d * d
    if len(x_units) != n or len(y_units) != n:
        raise ValidationError(f"need {n} units per family")
    sizes = [2 * j - 1 for j in range(1, d + 1)]

    def family_tensor(units) -> dict[tuple, int]:
        out: dict[tuple, int] = {}
        used = [False] * n
        chosen: list[int] = []
        products: list[tuple[int, int]] = []
        inversions = 0

        def rec(block: int, pos: int, cur):
            nonlocal inversions
            if block == d:
                sign = -1 if inversions % 2 else 1
                key = tuple(products)
                out[key] = out.get(key, 0) + sign
                return
            size = sizes[block]
            for u in range(n):
                if used[u]:
                    continue
                r, c = units[u]
                if pos == 0:
                    nxt = (r, c)
                elif cur[1] == r:
                    nxt = (cur[0], c)
                else:
                    continue
                used[u] = True
                delta = sum(1 for v in chosen if v > u)
                inversions += delta
                chosen.append(u)
                if pos + 1 == size:
                    products.append(nxt)
                    rec(block + 1, 0, None)
                    products.pop()
                else:
                    rec(block, pos + 1, nxt)
                chosen.pop()
                inversions -= delta
                used[u] = False

        rec(0, 0, None)
        return out

    sx = family_tensor(x_units)
    sy = family_tensor(y_units)
    value: dict[tuple[int, int], int] = {}
    for kx, cx in sx.items():
        for ky, cy in sy.items():
            cur = None
            ok = True
            for bx, by in zip(kx, ky):
                for piece in (bx, by):
                    if cur is None:
                        cur = piece
                    elif cur[1] == piece[0]:
                        cur = (cur[0], piece[1])
                    else:
                        ok = False
                        break
                if not ok:
                    break
            if ok and cur is not None:
                value[cur] = value.get(cur, 0) + cx * cy
    return {k: v for k, v in value.items() if v}
