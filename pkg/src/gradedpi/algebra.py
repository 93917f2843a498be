"""Finite-dimensional graded algebras given by homogeneous structure constants.

An algebra is presented on a labeled homogeneous basis with a sparse product
table.  Construction validates the grading and associativity exhaustively;
the Wedderburn-Malcev shape (semisimple blocks plus nilpotent radical) is
user-supplied and machine-verified, never discovered.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .cyclo import CycloScalar, StructureError
from .groups import AbelianGroup, GroupElement, ValidationError
from .linalg import (
    EchelonBasis,
    SparseVec,
    kernel_basis,
    solve_linear,
    vec_add_scaled,
)


@dataclass(eq=False)
class GradedAlgebra:
    """Graded algebra on a homogeneous basis with sparse structure constants.

    ``structure[(i, j)]`` lists the nonzero coordinates of ``b_i * b_j``.
    Instances are immutable after construction and safe to share.
    """

    group: AbelianGroup
    conductor: int
    labels: tuple[str, ...]
    degrees: tuple[GroupElement, ...]
    structure: dict[tuple[int, int], tuple[tuple[int, CycloScalar], ...]]

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def one(self) -> CycloScalar:
        return CycloScalar.one(self.conductor)

    def basis_vector(self, i: int) -> SparseVec:
        return {i: self.one}

    def vector(self, coeffs: dict[str, object]) -> SparseVec:
        """Vector from a label -> scalar mapping."""
        out: SparseVec = {}
        for lab, c in coeffs.items():
            s = c if isinstance(c, CycloScalar) else CycloScalar.rational(c, self.conductor)
            if s:
                out[self.label_index[lab]] = s
        return out

    def multiply_basis(self, i: int, j: int) -> tuple[tuple[int, CycloScalar], ...]:
        return self.structure.get((i, j), ())

    def multiply(self, x: SparseVec, y: SparseVec) -> SparseVec:
        """Bilinear extension of the structure constants."""
        out: SparseVec = {}
        structure = self.structure
        for i, xi in x.items():
            for j, yj in y.items():
                terms = structure.get((i, j))
                if not terms:
                    continue
                c = xi * yj
                for k, s in terms:
                    v = out.get(k)
                    v = c * s if v is None else v + c * s
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def multiply_by_basis(self, x: SparseVec, j: int) -> SparseVec:
        """x * b_j, the common inner-loop case."""
        out: SparseVec = {}
        structure = self.structure
        for i, xi in x.items():
            terms = structure.get((i, j))
            if not terms:
                continue
            for k, s in terms:
                v = out.get(k)
                v = xi * s if v is None else v + xi * s
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return out

    @cached_property
    def component_index_map(self) -> dict[GroupElement, tuple[int, ...]]:
        comp: dict[GroupElement, list[int]] = {g: [] for g in self.group.elements}
        for i, d in enumerate(self.degrees):
            comp[d].append(i)
        return {g: tuple(v) for g, v in comp.items()}

    def component_indices(self, g: GroupElement) -> tuple[int, ...]:
        return self.component_index_map.get(g, ())

    def homogeneous_dims(self) -> tuple[int, ...]:
        """Dimension of each homogeneous component, in enumeration order."""
        return tuple(len(self.component_indices(g)) for g in self.group.elements)

    def degree_of_vector(self, v: SparseVec) -> GroupElement | None:
        """Common degree of a homogeneous vector, or None if mixed/zero."""
        degs = {self.degrees[i] for i in v}
        if len(degs) == 1:
            return degs.pop()
        return None

    @cached_property
    def identity_vector(self) -> SparseVec | None:
        """Two-sided identity element, if the algebra has one."""
        n = self.dim
        zero = self.one - self.one
        rows = []
        rhs = []
        for j in range(n):
            for k in range(n):
                left = [zero] * n
                right = [zero] * n
                for i in range(n):
                    for kk, s in self.multiply_basis(i, j):
                        if kk == k:
                            left[i] = left[i] + s
                    for kk, s in self.multiply_basis(j, i):
                        if kk == k:
                            right[i] = right[i] + s
                want = self.one if k == j else zero
                rows.append(left)
                rhs.append(want)
                rows.append(right)
                rhs.append(want)
        sol = solve_linear(rows, rhs, self.one)
        if sol is None:
            return None
        return {i: c for i, c in enumerate(sol) if c}

    def with_trivial_grading(self) -> "GradedAlgebra":
        """Same algebra regraded by the trivial group."""
        triv = AbelianGroup(())
        e = triv.identity()
        return GradedAlgebra(
            group=triv,
            conductor=self.conductor,
            labels=self.labels,
            degrees=(e,) * self.dim,
            structure=self.structure,
        )

    def with_conductor(self, conductor: int) -> "GradedAlgebra":
        """Same algebra with scalars embedded in a larger cyclotomic field."""
        if conductor % self.conductor:
            raise StructureError(
                f"conductor {conductor} does not contain conductor {self.conductor}"
            )
        structure = {
            key: tuple((k, s.promote(conductor)) for k, s in terms)
            for key, terms in self.structure.items()
        }
        return GradedAlgebra(
            group=self.group,
            conductor=conductor,
            labels=self.labels,
            degrees=self.degrees,
            structure=structure,
        )


@dataclass(frozen=True)
class WedderburnData:
    """Verified decomposition: semisimple blocks plus nilpotent radical.

    ``nilpotency`` is the least l with J^(l+1) = 0.
    """

    blocks: tuple[tuple[int, ...], ...]
    radical: tuple[int, ...]
    nilpotency: int


def build_algebra(
    group: AbelianGroup,
    conductor: int,
    basis: list[tuple[str, GroupElement]],
    products: list[tuple[str, str, list[tuple[str, CycloScalar]]]],
) -> GradedAlgebra:
    """Validated algebra from labeled basis entries and a product table.

    Raises :class:`ValidationError` with a witness for any grading violation
    or failure of associativity; unknown or duplicate labels are reported by
    name.  Products omitted from the table are zero.
    """
    labels = []
    degrees = []
    seen = set()
    for lab, deg in basis:
        if lab in seen:
            raise ValidationError(f"duplicate basis label {lab!r}")
        seen.add(lab)
        if deg.group != group:
            raise ValidationError(f"degree of basis element {lab!r} is not in the group")
        labels.append(lab)
        degrees.append(deg)
    index = {lab: i for i, lab in enumerate(labels)}

    structure: dict[tuple[int, int], tuple[tuple[int, CycloScalar], ...]] = {}
    declared = set()
    for left, right, terms in products:
        for lab in (left, right):
            if lab not in index:
                raise ValidationError(f"unknown basis label {lab!r} in product table")
        key = (index[left], index[right])
        if key in declared:
            raise ValidationError(f"product {left!r} * {right!r} declared twice")
        declared.add(key)
        expansion = []
        for target, scalar in terms:
            if target not in index:
                raise ValidationError(f"unknown product target {target!r}")
            s = scalar if isinstance(scalar, CycloScalar) else CycloScalar.rational(scalar, conductor)
            s = s.promote(conductor) if s.conductor != conductor else s
            if s:
                expansion.append((index[target], s))
        if expansion:
            structure[key] = tuple(expansion)

    algebra = GradedAlgebra(
        group=group,
        conductor=conductor,
        labels=tuple(labels),
        degrees=tuple(degrees),
        structure=structure,
    )
    _check_grading(algebra)
    _check_associativity(algebra)
    return algebra


def _check_grading(a: GradedAlgebra) -> None:
    for (i, j), terms in a.structure.items():
        want = a.degrees[i] * a.degrees[j]
        for k, _ in terms:
            if a.degrees[k] != want:
                raise ValidationError(
                    f"grading violation: {a.labels[i]} * {a.labels[j]} has a component "
                    f"on {a.labels[k]} outside the degree-{list(want.exponents)} part"
                )


def _check_associativity(a: GradedAlgebra) -> None:
    n = a.dim
    for i in range(n):
        for j in range(n):
            ij = a.multiply(a.basis_vector(i), a.basis_vector(j))
            for k in range(n):
                left = a.multiply_by_basis(ij, k)
                jk = a.multiply(a.basis_vector(j), a.basis_vector(k))
                right = a.multiply(a.basis_vector(i), jk)
                if left != right:
                    raise ValidationError(
                        f"associativity fails on ({a.labels[i]}, {a.labels[j]}, {a.labels[k]})"
                    )


def subalgebra_unit(a: GradedAlgebra, indices: tuple[int, ...]) -> SparseVec | None:
    """Two-sided unit of the coordinate subalgebra on the given indices."""
    indices = tuple(indices)
    zero = a.one - a.one
    pos = {b: t for t, b in enumerate(indices)}
    rows = []
    rhs = []
    for j in indices:
        for k in indices:
            left = [zero] * len(indices)
            right = [zero] * len(indices)
            for t, i in enumerate(indices):
                for kk, s in a.multiply_basis(i, j):
                    if kk == k:
                        left[t] = left[t] + s
                for kk, s in a.multiply_basis(j, i):
                    if kk == k:
                        right[t] = right[t] + s
            want = a.one if k == j else zero
            rows.append(left)
            rhs.append(want)
            rows.append(right)
            rhs.append(want)
    sol = solve_linear(rows, rhs, a.one)
    if sol is None:
        return None
    return {indices[t]: c for t, c in enumerate(sol) if c}


def invert_in_subalgebra(
    a: GradedAlgebra, indices: tuple[int, ...], v: SparseVec
) -> SparseVec | None:
    """Two-sided inverse of v inside the coordinate subalgebra, if any."""
    indices = tuple(indices)
    if any(i not in indices for i in v):
        raise StructureError("element does not lie in the subalgebra")
    unit = subalgebra_unit(a, indices)
    if unit is None:
        return None
    zero = a.one - a.one
    rows = []
    rhs = []
    for k in indices:
        left = [zero] * len(indices)
        right = [zero] * len(indices)
        for t, j in enumerate(indices):
            for i, vi in v.items():
                for kk, s in a.multiply_basis(i, j):
                    if kk == k:
                        left[t] = left[t] + vi * s
                for kk, s in a.multiply_basis(j, i):
                    if kk == k:
                        right[t] = right[t] + vi * s
        rows.append(left)
        rhs.append(unit.get(k, zero))
        rows.append(right)
        rhs.append(unit.get(k, zero))
    sol = solve_linear(rows, rhs, a.one)
    if sol is None:
        return None
    w = {indices[t]: c for t, c in enumerate(sol) if c}
    if a.multiply(v, w) != unit or a.multiply(w, v) != unit:
        return None
    return w


def is_central(a: GradedAlgebra, v: SparseVec) -> bool:
    """Does v commute with every basis element?"""
    for b in range(a.dim):
        bv = a.basis_vector(b)
        if a.multiply(v, bv) != a.multiply(bv, v):
            return False
    return True


def graded_ideal_closure(a: GradedAlgebra, seeds: list[SparseVec]) -> list[SparseVec]:
    """Echelon basis of the two-sided graded ideal generated by the seeds.

    Seeds must be homogeneous so the result is a graded subspace.
    """
    for v in seeds:
        if v and a.degree_of_vector(v) is None:
            raise ValidationError("ideal seeds must be homogeneous vectors")
    eb = EchelonBasis()
    frontier = []
    for v in seeds:
        if eb.insert(dict(v)):
            frontier.append(v)
    while frontier:
        new_frontier = []
        for v in frontier:
            for b in range(a.dim):
                for w in (a.multiply_by_basis(v, b), a.multiply(a.basis_vector(b), v)):
                    if w and eb.insert(w):
                        new_frontier.append(w)
        frontier = new_frontier
    return eb.basis()


def _block_closure_check(a: GradedAlgebra, block: tuple[int, ...]) -> None:
    inside = set(block)
    for i in block:
        for j in block:
            for k, _ in a.multiply_basis(i, j):
                if k not in inside:
                    raise ValidationError(
                        f"block is not multiplicatively closed: "
                        f"{a.labels[i]} * {a.labels[j]} leaves the block"
                    )


def _block_left_mult_traces(a: GradedAlgebra, block: tuple[int, ...]) -> list[CycloScalar]:
    """Trace of left multiplication by each block basis element on the block."""
    zero = a.one - a.one
    traces = []
    for i in block:
        t = zero
        for j in block:
            for k, s in a.multiply_basis(i, j):
                if k == j:
                    t = t + s
        traces.append(t)
    return traces


def block_trace_radical_dim(a: GradedAlgebra, block: tuple[int, ...]) -> int:
    """Dimension of the radical of the block subalgebra.

    Characteristic-zero trace-form criterion: x is radical iff left
    multiplication by x and by every x*b is traceless on the block.
    """
    block = tuple(block)
    _block_closure_check(a, block)
    pos = {b: t for t, b in enumerate(block)}
    traces = _block_left_mult_traces(a, block)
    zero = a.one - a.one
    rows = [list(traces)]
    for j in block:
        row = [zero] * len(block)
        for t, i in enumerate(block):
            acc = zero
            for k, s in a.multiply_basis(i, j):
                acc = acc + s * traces[pos[k]]
            row[t] = acc
        rows.append(row)
    return len(kernel_basis(rows, a.one))


def block_graded_center_dim(a: GradedAlgebra, block: tuple[int, ...]) -> int:
    """Dimension of the identity-degree part of the block's center."""
    block = tuple(block)
    identity = a.group.identity()
    vars_ = [i for i in block if a.degrees[i] == identity]
    if not vars_:
        return 0
    zero = a.one - a.one
    rows = []
    for j in block:
        # one vector equation z*b_j - b_j*z = 0, one scalar row per coordinate
        cols: dict[int, list[CycloScalar]] = {}
        for t, i in enumerate(vars_):
            for k, s in a.multiply_basis(i, j):
                cols.setdefault(k, [zero] * len(vars_))[t] += s
            for k, s in a.multiply_basis(j, i):
                cols.setdefault(k, [zero] * len(vars_))[t] -= s
        for k in sorted(cols):
            rows.append(cols[k])
    return len(kernel_basis(rows, a.one))


def is_g_simple(a: GradedAlgebra, block: tuple[int, ...]) -> bool:
    """Graded-simplicity of a multiplicatively closed block.

    Decides simplicity as it holds after extension to the algebraic closure
    (the setting in which codimension growth is computed): the block must be
    semisimple with nonzero multiplication, and the identity-degree part of
    its center must be one-dimensional.  This implies that every nonzero
    homogeneous element generates the whole block as a graded ideal.
    """
    block = tuple(block)
    if not block:
        return False
    _block_closure_check(a, block)
    if all(not a.multiply_basis(i, j) for i in block for j in block):
        return False
    if block_trace_radical_dim(a, block):
        return False
    return block_graded_center_dim(a, block) == 1


def validate_wedderburn(
    a: GradedAlgebra,
    blocks: list[tuple[int, ...]],
    radical: tuple[int, ...],
) -> WedderburnData:
    """Verify a declared block/radical decomposition and bound the radical.

    Returns the verified data with the least l such that J^(l+1) = 0; raises
    :class:`ValidationError` listing every failed check with a witness.
    """
    blocks = [tuple(b) for b in blocks]
    radical = tuple(radical)
    problems = []

    claimed = [i for b in blocks for i in b] + list(radical)
    if sorted(claimed) != list(range(a.dim)):
        problems.append("blocks and radical do not partition the basis")
    rad_set = set(radical)

    for bi, block in enumerate(blocks):
        try:
            _block_closure_check(a, block)
        except ValidationError as exc:
            problems.extend(f"block {bi + 1}: {p}" for p in exc.problems)
            continue
        if not is_g_simple(a, block):
            problems.append(f"block {bi + 1} is not graded-simple")
    for bi in range(len(blocks)):
        for bj in range(len(blocks)):
            if bi == bj:
                continue
            for i in blocks[bi]:
                for j in blocks[bj]:
                    if a.multiply_basis(i, j):
                        problems.append(
                            f"blocks {bi + 1} and {bj + 1} do not annihilate: "
                            f"{a.labels[i]} * {a.labels[j]} != 0"
                        )
    for j in radical:
        for b in range(a.dim):
            for prod_vec, desc in (
                (a.multiply_basis(b, j), f"{a.labels[b]} * {a.labels[j]}"),
                (a.multiply_basis(j, b), f"{a.labels[j]} * {a.labels[b]}"),
            ):
                for k, _ in prod_vec:
                    if k not in rad_set:
                        problems.append(f"radical is not an ideal: {desc} leaves it")

    if problems:
        raise ValidationError(problems)

    # nilpotency bound: least l with J^(l+1) = 0
    power = [a.basis_vector(j) for j in radical]
    level = 1
    while power:
        if level > a.dim:
            raise ValidationError("declared radical is not nilpotent")
        eb = EchelonBasis()
        for v in power:
            for j in radical:
                w = a.multiply_by_basis(v, j)
                if w:
                    eb.insert(w)
        power = eb.basis()
        if power:
            level += 1
    nilpotency = level if radical else 0
    return WedderburnData(tuple(blocks), radical, nilpotency)
