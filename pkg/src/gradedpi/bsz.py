"""Graded-simple algebras from twisted group algebras tensored with matrices.

A block is presented by a subgroup H of the grading group with an alternating
form on its generators, a matrix size k, and a degree tuple (g_1 = 1, ..., g_k).
The construction produces the algebra on basis elements u_h (x) E_ij together
with the radical subgroup N of the form, the primitive idempotents of the
group algebra of N, and the partition of the basis into |N| slices that each
project onto a basis of every matrix block.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct
from math import isqrt, lcm

from .algebra import GradedAlgebra, WedderburnData, build_algebra, validate_wedderburn
from .cyclo import CycloScalar, StructureError, root_of_unity
from .groups import (
    AlternatingForm,
    GroupElement,
    Subgroup,
    ValidationError,
    disjoint_transversals,
    full_subgroup,
    transversal,
)
from .linalg import SparseVec, sparse_rank


def canonical_cocycle(form: AlternatingForm, h: GroupElement, h2: GroupElement) -> CycloScalar:
    """The representative 2-cocycle attached to an alternating form.

    With coordinates h = prod h_i^(r_i) and h2 = prod h_i^(s_i) over the
    form's ordered generators, the value is the product over i < j of the
    form's value on (h_j, h_i) raised to r_j * s_i: the factor collected when
    sorting the concatenated product back into generator order.
    """
    ra = form.coordinates.get(h)
    rb = form.coordinates.get(h2)
    if ra is None or rb is None:
        raise StructureError("cocycle arguments must lie in the form's subgroup")
    L = form.conductor
    exp = 0
    for (i, j), (m, e) in form.values:
        # value on (h_j, h_i) is the inverse root
        exp -= e * (L // m) * (ra[j] * rb[i])
    return root_of_unity(L, exp % L)


@dataclass(frozen=True)
class BlockSpec:
    """Presentation (H, form, k, degree tuple) of a graded-simple block."""

    form: AlternatingForm
    matrix_size: int
    degree_tuple: tuple[GroupElement, ...]

    def validate(self) -> None:
        self.form.validate()
        k = self.matrix_size
        if k < 1:
            raise ValidationError(f"matrix size must be >= 1, got {k}")
        if len(self.degree_tuple) != k:
            raise ValidationError(
                f"degree tuple has length {len(self.degree_tuple)}, expected {k}"
            )
        group = self.form.subgroup.group
        for g in self.degree_tuple:
            if g.group != group:
                raise ValidationError("degree tuple entries must lie in the grading group")
        if not self.degree_tuple[0].is_identity:
            raise ValidationError("the first entry of the degree tuple must be the identity")


def twisted_product_scalar(form: AlternatingForm, h: GroupElement, h2: GroupElement,
                           conductor: int) -> CycloScalar:
    """Canonical cocycle value expressed at the construction conductor."""
    return _promote_into(canonical_cocycle(form, h, h2), conductor)


def build_twisted_group_algebra(form: AlternatingForm) -> GradedAlgebra:
    """Twisted group algebra on basis {u_h}, graded by the parent group.

    The product is u_h * u_h2 = f(h, h2) u_(h h2) for the canonical cocycle f;
    representatives of commuting pairs commute up to the form's value.
    """
    form.validate()
    H = form.subgroup
    radical = form.radical()
    conductor = lcm(radical.exponent, form.conductor)
    basis = [(_u_label(h), h) for h in H.members]
    products = []
    for a in H.members:
        for b in H.members:
            scalar = twisted_product_scalar(form, a, b, conductor)
            products.append((_u_label(a), _u_label(b), [(_u_label(a * b), scalar)]))
    return build_algebra(H.group, conductor, basis, products)


def _u_label(h: GroupElement) -> str:
    return "u(" + ",".join(map(str, h.exponents)) + ")"


def _triple_label(h: GroupElement, i: int, j: int) -> str:
    return _u_label(h) + f"E({i},{j})"


@dataclass(eq=False)
class BlockConstruction:
    """A built graded-simple block together with its derived data."""

    spec: BlockSpec
    algebra: GradedAlgebra
    wedderburn: WedderburnData
    triples: tuple[tuple[GroupElement, int, int], ...]
    radical_subgroup: Subgroup
    matrix_rank: int      # r, with r^2 = [H : N]
    num_slices: int       # m = |N|, the number of matrix blocks

    @cached_property
    def triple_index(self) -> dict[tuple[GroupElement, int, int], int]:
        return {t: i for i, t in enumerate(self.triples)}

    def triple_vector(self, triple) -> SparseVec:
        return self.algebra.basis_vector(self.triple_index[triple])

    @cached_property
    def central_idempotents(self) -> tuple[SparseVec, ...]:
        """Primitive idempotents of the group algebra of N inside the block.

        Computed from the characters of N and verified to be orthogonal
        idempotents summing to the identity and central in the algebra; the
        verification guards the (exotic) case of a canonical cocycle that is
        not literally trivial on N x N.
        """
        abstract = group_algebra_idempotents(self.radical_subgroup, self.algebra.conductor)
        k = self.spec.matrix_size
        lifted = []
        for coeffs in abstract:
            vec: SparseVec = {}
            for n, c in coeffs.items():
                for i in range(1, k + 1):
                    vec[self.triple_index[(n, i, i)]] = c
            lifted.append(vec)
        _verify_idempotents(self.algebra, lifted)
        return tuple(lifted)


def group_algebra_idempotents(
    n_subgroup: Subgroup, conductor: int | None = None
) -> list[dict[GroupElement, CycloScalar]]:
    """Primitive idempotents of the ordinary group algebra of a subgroup.

    Each idempotent is (1/|N|) sum over n of chi(n)^(-1) u_n for a character
    chi of N; characters are obtained by restricting the characters of the
    ambient group (restriction is onto for finite abelian groups).  The
    result order is deterministic.
    """
    group = n_subgroup.group
    exp_g = group.exponent
    target = lcm(conductor or 1, n_subgroup.exponent)
    if target % n_subgroup.exponent:
        raise StructureError("conductor cannot express the characters of the subgroup")
    members = n_subgroup.members
    seen = set()
    characters: list[tuple[CycloScalar, ...]] = []
    for t in iproduct(*(range(n) for n in group.orders)):
        values = []
        for n in members:
            e = sum(
                ti * ei * (exp_g // ni)
                for ti, ei, ni in zip(t, n.exponents, group.orders)
            )
            values.append(root_of_unity(exp_g, e % exp_g).minimal())
        key = tuple(v.literal() for v in values)
        if key not in seen:
            seen.add(key)
            characters.append(tuple(values))
    if len(characters) != len(members):
        raise StructureError("character restriction did not separate the subgroup")
    inv_order = CycloScalar.rational(1, target) / len(members)
    out = []
    for chi in characters:
        coeffs = {}
        for n, v in zip(members, chi):
            coeffs[n] = inv_order * _promote_into(v.inverse(), target)
        out.append(coeffs)
    return out


def _promote_into(value: CycloScalar, conductor: int) -> CycloScalar:
    if conductor % value.conductor == 0:
        return value.promote(conductor)
    return value.minimal().promote(conductor)


def _verify_idempotents(algebra: GradedAlgebra, idempotents: list[SparseVec]) -> None:
    for a, ea in enumerate(idempotents):
        for b, eb in enumerate(idempotents):
            prod = algebra.multiply(ea, eb)
            want = ea if a == b else {}
            if prod != want:
                raise StructureError(
                    "group-algebra idempotents failed verification inside the twisted "
                    "algebra: the canonical cocycle is not literally trivial on the "
                    "radical subgroup"
                )
    total: SparseVec = {}
    for e in idempotents:
        total = _vec_add(total, e)
    unit = algebra.identity_vector
    if unit is None or total != unit:
        raise StructureError("group-algebra idempotents do not sum to the identity")
    for e in idempotents:
        for i in range(algebra.dim):
            b = algebra.basis_vector(i)
            if algebra.multiply(e, b) != algebra.multiply(b, e):
                raise StructureError("group-algebra idempotent is not central")


def _vec_add(x: SparseVec, y: SparseVec) -> SparseVec:
    out = dict(x)
    for k, v in y.items():
        w = out.get(k)
        w = v if w is None else w + v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def build_g_simple(spec: BlockSpec) -> BlockConstruction:
    """Build the block F^f H (x) M_k on basis triples (h, i, j).

    The product is (h,i,j)(h',i',j') = [j = i'] f(h,h') (hh', i, j') and the
    degree of (h,i,j) is g_i^(-1) h g_j.  The result carries a verified
    single-block Wedderburn decomposition.
    """
    spec.validate()
    form = spec.form
    H = form.subgroup
    group = H.group
    k = spec.matrix_size
    radical = form.radical()
    conductor = lcm(radical.exponent, form.conductor)

    triples = tuple(
        (h, i, j) for h in H.members for i in range(1, k + 1) for j in range(1, k + 1)
    )
    gtuple = spec.degree_tuple
    basis = []
    for h, i, j in triples:
        degree = gtuple[i - 1].inverse() * h * gtuple[j - 1]
        basis.append((_triple_label(h, i, j), degree))

    products = []
    for ha, i, j in triples:
        for hb, i2, j2 in triples:
            if j != i2:
                continue
            scalar = twisted_product_scalar(form, ha, hb, conductor)
            products.append(
                (
                    _triple_label(ha, i, j),
                    _triple_label(hb, i2, j2),
                    [(_triple_label(ha * hb, i, j2), scalar)],
                )
            )
    algebra = build_algebra(group, conductor, basis, products)
    wedderburn = validate_wedderburn(algebra, [tuple(range(algebra.dim))], ())

    index_pairs = H.order // radical.order
    r = isqrt(index_pairs)
    if r * r != index_pairs:
        raise StructureError(
            f"[H : N] = {index_pairs} is not a perfect square; the alternating form "
            "does not come from a 2-cocycle presentation"
        )
    return BlockConstruction(
        spec=spec,
        algebra=algebra,
        wedderburn=wedderburn,
        triples=triples,
        radical_subgroup=radical,
        matrix_rank=r,
        num_slices=radical.order,
    )


def basis_partition(construction: BlockConstruction) -> tuple[tuple[tuple[GroupElement, int, int], ...], ...]:
    """Partition of the basis triples into m slices coherent with the grading.

    Slice p collects the triples (h, i, j) whose key h g_i^(-1) g_j falls in
    the p-th shifted transversal of N in G; every homogeneous component lands
    inside exactly one slice, and each slice projects to a basis of every
    matrix block.
    """
    form = construction.spec.form
    H = form.subgroup
    N = construction.radical_subgroup
    G_full = full_subgroup(H.group)
    t_parts = disjoint_transversals(N, H)
    sigma = transversal(H, G_full)
    place: dict[GroupElement, int] = {}
    for p, part in enumerate(t_parts):
        for t in part:
            for s in sigma:
                place[t * s] = p
    gtuple = construction.spec.degree_tuple
    slices: list[list[tuple[GroupElement, int, int]]] = [[] for _ in range(len(t_parts))]
    for h, i, j in construction.triples:
        key = h * gtuple[i - 1].inverse() * gtuple[j - 1]
        slices[place[key]].append((h, i, j))
    return tuple(tuple(s) for s in slices)


def verify_basis_partition(
    construction: BlockConstruction,
    partition: tuple[tuple[tuple[GroupElement, int, int], ...], ...],
) -> None:
    """All structural checks on a basis partition; raises listing failures.

    Checks: (a) slice sizes r^2 k^2, (b) each matrix position appears r^2
    times per slice, (c) for fixed position the group parts form a complete
    transversal of N in H, (d) each homogeneous component lies inside one
    slice, (e) multiplying a slice by any central idempotent yields linearly
    independent projections (a basis of the corresponding matrix block).
    """
    problems = []
    algebra = construction.algebra
    H = construction.spec.form.subgroup
    N = construction.radical_subgroup
    r2 = construction.matrix_rank**2
    k = construction.spec.matrix_size

    coset_key = {}
    for h in H.members:
        coset_key[h] = min((n * h for n in N.members), key=H.group.index)
    all_cosets = set(coset_key.values())

    for p, part in enumerate(partition):
        if len(part) != r2 * k * k:
            problems.append(
                f"slice {p + 1} has {len(part)} elements, expected r^2 k^2 = {r2 * k * k}"
            )
        by_pos: dict[tuple[int, int], list[GroupElement]] = {}
        for h, i, j in part:
            by_pos.setdefault((i, j), []).append(h)
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                hs = by_pos.get((i, j), [])
                if len(hs) != r2:
                    problems.append(
                        f"slice {p + 1}: position ({i},{j}) appears {len(hs)} times, "
                        f"expected {r2}"
                    )
                    continue
                keys = {coset_key[h] for h in hs}
                if len(keys) != r2 or keys != all_cosets:
                    problems.append(
                        f"slice {p + 1}: position ({i},{j}) group parts are not a "
                        "complete transversal of N"
                    )

    # (d) degree coherence
    owner: dict[GroupElement, set[int]] = {}
    for p, part in enumerate(partition):
        for h, i, j in part:
            deg = algebra.degrees[construction.triple_index[(h, i, j)]]
            owner.setdefault(deg, set()).add(p)
    for deg, ps in sorted(owner.items(), key=lambda kv: algebra.group.index(kv[0])):
        if len(ps) != 1:
            problems.append(
                f"homogeneous component of degree {list(deg.exponents)} is split "
                f"across slices {sorted(p + 1 for p in ps)}"
            )

    # (e) projections are bases
    try:
        idempotents = construction.central_idempotents
    except StructureError as exc:
        raise ValidationError([str(exc)]) from exc
    for p, part in enumerate(partition):
        for l, e in enumerate(idempotents):
            images = [
                algebra.multiply(e, construction.triple_vector(t)) for t in part
            ]
            if sparse_rank(images) != len(part):
                problems.append(
                    f"slice {p + 1}: projection by idempotent {l + 1} is not a basis"
                )
    if problems:
        raise ValidationError(problems)
