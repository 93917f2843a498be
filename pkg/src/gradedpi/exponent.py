"""The graded PI-exponent: maximal dimension over admissible block chains.

A chain of distinct semisimple blocks is admissible when the alternating
product through the radical is nonzero; the exponent is the maximal total
dimension over admissible chains, with a certifying product of basis
elements returned alongside.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import factorial

from .algebra import GradedAlgebra, WedderburnData, invert_in_subalgebra
from .groups import ValidationError
from .linalg import SparseVec, echelon_basis, vec_scale


@dataclass(frozen=True)
class ExponentWitness:
    """Certificate: chain of block positions and a nonzero basis product."""

    chain: tuple[int, ...]              # 0-based positions into WedderburnData.blocks
    element_indices: tuple[int, ...]    # basis indices c_1, b_1, c_2, ..., c_k
    product: tuple[tuple[int, str], ...]  # nonzero product vector (index, literal)
    dimension: int


def subspace_product(
    a: GradedAlgebra, left: list[SparseVec], right: list[SparseVec]
) -> list[SparseVec]:
    """Echelon basis of span{x*y : x in span(left), y in span(right)}."""
    products = []
    for x in left:
        for y in right:
            v = a.multiply(x, y)
            if v:
                products.append(v)
    return echelon_basis(products)


def is_admissible(
    a: GradedAlgebra, w: WedderburnData, chain: tuple[int, ...]
) -> tuple[bool, tuple[int, ...] | None]:
    """Admissibility of an ordered chain of distinct blocks.

    Returns (admissible, witness) where the witness lists basis indices
    c_1, b_1, c_2, ..., c_k whose iterated product is nonzero.
    """
    chain = tuple(chain)
    if len(set(chain)) != len(chain):
        raise ValidationError("chain entries must be distinct blocks")
    for idx in chain:
        if not 0 <= idx < len(w.blocks):
            raise ValidationError(f"block position {idx} out of range")
    space = [a.basis_vector(i) for i in w.blocks[chain[0]]]
    for nxt in chain[1:]:
        space = subspace_product(a, space, [a.basis_vector(j) for j in w.radical])
        space = subspace_product(a, space, [a.basis_vector(i) for i in w.blocks[nxt]])
        if not space:
            return False, None
    witness = _find_witness(a, w, chain)
    return True, witness


def _find_witness(a, w, chain) -> tuple[int, ...] | None:
    """Depth-first search for a nonzero product of basis elements along the
    chain, alternating block and radical positions."""
    pools = []
    for pos, block in enumerate(chain):
        pools.append(w.blocks[block])
        if pos + 1 < len(chain):
            pools.append(w.radical)

    best: list[tuple[int, ...]] = []

    def rec(depth: int, vec: SparseVec, picked: tuple[int, ...]):
        if best:
            return
        if depth == len(pools):
            best.append(picked)
            return
        for i in pools[depth]:
            nxt = a.multiply(vec, a.basis_vector(i)) if picked else a.basis_vector(i)
            if not nxt:
                continue
            rec(depth + 1, nxt, picked + (i,))

    rec(0, {}, ())
    return best[0] if best else None


def witness_product(a: GradedAlgebra, element_indices: tuple[int, ...]) -> SparseVec:
    vec: SparseVec = {}
    for i in element_indices:
        vec = a.multiply(vec, a.basis_vector(i)) if vec else a.basis_vector(i)
    return vec


def graded_exponent(
    a: GradedAlgebra, w: WedderburnData
) -> tuple[int, ExponentWitness | None]:
    """Maximal total dimension over admissible ordered chains, with witness.

    The maximum over the empty set of blocks is 0 (nilpotent algebras).
    Chains are ordered sequences of distinct blocks; candidate subsets are
    tried in decreasing total dimension so the first admissible chain wins.
    """
    m = len(w.blocks)
    dims = [len(b) for b in w.blocks]
    if m == 0:
        return 0, None
    subsets = []
    for size in range(1, m + 1):
        for combo in combinations(range(m), size):
            subsets.append((sum(dims[i] for i in combo), combo))
    subsets.sort(key=lambda sd: (-sd[0], sd[1]))
    for total, combo in subsets:
        for order in permutations(combo):
            ok, elements = is_admissible(a, w, order)
            if ok:
                vec = witness_product(a, elements)
                witness = ExponentWitness(
                    chain=tuple(order),
                    element_indices=elements,
                    product=tuple(
                        (i, s.literal()) for i, s in sorted(vec.items())
                    ),
                    dimension=total,
                )
                return total, witness
    return 0, None


# -- witness-polynomial evaluation for a chain --------------------------------


def _one_dim_block_construction(a: GradedAlgebra, block: tuple[int, ...]):
    """Degenerate matrix-block model of a one-dimensional simple block,
    together with the scaled embedding of its model basis into the algebra."""
    from .bsz import BlockSpec, build_g_simple
    from .groups import AlternatingForm, trivial_subgroup

    (idx,) = block
    terms = dict(a.multiply_basis(idx, idx))
    beta = terms.get(idx)
    if beta is None or len(terms) != 1:
        raise ValidationError("block element does not square into itself")
    form = AlternatingForm.trivial(trivial_subgroup(a.group), (), ())
    spec = BlockSpec(form=form, matrix_size=1, degree_tuple=(a.group.identity(),))
    construction = build_g_simple(spec)
    image = {idx: beta.inverse().promote(a.conductor)}
    return construction, [image]


def chain_witness_report(
    a: GradedAlgebra,
    w: WedderburnData,
    chain: tuple[int, ...],
    t: int,
    construction=None,
) -> dict:
    """Build the witness polynomial for a chain and evaluate it exactly.

    Bridge variables are assigned the admissibility witness, with each block
    entry corrected by the inverse of the block's central value, so the
    evaluation equals the factorial multiple of the witness product predicted
    by the alternation count.  Chains through one-dimensional raw blocks get
    block models built on the fly; a length-one chain on a matrix-block
    presented algebra uses the presentation itself.
    """
    from .cyclo import CycloScalar
    from .polynomials import central_alternating_polynomial, witness_polynomial

    ok, elements = is_admissible(a, w, chain)
    if not ok:
        raise ValidationError(f"chain {tuple(c + 1 for c in chain)} is not admissible")

    constructions = []
    embeddings = []
    for pos in chain:
        block = w.blocks[pos]
        if construction is not None and len(block) == a.dim:
            constructions.append(construction)
            embeddings.append([a.basis_vector(i) for i in range(a.dim)])
        elif len(block) == 1:
            model, images = _one_dim_block_construction(a, block)
            constructions.append(model)
            embeddings.append(images)
        else:
            raise ValidationError(
                "witness construction needs one-dimensional blocks or a "
                "matrix-block presentation of the algebra"
            )

    bridge_degrees = [a.degrees[i] for i in elements]
    wp = witness_polynomial(constructions, t, bridge_degrees)

    assignment: list[SparseVec | None] = [None] * len(wp.polynomial.roster)
    factor = 1
    bridge_values = []
    for bi, (model, images) in enumerate(zip(constructions, embeddings)):
        block_poly, model_assignment, _ = central_alternating_polynomial(model, t)
        embedded = []
        for vec in model_assignment:
            img: SparseVec = {}
            for mi, c in vec.items():
                for k, ic in images[mi].items():
                    cur = img.get(k)
                    cur = c * ic if cur is None else cur + c * ic
                    if cur:
                        img[k] = cur
                    else:
                        img.pop(k, None)
            embedded.append(img)
        for slot, vec in zip(wp.block_var_indices[bi], embedded):
            assignment[slot] = vec
        # central value of the block polynomial and its in-block inverse
        value = block_poly.evaluate(a, embedded)
        inv = invert_in_subalgebra(a, w.blocks[chain[bi]], value)
        if inv is None:
            raise ValidationError("block central value is not invertible")
        c_elem = a.basis_vector(elements[2 * bi])
        bridge_values.append(a.multiply(c_elem, inv))
        for q in model.algebra.homogeneous_dims():
            factor *= factorial(q) ** (2 * t)
    seq = []
    for bi in range(len(chain)):
        seq.append(bridge_values[bi])
        if 2 * bi + 1 < len(elements):
            seq.append(a.basis_vector(elements[2 * bi + 1]))
    for idx, vec in zip(wp.bridge_indices, seq):
        assignment[idx] = vec

    value = wp.polynomial.evaluate(a, assignment)
    expected = vec_scale(
        witness_product(a, elements), CycloScalar.rational(factor, a.conductor)
    )
    return {
        "chain": tuple(chain),
        "t": t,
        "set_sizes": {
            (level, tuple(deg.exponents)): len(idxs)
            for (level, deg), idxs in wp.alternating_sets.items()
        },
        "value": value,
        "expected": expected,
        "witness_elements": elements,
        "factor": factor,
        "nonzero": bool(value),
    }
