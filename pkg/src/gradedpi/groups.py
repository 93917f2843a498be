"""Finite abelian groups, subgroups, transversals, and alternating pairings.

Groups are direct products of cyclic factors; elements are reduced exponent
vectors.  Element enumeration is always lexicographic on exponent vectors,
which makes every derived object (subgroup member lists, coset transversals,
basis partitions downstream) deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct
from math import gcd, lcm, prod

from .cyclo import CycloScalar, StructureError, root_of_unity, root_order


class ValidationError(ValueError):
    """A validated structure failed one of its defining checks."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class AbelianGroup:
    """Direct product C_{n_1} x ... x C_{n_q} of cyclic groups.

    ``orders`` may be empty, giving the trivial group.
    """

    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        if any(n < 1 for n in self.orders):
            raise StructureError(f"cyclic factor orders must be >= 1: {self.orders}")

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def element(self, exponents) -> "GroupElement":
        exponents = tuple(int(e) % n for e, n in zip(exponents, self.orders))
        if len(exponents) != self.rank:
            raise StructureError(
                f"exponent vector of length {len(exponents)} for group of rank {self.rank}"
            )
        return GroupElement(self, exponents)

    @cached_property
    def elements(self) -> tuple["GroupElement", ...]:
        return tuple(
            GroupElement(self, exps)
            for exps in iproduct(*(range(n) for n in self.orders))
        )

    def index(self, g: "GroupElement") -> int:
        """Position of g in the lexicographic enumeration."""
        idx = 0
        for e, n in zip(g.exponents, self.orders):
            idx = idx * n + e
        return idx


@dataclass(frozen=True)
class GroupElement:
    """Element of an :class:`AbelianGroup` as a canonical exponent vector."""

    group: AbelianGroup
    exponents: tuple[int, ...]

    def _check_peer(self, other: "GroupElement"):
        if self.group != other.group:
            raise StructureError("elements belong to different groups")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._check_peer(other)
        return GroupElement(
            self.group,
            tuple(
                (a + b) % n
                for a, b, n in zip(self.exponents, other.exponents, self.group.orders)
            ),
        )

    def inverse(self) -> "GroupElement":
        return GroupElement(
            self.group,
            tuple((-a) % n for a, n in zip(self.exponents, self.group.orders)),
        )

    def __pow__(self, k: int) -> "GroupElement":
        return GroupElement(
            self.group,
            tuple((a * k) % n for a, n in zip(self.exponents, self.group.orders)),
        )

    @property
    def is_identity(self) -> bool:
        return not any(self.exponents)

    def order(self) -> int:
        os = [
            n // gcd(n, e) if e else 1
            for e, n in zip(self.exponents, self.group.orders)
        ]
        return lcm(*os) if os else 1

    def __repr__(self):
        return f"g{list(self.exponents)}"


@dataclass(frozen=True)
class Subgroup:
    """Subgroup given by its sorted member list and the generators used."""

    group: AbelianGroup
    members: tuple[GroupElement, ...]
    generators: tuple[GroupElement, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def member_set(self) -> frozenset[GroupElement]:
        return frozenset(self.members)

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.member_set

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return other.member_set <= self.member_set

    @property
    def exponent(self) -> int:
        return lcm(*(m.order() for m in self.members))


def span_subgroup(group: AbelianGroup, generators) -> Subgroup:
    """Smallest subgroup of ``group`` containing ``generators``."""
    generators = tuple(generators)
    for g in generators:
        if g.group != group:
            raise StructureError("generator does not belong to the group")
    members = {group.identity()}
    frontier = list(generators)
    while frontier:
        nxt = []
        for g in frontier:
            for m in list(members):
                p = g * m
                if p not in members:
                    members.add(p)
                    nxt.append(p)
        frontier = nxt
    ordered = tuple(sorted(members, key=group.index))
    return Subgroup(group, ordered, generators)


def full_subgroup(group: AbelianGroup) -> Subgroup:
    return Subgroup(group, group.elements, group.elements)


def trivial_subgroup(group: AbelianGroup) -> Subgroup:
    return Subgroup(group, (group.identity(),), ())


def transversal(small: Subgroup, big: Subgroup) -> tuple[GroupElement, ...]:
    """Enumeration-minimal coset representatives of ``small`` in ``big``."""
    if not big.contains_subgroup(small):
        raise StructureError("transversal requires the first subgroup to lie in the second")
    seen: set[GroupElement] = set()
    reps = []
    for h in big.members:
        if h not in seen:
            reps.append(h)
            for n in small.members:
                seen.add(n * h)
    return tuple(reps)


def disjoint_transversals(
    small: Subgroup, big: Subgroup
) -> tuple[tuple[GroupElement, ...], ...]:
    """|small| pairwise disjoint transversals of ``small`` in ``big``.

    The p-th transversal is the p-th member of ``small`` times the canonical
    one, so their union is exactly ``big``.
    """
    base = transversal(small, big)
    return tuple(tuple(n * t for t in base) for n in small.members)


@dataclass(frozen=True)
class AlternatingForm:
    """Alternating bicharacter on a subgroup H given on ordered generators.

    ``generators`` must decompose H as a direct product of cyclic groups of
    the stated ``gen_orders``; ``values[(i, j)] = (m, e)`` declares the value
    zeta_m^e on the generator pair (h_i, h_j), i < j.  The value on arbitrary
    pairs is the biadditive extension.
    """

    subgroup: Subgroup
    generators: tuple[GroupElement, ...]
    gen_orders: tuple[int, ...]
    values: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    # values: tuples (pair, root) with pair = (i, j) 0-based i < j, root = (m, e)

    @staticmethod
    def build(subgroup, generators, gen_orders, pair_values) -> "AlternatingForm":
        """pair_values: mapping {(i, j): (m, e)} on generator index pairs i < j."""
        items = tuple(sorted(((i, j), (m, e)) for (i, j), (m, e) in pair_values.items()))
        return AlternatingForm(
            subgroup, tuple(generators), tuple(gen_orders), items
        )

    @staticmethod
    def trivial(subgroup, generators=None, gen_orders=None) -> "AlternatingForm":
        if generators is None:
            generators = subgroup.generators
            gen_orders = tuple(g.order() for g in generators)
        return AlternatingForm.build(subgroup, generators, gen_orders, {})

    @cached_property
    def pair_map(self) -> dict[tuple[int, int], tuple[int, int]]:
        return {pair: root for pair, root in self.values}

    @property
    def conductor(self) -> int:
        ms = [m for _, (m, _) in self.values]
        return lcm(*ms) if ms else 1

    def validate(self) -> None:
        """Check the direct decomposition and the root-order divisibility."""
        problems = []
        q = len(self.generators)
        if len(self.gen_orders) != q:
            raise ValidationError("generator list and order list have different lengths")
        for i, (g, n) in enumerate(zip(self.generators, self.gen_orders)):
            if g not in self.subgroup:
                problems.append(f"generator {i + 1} is not a member of the subgroup")
            elif g.order() != n:
                problems.append(
                    f"generator {i + 1} has order {g.order()}, declared {n}"
                )
        if not problems:
            if prod(self.gen_orders) != self.subgroup.order:
                problems.append(
                    "declared cyclic orders do not multiply to the subgroup order"
                )
        if not problems:
            # the coordinate map must be bijective
            if len(self.coordinates) != self.subgroup.order:
                problems.append("generators do not decompose the subgroup directly")
        for (i, j), (m, e) in self.values:
            if not (0 <= i < j < q):
                problems.append(f"value declared on invalid generator pair ({i + 1}, {j + 1})")
                continue
            order = root_order(m, e)
            g = gcd(self.gen_orders[i], self.gen_orders[j])
            if g % order:
                problems.append(
                    f"value on pair ({i + 1}, {j + 1}) has order {order}, which does not "
                    f"divide gcd({self.gen_orders[i]}, {self.gen_orders[j]}) = {g}"
                )
        if problems:
            raise ValidationError(problems)

    @cached_property
    def coordinates(self) -> dict[GroupElement, tuple[int, ...]]:
        """Canonical coordinates of every member of H along the generators."""
        coords = {}
        for exps in iproduct(*(range(n) for n in self.gen_orders)):
            h = self.subgroup.group.identity()
            for g, e in zip(self.generators, exps):
                h = h * g**e
            if h not in coords:
                coords[h] = exps
        return coords

    def _pair_exponent(self, i: int, j: int, conductor: int) -> int:
        """Exponent of zeta_conductor giving the value on (h_i, h_j), any i != j."""
        if i < j:
            root = self.pair_map.get((i, j))
            sign = 1
        else:
            root = self.pair_map.get((j, i))
            sign = -1
        if root is None:
            return 0
        m, e = root
        return sign * e * (conductor // m)

    def pairing(self, a: GroupElement, b: GroupElement) -> CycloScalar:
        """Biadditive alternating extension evaluated on (a, b)."""
        ra = self.coordinates.get(a)
        rb = self.coordinates.get(b)
        if ra is None or rb is None:
            raise StructureError("pairing arguments must lie in the form's subgroup")
        L = self.conductor
        exp = 0
        for (i, j), (m, e) in self.values:
            exp += e * (L // m) * (ra[i] * rb[j] - ra[j] * rb[i])
        return root_of_unity(L, exp % L)

    def radical(self) -> Subgroup:
        """Members pairing trivially with the whole subgroup."""
        one = CycloScalar.one(self.conductor)
        members = [
            n
            for n in self.subgroup.members
            if all(self.pairing(n, g) == one for g in self.generators)
        ]
        return Subgroup(self.subgroup.group, tuple(members), tuple(members))

    @property
    def is_trivial(self) -> bool:
        return all(root_order(m, e) == 1 for _, (m, e) in self.values)
