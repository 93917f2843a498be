"""Algebra spec files: a small TOML dialect describing graded algebras.

A file declares the scalar field conductor, the grading group, a labeled
homogeneous basis with a sparse product table, and optionally a block and
radical decomposition.  Alternatively a single ``kind = "bsz"`` block record
(subgroup generators, alternating-form values, matrix size, degree tuple)
generates the whole algebra.  Scalars are literals like
``-1/2 + 1/2*zeta(4)^1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

try:
    import tomllib as _toml
except ModuleNotFoundError:  # Python 3.10
    import tomli as _toml

from .algebra import GradedAlgebra, WedderburnData, build_algebra, validate_wedderburn
from .bsz import BlockConstruction, BlockSpec, build_g_simple
from .cyclo import CycloScalar, StructureError, root_of_unity
from .groups import AbelianGroup, AlternatingForm, ValidationError, span_subgroup


class SpecError(ValueError):
    """Spec file cannot be parsed or fails lexical validation."""


# -- scalar literals ----------------------------------------------------------

_TOKEN = re.compile(r"\s*(zeta|\d+|\^|\*|/|\+|-|\(|\))")


def tokenize_scalar(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise SpecError(f"bad scalar literal near offset {pos}: {text[pos:]!r}")
            break
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    return tokens


def parse_scalar(text: str, conductor: int) -> CycloScalar:
    """Parse a sum of products of rationals and zeta(m)^e factors.

    Every zeta order must divide the declared conductor.
    """
    tokens = tokenize_scalar(text)
    if not tokens:
        raise SpecError(f"empty scalar literal {text!r}")
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(tokens):
            raise SpecError(f"scalar literal {text!r} ends unexpectedly")
        tok, off = tokens[pos]
        if expected is not None and tok != expected:
            raise SpecError(
                f"scalar literal {text!r}: expected {expected!r} at offset {off}, got {tok!r}"
            )
        pos += 1
        return tok, off

    def parse_factor() -> CycloScalar:
        tok, off = take()
        if tok == "zeta":
            take("(")
            m_tok, m_off = take()
            if not m_tok.isdigit():
                raise SpecError(f"scalar literal {text!r}: bad root order at offset {m_off}")
            m = int(m_tok)
            take(")")
            e = 1
            if peek() == "^":
                take("^")
                sign = 1
                if peek() == "-":
                    take("-")
                    sign = -1
                e_tok, e_off = take()
                if not e_tok.isdigit():
                    raise SpecError(
                        f"scalar literal {text!r}: bad exponent at offset {e_off}"
                    )
                e = sign * int(e_tok)
            if m < 1 or conductor % m:
                raise SpecError(
                    f"scalar literal {text!r}: zeta({m}) does not lie in the declared "
                    f"conductor {conductor}"
                )
            return root_of_unity(m, e).promote(conductor)
        if tok.isdigit():
            num = int(tok)
            if peek() == "/":
                take("/")
                den_tok, den_off = take()
                if not den_tok.isdigit() or int(den_tok) == 0:
                    raise SpecError(
                        f"scalar literal {text!r}: bad denominator at offset {den_off}"
                    )
                return CycloScalar.rational(Fraction(num, int(den_tok)), conductor)
            return CycloScalar.rational(num, conductor)
        raise SpecError(f"scalar literal {text!r}: unexpected {tok!r} at offset {off}")

    def parse_term() -> CycloScalar:
        value = parse_factor()
        while peek() == "*":
            take("*")
            value = value * parse_factor()
        return value

    def parse_expr() -> CycloScalar:
        sign = 1
        if peek() == "-":
            take("-")
            sign = -1
        elif peek() == "+":
            take("+")
        value = parse_term()
        if sign < 0:
            value = -value
        while peek() in ("+", "-"):
            op, _ = take()
            term = parse_term()
            value = value + term if op == "+" else value - term
        return value

    value = parse_expr()
    if pos != len(tokens):
        raise SpecError(f"scalar literal {text!r}: trailing tokens")
    return value


# -- document model -----------------------------------------------------------


@dataclass
class BszRecord:
    generators: list[list[int]]
    orders: list[int]
    alpha: list[str]
    matrix_size: int
    degree_tuple: list[list[int]]


@dataclass
class AlgebraSpecDoc:
    conductor: int
    group_orders: tuple[int, ...]
    basis: list[tuple[str, list[int]]]
    products: list[tuple[str, str, list[tuple[str, str]]]]
    blocks: list[list[str]] | None
    bsz: BszRecord | None
    radical: list[str] | None


@dataclass
class LoadedAlgebra:
    doc: AlgebraSpecDoc
    algebra: GradedAlgebra
    wedderburn: WedderburnData | None
    construction: BlockConstruction | None


def _expect(cond: bool, message: str):
    if not cond:
        raise SpecError(message)


def parse_spec(text: str) -> AlgebraSpecDoc:
    """Parse and lexically validate a spec document.

    Syntax errors carry the TOML parser's line and column; semantic errors
    about the algebra itself are deferred to the build step.
    """
    try:
        data = _toml.loads(text)
    except _toml.TOMLDecodeError as exc:
        raise SpecError(f"syntax error: {exc}") from exc

    if "group" not in data or "orders" not in data.get("group", {}):
        raise SpecError("missing group: declare [group] with orders = [n_1, ...]")
    orders = data["group"]["orders"]
    _expect(
        isinstance(orders, list) and all(isinstance(n, int) for n in orders),
        "group.orders must be a list of integers",
    )
    conductor = data.get("field", {}).get("conductor", 1)
    _expect(
        isinstance(conductor, int) and conductor >= 1,
        "field.conductor must be a positive integer",
    )

    basis = []
    seen = set()
    for entry in data.get("basis", []):
        _expect(
            isinstance(entry, dict) and "label" in entry and "degree" in entry,
            "each [[basis]] entry needs label and degree",
        )
        label = entry["label"]
        _expect(isinstance(label, str), "basis labels must be strings")
        if label in seen:
            raise SpecError(f"duplicate basis label {label!r}")
        seen.add(label)
        degree = entry["degree"]
        _expect(
            isinstance(degree, list)
            and len(degree) == len(orders)
            and all(isinstance(e, int) for e in degree),
            f"basis entry {label!r}: degree must be an integer vector of length {len(orders)}",
        )
        basis.append((label, degree))

    products = []
    for entry in data.get("products", []):
        _expect(
            isinstance(entry, dict) and {"left", "right", "result"} <= entry.keys(),
            "each [[products]] entry needs left, right, result",
        )
        result = entry["result"]
        _expect(
            isinstance(result, list)
            and all(isinstance(t, list) and len(t) == 2 for t in result),
            f"product {entry.get('left')!r} * {entry.get('right')!r}: result must be "
            "a list of [target, scalar] pairs",
        )
        terms = []
        for target, literal in result:
            parse_scalar(literal, conductor)  # lexical check now, reuse later
            terms.append((target, literal))
        products.append((entry["left"], entry["right"], terms))

    blocks = None
    bsz = None
    if "blocks" in data:
        raw_blocks = data["blocks"]
        _expect(isinstance(raw_blocks, list), "blocks must be an array of tables")
        blocks = []
        for entry in raw_blocks:
            kind = entry.get("kind", "members")
            if kind == "members":
                _expect(
                    "members" in entry and isinstance(entry["members"], list),
                    "a members block needs members = [labels]",
                )
                blocks.append(list(entry["members"]))
            elif kind == "bsz":
                _expect(bsz is None, "only one bsz block is supported per file")
                _expect(
                    not basis and not products,
                    "a bsz block generates the basis; do not declare one",
                )
                for key in ("generators", "orders", "alpha", "k", "gtuple"):
                    _expect(key in entry, f"bsz block needs {key}")
                bsz = BszRecord(
                    generators=entry["generators"],
                    orders=entry["orders"],
                    alpha=entry["alpha"],
                    matrix_size=entry["k"],
                    degree_tuple=entry["gtuple"],
                )
                q = len(bsz.generators)
                _expect(
                    len(bsz.alpha) == q * (q - 1) // 2,
                    f"bsz block: need {q * (q - 1) // 2} alpha values for {q} generators",
                )
            else:
                raise SpecError(f"unknown block kind {kind!r}")
        if bsz is not None:
            _expect(len(raw_blocks) == 1, "a bsz block must be the only block")
            blocks = None

    radical = None
    if "radical" in data:
        _expect(
            isinstance(data["radical"], dict) and "members" in data["radical"],
            "[radical] needs members = [labels]",
        )
        radical = list(data["radical"]["members"])

    if bsz is None and not basis:
        raise SpecError("spec declares no basis and no bsz block")
    return AlgebraSpecDoc(
        conductor=conductor,
        group_orders=tuple(orders),
        basis=basis,
        products=products,
        blocks=blocks,
        bsz=bsz,
        radical=radical,
    )


_ALPHA_ROOT = re.compile(r"^\s*zeta\(\s*(\d+)\s*\)\s*(?:\^\s*(-?\d+)\s*)?$")


def _parse_alpha_value(text: str) -> tuple[int, int]:
    m = _ALPHA_ROOT.match(text)
    if not m:
        raise SpecError(
            f"alternating-form value {text!r} must be a root literal zeta(m)^e"
        )
    order = int(m.group(1))
    exp = int(m.group(2)) if m.group(2) is not None else 1
    return order, exp % order if order else 0


def build_doc(doc: AlgebraSpecDoc) -> LoadedAlgebra:
    """Build and validate the algebra (and decomposition) a document describes."""
    group = AbelianGroup(doc.group_orders)

    if doc.bsz is not None:
        rec = doc.bsz
        gens = [group.element(v) for v in rec.generators]
        subgroup = span_subgroup(group, gens)
        pair_values = {}
        q = len(gens)
        pos = 0
        for i in range(q):
            for j in range(i + 1, q):
                m, e = _parse_alpha_value(rec.alpha[pos])
                pos += 1
                if e:
                    pair_values[(i, j)] = (m, e)
        form = AlternatingForm.build(subgroup, gens, rec.orders, pair_values)
        spec = BlockSpec(
            form=form,
            matrix_size=rec.matrix_size,
            degree_tuple=tuple(group.element(v) for v in rec.degree_tuple),
        )
        construction = build_g_simple(spec)
        return LoadedAlgebra(
            doc=doc,
            algebra=construction.algebra,
            wedderburn=construction.wedderburn,
            construction=construction,
        )

    basis = [(label, group.element(deg)) for label, deg in doc.basis]
    products = []
    for left, right, terms in doc.products:
        products.append(
            (
                left,
                right,
                [(target, parse_scalar(lit, doc.conductor)) for target, lit in terms],
            )
        )
    algebra = build_algebra(group, doc.conductor, basis, products)

    wedderburn = None
    if doc.blocks is not None or doc.radical is not None:
        label_index = algebra.label_index
        for lab in [l for b in (doc.blocks or []) for l in b] + list(doc.radical or []):
            if lab not in label_index:
                raise SpecError(f"unknown basis label {lab!r} in blocks/radical")
        blocks = [tuple(label_index[l] for l in b) for b in (doc.blocks or [])]
        radical = tuple(label_index[l] for l in (doc.radical or []))
        wedderburn = validate_wedderburn(algebra, blocks, radical)
    return LoadedAlgebra(
        doc=doc, algebra=algebra, wedderburn=wedderburn, construction=None
    )


def load_spec(path: str) -> LoadedAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return build_doc(parse_spec(text))


def emit_structure_spec(loaded: LoadedAlgebra) -> str:
    """Render an algebra back to raw structure-constant spec text."""
    a = loaded.algebra
    lines = ["[field]", f"conductor = {a.conductor}", "", "[group]"]
    lines.append(f"orders = {list(a.group.orders)}")
    for i, label in enumerate(a.labels):
        lines.append("")
        lines.append("[[basis]]")
        lines.append(f'label = "{label}"')
        lines.append(f"degree = {list(a.degrees[i].exponents)}")
    for (i, j) in sorted(a.structure):
        terms = a.structure[(i, j)]
        lines.append("")
        lines.append("[[products]]")
        lines.append(f'left = "{a.labels[i]}"')
        lines.append(f'right = "{a.labels[j]}"')
        rendered = ", ".join(
            f'["{a.labels[k]}", "{s.literal()}"]' for k, s in terms
        )
        lines.append(f"result = [{rendered}]")
    if loaded.wedderburn is not None:
        for block in loaded.wedderburn.blocks:
            lines.append("")
            lines.append("[[blocks]]")
            members = ", ".join(f'"{a.labels[i]}"' for i in block)
            lines.append(f"members = [{members}]")
        lines.append("")
        lines.append("[radical]")
        members = ", ".join(f'"{a.labels[i]}"' for i in loaded.wedderburn.radical)
        lines.append(f"members = [{members}]")
    return "\n".join(lines) + "\n"
