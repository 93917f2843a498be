"""Exact linear algebra over cyclotomic scalars.

Vectors are sparse ``dict[int, CycloScalar]`` with zero entries absent.
Everything here is deterministic: pivot choices depend only on insertion
order and column indices, never on hashing order.
"""

from __future__ import annotations

from .cyclo import CycloScalar

SparseVec = dict[int, CycloScalar]


def vec_scale(v: SparseVec, c) -> SparseVec:
    if not c:
        return {}
    return {k: x * c for k, x in v.items()}


def vec_add_scaled(v: SparseVec, w: SparseVec, c) -> SparseVec:
    """v + c*w with exact zero dropping."""
    out = dict(v)
    for k, x in w.items():
        y = out.get(k)
        z = x * c if y is None else y + x * c
        if z:
            out[k] = z
        else:
            out.pop(k, None)
    return out


def vec_dot(v: SparseVec, w: SparseVec):
    small, big = (v, w) if len(v) <= len(w) else (w, v)
    total = None
    for k, x in small.items():
        y = big.get(k)
        if y is not None:
            total = x * y if total is None else total + x * y
    return total


class EchelonBasis:
    """Reduced row-echelon basis of a growing row space.

    Rows are normalized so the pivot (smallest column) has coefficient one,
    and every stored row is fully reduced against the others.
    """

    def __init__(self):
        self.rows: dict[int, SparseVec] = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: SparseVec) -> SparseVec:
        v = dict(v)
        while v:
            hit = None
            for col in sorted(v):
                if col in self.rows:
                    hit = col
                    break
            if hit is None:
                break
            v = vec_add_scaled(v, self.rows[hit], -v[hit])
        return v

    def insert(self, v: SparseVec) -> bool:
        """Add v to the row space; returns True if the dimension grew."""
        v = self.reduce(v)
        if not v:
            return False
        pivot = min(v)
        inv = v[pivot].inverse()
        v = vec_scale(v, inv)
        for p, row in list(self.rows.items()):
            c = row.get(pivot)
            if c is not None:
                self.rows[p] = vec_add_scaled(row, v, -c)
        self.rows[pivot] = v
        return True

    def contains(self, v: SparseVec) -> bool:
        return not self.reduce(v)

    def basis(self) -> list[SparseVec]:
        return [self.rows[p] for p in sorted(self.rows)]


def echelon_basis(rows) -> list[SparseVec]:
    eb = EchelonBasis()
    for r in rows:
        eb.insert(r)
    return eb.basis()


def sparse_rank(rows) -> int:
    eb = EchelonBasis()
    for r in rows:
        eb.insert(r)
    return eb.dim


class OrthogonalComplementTracker:
    """Basis of the space orthogonal to a stream of columns.

    Starts as the full coordinate space of dimension ``n``; each processed
    column removes at most one basis row.  ``n - dim`` is the rank of the
    matrix whose columns have been processed so far, and the surviving rows
    are exact coefficient vectors annihilating every processed column.
    """

    def __init__(self, n: int, one: CycloScalar):
        self.n = n
        self.rows: dict[int, SparseVec] = {i: {i: one} for i in range(n)}
        self.col_index: dict[int, set[int]] = {i: {i} for i in range(n)}

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return self.n - len(self.rows)

    def process_column(self, col: SparseVec) -> None:
        if not self.rows or not col:
            return
        touched: set[int] = set()
        for k in col:
            touched |= self.col_index.get(k, set())
        dots = {}
        for rid in touched:
            d = vec_dot(self.rows[rid], col)
            if d is not None and d:
                dots[rid] = d
        if not dots:
            return
        pivot = min(dots)
        prow = self.rows[pivot]
        pdot = dots[pivot]
        for rid, d in dots.items():
            if rid == pivot:
                continue
            old = self.rows[rid]
            new = vec_add_scaled(old, prow, -(d / pdot))
            for k in old:
                if k not in new:
                    self.col_index[k].discard(rid)
            for k in new:
                if k not in old:
                    self.col_index.setdefault(k, set()).add(rid)
            self.rows[rid] = new
        for k in prow:
            self.col_index[k].discard(pivot)
        del self.rows[pivot]

    def surviving(self) -> list[SparseVec]:
        return [self.rows[rid] for rid in sorted(self.rows)]


def solve_linear(rows: list[list], rhs: list, one):
    """One exact solution x of rows*x = rhs, or None.  Free variables -> 0.

    Entries may be any field scalars supporting +, -, *, /, bool; ``one`` is
    the field's multiplicative identity.
    """
    n_eq = len(rows)
    n_var = len(rows[0]) if rows else 0
    zero = one - one
    aug = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    pivots = []
    r = 0
    for c in range(n_var):
        pr = next((i for i in range(r, n_eq) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(n_eq):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == n_eq:
            break
    for i in range(r, n_eq):
        if aug[i][n_var]:
            return None
    sol = [zero] * n_var
    for i, c in enumerate(pivots):
        sol[c] = aug[i][n_var]
    return sol


def kernel_basis(rows: list[list], one) -> list[list]:
    """Basis of {x : rows * x = 0}, deterministic, over any field scalars.

    ``one`` is the field's multiplicative identity (needed when the matrix
    is entirely zero).
    """
    n_eq = len(rows)
    n_var = len(rows[0]) if rows else 0
    if n_var == 0:
        return []
    zero = one - one
    if n_eq == 0:
        rows = [[zero] * n_var]
        n_eq = 1
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n_var):
        pr = next((i for i in range(r, n_eq) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(n_eq):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == n_eq:
            break
    free = [c for c in range(n_var) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * n_var
        vec[fc] = one
        for i, pc in enumerate(pivots):
            v = mat[i][fc]
            if v:
                vec[pc] = zero - v
        basis.append(vec)
    return basis
