"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Every scalar in the package is a :class:`CycloScalar`: a vector of rationals
over the power basis 1, z, ..., z^(phi(m)-1) of Q(zeta_m), reduced modulo the
m-th cyclotomic polynomial.  No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm


class StructureError(ValueError):
    """Malformed or incompatible algebraic data."""


def divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials, coefficients ascending; den monic.
    num = list(num)
    quot = [0] * (len(num) - len(den) + 1)
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + len(den) - 1]
        quot[k] = c
        if c:
            for i, dc in enumerate(den):
                num[k + i] -= c * dc
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, ascending degree."""
    if m < 1:
        raise StructureError(f"conductor must be a positive integer, got {m}")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_div_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _field_degree(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """x^k mod Phi_m for 0 <= k < max(m, 2*deg - 1), as integer tuples."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    reduce_row = tuple(-c for c in phi[:deg])
    count = max(m, 2 * deg - 1)
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(count):
        rows.append(tuple(cur))
        lead = cur[deg - 1]
        nxt = [0] * deg
        for i in range(deg - 1):
            nxt[i + 1] = cur[i]
        if lead:
            for i in range(deg):
                nxt[i] += lead * reduce_row[i]
        cur = nxt
    return tuple(rows)


_ZERO = Fraction(0)
_ONE = Fraction(1)


class CycloScalar:
    """An element of Q(zeta_m), immutable, on the reduced power basis.

    Instances are values: equality compares after embedding into a common
    conductor, and all arithmetic is exact.  ``int`` and ``Fraction`` mix in
    freely as rationals.
    """

    __slots__ = ("conductor", "coeffs", "_min")

    def __init__(self, conductor: int, coeffs):
        deg = _field_degree(conductor)
        coeffs = tuple(c if isinstance(c, Fraction) else Fraction(c) for c in coeffs)
        if len(coeffs) != deg:
            raise StructureError(
                f"coefficient vector of length {len(coeffs)} for conductor "
                f"{conductor} (expected {deg})"
            )
        self.conductor = conductor
        self.coeffs = coeffs
        self._min = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rational(value, conductor: int = 1) -> "CycloScalar":
        deg = _field_degree(conductor)
        return CycloScalar(conductor, (Fraction(value),) + (_ZERO,) * (deg - 1))

    @staticmethod
    def zero(conductor: int = 1) -> "CycloScalar":
        return CycloScalar.rational(0, conductor)

    @staticmethod
    def one(conductor: int = 1) -> "CycloScalar":
        return CycloScalar.rational(1, conductor)

    # -- conductor handling --------------------------------------------------

    def promote(self, conductor: int) -> "CycloScalar":
        """Embed into Q(zeta_conductor); requires self.conductor | conductor."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise StructureError(
                f"cannot embed conductor {self.conductor} into {conductor}"
            )
        step = conductor // self.conductor
        table = _power_table(conductor)
        deg = _field_degree(conductor)
        acc = [_ZERO] * deg
        for i, a in enumerate(self.coeffs):
            if a:
                row = table[(i * step) % conductor]
                for j in range(deg):
                    if row[j]:
                        acc[j] += a * row[j]
        return CycloScalar(conductor, acc)

    def contract(self, conductor: int) -> "CycloScalar":
        """Express in the subfield Q(zeta_conductor); error if not possible."""
        if conductor == self.conductor:
            return self
        if self.conductor % conductor:
            raise StructureError(
                f"{conductor} is not a divisor of conductor {self.conductor}"
            )
        m = self.conductor
        step = m // conductor
        table = _power_table(m)
        deg_small = _field_degree(conductor)
        deg = _field_degree(m)
        # Solve sum_i b_i * zeta_m^(i*step) = self over the rationals.
        cols = [table[(i * step) % m] for i in range(deg_small)]
        rows = [[Fraction(cols[i][j]) for i in range(deg_small)] for j in range(deg)]
        rhs = list(self.coeffs)
        sol = _solve_rational(rows, rhs)
        if sol is None:
            raise StructureError(
                f"value does not lie in the subfield of conductor {conductor}"
            )
        return CycloScalar(conductor, sol)

    def minimal(self) -> "CycloScalar":
        """Equivalent value at the smallest possible conductor."""
        if self._min is not None:
            return self._min
        result = self
        for d in divisors(self.conductor):
            if d == self.conductor:
                break
            try:
                result = self.contract(d)
                break
            except StructureError:
                continue
        self._min = result
        return result

    # -- predicates ----------------------------------------------------------

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise StructureError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic ----------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, CycloScalar):
            if other.conductor == self.conductor:
                return self, other
            m = lcm(self.conductor, other.conductor)
            return self.promote(m), other.promote(m)
        if isinstance(other, (int, Fraction)):
            return self, CycloScalar.rational(other, self.conductor)
        return None

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycloScalar(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar(self.conductor, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycloScalar(a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        deg = len(a.coeffs)
        if deg == 1:
            return CycloScalar(a.conductor, (a.coeffs[0] * b.coeffs[0],))
        prod = [_ZERO] * (2 * deg - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        table = _power_table(a.conductor)
        acc = prod[:deg]
        for k in range(deg, 2 * deg - 1):
            c = prod[k]
            if c:
                row = table[k]
                for j in range(deg):
                    if row[j]:
                        acc[j] += c * row[j]
        return CycloScalar(a.conductor, acc)

    __rmul__ = __mul__

    def inverse(self) -> "CycloScalar":
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic scalar")
        deg = len(self.coeffs)
        if deg == 1:
            return CycloScalar(self.conductor, (1 / self.coeffs[0],))
        # Extended Euclid against the cyclotomic polynomial over Q.
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.conductor)]
        r0, r1 = phi, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 is a nonzero constant gcd
        c = next(x for x in r0 if x)
        inv = [x / c for x in s0]
        # reduce modulo Phi just in case (degree should already be < deg)
        acc = [_ZERO] * deg
        table = _power_table(self.conductor)
        for k, x in enumerate(inv):
            if x:
                row = table[k]
                for j in range(deg):
                    if row[j]:
                        acc[j] += x * row[j]
        return CycloScalar(self.conductor, acc)

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse().__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloScalar.one(self.conductor)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __hash__(self):
        m = self.minimal()
        return hash((m.conductor, m.coeffs))

    # -- display -------------------------------------------------------------

    def literal(self) -> str:
        """Canonical text form, e.g. ``-1/2 + 1/2*zeta(4)^1``."""
        parts = []
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            if i == 0:
                body = str(abs(a))
            else:
                z = f"zeta({self.conductor})^{i}"
                body = z if abs(a) == 1 else f"{abs(a)}*{z}"
            parts.append(("-" if a < 0 else "+", body))
        if not parts:
            return "0"
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.literal()

    def __repr__(self):
        return f"CycloScalar({self.conductor}, {self.literal()!r})"


def root_of_unity(m: int, e: int = 1) -> CycloScalar:
    """zeta_m^e as an element of Q(zeta_m), in canonical reduced form."""
    if m < 1:
        raise StructureError(f"root order must be a positive integer, got {m}")
    row = _power_table(m)[e % m]
    return CycloScalar(m, tuple(Fraction(c) for c in row))


def root_order(m: int, e: int) -> int:
    """Multiplicative order of zeta_m^e."""
    return m // gcd(m, e % m if e % m else m)


# -- small rational solvers (kept local: this module sits below linalg) ------


def _solve_rational(rows: list[list[Fraction]], rhs: list[Fraction]):
    """One solution of rows * x = rhs over Q, or None.  Free variables -> 0."""
    n_eq = len(rows)
    n_var = len(rows[0]) if rows else 0
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
    sol = [Fraction(0)] * n_var
    for i, c in enumerate(pivots):
        sol[c] = aug[i][n_var]
    return sol


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    dd = max(i for i, c in enumerate(den) if c)
    den = den[: dd + 1]
    rem = list(num)
    while len(rem) < len(den):
        rem.append(Fraction(0))
    q = [Fraction(0)] * max(1, len(rem) - dd)
    for k in range(len(rem) - dd - 1, -1, -1):
        c = rem[k + dd] / den[dd]
        q[k] = c
        if c:
            for i in range(dd + 1):
                rem[k + i] -= c * den[i]
    return q, rem


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]
