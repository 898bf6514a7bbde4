"""Exact arithmetic in the 2-local base ring and the totally ramified tower.

The base field is represented by rationals with odd denominator (the subring
of Q that embeds in Z_2; every constant appearing in the constructions lives
there).  The ramified levels are the real-cyclotomic fields generated by
theta_i = zeta_{2^i} + zeta_{2^i}^{-1}; level r means the field obtained by
adjoining theta_{r+2}, of degree 2^r over the base, with level 0 the base
field itself.  theta satisfies the recursive minimal polynomials

    m_2(x) = x,      m_{i+1}(x) = m_i(x^2 - 2),

which are Eisenstein at 2 for i >= 3, so theta_{r+2} is a uniformizer and
valuations at level r take values in (1/2^r) Z.

All values are immutable; all functions are pure.
"""

from __future__ import annotations

from fractions import Fraction
from math import inf

INF = inf

# ---------------------------------------------------------------------------
# 2-adic valuation on the base ring


def v2(x) -> "int | float":
    """2-adic valuation of an integer or Fraction; v2(0) = +inf."""
    if isinstance(x, Fraction):
        if x == 0:
            return INF
        return _v2_int(x.numerator) - _v2_int(x.denominator)
    if x == 0:
        return INF
    return _v2_int(int(x))


def _v2_int(n: int) -> int:
    n = abs(n)
    return (n & -n).bit_length() - 1


def is_two_local(x) -> bool:
    """True iff x has odd denominator (lies in Z localized at 2)."""
    if isinstance(x, int):
        return True
    return Fraction(x).denominator % 2 == 1


def two_local(numerator: int, denominator: int = 1) -> Fraction:
    """Build a base-ring scalar, rejecting even denominators."""
    q = Fraction(numerator, denominator)
    if q.denominator % 2 == 0:
        raise ValueError(f"{numerator}/{denominator} is not 2-integral: even denominator")
    return q


def residue_mod_2pow(x, v: int) -> int:
    """Canonical representative of a 2-integral scalar modulo 2^v, in [0, 2^v)."""
    if v <= 0:
        return 0
    q = Fraction(x)
    if q.denominator % 2 == 0:
        raise ValueError("scalar is not 2-integral")
    m = 1 << v
    return (q.numerator * pow(q.denominator, -1, m)) % m


# ---------------------------------------------------------------------------
# Dense polynomial helpers (coefficient lists, low degree first)


def poly_trim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def poly_add(p, q):
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_scale(p, c):
    return poly_trim([c * a for a in p])


def poly_eval(p, x):
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc


def poly_compose(p, q):
    """p(q(x))."""
    acc = []
    for a in reversed(p):
        acc = poly_add(poly_mul(acc, q), [a])
    return acc


def poly_deriv(p):
    return poly_trim([i * a for i, a in enumerate(p)][1:])


def exact_det(rows) -> Fraction:
    """Determinant by fraction Gaussian elimination (row lists are copied)."""
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c] != 0:
                f = m[r][c] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def resultant(p, q) -> Fraction:
    """Res(p, q) via the Sylvester determinant, exact over Q."""
    p, q = poly_trim(list(p)), poly_trim(list(q))
    dp, dq = len(p) - 1, len(q) - 1
    if dp < 0 or dq < 0:
        return Fraction(0)
    if dp == 0:
        return Fraction(p[0]) ** dq
    if dq == 0:
        return Fraction(q[0]) ** dp
    n = dp + dq
    rows = []
    for i in range(dq):
        row = [0] * n
        for j, a in enumerate(reversed(p)):
            row[i + j] = a
        rows.append(row)
    for i in range(dp):
        row = [0] * n
        for j, a in enumerate(reversed(q)):
            row[i + j] = a
        rows.append(row)
    return exact_det(rows)


# ---------------------------------------------------------------------------
# The tower polynomials m_i


def tower_polynomial(i: int):
    """Minimal polynomial m_i of theta_i = zeta_{2^i} + zeta_{2^i}^{-1}, degree 2^(i-2).

    m_2 = x and m_{i+1}(x) = m_i(x^2 - 2); for i >= 3 the result is checked
    to be Eisenstein at 2.
    """
    if i < 2:
        raise ValueError("tower level starts at i = 2")
    m = [0, 1]
    for _ in range(i - 2):
        m = poly_compose(m, [-2, 0, 1])
    if i >= 3 and not is_eisenstein(m):
        raise AssertionError(f"m_{i} failed the Eisenstein check")
    return tuple(int(c) for c in m)


def is_eisenstein(p) -> bool:
    """Monic, constant term of valuation exactly 1, lower coefficients even."""
    if not p or p[-1] != 1:
        return False
    if v2(p[0]) != 1:
        return False
    return all(c == 0 or v2(c) >= 1 for c in p[:-1])


def discriminant_valuation(i: int) -> int:
    """2-valuation of disc(m_i), computed from Res(m_i, m_i').

    The value must agree with (i-1)*2^(i-2) - 1; disagreement means an
    arithmetic bug, so it is asserted rather than returned unchecked.
    """
    if i < 3:
        raise ValueError("discriminant valuation needs i >= 3")
    m = tower_polynomial(i)
    res = resultant(list(m), poly_deriv(list(m)))
    val = v2(res)
    expected = (i - 1) * 2 ** (i - 2) - 1
    if val != expected:
        raise AssertionError(f"disc valuation of m_{i}: computed {val}, theorem says {expected}")
    return int(val)


# ---------------------------------------------------------------------------
# Elements of the ramified levels

_REDUCTION_CACHE: dict[int, list[tuple]] = {}


def _theta_power_table(level: int):
    """Coordinates of theta^k for k in [2^level, 2^(level+1)-1], reduced mod m."""
    if level in _REDUCTION_CACHE:
        return _REDUCTION_CACHE[level]
    d = 1 << level
    m = tower_polynomial(level + 2)
    # theta^d = -(lower part of m), then multiply up by theta.
    tail = [-c for c in m[:-1]]
    table = [tuple(tail)]
    for _ in range(d - 2):
        shifted = [0] + list(table[-1])
        overflow = shifted[d] if len(shifted) > d else 0
        row = [shifted[j] + overflow * tail[j] for j in range(d)]
        table.append(tuple(row))
    _REDUCTION_CACHE[level] = table
    return table


class RamifiedElement:
    """An element of level r of the tower, as coordinates in 1, theta, ..., theta^(2^r - 1).

    Coordinates are rational (ints or Fractions); the element lies in the
    valuation ring of the level exactly when its valuation

        nu(sum a_j theta^j) = min_j (v2(a_j) + j / 2^r)

    is >= 0.  Level 0 is the base field (no theta).  Supports ring
    arithmetic, exact inversion, and the field trace down to the base.
    """

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs):
        d = 1 << level
        coeffs = tuple(coeffs)
        if len(coeffs) != d:
            raise ValueError(f"level {level} element needs {d} coordinates, got {len(coeffs)}")
        self.level = level
        self.coeffs = tuple(c if isinstance(c, int) else Fraction(c) for c in coeffs)

    # -- constructors

    @classmethod
    def from_base(cls, level: int, x) -> "RamifiedElement":
        return cls(level, (x,) + (0,) * ((1 << level) - 1))

    @classmethod
    def zero(cls, level: int) -> "RamifiedElement":
        return cls.from_base(level, 0)

    @classmethod
    def one(cls, level: int) -> "RamifiedElement":
        return cls.from_base(level, 1)

    @classmethod
    def theta(cls, level: int) -> "RamifiedElement":
        if level == 0:
            raise ValueError("level 0 has no theta")
        return cls(level, (0, 1) + (0,) * ((1 << level) - 2))

    @classmethod
    def from_polynomial(cls, level: int, coeffs) -> "RamifiedElement":
        """Value of a polynomial (low degree first) at theta of this level.

        At level 0 there is no theta and only the constant term survives;
        higher coefficients are rejected rather than silently dropped.
        """
        coeffs = poly_trim(list(coeffs))
        if level == 0:
            if len(coeffs) > 1:
                raise ValueError("level 0 admits constant polynomials only")
            return cls(0, (coeffs[0] if coeffs else 0,))
        acc = cls.zero(level)
        t = cls.theta(level)
        for c in reversed(coeffs):
            acc = acc * t + cls.from_base(level, c)
        return acc

    # -- ring structure

    def __add__(self, other):
        other = self._coerce(other)
        return RamifiedElement(self.level, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return RamifiedElement(self.level, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        d = 1 << self.level
        raw = [0] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    raw[i + j] += a * b
        if d == 1:
            return RamifiedElement(0, (raw[0],))
        out = list(raw[:d])
        table = _theta_power_table(self.level)
        for k in range(d, 2 * d - 1):
            c = raw[k]
            if c != 0:
                row = table[k - d]
                for j in range(d):
                    if row[j] != 0:
                        out[j] += c * row[j]
        return RamifiedElement(self.level, tuple(out))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RamifiedElement.from_base(self.level, other)
        if not isinstance(other, RamifiedElement) or other.level != self.level:
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.level, tuple(Fraction(c) for c in self.coeffs)))

    def __bool__(self):
        return any(c != 0 for c in self.coeffs)

    def __repr__(self):
        if self.level == 0:
            return f"RamifiedElement(0, {self.coeffs[0]!r})"
        terms = [f"{c}*t^{j}" for j, c in enumerate(self.coeffs) if c != 0]
        return f"RamifiedElement(level={self.level}, {' + '.join(terms) or '0'})"

    def _coerce(self, other) -> "RamifiedElement":
        if isinstance(other, RamifiedElement):
            if other.level != self.level:
                raise ValueError(f"level mismatch: {self.level} vs {other.level}")
            return other
        if isinstance(other, (int, Fraction)):
            return RamifiedElement.from_base(self.level, other)
        raise TypeError(f"cannot coerce {other!r}")

    # -- invariants

    def valuation(self):
        """min_j (v2(a_j) + j/2^r); +inf for zero.  The minimum is unique."""
        d = 1 << self.level
        best = INF
        for j, c in enumerate(self.coeffs):
            if c != 0:
                v = v2(c) + Fraction(j, d)
                if v < best:
                    best = v
        return best

    def is_integral(self) -> bool:
        return self.valuation() >= 0

    def mult_matrix(self):
        """Rows: coordinates of theta^j * self, j = 0 .. 2^r - 1."""
        rows = []
        cur = self
        t = RamifiedElement.theta(self.level) if self.level else None
        for _ in range(1 << self.level):
            rows.append(list(cur.coeffs))
            if t is not None:
                cur = cur * t
        return rows

    def trace(self):
        """Field trace down to the base (trace of the multiplication matrix)."""
        m = self.mult_matrix()
        tot = sum(m[j][j] for j in range(len(m)))
        return tot if isinstance(tot, int) else Fraction(tot)

    def norm(self):
        """Field norm down to the base (determinant of the multiplication matrix)."""
        return exact_det(self.mult_matrix())

    def charpoly(self):
        """Characteristic polynomial of the multiplication matrix, monic over Q.

        Computed by interpolation of det(x*I - M) at 2^r + 1 integer points.
        """
        m = self.mult_matrix()
        d = len(m)
        xs = list(range(d + 1))
        ys = []
        for x in xs:
            rows = [[(x if i == j else 0) - m[i][j] for j in range(d)] for i in range(d)]
            ys.append(exact_det(rows))
        # Lagrange interpolation.
        poly = []
        for i, xi in enumerate(xs):
            term = [Fraction(1)]
            denom = Fraction(1)
            for j, xj in enumerate(xs):
                if i != j:
                    term = poly_mul(term, [-xj, 1])
                    denom *= xi - xj
            poly = poly_add(poly, poly_scale(term, ys[i] / denom))
        return [Fraction(c) for c in poly] + [Fraction(0)] * (d + 1 - len(poly))

    def inverse(self) -> "RamifiedElement":
        """Exact multiplicative inverse (solves x * self = 1)."""
        if not self:
            raise ZeroDivisionError("inverting zero")
        d = 1 << self.level
        if d == 1:
            return RamifiedElement(0, (Fraction(1) / Fraction(self.coeffs[0]),))
        m = self.mult_matrix()
        # Solve row-vector x with x @ m = e0.
        aug = [[Fraction(m[j][i]) for j in range(d)] + [Fraction(1 if i == 0 else 0)] for i in range(d)]
        for c in range(d):
            piv = next(r for r in range(c, d) if aug[r][c] != 0)
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = 1 / aug[c][c]
            aug[c] = [a * inv for a in aug[c]]
            for r in range(d):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
            # column c of the transposed system is now cleared
        x = [aug[i][d] for i in range(d)]
        return RamifiedElement(self.level, tuple(x))

    def embed_up(self) -> "RamifiedElement":
        """Image at level r+1 under theta_r = theta_{r+1}^2 - 2."""
        lvl = self.level + 1
        if self.level == 0:
            return RamifiedElement.from_base(lvl, self.coeffs[0])
        img = poly_compose(list(self.coeffs), [-2, 0, 1])
        acc = RamifiedElement.zero(lvl)
        t = RamifiedElement.theta(lvl)
        for c in reversed(img):
            acc = acc * t + RamifiedElement.from_base(lvl, c)
        return acc


def valuation(a: RamifiedElement):
    return a.valuation()


def field_trace(a: RamifiedElement):
    return a.trace()
