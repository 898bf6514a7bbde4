"""Exact matrix kernels over the 2-local base ring, the ramified levels, and F2.

Lattices are row spaces: the rows of a matrix are basis vectors, matching the
row-space presentations of the orders being verified.  The canonical form
produced by `hnf` selects pivots of minimal valuation (ties to the lowest
row), normalizes pivots to 2^v at the base level and to theta^j * 2^m at
ramified levels, zeroes entries below pivots and reduces entries above
modulo the pivot.  All operations are unimodular over the valuation ring, so
row spaces are preserved exactly.

F2 linear algebra stores rows as int bitmasks.
"""

from __future__ import annotations

from fractions import Fraction

from .twolocal import (
    INF,
    RamifiedElement,
    residue_mod_2pow,
    two_local,
    v2,
)


# ---------------------------------------------------------------------------
# Base-level lattice machinery (entries: ints / Fractions with odd denominator)


class EchelonSpan:
    """Incremental echelon basis of a 2-local lattice (row span over Z_(2)).

    Rows are kept with integer-friendly arithmetic: reduction against a pivot
    scales the incoming row by the pivot's odd unit part, which is a unit of
    the valuation ring and so does not change the span.
    """

    def __init__(self, width: int):
        self.width = width
        self.pivots: dict[int, list] = {}  # leading column -> row

    def rank(self) -> int:
        return len(self.pivots)

    def rows(self) -> list[list]:
        return [self.pivots[c] for c in sorted(self.pivots)]

    def reduce(self, vec) -> list:
        """Residual of vec after elimination; may swap vec into the basis."""
        v = list(vec)
        for c in range(self.width):
            if v[c] == 0:
                continue
            if c not in self.pivots:
                return v  # leading column found, caller decides on insertion
            pivot = self.pivots[c]
            if v2(v[c]) < v2(pivot[c]):
                # incoming row is the better pivot for this column
                self.pivots[c] = v
                v, pivot = pivot, v
            v = _eliminate(v, pivot, c)
        return v

    def add(self, vec) -> bool:
        """Insert vec into the span; True iff the rank grew."""
        v = self.reduce(vec)
        lead = next((c for c in range(self.width) if v[c] != 0), None)
        if lead is None:
            return False
        self.pivots[lead] = v
        return True

    def contains(self, vec) -> bool:
        v = list(vec)
        for c in range(self.width):
            if v[c] == 0:
                continue
            if c not in self.pivots:
                return False
            pivot = self.pivots[c]
            if v2(v[c]) < v2(pivot[c]):
                return False
            v = _eliminate(v, pivot, c)
        return True


def _eliminate(v, pivot, c):
    """Clear column c of v using pivot; exact, keeps integer rows integer."""
    pv, vv = pivot[c], v[c]
    if isinstance(pv, int) and isinstance(vv, int):
        w = v2(vv) - v2(pivot[c])
        unit_p = pv >> v2(pv)
        unit_v = vv >> v2(vv)
        f = unit_v * (1 << w)
        return [unit_p * a - f * b for a, b in zip(v, pivot)]
    f = Fraction(vv) / Fraction(pv)
    return [a - f * b for a, b in zip(v, pivot)]


def residue_mod_power(e, vp: int) -> Fraction:
    """Canonical representative of a 2-local scalar modulo 2^vp * Z_(2)."""
    if e == 0:
        return Fraction(0)
    ve = v2(e)
    if ve >= vp:
        return Fraction(0)
    unit = Fraction(e) / Fraction(2) ** ve
    return Fraction(2) ** ve * residue_mod_2pow(unit, vp - ve)


def hnf(rows, width: int | None = None) -> list[list]:
    """Canonical row-space basis over the 2-local base ring.

    Pivots become exact powers of 2 and entries above each pivot are reduced
    to canonical residues modulo the pivot.  The output rows are integers
    whenever the input rows are 2-integral.
    """
    rows = [list(r) for r in rows]
    if width is None:
        width = len(rows[0]) if rows else 0
    span = EchelonSpan(width)
    for r in rows:
        if len(r) != width:
            raise ValueError("ragged rows")
        span.add(r)
    basis = [list(r) for r in span.rows()]
    leads = [next(c for c in range(width) if r[c] != 0) for r in basis]
    # normalize pivots to 2^v
    for i, r in enumerate(basis):
        p = Fraction(r[leads[i]])
        val = v2(p)
        unit = p / Fraction(2) ** val
        basis[i] = [Fraction(a) / unit for a in r]
    # reduce entries above each pivot, left to right
    for i in range(len(basis)):
        c = leads[i]
        vp = v2(basis[i][c])
        for k in range(i):
            e = basis[k][c]
            if e == 0:
                continue
            q = (Fraction(e) - residue_mod_power(e, vp)) / Fraction(2) ** vp
            if q != 0:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[i])]
    return [[_as_int(a) for a in r] for r in basis]


def _as_int(a):
    f = Fraction(a)
    return int(f) if f.denominator == 1 else f


def kernel_lattice(mat, width: int | None = None) -> list[list]:
    """Saturated kernel {x in O^n : x . mat = 0} as canonical rows.

    Computed by eliminating the matrix columns of the augmented block
    [mat | I] with valuation pivoting; rows whose matrix part vanishes carry
    the kernel in their identity part.  Because every row operation is
    unimodular over the valuation ring, the result is the full kernel
    lattice, not merely a finite-index sublattice.
    """
    n = len(mat)
    if n == 0:
        return []
    m = len(mat[0]) if width is None else width
    aug = [[Fraction(x) for x in row] + [Fraction(1 if j == i else 0) for j in range(n)] for i, row in enumerate(mat)]
    used = [False] * n
    for c in range(m):
        cand = [r for r in range(n) if not used[r] and aug[r][c] != 0]
        if not cand:
            continue
        piv = min(cand, key=lambda r: (v2(aug[r][c]), r))
        used[piv] = True
        for r in range(n):
            if r != piv and not used[r] and aug[r][c] != 0:
                f = aug[r][c] / aug[piv][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[piv])]
    kernel = [row[m:] for r, row in enumerate(aug) if not used[r]]
    kernel = [r for r in kernel if any(x != 0 for x in r)]
    return hnf(kernel, n) if kernel else []


def solve_over_ring(basis_rows, vec):
    """Coefficients c in O^k with c . basis_rows = vec, or None.

    basis_rows must be linearly independent over the fraction field.
    """
    k = len(basis_rows)
    if k == 0:
        return [] if all(x == 0 for x in vec) else None
    width = len(basis_rows[0])
    aug = [[Fraction(x) for x in row] + [Fraction(1 if j == i else 0) for j in range(k)] for i, row in enumerate(basis_rows)]
    target = [Fraction(x) for x in vec] + [Fraction(0)] * k
    used = [False] * k
    for c in range(width):
        cand = [r for r in range(k) if not used[r] and aug[r][c] != 0]
        if not cand:
            if target[c] != 0:
                return None
            continue
        piv = min(cand, key=lambda r: (v2(aug[r][c]), r))
        used[piv] = True
        for r in range(k):
            if r != piv and not used[r] and aug[r][c] != 0:
                f = aug[r][c] / aug[piv][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[piv])]
        if target[c] != 0:
            f = target[c] / aug[piv][c]
            target = [a - f * b for a, b in zip(target, aug[piv])]
    if any(target[c] != 0 for c in range(width)):
        return None
    coeffs = [-x for x in target[width:]]
    if any(v2(x) < 0 for x in coeffs if x != 0):
        return None
    return coeffs


# ---------------------------------------------------------------------------
# DvrMatrix: homogeneous-level matrices for hnf / elementary divisors


class DvrMatrix:
    """Rectangular matrix over one level of the tower (level 0 = base ring)."""

    def __init__(self, level: int, rows):
        self.level = level
        self.rows = [[self._entry(x) for x in row] for row in rows]
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise ValueError("ragged rows")

    def _entry(self, x) -> RamifiedElement:
        if isinstance(x, RamifiedElement):
            if x.level != self.level:
                raise ValueError("entry level mismatch")
            return x
        return RamifiedElement.from_base(self.level, x)

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def __eq__(self, other):
        return (
            isinstance(other, DvrMatrix)
            and self.level == other.level
            and self.nrows == other.nrows
            and all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))
        )

    def __repr__(self):
        return f"DvrMatrix(level={self.level}, {[[str(x.coeffs) for x in r] for r in self.rows]})"


def _pivot_reduce_rows(level, rows):
    """Echelonize with minimal-valuation pivots; returns (rows, pivot cols)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    out = []
    leads = []
    remaining = rows
    for c in range(ncols):
        cand = [(i, r) for i, r in enumerate(remaining) if r[c]]
        if not cand:
            continue
        piv_i, piv = min(cand, key=lambda ir: (ir[1][c].valuation(), ir[0]))
        remaining = [r for i, r in enumerate(remaining) if i != piv_i]
        inv = piv[c].inverse()
        nxt = []
        for r in remaining:
            if r[c]:
                f = r[c] * inv
                r = [a - f * b for a, b in zip(r, piv)]
            nxt.append(r)
        remaining = nxt
        out.append(piv)
        leads.append(c)
    return out, leads


def _ramified_pivot_normal(p: RamifiedElement):
    """Write p = unit * theta^j * 2^m with v = m + j/2^r, 0 <= j < 2^r."""
    v = p.valuation()
    d = 1 << p.level
    j = int(v * d) % d if p.level else 0
    m = int(v - Fraction(j, d))
    mono = RamifiedElement.one(p.level)
    if j:
        t = RamifiedElement.theta(p.level)
        for _ in range(j):
            mono = mono * t
    mono = mono * (Fraction(2) ** m if m < 0 else 2 ** m)
    unit = p * mono.inverse()
    return unit, mono


def _residue_mod_principal(e: RamifiedElement, pivot: RamifiedElement) -> RamifiedElement:
    """Canonical representative of e modulo pivot * O at the pivot's level.

    Reduction happens in flattened base coordinates against the canonical
    basis of the principal lattice pivot * O, whose pivots are powers of 2.
    """
    level = e.level
    d = 1 << level
    lat = hnf(pivot.mult_matrix(), d)
    coords = [Fraction(c) for c in e.coeffs]
    for row in lat:
        c = next(i for i in range(d) if row[i] != 0)
        vp = v2(row[c])
        rem = residue_mod_2pow(coords[c], vp)
        q = (coords[c] - rem) / Fraction(2) ** vp
        if q != 0:
            coords = [a - q * b for a, b in zip(coords, row)]
    return RamifiedElement(level, coords)


def dvr_hnf(m: DvrMatrix) -> DvrMatrix:
    """Canonical row-space basis of a DvrMatrix; see module docstring."""
    if m.level == 0:
        rows = hnf([[x.coeffs[0] for x in r] for r in m.rows], m.ncols)
        return DvrMatrix(0, rows)
    rows, leads = _pivot_reduce_rows(m.level, m.rows)
    # normalize pivots to theta^j 2^m
    for i, r in enumerate(rows):
        unit, _ = _ramified_pivot_normal(r[leads[i]])
        inv = unit.inverse()
        rows[i] = [inv * a for a in r]
    # reduce above pivots, left to right
    for i in range(len(rows)):
        c = leads[i]
        for k in range(i):
            if rows[k][c]:
                rem = _residue_mod_principal(rows[k][c], rows[i][c])
                diff = rows[k][c] - rem
                q = diff * rows[i][c].inverse()
                rows[k] = [a - q * b for a, b in zip(rows[k], rows[i])]
    return DvrMatrix(m.level, rows)


def elementary_divisor_valuations(m: DvrMatrix) -> list:
    """Valuations of a Smith-style diagonal (sorted ascending).

    For square nonsingular input the sum equals the valuation of det.
    """
    rows = [list(r) for r in m.rows]
    vals = []
    while rows and rows[0]:
        best = None
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                if x:
                    v = x.valuation()
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, bi, bj = best
        vals.append(v)
        piv_row = rows[bi]
        piv = piv_row[bj]
        inv = piv.inverse()
        rest = []
        for i, r in enumerate(rows):
            if i == bi:
                continue
            if r[bj]:
                f = r[bj] * inv
                r = [a - f * b for a, b in zip(r, piv_row)]
            rest.append([x for j, x in enumerate(r) if j != bj])
        rows = rest
    return sorted(vals)


# ---------------------------------------------------------------------------
# F2 linear algebra on int bitmasks


class BitMatrix:
    """Matrix over F2; each row is an int bitmask, bit j = column j."""

    def __init__(self, ncols: int, rows=()):
        self.ncols = ncols
        self.rows = list(rows)

    @classmethod
    def from_lists(cls, lists):
        ncols = len(lists[0]) if lists else 0
        rows = []
        for r in lists:
            acc = 0
            for j, x in enumerate(r):
                if x & 1:
                    acc |= 1 << j
            rows.append(acc)
        return cls(ncols, rows)

    def copy(self):
        return BitMatrix(self.ncols, list(self.rows))


def f2_echelon(rows):
    """Reduced echelon: returns (basis rows, dict pivot_bit -> basis index)."""
    basis = []
    pivots = {}
    for r in rows:
        for p in sorted(pivots, reverse=True):
            if r >> p & 1:
                r ^= basis[pivots[p]]
        if r:
            p = r.bit_length() - 1
            for q, i in pivots.items():
                if basis[i] >> p & 1:
                    basis[i] ^= r
            pivots[p] = len(basis)
            basis.append(r)
    return basis, pivots


def f2_rank(m: BitMatrix) -> int:
    basis, _ = f2_echelon(m.rows)
    return len(basis)


def f2_reduce(vec: int, basis, pivots) -> int:
    for p in sorted(pivots, reverse=True):
        if vec >> p & 1:
            vec ^= basis[pivots[p]]
    return vec


def f2_nullspace(m: BitMatrix) -> list[int]:
    """Basis of the right kernel {x : parity(r & x) = 0 for every row r}."""
    n = m.ncols
    # transpose-free: run elimination on columns via augmented identity
    aug = []
    for j in range(n):
        col = 0
        for i, r in enumerate(m.rows):
            if r >> j & 1:
                col |= 1 << i
        aug.append((col, 1 << j))
    basis = {}
    null = []
    for col, tag in aug:
        for p in sorted(basis, reverse=True):
            if col >> p & 1:
                col ^= basis[p][0]
                tag ^= basis[p][1]
        if col:
            basis[col.bit_length() - 1] = (col, tag)
        else:
            null.append(tag)
    return null


def f2_solve(m: BitMatrix, b: int):
    """Solve m x = b over F2: bit i of b is the target parity of row_i & x.

    Returns (particular solution bitmask over columns, nullspace basis), or
    None when the system is inconsistent.
    """
    n = m.ncols
    aug = []
    for j in range(n):
        col = 0
        for i, r in enumerate(m.rows):
            if r >> j & 1:
                col |= 1 << i
        aug.append((col, 1 << j))
    basis = {}
    for col, tag in aug:
        for p in sorted(basis, reverse=True):
            if col >> p & 1:
                col ^= basis[p][0]
                tag ^= basis[p][1]
        if col:
            basis[col.bit_length() - 1] = (col, tag)
    x = 0
    r = b
    while r:
        p = r.bit_length() - 1
        if p not in basis:
            return None
        r ^= basis[p][0]
        x ^= basis[p][1]
    return x, f2_nullspace(m)
