import random
from fractions import Fraction

from dihedralverify.linalg import (
    BitMatrix,
    DvrMatrix,
    dvr_hnf,
    elementary_divisor_valuations,
    f2_nullspace,
    f2_rank,
    f2_solve,
    hnf,
    kernel_lattice,
    solve_over_ring,
)
from dihedralverify.twolocal import RamifiedElement, exact_det, v2

F = Fraction


def test_hnf_unit_determinant():
    assert hnf([[2, 1], [3, 0]]) == [[1, 0], [0, 1]]


def test_hnf_canonical_is_fixed():
    m = [[1, 1, 1, 1], [0, 2, 0, 2], [0, 0, 4, 4], [0, 0, 0, 8]]
    assert hnf(m) == m


def test_hnf_row_swap():
    assert hnf([[0, 2], [1, 1]]) == [[1, 1], [0, 2]]


def test_hnf_idempotent_and_rowspace_random():
    rng = random.Random(42)
    for _ in range(30):
        n = rng.randint(1, 5)
        w = rng.randint(n, 6)
        rows = [[rng.randint(-6, 6) for _ in range(w)] for _ in range(n)]
        h = hnf(rows)
        assert hnf(h) == h
        # mutual containment of row spaces, by exact solves
        for r in rows:
            assert solve_over_ring(h, r) is not None or all(x == 0 for x in r)
        for r in h:
            assert solve_over_ring([row for row in rows if any(row)], r) is not None


def test_hnf_fractional_entries():
    # pivots of negative valuation are legal; row space must be preserved
    rows = [[F(1, 2), F(1, 4)], [0, 1]]
    h = hnf(rows)
    assert hnf(h) == h
    for r in rows:
        assert solve_over_ring(h, r) is not None
    for r in h:
        assert solve_over_ring(rows, r) is not None


def test_elementary_divisors_base():
    m = DvrMatrix(0, [[2, 0], [0, 3]])
    assert elementary_divisor_valuations(m) == [0, 1]
    m = DvrMatrix(0, [[2, 0, 0], [0, 4, 0], [0, 0, 8]])
    assert elementary_divisor_valuations(m) == [1, 2, 3]


def test_elementary_divisors_vandermonde():
    # Vandermonde rows on {0, 4, 2}: det = (4)(2)(-2) = -16
    rows = [[1, 0, 0], [1, 4, 16], [1, 2, 4]]
    vals = elementary_divisor_valuations(DvrMatrix(0, rows))
    assert sum(vals) == 4
    assert v2(exact_det(rows)) == 4


def test_elementary_divisor_sum_is_det_valuation_random():
    rng = random.Random(11)
    for level in (0, 1, 2):
        for _ in range(12):
            n = rng.randint(1, 4 if level else 6)
            rows = []
            for _ in range(n):
                row = []
                for _ in range(n):
                    d = 1 << level
                    row.append(RamifiedElement(level, [rng.randint(-4, 4) for _ in range(d)]))
                rows.append(row)
            m = DvrMatrix(level, rows)
            # determinant via expansion is exponential; use the base case only
            vals = elementary_divisor_valuations(m)
            if level == 0:
                det = exact_det([[x.coeffs[0] for x in r] for r in m.rows])
                if det != 0:
                    assert sum(vals) == v2(det)
                else:
                    assert len(vals) < n
            else:
                # cross-check with the norm: det of the flattened base matrix
                flat = []
                d = 1 << level
                for r in m.rows:
                    for k in range(d):
                        row = []
                        tk = RamifiedElement.one(level)
                        for _ in range(k):
                            tk = tk * RamifiedElement.theta(level)
                        for x in r:
                            row.extend((tk * x).coeffs)
                        flat.append(row)
                det = exact_det(flat)
                if det != 0:
                    assert sum(v * d for v in vals) == v2(det)


def test_dvr_hnf_ramified_idempotent():
    rng = random.Random(5)
    t = RamifiedElement.theta(1)
    rows = [[t * 2 + 1, t], [t * t, RamifiedElement.from_base(1, 4)]]
    m = DvrMatrix(1, rows)
    h = dvr_hnf(m)
    assert dvr_hnf(h) == h
    for level in (1, 2):
        for _ in range(8):
            d = 1 << level
            rows = [
                [RamifiedElement(level, [rng.randint(-3, 3) for _ in range(d)]) for _ in range(3)]
                for _ in range(3)
            ]
            h = dvr_hnf(DvrMatrix(level, rows))
            assert dvr_hnf(h) == h


def test_kernel_lattice_saturated():
    # x . (2, 1)^T = 0 over the 2-local integers: kernel is (1, -2), not (2, -4)
    k = kernel_lattice([[2], [1]])
    assert k == [[1, -2]]


def test_f2_rank_and_nullspace():
    ident = BitMatrix.from_lists([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert f2_rank(ident) == 3
    zero = BitMatrix(5, [0, 0])
    assert f2_rank(zero) == 0
    assert len(f2_nullspace(zero)) == 5
    a = BitMatrix.from_lists([[1, 1], [1, 1]])
    assert f2_rank(a) == 1
    assert f2_rank(a) + len(f2_nullspace(a)) == a.ncols


def test_f2_solve():
    a = BitMatrix.from_lists([[1, 1], [1, 1]])
    b = 0b11  # both equations ask for parity 1
    out = f2_solve(a, b)
    assert out is not None
    x, null = out
    for i, row in enumerate(a.rows):
        assert bin(row & x).count("1") % 2 == (b >> i) & 1
    assert null == [0b11]
    assert f2_solve(a, 0b01) is None
