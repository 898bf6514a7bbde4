"""Exact computational algebra for dihedral-defect block verification.

Everything here is exact: the base ring is Z localized at 2 (rationals with
odd denominator), ramified extensions are represented by power bases of the
real-cyclotomic tower, residue-field linear algebra is over F2 as bitmasks.
No floating point, no truncated p-adics.
"""

__version__ = "0.1.0"
