"""Finite-dimensional quiver algebras with relations over F2.

A presentation is completed to a rewriting system ordered by length, then
lexicographically by arrow declaration order (relations oriented with their
largest monomial on the left).  The monomial basis consists of the
irreducible paths, enumerated breadth-first; local confluence of every
overlap is checked at completion, so irreducible paths really are normal
forms.  Elements are int bitmasks over the basis; the structure-constant
table is computed once per algebra.

Basis labels: ('e', v) for the trivial path at vertex v, otherwise a tuple
of arrow indices.
"""

from __future__ import annotations

from .quiver import QuiverPresentation

MAX_RULE_LENGTH = 64
MAX_RULES = 400


class AlgebraBuildError(RuntimeError):
    """Completion or basis enumeration exceeded its bounds."""


def _lenlex(word):
    return (len(word), word)


class RewriteSystem:
    """Length-lex noncommutative rewriting over F2 for one quiver."""

    def __init__(self, pres: QuiverPresentation):
        self.pres = pres
        self.rules: dict[tuple, frozenset] = {}
        for combo in pres.relations:
            if combo:
                self._orient_and_add(set(combo))
        self._complete()

    # -- core rewriting

    def reduce(self, combo) -> frozenset:
        """Normal form of an F2 combination of words (set of tuples)."""
        result: set = set()
        pending = list(combo)
        while pending:
            word = pending.pop()
            hit = self._find_redex(word)
            if hit is None:
                result ^= {word}
                continue
            i, lhs = hit
            head, tail = word[:i], word[i + len(lhs) :]
            for t in self.rules[lhs]:
                pending.append(head + t + tail)
        return frozenset(result)

    def _find_redex(self, word):
        for i in range(len(word)):
            for lhs in self.rules:
                if word[i : i + len(lhs)] == lhs:
                    return i, lhs
        return None

    def is_irreducible(self, word) -> bool:
        return self._find_redex(word) is None

    # -- completion

    def _orient_and_add(self, combo: set) -> bool:
        combo = set(self.reduce(combo))
        if not combo:
            return False
        lhs = max(combo, key=_lenlex)
        rhs = frozenset(combo - {lhs})
        if len(lhs) > MAX_RULE_LENGTH:
            raise AlgebraBuildError(f"rule length {len(lhs)} exceeds cap; presentation looks non-terminating")
        self.rules[lhs] = rhs
        if len(self.rules) > MAX_RULES:
            raise AlgebraBuildError("rule count exceeds cap; presentation looks non-terminating")
        return True

    def _complete(self):
        changed = True
        while changed:
            changed = False
            # inter-reduce: no lhs may contain another lhs, rhs fully reduced
            for lhs in sorted(self.rules, key=_lenlex, reverse=True):
                rhs = self.rules.pop(lhs)
                others_hit = self._find_redex(lhs)
                if others_hit is not None:
                    changed |= self._orient_and_add(self.reduce({lhs}) ^ self.reduce(rhs))
                else:
                    reduced = self.reduce(rhs)
                    self.rules[lhs] = reduced
            # overlaps
            for crit in self._critical_pairs():
                if self._orient_and_add(crit):
                    changed = True

    def _critical_pairs(self):
        pairs = []
        rules = sorted(self.rules, key=_lenlex)
        for l1 in rules:
            for l2 in rules:
                kmax = min(len(l1), len(l2))
                for k in range(1, kmax):
                    if l1[len(l1) - k :] == l2[:k]:
                        tail = l2[k:]
                        head = l1[: len(l1) - k]
                        a = {w + tail for w in self.rules[l1]}
                        b = {head + w for w in self.rules[l2]}
                        s = self.reduce(a ^ b)
                        if s:
                            pairs.append(set(s))
        return pairs

    def check_local_confluence(self) -> bool:
        return not self._critical_pairs()


class FinDimAlgebra:
    """Monomial basis plus structure constants over F2.

    Elements are int bitmasks (bit i = basis element i).  Multiplication is
    the bilinear extension of path concatenation reduced to normal form.
    """

    def __init__(self, basis, table, vertex_of_label, labels_repr, named=None):
        self.basis = list(basis)
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.table = table
        self._vertex_of_label = vertex_of_label
        self._labels_repr = labels_repr
        self.named = dict(named or {})

    # -- element helpers

    def element(self, labels) -> int:
        mask = 0
        for lab in labels:
            mask ^= 1 << self.index[lab]
        return mask

    def mul(self, x: int, y: int) -> int:
        out = 0
        xx = x
        while xx:
            xb = xx & -xx
            i = xb.bit_length() - 1
            xx ^= xb
            row = self.table[i]
            yy = y
            while yy:
                yb = yy & -yy
                j = yb.bit_length() - 1
                yy ^= yb
                out ^= row[j]
        return out

    def power(self, x: int, k: int) -> int:
        acc = x
        for _ in range(k - 1):
            acc = self.mul(acc, x)
        return acc

    @property
    def one(self) -> int:
        return self.element([b for b in self.basis if b[0] == "e"])

    def idempotent(self, v) -> int:
        return self.element([("e", v)])

    def labels(self, mask: int):
        return [self.basis[i] for i in range(self.dim) if mask >> i & 1]

    def show(self, mask: int) -> str:
        if mask == 0:
            return "0"
        return " + ".join(self._labels_repr(lab) for lab in self.labels(mask))

    def source_target(self, label):
        return self._vertex_of_label(label)

    def hom_basis(self, u, v):
        """Indices of basis paths from u to v (Hom of the projectives at u, v)."""
        out = []
        for i, lab in enumerate(self.basis):
            s, t = self._vertex_of_label(lab)
            if s == u and t == v:
                out.append(i)
        return out

    def vertices(self):
        return sorted({self._vertex_of_label(b)[0] for b in self.basis if b[0] == "e"})


class QuiverAlgebra(FinDimAlgebra):
    """FinDimAlgebra built from a presentation, with the rewriting data kept."""

    def __init__(self, pres: QuiverPresentation, rewriting: RewriteSystem, basis, table):
        self.pres = pres
        self.rewriting = rewriting

        def vertex_of(label):
            if label[0] == "e":
                return (label[1], label[1])
            return (pres.word_source(label), pres.word_target(label))

        def label_repr(label):
            if label[0] == "e":
                return f"e_{label[1]}"
            return pres.word_str(label)

        super().__init__(basis, table, vertex_of, label_repr)
        self.named = {a.name: self._word_mask((pres.arrow_index(a.name),)) for a in pres.arrows}
        for v in pres.vertices:
            self.named[f"e_{v}"] = self.idempotent(v)

    def cartan_matrix(self):
        vs = self.pres.vertices
        return [[len(self.hom_basis(u, v)) for v in vs] for u in vs]

    def relations_vanish(self) -> bool:
        for combo in self.pres.relations:
            acc = 0
            for w in combo:
                acc ^= self._word_mask(w)
            if acc != 0:
                return False
        return True

    def _word_mask(self, word) -> int:
        nf = self.rewriting.reduce({word})
        mask = 0
        for w in nf:
            mask ^= 1 << self.index[w]
        return mask


def build_algebra(pres: QuiverPresentation, dimension_bound: int) -> QuiverAlgebra:
    """Complete the rewriting system, enumerate the basis, emit structure constants.

    Raises AlgebraBuildError when the irreducible-path count exceeds
    dimension_bound (non-terminating or under-bounded presentation).
    """
    rw = RewriteSystem(pres)
    if not rw.check_local_confluence():
        raise AlgebraBuildError("completion finished but an overlap does not resolve")

    arrows_from: dict[str, list[int]] = {v: [] for v in pres.vertices}
    for i, a in enumerate(pres.arrows):
        arrows_from[a.source].append(i)

    basis = [("e", v) for v in pres.vertices]
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            outgoing = arrows_from[pres.word_target(w)] if w else range(len(pres.arrows))
            for a in outgoing:
                cand = w + (a,)
                # w is irreducible, so only suffixes ending at the new letter matter
                if any(cand[len(cand) - len(l) :] == l for l in rw.rules):
                    continue
                nxt.append(cand)
        basis.extend(sorted(nxt, key=_lenlex))
        if len(basis) > dimension_bound:
            raise AlgebraBuildError(
                f"irreducible path count exceeded the bound {dimension_bound}; "
                "presentation is not finite-dimensional at this bound or the bound is too small"
            )
        frontier = nxt

    index = {b: i for i, b in enumerate(basis)}
    dim = len(basis)
    table = [[0] * dim for _ in range(dim)]
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            table[i][j] = _product_mask(pres, rw, index, bi, bj)
    return QuiverAlgebra(pres, rw, basis, table)


def _product_mask(pres, rw, index, bi, bj):
    if bi[0] == "e" and bj[0] == "e":
        return (1 << index[bi]) if bi == bj else 0
    if bi[0] == "e":
        return (1 << index[bj]) if pres.word_source(bj) == bi[1] else 0
    if bj[0] == "e":
        return (1 << index[bi]) if pres.word_target(bi) == bj[1] else 0
    if pres.word_target(bi) != pres.word_source(bj):
        return 0
    mask = 0
    for w in rw.reduce({bi + bj}):
        mask ^= 1 << index[w]
    return mask


def cartan_matrix(algebra: QuiverAlgebra):
    return algebra.cartan_matrix()


def hom_projectives(algebra: FinDimAlgebra, u, v):
    """Basis (as masks) of Hom between the projectives at u and v.

    Realized by the paths from u to v; composition of such homomorphisms is
    the algebra product taken left to right.
    """
    return [1 << i for i in algebra.hom_basis(u, v)]
