"""Independent oracles used to freeze expected values.

The quotient-dimension oracle never touches the rewriting machinery: it
enumerates all composable paths up to a window length, spans the two-sided
ideal generated by the relations inside that window by brute force, and
eliminates over F2 with pivots preferring longer paths.  Because relations
may rewrite upward in length (eta^2 vs gamma*alpha*beta), the ideal window
must exceed the span of paths being measured; the dimension reported is the
rank of the classes of paths up to `span_len` inside the window quotient,
together with a certificate that paths one longer already reduce into that
span.
"""

from dihedralverify.linalg import f2_echelon, f2_reduce


def all_paths(pres, max_len):
    paths = [("e", v) for v in pres.vertices]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for i, a in enumerate(pres.arrows):
                if not w or pres.word_target(w) == a.source:
                    nxt.append(w + (i,))
        paths.extend(sorted(nxt))
        frontier = nxt
    return paths


def _src(pres, p):
    return p[1] if p[0] == "e" else pres.word_source(p)


def _tgt(pres, p):
    return p[1] if p[0] == "e" else pres.word_target(p)


def _len(p):
    return 0 if p[0] == "e" else len(p)


def _cat(p, w):
    """Concatenate allowing trivial paths."""
    left = () if p[0] == "e" else p
    right = () if w[0] == "e" else w
    out = left + right
    return out if out else p


def truncated_quotient_dimension(pres, span_len, window_len):
    """(dimension of the classes of paths <= span_len, spanning certificate)."""
    assert window_len > span_len
    paths = all_paths(pres, window_len)
    # length-lex ascending; bit position = index, so top bit = longest path
    paths.sort(key=lambda p: (0, p[1]) if p[0] == "e" else (len(p), p))
    index = {p: i for i, p in enumerate(paths)}

    vectors = []
    for combo in pres.relations:
        if not combo:
            continue
        some = next(iter(combo))
        u, v = pres.word_source(some), pres.word_target(some)
        longest = max(len(w) for w in combo)
        for p in paths:
            if _tgt(pres, p) != u or _len(p) + longest > window_len:
                continue
            for q in paths:
                if _src(pres, q) != v or _len(p) + longest + _len(q) > window_len:
                    continue
                vec = 0
                for w in combo:
                    vec ^= 1 << index[_cat(_cat(p, w), q)]
                if vec:
                    vectors.append(vec)

    basis, pivots = f2_echelon(vectors)
    short = sum(1 for p in paths if _len(p) <= span_len)
    short_pivots = sum(1 for b in pivots if b < short)  # paths sorted by length
    dim = short - short_pivots

    certificate = True
    for p in paths:
        if _len(p) == span_len + 1:
            residual = f2_reduce(1 << index[p], basis, pivots)
            if residual and _len(paths[residual.bit_length() - 1]) > span_len:
                certificate = False
                break
    return dim, certificate
