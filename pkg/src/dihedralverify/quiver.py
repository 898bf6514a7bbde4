"""Parser for the quiver presentation DSL.

Syntax (whitespace-insensitive, sections in any order, trailing commas ok):

    quiver name {
      vertices: 0, 1;
      arrows: alpha: 0 -> 0, beta: 0 -> 1;
      relations: alpha^2 + c*alpha*beta*gamma, (beta*gamma)^kappa;
      params: kappa=2, c=0;
    }

A relation is an F2-linear combination of composable arrow words; `*` is
path composition read left to right ("alpha*beta" means alpha, then beta),
`^` repeats a factor, integer or parameter coefficients are reduced mod 2.
Every path must be composable and every relation homogeneous in
(source, target); violations are reported with the offending path.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class QuiverSyntaxError(ValueError):
    def __init__(self, message, line=None, col=None):
        loc = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(message + loc)
        self.line = line
        self.col = col


class CompositionError(ValueError):
    """A relation mentions a non-composable path."""


@dataclass
class Arrow:
    name: str
    source: str
    target: str


@dataclass
class QuiverPresentation:
    name: str
    vertices: list[str]
    arrows: list[Arrow]
    relations: list[frozenset]  # each a set of words; word = tuple of arrow indices
    relation_sources: list[str]
    params: dict[str, int] = field(default_factory=dict)

    def arrow_index(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == name:
                return i
        raise KeyError(name)

    def word_source(self, word) -> str:
        return self.arrows[word[0]].source

    def word_target(self, word) -> str:
        return self.arrows[word[-1]].target

    def word_str(self, word) -> str:
        return "*".join(self.arrows[i].name for i in word)


_PUNCT = ("->", "{", "}", "(", ")", ":", ";", ",", "^", "*", "+", "-", "=")


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        two = text[i : i + 2]
        if two == "->":
            tokens.append(("punct", "->", line, col))
            i += 2
            col += 2
            continue
        if ch in "{}():;,^*+-=":
            tokens.append(("punct", ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise QuiverSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise QuiverSyntaxError(f"expected {want!r}, found {tok[1]!r}", tok[2], tok[3])
        return tok

    def error(self, msg):
        tok = self.peek()
        raise QuiverSyntaxError(msg, tok[2], tok[3])


def parse_presentation(text: str, params: dict[str, int] | None = None) -> QuiverPresentation:
    """Parse the DSL; `params` overrides or supplements the params section."""
    p = _Parser(text)
    p.expect("ident", "quiver")
    name = p.expect("ident")[1]
    p.expect("punct", "{")

    sections: dict[str, list] = {}
    while p.peek()[1] != "}":
        head = p.expect("ident")[1]
        if head not in ("vertices", "arrows", "relations", "params"):
            raise QuiverSyntaxError(f"unknown section {head!r}", p.peek()[2], p.peek()[3])
        p.expect("punct", ":")
        sections[head] = _collect_until_semicolon(p)
    p.expect("punct", "}")

    if "vertices" not in sections or "arrows" not in sections:
        raise QuiverSyntaxError("presentation needs vertices and arrows sections")

    bound: dict[str, int] = {}
    for group in _split_commas(sections.get("params", [])):
        if not group:
            continue
        gp = _Parser("")
        gp.tokens = group + [("eof", "", 0, 0)]
        key = gp.expect("ident")[1]
        gp.expect("punct", "=")
        sign = 1
        if gp.peek()[1] == "-":
            gp.next()
            sign = -1
        val = int(gp.expect("int")[1]) * sign
        bound[key] = val
    if params:
        bound.update(params)

    vertices = []
    for group in _split_commas(sections["vertices"]):
        if not group:
            continue
        if len(group) != 1 or group[0][0] not in ("ident", "int"):
            raise QuiverSyntaxError("bad vertex name", group[0][2], group[0][3])
        vertices.append(group[0][1])
    if len(set(vertices)) != len(vertices):
        raise QuiverSyntaxError("duplicate vertex")

    arrows = []
    for group in _split_commas(sections["arrows"]):
        if not group:
            continue
        gp = _Parser("")
        gp.tokens = group + [("eof", "", 0, 0)]
        aname = gp.expect("ident")[1]
        gp.expect("punct", ":")
        src = gp.next()
        tgt_arrow = gp.expect("punct", "->")
        tgt = gp.next()
        del tgt_arrow
        for v, tok in ((src[1], src), (tgt[1], tgt)):
            if v not in vertices:
                raise QuiverSyntaxError(f"unknown vertex {v!r}", tok[2], tok[3])
        if any(a.name == aname for a in arrows) or aname in bound:
            raise QuiverSyntaxError(f"name {aname!r} already in use", group[0][2], group[0][3])
        arrows.append(Arrow(aname, src[1], tgt[1]))

    pres = QuiverPresentation(name, vertices, arrows, [], [], bound)

    for group in _split_commas(sections.get("relations", [])):
        if not group:
            continue
        text_span = " ".join(t[1] for t in group)
        combo = _parse_relation(pres, group, bound)
        _check_homogeneous(pres, combo, text_span)
        pres.relations.append(frozenset(combo))
        pres.relation_sources.append(text_span)
    return pres


def _collect_until_semicolon(p: _Parser):
    toks = []
    depth = 0
    while True:
        tok = p.peek()
        if tok[0] == "eof":
            p.error("unterminated section (missing ';')")
        if tok[1] == "{":
            depth += 1
        if tok[1] == "}" and depth == 0:
            # allow last section to omit the ';'
            return toks
        if tok[1] == ";" and depth == 0:
            p.next()
            return toks
        toks.append(p.next())


def _split_commas(tokens):
    groups = [[]]
    depth = 0
    for tok in tokens:
        if tok[1] == "(":
            depth += 1
        elif tok[1] == ")":
            depth -= 1
        if tok[1] == "," and depth == 0:
            groups.append([])
        else:
            groups[-1].append(tok)
    return groups


def _parse_relation(pres: QuiverPresentation, tokens, bound) -> set:
    gp = _Parser("")
    gp.tokens = list(tokens) + [("eof", "", tokens[-1][2] if tokens else 0, 0)]
    combo: set = set()
    while True:
        coeff, word = _parse_term(pres, gp, bound)
        if coeff % 2 == 1:
            combo ^= {word}
        tok = gp.peek()
        if tok[1] in ("+", "-"):
            gp.next()
            continue
        if tok[0] == "eof":
            return combo
        gp.error(f"unexpected {tok[1]!r} in relation")


def _parse_term(pres, gp, bound):
    coeff = 1
    factors = []
    first = True
    while True:
        tok = gp.peek()
        if tok[0] == "int" or (tok[0] == "ident" and tok[1] in bound):
            gp.next()
            if not first:
                gp.error("numeric coefficient must lead its term")
            coeff *= int(tok[1]) if tok[0] == "int" else bound[tok[1]]
        elif tok[0] == "ident":
            gp.next()
            word = (pres.arrow_index(tok[1]),) if _is_arrow(pres, tok) else None
            if word is None:
                raise QuiverSyntaxError(f"unknown name {tok[1]!r}", tok[2], tok[3])
            factors.append(_apply_power(pres, gp, bound, word, tok))
        elif tok[1] == "(":
            gp.next()
            sub = []
            while gp.peek()[1] != ")":
                inner = gp.next()
                if inner[0] == "eof":
                    raise QuiverSyntaxError("unbalanced parenthesis", tok[2], tok[3])
                sub.append(inner)
            gp.next()
            word = _parse_word(pres, sub, bound)
            factors.append(_apply_power(pres, gp, bound, word, tok))
        else:
            gp.error(f"unexpected {tok[1]!r} in term")
        first = False
        nxt = gp.peek()
        if nxt[1] == "*":
            gp.next()
            continue
        break
    word = _compose(pres, factors)
    if not word:
        raise QuiverSyntaxError("relation paths must have nonzero length")
    return coeff, word


def _is_arrow(pres, tok):
    return any(a.name == tok[1] for a in pres.arrows)


def _apply_power(pres, gp, bound, word, tok):
    if gp.peek()[1] == "^":
        gp.next()
        etok = gp.next()
        if etok[0] == "int":
            e = int(etok[1])
        elif etok[0] == "ident" and etok[1] in bound:
            e = bound[etok[1]]
        else:
            raise QuiverSyntaxError("exponent must be an integer or parameter", etok[2], etok[3])
        if e < 1:
            raise QuiverSyntaxError("exponent must be >= 1", etok[2], etok[3])
        word = _compose(pres, [word] * e)
    return word


def _parse_word(pres, tokens, bound):
    gp = _Parser("")
    gp.tokens = list(tokens) + [("eof", "", 0, 0)]
    factors = []
    while True:
        tok = gp.next()
        if tok[0] != "ident" or not _is_arrow(pres, tok):
            raise QuiverSyntaxError(f"expected an arrow name, found {tok[1]!r}", tok[2], tok[3])
        factors.append(_apply_power(pres, gp, bound, (pres.arrow_index(tok[1]),), tok))
        nxt = gp.peek()
        if nxt[1] == "*":
            gp.next()
            continue
        if nxt[0] == "eof":
            break
        raise QuiverSyntaxError(f"unexpected {nxt[1]!r} inside parentheses", nxt[2], nxt[3])
    return _compose(pres, factors)


def _compose(pres, factors):
    word = ()
    for f in factors:
        if word and pres.word_target(word) != pres.word_source(f):
            raise CompositionError(
                f"path {pres.word_str(word + f)!r} is not composable: "
                f"{pres.word_str(word)!r} ends at {pres.word_target(word)!r} but "
                f"{pres.word_str(f)!r} starts at {pres.word_source(f)!r}"
            )
        word = word + f
    return word


def _check_homogeneous(pres, combo, source_text):
    sigs = {(pres.word_source(w), pres.word_target(w)) for w in combo}
    if len(sigs) > 1:
        raise CompositionError(
            f"relation {source_text!r} is not homogeneous: mixes {sorted(sigs)}"
        )
