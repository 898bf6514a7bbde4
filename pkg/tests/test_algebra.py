import pytest

from dihedralverify.algebra import AlgebraBuildError, build_algebra, hom_projectives
from dihedralverify.presentations import d2a_text, d2b_text
from dihedralverify.quiver import CompositionError, QuiverSyntaxError, parse_presentation

from _oracles import truncated_quotient_dimension


def test_parse_d2b_counts():
    pres = parse_presentation(d2b_text(2, 0))
    assert len(pres.vertices) == 2
    assert len(pres.arrows) == 4
    assert len(pres.relations) == 6
    assert pres.params == {"kappa": 2, "c": 0}


def test_parse_d2a_counts():
    pres = parse_presentation(d2a_text(2, 0))
    assert len(pres.vertices) == 2
    assert len(pres.arrows) == 3
    assert len(pres.relations) == 3


def test_parse_composability_error():
    bad = """
    quiver bad {
      vertices: 0, 1;
      arrows: alpha: 0 -> 0, beta: 0 -> 1;
      relations: beta*alpha;
    }
    """
    with pytest.raises(CompositionError, match="beta"):
        parse_presentation(bad)


def test_parse_inhomogeneous_relation_rejected():
    bad = """
    quiver bad {
      vertices: 0, 1;
      arrows: alpha: 0 -> 0, beta: 0 -> 1;
      relations: alpha + alpha*beta;
    }
    """
    with pytest.raises(CompositionError, match="homogeneous"):
        parse_presentation(bad)


def test_parse_syntax_error_carries_location():
    with pytest.raises(QuiverSyntaxError, match="line"):
        parse_presentation("quiver x { vertices 0; }")


def test_parse_parenthesized_powers():
    pres = parse_presentation(d2a_text(2, 0))
    (rel,) = [r for r in pres.relations if all(len(w) == 6 for w in r)]
    words = sorted(rel)
    a, b, g = (pres.arrow_index(x) for x in ("alpha", "beta", "gamma"))
    assert (a, b, g, a, b, g) in words
    assert (b, g, a, b, g, a) in words


@pytest.mark.parametrize("kappa,dim", [(2, 19), (4, 37), (8, 73)])
def test_d2a_dimension(kappa, dim):
    alg = build_algebra(parse_presentation(d2a_text(kappa, 0)), 9 * kappa + 1)
    assert alg.dim == dim


@pytest.mark.parametrize("kappa,dim", [(2, 11), (4, 13), (8, 17)])
def test_d2b_dimension(kappa, dim):
    alg = build_algebra(parse_presentation(d2b_text(kappa, 0)), kappa + 9)
    assert alg.dim == dim


def test_d2b_dimension_oracle():
    # expected value frozen from the truncated path-ideal oracle
    pres = parse_presentation(d2b_text(2, 0))
    assert truncated_quotient_dimension(pres, 6, 10) == (11, True)
    assert truncated_quotient_dimension(pres, 7, 11) == (11, True)
    assert build_algebra(pres, 64).dim == 11


def test_d2a_dimension_oracle():
    pres = parse_presentation(d2a_text(2, 0))
    assert truncated_quotient_dimension(pres, 7, 11) == (19, True)
    assert truncated_quotient_dimension(pres, 8, 12) == (19, True)
    assert build_algebra(pres, 64).dim == 19


def test_d2b_c1_dimension_unchanged():
    alg = build_algebra(parse_presentation(d2b_text(2, 1)), 64)
    assert alg.dim == 11


@pytest.mark.parametrize("kappa", [2, 4])
def test_d2a_cartan(kappa):
    alg = build_algebra(parse_presentation(d2a_text(kappa, 0)), 9 * kappa + 1)
    k = kappa
    assert alg.cartan_matrix() == [[4 * k, 2 * k], [2 * k, k + 1]]


def test_d2b_cartan():
    alg = build_algebra(parse_presentation(d2b_text(2, 0)), 11)
    assert alg.cartan_matrix() == [[4, 2], [2, 3]]


def test_cartan_row_sums_match_projective_dimensions():
    for text in (d2b_text(2, 0), d2a_text(4, 0)):
        alg = build_algebra(parse_presentation(text), 64)
        cm = alg.cartan_matrix()
        for i, u in enumerate(alg.pres.vertices):
            dim_proj = sum(
                1 for b in alg.basis if alg.source_target(b)[0] == u
            )
            assert sum(cm[i]) == dim_proj
        assert sum(sum(r) for r in cm) == alg.dim


def test_relations_vanish():
    for text in (d2b_text(2, 0), d2b_text(2, 1), d2a_text(2, 0), d2a_text(4, 0)):
        alg = build_algebra(parse_presentation(text), 80)
        assert alg.relations_vanish()


@pytest.mark.parametrize("kappa", [2, 4])
def test_associativity_exhaustive(kappa):
    alg = build_algebra(parse_presentation(d2a_text(kappa, 0)), 9 * kappa + 1)
    units = [1 << i for i in range(alg.dim)]
    for x in units:
        for y in units:
            xy = alg.mul(x, y)
            for z in units:
                assert alg.mul(xy, z) == alg.mul(x, alg.mul(y, z))


def test_identity_and_idempotents():
    alg = build_algebra(parse_presentation(d2b_text(2, 0)), 11)
    one = alg.one
    e0, e1 = alg.idempotent("0"), alg.idempotent("1")
    assert e0 ^ e1 == one
    assert alg.mul(e0, e0) == e0
    assert alg.mul(e0, e1) == 0
    for i in range(alg.dim):
        x = 1 << i
        assert alg.mul(one, x) == x
        assert alg.mul(x, one) == x


@pytest.mark.parametrize("kappa,c", [(2, 0), (4, 0), (2, 1)])
def test_d2b_structural_identities(kappa, c):
    alg = build_algebra(parse_presentation(d2b_text(kappa, c)), kappa + 9)
    al, be, ga, et = (alg.named[x] for x in ("alpha", "beta", "gamma", "eta"))
    mul = alg.mul
    assert mul(be, et) == 0
    assert mul(et, ga) == 0
    assert mul(ga, be) == 0
    abg = mul(al, mul(be, ga))
    assert abg == mul(mul(be, ga), al)
    assert mul(ga, mul(al, be)) == alg.power(et, kappa)
    assert mul(al, al) == (abg if c else 0)
    assert alg.power(et, kappa) != 0
    assert alg.power(et, kappa + 1) == 0
    # e1 A e1 = k[eta] of dimension kappa + 1
    assert len(alg.hom_basis("1", "1")) == kappa + 1


def test_hom_projectives_examples():
    alg = build_algebra(parse_presentation(d2b_text(2, 0)), 11)
    h10 = hom_projectives(alg, "1", "0")
    assert sorted(alg.show(m) for m in h10) == ["gamma", "gamma*alpha"]
    h01 = hom_projectives(alg, "0", "1")
    assert sorted(alg.show(m) for m in h01) == ["alpha*beta", "beta"]
    h00 = hom_projectives(alg, "0", "0")
    assert alg.idempotent("0") in h00
    assert len(h00) == alg.cartan_matrix()[0][0]


def test_unbounded_presentation_rejected():
    free = """
    quiver loop {
      vertices: 0;
      arrows: a: 0 -> 0;
      relations: ;
      params: ;
    }
    """
    with pytest.raises(AlgebraBuildError):
        build_algebra(parse_presentation(free), 20)
