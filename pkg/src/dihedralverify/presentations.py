"""Canonical DSL texts for the two-simple-module dihedral family.

Both algebras live on two vertices.  The 2B quiver has a loop at each vertex
and an arrow each way; the 2A quiver drops the loop at vertex 1.  The
parameter kappa is 2^(n-2); c is 0 or 1.  Path products read left to right,
which is the orientation in which the relation words type-check.
"""

D2B_TEXT = """
quiver D2B {{
  vertices: 0, 1;
  arrows: alpha: 0 -> 0, beta: 0 -> 1, gamma: 1 -> 0, eta: 1 -> 1;
  relations:
    beta*eta,
    eta*gamma,
    gamma*beta,
    alpha^2 + c*alpha*beta*gamma,
    alpha*beta*gamma + beta*gamma*alpha,
    gamma*alpha*beta + eta^kappa;
  params: kappa={kappa}, c={c};
}}
"""

D2A_TEXT = """
quiver D2A {{
  vertices: 0, 1;
  arrows: alpha: 0 -> 0, beta: 0 -> 1, gamma: 1 -> 0;
  relations:
    gamma*beta,
    alpha^2 + c*(alpha*beta*gamma)^kappa,
    (alpha*beta*gamma)^kappa + (beta*gamma*alpha)^kappa;
  params: kappa={kappa}, c={c};
}}
"""


def d2b_text(kappa: int, c: int) -> str:
    return D2B_TEXT.format(kappa=kappa, c=c)


def d2a_text(kappa: int, c: int) -> str:
    return D2A_TEXT.format(kappa=kappa, c=c)


def d2b_dimension(kappa: int) -> int:
    """Basis count of the 2B algebra: 4 + 2 + 2 + (kappa + 1)."""
    return kappa + 9


def d2a_dimension(kappa: int) -> int:
    """Cartan entries 4k + 2k + 2k + (k+1)."""
    return 9 * kappa + 1
