"""Independent rank-one oracle for the trace engine.

A from-scratch PBW computation in the quantized rank-one enveloping
algebra, written against the presentation

    ebar f = f ebar + Kа - Kа^(-1),      ebar := (q - q^(-1)) e,
    Kmu ebar = q^(mu.alpha) ebar Kmu,    Kmu f = q^(-mu.alpha) f Kmu,

with Cartan monomials Kmu indexed by mu in Z^2 and alpha = (1, -1).
Elements are dicts mapping PBW keys (a, mu, b) = f^a Kmu ebar^b to
scalars.  Nothing here touches the trace engine: the central element is
entered by hand, its centrality is checked symbolically, and the
reduction to a difference operator uses the one-line rule

    f^a ebar^b Kmu  ->  beta^a c^b q^(b * mu.alpha) e^(a*alpha.z) T_mu

(valid for the zero-weight words a = b that occur here), followed by the
Weyl-vector conjugation q^(-rho.mu) and the center-of-mass quotient.
"""

from qtoda.scalars import LaurentQK
from qtoda.torus import TorusRat
from qtoda.diffop import DiffOp, GL

ALPHA = (1, -1)
C = LaurentQK.q(1) - LaurentQK.q(-1)


def _pair(mu):
    return mu[0] - mu[1]


def zero():
    return {}


def add_term(elem, key, coeff):
    cur = elem.get(key, LaurentQK.zero()) + coeff
    if cur.is_zero:
        elem.pop(key, None)
    else:
        elem[key] = cur
    return elem


def scale(elem, s):
    out = {}
    for key, c in elem.items():
        p = c * s
        if not p.is_zero:
            out[key] = p
    return out


def add(x, y):
    out = dict(x)
    for key, c in y.items():
        add_term(out, key, c)
    return out


def lmul_f(elem):
    return {(a + 1, mu, b): c for (a, mu, b), c in elem.items()}


def lmul_k(nu, elem):
    out = {}
    for (a, mu, b), c in elem.items():
        # K_nu f^a = q^(-a nu.alpha) f^a K_nu
        coeff = c * LaurentQK.q(-a * _pair(nu))
        key = (a, (mu[0] + nu[0], mu[1] + nu[1]), b)
        add_term(out, key, coeff)
    return out


def lmul_e(elem):
    """Left multiplication by ebar: ebar f^a = f^a ebar
    + [a-fold commutators], via ebar f = f ebar + K_alpha - K_(-alpha)."""
    out = {}
    for (a, mu, b), c in elem.items():
        if a == 0:
            # ebar K_mu = q^(-mu.alpha) K_mu ebar
            add_term(out, (0, mu, b + 1), c * LaurentQK.q(-_pair(mu)))
        else:
            rest = {(a - 1, mu, b): c}
            out = add(out, lmul_f(lmul_e(rest)))
            out = add(out, lmul_k((1, -1), rest))
            out = add(out, scale(lmul_k((-1, 1), rest), -1))
    return out


def multiply(x, y):
    """Product in the PBW algebra, by expanding x into generator strings."""
    out = zero()
    for (a, mu, b), c in x.items():
        acc = dict(y)
        for _ in range(b):
            acc = lmul_e(acc)
        acc = lmul_k(mu, acc)
        for _ in range(a):
            acc = lmul_f(acc)
        out = add(out, scale(acc, c))
    return out


def generators():
    e = {(0, (0, 0), 1): LaurentQK.one()}
    f = {(1, (0, 0), 0): LaurentQK.one()}
    k1 = {(0, (1, 0), 0): LaurentQK.one()}
    k2 = {(0, (0, 1), 0): LaurentQK.one()}
    return e, f, k1, k2


def central_element(presentation="faithful"):
    """The rank-one central element in two presentations that differ by
    the central Cartan monomial K_(1,1):

      faithful: q K_(2,0) + q^(-1) K_(0,2) + c^2 q f K_(0,1) e K_(1,0)
      plain:    q K_(1,-1) + q^(-1) K_(-1,1) + c^2 f e
    """
    q = LaurentQK.q(1)
    qi = LaurentQK.q(-1)
    if presentation == "faithful":
        out = {(0, (2, 0), 0): q, (0, (0, 2), 0): qi}
        # c^2 q * f K_(0,1) e K_(1,0) = c q * f K_(0,1) ebar K_(1,0)
        word = {(0, (1, 0), 0): C * q}
        word = lmul_e(word)
        word = lmul_k((0, 1), word)
        word = lmul_f(word)
        return add(out, word)
    if presentation == "plain":
        out = {(0, (1, -1), 0): q, (0, (-1, 1), 0): qi}
        word = {(0, (0, 0), 1): C}     # c * ebar = c^2 * e
        word = lmul_f(word)
        return add(out, word)
    raise ValueError(presentation)


def is_central(elem):
    for g in generators():
        if multiply(elem, g) != multiply(g, elem):
            return False
    return True


def reduce_to_operator(elem, beta=-1):
    """Whittaker-model reduction of a zero-weight PBW element, including
    the Weyl-vector conjugation, as a quotient-mode difference operator."""
    beta = LaurentQK.rational(beta)
    op = DiffOp.zero(2, GL)
    for (a, mu, b), c in elem.items():
        if a != b:
            raise ValueError("element has a nonzero-weight word f^%d e^%d"
                             % (a, b))
        scal = c * (C ** b) * (beta ** a) * LaurentQK.q(b * _pair(mu))
        # Weyl-vector conjugation: rho = (1/2, -1/2)
        scal = scal * LaurentQK.q_half(-(mu[0] - mu[1]))
        coeff = TorusRat.monomial(2, (a, -a), scal)
        op = op + DiffOp(2, {mu: coeff}, GL)
    return op.quotient_reduce()
