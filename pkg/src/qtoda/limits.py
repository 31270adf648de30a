"""Classical catalog and degeneration limits on the differential side.

Houses the classical Toda Hamiltonians (plain and with the coupling K on
the lowest root), differential operators with torus-polynomial
coefficients, truncated hbar expansions of difference operators (shift
operators become exponentials of derivatives), and the steepest-growth
limits of the trigonometric and elliptic inverse-sinh-squared models.

Type A constants live here: the dual Coxeter number equals N and the
maximal root is e_1 - e_N.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .scalars import LaurentQK, IllPosedLimitError, jet_expand
from .torus import TorusPoly
from .diffop import SL_QUOTIENT
from .qrep import weyl_vector


class LimitError(ArithmeticError):
    pass


def dual_coxeter(n):
    return n


def maximal_root(n):
    v = [0] * n
    v[0], v[-1] = 1, -1
    return tuple(v)


class DifferentialOp:
    """Finite sum of terms coefficient * d^gamma with torus-polynomial
    coefficients; gamma is a derivative multi-index."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        if terms:
            for gamma, coeff in terms.items():
                gamma = tuple(gamma)
                if len(gamma) != n or any(g < 0 for g in gamma):
                    raise LimitError("bad derivative index %s" % (gamma,))
                if not isinstance(coeff, TorusPoly):
                    coeff = TorusPoly.constant(n, _scalar(coeff))
                if coeff.is_zero:
                    continue
                prev = clean.get(gamma)
                s = coeff if prev is None else prev + coeff
                if s.is_zero:
                    clean.pop(gamma, None)
                else:
                    clean[gamma] = s
        self.terms = clean

    @staticmethod
    def zero(n):
        return DifferentialOp(n, {})

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for g, c in other.terms.items():
            s = terms.get(g)
            s = c if s is None else s + c
            if s.is_zero:
                terms.pop(g, None)
            else:
                terms[g] = s
        return DifferentialOp(self.n, terms)

    def __neg__(self):
        return DifferentialOp(self.n, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, scalar):
        return DifferentialOp(
            self.n, {g: c * scalar for g, c in self.terms.items()})

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, DifferentialOp):
            if other.n != self.n:
                raise LimitError("rank mismatch")
            return other
        if isinstance(other, (int, LaurentQK)):
            return DifferentialOp(
                self.n, {(0,) * self.n: TorusPoly.constant(self.n,
                                                           _scalar(other))})
        raise TypeError("cannot coerce %r" % (other,))

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms)))

    @property
    def is_zero(self):
        return not self.terms

    def sl_reduce(self):
        """Eliminate the last derivative: d_N -> -(d_1 + ... + d_(N-1)),
        expanded multinomially, then recanonicalized."""
        n = self.n
        out = DifferentialOp.zero(n)
        for gamma, coeff in self.terms.items():
            m = gamma[-1]
            if m == 0:
                out = out + DifferentialOp(n, {gamma: coeff})
                continue
            base = gamma[:-1]
            for combo in itertools.combinations_with_replacement(
                    range(n - 1), m):
                mult = _multinomial(combo, m)
                g = list(base) + [0]
                for j in combo:
                    g[j] += 1
                sign = -1 if m % 2 else 1
                out = out + DifferentialOp(
                    n, {tuple(g): coeff * (sign * mult)})
        return out

    def apply_to_monomial(self, lam):
        """The scalar-valued symbol of the operator on e^(lam . z):
        sum_gamma coeff * lam^gamma as a torus polynomial times the
        monomial; returns the full torus polynomial."""
        n = self.n
        out = TorusPoly.zero(n)
        for gamma, coeff in self.terms.items():
            mult = 1
            for lj, gj in zip(lam, gamma):
                mult *= lj ** gj
            if mult:
                out = out + coeff * LaurentQK.rational(mult)
        return out.exp_shift(lam)

    def __repr__(self):
        return "DifferentialOp(N=%d, %s)" % (self.n, self.text())

    def text(self):
        if not self.terms:
            return "0"
        return "  +  ".join("(%s) D%s" % (self.terms[g].text(), list(g))
                            for g in sorted(self.terms))

    def to_json(self):
        return {"N": self.n,
                "terms": [{"deriv": list(g), "coeff": self.terms[g].to_json()}
                          for g in sorted(self.terms)]}

    @staticmethod
    def from_json(data):
        n = data["N"]
        return DifferentialOp(
            n, {tuple(rec["deriv"]): TorusPoly.from_json(n, rec["coeff"])
                for rec in data["terms"]})


def _scalar(x):
    return x if isinstance(x, LaurentQK) else LaurentQK.rational(x)


def _multinomial(combo, m):
    import math
    counts = {}
    for j in combo:
        counts[j] = counts.get(j, 0) + 1
    out = math.factorial(m)
    for v in counts.values():
        out //= math.factorial(v)
    return out


# ---------------------------------------------------------------------------
# Classical catalog
# ---------------------------------------------------------------------------

def classical_toda(n):
    """-(1/2) Laplacian + sum of simple-root exponentials, in Z^N
    coordinates (sl reduction applied)."""
    op = DifferentialOp.zero(n)
    for j in range(n):
        g = [0] * n
        g[j] = 2
        op = op + DifferentialOp(
            n, {tuple(g): TorusPoly.constant(n, LaurentQK.rational(
                Fraction(-1, 2)))})
    for i in range(1, n):
        lam = [0] * n
        lam[i - 1], lam[i] = 1, -1
        op = op + DifferentialOp(
            n, {(0,) * n: TorusPoly.monomial(n, tuple(lam))})
    return op.sl_reduce()


def affine_classical_toda(n):
    """The classical Hamiltonian with the extra K e^(-theta . z) term on
    the lowest weight direction; K stays symbolic."""
    theta = maximal_root(n)
    extra = DifferentialOp(
        n, {(0,) * n: TorusPoly.monomial(
            n, tuple(-t for t in theta), LaurentQK.k(1))})
    return classical_toda(n) + extra.sl_reduce()


# ---------------------------------------------------------------------------
# Operator-valued hbar jets
# ---------------------------------------------------------------------------

class OperatorJet:
    """Truncated hbar expansion with DifferentialOp coefficients; orders
    run from ``floor`` (possibly negative) to ``order``."""

    __slots__ = ("n", "order", "floor", "coeffs")

    def __init__(self, n, order, coeffs, floor=0):
        self.n = n
        self.order = order
        self.floor = floor
        self.coeffs = dict(coeffs)

    def coeff(self, k):
        return self.coeffs.get(k, DifferentialOp.zero(self.n))

    def __add__(self, other):
        order = min(self.order, other.order)
        floor = min(self.floor, other.floor)
        out = {}
        for k in range(floor, order + 1):
            s = self.coeff(k) + other.coeff(k)
            if not s.is_zero:
                out[k] = s
        return OperatorJet(self.n, order, out, floor)


def difference_op_jet(op, order):
    """Expand a difference operator at q = e^hbar: every shift T_mu
    becomes the truncated exponential of hbar * (mu . d), and every scalar
    is jet-expanded; coefficients must be polynomial."""
    n = op.n
    coeffs = {k: DifferentialOp.zero(n) for k in range(order + 1)}
    for mu, f in op.terms.items():
        poly = f.as_poly()
        for lam, scal in poly.terms.items():
            sjet = jet_expand(scal, order)
            # powers of the directional derivative mu . d
            dir_pows = _directional_powers(n, mu, order)
            for m in range(order + 1):
                fact = 1
                for i in range(2, m + 1):
                    fact *= i
                for k in range(m, order + 1):
                    s = sjet.coeffs[k - m]
                    if s.is_zero:
                        continue
                    for gamma, mult in dir_pows[m].items():
                        contrib = TorusPoly.monomial(
                            n, lam, s * Fraction(mult, fact))
                        coeffs[k] = coeffs[k] + DifferentialOp(
                            n, {gamma: contrib})
    return OperatorJet(n, order, {k: v for k, v in coeffs.items()
                                  if not v.is_zero})


def _directional_powers(n, mu, order):
    """(mu . d)^m expanded into derivative multi-indices, m = 0..order."""
    out = [{(0,) * n: 1}]
    for _ in range(order):
        nxt = {}
        for gamma, mult in out[-1].items():
            for j in range(n):
                if mu[j]:
                    g = list(gamma)
                    g[j] += 1
                    key = tuple(g)
                    nxt[key] = nxt.get(key, 0) + mult * mu[j]
        out.append(nxt)
    return out


def quasiclassical_limit(op, dim_v, order=2):
    """The hbar -> 0 limit of (op - dim_v) / (q - q^(-1))^2.

    The constant term must cancel exactly, the hbar^(-1) part must vanish
    after sl reduction (it is proportional to the total derivative), and
    the hbar^0 part is returned sl-reduced.  ``order`` controls how many
    expansion orders beyond the minimum are carried (the result is the
    same for any admissible value; raising it only tightens the internal
    consistency window).
    """
    if op.mode != SL_QUOTIENT:
        raise LimitError("quasiclassical limit expects a quotient-mode input")
    n = op.n
    need = order + 2
    jet = difference_op_jet(op, need)
    const = jet.coeff(0) - DifferentialOp(
        n, {(0,) * n: TorusPoly.constant(n, _scalar(dim_v))})
    if not const.is_zero:
        raise LimitError("constant term %s does not cancel the dimension"
                         % const.text())
    numerator = OperatorJet(n, need, {k: jet.coeff(k)
                                      for k in range(1, need + 1)})
    c2 = jet_expand((LaurentQK.q(1) - LaurentQK.q(-1)) ** 2, need)
    # invert c2 / (4 hbar^2): a unit power series
    inv = _invert_unit_series([c2.coeffs[k + 2] for k in range(need - 1)],
                              need - 1)
    # quotient orders: k_num - 2 for k_num = 1..need
    quot = {}
    for k in range(1, need + 1):
        acc = DifferentialOp.zero(n)
        for i in range(1, k + 1):
            j = k - i
            if j <= need - 1:
                acc = acc + numerator.coeff(i) * inv[j]
        if not acc.is_zero:
            quot[k - 2] = acc
    residue = quot.get(-1, DifferentialOp.zero(n)).sl_reduce()
    if not residue.is_zero:
        raise LimitError("hbar^(-1) part survives sl reduction: %s"
                         % residue.text())
    return quot.get(0, DifferentialOp.zero(n)).sl_reduce()


def _invert_unit_series(coeffs, order):
    """Inverse of a power series whose constant term is an invertible
    monomial scalar; coefficient list starts at order 0."""
    lead = coeffs[0]
    if not lead.is_monomial():
        raise IllPosedLimitError("series leading coefficient not a unit")
    inv0 = lead.monomial_inverse()
    out = [inv0]
    for k in range(1, order + 1):
        acc = LaurentQK.zero()
        for i in range(1, k + 1):
            c = coeffs[i] if i < len(coeffs) else LaurentQK.zero()
            acc = acc + c * out[k - i]
        out.append(-inv0 * acc)
    return out


def classical_combination_fit(limit_op, candidates):
    """Express a quasiclassical limit as C * candidate + G with C a
    nonzero scalar and G a constant, trying each candidate in turn.

    Returns (index, C, G) for the first candidate that matches exactly, or
    None.  C is fitted on the leading derivative part, G on the constants.
    """
    n = limit_op.n
    const_key = (0,) * n
    origin = (0,) * n
    for idx, cand in enumerate(candidates):
        ratio = None
        ok = True
        for gamma, coeff in cand.terms.items():
            if gamma == const_key:
                continue
            got = limit_op.terms.get(gamma)
            if got is None:
                ok = False
                break
            for lam, c in coeff.terms.items():
                g = got.terms.get(lam)
                if g is None:
                    ok = False
                    break
                r = _scalar_ratio(g, c)
                if r is None or (ratio is not None and r != ratio):
                    ok = False
                    break
                ratio = r
            if not ok:
                break
        if not ok or ratio is None:
            continue
        diff = limit_op - cand * ratio
        # remainder must be a plain constant
        rem = {g: c for g, c in diff.terms.items() if not c.is_zero}
        if not rem:
            return idx, ratio, LaurentQK.zero()
        if set(rem) == {const_key}:
            const = rem[const_key].terms.get(origin)
            if const is not None and len(rem[const_key].terms) == 1:
                return idx, ratio, const
    return None


def _scalar_ratio(a, b):
    """a / b for scalars when b is a monomial; None otherwise."""
    if not b.is_monomial():
        return None
    return a * b.monomial_inverse()


# ---------------------------------------------------------------------------
# Inverse-sinh-squared models and their steepest-growth limits
# ---------------------------------------------------------------------------

class SinhTerm:
    """One potential term  prefactor(e^P) / sinh^2(-(w . z)/2 + lam*P
    + kappa*ln K)  of the rescaled interaction.

    ``w`` is the doubled coordinate form (so surviving exponentials have
    integral torus exponents), ``lam`` the escape rate in P, ``kappa`` the
    ln K coefficient; the prefactor is a polynomial in e^P stored as a
    degree -> rational dict.
    """

    __slots__ = ("w", "lam", "kappa2", "prefactor")

    def __init__(self, w, lam, kappa2, prefactor):
        if lam == 0:
            raise LimitError("argument does not escape: zero P rate")
        self.w = tuple(w)
        self.lam = lam
        self.kappa2 = kappa2      # doubled ln K coefficient (2*kappa)
        self.prefactor = dict(prefactor)

    def net_degrees(self, expansion_orders=(1, 2)):
        """Net e^P degrees of prefactor part p times lattice term r of the
        large-argument expansion sinh^(-2)(v) ~ 4 sum_r r e^(-2 r |v|)."""
        return [p - 2 * r * abs(self.lam)
                for p in self.prefactor for r in expansion_orders]

    def survivor_degree(self):
        return max(self.prefactor) - 2 * abs(self.lam)

    def limit_contribution(self, n):
        """The P -> +infinity limit of the term, when the leading
        expansion order exactly cancels the top prefactor degree."""
        top = max(self.prefactor)
        if top - 2 * abs(self.lam) != 0:
            raise LimitError("term does not survive")
        coeff = self.prefactor[top] * 4
        sign = 1 if self.lam > 0 else -1
        # e^(-2 sign v): the coordinate part contributes e^(sign * w . z),
        # the ln K part K^(-sign * 2 kappa)
        exp = tuple(sign * x for x in self.w)
        kpow = -sign * self.kappa2
        return TorusPoly.monomial(
            n, exp, LaurentQK.monomial(coeff, k=kpow))


def cm_limit(n, elliptic=False, window=3):
    """Steepest-growth limit of the inverse-sinh-squared model after the
    coupling substitution k = e^P / 2 and the drift h = -x/2 + P rho.

    Trigonometric mode: one term per positive root, escape rate
    (root . rho); survivors are exactly the simple roots and the limit is
    the classical Toda operator.  Elliptic mode: one term per positive
    root and lattice translate n, rate (root . rho) + n * N with ln K
    coefficient -n/2; the extra survivor is the maximal root at n = -1,
    contributing K times the lowest-root exponential.  Every enumerated
    non-survivor must have strictly negative net degree and the tail
    beyond the enumeration window is certified by monotonicity.

    Returns (DifferentialOp, certificate list).
    """
    rho = weyl_vector(n)
    prefactor = {2: Fraction(1, 4), 1: Fraction(-1, 2)}   # e^P(e^P - 2)/4
    terms = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            root = [0] * n
            root[i - 1], root[j - 1] = 1, -1
            rate = int(sum(r * x for r, x in zip(rho, root)))
            shifts = range(-window, window + 1) if elliptic else (0,)
            for m in shifts:
                lam = rate + m * dual_coxeter(n)
                if lam == 0:
                    raise LimitError("zero escape rate at root %s, n=%d"
                                     % (root, m))
                terms.append(SinhTerm(root, lam, -m, prefactor))
    certificates = []
    total = DifferentialOp.zero(n)
    for j in range(n):
        g = [0] * n
        g[j] = 2
        total = total + DifferentialOp(
            n, {tuple(g): TorusPoly.constant(
                n, LaurentQK.rational(Fraction(-1, 2)))})
    potential = TorusPoly.zero(n)
    for t in terms:
        deg = t.survivor_degree()
        degs = t.net_degrees()
        if deg == 0:
            # exactly one expansion piece balances the prefactor; all
            # subleading pieces must still decay
            if degs.count(0) != 1 or any(d > 0 for d in degs):
                raise LimitError("ambiguous survivor at %s" % (t.w,))
            potential = potential + t.limit_contribution(n)
            certificates.append({"w": t.w, "lam": t.lam, "survives": True,
                                 "subleading": sorted(d for d in degs if d)})
        else:
            if deg > 0 or any(d >= 0 for d in degs):
                raise LimitError("divergent term at %s" % (t.w,))
            certificates.append({"w": t.w, "lam": t.lam, "survives": False,
                                 "net_degree": deg})
    if elliptic:
        # tail certificate: |rate + m N| >= 2 for every |m| > window,
        # since |lam| grows by N per lattice step and N >= 2
        for i in range(1, n):
            assert abs(i - (window + 1) * n) >= 2 and \
                abs(i + (window + 1) * n) >= 2
    total = total + DifferentialOp(n, {(0,) * n: potential})
    return total.sl_reduce(), certificates
