"""The noncommutative algebra of q-difference operators on the torus.

An operator is a finite sum  sum_mu f_mu * T_mu  with torus-rational
coefficients f_mu, where T_mu shifts z -> z + hbar*mu.  Composition follows

    (f T_mu)(g T_nu) = f * sigma_mu(g) * T_(mu+nu),

sigma_mu being the coefficient substitution z -> z + hbar*mu.  Everything
is exact, values are immutable, and quotient mode works over functions
invariant under the simultaneous shift of all coordinates (shift keys are
then canonicalized modulo (1,...,1)).

The module also houses two transformations used by the verification
suites: the generator automorphism T_i -> T_i,
e^(z_i - z_(i+1)) -> e^(z_i - z_(i+1)) T_i T_(i+1)^(-1) on a
winding-tracked coefficient lattice, and gauge conjugation by formal
factor products ruled by one-step difference equations.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import LaurentQK
from .torus import (
    TorusPoly, TorusRat,
    check_vector, com_quotient_canonicalize, dot, vadd,
)

GL = "gl"
SL_QUOTIENT = "sl-quotient"


class DiffOpError(ValueError):
    pass


class UnresolvedFactorError(DiffOpError):
    """A gauge conjugation left unmatched formal factor symbols."""


def cyclic_root(n, i):
    """Simple root alpha_i = e_i - e_(i+1) with indices cyclic mod n
    (i = n, equivalently 0, gives e_n - e_1)."""
    i = ((i - 1) % n) + 1
    v = [0] * n
    v[i - 1] += 1
    v[i % n] -= 1
    return tuple(v)


class DiffOp:
    __slots__ = ("n", "mode", "terms")

    def __init__(self, n, terms=None, mode=GL):
        if mode not in (GL, SL_QUOTIENT):
            raise DiffOpError("unknown mode %r" % mode)
        self.n = n
        self.mode = mode
        clean = {}
        if terms:
            for mu, f in terms.items():
                mu = check_vector(mu, n)
                if mode == SL_QUOTIENT:
                    mu = com_quotient_canonicalize(mu)
                if not isinstance(f, TorusRat):
                    f = TorusRat(f) if isinstance(f, TorusPoly) else \
                        TorusRat(TorusPoly.constant(n, _scalar(f)))
                if f.is_zero:
                    continue
                if mode == SL_QUOTIENT and not f.sl_balanced():
                    raise DiffOpError(
                        "coefficient of T%s does not descend to the "
                        "simultaneous-shift quotient" % (mu,))
                prev = clean.get(mu)
                s = f if prev is None else prev + f
                if s.is_zero:
                    clean.pop(mu, None)
                else:
                    clean[mu] = s
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(n, mode=GL):
        return DiffOp(n, {}, mode)

    @staticmethod
    def identity(n, mode=GL):
        return DiffOp(n, {(0,) * n: TorusRat.one(n)}, mode)

    @staticmethod
    def shift(n, mu, coeff=None, mode=GL):
        if coeff is None:
            coeff = TorusRat.one(n)
        return DiffOp(n, {tuple(mu): coeff}, mode)

    # -- linear structure --------------------------------------------------

    def _check(self, other):
        if self.n != other.n or self.mode != other.mode:
            raise DiffOpError("operators live in different algebras")

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        terms = dict(self.terms)
        for mu, f in other.terms.items():
            s = terms.get(mu)
            s = f if s is None else s + f
            if s.is_zero:
                terms.pop(mu, None)
            else:
                terms[mu] = s
        return self._wrap(terms)

    def __neg__(self):
        return self._wrap({mu: -f for mu, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, LaurentQK, TorusRat, TorusPoly)):
            g = other
            terms = {}
            for mu, f in self.terms.items():
                p = f * g
                if not p.is_zero:
                    terms[mu] = p
            return self._wrap(terms)
        return self.compose(other)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentQK, TorusRat, TorusPoly)):
            return self.__mul__(other)
        return NotImplemented

    def _coerce(self, other):
        if isinstance(other, DiffOp):
            return other
        if isinstance(other, (int, LaurentQK)):
            return DiffOp(self.n, {(0,) * self.n: _scalar(other)}, self.mode)
        raise TypeError("cannot coerce %r" % (other,))

    def _wrap(self, terms):
        out = DiffOp.__new__(DiffOp)
        out.n, out.mode, out.terms = self.n, self.mode, terms
        return out

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.n != other.n or self.mode != other.mode:
            return False
        if self.terms.keys() != other.terms.keys():
            return False
        return all(f == other.terms[mu] for mu, f in self.terms.items())

    def __hash__(self):
        return hash((self.n, self.mode, frozenset(self.terms)))

    @property
    def is_zero(self):
        return not self.terms

    # -- algebra ----------------------------------------------------------

    def compose(self, other):
        """Operator product, exact and associative."""
        other = self._coerce(other)
        self._check(other)
        terms = {}
        for mu, f in self.terms.items():
            for nu, g in other.terms.items():
                key = vadd(mu, nu)
                if self.mode == SL_QUOTIENT:
                    key = com_quotient_canonicalize(key)
                p = f * g.shift_substitute(mu)
                s = terms.get(key)
                s = p if s is None else s + p
                if s.is_zero:
                    terms.pop(key, None)
                else:
                    terms[key] = s
        return self._wrap(terms)

    def commutator(self, other):
        return self.compose(other) - other.compose(self)

    def gauge_monomial(self, lam):
        """Conjugate by the monomial e^(lam . z): the T_mu coefficient is
        multiplied by q^(-lam . mu).  The pairing must land in (1/2)Z."""
        lam = tuple(Fraction(x) for x in lam)
        if len(lam) != self.n:
            raise DiffOpError("gauge vector length mismatch")
        if self.mode == SL_QUOTIENT and sum(lam) != 0:
            raise DiffOpError(
                "gauge vector must have zero sum on the quotient")
        terms = {}
        for mu, f in self.terms.items():
            p = -2 * sum(l * m for l, m in zip(lam, mu))
            if p.denominator != 1:
                raise DiffOpError(
                    "gauge pairing outside (1/2)Z for %s" % (mu,))
            terms[mu] = f * LaurentQK.q_half(int(p))
        return self._wrap(terms)

    def quotient_reduce(self):
        """Pass to the simultaneous-shift quotient.  Requires every
        coefficient exponent to have zero sum."""
        for mu, f in self.terms.items():
            if not (f.num.is_sl() and f.den.is_sl()):
                raise DiffOpError(
                    "coefficient of T%s is not a function on the sl torus"
                    % (mu,))
        return DiffOp(self.n, self.terms, SL_QUOTIENT)

    def scalar_map(self, fn):
        """Apply a scalar-ring map to every coefficient (e.g. K -> value)."""
        terms = {}
        for mu, f in self.terms.items():
            den = f.den.map_coeffs(fn)
            if den.is_zero:
                raise ZeroDivisionError("denominator vanished under map")
            g = TorusRat(f.num.map_coeffs(fn), den)
            if not g.is_zero:
                terms[mu] = g
        return self._wrap(terms)

    def substitute_k(self, value):
        return self.scalar_map(lambda c: c.substitute_k(value))

    # -- rendering ---------------------------------------------------------

    def __repr__(self):
        return "DiffOp(N=%d, %s)" % (self.n, self.text())

    def text(self):
        if not self.terms:
            return "0"
        lines = []
        for mu in sorted(self.terms):
            lines.append("(%s) T%s" % (self.terms[mu].text(), list(mu)))
        return "  +  ".join(lines)

    def to_json(self):
        return {
            "N": self.n,
            "mode": self.mode,
            "terms": [
                {"shift": list(mu),
                 "num": self.terms[mu].num.to_json(),
                 "den": self.terms[mu].den.to_json()}
                for mu in sorted(self.terms)
            ],
        }

    @staticmethod
    def from_json(data):
        n = data["N"]
        terms = {}
        for rec in data["terms"]:
            f = TorusRat(TorusPoly.from_json(n, rec["num"]),
                         TorusPoly.from_json(n, rec["den"]))
            terms[tuple(rec["shift"])] = f
        return DiffOp(n, terms, data["mode"])


def _scalar(x):
    return x if isinstance(x, LaurentQK) else LaurentQK.rational(x)


# ---------------------------------------------------------------------------
# The root-exponential generator automorphism
# ---------------------------------------------------------------------------
#
# The map fixes every T_i and sends the cyclic root exponential
# E_i = e^(z_i - z_(i+1)) to E_i T_i T_(i+1)^(-1).  Because the N cyclic
# root exponentials multiply to 1 while their images pick up a net q power,
# the map is only multiplicative on coefficients tracked on the covering
# lattice Z^N of formal E-monomials ("winding" kept explicit).  RootLiftOp
# is that lifted algebra; plain operators are lifted monomial by monomial
# with the minimum-entry-zero representative.

class RootLiftOp:
    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        if terms:
            for (m, mu), c in terms.items():
                m = check_vector(m, n)
                mu = check_vector(mu, n)
                c = _scalar(c)
                if c.is_zero:
                    continue
                key = (m, mu)
                prev = clean.get(key)
                s = c if prev is None else prev + c
                if s.is_zero:
                    clean.pop(key, None)
                else:
                    clean[key] = s
        self.terms = clean

    @staticmethod
    def generator_e(n, i, power=1):
        m = [0] * n
        m[i - 1] = power
        return RootLiftOp(n, {(tuple(m), (0,) * n): LaurentQK.one()})

    @staticmethod
    def generator_t(n, j, power=1):
        mu = [0] * n
        mu[j - 1] = power
        return RootLiftOp(n, {((0,) * n, tuple(mu)): LaurentQK.one()})

    def root_form(self, m):
        """The exponent vector sum_i m_i alpha_i of a winding monomial."""
        lam = [0] * self.n
        for i, mi in enumerate(m, start=1):
            if mi:
                r = cyclic_root(self.n, i)
                lam = [a + mi * b for a, b in zip(lam, r)]
        return tuple(lam)

    def __add__(self, other):
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key)
            s = c if s is None else s + c
            if s.is_zero:
                terms.pop(key, None)
            else:
                terms[key] = s
        return RootLiftOp(self.n, terms)

    def __neg__(self):
        return RootLiftOp(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentQK)):
            s = _scalar(other)
            return RootLiftOp(self.n,
                              {k: c * s for k, c in self.terms.items()})
        terms = {}
        for (m1, mu1), c1 in self.terms.items():
            for (m2, mu2), c2 in other.terms.items():
                # T_mu1 E^m2 = q^(lam2 . mu1) E^m2 T_mu1
                lam2 = self.root_form(m2)
                c = c1 * c2 * LaurentQK.q(dot(lam2, mu1))
                key = (vadd(m1, m2), vadd(mu1, mu2))
                s = terms.get(key)
                s = c if s is None else s + c
                if s.is_zero:
                    terms.pop(key, None)
                else:
                    terms[key] = s
        return RootLiftOp(self.n, terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RootLiftOp):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms)))

    def to_diffop(self, mode=SL_QUOTIENT):
        """Forget the winding: E^m becomes the torus monomial e^(lam . z)."""
        out = DiffOp.zero(self.n, mode)
        for (m, mu), c in self.terms.items():
            lam = self.root_form(m)
            coeff = TorusRat.monomial(self.n, lam, c)
            out = out + DiffOp(self.n, {mu: coeff}, mode)
        return out

    @staticmethod
    def from_diffop(op):
        """Lift each coefficient monomial with the minimum-entry-zero
        winding representative.  Coefficients must be polynomial with
        zero-sum exponents (Laurent combinations of root exponentials)."""
        n = op.n
        terms = {}
        for mu, f in op.terms.items():
            if not f.is_polynomial():
                raise DiffOpError("cannot lift a non-polynomial coefficient")
            for lam, c in f.as_poly().terms.items():
                if sum(lam) != 0:
                    raise DiffOpError(
                        "coefficient exponent %s is not in the root lattice"
                        % (lam,))
                m = _min_zero_lift(lam)
                key = (m, mu)
                prev = terms.get(key)
                s = c if prev is None else prev + c
                if s.is_zero:
                    terms.pop(key, None)
                else:
                    terms[key] = s
        return RootLiftOp(n, terms)

    def __repr__(self):
        parts = []
        for (m, mu) in sorted(self.terms):
            parts.append("(%s) E%s T%s"
                         % (self.terms[(m, mu)].text(), list(m), list(mu)))
        return "RootLiftOp[%s]" % ("  +  ".join(parts) or "0")


def _min_zero_lift(lam):
    """Winding vector m with sum_i m_i alpha_i = lam (cyclic roots) and
    min(m) = 0: partial sums of lam, shifted."""
    m = []
    acc = 0
    for x in lam[:-1]:
        acc += x
        m.append(acc)
    m.append(0)
    lo = min(m)
    return tuple(x - lo for x in m)


def sect6_automorphism(op):
    """Image of an operator under T_i -> T_i,
    E_i -> E_i T_i T_(i+1)^(-1) (cyclic indices).

    Accepts either a RootLiftOp or a DiffOp whose coefficients are Laurent
    polynomials in the root exponentials; a DiffOp comes back as a DiffOp
    in the same mode.  On a winding term E^m T_mu the images of the
    generators are multiplied in ascending generator order, which yields

        q^(s(m)) E^m T_(mu + sum_i m_i (e_i - e_(i+1))),

    with s(m) = sum_i m_i (m_i - 1)
             + sum_(i<j) m_i m_j (alpha_j . (e_i - e_(i+1))).
    """
    if isinstance(op, DiffOp):
        lifted = RootLiftOp.from_diffop(op)
        return sect6_automorphism(lifted).to_diffop(op.mode)
    n = op.n
    terms = {}
    for (m, mu), c in op.terms.items():
        s = 0
        for i, mi in enumerate(m, start=1):
            s += mi * (mi - 1)
            di = cyclic_root(n, i)
            for j in range(i + 1, n + 1):
                mj = m[j - 1]
                if mj:
                    s += mi * mj * dot(cyclic_root(n, j), di)
        shift = [0] * n
        for i, mi in enumerate(m, start=1):
            if mi:
                r = cyclic_root(n, i)
                shift = [a + mi * b for a, b in zip(shift, r)]
        key = (m, vadd(mu, tuple(shift)))
        c2 = c * LaurentQK.q(s)
        prev = terms.get(key)
        tot = c2 if prev is None else prev + c2
        if tot.is_zero:
            terms.pop(key, None)
        else:
            terms[key] = tot
    return RootLiftOp(n, terms)


# ---------------------------------------------------------------------------
# Formal factor products and gauge conjugation
# ---------------------------------------------------------------------------

class FactorRule:
    """A one-step difference equation psi(x + step*hbar) = psi(x) * u(x)
    for an invertible gauge symbol psi.

    The multiplier u is a FactorCoeff-valued function of the argument;
    ``multiplier(form, offset)`` must return u evaluated at
    form . z + offset*hbar.
    """

    __slots__ = ("name", "step", "multiplier")

    def __init__(self, name, step, multiplier):
        if step == 0:
            raise DiffOpError("factor rule step must be nonzero")
        self.name = name
        self.step = step
        self.multiplier = multiplier

    def shift_ratio(self, n, form, mu):
        """The exact ratio psi(arg + (form.mu)*hbar) / psi(arg) for
        arg = form . z, as a FactorCoeff.  The move must be an integer
        multiple of the step."""
        move = dot(form, mu)
        if move % self.step:
            raise DiffOpError(
                "shift %s moves argument of %s by %d, not a multiple of "
                "step %d" % (mu, self.name, move, self.step))
        t = move // self.step
        out = FactorCoeff.one(n)
        if t > 0:
            for s in range(t):
                out = out * self.multiplier(form, s * self.step)
        else:
            for s in range(1, -t + 1):
                out = out * self.multiplier(form, -s * self.step).inverse()
        return out


class FactorCoeff:
    """A torus-rational coefficient times a formal product of square-root
    factor symbols f(form . z + offset*hbar)^e with f^2 = 1 + g^2 q^offset
    e^(form . z).  Resolves to a TorusRat once every f exponent is even."""

    __slots__ = ("base", "fsyms")

    def __init__(self, base, fsyms=None):
        self.base = base
        clean = {}
        if fsyms:
            for key, e in fsyms.items():
                if e:
                    clean[key] = clean.get(key, 0) + e
                    if not clean[key]:
                        del clean[key]
        self.fsyms = clean

    @staticmethod
    def one(n):
        return FactorCoeff(TorusRat.one(n))

    @staticmethod
    def fsym(n, form, offset=0, power=1):
        return FactorCoeff(TorusRat.one(n), {(tuple(form), offset): power})

    def __mul__(self, other):
        if isinstance(other, (int, LaurentQK, TorusRat)):
            return FactorCoeff(self.base * other, self.fsyms)
        fs = dict(self.fsyms)
        for key, e in other.fsyms.items():
            fs[key] = fs.get(key, 0) + e
            if not fs[key]:
                del fs[key]
        return FactorCoeff(self.base * other.base, fs)

    __rmul__ = __mul__

    def inverse(self):
        return FactorCoeff(self.base.inverse(),
                           {k: -e for k, e in self.fsyms.items()})

    def shift_substitute(self, mu):
        """sigma_mu moves each symbol's offset by form . mu."""
        fs = {}
        for (form, off), e in self.fsyms.items():
            key = (form, off + dot(form, mu))
            fs[key] = fs.get(key, 0) + e
        return FactorCoeff(self.base.shift_substitute(mu), fs)

    def resolve(self):
        """Substitute f(...)^2 = 1 + g^2 q^offset e^(form.z); error if any
        symbol is left with an odd exponent."""
        out = self.base
        n = self.base.n
        for (form, off), e in sorted(self.fsyms.items()):
            if e % 2:
                raise UnresolvedFactorError(
                    "unmatched factor symbol f(%s . z %+d hbar)^%d"
                    % (list(form), off, e))
            sq = TorusRat(
                TorusPoly.one(n)
                + TorusPoly.monomial(
                    n, form, LaurentQK.g2(1) * LaurentQK.q_half(2 * off)))
            half = e // 2
            if half > 0:
                for _ in range(half):
                    out = out * sq
            else:
                inv = sq.inverse()
                for _ in range(-half):
                    out = out * inv
        return out


class FormalFactorProduct:
    """An ordered product of instantiated gauge factors psi(form . z)."""

    __slots__ = ("n", "factors")

    def __init__(self, n, factors):
        self.n = n
        self.factors = []
        for rule, form in factors:
            form = check_vector(form, n)
            self.factors.append((rule, form))

    def shift_ratio(self, mu):
        out = FactorCoeff.one(self.n)
        for rule, form in self.factors:
            out = out * rule.shift_ratio(self.n, form, mu)
        return out


def conjugate_by_factor_product(op, product, direction=1):
    """Exact gauge conjugation: direction +1 gives product^(-1) A product,
    direction -1 gives product A product^(-1).

    Coefficients may be FactorCoeff-valued (a dict shift -> FactorCoeff)
    or a plain DiffOp; the result is a resolved DiffOp and it is an error
    if any factor symbol survives.
    """
    if isinstance(op, DiffOp):
        coeffs = {mu: FactorCoeff(f) for mu, f in op.terms.items()}
        n, mode = op.n, op.mode
    else:
        n, mode, coeffs = op
    if direction not in (1, -1):
        raise DiffOpError("direction must be +1 or -1")
    out_terms = {}
    for mu, coeff in coeffs.items():
        ratio = product.shift_ratio(mu)
        if direction == -1:
            ratio = ratio.inverse()
        resolved = (coeff * ratio).resolve()
        if not resolved.is_zero:
            out_terms[mu] = resolved
    return DiffOp(n, out_terms, mode)
