"""Functions on the formal torus: exponent lattices and Laurent sums.

A torus polynomial is a finite sum  sum_lam c_lam * e^(lam . z)  with
lam in Z^N and scalar coefficients; a torus rational is a quotient of two
such polynomials.  The difference-operator shift z -> z + hbar*mu acts on
a monomial by multiplication with q^(lam . mu), which is the only way the
coordinates ever enter.

In sl mode every stored exponent vector must sum to zero, so the
simultaneous-shift quotient (identifying mu with mu + (1,...,1)) never
changes a coefficient.

Values are immutable after construction and safe to share between
threads; every operation returns a fresh object.
"""

from __future__ import annotations

from .scalars import LaurentQK

ONE = LaurentQK.one()


class TorusError(ValueError):
    pass


def check_vector(v, n):
    v = tuple(v)
    if len(v) != n:
        raise TorusError("vector length %d does not match N=%d" % (len(v), n))
    if not all(isinstance(e, int) for e in v):
        raise TorusError("lattice vectors must have integer entries")
    return v


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def com_quotient_canonicalize(mu):
    """Canonical representative of a shift modulo Z*(1,...,1): subtract the
    last entry, so canonical vectors end in 0."""
    last = mu[-1]
    if last == 0:
        return tuple(mu)
    return tuple(e - last for e in mu)


class TorusPoly:
    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None, sl=False):
        self.n = n
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = check_vector(exp, n)
                if sl and sum(exp) != 0:
                    raise TorusError("sl mode requires zero-sum exponents")
                if not isinstance(c, LaurentQK):
                    c = LaurentQK.rational(c)
                if not c.is_zero:
                    prev = clean.get(exp)
                    if prev is None:
                        clean[exp] = c
                    else:
                        s = prev + c
                        if s.is_zero:
                            del clean[exp]
                        else:
                            clean[exp] = s
        self.terms = clean

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero(n):
        return TorusPoly(n, {})

    @staticmethod
    def one(n):
        return TorusPoly(n, {(0,) * n: ONE})

    @staticmethod
    def constant(n, scalar):
        return TorusPoly(n, {(0,) * n: scalar})

    @staticmethod
    def monomial(n, exp, coeff=ONE):
        return TorusPoly(n, {tuple(exp): coeff})

    # -- ring ops --------------------------------------------------------

    def _check(self, other):
        if self.n != other.n:
            raise TorusError("mixed torus ranks %d and %d" % (self.n, other.n))

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp)
            s = c if s is None else s + c
            if s.is_zero:
                terms.pop(exp, None)
            else:
                terms[exp] = s
        out = TorusPoly.__new__(TorusPoly)
        out.n, out.terms = self.n, terms
        return out

    def __neg__(self):
        out = TorusPoly.__new__(TorusPoly)
        out.n = self.n
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, LaurentQK) or isinstance(other, int):
            s = other if isinstance(other, LaurentQK) \
                else LaurentQK.rational(other)
            out = TorusPoly.__new__(TorusPoly)
            out.n = self.n
            out.terms = {}
            if not s.is_zero:
                for e, c in self.terms.items():
                    p = c * s
                    if not p.is_zero:
                        out.terms[e] = p
            return out
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = vadd(e1, e2)
                p = c1 * c2
                s = terms.get(e)
                s = p if s is None else s + p
                if s.is_zero:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        out = TorusPoly.__new__(TorusPoly)
        out.n, out.terms = self.n, terms
        return out

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, TorusPoly):
            return other
        if isinstance(other, (int, LaurentQK)):
            s = other if isinstance(other, LaurentQK) \
                else LaurentQK.rational(other)
            return TorusPoly.constant(self.n, s)
        raise TypeError("cannot coerce %r" % (other,))

    def __eq__(self, other):
        if isinstance(other, (int, LaurentQK)):
            other = self._coerce(other)
        if not isinstance(other, TorusPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    # -- torus structure ----------------------------------------------

    def shift_substitute(self, mu):
        """z -> z + hbar*mu: each monomial e^(lam.z) picks up q^(lam.mu)."""
        mu = check_vector(mu, self.n)
        terms = {}
        for e, c in self.terms.items():
            p = dot(e, mu)
            terms[e] = c * LaurentQK.q(p) if p else c
        out = TorusPoly.__new__(TorusPoly)
        out.n, out.terms = self.n, terms
        return out

    def monomial_content(self):
        """Componentwise minimum of the exponent vectors (zero poly: origin)."""
        if not self.terms:
            return (0,) * self.n
        cols = zip(*self.terms.keys())
        return tuple(min(col) for col in cols)

    def exp_shift(self, delta):
        """Multiply by the monomial e^(delta . z)."""
        delta = check_vector(delta, self.n)
        out = TorusPoly.__new__(TorusPoly)
        out.n = self.n
        out.terms = {vadd(e, delta): c for e, c in self.terms.items()}
        return out

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading monomial."""
        if not self.terms:
            raise TorusError("zero polynomial has no leading term")
        key = max(self.terms, key=lambda e: (sum(e), e))
        return key, self.terms[key]

    def map_coeffs(self, fn):
        """Termwise scalar map; drops terms whose image vanishes."""
        out = TorusPoly.__new__(TorusPoly)
        out.n = self.n
        out.terms = {}
        for e, c in self.terms.items():
            c2 = fn(c)
            if not c2.is_zero:
                out.terms[e] = c2
        return out

    def is_sl(self):
        return all(sum(e) == 0 for e in self.terms)

    # -- rendering -------------------------------------------------------

    def __repr__(self):
        return "TorusPoly(%s)" % self.text()

    def text(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "e[%s]" % ",".join(str(x) for x in e) if any(e) else ""
            ct = c.text()
            if mono and ct == "1":
                parts.append(mono)
            elif mono:
                parts.append("(%s)*%s" % (ct, mono))
            else:
                parts.append("(%s)" % ct)
        return " + ".join(parts)

    def to_json(self):
        return [{"exp": list(e), "coeff": c.to_json()}
                for e, c in sorted(self.terms.items())]

    @staticmethod
    def from_json(n, data):
        return TorusPoly(
            n, {tuple(d["exp"]): LaurentQK.from_json(d["coeff"]) for d in data})


class TorusRat:
    """Quotient of torus polynomials, normalized by clearing the common
    monomial content and scaling the denominator's graded-lex leading
    coefficient's leading unit to 1.

    Equality is decided by exact cross multiplication, so representatives
    with uncancelled common factors still compare correctly.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = TorusPoly.one(num.n)
        if num.n != den.n:
            raise TorusError("numerator and denominator rank mismatch")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def zero(n):
        return TorusRat(TorusPoly.zero(n))

    @staticmethod
    def one(n):
        return TorusRat(TorusPoly.one(n))

    @staticmethod
    def monomial(n, exp, coeff=ONE):
        return TorusRat(TorusPoly.monomial(n, exp, coeff))

    @property
    def n(self):
        return self.num.n

    @property
    def is_zero(self):
        return self.num.is_zero

    def is_polynomial(self):
        return self.den == TorusPoly.one(self.n)

    def as_poly(self):
        if not self.is_polynomial():
            raise TorusError("not a polynomial: %s" % self.text())
        return self.num

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return TorusRat(self.num + other.num, self.den)
        return TorusRat(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    def __neg__(self):
        out = TorusRat.__new__(TorusRat)
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, LaurentQK)):
            return TorusRat(self.num * other, self.den)
        other = self._coerce(other)
        return TorusRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return TorusRat(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def _coerce(self, other):
        if isinstance(other, TorusRat):
            return other
        if isinstance(other, TorusPoly):
            return TorusRat(other)
        if isinstance(other, (int, LaurentQK)):
            return TorusRat(TorusPoly.constant(self.n, _scalar(other)))
        raise TypeError("cannot coerce %r" % (other,))

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def shift_substitute(self, mu):
        out = TorusRat.__new__(TorusRat)
        out.num = self.num.shift_substitute(mu)
        out.den = self.den.shift_substitute(mu)
        return out

    def map_coeffs(self, fn):
        """Apply a multiplicative scalar map to numerator and denominator."""
        return TorusRat(self.num.map_coeffs(fn), self.den.map_coeffs(fn))

    def sl_balanced(self):
        """True when the ratio descends to the sl torus: numerator and
        denominator each homogeneous in total exponent, of equal weight."""
        if self.num.is_zero:
            return True
        wn = {sum(e) for e in self.num.terms}
        wd = {sum(e) for e in self.den.terms}
        return len(wn) == 1 and wn == wd

    def __repr__(self):
        return "TorusRat(%s)" % self.text()

    def text(self):
        if self.is_polynomial():
            return self.num.text()
        return "(%s) / (%s)" % (self.num.text(), self.den.text())

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(n, data):
        return TorusRat(TorusPoly.from_json(n, data["num"]),
                        TorusPoly.from_json(n, data["den"]))


def _scalar(x):
    return x if isinstance(x, LaurentQK) else LaurentQK.rational(x)


def _normalize(num, den):
    if num.is_zero:
        return num, TorusPoly.one(num.n)
    shift = vneg(den.monomial_content())
    if any(shift):
        num = num.exp_shift(shift)
        den = den.exp_shift(shift)
    _, lead = den.leading()
    unit = lead.leading_unit()
    if not unit.is_one:
        inv = unit.monomial_inverse()
        num = num.map_coeffs(lambda c: c * inv)
        den = den.map_coeffs(lambda c: c * inv)
    return num, den
