"""Exact scalar arithmetic: Laurent polynomials in q and K over the rationals.

The scalar ring of the whole package.  A scalar is a finite sum of terms

    c * q^(a/2) * K^b * (g^2)^e * (q^(2k))^f * (K^(1/N))^r

with rational c.  The q exponent is stored doubled so that half-integer
powers (which arise from conjugation by the Weyl-vector monomial) stay in
integer arithmetic.  The auxiliary slots g2, tk and kr are only populated
inside the relativistic and Macdonald checks; core outputs keep them zero.

All values are immutable after construction and safe to share.
"""

from __future__ import annotations

from fractions import Fraction

#: exponent slots per term: doubled q exponent, K, g^2, q^(2k), K-root
SLOTS = ("q2", "K", "g2", "tk", "kr")
_NS = len(SLOTS)
_ZKEY = (0,) * _NS


class IllPosedLimitError(ArithmeticError):
    """Raised when a truncated series quotient does not exist at the
    requested window."""


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, LaurentQK):
        raise TypeError("expected a rational, got a LaurentQK")
    return Fraction(x)


class LaurentQK:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, c in terms.items():
                c = _as_fraction(c)
                if c:
                    key = tuple(key)
                    if len(key) != _NS:
                        raise ValueError(
                            "exponent key must have %d slots" % _NS)
                    prev = clean.get(key)
                    if prev is None:
                        clean[key] = c
                    else:
                        s = prev + c
                        if s:
                            clean[key] = s
                        else:
                            del clean[key]
        self.terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero():
        return LaurentQK()

    @staticmethod
    def one():
        return LaurentQK({_ZKEY: 1})

    @staticmethod
    def rational(x):
        return LaurentQK({_ZKEY: _as_fraction(x)})

    @staticmethod
    def monomial(coeff=1, q2=0, k=0, g2=0, tk=0, kr=0):
        return LaurentQK({(q2, k, g2, tk, kr): _as_fraction(coeff)})

    @staticmethod
    def q(n=1):
        """q^n for integer n."""
        return LaurentQK.monomial(1, q2=2 * n)

    @staticmethod
    def q_half(n2):
        """q^(n2/2); the argument is the doubled exponent."""
        return LaurentQK.monomial(1, q2=n2)

    @staticmethod
    def k(n=1):
        return LaurentQK.monomial(1, k=n)

    @staticmethod
    def g2(n=1):
        return LaurentQK.monomial(1, g2=n)

    @staticmethod
    def tk(n=1):
        return LaurentQK.monomial(1, tk=n)

    @staticmethod
    def kroot(n=1):
        return LaurentQK.monomial(1, kr=n)

    # -- ring structure ------------------------------------------------

    def __add__(self, other):
        other = _promote(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key, _F0) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        out = LaurentQK.__new__(LaurentQK)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentQK.__new__(LaurentQK)
        out.terms = {key: -c for key, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-_promote(other))

    def __rsub__(self, other):
        return _promote(other) + (-self)

    def __mul__(self, other):
        other = _promote(other)
        if not self.terms or not other.terms:
            return LaurentQK()
        terms = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2],
                       k1[3] + k2[3], k1[4] + k2[4])
                s = terms.get(key, _F0) + c1 * c2
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        out = LaurentQK.__new__(LaurentQK)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("integer power expected")
        if n < 0:
            inv = self.monomial_inverse()
            return inv ** (-n)
        out = LaurentQK.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            other = _promote(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_one(self):
        return self.terms == {_ZKEY: Fraction(1)}

    # -- structure helpers ----------------------------------------------

    def is_monomial(self):
        return len(self.terms) == 1

    def monomial_inverse(self):
        """Inverse of a single-term scalar; error otherwise."""
        if len(self.terms) != 1:
            raise ZeroDivisionError("only monomial scalars are invertible")
        (key, c), = self.terms.items()
        return LaurentQK({tuple(-e for e in key): 1 / c})

    def leading_unit(self):
        """The leading term (largest exponent key lexicographically) as an
        invertible monomial scalar."""
        if not self.terms:
            raise ZeroDivisionError("zero scalar has no leading unit")
        key = max(self.terms)
        return LaurentQK({key: self.terms[key]})

    def bar(self):
        """The involution q -> q^-1 (other slots untouched)."""
        return LaurentQK({(-k[0],) + k[1:]: c for k, c in self.terms.items()})

    def rational_value(self):
        if not self.terms:
            return Fraction(0)
        if self.terms.keys() == {_ZKEY}:
            return self.terms[_ZKEY]
        raise ValueError("scalar is not a plain rational: %s" % self)

    def core_only(self):
        """True if only the q and K slots are populated."""
        return all(k[2] == k[3] == k[4] == 0 for k in self.terms)

    def k_degrees(self):
        return {k[1] for k in self.terms}

    def substitute_k(self, value):
        """Evaluate K at an exact rational value (K -> value)."""
        value = _as_fraction(value)
        terms = {}
        for key, c in self.terms.items():
            b = key[1]
            if value == 0:
                if b < 0:
                    raise ZeroDivisionError("negative K power at K=0")
                if b > 0:
                    continue
                scaled = c
            else:
                scaled = c * value ** b
            nk = (key[0], 0) + key[2:]
            s = terms.get(nk, _F0) + scaled
            if s:
                terms[nk] = s
            else:
                terms.pop(nk, None)
        return LaurentQK(terms)

    def embed_kroot(self, n):
        """Rewrite K as the n-th power of the K-root slot (K = kr^n).

        Only used by the periodic relativistic matching, where fractional
        K powers are needed for a single comparison.
        """
        terms = {}
        for key, c in self.terms.items():
            if key[4] != 0:
                raise ValueError("kr slot already in use")
            terms[(key[0], 0, key[2], key[3], key[1] * n)] = c
        return LaurentQK(terms)

    # -- rendering -------------------------------------------------------

    def __repr__(self):
        return "LaurentQK(%s)" % self.text()

    def text(self):
        """Canonical text form, terms sorted by descending exponent key."""
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, reverse=True):
            c = self.terms[key]
            factors = []
            q2, kk, g2, tk, kr = key
            if q2:
                factors.append("q^%s" % _half_str(q2))
            if kk:
                factors.append("K^%d" % kk)
            if g2:
                factors.append("g2^%d" % g2)
            if tk:
                factors.append("tk^%d" % tk)
            if kr:
                factors.append("kr^%d" % kr)
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(str(c) + "*" + "*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def to_json(self):
        """Core JSON form: list of [q2, K, numerator, denominator]."""
        if not self.core_only():
            raise ValueError("auxiliary slots present; not a core scalar")
        return [[k[0], k[1], c.numerator, c.denominator]
                for k, c in sorted(self.terms.items())]

    @staticmethod
    def from_json(data):
        terms = {}
        for q2, kk, num, den in data:
            terms[(q2, kk, 0, 0, 0)] = Fraction(num, den)
        return LaurentQK(terms)


_F0 = Fraction(0)


def _half_str(n2):
    if n2 % 2 == 0:
        return str(n2 // 2)
    return "(%d/2)" % n2


def _promote(x):
    if isinstance(x, LaurentQK):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentQK.rational(x)
    raise TypeError("cannot promote %r to LaurentQK" % (x,))


ZERO = LaurentQK.zero()
ONE = LaurentQK.one()


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------

def q_integer(a, d=1):
    """The balanced q-integer [a] in base q^d:
    (q^(da) - q^(-da)) / (q^d - q^(-d)).

    Defined for every integer a; [0] = 0 and [-a] = -[a].
    """
    if d not in (1, 2, 3):
        raise ValueError("symmetrizer d must be 1, 2 or 3")
    if a == 0:
        return LaurentQK.zero()
    sign = 1 if a > 0 else -1
    m = abs(a)
    terms = {}
    for j in range(m):
        terms[(2 * d * (m - 1 - 2 * j), 0, 0, 0, 0)] = Fraction(sign)
    return LaurentQK(terms)


def q_binomial(n, k, d=1):
    """Gaussian binomial coefficient in base q^d, zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return LaurentQK.zero()
    if k == 0 or k == n:
        return LaurentQK.one()
    key = (n, k, d)
    cached = _QBIN_CACHE.get(key)
    if cached is not None:
        return cached
    # Pascal recurrence for the balanced convention:
    # [n,k] = q^(dk) [n-1,k] + q^(-d(n-k)) [n-1,k-1]
    val = (LaurentQK.q_half(2 * d * k) * q_binomial(n - 1, k, d)
           + LaurentQK.q_half(-2 * d * (n - k)) * q_binomial(n - 1, k - 1, d))
    _QBIN_CACHE[key] = val
    return val


_QBIN_CACHE = {}


def serre_scalar_sum(a_ij, b_ij, sign, d=1):
    """The scalar shadow of the quantum Serre relation:

        sum_{k=0}^{1-a_ij} (-1)^k [1-a_ij, k]_{q^d} q^(sign * k * b_ij).

    Vanishes identically by the q-binomial theorem whenever b_ij = d*a_ij.
    """
    if a_ij > 0:
        raise ValueError("off-diagonal Cartan entry must be non-positive")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    total = LaurentQK.zero()
    top = 1 - a_ij
    for k in range(top + 1):
        term = q_binomial(top, k, d) * LaurentQK.q_half(2 * sign * k * b_ij)
        total = total + (term if k % 2 == 0 else -term)
    return total


# ---------------------------------------------------------------------------
# Truncated hbar expansions (q = e^hbar)
# ---------------------------------------------------------------------------

class HbarJet:
    """Truncated power series in hbar with K-Laurent coefficients.

    ``coeffs[n]`` is the coefficient of hbar^n, n = 0..order.  A possible
    hbar^(-1) term produced by series division is kept separately in
    ``pole``; ``has_pole`` records whether one was encountered.
    """

    __slots__ = ("order", "coeffs", "pole")

    def __init__(self, order, coeffs, pole=None):
        if order < 0:
            raise ValueError("order must be non-negative")
        coeffs = list(coeffs)
        if len(coeffs) != order + 1:
            raise ValueError("need order+1 coefficients")
        for c in coeffs:
            _check_qfree(c)
        self.order = order
        self.coeffs = coeffs
        self.pole = pole if (pole is not None and not pole.is_zero) else None

    @property
    def has_pole(self):
        return self.pole is not None

    @staticmethod
    def constant(value, order):
        coeffs = [LaurentQK.zero() for _ in range(order + 1)]
        coeffs[0] = _promote(value)
        return HbarJet(order, coeffs)

    def __add__(self, other):
        if not isinstance(other, HbarJet):
            other = HbarJet.constant(other, self.order)
        m = min(self.order, other.order)
        coeffs = [self.coeffs[n] + other.coeffs[n] for n in range(m + 1)]
        pole = (self.pole or ZERO) + (other.pole or ZERO)
        return HbarJet(m, coeffs, pole if not pole.is_zero else None)

    def __neg__(self):
        return HbarJet(self.order, [-c for c in self.coeffs],
                       -(self.pole) if self.pole is not None else None)

    def __sub__(self, other):
        if not isinstance(other, HbarJet):
            other = HbarJet.constant(other, self.order)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentQK)):
            s = _promote(other)
            return HbarJet(self.order, [c * s for c in self.coeffs],
                           self.pole * s if self.pole is not None else None)
        if self.has_pole or other.has_pole:
            raise IllPosedLimitError("product of jets with pole terms")
        m = min(self.order, other.order)
        coeffs = []
        for n in range(m + 1):
            acc = LaurentQK.zero()
            for i in range(n + 1):
                acc = acc + self.coeffs[i] * other.coeffs[n - i]
            coeffs.append(acc)
        return HbarJet(m, coeffs)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HbarJet):
            return NotImplemented
        return (self.order == other.order and self.coeffs == other.coeffs
                and (self.pole or ZERO) == (other.pole or ZERO))

    def __hash__(self):
        return hash((self.order, tuple(self.coeffs)))

    def valuation(self):
        """Lowest hbar order with nonzero coefficient, or None if zero."""
        if self.pole is not None:
            return -1
        for n, c in enumerate(self.coeffs):
            if not c.is_zero:
                return n
        return None

    def __repr__(self):
        parts = []
        if self.pole is not None:
            parts.append("(%s)*h^-1" % self.pole.text())
        for n, c in enumerate(self.coeffs):
            if not c.is_zero:
                parts.append("(%s)*h^%d" % (c.text(), n))
        return "HbarJet[%s; order %d]" % (" + ".join(parts) or "0", self.order)


def _check_qfree(c):
    for key in c.terms:
        if key[0] != 0 or key[2] or key[3] or key[4]:
            raise ValueError("jet coefficients must be K-Laurent only")


def jet_expand(s, order):
    """Expand a core scalar at q = e^hbar into a truncated hbar series.

    K survives symbolically inside the coefficients.
    """
    if not s.core_only():
        raise ValueError("jet_expand needs a core (q, K) scalar")
    coeffs = [LaurentQK.zero() for _ in range(order + 1)]
    for (q2, kk, _, _, _), c in s.terms.items():
        a = Fraction(q2, 2)
        power = Fraction(1)
        fact = 1
        for n in range(order + 1):
            if n > 0:
                power *= a
                fact *= n
            contrib = c * power / fact
            if contrib:
                coeffs[n] = coeffs[n] + LaurentQK.monomial(contrib, k=kk)
    return HbarJet(order, coeffs)


def jet_divide(a, b):
    """Truncated series quotient a / b.

    The quotient is computed from order val(a) - val(b); if that is -1 the
    hbar^(-1) part is stored in the pole slot, and anything below -1 is an
    ill-posed limit.  The leading coefficient of b must be an invertible
    monomial in K.
    """
    if a.has_pole or b.has_pole:
        raise IllPosedLimitError("cannot divide jets that already have poles")
    vb = b.valuation()
    if vb is None:
        raise ZeroDivisionError("division by the zero jet")
    va = a.valuation()
    if va is None:
        return HbarJet.constant(0, max(a.order - vb, 0))
    if va - vb < -1:
        raise IllPosedLimitError(
            "quotient valuation %d is below the hbar^-1 window" % (va - vb))
    lead = b.coeffs[vb]
    if not lead.is_monomial():
        raise IllPosedLimitError("leading jet coefficient is not invertible")
    lead_inv = lead.monomial_inverse()
    # shifted series: a = hbar^va * A, b = hbar^vb * B with B a unit
    m = min(a.order - va, b.order - vb)
    if m < 0:
        raise IllPosedLimitError("not enough jet orders to divide")
    A = [a.coeffs[va + n] for n in range(m + 1)]
    B = [b.coeffs[vb + n] for n in range(m + 1)]
    Q = []
    for n in range(m + 1):
        acc = A[n]
        for i in range(n):
            acc = acc - Q[i] * B[n - i]
        Q.append(acc * lead_inv)
    shift = va - vb
    out_order = m + shift
    if shift == -1:
        pole = Q[0]
        coeffs = Q[1:]
        return HbarJet(out_order, coeffs, pole)
    coeffs = [LaurentQK.zero()] * shift + Q
    return HbarJet(out_order, coeffs)
