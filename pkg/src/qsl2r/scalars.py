"""Exact coefficient arithmetic.

Two modes share one interface:

* root mode -- the field Q(i, zeta_p) for odd p >= 3, elements stored as
  integer coordinate vectors over the basis 1, q, ..., q^(p-2) with a common
  positive denominator.  q^(1/2) is fixed as q^((p+1)/2), the unique square
  root of q inside the cyclic group generated by q.
* generic mode -- the rational-function field Q(i)(s) with q = s**2, so every
  half-integer power of q is a Laurent monomial in s.

Star-conjugation sends i to -i and q to 1/q in both modes.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import BadRootIndex, ModeMismatch, QFactorialZeroDivision, ZeroInverse
from .kernel import cyclo_mul


def _normalize(den, re, im):
    g = den
    for v in re:
        g = gcd(g, v)
        if g == 1:
            break
    if g != 1:
        for v in im:
            g = gcd(g, v)
            if g == 1:
                break
    if g > 1:
        re = tuple(v // g for v in re)
        im = tuple(v // g for v in im)
        den //= g
    return den, re, im


class CycloNum:
    """Element of Q(i, zeta_p), immutable and canonically reduced."""

    __slots__ = ("p", "den", "re", "im")

    def __init__(self, p, den, re, im, _reduced=False):
        if den < 0:
            den, re, im = -den, tuple(-v for v in re), tuple(-v for v in im)
        if not _reduced:
            den, re, im = _normalize(den, re, im)
        self.p = p
        self.den = den
        self.re = re
        self.im = im

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(p):
        n = p - 1
        return CycloNum(p, 1, (0,) * n, (0,) * n, _reduced=True)

    @staticmethod
    def from_rational(p, value, imag=0):
        value = Fraction(value)
        imag = Fraction(imag)
        den = value.denominator * imag.denominator // gcd(
            value.denominator, imag.denominator
        )
        n = p - 1
        re = [0] * n
        im = [0] * n
        re[0] = value.numerator * (den // value.denominator)
        im[0] = imag.numerator * (den // imag.denominator)
        return CycloNum(p, den, tuple(re), tuple(im))

    @staticmethod
    def q_power(p, j):
        n = p - 1
        j %= p
        re = [0] * n
        im = [0] * n
        if j == n:  # q^(p-1) = -(1 + q + ... + q^(p-2))
            re = [-1] * n
        else:
            re[j] = 1
        return CycloNum(p, 1, tuple(re), tuple(im), _reduced=True)

    # -- predicates --------------------------------------------------------

    @property
    def mode(self):
        return "root"

    def is_zero(self):
        return not any(self.re) and not any(self.im)

    def __bool__(self):
        return not self.is_zero()

    # -- ring structure ----------------------------------------------------

    def _check(self, other):
        if not isinstance(other, CycloNum) or other.p != self.p:
            raise ModeMismatch(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNum.from_rational(self.p, other)
        self._check(other)
        d1, d2 = self.den, other.den
        g = gcd(d1, d2)
        m1, m2 = d2 // g, d1 // g
        re = tuple(m1 * a + m2 * b for a, b in zip(self.re, other.re))
        im = tuple(m1 * a + m2 * b for a, b in zip(self.im, other.im))
        return CycloNum(self.p, d1 * m1, re, im)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(
            self.p,
            self.den,
            tuple(-v for v in self.re),
            tuple(-v for v in self.im),
            _reduced=True,
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNum.from_rational(self.p, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            re = tuple(other.numerator * v for v in self.re)
            im = tuple(other.numerator * v for v in self.im)
            return CycloNum(self.p, self.den * other.denominator, re, im)
        self._check(other)
        re, im = cyclo_mul(self.p, self.re, self.im, other.re, other.im)
        return CycloNum(self.p, self.den * other.den, re, im)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * other.inv()

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = CycloNum.from_rational(self.p, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, j):
        """Apply q |-> q^j (gcd(j, p) = 1); i is fixed."""
        p = self.p
        n = p - 1
        wr = [0] * p
        wi = [0] * p
        for e in range(n):
            wr[(e * j) % p] += self.re[e]
            wi[(e * j) % p] += self.im[e]
        tr, ti = wr[n], wi[n]
        re = tuple(wr[e] - tr for e in range(n))
        im = tuple(wi[e] - ti for e in range(n))
        return CycloNum(p, self.den, re, im)

    def conj_i(self):
        """Apply i |-> -i (q fixed)."""
        return CycloNum(
            self.p, self.den, self.re, tuple(-v for v in self.im), _reduced=True
        )

    def star(self):
        """Antilinear involution: i |-> -i, q |-> q^(p-1)."""
        return self.galois(self.p - 1).conj_i()

    def inv(self):
        """Exact inverse via the norm down to Q(i), then to Q."""
        if self.is_zero():
            raise ZeroInverse("inverse of zero")
        p = self.p
        # y = product of q |-> q^j conjugates, j = 2..p-1; x*y lies in Q(i).
        y = CycloNum.from_rational(p, 1)
        for j in range(2, p):
            y = y * self.galois(j)
        norm = self * y
        # norm = (u + v i)/den with integer u, v (constant coordinate only),
        # so 1/norm = conj(norm) * den^2 / (u^2 + v^2).
        u = norm.re[0]
        v = norm.im[0]
        if any(norm.re[1:]) or any(norm.im[1:]):  # pragma: no cover - sanity
            raise ArithmeticError("norm did not land in Q(i)")
        return y * norm.conj_i() * Fraction(norm.den * norm.den, u * u + v * v)

    # -- comparisons / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNum.from_rational(self.p, other)
        if not isinstance(other, CycloNum) or other.p != self.p:
            return NotImplemented
        return self.den == other.den and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.p, self.den, self.re, self.im))

    # -- numerics ----------------------------------------------------------

    def embed(self, root_index=1):
        """Evaluate at q = exp(2*pi*i*root_index/p) in double precision."""
        p = self.p
        if not (1 <= root_index <= p - 1) or gcd(root_index, p) != 1:
            raise BadRootIndex(f"root index {root_index} invalid for p={p}")
        w = cmath.exp(2j * cmath.pi * root_index / p)
        acc = 0j
        qe = 1 + 0j
        for e in range(p - 1):
            acc += (self.re[e] + 1j * self.im[e]) * qe
            qe *= w
        return acc / self.den

    # -- display -----------------------------------------------------------

    def __repr__(self):
        terms = []
        for e in range(self.p - 1):
            a, b = self.re[e], self.im[e]
            if a == 0 and b == 0:
                continue
            if b == 0:
                c = str(Fraction(a, self.den))
            elif a == 0:
                f = Fraction(b, self.den)
                c = f"{f}*i" if abs(f) != 1 else ("i" if f > 0 else "-i")
            else:
                c = f"({Fraction(a, self.den)}+{Fraction(b, self.den)}*i)"
            if e == 0:
                terms.append(c)
            elif c == "1":
                terms.append(f"q^{e}" if e > 1 else "q")
            elif c == "-1":
                terms.append(f"-q^{e}" if e > 1 else "-q")
            else:
                terms.append(f"{c}*q^{e}" if e > 1 else f"{c}*q")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


class CycloField:
    """Constructor/constant cache for Q(i, zeta_p) with q a primitive p-th root."""

    def __init__(self, p):
        if p < 3 or p % 2 == 0:
            raise ValueError("p must be an odd integer >= 3")
        self.p = p
        self.zero = CycloNum.zero(p)
        self.one = CycloNum.from_rational(p, 1)
        self.i = CycloNum.from_rational(p, 0, 1)
        self.q = CycloNum.q_power(p, 1)
        self._half = (p + 1) // 2

    @property
    def mode(self):
        return "root"

    def rational(self, value, imag=0):
        return CycloNum.from_rational(self.p, value, imag)

    def q_pow(self, j):
        return CycloNum.q_power(self.p, j)

    def half_pow(self, j):
        """q^(j/2) := q^(j(p+1)/2 mod p); squares to q^j."""
        return CycloNum.q_power(self.p, (j * self._half) % self.p)

    @lru_cache(maxsize=None)
    def qint(self, n, base=1):
        """[n] at q^base: (q^(bn) - q^(-bn)) / (q^b - q^(-b))."""
        out = self.zero
        for j in range(abs(n)):
            out = out + self.q_pow(base * (abs(n) - 1 - 2 * j))
        return out if n >= 0 else -out

    @lru_cache(maxsize=None)
    def qfact(self, n, base=1):
        out = self.one
        for j in range(2, n + 1):
            out = out * self.qint(j, base)
        return out

    @lru_cache(maxsize=None)
    def qbinom(self, n, k, base=1):
        """Gaussian binomial for the symmetric [n], division-free recurrence."""
        if k < 0 or k > n:
            return self.zero
        if k == 0 or k == n:
            return self.one
        return self.qbinom(n - 1, k, base) * self.q_pow(base * k) + self.qbinom(
            n - 1, k - 1, base
        ) * self.q_pow(-base * (n - k))

    def qbinom_by_division(self, n, k, base=1):
        """[n]!/([k]![n-k]!) literally; raises when the quotient is undefined."""
        num = self.qfact(n, base)
        den = self.qfact(k, base) * self.qfact(n - k, base)
        if den.is_zero():
            raise QFactorialZeroDivision(f"[{k}]! [{n - k}]! vanishes at p={self.p}")
        return num / den

    def embed_all_roots(self, x):
        return {j: x.embed(j) for j in range(1, self.p) if gcd(j, self.p) == 1}


# ---------------------------------------------------------------------------
# generic mode: Q(i)(s) with q = s**2
# ---------------------------------------------------------------------------

_F0 = Fraction(0)
_F1 = Fraction(1)


def _pstrip(c):
    while c and c[-1] == (_F0, _F0):
        c = c[:-1]
    return c


def _padd(a, b):
    n = max(len(a), len(b))
    out = []
    for j in range(n):
        x = a[j] if j < len(a) else (_F0, _F0)
        y = b[j] if j < len(b) else (_F0, _F0)
        out.append((x[0] + y[0], x[1] + y[1]))
    return _pstrip(tuple(out))


def _pneg(a):
    return tuple((-x, -y) for x, y in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [(_F0, _F0)] * (len(a) + len(b) - 1)
    for j, (x, y) in enumerate(a):
        if x == 0 and y == 0:
            continue
        for k, (u, v) in enumerate(b):
            w = out[j + k]
            out[j + k] = (w[0] + x * u - y * v, w[1] + x * v + y * u)
    return _pstrip(tuple(out))


def _cinv(c):
    x, y = c
    d = x * x + y * y
    return (x / d, -y / d)


def _cmulc(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _pdivmod(a, b):
    """Euclidean division in Q(i)[s]."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    binv = _cinv(b[-1])
    rem = list(a)
    quo = [(_F0, _F0)] * max(0, len(a) - len(b) + 1)
    while len(rem) >= len(b) and _pstrip(tuple(rem)):
        rem = list(_pstrip(tuple(rem)))
        if len(rem) < len(b):
            break
        shift = len(rem) - len(b)
        c = _cmulc(rem[-1], binv)
        quo[shift] = (quo[shift][0] + c[0], quo[shift][1] + c[1])
        for j, bc in enumerate(b):
            t = _cmulc(c, bc)
            rem[shift + j] = (rem[shift + j][0] - t[0], rem[shift + j][1] - t[1])
        rem = rem[: len(rem) - 1]
    return _pstrip(tuple(quo)), _pstrip(tuple(rem))


def _pgcd(a, b):
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return a


def _pmonic(a):
    if not a:
        return a, (_F1, _F0)
    lead = a[-1]
    inv = _cinv(lead)
    return tuple(_cmulc(c, inv) for c in a), lead


class GenericNum:
    """Element of Q(i)(s): reduced fraction, denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=((_F1, _F0),), _reduced=False):
        num = _pstrip(tuple(num))
        den = _pstrip(tuple(den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if not num:
                den = ((_F1, _F0),)
            else:
                g = _pgcd(num, den)
                if len(g) > 1 or g[0] != (_F1, _F0):
                    num, _ = _pdivmod(num, g)
                    den, _ = _pdivmod(den, g)
                den, lead = _pmonic(den)
                inv = _cinv(lead)
                num = tuple(_cmulc(c, inv) for c in num)
        self.num = num
        self.den = den

    @property
    def mode(self):
        return "generic"

    @staticmethod
    def from_rational(value, imag=0):
        c = (Fraction(value), Fraction(imag))
        return GenericNum((c,) if c != (_F0, _F0) else ())

    @staticmethod
    def s_power(j):
        if j >= 0:
            return GenericNum(((_F0, _F0),) * j + ((_F1, _F0),))
        return GenericNum(((_F1, _F0),), ((_F0, _F0),) * (-j) + ((_F1, _F0),))

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return GenericNum.from_rational(other)
        if not isinstance(other, GenericNum):
            raise ModeMismatch(f"cannot combine generic scalar with {other!r}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return GenericNum(num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return GenericNum(_pneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        return GenericNum(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise ZeroInverse("inverse of zero")
        return GenericNum(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = GenericNum.from_rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def star(self):
        """i |-> -i composed with s |-> 1/s."""
        if not self.num:
            return self
        num = tuple((c[0], -c[1]) for c in reversed(self.num))
        den = tuple((c[0], -c[1]) for c in reversed(self.den))
        # f(1/s) = s^(deg den - deg num) * rev(num)/rev(den)
        shift = len(self.den) - len(self.num)
        if shift > 0:
            num = ((_F0, _F0),) * shift + num
        elif shift < 0:
            den = ((_F0, _F0),) * (-shift) + den
        return GenericNum(num, den)

    def specialize(self, field):
        """Evaluate at s = q^((p+1)/2) inside Q(i, zeta_p).

        This is the exact root-of-unity limit: defined whenever the reduced
        denominator does not vanish there.
        """

        def ev(poly):
            acc = field.zero
            for j, (x, y) in enumerate(poly):
                acc = acc + field.half_pow(j) * field.rational(x, y)
            return acc

        den = ev(self.den)
        if den.is_zero():
            raise ZeroDivisionError("pole at the root of unity")
        return ev(self.num) / den

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GenericNum.from_rational(other)
        if not isinstance(other, GenericNum):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        def poly_str(c):
            if not c:
                return "0"
            parts = []
            for j, (x, y) in enumerate(c):
                if x == 0 and y == 0:
                    continue
                if y == 0:
                    coef = str(x)
                elif x == 0:
                    coef = f"{y}*i"
                else:
                    coef = f"({x}+{y}*i)"
                parts.append(coef if j == 0 else f"{coef}*s^{j}")
            return " + ".join(parts)

        if self.den == ((_F1, _F0),):
            return poly_str(self.num)
        return f"({poly_str(self.num)})/({poly_str(self.den)})"


class GenericField:
    """Constructor cache for Q(i)(s), q = s**2."""

    def __init__(self):
        self.zero = GenericNum(())
        self.one = GenericNum.from_rational(1)
        self.i = GenericNum.from_rational(0, 1)
        self.q = GenericNum.s_power(2)

    @property
    def mode(self):
        return "generic"

    @property
    def p(self):
        return None

    def rational(self, value, imag=0):
        return GenericNum.from_rational(value, imag)

    def q_pow(self, j):
        return GenericNum.s_power(2 * j)

    def half_pow(self, j):
        return GenericNum.s_power(j)

    @lru_cache(maxsize=None)
    def qint(self, n, base=1):
        out = self.zero
        for j in range(abs(n)):
            out = out + self.q_pow(base * (abs(n) - 1 - 2 * j))
        return out if n >= 0 else -out

    @lru_cache(maxsize=None)
    def qfact(self, n, base=1):
        out = self.one
        for j in range(2, n + 1):
            out = out * self.qint(j, base)
        return out

    @lru_cache(maxsize=None)
    def qbinom(self, n, k, base=1):
        if k < 0 or k > n:
            return self.zero
        if k == 0 or k == n:
            return self.one
        return self.qbinom(n - 1, k, base) * self.q_pow(base * k) + self.qbinom(
            n - 1, k - 1, base
        ) * self.q_pow(-base * (n - k))


@lru_cache(maxsize=None)
def root_field(p):
    return CycloField(p)


@lru_cache(maxsize=None)
def generic_field():
    return GenericField()


def q_pochhammer(a, qpow, k, one=None):
    """(a; q^qpow)_k = prod_{j=1..k} (1 - a q^((j-1) qpow)).

    Works for scalars and for algebra elements: ``a`` must support + and *,
    and ``one`` supplies the multiplicative unit (defaults to scalar 1 drawn
    from a CycloNum/GenericNum argument).
    """
    if one is None:
        if isinstance(a, CycloNum):
            one = CycloNum.from_rational(a.p, 1)
        elif isinstance(a, GenericNum):
            one = GenericNum.from_rational(1)
        else:
            raise TypeError("supply `one` for algebra-valued arguments")
    out = one
    if k == 0:
        return out
    if isinstance(a, CycloNum):
        qp = root_field(a.p).q_pow
    elif isinstance(a, GenericNum):
        qp = generic_field().q_pow
    else:
        qp = a.alg.field.q_pow
    for j in range(1, k + 1):
        out = out * (one + (-(a * qp(qpow * (j - 1)))))
    return out
