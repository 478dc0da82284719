"""Invariant integrals and Hermitian forms.

I_t lives on the t-polynomial algebra A(SO(1,1|p)) (t^p = 1, t* = t);
I_p on the finite function algebra; I_c is the formal translation integral
valued in delta-derivative tokens; I_w is their product.  Gram signatures are
counted numerically from exact entries embedded at every primitive root.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

from .errors import (
    DegenerateGram,
    ModeMismatch,
    NonTrivialZPart,
    UnsupportedMixedTerm,
)
from .funalg import FunElement
from .scalars import root_field

_F0 = Fraction(0)


# -- the t-line ---------------------------------------------------------------


class TPoly:
    """Element of A(SO(1,1|p)): Laurent polynomial in t with t^p = 1, t* = t."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs):
        self.p = p
        self.coeffs = {k % p: v for k, v in coeffs.items() if not v.is_zero()}

    @staticmethod
    def t_power(p, k):
        f = root_field(p)
        return TPoly(p, {k % p: f.one})

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            w = out.get(k)
            w = v if w is None else w + v
            if w.is_zero():
                out.pop(k, None)
            else:
                out[k] = w
        return TPoly(self.p, out)

    def __mul__(self, other):
        f = root_field(self.p)
        out = {}
        if not isinstance(other, TPoly):
            return TPoly(self.p, {k: v * other for k, v in self.coeffs.items()})
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = (k1 + k2) % self.p
                w = out.get(k, f.zero) + v1 * v2
                out[k] = w
        return TPoly(self.p, out)

    def star(self):
        return TPoly(self.p, {k: v.star() for k, v in self.coeffs.items()})

    def __eq__(self, other):
        return self.p == other.p and self.coeffs == other.coeffs


def i_t(x):
    """I_t(t^m) = delta_(m = 0 mod p), extended linearly."""
    f = root_field(x.p)
    return x.coeffs.get(0, f.zero)


def t_form(a, b):
    """(a, b)_t = I_t(a* b)."""
    return i_t(a.star() * b)


def t_form_extract(corep, m):
    """{ t^(p-m) (x) 1, T^(lambda) t^n }_t: I_t-weighted sum of components."""
    p = corep.rep.p
    A = corep.rep.pairing.fun
    f = corep.rep.field
    out = A.zero()
    for j in range(p):
        # (t^(p-m), t^j)_t = delta_(j = m mod p)
        w = f.one if (p - m + j) % p == 0 else f.zero
        if not w.is_zero():
            out = out + corep.comps[j].scale(w)
    return out


def t_basis_with_signature(p):
    """{t^0} joined with unnormalized e_m^+- = t^m +- t^(p-m), m = 1..(p-1)/2."""
    out = [TPoly.t_power(p, 0)]
    f = root_field(p)
    for m in range(1, (p - 1) // 2 + 1):
        out.append(TPoly.t_power(p, m) + TPoly.t_power(p, p - m))
        out.append(TPoly.t_power(p, m) + TPoly(p, {(p - m) % p: -f.one}))
    return out


# -- I_p ------------------------------------------------------------------------


def i_p(x):
    """I_p(eta+^n eta-^m delta^k) = q^-1 delta_(n,p-1) delta_(m,p-1) delta_(k,0)."""
    alg = x.alg
    p = alg.p
    f = alg.field
    out = f.zero
    for mono, c in x.terms.items():
        if mono[3] or mono[4] or mono[5] or mono[6]:
            raise NonTrivialZPart("I_p is defined on the finite sector only")
        if mono[0] == p - 1 and mono[1] == p - 1 and mono[2] % p == 0:
            out = out + c * f.q_pow(-1)
    return out


def p_form(P, Q):
    """(P, Q)_p = I_p(P Q*)."""
    return i_p(P * Q.star())


# -- I_c / DistValue -------------------------------------------------------------


class DistValue:
    """Finite scalar part plus delta-derivative tokens Delta^(a,b).

    One token unit on each axis stands for (2 pi) delta^(a)(0); all 2 pi
    factors are absorbed into the token normalization.
    """

    __slots__ = ("p", "finite", "tokens")

    def __init__(self, p, finite=None, tokens=None):
        f = root_field(p)
        self.p = p
        self.finite = finite if finite is not None else f.zero
        self.tokens = {k: v for k, v in (tokens or {}).items() if not v.is_zero()}

    def __add__(self, other):
        if self.p != other.p:
            raise ModeMismatch("DistValues at different p")
        toks = dict(self.tokens)
        for k, v in other.tokens.items():
            w = toks.get(k)
            w = v if w is None else w + v
            if w.is_zero():
                toks.pop(k, None)
            else:
                toks[k] = w
        return DistValue(self.p, self.finite + other.finite, toks)

    def scale(self, c):
        return DistValue(
            self.p, self.finite * c, {k: v * c for k, v in self.tokens.items()}
        )

    def star(self):
        return DistValue(
            self.p,
            self.finite.star(),
            {k: v.star() for k, v in self.tokens.items()},
        )

    def is_zero(self):
        return self.finite.is_zero() and not self.tokens

    def __eq__(self, other):
        return (
            self.p == other.p
            and self.finite == other.finite
            and self.tokens == other.tokens
        )

    def __repr__(self):
        bits = []
        if not self.finite.is_zero():
            bits.append(repr(self.finite))
        for (a, b), c in sorted(self.tokens.items()):
            bits.append(f"({c!r}) Dirac^({a},{b})")
        return " + ".join(bits) if bits else "0"


def i_c_mono(alg, mono, coeff):
    """Translation integral of one z-sector monomial; None when the term is 0."""
    f = alg.field
    zp, zm, fp, fm = mono[3], mono[4], mono[5], mono[6]
    for deg, freq in ((zp, fp), (zm, fm)):
        if freq != 0 and deg > 0:
            raise UnsupportedMixedTerm(
                "z^a exp(i a z) with a > 0 and nonzero frequency is outside "
                "the supported fragment"
            )
    if (fp != 0 and zp == 0) or (fm != 0 and zm == 0):
        return None  # pure nonzero-frequency exponential integrates to 0
    mi = f.i.star()  # -i
    val = coeff * (mi**zp) * (mi**zm)
    return (zp, zm), val


def i_c(x):
    """I_c on the z-sector of an element of the translation algebra."""
    alg = x.alg
    out = DistValue(alg.p)
    for mono, c in x.terms.items():
        if mono[0] or mono[1] or mono[2]:
            raise ModeMismatch("I_c acts on the translation sector only")
        r = i_c_mono(alg, mono, c)
        if r is not None:
            out = out + DistValue(alg.p, tokens={r[0]: r[1]})
    return out


def i_w(F):
    """I_w(F) = sum_n I_p(P_n) I_c(f_n) over the finite (x) z splitting."""
    alg = F.alg
    p = alg.p
    f = alg.field
    out = DistValue(p)
    for mono, c in F.terms.items():
        if not (mono[0] == p - 1 and mono[1] == p - 1 and mono[2] % p == 0):
            continue
        r = i_c_mono(alg, mono, c)
        if r is not None:
            out = out + DistValue(p, tokens={r[0]: r[1] * f.q_pow(-1)})
    return out


def w_form(F, G):
    """(F, G)_w = I_w(F G*)."""
    return i_w(F * G.star())


# -- invariance suites ------------------------------------------------------------


def i_p_invariance_report(p, composites=True):
    """I_p(R(phi)P) = eps(phi) I_p(P) and the L version, all p^3 monomials."""
    from .duality import pairing

    P = pairing(p)
    A, U, f = P.fun, P.env, P.field
    gens = [("E+", U.e_plus()), ("E-", U.e_minus()), ("K", U.k_gen())]
    if composites:
        gens += [
            ("E+E-", U.e_plus() * U.e_minus()),
            ("E-K", U.e_minus() * U.k_gen()),
            ("E+K", U.e_plus() * U.k_gen()),
        ]
    failures = []
    checked = 0
    monos = [
        A.monomial(np=a, nm=b, kd=k)
        for a in range(p)
        for b in range(p)
        for k in range(p)
    ]
    for name, phi in gens:
        eps = phi.counit()
        for mono in monos:
            base = i_p(mono) * eps
            for side, tag in (("right", "R"), ("left", "L")):
                checked += 1
                if i_p(P.act(phi, mono, side)) != base:
                    failures.append({"phi": name, "side": tag})
    return {"checked": checked, "failures": failures}


# -- Gram signatures ------------------------------------------------------------


def gram_signature(basis, form, p, tol=1e-9):
    """Sign counts of the exact Gram matrix of ``basis`` under ``form``.

    Embeds at every primitive root of unity and requires unanimous counts;
    returns (n_pos, n_neg, n_zero, per_root) where per_root maps the root
    index to its counts.
    """
    n = len(basis)
    gram = [[form(basis[i], basis[j]) for j in range(n)] for i in range(n)]
    per_root = {}
    counts = None
    for j in range(1, p):
        if gcd(j, p) != 1:
            continue
        M = np.array(
            [[gram[r][c].embed(j) for c in range(n)] for r in range(n)],
            dtype=complex,
        )
        if np.max(np.abs(M - M.conj().T)) > 1e-8:
            raise DegenerateGram("Gram matrix is not numerically Hermitian")
        ev = np.linalg.eigvalsh(M)
        cnt = (
            int(np.sum(ev > tol)),
            int(np.sum(ev < -tol)),
            int(np.sum(np.abs(ev) <= tol)),
        )
        per_root[j] = cnt
        if counts is None:
            counts = cnt
        elif counts != cnt:
            raise DegenerateGram(f"signature differs across roots: {per_root}")
    return counts + (per_root,)


def coset_signature(p):
    """Signature of the p^2-element unnormalized coset basis under (.,.)_p."""
    from .funalg import fun_algebra

    A = fun_algebra(p)
    basis = A.coset_basis("+") + A.coset_basis("-")
    return gram_signature(basis, p_form, p)


def t_signature(p):
    basis = t_basis_with_signature(p)
    return gram_signature(basis, t_form, p)


# -- orthogonality of matrix elements ----------------------------------------------


def orthogonality_d(rep, rep2, n, m, dcol=None, dcol2=None):
    """(D_n0, D_m0)_w across two representations.

    Distinct (sigma+, sigma-) give exact zero (frequencies fail to cancel);
    equal parameters give N delta_(n+m = 0 mod p) times the order-zero token.
    """
    from .reps import d_matrix

    if rep.p != rep2.p:
        raise ModeMismatch("representations at different p")
    Dn = dcol[n] if dcol is not None else d_matrix(rep, n, 0)
    Dm = dcol2[m] if dcol2 is not None else d_matrix(rep2, m, 0)
    return w_form(Dn, Dm)
