"""The dual quantum algebra side: PBW normal form Ecal+^s Ecal-^t E+^m E-^n K^k.

Rewriting rules:
    K E+-  -> q^(+-1) E+- K
    E- E+  -> E+ E- - (K^2 - K^-2)/(q - q^-1)
    E+-^p  -> (-1)^((p+1)/2) Ecal+-      (root mode; Ecal central)
    K^p    -> 1                          (root mode)

E-^n E+ reordering is done by repeated single swaps with memoization, not by
a closed formula.  Monomials are tuples (sp, tm, mp, nm, kk).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import GenericModeUnsupported, ModeMismatch
from .scalars import generic_field, root_field

ENV_UNIT = (0, 0, 0, 0, 0)


class EnvElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = terms

    def _check(self, other):
        if self.alg is not other.alg:
            raise ModeMismatch("elements from different algebras")

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, EnvElement):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.alg), frozenset(self.terms.items())))

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = terms.get(m)
            c = c if acc is None else acc + c
            if c.is_zero():
                terms.pop(m, None)
            else:
                terms[m] = c
        return EnvElement(self.alg, terms)

    def __neg__(self):
        return EnvElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, int) and c == 0:
            return self.alg.zero()
        if not isinstance(c, (int, Fraction)) and c.is_zero():
            return self.alg.zero()
        return EnvElement(self.alg, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, EnvElement):
            return self.scale(other)
        self._check(other)
        alg = self.alg
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                prod = alg.mono_product(m1, m2)
                c = c1 * c2
                for m, v in prod.terms.items():
                    vv = v * c
                    acc = out.get(m)
                    vv = vv if acc is None else acc + vv
                    if vv.is_zero():
                        out.pop(m, None)
                    else:
                        out[m] = vv
        return EnvElement(alg, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k):
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def star(self):
        """Antilinear antihomomorphism fixing E+-, K, Ecal+-."""
        alg = self.alg
        out = alg.zero()
        for m, c in self.terms.items():
            sp, tm, mp, nm, kk = m
            # reversed word: K^k E-^n E+^m Ecal's; recompute normal form
            word = alg.monomial_el(0, 0, 0, 0, kk)
            word = word * alg.monomial_el(0, 0, 0, nm, 0)
            word = word * alg.monomial_el(0, 0, mp, 0, 0)
            word = word * alg.monomial_el(sp, tm, 0, 0, 0)
            out = out + word.scale(c.star())
        return out

    def counit(self):
        eps = self.alg.field.zero
        for m, c in self.terms.items():
            if m[0] == 0 and m[1] == 0 and m[2] == 0 and m[3] == 0:
                eps = eps + c
        return eps

    def coproduct(self):
        alg = self.alg
        out = alg.tensor_zero()
        for m, c in self.terms.items():
            out = out + alg.mono_coproduct(m).scale(c)
        return out

    def antipode(self):
        alg = self.alg
        out = alg.zero()
        for m, c in self.terms.items():
            out = out + alg.mono_antipode(m).scale(c)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms):
            c = self.terms[m]
            factors = []
            for g, e in zip(("Ecal+", "Ecal-", "E+", "E-", "K"), m):
                if e == 1:
                    factors.append(g)
                elif e:
                    factors.append(f"{g}^{e}")
            bits.append(f"({c!r}) " + (" ".join(factors) if factors else "1"))
        return " + ".join(bits)


class EnvTensor:
    """Element of U (x) U."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, EnvTensor):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            acc = terms.get(k)
            c = c if acc is None else acc + c
            if c.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = c
        return EnvTensor(self.alg, terms)

    def __sub__(self, other):
        return self + EnvTensor(self.alg, {k: -c for k, c in other.terms.items()})

    def scale(self, c):
        if not isinstance(c, (int, Fraction)) and c.is_zero():
            return self.alg.tensor_zero()
        return EnvTensor(self.alg, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        alg = self.alg
        if not isinstance(other, EnvTensor):
            return self.scale(other)
        out = {}
        for (l1, r1), c1 in self.terms.items():
            for (l2, r2), c2 in other.terms.items():
                pl = alg.mono_product(l1, l2)
                pr = alg.mono_product(r1, r2)
                c = c1 * c2
                for ml, vl in pl.terms.items():
                    for mr, vr in pr.terms.items():
                        v = vl * vr * c
                        k = (ml, mr)
                        acc = out.get(k)
                        v = v if acc is None else acc + v
                        if v.is_zero():
                            out.pop(k, None)
                        else:
                            out[k] = v
        return EnvTensor(alg, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.alg.tensor_one()
        for _ in range(k):
            out = out * self
        return out

    def swap(self):
        return EnvTensor(self.alg, {(r, l): c for (l, r), c in self.terms.items()})


class EnvAlgebra:
    """Context for U_q(sl(2,R)); root mode for odd p, generic with p=None."""

    def __init__(self, p=None):
        self.p = p
        self.field = root_field(p) if p is not None else generic_field()
        self._prod_cache = {}
        self._swap_cache = {}
        self._mono_cop_cache = {}
        if p is not None:
            self.ecal_sign = -1 if ((p + 1) // 2) % 2 else 1  # (-1)^((p+1)/2)

    @property
    def mode(self):
        return "root" if self.p is not None else "generic"

    # -- constructors --------------------------------------------------

    def zero(self):
        return EnvElement(self, {})

    def one(self):
        return EnvElement(self, {ENV_UNIT: self.field.one})

    def scalar(self, c):
        if isinstance(c, (int, Fraction)):
            c = self.field.rational(c)
        if c.is_zero():
            return self.zero()
        return EnvElement(self, {ENV_UNIT: c})

    def monomial_el(self, sp=0, tm=0, mp=0, nm=0, kk=0, coeff=None):
        if self.p is None:
            if sp or tm:
                raise GenericModeUnsupported("Ecal generators exist only at roots")
        else:
            kk %= self.p
        coeff = coeff if coeff is not None else self.field.one
        if self.p is not None and (mp >= self.p or nm >= self.p):
            # fold E+-^p into the central generators
            el = self.one().scale(coeff)
            for _ in range(sp):
                el = el * self.ecal_plus()
            for _ in range(tm):
                el = el * self.ecal_minus()
            for _ in range(mp):
                el = el * self.e_plus()
            for _ in range(nm):
                el = el * self.e_minus()
            return el * EnvElement(self, {(0, 0, 0, 0, kk): self.field.one})
        return EnvElement(self, {(sp, tm, mp, nm, kk): coeff})

    def e_plus(self):
        return EnvElement(self, {(0, 0, 1, 0, 0): self.field.one})

    def e_minus(self):
        return EnvElement(self, {(0, 0, 0, 1, 0): self.field.one})

    def k_gen(self, j=1):
        if self.p is not None:
            j %= self.p
        return EnvElement(self, {(0, 0, 0, 0, j): self.field.one})

    def ecal_plus(self):
        if self.p is None:
            raise GenericModeUnsupported("Ecal+ exists only at roots of unity")
        return EnvElement(self, {(1, 0, 0, 0, 0): self.field.one})

    def ecal_minus(self):
        if self.p is None:
            raise GenericModeUnsupported("Ecal- exists only at roots of unity")
        return EnvElement(self, {(0, 1, 0, 0, 0): self.field.one})

    def eps_plus(self):
        """eps+ = -q^(1/2) E+ K^-1 (factorized T-matrix generator)."""
        return (self.e_plus() * self.k_gen(-1)).scale(-self.field.half_pow(1))

    def eps_minus(self):
        return (self.e_minus() * self.k_gen(-1)).scale(-self.field.half_pow(-1))

    # -- products ------------------------------------------------------------

    @lru_cache(maxsize=None)
    def commutator_w(self):
        """(K^2 - K^-2)/(q - q^-1) as an element."""
        f = self.field
        inv = (f.q_pow(1) - f.q_pow(-1)).inv()
        return EnvElement(
            self, {(0, 0, 0, 0, self._kmod(2)): inv, (0, 0, 0, 0, self._kmod(-2)): -inv}
        )

    def _kmod(self, j):
        return j % self.p if self.p is not None else j

    def _swap_em_pow_ep(self, n):
        """E-^n E+ in PBW form, memoized."""
        hit = self._swap_cache.get(n)
        if hit is not None:
            return hit
        if n == 0:
            out = self.e_plus()
        else:
            prev = self._swap_em_pow_ep(n - 1)  # E-^(n-1) E+
            out = self._append_e_minus(prev)  # (E-^(n-1) E+) E-  ... wrong order
            # E-^n E+ = E-^(n-1) (E+ E- - W) = (E-^(n-1) E+) E- - E-^(n-1) W
            w = self.commutator_w()
            corr = self.zero()
            for m, c in w.terms.items():
                corr = corr + EnvElement(
                    self, {(0, 0, 0, n - 1, m[4]): c}
                )
            out = out - corr
        self._swap_cache[n] = out
        return out

    def _append_e_minus(self, el):
        """el * E- for el in PBW form (trivial: K-swap and E- fold)."""
        out = {}
        for (sp, tm, mp, nm, kk), c in el.terms.items():
            v = c * self.field.q_pow(-kk)
            if self.p is not None and nm + 1 == self.p:
                key = (sp, tm + 1, mp, 0, kk)
                v = v * self.ecal_sign
            else:
                key = (sp, tm, mp, nm + 1, kk)
            acc = out.get(key)
            v = v if acc is None else acc + v
            if v.is_zero():
                out.pop(key, None)
            else:
                out[key] = v
        return EnvElement(self, out)

    def _append_e_plus(self, el):
        """el * E+: push E+ through K^kk and E-^nm."""
        out = self.zero()
        for (sp, tm, mp, nm, kk), c in el.terms.items():
            c = c * self.field.q_pow(kk)
            swapped = self._swap_em_pow_ep(nm)  # E-^nm E+ in PBW form
            for (s2, t2, m2, n2, k2), c2 in swapped.terms.items():
                # assemble Ecal's, E+^(mp+m2), E-^n2, K^(kk+k2)
                mtot = mp + m2
                coeff = c * c2
                sp2, tm2 = sp + s2, tm + t2
                if self.p is not None and mtot >= self.p:
                    mtot -= self.p
                    sp2 += 1
                    coeff = coeff * self.ecal_sign
                key = (sp2, tm2, mtot, n2, self._kmod(kk + k2))
                out = out + EnvElement(self, {key: coeff})
        return out

    def mono_product(self, m1, m2):
        key = (m1, m2)
        hit = self._prod_cache.get(key)
        if hit is not None:
            return hit
        sp, tm, mp, nm, kk = m2
        out = EnvElement(self, {m1: self.field.one})
        if sp or tm:
            out = EnvElement(
                self,
                {
                    (a + sp, b + tm, c, d, e): v
                    for (a, b, c, d, e), v in out.terms.items()
                },
            )
        for _ in range(mp):
            out = self._append_e_plus(out)
        for _ in range(nm):
            out = self._append_e_minus(out)
        if kk:
            out = EnvElement(
                self,
                {(a, b, c, d, self._kmod(e + kk)): v for (a, b, c, d, e), v in out.terms.items()},
            )
        self._prod_cache[key] = out
        return out

    # -- tensors ---------------------------------------------------------

    def tensor_zero(self):
        return EnvTensor(self, {})

    def tensor_one(self):
        return EnvTensor(self, {(ENV_UNIT, ENV_UNIT): self.field.one})

    def tensor_of(self, x, y):
        out = {}
        for ml, cl in x.terms.items():
            for mr, cr in y.terms.items():
                c = cl * cr
                if not c.is_zero():
                    out[(ml, mr)] = c
        return EnvTensor(self, out)

    # -- Hopf structure --------------------------------------------------

    @lru_cache(maxsize=None)
    def cop_e_plus(self):
        return self.tensor_of(self.e_plus(), self.k_gen()) + self.tensor_of(
            self.k_gen(-1), self.e_plus()
        )

    @lru_cache(maxsize=None)
    def cop_e_minus(self):
        return self.tensor_of(self.e_minus(), self.k_gen()) + self.tensor_of(
            self.k_gen(-1), self.e_minus()
        )

    @lru_cache(maxsize=None)
    def cop_k(self):
        return self.tensor_of(self.k_gen(), self.k_gen())

    @lru_cache(maxsize=None)
    def cop_ecal_plus(self):
        one = self.one()
        e = self.ecal_plus()
        return self.tensor_of(e, one) + self.tensor_of(one, e)

    @lru_cache(maxsize=None)
    def cop_ecal_minus(self):
        one = self.one()
        e = self.ecal_minus()
        return self.tensor_of(e, one) + self.tensor_of(one, e)

    def mono_coproduct(self, m):
        hit = self._mono_cop_cache.get(m)
        if hit is not None:
            return hit
        sp, tm, mp, nm, kk = m
        out = self.cop_ecal_plus() ** sp if sp else self.tensor_one()
        if tm:
            out = out * self.cop_ecal_minus() ** tm
        if mp:
            out = out * self.cop_e_plus() ** mp
        if nm:
            out = out * self.cop_e_minus() ** nm
        if kk:
            K = self.cop_k()
            for _ in range(kk):
                out = out * K
        self._mono_cop_cache[m] = out
        return out

    @lru_cache(maxsize=None)
    def antipode_gen(self, name):
        # S(E+-) = -q^(+-1) E+- is forced by Delta(E+-) = E+- (x) K + K^-1 (x) E+-;
        # the opposite exponent sign fails m(S (x) id)Delta = eps.
        f = self.field
        if name == "K":
            return self.k_gen(-1)
        if name == "E+":
            return self.e_plus().scale(-f.q_pow(1))
        if name == "E-":
            return self.e_minus().scale(-f.q_pow(-1))
        if name == "Ecal+":
            return self.ecal_plus().scale(-f.one)
        if name == "Ecal-":
            return self.ecal_minus().scale(-f.one)
        raise KeyError(name)

    def mono_antipode(self, m):
        sp, tm, mp, nm, kk = m
        out = self.antipode_gen("K") ** kk if kk else self.one()
        if nm:
            out = out * self.antipode_gen("E-") ** nm
        if mp:
            out = out * self.antipode_gen("E+") ** mp
        if tm:
            out = out * self.antipode_gen("Ecal-") ** tm
        if sp:
            out = out * self.antipode_gen("Ecal+") ** sp
        return out

    # -- named elements ----------------------------------------------------

    @lru_cache(maxsize=None)
    def casimir(self):
        """Central Casimir normalized so its cyclic-representation eigenvalue
        is exactly a*lambda+.

        C = E- E+ + (qK - q^-1 K^-1)(K - K^-1)/(q - q^-1)^2.  The squared-
        numerator variant is not central; see the decisions ledger.
        """
        f = self.field
        c = self.e_minus() * self.e_plus()
        inv2 = ((f.q_pow(1) - f.q_pow(-1)) ** 2).inv()
        # (qK - q^-1 K^-1)(K - K^-1) = q K^2 + q^-1 K^-2 - q - q^-1
        kpart = (
            self.k_gen(2).scale(f.q_pow(1))
            + self.k_gen(-2).scale(f.q_pow(-1))
            - self.one().scale(f.q_pow(1) + f.q_pow(-1))
        )
        return c + kpart.scale(inv2)

    def xi_a(self, x):
        """Quotient to U_q(sl(2,R|p)): drop every Ecal-carrying term."""
        return EnvElement(
            self, {m: c for m, c in x.terms.items() if m[0] == 0 and m[1] == 0}
        )


@lru_cache(maxsize=None)
def env_algebra(p):
    return EnvAlgebra(p)


@lru_cache(maxsize=None)
def env_algebra_generic():
    return EnvAlgebra(None)
