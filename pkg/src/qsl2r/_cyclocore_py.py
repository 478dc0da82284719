"""Pure-Python coefficient kernel for Q(i, zeta_p) numerator vectors.

A number is (re + i*im)/den with ``re``, ``im`` integer vectors of length
p-1 holding coordinates in the basis 1, q, ..., q^(p-2).  The two functions
here are the hot inner loop of every normal-form product; `_cyclocore.pyx`
is the compiled twin with identical semantics.
"""

BACKEND = "python"


def cyclo_mul(p, re1, im1, re2, im2):
    """Complex convolution folded by q^p = 1 and reduced mod Phi_p.

    The fold leaves exponents 0..p-1; the q^(p-1) coefficient t is then
    eliminated through q^(p-1) = -(1 + q + ... + q^(p-2)).
    """
    n = p - 1
    wr = [0] * p
    wi = [0] * p
    for a in range(n):
        x = re1[a]
        y = im1[a]
        if not x and not y:
            continue
        for b in range(n):
            u = re2[b]
            v = im2[b]
            if not u and not v:
                continue
            e = a + b
            if e >= p:
                e -= p
            wr[e] += x * u - y * v
            wi[e] += x * v + y * u
    tr = wr[n]
    ti = wi[n]
    if tr or ti:
        return tuple(wr[e] - tr for e in range(n)), tuple(wi[e] - ti for e in range(n))
    return tuple(wr[:n]), tuple(wi[:n])


def cyclo_axpy(n, s1, re1, im1, s2, re2, im2):
    """s1*(re1, im1) + s2*(re2, im2) over length-n integer vectors."""
    return (
        tuple(s1 * re1[j] + s2 * re2[j] for j in range(n)),
        tuple(s1 * im1[j] + s2 * im2[j] for j in range(n)),
    )
