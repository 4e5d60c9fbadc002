"""Pairwise-independent hashing over GF(2^L).

Field elements and polynomials over GF(2) are ints, bit ``i`` holding the
coefficient of ``x^i``. :func:`gf_multiply` also accepts ``uint64`` arrays.
"""

from functools import cache

from readk_prg._bits import BitArray, mask


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(clmul(a, b), m)


def is_irreducible(f: int) -> bool:
    """Ben-Or test: ``gcd(f, x^(2^i) - x) = 1`` for ``i <= deg(f) / 2``."""
    degree = f.bit_length() - 1
    if degree < 1:
        return False
    if degree == 1:
        return True
    x = 0b10
    power = x
    for _ in range(degree // 2):
        power = _mulmod(power, power, f)
        if poly_gcd(f, power ^ x) != 1:
            return False
    return True


@cache
def irreducible_polynomial(degree: int) -> int:
    """The numerically smallest irreducible polynomial of ``degree``, leading term included."""
    if degree < 1:
        raise ValueError(f"Field degree must be positive, got {degree}")
    for low in range(1, 1 << degree, 2):
        f = (1 << degree) | low
        if is_irreducible(f):
            return f
    raise AssertionError(f"No irreducible polynomial of degree {degree}")


def gf_multiply(a: BitArray, b: BitArray, degree: int, poly: int) -> BitArray:
    """Product in GF(2^degree) modulo ``poly``.

    Shift-and-add with branch-free masking, so ints and arrays share the code.
    """
    out = a & 0
    for i in range(degree):
        out = out ^ (a * ((b >> i) & 1))
        a = a << 1
        a = a ^ (poly * ((a >> degree) & 1))
    return out & mask(degree)


def affine_hash(x: BitArray, key: BitArray, degree: int) -> BitArray:
    """``h_{a,b}(x) = a * x + b`` with ``a`` the low and ``b`` the high half of ``key``."""
    poly = irreducible_polynomial(degree)
    a = key & mask(degree)
    b = (key >> degree) & mask(degree)
    return gf_multiply(a, x, degree, poly) ^ b
