"""Exact polynomial arithmetic over the integers.

Provides q-analogs ``1 + q + ... + q^(k-1)``, cyclotomic polynomials, and two
independent brute-force oracles for the degree of the lcm of a set of
q-analogs: one multiplies out cyclotomic factors over the divisor closure of
the set, the other iterates ``lcm(f, g) = f*g / gcd(f, g)`` with an
integer-coefficient polynomial gcd.

Coefficients are arbitrary-precision Python integers, stored dense and
lowest-degree first.  Long division runs on int64 numpy arrays when the
operands are large enough to care, and every fast-path quotient is certified
exact by a multiply-back comparison at a power-of-two evaluation point, with
a pure Python fallback; results are never silently wrong.
"""

from __future__ import annotations

import math
from functools import lru_cache, reduce

import numpy as np

from .errors import ResourceLimitError

# Default cap on elements fed to the degree oracles; they are meant for
# desk-scale verification, not production-size sets.
ORACLE_LIMIT = 512

_INT64_SAFE = 2**62
_NUMPY_DIV_MIN_LEN = 32


def _normalize(coeffs) -> tuple[int, ...]:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(int(c) for c in cs)


class IntPoly:
    """Dense integer-coefficient polynomial, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _normalize(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __mul__(self, other):
        return poly_mul(self, other)

    def __repr__(self):
        if not self.coeffs:
            return "IntPoly('0')"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = " + " if (c > 0 and parts) else (" - " if parts else ("-" if c < 0 else ""))
            mag = abs(c)
            term = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            body = str(mag) if (i == 0 or mag != 1) else ""
            parts.append(f"{sign}{body}{term}")
        return f"IntPoly('{''.join(parts)}')"


ZERO = IntPoly(())
ONE = IntPoly((1,))


def q_analog(k: int) -> IntPoly:
    """The polynomial 1 + q + ... + q^(k-1), of degree k-1."""
    if k < 1:
        raise ValueError(f"q_analog requires k >= 1, got {k}")
    return IntPoly((1,) * k)


def poly_mul(f: IntPoly, g: IntPoly) -> IntPoly:
    """Exact product, via int64 convolution when provably overflow-free."""
    fc, gc = f.coeffs, g.coeffs
    if not fc or not gc:
        return ZERO
    hf = max(abs(c) for c in fc)
    hg = max(abs(c) for c in gc)
    if min(len(fc), len(gc)) * hf * hg < _INT64_SAFE:
        out = np.convolve(np.asarray(fc, dtype=np.int64), np.asarray(gc, dtype=np.int64))
        return IntPoly(out.tolist())
    res = [0] * (len(fc) + len(gc) - 1)
    for i, a in enumerate(fc):
        if a:
            for j, b in enumerate(gc):
                res[i + j] += a * b
    return IntPoly(res)


def _eval_pow2(coeffs, k: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc << k) + c
    return acc


def _divmod_python(fc, gc):
    """Integer long division; returns (q, r, ok) with ok False when some
    leading-coefficient step is not integral over Z."""
    dg = len(gc) - 1
    lg = gc[-1]
    dq = len(fc) - len(gc)
    if dq < 0:
        return [], list(fc), True
    r = list(fc)
    q = [0] * (dq + 1)
    for i in range(dq, -1, -1):
        c = r[i + dg]
        if c == 0:
            continue
        if c % lg:
            return q, r, False
        c //= lg
        q[i] = c
        for j in range(dg + 1):
            r[i + j] -= c * gc[j]
    return q, r[:dg], True


def _divmod_numpy(fc, gc):
    """int64 long division (may wrap silently; caller certifies)."""
    dg = len(gc) - 1
    lg = gc[-1]
    dq = len(fc) - len(gc)
    rf = np.asarray(fc[::-1], dtype=np.int64).copy()
    gf = np.asarray(gc[::-1], dtype=np.int64)
    qf = np.zeros(dq + 1, dtype=np.int64)
    for i in range(dq + 1):
        c = int(rf[i])
        if c == 0:
            continue
        if lg != 1:
            if c % lg:
                return None
            c //= lg
        qf[i] = c
        rf[i : i + dg + 1] -= c * gf
    q = qf[::-1].tolist()
    r = rf[dq + 1 :][::-1].tolist()
    return q, r


def _divmod(fc, gc):
    """Exact integer divmod with certified int64 fast path."""
    if len(fc) >= _NUMPY_DIV_MIN_LEN and len(fc) >= len(gc):
        hf = max(abs(c) for c in fc)
        hg = max(abs(c) for c in gc)
        if hf < 2**40 and hg < 2**40:
            out = _divmod_numpy(fc, gc)
            if out is not None:
                q, r = out
                hq = max((abs(c) for c in q), default=0)
                hr = max((abs(c) for c in r), default=0)
                bound = hf + min(len(q) or 1, len(gc)) * hg * hq + hr + 1
                k = (2 * bound).bit_length() + 1
                lhs = _eval_pow2(gc, k) * _eval_pow2(q, k) + _eval_pow2(r, k)
                if lhs == _eval_pow2(fc, k):
                    return q, r, True
    return _divmod_python(fc, gc)


def poly_divexact(f: IntPoly, g: IntPoly) -> IntPoly:
    """Quotient f/g when g divides f exactly over Z; raises otherwise."""
    if g.is_zero():
        raise ValueError("division by the zero polynomial")
    if f.is_zero():
        return ZERO
    q, r, ok = _divmod(f.coeffs, g.coeffs)
    if not ok or any(r):
        raise ValueError(f"{f!r} is not exactly divisible by {g!r}")
    return IntPoly(q)


def _content(coeffs) -> int:
    return reduce(math.gcd, coeffs, 0)


def _primitive(coeffs):
    c = _content(coeffs)
    if c > 1:
        return [x // c for x in coeffs]
    return list(coeffs)


def _pseudo_rem(fc, gc):
    """Pseudo-remainder of fc by gc (content is stripped by the caller)."""
    dg = len(gc) - 1
    lg = gc[-1]
    if lg == 1:
        _, r, _ = _divmod(fc, gc)
        return _normalize(r)
    r = list(fc)
    while len(r) - 1 >= dg and r:
        t = r[-1]
        off = len(r) - 1 - dg
        r = [lg * c for c in r]
        for j in range(dg + 1):
            r[off + j] -= t * gc[j]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return tuple(r)


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd over Z, positive leading coefficient.

    Primitive pseudo-remainder sequence: the content is removed after every
    pseudo-division step, which keeps coefficient growth in check without
    rational arithmetic.
    """
    if f.is_zero() and g.is_zero():
        return ZERO
    a = _primitive(f.coeffs) if not f.is_zero() else []
    b = _primitive(g.coeffs) if not g.is_zero() else []
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, _primitive(r)
    if a[-1] < 0:
        a = [-c for c in a]
    return IntPoly(a)


def poly_lcm(f: IntPoly, g: IntPoly) -> IntPoly:
    """lcm of primitive parts, positive leading coefficient."""
    if f.is_zero() or g.is_zero():
        return ZERO
    pf = IntPoly(_primitive(f.coeffs))
    pg = IntPoly(_primitive(g.coeffs))
    d = poly_gcd(pf, pg)
    out = poly_mul(poly_divexact(pf, d), pg)
    if out.leading() < 0:
        out = IntPoly([-c for c in out.coeffs])
    return out


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(d: int) -> tuple[int, ...]:
    if d == 1:
        return (-1, 1)
    # q^d - 1 divided by the cyclotomics of all proper divisors of d.
    poly = IntPoly([-1] + [0] * (d - 1) + [1])
    for e in range(1, d):
        if d % e == 0:
            poly = poly_divexact(poly, IntPoly(_cyclotomic_coeffs(e)))
    return poly.coeffs


def cyclotomic(d: int) -> IntPoly:
    """The d-th cyclotomic polynomial; its degree is the totient of d."""
    if d < 1:
        raise ValueError(f"cyclotomic index must be >= 1, got {d}")
    return IntPoly(_cyclotomic_coeffs(d))


def _validated_elements(elements, limit):
    items = sorted({int(k) for k in elements})
    for k in items:
        if k < 1:
            raise ValueError(f"set elements must be positive integers, got {k}")
        if k > limit:
            raise ResourceLimitError(f"oracle element {k} exceeds limit {limit}")
    return items


def lcm_degree_oracle(elements, method: str = "cyclotomic", limit: int = ORACLE_LIMIT) -> int:
    """Degree of lcm{ [k]_q : k in elements }, by brute polynomial arithmetic.

    method="cyclotomic": collect the divisor closure {d > 1 : d | k for some
    k}, multiply the corresponding cyclotomic polynomials, and report the
    product's degree.  method="gcd": fold the set with polynomial
    lcm(f, g) = f*g / gcd(f, g); shares no code with the first path beyond
    base polynomial arithmetic.  The empty set has lcm 1, hence degree 0.
    """
    items = _validated_elements(elements, limit)
    if method == "cyclotomic":
        closure = set()
        for k in items:
            for d in range(2, k + 1):
                if k % d == 0:
                    closure.add(d)
        prod = ONE
        for d in sorted(closure):
            prod = poly_mul(prod, cyclotomic(d))
        return prod.degree
    if method == "gcd":
        acc = ONE
        for k in items:
            acc = poly_lcm(acc, q_analog(k))
        return acc.degree
    raise ValueError(f"unknown oracle method {method!r}")
