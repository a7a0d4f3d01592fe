"""Exact arithmetic in GF(2^r) and the Galois ring GR(4,r).

Field elements are plain ints interpreted as bit vectors (polynomial
residues mod a primitive binary polynomial f, low bit = constant term).
Ring elements are length-r tuples of Z4 coefficients (residues mod h,
where h is the basic irreducible lift of f).  All operations live on a
FieldConfig object that carries the modulus and the precomputed
log/exp/trace tables; the zero element is 0 resp. the all-zero tuple.

Everything here is exact integer arithmetic; no floats anywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class GaussianInt:
    """Exact complex integer x + iy."""

    re: int
    im: int

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def conj(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def abs2(self) -> int:
        return self.re * self.re + self.im * self.im

    def scale(self, k: int) -> "GaussianInt":
        return GaussianInt(k * self.re, k * self.im)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __repr__(self) -> str:
        return f"({self.re}{self.im:+d}i)"


GI_ZERO = GaussianInt(0, 0)
GI_ONE = GaussianInt(1, 0)
# i^k for k in Z4
I_POW = (GaussianInt(1, 0), GaussianInt(0, 1), GaussianInt(-1, 0), GaussianInt(0, -1))


def i_power(k: int) -> GaussianInt:
    """i^k as an exact Gaussian integer."""
    return I_POW[k % 4]


def poly_degree(bits: int) -> int:
    return bits.bit_length() - 1


def gf2_mul_mod(a: int, b: int, f: int, r: int) -> int:
    """Multiply two GF(2)[x] residues modulo f (degree r, primitive)."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        if a >> r & 1:
            a ^= f
        b >>= 1
    return acc


def is_primitive(f: int, r: int) -> bool:
    """True iff x has multiplicative order exactly 2^r - 1 mod f."""
    if poly_degree(f) != r or not f & 1:
        return False
    n = (1 << r) - 1
    # walk the powers of x; the order must be n itself, not a proper divisor
    cur = 1
    for k in range(1, n + 1):
        cur = gf2_mul_mod(cur, 2, f, r)
        if cur == 1:
            return k == n
    return False


def hensel_lift(f: int, r: int) -> tuple[int, ...]:
    """Basic irreducible lift h of f to Z4, via one Graeffe step.

    h(x^2) = (-1)^r f(x) f(-x) over Z4; a single step suffices mod 4
    since the Teichmuller roots xi satisfy xi^2 = sigma(xi).  Returns h
    as a monic coefficient tuple of length r+1.  Raises ValueError when
    f is not primitive (the residue of x mod h would not have order
    2^r - 1, breaking the Teichmuller structure).
    """
    if not is_primitive(f, r):
        raise ValueError(f"0x{f:x} is not a primitive degree-{r} polynomial over GF(2)")
    fc = [(f >> k) & 1 for k in range(r + 1)]
    fneg = [c if k % 2 == 0 else (-c) % 4 for k, c in enumerate(fc)]
    prod = [0] * (2 * r + 1)
    for i, a in enumerate(fc):
        if a:
            for j, b in enumerate(fneg):
                prod[i + j] = (prod[i + j] + a * b) % 4
    sign = 1 if r % 2 == 0 else -1
    assert all(prod[k] == 0 for k in range(1, 2 * r + 1, 2)), "Graeffe product must be even"
    h = tuple((sign * prod[2 * k]) % 4 for k in range(r + 1))
    assert h[r] == 1, "lift must be monic"
    assert all((h[k] - fc[k]) % 2 == 0 for k in range(r + 1)), "h == f mod 2"
    return h


class FieldConfig:
    """GF(2^r) together with its Galois-ring lift GR(4,r).

    Fixes xi = x mod h as the Teichmuller generator and alpha = x mod f
    as the field generator, so that reduction mod 2 sends xi^t to
    alpha^t.  Precomputes exp/log tables for the field, the Teichmuller
    power table for the ring, and both trace tables.
    """

    def __init__(self, r: int, f: int):
        if not 2 <= r <= 16:
            raise ValueError("extension degree r must be in 2..16")
        self.r = r
        self.f = f
        self.q = 1 << r
        self.n = self.q - 1  # multiplicative order / sequence period
        self.h = hensel_lift(f, r)

        # field exp/log
        self.exp = [1]
        for _ in range(self.n - 1):
            self.exp.append(gf2_mul_mod(self.exp[-1], 2, f, r))
        self.log = {v: j for j, v in enumerate(self.exp)}
        if len(self.log) != self.n:
            raise ValueError("x is not primitive mod f")
        self.alpha = 2

        # binary trace per element
        self._tr = [0] * self.q
        for x in range(self.q):
            t, y = 0, x
            for _ in range(r):
                t ^= y
                y = gf2_mul_mod(y, y, f, r)
            self._tr[x] = t & 1

        # x^r reduction row for the ring: x^r = -(h - x^r) mod h
        self._red = tuple((-c) % 4 for c in self.h[:r])
        self.zero = (0,) * r
        self.one = tuple([1] + [0] * (r - 1))
        self.xi = tuple([0, 1] + [0] * (r - 2)) if r > 1 else (1,)

        # Teichmuller powers xi^0 .. xi^(n-1); order check closes the loop
        self.xi_pow = [self.one]
        for _ in range(self.n):
            self.xi_pow.append(self.ring_mul(self.xi_pow[-1], self.xi))
        if self.xi_pow[self.n] != self.one or self.one in self.xi_pow[1:self.n]:
            raise ValueError("xi = x mod h does not have order 2^r - 1")
        self.xi_pow = self.xi_pow[: self.n]

        # ring trace of xi^j; sum of Frobenius conjugates stays scalar
        self._ring_tr_xi = []
        for j in range(self.n):
            acc = self.zero
            for k in range(r):
                acc = self.ring_add(acc, self.xi_pow[(j << k) % self.n])
            assert all(c == 0 for c in acc[1:]), "trace must land in Z4"
            self._ring_tr_xi.append(acc[0])

    # ----- field operations (elements are int bitmasks) -----

    def fmul(self, a: int, b: int) -> int:
        return gf2_mul_mod(a, b, self.f, self.r)

    def fpow_alpha(self, j: int) -> int:
        return self.exp[j % self.n]

    def field_trace(self, x: int) -> int:
        """Binary trace tr(x) = sum of x^(2^k), in {0,1}."""
        return self._tr[x]

    def trace_zero_elements(self) -> list[int]:
        """All of W_{r-1}, ordered zero first then by alpha-power index."""
        out = [0]
        out += [self.exp[j] for j in range(self.n) if self._tr[self.exp[j]] == 0]
        return out

    def trace_one_powers(self) -> list[int]:
        """Trace-1 elements in alpha-power index order."""
        return [self.exp[j] for j in range(self.n) if self._tr[self.exp[j]] == 1]

    # ----- ring operations (elements are Z4 coefficient tuples) -----

    def ring_add(self, z: tuple, w: tuple) -> tuple:
        return tuple((a + b) % 4 for a, b in zip(z, w))

    def ring_sub(self, z: tuple, w: tuple) -> tuple:
        return tuple((a - b) % 4 for a, b in zip(z, w))

    def ring_neg(self, z: tuple) -> tuple:
        return tuple((-a) % 4 for a in z)

    def ring_scale(self, k: int, z: tuple) -> tuple:
        return tuple((k * a) % 4 for a in z)

    def ring_mul(self, z: tuple, w: tuple) -> tuple:
        r = self.r
        prod = [0] * (2 * r - 1)
        for i, a in enumerate(z):
            if a:
                for j, b in enumerate(w):
                    prod[i + j] = (prod[i + j] + a * b) % 4
        for d in range(2 * r - 2, r - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for k, rk in enumerate(self._red):
                    prod[d - r + k] = (prod[d - r + k] + c * rk) % 4
        return tuple(prod[:r])

    def reduce_mod2(self, z: tuple) -> int:
        """Image of z in the residue field GF(2^r), as a bitmask."""
        out = 0
        for k, c in enumerate(z):
            if c & 1:
                out |= 1 << k
        return out

    def lift(self, x: int) -> tuple:
        """Teichmuller lift of a field element: the unique a in T over x."""
        if x == 0:
            return self.zero
        return self.xi_pow[self.log[x]]

    def teichmuller_set(self) -> list[tuple]:
        """T = {0, 1, xi, ..., xi^(2^r - 2)} in that order."""
        return [self.zero] + list(self.xi_pow)

    def two_adic(self, z: tuple) -> tuple[tuple, tuple]:
        """Unique (a, b) in T x T with z = a + 2b."""
        a = self.lift(self.reduce_mod2(z))
        w = self.ring_sub(z, a)
        # w lies in 2R; halve it coefficientwise and lift the residue
        bbar = 0
        for k, c in enumerate(w):
            assert c % 2 == 0, "z - a must be even"
            if (c >> 1) & 1:
                bbar |= 1 << k
        b = self.lift(bbar)
        return a, b

    def frobenius(self, z: tuple) -> tuple:
        """sigma(a + 2b) = a^2 + 2b^2; generates Gal(GR(4,r)/Z4)."""
        a, b = self.two_adic(z)
        return self.ring_add(self.ring_mul(a, a), self.ring_scale(2, self.ring_mul(b, b)))

    def ring_trace(self, z: tuple) -> int:
        """T(z) = sum over k of sigma^k(z), a Z4 scalar."""
        acc = self.zero
        w = z
        for _ in range(self.r):
            acc = self.ring_add(acc, w)
            w = self.frobenius(w)
        assert all(c == 0 for c in acc[1:]), "trace must land in Z4"
        return acc[0]

    def ring_trace_xi(self, j: int) -> int:
        """T(xi^j) from the precomputed table."""
        return self._ring_tr_xi[j % self.n]

    # ----- Teichmuller-set helpers (inputs/outputs are field bitmasks) -----

    def teich_sqrt(self, x: int) -> int:
        """Square root within T, i.e. x^(2^(r-1)); squaring permutes T."""
        if x == 0:
            return 0
        return self.exp[(self.log[x] << (self.r - 1)) % self.n]

    def teich_inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse in T")
        return self.exp[(-self.log[x]) % self.n]

    # ----- exponential sums -----

    def gamma1(self) -> GaussianInt:
        """Closed-form Gamma(1) = (-1)^(r+1) sqrt(2^r) eps^r, eps = (1+i)/sqrt(2).

        Always a Gaussian integer: for even r this is -2^(r/2) i^(r/2),
        for odd r it is 2^((r-1)/2) (1+i) i^((r-1)/2).
        """
        r = self.r
        if r % 2 == 0:
            return i_power(r // 2).scale(-(1 << (r // 2)))
        return (GaussianInt(1, 1) * i_power((r - 1) // 2)).scale(1 << ((r - 1) // 2))

    def gamma_direct(self, a: int, b: int) -> GaussianInt:
        """Gamma(a + 2b) = sum over x in T of i^T([a + 2b] x), by direct sum."""
        c = self.ring_add(self.lift(a), self.ring_scale(2, self.lift(b)))
        acc = GI_ONE  # x = 0 term
        for j in range(self.n):
            acc = acc + i_power(self.ring_trace(self.ring_mul(c, self.xi_pow[j])))
        return acc

    def gamma_sum(self, a: int, b: int) -> GaussianInt:
        """Gamma(a + 2b) for a != 0: direct sum cross-checked against the
        closed form Gamma(1) i^(-T(b/a))."""
        if a == 0:
            raise ValueError("gamma_sum requires a != 0")
        direct = self.gamma_direct(a, b)
        quot = self.fmul(b, self.teich_inv(a))
        closed = self.gamma1() * i_power(-self.ring_trace(self.lift(quot)))
        assert direct == closed, f"Gamma mismatch for a={a}, b={b}: {direct} vs {closed}"
        return direct

    # ----- serialization -----

    def to_json(self) -> str:
        return json.dumps({"r": self.r, "f_bits": self.f, "h_coeffs": list(self.h)})

    @classmethod
    def from_json(cls, text: str) -> "FieldConfig":
        obj = json.loads(text)
        cfg = cls(obj["r"], obj["f_bits"])
        if "h_coeffs" in obj and tuple(obj["h_coeffs"]) != cfg.h:
            raise ValueError("stored lift disagrees with the Graeffe lift of f")
        return cfg

    def __repr__(self) -> str:
        return f"FieldConfig(r={self.r}, f=0x{self.f:x})"


# primitive polynomials used as defaults, bitmask form
DEFAULT_POLY = {
    2: 0x7,     # x^2+x+1
    3: 0xB,     # x^3+x+1
    4: 0x13,    # x^4+x+1
    5: 0x25,    # x^5+x^2+1
    6: 0x43,    # x^6+x+1
    7: 0x89,    # x^7+x^3+1
    8: 0x11D,   # x^8+x^4+x^3+x^2+1
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}

_CONFIG_CACHE: dict[tuple[int, int], FieldConfig] = {}


def get_config(r: int, f: int | None = None) -> FieldConfig:
    """Shared FieldConfig instances (construction builds full tables)."""
    if f is None:
        f = DEFAULT_POLY[r]
    key = (r, f)
    if key not in _CONFIG_CACHE:
        _CONFIG_CACHE[key] = FieldConfig(r, f)
    return _CONFIG_CACHE[key]
