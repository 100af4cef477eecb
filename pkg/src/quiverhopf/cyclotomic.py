"""Exact scalar arithmetic carrying a primitive n-th root of unity.

Two interchangeable backends provide the coefficient field:

* exact: the cyclotomic field Q(zeta_n), elements stored as canonical
  rational coefficient vectors modulo the n-th cyclotomic polynomial;
* modular: a prime field F_p with p = 1 (mod n) and a fixed primitive
  n-th root, used as a fast specialization of the exact field.

No floating point is used anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_monic(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den must be monic; integer arithmetic stays exact.
    assert den[-1] == 1
    num = list(num)
    q = [0] * max(1, len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        if c:
            q[i] = c
            for j, y in enumerate(den):
                num[i + j] -= c * y
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return q, num


_cyclotomic_cache: dict[int, tuple[int, ...]] = {}


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Ascending integer coefficients of the n-th cyclotomic polynomial.

    Computed by exact division of x^n - 1 by the product of the
    polynomials at all proper divisors of n.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n in _cyclotomic_cache:
        return _cyclotomic_cache[n]
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in divisors(n)[:-1]:
        den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    q, r = _poly_divmod_monic(num, den)
    assert r == [0], "cyclotomic division must be exact"
    assert len(q) - 1 == euler_phi(n)
    _cyclotomic_cache[n] = tuple(q)
    return _cyclotomic_cache[n]


_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for the word-sized range used here."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def smallest_prime_one_mod(n: int, floor: int) -> int:
    """Smallest prime p > floor with p = 1 (mod n)."""
    k = max(1, (floor - 1) // n + 1)
    while True:
        p = k * n + 1
        if p > floor and is_prime(p):
            return p
        k += 1


class Scalar:
    """Immutable field element tied to a context; supports +, -, *, /, **."""

    __slots__ = ("ctx", "rep")

    def __init__(self, ctx: "CyclotomicContext", rep):
        self.ctx = ctx
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.ctx is not self.ctx:
                raise ValueError("scalars from different contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx._add(self.rep, o.rep))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx._add(self.rep, self.ctx._neg(o.rep)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx._add(o.rep, self.ctx._neg(self.rep)))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx._mul(self.rep, o.rep))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.ctx, self.ctx._neg(self.rep))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base = self.inverse()
            k = -k
        out = self.ctx.one
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar(self.ctx, self.ctx._inv(self.rep))

    def is_zero(self) -> bool:
        return self.ctx._is_zero(self.rep)

    def is_one(self) -> bool:
        return self.rep == self.ctx.one.rep

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.ctx is other.ctx and self.rep == other.rep

    def __hash__(self):
        return hash((id(self.ctx), self.rep))

    def __repr__(self):
        return self.ctx.format_rep(self.rep)


class CyclotomicContext:
    """Common data for both backends: order n of q and the exponent e.

    e is n for odd n and n/2 for even n; it is the nilpotency order of the
    raising generators.
    """

    backend = "abstract"

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("order n must be a positive integer")
        self.n = n
        self.e = n if n % 2 == 1 else n // 2
        self.phi_n = cyclotomic_polynomial(n)

    # subclasses implement _add, _neg, _mul, _inv, _is_zero, _from_fraction,
    # and fill self._q_reps (representations of q^0..q^(n-1)).

    def scalar(self, value) -> Scalar:
        if isinstance(value, Scalar):
            if value.ctx is not self:
                raise ValueError("scalar from a different context")
            return value
        if isinstance(value, int):
            value = Fraction(value)
        if isinstance(value, Fraction):
            return Scalar(self, self._from_fraction(value))
        raise TypeError(f"cannot build scalar from {value!r}")

    @property
    def zero(self) -> Scalar:
        return self.scalar(0)

    @property
    def one(self) -> Scalar:
        return self.scalar(1)

    @property
    def q(self) -> Scalar:
        return self.q_power(1)

    def q_power(self, k: int) -> Scalar:
        return Scalar(self, self._q_reps[k % self.n])

    def serre_coefficient(self) -> Scalar:
        return self.q_power(1) + self.q_power(-1)

    def describe(self) -> dict:
        return {"backend": self.backend, "n": self.n, "e": self.e}


class ExactContext(CyclotomicContext):
    """Q(zeta_n): canonical vectors of rationals modulo the minimal polynomial."""

    backend = "exact"

    def __init__(self, n: int):
        super().__init__(n)
        self.degree = len(self.phi_n) - 1
        self._zero_rep = (Fraction(0),) * self.degree
        reps = []
        for k in range(n):
            vec = [Fraction(0)] * (k + 1)
            vec[k] = Fraction(1)
            reps.append(self._reduce(vec))
        self._q_reps = reps

    def _reduce(self, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        d = self.degree
        for i in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[i]
            if c:
                for j in range(d):
                    coeffs[i - d + j] -= c * self.phi_n[j]
                coeffs[i] = Fraction(0)
        vec = coeffs[:d] + [Fraction(0)] * (d - len(coeffs))
        return tuple(vec[:d])

    def _from_fraction(self, value: Fraction):
        return (Fraction(value),) + (Fraction(0),) * (self.degree - 1)

    def _is_zero(self, rep) -> bool:
        return rep == self._zero_rep

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x for x in a)

    def _mul(self, a, b):
        out = [Fraction(0)] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return self._reduce(out)

    def _inv(self, a):
        # extended Euclid against the (irreducible) minimal polynomial
        mod = [Fraction(c) for c in self.phi_n]
        r0, r1 = mod, list(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, r = _frac_poly_divmod(r0, r1)
            s = _frac_poly_sub(s0, _frac_poly_mul(q, s1))
            r0, r1, s0, s1 = r1, r, s1, s
        # r0 is a nonzero constant gcd since the modulus is irreducible
        const = r0[0]
        inv = [c / const for c in s0]
        return self._reduce(inv)

    def format_rep(self, rep) -> str:
        parts = []
        for i, c in enumerate(rep):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*q" if c != 1 else "q")
            else:
                parts.append(f"{c}*q^{i}" if c != 1 else f"q^{i}")
        return " + ".join(parts) if parts else "0"

    def to_fraction_vector(self, s: Scalar) -> tuple[Fraction, ...]:
        return s.rep


def _frac_poly_trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _frac_poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _frac_poly_trim(out)


def _frac_poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _frac_poly_trim(out)


def _frac_poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    den = _frac_poly_trim(list(den))
    dd = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dd:
        return [Fraction(0)], _frac_poly_trim(num)
    q = [Fraction(0)] * (len(num) - dd)
    for i in range(len(num) - dd - 1, -1, -1):
        c = num[i + dd] / lead
        if c:
            q[i] = c
            for j, y in enumerate(den):
                num[i + j] -= c * y
    return _frac_poly_trim(q), _frac_poly_trim(num)


class ModularContext(CyclotomicContext):
    """F_p with p = 1 (mod n) and the smallest primitive n-th root."""

    backend = "modular"

    def __init__(self, n: int, prime_floor: int = 2**30):
        super().__init__(n)
        self.prime_floor = prime_floor
        self.p = smallest_prime_one_mod(n, prime_floor)
        self.root = self._smallest_primitive_root()
        self._q_reps = [pow(self.root, k, self.p) for k in range(n)]

    def _smallest_primitive_root(self) -> int:
        n, p = self.n, self.p
        factors = prime_factors(n)
        base = None
        for g in range(2, p):
            r = pow(g, (p - 1) // n, p)
            if pow(r, n, p) == 1 and all(pow(r, n // f, p) != 1 for f in factors):
                base = r
                break
        if base is None:
            raise RuntimeError("no primitive root found")
        # all primitive n-th roots are base^k with gcd(k, n) = 1
        candidates = [pow(base, k, p) for k in range(1, n + 1) if math.gcd(k, n) == 1]
        return min(candidates) if candidates else 1

    def _from_fraction(self, value: Fraction):
        den = value.denominator % self.p
        if den == 0:
            raise ZeroDivisionError("denominator divisible by the modulus")
        return value.numerator * pow(den, self.p - 2, self.p) % self.p

    def _is_zero(self, rep) -> bool:
        return rep == 0

    def _add(self, a, b):
        return (a + b) % self.p

    def _neg(self, a):
        return -a % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _inv(self, a):
        return pow(a, self.p - 2, self.p)

    def format_rep(self, rep) -> str:
        return f"{rep} (mod {self.p})"

    def describe(self) -> dict:
        out = super().describe()
        out.update({"prime": self.p, "root": self.root, "prime_floor": self.prime_floor})
        return out


def make_context(n: int, backend: str = "exact", prime_floor: int = 2**30) -> CyclotomicContext:
    if backend == "exact":
        return ExactContext(n)
    if backend == "modular":
        return ModularContext(n, prime_floor=prime_floor)
    raise ValueError(f"unknown backend {backend!r}")


def specialize(s: Scalar, modctx: ModularContext) -> Scalar:
    """Map an exact scalar into a modular context by sending q to the root."""
    if not isinstance(s.ctx, ExactContext):
        raise TypeError("specialize expects an exact scalar")
    if s.ctx.n != modctx.n:
        raise ValueError("contexts must share the same order n")
    acc = 0
    for i, c in enumerate(s.rep):
        if c:
            acc = (acc + modctx._from_fraction(c) * pow(modctx.root, i, modctx.p)) % modctx.p
    return Scalar(modctx, acc)
