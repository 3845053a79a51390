"""Fully materialized odd prime power fields F_q with exact arithmetic.

Elements are encoded as the integers 0..q-1: an element's index is the
base-p value of its coefficient vector, constant term least significant,
so prime-subfield elements keep their ordinary integer value and 0/1 are
the additive/multiplicative identities.  Multiplication, division and the
quadratic character run through discrete-log tables built once from a
deterministic primitive element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DivisionByZero, EvenCharacteristic, NotPrime, TooLarge

DEFAULT_MAX_Q = 10_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def factor_prime_power(q: int) -> tuple[int, int]:
    """Write q as p**e for a prime p, or raise NotPrime."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if p * p > q:
            return q, 1
        if q % p:
            continue
        if not is_prime(p):
            raise NotPrime(f"{q} is not a prime power")
        e = 0
        m = q
        while m % p == 0:
            m //= p
            e += 1
        if m != 1:
            raise NotPrime(f"{q} is not a prime power")
        return p, e
    return q, 1


def _digits(n: int, p: int, e: int) -> tuple[int, ...]:
    out = []
    for _ in range(e):
        out.append(n % p)
        n //= p
    return tuple(out)


def _undigits(ds, p: int) -> int:
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


def _poly_mul_mod(a, b, tail, p: int, e: int) -> tuple[int, ...]:
    """Schoolbook product of two length-e coefficient vectors, reduced by
    the monic modulus X^e + tail(X)."""
    prod = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(2 * e - 2, e - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for t in range(e):
                prod[d - e + t] = (prod[d - e + t] - c * tail[t]) % p
    return tuple(prod[:e])


def _poly_pow_mod(base, n: int, tail, p: int, e: int) -> tuple[int, ...]:
    result = tuple([1] + [0] * (e - 1))
    cur = base
    while n:
        if n & 1:
            result = _poly_mul_mod(result, cur, tail, p, e)
        cur = _poly_mul_mod(cur, cur, tail, p, e)
        n >>= 1
    return result


def _poly_divides(div, poly, p: int) -> bool:
    """True when the monic polynomial div divides poly over F_p."""
    rem = list(poly)
    dd = len(div) - 1
    while len(rem) - 1 >= dd:
        lead = rem[-1]
        if lead:
            shift = len(rem) - 1 - dd
            for i, c in enumerate(div):
                rem[shift + i] = (rem[shift + i] - lead * c) % p
        rem.pop()
    return all(c == 0 for c in rem)


def _is_irreducible(tail, p: int, e: int) -> bool:
    # No roots in F_p rules out linear factors; enough for degree <= 3.
    for a in range(p):
        v = pow(a, e, p)
        for i, c in enumerate(tail):
            v = (v + c * pow(a, i, p)) % p
        if v == 0:
            return False
    if e <= 3:
        return True
    poly = list(tail) + [1]
    for d in range(2, e // 2 + 1):
        for m in range(p**d):
            div = list(_digits(m, p, d)) + [1]
            if _poly_divides(div, poly, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Construction parameters of F_q = F_{p^e}.

    modulus holds the monic irreducible coefficients (constant term first,
    leading 1 included); it is None for prime fields.
    """

    p: int
    e: int
    q: int
    modulus: tuple[int, ...] | None

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1


@dataclass(frozen=True)
class CharPairCounts:
    """Counts of i with chi(i), chi(i+1) patterns (+,+), (-,-), (+,-), (-,+)."""

    a: int
    b: int
    c: int
    d: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class CharPairReport:
    counts: CharPairCounts
    predicted: CharPairCounts
    match: bool
    notes: tuple[str, ...]


class FieldCtx:
    """Immutable arithmetic context for one field; safe to share."""

    def __init__(self, spec: FieldSpec, g: int, exp_table: list[int]):
        self.spec = spec
        self.p = spec.p
        self.e = spec.e
        self.q = spec.q
        self.g = g
        self.residue_class = spec.q % 4
        self.exp_table = exp_table
        log_table: list[int | None] = [None] * spec.q
        for k, x in enumerate(exp_table):
            log_table[x] = k
        self.log_table = log_table
        chi_table = [0] * spec.q
        for k, x in enumerate(exp_table):
            chi_table[x] = 1 if k % 2 == 0 else -1
        self.chi_table = chi_table
        if spec.e > 1:
            self._digit_vectors = [_digits(x, spec.p, spec.e) for x in range(spec.q)]
        else:
            self._digit_vectors = None
        self.inv4 = self.inv(self.from_int(4))

    # -- arithmetic on element indices -----------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        da = self._digit_vectors[a]
        db = self._digit_vectors[b]
        return _undigits([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return _undigits([(-x) % self.p for x in self._digit_vectors[a]], self.p)

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        da = self._digit_vectors[a]
        db = self._digit_vectors[b]
        return _undigits([(x - y) % self.p for x, y in zip(da, db)], self.p)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        return self.exp_table[(-self.log_table[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow_el(self, a: int, n: int) -> int:
        if a == 0:
            if n == 0:
                return 1
            if n < 0:
                raise DivisionByZero("0 to a negative power")
            return 0
        return self.exp_table[(self.log_table[a] * n) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Embed an ordinary integer via the prime subfield."""
        return n % self.p

    def chi(self, x: int) -> int:
        """Quadratic character: +1 on nonzero squares, -1 on nonsquares, 0 at 0."""
        return self.chi_table[x]

    def sqrt(self, x: int) -> tuple[int, int] | None:
        """Both square roots of x ordered by index, or None when chi(x) = -1."""
        if x == 0:
            return (0, 0)
        k = self.log_table[x]
        if k % 2:
            return None
        r = self.exp_table[k // 2]
        s = self.neg(r)
        return (r, s) if r < s else (s, r)

    # -- misc -------------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def nonzero_elements(self) -> range:
        return range(1, self.q)

    def describe(self) -> dict:
        """JSON-ready field description for report reproducibility."""
        return {
            "p": self.p,
            "e": self.e,
            "q": self.q,
            "modulus": list(self.spec.modulus) if self.spec.modulus else None,
            "g": self.g,
            "residue_class": self.residue_class,
        }

    def __repr__(self):
        return f"FieldCtx(q={self.q})"


def _find_modulus(p: int, e: int) -> tuple[int, ...]:
    for m in range(p**e):
        tail = _digits(m, p, e)
        if _is_irreducible(tail, p, e):
            return tail + (1,)
    raise RuntimeError(f"no irreducible polynomial of degree {e} over F_{p}")


def build_field(p: int, e: int = 1, max_q: int = DEFAULT_MAX_Q) -> FieldCtx:
    """Construct F_{p^e} deterministically.

    The modulus is the first irreducible in coefficient-vector order and the
    primitive element is the nonzero element of smallest index, so every
    downstream computation is reproducible bit for bit.
    """
    if p % 2 == 0:
        raise EvenCharacteristic(f"characteristic must be odd, got p={p}")
    if not is_prime(p):
        raise NotPrime(f"p={p} is not prime")
    if e < 1:
        raise ValueError(f"extension degree must be >= 1, got {e}")
    q = p**e
    if q > max_q:
        raise TooLarge(f"q={q} exceeds the configured bound {max_q}")

    divisors = prime_factors(q - 1)
    if e == 1:
        modulus = None
        g = next(
            c
            for c in range(2, q)
            if all(pow(c, (q - 1) // r, p) != 1 for r in divisors)
        )
        exp_table = [1] * (q - 1)
        for k in range(1, q - 1):
            exp_table[k] = (exp_table[k - 1] * g) % p
    else:
        modulus = _find_modulus(p, e)
        tail = modulus[:-1]
        one = tuple([1] + [0] * (e - 1))

        def primitive(c):
            v = _digits(c, p, e)
            return all(
                _poly_pow_mod(v, (q - 1) // r, tail, p, e) != one for r in divisors
            )

        g = next(c for c in range(2, q) if primitive(c))
        g_vec = _digits(g, p, e)
        exp_table = [1] * (q - 1)
        cur = one
        for k in range(1, q - 1):
            cur = _poly_mul_mod(cur, g_vec, tail, p, e)
            exp_table[k] = _undigits(cur, p)

    return FieldCtx(FieldSpec(p=p, e=e, q=q, modulus=modulus), g, exp_table)


def build_field_for_q(q: int, max_q: int = DEFAULT_MAX_Q) -> FieldCtx:
    """Construct F_q from its cardinality."""
    p, e = factor_prime_power(q)
    return build_field(p, e, max_q=max_q)


_OPS = frozenset({"add", "sub", "mul", "div", "neg", "inv"})


def field_arith(ctx: FieldCtx, op: str, a: int, b: int | None = None) -> int:
    """Dispatch one exact field operation by name."""
    if op not in _OPS:
        raise ValueError(f"unknown operation {op!r}")
    if op in ("neg", "inv"):
        return getattr(ctx, op)(a)
    if b is None:
        raise ValueError(f"operation {op!r} needs two operands")
    return getattr(ctx, op)(a, b)


CHAR_COUNT_CORRECTION_NOTE = (
    "first consecutive-square count uses the closed form (q-5)/4; the "
    "alternative reading (q-5)/5 fails enumeration already at q=5"
)


def predicted_char_pair_counts(ctx: FieldCtx) -> CharPairCounts:
    q = ctx.q
    if ctx.residue_class == 3:
        return CharPairCounts((q - 3) // 4, (q - 3) // 4, (q + 1) // 4, (q - 3) // 4)
    return CharPairCounts((q - 5) // 4, (q - 1) // 4, (q - 1) // 4, (q - 1) // 4)


def char_pair_counts(ctx: FieldCtx) -> CharPairReport:
    """Enumerate the four chi(i)/chi(i+1) sign-pattern counts and compare
    them with the residue-class closed forms."""
    a = b = c = d = 0
    for x in ctx.elements():
        cx = ctx.chi_table[x]
        if cx == 0:
            continue
        cy = ctx.chi_table[ctx.add(x, 1)]
        if cy == 0:
            continue
        if cx == 1:
            if cy == 1:
                a += 1
            else:
                c += 1
        else:
            if cy == -1:
                b += 1
            else:
                d += 1
    counts = CharPairCounts(a, b, c, d)
    predicted = predicted_char_pair_counts(ctx)
    notes = () if ctx.residue_class == 3 else (CHAR_COUNT_CORRECTION_NOTE,)
    return CharPairReport(counts, predicted, counts == predicted, notes)
