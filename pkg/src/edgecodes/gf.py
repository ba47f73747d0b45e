"""Finite fields GF(p^e) with table-driven arithmetic.

Elements are encoded as integers in ``[0, q)``: the base-``p`` digits of the
code are the coefficients of the residue polynomial, lowest degree first.
For prime fields the code is just the residue.  The scalar API
(:class:`FieldElem`) is for readability; the heavy lifting elsewhere works on
numpy arrays of codes through the tables stored on :class:`FieldSpec`.
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field
from functools import lru_cache

import numpy as np

# Conway polynomials, coefficients lowest degree first (monic).
CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}


class FieldError(ValueError):
    pass


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q = p**e``; raise :class:`FieldError` otherwise."""
    if q < 2:
        raise FieldError(f"field size must be at least 2, got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, e


def _poly_mulmod(a: list[int], b: list[int], modulus: tuple[int, ...], p: int) -> list[int]:
    e = len(modulus) - 1
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, e - 1, -1):
        c = prod[deg]
        if c:
            for i in range(e + 1):
                prod[deg - e + i] = (prod[deg - e + i] - c * modulus[i]) % p
    return prod[:e]


def _has_no_factor(modulus: tuple[int, ...], p: int) -> bool:
    """Exhaustive irreducibility test: no monic factor of degree <= e/2."""
    e = len(modulus) - 1
    for deg in range(1, e // 2 + 1):
        for code in range(p**deg):
            cand = [(code // p**i) % p for i in range(deg)] + [1]
            # long division of modulus by cand
            rem = list(modulus)
            for top in range(e, deg - 1, -1):
                c = rem[top]
                if c:
                    for i in range(deg + 1):
                        rem[top - deg + i] = (rem[top - deg + i] - c * cand[i]) % p
            if not any(rem[:deg]):
                return False
    return True


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The field GF(p^e) together with its arithmetic tables."""

    p: int
    e: int
    reduction_polynomial: tuple[int, ...]
    add_table: np.ndarray = dc_field(repr=False)
    mul_table: np.ndarray = dc_field(repr=False)
    neg_table: np.ndarray = dc_field(repr=False)
    inv_table: np.ndarray = dc_field(repr=False)
    exp_table: np.ndarray = dc_field(repr=False)
    log_table: np.ndarray = dc_field(repr=False)
    generator: int = 0

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def is_prime(self) -> bool:
        return self.e == 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self) -> int:
        return hash((self.p, self.e))

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __call__(self, value: int | tuple[int, ...]) -> "FieldElem":
        """Build an element from an integer (residue mod p for e=1) or coefficient tuple."""
        if isinstance(value, tuple):
            if len(value) != self.e:
                raise FieldError(f"expected {self.e} coefficients, got {len(value)}")
            code = sum((c % self.p) * self.p**i for i, c in enumerate(value))
        elif self.e == 1:
            code = value % self.p
        else:
            if not 0 <= value < self.q:
                raise FieldError(f"code {value} out of range for {self!r}")
            code = value
        return FieldElem(self, code)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    def alpha(self) -> "FieldElem":
        """The residue class of x (the primitive root of the Conway polynomial)."""
        if self.e == 1:
            raise FieldError("prime fields have no adjoined root")
        return FieldElem(self, self.p)

    def elements(self) -> list["FieldElem"]:
        return [FieldElem(self, c) for c in range(self.q)]

    # -- vectorized helpers on integer code arrays -------------------------

    def vadd(self, a, b):
        if self.e == 1:
            return (np.asarray(a) + b) % self.p
        return self.add_table[a, b]

    def vsub(self, a, b):
        if self.e == 1:
            return (np.asarray(a) - b) % self.p
        return self.add_table[a, self.neg_table[b]]

    def vmul(self, a, b):
        if self.e == 1:
            return (np.asarray(a) * b) % self.p
        return self.mul_table[a, b]

    def power_from_log(self, logs):
        """Map discrete logs (any integers) to element codes."""
        return self.exp_table[np.asarray(logs) % (self.q - 1)]


@lru_cache(maxsize=None)
def GF(q: int) -> FieldSpec:
    """Return the (cached) field with ``q`` elements."""
    p, e = factor_prime_power(q)
    if e == 1:
        modulus = (0, 1)
    else:
        if (p, e) not in CONWAY:
            raise FieldError(f"no built-in reduction polynomial for GF({p}^{e})")
        modulus = CONWAY[(p, e)]
        if not _has_no_factor(modulus, p):
            raise FieldError(f"reduction polynomial for GF({p}^{e}) is reducible")

    digits = [[(c // p**i) % p for i in range(e)] for c in range(q)]

    def encode(vec) -> int:
        return sum(v * p**i for i, v in enumerate(vec))

    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            if e == 1:
                add[a, b] = (a + b) % p
                mul[a, b] = (a * b) % p
            else:
                add[a, b] = encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
                mul[a, b] = encode(_poly_mulmod(digits[a], digits[b], modulus, p))
    neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = int(np.flatnonzero(mul[a] == 1)[0])

    # smallest generator of the multiplicative group
    gen = 0
    for g in range(1, q):
        x, order = g, 1
        while x != 1:
            x = int(mul[x, g])
            order += 1
        if order == q - 1:
            gen = g
            break
    exp = np.zeros(q - 1, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    x = 1
    for i in range(q - 1):
        exp[i] = x
        log[x] = i
        x = int(mul[x, gen])

    for t in (add, mul, neg, inv, exp, log):
        t.setflags(write=False)
    return FieldSpec(p, e, modulus, add, mul, neg, inv, exp, log, gen)


@dataclass(frozen=True)
class FieldElem:
    spec: FieldSpec
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        p = self.spec.p
        return tuple((self.code // p**i) % p for i in range(self.spec.e))

    def _check(self, other: "FieldElem") -> None:
        if not isinstance(other, FieldElem):
            raise TypeError(f"cannot combine FieldElem with {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldError(f"mismatched fields {self.spec!r} and {other.spec!r}")

    def __add__(self, other: "FieldElem") -> "FieldElem":
        return add(self, other)

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.spec, int(self.spec.add_table[self.code, self.spec.neg_table[other.code]]))

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.spec, int(self.spec.neg_table[self.code]))

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        return mul(self, other)

    def __truediv__(self, other: "FieldElem") -> "FieldElem":
        return mul(self, inv(other))

    def __pow__(self, n: int) -> "FieldElem":
        if self.code == 0:
            if n < 0:
                raise ZeroDivisionError("zero has no inverse")
            return self if n else self.spec.one
        lg = int(self.spec.log_table[self.code])
        return FieldElem(self.spec, int(self.spec.exp_table[(lg * n) % (self.spec.q - 1)]))

    def __bool__(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        return self.code

    def __repr__(self) -> str:
        if self.spec.e == 1:
            return str(self.code)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("a" if i == 1 else f"a^{i}")
                terms.append(mono if c == 1 and i else (f"{c}" if i == 0 else f"{c}{mono}"))
        return "+".join(reversed(terms)) or "0"


def add(a: FieldElem, b: FieldElem) -> FieldElem:
    a._check(b)
    return FieldElem(a.spec, int(a.spec.add_table[a.code, b.code]))


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    a._check(b)
    return FieldElem(a.spec, int(a.spec.mul_table[a.code, b.code]))


def inv(a: FieldElem) -> FieldElem:
    if a.code == 0:
        raise ZeroDivisionError("zero has no multiplicative inverse")
    return FieldElem(a.spec, int(a.spec.inv_table[a.code]))


def nonzero_elements(spec: FieldSpec) -> list[FieldElem]:
    """K* in generator order: 1, g, g^2, ..., g^(q-2)."""
    return [FieldElem(spec, int(c)) for c in spec.exp_table]


def poly_mul_reduce(spec: FieldSpec, a: int, b: int) -> int:
    """Shift-and-add multiply on codes; shares nothing with the table builder."""
    p, e = spec.p, spec.e
    if e == 1:
        return (a * b) % p
    mod = spec.reduction_polynomial
    cur = [(a // p**i) % p for i in range(e)]
    acc = [0] * e
    for i in range(e):
        digit = (b // p**i) % p
        acc = [(x + digit * y) % p for x, y in zip(acc, cur)]
        # cur <- cur * x mod reduction polynomial
        top = cur[-1]
        cur = [0] + cur[:-1]
        cur = [(c - top * m) % p for c, m in zip(cur, mod[:e])]
    return sum(c * p**i for i, c in enumerate(acc))
