"""Finite field arithmetic for GF(p^m) with integer-encoded elements.

Elements are plain Python ints in [0, q) with q = p^m. The base-p digits of
the integer, least significant first, are the coefficients of the element in
the polynomial basis: digit i is the coefficient of x^i. For prime fields
(m = 1) this is ordinary arithmetic modulo p.

Extension fields reduce modulo a monic irreducible polynomial of degree m,
stored as its little-endian coefficient list. When no modulus is supplied,
the lexicographically smallest monic irreducible is chosen; comparing
coefficient lists low-degree-first is the same as comparing their integer
encodings, so the search just walks candidate encodings upward. The choice
is deterministic: two fields built from the same (p, m) anywhere, on any
machine, produce identical arithmetic.

Scope bounds: q <= 2^31 and m <= 16. Dense numpy operation tables (used by
the vectorized simulation engine) are available for q <= 512; scalar
multiplication uses exp/log tables for q <= 2^16 and falls back to direct
polynomial arithmetic above that.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import numpy as np

_MAX_ORDER = 2**31
_MAX_DEGREE = 16
_TABLE_LIMIT = 512
_LOG_LIMIT = 1 << 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> List[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _digits(value: int, p: int) -> List[int]:
    """Base-p digit list, least significant first; empty for 0."""
    out = []
    while value:
        value, r = divmod(value, p)
        out.append(r)
    return out


def _undigits(coeffs: Sequence[int], p: int) -> int:
    out = 0
    for c in reversed(coeffs):
        out = out * p + c
    return out


def _poly_mod(a: List[int], b: Sequence[int], p: int) -> List[int]:
    """Remainder of a modulo b over GF(p); b must be monic. Mutates a."""
    db = len(b) - 1
    for top in range(len(a) - 1, db - 1, -1):
        c = a[top]
        if c:
            a[top] = 0
            for i in range(db):
                a[top - db + i] = (a[top - db + i] - c * b[i]) % p
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_eval(poly: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = (acc * x + c) % p
    return acc


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Irreducibility over GF(p) by root scan plus trial division.

    A reducible polynomial of degree 2 or 3 must have a linear factor, so the
    root scan settles those. Higher degrees trial-divide by every monic
    polynomial of degree 2..deg/2; the in-scope degrees keep that cheap.
    """
    m = len(poly) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    for x in range(p):
        if _poly_eval(poly, x, p) == 0:
            return False
    if m <= 3:
        return True
    for d in range(2, m // 2 + 1):
        for enc in range(p**d):
            div = _digits(enc, p)
            div += [0] * (d - len(div))
            div.append(1)
            if not _poly_mod(list(poly), div, p):
                return False
    return True


def _smallest_irreducible(p: int, m: int) -> Tuple[int, ...]:
    for enc in range(p**m):
        low = _digits(enc, p)
        low += [0] * (m - len(low))
        cand = low + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise RuntimeError(f"no irreducible polynomial of degree {m} over GF({p})")


class FieldSpec:
    """Immutable description of GF(p^m) together with its arithmetic.

    Value semantics: equality and hashing use (p, m, modulus) only. Lookup
    tables are built lazily and never change observable behaviour, so
    instances are safe to share between threads and to rebuild in worker
    processes.
    """

    __slots__ = ("p", "m", "q", "modulus", "_exp", "_log", "_np_tables")

    def __init__(self, p: int, m: int = 1, modulus: Optional[Sequence[int]] = None):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"p must be a prime integer, got {p!r}")
        if not isinstance(m, int) or not 1 <= m <= _MAX_DEGREE:
            raise ValueError(f"extension degree must be in 1..{_MAX_DEGREE}, got {m!r}")
        q = p**m
        if q > _MAX_ORDER:
            raise ValueError(f"field order {q} exceeds the scope bound 2^31")
        self.p = p
        self.m = m
        self.q = q
        if m == 1:
            self.modulus = None
        elif modulus is None:
            self.modulus = _smallest_irreducible(p, m)
        else:
            mod = tuple(int(c) for c in modulus)
            if len(mod) != m + 1:
                raise ValueError(f"modulus must have degree {m} ({m + 1} coefficients)")
            if any(not 0 <= c < p for c in mod):
                raise ValueError("modulus coefficients must lie in [0, p)")
            if mod[-1] != 1:
                raise ValueError("modulus must be monic")
            if not _is_irreducible(mod, p):
                raise ValueError(f"modulus {list(mod)} is reducible over GF({p})")
            self.modulus = mod
        self._exp = None
        self._log = None
        self._np_tables = None

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __reduce__(self):
        return (FieldSpec, (self.p, self.m, self.modulus))

    def _check(self, a: int) -> None:
        if not 0 <= a < self.q:
            raise ValueError(f"element {a!r} out of range for {self!r}")

    # -- ring operations ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        p = self.p
        if self.m == 1:
            return (a + b) % p
        out, mult = 0, 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        p = self.p
        if self.m == 1:
            return (a - b) % p
        out, mult = 0, 1
        while a or b:
            out += ((a - b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        self._check(a)
        p = self.p
        if self.m == 1:
            return (-a) % p
        out, mult = 0, 1
        while a:
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def mul(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if self.q <= _LOG_LIMIT:
            exp, log = self._logtables()
            return exp[(log[a] + log[b]) % (self.q - 1)]
        return self._poly_mul_mod(a, b)

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ValueError(f"0 has no multiplicative inverse in {self!r}")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        if self.q <= _LOG_LIMIT:
            exp, log = self._logtables()
            return exp[(-log[a]) % (self.q - 1)]
        return self._pow_direct(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        self._check(a)
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise ValueError("0 cannot be raised to a negative power")
        e %= self.q - 1
        if self.m == 1:
            return pow(a, e, self.p)
        if self.q <= _LOG_LIMIT:
            exp, log = self._logtables()
            return exp[(log[a] * e) % (self.q - 1)]
        return self._pow_direct(a, e)

    def elements(self) -> List[int]:
        """All q elements in integer-encoding order, 0 first."""
        return list(range(self.q))

    def nonzero_elements(self) -> List[int]:
        return list(range(1, self.q))

    def element_coeffs(self, a: int) -> List[int]:
        """Polynomial-basis coefficient vector of a (length m, low degree first)."""
        self._check(a)
        out = _digits(a, self.p)
        out += [0] * (self.m - len(out))
        return out

    # -- internals ----------------------------------------------------------

    def _poly_mul_mod(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        A = _digits(a, p)
        B = _digits(b, p)
        prod = [0] * (len(A) + len(B) - 1)
        for i, ai in enumerate(A):
            if ai:
                for j, bj in enumerate(B):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        if len(prod) > m:
            _poly_mod(prod, self.modulus, p)
        return _undigits(prod[: m + 1], p)

    def _pow_direct(self, a: int, e: int) -> int:
        out = 1
        base = a
        while e:
            if e & 1:
                out = self._poly_mul_mod(out, base) if out != 1 else base
            base = self._poly_mul_mod(base, base)
            e >>= 1
        return out

    def _find_generator(self) -> int:
        order = self.q - 1
        checks = [order // f for f in _prime_factors(order)]
        for g in range(2, self.q):
            if all(self._pow_direct(g, c) != 1 for c in checks):
                return g
        raise RuntimeError(f"no multiplicative generator found for {self!r}")

    def _logtables(self):
        if self._exp is None:
            g = self._find_generator()
            exp = [0] * (self.q - 1)
            log = [-1] * self.q
            cur = 1
            for i in range(self.q - 1):
                exp[i] = cur
                log[cur] = i
                cur = self._poly_mul_mod(cur, g)
            if cur != 1:
                raise RuntimeError("generator order check failed")
            self._exp = exp
            self._log = log
        return self._exp, self._log

    def op_tables(self):
        """Dense (add, sub, mul, inv) numpy tables for vectorized arithmetic.

        add/sub/mul are q-by-q uint16 arrays indexed [a, b]; inv is a length-q
        vector with inv[0] = 0 as a placeholder that callers must not consume.
        Only available for q <= 512.
        """
        if self._np_tables is None:
            q, p = self.q, self.p
            if q > _TABLE_LIMIT:
                raise ValueError(f"operation tables are limited to q <= {_TABLE_LIMIT}")
            if self.m == 1:
                idx = np.arange(q, dtype=np.int64)
                add = (idx[:, None] + idx[None, :]) % p
                sub = (idx[:, None] - idx[None, :]) % p
                mul = (idx[:, None] * idx[None, :]) % p
            else:
                A = np.arange(q, dtype=np.int64)[:, None]
                B = np.arange(q, dtype=np.int64)[None, :]
                add = np.zeros((q, q), dtype=np.int64)
                sub = np.zeros((q, q), dtype=np.int64)
                shift = 1
                for _ in range(self.m):
                    da = (A // shift) % p
                    db = (B // shift) % p
                    add += ((da + db) % p) * shift
                    sub += ((da - db) % p) * shift
                    shift *= p
                exp, log = self._logtables()
                e = np.asarray(exp, dtype=np.int64)
                l = np.asarray(log, dtype=np.int64)
                mul = np.zeros((q, q), dtype=np.int64)
                mul[1:, 1:] = e[(l[1:, None] + l[None, 1:]) % (q - 1)]
            inv = np.zeros(q, dtype=np.int64)
            for a in range(1, q):
                inv[a] = self.inv(a)
            self._np_tables = (
                add.astype(np.uint16),
                sub.astype(np.uint16),
                mul.astype(np.uint16),
                inv.astype(np.uint16),
            )
        return self._np_tables


def field_new(p: int, m: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """Construct GF(p^m), validating p, m, and the modulus (if given)."""
    return FieldSpec(p, m, modulus)


def _prime_power(n: int) -> Tuple[int, int]:
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"{n!r} is not a prime power")
    p = 2
    while p * p <= n and n % p:
        p += 1 if p == 2 else 2
    if p * p > n:
        p = n
    m = 0
    rest = n
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise ValueError(f"{n} is not a prime power")
    return p, m


def is_prime_power(n: int) -> bool:
    try:
        _prime_power(n)
    except ValueError:
        return False
    return True


def field_from_order(q: int) -> FieldSpec:
    """GF(q) for a prime power q, with the default modulus when q = p^m, m > 1."""
    p, m = _prime_power(q)
    return FieldSpec(p, m)


def parse_field_spec(text: str) -> FieldSpec:
    """Parse a field description string: "8", "2^3", or "q=8"."""
    s = text.strip()
    if s.startswith("q="):
        s = s[2:].strip()
    try:
        if "^" in s:
            ps, ms = s.split("^", 1)
            return FieldSpec(int(ps), int(ms))
        return field_from_order(int(s))
    except ValueError as exc:
        raise ValueError(f"bad field spec {text!r}: {exc}") from None
