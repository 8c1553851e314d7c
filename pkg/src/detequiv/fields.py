"""Exact scalar arithmetic over the rationals and over prime fields GF(p).

Field objects bundle the operations; the values themselves stay plain Python
objects in a canonical form (Fraction in lowest terms, int in [0, p)), so
equality of values is plain ``==``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

MAX_PRIME = 2**31

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")
_INTEGER_RE = re.compile(r"[+-]?\d+\Z")


def is_prime(p):
    """Deterministic Miller-Rabin; bases 2,3,5,7 are exact below 3.2e9."""
    if p < 2:
        return False
    for small in (2, 3, 5, 7):
        if p % small == 0:
            return p == small
    d = p - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class Rationals:
    """The field of rational numbers; values are Fractions in lowest terms."""

    kind = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value):
        """Admit Fractions and ints; anything else is a type error."""
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return Fraction(value)
        raise TypeError(f"not a rational value: {value!r}")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        return a / b

    def inv(self, a):
        return Fraction(1) / a

    def is_zero(self, a):
        return a == 0

    def parse(self, text):
        """Accept "a" or "a/b" with decimal digits and an optional sign."""
        if not isinstance(text, str) or not _RATIONAL_RE.match(text):
            raise ValueError(f"bad rational literal: {text!r}")
        if "/" in text:
            num, den = text.split("/")
            if int(den) == 0:
                raise ValueError(f"zero denominator: {text!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(text))

    def format(self, value):
        return str(value)

    def to_doc(self):
        return {"kind": "rational"}

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "Rationals()"


class PrimeField:
    """GF(p) for a prime p < 2**31; values are ints reduced into [0, p)."""

    kind = "prime"

    def __init__(self, p):
        if not isinstance(p, int) or isinstance(p, bool):
            raise TypeError(f"prime modulus must be an int, got {p!r}")
        if not 2 <= p < MAX_PRIME:
            raise ValueError(f"modulus out of range [2, 2**31): {p}")
        if not is_prime(p):
            raise ValueError(f"modulus is not prime: {p}")
        self.p = p
        self.zero = 0
        self.one = 1

    def coerce(self, value):
        if isinstance(value, int) and not isinstance(value, bool):
            return value % self.p
        raise TypeError(f"not a GF({self.p}) value: {value!r}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a == 0

    def parse(self, text):
        """Decimal integers, optionally signed, reduced mod p."""
        if not isinstance(text, str) or not _INTEGER_RE.match(text):
            raise ValueError(f"bad GF({self.p}) literal: {text!r}")
        return int(text) % self.p

    def format(self, value):
        return str(value)

    def to_doc(self):
        return {"kind": "prime", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


def field_from_doc(doc):
    """Build a field from its JSON form: {"kind": "rational"} or {"kind": "prime", "p": 7}."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ValueError(f"bad field document: {doc!r}")
    if doc["kind"] == "rational":
        return Rationals()
    if doc["kind"] == "prime":
        if "p" not in doc:
            raise ValueError("prime field document lacks 'p'")
        return PrimeField(doc["p"])
    raise ValueError(f"unknown field kind: {doc['kind']!r}")


def determinant(field, rows):
    """Exact determinant of a square matrix of field values.

    The empty matrix has determinant one.  Over the rationals each row is
    scaled to integers and eliminated fraction-free (Bareiss), so no Fraction
    arithmetic happens in the inner loop; over GF(p) it is ordinary Gaussian
    elimination with the determinant accumulated from the pivots.
    """
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise ValueError("determinant needs a square matrix")
    if n == 0:
        return field.one
    if isinstance(field, PrimeField):
        return _det_prime(rows, field.p)
    return _det_rational(rows)


def _det_rational(rows):
    denom = 1
    scaled = []
    for row in rows:
        common = 1
        for e in row:
            common = common * e.denominator // math.gcd(common, e.denominator)
        scaled.append([e.numerator * (common // e.denominator) for e in row])
        denom *= common
    return Fraction(_det_int_bareiss(scaled), denom)


def _det_int_bareiss(m):
    """Fraction-free elimination; every division below is exact."""
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            head = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - head * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def _det_prime(rows, p):
    m = [list(row) for row in rows]
    n = len(m)
    det = 1
    for k in range(n):
        pivot_row = None
        for i in range(k, n):
            if m[i][k]:
                pivot_row = i
                break
        if pivot_row is None:
            return 0
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            det = -det % p
        pivot = m[k][k]
        det = det * pivot % p
        inv = pow(pivot, p - 2, p)
        for i in range(k + 1, n):
            factor = m[i][k] * inv % p
            if factor:
                row_i = m[i]
                row_k = m[k]
                for j in range(k + 1, n):
                    row_i[j] = (row_i[j] - factor * row_k[j]) % p
                row_i[k] = 0
    return det
