"""Exact scalar arithmetic over the rationals and odd prime fields.

Scalars are plain Python values: :class:`fractions.Fraction` over Q and
``int`` residues in ``[0, p)`` over F_p.  A :class:`FieldSpec` knows how to
coerce, reduce, parse and render them, and how to build numpy arrays of the
right dtype (``object`` for Q, ``int64`` for F_p).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _pykernels
from .errors import (
    DenominatorZero,
    FieldError,
    MalformedScalar,
    NotReducibleInField,
    ZeroToNegativePower,
)

# keeps n * p**2 far below 2**63 in int64 contractions
MAX_PRIME = 1 << 25

_SCALAR_RE = re.compile(r"^(-?[0-9]+)(?:/([0-9]+))?$")


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


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise FieldError("rational field takes no modulus")
        elif self.kind == "prime":
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise FieldError(f"modulus {self.p!r} is not prime")
            if self.p == 2:
                raise FieldError("characteristic 2 is not supported")
            if self.p >= MAX_PRIME:
                raise FieldError(f"modulus must be below {MAX_PRIME}")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls("prime", p)

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def dtype(self):
        return np.int64 if self.is_prime else object

    def __str__(self):
        return f"F_{self.p}" if self.is_prime else "Q"

    # -- elements -----------------------------------------------------

    @property
    def zero(self):
        return 0 if self.is_prime else Fraction(0)

    @property
    def one(self):
        return 1 if self.is_prime else Fraction(1)

    def coerce(self, x):
        """Canonical element from an int, Fraction, numpy integer or scalar text."""
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (np.integer,)):
            x = int(x)
        if self.is_prime:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise NotReducibleInField(f"{x} has denominator divisible by {self.p}")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            if isinstance(x, int):
                return x % self.p
        else:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
        raise MalformedScalar(f"cannot interpret {x!r} as an element of {self}")

    def __call__(self, x):
        return self.coerce(x)

    def add(self, a, b):
        return (a + b) % self.p if self.is_prime else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.is_prime else a - b

    def neg(self, a):
        return (-a) % self.p if self.is_prime else -a

    def mul(self, a, b):
        return (a * b) % self.p if self.is_prime else a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.is_prime:
            return pow(int(a), -1, self.p)
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, x, n: int):
        return scalar_pow(x, n, self)

    def is_zero(self, a) -> bool:
        return a == 0

    # -- text ---------------------------------------------------------

    def parse(self, text: str):
        return scalar_parse(text, self)

    def render(self, x) -> str:
        return scalar_render(x, self)

    # -- arrays -------------------------------------------------------

    def reduce(self, arr):
        """Bring an array of raw integers/fractions to canonical form."""
        if self.is_prime:
            return np.mod(np.asarray(arr, dtype=np.int64), self.p)
        return np.asarray(arr, dtype=object)

    def integral(self, *arrays):
        """Integer arrays sharing one denominator: ``arrays[i] == out[i] / scale``.

        Integer arithmetic is much cheaper than Fraction arithmetic for dense
        table work over Q.  Over F_p the inputs come back unchanged with scale 1.
        """
        if self.is_prime:
            return list(arrays), 1
        dens = {x.denominator for a in arrays for x in a.flat}
        scale = math.lcm(*dens) if dens else 1
        if scale == 1:
            conv = np.frompyfunc(lambda x: x.numerator, 1, 1)
        else:
            conv = np.frompyfunc(lambda x: x.numerator * (scale // x.denominator), 1, 1)
        return [np.asarray(conv(a), dtype=object) for a in arrays], scale

    def array(self, data):
        """Array of canonical elements from nested data (ints, Fractions, strings)."""
        raw = np.asarray(data, dtype=object)
        out = np.empty(raw.shape, dtype=self.dtype)
        for idx, x in np.ndenumerate(raw):
            out[idx] = self.coerce(x)
        return out

    def zeros(self, shape):
        if self.is_prime:
            return np.zeros(shape, dtype=np.int64)
        return np.full(shape, Fraction(0), dtype=object)

    def eye(self, n: int):
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def matmul(self, a, b):
        if self.is_prime:
            return self.reduce(np.matmul(a, b))
        a, b = np.asarray(a), np.asarray(b)
        if a.ndim != 2 or b.ndim != 2:
            # vector operands: promote, multiply, then drop the added axis
            out = self.matmul(a.reshape(1, -1) if a.ndim == 1 else a,
                              b.reshape(-1, 1) if b.ndim == 1 else b)
            if a.ndim == 1:
                out = out[0]
            if b.ndim == 1:
                out = out[..., 0]
            return out
        out = np.empty((a.shape[0], b.shape[1]), dtype=object)
        if out.size:
            out[...] = _pykernels.matmul(a.tolist(), b.tolist(), self.zero)
        return out

    def scale(self, c, arr):
        return self.reduce(np.multiply(arr, c))


QQ = FieldSpec.rational()


def GF(p: int) -> FieldSpec:
    return FieldSpec.prime(p)


def scalar_pow(x, n: int, field: FieldSpec):
    if n < 0:
        if x == 0:
            raise ZeroToNegativePower("0 raised to a negative power")
        x, n = field.inv(x), -n
    if field.is_prime:
        return pow(int(x), n, field.p)
    return Fraction(x) ** n


def scalar_parse(text: str, field: FieldSpec):
    if not isinstance(text, str):
        raise MalformedScalar(f"expected scalar text, got {type(text).__name__}")
    s = text.strip().replace("−", "-")
    m = _SCALAR_RE.match(s)
    if m is None:
        raise MalformedScalar(f"malformed scalar {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise DenominatorZero(f"zero denominator in {text!r}")
    if field.is_prime:
        if den % field.p == 0:
            raise NotReducibleInField(f"{text!r}: denominator divisible by {field.p}")
        return num * pow(den, -1, field.p) % field.p
    return Fraction(num, den)


def scalar_render(x, field: FieldSpec) -> str:
    if field.is_prime:
        return str(int(x) % field.p)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
