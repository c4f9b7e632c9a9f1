"""Binary words, the Parry substitution and its fixed point."""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Union

import numpy as np

DEFAULT_MAX_PREFIX = 2 ** 27

_TO_MARKERS = bytes.maketrans(b"01", b"ab")


class PrefixCapExceeded(RuntimeError):
    pass


class BinaryWord:
    """Immutable finite word over {0, 1}, stored as ASCII bytes.

    Accepts a ``str``/``bytes`` of '0'/'1' characters, another word, or an
    iterable of the integers 0 and 1.
    """

    __slots__ = ("_data",)

    def __init__(self, symbols: Union[str, bytes, "BinaryWord", Iterable[int]] = b""):
        if isinstance(symbols, BinaryWord):
            data = symbols._data
        elif isinstance(symbols, str):
            data = symbols.encode("ascii")
        elif isinstance(symbols, (bytes, bytearray, memoryview)):
            data = bytes(symbols)
        else:
            data = bytes(48 + int(s) for s in symbols)
        if data.translate(None, b"01"):
            raise ValueError("binary words may only contain the symbols 0 and 1")
        object.__setattr__(self, "_data", data)

    @classmethod
    def _wrap(cls, data: bytes) -> "BinaryWord":
        # trusted constructor, skips validation
        w = object.__new__(cls)
        object.__setattr__(w, "_data", data)
        return w

    def __setattr__(self, name, value):
        raise AttributeError("BinaryWord is immutable")

    @property
    def data(self) -> bytes:
        return self._data

    def to_array(self) -> np.ndarray:
        """Symbols as a ``uint8`` array of 0s and 1s."""
        return np.frombuffer(self._data, dtype=np.uint8) - 48

    def __len__(self) -> int:
        return len(self._data)

    def length(self) -> int:
        return len(self._data)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return BinaryWord._wrap(self._data[item])
        return self._data[item] - 48

    def __iter__(self):
        return (b - 48 for b in self._data)

    def __add__(self, other):
        if isinstance(other, BinaryWord):
            return BinaryWord._wrap(self._data + other._data)
        if isinstance(other, (str, bytes)):
            return self + BinaryWord(other)
        return NotImplemented

    def __radd__(self, other):
        if isinstance(other, (str, bytes)):
            return BinaryWord(other) + self
        return NotImplemented

    def __mul__(self, k: int) -> "BinaryWord":
        if not isinstance(k, int):
            return NotImplemented
        return BinaryWord._wrap(self._data * k)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, BinaryWord):
            return self._data == other._data
        if isinstance(other, str):
            return self._data == other.encode("ascii", "replace")
        return NotImplemented

    def __hash__(self):
        return hash(self._data)

    def __lt__(self, other):
        # shortlex, so sorted factor lists come out grouped by length
        if not isinstance(other, BinaryWord):
            return NotImplemented
        return (len(self), self._data) < (len(other), other._data)

    def __contains__(self, other) -> bool:
        return BinaryWord(other)._data in self._data

    def __str__(self) -> str:
        return self._data.decode("ascii")

    def __repr__(self) -> str:
        if len(self._data) > 40:
            return f"BinaryWord('{self._data[:37].decode()}...', len={len(self)})"
        return f"BinaryWord('{self}')"

    def find(self, other, start: int = 0) -> int:
        return self._data.find(BinaryWord(other)._data, start)

    def startswith(self, other) -> bool:
        return self._data.startswith(BinaryWord(other)._data)

    def endswith(self, other) -> bool:
        return self._data.endswith(BinaryWord(other)._data)

    def count(self, symbol: int) -> int:
        return self._data.count(b"1" if symbol else b"0")

    def reversed(self) -> "BinaryWord":
        return BinaryWord._wrap(self._data[::-1])

    def complement(self) -> "BinaryWord":
        return BinaryWord._wrap(self._data.translate(bytes.maketrans(b"01", b"10")))


EMPTY = BinaryWord()


def zeros(k: int) -> BinaryWord:
    return BinaryWord._wrap(b"0" * k)


@dataclass(frozen=True)
class ParryParams:
    """Parameters ``p > q >= 1`` of a quadratic non-simple Parry number."""

    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise TypeError("p and q must be integers")
        if self.q < 1 or self.p <= self.q:
            raise ValueError(f"need p > q >= 1, got p={self.p}, q={self.q}")
        assert self.discriminant > 0

    @property
    def discriminant(self) -> int:
        """D = (p+1)^2 - 4(p-q), never reduced to its square-free part."""
        return (self.p + 1) ** 2 - 4 * (self.p - self.q)

    D = discriminant

    @property
    def parry_polynomial(self) -> tuple[int, int, int]:
        """Coefficients of x^2 - (p+1)x + (p-q), leading first."""
        return (1, -(self.p + 1), self.p - self.q)

    @property
    def renyi_expansion(self) -> str:
        return f"{self.p} {self.q}^ω"

    @property
    def is_sturmian(self) -> bool:
        return self.p == self.q + 1

    @property
    def matrix(self) -> "MorphismMatrix":
        return MorphismMatrix(((self.p, 1), (self.q, 1)))

    def as_tuple(self) -> tuple[int, int]:
        return (self.p, self.q)


class AbelianVector(NamedTuple):
    count0: int
    count1: int

    @property
    def length(self) -> int:
        return self.count0 + self.count1

    def times(self, m: "MorphismMatrix") -> "AbelianVector":
        (a, b), (c, d) = m.rows
        return AbelianVector(self.count0 * a + self.count1 * c,
                             self.count0 * b + self.count1 * d)

    def plus(self, other) -> "AbelianVector":
        return AbelianVector(self.count0 + other[0], self.count1 + other[1])


@dataclass(frozen=True)
class MorphismMatrix:
    """2x2 letter-count matrix; ``rows[a][b]`` counts letter b in the image of a."""

    rows: tuple[tuple[int, int], tuple[int, int]]

    def __matmul__(self, other: "MorphismMatrix") -> "MorphismMatrix":
        (a, b), (c, d) = self.rows
        (e, f), (g, h) = other.rows
        return MorphismMatrix(((a * e + b * g, a * f + b * h),
                               (c * e + d * g, c * f + d * h)))

    def __pow__(self, n: int) -> "MorphismMatrix":
        if n < 0:
            raise ValueError("only nonnegative powers")
        result = MorphismMatrix(((1, 0), (0, 1)))
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def is_positive(self) -> bool:
        return all(x > 0 for row in self.rows for x in row)


@dataclass(frozen=True)
class Morphism:
    """Total map on {0, 1} extended to words by concatenation."""

    image0: BinaryWord
    image1: BinaryWord

    def __call__(self, w) -> BinaryWord:
        return apply_morphism(self, w)

    @property
    def matrix(self) -> MorphismMatrix:
        return MorphismMatrix(((self.image0.count(0), self.image0.count(1)),
                               (self.image1.count(0), self.image1.count(1))))


def make_parry_morphism(params: ParryParams) -> Morphism:
    """The substitution 0 -> 0^p 1, 1 -> 0^q 1."""
    if not isinstance(params, ParryParams):
        params = ParryParams(*params)
    return Morphism(BinaryWord._wrap(b"0" * params.p + b"1"),
                    BinaryWord._wrap(b"0" * params.q + b"1"))


def apply_morphism(m: Morphism, w) -> BinaryWord:
    data = BinaryWord(w).data
    # two-pass replace through marker bytes keeps the whole expansion in C
    out = data.translate(_TO_MARKERS).replace(b"a", m.image0.data).replace(b"b", m.image1.data)
    return BinaryWord._wrap(out)


def abelianize(w) -> AbelianVector:
    data = BinaryWord(w).data
    ones = data.count(b"1")
    return AbelianVector(len(data) - ones, ones)


def max_prefix_cap() -> int:
    env = os.environ.get("PARRY_MAX_PREFIX")
    return int(env) if env else DEFAULT_MAX_PREFIX


def fixed_point_prefix(params: ParryParams, min_len: int, truncate: bool = False,
                       max_len: int | None = None) -> BinaryWord:
    """Prefix of the fixed point of the Parry morphism, of length >= ``min_len``.

    Iterates the morphism on "0" until the image is long enough; with
    ``truncate`` the result is cut to exactly ``min_len`` symbols.
    ``max_len`` defaults to ``PARRY_MAX_PREFIX`` (or 2**27).
    """
    if not isinstance(params, ParryParams):
        params = ParryParams(*params)
    if min_len < 1:
        raise ValueError("min_len must be positive")
    cap = max_prefix_cap() if max_len is None else max_len
    if min_len > cap:
        raise PrefixCapExceeded(f"requested prefix length {min_len} exceeds cap {cap}")
    return _fixed_point_prefix(params.p, params.q, min_len, truncate)


@functools.lru_cache(maxsize=32)
def _fixed_point_prefix(p: int, q: int, min_len: int, truncate: bool) -> BinaryWord:
    m = make_parry_morphism(ParryParams(p, q))
    word = BinaryWord._wrap(b"0")
    while len(word) < min_len:
        word = apply_morphism(m, word)
    return word[:min_len] if truncate else word


def read_word(path) -> BinaryWord:
    with open(path, "rb") as fh:
        data = fh.read()
    if data.endswith(b"\n"):
        data = data[:-1]
    return BinaryWord(data)


def write_word(path, w: BinaryWord) -> None:
    with open(path, "wb") as fh:
        fh.write(w.data)
        fh.write(b"\n")
