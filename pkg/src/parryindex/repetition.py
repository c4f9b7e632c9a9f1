"""Repetitions in finite words: fractional powers, runs, factor statistics.

Everything here is computed on a finite prefix; statements about the
infinite word are only as good as the prefix is saturated, and index
results carry ``lower_bound_only`` accordingly.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .words import BinaryWord


class SaturationError(ValueError):
    """The prefix is too short for factor statistics at the requested length."""


@dataclass(frozen=True, order=True)
class Run:
    """Maximal repetition ``prefix[start:start+length]`` with smallest period ``period``."""

    start: int
    period: int
    length: int

    @property
    def end(self) -> int:
        return self.start + self.length

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.length, self.period)


@dataclass(frozen=True)
class FactorIndexResult:
    factor: BinaryWord
    index: Fraction
    witness_start: int
    lower_bound_only: bool = True

    @property
    def power_length(self) -> int:
        return self.index.numerator * len(self.factor) // self.index.denominator

    @property
    def unreduced(self) -> tuple[int, int]:
        """The index as |v| over |w|, without cancelling."""
        return self.power_length, len(self.factor)


@dataclass(frozen=True)
class ComplexityProfile:
    counts: tuple[int, ...]
    saturated_up_to: int

    def differences(self) -> list[int]:
        return [b - a for a, b in zip(self.counts, self.counts[1:])]


def fractional_power(w, r) -> BinaryWord:
    w = BinaryWord(w)
    r = Fraction(r)
    if not w:
        raise ValueError("the empty word has no powers")
    if r < 1:
        raise ValueError("exponent must be at least 1")
    whole = r.numerator // r.denominator
    rest = (r - whole) * len(w)
    if rest.denominator != 1:
        raise ValueError(f"exponent {r} is not a multiple of 1/{len(w)}")
    return w * whole + w[: int(rest)]


def _periodic_extent(data: bytes, i: int, m: int) -> int:
    """Length of the longest prefix of ``data[i:i+m]^ω`` starting at i."""
    n = len(data)
    limit = n - i - m  # most symbols that can be compared
    if limit <= 0:
        return min(m, n - i)
    lo, step = 0, 32
    while lo + step <= limit and data[i + lo:i + lo + step] == data[i + m + lo:i + m + lo + step]:
        lo += step
        step *= 2
    step //= 2
    while step:
        if lo + step <= limit and data[i + lo:i + lo + step] == data[i + m + lo:i + m + lo + step]:
            lo += step
        step //= 2
    while lo < limit and data[i + lo] == data[i + m + lo]:
        lo += 1
    return m + lo


def index_in_prefix(prefix, w) -> FactorIndexResult:
    """Largest r with ``w^r`` occurring in ``prefix``, and its leftmost witness."""
    data = BinaryWord(prefix).data
    w = BinaryWord(w)
    pat = w.data
    m = len(pat)
    if m == 0:
        raise ValueError("factor must be nonempty")
    i = data.find(pat)
    if i < 0:
        raise ValueError(f"{w!s} is not a factor of the prefix")
    best, best_at = 0, i
    cover_start, cover_end = -1, -1
    while i >= 0:
        # inside an already measured stretch with the same phase: only shorter
        if not (cover_start <= i and i + m <= cover_end and (i - cover_start) % m == 0):
            ext = _periodic_extent(data, i, m)
            cover_start, cover_end = i, i + ext
            if ext > best:
                best, best_at = ext, i
        i = data.find(pat, i + 1)
    return FactorIndexResult(w, Fraction(best, m), best_at, True)


# ---------------------------------------------------------------- suffix data

class _RangeMin:
    """Sparse table for minima over index ranges of a fixed array."""

    def __init__(self, values: np.ndarray):
        self.levels = [np.asarray(values, dtype=np.int64)]
        width = 1
        while 2 * width <= len(values):
            prev = self.levels[-1]
            self.levels.append(np.minimum(prev[:-width], prev[width:]))
            width *= 2

    def query(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        """min(values[lo..hi]) for inclusive bounds, elementwise."""
        span = hi - lo + 1
        k = np.zeros(len(span), dtype=np.int64)
        nz = span > 0
        k[nz] = np.floor(np.log2(span[nz])).astype(np.int64)
        # guard float rounding at exact powers of two
        too_big = (1 << k) > span
        k[too_big] -= 1
        out = np.empty(len(lo), dtype=np.int64)
        for level in np.unique(k):
            sel = k == level
            table = self.levels[level]
            out[sel] = np.minimum(table[lo[sel]], table[hi[sel] - (1 << level) + 1])
        return out


class SuffixData:
    """Suffix array, inverse, LCP array and range-min over the LCP of one text."""

    def __init__(self, text: np.ndarray, backend=None):
        kb = backend or kernels.backend
        self.text = text
        self.n = len(text)
        self.sa, self.rank = kb.suffix_array(text)
        self.lcp = kb.lcp_array(text, self.sa, self.rank)
        self._rmq = None

    def lce(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        """Longest common extension of suffixes i and j (i != j, both < n)."""
        if self._rmq is None:
            self._rmq = _RangeMin(self.lcp)
        ri, rj = self.rank[i], self.rank[j]
        lo = np.minimum(ri, rj) + 1
        hi = np.maximum(ri, rj)
        return self._rmq.query(lo, hi)

    def factor_counts(self, n_max: int) -> np.ndarray:
        """Number of distinct factors of each length 0..n_max."""
        lengths = self.n - self.sa
        first = self.lcp + 1  # suffix at rank r is new for lengths lcp[r]+1 .. its length
        last = np.minimum(lengths, n_max)
        ok = first <= last
        diff = np.bincount(first[ok], minlength=n_max + 2)[: n_max + 2].astype(np.int64)
        diff -= np.bincount(last[ok] + 1, minlength=n_max + 2)[: n_max + 2]
        counts = np.cumsum(diff)[: n_max + 1]
        counts[0] = 1
        return counts

    def right_special(self, length: int) -> list[bytes]:
        """Factors of the given length followed by both letters in the text."""
        lengths = self.n - self.sa
        r = np.nonzero(self.lcp == length)[0]
        r = r[r > 0]
        # previous suffix must continue past the shared block with a 0
        r = r[lengths[r - 1] > length]
        raw = bytes(self.text + 48)
        return sorted({raw[s:s + length] for s in self.sa[r].tolist()})


class FactorIndex:
    """Cached suffix data of a word and of its reversal."""

    def __init__(self, word: BinaryWord, backend=None):
        self.word = word
        self.backend = backend
        self.text = word.to_array()
        self._fwd = None
        self._rev = None
        self._profile = None

    @property
    def forward(self) -> SuffixData:
        if self._fwd is None:
            self._fwd = SuffixData(self.text, self.backend)
        return self._fwd

    @property
    def backward(self) -> SuffixData:
        if self._rev is None:
            self._rev = SuffixData(np.ascontiguousarray(self.text[::-1]), self.backend)
        return self._rev

    def profile(self, n_needed: int) -> ComplexityProfile:
        """Complexity profile covering at least ``n_needed`` lengths, computed once."""
        if self._profile is None or len(self._profile.counts) <= n_needed:
            n_max = min(len(self.word), max(n_needed, 512))
            self._profile = factor_complexity(self.word, n_max)
        return self._profile


@functools.lru_cache(maxsize=8)
def factor_index(word: BinaryWord) -> FactorIndex:
    return FactorIndex(word)


# ----------------------------------------------------------------------- runs

def maximal_runs(prefix, backend=None) -> list[Run]:
    """All maximal repetitions of exponent >= 2, sorted by (start, period).

    Every run has a Lyndon root with respect to one of the two letter
    orders, and that root is the longest Lyndon word starting at any of its
    positions except the first; each such candidate is extended in both
    directions with constant-time common-extension queries.
    """
    word = BinaryWord(prefix)
    n = len(word)
    if n < 2:
        return []
    kb = backend or kernels.backend
    text = word.to_array()
    fwd = SuffixData(text, kb)
    bwd = SuffixData(np.ascontiguousarray(text[::-1]), kb)
    found = []
    for rank in (fwd.rank, kb.suffix_array(1 - text)[1]):
        lyn = kb.lyndon_array(rank)
        i = np.arange(n, dtype=np.int64)
        j = i + lyn
        keep = j < n
        i, j, per = i[keep], j[keep], lyn[keep]
        if len(i) == 0:
            continue
        right = fwd.lce(i, j)
        left = np.zeros(len(i), dtype=np.int64)
        inner = i > 0
        # backward extension = forward extension in the reversed text
        left[inner] = bwd.lce(n - i[inner], n - j[inner])
        hit = left + right >= per
        found.append(np.stack([i[hit] - left[hit], per[hit], j[hit] + right[hit] - (i[hit] - left[hit])], axis=1))
    if not found:
        return []
    triples = np.concatenate(found)
    # a run is determined by its interval; both orders may report it
    key = triples[:, 0] * (n + 1) + triples[:, 0] + triples[:, 2]
    _, first = np.unique(key, return_index=True)
    triples = triples[first]
    triples = triples[np.lexsort((triples[:, 1], triples[:, 0]))]
    return [Run(s, p, ln) for s, p, ln in triples.tolist()]


def naive_maximal_runs(prefix) -> list[Run]:
    """Reference runs by scanning every period against every start.

    For each period p, maximal stretches where ``x[i] == x[i+p]`` give the
    p-periodic factors; those of length >= 2p whose smallest period is p
    are the runs.  Quadratic; meant as an oracle for short words.
    """
    x = BinaryWord(prefix).to_array()
    n = len(x)
    best = {}
    for p in range(1, n // 2 + 1):
        eq = np.concatenate(([False], x[:-p] == x[p:], [False]))
        edges = np.flatnonzero(np.diff(eq.astype(np.int8)))
        for s, e in zip(edges[::2].tolist(), edges[1::2].tolist()):
            length = e - s + p
            if length >= 2 * p:
                key = (s, s + length)
                if key not in best:  # smaller periods are visited first
                    best[key] = p
    return sorted(Run(s, p, e - s) for (s, e), p in best.items())


def max_integer_power(prefix, runs: list[Run] | None = None) -> tuple[int, BinaryWord]:
    """Largest k with some w^k a factor; ties go to the shortest, then leftmost, w."""
    word = BinaryWord(prefix)
    if len(word) < 2:
        raise ValueError("prefix must have length at least 2")
    if runs is None:
        runs = maximal_runs(word)
    if not runs:
        return 1, word[:1]
    k = max(r.length // r.period for r in runs)
    best = min((r.period, r.start) for r in runs if r.length // r.period == k)
    return k, word[best[1]:best[1] + best[0]]


# --------------------------------------------------------- factor statistics

def factor_complexity(prefix, n_max: int) -> ComplexityProfile:
    """Distinct factor counts for lengths 0..n_max, with a saturation estimate.

    ``saturated_up_to`` is the largest n such that the counts for all
    lengths up to n agree with those of the half-length prefix.
    """
    word = BinaryWord(prefix)
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if n_max > len(word):
        raise ValueError("n_max exceeds the prefix length")
    counts = factor_index(word).forward.factor_counts(n_max)
    half = word[: len(word) // 2]
    sat = 0
    if len(half) >= 1:
        h_counts = SuffixData(half.to_array()).factor_counts(min(n_max, len(half)))
        agree = counts[: len(h_counts)] == h_counts
        sat = int(np.argmin(agree)) - 1 if not agree.all() else len(h_counts) - 1
    return ComplexityProfile(tuple(int(c) for c in counts), max(sat, 0))


def special_factors(prefix, n: int, check_saturation: bool = True):
    """(left special, right special, bispecial) factors of length n, sorted."""
    word = BinaryWord(prefix)
    if n < 0:
        raise ValueError("length must be nonnegative")
    fi = factor_index(word)
    if check_saturation:
        if n + 2 > len(word) or fi.profile(n + 2).saturated_up_to < n + 2:
            raise SaturationError(f"prefix of length {len(word)} not saturated at length {n + 2}")
    right = [BinaryWord._wrap(f) for f in fi.forward.right_special(n)]
    left = [BinaryWord._wrap(f[::-1]) for f in fi.backward.right_special(n)]
    both = sorted(set(left) & set(right))
    return sorted(left), sorted(right), both


def is_factor(prefix, w) -> bool:
    return BinaryWord(w).data in BinaryWord(prefix).data


def is_bispecial(prefix, w) -> bool:
    data = BinaryWord(prefix).data
    x = BinaryWord(w).data
    return all(v in data for v in (b"0" + x, b"1" + x, x + b"0", x + b"1"))


def p2_witnesses(prefix, w, k: int, w_prime) -> tuple[int, int] | None:
    """Letters (a, b) with a w^k w' b a factor, a not ending w, w'b not a prefix of w."""
    w, w_prime = BinaryWord(w), BinaryWord(w_prime)
    if len(w_prime) >= len(w) or not w.startswith(w_prime):
        raise ValueError("w' must be a proper prefix of w")
    a = 1 - w[-1]
    b = 1 - w[len(w_prime)]
    v = BinaryWord([a]) + w * k + w_prime + BinaryWord([b])
    return (a, b) if is_factor(prefix, v) else None


def check_power_bispecial_chain(prefix, w, k: int, w_prime) -> bool:
    """Whether P2 for ``w^k w'`` forces w', ww', ..., w^(k-1)w' to be bispecial.

    True when P2 has no witnesses in the prefix (nothing is required).
    """
    w, w_prime = BinaryWord(w), BinaryWord(w_prime)
    if p2_witnesses(prefix, w, k, w_prime) is None:
        return True
    return all(is_bispecial(prefix, w * j + w_prime) for j in range(k))
