"""Exact index computations for the fixed point of 0 -> 0^p 1, 1 -> 0^q 1.

The families w^(n) (candidate factors of maximal index) and v^(n) (their
maximal powers) are handled through letter counts, so every index here is
an exact rational no matter how long the words get.  Words are only built
when they fit under a length cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .arith import QuadraticNumber, beta_of, limit_index
from .words import (AbelianVector, BinaryWord, ParryParams, abelianize, apply_morphism,
                    fixed_point_prefix, make_parry_morphism, zeros)

DEFAULT_MATERIALIZE_CAP = 10 ** 7


class StrippingError(AssertionError):
    """0^q 1 was expected as a suffix but is missing."""


class NotAFactorError(ValueError):
    pass


@dataclass(frozen=True)
class SequencePair:
    n: int
    w_counts: AbelianVector
    v_counts: AbelianVector
    w_word: Optional[BinaryWord] = None
    v_word: Optional[BinaryWord] = None

    @property
    def index(self) -> Fraction:
        return Fraction(self.v_counts.length, self.w_counts.length)


@dataclass(frozen=True)
class IndexVerdict:
    """Index of the infinite word.

    ``attained`` means the supremum is ind(w^(n0)) for the recorded n0;
    otherwise ``value`` is the limit of ind(w^(n)), approached from below.
    """

    value: Union[QuadraticNumber, Fraction]
    attained: bool
    n0: Optional[int]
    certificate: str
    stopped_at: Optional[int] = None


def _params(params) -> ParryParams:
    return params if isinstance(params, ParryParams) else ParryParams(*params)


def t_map(params, w) -> BinaryWord:
    """T(w) = 0^q 1 phi(w) 0^q."""
    params = _params(params)
    head = zeros(params.q) + "1"
    return head + apply_morphism(make_parry_morphism(params), w) + zeros(params.q)


def _conjugated_image(params: ParryParams, w: BinaryWord) -> BinaryWord:
    # 0^q 1 phi(w) (0^q 1)^{-1}
    marker = zeros(params.q) + "1"
    full = marker + apply_morphism(make_parry_morphism(params), w)
    if not full.endswith(marker):
        raise StrippingError(f"{marker} is not a suffix of 0^q 1 phi(w)")
    return full[: len(full) - len(marker)]


def abelian_w(params, n: int) -> AbelianVector:
    """Letter counts of w^(n): (1, 0) M^n."""
    params = _params(params)
    if n < 0:
        raise ValueError("n must be nonnegative")
    vec = AbelianVector(1, 0)
    m = params.matrix
    for _ in range(n):
        vec = vec.times(m)
    return vec


def abelian_v(params, n: int) -> AbelianVector:
    """Letter counts of v^(n): (p+1, c) M^n - (1, c) with c = (2q+1-p)/q."""
    params = _params(params)
    if n < 0:
        raise ValueError("n must be nonnegative")
    p, q = params.p, params.q
    c = Fraction(2 * q + 1 - p, q)
    (m00, m01), (m10, m11) = (params.matrix ** n).rows
    x0 = (p + 1) * m00 + c * m10 - 1
    x1 = (p + 1) * m01 + c * m11 - c
    if x0.denominator != 1 or x1.denominator != 1:
        raise ArithmeticError(f"non-integral letter counts for v^({n}): {x0}, {x1}")
    return AbelianVector(int(x0), int(x1))


def _walk(params: ParryParams, n: int, w0: BinaryWord, v0: BinaryWord, cap: int,
          want_w: bool, want_v: bool) -> SequencePair:
    m = params.matrix
    w_counts, v_counts = abelianize(w0), abelianize(v0)
    w_word = w0 if want_w else None
    v_word = v0 if want_v else None
    for _ in range(n):
        w_counts = w_counts.times(m)
        v_counts = v_counts.times(m).plus((2 * params.q, 1))
        # build the next word only if it will fit under the cap
        if w_word is not None:
            w_word = _conjugated_image(params, w_word) if w_counts.length <= cap else None
        if v_word is not None:
            v_word = t_map(params, v_word) if v_counts.length <= cap else None
    return SequencePair(n, w_counts, v_counts, w_word, v_word)


def sequence_pair(params, n: int, cap: int = DEFAULT_MATERIALIZE_CAP) -> SequencePair:
    """w^(n) and v^(n) with counts, words kept when no longer than ``cap``."""
    params = _params(params)
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _walk(params, n, BinaryWord("0"), zeros(params.p), cap, True, True)


def w_sequence(params, n: int, cap: int = DEFAULT_MATERIALIZE_CAP) -> SequencePair:
    params = _params(params)
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _walk(params, n, BinaryWord("0"), zeros(params.p), cap, True, False)


def v_sequence(params, n: int, cap: int = DEFAULT_MATERIALIZE_CAP) -> SequencePair:
    params = _params(params)
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _walk(params, n, BinaryWord("0"), zeros(params.p), cap, False, True)


def hat_sequence(params, n: int, cap: int = DEFAULT_MATERIALIZE_CAP) -> SequencePair:
    """Second candidate family, needed only for p = 3, q = 1.

    Starts from 01 phi(01) (01)^{-1} = 010001 with maximal power T(01010).
    """
    params = _params(params)
    if (params.p, params.q) != (3, 1):
        raise ValueError("the hat family is only defined for p = 3, q = 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    w0 = _conjugated_image(params, BinaryWord("01"))
    v0 = t_map(params, "01010")
    return _walk(params, n, w0, v0, cap, True, True)


def index_w_n(params, n: int) -> Fraction:
    """ind(w^(n)) = |v^(n)| / |w^(n)| from letter counts."""
    return Fraction(abelian_v(params, n).length, abelian_w(params, n).length)


def a_term(params, n: int) -> QuadraticNumber:
    """A(n) = (2q+1-p) beta'^(n+1) - (3q+1-p), the sign-deciding factor."""
    params = _params(params)
    p, q = params.p, params.q
    _, beta_c = beta_of(params)
    return (2 * q + 1 - p) * beta_c ** (n + 1) - (3 * q + 1 - p)


def index_w_n_closed_form(params, n: int) -> Fraction:
    """ind(w^(n)) through beta and beta'; the sqrt(D) part must cancel."""
    params = _params(params)
    if n < 0:
        raise ValueError("n must be nonnegative")
    p, q = params.p, params.q
    beta, beta_c = beta_of(params)
    gap = beta - beta_c
    value = (p + 1) + Fraction(2 * q + 1 - p, q) * (1 - beta_c) \
        + gap / (q * (beta ** (n + 1) - beta_c ** (n + 1))) * a_term(params, n)
    if not value.is_rational():
        raise ArithmeticError(f"irrational part {value.b} survived in ind(w^({n}))")
    return value.a


def asymptotic_index(params, w0: AbelianVector, v0: AbelianVector) -> QuadraticNumber:
    """lim |v^(n)| / |w^(n)| for w^(n+1) ~ w^(n) M and v^(n+1) = v^(n) M + (2q, 1).

    Only the components along the left beta-eigenvector (beta - 1, 1) survive.
    """
    params = _params(params)
    p, q = params.p, params.q
    beta, beta_c = beta_of(params)
    shift = (1, Fraction(2 * q + 1 - p, q))  # fixed point of x -> x M + (2q, 1), negated

    def dominant(r0, r1):
        return (r0 - r1 * (beta_c - 1)) / (beta - beta_c)

    return dominant(v0[0] + shift[0], v0[1] + shift[1]) / dominant(w0[0], w0[1])


def correction_bound(params, n: int) -> QuadraticNumber:
    """Upper bound for ind(w^(m)) - limit valid for every m >= n when p > 3q+1."""
    params = _params(params)
    p, q = params.p, params.q
    beta, beta_c = beta_of(params)
    return (beta - beta_c) * (p - 3 * q - 1) / (q * (beta ** (n + 1) - 1))


def word_index(params, check_n: int = 100, max_search: int = 10_000) -> IndexVerdict:
    """Index of the infinite word as an exact verdict.

    For p <= 3q+1 the terms ind(w^(n)) increase to the limit and the
    supremum is not attained.  Otherwise terms are scanned until the
    remaining tail is certified to stay below the best term seen.
    """
    params = _params(params)
    p, q = params.p, params.q
    limit = limit_index(params)
    if p <= 3 * q + 1:
        for n in range(check_n + 1):
            if not index_w_n(params, n) < limit:
                raise ArithmeticError(f"ind(w^({n})) reached the limit")
        return IndexVerdict(limit, False, None,
                            f"A(n) < 0 for all n since p <= 3q+1; "
                            f"ind(w^(n)) < limit checked for n <= {check_n}")
    best, best_n = index_w_n(params, 0), 0
    for n in range(1, max_search):
        if limit + correction_bound(params, n) < best:
            return IndexVerdict(best, True, best_n,
                                f"for all m >= {n}: ind(w^(m)) < limit + "
                                f"(beta-beta')(p-3q-1)/(q(beta^({n}+1)-1)) < ind(w^({best_n}))",
                                stopped_at=n)
        term = index_w_n(params, n)
        if term > best:
            best, best_n = term, n
    raise RuntimeError("stopping bound not reached")


def max_integer_power_theorem(params) -> int:
    params = _params(params)
    return params.p + 1 if params.p <= 2 * params.q else params.p


def desubstitute(params, v) -> tuple[int, BinaryWord, int]:
    """The unique (k1, w, k2) with v = 0^k1 1 phi(w) 0^k2 and k1, k2 <= p."""
    params = _params(params)
    v = BinaryWord(v)
    data = v.data
    first, last = data.find(b"1"), data.rfind(b"1")
    if first < 0:
        raise ValueError("word contains no 1")
    k1, k2 = first, len(data) - 1 - last
    if k1 > params.p or k2 > params.p:
        raise NotAFactorError(f"zero block longer than p in {v}")
    letters = []
    for block in data[first + 1:last + 1].split(b"1")[:-1]:
        if len(block) == params.p:
            letters.append(0)
        elif len(block) == params.q:
            letters.append(1)
        else:
            raise NotAFactorError(f"block 0^{len(block)}1 is not an image of a letter")
    return k1, BinaryWord(letters), k2


def bispecials_via_T(params, max_len: int) -> list[BinaryWord]:
    """All bispecial factors of length <= max_len.

    The ones without a 1 are 0^k for k < p; every other one is T of a
    shorter bispecial factor.
    """
    params = _params(params)
    if max_len < 1:
        raise ValueError("max_len must be positive")
    frontier = [zeros(k) for k in range(min(params.p, max_len + 1))]
    found = list(frontier)
    while frontier:
        frontier = [t for t in (t_map(params, w) for w in frontier) if len(t) <= max_len]
        found.extend(frontier)
    return sorted(set(found))


def beta_integer_positions(params, count: int) -> list[QuadraticNumber]:
    """The first ``count`` nonnegative beta-integers, read off the gap word."""
    params = _params(params)
    if count < 1:
        raise ValueError("count must be positive")
    beta, _ = beta_of(params)
    gaps = (QuadraticNumber(1, 0, params.discriminant), beta - params.p)
    x = QuadraticNumber(0, 0, params.discriminant)
    out = [x]
    if count > 1:
        u = fixed_point_prefix(params, count - 1)
        for letter in u[: count - 1]:
            x = x + gaps[letter]
            out.append(x)
    return out


def zero_block_lengths(prefix) -> set[int]:
    """Lengths k of the factors 1 0^k 1."""
    data = BinaryWord(prefix).data
    inner = data.strip(b"0").split(b"1")[1:-1]
    return {len(b) for b in inner}
