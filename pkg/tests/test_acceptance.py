"""Acceptance criteria 1-11 on the grid 1 <= q < p <= 8.

Each test records a PASS/FAIL line that is printed in the pytest summary.
"""

import decimal
import random
import re
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from parryindex.arith import (QuadraticNumber, beta_of, limit_index, sturmian_index_term,
                              sturmian_supremum)
from parryindex.repetition import (factor_complexity, index_in_prefix, is_factor, maximal_runs,
                                   max_integer_power, naive_maximal_runs, special_factors)
from parryindex.theory import (asymptotic_index, bispecials_via_T, hat_sequence, index_w_n,
                               index_w_n_closed_form, max_integer_power_theorem, t_map,
                               word_index)
from parryindex.words import BinaryWord, ParryParams, fixed_point_prefix

from conftest import ACCEPTANCE, GRID

PREFIX_LEN = 200_000
N_MAX = 100


@contextmanager
def criterion(number, name):
    note = {}
    try:
        yield note
    except BaseException:
        ACCEPTANCE[number] = (name, False, note.get("note"))
        print(f"FAIL criterion {number}: {name}")
        raise
    ACCEPTANCE[number] = (name, True, note.get("note"))
    print(f"PASS criterion {number}: {name}")


@pytest.fixture(scope="module")
def cells():
    """Saturated prefixes with their runs and complexity profiles, timed."""
    start = time.perf_counter()
    data = {}
    for pq in GRID:
        prefix = fixed_point_prefix(ParryParams(*pq), PREFIX_LEN, truncate=True)
        data[pq] = {"prefix": prefix, "runs": maximal_runs(prefix),
                    "profile": factor_complexity(prefix, 500)}
    return data, time.perf_counter() - start


def test_criterion_01_max_integer_power(cells):
    with criterion(1, "maximal integer power p+1 (p <= 2q) or p") as note:
        data, elapsed = cells
        bad = []
        for pq, cell in data.items():
            assert cell["profile"].saturated_up_to >= 500, pq
            k, witness = max_integer_power(cell["prefix"], cell["runs"])
            assert str(witness) * k in str(cell["prefix"])
            if k != max_integer_power_theorem(pq):
                bad.append((pq, k))
        note["note"] = f"{len(data)} cells, {elapsed:.1f}s"
        assert not bad, bad
        assert elapsed < 600


def test_criterion_02_first_indices(cells):
    with criterion(2, "ind(w0) = p, ind(w1) = p + (2q+1)/(p+1), brute force agrees"):
        data, _ = cells
        for (p, q), cell in data.items():
            w1 = "0" * q + "1" + "0" * (p - q)
            expected1 = p + Fraction(2 * q + 1, p + 1)
            assert index_w_n((p, q), 0) == p
            assert index_w_n((p, q), 1) == expected1
            assert index_in_prefix(cell["prefix"], "0").index == p
            assert index_in_prefix(cell["prefix"], w1).index == expected1


def test_criterion_03_closed_form():
    with criterion(3, "counts agree with the closed form for n <= 100"):
        for pq in GRID:
            params = ParryParams(*pq)
            beta, beta_c = beta_of(params)
            p, q = pq
            for n in range(N_MAX + 1):
                a_n = (2 * q + 1 - p) * beta_c ** (n + 1) - (3 * q + 1 - p)
                closed = (p + 1) + Fraction(2 * q + 1 - p, q) * (1 - beta_c) \
                    + (beta - beta_c) / (q * (beta ** (n + 1) - beta_c ** (n + 1))) * a_n
                assert closed.b == 0, (pq, n)
                assert closed.a == index_w_n(pq, n) == index_w_n_closed_form(pq, n)


def _decimal(x, digits=40):
    if isinstance(x, QuadraticNumber):
        return x.to_decimal(digits)
    return decimal.Context(prec=digits).divide(x.numerator, x.denominator)


def test_criterion_04_limit_case():
    with criterion(4, "p <= 3q+1: increasing to the limit, never reaching it"):
        cases = [pq for pq in GRID if pq[0] <= 3 * pq[1] + 1]
        for pq in cases:
            limit = limit_index(ParryParams(*pq))
            terms = [index_w_n(pq, n) for n in range(N_MAX + 1)]
            assert all(a < b for a, b in zip(terms, terms[1:])), pq
            assert all(t < limit for t in terms), pq
            assert abs(_decimal(limit) - _decimal(terms[-1])) < decimal.Decimal("1e-20"), pq
            verdict = word_index(pq)
            assert not verdict.attained and verdict.value == limit


def test_criterion_05_attained_case():
    with criterion(5, "p > 3q+1: index attained at a finite n0") as note:
        beta, _ = beta_of(ParryParams(5, 1))
        verdict = word_index((5, 1))
        assert verdict.attained and verdict.n0 == 2
        assert verdict.value == Fraction(177, 32) > 6 - 2 / (beta - 1)
        assert verdict.stopped_at <= 10
        cases = [pq for pq in GRID if pq[0] > 3 * pq[1] + 1]
        for pq in cases:
            v = word_index(pq)
            terms = [index_w_n(pq, n) for n in range(N_MAX + 1)]
            assert v.attained and v.value == max(terms) == terms[v.n0], pq
            assert v.value > limit_index(ParryParams(*pq)), pq
        note["note"] = f"{len(cases)} cells"


def test_criterion_06_sturmian():
    with criterion(6, "Sturmian formula equals ind(w^(n)), sup = beta + 1"):
        for p in range(2, 9):
            params = ParryParams(p, p - 1)
            for n in range(21):
                assert sturmian_index_term(p, n) == index_w_n(params, n), (p, n)
            beta, _ = beta_of(params)
            assert sturmian_supremum(p) == beta + 1 == limit_index(params)


def test_criterion_07_exceptional():
    with criterion(7, "p=3, q=1: second family below 2 + sqrt 2, index 4 unattained"):
        params = ParryParams(3, 1)
        pair0 = hat_sequence(params, 0)
        assert pair0.index == Fraction(19, 6)
        terms = [hat_sequence(params, n).index for n in range(51)]
        target = 2 + QuadraticNumber.sqrt(2)
        assert asymptotic_index(params, pair0.w_counts, pair0.v_counts) == target
        assert all(a < b for a, b in zip(terms, terms[1:]))
        assert all(t < target < 4 for t in terms)
        assert target - terms[-1] < Fraction(1, 10 ** 20)
        verdict = word_index(params)
        assert verdict.value == 4 and not verdict.attained


def test_criterion_08_complexity(cells):
    with criterion(8, "C(n) = n+1 when p = q+1, C(n+1) - C(n) in {1, 2} otherwise, n <= 500"):
        data, _ = cells
        for (p, q), cell in data.items():
            profile = cell["profile"]
            assert profile.saturated_up_to >= 500
            if p == q + 1:
                assert list(profile.counts) == list(range(1, 502)), (p, q)
            else:
                assert set(profile.differences()) <= {1, 2}, (p, q)
                assert 2 in profile.differences()


def _sample(rng, data, max_len):
    length = rng.randint(0, max_len)
    start = rng.randrange(len(data) - length)
    return BinaryWord._wrap(data[start:start + length])


def test_criterion_09_t_map(cells):
    with criterion(9, "T-map properties on 500 cases per cell, bispecials up to length 100"):
        data, _ = cells
        rng = random.Random(2024)
        failures = []
        for (p, q), cell in data.items():
            prefix = cell["prefix"]
            raw = prefix.data
            # longest w whose a T(w) b still fits in the saturated range
            max_len = (500 - 2 * q - 3) // (p + 1)
            for _ in range(500):
                w = _sample(rng, raw, max_len)
                tw = t_map((p, q), w)
                # T preserves the language
                if not is_factor(prefix, tw):
                    failures.append(("language", (p, q), str(w)))
                # a w b is a factor iff a T(w) b is
                a, b = rng.choice("01"), rng.choice("01")
                if is_factor(prefix, a + w + b) != is_factor(prefix, a + tw + b):
                    failures.append(("extension", (p, q), a + str(w) + b))
                # prefixes and suffixes are preserved both ways
                v = _sample(rng, raw, max_len)
                cut = rng.randint(0, len(v))
                x = v[:cut] if rng.random() < 0.5 else _sample(rng, raw, max(len(v), 1))
                y = v[cut:] if rng.random() < 0.5 else _sample(rng, raw, max(len(v), 1))
                tv = t_map((p, q), v)
                if v.startswith(x) != tv.startswith(t_map((p, q), x)):
                    failures.append(("prefix", (p, q), str(v), str(x)))
                if v.endswith(y) != tv.endswith(t_map((p, q), y)):
                    failures.append(("suffix", (p, q), str(v), str(y)))
            # bispecial factors are exactly 0^k (k < p) and their T-images
            brute = set()
            for n in range(101):
                brute.update(special_factors(prefix, n)[2])
            if set(bispecials_via_T((p, q), 100)) != brute:
                failures.append(("bispecial", (p, q)))
        assert not failures, failures[:5]


def test_criterion_10_zero_blocks(cells):
    with criterion(10, "zero blocks of length p or q only; no 0(x1)^l x0 with l >= 3"):
        data, _ = cells
        for (p, q), cell in data.items():
            raw = cell["prefix"].data
            blocks = {len(m.group(1)) for m in re.finditer(rb"(?<=1)(0*)(?=1)", raw)}
            assert blocks == {p, q}, (p, q, blocks)
            n = len(raw)
            for run in cell["runs"]:
                if run.start == 0 or run.end >= n:
                    continue
                period = run.period
                # an occurrence 0 (x1)^l x 0 fills a whole run with period |x1|
                while 4 * period - 1 <= run.length:
                    if (run.length + 1) % period == 0 and raw[run.start + period - 1] == 49:
                        ell = (run.length + 1) // period - 1
                        pytest.fail(f"0(x1)^{ell}x0 in {(p, q)} at {run.start}")
                    period += run.period
            # direct pattern search for short x on a window
            window = raw[:20_000]
            for m in range(0, 12):
                pattern = rb"(?=0(([01]{%d})1)\1{2,}(?:\2)0)" % m
                assert re.search(pattern, window) is None, (p, q, m)


def test_criterion_11_runs_oracle():
    with criterion(11, "maximal runs agree with the naive checker on 1000 words"):
        rng = random.Random(11)
        sources = [fixed_point_prefix(ParryParams(*pq), 20_000).data for pq in GRID]
        mismatches = []
        for k in range(1000):
            length = rng.randint(0, 512)
            if k % 2:
                word = BinaryWord("".join(rng.choice("01") for _ in range(length)))
            else:
                src = rng.choice(sources)
                start = rng.randrange(len(src) - length)
                word = BinaryWord._wrap(src[start:start + length])
            if maximal_runs(word) != naive_maximal_runs(word):
                mismatches.append(str(word))
        assert not mismatches, mismatches[:3]
