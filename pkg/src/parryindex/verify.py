"""Grid verification of the maximal-power and index results.

Every check returns a :class:`Check`; a grid passes when all of them do.
Checks on the infinite word run on a fixed prefix (2*10^5 symbols by
default) whose factor statistics are confirmed saturated first.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import beta_of, limit_index, number_dict, sturmian_index_term, sturmian_supremum
from .repetition import (factor_complexity, index_in_prefix, is_factor, maximal_runs,
                         max_integer_power, naive_maximal_runs, special_factors)
from .theory import (bispecials_via_T, hat_sequence, index_w_n, index_w_n_closed_form,
                     max_integer_power_theorem, sequence_pair, t_map, word_index,
                     zero_block_lengths)
from .words import BinaryWord, ParryParams, fixed_point_prefix

DEFAULT_PREFIX = 200_000


@dataclass
class Check:
    name: str
    params: tuple | None
    passed: bool
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "params": list(self.params) if self.params else None,
                "passed": self.passed, "detail": self.detail}


def grid(pmax: int) -> list[ParryParams]:
    return [ParryParams(p, q) for p in range(2, pmax + 1) for q in range(1, p)]


def check_max_power(params, prefix, runs) -> Check:
    k, witness = max_integer_power(prefix, runs)
    expected = max_integer_power_theorem(params)
    return Check("max_integer_power", params.as_tuple(), k == expected,
                 {"found": k, "expected": expected, "witness": str(witness),
                  "prefix_length": len(prefix)})


def check_small_indices(params, prefix, inject_fault=False) -> Check:
    p, q = params.p, params.q
    exact0, exact1 = index_w_n(params, 0), index_w_n(params, 1)
    if inject_fault:
        exact1 += Fraction(1, p + 1)
    expected1 = p + Fraction(2 * q + 1, p + 1)
    w1 = sequence_pair(params, 1).w_word
    brute0 = index_in_prefix(prefix, "0").index
    brute1 = index_in_prefix(prefix, w1).index
    ok = exact0 == p == brute0 and exact1 == expected1 == brute1
    return Check("small_indices", params.as_tuple(), ok,
                 {"ind_w0": number_dict(exact0), "ind_w1": number_dict(exact1),
                  "brute_w0": number_dict(brute0), "brute_w1": number_dict(brute1)})


def check_closed_form(params, n_max=100) -> Check:
    bad = [n for n in range(n_max + 1) if index_w_n(params, n) != index_w_n_closed_form(params, n)]
    return Check("closed_form", params.as_tuple(), not bad, {"n_max": n_max, "mismatches": bad})


def check_word_index(params, n_max=100) -> Check:
    p, q = params.p, params.q
    limit = limit_index(params)
    verdict = word_index(params, check_n=n_max)
    detail = {"limit": number_dict(limit), "attained": verdict.attained,
              "certificate": verdict.certificate}
    if p <= 3 * q + 1:
        terms = [index_w_n(params, n) for n in range(n_max + 1)]
        increasing = all(a < b for a, b in zip(terms, terms[1:]))
        below = all(t < limit for t in terms)
        gap = limit - terms[-1]
        ok = increasing and below and gap < Fraction(1, 10 ** 20) and not verdict.attained \
            and verdict.value == limit
        detail.update(increasing=increasing, below_limit=below,
                      gap_at_n_max=str(gap.to_decimal(30)))
    else:
        ok = (verdict.attained and verdict.value > limit
              and verdict.value == index_w_n(params, verdict.n0))
        detail.update(n0=verdict.n0, value=number_dict(verdict.value),
                      stopped_at=verdict.stopped_at)
        if (p, q) == (5, 1):
            ok = ok and verdict.n0 == 2 and verdict.value == Fraction(177, 32) \
                and verdict.stopped_at <= 10
    return Check("word_index", params.as_tuple(), ok, detail)


def check_sturmian(params, n_max=20) -> Check:
    p = params.p
    rows = [(n, sturmian_index_term(p, n), index_w_n(params, n)) for n in range(n_max + 1)]
    beta, _ = beta_of(params)
    sup = sturmian_supremum(p)
    ok = all(a == b for _, a, b in rows) and sup == beta + 1 == limit_index(params)
    return Check("sturmian_cross_check", params.as_tuple(), ok,
                 {"n_max": n_max, "supremum": number_dict(sup),
                  "mismatches": [n for n, a, b in rows if a != b]})


def check_exceptional(n_max=50) -> Check:
    params = ParryParams(3, 1)
    beta, _ = beta_of(params)
    terms = [hat_sequence(params, n).index for n in range(n_max + 1)]
    verdict = word_index(params)
    ok = (terms[0] == Fraction(19, 6)
          and all(a < b for a, b in zip(terms, terms[1:]))
          and all(t < beta for t in terms) and beta < 4
          and verdict.value == 4 and not verdict.attained)
    return Check("exceptional_3_1", (3, 1), ok,
                 {"hat_index_0": number_dict(terms[0]), "hat_limit": number_dict(beta),
                  "word_index": number_dict(verdict.value)})


def check_complexity(params, prefix, n_max=500) -> Check:
    profile = factor_complexity(prefix, n_max)
    diffs = set(profile.differences())
    if params.is_sturmian:
        shape = all(c == n + 1 for n, c in enumerate(profile.counts))
    else:
        shape = diffs <= {1, 2}
    ok = shape and profile.saturated_up_to >= n_max
    return Check("factor_complexity", params.as_tuple(), ok,
                 {"n_max": n_max, "saturated_up_to": profile.saturated_up_to,
                  "differences": sorted(diffs)})


def _random_factor(rng, data: bytes, max_len: int) -> BinaryWord:
    length = rng.randint(0, max_len)
    start = rng.randrange(0, len(data) - length)
    return BinaryWord._wrap(data[start:start + length])


def check_t_map(params, prefix, samples=500, seed=0) -> Check:
    """T preserves the language, extensions, prefixes and suffixes."""
    rng = random.Random(seed * 1000 + params.p * 10 + params.q)
    data = prefix.data
    # keep a T(w) b inside the saturated range
    max_len = min(40, (500 - 2 * params.q - 3) // (params.p + 1))
    failures = {"language": 0, "extensions": 0, "prefix": 0, "suffix": 0}
    for _ in range(samples):
        w = _random_factor(rng, data, max_len)
        tw = t_map(params, w)
        if not is_factor(prefix, tw):
            failures["language"] += 1
        a, b = str(rng.randint(0, 1)), str(rng.randint(0, 1))
        if is_factor(prefix, a + w + b) != is_factor(prefix, a + tw + b):
            failures["extensions"] += 1
        v = _random_factor(rng, data, max_len)
        if rng.random() < 0.5:
            x = v[: rng.randint(0, len(v))]
            y = v[rng.randint(0, len(v)):]
        else:
            x = _random_factor(rng, data, max(1, len(v)))
            y = x
        tv = t_map(params, v)
        if v.startswith(x) != tv.startswith(t_map(params, x)):
            failures["prefix"] += 1
        if v.endswith(y) != tv.endswith(t_map(params, y)):
            failures["suffix"] += 1
    return Check("t_map_properties", params.as_tuple(), not any(failures.values()),
                 {"samples": samples, "failures": failures})


def brute_bispecials(prefix, max_len: int) -> set:
    found = set()
    for n in range(max_len + 1):
        found.update(special_factors(prefix, n)[2])
    return found


def check_bispecials(params, prefix, max_len=100) -> Check:
    generated = set(bispecials_via_T(params, max_len))
    brute = brute_bispecials(prefix, max_len)
    shape = all(str(v).startswith("0" * params.q + "1") and str(v).endswith("1" + "0" * params.q)
                for v in generated if "1" in str(v))
    return Check("bispecials_via_T", params.as_tuple(), generated == brute and shape,
                 {"max_len": max_len, "count": len(generated),
                  "missing": sorted(map(str, brute - generated))[:5],
                  "extra": sorted(map(str, generated - brute))[:5]})


def zero_block_violations(params, prefix, runs) -> list[dict]:
    """Occurrences of 0(x1)^l x0 with l >= 2 other than x = 0^q, l = 2,
    and, for 3 <= p <= 2q, of 1(x0)^l x1 with l >= p-1 and x nonempty."""
    data = prefix.data
    n = len(data)
    bad = []
    for run in runs:
        if run.start == 0 or run.end >= n:
            continue
        period = run.period
        while 3 * period - 1 <= run.length:
            if (run.length + 1) % period == 0:
                ell = (run.length + 1) // period - 1
                x = data[run.start:run.start + period - 1]
                closing = data[run.start + period - 1:run.start + period]
                if closing == b"1" and not (ell == 2 and x == b"0" * params.q):
                    bad.append({"pattern": "0(x1)^l x0", "l": ell, "x": x.decode()})
                if (closing == b"0" and 3 <= params.p <= 2 * params.q
                        and ell >= params.p - 1 and x):
                    bad.append({"pattern": "1(x0)^l x1", "l": ell, "x": x.decode()})
            period += run.period
    return bad


def check_zero_blocks(params, prefix, runs) -> Check:
    lengths = zero_block_lengths(prefix)
    bad = zero_block_violations(params, prefix, runs)
    ok = lengths == {params.p, params.q} and not bad
    return Check("zero_blocks", params.as_tuple(), ok,
                 {"block_lengths": sorted(lengths), "violations": bad[:5]})


def check_runs_oracle(samples=1000, max_len=512, seed=0, pmax=8) -> Check:
    rng = random.Random(seed)
    sources = [fixed_point_prefix(pq, 20_000).data for pq in grid(pmax)]
    mismatches = 0
    for k in range(samples):
        length = rng.randint(0, max_len)
        if k % 2:
            word = BinaryWord(bytes(rng.choice(b"01") for _ in range(length)))
        else:
            src = rng.choice(sources)
            start = rng.randrange(0, len(src) - length)
            word = BinaryWord._wrap(src[start:start + length])
        if maximal_runs(word) != naive_maximal_runs(word):
            mismatches += 1
    return Check("runs_oracle", None, mismatches == 0,
                 {"samples": samples, "mismatches": mismatches})


def verify_cell(params, prefix_len=DEFAULT_PREFIX, samples=500, inject_fault=False) -> list[Check]:
    prefix = fixed_point_prefix(params, prefix_len, truncate=True)
    runs = maximal_runs(prefix)
    checks = [
        check_max_power(params, prefix, runs),
        check_small_indices(params, prefix, inject_fault),
        check_closed_form(params),
        check_word_index(params),
        check_complexity(params, prefix),
        check_t_map(params, prefix, samples),
        check_bispecials(params, prefix),
        check_zero_blocks(params, prefix, runs),
    ]
    if params.is_sturmian:
        checks.append(check_sturmian(params))
    if (params.p, params.q) == (3, 1):
        checks.append(check_exceptional())
    return checks


def _cell_job(args):
    pq, prefix_len, samples, fault = args
    return verify_cell(ParryParams(*pq), prefix_len, samples, fault)


def verify_grid(pmax: int, prefix_len=DEFAULT_PREFIX, samples=500, oracle_samples=1000,
                jobs=1, inject_fault=False) -> list[Check]:
    if pmax < 2:
        raise ValueError("grid needs PMAX >= 2")
    cells = grid(pmax)
    jobs_args = [(c.as_tuple(), prefix_len, samples, inject_fault and i == 0)
                 for i, c in enumerate(cells)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            per_cell = list(pool.map(_cell_job, jobs_args))
    else:
        per_cell = [_cell_job(a) for a in jobs_args]
    checks = [c for cell in per_cell for c in cell]
    checks.append(check_runs_oracle(oracle_samples, pmax=pmax))
    return checks
