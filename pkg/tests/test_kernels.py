import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parryindex import kernels
from parryindex.repetition import maximal_runs
from parryindex.words import BinaryWord

from conftest import prefix_of

BACKENDS = [pytest.param(kernels.python_backend, id="python"),
            pytest.param(kernels.compiled_backend, id="compiled",
                         marks=pytest.mark.skipif(kernels.compiled_backend is None,
                                                  reason="extension not built"))]
texts = st.text(alphabet="01", min_size=1, max_size=80)


def as_array(s: str) -> np.ndarray:
    return np.frombuffer(s.encode(), dtype=np.uint8) - 48


def is_lyndon(s: str) -> bool:
    return all(s < s[i:] + s[:i] for i in range(1, len(s)))


@pytest.mark.parametrize("backend", BACKENDS)
class TestKernels:
    @settings(max_examples=150)
    @given(texts)
    def test_suffix_array(self, backend, s):
        sa, rank = backend.suffix_array(as_array(s))
        assert list(sa) == sorted(range(len(s)), key=lambda i: s[i:])
        assert all(rank[sa[r]] == r for r in range(len(s)))

    @settings(max_examples=150)
    @given(texts)
    def test_lcp(self, backend, s):
        text = as_array(s)
        sa, rank = backend.suffix_array(text)
        lcp = backend.lcp_array(text, sa, rank)
        assert lcp[0] == 0
        for r in range(1, len(s)):
            a, b = s[sa[r - 1]:], s[sa[r]:]
            k = 0
            while k < min(len(a), len(b)) and a[k] == b[k]:
                k += 1
            assert lcp[r] == k

    @settings(max_examples=150)
    @given(texts)
    def test_lyndon(self, backend, s):
        _, rank = backend.suffix_array(as_array(s))
        lam = backend.lyndon_array(rank)
        for i in range(len(s)):
            longest = max(k for k in range(1, len(s) - i + 1) if is_lyndon(s[i:i + k]))
            assert lam[i] == longest

    def test_empty_and_single(self, backend):
        sa, rank = backend.suffix_array(np.zeros(0, np.uint8))
        assert len(sa) == 0 and len(rank) == 0
        sa, rank = backend.suffix_array(np.zeros(1, np.uint8))
        assert list(sa) == [0]

    def test_unary_text(self, backend):
        text = np.zeros(1000, np.uint8)
        sa, rank = backend.suffix_array(text)
        assert list(sa) == list(range(999, -1, -1))
        assert list(backend.lcp_array(text, sa, rank)[1:]) == list(range(1, 1000))


@pytest.mark.skipif(kernels.compiled_backend is None, reason="extension not built")
@pytest.mark.parametrize("pq", [(2, 1), (5, 3), (8, 1)])
def test_backends_agree_on_long_prefix(pq):
    text = prefix_of(*pq, 50_000).to_array()
    py, cy = kernels.python_backend, kernels.compiled_backend
    sa_py, rank_py = py.suffix_array(text)
    sa_cy, rank_cy = cy.suffix_array(text)
    assert np.array_equal(sa_py, sa_cy) and np.array_equal(rank_py, rank_cy)
    assert np.array_equal(py.lcp_array(text, sa_py, rank_py), cy.lcp_array(text, sa_cy, rank_cy))
    assert np.array_equal(py.lyndon_array(rank_py), cy.lyndon_array(rank_cy))


@pytest.mark.skipif(kernels.compiled_backend is None, reason="extension not built")
def test_runs_identical_across_backends():
    word = prefix_of(3, 2, 30_000)
    assert maximal_runs(word, kernels.python_backend) == maximal_runs(word, kernels.compiled_backend)


def test_selected_backend():
    assert kernels.BACKEND in ("cython", "python")
    assert kernels.suffix_array is kernels.backend.suffix_array
    if kernels.compiled_backend is not None:
        assert kernels.BACKEND == "cython" or kernels.os.environ.get("PARRYINDEX_PURE_PYTHON")


def test_words_feed_kernels():
    text = BinaryWord("0010").to_array()
    sa, _ = kernels.suffix_array(text)
    assert list(sa) == [3, 0, 1, 2]
