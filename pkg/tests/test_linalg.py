import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from complexon import ConvergenceError, Spectrum, sym_eig


@st.composite
def symmetric(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    a = draw(arrays(float, (n, n), elements=st.floats(-10, 10, allow_subnormal=False)))
    return (a + a.T) / 2


def test_zero_matrix():
    s = sym_eig(np.zeros((3, 3)))
    assert list(s.values) == [0.0, 0.0, 0.0]
    assert s.indices() == [1, 2, 3]
    assert np.array_equal(s.vectors, np.eye(3))


def test_complete_graph_scaled():
    M = (np.ones((3, 3)) - np.eye(3)) / 3
    s = sym_eig(M)
    assert s.eigenvalue(1) == pytest.approx(2 / 3, abs=1e-14)
    assert s.eigenvalue(-1) == pytest.approx(-1 / 3, abs=1e-14)
    assert s.eigenvalue(-2) == pytest.approx(-1 / 3, abs=1e-14)
    assert s.eigenvalue(2) == 0.0
    assert s.n_positive == 1 and s.n_negative == 2
    v = s.eigenvector(1)
    assert np.allclose(v, np.full(3, 1 / np.sqrt(3)))


def test_diagonal():
    s = sym_eig(np.diag([2.0, -1.0]))
    assert list(s) == [(1, 2.0), (-1, -1.0)]
    assert np.array_equal(s.eigenvector(1), [1.0, 0.0])
    assert np.array_equal(s.eigenvector(-1), [0.0, 1.0])


def test_tie_break_by_dominant_position():
    s = sym_eig(np.diag([1.0, 3.0, 1.0]))
    assert list(s.values) == [3.0, 1.0, 1.0]
    assert np.array_equal(s.vectors, np.eye(3)[:, [1, 0, 2]])


def test_sign_convention():
    s = sym_eig(np.array([[0.0, 1.0], [1.0, 0.0]]))
    for k in range(2):
        v = s.vectors[:, k]
        assert v[np.argmax(np.abs(v))] > 0


def test_padding():
    s = sym_eig(np.diag([1.0, -2.0]))
    assert s.eigenvalue(5) == 0.0
    assert s.eigenvalue(-3) == 0.0
    with pytest.raises(IndexError):
        s.eigenvalue(5, pad=False)
    with pytest.raises(IndexError):
        s.eigenvalue(0)
    with pytest.raises(IndexError):
        s.eigenvector(4)


def test_without_vectors():
    s = sym_eig(np.diag([1.0, 2.0]), vectors=False)
    assert s.vectors is None
    with pytest.raises(ValueError):
        s.eigenvector(1)


def test_rejects_non_symmetric():
    with pytest.raises(ValueError, match="symmetric"):
        sym_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        sym_eig(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        sym_eig(np.array([[np.nan]]))


def test_non_convergence():
    M = np.array([[1.0, 2.0, 3.0], [2.0, 0.0, 1.0], [3.0, 1.0, -1.0]])
    with pytest.raises(ConvergenceError):
        sym_eig(M, max_sweeps=0)
    with pytest.raises(ConvergenceError):
        sym_eig(M, max_sweeps=1)
    assert isinstance(ConvergenceError(), np.linalg.LinAlgError)


def test_scaled():
    s = sym_eig(np.diag([2.0, -1.0])).scaled(0.5, vector_factor=2.0)
    assert list(s.values) == [1.0, -0.5]
    assert np.array_equal(s.vectors, 2 * np.eye(2))
    with pytest.raises(ValueError):
        s.scaled(-1)


@settings(max_examples=80, deadline=None)
@given(symmetric())
def test_matches_numpy_oracle(M):
    s = sym_eig(M)
    ref = np.sort(np.linalg.eigvalsh(M))[::-1]
    scale = max(np.linalg.norm(M), 1.0)
    assert np.allclose(s.values, ref, atol=1e-10 * scale)
    V = s.vectors
    assert np.allclose(V.T @ V, np.eye(len(M)), atol=1e-10)
    assert np.allclose(M @ V, V * s.values, atol=1e-9 * scale)
    assert np.all(np.diff(s.values) <= 1e-9 * scale)


def test_larger_random_against_numpy():
    rng = np.random.default_rng(0)
    A = rng.standard_normal((120, 120))
    M = A + A.T
    s = sym_eig(M, vectors=False)
    assert np.allclose(s.values, np.sort(np.linalg.eigvalsh(M))[::-1], atol=1e-9)


def test_spectrum_len_iter():
    s = Spectrum(np.array([1.0, 0.0, -2.0]))
    assert len(s) == 3
    assert dict(s) == {1: 1.0, 2: 0.0, -1: -2.0}
