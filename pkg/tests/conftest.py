"""Shared helpers for the test suite."""

import numpy as np

from loewner import HermitianMatrix


def herm(entries) -> HermitianMatrix:
    return HermitianMatrix(np.asarray(entries, dtype=np.complex128))


def assert_matrix_close(actual, expected, atol=1e-12):
    a = actual.mat if isinstance(actual, HermitianMatrix) else np.asarray(actual)
    e = expected.mat if isinstance(expected, HermitianMatrix) else np.asarray(expected)
    np.testing.assert_allclose(a, e, rtol=0.0, atol=atol)
