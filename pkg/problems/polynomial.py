"""Truncated polynomial matrices in the step size h for the harmonic oscillator.

Each leapfrog stage with tau = alpha h has the exact matrix

    [[1 - tau^2/2, tau - tau^3/4],
     [-tau,        1 - tau^2/2 ]]

acting on (q, p), so a composition is a 2x2 matrix of polynomials in h.
"""

import math
from typing import Sequence

import numpy as np

from config.settings import MAX_POLY_DEGREE
from data.models import MethodSpec
from utils.errors import DomainError


class HPolynomialMatrix:
    """A 2x2 matrix of polynomials in h truncated at degree D.

    ``coeffs[k]`` is the 2x2 coefficient matrix of h^k.
    """

    def __init__(self, coeffs: np.ndarray):
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.ndim != 3 or coeffs.shape[1:] != (2, 2):
            raise DomainError(f"expected coefficients of shape (D+1, 2, 2), got {coeffs.shape}")
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    @classmethod
    def identity(cls, degree: int) -> "HPolynomialMatrix":
        coeffs = np.zeros((degree + 1, 2, 2), dtype=complex)
        coeffs[0] = np.eye(2)
        return cls(coeffs)

    @classmethod
    def stage(cls, alpha: complex, degree: int) -> "HPolynomialMatrix":
        """Leapfrog stage matrix for tau = alpha h."""
        coeffs = np.zeros((degree + 1, 2, 2), dtype=complex)
        coeffs[0] = np.eye(2)
        terms = {
            1: np.array([[0.0, alpha], [-alpha, 0.0]]),
            2: np.array([[-alpha ** 2 / 2, 0.0], [0.0, -alpha ** 2 / 2]]),
            3: np.array([[0.0, -alpha ** 3 / 4], [0.0, 0.0]]),
        }
        for k, term in terms.items():
            if k <= degree:
                coeffs[k] = term
        return cls(coeffs)

    def __matmul__(self, other: "HPolynomialMatrix") -> "HPolynomialMatrix":
        degree = min(self.degree, other.degree)
        product = np.zeros((degree + 1, 2, 2), dtype=complex)
        for k in range(degree + 1):
            product[k:] += np.matmul(self.coeffs[k], other.coeffs[: degree + 1 - k])
        return HPolynomialMatrix(product)

    def __sub__(self, other: "HPolynomialMatrix") -> "HPolynomialMatrix":
        degree = min(self.degree, other.degree)
        return HPolynomialMatrix(self.coeffs[: degree + 1] - other.coeffs[: degree + 1])

    def real_part(self) -> "HPolynomialMatrix":
        """Re of the matrix for real h: real parts of every coefficient."""
        return HPolynomialMatrix(self.coeffs.real.astype(complex))

    def negated_argument(self) -> "HPolynomialMatrix":
        """The polynomial matrix P(-h)."""
        signs = (-1.0) ** np.arange(self.degree + 1)
        return HPolynomialMatrix(self.coeffs * signs[:, None, None])

    def determinant(self) -> np.ndarray:
        """Coefficients of det P(h), truncated at the same degree."""
        a, b = self.coeffs[:, 0, 0], self.coeffs[:, 0, 1]
        c, d = self.coeffs[:, 1, 0], self.coeffs[:, 1, 1]
        n = self.degree + 1
        return np.convolve(a, d)[:n] - np.convolve(b, c)[:n]

    def evaluate(self, h: float) -> np.ndarray:
        result = np.zeros((2, 2), dtype=complex)
        for k in range(self.degree, -1, -1):
            result = result * h + self.coeffs[k]
        return result

    def coefficient_norms(self) -> np.ndarray:
        """Max-norm of each coefficient matrix."""
        return np.max(np.abs(self.coeffs), axis=(1, 2))


def _check_degree(degree: int) -> None:
    if not 0 <= degree <= MAX_POLY_DEGREE:
        raise DomainError(f"polynomial degree must be in 0..{MAX_POLY_DEGREE}, got {degree}")


def composition_polynomial(alphas: Sequence[complex], degree: int) -> HPolynomialMatrix:
    _check_degree(degree)
    total = HPolynomialMatrix.identity(degree)
    for alpha in alphas:
        total = HPolynomialMatrix.stage(complex(alpha), degree) @ total
    return total


def ho_step_polynomial(spec: MethodSpec, degree: int, projected: bool = True) -> HPolynomialMatrix:
    """One composition step on the harmonic oscillator as a polynomial in h.

    Args:
        spec: The method; stages are applied in order so stage 1 is the
            rightmost factor.
        degree: Truncation degree D, at most 40.
        projected: Return the real-projected matrix rather than the complex one.
    """
    total = composition_polynomial(spec.set.alphas, degree)
    return total.real_part() if projected else total


def stage_matrix(tau: complex) -> np.ndarray:
    return np.array(
        [[1.0 - tau * tau / 2.0, tau - tau ** 3 / 4.0], [-tau, 1.0 - tau * tau / 2.0]],
        dtype=complex,
    )


def ho_step_matrix(spec: MethodSpec, h: float, projected: bool = True) -> np.ndarray:
    """Exact numeric step matrix at a given h (no truncation)."""
    total = np.eye(2, dtype=complex)
    for alpha in spec.set.alphas:
        total = stage_matrix(alpha * h) @ total
    return total.real if projected else total


def ho_exact_taylor(degree: int) -> HPolynomialMatrix:
    """Taylor polynomial of the exact rotation [[cos h, sin h], [-sin h, cos h]]."""
    _check_degree(degree)
    coeffs = np.zeros((degree + 1, 2, 2), dtype=complex)
    for k in range(degree + 1):
        value = 1.0 / math.factorial(k)
        if k % 2 == 0:
            cos_k = value * (-1) ** (k // 2)
            coeffs[k] = np.array([[cos_k, 0.0], [0.0, cos_k]])
        else:
            sin_k = value * (-1) ** ((k - 1) // 2)
            coeffs[k] = np.array([[0.0, sin_k], [-sin_k, 0.0]])
    return HPolynomialMatrix(coeffs)
