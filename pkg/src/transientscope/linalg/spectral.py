#!/usr/bin/env python3
"""
Dense spectral computations for small matrices

Eigenpairs, spectral radius and norm, definiteness of symmetric matrices and
the nonnegative-irreducible test. Everything here targets Jacobians and
Hessians of low-dimensional maps (n <= 64) and relies on LAPACK through
scipy.linalg.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple

import numpy as np
from scipy import linalg as sla

from ..errors import TransientScopeError

logger = logging.getLogger(__name__)

MAX_DIMENSION = 64
REAL_EIGENVALUE_TOL = 1e-9
EIGENPAIR_RESIDUAL_TOL = 1e-8


class ConvergenceFailure(TransientScopeError):
    """The dense eigensolver did not converge or got pathological input"""
    pass


@dataclass(frozen=True, eq=False)
class SpectralSummary:
    """
    Spectrum of a square matrix A

    Attributes:
        matrix: The matrix A
        eigenvalues: All n eigenvalues, sorted by decreasing modulus
        real_eigenpairs: (lambda, w) for each numerically real eigenvalue,
            w a unit vector whose largest-magnitude entry is positive
        spectral_radius: max |lambda|
        spectral_norm: Largest singular value ||A||
        unstable_eigenvalues: Eigenvalues with |lambda| > 1
    """
    matrix: np.ndarray
    eigenvalues: np.ndarray
    real_eigenpairs: Tuple[Tuple[float, np.ndarray], ...]
    spectral_radius: float
    spectral_norm: float
    eigenvectors: np.ndarray

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.eigenvalues)

    def unstable_pairs(self, tol: float = 0.0) -> List[Tuple[float, np.ndarray]]:
        """Real eigenpairs with |lambda| > 1 + tol, largest modulus first"""
        return [(lam, w) for lam, w in self.real_eigenpairs if abs(lam) > 1.0 + tol]

    def unstable_basis(self) -> np.ndarray:
        """
        Orthonormal basis of the unstable eigenspace E^u

        Built from eigenvectors with |lambda| > 1; complex pairs contribute
        their real and imaginary parts. Returns an (n, k) array, k = 0 when
        E^u is trivial.
        """
        columns = []
        for k, lam in enumerate(self.eigenvalues):
            if abs(lam) <= 1.0:
                continue
            vec = self.eigenvectors[:, k]
            columns.append(vec.real)
            if abs(lam.imag) > REAL_EIGENVALUE_TOL * (1.0 + abs(lam)):
                columns.append(vec.imag)
        if not columns:
            return np.zeros((self.dimension, 0))
        return sla.orth(np.column_stack(columns))

    def to_dict(self) -> Dict[str, object]:
        return {
            'eigenvalues': [[float(lam.real), float(lam.imag)] for lam in self.eigenvalues],
            'spectral_radius': self.spectral_radius,
            'spectral_norm': self.spectral_norm,
        }


class DefinitenessKind(Enum):
    PositiveDefinite = "PositiveDefinite"
    NegativeDefinite = "NegativeDefinite"
    Indefinite = "Indefinite"
    Degenerate = "Degenerate"


@dataclass(frozen=True)
class DefinitenessVerdict:
    kind: DefinitenessKind
    min_abs_eigenvalue: float
    eigenvalues: Tuple[float, ...] = ()

    @property
    def is_definite(self) -> bool:
        return self.kind in (DefinitenessKind.PositiveDefinite, DefinitenessKind.NegativeDefinite)


def _square(matrix) -> np.ndarray:
    A = np.array(matrix, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] > MAX_DIMENSION:
        raise ValueError(f"dense spectral path limited to n <= {MAX_DIMENSION}, got {A.shape[0]}")
    if not np.all(np.isfinite(A)):
        raise ConvergenceFailure("matrix has non-finite entries")
    return A


def _normalize(w: np.ndarray) -> np.ndarray:
    w = w / np.linalg.norm(w)
    k = int(np.argmax(np.abs(w)))
    if w[k] < 0:
        w = -w
    return w


def spectral_norm(matrix) -> float:
    """
    Operator 2-norm sqrt(rho(A^T A))

    Raises:
        ConvergenceFailure: LAPACK failed on A^T A
    """
    A = _square(matrix)
    if not np.any(A):
        return 0.0
    try:
        gram = sla.eigvalsh(A.T @ A)
    except (sla.LinAlgError, ValueError) as e:
        raise ConvergenceFailure(f"symmetric eigensolver failed: {e}") from e
    return float(np.sqrt(max(float(gram[-1]), 0.0)))


def eigen(matrix) -> SpectralSummary:
    """
    Full spectral summary of a small dense matrix

    Args:
        matrix: Square matrix with finite entries, n <= 64

    Returns:
        SpectralSummary with eigenvalues sorted by decreasing modulus

    Raises:
        ConvergenceFailure: Non-finite input or LAPACK non-convergence
    """
    A = _square(matrix)
    try:
        values, vectors = sla.eig(A)
    except (sla.LinAlgError, ValueError) as e:
        raise ConvergenceFailure(f"eigensolver failed: {e}") from e
    if not np.all(np.isfinite(values)):
        raise ConvergenceFailure("eigensolver returned non-finite eigenvalues")

    order = np.argsort(-np.abs(values), kind='stable')
    values = values[order]
    vectors = vectors[:, order]
    norm = spectral_norm(A)
    scale = max(norm, np.finfo(float).tiny)

    pairs = []
    for k, lam in enumerate(values):
        if abs(lam.imag) > REAL_EIGENVALUE_TOL * (1.0 + abs(lam)):
            continue
        vec = vectors[:, k]
        w = vec.real if np.linalg.norm(vec.real) >= np.linalg.norm(vec.imag) else vec.imag
        w = _normalize(w)
        lam_real = float(lam.real)
        residual = float(np.linalg.norm(A @ w - lam_real * w))
        if residual > EIGENPAIR_RESIDUAL_TOL * scale and residual > 0.0:
            logger.warning("dropping eigenpair lambda=%.6g: residual %.3g exceeds tolerance",
                           lam_real, residual)
            continue
        pairs.append((lam_real, w))

    radius = float(np.max(np.abs(values))) if values.size else 0.0
    A.setflags(write=False)
    return SpectralSummary(
        matrix=A,
        eigenvalues=values,
        real_eigenpairs=tuple(pairs),
        spectral_radius=radius,
        spectral_norm=norm,
        eigenvectors=vectors,
    )


def spectral_radius(matrix) -> float:
    return eigen(matrix).spectral_radius


def definiteness(matrix, tol: float = 1e-9) -> DefinitenessVerdict:
    """
    Classify a symmetric matrix by the signs of its eigenvalues

    Args:
        matrix: Symmetric matrix (symmetrized before use)
        tol: Eigenvalues with |lambda| <= tol * max|lambda| count as zero

    Returns:
        DefinitenessVerdict; the zero matrix is Degenerate
    """
    H = _square(matrix)
    H = 0.5 * (H + H.T)
    try:
        values = sla.eigvalsh(H)
    except (sla.LinAlgError, ValueError) as e:
        raise ConvergenceFailure(f"symmetric eigensolver failed: {e}") from e
    magnitudes = np.abs(values)
    largest = float(magnitudes.max())
    smallest = float(magnitudes.min())
    spectrum = tuple(float(lam) for lam in values)

    if largest == 0.0 or smallest <= tol * largest:
        kind = DefinitenessKind.Degenerate
    elif np.all(values > 0):
        kind = DefinitenessKind.PositiveDefinite
    elif np.all(values < 0):
        kind = DefinitenessKind.NegativeDefinite
    else:
        kind = DefinitenessKind.Indefinite
    return DefinitenessVerdict(kind=kind, min_abs_eigenvalue=smallest, eigenvalues=spectrum)


def nonneg_irreducible(matrix) -> bool:
    """
    True iff A >= 0 entrywise and (I + A)^(n-1) > 0 entrywise

    The power is taken on the 0/1 sparsity pattern of A > 0, so large
    entries cannot overflow.
    """
    A = np.array(matrix, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if np.any(A < 0) or not np.all(np.isfinite(A)):
        return False
    n = A.shape[0]
    pattern = ((A > 0) | np.eye(n, dtype=bool)).astype(np.int64)
    reach = pattern.copy()
    for _ in range(n - 2):
        reach = ((reach @ pattern) > 0).astype(np.int64)
    return bool(np.all(reach > 0))
