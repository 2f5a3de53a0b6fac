"""Dense matrix kernel underneath the strain-measure library.

Everything downstream (strain tensors, geodesic distances, constitutive laws,
brute-force verification) rests on the primitives collected here: the
orthogonal sym/skew/spherical splitting, the weighted inner product it
induces, polar decomposition, and principal matrix functions on the classes
that actually occur in elasticity (symmetric positive definite matrices,
rotations, and general square matrices for the exponential).

All functions are pure and operate on ``numpy.ndarray`` values of shape
``(n, n)``.  Comparisons are made relative to ``n`` times the max-entry
magnitude of the operands, with an absolute floor of 1e-14.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

Mat = np.ndarray

ABS_FLOOR = 1e-14


class NonPositiveDeterminantError(ValueError):
    """The matrix was required to have positive determinant but does not."""


class SingularMatrixError(ValueError):
    """The matrix is too ill-conditioned for a reliable decomposition."""


class NotSPDError(ValueError):
    """The argument must be symmetric positive definite but is not."""


class AngleAtPiError(ValueError):
    """A rotation angle sits at pi, where the principal logarithm branch is ambiguous."""


def as_square(X: "Mat | list", name: str = "matrix") -> Mat:
    """Coerce to a square float array and validate finiteness."""
    A = np.asarray(X, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be square, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} has non-finite entries")
    return A


def _tol(rel: float, *mats: Mat) -> float:
    scale = max((m.shape[0] * float(np.max(np.abs(m))) for m in mats), default=1.0)
    return max(rel * max(scale, 1.0), ABS_FLOOR)


def sym_part(X: Mat) -> Mat:
    return (X + X.T) / 2.0


def skew_part(X: Mat) -> Mat:
    return (X - X.T) / 2.0


def deviatoric(X: Mat) -> Mat:
    """Trace-free part X - (tr X / n) id."""
    n = X.shape[0]
    return X - (np.trace(X) / n) * np.eye(n)


def is_symmetric(X: Mat, tol: float = 1e-10) -> bool:
    X = as_square(X)
    return float(np.max(np.abs(X - X.T))) <= _tol(tol, X)


def is_skew(X: Mat, tol: float = 1e-10) -> bool:
    X = as_square(X)
    return float(np.max(np.abs(X + X.T))) <= _tol(tol, X)


def is_spd(X: Mat, tol: float = 1e-10) -> bool:
    X = as_square(X)
    if not is_symmetric(X, tol):
        return False
    w = np.linalg.eigvalsh(sym_part(X))
    return bool(w[0] > 0.0)


def is_rotation(Q: Mat, tol: float = 1e-10) -> bool:
    Q = as_square(Q)
    n = Q.shape[0]
    ortho = float(np.max(np.abs(Q.T @ Q - np.eye(n)))) <= _tol(tol, Q)
    return ortho and np.linalg.det(Q) > 0.0


def is_invertible_positive_det(F: Mat, tol: float = 1e-10, cond_limit: float = 1e14) -> bool:
    F = as_square(F)
    if np.linalg.det(F) <= 0.0:
        return False
    s = np.linalg.svd(F, compute_uv=False)
    return bool(s[-1] > 0.0 and s[0] / s[-1] <= cond_limit)


@dataclass(frozen=True)
class MetricParams:
    """Weights (mu, mu_c, kappa) of the isotropic inner product on square matrices.

    ``mu`` weights the trace-free symmetric part, ``mu_c`` the skew part and
    ``kappa`` (through kappa/2) the trace component.  All three must be
    strictly positive.  The plain Frobenius inner product is recovered at
    mu = mu_c = 1, kappa = 2/n, available as :meth:`frobenius`.
    """

    mu: float = 1.0
    mu_c: float = 1.0
    kappa: float = 1.0

    def __post_init__(self) -> None:
        if not (self.mu > 0.0 and self.mu_c > 0.0 and self.kappa > 0.0):
            raise ValueError(
                f"metric weights must be strictly positive, got "
                f"mu={self.mu}, mu_c={self.mu_c}, kappa={self.kappa}"
            )

    @classmethod
    def frobenius(cls, n: int) -> "MetricParams":
        """Weights that reduce the weighted norm to the Frobenius norm in dimension n."""
        return cls(mu=1.0, mu_c=1.0, kappa=2.0 / n)


@dataclass(frozen=True)
class OrthogonalSplit:
    """Result of the orthogonal decomposition X = dev_sym + skew + coeff * id."""

    dev_sym: Mat
    skew: Mat
    spherical_coeff: float

    def recompose(self) -> Mat:
        n = self.dev_sym.shape[0]
        return self.dev_sym + self.skew + self.spherical_coeff * np.eye(n)


@dataclass(frozen=True)
class PolarDecomposition:
    """Rotation and stretch factors of F: F = rotation @ right_stretch = left_stretch @ rotation."""

    rotation: Mat
    right_stretch: Mat
    left_stretch: Mat


def split_orthogonal(X: Mat) -> OrthogonalSplit:
    """Split X into trace-free symmetric, skew and spherical components.

    The three pieces are mutually orthogonal in the Frobenius inner product
    and recompose exactly: X = dev_sym + skew + spherical_coeff * id.
    """
    X = as_square(X)
    n = X.shape[0]
    S = sym_part(X)
    coeff = float(np.trace(X)) / n
    return OrthogonalSplit(
        dev_sym=S - coeff * np.eye(n),
        skew=skew_part(X),
        spherical_coeff=coeff,
    )


def weighted_inner(X: Mat, Y: Mat, p: MetricParams) -> float:
    """Isotropic inner product mu<dev sym X, dev sym Y> + mu_c<skew X, skew Y> + (kappa/2) tr X tr Y."""
    X = as_square(X, "X")
    Y = as_square(Y, "Y")
    if X.shape != Y.shape:
        raise ValueError(f"dimension mismatch: {X.shape} vs {Y.shape}")
    sx, sy = split_orthogonal(X), split_orthogonal(Y)
    n = X.shape[0]
    dev_term = float(np.sum(sx.dev_sym * sy.dev_sym))
    skew_term = float(np.sum(sx.skew * sy.skew))
    tr_term = (sx.spherical_coeff * n) * (sy.spherical_coeff * n)
    return p.mu * dev_term + p.mu_c * skew_term + 0.5 * p.kappa * tr_term


def weighted_norm(X: Mat, p: MetricParams) -> float:
    """Norm induced by :func:`weighted_inner`; zero exactly when X is zero."""
    return math.sqrt(max(weighted_inner(X, X, p), 0.0))


def polar_decompose(F: Mat, cond_limit: float = 1e14) -> PolarDecomposition:
    """Polar factors of an orientation-preserving invertible matrix.

    Parameters
    ----------
    F : Mat
        Square matrix with det F > 0.
    cond_limit : float
        Largest admissible ratio of extreme singular values.

    Returns
    -------
    PolarDecomposition
        rotation R, right stretch U = sqrt(F^T F) and left stretch
        V = sqrt(F F^T), satisfying F = R U = V R.

    Raises
    ------
    NonPositiveDeterminantError
        If det F <= 0.
    SingularMatrixError
        If the condition number exceeds ``cond_limit``.

    Notes
    -----
    Computed from the SVD F = A diag(s) B^T as R = A B^T, U = B diag(s) B^T,
    V = A diag(s) A^T.  Should det(A B^T) come out negative (impossible once
    det F > 0 is enforced, but kept for robustness), the sign is folded into
    the column belonging to the smallest singular value.
    """
    F = as_square(F, "F")
    det = float(np.linalg.det(F))
    if det <= 0.0:
        raise NonPositiveDeterminantError(f"det F = {det:g} is not positive")
    A, s, Bt = np.linalg.svd(F)
    if s[-1] <= 0.0 or s[0] / s[-1] > cond_limit:
        raise SingularMatrixError(
            f"condition number {s[0] / max(s[-1], 1e-300):.3e} exceeds {cond_limit:g}"
        )
    if np.linalg.det(A) * np.linalg.det(Bt) < 0.0:
        A = A.copy()
        A[:, -1] *= -1.0
        s = s.copy()
        s[-1] *= -1.0
    B = Bt.T
    R = A @ Bt
    U = B @ (s[:, None] * B.T)
    V = A @ (s[:, None] * A.T)
    return PolarDecomposition(rotation=R, right_stretch=sym_part(U), left_stretch=sym_part(V))


def _assert_spd(P: Mat, name: str) -> tuple[np.ndarray, np.ndarray]:
    P = as_square(P, name)
    if not is_symmetric(P):
        raise NotSPDError(f"{name} is not symmetric")
    w, V = np.linalg.eigh(sym_part(P))
    if w[0] <= 0.0:
        raise NotSPDError(f"{name} has non-positive eigenvalue {w[0]:g}")
    return w, V


def spd_function(P: Mat, f, name: str = "P") -> Mat:
    """Apply a scalar function to an SPD matrix through its eigendecomposition."""
    w, V = _assert_spd(P, name)
    return sym_part(V @ (f(w)[:, None] * V.T))


def sqrt_spd(P: Mat) -> Mat:
    """SPD square root via spectral decomposition."""
    return spd_function(P, np.sqrt, "P")


def principal_log_spd(P: Mat) -> Mat:
    """Principal (symmetric) logarithm of an SPD matrix."""
    return spd_function(P, np.log, "P")


# Pade numerator coefficients for the order-9 diagonal approximant to exp.
# Integers, so the approximant is identical across platforms.
_PADE9_B = (
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
)


def mat_exp(X: Mat) -> Mat:
    """Matrix exponential.

    Symmetric input goes through the eigendecomposition.  General input uses
    scaling and squaring with the fixed order-9 diagonal rational approximant,
    squaring whenever the 1-norm exceeds 1; the fixed order and threshold keep
    the result deterministic across platforms.

    Raises
    ------
    OverflowError
        If any entry of the result leaves the double-precision range.
    """
    X = as_square(X, "X")
    n = X.shape[0]
    if is_symmetric(X, tol=1e-13):
        S = sym_part(X)
        w, V = np.linalg.eigh(S)
        with np.errstate(over="ignore", invalid="ignore"):
            E = V @ (np.exp(w)[:, None] * V.T)
        E = sym_part(E)
        if not np.all(np.isfinite(E)):
            raise OverflowError("matrix exponential overflows double precision")
        return E

    norm1 = float(np.max(np.sum(np.abs(X), axis=0))) if n else 0.0
    squarings = 0
    Xs = X
    if norm1 > 1.0:
        squarings = max(int(math.ceil(math.log2(norm1))), 1)
        Xs = X / (2.0 ** squarings)

    ident = np.eye(n)
    X2 = Xs @ Xs
    X4 = X2 @ X2
    X6 = X4 @ X2
    X8 = X4 @ X4
    b = _PADE9_B
    U = Xs @ (b[9] * X8 + b[7] * X6 + b[5] * X4 + b[3] * X2 + b[1] * ident)
    V = b[8] * X8 + b[6] * X6 + b[4] * X4 + b[2] * X2 + b[0] * ident
    E = np.linalg.solve(V - U, V + U)
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(squarings):
            E = E @ E
    if not np.all(np.isfinite(E)):
        raise OverflowError("matrix exponential overflows double precision")
    return E


def _rotation_log_2d(Q: Mat) -> Mat:
    theta = math.atan2(Q[1, 0], Q[0, 0])
    if abs(abs(theta) - math.pi) <= 1e-10:
        raise AngleAtPiError("planar rotation angle at pi: principal log branch ambiguous")
    return np.array([[0.0, -theta], [theta, 0.0]])


def _rotation_log_3d(Q: Mat) -> Mat:
    cos_theta = (float(np.trace(Q)) - 1.0) / 2.0
    cos_theta = min(1.0, max(-1.0, cos_theta))
    theta = math.acos(cos_theta)
    if abs(theta - math.pi) <= 1e-10:
        raise AngleAtPiError("rotation angle at pi: principal log branch ambiguous")

    K = skew_part(Q)
    if theta < 1e-4:
        # theta/sin(theta) expanded; the theta^6 remainder is below 1e-24 here
        t2 = theta * theta
        return K * (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0)
    if theta > 3.0:
        # Near pi the skew part loses accuracy (scale sin theta), so recover
        # the axis from the symmetric part and only take signs from K.
        M = (sym_part(Q) - cos_theta * np.eye(3)) / (1.0 - cos_theta)
        i = int(np.argmax(np.diag(M)))
        axis = M[:, i] / math.sqrt(max(M[i, i], ABS_FLOOR))
        axis = axis / np.linalg.norm(axis)
        w = np.array([K[2, 1], K[0, 2], K[1, 0]])
        if float(axis @ w) < 0.0:
            axis = -axis
        a = theta * axis
        return np.array([
            [0.0, -a[2], a[1]],
            [a[2], 0.0, -a[0]],
            [-a[1], a[0], 0.0],
        ])
    return K * (theta / math.sin(theta))


def principal_log_rotation(Q: Mat) -> Mat:
    """Principal logarithm of a rotation, a skew matrix W with exp(W) = Q.

    Closed form for n = 2 (angle extraction) and n = 3 (Rodrigues with a
    series branch for tiny angles and a symmetric-part branch near pi);
    spectral for general n.  Every eigenvalue of W has imaginary part inside
    (-pi, pi); angles within 1e-10 of pi are rejected because the principal
    branch is not defined there.
    """
    Q = as_square(Q, "Q")
    if not is_rotation(Q):
        raise ValueError("argument is not a rotation matrix")
    n = Q.shape[0]
    if n == 2:
        return _rotation_log_2d(Q)
    if n == 3:
        return _rotation_log_3d(Q)
    lam, V = np.linalg.eig(Q)
    if np.any(np.abs(lam + 1.0) <= 1e-10):
        raise AngleAtPiError("rotation has eigenvalue -1: principal log branch ambiguous")
    W = V @ np.diag(np.log(lam)) @ np.linalg.inv(V)
    return skew_part(W.real)
