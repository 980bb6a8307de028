"""Truncated-Fock-space matrices: the numeric ground truth.

Ladder, coordinate and momentum operators are the standard dense
truncations.  The phase-space kernel operator (the displaced parity,
scaled by 1/pi) needs more care: exponentiating the *truncated*
displacement generator is machine-exact only while the doubled
displacement stays well inside the basis, and boundary reflection
corrupts the low matrix elements far outside that disc.  The kernel
entries are therefore computed in closed form -- matrix elements of the
full displacement operator, which carry the true Gaussian decay in
(q, p) -- and then truncated.  Inside the documented trust region the
two constructions agree to 1e-12, which the test suite pins against a
scaling-and-squaring matrix exponential.

Quadratures use the midpoint rule on uniform grids; grid sweeps are
vectorized one line at a time so results are reproducible independent
of any parallel scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import eval_genlaguerre

from .opalg import OrderedPolynomial, Ordering

SQRT2 = math.sqrt(2.0)


class TruncationError(ValueError):
    """The requested evaluation is outside the reliable truncation zone."""


@dataclass(frozen=True)
class FockMatrix:
    """Dense operator on the first ``dim`` number states.

    Only the top-left ``reliable_dim`` square is guaranteed free of
    truncation artifacts; comparisons should restrict to it.
    """

    data: np.ndarray
    reliable_dim: int

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        object.__setattr__(self, "data", data)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise ValueError("FockMatrix data must be square")
        if not 1 <= self.reliable_dim <= data.shape[0]:
            raise ValueError("reliable_dim must be in 1..dim")

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def reliable_block(self) -> np.ndarray:
        return self.data[: self.reliable_dim, : self.reliable_dim]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "reliable_dim": self.reliable_dim,
            "entries": [
                [float(c.real), float(c.imag)] for c in self.data.ravel()
            ],
        }

    def to_csv(self, path) -> None:
        """Header `dim,reliable_dim`, then re,im entries row-major."""
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(f"{self.dim},{self.reliable_dim}\n")
            for cell in self.data.ravel():
                handle.write(f"{float(cell.real)!r},{float(cell.imag)!r}\n")


@dataclass(frozen=True)
class PhasePoint:
    """A point (q, p) of phase space; alpha = (q + ip)/sqrt2."""

    q: float
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.q) and math.isfinite(self.p)):
            raise ValueError("phase-space coordinates must be finite")

    @property
    def alpha(self) -> complex:
        return complex(self.q, self.p) / SQRT2


# ---------------------------------------------------------------------------
# Basic operators and states
# ---------------------------------------------------------------------------


def build_ladder(dim: int) -> tuple[FockMatrix, FockMatrix]:
    """Annihilation and creation matrices; exact except the last level."""
    if dim < 2:
        raise ValueError("need at least two levels")
    a = np.diag(np.sqrt(np.arange(1.0, dim)), 1).astype(complex)
    return (
        FockMatrix(a, dim - 1),
        FockMatrix(a.conj().T, dim - 1),
    )


def build_qp(dim: int) -> tuple[FockMatrix, FockMatrix]:
    """Coordinate and momentum matrices Q = (a + a+)/sqrt2, P = (a - a+)/(sqrt2 i)."""
    a, adag = build_ladder(dim)
    q = (a.data + adag.data) / SQRT2
    p = (a.data - adag.data) / (1j * SQRT2)
    return FockMatrix(q, dim - 1), FockMatrix(p, dim - 1)


def coherent_state(beta: complex, dim: int) -> np.ndarray:
    """Normalized coherent-state column, componentwise e^{-|b|^2/2} b^n/sqrt(n!)."""
    if abs(beta) ** 2 > dim / 4.0:
        raise TruncationError(
            f"|beta|^2 = {abs(beta) ** 2:.3f} too large for dim {dim}; "
            f"need |beta|^2 <= dim/4"
        )
    vec = np.empty(dim, dtype=complex)
    vec[0] = math.exp(-abs(beta) ** 2 / 2.0)
    for n in range(1, dim):
        vec[n] = vec[n - 1] * beta / math.sqrt(n)
    return vec


@lru_cache(maxsize=8)
def _displacement_eigensystem(dim: int):
    # a+ - a = i*H with H Hermitian; cache the eigensystem per dimension.
    _, adag = build_ladder(dim)
    herm = -1j * (adag.data - adag.data.conj().T)
    eigvals, eigvecs = np.linalg.eigh(herm)
    return eigvals, eigvecs, eigvecs.conj().T


def displacement(alpha: complex, dim: int) -> np.ndarray:
    """exp(alpha a+ - conj(alpha) a) on the truncated basis.

    Computed spectrally from the Hermitian generator; agrees with a
    scaling-and-squaring matrix exponential to better than 1e-12.
    """
    eigvals, vecs, vecs_h = _displacement_eigensystem(dim)
    mag, phase = abs(alpha), np.angle(alpha) if alpha != 0 else 0.0
    core = (vecs * np.exp(1j * mag * eigvals)) @ vecs_h
    rot = np.exp(1j * phase * np.arange(dim))
    return (rot[:, None] * core) * rot.conj()[None, :]


# ---------------------------------------------------------------------------
# Phase-space kernel operator
# ---------------------------------------------------------------------------


@lru_cache(maxsize=8)
def _sqrt_factorial_ratios(block: int) -> np.ndarray:
    # ratios[j, k] = sqrt(k!/j!) for j >= k (0 elsewhere, unused)
    lg = np.array([math.lgamma(n + 1.0) for n in range(block)])
    out = np.zeros((block, block))
    for j in range(block):
        for k in range(j + 1):
            out[j, k] = math.exp(0.5 * (lg[k] - lg[j]))
    return out


def _kernel_blocks(qs: np.ndarray, ps: np.ndarray, block: int) -> np.ndarray:
    """Top-left block of the kernel operator at each point, shape (n, block, block).

    Entries are (1/pi) (-1)^k <j|D(2 alpha)|k> with the displacement
    matrix element in Laguerre closed form,

        <j|D(b)|k> = sqrt(k!/j!) b^(j-k) e^{-|b|^2/2} L_k^(j-k)(|b|^2),

    for j >= k; the j < k triangle follows from Hermiticity of the
    kernel.  These are the entries of the untruncated operator, so they
    decay like e^{-(q^2+p^2)} and quadratures against polynomial weights
    converge on any fixed block.
    """
    qs = np.asarray(qs, dtype=float)
    ps = np.asarray(ps, dtype=float)
    beta = SQRT2 * (qs + 1j * ps)
    absq = np.abs(beta) ** 2
    damp = np.exp(-0.5 * absq)
    ratios = _sqrt_factorial_ratios(block)
    out = np.empty((len(qs), block, block), dtype=complex)
    for j in range(block):
        for k in range(j + 1):
            val = (
                ratios[j, k]
                * beta ** (j - k)
                * damp
                * eval_genlaguerre(k, j - k, absq)
            )
            sign = -1.0 if k % 2 else 1.0
            out[:, j, k] = sign * val
            if j != k:
                out[:, k, j] = sign * np.conj(val)
    out /= np.pi
    return out


def wigner_operator(pt: PhasePoint, dim: int) -> FockMatrix:
    """Phase-space kernel (displaced parity over pi) at one point.

    The returned entries are those of the untruncated operator; within
    the precondition disc they coincide (to 1e-12) with
    (1/pi) D(alpha) Pi D(alpha)+ built from :func:`displacement`.
    """
    alpha = pt.alpha
    mod2 = abs(alpha) ** 2
    if mod2 > dim / 8.0:
        raise TruncationError(
            f"|alpha|^2 = {mod2:.3f} too large for dim {dim}; "
            f"need |alpha|^2 <= dim/8"
        )
    data = _kernel_blocks(np.array([pt.q]), np.array([pt.p]), dim)[0]
    reliable = max(1, dim - math.ceil(8.0 * mod2))
    return FockMatrix(data, reliable)


def evaluate(poly: OrderedPolynomial, dim: int) -> FockMatrix:
    """Matrix of a PQ- or QP-tagged polynomial on the truncated basis."""
    if poly.ordering is Ordering.WEYL:
        raise ValueError(
            "Weyl-tagged polynomials are symbolic; convert to PQ or QP first"
        )
    q, p = build_qp(dim)
    max_m = max((mon.m for mon in poly.terms), default=0)
    max_r = max((mon.r for mon in poly.terms), default=0)
    q_pows = _matrix_powers(q.data, max_m)
    p_pows = _matrix_powers(p.data, max_r)
    total = np.zeros((dim, dim), dtype=complex)
    for mon, coeff in poly.terms.items():
        if poly.ordering is Ordering.PQ:
            word = p_pows[mon.r] @ q_pows[mon.m]
        else:
            word = q_pows[mon.m] @ p_pows[mon.r]
        total += coeff.to_complex() * word
    reliable = max(1, dim - poly.max_degree())
    return FockMatrix(total, reliable)


def _matrix_powers(mat: np.ndarray, top: int) -> list[np.ndarray]:
    powers = [np.eye(mat.shape[0], dtype=complex)]
    for _ in range(top):
        powers.append(powers[-1] @ mat)
    return powers


# ---------------------------------------------------------------------------
# Wigner functions and marginals
# ---------------------------------------------------------------------------


def wigner_function(
    rho: FockMatrix | np.ndarray,
    points,
    p_axis: np.ndarray | None = None,
) -> np.ndarray:
    """Samples of Tr[rho * kernel(q, p)].

    Call either with a sequence of :class:`PhasePoint` (returns a 1-D
    array in the same order) or with two grid axes (returns the (nq, np)
    grid of samples).  The state must be Hermitian with unit trace
    (checked to 1e-8).  Values are returned complex; they are real to
    working precision for a valid state.
    """
    mat = rho.data if isinstance(rho, FockMatrix) else np.asarray(rho, complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("state must be a square matrix")
    if np.abs(mat - mat.conj().T).max() > 1e-8:
        raise ValueError("state must be Hermitian (tolerance 1e-8)")
    if abs(np.trace(mat) - 1.0) > 1e-8:
        raise ValueError("state must have unit trace (tolerance 1e-8)")
    dim = mat.shape[0]
    grid_shape = None
    if p_axis is None:
        pts = list(points)
        if not all(isinstance(pt, PhasePoint) for pt in pts):
            raise ValueError(
                "without a p axis, points must be PhasePoint instances"
            )
        qs = np.array([pt.q for pt in pts])
        ps = np.array([pt.p for pt in pts])
    else:
        q_axis = np.asarray(points, dtype=float)
        p_axis = np.asarray(p_axis, dtype=float)
        qg, pg = np.meshgrid(q_axis, p_axis, indexing="ij")
        qs, ps = qg.ravel(), pg.ravel()
        grid_shape = (len(q_axis), len(p_axis))

    beta = SQRT2 * (qs + 1j * ps)
    absq = np.abs(beta) ** 2
    damp = np.exp(-0.5 * absq)
    ratios = _sqrt_factorial_ratios(dim)
    total = np.zeros(qs.shape, dtype=complex)
    # Tr[rho Delta] = sum_{j,k} rho[k,j] Delta[j,k]; walk the lower
    # triangle of Delta and use Hermiticity for the mirror term.
    for j in range(dim):
        for k in range(j + 1):
            val = (
                ratios[j, k]
                * beta ** (j - k)
                * damp
                * eval_genlaguerre(k, j - k, absq)
            )
            sign = -1.0 if k % 2 else 1.0
            total += (sign * mat[k, j]) * val
            if j != k:
                total += (sign * mat[j, k]) * np.conj(val)
    total /= np.pi
    return total if grid_shape is None else total.reshape(grid_shape)


def hermite_functions(x: float, count: int) -> np.ndarray:
    """Oscillator eigenfunctions psi_0..psi_{count-1} at x, by the stable
    three-term recurrence on the normalized functions themselves."""
    psi = np.zeros(count)
    psi[0] = math.pi ** -0.25 * math.exp(-x * x / 2.0)
    if count > 1:
        psi[1] = SQRT2 * x * psi[0]
    for n in range(2, count):
        psi[n] = math.sqrt(2.0 / n) * x * psi[n - 1] - math.sqrt(
            (n - 1) / n
        ) * psi[n - 2]
    return psi


def position_projector(value: float, block: int) -> np.ndarray:
    """Matrix elements <m|q><q|n> = psi_m(q) psi_n(q)."""
    psi = hermite_functions(value, block)
    return np.outer(psi, psi).astype(complex)


def momentum_projector(value: float, block: int) -> np.ndarray:
    """Matrix elements <m|p><p|n>; the momentum eigenfunction picks up i^m."""
    psi = hermite_functions(value, block)
    vec = (1j) ** np.arange(block) * psi
    return np.outer(vec, vec.conj())


def marginal_check(
    axis: str,
    value: float,
    dim: int,
    *,
    block: int | None = None,
    half_range: float = 12.0,
    step: float = 0.01,
) -> tuple[FockMatrix, FockMatrix]:
    """Quadrature marginal of the kernel against the analytic projector.

    Integrating out p at fixed q = value must give |q><q|, and
    symmetrically for the p axis.  Returns (numeric, analytic) matrices
    of size ``block`` (defaults to ``dim``).  The quadrature window
    [-L, L] bounds which entries converge: entry (m, n) needs the
    classical turning radius sqrt(2 max(m,n)+1) plus a Gaussian tail
    inside L, which is what the declared reliable_dim records.
    """
    if axis not in ("q", "p"):
        raise ValueError("axis must be 'q' or 'p'")
    if abs(value) > 4.0:
        raise ValueError("marginal value must satisfy |value| <= 4")
    if block is None:
        block = dim
    count = int(round(2.0 * half_range / step))
    grid = -half_range + (np.arange(count) + 0.5) * step
    fixed = np.full(count, float(value))
    if axis == "q":
        blocks = _kernel_blocks(fixed, grid, block)
        analytic = position_projector(value, block)
    else:
        blocks = _kernel_blocks(grid, fixed, block)
        analytic = momentum_projector(value, block)
    numeric = blocks.sum(axis=0) * step
    reliable = int(max(1, min(block, ((half_range - 4.0) ** 2 - 1.0) // 2)))
    return (
        FockMatrix(numeric, reliable),
        FockMatrix(analytic, block),
    )


# ---------------------------------------------------------------------------
# Quantization quadratures
# ---------------------------------------------------------------------------


def monomial_quantization_quadrature(
    max_total_degree: int,
    *,
    block: int = 8,
    half_range: float = 7.0,
    step: float = 0.02,
) -> dict[tuple[int, int], np.ndarray]:
    """All integrals of q^m p^r against the kernel, in one grid sweep.

    Returns the top-left ``block`` square of each operator
    double-integral dq dp q^m p^r Delta(q, p) for m + r up to the given
    total degree, by the midpoint rule on [-L, L]^2.  One sweep serves
    every monomial: the kernel blocks of a grid line are reused for all
    weights, and lines are accumulated in a fixed order.
    """
    monomials = [
        (m, r)
        for m in range(max_total_degree + 1)
        for r in range(max_total_degree + 1 - m)
    ]
    count = int(round(2.0 * half_range / step))
    grid = -half_range + (np.arange(count) + 0.5) * step
    powers = {r: grid**r for r in range(max_total_degree + 1)}
    acc = {mr: np.zeros((block, block), dtype=complex) for mr in monomials}
    for q_value in grid:
        blocks = _kernel_blocks(np.full(count, q_value), grid, block)
        partial = {
            r: np.tensordot(powers[r], blocks, axes=(0, 0))
            for r in range(max_total_degree + 1)
        }
        for m, r in monomials:
            acc[(m, r)] += (q_value**m) * partial[r]
    weight = step * step
    return {mr: mat * weight for mr, mat in acc.items()}


def symbol_quantization(
    symbol_terms: dict[tuple[int, int], complex],
    quadratures: dict[tuple[int, int], np.ndarray],
) -> np.ndarray:
    """Quantize a polynomial symbol sum c[m,r] q^m p^r using precomputed
    monomial quadratures."""
    keys = iter(quadratures.values())
    shape = next(keys).shape
    total = np.zeros(shape, dtype=complex)
    for (m, r), coeff in symbol_terms.items():
        total += coeff * quadratures[(m, r)]
    return total
