"""Floating-point spectra: a Jacobi eigensolver and closed-form circulant spectra.

The sign counts produced here are a cross-check only. Zero eigenvalues are
always decided by :mod:`inertia_lab.exact_linalg`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import IndexOutOfRange, InvalidSpec, NoConvergence, NonRealSpectrum, NotSymmetric
from .exact_linalg import Inertia

DEFAULT_TOL = 1e-6
MAX_SWEEPS = 100


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    tol: float = DEFAULT_TOL

    def inertia(self) -> Inertia:
        pos = sum(1 for x in self.eigenvalues if x > self.tol)
        neg = sum(1 for x in self.eigenvalues if x < -self.tol)
        return Inertia(pos, neg, len(self.eigenvalues) - pos - neg)

    def to_json(self) -> dict:
        return {"eigenvalues": list(self.eigenvalues), "tol": self.tol}


def _as_array(m) -> np.ndarray:
    if hasattr(m, "rows"):
        m = [[float(x) for x in r] for r in m.rows]
    return np.array(m, dtype=float)


def jacobi_eigenvalues(m, tol: float = DEFAULT_TOL, *, eps: float = 1e-14) -> Spectrum:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius norm drops below
    ``eps * ||M||_F``. ``tol`` is only the zero threshold stored on the
    returned :class:`Spectrum`.
    """
    a = _as_array(m).copy()
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidSpec("matrix must be square")
    if tol <= 0:
        raise InvalidSpec("tol must be positive")
    if not np.array_equal(a, a.T):
        raise NotSymmetric("matrix is not symmetric")
    n = a.shape[0]
    norm = np.linalg.norm(a)
    target = eps * norm
    for _ in range(MAX_SWEEPS):
        off = math.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2))
        if off <= target:
            return Spectrum(tuple(sorted(np.diag(a).tolist())), tol)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:  # theta² would overflow
                    t = 1.0 / (2.0 * theta)
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
    raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")


def circulant_eigenvalue(first_row: Sequence[float], j: int) -> complex:
    n = len(first_row)
    w = np.exp(2j * np.pi * j / n)
    return complex(sum(a * w**k for k, a in enumerate(first_row)))


def circulant_eigenvalues(first_row: Sequence[float], tol: float = DEFAULT_TOL) -> Spectrum:
    """Spectrum of a circulant matrix from its first row, j = 1..n.

    Raises NonRealSpectrum if an imaginary part exceeds 1e-9 times the
    row's l1 norm, which happens only for non-symmetric circulants.
    """
    row = [float(x) for x in first_row]
    bound = 1e-9 * max(sum(abs(x) for x in row), 1.0)
    vals = []
    for j in range(1, len(row) + 1):
        z = circulant_eigenvalue(row, j)
        if abs(z.imag) > bound:
            raise NonRealSpectrum(f"eigenvalue {j} has imaginary part {z.imag:.3e}")
        vals.append(z.real)
    return Spectrum(tuple(sorted(vals)), tol)


def cycle_row(n: int) -> list[int]:
    return [min(i, n - i) ** 2 for i in range(n)]


def cycle_eigenvalue_closed(n: int, j: int) -> float:
    """j-th eigenvalue of the n-cycle's distance-squared matrix in paired-cosine form.

    ``2cos(πj) (Σ_{i=1}^{⌊(n-1)/2⌋} i² cos((n-2i)πj/n) [+ n²/8 if n even])``.
    """
    if n < 3:
        raise InvalidSpec("cycle length must be >= 3")
    if not 1 <= j <= n:
        raise IndexOutOfRange(f"j={j} outside 1..{n}")
    total = sum(i * i * math.cos((n - 2 * i) * math.pi * j / n) for i in range(1, (n - 1) // 2 + 1))
    if n % 2 == 0:
        total += n * n / 8
    return 2 * math.cos(math.pi * j) * total


def cycle_inertia_closed(n: int) -> Inertia:
    if n < 3:
        raise InvalidSpec("cycle length must be >= 3")
    if n % 2 == 0:
        return Inertia(n // 2, n // 2, 0)
    half = (n - 1) // 2
    if n % 4 == 1:
        return Inertia(half + 1, half, 0)
    return Inertia(half, half + 1, 0)


# ---------------------------------------------------------------------------
# saturated cycles: a 2m-cycle with one pendant on every cycle vertex

@dataclass(frozen=True)
class SaturatedBlock:
    m: int
    j: int
    lambda_j: float
    mu_j: float
    rho_j: float


def saturated_rows(m: int) -> tuple[list[int], list[int], list[int]]:
    """First rows of the cycle-cycle, cycle-pendant and pendant-pendant circulant blocks."""
    p = 2 * m
    d = [min(i, p - i) for i in range(p)]
    a = [x * x for x in d]
    b = [(x + 1) ** 2 for x in d]
    c = [0] + [(x + 2) ** 2 for x in d[1:]]
    return a, b, c


def saturated_block_raw(m: int, j: int) -> SaturatedBlock:
    """Block eigenvalues from the trigonometric sums over the first rows."""
    p = 2 * m
    a, b, c = saturated_rows(m)
    cos = [math.cos(2 * math.pi * k * j / p) for k in range(p)]
    lam, mu, rho = (sum(x * y for x, y in zip(row, cos)) for row in (a, b, c))
    return SaturatedBlock(m, j, lam, mu, rho)


def saturated_block(m: int, j: int) -> SaturatedBlock:
    """Closed-form block eigenvalues in terms of ``csc(πj/2m)²``; j=0 uses the raw sums."""
    if m < 2:
        raise InvalidSpec("need m >= 2")
    if not 0 <= j < 2 * m:
        raise IndexOutOfRange(f"j={j} outside 0..{2 * m - 1}")
    if j == 0:
        return saturated_block_raw(m, 0)
    csc2 = 1.0 / math.sin(math.pi * j / (2 * m)) ** 2
    if j % 2 == 0:
        lam = m * csc2
        return SaturatedBlock(m, j, lam, lam, lam - 4)
    return SaturatedBlock(m, j, -m * csc2, (-2 - m) * csc2, -4 + (-4 - m) * csc2)


def saturated_pair(m: int, j: int) -> tuple[float, float]:
    """Both eigenvalues of the 2x2 block ``[[λ, μ], [μ, ρ]]`` for frequency j."""
    blk = saturated_block(m, j)
    mid = (blk.rho_j + blk.lambda_j) / 2
    rad = math.sqrt((blk.rho_j - blk.lambda_j) ** 2 / 4 + blk.mu_j**2)
    return mid - rad, mid + rad


def saturated_root(m: int) -> float:
    """Lower root r = (2m/π) asin(1/√m), snapped to an integer within 1e-9."""
    r = math.asin(1 / math.sqrt(m)) * 2 * m / math.pi
    if abs(r - round(r)) < 1e-9:
        r = float(round(r))
    return r


def saturated_beta(m: int) -> int:
    """Number of odd frequencies on the positive branch that are not negative: 2⌊(⌊r⌋+1)/2⌋."""
    if m < 2:
        raise InvalidSpec("need m >= 2")
    r = saturated_root(m)
    return 2 * ((math.floor(r) + 1) // 2)
