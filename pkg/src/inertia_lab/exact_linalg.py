"""Exact rational linear algebra: inertia, congruences, inverses, null spaces.

Everything here works over :class:`fractions.Fraction`; no floating point is
used to decide a sign or a rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import (
    BadOrdering, InvalidSpec, NotSymmetric, OddLength, SingularLeadingBlock, SingularS,
)
from .graph_core import IntSymMatrix


class Inertia(NamedTuple):
    i_plus: int
    i_minus: int
    i_zero: int

    def to_json(self) -> dict:
        return self._asdict()

    def __add__(self, other):  # componentwise, not tuple concatenation
        return Inertia(*(a + b for a, b in zip(self, other)))


Number = Union[int, Fraction]


@dataclass(frozen=True)
class RatMatrix:
    """Square matrix of exact rationals, stored as a tuple of row tuples."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise InvalidSpec("matrix must be square")
        object.__setattr__(
            self, "rows", tuple(tuple(Fraction(x) for x in r) for r in self.rows)
        )

    @classmethod
    def of(cls, rows: Iterable[Iterable[Number]]) -> "RatMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.of([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> "RatMatrix":
        return cls.of([[0] * n for _ in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def is_symmetric(self) -> bool:
        return all(self.rows[i][j] == self.rows[j][i]
                   for i in range(self.n) for j in range(i))

    def transpose(self) -> "RatMatrix":
        return RatMatrix(tuple(zip(*self.rows)))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        cols = list(zip(*other.rows))
        return RatMatrix(tuple(
            tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols)
            for r in self.rows
        ))

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix(tuple(tuple(a + b for a, b in zip(r, s))
                               for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix(tuple(tuple(a - b for a, b in zip(r, s))
                               for r, s in zip(self.rows, other.rows)))

    def scale(self, c: Number) -> "RatMatrix":
        return RatMatrix(tuple(tuple(c * a for a in r) for r in self.rows))

    def matvec(self, v: Sequence[Number]) -> list[Fraction]:
        return [sum((a * Fraction(b) for a, b in zip(r, v)), Fraction(0)) for r in self.rows]

    def submatrix(self, idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix(tuple(tuple(self.rows[i][j] for j in idx) for i in idx))

    def delete(self, i: int) -> "RatMatrix":
        """Principal submatrix with row and column ``i`` removed."""
        return self.submatrix([k for k in range(self.n) if k != i])

    def to_json(self) -> dict:
        return {"n": self.n, "data": [[_frac_str(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> "RatMatrix":
        try:
            n = int(obj["n"])
            data = obj["data"]
            if len(data) != n:
                raise InvalidSpec(f"expected {n} rows, got {len(data)}")
            return cls.of([[Fraction(str(x)) for x in row] for row in data])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, InvalidSpec):
                raise
            raise InvalidSpec(f"malformed matrix JSON: {exc}") from exc


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def as_rational(m) -> RatMatrix:
    if isinstance(m, RatMatrix):
        return m
    if isinstance(m, IntSymMatrix):
        return RatMatrix.of(m.rows)
    return RatMatrix.of(m)


def _require_symmetric(m: RatMatrix) -> None:
    if not m.is_symmetric():
        raise NotSymmetric("matrix is not symmetric")


# ---------------------------------------------------------------------------
# inertia

def ldlt_inertia(m) -> Inertia:
    """Exact inertia by symmetric elimination with 1x1 and 2x2 pivots.

    A nonzero diagonal entry (largest magnitude first) is used as a 1x1 pivot
    and contributes its sign. When the remaining diagonal is identically zero
    but some off-diagonal ``a`` is not, the hyperbolic block ``[[0, a], [a, 0]]``
    is pivoted out and contributes one positive and one negative eigenvalue.
    A zero remainder contributes to ``i_zero``.
    """
    m = as_rational(m)
    _require_symmetric(m)
    a = m.tolist()
    idx = list(range(m.n))
    pos = neg = 0
    while idx:
        diag = [(abs(a[i][i]), i) for i in idx if a[i][i] != 0]
        if diag:
            _, k = max(diag)
            d = a[k][k]
            if d > 0:
                pos += 1
            else:
                neg += 1
            idx.remove(k)
            col = {i: a[i][k] for i in idx if a[i][k] != 0}
            for i, ci in col.items():
                f = ci / d
                row = a[i]
                for j, cj in col.items():
                    row[j] -= f * cj
            continue
        pair = next(((i, j) for i in idx for j in idx if j > i and a[i][j] != 0), None)
        if pair is None:
            break
        # all remaining diagonal entries are zero here
        i0, j0 = pair
        piv = a[i0][j0]
        idx.remove(i0)
        idx.remove(j0)
        u = {i: a[i][i0] for i in idx}
        v = {i: a[i][j0] for i in idx}
        for i in idx:
            if u[i] == 0 and v[i] == 0:
                continue
            row = a[i]
            for j in idx:
                row[j] -= (u[i] * v[j] + v[i] * u[j]) / piv
        pos += 1
        neg += 1
    return Inertia(pos, neg, len(idx))


def rank(m) -> int:
    """Exact rank by Gaussian elimination; accepts rectangular lists of rows."""
    if isinstance(m, (RatMatrix, IntSymMatrix)):
        a = as_rational(m).tolist()
    else:
        a = [[Fraction(x) for x in row] for row in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            if a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def inverse(m) -> RatMatrix:
    """Exact inverse by Gauss-Jordan elimination; raises ZeroDivisionError if singular."""
    m = as_rational(m)
    n = m.n
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return RatMatrix.of(r[n:] for r in a)


def solve(m, b: Sequence[Number]) -> list[Fraction]:
    """Solve ``m x = b`` exactly (m nonsingular)."""
    m = as_rational(m)
    n = m.n
    a = [list(r) + [Fraction(bi)] for r, bi in zip(m.rows, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    x = [Fraction(0)] * n
    for i in reversed(range(n)):
        s = a[i][n] - sum((a[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = s / a[i][i]
    return x


def congruence_transform(m, s) -> RatMatrix:
    """Return ``Sᵀ M S`` after checking that S is nonsingular."""
    m, s = as_rational(m), as_rational(s)
    _require_symmetric(m)
    if s.n != m.n:
        raise InvalidSpec("S and M must have the same size")
    if rank(s) < s.n:
        raise SingularS("congruence matrix S is singular")
    return s.transpose() @ m @ s


def haynsworth_inertia(h, k: int) -> Inertia:
    """Inertia as i(H11) + i(H22 - H12ᵀ H11⁻¹ H12) for the leading k x k block H11."""
    h = as_rational(h)
    _require_symmetric(h)
    if not 0 <= k <= h.n:
        raise InvalidSpec(f"block size {k} outside 0..{h.n}")
    lead = list(range(k))
    rest = list(range(k, h.n))
    h11 = h.submatrix(lead)
    try:
        h11_inv = inverse(h11)
    except ZeroDivisionError:
        raise SingularLeadingBlock(f"leading {k}x{k} block is singular") from None
    if not rest:
        return ldlt_inertia(h11)
    h12 = [[h[i, j] for j in rest] for i in lead]
    tmp = [[sum((h11_inv[i, t] * h12[t][c] for t in range(k)), Fraction(0))
             for c in range(len(rest))] for i in range(k)]
    schur = [[h[rest[r], rest[c]] - sum((h12[t][r] * tmp[t][c] for t in range(k)), Fraction(0))
              for c in range(len(rest))] for r in range(len(rest))]
    return ldlt_inertia(h11) + ldlt_inertia(RatMatrix.of(schur))


def pendant_reduction(delta, k: int) -> RatMatrix:
    """Congruent block form of Δ when vertices ``0..k-1`` are pendants on one vertex.

    Row/column k-1 is subtracted from each of the first k-1, which leaves
    ``-4I - 4J`` in the corner and zeros beside it; then 1/k of each of the
    first k-1 rows and columns is added back to row/column k-1. The result is
    ``diag(-4I_{k-1} - 4J_{k-1}, Δ_k + (4 - 4/k) e eᵀ)`` where ``Δ_k`` drops
    the first k-1 pendants and ``e`` marks the kept pendant.
    """
    delta = as_rational(delta)
    _require_symmetric(delta)
    n = delta.n
    if not 2 <= k < n:
        raise InvalidSpec(f"need 2 <= k < n, got k={k}, n={n}")
    for i in range(k):
        for j in range(i + 1, k):
            if delta[i, j] != 4:
                raise BadOrdering(f"rows {i} and {j} are not at squared distance 4")
        if any(delta[i, c] != delta[0, c] for c in range(k, n)):
            raise BadOrdering(f"row {i} does not match row 0 outside the pendant block")
    last = k - 1
    # column operations; the congruence applies Sᵀ on the left as the row operations
    s = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(last):
        s[last][i] -= 1
    e2 = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(last):
        e2[i][last] += Fraction(1, k)
    s_total = RatMatrix.of(s) @ RatMatrix.of(e2)
    return congruence_transform(delta, s_total)


def even_cycle_inverse(p: int) -> RatMatrix:
    """Closed-form inverse of the distance-squared matrix of an even p-cycle.

    ``(2J + B) / (4 λ m)`` with ``m = p/2``, ``λ = m(2m²+1)/3`` (the row sum)
    and B circulant with first row ``-λ, 2λ, -λ`` centred on the antipode.
    """
    if p < 4 or p % 2:
        raise OddLength(f"need an even cycle length >= 4, got {p}")
    m = p // 2
    lam = Fraction(m * (2 * m * m + 1), 3)
    first = [Fraction(0)] * p
    first[m - 1] -= lam
    first[m] += 2 * lam
    first[(m + 1) % p] -= lam
    scale = 1 / (4 * lam * m)
    return RatMatrix.of([[(2 + first[(j - i) % p]) * scale for j in range(p)]
                         for i in range(p)])


def _pendant_row(p: int) -> list[Fraction]:
    # squared distances from a pendant on cycle vertex 0 to the cycle vertices
    return [Fraction((1 + min(i, p - i)) ** 2) for i in range(p)]


def schur_scalar(p: int) -> Fraction:
    """xᵀ Δ̃⁻¹ x for a p-cycle plus one pendant, via the closed-form inverse."""
    x = _pendant_row(p)
    inv = even_cycle_inverse(p)
    y = inv.matvec(x)
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def schur_scalar_closed(m: int, *, correction: bool = True) -> Fraction:
    """Polynomial expression for the Schur scalar in terms of m = p/2.

    ``(1/(4λm)) (2 s² + xᵀBx)`` with ``s = (2m³+6m²+7m)/3`` the pendant row
    sum and ``xᵀBx = -(4/3)λm³ - 8λm² - (26/3)λm``. With ``correction=False``
    an extra ``+4λ`` is kept inside the bracket, i.e. the antipodal entry of
    ``Bx`` is taken as ``4λ(m+1)+2λ`` instead of ``4λm+2λ``; that variant
    overshoots the true value by exactly ``1/m``.
    """
    m = Fraction(m)
    lam = m * (2 * m * m + 1) / 3
    poly = (Fraction(8, 9) * m**6 + Fraction(16, 3) * m**5 + Fraction(128, 9) * m**4
            + Fraction(56, 3) * m**3 + Fraction(98, 9) * m**2
            - Fraction(4, 3) * lam * m**3 - 8 * lam * m**2 - Fraction(26, 3) * lam * m)
    if not correction:
        poly += 4 * lam
    return poly / (4 * lam * m)


def rational_nullspace(m) -> list[list[Fraction]]:
    """Basis of the null space from the reduced row echelon form.

    Each basis vector is scaled to coprime integers with a positive leading
    free coordinate.
    """
    m = as_rational(m)
    n = m.n
    a = m.tolist()
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -a[row][fcol]
        basis.append(_integerize(v))
    return basis


def _integerize(v: list[Fraction]) -> list[Fraction]:
    from math import gcd, lcm

    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = gcd(*ints) or 1
    return [Fraction(x // g) for x in ints]


def annihilates(m, v: Sequence[Number]) -> bool:
    return all(x == 0 for x in as_rational(m).matvec(v))
