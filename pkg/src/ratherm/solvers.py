"""The three solution routes and the minimal-solution machinery.

Every route answers the same question about (u, v, k): does a fraction A/B
with deg A <= k-1, deg B <= n-k meet all the prescribed Taylor data with B
nonvanishing at the nodes?  The linearized problem always has nontrivial
solutions; they form ``C(x) * (A0, B0)`` for a minimal pair (A0, B0) unique
up to a constant, and the original problem is solvable exactly when
gcd(A0, B0) = 1.  The defect j of the data is the kernel dimension of the
main matrix, equivalently s0 + 1 where s0 = min(k-1-deg A0, n-k-deg B0);
unattainable data sits in the odd-codimension stratum indexed by its defect.

Routes:

- ``solve_kernel``: null space of the structured matrix, gcd reduction,
  residual scan to rebuild the minimal pair.
- ``solve_eea``: extended Euclidean run on (node polynomial, confluent
  interpolant); the first remainder of degree <= k-1 and its Bezout
  cofactor are the minimal pair.
- ``solve_minors``: closed-form minimal pairs sliced out of signed-minor
  vectors, chart-selected by nonvanishing square minors on the diagonal.

Minor indexing: ``minor_vector(data, t)`` holds the signed maximal minors
Delta_{t,i} of the n x (n+1) matrix with degree bounds (t-1, n-t); entries
are read 1-based via ``value_at``.  The sign convention is
Delta_{t,i} = (-1)^(t+i) det(delete column i), which makes each vector a
kernel member at full rank and matches every closed form the identity
catalog checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import InternalInconsistency
from .linalg import MinorVector, determinant, kernel_basis, signed_minors
from .polynomial import (
    MINUS_INFINITY,
    Poly,
    eea,
    evaluate,
    gcd,
    hermite_interpolant,
    product_F,
    terminal_row,
)
from .problem import (
    HermiteData,
    RationalSolution,
    build_matrix,
    pair_from_vector,
    rhip_check,
    whip_residual,
)


@dataclass(frozen=True)
class MinimalSolution:
    """The lowest-degree nontrivial pair solving the linearized problem.

    Normalized so A0 is monic (B0 monic when A0 = 0).  s0 is
    min(k-1-dA, n-k-dB); the full solution space is C(x) * (A0, B0) over
    deg C <= s0, so its dimension is kernel_dim = s0 + 1.  One of the two
    degree slots is always tight: dA = k-1-s0 or dB = n-k-s0.
    """

    A0: Poly
    B0: Poly
    dA: Union[int, float]
    dB: Union[int, float]
    s0: int
    kernel_dim: int

    @classmethod
    def from_pair(cls, data: HermiteData, A0: Poly, B0: Poly) -> "MinimalSolution":
        if A0.is_zero and B0.is_zero:
            raise InternalInconsistency("zero pair offered as minimal solution")
        unit = A0.lead if not A0.is_zero else B0.lead
        inv = data.field.one / unit
        A0, B0 = A0 * inv, B0 * inv
        dA, dB = A0.degree, B0.degree
        s0 = min(data.k - 1 - dA, data.n - data.k - dB)
        if s0 < 0 or s0 != int(s0):
            raise InternalInconsistency(
                f"minimal pair degrees ({dA}, {dB}) break the bounds of {data!r}"
            )
        s0 = int(s0)
        return cls(A0, B0, dA, dB, s0, s0 + 1)


@dataclass(frozen=True)
class Solvable:
    """The problem has the (unique) solution sol.A / sol.B.

    ``reduced`` records whether a nontrivial common factor was divided out
    of the raw pair the route produced.
    """

    sol: RationalSolution
    reduced: bool

    @property
    def solvable(self) -> bool:
        return True


@dataclass(frozen=True)
class Unattainable:
    """No solution exists; the data lies in the stratum of its defect.

    ``stratum_j`` is the defect (kernel dimension).  It lies in 1..m+1
    whenever both components of the minimal pair are nonzero; data forcing
    a zero minimal numerator can push it as high as n-k.  ``witness_nodes``
    are the 0-based indices where the minimal denominator vanishes.
    """

    stratum_j: int
    witness_nodes: tuple[int, ...]

    @property
    def solvable(self) -> bool:
        return False


Classification = Union[Solvable, Unattainable]


def minor_vector(data: HermiteData, t: int) -> MinorVector:
    """The signed minor vector (Delta_{t,1}, ..., Delta_{t,n+1})."""
    if not 0 <= t <= data.n + 1:
        raise InternalInconsistency(f"minor family index t = {t} outside 0..n+1")
    raw = signed_minors(build_matrix(data, t - 1, data.n - t))
    if t % 2 == 0:
        return MinorVector(tuple(-x for x in raw.values), t)
    return MinorVector(raw.values, t)


def diagonal_minor(data: HermiteData, t: int) -> "Scalar":
    """Delta_{t,t}: delete column t from the (t-1, n-t) matrix and take det.

    The alternating signs cancel on the diagonal, so no sign is applied.
    """
    if not 1 <= t <= data.n + 1:
        raise InternalInconsistency(f"diagonal minor index t = {t} outside 1..n+1")
    M = build_matrix(data, t - 1, data.n - t)
    return determinant(M.delete_columns([t - 1]))


def witness_nodes(data: HermiteData, B0: Poly) -> tuple[int, ...]:
    """0-based node indices where the minimal denominator vanishes."""
    return tuple(i for i, ui in enumerate(data.u) if not evaluate(B0, ui))


def _classify_minimal(data: HermiteData, minsol: MinimalSolution) -> Classification:
    """Coprimality test of the minimal pair, per the solvability criterion."""
    g = gcd(minsol.A0, minsol.B0)
    if g.degree == 0:
        sol = RationalSolution(minsol.A0, minsol.B0)
        if not rhip_check(data, sol):
            raise InternalInconsistency(
                f"coprime minimal pair fails the original problem on {data!r}"
            )
        return Solvable(sol, reduced=False)
    wits = witness_nodes(data, minsol.B0)
    if not wits:
        raise InternalInconsistency(
            f"common factor without a node root on {data!r}"
        )
    return Unattainable(minsol.kernel_dim, wits)


def solve_kernel(data: HermiteData) -> tuple[MinimalSolution, Classification]:
    """Null-space route.

    Take any kernel basis vector of the main matrix, split it into (A, B),
    divide out the gcd; the reduced pair solves the original problem iff it
    still solves the linearized one.  If not, the minimal pair is the
    reduced pair times prod (x - u_i)^(n_i - j_i) over the nodes i whose
    residual block first fails at derivative order j_i.
    """
    basis = kernel_basis(build_matrix(data, data.k - 1, data.n - data.k))
    if not basis:
        raise InternalInconsistency(f"empty kernel for {data!r}")
    raw = pair_from_vector(data, basis[0])
    g = gcd(raw.A, raw.B)
    reduced_pair = RationalSolution(raw.A // g, raw.B // g)
    residual = whip_residual(data, reduced_pair)
    if not any(residual):
        minsol = MinimalSolution.from_pair(data, reduced_pair.A, reduced_pair.B)
        if minsol.kernel_dim != len(basis):
            raise InternalInconsistency(
                f"dimension law broken: s0+1 = {minsol.kernel_dim}, "
                f"kernel has {len(basis)} vectors"
            )
        sol = RationalSolution(minsol.A0, minsol.B0)
        if not all(evaluate(sol.B, ui) for ui in data.u):
            raise InternalInconsistency(
                f"coprime kernel pair with vanishing denominator on {data!r}"
            )
        return minsol, Solvable(sol, reduced=g.degree > 0)
    correction = Poly.one(data.field)
    pos = 0
    for i in range(data.l):
        block = residual[pos : pos + data.n_vec[i]]
        pos += data.n_vec[i]
        for j, val in enumerate(block):
            if val:
                correction = correction * Poly((-data.u[i], 1), data.field) ** (
                    data.n_vec[i] - j
                )
                break
    minsol = MinimalSolution.from_pair(
        data, correction * reduced_pair.A, correction * reduced_pair.B
    )
    if minsol.kernel_dim != len(basis):
        raise InternalInconsistency(
            f"dimension law broken: s0+1 = {minsol.kernel_dim}, "
            f"kernel has {len(basis)} vectors"
        )
    return minsol, Unattainable(minsol.kernel_dim, witness_nodes(data, minsol.B0))


def solve_eea(data: HermiteData) -> Classification:
    """Euclidean route.

    F = prod (x - u_i)^(n_i), G = the confluent interpolant of the data.
    The first table row whose remainder has degree <= k-1 carries the
    minimal pair (R_cut, T_cut); solvable iff gcd(R_cut, T_cut) = 1.  When
    every stored remainder is too large the zero-remainder terminal row
    (whose Bezout identity still holds) is the cut row.
    """
    G = hermite_interpolant(data)
    if G.is_zero:
        return Solvable(
            RationalSolution(Poly.zero(data.field), Poly.one(data.field)),
            reduced=False,
        )
    F = product_F(data)
    if not G.degree < F.degree:
        raise InternalInconsistency(
            f"interpolant degree {G.degree} reached n = {F.degree}"
        )
    rows = eea(F, G)
    cut = next(
        (row for row in rows if row.remainder.degree <= data.k - 1), None
    )
    if cut is None:
        cut = terminal_row(rows)
    R, T = cut.remainder, cut.bezout_t
    g = gcd(R, T)
    if g.degree == 0:
        minsol = MinimalSolution.from_pair(data, R, T)
        return Solvable(RationalSolution(minsol.A0, minsol.B0), reduced=False)
    s0 = min(data.k - 1 - R.degree, data.n - data.k - T.degree)
    return Unattainable(int(s0) + 1, witness_nodes(data, T))


def find_defect(data: HermiteData):
    """Smallest j whose chart certificate is nonzero.

    Returns (j, cert_low, cert_up) with cert_low = Delta_{k-j+1,k-j+1} and
    cert_up = Delta_{k+j,k+j}.  The ascending scan makes the interior
    vanishing conditions for the returned j automatic: they are exactly the
    certificates of the rejected smaller j.

    Both charts are consulted for j <= m+1, the regime where both components
    of the minimal pair are nonzero.  Data that forces a zero minimal
    numerator has defect above m+1 and is only visible to the upper chart,
    so the scan continues there with cert_low = 0, up to j = n-k+1 where
    Delta_{n+1,n+1} is a confluent Vandermonde determinant and never
    vanishes.
    """
    k = data.k
    zero = data.field.zero
    for j in range(1, data.n - k + 2):
        cert_low = diagonal_minor(data, k - j + 1) if j <= data.m + 1 else zero
        cert_up = diagonal_minor(data, k + j)
        if cert_low or cert_up:
            return j, cert_low, cert_up
    raise InternalInconsistency(
        f"no nonzero chart certificate at any defect on {data!r}"
    )


def chart_pair(data: HermiteData, j: int, upper: bool) -> tuple[Poly, Poly]:
    """The closed-form candidate pair of defect j from one chart, unscaled.

    Lower chart (certificate Delta_{k-j+1,k-j+1}): slice the t = k-j+1
    minor vector into A over l = 0..k-j and B over l = k-j+1..n-2j+2;
    entries above that must vanish.  Upper chart (certificate
    Delta_{k+j,k+j}): t = k+j-1, A over l = 0..k-j, a forced-zero gap
    l = k-j+1..k+j-2, B over l = k+j-1..n.  The gap/tail checks are only
    enforced when the chart's certificate is nonzero; with a zero
    certificate the sliced pair must itself be identically zero, and is
    returned for the caller to observe.

    For j > m+1 only the upper chart exists; its A slice is empty (the
    minimal numerator is identically zero) and the gap covers everything
    below the B block.
    """
    k, n = data.k, data.n
    t = k + j - 1 if upper else k - j + 1
    mv = minor_vector(data, t)
    # In-vector certificates: the lower chart's is its own diagonal entry;
    # the upper chart's Delta_{k+j,k+j} equals this vector's last entry up
    # to a sign, so nonvanishing may be read off without a second matrix.
    cert = mv.value_at(n + 1) if upper else mv.value_at(k - j + 1)
    A = Poly([mv.value_at(l + 1) for l in range(0, k - j + 1)], data.field)
    if upper:
        B = Poly([mv.value_at(l + 1) for l in range(k + j - 1, n + 1)], data.field)
        dead = [mv.value_at(l + 1) for l in range(max(0, k - j + 1), k + j - 1)]
    else:
        B = Poly(
            [mv.value_at(l + 1) for l in range(k - j + 1, n - 2 * j + 3)], data.field
        )
        dead = [mv.value_at(l + 1) for l in range(n - 2 * j + 3, n + 1)]
    if cert and any(dead):
        raise InternalInconsistency(
            f"minor vector t = {t} has support outside the defect-{j} chart "
            f"slices on {data!r}"
        )
    return A, B


def solve_minors(data: HermiteData) -> tuple[MinimalSolution, Classification]:
    """Closed-form route via signed-minor vectors.

    The defect is certified by the first nonzero diagonal minor flanking
    the vanishing run; the minimal pair is the corresponding chart slice.
    """
    j, cert_low, cert_up = find_defect(data)
    A, B = chart_pair(data, j, upper=not cert_low)
    if A.is_zero and B.is_zero:
        raise InternalInconsistency(
            f"certified chart produced the zero pair on {data!r}"
        )
    minsol = MinimalSolution.from_pair(data, A, B)
    if minsol.kernel_dim != j:
        raise InternalInconsistency(
            f"chart defect {j} disagrees with degree count {minsol.kernel_dim}"
        )
    return minsol, _classify_minimal(data, minsol)


def vanishing_chart_check(
    data: HermiteData, minsol: MinimalSolution, j: int
) -> tuple[int, ...]:
    """Witness set {i : B0(u_i) = 0} of a minimal solution.

    Nonempty exactly when the data is unattainable with defect j; each
    witness names one irreducible component of the stratum.
    """
    if minsol.kernel_dim != j:
        raise InternalInconsistency(
            f"minimal solution has defect {minsol.kernel_dim}, caller said {j}"
        )
    return witness_nodes(data, minsol.B0)
