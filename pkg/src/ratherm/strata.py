"""Rank-only classification and stratum-equation evaluation.

The unattainable set decomposes by defect j into strata of odd codimension
2j-1, each a union of per-node components.  This module re-derives that
picture two independent ways: ``classify_by_rank`` uses nothing but ranks
of shrunken and row/column-deleted matrices, and ``stratum_equations``
evaluates the closed-form chart polynomials whose zero sets cut the strata
out.  Both emit a :class:`StratumReport`; agreement with the solver routes
is enforced by the test suite on every instance it touches.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInconsistency, ShapeMismatch
from .field import Scalar
from .linalg import ExactMatrix, rank
from .polynomial import evaluate
from .problem import HermiteData, build_matrix, build_submatrix_i
from .solvers import chart_pair, diagonal_minor, find_defect, solve_kernel


@dataclass(frozen=True)
class StratumReport:
    """Where one data point sits relative to the unattainability strata.

    defect: kernel dimension j of the main matrix (1 = generic).
    diagonal_minor_values: t -> Delta_{t,t} for t in [k-m, k+m+1] clipped
        to [1, n]; the vanishing run between the chart certificates is the
        algebraic face of the defect.
    chart: which certificate is nonzero ("lower", "upper", or "both").
    unattainable: whether the problem has no solution at this point.
    witnesses: 0-based node indices of the stratum components containing
        the point (empty when solvable).
    """

    defect: int
    diagonal_minor_values: dict[int, Scalar]
    chart: str
    unattainable: bool
    witnesses: tuple[int, ...]

    def to_json_dict(self, data: HermiteData) -> dict:
        fmt = data.field.format_scalar
        return {
            "defect": self.defect,
            "diagonal_minors": {
                str(t): fmt(v) for t, v in sorted(self.diagonal_minor_values.items())
            },
            "chart": self.chart,
            "unattainable": self.unattainable,
            "witnesses": list(self.witnesses),
        }


def _diagonal_window(data: HermiteData) -> dict[int, Scalar]:
    lo = max(1, data.k - data.m)
    hi = min(data.n, data.k + data.m + 1)
    return {t: diagonal_minor(data, t) for t in range(lo, hi + 1)}


def _chart_label(cert_low: Scalar, cert_up: Scalar) -> str:
    if cert_low and cert_up:
        return "both"
    if cert_low:
        return "lower"
    if cert_up:
        return "upper"
    raise InternalInconsistency("both chart certificates vanish at the defect")


def _denominator_vanishes_at(data: HermiteData, i: int) -> bool:
    """Rank test for ``B(u_i) = 0`` across the whole kernel.

    Appending the evaluation functional B |-> B(u_i) as an extra row leaves
    the rank unchanged exactly when every kernel element already satisfies
    it, i.e. when the minimal denominator vanishes at node i.
    """
    M = build_matrix(data, data.k - 1, data.n - data.k)
    ui = data.u[i]
    one = data.field.one
    zero = data.field.zero
    row = [zero] * data.k + [ui**l * one for l in range(data.n - data.k + 1)]
    return rank(ExactMatrix(M.rows_list() + [row], data.field)) == rank(M)


def classify_by_rank(data: HermiteData) -> StratumReport:
    """Rank-only classifier.

    Shrink both degree bounds by j, starting at j = m, while the shrunken
    matrix has trivial kernel (full column rank n-2j+1); the exit value
    j0 - 1 certifies defect j0.  Then, per node, delete the last row of that
    node's block and the final column of each side: the data is unattainable
    through node i exactly when this submatrix loses full column rank.

    Data forcing a zero minimal numerator has defect above m+1, beyond the
    reach of the shrunken matrices; the descending scan then stalls at its
    starting point and the defect is read off as the main matrix's kernel
    dimension instead.  Witnesses in that regime come from appending the
    per-node evaluation functional to the main matrix and checking that the
    rank does not move.
    """
    k, n, m = data.k, data.n, data.m
    j = m
    while j >= 1 and rank(build_matrix(data, k - 1 - j, n - k - j)) == n - 2 * j + 1:
        j -= 1
    defect = j + 1
    if defect == m + 1:
        dim = (n + 1) - rank(build_matrix(data, k - 1, n - k))
        if dim > defect:
            defect = dim
    if defect <= m + 1:
        alpha, beta = k - 1 - j, n - k - j
        width = n - 2 * j + 1
        witnesses = []
        for i in range(1, data.l + 1):
            sub = build_submatrix_i(data, alpha, beta, i, drop_cols=(k - j, width))
            if rank(sub) < width - 2:
                witnesses.append(i - 1)
    else:
        witnesses = [i for i in range(data.l) if _denominator_vanishes_at(data, i)]
    zero = data.field.zero
    cert_low = diagonal_minor(data, k - defect + 1) if k - defect + 1 >= 1 else zero
    cert_up = diagonal_minor(data, k + defect)
    return StratumReport(
        defect=defect,
        diagonal_minor_values=_diagonal_window(data),
        chart=_chart_label(cert_low, cert_up),
        unattainable=bool(witnesses),
        witnesses=tuple(witnesses),
    )


def stratum_equations(data: HermiteData) -> StratumReport:
    """Closed-form stratum membership.

    For the certified defect j, the candidate denominator of each valid
    chart is evaluated at every node; vanishing at node i puts the point in
    that node's component of the stratum.  With both certificates nonzero
    the two charts give proportional denominators, so the lower one is
    evaluated.
    """
    j, cert_low, cert_up = find_defect(data)
    _, B = chart_pair(data, j, upper=not cert_low)
    if B.is_zero:
        raise InternalInconsistency(f"certified chart denominator is zero on {data!r}")
    witnesses = tuple(i for i, ui in enumerate(data.u) if not evaluate(B, ui))
    return StratumReport(
        defect=j,
        diagonal_minor_values=_diagonal_window(data),
        chart=_chart_label(cert_low, cert_up),
        unattainable=bool(witnesses),
        witnesses=witnesses,
    )


def b1_closed_form_check(data: HermiteData) -> bool:
    """Shape (2,1), k = 2 only: compare the closed-form membership predicate
    for the codimension-1 stratum against the rank classifier's verdict.

    The stratum is {v10 = v20, v11 != 0} union {v11 = 0, v10 != v20}: equal
    constant targets with a nonzero slope cannot be matched by a degree-1
    over degree-1 fraction that stays finite at both nodes, and a zero slope
    with distinct targets forces the denominator to vanish at a node.
    """
    if data.n_vec != (2, 1) or data.k != 2:
        raise ShapeMismatch(f"closed form holds for shape (2,1), k=2; got {data!r}")
    v10, v11 = data.v[0]
    v20 = data.v[1][0]
    same_value = not (v10 - v20)
    predicted = (same_value and bool(v11)) or (not v11 and not same_value)
    return predicted == classify_by_rank(data).unattainable


def rank_verdict_matches_kernel(data: HermiteData) -> bool:
    """Oracle agreement helper used by tests and the CLI."""
    by_rank = classify_by_rank(data)
    _, cls = solve_kernel(data)
    return by_rank.unattainable != cls.solvable and by_rank.defect == (
        cls.stratum_j if not cls.solvable else by_rank.defect
    )
