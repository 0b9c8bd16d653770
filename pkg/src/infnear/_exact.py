"""Exact rational linear algebra and a small two-phase simplex.

Everything here works on Python ints / ``fractions.Fraction`` so results
never depend on floating point tolerances.
"""

from fractions import Fraction


def _rref_rows(rows, ncols):
    """Reduce a list of sparse rows (dict col -> Fraction) in place.

    Returns the list of pivot rows, each normalised with pivot 1 and keyed
    by its pivot column.
    """
    pivots = {}
    for row in rows:
        row = {c: Fraction(v) for c, v in row.items() if v}
        while row:
            col = min(row)
            if col in pivots:
                factor = row[col]
                for c, v in pivots[col].items():
                    nv = row.get(c, 0) - factor * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
                continue
            lead = row[col]
            row = {c: v / lead for c, v in row.items()}
            pivots[col] = row
            break
    return pivots


def rank(matrix):
    """Rank over Q of a dense (list of lists) or sparse (list of dicts) matrix."""
    rows = [r if isinstance(r, dict) else {j: v for j, v in enumerate(r) if v}
            for r in matrix]
    return len(_rref_rows(rows, None))


def nullspace(matrix, ncols):
    """Basis of {x : A x = 0} over Q, as a list of dense Fraction lists."""
    rows = [r if isinstance(r, dict) else {j: v for j, v in enumerate(r) if v}
            for r in matrix]
    pivots = _rref_rows(rows, ncols)
    # back-substitute so each pivot row only involves free columns
    order = sorted(pivots, reverse=True)
    for col in order:
        row = pivots[col]
        for other in order:
            if other > col and other in row:
                factor = row[other]
                for c, v in pivots[other].items():
                    nv = row.get(c, 0) - factor * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for col, row in pivots.items():
            vec[col] = -row.get(f, 0)
        basis.append(vec)
    return basis


def det(matrix):
    """Determinant of a small square integer/rational matrix."""
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    sign = 1
    result = Fraction(1)
    for i in range(n):
        piv = next((k for k in range(i, n) if a[k][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            sign = -sign
        result *= a[i][i]
        for k in range(i + 1, n):
            f = a[k][i] / a[i][i]
            if f:
                for j in range(i, n):
                    a[k][j] -= f * a[i][j]
    return sign * result


class LPInfeasible(Exception):
    pass


def simplex_max(c, A, b):
    """Maximise ``c.x`` subject to ``A x = b``, ``x >= 0`` exactly.

    Two-phase tableau simplex with Bland's rule.  Returns ``(value, x)``;
    raises ``LPInfeasible`` if there is no feasible point.  Unbounded
    problems raise ``ValueError`` (callers here only pose bounded ones).
    """
    m = len(A)
    n = len(c)
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
    # columns 0..n-1 original, n..n+m-1 artificial
    T = [A[i] + [Fraction(int(i == k)) for k in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]

    def pivot(r, col):
        pv = T[r][col]
        T[r] = [v / pv for v in T[r]]
        for i in range(m):
            if i != r and T[i][col] != 0:
                f = T[i][col]
                T[i] = [vi - f * vr for vi, vr in zip(T[i], T[r])]
        basis[r] = col

    def run(cost, allowed):
        while True:
            # reduced costs: cost_j - sum_i cost_{basis_i} T[i][j]
            entering = None
            for j in allowed:
                if j in basis:
                    continue
                red = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(m))
                if red > 0:
                    entering = j
                    break
            if entering is None:
                return
            best = None
            for i in range(m):
                if T[i][entering] > 0:
                    ratio = T[i][-1] / T[i][entering]
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                raise ValueError("unbounded LP")
            pivot(best[1], entering)

    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    run(phase1, range(n + m))
    if sum(T[i][-1] for i in range(m) if basis[i] >= n) != 0:
        raise LPInfeasible()
    # drive remaining (zero-level) artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0 and j not in basis), None)
            if col is not None:
                pivot(i, col)
    cost = [Fraction(v) for v in c] + [Fraction(0)] * m
    # artificial columns stay out from now on
    run(cost, range(n))
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i][-1]
    return sum(ci * xi for ci, xi in zip(cost, x)), x
