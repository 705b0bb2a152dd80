"""Exact linear algebra and a small two-phase simplex over the rationals.

Only what the cell-decomposition engine needs: reduced row echelon form,
affine solution sets, linear programs with free variables, and feasibility of
mixed equality / strict / weak systems.  Pivoting uses Bland's rule so the
method terminates without any tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

__all__ = ["rref", "solve_affine", "linprog_max", "find_point", "rank"]

_ZERO = Fraction(0)
_ONE = Fraction(1)

Row = List[Fraction]


def rref(rows: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> Tuple[List[Row], List[int]]:
    """Reduced row echelon form of ``rows`` pivoting on the first ``ncols`` columns.

    Zero rows are dropped.  Columns past ``ncols`` (an augmented right-hand
    side) are carried along but never pivoted on.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    width = len(m[0])
    ncols = width if ncols is None else ncols
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = _ONE / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    out = [row for row in m if any(row)]
    return out, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def solve_affine(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction], n: int):
    """Parametrize ``{x in Q^n : A x = b}`` as ``x0 + N z``.

    Returns ``(x0, N)`` with ``N`` a list of basis vectors, or ``None`` when the
    system is inconsistent.
    """
    if not A:
        return [_ZERO] * n, [[_ONE if i == j else _ZERO for i in range(n)] for j in range(n)]
    reduced, pivots = rref([list(a) + [bi] for a, bi in zip(A, b)], ncols=n)
    for row in reduced:
        if not any(row[:n]):
            return None
    x0 = [_ZERO] * n
    for row, p in zip(reduced, pivots):
        x0[p] = row[n]
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [_ZERO] * n
        v[f] = _ONE
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return x0, basis


# ---------------------------------------------------------------------------
# simplex
# ---------------------------------------------------------------------------

def _pivot(T: List[Row], obj: Row, r: int, c: int):
    inv = _ONE / T[r][c]
    pr = [v * inv for v in T[r]]
    T[r] = pr
    for i, row in enumerate(T):
        if i != r and row[c]:
            f = row[c]
            T[i] = [a - f * b for a, b in zip(row, pr)]
    if obj[c]:
        f = obj[c]
        obj[:] = [a - f * b for a, b in zip(obj, pr)]


def _run(T: List[Row], obj: Row, basis: List[int], allowed: int) -> bool:
    """Maximize in place; ``obj`` holds reduced costs. False when unbounded."""
    while True:
        entering = next((j for j in range(allowed) if obj[j] > 0), None)
        if entering is None:
            return True
        best = None
        for i, row in enumerate(T):
            a = row[entering]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        r = best[1]
        _pivot(T, obj, r, entering)
        basis[r] = entering


def _standard_form_max(c: Row, M: List[Row], rhs: Row):
    """Maximize ``c.y`` subject to ``M y = rhs``, ``y >= 0``.

    Returns ``("optimal", value, y)``, ``("unbounded", None, None)`` or
    ``("infeasible", None, None)``.
    """
    nvar = len(c)
    m = len(M)
    T = []
    for row, b in zip(M, rhs):
        row = list(row)
        if b < 0:
            row, b = [-v for v in row], -b
        T.append(row + [_ZERO] * m + [b])
    for i in range(m):
        T[i][nvar + i] = _ONE
    basis = [nvar + i for i in range(m)]

    # phase 1: maximize -(sum of artificials)
    obj = [_ZERO] * nvar + [Fraction(-1)] * m + [_ZERO]
    for row in T:
        obj = [a + b for a, b in zip(obj, row)]
    for i in range(m):
        obj[nvar + i] = _ZERO
    _run(T, obj, basis, nvar + m)
    if obj[-1] != 0:
        return "infeasible", None, None

    # drive remaining artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= nvar:
            col = next((j for j in range(nvar) if T[i][j]), None)
            if col is None:
                del T[i], basis[i]
                continue
            _pivot(T, [_ZERO] * len(T[i]), i, col)
            basis[i] = col
        i += 1
    T = [row[:nvar] + [row[-1]] for row in T]

    # phase 2
    obj = list(c) + [_ZERO]
    for i, bvar in enumerate(basis):
        if obj[bvar]:
            f = obj[bvar]
            obj = [a - f * b for a, b in zip(obj, T[i])]
    if not _run(T, obj, basis, nvar):
        return "unbounded", None, None
    y = [_ZERO] * nvar
    for i, bvar in enumerate(basis):
        y[bvar] = T[i][-1]
    return "optimal", -obj[-1], y


def linprog_max(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()):
    """Maximize ``c.x`` over free ``x`` with ``A_ub x <= b_ub`` and ``A_eq x = b_eq``.

    Returns ``(status, value, x)`` where status is ``"optimal"``,
    ``"unbounded"`` or ``"infeasible"``.
    """
    n = len(c)
    m_ub = len(A_ub)
    M, rhs = [], []
    for k, (a, b) in enumerate(zip(A_ub, b_ub)):
        slack = [_ZERO] * m_ub
        slack[k] = _ONE
        M.append(list(a) + [-v for v in a] + slack)
        rhs.append(Fraction(b))
    for a, b in zip(A_eq, b_eq):
        M.append(list(a) + [-v for v in a] + [_ZERO] * m_ub)
        rhs.append(Fraction(b))
    cost = [Fraction(v) for v in c] + [-Fraction(v) for v in c] + [_ZERO] * m_ub
    if not M:
        if any(cost):
            return "unbounded", None, None
        return "optimal", _ZERO, [_ZERO] * n
    status, value, y = _standard_form_max(cost, M, rhs)
    if status != "optimal":
        return status, None, None
    return status, value, [y[j] - y[n + j] for j in range(n)]


def find_point(n: int, eq=(), strict=(), weak=()) -> Optional[List[Fraction]]:
    """A rational point satisfying every constraint, or None.

    Each constraint is ``(a, b)``: ``eq`` means ``a.x = b``, ``strict`` means
    ``a.x < b``, ``weak`` means ``a.x <= b``.
    """
    sol = solve_affine([a for a, _ in eq], [b for _, b in eq], n)
    if sol is None:
        return None
    x0, N = sol
    k = len(N)

    def restrict(a, b):
        # a.(x0 + N z) <= b  ->  (a.N) z <= b - a.x0
        return [sum(ai * v[i] for i, ai in enumerate(a)) for v in N], b - sum(ai * xi for ai, xi in zip(a, x0))

    S = [restrict(a, b) for a, b in strict]
    W = [restrict(a, b) for a, b in weak]

    # a constraint with no z-dependence is decided right away
    live_s, live_w = [], []
    for row, rhs in S:
        if any(row):
            live_s.append((row, rhs))
        elif not rhs > 0:
            return None
    for row, rhs in W:
        if any(row):
            live_w.append((row, rhs))
        elif not rhs >= 0:
            return None

    if not live_s and not live_w:
        z = [_ZERO] * k
    elif not live_s:
        status, _, z = linprog_max([_ZERO] * k, [r for r, _ in live_w], [b for _, b in live_w])
        if status == "infeasible":
            return None
    else:
        # maximize eps with  row.z + eps <= rhs  on strict rows, eps <= 1
        A = [r + [_ONE] for r, _ in live_s] + [r + [_ZERO] for r, _ in live_w]
        A.append([_ZERO] * k + [_ONE])
        b = [rhs for _, rhs in live_s] + [rhs for _, rhs in live_w] + [_ONE]
        status, value, sol_z = linprog_max([_ZERO] * k + [_ONE], A, b)
        if status != "optimal" or not value > 0:
            return None
        z = sol_z[:k]
    return [x0[i] + sum(z[j] * N[j][i] for j in range(k)) for i in range(n)]
