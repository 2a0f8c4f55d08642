"""Field-generic dense linear algebra.

Matrices are lists of rows of field elements.  Over a prime field all
operations are exact Gaussian elimination; over the complex field rank and
kernel decisions use SVD with singular values thresholded at
``zero_threshold * sigma_max``.
"""

from __future__ import annotations

import mpmath
from mpmath import mpc

from .errors import InputError


def identity(ctx, n):
    return [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(col) for col in zip(*M)]


def mat_mul(ctx, A, B):
    if len(A[0]) != len(B):
        raise InputError("matrix shapes incompatible")
    BT = transpose(B)
    return [
        [_dot(ctx, row, col) for col in BT]
        for row in A
    ]


def mat_vec(ctx, A, v):
    return [_dot(ctx, row, v) for row in A]


def _dot(ctx, u, v):
    total = ctx.zero
    for a, b in zip(u, v):
        total = total + a * b
    return total


def _rref(ctx, M):
    """Reduced row echelon form (exact fields); returns (R, pivot_cols)."""
    R = [row[:] for row in M]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if not ctx.is_zero(R[i][c])), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = ctx.inv(R[r][c])
        R[r] = [inv * x for x in R[r]]
        for i in range(rows):
            if i != r and not ctx.is_zero(R[i][c]):
                f = R[i][c]
                R[i] = [R[i][j] - f * R[r][j] for j in range(cols)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def _to_mp(M):
    A = mpmath.matrix(len(M), len(M[0]))
    for i, row in enumerate(M):
        for j, x in enumerate(row):
            A[i, j] = mpc(x)
    return A


def _svd(ctx, M):
    with ctx.workprec():
        A = _to_mp(M)
        U, S, V = mpmath.svd_c(A, full_matrices=True)
    return U, S, V


def rank(ctx, M):
    if not M or not M[0]:
        return 0
    if ctx.kind == "prime-field":
        _, pivots = _rref(ctx, M)
        return len(pivots)
    _, S, _ = _svd(ctx, M)
    smax = max((abs(s) for s in S), default=0)
    if ctx.is_zero(smax, _sup_norm(M)):
        return 0
    return sum(1 for s in S if abs(s) > ctx.zero_threshold * smax)


def _sup_norm(M):
    return max((abs(x) for row in M for x in row), default=0)


def _normalize_first_nonzero(ctx, v):
    if ctx.kind == "prime-field":
        lead = next((x for x in v if not ctx.is_zero(x)), None)
    else:
        mx = max((abs(x) for x in v), default=0)
        lead = next((x for x in v if not ctx.is_zero(x, mx)), None)
    if lead is None:
        return v
    inv = ctx.inv(lead)
    return [inv * x for x in v]


def kernel(ctx, M, side="right"):
    """Basis of the (left/right) null space, first nonzero entry scaled to 1.

    Over the complex field the basis comes from singular vectors whose
    singular values fall below zero_threshold relative to the largest one
    (or to the sup norm for an all-tiny matrix).  An empty list means the
    kernel is trivial.
    """
    if not M or not M[0]:
        raise InputError("kernel of an empty matrix")
    if side == "left":
        return kernel(ctx, transpose(M), side="right")
    if side != "right":
        raise InputError("side must be 'left' or 'right'")
    rows, cols = len(M), len(M[0])
    if ctx.kind == "prime-field":
        R, pivots = _rref(ctx, M)
        free = [c for c in range(cols) if c not in pivots]
        basis = []
        for f in free:
            v = [ctx.zero] * cols
            v[f] = ctx.one
            for i, c in enumerate(pivots):
                v[c] = -R[i][f]
            basis.append(_normalize_first_nonzero(ctx, v))
        return basis
    U, S, V = _svd(ctx, M)
    smax = max((abs(s) for s in S), default=0)
    cutoff = ctx.zero_threshold * max(smax, _sup_norm(M))
    basis = []
    with ctx.workprec():
        for i in range(cols):
            s = abs(S[i]) if i < len(S) else 0
            if s <= cutoff:
                vec = [mpmath.conj(V[i, j]) for j in range(cols)]
                basis.append(_normalize_first_nonzero(ctx, vec))
    return basis


def solve_any(ctx, A, B):
    """One solution X of A X = B (matrix right-hand side).

    Over a prime field: Gauss-Jordan with free variables set to zero;
    raises InputError if the system is inconsistent.  Over the complex
    field: minimal-norm solution via SVD pseudo-inverse.
    """
    rows, cols = len(A), len(A[0])
    nrhs = len(B[0])
    if len(B) != rows:
        raise InputError("right-hand side has wrong height")
    if ctx.kind == "prime-field":
        aug = [A[i][:] + B[i][:] for i in range(rows)]
        R, pivots = _rref(ctx, aug)
        pivots = [c for c in pivots if c < cols]
        # consistency
        for i in range(len(R)):
            if all(ctx.is_zero(R[i][c]) for c in range(cols)) and any(
                not ctx.is_zero(R[i][cols + k]) for k in range(nrhs)
            ):
                raise InputError("linear system is inconsistent")
        X = [[ctx.zero] * nrhs for _ in range(cols)]
        for i, c in enumerate(pivots):
            for k in range(nrhs):
                X[c][k] = R[i][cols + k]
        return X
    U, S, V = _svd(ctx, A)
    smax = max((abs(s) for s in S), default=0)
    cutoff = ctx.zero_threshold * max(smax, _sup_norm(A))
    with ctx.workprec():
        Bm = _to_mp(B)
        UtB = U.H * Bm
        X = mpmath.matrix(cols, nrhs)
        for i in range(min(len(S), cols)):
            s = S[i]
            if abs(s) <= cutoff:
                continue
            for k in range(nrhs):
                X[i, k] = UtB[i, k] / s
        Xfull = V.H * X
    return [[Xfull[i, k] for k in range(nrhs)] for i in range(cols)]


def residual_sup(ctx, A, X, B):
    """sup-norm of A X - B, for post-solve consistency checks."""
    AX = mat_mul(ctx, A, X)
    return max(
        abs(AX[i][k] - B[i][k]) for i in range(len(B)) for k in range(len(B[0]))
    )
