"""Field-generic reconstruction core: from the tritangent/bitangent exchange
record to the curve {Q = Gamma = 0}.

The steps mirror the classical construction: express the ten products
H_i*H_i' as quadric coefficient vectors, solve the homogeneous system for
the matching scalars lambda_i, interpolate the linear map phi, read the
quadric Q off ker(phi), pick any right inverse psi, assemble the sextic
symmetroid determinant, and extract its square root modulo Q to obtain the
cubic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .errors import (
    DegenerateQuadricError,
    InputError,
    LambdaSolveError,
    NotAPerfectSquareError,
    ProductSpanError,
)
from .forms import HomogeneousForm, monomials, normal_form_mod_quadric

QUADRIC_MONOMIALS_4 = monomials(4, 2)
CONIC_MONOMIALS_3 = monomials(3, 2)


@dataclass
class PhiMap:
    """Matrix of phi on a chosen basis of the product span.

    ``matrix`` is 6x7: rows = conic monomials (t2, tu, tv, u2, uv, v2),
    column j = lambda_{i_j} * coeffs(l_{i_j}^2) for basis index i_j.
    """

    basis_indices: tuple
    matrix: list


@dataclass
class ReconstructionResult:
    Q: HomogeneousForm
    Gamma: HomogeneousForm
    lam: list
    diagnostics: dict = field(default_factory=dict)


def product_span(products, ctx):
    """Greedy basis of the span of the ten products plus its relation space.

    Returns (basis_indices, relations); relations is a basis of
    {c in k^10 : sum c_j P_j = 0}.  Raises ProductSpanError unless the span
    has dimension exactly 7.
    """
    if len(products) != 10:
        raise InputError("expected 10 products, got %d" % len(products))
    rows = [p.coeff_vector() for p in products]
    total_rank = linalg.rank(ctx, rows)
    if total_rank != 7:
        raise ProductSpanError(
            "products span a space of dimension %d, expected 7" % total_rank
        )
    basis = []
    chosen = []
    for i, row in enumerate(rows):
        if len(basis) == 7:
            break
        if linalg.rank(ctx, chosen + [row]) > len(basis):
            basis.append(i)
            chosen.append(row)
    relations = linalg.kernel(ctx, rows, side="left")
    return tuple(basis), relations


def bitangent_square_vector(l):
    """Coefficient 6-vector of l^2 in the conic monomial order."""
    sq = l * l
    return sq.coeff_vector()


def solve_lambda(relations, bitangents, ctx):
    """Solve phi(H_i H_i') = lambda_i l_i^2 for the scalars lambda.

    Builds the 10 x 6r matrix whose block column for relation c maps
    lambda to sum_j c_j lambda_j l_j^2, and returns the left-kernel
    generator normalized so the first nonzero coordinate is 1.
    """
    if not relations:
        raise LambdaSolveError("empty relation space")
    squares = [bitangent_square_vector(l) for l in bitangents]
    M = []
    for j in range(10):
        row = []
        for c in relations:
            row.extend(c[j] * v for v in squares[j])
        M.append(row)
    left = linalg.kernel(ctx, M, side="left")
    if len(left) != 1:
        raise LambdaSolveError(
            "lambda system kernel has dimension %d, expected 1" % len(left)
        )
    return left[0], M


def build_phi(basis_indices, lam, bitangents, ctx):
    squares = [bitangent_square_vector(l) for l in bitangents]
    matrix = [
        [lam[bi] * squares[bi][r] for bi in basis_indices]
        for r in range(6)
    ]
    return PhiMap(basis_indices=tuple(basis_indices), matrix=matrix)


def quadric_from_kernel(phi, products, ctx):
    """Q = the kernel direction of phi expressed in the basis products."""
    ker = linalg.kernel(ctx, phi.matrix, side="right")
    if len(ker) != 1:
        raise LambdaSolveError(
            "ker(phi) has dimension %d, expected 1" % len(ker)
        )
    vec = ker[0]
    Q = HomogeneousForm.zero(products[0].field, 4, 2)
    for coeff, bi in zip(vec, phi.basis_indices):
        Q = Q + products[bi].scale(coeff)
    Q = Q.prune() if ctx.kind == "complex-bigfloat" else Q
    if Q.is_zero():
        raise LambdaSolveError("kernel quadric vanished")
    return Q.monic(), vec


def right_inverse(phi, ctx):
    """Any psi with phi . psi = id; pivot-based over exact fields,
    minimal-norm over the complex field."""
    if linalg.rank(ctx, phi.matrix) != 6:
        raise LambdaSolveError("phi is not surjective")
    return linalg.solve_any(ctx, phi.matrix, linalg.identity(ctx, 6))


def sextic_G(psi, basis_products):
    """Symmetroid sextic from a right inverse.

    v_k = sum_j psi[j][k] * P_{basis_j}; returns
    det [[v1,v2,v3],[v2,v4,v5],[v3,v5,v6]].
    """
    fld = basis_products[0].field
    v = []
    for k in range(6):
        acc = HomogeneousForm.zero(fld, 4, 2)
        for j, P in enumerate(basis_products):
            acc = acc + P.scale(psi[j][k])
        v.append(acc)
    v1, v2, v3, v4, v5, v6 = v
    return (
        v1 * (v4 * v6 - v5 * v5)
        - v2 * (v2 * v6 - v3 * v5)
        + v3 * (v2 * v5 - v3 * v4)
    )


# --- quadric standardization and the square root modulo Q -----------------


def gram_matrix(Q, ctx):
    half = ctx.inv(ctx.from_int(2))
    n = Q.num_vars
    A = [[ctx.zero] * n for _ in range(n)]
    for e, c in Q.coeffs.items():
        idx = [i for i, k in enumerate(e) if k]
        if len(idx) == 1:
            A[idx[0]][idx[0]] = c
        else:
            i, j = idx
            A[i][j] = A[i][j] + half * c
            A[j][i] = A[j][i] + half * c
    return A


def congruence_diagonalize(ctx, A):
    """Invertible C with C^T A C diagonal; returns (C, diag)."""
    n = len(A)
    A = [row[:] for row in A]
    C = linalg.identity(ctx, n)
    complexk = ctx.kind == "complex-bigfloat"
    scale = max((abs(x) for row in A for x in row), default=0) if complexk else None

    def significant(x):
        return not (ctx.is_zero(x, scale) if complexk else ctx.is_zero(x))

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in C:
            row[i], row[j] = row[j], row[i]

    def add_col(j, k, f):
        # basis op c_j += f * c_k ; A gets row and column updates
        for m in range(n):
            A[j][m] = A[j][m] + f * A[k][m]
        for m in range(n):
            A[m][j] = A[m][j] + f * A[m][k]
        for m in range(n):
            C[m][j] = C[m][j] + f * C[m][k]

    for i in range(n):
        # best diagonal pivot
        if complexk:
            j_best = max(range(i, n), key=lambda j: abs(A[j][j]))
        else:
            j_best = next((j for j in range(i, n) if significant(A[j][j])), None)
        if j_best is None or not significant(A[j_best][j_best]):
            # mixed pivot: make a diagonal entry from the largest off-diagonal
            pairs = [(j, k) for j in range(i, n) for k in range(j + 1, n)]
            if complexk:
                pairs.sort(key=lambda jk: -abs(A[jk[0]][jk[1]]))
            pair = next(((j, k) for j, k in pairs if significant(A[j][k])), None)
            if pair is None:
                break  # trailing block is zero
            j, k = pair
            add_col(j, k, ctx.one)
            j_best = j
        if j_best != i:
            swap(i, j_best)
        inv = ctx.inv(A[i][i])
        for j in range(i + 1, n):
            if significant(A[i][j]):
                add_col(j, i, -(A[i][j] * inv))
    return C, [A[i][i] for i in range(n)]


def _matrix_inverse(ctx, M):
    n = len(M)
    return linalg.solve_any(ctx, M, linalg.identity(ctx, n))


def _significant_entries(ctx, d):
    if ctx.kind == "complex-bigfloat":
        scale = max((abs(x) for x in d), default=0)
        return [i for i, x in enumerate(d) if not ctx.is_zero(x, scale)]
    return [i for i, x in enumerate(d) if not ctx.is_zero(x)]


def quadric_standard_frame(Q, ctx):
    """Linear map E with Q(E.X) in Segre normal form.

    Rank 4: Q(E.X) = X0*X3 - X1*X2.  Rank 3: Q(E.X) = X0*X1 - X2^2 with the
    vertex on the X3-axis.  Returns (E, rank).
    """
    A = gram_matrix(Q, ctx)
    C, d = congruence_diagonalize(ctx, A)
    nz = _significant_entries(ctx, d)
    rank = len(nz)
    if rank <= 2:
        raise DegenerateQuadricError("quadric has rank %d <= 2" % rank)
    # permute significant entries to the front
    order = nz + [i for i in range(4) if i not in nz]
    P = [[ctx.one if order[j] == i else ctx.zero for j in range(4)] for i in range(4)]
    C = linalg.mat_mul(ctx, C, P)
    d = [d[i] for i in order]
    # scale away the diagonal entries: z_i = sqrt(d_i) y_i
    S = [[ctx.zero] * 4 for _ in range(4)]
    for i in range(4):
        S[i][i] = ctx.inv(ctx.sqrt(d[i])) if i < rank else ctx.one
    CS = linalg.mat_mul(ctx, C, S)
    ii = ctx.sqrt(ctx.from_int(-1))
    half = ctx.inv(ctx.from_int(2))
    half_i = half * ctx.inv(ii)
    if rank == 4:
        # z0 = (X0+X3)/2, z1 = (X0-X3)/(2i), z2 = (-X1+X2)/2, z3 = -(X1+X2)/(2i)
        N = [
            [half, ctx.zero, ctx.zero, half],
            [half_i, ctx.zero, ctx.zero, -half_i],
            [ctx.zero, -half, half, ctx.zero],
            [ctx.zero, -half_i, -half_i, ctx.zero],
        ]
    else:
        # z0 = (X0+X1)/2, z1 = (X0-X1)/(2i), z2 = -i*X2, z3 = X3
        N = [
            [half, half, ctx.zero, ctx.zero],
            [half_i, -half_i, ctx.zero, ctx.zero],
            [ctx.zero, ctx.zero, -ii, ctx.zero],
            [ctx.zero, ctx.zero, ctx.zero, ctx.one],
        ]
    E = linalg.mat_mul(ctx, CS, N)
    return E, rank


def _binary_mul(ctx, a, b):
    out = [ctx.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _binary_scale(ctx, a, s):
    return [s * x for x in a]


def _binary_sub(ctx, a, b):
    n = max(len(a), len(b))
    a = a + [ctx.zero] * (n - len(a))
    b = b + [ctx.zero] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _binary_is_zero(ctx, a, scale):
    if ctx.kind == "complex-bigfloat":
        return all(ctx.is_zero(x, scale) for x in a)
    return all(ctx.is_zero(x) for x in a)


def _binary_sqrt(ctx, b, scale):
    """Square root of a binary form given as descending coefficients.

    b[0] (the head) must be significant; returns c with c*c = b, raising
    NotAPerfectSquareError when the remainder does not vanish.
    """
    if len(b) % 2 == 0:
        raise InputError("binary form of odd degree cannot be a square")
    d = (len(b) - 1) // 2
    c = [ctx.zero] * (d + 1)
    c[0] = ctx.sqrt(b[0])
    inv2c0 = ctx.inv(ctx.from_int(2) * c[0])
    for k in range(1, d + 1):
        acc = b[k]
        for r in range(1, k):
            acc = acc - c[r] * c[k - r]
        c[k] = acc * inv2c0
    check = _binary_sub(ctx, _binary_mul(ctx, c, c), b)
    if not _binary_is_zero(ctx, check, scale):
        raise NotAPerfectSquareError("binary form is not a perfect square")
    return c


def _binary_div(ctx, a, b, scale):
    """Exact division of binary forms (descending coeffs, b[0] significant)."""
    if len(a) < len(b):
        if _binary_is_zero(ctx, a, scale):
            return [ctx.zero]
        raise NotAPerfectSquareError("inexact binary division")
    q = [ctx.zero] * (len(a) - len(b) + 1)
    r = a[:]
    inv_head = ctx.inv(b[0])
    for i in range(len(q)):
        f = r[i] * inv_head
        q[i] = f
        for j, y in enumerate(b):
            r[i + j] = r[i + j] - f * y
    if not _binary_is_zero(ctx, r, scale):
        raise NotAPerfectSquareError("inexact binary division")
    return q


_SHEAR_CANDIDATES = (0, 1, -1, 2, -2, 3, -3, 5)


def _segre_shear(ctx, alpha, beta):
    """The PGL2 x PGL2 shear (s,t,u,v) -> (s, t+alpha*s, u, v+beta*u) as a
    linear map on (X0..X3) preserving X0*X3 - X1*X2."""
    a = ctx.coerce(ctx.from_int(alpha) if isinstance(alpha, int) else alpha)
    b = ctx.coerce(ctx.from_int(beta) if isinstance(beta, int) else beta)
    # X0 -> s*u = X0 ; X1 -> s*(v+b*u) = X1 + b X0
    # X2 -> (t+a*s)*u = X2 + a X0 ; X3 -> (t+a*s)(v+b*u) = X3 + b X2 + a X1 + a*b X0
    E = linalg.identity(ctx, 4)
    E[0] = [ctx.one, ctx.zero, ctx.zero, ctx.zero]
    E[1] = [b, ctx.one, ctx.zero, ctx.zero]
    E[2] = [a, ctx.zero, ctx.one, ctx.zero]
    E[3] = [a * b, b, a, ctx.one]
    # columns = images: build matrix M with X_new = M . X_old acting on forms
    return linalg.transpose(E)


def _cone_shear(ctx, alpha, delta):
    """(s,t,w) -> (s, t+alpha*s, w+delta*s^2) as a linear map on X
    preserving X0*X1 - X2^2."""
    a = ctx.from_int(alpha)
    dl = ctx.from_int(delta)
    # X0 -> s^2 = X0 ; X1 -> (t+a s)^2 = X1 + 2a X2 + a^2 X0
    # X2 -> (t+a s) s = X2 + a X0 ; X3 -> w + d s^2 = X3 + d X0
    two = ctx.from_int(2)
    rows = [
        [ctx.one, ctx.zero, ctx.zero, ctx.zero],
        [a * a, ctx.one, two * a, ctx.zero],
        [a, ctx.zero, ctx.one, ctx.zero],
        [dl, ctx.zero, ctx.zero, ctx.one],
    ]
    return linalg.transpose(rows)


def _pullback_segre(G_X):
    """B[k][m]: coefficient of s^(6-k) t^k u^(6-m) v^m under
    (X0,X1,X2,X3) = (su, sv, tu, tv)."""
    fld = G_X.field
    B = [[fld.zero] * 7 for _ in range(7)]
    for e, c in G_X.coeffs.items():
        k = e[2] + e[3]
        m = e[1] + e[3]
        B[k][m] = B[k][m] + c
    return B


def _pullback_cone(G_X):
    """B[m] = binary form (descending s-coeffs, degree 12-2m) of w^m under
    (X0,X1,X2,X3) = (s^2, t^2, s t, w)."""
    fld = G_X.field
    B = [[fld.zero] * (13 - 2 * m) for m in range(7)]
    for e, c in G_X.coeffs.items():
        m = e[3]
        t_deg = 2 * e[1] + e[2]
        B[m][t_deg] = B[m][t_deg] + c
    return B


def _sqrt_bidegree(ctx, B, scale):
    """Square root of a bidegree-(6,6) form given as B[k][m]; returns the
    (3,3) root as C[k][m] (k = t-degree, m = v-degree)."""
    rows = [B[k] for k in range(7)]  # each a binary (u,v) form, descending u
    if _binary_is_zero(ctx, rows[0], scale):
        raise NotAPerfectSquareError("degenerate leading coefficient")
    c = [None] * 4
    c[0] = _binary_sqrt(ctx, rows[0], scale)
    two_c0 = _binary_scale(ctx, c[0], ctx.from_int(2))
    for k in range(1, 4):
        acc = rows[k][: 7]
        for r in range(1, k):
            acc = _binary_sub(ctx, acc, _binary_mul(ctx, c[r], c[k - r]))
        c[k] = _binary_div(ctx, acc, two_c0, scale)
        c[k] = c[k] + [ctx.zero] * (4 - len(c[k]))
    for k in range(4, 7):
        acc = rows[k][:]
        for r in range(k - 3, 4):
            if 0 <= k - r <= 3:
                acc = _binary_sub(ctx, acc, _binary_mul(ctx, c[r], c[k - r]))
        if not _binary_is_zero(ctx, acc, scale):
            raise NotAPerfectSquareError("sextic is not a square on the quadric")
    return c


def _sqrt_cone(ctx, B, scale):
    """Square root for the cone pullback: B[m] (m = w-degree, binary forms of
    degree 12-2m); returns C[m], m = 0..3, of degree 6-2m."""
    if _binary_is_zero(ctx, B[0], scale):
        raise NotAPerfectSquareError("degenerate leading coefficient")
    c = [None] * 4
    c[0] = _binary_sqrt(ctx, B[0], scale)
    two_c0 = _binary_scale(ctx, c[0], ctx.from_int(2))
    for m in range(1, 4):
        acc = B[m][:]
        for r in range(1, m):
            acc = _binary_sub(ctx, acc, _binary_mul(ctx, c[r], c[m - r]))
        c[m] = _binary_div(ctx, acc, two_c0, scale)
        want = 7 - 2 * m
        c[m] = c[m] + [ctx.zero] * (want - len(c[m]))
    for m in range(4, 7):
        acc = B[m][:]
        for r in range(m - 3, 4):
            if 0 <= m - r <= 3:
                acc = _binary_sub(ctx, acc, _binary_mul(ctx, c[r], c[m - r]))
        if not _binary_is_zero(ctx, acc, scale):
            raise NotAPerfectSquareError("sextic is not a square on the cone")
    return c


def _lift_cubic_segre(ctx, fld, C):
    """Cubic in X with pullback equal to the (3,3) root C."""
    cubics = monomials(4, 3)
    rows = []
    rhs = []
    for k in range(4):
        for m in range(4):
            row = []
            for e in cubics:
                hit = (e[2] + e[3] == k) and (e[1] + e[3] == m)
                row.append(ctx.one if hit else ctx.zero)
            rows.append(row)
            rhs.append([C[k][m]])
    sol = linalg.solve_any(ctx, rows, rhs)
    coeffs = {e: sol[i][0] for i, e in enumerate(cubics)}
    return HomogeneousForm(fld, 4, 3, coeffs)


def _lift_cubic_cone(ctx, fld, C):
    cubics = monomials(4, 3)
    rows = []
    rhs = []
    for m in range(4):
        deg = 6 - 2 * m
        for j in range(deg + 1):  # j = t-degree index (descending s)
            row = []
            for e in cubics:
                hit = (e[3] == m) and (2 * e[1] + e[2] == j)
                row.append(ctx.one if hit else ctx.zero)
            rows.append(row)
            rhs.append([C[m][j]])
    sol = linalg.solve_any(ctx, rows, rhs)
    coeffs = {e: sol[i][0] for i, e in enumerate(cubics)}
    return HomogeneousForm(fld, 4, 3, coeffs)


def _clear_extension(Gamma, ctx):
    """Final results over a prime field must live in the base field."""
    if ctx.kind != "prime-field":
        return Gamma
    cleaned = {}
    for e, c in Gamma.coeffs.items():
        if c.b != 0:
            raise NotAPerfectSquareError(
                "cubic root has coefficients outside the base field"
            )
        cleaned[e] = c
    return Gamma


def sqrt_mod_quadric(G, Q):
    """Cubic Gamma with Gamma^2 = G/lc(G) modulo Q, monic, canonical NF.

    Q must have rank 3 or 4 as a symmetric form; G must not vanish mod Q.
    Raises NotAPerfectSquareError when no square root exists.
    """
    ctx = G.field
    if G.degree != 6 or Q.degree != 2:
        raise InputError("need a sextic and a quadric")
    G = G.monic()
    E, rnk = quadric_standard_frame(Q, ctx)
    cone = rnk == 3
    shear = _cone_shear if cone else _segre_shear
    pullback = _pullback_cone if cone else _pullback_segre
    take_root = _sqrt_cone if cone else _sqrt_bidegree

    last_error = None
    for alpha in _SHEAR_CANDIDATES:
        for beta in _SHEAR_CANDIDATES:
            L = shear(ctx, alpha, beta)
            EL = linalg.mat_mul(ctx, E, L)
            G_X = G.substitute_linear(EL)
            B = pullback(G_X)
            scale = G_X.max_abs() if ctx.kind == "complex-bigfloat" else None
            head = B[0][0]
            hscale = scale if scale is not None else None
            significant = (
                not ctx.is_zero(head, hscale)
                if ctx.kind == "complex-bigfloat"
                else not ctx.is_zero(head)
            )
            if not significant:
                continue
            try:
                C = take_root(ctx, B, scale)
            except NotAPerfectSquareError as exc:
                last_error = exc
                continue
            lift = (_lift_cubic_cone if cone else _lift_cubic_segre)(ctx, ctx, C)
            lift = HomogeneousForm(G.field, 4, 3, lift.coeffs)
            EL_inv = _matrix_inverse(ctx, EL)
            Gamma = lift.substitute_linear(EL_inv)
            Gamma = normal_form_mod_quadric(Gamma, Q)
            if ctx.kind == "complex-bigfloat":
                Gamma = Gamma.prune()
            if Gamma.is_zero():
                raise NotAPerfectSquareError("square root lies in (Q)")
            Gamma = _clear_extension(Gamma.monic(), ctx)
            return Gamma
    if last_error is not None:
        raise last_error
    raise NotAPerfectSquareError("no usable shear frame found for the quadric")


def perfect_square_residual(Gamma, G, Q):
    """Certificate: NF(Gamma^2 - G/lc(G)) mod Q, reported as a sup norm
    (exact zero over prime fields)."""
    ctx = G.field
    diff = normal_form_mod_quadric(Gamma * Gamma - G.monic(), Q)
    if ctx.kind == "prime-field":
        return 0 if diff.is_zero() else 1
    scale = max(G.monic().max_abs(), 1)
    return float(diff.max_abs() / scale)


def reconstruct(data):
    """Run the full algebraic pipeline on an exchange record.

    ``data`` needs attributes ``field`` (context), ``products`` (10 quadrics
    in x,y,z,w) and ``bitangents`` (10 linear forms in t,u,v).
    """
    ctx = data.field
    products = list(data.products)
    bitangents = list(data.bitangents)
    basis, relations = product_span(products, ctx)
    lam, lam_matrix = solve_lambda(relations, bitangents, ctx)
    phi = build_phi(basis, lam, bitangents, ctx)
    Q, kernel_vec = quadric_from_kernel(phi, products, ctx)
    psi = right_inverse(phi, ctx)
    basis_products = [products[i] for i in basis]
    G = sextic_G(psi, basis_products)
    Gamma = sqrt_mod_quadric(G, Q)

    diagnostics = {
        "span_dim": 7,
        "relation_dim": len(relations),
        "lambda_kernel_dim": 1,
        "phi_kernel_dim": 1,
        "basis_indices": [i + 1 for i in basis],
        "milne_residuals": milne_residuals(phi, products, bitangents, lam, ctx),
        "perfect_square_residual": perfect_square_residual(Gamma, G, Q),
        "quadric_rank": 4 if len(_significant_entries(
            ctx, congruence_diagonalize(ctx, gram_matrix(Q, ctx))[1])) == 4 else 3,
    }
    return ReconstructionResult(Q=Q, Gamma=Gamma, lam=lam, diagnostics=diagnostics)


def milne_residuals(phi, products, bitangents, lam, ctx):
    """For each i: residual of phi(H_i H_i') = lambda_i l_i^2.

    Products are first expressed in the chosen basis (exactly over prime
    fields, least squares over the complex field); the three non-basis
    indices are genuine consistency checks.
    """
    basis_rows = [products[i].coeff_vector() for i in phi.basis_indices]
    A = linalg.transpose(basis_rows)
    residuals = []
    for i in range(10):
        b = [[x] for x in products[i].coeff_vector()]
        coords = linalg.solve_any(ctx, A, b)
        image = linalg.mat_vec(ctx, phi.matrix, [row[0] for row in coords])
        target = [lam[i] * v for v in bitangent_square_vector(bitangents[i])]
        diff = [x - y for x, y in zip(image, target)]
        if ctx.kind == "prime-field":
            residuals.append(0 if all(ctx.is_zero(x) for x in diff) else 1)
        else:
            scale = max(max(abs(t) for t in target), 1)
            residuals.append(float(max(abs(x) for x in diff) / scale))
    return residuals
