"""Homogeneous multivariate polynomials over a generic field context.

Forms are stored densely enough for this pipeline (degree <= 6, at most 84
monomials in 4 variables) as a dict mapping exponent tuples to field
elements.  The monomial order everywhere is graded lexicographic with
x > y > z > w (4 variables) and t > u > v (3 variables); for quadrics this
yields the coefficient vectors (x2, xy, xz, xw, y2, yz, yw, z2, zw, w2) and
(t2, tu, tv, u2, uv, v2) used by the linear algebra downstream.
"""

from __future__ import annotations

import itertools

from .errors import InputError

VARIABLE_NAMES = {3: ("t", "u", "v"), 4: ("x", "y", "z", "w")}


def monomials(num_vars: int, degree: int):
    """All exponent tuples of the given degree, in descending grlex order."""
    exps = [
        e
        for e in itertools.product(range(degree + 1), repeat=num_vars)
        if sum(e) == degree
    ]
    exps.sort(reverse=True)
    return exps


class HomogeneousForm:
    """Homogeneous polynomial; the zero form has an empty coefficient map."""

    __slots__ = ("field", "num_vars", "degree", "coeffs")

    def __init__(self, field, num_vars, degree, coeffs=None):
        self.field = field
        self.num_vars = num_vars
        self.degree = degree
        self.coeffs = {}
        for e, c in (coeffs or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != num_vars or sum(e) != degree or min(e) < 0:
                raise InputError("exponent %r invalid for degree %d in %d vars"
                                 % (e, degree, num_vars))
            c = field.coerce(c)
            if not _exact_zero(c):
                self.coeffs[e] = c

    @classmethod
    def zero(cls, field, num_vars, degree):
        return cls(field, num_vars, degree, {})

    @classmethod
    def variable(cls, field, num_vars, i):
        e = tuple(1 if j == i else 0 for j in range(num_vars))
        return cls(field, num_vars, 1, {e: field.one})

    @classmethod
    def from_coeff_vector(cls, field, num_vars, degree, vec):
        mons = monomials(num_vars, degree)
        if len(vec) != len(mons):
            raise InputError("expected %d coefficients, got %d" % (len(mons), len(vec)))
        return cls(field, num_vars, degree, dict(zip(mons, vec)))

    def coeff_vector(self):
        """Coefficients in descending grlex order (zero-filled)."""
        z = self.field.zero
        return [self.coeffs.get(e, z) for e in monomials(self.num_vars, self.degree)]

    def coefficient(self, exponent):
        return self.coeffs.get(tuple(exponent), self.field.zero)

    def is_zero(self):
        return not self.coeffs

    def max_abs(self):
        """Largest coefficient magnitude (complex contexts only)."""
        return max((abs(c) for c in self.coeffs.values()), default=0)

    # ring operations ------------------------------------------------------

    def _check_compatible(self, other, same_degree):
        if self.num_vars != other.num_vars:
            raise InputError("mismatched number of variables")
        if same_degree and self.degree != other.degree:
            raise InputError("mismatched degrees")

    def __add__(self, other):
        self._check_compatible(other, same_degree=True)
        c = dict(self.coeffs)
        for e, v in other.coeffs.items():
            c[e] = c[e] + v if e in c else v
        return HomogeneousForm(self.field, self.num_vars, self.degree, c)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(self.field.from_int(-1))

    def scale(self, s):
        s = self.field.coerce(s)
        return HomogeneousForm(
            self.field, self.num_vars, self.degree,
            {e: s * c for e, c in self.coeffs.items()},
        )

    def __mul__(self, other):
        self._check_compatible(other, same_degree=False)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return HomogeneousForm(self.field, self.num_vars,
                               self.degree + other.degree, out)

    def evaluate(self, point):
        if len(point) != self.num_vars:
            raise InputError("point has wrong dimension")
        total = self.field.zero
        for e, c in self.coeffs.items():
            term = c
            for xi, ei in zip(point, e):
                for _ in range(ei):
                    term = term * xi
            total = total + term
        return total

    def partial(self, i):
        """Formal partial derivative with respect to variable i."""
        out = {}
        for e, c in self.coeffs.items():
            if e[i] == 0:
                continue
            e2 = tuple(x - 1 if j == i else x for j, x in enumerate(e))
            out[e2] = self.field.from_int(e[i]) * c
        return HomogeneousForm(self.field, self.num_vars,
                               max(self.degree - 1, 0), out)

    def substitute_linear(self, T):
        """f(T.x): replace variable i by the linear form sum_j T[i][j] x_j."""
        n = self.num_vars
        if len(T) != n or any(len(row) != n for row in T):
            raise InputError("substitution matrix must be %dx%d" % (n, n))
        images = [
            HomogeneousForm(self.field, n, 1,
                            {tuple(1 if k == j else 0 for k in range(n)):
                             self.field.coerce(T[i][j])
                             for j in range(n)})
            for i in range(n)
        ]
        result = HomogeneousForm.zero(self.field, n, self.degree)
        one = HomogeneousForm(self.field, n, 0, {(0,) * n: self.field.one})
        for e, c in self.coeffs.items():
            term = one
            for i, ei in enumerate(e):
                for _ in range(ei):
                    term = term * images[i]
            result = result + term.scale(c)
        return result

    # normalization and comparison ----------------------------------------

    def leading_monomial(self, threshold_scale=None):
        """Largest grlex monomial with a non-negligible coefficient."""
        if not self.coeffs:
            return None
        if self.field.kind == "complex-bigfloat":
            scale = threshold_scale if threshold_scale is not None else self.max_abs()
            live = [e for e, c in self.coeffs.items()
                    if not self.field.is_zero(c, scale)]
            return max(live) if live else None
        return max(self.coeffs)

    def monic(self):
        lm = self.leading_monomial()
        if lm is None:
            return self
        return self.scale(self.field.inv(self.coeffs[lm]))

    def normalized_first_nonzero(self):
        """Scale so the first (grlex-largest) significant coefficient is 1."""
        return self.monic()

    def prune(self, scale=None):
        """Drop coefficients below the context threshold (complex only)."""
        if self.field.kind != "complex-bigfloat":
            return self
        scale = scale if scale is not None else self.max_abs()
        keep = {e: c for e, c in self.coeffs.items()
                if not self.field.is_zero(c, scale)}
        return HomogeneousForm(self.field, self.num_vars, self.degree, keep)

    def __eq__(self, other):
        return (
            isinstance(other, HomogeneousForm)
            and self.num_vars == other.num_vars
            and self.degree == other.degree
            and (self - other).is_zero()
        )

    def __hash__(self):
        raise TypeError("forms are not hashable")

    def __repr__(self):
        if not self.coeffs:
            return "0"
        names = VARIABLE_NAMES.get(self.num_vars,
                                   tuple("x%d" % i for i in range(self.num_vars)))
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            mono = "*".join(
                n if k == 1 else "%s^%d" % (n, k)
                for n, k in zip(names, e) if k
            )
            c = self.coeffs[e]
            parts.append("(%s)%s" % (c, "*" + mono if mono else ""))
        return " + ".join(parts)

    # serialization --------------------------------------------------------

    def to_json(self):
        names = VARIABLE_NAMES.get(self.num_vars,
                                   tuple("x%d" % i for i in range(self.num_vars)))
        terms = []
        for e in sorted(self.coeffs, reverse=True):
            entry = {"exp": list(e)}
            entry.update(self.field.coeff_to_json(self.coeffs[e]))
            terms.append(entry)
        return {"vars": list(names), "degree": self.degree, "terms": terms}

    @classmethod
    def from_json(cls, field, obj):
        try:
            nv = len(obj["vars"])
            degree = int(obj["degree"])
            terms = obj["terms"]
        except (KeyError, TypeError) as exc:
            raise InputError("malformed form object: %r" % (obj,)) from exc
        coeffs = {}
        for t in terms:
            e = tuple(int(x) for x in t["exp"])
            coeffs[e] = field.coeff_from_json(t)
        return cls(field, nv, degree, coeffs)


def _exact_zero(c):
    try:
        return c == 0
    except TypeError:
        return False


def forms_close(f, g, tol, scale=None):
    """Coefficientwise |f - g| <= tol * scale (complex contexts)."""
    d = f - g
    if scale is None:
        scale = max(f.max_abs(), g.max_abs(), 1)
    return all(abs(c) <= tol * scale for c in d.coeffs.values())


def normal_form_mod_quadric(f, Q, with_witness=False):
    """Reduce f modulo the principal ideal (Q).

    Division by the single generator Q with respect to the global grlex
    order: no monomial of the result is divisible by the pivot (the leading
    monomial of Q), and f = NF + Q*g for the returned witness g.  Q must
    contain at least one mixed monomial x_a*x_b (a != b) with an invertible
    coefficient.
    """
    if Q.degree != 2 or Q.num_vars != f.num_vars:
        raise InputError("modulus must be a quadric in the same variables")
    scale = Q.max_abs() if Q.field.kind == "complex-bigfloat" else None
    if not any(
        max(e) == 1 and not (Q.field.is_zero(c, scale) if scale is not None else False)
        for e, c in Q.coeffs.items()
    ):
        raise InputError("quadric has no usable mixed monomial")
    pivot = Q.leading_monomial()
    inv_lead = Q.field.inv(Q.coeffs[pivot])
    rest = HomogeneousForm(
        Q.field, Q.num_vars, 2,
        {e: c for e, c in Q.coeffs.items() if e != pivot},
    )
    field = f.field
    work = HomogeneousForm(field, f.num_vars, f.degree, dict(f.coeffs))
    witness = HomogeneousForm.zero(field, f.num_vars, max(f.degree - 2, 0))
    fscale = f.max_abs() if field.kind == "complex-bigfloat" else None
    while True:
        target = None
        for e in sorted(work.coeffs, reverse=True):
            if all(ei >= pi for ei, pi in zip(e, pivot)):
                if fscale is not None and field.is_zero(work.coeffs[e], fscale):
                    continue
                target = e
                break
        if target is None:
            break
        c = work.coeffs[target] * inv_lead
        quot_exp = tuple(ei - pi for ei, pi in zip(target, pivot))
        quot = HomogeneousForm(field, f.num_vars, sum(quot_exp), {quot_exp: c})
        # work -= c * x^(target - pivot) * Q
        work = work - quot * HomogeneousForm(field, f.num_vars, 2,
                                             {pivot: Q.coeffs[pivot]})
        work = work - quot * rest
        witness = witness + quot
        if fscale is not None:
            work = work.prune(fscale)
    if with_witness:
        return work, witness
    return work
