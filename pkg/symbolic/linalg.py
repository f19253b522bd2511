"""
Exact dense linear algebra over rationals and extension towers.

Matrices hold ``QQ`` elements or ``TowerElem`` values. Row reduction is
Gauss-Jordan; large all-rational matrices go through fraction-free
(Bareiss) forward elimination first. Divisions by tower elements may raise
``SplitEvent``; the routines that own a tower (``eigen_decompose``,
``simultaneous_diagonalizer``) resolve splits and rerun.
"""

import logging
import random
from functools import reduce
from math import gcd

from sympy import QQ
from sympy import Poly as SympyPoly
from sympy import Symbol

from symbolic.conf import get_setting
from symbolic.exactnum import (
    ONE,
    ZERO,
    SplitEvent,
    TowerElem,
    UPoly,
    deepest_tower,
    embed,
    format_scalar,
    is_squarefree,
    rational,
    scalar_inverse,
    squarefree_part,
    tower_adjoin,
)
from symbolic.exceptions import (
    DimensionMismatchError,
    NotDiagonalizableError,
    NotSquareError,
    RetryBudgetExceeded,
    SingularMatrixError,
    ToricityError,
)

logger = logging.getLogger(__name__)

COEFFICIENT_POOL = (
    ZERO,
    QQ(1, 2),
    QQ(-1, 2),
    ONE,
    -ONE,
    QQ(2),
    QQ(-2),
)


def random_coefficient(rng):
    return rng.choice(COEFFICIENT_POOL)


def _scalar(value):
    if isinstance(value, int):
        return QQ(value)
    return value


# =============================================================================
# Dense matrices
# =============================================================================


class ExactMatrix:
    """Immutable dense matrix with exact scalar entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data, rows=None, cols=None):
        data = [tuple(_scalar(x) for x in row) for row in data]
        self.rows = len(data) if rows is None else rows
        if cols is None:
            cols = len(data[0]) if data else 0
        self.cols = cols
        if len(data) != self.rows or any(len(row) != cols for row in data):
            raise DimensionMismatchError("ragged matrix data")
        self._data = tuple(data)

    @classmethod
    def zeros(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diagonal(cls, values):
        n = len(values)
        return cls([[values[i] if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls([[col[i] for col in columns] for i in range(rows)], rows, len(columns))

    @classmethod
    def from_vector(cls, vector, rows, cols):
        vector = list(vector)
        if len(vector) != rows * cols:
            raise DimensionMismatchError("vector length does not match the shape")
        return cls([vector[i * cols : (i + 1) * cols] for i in range(rows)], rows, cols)

    @classmethod
    def unit(cls, n, i, j):
        """The matrix unit with a single 1 at ``(i, j)``."""
        return cls([[ONE if (r, c) == (i, j) else ZERO for c in range(n)] for r in range(n)], n, n)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, index):
        i, j = index
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def column(self, j):
        return tuple(row[j] for row in self._data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self):
        return [list(row) for row in self._data]

    def entries(self):
        return [x for row in self._data for x in row]

    def vectorize(self):
        """Row-major entry vector."""
        return tuple(self.entries())

    def is_square(self):
        return self.rows == self.cols

    def _require_square(self):
        if not self.is_square():
            raise NotSquareError(f"expected a square matrix, got {self.rows}x{self.cols}")

    def tower(self):
        return deepest_tower(self.entries())

    def map(self, fn):
        return ExactMatrix([[fn(x) for x in row] for row in self._data], self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(a == b for ra, rb in zip(self._data, other._data) for a, b in zip(ra, rb))

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        body = "; ".join(", ".join(format_scalar(x) for x in row) for row in self._data)
        return f"ExactMatrix([{body}])"

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatchError("matrix shapes differ")
        return ExactMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._data, other._data)],
            self.rows,
            self.cols,
        )

    def __sub__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatchError("matrix shapes differ")
        return ExactMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._data, other._data)],
            self.rows,
            self.cols,
        )

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, other):
        if not isinstance(other, ExactMatrix):
            other = _scalar(other)
            return self.map(lambda x: x * other)
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = []
        for row in self._data:
            acc = [ZERO] * other.cols
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in enumerate(other._data[k]):
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return ExactMatrix(out, self.rows, other.cols)

    __matmul__ = __mul__

    def __rmul__(self, other):
        other = _scalar(other)
        return self.map(lambda x: other * x)

    def apply(self, vector):
        """Matrix times column vector, returned as a tuple."""
        if len(vector) != self.cols:
            raise DimensionMismatchError("vector length does not match")
        out = []
        for row in self._data:
            acc = ZERO
            for a, b in zip(row, vector):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def transpose(self):
        return ExactMatrix(
            [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.cols,
            self.rows,
        )

    def trace(self):
        self._require_square()
        return reduce(lambda acc, i: acc + self._data[i][i], range(self.rows), ZERO)

    def is_zero(self):
        return not any(x for row in self._data for x in row)

    def is_diagonal(self):
        return all(
            not self._data[i][j] for i in range(self.rows) for j in range(self.cols) if i != j
        )

    def power(self, exponent):
        self._require_square()
        result = ExactMatrix.identity(self.rows)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def submatrix(self, rows, cols):
        return ExactMatrix([[self._data[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionMismatchError("row counts differ")
        return ExactMatrix(
            [ra + rb for ra, rb in zip(self._data, other._data)], self.rows, self.cols + other.cols
        )

    def rank(self):
        return len(rref_and_kernel(self)[1])

    def kernel(self):
        return rref_and_kernel(self)[2]

    def inverse(self):
        self._require_square()
        n = self.rows
        reduced, pivots, _ = rref_and_kernel(self.hstack(ExactMatrix.identity(n)))
        if tuple(pivots[:n]) != tuple(range(n)):
            raise SingularMatrixError("matrix is singular")
        return reduced.submatrix(range(n), range(n, 2 * n))

    def det(self):
        """Division-free determinant from the characteristic polynomial."""
        self._require_square()
        constant = char_poly(self).coeff(0)
        return constant if self.rows % 2 == 0 else -constant


# =============================================================================
# Row reduction
# =============================================================================


def _is_all_rational(matrix):
    return not any(isinstance(x, TowerElem) for x in matrix.entries())


def rref_and_kernel(matrix):
    """
    Reduced row echelon form, pivot columns and a kernel basis.

    Kernel vectors have a 1 in their free column and satisfy ``M v = 0``.
    """
    rows, cols = matrix.shape
    if rows * cols > get_setting("BAREISS_THRESHOLD") and _is_all_rational(matrix):
        reduced, pivots = _rref_fraction_free(matrix)
    else:
        reduced, pivots = _rref_gauss_jordan(matrix)
    rref = ExactMatrix(reduced + [[ZERO] * cols for _ in range(rows - len(reduced))], rows, cols)
    return rref, tuple(pivots), _kernel_from_rref(reduced, pivots, cols)


def _rref_gauss_jordan(matrix):
    a = matrix.to_lists()
    rows, cols = matrix.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = scalar_inverse(a[r][c])
        a[r] = [x * inv if x else x for x in a[r]]
        pivot_row = a[r]
        for i in range(rows):
            if i != r and a[i][c]:
                factor = a[i][c]
                a[i] = [x - factor * y if y else x for x, y in zip(a[i], pivot_row)]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _rref_fraction_free(matrix):
    rows, cols = matrix.shape
    a = []
    for row in matrix.to_lists():
        den = reduce(_lcm, (QQ.denom(x) for x in row), 1)
        a.append([int(QQ.numer(x) * (den // QQ.denom(x))) for x in row])
    prev = 1
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        pivot_row = a[r]
        for i in range(r + 1, rows):
            row_i = a[i]
            lead = row_i[c]
            for j in range(c + 1, cols):
                row_i[j] = (piv * row_i[j] - lead * pivot_row[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    reduced = [[QQ(x) for x in row] for row in a[:r]]
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        inv = ONE / reduced[k][c]
        reduced[k] = [x * inv for x in reduced[k]]
        for i in range(k):
            factor = reduced[i][c]
            if factor:
                reduced[i] = [x - factor * y for x, y in zip(reduced[i], reduced[k])]
    return reduced, pivots


def _lcm(a, b):
    return a * b // gcd(a, b)


def _kernel_from_rref(reduced, pivots, cols):
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        vector = [ZERO] * cols
        vector[free] = ONE
        for k, p in enumerate(pivots):
            entry = reduced[k][free]
            if entry:
                vector[p] = -entry
        basis.append(tuple(vector))
    return basis


class SparseEchelon:
    """
    Incremental reduced row echelon form of sparse rows.

    Rows are dicts ``column -> scalar``. ``lead`` picks the pivot column of
    a new row from its support (``min`` for unknown indices, the monomial
    order maximum for polynomial coefficient vectors).
    """

    def __init__(self, lead=min):
        self.lead = lead
        self.rows = {}

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vector):
        v = {c: x for c, x in vector.items() if x}
        for col in [c for c in v if c in self.rows]:
            coeff = v.get(col)
            if not coeff:
                continue
            for c, x in self.rows[col].items():
                value = v.get(c, ZERO) - coeff * x
                if value:
                    v[c] = value
                else:
                    v.pop(c, None)
        return v

    def add(self, vector):
        """Insert a row; returns True when the rank grew."""
        v = self.reduce(vector)
        if not v:
            return False
        pivot = self.lead(v.keys())
        inv = scalar_inverse(v[pivot])
        v = {c: x * inv for c, x in v.items()}
        for row in self.rows.values():
            factor = row.get(pivot)
            if not factor:
                continue
            for c, x in v.items():
                value = row.get(c, ZERO) - factor * x
                if value:
                    row[c] = value
                else:
                    row.pop(c, None)
        self.rows[pivot] = v
        return True

    def contains(self, vector):
        return not self.reduce(vector)

    def kernel(self, ncols):
        """Null space basis of the row space, over columns ``0..ncols-1``."""
        basis = []
        for free in range(ncols):
            if free in self.rows:
                continue
            vector = {free: ONE}
            for pivot, row in self.rows.items():
                entry = row.get(free)
                if entry:
                    vector[pivot] = -entry
            basis.append(vector)
        return basis


def span_basis(vectors, length):
    """Row-reduced basis (dense tuples) of the span of ``vectors``."""
    echelon = SparseEchelon()
    for vector in vectors:
        echelon.add({i: x for i, x in enumerate(vector) if x})
    basis = []
    for pivot in sorted(echelon.rows):
        row = echelon.rows[pivot]
        basis.append(tuple(row.get(i, ZERO) for i in range(length)))
    return basis


# =============================================================================
# Polynomials of matrices
# =============================================================================


def char_poly(matrix):
    """Monic ``det(tI - M)`` by the division-free Berkowitz recursion."""
    matrix._require_square()
    n = matrix.rows
    if n == 0:
        return UPoly([ONE])
    a = matrix.to_lists()
    vector = [ONE, -a[n - 1][n - 1]]
    for k in range(n - 2, -1, -1):
        m = n - k
        top = a[k][k]
        row = a[k][k + 1 :]
        col = [a[i][k] for i in range(k + 1, n)]
        sub = [r[k + 1 :] for r in a[k + 1 :]]
        first_column = [ONE, -top]
        v = col
        for _ in range(m - 1):
            acc = ZERO
            for x, y in zip(row, v):
                if x and y:
                    acc = acc + x * y
            first_column.append(-acc)
            v = [_dot(r, v) for r in sub]
        out = []
        for i in range(m + 1):
            acc = ZERO
            for j in range(min(i, m - 1) + 1):
                x = first_column[i - j]
                y = vector[j]
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        vector = out
    return UPoly.from_high(vector)


def _dot(u, v):
    acc = ZERO
    for x, y in zip(u, v):
        if x and y:
            acc = acc + x * y
    return acc


def evaluate_at(poly, matrix):
    """``p(M)`` by Horner's rule."""
    matrix._require_square()
    n = matrix.rows
    identity = ExactMatrix.identity(n)
    result = ExactMatrix.zeros(n)
    for c in reversed(poly.coeffs):
        result = result * matrix + identity * c
    return result


def min_poly(matrix):
    """Monic minimal polynomial: first dependency among I, M, M^2, ..."""
    matrix._require_square()
    n = matrix.rows
    powers = [ExactMatrix.identity(n).vectorize()]
    current = ExactMatrix.identity(n)
    for k in range(1, n + 1):
        current = current * matrix
        powers.append(current.vectorize())
        system = ExactMatrix.from_columns(powers, n * n)
        kernel = rref_and_kernel(system)[2]
        if kernel:
            relation = kernel[0]
            inv = scalar_inverse(relation[k])
            return UPoly([x * inv for x in relation])
    raise ToricityError("no polynomial relation found up to the matrix size")


def jordan_chevalley(matrix):
    """
    Split ``M = s + n`` with ``s`` semisimple, ``n`` nilpotent, ``sn = ns``.

    Newton iteration on the squarefree part ``q`` of the characteristic
    polynomial: ``s <- s - q(s) q'(s)^-1`` until ``q(s) = 0``.
    """
    matrix._require_square()
    q = squarefree_part(char_poly(matrix))
    dq = q.derivative()
    semisimple = matrix
    for _ in range(matrix.rows.bit_length() + 2):
        residue = evaluate_at(q, semisimple)
        if residue.is_zero():
            break
        semisimple = semisimple - residue * evaluate_at(dq, semisimple).inverse()
    else:
        if not evaluate_at(q, semisimple).is_zero():
            raise ToricityError("Newton iteration for the semisimple part did not converge")
    return semisimple, matrix - semisimple


def is_nilpotent(matrix):
    return matrix.power(matrix.rows).is_zero()


def is_diagonalizable(matrix):
    return is_squarefree(min_poly(matrix))


# =============================================================================
# Spectra
# =============================================================================


def _rational_factors(poly):
    """Distinct monic irreducible factors over Q via sympy."""
    t = Symbol("t")
    sympy_poly = SympyPoly.from_list(poly.high_to_low(), t, domain=QQ)
    _, factors = sympy_poly.factor_list()
    result = []
    for factor, _ in factors:
        coeffs = [QQ.from_sympy(c) for c in factor.all_coeffs()]
        result.append(UPoly.from_high(coeffs).monic())
    return result


def _spectrum(matrix):
    """
    Roots of the characteristic polynomial, adjoining irrational ones.

    Rational characteristic polynomials are factored over Q first; each
    nonlinear factor is split off root by root in a growing tower.
    """
    cp = char_poly(matrix)
    top = deepest_tower(cp.coeffs)
    if top is None:
        factors = _rational_factors(cp)
        factors.sort(key=lambda f: (f.degree(), tuple(f.coeffs)))
    else:
        factors = [squarefree_part(cp)]
    roots = []
    for factor in factors:
        remaining = factor
        while remaining.degree() >= 2:
            alpha = tower_adjoin(top, remaining, check=False)
            top = alpha.tower
            roots.append(alpha)
            lifted = remaining.map_coeffs(lambda c: embed(c, top))
            remaining = lifted.divmod_monic(UPoly([-alpha, embed(ONE, top)]))[0]
        roots.append(-remaining.coeff(0))
    return roots


def eigen_decompose(matrix):
    """
    Eigenvalues with eigenvector bases for a diagonalizable matrix.

    Tower splits met while computing kernels are resolved on the preferred
    branch and the kernel phase reruns.
    """
    matrix._require_square()
    if not is_diagonalizable(matrix):
        raise NotDiagonalizableError("minimal polynomial is not squarefree")
    n = matrix.rows
    roots = _spectrum(matrix)
    while True:
        try:
            result = []
            for value in roots:
                shifted = matrix - ExactMatrix.identity(n) * value
                result.append((value, rref_and_kernel(shifted)[2]))
            break
        except SplitEvent as event:
            top = deepest_tower(list(roots) + matrix.entries())
            _, rebase = event.resolve(top)
            roots = [rebase(r) for r in roots]
            matrix = matrix.map(rebase)
    total = sum(len(vectors) for _, vectors in result)
    if total != n:
        raise NotDiagonalizableError(f"eigenspaces span dimension {total}, expected {n}")
    return result


def invert_resolving_splits(matrix):
    """Invert, restricting the tower on zero divisors. Returns ``(M, M^-1)``."""
    while True:
        try:
            return matrix, matrix.inverse()
        except SplitEvent as event:
            _, rebase = event.resolve(matrix.tower())
            matrix = matrix.map(rebase)


def simultaneous_diagonalizer(family, seed=None, max_retries=None, rng=None):
    """
    Columns of eigenvectors of a random combination of a commuting family.

    The result ``S`` is certified: ``S^-1 A S`` is diagonal for every member.
    """
    family = list(family)
    if not family:
        raise ValueError("empty family")
    n = family[0].rows
    rng = rng or random.Random(seed)
    budget = max_retries or get_setting("RETRY_BUDGET")
    for attempt in range(1, budget + 1):
        coefficients = [random_coefficient(rng) for _ in family]
        if not any(coefficients):
            continue
        combination = ExactMatrix.zeros(n)
        for c, member in zip(coefficients, family):
            if c:
                combination = combination + member * c
        columns = [v for _, vectors in eigen_decompose(combination) for v in vectors]
        transform, inverse = invert_resolving_splits(ExactMatrix.from_columns(columns, n))
        if all((inverse * member * transform).is_diagonal() for member in family):
            if attempt > 1:
                logger.info(f"[DIAGONALIZE] certified after {attempt} draws")
            return transform
        logger.debug(f"[DIAGONALIZE] draw {attempt} not generic, retrying")
    raise RetryBudgetExceeded("simultaneous diagonalization", budget)


# =============================================================================
# Integer matrices
# =============================================================================


class IntMatrix:
    """Dense matrix of Python integers."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, rows=None, cols=None):
        self.data = [[int(x) for x in row] for row in data]
        self.rows = len(self.data) if rows is None else rows
        self.cols = (len(self.data[0]) if self.data else 0) if cols is None else cols

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns, rows):
        columns = [list(c) for c in columns]
        return cls([[col[i] for col in columns] for i in range(rows)], rows, len(columns))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, index):
        i, j = index
        return self.data[i][j]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.data == other.data

    def __repr__(self):
        return f"IntMatrix({self.data})"

    def __mul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatchError("integer matrix shapes do not chain")
        return IntMatrix(
            [
                [sum(self.data[i][k] * other.data[k][j] for k in range(self.cols)) for j in range(other.cols)]
                for i in range(self.rows)
            ],
            self.rows,
            other.cols,
        )

    def copy(self):
        return IntMatrix([row[:] for row in self.data], self.rows, self.cols)

    def diagonal(self):
        return [self.data[i][i] for i in range(min(self.rows, self.cols))]

    def det(self):
        """Bareiss determinant."""
        if self.rows != self.cols:
            raise NotSquareError("determinant of a non-square matrix")
        n = self.rows
        a = [row[:] for row in self.data]
        sign, prev = 1, 1
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k]), None)
            if p is None:
                return 0
            if p != k:
                a[k], a[p] = a[p], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * (a[n - 1][n - 1] if n else 1)


def smith_normal_form(matrix):
    """
    ``(U, D, V)`` with ``U A V = D``, ``U`` and ``V`` unimodular and
    ``D`` diagonal with nonnegative entries ``d1 | d2 | ...``.
    """
    m, n = matrix.shape
    d = [row[:] for row in matrix.data]
    u = IntMatrix.identity(m).data
    v = IntMatrix.identity(n).data

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(target, source, factor):
        d[target] = [x + factor * y for x, y in zip(d[target], d[source])]
        u[target] = [x + factor * y for x, y in zip(u[target], u[source])]

    def add_col(target, source, factor):
        for row in d:
            row[target] += factor * row[source]
        for row in v:
            row[target] += factor * row[source]

    for t in range(min(m, n)):
        candidates = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not candidates:
            break
        _, i, j = min(candidates)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // d[t][t]))
                    if d[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // d[t][t]))
                    if d[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            offender = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % d[t][t]),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return IntMatrix(u, m, m), IntMatrix(d, m, n), IntMatrix(v, n, n)


def invariant_factors(matrix):
    """Nonzero diagonal entries of the Smith normal form."""
    _, d, _ = smith_normal_form(matrix)
    return [x for x in d.diagonal() if x]
