"""
Multivariate polynomials over exact scalars.

A ``Poly`` is a dict from exponent tuples to nonzero coefficients attached to
a ``PolyRing`` (ordered variable names plus a default monomial order).
Operations that depend on term order take a ``MonomialOrder`` explicitly and
fall back to the ring's order.
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from symbolic.exactnum import ONE, ZERO, TowerElem, format_scalar, rational, scalar_inverse
from symbolic.exceptions import (
    DimensionMismatchError,
    NonHomogeneousIdealError,
    PolynomialSyntaxError,
)
from symbolic.linalg import SparseEchelon

logger = logging.getLogger(__name__)


# =============================================================================
# Monomials and orders
# =============================================================================


def _grevlex_key(exponents):
    return (sum(exponents), tuple(-x for x in reversed(exponents)))


@dataclass(frozen=True)
class MonomialOrder:
    """degrevlex, lex, or a block order eliminating the first ``split`` variables."""

    kind: str = "degrevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, exponents):
        return _order_key(self.kind, self.split, exponents)

    def __str__(self):
        if self.kind == "block":
            return f"block({self.split})"
        return self.kind


@lru_cache(maxsize=200000)
def _order_key(kind, split, exponents):
    if kind == "degrevlex":
        return _grevlex_key(exponents)
    if kind == "lex":
        return exponents
    return (_grevlex_key(exponents[:split]), _grevlex_key(exponents[split:]))


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def block_order(split):
    return MonomialOrder("block", split)


def monomial_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def monomial_quotient(a, b):
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_product(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomials_of_degree(n, d):
    """Exponent tuples of total degree ``d`` in ``n`` variables."""
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(n), d):
        exponents = [0] * n
        for i in combo:
            exponents[i] += 1
        out.append(tuple(exponents))
    return out


# =============================================================================
# Rings and polynomials
# =============================================================================


@dataclass(frozen=True)
class PolyRing:
    names: tuple
    order: MonomialOrder = DEGREVLEX

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")

    @property
    def ngens(self):
        return len(self.names)

    def index(self, name):
        return self.names.index(name)

    def zero(self):
        return Poly(self, {})

    def one(self):
        return self.constant(ONE)

    def constant(self, value):
        return Poly(self, {(0,) * self.ngens: rational(value) if isinstance(value, int) else value})

    def variable(self, index_or_name):
        index = index_or_name if isinstance(index_or_name, int) else self.index(index_or_name)
        exponents = [0] * self.ngens
        exponents[index] = 1
        return Poly(self, {tuple(exponents): ONE})

    def gens(self):
        return [self.variable(i) for i in range(self.ngens)]

    def monomial(self, exponents, coeff=ONE):
        return Poly(self, {tuple(exponents): coeff})

    def with_order(self, order):
        return PolyRing(self.names, order)

    def fresh_name(self, stem):
        name = stem
        k = 0
        while name in self.names:
            k += 1
            name = f"{stem}{k}"
        return name

    def prepend(self, name, order=None):
        return PolyRing((name,) + self.names, order or self.order)

    def drop_first(self, count=1):
        return PolyRing(self.names[count:], self.order)

    def parse(self, text):
        return parse_poly(text, self)

    def __str__(self):
        return f"QQ[{', '.join(self.names)}]"


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        clean = {}
        for exponents, coeff in (terms or {}).items():
            if isinstance(coeff, int):
                coeff = rational(coeff)
            if coeff:
                clean[tuple(exponents)] = coeff
        self.terms = clean

    @classmethod
    def _raw(cls, ring, terms):
        poly = cls.__new__(cls)
        poly.ring = ring
        poly.terms = terms
        return poly

    def _check(self, other):
        if self.ring.names != other.ring.names:
            raise DimensionMismatchError(
                f"polynomials from different rings: {self.ring} and {other.ring}"
            )

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, int) or isinstance(other, TowerElem) or _is_qq(other):
            return self.ring.constant(other)
        return None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(self.terms) != len(other.terms):
            return False
        return all(e in other.terms and other.terms[e] == c for e, c in self.terms.items())

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            value = terms.get(e, ZERO) + c
            if value:
                terms[e] = value
            else:
                terms.pop(e, None)
        return Poly._raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if other is None or not (isinstance(other, (int, TowerElem)) or _is_qq(other)):
                return NotImplemented
            return self.scale(rational(other) if isinstance(other, int) else other)
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = monomial_product(e1, e2)
                value = terms.get(e, ZERO) + c1 * c2
                if value:
                    terms[e] = value
                else:
                    terms.pop(e, None)
        return Poly._raw(self.ring, terms)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, exponent):
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor):
        if not factor:
            return self.ring.zero()
        return Poly(self.ring, {e: c * factor for e, c in self.terms.items()})

    def mul_term(self, exponents, coeff=ONE):
        return Poly(self.ring, {monomial_product(e, exponents): c * coeff for e, c in self.terms.items()})

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def coefficient(self, exponents):
        return self.terms.get(tuple(exponents), ZERO)

    def sorted_terms(self, order=None):
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda item: order.key(item[0]), reverse=True)

    def leading_monomial(self, order=None):
        order = order or self.ring.order
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order=None):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order=None):
        if not self.terms:
            return self
        lead = self.leading_coefficient(order)
        if lead == ONE:
            return self
        return self.scale(scalar_inverse(lead))

    def derivative(self, index):
        terms = {}
        for e, c in self.terms.items():
            if e[index]:
                lowered = list(e)
                lowered[index] -= 1
                terms[tuple(lowered)] = c * e[index]
        return Poly._raw(self.ring, terms)

    def support(self):
        """Indices of variables that occur."""
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return used

    def map_coeffs(self, fn):
        return Poly(self.ring, {e: fn(c) for e, c in self.terms.items()})

    def coefficients(self):
        return list(self.terms.values())

    def reindex(self, ring, positions):
        """Move into ``ring``; ``positions[i]`` is the new index of variable i or None."""
        terms = {}
        for e, c in self.terms.items():
            target = [0] * ring.ngens
            for i, x in enumerate(e):
                if x:
                    if positions[i] is None:
                        raise DimensionMismatchError(
                            f"variable {self.ring.names[i]} has no place in {ring}"
                        )
                    target[positions[i]] += x
            target = tuple(target)
            value = terms.get(target, ZERO) + c
            if value:
                terms[target] = value
            else:
                terms.pop(target, None)
        return Poly._raw(ring, terms)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)})"


def _is_qq(value):
    from sympy import QQ

    return QQ.of_type(value)


def format_monomial(exponents, names):
    parts = []
    for name, x in zip(names, exponents):
        if x == 1:
            parts.append(name)
        elif x:
            parts.append(f"{name}^{x}")
    return "*".join(parts)


def format_poly(poly, order=None):
    if not poly.terms:
        return "0"
    pieces = []
    for e, c in poly.sorted_terms(order):
        mono = format_monomial(e, poly.ring.names)
        text = format_scalar(c)
        compound = isinstance(c, TowerElem) and c.rep.degree() > 0
        negative = not compound and text.startswith("-")
        if negative:
            text = text[1:]
        if compound:
            text = f"({text})"
        if not mono:
            term = text
        elif text == "1":
            term = mono
        else:
            term = f"{text}*{mono}"
        if not pieces:
            pieces.append(f"-{term}" if negative else term)
        else:
            pieces.append(f"- {term}" if negative else f"+ {term}")
    return " ".join(pieces)


# =============================================================================
# Actions of matrices
# =============================================================================


def substitute_linear(f, matrix):
    """``f(A x)``: each variable ``x_i`` replaced by row ``i`` of ``A`` applied to ``x``."""
    ring = f.ring
    n = ring.ngens
    if matrix.shape != (n, n):
        raise DimensionMismatchError(f"expected a {n}x{n} matrix, got {matrix.rows}x{matrix.cols}")
    forms = []
    for i in range(n):
        terms = {}
        for j in range(n):
            entry = matrix[i, j]
            if entry:
                unit = [0] * n
                unit[j] = 1
                terms[tuple(unit)] = entry
        forms.append(Poly._raw(ring, terms))
    powers = {}

    def power(i, k):
        if (i, k) not in powers:
            powers[(i, k)] = forms[i] if k == 1 else power(i, k - 1) * forms[i]
        return powers[(i, k)]

    result = ring.zero()
    for e, c in f.terms.items():
        term = ring.constant(c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        result = result + term
    return result


def derivation_action(g, f):
    """``g * f = -sum_ij g_ij x_j df/dx_i``, the Lie derivation of ``f`` along ``g``."""
    ring = f.ring
    n = ring.ngens
    if g.shape != (n, n):
        raise DimensionMismatchError(f"expected a {n}x{n} matrix, got {g.rows}x{g.cols}")
    terms = {}
    for e, c in f.terms.items():
        for i, ei in enumerate(e):
            if not ei:
                continue
            coeff = c * ei
            for j in range(n):
                gij = g[i, j]
                if not gij:
                    continue
                m = list(e)
                m[i] -= 1
                m[j] += 1
                m = tuple(m)
                value = terms.get(m, ZERO) - coeff * gij
                if value:
                    terms[m] = value
                else:
                    terms.pop(m, None)
    return Poly._raw(ring, terms)


def variable_derivation(f, i, j):
    """``-x_j df/dx_i``: the coefficient of ``g_ij`` in ``g * f``."""
    ring = f.ring
    terms = {}
    for e, c in f.terms.items():
        if not e[i]:
            continue
        m = list(e)
        m[i] -= 1
        m[j] += 1
        m = tuple(m)
        value = terms.get(m, ZERO) - c * e[i]
        if value:
            terms[m] = value
        else:
            terms.pop(m, None)
    return Poly._raw(ring, terms)


def homogenize(f, ring=None, name=None):
    """Pad every term with powers of a new first variable up to the top degree."""
    from symbolic.conf import get_setting

    if ring is None:
        ring = f.ring.prepend(f.ring.fresh_name(name or get_setting("HOMOGENIZING_VARIABLE")))
    if ring.names[1:] != f.ring.names:
        raise DimensionMismatchError("target ring must prepend exactly one variable")
    top = f.degree()
    return Poly._raw(ring, {(top - sum(e),) + e: c for e, c in f.terms.items()})


def dehomogenize(f, ring=None):
    """Set the first variable to 1."""
    ring = ring or f.ring.drop_first()
    if f.ring.names[1:] != ring.names:
        raise DimensionMismatchError("target ring must drop exactly the first variable")
    terms = {}
    for e, c in f.terms.items():
        target = e[1:]
        value = terms.get(target, ZERO) + c
        if value:
            terms[target] = value
        else:
            terms.pop(target, None)
    return Poly._raw(ring, terms)


# =============================================================================
# Graded pieces
# =============================================================================


class GradedPiece:
    """
    The degree-``d`` part of the ideal generated by homogeneous ``generators``,
    kept in reduced row echelon form over the monomial basis (descending in
    the ring order).
    """

    def __init__(self, generators, degree, ring=None):
        generators = [g for g in generators if g]
        self.ring = ring or (generators[0].ring if generators else None)
        self.degree = degree
        order = self.ring.order if self.ring else None
        self.echelon = SparseEchelon(lead=lambda cols: max(cols, key=order.key))
        for f in generators:
            if not f.is_homogeneous():
                raise NonHomogeneousIdealError(f"generator {f} is not homogeneous")
            gap = degree - f.degree()
            if gap < 0:
                continue
            for m in monomials_of_degree(self.ring.ngens, gap):
                self.echelon.add(f.mul_term(m).terms)

    @property
    def dimension(self):
        return self.echelon.rank

    def basis(self):
        order = self.ring.order
        pivots = sorted(self.echelon.rows, key=order.key, reverse=True)
        return [Poly._raw(self.ring, dict(self.echelon.rows[p])) for p in pivots]

    def reduce(self, f):
        """Normal form of a degree-``d`` polynomial modulo this piece."""
        return Poly._raw(f.ring, self.echelon.reduce(f.terms))

    def contains(self, f):
        return self.echelon.contains(f.terms)


def graded_piece_basis(generators, degree):
    """Row-reduced basis of the degree-``d`` piece of the ideal."""
    generators = [g for g in generators if g]
    if not generators:
        return []
    return GradedPiece(generators, degree).basis()


# =============================================================================
# Parsing
# =============================================================================

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^]))"
)


def _split_identifier(word, names):
    """Split an identifier run into declared names, longest match first."""
    if word in names:
        return [word]
    for cut in range(len(word) - 1, 0, -1):
        head = word[:cut]
        if head in names:
            rest = _split_identifier(word[cut:], names)
            if rest is not None:
                return [head] + rest
    return None


def _tokenize(text, names):
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if not match or match.end() == pos:
            column = pos + 1 + (len(stripped[pos:]) - len(stripped[pos:].lstrip()))
            raise PolynomialSyntaxError(
                f"unexpected character {stripped[column - 1]!r}", column=column
            )
        column = match.start(match.lastgroup) + 1
        if match.group("number") is not None:
            tokens.append(("number", int(match.group("number")), column))
        elif match.group("name") is not None:
            word = match.group("name")
            parts = _split_identifier(word, names)
            if parts is None:
                raise PolynomialSyntaxError(f"unknown variable {word!r}", column=column)
            offset = 0
            for part in parts:
                tokens.append(("name", part, column + offset))
                offset += len(part)
        else:
            tokens.append(("op", match.group("op"), column))
        pos = match.end()
    tokens.append(("end", None, len(stripped) + 1))
    return tokens


def parse_poly(text, ring):
    """
    Parse ``poly := term (('+'|'-') term)*`` with terms built from rational
    coefficients, declared variables with ``^`` powers, and implicit or
    explicit ``*``.
    """
    names = set(ring.names)
    tokens = _tokenize(text, names)
    pos = 0

    def peek():
        return tokens[pos]

    def advance():
        nonlocal pos
        token = tokens[pos]
        pos += 1
        return token

    def expect_number():
        kind, value, column = advance()
        if kind != "number":
            raise PolynomialSyntaxError("expected an integer", column=column)
        return value

    def parse_factor():
        kind, value, column = peek()
        if kind == "number":
            advance()
            numerator = value
            if peek()[0] == "op" and peek()[1] == "/":
                advance()
                denominator = expect_number()
                if denominator == 0:
                    raise PolynomialSyntaxError("zero denominator", column=column)
                return ring.constant(rational(numerator, denominator))
            return ring.constant(rational(numerator))
        if kind == "name":
            advance()
            factor = ring.variable(value)
            if peek()[0] == "op" and peek()[1] == "^":
                advance()
                factor = factor ** expect_number()
            return factor
        raise PolynomialSyntaxError(
            "expected a coefficient or variable" if kind != "end" else "unexpected end of input",
            column=column,
        )

    def parse_term():
        term = parse_factor()
        while True:
            kind, value, _ = peek()
            if kind == "op" and value == "*":
                advance()
                term = term * parse_factor()
            elif kind in ("number", "name"):
                term = term * parse_factor()
            else:
                return term

    result = ring.zero()
    sign = 1
    kind, value, _ = peek()
    if kind == "op" and value in "+-":
        advance()
        sign = -1 if value == "-" else 1
    result = result + parse_term().scale(rational(sign))
    while True:
        kind, value, column = peek()
        if kind == "end":
            return result
        if kind == "op" and value in "+-":
            advance()
            term = parse_term()
            result = result + term if value == "+" else result - term
        else:
            raise PolynomialSyntaxError(f"unexpected {value!r}", column=column)
