"""
Exact scalars for the engine.

Rationals are sympy ``QQ`` elements. Algebraic numbers live in a
``NumberTower``: a chain of simple extensions, each defined by a monic
squarefree (not necessarily irreducible) polynomial over the level below.
Arithmetic in a tower is dynamic evaluation: when an element turns out to be
a zero divisor, ``tower_invert`` raises ``SplitEvent`` carrying the factor
pair, and the caller that owns the computation rebuilds the tower on one
factor with ``split_tower`` and reruns.
"""

import logging

from sympy import QQ

from symbolic.exceptions import (
    IncompatibleTowerError,
    NotSquarefreeError,
    ToricityError,
)

logger = logging.getLogger(__name__)

ZERO = QQ(0)
ONE = QQ(1)


def rational(value, denominator=None):
    """Build a ``QQ`` element from ints, strings like ``"3/4"`` or ``QQ`` values."""
    if denominator is not None:
        if denominator == 0:
            raise ZeroDivisionError("zero denominator")
        return QQ(int(value), int(denominator))
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return rational(int(num), int(den))
        return QQ(int(text))
    if isinstance(value, int):
        return QQ(value)
    if QQ.of_type(value):
        return value
    return QQ.convert(value)


def is_rational(value):
    return not isinstance(value, TowerElem)


def scalar_inverse(value):
    """Inverse of a nonzero scalar; tower elements may raise ``SplitEvent``."""
    if isinstance(value, TowerElem):
        return tower_invert(value)
    if not value:
        raise ZeroDivisionError("inverting exact zero")
    return ONE / rational(value)


# =============================================================================
# Univariate polynomials
# =============================================================================


class UPoly:
    """Dense univariate polynomial, coefficients low to high."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [rational(c) if isinstance(c, int) else c for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, degree, coeff=ONE):
        return cls([ZERO] * degree + [coeff])

    @classmethod
    def x(cls):
        return cls([ZERO, ONE])

    @classmethod
    def from_high(cls, coeffs):
        """Build from coefficients listed from the highest degree down."""
        return cls(list(reversed(list(coeffs))))

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def high_to_low(self):
        return list(reversed(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, UPoly):
            if len(self.coeffs) != len(other.coeffs):
                return False
            return all(a == b for a, b in zip(self.coeffs, other.coeffs))
        if isinstance(other, int) or QQ.of_type(other):
            return self == UPoly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UPoly({format_upoly(self)})"

    def __add__(self, other):
        other = _as_upoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_upoly(other))

    def __rsub__(self, other):
        return _as_upoly(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return UPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                term = a * b
                out[i + j] = term if out[i + j] is None else out[i + j] + term
        return UPoly([ZERO if c is None else c for c in out])

    def __rmul__(self, other):
        return UPoly([other * c for c in self.coeffs])

    def __pow__(self, exponent):
        result = UPoly([ONE])
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __call__(self, value):
        """Horner evaluation at a scalar."""
        result = ZERO
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def derivative(self):
        return UPoly([c * k for k, c in enumerate(self.coeffs) if k > 0])

    def monic(self):
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        if lead == ONE:
            return self
        inv = scalar_inverse(lead)
        return UPoly([c * inv for c in self.coeffs])

    def __divmod__(self, divisor):
        if not divisor:
            raise ZeroDivisionError("polynomial division by zero")
        inv = scalar_inverse(divisor.lc())
        return self._divmod(divisor, inv)

    def divmod_monic(self, divisor):
        """Division by a monic divisor; never inverts a coefficient."""
        return self._divmod(divisor, None)

    def _divmod(self, divisor, lead_inverse):
        rem = list(self.coeffs)
        dd = divisor.degree()
        if len(rem) - 1 < dd:
            return UPoly(), UPoly(rem)
        quo = [ZERO] * (len(rem) - dd)
        for k in range(len(rem) - 1 - dd, -1, -1):
            c = rem[k + dd]
            if not c:
                continue
            if lead_inverse is not None:
                c = c * lead_inverse
            quo[k] = c
            for i, d in enumerate(divisor.coeffs):
                rem[k + i] = rem[k + i] - c * d
        return UPoly(quo), UPoly(rem[:dd])

    def __mod__(self, divisor):
        return divmod(self, divisor)[1]

    def __floordiv__(self, divisor):
        return divmod(self, divisor)[0]

    def rem_monic(self, divisor):
        return self.divmod_monic(divisor)[1]

    def map_coeffs(self, fn):
        return UPoly([fn(c) for c in self.coeffs])


def _as_upoly(value):
    if isinstance(value, UPoly):
        return value
    return UPoly([value])


def upoly_gcd(p, q):
    """Monic gcd by the Euclidean algorithm; tower coefficients may split."""
    if not p and not q:
        raise ValueError("gcd of two zero polynomials is undefined")
    a, b = p, q
    while b:
        a, b = b, a % b
    return a.monic()


def upoly_xgcd(p, q):
    """Return ``(g, s, t)`` with ``s*p + t*q = g`` and ``g`` monic."""
    if not p and not q:
        raise ValueError("gcd of two zero polynomials is undefined")
    r0, r1 = p, q
    s0, s1 = UPoly([ONE]), UPoly()
    t0, t1 = UPoly(), UPoly([ONE])
    while r1:
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    inv = scalar_inverse(r0.lc())
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_part(p):
    """``p / gcd(p, p')`` made monic: same roots, each with multiplicity one."""
    if not p:
        raise ValueError("squarefree part of the zero polynomial")
    g = upoly_gcd(p, p.derivative())
    return (p // g).monic()


def is_squarefree(p):
    if p.degree() <= 0:
        return True
    return upoly_gcd(p, p.derivative()).degree() == 0


# =============================================================================
# Extension towers
# =============================================================================


class NumberTower:
    """
    One level of an extension tower: ``base[name] / (modulus)``.

    ``base`` is None for the rationals. The modulus is monic with
    coefficients in the base level. ``journal`` records the branch choices
    (level name, kept factor) made by splits that produced this chain.
    """

    __slots__ = ("base", "name", "modulus", "depth", "journal")

    def __init__(self, base, name, modulus, journal=()):
        self.base = base
        self.name = name
        self.modulus = modulus
        self.depth = 1 if base is None else base.depth + 1
        self.journal = tuple(journal)

    def __repr__(self):
        return f"NumberTower({self.name}: {format_upoly(self.modulus, self.name)})"

    def chain(self):
        """Levels from the bottom up to and including this one."""
        levels = []
        level = self
        while level is not None:
            levels.append(level)
            level = level.base
        return list(reversed(levels))

    def is_above(self, other):
        """True when ``other`` is this level or one of its bases."""
        level = self
        while level is not None:
            if level is other:
                return True
            level = level.base
        return False

    def degree(self):
        return self.modulus.degree()

    def generator(self):
        return TowerElem(self, UPoly([base_scalar(self.base, ZERO), base_scalar(self.base, ONE)]))


def base_scalar(tower, value):
    """Embed a rational into ``tower`` (rationals when ``tower`` is None)."""
    return embed(rational(value), tower)


def embed(value, tower):
    """Embed a scalar from a lower level of the chain into ``tower``."""
    if tower is None:
        if isinstance(value, TowerElem):
            raise IncompatibleTowerError("cannot embed a tower element into the rationals")
        return value
    if isinstance(value, TowerElem):
        if value.tower is tower:
            return value
        if not tower.is_above(value.tower):
            raise IncompatibleTowerError(
                f"element of {value.tower.name} does not embed into {tower.name}"
            )
    return TowerElem(tower, UPoly([embed(value, tower.base)]), reduce=False)


def deepest_tower(values):
    """The deepest tower among ``values``; None when all are rational."""
    top = None
    for value in values:
        if isinstance(value, TowerElem):
            if top is None or value.tower.is_above(top):
                top = value.tower
            elif not top.is_above(value.tower):
                raise IncompatibleTowerError("scalars from unrelated towers")
    return top


class TowerElem:
    __slots__ = ("tower", "rep")

    def __init__(self, tower, rep, reduce=True):
        if reduce and rep.degree() >= tower.modulus.degree():
            rep = rep.rem_monic(tower.modulus)
        self.tower = tower
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, TowerElem):
            if other.tower is self.tower:
                return self, other
            if self.tower.is_above(other.tower):
                return self, embed(other, self.tower)
            if other.tower.is_above(self.tower):
                return embed(self, other.tower), other
            raise IncompatibleTowerError("scalars from unrelated towers")
        if isinstance(other, int) or QQ.of_type(other):
            return self, embed(rational(other), self.tower)
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return TowerElem(a.tower, a.rep + b.rep, reduce=False)

    __radd__ = __add__

    def __neg__(self):
        return TowerElem(self.tower, -self.rep, reduce=False)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return TowerElem(a.tower, a.rep - b.rep, reduce=False)

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return TowerElem(a.tower, b.rep - a.rep, reduce=False)

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return TowerElem(a.tower, (a.rep * b.rep).rem_monic(a.tower.modulus), reduce=False)

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * tower_invert(b)

    def __rtruediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * tower_invert(a)

    def __pow__(self, exponent):
        if exponent < 0:
            return tower_invert(self) ** (-exponent)
        result = embed(ONE, self.tower)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self):
        return bool(self.rep)

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.rep == b.rep

    def __hash__(self):
        if self.rep.degree() <= 0:
            return hash(self.rep.coeffs[0] if self.rep.coeffs else ZERO)
        return hash((self.tower.name, self.tower.depth, self.rep.coeffs))

    def __repr__(self):
        return format_scalar(self)

    def constant(self):
        """The base-level value when this element lies in the base, else None."""
        if self.rep.degree() <= 0:
            return self.rep.coeffs[0] if self.rep.coeffs else base_scalar(self.tower.base, ZERO)
        return None


class SplitEvent(Exception):
    """
    A zero divisor was inverted: ``level.modulus = factors[0] * factors[1]``.

    Callers catch it, pick a branch with ``branches``/``resolve`` and rerun.
    """

    def __init__(self, level, factors):
        self.level = level
        self.factors = tuple(factors)
        super().__init__(
            f"tower level {level.name} splits as "
            + " * ".join(f"({format_upoly(f, 't')})" for f in self.factors)
        )

    def ordered_factors(self):
        """Smaller degree first, ties in factor order."""
        return sorted(self.factors, key=lambda f: f.degree())

    def branches(self, top):
        return [split_tower(top, self.level, factor) for factor in self.ordered_factors()]

    def resolve(self, top):
        new_top, rebase = split_tower(top, self.level, self.ordered_factors()[0])
        logger.info(
            f"[TOWER-SPLIT] {self.level.name} restricted to "
            f"{format_upoly(new_top_level(new_top, self.level.depth).modulus, self.level.name)}"
        )
        return new_top, rebase


def new_top_level(top, depth):
    for level in top.chain():
        if level.depth == depth:
            return level
    raise ToricityError(f"no level at depth {depth}")


def tower_adjoin(tower, p, name=None, check=True):
    """
    Extend ``tower`` (None for the rationals) by a root of ``p``.

    Returns the generator of the new level. ``p`` must be squarefree of
    degree at least 2.
    """
    p = p.map_coeffs(lambda c: embed(rational(c) if isinstance(c, int) else c, tower))
    if p.degree() < 2:
        raise ValueError("adjoining a root needs a polynomial of degree at least 2")
    if check and not is_squarefree(p):
        raise NotSquarefreeError(
            f"{format_upoly(p, 't')} is not squarefree; take its squarefree part first"
        )
    depth = 1 if tower is None else tower.depth + 1
    journal = () if tower is None else tower.journal
    level = NumberTower(tower, name or f"a{depth}", p.monic(), journal)
    logger.debug(f"[TOWER-ADJOIN] {level.name}: {format_upoly(level.modulus, level.name)}")
    return level.generator()


def tower_invert(element):
    """Inverse modulo the defining polynomial, or ``SplitEvent`` on a zero divisor."""
    if not element.rep:
        raise ZeroDivisionError("inverting exact zero")
    tower = element.tower
    if element.rep.degree() == 0:
        inv = scalar_inverse(element.rep.coeffs[0])
        return TowerElem(tower, UPoly([inv]), reduce=False)
    g, s, _ = upoly_xgcd(element.rep, tower.modulus)
    if g.degree() > 0:
        cofactor = tower.modulus.divmod_monic(g)[0]
        raise SplitEvent(tower, (g, cofactor))
    return TowerElem(tower, s)


def split_tower(top, level, factor):
    """
    Rebuild the chain ending at ``top`` with ``level`` restricted to ``factor``.

    Returns ``(new_top, rebase)`` where ``rebase`` maps any scalar of the old
    chain to the new one (rationals pass through).
    """
    chain = top.chain()
    index = next((i for i, t in enumerate(chain) if t is level), None)
    if index is None:
        raise IncompatibleTowerError(f"{level.name} is not part of the tower")
    journal = top.journal + ((level.name, factor),)
    mapping = {}
    new_base = level.base
    new_level = NumberTower(new_base, level.name, factor.monic(), journal)
    mapping[id(level)] = new_level

    def rebase(value):
        if not isinstance(value, TowerElem):
            return value
        target = mapping.get(id(value.tower))
        if target is None:
            return value
        return TowerElem(target, value.rep.map_coeffs(rebase))

    current = new_level
    for old in chain[index + 1 :]:
        current = NumberTower(current, old.name, old.modulus.map_coeffs(rebase), journal)
        mapping[id(old)] = current
    return current, rebase


# =============================================================================
# Printing
# =============================================================================


def format_rational(value):
    value = rational(value)
    num, den = QQ.numer(value), QQ.denom(value)
    if den == 1:
        return str(num)
    return f"{num}/{den}"


def format_scalar(value):
    if not isinstance(value, TowerElem):
        return format_rational(value)
    return format_upoly(value.rep, value.tower.name)


def format_upoly(p, var="t"):
    if not p.coeffs:
        return "0"
    parts = []
    for k in range(p.degree(), -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        text = format_scalar(c)
        compound = isinstance(c, TowerElem) and c.rep.degree() > 0
        negative = not compound and text.startswith("-")
        if negative:
            text = text[1:]
        if compound:
            text = f"({text})"
        if k == 0:
            term = text
        else:
            power = var if k == 1 else f"{var}^{k}"
            term = power if text == "1" else f"{text}*{power}"
        if not parts:
            parts.append(f"-{term}" if negative else term)
        else:
            parts.append(f"- {term}" if negative else f"+ {term}")
    return " ".join(parts)


def describe_tower(tower):
    """Footer lines naming each generator's defining polynomial."""
    if tower is None:
        return []
    return [f"{level.name}: {format_upoly(level.modulus, level.name)} = 0" for level in tower.chain()]
