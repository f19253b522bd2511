"""
Buchberger engine and the ideal operations built on it.

``reduced_groebner`` is the improved Buchberger algorithm (Gebauer-Moeller
pair criteria, normal selection strategy) followed by full auto-reduction.
Everything else (membership, elimination, colon, saturation, Krull
dimension, binomiality) is phrased through reduced bases.
"""

import logging
from itertools import combinations

from symbolic.conf import get_setting
from symbolic.exactnum import ONE, ZERO, scalar_inverse
from symbolic.exceptions import GroebnerBudgetExceeded, NonBinomialIdealError
from symbolic.polyring import (
    DEGREVLEX,
    Poly,
    block_order,
    homogenize,
    monomial_divides,
    monomial_lcm,
    monomial_product,
    monomial_quotient,
)

logger = logging.getLogger(__name__)


class Ideal:
    """Generators in a ring, with reduced Groebner bases cached per monomial order."""

    def __init__(self, ring, generators=()):
        self.ring = ring
        self.generators = [g for g in generators if g]
        for g in self.generators:
            if g.ring.names != ring.names:
                raise ValueError(f"generator {g} does not live in {ring}")
        self._cache = {}

    @classmethod
    def from_strings(cls, ring, texts):
        return cls(ring, [ring.parse(text) for text in texts])

    def groebner(self, order=None, budget=None):
        """
        Reduced basis for ``order``, computed once per order.

        The cache is keyed on the order alone: ``budget`` only limits the
        first computation, and a cached basis is returned whatever budget a
        later call passes.
        """
        order = order or DEGREVLEX
        if order not in self._cache:
            self._cache[order] = reduced_groebner(self, order, budget=budget)
        return self._cache[order]

    def normal_form(self, f, order=None):
        order = order or DEGREVLEX
        return normal_form(f, self.groebner(order), order)

    def __contains__(self, f):
        return member(f, self)

    def is_zero(self):
        return not self.generators

    def is_unit(self):
        basis = self.groebner()
        return len(basis) == 1 and basis[0].is_constant()

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.generators)

    def degrees(self):
        return sorted({g.degree() for g in self.generators})

    def __len__(self):
        return len(self.generators)

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"

    def __repr__(self):
        return f"Ideal({self.ring}, {self})"


# =============================================================================
# Division
# =============================================================================


def _reducers(basis, order):
    reducers = []
    for g in basis:
        if not g:
            continue
        lead = g.leading_monomial(order)
        lc = g.terms[lead]
        inverse = ONE if lc == ONE else scalar_inverse(lc)
        tail = [(e, c * inverse) for e, c in g.terms.items() if e != lead]
        reducers.append((lead, inverse, tail))
    return reducers


def _divide(terms, reducers, order, quotients=None):
    key = order.key
    work = dict(terms)
    remainder = {}
    while work:
        lead = max(work, key=key)
        coeff = work.pop(lead)
        for index, (lm, inverse, tail) in enumerate(reducers):
            if not monomial_divides(lm, lead):
                continue
            shift = monomial_quotient(lead, lm)
            for e, c in tail:
                m = monomial_product(e, shift)
                value = work.get(m, ZERO) - coeff * c
                if value:
                    work[m] = value
                else:
                    work.pop(m, None)
            if quotients is not None:
                bucket = quotients[index]
                value = bucket.get(shift, ZERO) + coeff * inverse
                if value:
                    bucket[shift] = value
                else:
                    bucket.pop(shift, None)
            break
        else:
            remainder[lead] = coeff
    return remainder


def normal_form(f, basis, order=None):
    """Remainder of ``f`` under multivariate division by ``basis``."""
    order = order or DEGREVLEX
    return Poly._raw(f.ring, _divide(f.terms, _reducers(basis, order), order))


def divide(f, divisors, order=None):
    """Return ``(quotients, remainder)`` with ``f = sum q_i g_i + r``."""
    order = order or DEGREVLEX
    divisors = [g for g in divisors if g]
    buckets = [{} for _ in divisors]
    remainder = _divide(f.terms, _reducers(divisors, order), order, buckets)
    return [Poly._raw(f.ring, b) for b in buckets], Poly._raw(f.ring, remainder)


def exact_quotient(f, g, order=None):
    quotients, remainder = divide(f, [g], order)
    if remainder:
        raise ValueError(f"{g} does not divide {f}")
    return quotients[0]


def s_polynomial(f, g, order=None):
    order = order or DEGREVLEX
    lm_f = f.leading_monomial(order)
    lm_g = g.leading_monomial(order)
    lcm = monomial_lcm(lm_f, lm_g)
    left = f.mul_term(monomial_quotient(lcm, lm_f), scalar_inverse(f.terms[lm_f]))
    right = g.mul_term(monomial_quotient(lcm, lm_g), scalar_inverse(g.terms[lm_g]))
    return left - right


def member(f, ideal, order=None):
    return not ideal.normal_form(f, order)


def is_groebner(basis, order=None):
    """Buchberger criterion: every S-polynomial reduces to zero."""
    order = order or DEGREVLEX
    basis = [g for g in basis if g]
    for f, g in combinations(basis, 2):
        if normal_form(s_polynomial(f, g, order), basis, order):
            return False
    return True


# =============================================================================
# Buchberger
# =============================================================================


def reduced_groebner(ideal, order=None, budget=None, context=""):
    """
    Reduced Groebner basis of ``ideal`` for ``order``, sorted by descending
    leading monomial. Gives up with ``GroebnerBudgetExceeded`` after
    ``budget`` critical pairs.
    """
    order = order or DEGREVLEX
    budget = budget or get_setting("GROEBNER_PAIR_BUDGET")
    key = order.key
    ring = ideal.ring

    # interreduce the input until no element reduces against the others
    current = [g.monic(order) for g in ideal.generators if g]
    changed = True
    while changed:
        changed = False
        for i, p in enumerate(current):
            others = current[:i] + current[i + 1 :]
            r = normal_form(p, others, order)
            if r != p:
                current = others + ([r.monic(order)] if r else [])
                changed = True
                break
    if not current:
        return []

    polys = list(current)
    leads = [p.leading_monomial(order) for p in polys]

    def update(G, B, ih):
        mh = leads[ih]
        C = set(G)
        D = set()
        while C:
            ig = C.pop()
            mg = leads[ig]
            lcm_hg = monomial_lcm(mh, mg)

            def lcm_divides(ip):
                return monomial_divides(monomial_lcm(mh, leads[ip]), lcm_hg)

            if monomial_product(mh, mg) == lcm_hg or (
                not any(lcm_divides(ip) for ip in C) and not any(lcm_divides(pr[1]) for pr in D)
            ):
                D.add((ih, ig))

        E = {(ih, ig) for ih, ig in D if monomial_product(mh, leads[ig]) != monomial_lcm(mh, leads[ig])}

        B_new = set()
        for ig1, ig2 in B:
            lcm12 = monomial_lcm(leads[ig1], leads[ig2])
            if (
                not monomial_divides(mh, lcm12)
                or monomial_lcm(leads[ig1], mh) == lcm12
                or monomial_lcm(leads[ig2], mh) == lcm12
            ):
                B_new.add((ig1, ig2))
        B_new |= E

        G_new = {ig for ig in G if not monomial_divides(mh, leads[ig])}
        G_new.add(ih)
        return G_new, B_new

    G = set()
    pairs = set()
    for ih in sorted(range(len(polys)), key=lambda i: key(leads[i])):
        G, pairs = update(G, pairs, ih)

    processed = 0
    zero_reductions = 0
    while pairs:
        ig1, ig2 = min(pairs, key=lambda pr: (key(monomial_lcm(leads[pr[0]], leads[pr[1]])), pr))
        pairs.remove((ig1, ig2))
        processed += 1
        if processed > budget:
            logger.warning(f"[GROEBNER] pair budget {budget} exceeded in {ring} {context}")
            raise GroebnerBudgetExceeded(processed - 1, context)

        divisors = sorted(G, key=lambda i: key(leads[i]))
        h = normal_form(s_polynomial(polys[ig1], polys[ig2], order), [polys[i] for i in divisors], order)
        if not h:
            zero_reductions += 1
            continue
        h = h.monic(order)
        polys.append(h)
        leads.append(h.leading_monomial(order))
        G, pairs = update(G, pairs, len(polys) - 1)

    minimal = [
        ig
        for ig in G
        if not any(
            other != ig
            and monomial_divides(leads[other], leads[ig])
            and (leads[other] != leads[ig] or other < ig)
            for other in G
        )
    ]
    basis = []
    for ig in minimal:
        others = [polys[i] for i in minimal if i != ig]
        basis.append(normal_form(polys[ig], others, order).monic(order))
    basis.sort(key=lambda p: key(p.leading_monomial(order)), reverse=True)
    logger.debug(
        f"[GROEBNER] {len(basis)} elements in {order} after {processed} pairs "
        f"({zero_reductions} reduced to zero)"
    )
    return basis


# =============================================================================
# Ideal operations
# =============================================================================


def eliminate(ideal, count, budget=None):
    """Intersection of ``ideal`` with the subring on all but the first ``count`` variables."""
    ring = ideal.ring
    order = block_order(count)
    basis = reduced_groebner(ideal, order, budget=budget, context=f"eliminating {count}")
    target = ring.drop_first(count)
    positions = [None] * count + list(range(target.ngens))
    kept = [g.reindex(target, positions) for g in basis if not any(any(e[:count]) for e in g.terms)]
    return Ideal(target, kept)


def _tagged_ring(ring):
    return ring.prepend(ring.fresh_name("_t"))


def _lift(poly, tagged):
    return poly.reindex(tagged, list(range(1, tagged.ngens)))


def colon(ideal, f, budget=None):
    """``(I : f)``, through ``I`` intersected with ``<f>`` and exact division by ``f``."""
    if not f:
        raise ValueError("colon by the zero polynomial")
    ring = ideal.ring
    if f.is_constant() or ideal.is_zero():
        return Ideal(ring, ideal.generators)
    tagged = _tagged_ring(ring)
    t = tagged.variable(0)
    lifted = _lift(f, tagged)
    generators = [t * _lift(g, tagged) for g in ideal.generators] + [(tagged.one() - t) * lifted]
    intersection = eliminate(Ideal(tagged, generators), 1, budget=budget)
    return Ideal(ring, [exact_quotient(g, f) for g in intersection.generators])


def saturate(ideal, f, budget=None):
    """``(I : f^oo)`` by adding ``1 - t f`` and eliminating ``t``."""
    if not f:
        raise ValueError("saturation at the zero polynomial")
    ring = ideal.ring
    if f.is_constant() or ideal.is_zero():
        return Ideal(ring, ideal.generators)
    tagged = _tagged_ring(ring)
    t = tagged.variable(0)
    generators = [_lift(g, tagged) for g in ideal.generators]
    generators.append(tagged.one() - t * _lift(f, tagged))
    return eliminate(Ideal(tagged, generators), 1, budget=budget)


def contains(ideal, other):
    """True when every generator of ``other`` lies in ``ideal``."""
    return all(member(g, ideal) for g in other.generators)


def ideals_equal(first, second):
    return first.groebner() == second.groebner()


def krull_dimension(ideal, budget=None):
    """
    Largest set of variables containing the support of no leading monomial
    of the degrevlex basis. ``-1`` for the unit ideal.
    """
    n = ideal.ring.ngens
    basis = ideal.groebner(DEGREVLEX, budget=budget)
    if any(g.is_constant() for g in basis):
        return -1
    masks = set()
    for g in basis:
        lead = g.leading_monomial(DEGREVLEX)
        masks.add(sum(1 << i for i, x in enumerate(lead) if x))
    masks = [m for m in masks if not any(o != m and (o & m) == o for o in masks)]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            chosen = sum(1 << i for i in subset)
            if not any((m & chosen) == m for m in masks):
                return size
    return 0


def is_binomial(ideal, order=None):
    return all(len(g) <= 2 for g in ideal.groebner(order))


def require_binomial(ideal, budget=None):
    """The degrevlex basis, or ``NonBinomialIdealError`` if an element has more than two terms."""
    basis = ideal.groebner(DEGREVLEX, budget=budget)
    offender = next((g for g in basis if len(g) > 2), None)
    if offender is not None:
        raise NonBinomialIdealError(f"reduced basis element {offender} has {len(offender)} terms")
    return basis


def homogenize_ideal(ideal, name=None, budget=None):
    """``I^h``: homogenize each element of the degrevlex basis with a new first variable."""
    basis = ideal.groebner(DEGREVLEX, budget=budget)
    ring = ideal.ring.prepend(ideal.ring.fresh_name(name or get_setting("HOMOGENIZING_VARIABLE")))
    return Ideal(ring, [homogenize(g, ring) for g in basis])
