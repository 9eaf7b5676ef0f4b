"""Rigid and free zero patterns and the elements drawn from them."""
import logging
import random
from collections import namedtuple

import sympy

from structcon.algebra import AlgebraElement, BasisElement, Family, canonical_basis
from structcon.conf import app_settings
from structcon.exceptions import DependentBases, EmptyPool, KindMismatch, MembershipError

logger = logging.getLogger(__name__)


class DriftPattern(namedtuple('DriftPattern', ['kind', 'bases'])):
    """Rigid pattern: combinations of ``bases`` with every coefficient nonzero."""
    __slots__ = ()

    def __new__(cls, kind, bases):
        bases = tuple(bases)
        if not bases:
            raise ValueError("a drift pattern needs at least one base")
        for base in bases:
            if base.kind != kind:
                raise KindMismatch("drift base of {} in a {} pattern".format(base.kind, kind))
            if base.is_zero():
                raise ValueError("drift bases must be nonzero")
        return super(DriftPattern, cls).__new__(cls, kind, bases)


class ControlPattern(namedtuple('ControlPattern', ['kind', 'bases'])):
    """Free pattern over a set of basis elements, kept exactly as written."""
    __slots__ = ()

    def __new__(cls, kind, bases):
        bases = frozenset(b if isinstance(b, BasisElement) else BasisElement(*b) for b in bases)
        if not bases:
            raise ValueError("a control pattern needs at least one basis element")
        for base in bases:
            if not base.fits(kind):
                raise MembershipError("{} is not a basis element of {}".format(base, kind))
        return super(ControlPattern, cls).__new__(cls, kind, bases)

    def sorted_bases(self):
        return sorted(self.bases)

    def by_tag(self, tag):
        return sorted(b for b in self.bases if b.tag == tag)


class ZeroPatternPair(namedtuple('ZeroPatternPair', ['drift', 'control'])):
    __slots__ = ()

    def __new__(cls, drift, control):
        if drift.kind != control.kind:
            raise KindMismatch("drift is {} but control is {}".format(drift.kind, control.kind))
        return super(ZeroPatternPair, cls).__new__(cls, drift, control)

    @property
    def kind(self):
        return self.drift.kind


def coefficient_pool(low=None, high=None):
    """Nonzero integers in ``[low, high]``; defaults to ``STRUCTCON_POOL``."""
    if low is None or high is None:
        low, high = app_settings.POOL
    pool = frozenset(v for v in range(int(low), int(high) + 1) if v)
    if not pool:
        raise EmptyPool("no nonzero integer in [{}, {}]".format(low, high))
    return pool


def combine(pattern, coefficients):
    """``sum(l_s * A_s)`` for one coefficient per base."""
    coefficients = list(coefficients)
    if len(coefficients) != len(pattern.bases):
        raise ValueError("expected {} coefficients, got {}".format(len(pattern.bases), len(coefficients)))
    total = AlgebraElement.zero(pattern.kind)
    for coeff, base in zip(coefficients, pattern.bases):
        total = total + base * coeff
    return total


def pattern_support(pattern):
    """Basis elements reached by some base; a generic draw keeps all of them."""
    return frozenset().union(*(base.support for base in pattern.bases))


def sample_drift(pattern, pool, seed):
    """One drift from the rigid pattern, seeded.

    Draws that cancel a basis element present in some base are rejected and
    redrawn from the same generator, up to ``STRUCTCON_DRAWS`` attempts.
    """
    pool = sorted(pool)
    if not pool:
        raise EmptyPool("cannot sample a drift from an empty pool")
    if 0 in pool:
        raise ValueError("the coefficient pool must not contain zero")
    rng = random.Random(seed)
    support = pattern_support(pattern)
    draws = max(1, int(app_settings.DRAWS))
    for attempt in range(draws):
        coefficients = [rng.choice(pool) for _ in pattern.bases]
        drift = combine(pattern, coefficients)
        if drift.support == support:
            logger.debug("seed %s drew %s", seed, coefficients)
            return drift
        logger.info("seed %s: draw %d %s cancels %s, drawing again", seed, attempt, coefficients,
                    ", ".join(str(b) for b in sorted(support - drift.support)))
    logger.warning("seed %s: no draw without cancellation in %d attempts", seed, draws)
    return drift


def control_generators(pattern):
    return [AlgebraElement(pattern.kind, [(b, 1)]) for b in pattern.sorted_bases()]


def drift_is_basis_subset(pattern):
    if pattern.kind.family is not Family.GL:
        raise KindMismatch("drift_is_basis_subset is defined for gl(n), got {}".format(pattern.kind))
    return all(len(base) == 1 for base in pattern.bases)


def _columns(bases, kind):
    order = canonical_basis(kind)
    return sympy.Matrix([[sympy.Rational(base.coefficient(b).numerator, base.coefficient(b).denominator)
                          for base in bases] for b in order])


def _target(element):
    return _columns([element], element.kind)


def free_contains(bases, element):
    """True when ``element`` is some linear combination of ``bases``."""
    bases = list(bases)
    if not bases:
        return element.is_zero()
    if any(base.kind != element.kind for base in bases):
        raise KindMismatch("bases and element live in different algebras")
    matrix = _columns(bases, element.kind)
    return matrix.rank() == matrix.row_join(_target(element)).rank()


def rigid_contains(bases, element):
    """True when ``element`` is a combination of ``bases`` with every coefficient nonzero."""
    bases = list(bases)
    if not bases:
        return element.is_zero()
    if any(base.kind != element.kind for base in bases):
        raise KindMismatch("bases and element live in different algebras")
    matrix = _columns(bases, element.kind)
    if matrix.rank() < len(bases):
        raise DependentBases("rigid membership needs linearly independent bases")
    try:
        solution, params = matrix.gauss_jordan_solve(_target(element))
    except ValueError:
        return False
    return all(value != 0 for value in solution)
