"""Exact arithmetic in the matrix Lie algebras so(n), gl(n) and su(n).

Elements are stored as sparse maps from canonical basis elements to
:class:`fractions.Fraction` coefficients.  Brackets are computed from the
structure constants of the ``E``/``B``/``C``/``D`` bases; the matrix route
(:func:`bracket_via_matrices`) is kept as an independent cross-check.
"""
import enum
import logging
import re
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache

import sympy

from structcon.exceptions import EmptyGenerators, KindMismatch, MembershipError

logger = logging.getLogger(__name__)

TAGS = ('B', 'C', 'D', 'E')


class Family(enum.Enum):
    SO = 'so'
    GL = 'gl'
    SU = 'su'


FAMILY_TAGS = {
    Family.SO: frozenset('B'),
    Family.GL: frozenset('E'),
    Family.SU: frozenset('BCD'),
}


class AlgebraKind(namedtuple('AlgebraKind', ['family', 'n'])):
    __slots__ = ()

    def __new__(cls, family, n):
        family = Family(family.lower()) if isinstance(family, str) else Family(family)
        n = int(n)
        if n < 2:
            raise ValueError("n must be at least 2, got {}".format(n))
        return super(AlgebraKind, cls).__new__(cls, family, n)

    def __str__(self):
        return "{}({})".format(self.family.value, self.n)

    @property
    def dimension(self):
        n = self.n
        if self.family is Family.SO:
            return n * (n - 1) // 2
        if self.family is Family.GL:
            return n * n
        return n * n - 1

    @property
    def compact(self):
        """SO(n) and SU(n) are compact, so accessibility means controllability."""
        return self.family is not Family.GL

    def admits(self, tag):
        return tag in FAMILY_TAGS[self.family]


class BasisElement(namedtuple('BasisElement', ['tag', 'i', 'j'])):
    """One of ``B_ij``, ``C_ij``, ``D_ij`` (``i < j``) or ``E_ij``, 1-based."""
    __slots__ = ()

    def __new__(cls, tag, i, j):
        tag = tag.upper()
        i, j = int(i), int(j)
        if tag not in TAGS:
            raise ValueError("unknown basis tag {!r}".format(tag))
        if i < 1 or j < 1:
            raise ValueError("indices are 1-based, got ({}, {})".format(i, j))
        if tag != 'E' and not i < j:
            raise ValueError("{}_ij requires i < j, got ({}, {})".format(tag, i, j))
        return super(BasisElement, cls).__new__(cls, tag, i, j)

    def __str__(self):
        if self.i < 10 and self.j < 10:
            return "{}_{}{}".format(self.tag, self.i, self.j)
        return "{}_{},{}".format(self.tag, self.i, self.j)

    def fits(self, kind):
        return kind.admits(self.tag) and max(self.i, self.j) <= kind.n


@lru_cache(maxsize=None)
def canonical_basis(kind):
    """Ordered basis: B by (i, j), then C, then D_12..D_1n, then E row-major."""
    n = kind.n
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    if kind.family is Family.SO:
        return tuple(BasisElement('B', i, j) for i, j in pairs)
    if kind.family is Family.GL:
        return tuple(BasisElement('E', i, j) for i in range(1, n + 1) for j in range(1, n + 1))
    return (tuple(BasisElement('B', i, j) for i, j in pairs)
            + tuple(BasisElement('C', i, j) for i, j in pairs)
            + tuple(BasisElement('D', 1, k) for k in range(2, n + 1)))


@lru_cache(maxsize=None)
def _positions(kind):
    return {b: index for index, b in enumerate(canonical_basis(kind))}


def dimension(kind):
    return kind.dimension


def _coefficient(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


class AlgebraElement(object):
    """An exact-rational combination of canonical basis elements of one algebra.

    ``D_ij`` with ``i > 1`` is rewritten as ``D_1j - D_1i`` on the way in so
    the stored form is unique.
    """
    __slots__ = ('kind', '_terms', '_hash')

    def __init__(self, kind, terms=()):
        if isinstance(terms, dict):
            terms = terms.items()
        acc = {}
        for basis, coeff in terms:
            if not isinstance(basis, BasisElement):
                basis = BasisElement(*basis)
            if not basis.fits(kind):
                raise MembershipError("{} is not a basis element of {}".format(basis, kind))
            coeff = _coefficient(coeff)
            if basis.tag == 'D' and basis.i > 1:
                _accumulate(acc, BasisElement('D', 1, basis.j), coeff)
                _accumulate(acc, BasisElement('D', 1, basis.i), -coeff)
            else:
                _accumulate(acc, basis, coeff)
        self.kind = kind
        self._terms = {b: c for b, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _canonical(cls, kind, terms):
        # terms already canonical and zero-free
        element = cls.__new__(cls)
        element.kind = kind
        element._terms = terms
        element._hash = None
        return element

    @classmethod
    def zero(cls, kind):
        return cls._canonical(kind, {})

    @classmethod
    def basis(cls, kind, tag, i, j, coeff=1):
        return cls(kind, [(BasisElement(tag, i, j), coeff)])

    @classmethod
    def parse(cls, kind, text):
        """Read ``3*B_12 - 1/2*C(1,3) + D_24`` style expressions."""
        return cls(kind, parse_terms(text))

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        order = _positions(self.kind)
        return sorted(self._terms.items(), key=lambda item: order[item[0]])

    def coefficient(self, basis):
        return self._terms.get(basis, Fraction(0))

    @property
    def support(self):
        return frozenset(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.kind != self.kind:
            raise KindMismatch("{} vs {}".format(self.kind, other.kind))
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for b, c in other._terms.items():
            _accumulate(acc, b, c)
        return AlgebraElement._canonical(self.kind, {b: c for b, c in acc.items() if c})

    def __neg__(self):
        return AlgebraElement._canonical(self.kind, {b: -c for b, c in self._terms.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, AlgebraElement):
            return NotImplemented
        scalar = _coefficient(scalar)
        if not scalar:
            return AlgebraElement.zero(self.kind)
        return AlgebraElement._canonical(self.kind, {b: c * scalar for b, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.kind == other.kind and self._terms == other._terms

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.kind, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        if not self._terms:
            return '0'
        out = []
        for basis, coeff in self.items():
            sign = '-' if coeff < 0 else '+'
            magnitude = abs(coeff)
            body = str(basis) if magnitude == 1 else "{}*{}".format(magnitude, basis)
            out.append((sign, body))
        text = ' '.join("{} {}".format(sign, body) for sign, body in out)
        return text[2:] if text.startswith('+ ') else '-' + text[2:]

    def __repr__(self):
        return "<AlgebraElement {}: {}>".format(self.kind, self)


def _accumulate(acc, key, value):
    total = acc.get(key, 0) + value
    if total:
        acc[key] = total
    else:
        acc.pop(key, None)


TERM_RE = re.compile(r"""
    \s*(?P<sign>[+-])?\s*
    (?:(?P<coeff>\d+(?:/\d+)?)\s*\*?\s*)?
    (?P<tag>[BCDEbcde])
    (?:_(?P<a>\d)(?P<b>\d)(?![\d,])
      |_(?P<c>\d+),(?P<d>\d+)
      |\(\s*(?P<e>\d+)\s*,\s*(?P<f>\d+)\s*\))
    \s*""", re.VERBOSE)


def parse_terms(text):
    """Split an expression into ``(BasisElement, Fraction)`` pairs."""
    terms = []
    position = 0
    text = text.strip()
    while position < len(text):
        match = TERM_RE.match(text, position)
        if match is None or match.end() == position:
            raise ValueError("cannot parse {!r} at offset {}".format(text, position))
        if terms and match.group('sign') is None:
            raise ValueError("missing operator before offset {} in {!r}".format(position, text))
        i = match.group('a') or match.group('c') or match.group('e')
        j = match.group('b') or match.group('d') or match.group('f')
        coeff = Fraction(match.group('coeff') or 1)
        if match.group('sign') == '-':
            coeff = -coeff
        terms.append((BasisElement(match.group('tag'), i, j), coeff))
        position = match.end()
    if not terms:
        raise ValueError("empty expression")
    return terms


# -- structure constants -----------------------------------------------------

def _add_b(acc, p, q, c):
    # B_pq with B_qp = -B_pq and B_pp = 0
    if p == q:
        return
    if p < q:
        _accumulate(acc, BasisElement('B', p, q), c)
    else:
        _accumulate(acc, BasisElement('B', q, p), -c)


def _add_c(acc, diag, p, q, c):
    # C_pq = C_qp; C_pp = 2i E_pp lands on the diagonal
    if p == q:
        _accumulate(diag, p, 2 * c)
    elif p < q:
        _accumulate(acc, BasisElement('C', p, q), c)
    else:
        _accumulate(acc, BasisElement('C', q, p), c)


def _bb(acc, i, j, k, l, c):
    # [B_ij, B_kl] = d_jk B_il + d_il B_jk - d_jl B_ik - d_ik B_jl
    if j == k:
        _add_b(acc, i, l, c)
    if i == l:
        _add_b(acc, j, k, c)
    if j == l:
        _add_b(acc, i, k, -c)
    if i == k:
        _add_b(acc, j, l, -c)


def _cc(acc, i, j, k, l, c):
    # [C_ij, C_kl] = -(d_jk B_il + d_il B_jk + d_jl B_ik + d_ik B_jl)
    if j == k:
        _add_b(acc, i, l, -c)
    if i == l:
        _add_b(acc, j, k, -c)
    if j == l:
        _add_b(acc, i, k, -c)
    if i == k:
        _add_b(acc, j, l, -c)


def _bc(acc, diag, i, j, k, l, c):
    # [B_ij, C_kl] = d_jk C_il - d_il C_jk + d_jl C_ik - d_ik C_jl
    if j == k:
        _add_c(acc, diag, i, l, c)
    if i == l:
        _add_c(acc, diag, j, k, -c)
    if j == l:
        _add_c(acc, diag, i, k, c)
    if i == k:
        _add_c(acc, diag, j, l, -c)


def _diagonal_weights(element):
    """Write the D part of an su(n) element as sum f_m * (i E_mm)."""
    weights = {}
    for basis, coeff in element._terms.items():
        if basis.tag == 'D':
            _accumulate(weights, basis.i, coeff)
            _accumulate(weights, basis.j, -coeff)
    return weights


def _bracket_gl(x, y):
    acc = {}
    for (_, i, j), a in x._terms.items():
        for (_, k, l), b in y._terms.items():
            # [E_ij, E_kl] = d_jk E_il - d_li E_kj
            if j == k:
                _accumulate(acc, BasisElement('E', i, l), a * b)
            if l == i:
                _accumulate(acc, BasisElement('E', k, j), -a * b)
    return acc


def _bracket_so(x, y):
    acc = {}
    for (_, i, j), a in x._terms.items():
        for (_, k, l), b in y._terms.items():
            _bb(acc, i, j, k, l, a * b)
    return acc


def _bracket_su(x, y):
    acc = {}
    diag = {}
    xs = [(b.tag, b.i, b.j, c) for b, c in x._terms.items() if b.tag != 'D']
    ys = [(b.tag, b.i, b.j, c) for b, c in y._terms.items() if b.tag != 'D']
    for tx, i, j, a in xs:
        for ty, k, l, b in ys:
            if tx == 'B' and ty == 'B':
                _bb(acc, i, j, k, l, a * b)
            elif tx == 'C' and ty == 'C':
                _cc(acc, i, j, k, l, a * b)
            elif tx == 'B':
                _bc(acc, diag, i, j, k, l, a * b)
            else:
                _bc(acc, diag, k, l, i, j, -a * b)
    # [iE_mm, B_kl] = (d_mk - d_ml) C_kl ; [iE_mm, C_kl] = -(d_mk - d_ml) B_kl
    for weights, others, sign in ((_diagonal_weights(x), ys, 1), (_diagonal_weights(y), xs, -1)):
        for m, f in weights.items():
            for tag, k, l, c in others:
                factor = (m == k) - (m == l)
                if not factor:
                    continue
                if tag == 'B':
                    _accumulate(acc, BasisElement('C', k, l), sign * factor * f * c)
                else:
                    _accumulate(acc, BasisElement('B', k, l), -sign * factor * f * c)
    # sum f_m iE_mm with sum f_m = 0 equals sum_{k>1} -f_k D_1k
    for m, f in diag.items():
        if m > 1:
            _accumulate(acc, BasisElement('D', 1, m), -f)
    return acc


_BRACKETS = {
    Family.GL: _bracket_gl,
    Family.SO: _bracket_so,
    Family.SU: _bracket_su,
}


def bracket(x, y):
    """Lie bracket ``[x, y]`` from the structure constants."""
    if x.kind != y.kind:
        raise KindMismatch("cannot bracket {} with {}".format(x.kind, y.kind))
    return AlgebraElement._canonical(x.kind, _BRACKETS[x.kind.family](x, y))


# -- matrices ------------------------------------------------------------------

def _rational(value):
    return sympy.Rational(value.numerator, value.denominator)


def to_matrix(element):
    n = element.kind.n
    m = sympy.zeros(n, n)
    for basis, coeff in element._terms.items():
        c = _rational(coeff)
        i, j = basis.i - 1, basis.j - 1
        if basis.tag == 'E':
            m[i, j] += c
        elif basis.tag == 'B':
            m[i, j] += c
            m[j, i] -= c
        elif basis.tag == 'C':
            m[i, j] += sympy.I * c
            m[j, i] += sympy.I * c
        else:
            m[i, i] += sympy.I * c
            m[j, j] -= sympy.I * c
    return sympy.ImmutableMatrix(m)


def _split(entry):
    entry = sympy.expand(sympy.sympify(entry))
    real, imag = entry.as_real_imag()
    if not (real.is_Rational and imag.is_Rational):
        raise MembershipError("entry {} is not a Gaussian rational".format(entry))
    return _coefficient(real), _coefficient(imag)


def decompose(matrix, kind):
    """Inverse of :func:`to_matrix`; raises MembershipError outside the algebra."""
    m = sympy.Matrix(matrix)
    n = kind.n
    if m.shape != (n, n):
        raise MembershipError("expected a {0}x{0} matrix, got {1}x{2}".format(n, *m.shape))
    parts = [[_split(m[r, c]) for c in range(n)] for r in range(n)]
    terms = []
    if kind.family is Family.GL:
        for r in range(n):
            for c in range(n):
                real, imag = parts[r][c]
                if imag:
                    raise MembershipError("gl(n) is real; entry ({}, {}) is complex".format(r + 1, c + 1))
                terms.append((BasisElement('E', r + 1, c + 1), real))
        return AlgebraElement(kind, terms)

    for r in range(n):
        for c in range(r, n):
            (re_rc, im_rc), (re_cr, im_cr) = parts[r][c], parts[c][r]
            if re_rc != -re_cr or im_rc != im_cr:
                raise MembershipError(
                    "not skew-{} at ({}, {})".format('symmetric' if kind.family is Family.SO else 'Hermitian',
                                                     r + 1, c + 1))
            if kind.family is Family.SO and (im_rc or im_cr):
                raise MembershipError("so(n) is real; entry ({}, {}) is complex".format(r + 1, c + 1))
            if r < c:
                terms.append((BasisElement('B', r + 1, c + 1), re_rc))
                if kind.family is Family.SU:
                    terms.append((BasisElement('C', r + 1, c + 1), im_rc))
    if kind.family is Family.SU:
        weights = [parts[k][k][1] for k in range(n)]
        if sum(weights):
            raise MembershipError("su(n) elements are traceless")
        for k in range(1, n):
            terms.append((BasisElement('D', 1, k + 1), -weights[k]))
    return AlgebraElement(kind, terms)


def bracket_via_matrices(x, y):
    """``XY - YX`` decomposed back into the basis; independent of :func:`bracket`."""
    if x.kind != y.kind:
        raise KindMismatch("cannot bracket {} with {}".format(x.kind, y.kind))
    mx, my = to_matrix(x), to_matrix(y)
    return decompose((mx * my - my * mx).applyfunc(sympy.expand), x.kind)


# -- spans and closures ----------------------------------------------------------

class SpanBasis(object):
    """Reduced row-echelon basis of a subspace, pivots strictly increasing."""
    __slots__ = ('kind', '_pivots', '_rows')

    def __init__(self, kind, pivots=(), rows=()):
        self.kind = kind
        self._pivots = tuple(pivots)
        self._rows = tuple(rows)

    @classmethod
    def empty(cls, kind):
        return cls(kind)

    @property
    def rank(self):
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self):
        return self._pivots

    @property
    def rows(self):
        basis = canonical_basis(self.kind)
        return tuple(AlgebraElement._canonical(self.kind, {basis[p]: c for p, c in row.items()})
                     for row in self._rows)

    def is_full(self):
        return self.rank == self.kind.dimension

    def _reduce(self, vector):
        for pivot, row in zip(self._pivots, self._rows):
            c = vector.get(pivot)
            if c:
                for p, v in row.items():
                    _accumulate(vector, p, -c * v)
        return vector

    def __repr__(self):
        return "<SpanBasis {} rank {}>".format(self.kind, self.rank)


def _vector(element):
    order = _positions(element.kind)
    return {order[b]: c for b, c in element._terms.items()}


def _check_kind(basis, element):
    if basis.kind != element.kind:
        raise KindMismatch("{} element in a {} span".format(element.kind, basis.kind))


def span_insert(basis, element):
    """Return ``(new_basis, inserted)``; the input basis is left untouched."""
    _check_kind(basis, element)
    vector = basis._reduce(_vector(element))
    if not vector:
        return basis, False
    pivot = min(vector)
    scale = 1 / vector[pivot]
    vector = {p: v * scale for p, v in vector.items()}
    pivots, rows = [], []
    placed = False
    for old_pivot, row in zip(basis._pivots, basis._rows):
        if not placed and old_pivot > pivot:
            pivots.append(pivot)
            rows.append(vector)
            placed = True
        c = row.get(pivot)
        if c:
            row = dict(row)
            for p, v in vector.items():
                _accumulate(row, p, -c * v)
        pivots.append(old_pivot)
        rows.append(row)
    if not placed:
        pivots.append(pivot)
        rows.append(vector)
    return SpanBasis(basis.kind, pivots, rows), True


def span_contains(basis, element):
    _check_kind(basis, element)
    return not basis._reduce(_vector(element))


Closure = namedtuple('Closure', ['basis', 'dimension', 'steps'])


def lie_closure(generators):
    """Span of the Lie subalgebra generated by ``generators``.

    Each sweep brackets the elements inserted by the previous sweep against
    every element inserted so far; the loop ends when a sweep adds nothing or
    the span fills the whole algebra.
    """
    generators = list(generators)
    if not generators:
        raise EmptyGenerators("lie_closure needs at least one generator")
    kind = generators[0].kind
    span = SpanBasis.empty(kind)
    members = []
    for g in generators:
        if g.kind != kind:
            raise KindMismatch("mixed kinds {} and {}".format(kind, g.kind))
        span, inserted = span_insert(span, g)
        if inserted:
            members.append(g)
    target = kind.dimension
    start = 0
    steps = 0
    while start < len(members) and span.rank < target and steps < target:
        steps += 1
        fresh = []
        for position in range(start, len(members)):
            x = members[position]
            for y in members[:position]:
                z = bracket(x, y)
                if not z:
                    continue
                span, inserted = span_insert(span, z)
                if inserted:
                    fresh.append(z)
                    if span.rank == target:
                        break
            if span.rank == target:
                break
        logger.debug("%s closure sweep %d: rank %d", kind, steps, span.rank)
        start = len(members)
        members.extend(fresh)
    return Closure(span, span.rank, steps)


def contains_sl(basis):
    """True when the span contains sl(n): all E_ij (i != j) and E_ii - E_i+1,i+1."""
    kind = basis.kind
    if kind.family is not Family.GL:
        raise KindMismatch("contains_sl is defined for gl(n), got {}".format(kind))
    n = kind.n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and not span_contains(basis, AlgebraElement.basis(kind, 'E', i, j)):
                return False
    for i in range(1, n):
        h = AlgebraElement(kind, [(BasisElement('E', i, i), 1), (BasisElement('E', i + 1, i + 1), -1)])
        if not span_contains(basis, h):
            return False
    return True
