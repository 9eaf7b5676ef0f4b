"""Graphical conditions for structural controllability, and the sampling oracle.

The checkers read the drift/controlled graphs of a :class:`ZeroPatternPair`
and decide from graph conditions alone.  The oracle samples concrete drifts
from the rigid pattern and runs the Lie closure; :func:`cross_validate`
compares the two and flags any disagreement.
"""
import enum
import logging
from collections import namedtuple

from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from structcon import analysis, graphs
from structcon.algebra import Family, contains_sl, lie_closure
from structcon.conf import app_settings
from structcon.exceptions import KindMismatch
from structcon.patterns import coefficient_pool, control_generators, drift_is_basis_subset, sample_drift

logger = logging.getLogger(__name__)


class Verdict(enum.Enum):
    SUFFICIENT_YES = 'SufficientYes'
    EXACT_YES = 'ExactYes'
    EXACT_NO = 'ExactNo'
    NECESSARY_FAILED_NO = 'NecessaryFailedNo'
    INCONCLUSIVE = 'Inconclusive'

    def __str__(self):
        return self.value

    @property
    def positive(self):
        return self in (Verdict.SUFFICIENT_YES, Verdict.EXACT_YES)

    @property
    def negative(self):
        return self in (Verdict.EXACT_NO, Verdict.NECESSARY_FAILED_NO)


class Generated(enum.Enum):
    FULL = 'full'
    SL_ONLY = 'sl_only'
    NEITHER = 'neither'

    def __str__(self):
        return self.value


CITATIONS = {
    'so_necessary': _("so(n) necessity"),
    'so_sufficient': _("so(n) sufficiency"),
    'gl_necessary': _("gl(n) necessity"),
    'gl_controlled_loop': _("gl(n) controlled-loop sufficiency"),
    'gl_basis_drift': _("gl(n) basis-drift sufficiency"),
    'su_connected': _("su(n) connected-control criterion"),
    'su_necessary': _("su(n) necessity"),
    'su_split': _("su(n) split-control sufficiency"),
}


def cite(key, clause=None):
    """Criterion label, narrowed to one of its clauses when given."""
    if clause is None:
        return CITATIONS[key]
    return format_lazy("{}, {} ({})", CITATIONS[key], _("clause"), clause)


class ConditionEval(namedtuple('ConditionEval', ['name', 'holds', 'citation'])):
    __slots__ = ()

    def __new__(cls, name, holds, citation):
        if not citation:
            raise ValueError("a condition needs a citation")
        return super(ConditionEval, cls).__new__(cls, name, bool(holds), citation)


class OracleReport(namedtuple('OracleReport', [
        'kind', 'trials', 'dimensions', 'target', 'achieved_full', 'seed', 'pool', 'contains_sl'])):
    """Closure dimension of ``{sampled drift} + controls`` for each trial.

    ``contains_sl`` is only filled for gl(n): one flag per trial.
    """
    __slots__ = ()

    @property
    def max_dimension(self):
        return max(self.dimensions)

    def as_dict(self):
        return {
            'algebra': str(self.kind),
            'trials': self.trials,
            'dimensions': list(self.dimensions),
            'target': self.target,
            'achieved_full': self.achieved_full,
            'seed': self.seed,
            'pool': sorted(self.pool),
            'contains_sl': list(self.contains_sl) if self.contains_sl is not None else None,
        }


class Report(object):

    def __init__(self, kind, verdict, conditions, citation, oracle=None, witness=None):
        self.kind = kind
        self.verdict = verdict
        self.conditions = list(conditions)
        self.citation = citation
        self.oracle = oracle
        self.witness = witness

    @property
    def contradiction(self):
        if self.oracle is None:
            return False
        if self.verdict.positive:
            return not self.oracle.achieved_full
        if self.verdict.negative:
            return self.oracle.achieved_full
        return False

    @property
    def conclusion(self):
        term = _("controllable") if self.kind.compact else _("accessible")
        if self.verdict.positive:
            return _("structurally %(term)s") % {'term': term}
        if self.verdict.negative:
            return _("not structurally %(term)s") % {'term': term}
        return _("no graphical conclusion")

    def as_dict(self):
        return {
            'algebra': str(self.kind),
            'verdict': self.verdict.value,
            'citation': self.citation,
            'conclusion': self.conclusion,
            'conditions': [{'name': c.name, 'holds': c.holds, 'citation': c.citation}
                           for c in self.conditions],
            'witness': [list(step) for step in self.witness] if self.witness else None,
            'oracle': self.oracle.as_dict() if self.oracle is not None else None,
            'contradiction': self.contradiction,
        }

    def __repr__(self):
        return "<Report {} {}>".format(self.kind, self.verdict.value)


def _require(kind, family):
    if kind.family is not family:
        raise KindMismatch("expected {}, got {}".format(family.value, kind))


def _finish(pair, verdict, conditions, key, witness=None):
    logger.info("%s: %s (%s)", pair.kind, verdict.value, CITATIONS[key])
    return Report(pair.kind, verdict, conditions, CITATIONS[key], witness=witness)


def check_so(pair):
    _require(pair.kind, Family.SO)
    contr = graphs.contr_graph_so(pair.control)
    both = graphs.union(graphs.drift_graph_so(pair.drift), contr)
    connected = analysis.is_connected(both)
    large = all(len(c) >= 3 for c in analysis.components(contr))
    conditions = [
        ConditionEval(_("union graph is connected"), connected, cite('so_necessary')),
        ConditionEval(_("every controlled component has at least three nodes"), large,
                      cite('so_sufficient', 'i')),
    ]
    if not connected:
        return _finish(pair, Verdict.NECESSARY_FAILED_NO, conditions, 'so_necessary')
    if large:
        return _finish(pair, Verdict.SUFFICIENT_YES, conditions, 'so_sufficient')
    return _finish(pair, Verdict.INCONCLUSIVE, conditions, 'so_sufficient')


def _components_strong(g):
    return all(len(c) >= 2 and analysis.strongly_connected(g.subgraph(c))
               for c in analysis.weak_components(g))


def check_gl(pair):
    _require(pair.kind, Family.GL)
    contr = graphs.contr_graph_gl(pair.control)
    both = graphs.union(graphs.drift_graph_gl(pair.drift), contr)
    connected = analysis.strongly_connected(both)
    components_ok = _components_strong(contr)
    controlled_loop = bool(analysis.digraph_self_loops(contr))
    basis_drift = drift_is_basis_subset(pair.drift)
    union_loop = bool(analysis.digraph_self_loops(both))
    conditions = [
        ConditionEval(_("union graph is strongly connected"), connected, cite('gl_necessary')),
        ConditionEval(_("every weak controlled component is strongly connected with at least two nodes"),
                      components_ok, cite('gl_controlled_loop', 'i')),
        ConditionEval(_("controlled graph has a self-loop"), controlled_loop, cite('gl_controlled_loop', 'ii')),
        ConditionEval(_("drift bases are single basis elements"), basis_drift, cite('gl_basis_drift', 'i')),
        ConditionEval(_("union graph has a self-loop"), union_loop, cite('gl_basis_drift', 'ii')),
    ]
    if not connected:
        return _finish(pair, Verdict.NECESSARY_FAILED_NO, conditions, 'gl_necessary')
    if components_ok and controlled_loop:
        return _finish(pair, Verdict.SUFFICIENT_YES, conditions, 'gl_controlled_loop')
    if basis_drift and components_ok and union_loop:
        return _finish(pair, Verdict.SUFFICIENT_YES, conditions, 'gl_basis_drift')
    return _finish(pair, Verdict.INCONCLUSIVE, conditions, 'gl_controlled_loop')


def check_su(pair):
    _require(pair.kind, Family.SU)
    drift = graphs.drift_graph_su(pair.drift)
    contr = graphs.contr_graph_su(pair.control)
    both = graphs.union(drift, contr)
    loops = analysis.green_loops(both)
    odd, witness = analysis.has_odd_red_cycle(both)
    enabler = bool(loops) or odd
    contr_connected = analysis.is_connected(contr)
    conditions = [
        ConditionEval(_("controlled graph is connected"), contr_connected, cite('su_connected')),
        ConditionEval(_("union graph has a Green self-loop"), bool(loops), cite('su_connected', 'i')),
        ConditionEval(_("union graph has a cycle with an odd number of Red edges"), odd,
                      cite('su_connected', 'ii')),
    ]
    if contr_connected:
        verdict = Verdict.EXACT_YES if enabler else Verdict.EXACT_NO
        return _finish(pair, verdict, conditions, 'su_connected', witness)

    connected = analysis.is_connected(both)
    large = all(len(c) >= 3 for c in analysis.components(contr))
    simple_drift = not analysis.has_multi_edge(drift)
    conditions.extend([
        ConditionEval(_("union graph is connected"), connected, cite('su_necessary')),
        ConditionEval(_("every controlled component has at least three nodes"), large, cite('su_split', 'i')),
        ConditionEval(_("drift graph has no multi-edges"), simple_drift, cite('su_split', 'ii')),
    ])
    if not connected:
        return _finish(pair, Verdict.NECESSARY_FAILED_NO, conditions, 'su_necessary')
    if large and simple_drift and enabler:
        return _finish(pair, Verdict.SUFFICIENT_YES, conditions, 'su_split', witness)
    return _finish(pair, Verdict.INCONCLUSIVE, conditions, 'su_split', witness)


CHECKERS = {
    Family.SO: check_so,
    Family.GL: check_gl,
    Family.SU: check_su,
}


def check(pair):
    return CHECKERS[pair.kind.family](pair)


def check_generated_so(pattern):
    _require(pattern.kind, Family.SO)
    return analysis.is_connected(graphs.contr_graph_so(pattern))


def check_generated_gl(pattern):
    _require(pattern.kind, Family.GL)
    g = graphs.contr_graph_gl(pattern)
    if not analysis.strongly_connected(g):
        return Generated.NEITHER
    return Generated.FULL if analysis.digraph_self_loops(g) else Generated.SL_ONLY


def su_generation_clauses(pattern):
    """Truth of the three generating clauses for an su(n) control set, in order."""
    _require(pattern.kind, Family.SU)
    g = graphs.contr_graph_su(pattern)
    n = pattern.kind.n
    colours = {key for u, v, key in g.edges(keys=True)}
    blue = graphs.undirected_graph(n, [(u, v) for u, v, key in graphs.colored_edges(g) if key == graphs.BLUE])
    connected = analysis.is_connected(g)
    return (
        len(colours) >= 2 and analysis.is_connected(blue),
        connected and bool(analysis.green_loops(g)),
        connected and analysis.has_odd_red_cycle(g)[0],
    )


def check_generated_su(pattern):
    return any(su_generation_clauses(pattern))


def oracle(pair, trials=None, seed=None, pool=None):
    trials = app_settings.TRIALS if trials is None else int(trials)
    seed = app_settings.SEED if seed is None else int(seed)
    pool = coefficient_pool() if pool is None else frozenset(pool)
    if trials < 1:
        raise ValueError("the oracle needs at least one trial")
    kind = pair.kind
    controls = control_generators(pair.control)
    dimensions = []
    sl_flags = [] if kind.family is Family.GL else None
    for trial in range(trials):
        drift = sample_drift(pair.drift, pool, seed + trial)
        generators = ([drift] if drift else []) + controls
        closure = lie_closure(generators)
        dimensions.append(closure.dimension)
        if sl_flags is not None:
            sl_flags.append(contains_sl(closure.basis))
        logger.debug("%s trial %d (seed %d): dimension %d/%d in %d sweeps",
                     kind, trial, seed + trial, closure.dimension, kind.dimension, closure.steps)
    return OracleReport(
        kind=kind,
        trials=trials,
        dimensions=tuple(dimensions),
        target=kind.dimension,
        achieved_full=kind.dimension in dimensions,
        seed=seed,
        pool=pool,
        contains_sl=tuple(sl_flags) if sl_flags is not None else None,
    )


def cross_validate(pair, trials=None, seed=None, pool=None):
    report = check(pair)
    report.oracle = oracle(pair, trials=trials, seed=seed, pool=pool)
    if report.contradiction:
        logger.error("%s: checker says %s but the oracle reached %d/%d",
                     pair.kind, report.verdict.value, report.oracle.max_dimension, report.oracle.target)
    return report
