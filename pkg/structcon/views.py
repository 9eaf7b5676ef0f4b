"""Text and JSON renderings of reports, oracle runs and closures."""
import json

from django.core.serializers.json import DjangoJSONEncoder
from django.template.loader import render_to_string


def to_json(data):
    return json.dumps(data, cls=DjangoJSONEncoder, indent=2, sort_keys=True) + '\n'


def _witness(steps):
    if not steps:
        return ''
    return ', '.join("{{{}, {}; {}}}".format(u, v, colour) for u, v, colour in steps)


def oracle_context(oracle):
    flags = oracle.contains_sl or [None] * oracle.trials
    return {
        'algebra': str(oracle.kind),
        'n': oracle.kind.n,
        'trials': oracle.trials,
        'seed': oracle.seed,
        'pool': sorted(oracle.pool),
        'target': oracle.target,
        'achieved_full': oracle.achieved_full,
        'rows': [{'index': index, 'seed': oracle.seed + index, 'dimension': dimension, 'sl': flag}
                 for index, (dimension, flag) in enumerate(zip(oracle.dimensions, flags))],
    }


def render_oracle(oracle, as_json=False):
    if as_json:
        return to_json(oracle.as_dict())
    return render_to_string('structcon/oracle.txt', oracle_context(oracle))


def render_report(report, as_json=False):
    if as_json:
        return to_json(report.as_dict())
    context = {
        'algebra': str(report.kind),
        'verdict': report.verdict.value,
        'citation': report.citation,
        'conclusion': report.conclusion,
        'conditions': report.conditions,
        'witness': _witness(report.witness),
        'contradiction': report.contradiction,
        'oracle': oracle_context(report.oracle) if report.oracle is not None else None,
    }
    return render_to_string('structcon/report.txt', context)


def render_closure(closure, generators, show_basis=False, as_json=False):
    kind = closure.basis.kind
    rows = [str(row) for row in closure.basis.rows] if show_basis else []
    if as_json:
        return to_json({
            'algebra': str(kind),
            'generators': [str(g) for g in generators],
            'dimension': closure.dimension,
            'target': kind.dimension,
            'steps': closure.steps,
            'basis': rows if show_basis else None,
        })
    return render_to_string('structcon/closure.txt', {
        'algebra': str(kind),
        'generators': [str(g) for g in generators],
        'dimension': closure.dimension,
        'target': kind.dimension,
        'steps': closure.steps,
        'rows': rows,
    })
