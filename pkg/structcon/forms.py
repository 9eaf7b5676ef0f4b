"""Reading zero-pattern spec documents.

A spec is a JSON object::

    {"algebra": "so", "n": 6,
     "drift": [{"terms": [{"basis": "B", "i": 1, "j": 4, "coeff": "2"}, ...]}, ...],
     "control": [{"basis": "B", "i": 1, "j": 2}, ...]}

Malformed documents raise :class:`~structcon.exceptions.ParseError`; documents
that are well-formed but describe an invalid pattern raise Django's
``ValidationError``.
"""
import io
import json
import os
from fractions import Fraction

from django import forms
from django.core.exceptions import ValidationError
from django.core.serializers.json import DjangoJSONEncoder
from django.core.validators import MaxValueValidator
from django.utils.translation import gettext_lazy as _

from structcon.algebra import TAGS, AlgebraElement, AlgebraKind, BasisElement, Family
from structcon.conf import app_settings
from structcon.exceptions import ParseError
from structcon.patterns import ControlPattern, DriftPattern, ZeroPatternPair


class SpecForm(forms.Form):
    algebra = forms.ChoiceField(choices=[(f.value, f.value) for f in Family])
    n = forms.IntegerField(min_value=2)

    def __init__(self, *args, **kwargs):
        super(SpecForm, self).__init__(*args, **kwargs)
        self.fields['n'].validators.append(MaxValueValidator(app_settings.MAX_N))

    def clean(self):
        cleaned_data = super(SpecForm, self).clean()
        if 'algebra' in cleaned_data and 'n' in cleaned_data:
            cleaned_data['kind'] = AlgebraKind(cleaned_data['algebra'], cleaned_data['n'])
        return cleaned_data


class BasisForm(forms.Form):
    basis = forms.ChoiceField(choices=[(t, t) for t in TAGS])
    i = forms.IntegerField(min_value=1)
    j = forms.IntegerField(min_value=1)

    def __init__(self, *args, **kwargs):
        self.kind = kwargs.pop('kind')
        super(BasisForm, self).__init__(*args, **kwargs)

    def clean(self):
        cleaned_data = super(BasisForm, self).clean()
        tag, i, j = cleaned_data.get('basis'), cleaned_data.get('i'), cleaned_data.get('j')
        if tag is None or i is None or j is None:
            return cleaned_data
        if not self.kind.admits(tag):
            raise forms.ValidationError(_("%(tag)s is not a basis of %(kind)s"), code='tag',
                                        params={'tag': tag, 'kind': str(self.kind)})
        if max(i, j) > self.kind.n:
            raise forms.ValidationError(_("index out of range 1..%(n)s"), code='range',
                                        params={'n': self.kind.n})
        if tag != 'E' and i >= j:
            raise forms.ValidationError(_("%(tag)s_ij needs i < j"), code='order', params={'tag': tag})
        cleaned_data['element'] = BasisElement(tag, i, j)
        return cleaned_data


class TermForm(BasisForm):
    coeff = forms.CharField()

    def clean_coeff(self):
        value = self.cleaned_data['coeff'].strip()
        try:
            coeff = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise forms.ValidationError(_("%(value)s is not a rational number"), code='coeff',
                                        params={'value': value})
        if not coeff:
            raise forms.ValidationError(_("rigid pattern coefficients must be nonzero"), code='zero')
        return coeff


def _messages(prefix, form):
    out = []
    for field, errors in form.errors.items():
        where = prefix if field == '__all__' else "{}.{}".format(prefix, field)
        out.extend("{}: {}".format(where, message) for message in errors)
    return out


def _expect(value, kind, where):
    if not isinstance(value, kind):
        raise ParseError("{} must be a JSON {}".format(where, {dict: 'object', list: 'array'}[kind]))
    return value


def _scalars(entry, where):
    # forms take scalars only; JSON numbers are passed through as text
    out = {}
    for key, value in entry.items():
        if isinstance(value, (dict, list)):
            raise ParseError("{}.{} must be a scalar".format(where, key))
        out[key] = value
    return out


def load_spec(data):
    """Validate an already decoded document."""
    _expect(data, dict, 'spec')
    for key in ('algebra', 'n', 'drift', 'control'):
        if key not in data:
            raise ParseError("spec is missing {!r}".format(key))
    head = SpecForm(data=_scalars({'algebra': data['algebra'], 'n': data['n']}, 'spec'))
    if not head.is_valid():
        raise ValidationError(_messages('spec', head))
    kind = head.cleaned_data['kind']

    errors = []
    bases = []
    for index, base in enumerate(_expect(data['drift'], list, 'drift')):
        where = 'drift[{}]'.format(index)
        terms = _expect(_expect(base, dict, where).get('terms'), list, where + '.terms')
        collected = []
        for position, term in enumerate(terms):
            term_where = '{}.terms[{}]'.format(where, position)
            form = TermForm(data=_scalars(_expect(term, dict, term_where), term_where), kind=kind)
            if form.is_valid():
                collected.append((form.cleaned_data['element'], form.cleaned_data['coeff']))
            else:
                errors.extend(_messages(term_where, form))
        if not terms:
            errors.append("{}: a drift base needs at least one term".format(where))
        elif collected and len(collected) == len(terms):
            element = AlgebraElement(kind, collected)
            if element.is_zero():
                errors.append("{}: terms cancel to zero".format(where))
            bases.append(element)

    controls = []
    for index, entry in enumerate(_expect(data['control'], list, 'control')):
        where = 'control[{}]'.format(index)
        form = BasisForm(data=_scalars(_expect(entry, dict, where), where), kind=kind)
        if form.is_valid():
            controls.append(form.cleaned_data['element'])
        else:
            errors.extend(_messages(where, form))

    if not data['drift']:
        errors.append("drift: at least one base is required")
    if not data['control']:
        errors.append("control: at least one basis element is required")
    if errors:
        raise ValidationError(errors)
    return ZeroPatternPair(DriftPattern(kind, bases), ControlPattern(kind, controls))


def parse_spec(text):
    try:
        data = json.loads(text)
    except ValueError as e:
        raise ParseError(getattr(e, 'msg', str(e)), line=getattr(e, 'lineno', None))
    return load_spec(data)


def read_spec(path):
    try:
        with io.open(path, encoding='utf-8') as handle:
            text = handle.read()
    except (IOError, OSError, UnicodeDecodeError) as e:
        raise ParseError("cannot read {}: {}".format(path, e))
    return parse_spec(text)


def spec_document(pair):
    """The JSON-ready document :func:`load_spec` turns back into ``pair``."""
    return {
        'algebra': pair.kind.family.value,
        'n': pair.kind.n,
        'drift': [{'terms': [{'basis': b.tag, 'i': b.i, 'j': b.j, 'coeff': str(c)} for b, c in base.items()]}
                  for base in pair.drift.bases],
        'control': [{'basis': b.tag, 'i': b.i, 'j': b.j} for b in pair.control.sorted_bases()],
    }


def dump_spec(pair):
    return json.dumps(spec_document(pair), cls=DjangoJSONEncoder, indent=2, sort_keys=True)


SPECS_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'specs')


def bundled_spec_path(name):
    """Path of a spec shipped with the package, e.g. ``bundled_spec_path('example2')``."""
    return os.path.join(SPECS_DIR, name if name.endswith('.json') else name + '.json')
