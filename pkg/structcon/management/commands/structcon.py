import logging
import re

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from structcon import graphs, views
from structcon.algebra import AlgebraElement, AlgebraKind, lie_closure
from structcon.conf import app_settings
from structcon.exceptions import ParseError, StructconError
from structcon.forms import read_spec
from structcon.patterns import coefficient_pool, combine, control_generators, sample_drift
from structcon.verdict import check, cross_validate, oracle

VERBOSITY_LEVELS = {0: logging.ERROR, 1: logging.WARNING, 2: logging.INFO, 3: logging.DEBUG}

EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_CONTRADICTION = 3

# negative numbers and ranges such as -5..5 are values, not options
NEGATIVE_VALUE = re.compile(r"^-\d+(\.\.-?\d+)?$|^-\d*\.\d+$")


def _pool(value):
    low, sep, high = value.partition('..')
    if not sep:
        raise CommandError("--pool expects LOW..HIGH, got {!r}".format(value), returncode=EXIT_USAGE)
    try:
        return coefficient_pool(int(low), int(high))
    except ValueError as e:
        raise CommandError("--pool {}: {}".format(value, e), returncode=EXIT_USAGE)


class Command(BaseCommand):
    help = "Check structural controllability of bilinear systems from zero-pattern specs."
    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        self._actions = []
        parser = super(Command, self).create_parser(prog_name, subcommand, **kwargs)
        if prog_name == subcommand:
            parser.prog = prog_name
        # argparse errors become CommandError (exit 1) instead of exiting with 2
        for p in [parser] + self._actions:
            p.called_from_command_line = False
            p._negative_number_matcher = NEGATIVE_VALUE
        return parser

    def _action(self, subparsers, name, help_text):
        p = subparsers.add_parser(name, help=help_text)
        self._actions.append(p)
        return p

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='action', metavar='ACTION')
        subparsers.required = True

        p = self._action(subparsers, 'check', "evaluate the graphical conditions")
        p.add_argument('spec')
        p.add_argument('--json', action='store_true')

        p = self._action(subparsers, 'oracle', "sample drifts and compute closure dimensions")
        p.add_argument('spec')
        self._sampling_arguments(p)
        p.add_argument('--cross', action='store_true', help="also run the checker; exit 3 on disagreement")
        p.add_argument('--json', action='store_true')

        p = self._action(subparsers, 'closure', "dimension of a generated Lie algebra")
        p.add_argument('spec', nargs='?')
        p.add_argument('--algebra', choices=['so', 'gl', 'su'])
        p.add_argument('--n', type=int)
        p.add_argument('--generator', action='append', default=[],
                       help="inline generator such as '3*B_12 - 1/2*B_13'; repeatable")
        p.add_argument('--coefficients', help="comma separated drift coefficients instead of sampling")
        p.add_argument('--seed', type=int)
        p.add_argument('--pool', help="coefficient range LOW..HIGH such as -5..5, zero excluded")
        p.add_argument('--basis', action='store_true', help="print the echelon basis")
        p.add_argument('--json', action='store_true')

        p = self._action(subparsers, 'graph', "export drift, controlled or union graph as DOT")
        p.add_argument('spec')
        p.add_argument('--which', choices=['drift', 'contr', 'union'], default='union')
        p.add_argument('--format', choices=['dot'], default='dot')

        p = self._action(subparsers, 'report', "checker and oracle side by side; exit 3 on disagreement")
        p.add_argument('spec')
        self._sampling_arguments(p)
        p.add_argument('--json', action='store_true')

    def _sampling_arguments(self, parser):
        parser.add_argument('--trials', type=int)
        parser.add_argument('--seed', type=int)
        parser.add_argument('--pool', help="coefficient range LOW..HIGH such as -5..5, zero excluded")

    def _load(self, path):
        try:
            return read_spec(path)
        except ParseError as e:
            raise CommandError(str(e), returncode=EXIT_USAGE)
        except ValidationError as e:
            raise CommandError('; '.join(e.messages), returncode=EXIT_INVALID)

    def _sampling(self, options):
        trials = app_settings.TRIALS if options.get('trials') is None else options['trials']
        if trials < 1:
            raise CommandError("--trials must be at least 1", returncode=EXIT_USAGE)
        seed = app_settings.SEED if options.get('seed') is None else options['seed']
        pool = _pool(options['pool']) if options.get('pool') else coefficient_pool()
        return trials, seed, pool

    def handle(self, *args, **options):
        logging.getLogger('structcon').setLevel(VERBOSITY_LEVELS.get(options['verbosity'], logging.DEBUG))
        handler = getattr(self, 'handle_' + options['action'])
        try:
            return handler(**options)
        except StructconError as e:
            raise CommandError(str(e), returncode=EXIT_USAGE)

    def handle_check(self, **options):
        report = check(self._load(options['spec']))
        self.stdout.write(views.render_report(report, as_json=options['json']), ending='')

    def handle_oracle(self, **options):
        pair = self._load(options['spec'])
        trials, seed, pool = self._sampling(options)
        if not options['cross']:
            result = oracle(pair, trials=trials, seed=seed, pool=pool)
            self.stdout.write(views.render_oracle(result, as_json=options['json']), ending='')
            return
        report = cross_validate(pair, trials=trials, seed=seed, pool=pool)
        self.stdout.write(views.render_report(report, as_json=options['json']), ending='')
        if report.contradiction:
            raise CommandError("checker and oracle disagree", returncode=EXIT_CONTRADICTION)

    def handle_report(self, **options):
        options['cross'] = True
        self.handle_oracle(**options)

    def _inline_generators(self, options):
        if not options['algebra'] or not options['n']:
            raise CommandError("inline generators need --algebra and --n", returncode=EXIT_USAGE)
        try:
            kind = AlgebraKind(options['algebra'], options['n'])
            return [AlgebraElement.parse(kind, text) for text in options['generator']]
        except ValueError as e:
            raise CommandError(str(e), returncode=EXIT_INVALID)

    def handle_closure(self, **options):
        if options['spec']:
            pair = self._load(options['spec'])
            if options['coefficients']:
                try:
                    drift = combine(pair.drift, options['coefficients'].split(','))
                except ValueError as e:
                    raise CommandError("--coefficients: {}".format(e), returncode=EXIT_USAGE)
            else:
                seed = app_settings.SEED if options['seed'] is None else options['seed']
                pool = _pool(options['pool']) if options['pool'] else coefficient_pool()
                drift = sample_drift(pair.drift, pool, seed)
            generators = ([drift] if drift else []) + control_generators(pair.control)
        elif options['generator']:
            generators = self._inline_generators(options)
        else:
            raise CommandError("give a spec file or at least one --generator", returncode=EXIT_USAGE)
        closure = lie_closure(generators)
        self.stdout.write(views.render_closure(closure, generators, show_basis=options['basis'],
                                               as_json=options['json']), ending='')

    def handle_graph(self, **options):
        pair = self._load(options['spec'])
        drift = graphs.drift_graph(pair.drift)
        contr = graphs.contr_graph(pair.control)
        g = {'drift': drift, 'contr': contr}.get(options['which']) or graphs.union(drift, contr)
        self.stdout.write(graphs.to_dot(g, name=options['which']), ending='')
