"""``structcon`` console script: the management command without a Django project."""
import sys

from django.core.management.base import CommandError

from structcon.conf import setup


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    setup()
    from structcon.management.commands.structcon import Command

    try:
        Command().run_from_argv(['structcon', 'structcon'] + argv)
    except CommandError as e:
        sys.stderr.write("structcon: {}\n".format(e))
        sys.exit(e.returncode)


if __name__ == '__main__':
    main()
