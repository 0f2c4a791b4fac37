import os
import sys

import django

# Set up Django environment
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings")


def cli_main(argv=None, stdout=None, stderr=None):
    """
    Run one nilsat subcommand and return its exit code instead of exiting:
    0 on success, 1 when a selfcheck suite fails, 2 on a usage error and 3
    on invalid input.
    """
    django.setup()
    from harness.management.commands.nilsat import Command

    argv = sys.argv[1:] if argv is None else list(argv)
    command = Command(stdout=stdout, stderr=stderr)
    try:
        command.run_from_argv(["manage.py", "nilsat", *argv])
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return 0


if __name__ == "__main__":
    sys.exit(cli_main())
