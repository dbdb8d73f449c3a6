"""
Shared option handling for the laboratory commands
"""
import json
import logging

from django.conf import settings
from django.core.management.base import CommandError

from services.suite_service import SuiteRunner, parse_config
from utils.exceptions import LabError
from utils.helpers import serialize

logger = logging.getLogger(__name__)

# Options that map one-to-one onto config keys
CONFIG_OPTIONS = ('N', 'forbidden', 'depth', 'base_depth', 'resolution', 'n', 'seed', 'cap', 'emit', 'report')


def add_config_arguments(parser):
    parser.add_argument('--config', help='flat key = value configuration file')
    parser.add_argument('--N', dest='N', type=int, help='digit base N (at least 3)')
    parser.add_argument('--forbidden', action='append',
                        help='forbidden set as indices, e.g. "1,3"; repeat for several; "" is empty')
    parser.add_argument('--depth', type=int, help='approximant depth K')
    parser.add_argument('--base-depth', dest='base_depth', type=int, help='inner depth M')
    parser.add_argument('--resolution', type=int, help='cylinder resolution D')
    parser.add_argument('--n', dest='n', type=int, help='root order n')
    parser.add_argument('--seed', type=int, help='seed of every random construction')
    parser.add_argument('--cap', type=int, help='enumeration cap')
    parser.add_argument('--emit', help='comma-separated output formats: json, csv')
    parser.add_argument('--report', help='report directory')
    parser.add_argument('--exact-only', action='store_true', help='refuse float witnesses')


def load_config(options, families=None):
    flags = {key: options.get(key) for key in CONFIG_OPTIONS}
    if options.get('exact_only'):
        flags['float_mode'] = False
    if families is not None:
        flags['families'] = families
    try:
        return parse_config(options.get('config'), flags, defaults={'report': settings.JNLAB_REPORT_DIR})
    except LabError as exc:
        raise CommandError(str(exc), returncode=1)


def dump(command, payload):
    command.stdout.write(json.dumps(serialize(payload), sort_keys=True, indent=2))


def run_families(command, options, families=None):
    """Run, emit, print the summary; non-zero exit unless every executed certificate passed"""
    config = load_config(options, families)
    runner = SuiteRunner(workers=settings.JNLAB_WORKERS)
    report = runner.run_suite(config)
    try:
        paths = runner.emit_report(report)
    except LabError as exc:
        raise CommandError(str(exc), returncode=1)
    summary = report.to_dict()['summary']
    dump(command, {'summary': summary, 'files': [str(p) for p in paths]})
    if not report.passed:
        failed = [e.name for e in report.entries if e.executed and not e.passed]
        raise CommandError(f"certificates failed: {', '.join(failed)}", returncode=1)
