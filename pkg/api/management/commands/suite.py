from django.core.management.base import BaseCommand

from api.management.commands._lab import add_config_arguments, run_families


class Command(BaseCommand):
    help = 'Run every certificate family selected by the configuration and write the report'

    def add_arguments(self, parser):
        add_config_arguments(parser)
        parser.add_argument('--families', help='comma-separated subset of measure, operator, shift, bell')

    def handle(self, *args, **options):
        families = options['families'].split(',') if options.get('families') else None
        run_families(self, options, families)
