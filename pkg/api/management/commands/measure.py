from django.core.management.base import BaseCommand

from api.management.commands._lab import add_config_arguments, run_families


class Command(BaseCommand):
    help = 'Run the measure certificates (weights, W1, translation, continuity, singularity, circle)'

    def add_arguments(self, parser):
        add_config_arguments(parser)

    def handle(self, *args, **options):
        run_families(self, options, ['measure'])
