from django.core.management.base import BaseCommand, CommandError

from api.management.commands._lab import dump
from services.bell_service import BellRingVerifier


class Command(BaseCommand):
    help = 'Verify the Bell-ring counterexample identities'

    def add_arguments(self, parser):
        parser.add_argument('action', choices=['verify'])

    def handle(self, *args, **options):
        certificates = BellRingVerifier().verify_all()
        dump(self, {'certificates': certificates})
        if not all(c.passed for c in certificates):
            raise CommandError('Bell-ring identities failed', returncode=1)
