"""
Management command printing the stabilizer Lie algebra of an ideal.

Usage:
    python manage.py lie_algebra symbolic/fixtures/ideals/ex46.ideal
    python manage.py lie_algebra ideal.txt --affine --json
"""

import json

from django.core.management.base import BaseCommand, CommandError

from symbolic.exceptions import NonHomogeneousIdealError
from symbolic.liestab import affine_stabilizer_lie_algebra, stabilizer_lie_algebra
from symbolic.management.commands._options import (
    EXIT_BAD_INPUT,
    add_engine_arguments,
    read_ideal_file,
)
from symbolic.serializers import matrix_payload
from symbolic.utils.reporting import render_lie_algebra


class Command(BaseCommand):
    help = "Compute the Lie algebra of the stabilizer of an ideal"

    def add_arguments(self, parser):
        add_engine_arguments(parser)

    def handle(self, *args, **options):
        ideal = read_ideal_file(options["path"]).to_ideal()
        try:
            if options["affine"]:
                algebra = affine_stabilizer_lie_algebra(ideal)
            else:
                algebra = stabilizer_lie_algebra(ideal)
        except NonHomogeneousIdealError as e:
            raise CommandError(f"{e} (pass --affine)", returncode=EXIT_BAD_INPUT)

        if options["json"]:
            payload = {
                "dim_g": algebra.dim,
                "basis": [matrix_payload(member) for member in algebra.basis],
            }
            self.stdout.write(json.dumps(payload, indent=2))
        else:
            self.stdout.write(render_lie_algebra(algebra))
