"""
Management command computing a maximal torus of the stabilizer of an ideal.

This part needs no Groebner basis and stays fast on ideals where the
binomiality and primality checks are out of reach.

Usage:
    python manage.py max_torus symbolic/fixtures/ideals/ex42.ideal
    python manage.py max_torus ideal.txt --seed 7 --show-basis
"""

import json

from django.core.management.base import BaseCommand, CommandError

from symbolic.exceptions import NonHomogeneousIdealError, RetryBudgetExceeded
from symbolic.liestab import (
    affine_stabilizer_lie_algebra,
    cartan_decomposition,
    stabilizer_lie_algebra,
)
from symbolic.management.commands._options import (
    EXIT_BAD_INPUT,
    EXIT_NOT_HANDLED,
    add_engine_arguments,
    read_ideal_file,
)
from symbolic.serializers import LieAlgebraReportSerializer
from symbolic.utils.reporting import render_torus


class Command(BaseCommand):
    help = "Compute the Cartan subalgebra of the stabilizer and its toral part"

    def add_arguments(self, parser):
        add_engine_arguments(parser)
        parser.add_argument(
            "--show-basis",
            action="store_true",
            help="Also print a basis of the toral part",
        )

    def handle(self, *args, **options):
        ideal = read_ideal_file(options["path"]).to_ideal()
        try:
            if options["affine"]:
                algebra = affine_stabilizer_lie_algebra(ideal)
            else:
                algebra = stabilizer_lie_algebra(ideal)
            decomposition = cartan_decomposition(
                algebra, seed=options["seed"], max_retries=options["max_retries"]
            )
        except NonHomogeneousIdealError as e:
            raise CommandError(f"{e} (pass --affine)", returncode=EXIT_BAD_INPUT)
        except RetryBudgetExceeded as e:
            raise CommandError(str(e), returncode=EXIT_NOT_HANDLED)

        if options["json"]:
            report = {"algebra": algebra, "decomposition": decomposition}
            self.stdout.write(json.dumps(LieAlgebraReportSerializer(report).data, indent=2))
        else:
            self.stdout.write(render_torus(algebra, decomposition, show_basis=options["show_basis"]))
