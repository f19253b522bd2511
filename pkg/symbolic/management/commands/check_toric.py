"""
Management command deciding whether an ideal can be made toric.

Usage:
    python manage.py check_toric symbolic/fixtures/ideals/ex42.ideal
    python manage.py check_toric ideal.txt --seed 3 --json
    python manage.py check_toric ideal.txt --affine
    python manage.py check_toric ideal.txt --assume-prime

Exit status: 0 toric, 1 definitively not toric, 2 the engine gave up,
3 unreadable or malformed input.
"""

import json

from django.core.management.base import BaseCommand, CommandError

from symbolic.exceptions import NonHomogeneousIdealError
from symbolic.management.commands._options import (
    EXIT_BAD_INPUT,
    add_engine_arguments,
    read_ideal_file,
)
from symbolic.serializers import ToricVerdictSerializer
from symbolic.toric import ToricOptions, ToricStatus, decide
from symbolic.utils.reporting import render_verdict


class Command(BaseCommand):
    help = "Decide whether an ideal becomes binomial and prime after a change of coordinates"

    def add_arguments(self, parser):
        add_engine_arguments(parser)
        parser.add_argument(
            "--assume-prime",
            action="store_true",
            help="Input is known prime: skip the binomiality recheck when dim t = dim V(I)",
        )

    def handle(self, *args, **options):
        ideal_file = read_ideal_file(options["path"])
        toric_options = ToricOptions(
            seed=options["seed"],
            max_retries=options["max_retries"],
            assume_prime=options["assume_prime"],
        )
        try:
            verdict = decide(ideal_file.to_ideal(), toric_options, affine=options["affine"])
        except NonHomogeneousIdealError as e:
            raise CommandError(f"{e} (pass --affine)", returncode=EXIT_BAD_INPUT)

        if options["json"]:
            self.stdout.write(json.dumps(ToricVerdictSerializer(verdict).data, indent=2))
        else:
            self.stdout.write(render_verdict(verdict, names=self._names(ideal_file, options)))

        if verdict.status is ToricStatus.TORIC:
            if not options["json"]:
                self.stdout.write(self.style.SUCCESS("Ideal can be made toric"))
            return
        if verdict.status is ToricStatus.INPUT_NOT_HANDLED:
            raise CommandError("Engine gave up; see diagnostics", returncode=verdict.status.exit_code)
        raise CommandError(f"Not toric: {verdict.status.value}", returncode=verdict.status.exit_code)

    def _names(self, ideal_file, options):
        names = list(ideal_file.ring.names)
        if options["affine"]:
            return ["1"] + names
        return names
