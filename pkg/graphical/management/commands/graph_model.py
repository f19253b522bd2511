"""
Management command for Gaussian graphical models.

Graphs are named (diamond, paw, cycle, claw, path, ...), inline
(``4:1-2,2-3,3-4``) or edge-list files with ``p`` on the first line.

Usage:
    python manage.py graph_model path3 --ci
    python manage.py graph_model 4:1-2,2-3,3-4,1-4 --ci --output cycle.ideal
    python manage.py graph_model paw --screen --saturate
    python manage.py graph_model diamond paw cycle claw path --saturate --jobs 4
    python manage.py graph_model table --saturate --save
    python manage.py graph_model diamond_plus_edge --enqueue
"""

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict

from django.core.management.base import BaseCommand, CommandError

from graphical.gaussian import (
    SCREEN_TABLE,
    SymMatrixRing,
    ci_ideal,
    derive_seed,
    format_table,
    load_graph,
    screen,
    screen_inline,
    vanishing_ideal_candidate,
)
from graphical.models import ScreeningRecord
from graphical.tasks import screen_graph_task
from symbolic.conf import get_setting
from symbolic.exceptions import GraphFormatError, GroebnerBudgetExceeded
from symbolic.management.commands._options import EXIT_BAD_INPUT, EXIT_NOT_HANDLED
from symbolic.utils.ideal_file import IdealFile


class Command(BaseCommand):
    help = "Write conditional-independence ideals of graphs or screen them for toricity"

    def add_arguments(self, parser):
        parser.add_argument(
            "graphs",
            nargs="+",
            help="Named graph, inline p:i-j,... graph or edge-list file; 'table' expands to the 4-vertex table",
        )
        mode = parser.add_mutually_exclusive_group()
        mode.add_argument("--ci", action="store_true", help="Write the CI ideal as an ideal file")
        mode.add_argument("--screen", action="store_true", help="Emit one table row per graph (default)")
        parser.add_argument(
            "--saturate",
            action="store_true",
            help="Saturate at the principal minors before computing dimensions",
        )
        parser.add_argument("--seed", type=int, default=None, help="Master seed; rows derive their own")
        parser.add_argument("--max-retries", type=int, default=None, help="Retry budget for randomized steps")
        parser.add_argument("--jobs", type=int, default=1, help="Screen rows in this many processes")
        parser.add_argument("--save", action="store_true", help="Persist screening rows")
        parser.add_argument(
            "--enqueue",
            action="store_true",
            help="Dispatch rows to the celery worker instead of screening here",
        )
        parser.add_argument("--json", action="store_true", help="Emit rows as a JSON list")
        parser.add_argument("--output", type=str, help="File for --ci output (single graph only)")

    def handle(self, *args, **options):
        graphs = self.load_graphs(options["graphs"])
        for graph in graphs:
            if not graph.edges:
                self.stdout.write(self.style.WARNING(f"Graph {graph.name} has no edges"))

        if options["ci"]:
            self.write_ci(graphs, options)
            return

        master_seed = get_setting("DEFAULT_SEED") if options["seed"] is None else options["seed"]
        jobs = [(graph, derive_seed(master_seed, graph)) for graph in graphs]

        if options["enqueue"]:
            for graph, seed in jobs:
                result = screen_graph_task.delay(
                    graph.inline(), graph.label, options["saturate"], seed, options["max_retries"]
                )
                self.stdout.write(f"Queued {graph.name} (task {result.id})")
            return

        rows = self.screen_rows(jobs, options)

        if options["save"]:
            for row in rows:
                ScreeningRecord.from_row(row)
            self.stdout.write(self.style.SUCCESS(f"Saved {len(rows)} screening rows"))

        if options["json"]:
            self.stdout.write(json.dumps([asdict(row) for row in rows], indent=2))
        else:
            self.stdout.write(format_table(rows))
            for row in rows:
                for note in row.diagnostics:
                    self.stdout.write(f"  {row.label}: {note}")

    def load_graphs(self, sources):
        graphs = []
        for source in sources:
            if source == "table":
                graphs.extend(load_graph(name) for name in SCREEN_TABLE)
                continue
            try:
                graphs.append(load_graph(source))
            except GraphFormatError as e:
                raise CommandError(f"{source}: {e}", returncode=EXIT_BAD_INPUT)
            except OSError as e:
                raise CommandError(f"Cannot read {source}: {e.strerror or e}", returncode=EXIT_BAD_INPUT)
        return graphs

    def write_ci(self, graphs, options):
        if options["output"] and len(graphs) != 1:
            raise CommandError("--output takes a single graph", returncode=EXIT_BAD_INPUT)

        documents = []
        for graph in graphs:
            matrix_ring = SymMatrixRing(graph.p)
            ideal = ci_ideal(graph, matrix_ring)
            comment = f"CI ideal of {graph.name} ({graph.inline()})"
            if options["saturate"]:
                try:
                    ideal = vanishing_ideal_candidate(ideal, graph, matrix_ring=matrix_ring)
                except GroebnerBudgetExceeded as e:
                    raise CommandError(str(e), returncode=EXIT_NOT_HANDLED)
                comment += ", saturated at principal minors"
            generators = list(ideal.generators) or [matrix_ring.ring.zero()]
            documents.append(IdealFile(matrix_ring.ring, generators, comments=[comment]))

        if options["output"]:
            documents[0].save(options["output"])
            self.stdout.write(self.style.SUCCESS(f"Wrote {options['output']}"))
            return
        self.stdout.write("\n".join(document.format() for document in documents), ending="")

    def screen_rows(self, jobs, options):
        saturate = options["saturate"]
        max_retries = options["max_retries"]
        if options["jobs"] > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=options["jobs"]) as pool:
                futures = [
                    pool.submit(screen_inline, graph.inline(), graph.label, saturate, seed, max_retries)
                    for graph, seed in jobs
                ]
                return [future.result() for future in futures]
        return [
            screen(graph, saturate_minors=saturate, seed=seed, max_retries=max_retries)
            for graph, seed in jobs
        ]
