"""
Tests for the Gaussian graphical model front end.

Covers graph parsing, CI ideal construction, principal-minor saturation,
screening rows (with the toric pipeline mocked where only row assembly
matters), persisted records, the screenings API and the graph_model
command. Rows of the 4-vertex table are tagged slow.
"""

import json
from io import StringIO
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest.mock import patch

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase, tag
from rest_framework import status
from rest_framework.test import APITestCase

from graphical.gaussian import (
    NAMED_GRAPHS,
    Graph,
    ScreenRow,
    SymMatrixRing,
    ci_ideal,
    derive_seed,
    format_table,
    load_graph,
    parse_edge_list,
    parse_inline,
    screen,
    vanishing_ideal_candidate,
)
from graphical.models import ScreeningRecord
from symbolic.exceptions import GraphFormatError, RetryBudgetExceeded
from symbolic.groebner import ideals_equal, krull_dimension
from symbolic.toric import ToricStatus, ToricVerdict
from symbolic.utils.ideal_file import IdealFile


def paw_row(**overrides):
    values = {
        "label": "paw",
        "p": 4,
        "edges": [[1, 2], [1, 3], [1, 4], [2, 3]],
        "saturated": True,
        "seed": 11,
        "dim_ci": 8,
        "dim_model": 8,
        "lie_dim": 52,
        "cartan_dim": 8,
        "toral_dim": 8,
        "nilpotent_dim": 0,
        "status": "Toric",
        "toric": True,
    }
    values.update(overrides)
    return ScreenRow(**values)


# =============================================================================
# GRAPH TESTS
# =============================================================================


class GraphTests(SimpleTestCase):
    """Graph validation and parsing"""

    def test_edges_are_normalized(self):
        """Edges are stored as (min, max) pairs"""
        graph = Graph(3, frozenset([(2, 1), (3, 2)]))
        self.assertEqual(graph.edges, frozenset([(1, 2), (2, 3)]))

    def test_loop_rejected(self):
        """A loop is not a valid edge"""
        with self.assertRaises(GraphFormatError):
            Graph(3, frozenset([(2, 2)]))

    def test_edge_outside_vertex_range_rejected(self):
        """Vertices are numbered 1..p"""
        with self.assertRaises(GraphFormatError):
            Graph(3, frozenset([(1, 4)]))

    def test_non_edges_of_cycle(self):
        """The 4-cycle misses the two diagonals"""
        self.assertEqual(NAMED_GRAPHS["cycle"].non_edges(), [(1, 3), (2, 4)])

    def test_connectivity(self):
        """Path is connected, two isolated vertices are not"""
        self.assertTrue(NAMED_GRAPHS["path"].is_connected())
        self.assertFalse(Graph(2).is_connected())

    def test_parse_inline(self):
        """Inline syntax p:i-j,..."""
        graph = parse_inline("4:1-2, 2-3,3-4", label="p4")
        self.assertEqual(graph.p, 4)
        self.assertEqual(graph.edges, NAMED_GRAPHS["path"].edges)
        self.assertEqual(graph.name, "p4")

    def test_parse_inline_empty_edge_list(self):
        """An edgeless graph has an empty edge part"""
        graph = parse_inline("3:")
        self.assertEqual(graph.edges, frozenset())
        self.assertEqual(len(graph.non_edges()), 3)

    def test_parse_inline_requires_prefix(self):
        """The vertex count is mandatory"""
        with self.assertRaises(GraphFormatError):
            parse_inline("1-2,2-3")

    def test_parse_inline_bad_edge(self):
        """Edges need a dash"""
        with self.assertRaises(GraphFormatError):
            parse_inline("3:1-2,23")

    def test_parse_edge_list(self):
        """p on the first line, then one pair per line, comments ignored"""
        text = "# claw\n4\n1 2\n1 3  # spoke\n\n1 4\n"
        graph = parse_edge_list(text, label="claw")
        self.assertEqual(graph.edges, NAMED_GRAPHS["claw"].edges)

    def test_parse_edge_list_bad_line(self):
        """Lines with the wrong number of fields are reported"""
        with self.assertRaisesMessage(GraphFormatError, "line 3"):
            parse_edge_list("3\n1 2\n2 3 4\n")

    def test_load_graph_variants(self):
        """Named graphs, files and inline graphs all load"""
        self.assertIs(load_graph("paw"), NAMED_GRAPHS["paw"])
        self.assertEqual(load_graph("3:1-2").edges, frozenset([(1, 2)]))
        with TemporaryDirectory() as tmp:
            path = Path(tmp) / "tri.txt"
            path.write_text("3\n1 2\n2 3\n1 3\n")
            graph = load_graph(str(path))
        self.assertTrue(graph.is_complete())
        self.assertEqual(graph.label, "tri")

    def test_load_graph_unknown(self):
        """Anything else is rejected"""
        with self.assertRaises(GraphFormatError):
            load_graph("no-such-graph")

    def test_inline_round_trip(self):
        """inline() re-parses to the same graph"""
        graph = NAMED_GRAPHS["diamond"]
        self.assertEqual(parse_inline(graph.inline()).edges, graph.edges)


# =============================================================================
# CI IDEAL TESTS
# =============================================================================


class SymMatrixRingTests(SimpleTestCase):
    """Symmetric matrix entries and minors"""

    def test_variable_names(self):
        """One variable per entry on or above the diagonal"""
        ring = SymMatrixRing(3)
        self.assertEqual(ring.ring.names, ("s11", "s12", "s13", "s22", "s23", "s33"))
        self.assertEqual(SymMatrixRing(4).ngens, 10)

    def test_large_matrices_use_separator(self):
        """Two-digit indices stay unambiguous"""
        ring = SymMatrixRing(10)
        self.assertIn("s1_10", ring.ring.names)
        self.assertEqual(ring.ngens, 55)

    def test_entries_are_symmetric(self):
        """s_ij and s_ji are the same variable"""
        ring = SymMatrixRing(3)
        self.assertEqual(ring.entry(1, 3), ring.entry(3, 1))

    def test_two_by_two_minor(self):
        """det [[s11, s12], [s12, s22]]"""
        ring = SymMatrixRing(2)
        expected = ring.ring.parse("s11*s22 - s12^2")
        self.assertEqual(ring.principal_minor((1, 2)), expected)

    def test_principal_subsets_smallest_first(self):
        """Saturation order: singletons, pairs, then larger subsets"""
        subsets = SymMatrixRing(3).principal_subsets()
        self.assertEqual(len(subsets), 7)
        self.assertEqual([len(s) for s in subsets], [1, 1, 1, 2, 2, 2, 3])


class CIIdealTests(SimpleTestCase):
    """Cofactor generators for non-edges"""

    def test_path_on_three_vertices(self):
        """The only non-edge {1,3} gives s12*s23 - s13*s22"""
        matrix_ring = SymMatrixRing(3)
        ideal = ci_ideal(NAMED_GRAPHS["path3"], matrix_ring)
        self.assertEqual(len(ideal.generators), 1)
        expected = matrix_ring.ring.parse("s12*s23 - s13*s22")
        self.assertEqual(ideal.generators[0], expected)

    def test_complete_graph_gives_zero_ideal(self):
        """No non-edges, no generators"""
        self.assertTrue(ci_ideal(NAMED_GRAPHS["complete3"]).is_zero())

    def test_cycle_generators_are_cubics(self):
        """Two non-edges, each a 3x3 determinant"""
        ideal = ci_ideal(NAMED_GRAPHS["cycle"])
        self.assertEqual(len(ideal.generators), 2)
        for generator in ideal.generators:
            self.assertTrue(generator.is_homogeneous())
            self.assertEqual(generator.degree(), 3)

    def test_generator_degree_is_p_minus_one(self):
        """Cofactors of a p x p matrix have degree p - 1"""
        ideal = ci_ideal(NAMED_GRAPHS["diamond_plus_edge"])
        self.assertEqual(len(ideal.generators), 4)
        self.assertTrue(all(g.degree() == 4 for g in ideal.generators))

    def test_relabeling_permutes_generators(self):
        """Swapping the end vertices of path3 maps the generator to itself up to sign"""
        graph = NAMED_GRAPHS["path3"]
        swapped = graph.relabel([3, 2, 1])
        self.assertEqual(swapped.edges, graph.edges)
        left = ci_ideal(graph).generators[0]
        right = ci_ideal(swapped).generators[0]
        self.assertIn(left, (right, -right))

    def test_path_ideal_dimension(self):
        """A single quadric in six variables cuts out a hypersurface"""
        self.assertEqual(krull_dimension(ci_ideal(NAMED_GRAPHS["path3"])), 5)

    def test_complete_graph_saturation_is_noop(self):
        """The zero ideal is returned unchanged"""
        graph = NAMED_GRAPHS["complete3"]
        ideal = ci_ideal(graph)
        self.assertIs(vanishing_ideal_candidate(ideal, graph), ideal)

    @tag("slow")
    def test_path_saturation_is_noop(self):
        """The path CI ideal is prime, so saturation leaves it alone"""
        graph = NAMED_GRAPHS["path3"]
        ideal = ci_ideal(graph)
        self.assertTrue(ideals_equal(vanishing_ideal_candidate(ideal, graph), ideal))


# =============================================================================
# SCREENING TESTS
# =============================================================================


class ScreenRowTests(SimpleTestCase):
    """Row assembly, seeds and table rendering"""

    def test_derive_seed_is_deterministic(self):
        """Same master seed and graph, same row seed"""
        graph = NAMED_GRAPHS["paw"]
        self.assertEqual(derive_seed(5, graph), derive_seed(5, graph))
        self.assertNotEqual(derive_seed(5, graph), derive_seed(5, NAMED_GRAPHS["claw"]))
        self.assertLess(derive_seed(2**40, graph), 2**32)

    def test_table_cells(self):
        """Unknown values print as '?' and the toric flag as yes/no"""
        self.assertEqual(paw_row().table_cells(), ["paw", "8", "52", "8", "yes"])
        partial = paw_row(lie_dim=None, toral_dim=None, toric=None)
        self.assertEqual(partial.table_cells(), ["paw", "8", "?", "?", "?"])

    def test_format_table(self):
        """Header plus one aligned line per row"""
        table = format_table([paw_row(), paw_row(label="diamond", toric=False)])
        lines = table.splitlines()
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[0].startswith("graph"))
        self.assertIn("dim max tori", lines[0])
        self.assertTrue(lines[2].endswith("no"))

    @patch("graphical.gaussian.decide_toric")
    def test_screen_copies_verdict(self, mock_decide):
        """Dimensions and status come from the toric verdict"""
        mock_decide.return_value = ToricVerdict(
            status=ToricStatus.NOT_BINOMIAL,
            lie_dim=7,
            cartan_dim=3,
            toral_dim=3,
            nilpotent_dim=0,
            diagnostics=["cartan dim 3"],
        )
        row = screen(NAMED_GRAPHS["path3"], seed=4)
        self.assertEqual(row.dim_ci, 5)
        self.assertEqual(row.dim_model, 5)
        self.assertEqual(row.lie_dim, 7)
        self.assertEqual(row.toral_dim, 3)
        self.assertEqual(row.status, "NotBinomial")
        self.assertFalse(row.toric)
        self.assertEqual(row.seed, 4)
        self.assertIn("cartan dim 3", row.diagnostics)
        self.assertEqual(mock_decide.call_args[0][1].seed, 4)

    @patch("graphical.gaussian.decide_toric")
    def test_screen_gave_up_leaves_toric_unknown(self, mock_decide):
        """InputNotHandled rows keep toric as None"""
        mock_decide.return_value = ToricVerdict(status=ToricStatus.INPUT_NOT_HANDLED, lie_dim=7)
        row = screen(NAMED_GRAPHS["path3"])
        self.assertIsNone(row.toric)
        self.assertEqual(row.status, "InputNotHandled")

    @patch("graphical.gaussian.decide_toric")
    def test_screen_partial_row_on_retry_exhaustion(self, mock_decide):
        """A failed Cartan search still yields a row with the dimension"""
        mock_decide.side_effect = RetryBudgetExceeded("cartan", 16)
        row = screen(NAMED_GRAPHS["path3"])
        self.assertEqual(row.dim_model, 5)
        self.assertIsNone(row.lie_dim)
        self.assertIsNone(row.status)
        self.assertTrue(any("16 attempts" in note for note in row.diagnostics))


@tag("slow")
class FourVertexTableTests(SimpleTestCase):
    """Rows of the 4-vertex table after principal-minor saturation"""

    def assertRow(self, name, expected):
        row = screen(NAMED_GRAPHS[name], saturate_minors=True, seed=0)
        self.assertEqual((row.dim_model, row.lie_dim, row.toral_dim, row.toric), expected)

    def test_paw(self):
        """paw: 8, 52, 8, toric"""
        self.assertRow("paw", (8, 52, 8, True))

    def test_claw(self):
        """claw: 7, 37, 7, toric"""
        self.assertRow("claw", (7, 37, 7, True))

    def test_path(self):
        """path: 7, 33, 7, toric"""
        self.assertRow("path", (7, 33, 7, True))

    def test_cycle(self):
        """cycle: 8, 4, 4, not toric"""
        self.assertRow("cycle", (8, 4, 4, False))

    def test_diamond(self):
        """diamond: 9, 30, 6, not toric"""
        self.assertRow("diamond", (9, 30, 6, False))


# =============================================================================
# MODEL AND API TESTS
# =============================================================================


class ScreeningRecordTests(TestCase):
    """Persisted screening rows"""

    def test_from_row(self):
        """Every row field lands in the record"""
        record = ScreeningRecord.from_row(paw_row(diagnostics=["ok"]))
        record.refresh_from_db()
        self.assertEqual(record.graph_label, "paw")
        self.assertEqual(record.vertex_count, 4)
        self.assertEqual(record.edges, [[1, 2], [1, 3], [1, 4], [2, 3]])
        self.assertEqual(record.lie_dim, 52)
        self.assertTrue(record.is_toric)
        self.assertEqual(record.diagnostics, ["ok"])
        self.assertEqual(str(record), "paw (Toric)")

    def test_complexity(self):
        """dim model minus torus dimension, unknown when either is missing"""
        record = ScreeningRecord.from_row(paw_row(label="diamond", dim_model=9, toral_dim=6))
        self.assertEqual(record.complexity, 3)
        partial = ScreeningRecord.from_row(paw_row(toral_dim=None, status=None, toric=None))
        self.assertIsNone(partial.complexity)
        self.assertEqual(str(partial), "paw (partial)")


class ScreeningAPITests(APITestCase):
    """GET /api/screenings/"""

    def setUp(self):
        ScreeningRecord.from_row(paw_row())
        ScreeningRecord.from_row(paw_row(label="diamond", dim_model=9, toral_dim=6, status="NotBinomial", toric=False))

    def test_list(self):
        """Both rows, paginated"""
        response = self.client.get("/api/screenings/")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["count"], 2)

    def test_filter_by_graph(self):
        """?graph= selects one label"""
        response = self.client.get("/api/screenings/", {"graph": "diamond"})
        self.assertEqual(response.data["count"], 1)
        result = response.data["results"][0]
        self.assertEqual(result["graph_label"], "diamond")
        self.assertEqual(result["complexity"], 3)

    def test_filter_by_toric(self):
        """?toric=true keeps toric rows"""
        response = self.client.get("/api/screenings/", {"toric": "true"})
        self.assertEqual(response.data["count"], 1)
        self.assertEqual(response.data["results"][0]["graph_label"], "paw")


# =============================================================================
# COMMAND TESTS
# =============================================================================


class GraphModelCommandTests(TestCase):
    """python manage.py graph_model"""

    def run_command(self, *args):
        out = StringIO()
        call_command("graph_model", *args, stdout=out)
        return out.getvalue()

    def test_ci_output_parses(self):
        """--ci writes an ideal file with one quadric for path3"""
        output = self.run_command("path3", "--ci")
        parsed = IdealFile.parse(output)
        self.assertEqual(len(parsed.generators), 1)
        self.assertEqual(parsed.generators[0].degree(), 2)
        self.assertEqual(len(parsed.ring.names), 6)

    def test_ci_output_file(self):
        """--output writes the file"""
        with TemporaryDirectory() as tmp:
            path = Path(tmp) / "cycle.ideal"
            self.run_command("cycle", "--ci", "--output", str(path))
            parsed = IdealFile.load(path)
        self.assertEqual(len(parsed.generators), 2)

    def test_ci_complete_graph_writes_zero_generator(self):
        """The zero ideal still round-trips"""
        parsed = IdealFile.parse(self.run_command("complete3", "--ci"))
        self.assertTrue(parsed.to_ideal().is_zero())

    def test_empty_graph_warns(self):
        """An edgeless graph is reported"""
        output = self.run_command("3:", "--ci")
        self.assertIn("has no edges", output)

    def test_bad_graph_exit_code(self):
        """Malformed graphs exit with status 3"""
        with self.assertRaises(CommandError) as ctx:
            self.run_command("3:1-1", "--ci")
        self.assertEqual(ctx.exception.returncode, 3)

    def test_output_needs_single_graph(self):
        """--output with two graphs is refused"""
        with self.assertRaises(CommandError):
            self.run_command("path3", "cycle", "--ci", "--output", "x.ideal")

    @patch("graphical.management.commands.graph_model.screen")
    def test_screen_json_and_save(self, mock_screen):
        """--json prints rows, --save persists them"""
        mock_screen.return_value = paw_row()
        output = self.run_command("paw", "--screen", "--saturate", "--save", "--json", "--seed", "3")
        rows = json.loads(output[output.index("[") :])
        self.assertEqual(rows[0]["lie_dim"], 52)
        self.assertEqual(ScreeningRecord.objects.count(), 1)
        kwargs = mock_screen.call_args.kwargs
        self.assertTrue(kwargs["saturate_minors"])
        self.assertEqual(kwargs["seed"], derive_seed(3, NAMED_GRAPHS["paw"]))

    @patch("graphical.management.commands.graph_model.screen")
    def test_table_keyword_expands(self, mock_screen):
        """'table' screens the five 4-vertex graphs"""
        mock_screen.side_effect = lambda graph, **kwargs: paw_row(label=graph.name)
        output = self.run_command("table")
        self.assertEqual(mock_screen.call_count, 5)
        for name in ("diamond", "paw", "cycle", "claw", "path"):
            self.assertIn(name, output)

    @patch("graphical.tasks.screen_inline")
    def test_enqueue_runs_task(self, mock_screen_inline):
        """With eager celery the task stores the row"""
        mock_screen_inline.return_value = paw_row()
        output = self.run_command("paw", "--enqueue")
        self.assertIn("Queued paw", output)
        self.assertEqual(ScreeningRecord.objects.get().graph_label, "paw")
        inline, label = mock_screen_inline.call_args[0][:2]
        self.assertEqual(inline, NAMED_GRAPHS["paw"].inline())
        self.assertEqual(label, "paw")
