import io
import logging
import random
from itertools import product
from unittest import TestCase, main

import networkx as nx

import dspkit
from dspkit.graph_core import DistanceOracle, Graph, Instance, Solution, UNREACHABLE, between, bfs_distances, \
    compute_positions, format_instance, format_solution, parse_instance, parse_solution, verify_solution
from dspkit.instances import builtin_fig1, builtin_fig1_solution
from dspkit.utils import InstanceFormatError, InvalidInstanceError
from .test_base import random_graph, random_instances, to_networkx


FIG1_POSITIONS = {
    0: (0, 3), 1: (1, 2), 2: (2, 2), 3: (2, 1), 4: (3, 0), 5: (5, 4), 6: (4, 3),
    7: (3, 3), 8: (2, 2), 9: (3, 3), 10: (4, 4), 11: (5, 5), 12: (5, 2), 13: (4, 1),
}


class ParseInstanceTestCase(TestCase):
    def test_minimal_instance(self):
        instance = parse_instance("p dsp 2 1 1\ne 0 1\nt 0 1\n")
        self.assertEqual(instance.n, 2)
        self.assertEqual(instance.graph.m, 1)
        self.assertEqual(instance.terminals, ((0, 1),))

    def test_fig1_file(self):
        text = format_instance(builtin_fig1(), ["crossing example"])
        self.assertTrue(text.startswith("c crossing example\np dsp 14 18 2\n"))
        instance = parse_instance(io.StringIO(text))
        self.assertEqual(instance.n, 14)
        self.assertEqual(instance.graph.m, 18)
        self.assertEqual(instance, builtin_fig1())

    def test_bytes_input(self):
        instance = parse_instance(b"c bytes\np dsp 3 2 1\ne 0 1\ne 1 2\nt 0 2\n")
        self.assertEqual(instance.graph.adjacency, ((1,), (0, 2), (1,)))

    def test_non_ascii_input(self):
        with self.assertRaises(InstanceFormatError) as ctx:
            parse_instance(b"p dsp 3 2 1\ne 0 1\ne 1 2\nc caf\xc3\xa9\nt 0 2\n")
        self.assertEqual(ctx.exception.line_number, 4)
        self.assertIn("offset 29", str(ctx.exception))
        # Arabic-Indic digits would pass int().
        with self.assertRaises(InstanceFormatError) as ctx:
            parse_instance("p dsp 3 2 1\ne 0 1\ne 1 \u0662\nt 0 2\n")
        self.assertEqual(ctx.exception.line_number, 3)

    def test_equal_terminals_in_pair(self):
        with self.assertRaises(InvalidInstanceError) as ctx:
            parse_instance("p dsp 2 1 1\ne 0 1\nt 0 0\n")
        self.assertIn("distinct", str(ctx.exception))

    def test_repeated_terminal_across_pairs(self):
        with self.assertRaises(InvalidInstanceError):
            parse_instance("p dsp 4 2 2\ne 0 1\ne 2 3\nt 0 1\nt 1 3\n")

    def test_graph_invariants(self):
        with self.assertRaises(InvalidInstanceError):
            parse_instance("p dsp 2 2 1\ne 0 1\ne 1 0\nt 0 1\n")
        with self.assertRaises(InvalidInstanceError):
            parse_instance("p dsp 2 1 1\ne 1 1\nt 0 1\n")
        with self.assertRaises(InvalidInstanceError):
            parse_instance("p dsp 2 1 1\ne 0 2\nt 0 1\n")
        with self.assertRaises(InvalidInstanceError):
            parse_instance("p dsp 2 1 0\ne 0 1\n")

    def test_syntax_errors_carry_line_numbers(self):
        with self.assertRaises(InstanceFormatError) as ctx:
            parse_instance("c header follows\np dsp 2 1 1\ne 0 x\nt 0 1\n")
        self.assertEqual(ctx.exception.line_number, 3)
        with self.assertRaises(InstanceFormatError) as ctx:
            parse_instance("e 0 1\n")
        self.assertEqual(ctx.exception.line_number, 1)
        with self.assertRaises(InstanceFormatError):
            parse_instance("p dsp 2 2 1\ne 0 1\nt 0 1\n")
        with self.assertRaises(InstanceFormatError):
            parse_instance("p graph 2 1 1\ne 0 1\nt 0 1\n")
        with self.assertRaises(InstanceFormatError):
            parse_instance("p dsp 2 1 1\ne 0 1\nt 0 1\nx 3\n")
        with self.assertRaises(InstanceFormatError):
            parse_instance("")

    def setUp(self) -> None:
        dspkit.graph_core.logger.level = logging.CRITICAL


class DistancesTestCase(TestCase):
    def test_path_graph(self):
        graph = Graph(3, [(0, 1), (1, 2)])
        self.assertEqual(bfs_distances(graph, 0), [0, 1, 2])

    def test_disconnected_vertex(self):
        graph = Graph(3, [(0, 1)])
        self.assertIs(bfs_distances(graph, 0)[2], UNREACHABLE)

    def test_against_floyd_warshall(self):
        rng = random.Random(7)
        for _ in range(20):
            graph = random_graph(rng.randint(2, 30), rng.choice([0.1, 0.2, 0.4]), rng)
            fw = nx.floyd_warshall(to_networkx(graph))
            for u, v in product(range(graph.n), range(graph.n)):
                expected = fw[u][v]
                got = bfs_distances(graph, u)[v]
                if expected == float("inf"):
                    self.assertIs(got, UNREACHABLE)
                else:
                    self.assertEqual(got, int(expected))

    def test_fig1_positions(self):
        positions = compute_positions(builtin_fig1())
        for v, expected in FIG1_POSITIONS.items():
            self.assertEqual(positions[v], expected, "vertex {0}".format(v))

    def test_sources_at_origin(self):
        for instance in random_instances(10, 3, (6, 12), seed=3):
            positions = compute_positions(instance)
            for i, (s, _) in enumerate(instance.terminals):
                self.assertEqual(positions[s][i], 0)

    def test_between(self):
        graph = Graph(3, [(0, 1), (1, 2)])
        distances = DistanceOracle(graph)
        self.assertTrue(between(distances, 0, 1, 2))
        self.assertFalse(between(distances, 0, 2, 1))
        self.assertTrue(between(distances, 0, 0, 2))
        self.assertFalse(between(DistanceOracle(Graph(3, [(0, 1)])), 0, 1, 2))

    def test_between_against_path_enumeration(self):
        rng = random.Random(11)
        for _ in range(10):
            graph = random_graph(rng.randint(4, 12), 0.3, rng)
            g = to_networkx(graph)
            distances = DistanceOracle(graph)
            u, w = rng.sample(range(graph.n), 2)
            on_paths = set()
            if nx.has_path(g, u, w):
                for path in nx.all_shortest_paths(g, u, w):
                    on_paths.update(path)
            for v in range(graph.n):
                self.assertEqual(between(distances, u, v, w), v in on_paths)


class EmbeddingInvariantsTestCase(TestCase):
    graph_count = 15
    max_n = 30

    def test_basic_inequality(self):
        rng = random.Random(5)
        for _ in range(self.graph_count):
            n = rng.randint(6, self.max_n)
            for instance in random_instances(1, 2, (n, n), probs=(rng.choice([0.1, 0.2, 0.3]),),
                                             seed=rng.randint(0, 10 ** 6)):
                positions = compute_positions(instance)
                distances = DistanceOracle(instance.graph)
                for v, w in product(range(instance.n), range(instance.n)):
                    d = distances.dist(v, w)
                    if d is UNREACHABLE:
                        continue
                    for i in range(instance.k):
                        if positions[v][i] is not UNREACHABLE:
                            self.assertLessEqual(abs(positions[v][i] - positions[w][i]), d)

    def test_edges_change_positions_by_at_most_one(self):
        for instance in random_instances(10, 3, (6, 20), seed=9):
            positions = compute_positions(instance)
            for u, v in instance.graph.edges():
                for i in range(instance.k):
                    if positions[u][i] is not UNREACHABLE:
                        self.assertLessEqual(abs(positions[u][i] - positions[v][i]), 1)


class VerifySolutionTestCase(TestCase):
    def test_fig1_paths(self):
        verdict = verify_solution(builtin_fig1(), builtin_fig1_solution())
        self.assertTrue(verdict.ok, verdict.violation)
        self.assertEqual([len(p) - 1 for p in builtin_fig1_solution().paths], [5, 5])

    def test_not_shortest(self):
        candidate = Solution(((0, 1, 2, 3, 8, 7, 6, 5), (4, 3, 8, 9, 10, 11)))
        verdict = verify_solution(builtin_fig1(), candidate)
        self.assertFalse(verdict.ok)
        self.assertIn("not shortest", verdict.violation)

    def test_shared_vertex(self):
        candidate = Solution(((0, 1, 8, 7, 6, 5), (4, 3, 8, 9, 10, 11)))
        verdict = verify_solution(builtin_fig1(), candidate)
        self.assertFalse(verdict.ok)
        self.assertIn("disjointness", verdict.violation)

    def test_wrong_endpoints_and_non_edges(self):
        instance = builtin_fig1()
        verdict = verify_solution(instance, Solution(((1, 2, 7, 6, 5), (4, 3, 8, 9, 10, 11))))
        self.assertIn("endpoints", verdict.violation)
        verdict = verify_solution(instance, Solution(((0, 1, 7, 6, 5, 5), (4, 3, 8, 9, 10, 11))))
        self.assertIn("adjacency", verdict.violation)
        verdict = verify_solution(instance, Solution(((0, 1, 2, 7, 6, 5),)))
        self.assertFalse(verdict.ok)


class SolutionFormatTestCase(TestCase):
    def test_yes_and_no(self):
        text = format_solution(builtin_fig1_solution())
        self.assertEqual(text, "yes\npath 1: 0 1 2 7 6 5\npath 2: 4 3 8 9 10 11\n")
        self.assertEqual(parse_solution(text), builtin_fig1_solution())
        self.assertEqual(format_solution(None), "no\n")
        self.assertIsNone(parse_solution("no\n"))

    def test_malformed(self):
        for text in ("", "maybe\n", "yes\npath 1 0 1\n", "yes\npath 2: 0 1\n", "no\npath 1: 0\n",
                     "yes\npath 1: 0 1\npath 1: 0 1\n"):
            with self.assertRaises(InstanceFormatError, msg=text):
                parse_solution(text)

    def test_instance_text_round_trip(self):
        instance = Instance(Graph(4, [(0, 1), (1, 2), (2, 3)]), [(0, 3)])
        self.assertEqual(parse_instance(format_instance(instance)), instance)


if __name__ == '__main__':
    main()
