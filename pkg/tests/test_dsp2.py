import json
import logging
import time
from unittest import TestCase, main

import dspkit
from dspkit.dsp2 import Dsp2Case, Dsp2Solver, Dsp2Stats, Dsp2Tag, oriented_crossing_arcs, oriented_crossing_dag, \
    solve_dsp2
from dspkit.graph_core import Graph, Instance, compute_positions, verify_solution
from dspkit.instances import builtin_fig1, builtin_fig1_solution, gen_grid
from dspkit.oracle import OracleOutcome, oracle_solve
from dspkit.utils import BadRequestError
from .test_oracle import star_instance
from .test_base import random_instances


def half_crossing_instance() -> Instance:
    """
    The only solution crosses in the middle of the edges 3-4 (pair 1) and
    5-2 (pair 2). The other shortest path of pair 1 runs through vertex 2.
    """
    edges = [(0, 3), (0, 2), (1, 3), (1, 5), (3, 4), (5, 2), (4, 7), (2, 8), (2, 6), (6, 7)]
    return Instance(Graph(9, edges), [(0, 7), (1, 8)])


def delta_split_instance() -> Instance:
    """
    Pair 2 is the edge 1-2. Pair 1 can pass through 2 or around it via 3, the
    vertex that lines up with 2 in the first coordinate.
    """
    edges = [(0, 2), (0, 3), (1, 2), (3, 4), (4, 6), (2, 5), (5, 6)]
    return Instance(Graph(7, edges), [(0, 6), (1, 2)])


class Dsp2TestCase(TestCase):
    def test_fig1(self):
        result = Dsp2Solver(builtin_fig1()).solve()
        self.assertTrue(result.found)
        self.assertTrue(verify_solution(builtin_fig1(), result.solution).ok)
        self.assertEqual([len(p) - 1 for p in result.solution.paths], [5, 5])
        self.assertIn(result.case.tag, list(Dsp2Tag))
        self.assertEqual(result.stats.won[result.case.tag.value], 1)
        doc = result.case.describe()
        self.assertEqual(doc["tag"], result.case.tag.value)
        json.dumps(doc)
        self.assertIsInstance(result.serialize_json(), str)

    def test_wrong_pair_count(self):
        instance = Instance(Graph(6, [(0, 1), (2, 3), (4, 5)]), [(0, 1), (2, 3), (4, 5)])
        with self.assertRaises(BadRequestError):
            Dsp2Solver(instance)

    def test_no_instances(self):
        self.assertIsNone(solve_dsp2(star_instance()))
        self.assertIsNone(solve_dsp2(gen_grid(4, 4)))
        self.assertIsNone(solve_dsp2(Instance(Graph(4, [(0, 1)]), [(0, 1), (2, 3)])))

    def test_independent_pairs(self):
        instance = Instance(Graph(4, [(0, 1), (2, 3)]), [(0, 1), (2, 3)])
        solution = solve_dsp2(instance)
        self.assertEqual(solution.paths, ((0, 1), (2, 3)))

    def test_half_integer_crossing(self):
        instance = half_crossing_instance()
        result = Dsp2Solver(instance).solve()
        self.assertEqual(result.case.tag, Dsp2Tag.FRACTIONAL)
        self.assertEqual(result.case.corners, ((1, 1), (2, 2), (2, 1), (1, 2)))
        self.assertEqual(result.solution.paths, ((0, 3, 4, 7), (1, 5, 2, 8)))
        self.assertIs(oracle_solve(instance).outcome, OracleOutcome.YES)

    def test_crossing_edges_join_the_zones(self):
        instance = half_crossing_instance()
        case = Dsp2Case(Dsp2Tag.FRACTIONAL, corners=((1, 1), (2, 2), (2, 1), (1, 2)))
        arcs1, arcs2 = oriented_crossing_arcs(instance, compute_positions(instance), case)
        self.assertEqual(arcs1[3], [4])
        self.assertEqual(arcs2[5], [2])
        self.assertEqual(arcs1[0], [3])

    def test_delta_split(self):
        instance = delta_split_instance()
        result = Dsp2Solver(instance).solve()
        self.assertEqual(result.case.tag, Dsp2Tag.NONCROSSING)
        self.assertEqual((result.case.carrier, result.case.delta), (0, (1, 3)))
        self.assertEqual(result.solution.paths, ((0, 3, 4, 6), (1, 2)))

    def test_every_case_wins(self):
        stats = Dsp2Stats()
        separate = Instance(Graph(4, [(0, 1), (2, 3)]), [(0, 1), (2, 3)])
        for instance in (separate, delta_split_instance(), half_crossing_instance(), builtin_fig1()):
            self.assertIsNotNone(solve_dsp2(instance, stats))
        for tag in Dsp2Tag:
            self.assertGreaterEqual(stats.won[tag.value], 1, tag)

    def test_oriented_crossing_dag_of_fig1(self):
        instance = builtin_fig1()
        case = Dsp2Case(Dsp2Tag.INTEGER, pivot=(2, 2), owners=(0, 1))
        dag = oriented_crossing_dag(instance, compute_positions(instance), case)
        self.assertIsNotNone(dag)
        for i, path in enumerate(builtin_fig1_solution().paths):
            for v, w in zip(path, path[1:]):
                self.assertTrue(dag.has_arc(v, w, i), "{0}->{1}".format(v, w))

    def test_stats_are_shared(self):
        stats = Dsp2Stats()
        solve_dsp2(builtin_fig1(), stats)
        solve_dsp2(star_instance(), stats)
        self.assertGreater(sum(stats.attempted.values()), 0)
        self.assertEqual(sum(stats.won.values()), 1)
        self.assertEqual(set(stats.as_dict()), {"attempted", "won"})

    def setUp(self) -> None:
        dspkit.dsp2.logger.level = logging.CRITICAL


class Dsp2OracleEquivalenceTestCase(TestCase):
    instance_count = 150
    max_n = 12

    def test_against_oracle(self):
        mismatches = []
        for instance in random_instances(self.instance_count, 2, (4, self.max_n), seed=101):
            expected = oracle_solve(instance)
            self.assertIsNot(expected.outcome, OracleOutcome.LIMIT)
            solution = solve_dsp2(instance)
            if (solution is not None) != (expected.outcome is OracleOutcome.YES):
                mismatches.append(instance)
            if solution is not None:
                self.assertTrue(verify_solution(instance, solution).ok)
        self.assertEqual(mismatches, [])


class Dsp2ScaleTestCase(TestCase):
    grid_side = 8
    seconds = 60.0

    def test_grid(self):
        start = time.perf_counter()
        solution = solve_dsp2(gen_grid(self.grid_side, self.grid_side))
        self.assertIsNone(solution)
        self.assertLess(time.perf_counter() - start, self.seconds)

    def test_grid_with_a_detour(self):
        # Pair 2 runs down the last column, pair 1 along the first row and then down.
        side = self.grid_side
        last = side * side - 1
        instance = gen_grid(side, side, [(0, last - 1), (side - 1, last)])
        solution = solve_dsp2(instance)
        self.assertIsNotNone(solution)
        self.assertTrue(verify_solution(instance, solution).ok)


if __name__ == '__main__':
    main()
