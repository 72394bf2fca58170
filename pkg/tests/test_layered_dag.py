import random
from collections import Counter
from itertools import product
from unittest import TestCase, main

import networkx as nx

from dspkit.geometry import colored_in
from dspkit.graph_core import DistanceOracle, Graph, Instance, UNREACHABLE, compute_positions
from dspkit.instances import builtin_fig1
from dspkit.layered_dag import Dag, DagDisjointInstance, build_layered_dag, disjoint_paths_dag, kahn_order, \
    two_disjoint_paths_dag_fast
from dspkit.oracle import enumerate_shortest_paths
from dspkit.utils import BadRequestError, CyclicGraphError
from .test_base import brute_force_dag_disjoint, dag_paths, random_dag, random_instances


def check_paths(test: TestCase, dag: Dag, pairs, paths, blocked=frozenset()):
    forbidden = {v for pair in pairs for v in pair} | set(blocked)
    used = set()
    for (s, t), path in zip(pairs, paths):
        test.assertEqual((path[0], path[-1]), (s, t))
        for v, w in zip(path, path[1:]):
            test.assertTrue(dag.has_arc(v, w), "{0}->{1}".format(v, w))
        interior = set(path[1:-1])
        test.assertFalse(interior & forbidden)
        test.assertFalse(interior & used)
        used |= interior


def bottleneck_dag(depth, width):
    """
    Sources 0 and 1, `depth` complete layers of `width` vertices, then a single
    vertex z in front of both sinks. Vertex ids follow the layers.
    """
    layers = [[0, 1]] + [list(range(2 + i * width, 2 + (i + 1) * width)) for i in range(depth)]
    z = 2 + depth * width
    arcs = [[] for _ in range(z + 3)]
    for layer, nxt in zip(layers, layers[1:]):
        for v in layer:
            arcs[v] = list(nxt)
    for v in layers[-1]:
        arcs[v] = [z]
    arcs[z] = [z + 1, z + 2]
    return Dag(z + 3, arcs), ((0, z + 1), (1, z + 2))


class DagTestCase(TestCase):
    instance_count = 20

    def test_kahn_order(self):
        self.assertEqual(kahn_order(3, [[1, 2], [2], []]), [0, 1, 2])
        self.assertIsNone(kahn_order(3, [[1], [2], [0]]))

    def test_cycle_is_rejected(self):
        with self.assertRaises(CyclicGraphError):
            Dag(2, [[1], [0]])
        with self.assertRaises(CyclicGraphError):
            Dag(2, [[1], []], topo_order=[1, 0])
        with self.assertRaises(BadRequestError):
            Dag(2)

    def test_pair_arcs(self):
        dag = Dag(3, pair_arcs=[[[1], [2], []], [[2], [], []]])
        self.assertEqual(dag.arcs, ((1, 2), (2,), ()))
        self.assertEqual(dag.successors(0, 1), (2,))
        self.assertFalse(dag.has_arc(0, 1, 1))
        self.assertEqual(dag.arc_count, 3)

    def test_layered_dag_of_fig1(self):
        instance = builtin_fig1()
        positions = compute_positions(instance)
        for c in range(instance.k):
            dag = build_layered_dag(instance.graph, positions, c)
            g = nx.DiGraph()
            g.add_nodes_from(range(dag.n))
            g.add_edges_from((v, w) for v in range(dag.n) for w in dag.arcs[v])
            self.assertTrue(nx.is_directed_acyclic_graph(g))
            for v in range(dag.n):
                for w in dag.arcs[v]:
                    self.assertEqual(positions[w][c], positions[v][c] + 1)
            s, t = instance.terminals[c]
            self.assertEqual(nx.shortest_path_length(g, s, t), positions[t][c])

    def test_unreachable_vertices_have_no_arcs(self):
        graph = Graph(4, [(0, 1), (2, 3)])
        positions = compute_positions(Instance(graph, [(0, 1)]))
        dag = build_layered_dag(graph, positions, 0)
        self.assertEqual(dag.arcs, ((1,), (), (), ()))
        self.assertEqual(dag.topo_order[-2:], (2, 3))

    def test_layered_paths_are_colored_shortest_paths(self):
        instances = [builtin_fig1()] + list(random_instances(self.instance_count, 2, (6, 10), seed=41))
        for instance in instances:
            positions = compute_positions(instance)
            distances = DistanceOracle(instance.graph)
            for c in range(instance.k):
                dag = build_layered_dag(instance.graph, positions, c)
                for u, w in product(range(instance.n), range(instance.n)):
                    if positions[u][c] is UNREACHABLE or positions[w][c] is UNREACHABLE or \
                            positions[w][c] <= positions[u][c]:
                        continue
                    layered = set(dag_paths(dag, u, w))
                    shortest = set(enumerate_shortest_paths(instance.graph, u, w))
                    if colored_in(positions, distances, u, w, c):
                        self.assertEqual(layered, shortest, "{0} {1} {2}".format(u, w, c))
                    else:
                        self.assertEqual(layered, set(), "{0} {1} {2}".format(u, w, c))


class DisjointPathsTestCase(TestCase):
    dag_count = 60
    max_n = 8
    fast_count = 100
    fast_max_n = 12

    def test_against_brute_force(self):
        rng = random.Random(1)
        for _ in range(self.dag_count):
            n = rng.randint(4, self.max_n)
            p = rng.randint(1, min(3, n // 2))
            dag = random_dag(n, rng.choice([0.3, 0.5]), rng)
            terminals = rng.sample(range(n), 2 * p)
            pairs = tuple((terminals[2 * i], terminals[2 * i + 1]) for i in range(p))
            blocked = frozenset(rng.sample([v for v in range(n) if v not in terminals], 1)) \
                if n > 2 * p and rng.random() < 0.3 else frozenset()
            found = disjoint_paths_dag(DagDisjointInstance(dag, pairs), blocked)
            self.assertEqual(found is not None, brute_force_dag_disjoint(dag, pairs, blocked),
                             "{0} {1} {2}".format(dag.arcs, pairs, blocked))
            if found is not None:
                check_paths(self, dag, pairs, found, blocked)

    def test_fast_two_pair_variant(self):
        rng = random.Random(2)
        for _ in range(self.fast_count):
            n = rng.randint(4, self.fast_max_n)
            dag = random_dag(n, rng.choice([0.2, 0.4]), rng)
            a, b, c, d = rng.sample(range(n), 4)
            general = disjoint_paths_dag(DagDisjointInstance(dag, ((a, b), (c, d))))
            fast = two_disjoint_paths_dag_fast(dag, (a, b), (c, d))
            self.assertEqual(fast is not None, general is not None, "{0} {1}".format(dag.arcs, (a, b, c, d)))
            if fast is not None:
                check_paths(self, dag, ((a, b), (c, d)), fast)

    def test_single_arc_pairs(self):
        dag = Dag(4, [[1], [], [3], []])
        self.assertEqual(disjoint_paths_dag(DagDisjointInstance(dag, ((0, 1), (2, 3)))), [(0, 1), (2, 3)])
        self.assertEqual(two_disjoint_paths_dag_fast(dag, (0, 1), (2, 3)), ((0, 1), (2, 3)))

    def test_shared_middle_vertex(self):
        # Both pairs have to pass through vertex 4.
        dag = Dag(5, [[4], [], [4], [], [1, 3]])
        self.assertIsNone(disjoint_paths_dag(DagDisjointInstance(dag, ((0, 1), (2, 3)))))
        self.assertIsNone(two_disjoint_paths_dag_fast(dag, (0, 1), (2, 3)))
        self.assertEqual(disjoint_paths_dag(DagDisjointInstance(dag, ((0, 1),))), [(0, 4, 1)])
        self.assertIsNone(disjoint_paths_dag(DagDisjointInstance(dag, ((0, 1),)), frozenset({4})))

    def test_no_pairs(self):
        with self.assertRaises(BadRequestError):
            disjoint_paths_dag(DagDisjointInstance(Dag(1, [[]]), ()))

    def test_identical_pairs_in_a_diamond(self):
        # s=0 -> {1, 2} -> t=3
        dag = Dag(4, [[1, 2], [3], [3], []])
        pairs = ((0, 3), (0, 3))
        self.assertEqual(disjoint_paths_dag(DagDisjointInstance(dag, pairs)), [(0, 1, 3), (0, 2, 3)])
        self.assertEqual(two_disjoint_paths_dag_fast(dag, *pairs), ((0, 1, 3), (0, 2, 3)))
        self.assertTrue(brute_force_dag_disjoint(dag, pairs))
        self.assertIsNone(disjoint_paths_dag(DagDisjointInstance(dag, pairs + ((0, 3),))))

    def test_frontier_states_of_a_bottleneck(self):
        for depth, width in ((1, 2), (4, 4), (4, 8), (8, 4)):
            dag, pairs = bottleneck_dag(depth, width)
            stats = Counter()
            self.assertIsNone(disjoint_paths_dag(DagDisjointInstance(dag, pairs), stats=stats))
            expected = 1 + width + (3 * depth - 2) * width * (width - 1) + 2 * (width - 1)
            self.assertEqual(stats["frontier_states"], expected, "{0} {1}".format(depth, width))
            self.assertLessEqual(stats["frontier_states"], dag.n ** 2)
        # Two frontiers: quadratic in the layer width, linear in the depth.
        wide, deep = Counter(), Counter()
        disjoint_paths_dag(DagDisjointInstance(*bottleneck_dag(4, 16)), stats=wide)
        disjoint_paths_dag(DagDisjointInstance(*bottleneck_dag(16, 4)), stats=deep)
        self.assertGreater(wide["frontier_states"], 3 * deep["frontier_states"])


if __name__ == '__main__':
    main()
