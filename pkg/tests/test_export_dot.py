import shutil
from unittest import TestCase, main, skipUnless

from dspkit.export_dot import projection_graph, render
from dspkit.graph_core import Graph, Instance
from dspkit.instances import builtin_fig1, builtin_fig1_solution, gen_grid
from dspkit.utils import BadRequestError


class ProjectionGraphTestCase(TestCase):
    def test_fig1_nodes(self):
        source = render(projection_graph(builtin_fig1(), 0, 1))
        self.assertIn("p0_3", source)
        self.assertIn("0.000,-2.400!", source)
        # 2 and 8 share the lattice point (2,2).
        self.assertIn('label="2,8"', source)
        self.assertEqual(source.count("dashed"), 8)
        self.assertNotIn("red", source)

    def test_solution_edges(self):
        source = render(projection_graph(builtin_fig1(), 0, 1, builtin_fig1_solution()))
        self.assertEqual(source.count("color=red"), 5)
        self.assertEqual(source.count("color=blue"), 5)

    def test_unreachable_vertices_are_left_out(self):
        instance = Instance(Graph(5, [(0, 1), (2, 3)]), [(0, 1), (2, 3)])
        source = render(projection_graph(instance, 0, 1))
        self.assertNotIn("p0_", source)
        self.assertNotIn("dashed", source)

    def test_bad_requests(self):
        with self.assertRaises(BadRequestError):
            projection_graph(builtin_fig1(), 0, 0)
        with self.assertRaises(BadRequestError):
            projection_graph(builtin_fig1(), 0, 2)
        with self.assertRaises(BadRequestError):
            render(projection_graph(builtin_fig1(), 1, 0), "png")

    @skipUnless(shutil.which("neato"), "graphviz binaries are not installed")
    def test_svg(self):
        svg = render(projection_graph(gen_grid(3, 3), 0, 1), "svg")
        self.assertIn("<svg", svg)


if __name__ == '__main__':
    main()
