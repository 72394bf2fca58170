import io
import json
import os
import tempfile
from unittest import TestCase, main
from unittest.mock import patch

from dspkit.cli import run
from dspkit.constants import EXIT_ERROR, EXIT_NO, EXIT_UNKNOWN, EXIT_YES
from dspkit.graph_core import format_instance, format_solution, parse_instance, parse_solution, verify_solution
from dspkit.instances import builtin_fig1, builtin_fig1_solution, gen_grid
from dspkit.parser import create_parser, parse_cmdline
from .test_base import MockDevice
from .test_instances import TRIANGLE_MCC
from .test_oracle import star_instance


class CommandLineTestCase(TestCase):
    @classmethod
    def setUpClass(cls):
        parser = create_parser()
        cls.parser = parser


class TestSolverCommandLine(CommandLineTestCase):
    def test_invalid_combinations(self):
        with patch('sys.stderr', new=MockDevice()):
            with self.assertRaises(SystemExit):
                parse_cmdline(['solve', '-complete', '-budget', '5', 'x.dsp'])
            with self.assertRaises(SystemExit):
                parse_cmdline(['export-dot', '-a', '2', '-b', '2', 'x.dsp'])
            with self.assertRaises(SystemExit):
                parse_cmdline(['gen', 'grid', '-width', '1'])

    def test_invalid_choice(self):
        with patch('sys.stderr', new=MockDevice()):
            with self.assertRaises(SystemExit):
                self.parser.parse_args(['solve', '-algo', 'fast', 'x.dsp'])
            with self.assertRaises(SystemExit):
                self.parser.parse_args(['frobnicate'])

    def test_invalid_values(self):
        with patch('sys.stderr', new=MockDevice()):
            with self.assertRaises(SystemExit):
                self.parser.parse_args(['solve', '-budget', '0', 'x.dsp'])
            with self.assertRaises(SystemExit):
                self.parser.parse_args(['gen', 'random', '-p', '1.5'])
            with self.assertRaises(SystemExit):
                self.parser.parse_args(['oracle', '-time_budget', '-1', 'x.dsp'])

    def test_default_values(self):
        args = parse_cmdline(['solve', 'x.dsp'])
        self.assertIsNone(args.configuration_file)
        self.assertIsNone(args.log_folder)
        self.assertEqual(args.console_log_level, "WARNING")
        self.assertEqual(args.algo, "auto")
        self.assertIsNone(args.budget)
        self.assertFalse(args.require_complete)
        self.assertFalse(args.trace)
        args = parse_cmdline(['gen', 'random'])
        self.assertEqual((args.n, args.p, args.k, args.seed), (12, 0.3, 2, 0))
        args = parse_cmdline(['export-dot', 'x.dsp'])
        self.assertEqual((args.a, args.b, args.format), (1, 2, "dot"))


class RunTestCase(TestCase):
    def setUp(self) -> None:
        self._folder = tempfile.TemporaryDirectory()
        self.folder = self._folder.name

    def tearDown(self) -> None:
        self._folder.cleanup()

    def write(self, name: str, text: str) -> str:
        path = os.path.join(self.folder, name)
        with open(path, "w") as f:
            f.write(text)
        return path

    def invoke(self, *argv):
        stdout, stderr = io.StringIO(), MockDevice()
        with patch('sys.stdout', new=stdout), patch('sys.stderr', new=stderr):
            code = run(['-console_log_level', 'CRITICAL'] + list(argv))
        return code, stdout.getvalue()

    def test_solve_fig1(self):
        path = self.write("fig1.dsp", format_instance(builtin_fig1()))
        for algo in ("auto", "dsp2", "kdsp"):
            code, out = self.invoke('solve', '-algo', algo, path)
            self.assertEqual(code, EXIT_YES, algo)
            self.assertTrue(out.startswith("yes\npath 1: 0 "), out)
            self.assertTrue(verify_solution(builtin_fig1(), parse_solution(out)).ok)

    def test_solve_with_trace(self):
        path = self.write("fig1.dsp", format_instance(builtin_fig1()))
        code, out = self.invoke('solve', '-algo', 'kdsp', '-trace', path)
        self.assertEqual(code, EXIT_YES)
        trace_lines = [line for line in out.splitlines() if line.startswith("c trace ")]
        self.assertEqual(len(trace_lines), 1)
        trace = json.loads(trace_lines[0][len("c trace "):])
        self.assertEqual(trace["1"], [0, 5])
        self.assertIsNotNone(parse_solution(out))

    def test_solve_no(self):
        path = self.write("star.dsp", format_instance(star_instance()))
        code, out = self.invoke('solve', path)
        self.assertEqual((code, out), (EXIT_NO, "no\n"))
        code, out = self.invoke('solve', '-algo', 'kdsp', '-complete', path)
        self.assertEqual((code, out), (EXIT_NO, "no\n"))

    def test_solve_unknown(self):
        path = self.write("fig1.dsp", format_instance(builtin_fig1()))
        with patch('dspkit.kdsp.GuessEvaluator.solve', return_value=None):
            code, out = self.invoke('solve', '-algo', 'kdsp', '-budget', '1', path)
        self.assertEqual((code, out), (EXIT_UNKNOWN, "unknown\n"))

    def test_solve_errors(self):
        self.assertEqual(self.invoke('solve', os.path.join(self.folder, "missing.dsp"))[0], EXIT_ERROR)
        bad = self.write("bad.dsp", "p dsp 2 1 1\ne 0 0\nt 0 1\n")
        self.assertEqual(self.invoke('solve', bad)[0], EXIT_ERROR)
        three = self.write("three.dsp", "p dsp 6 0 3\nt 0 1\nt 2 3\nt 4 5\n")
        self.assertEqual(self.invoke('solve', '-algo', 'dsp2', three)[0], EXIT_ERROR)
        self.assertEqual(self.invoke('solve')[0], EXIT_ERROR)

    def test_oracle(self):
        path = self.write("fig1.dsp", format_instance(builtin_fig1()))
        code, out = self.invoke('oracle', path)
        self.assertEqual(code, EXIT_YES)
        self.assertTrue(verify_solution(builtin_fig1(), parse_solution(out)).ok)
        grid = self.write("grid.dsp", format_instance(gen_grid(5, 5)))
        self.assertEqual(self.invoke('oracle', '-max_paths', '3', grid), (EXIT_UNKNOWN, "unknown\n"))

    def test_gen(self):
        code, out = self.invoke('gen', 'fig1')
        self.assertEqual(code, EXIT_YES)
        self.assertEqual(parse_instance(out), builtin_fig1())
        code, out = self.invoke('gen', 'random', '-n', '9', '-k', '3', '-seed', '5')
        self.assertTrue(out.startswith("c random n=9 p=0.3 k=3 seed=5\n"))
        self.assertEqual(out, self.invoke('gen', 'random', '-n', '9', '-k', '3', '-seed', '5')[1])
        self.assertEqual(parse_instance(out).k, 3)
        code, out = self.invoke('gen', 'grid', '-width', '3', '-height', '4')
        self.assertEqual(parse_instance(out), gen_grid(3, 4))

    def test_gen_mcc(self):
        code, out = self.invoke('gen', 'random-mcc', '-k', '2', '-seed', '3')
        self.assertEqual(code, EXIT_YES)
        self.assertTrue(out.startswith("p mcc "))
        mcc = self.write("triangle.mcc", TRIANGLE_MCC)
        code, out = self.invoke('gen', 'mcc', '-file', mcc, '-trace')
        self.assertEqual(code, EXIT_YES)
        self.assertIn("c reduced from triangle.mcc with k=3\n", out)
        self.assertIn("c vertex 0 s1\n", out)
        self.assertEqual(parse_instance(out).k, 6)

    def test_verify(self):
        instance = self.write("fig1.dsp", format_instance(builtin_fig1()))
        good = self.write("good.sol", format_solution(builtin_fig1_solution()))
        self.assertEqual(self.invoke('verify', instance, good), (EXIT_YES, "valid\n"))
        crossing = self.write("bad.sol", "yes\npath 1: 0 1 8 7 6 5\npath 2: 4 3 8 9 10 11\n")
        code, out = self.invoke('verify', instance, crossing)
        self.assertEqual(code, EXIT_NO)
        self.assertTrue(out.startswith("invalid: "))
        self.assertIn("disjoint", out)
        no = self.write("no.sol", "no\n")
        self.assertEqual(self.invoke('verify', instance, no)[0], EXIT_NO)
        garbage = self.write("garbage.sol", "maybe\n")
        self.assertEqual(self.invoke('verify', instance, garbage)[0], EXIT_ERROR)

    def test_bench(self):
        path = self.write("fig1.dsp", format_instance(builtin_fig1()))
        code, out = self.invoke('bench', '-algo', 'kdsp', path)
        self.assertEqual(code, EXIT_YES)
        record = json.loads(out)
        self.assertEqual((record["algo"], record["n"], record["m"], record["k"]), ("kdsp", 14, 18, 2))
        self.assertEqual(record["verdict"], "yes")
        self.assertTrue({"parse", "positions", "solve"}.issubset(record["phases"]))
        self.assertIn("peak_rss_mb", record)
        self.assertGreaterEqual(record["guesses_tried"], 1)
        code, out = self.invoke('bench', path)
        self.assertIn("dsp2_cases", json.loads(out))

    def test_bench_profile(self):
        path = self.write("fig1.dsp", format_instance(builtin_fig1()))
        logs = os.path.join(self.folder, "logs")
        code, _ = self.invoke('-log_folder', logs, 'bench', '-profile', path)
        self.assertEqual(code, EXIT_YES)
        self.assertTrue(os.path.isfile(os.path.join(logs, "dsp_bench_profile")))
        self.assertTrue(os.path.isfile(os.path.join(logs, "run.log")))

    def test_export_dot(self):
        path = self.write("fig1.dsp", format_instance(builtin_fig1()))
        sol = self.write("fig1.sol", format_solution(builtin_fig1_solution()))
        code, out = self.invoke('export-dot', '-solution', sol, path)
        self.assertEqual(code, EXIT_YES)
        self.assertIn("p0_3", out)
        self.assertEqual(self.invoke('export-dot', '-a', '1', '-b', '3', path)[0], EXIT_ERROR)

    def test_help(self):
        with patch('sys.stdout', new=io.StringIO()):
            self.assertEqual(run(['--help']), EXIT_YES)


if __name__ == '__main__':
    main()
