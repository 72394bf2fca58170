#!/usr/bin/env python3

# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

import sys
import os
import cProfile
import unittest

sys.path.append(os.path.dirname(os.path.realpath(__file__)))

from tests.test_dsp2 import Dsp2OracleEquivalenceTestCase, Dsp2ScaleTestCase
from tests.test_geometry import AreaTestCase, CrossingPropertiesTestCase
from tests.test_graph_core import EmbeddingInvariantsTestCase
from tests.test_instances import MccReductionTestCase
from tests.test_kdsp import DerivedGuessTestCase, KdspEquivalenceTestCase
from tests.test_layered_dag import DisjointPathsTestCase

do_profile = False

# The unit suites run with small counts; acceptance runs the same checks at full size.
ACCEPTANCE_SIZES = {
    Dsp2OracleEquivalenceTestCase: {"instance_count": 1000, "max_n": 12},
    DisjointPathsTestCase: {"dag_count": 500, "max_n": 10, "fast_count": 1000, "fast_max_n": 12},
    KdspEquivalenceTestCase: {"three_pair_count": 200, "three_pair_max_n": 8,
                              "two_pair_count": 300, "two_pair_max_n": 30},
    MccReductionTestCase: {"instance_count": 100, "max_per_color": 3},
    EmbeddingInvariantsTestCase: {"graph_count": 100, "max_n": 30},
    AreaTestCase: {"radius": 8},
    CrossingPropertiesTestCase: {"instance_count": 200},
    DerivedGuessTestCase: {"instance_count": 100},
    Dsp2ScaleTestCase: {"grid_side": 40, "seconds": 60.0},
}


def acceptance_suite() -> unittest.TestSuite:
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()
    for case, sizes in ACCEPTANCE_SIZES.items():
        for name, value in sizes.items():
            setattr(case, name, value)
        suite.addTests(loader.loadTestsFromTestCase(case))
    return suite


def run_acceptance() -> bool:
    result = unittest.TextTestRunner(verbosity=2).run(acceptance_suite())
    return result.wasSuccessful()


# Main entry point
if __name__ == '__main__':
    if do_profile:
        cProfile.run('run_acceptance()', '/tmp/dsp_acceptance_profile')
    else:
        sys.exit(0 if run_acceptance() else 1)
