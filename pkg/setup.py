#!/usr/bin/env python3

# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

# Entry point for pip; the package metadata lives in setup_dspkit.py.
import os
import runpy

runpy.run_path(os.path.join(os.path.dirname(os.path.realpath(__file__)), "setup_dspkit.py"), run_name="__main__")
