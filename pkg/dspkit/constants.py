# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

LOGGER_NAME = "dsp"                   # Shared by every module and by pool workers.

# Exit codes of the command line client. These are a stable contract.
EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2
EXIT_UNKNOWN = 3

DSP_FORMAT_TAG = "dsp"                # Header tag of instance files: "p dsp <n> <m> <k>".
MCC_FORMAT_TAG = "mcc"                # Header tag of multicolored clique files.

# Default limits of the k-DSP guess enumeration and of the brute-force oracle.
# All of them can be overridden by the configuration file or the command line.
DEFAULT_GUESS_BUDGET = 200000
DEFAULT_CHUNK_SIZE = 16               # Guesses handed to a pool worker at a time.
DEFAULT_MAX_PATHS = 5000              # Shortest paths enumerated per terminal pair.
DEFAULT_MAX_TUPLES = 2000000          # Backtracking nodes visited by the oracle.
DEFAULT_TIME_BUDGET = 120.0           # Seconds.
DEFAULT_MCC_BUDGET = 1000000          # Candidate cliques checked by the MCC brute force.
DEFAULT_GEN_RETRIES = 1000            # Resampling attempts of the random generator.

# Messages longer than this are truncated before they cross a process boundary.
LOG_MESSAGE_MAX_CHARS = 3500
