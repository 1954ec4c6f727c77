"""Constants for budgets, file formats and synthetic tokens."""

# Default resource caps (overridable via environment, see state.py)
DEFAULT_BUDGET_STATES = 2**20
DEFAULT_BUDGET_WORDS = 2**22
DEFAULT_BUDGET_MONOID = 2**16
DEFAULT_BUDGET_PATHS = 10**4
DEFAULT_BUDGET_VARIANTS = 10**3
DEFAULT_SEED = 0
DEFAULT_LOG_LEVEL = "WARNING"

# Environment variable names
ENV_BUDGET_STATES = "WINDOW_SPACE_BUDGET_STATES"
ENV_BUDGET_WORDS = "WINDOW_SPACE_BUDGET_WORDS"
ENV_BUDGET_MONOID = "WINDOW_SPACE_BUDGET_MONOID"
ENV_BUDGET_PATHS = "WINDOW_SPACE_BUDGET_PATHS"
ENV_BUDGET_VARIANTS = "WINDOW_SPACE_BUDGET_VARIANTS"
ENV_SEED = "WINDOW_SPACE_SEED"
ENV_LOG_LEVEL = "WINDOW_SPACE_LOG_LEVEL"

# Automaton text format keys, in emission order
AUTOMATON_KEYS = ("type", "alphabet", "states", "initial", "final")
AUTOMATON_TYPES = ("dfa", "nfa")
TRANSITION_ARROW = "->"
COMMENT_PREFIX = "#"

# Stream file format: this token expires the oldest window symbol
POP_TOKEN = "!"

# Name given to the rejecting sink added when totalizing a DFA
SINK_NAME = "sink"

# Output alphabet of the suffix-class transducer: class i is token f"c{i}"
CLASS_TOKEN_PREFIX = "c"

# Largest k accepted by the Z_k generator (the DFA has 2^k states plus a sink)
MAX_ZK = 6

# Number of random tokens fed by `simulate --verify`
VERIFY_RANDOM_TOKENS = 10**4

# Tracing
ENV_TRACING_ENABLED = "WINDOW_SPACE_TRACING_ENABLED"
ENV_OTLP_ENDPOINT = "WINDOW_SPACE_OTLP_ENDPOINT"
ENV_SERVICE_NAME = "WINDOW_SPACE_SERVICE_NAME"
DEFAULT_OTLP_ENDPOINT = "http://localhost:4318"
DEFAULT_SERVICE_NAME = "window-space"
