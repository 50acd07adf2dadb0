"""Exception types raised by the engine.

Everything raised on purpose derives from EngineError so the CLI can map
data problems to exit code 1 while genuine bugs propagate as-is.
"""


class EngineError(Exception):
    """Base class for all expected engine failures."""


class CorpusError(EngineError):
    """Malformed corpus input (bad JSONL, missing fields, duplicate ids)."""


class PredictionError(EngineError):
    """Malformed or inconsistent predictions input."""


class ProviderError(EngineError):
    """Embedding provider failure (missing key, bad file, HTTP error)."""


class PlanError(EngineError):
    """Invalid experiment plan (bad regime, missing split files)."""
