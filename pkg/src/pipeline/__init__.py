from src.pipeline.catalog import CATALOG, FIXTURES_DIR, run_examples
from src.pipeline.context import PipelineContext
from src.pipeline.problem import ProblemFile, load_problem
from src.pipeline.runner import CommandOutcome, NambuPipelineRunner

__all__ = [
    "CATALOG",
    "FIXTURES_DIR",
    "CommandOutcome",
    "NambuPipelineRunner",
    "PipelineContext",
    "ProblemFile",
    "load_problem",
    "run_examples",
]
