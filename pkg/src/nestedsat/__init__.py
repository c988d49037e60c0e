"""Linear-time satisfiability for nested CNF formulas."""

from .model import Clause, FlatClauseDB, build_db
from .nesting import NotNested, NotProperlyOrdered, is_nested, sort_nested, verify_order
from .prep import GeneratorConfig, generate_nested, normalize, parse_dimacs, read_dimacs
from .solver import SolveResult, Verdict, extract_witness, run, solve

__all__ = [
    "Clause", "FlatClauseDB", "build_db",
    "NotNested", "NotProperlyOrdered", "is_nested", "sort_nested", "verify_order",
    "GeneratorConfig", "generate_nested", "normalize", "parse_dimacs", "read_dimacs",
    "SolveResult", "Verdict", "extract_witness", "run", "solve",
]
