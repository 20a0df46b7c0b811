"""PDDL front-end, grounding, and the GTF / plan file formats."""
from .grounder import GroundingReport, GroundOptions, ground, ground_with_report
from .gtf import format_plan, parse_plan, read_gtf, write_gtf
from .parser import ActionSchema, DomainAst, ProblemAst, parse_domain, parse_problem
from .writer import demangle, demangle_task, mangle, write_pddl

__all__ = [
    "ActionSchema",
    "DomainAst",
    "GroundOptions",
    "GroundingReport",
    "ProblemAst",
    "demangle",
    "demangle_task",
    "format_plan",
    "ground",
    "ground_with_report",
    "mangle",
    "parse_domain",
    "parse_plan",
    "parse_problem",
    "read_gtf",
    "write_gtf",
    "write_pddl",
]
