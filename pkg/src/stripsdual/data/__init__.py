"""Bundled micro-domains: (name, domain file, problem file)."""
from importlib import resources

MICRO_DOMAINS = ("logistics", "gripper", "blocks", "visitall")


def micro_domain(name: str) -> tuple[str, str]:
    """Return the ``(domain_text, problem_text)`` of a bundled micro-domain."""
    root = resources.files(__name__)
    return (
        (root / f"{name}-domain.pddl").read_text(encoding="utf-8"),
        (root / f"{name}-problem.pddl").read_text(encoding="utf-8"),
    )


def micro_domain_path(name: str, kind: str):
    return resources.files(__name__) / f"{name}-{kind}.pddl"
