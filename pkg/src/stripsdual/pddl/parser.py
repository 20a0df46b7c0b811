"""Parser for the STRIPS subset of PDDL (with optional typing).

Anything outside that subset, such as negative preconditions, disjunctions,
quantifiers, conditional effects or numeric fluents, is rejected with a
positioned :class:`~stripsdual.errors.PddlError`.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import PddlError, UnsupportedRequirement
from .sexp import SList, Sym, parse_sexp, pos

SUPPORTED_REQUIREMENTS = (":strips", ":typing")
UNSUPPORTED_CONNECTIVES = {
    "not", "or", "imply", "forall", "exists", "when", "=", "increase", "decrease",
    "assign", "scale-up", "scale-down", "preference",
}

Atom = tuple  # (predicate, (arg, ...))


@dataclass
class ActionSchema:
    name: str
    parameters: list[tuple[str, str]]
    precondition: list[Atom]
    add: list[Atom]
    delete: list[Atom]


@dataclass
class DomainAst:
    name: str
    requirements: tuple[str, ...] = (":strips",)
    types: dict[str, str] = field(default_factory=dict)
    constants: dict[str, str] = field(default_factory=dict)
    predicates: dict[str, list[tuple[str, str]]] = field(default_factory=dict)
    actions: list[ActionSchema] = field(default_factory=list)

    def is_subtype(self, sub: str, sup: str) -> bool:
        seen = set()
        while sub not in seen:
            if sub == sup:
                return True
            seen.add(sub)
            if sub not in self.types:
                return False
            sub = self.types[sub]
        return False


@dataclass
class ProblemAst:
    name: str
    domain: str
    objects: dict[str, str] = field(default_factory=dict)
    init: list[Atom] = field(default_factory=list)
    goal: list[Atom] = field(default_factory=list)


def _err(msg, node):
    return PddlError(msg, *pos(node))


def _expect_list(node, what):
    if not isinstance(node, SList):
        raise _err(f"expected {what}", node)
    return node


def _expect_sym(node, what):
    if not isinstance(node, Sym):
        raise _err(f"expected {what}", node)
    return str(node)


def _typed_list(items, what, allow_untyped_default="object"):
    """Parse ``a b - t c`` into [(a, t), (b, t), (c, object)]."""
    out, pending = [], []
    i = 0
    while i < len(items):
        item = items[i]
        if isinstance(item, Sym) and item == "-":
            if i + 1 >= len(items) or not pending:
                raise _err(f"dangling '-' in {what}", item)
            typ = items[i + 1]
            if isinstance(typ, SList):
                raise UnsupportedRequirement("'either' types are outside the STRIPS subset", *pos(typ))
            out.extend((name, str(typ)) for name in pending)
            pending = []
            i += 2
            continue
        pending.append(_expect_sym(item, f"name in {what}"))
        i += 1
    out.extend((name, allow_untyped_default) for name in pending)
    return out


def _header(tree, kind):
    tree = _expect_list(tree, "(define ...)")
    if len(tree) < 2 or tree[0] != "define":
        raise _err("expected (define ...)", tree)
    head = _expect_list(tree[1], f"({kind} <name>)")
    if len(head) != 2 or head[0] != kind:
        raise _err(f"expected ({kind} <name>)", head)
    return _expect_sym(head[1], f"{kind} name"), tree[2:]


def _check_requirements(node):
    reqs = []
    for r in node[1:]:
        r = _expect_sym(r, "requirement")
        if r not in SUPPORTED_REQUIREMENTS:
            raise UnsupportedRequirement(
                f"requirement {r} is outside the STRIPS subset (supported: "
                f"{' '.join(SUPPORTED_REQUIREMENTS)})",
                *pos(node[1:][len(reqs)]),
            )
        reqs.append(r)
    return tuple(reqs)


def _atom(node, what):
    node = _expect_list(node, what)
    if not node:
        raise _err(f"empty {what}", node)
    head = _expect_sym(node[0], "predicate name")
    if head in UNSUPPORTED_CONNECTIVES:
        raise UnsupportedRequirement(f"'{head}' in {what} is outside the STRIPS subset", *pos(node))
    if head == "and":
        raise _err(f"nested conjunction where an atom was expected in {what}", node)
    return head, tuple(_expect_sym(a, "argument") for a in node[1:])


def _conjunction(node, what):
    """Flatten a positive conjunction of atoms; ``(and)`` is empty."""
    node = _expect_list(node, what)
    if node and node[0] == "and":
        out = []
        for part in node[1:]:
            out.extend(_conjunction(part, what))
        return out
    return [_atom(node, what)]


def _effects(node):
    node = _expect_list(node, "effect")
    if node and node[0] == "and":
        add, dele = [], []
        for part in node[1:]:
            a, d = _effects(part)
            add += a
            dele += d
        return add, dele
    if node and node[0] == "not":
        if len(node) != 2:
            raise _err("(not ...) takes one atom", node)
        return [], [_atom(node[1], "delete effect")]
    return [_atom(node, "add effect")], []


def _keyword_args(items, owner):
    out = {}
    i = 0
    while i < len(items):
        key = items[i]
        if not isinstance(key, Sym) or not key.startswith(":"):
            raise _err(f"expected keyword in {owner}", key)
        if i + 1 >= len(items):
            raise _err(f"keyword {key} lacks a value", key)
        out[str(key)] = items[i + 1]
        i += 2
    return out


def parse_domain(text: str) -> DomainAst:
    name, sections = _header(parse_sexp(text), "domain")
    dom = DomainAst(name)
    raw_actions = []
    for sec in sections:
        sec = _expect_list(sec, "domain section")
        if not sec:
            raise _err("empty domain section", sec)
        key = _expect_sym(sec[0], "section keyword")
        if key == ":requirements":
            dom.requirements = _check_requirements(sec)
        elif key == ":types":
            for t, parent in _typed_list(sec[1:], ":types"):
                if t == "object":
                    continue
                dom.types[t] = parent
            for parent in list(dom.types.values()):
                if parent != "object" and parent not in dom.types:
                    dom.types[parent] = "object"
        elif key == ":constants":
            dom.constants.update(_typed_list(sec[1:], ":constants"))
        elif key == ":predicates":
            for p in sec[1:]:
                p = _expect_list(p, "predicate declaration")
                pname = _expect_sym(p[0], "predicate name") if p else None
                if pname is None:
                    raise _err("empty predicate declaration", p)
                if pname in dom.predicates:
                    raise _err(f"predicate {pname} declared twice", p)
                dom.predicates[pname] = _typed_list(p[1:], f"predicate {pname}")
        elif key == ":action":
            raw_actions.append(sec)
        elif key in (":functions", ":derived", ":durative-action", ":constraints"):
            raise UnsupportedRequirement(f"{key} is outside the STRIPS subset", *pos(sec))
        else:
            raise _err(f"unknown domain section {key}", sec)
    for sec in raw_actions:
        dom.actions.append(_action(sec, dom))
    _check_domain(dom)
    return dom


def _action(sec, dom):
    if len(sec) < 2:
        raise _err("action without a name", sec)
    aname = _expect_sym(sec[1], "action name")
    kw = _keyword_args(sec[2:], f"action {aname}")
    unknown = set(kw) - {":parameters", ":precondition", ":effect"}
    if unknown:
        raise _err(f"unknown keyword {sorted(unknown)[0]} in action {aname}", sec)
    params = _typed_list(_expect_list(kw.get(":parameters", SList()), ":parameters"), f"parameters of {aname}")
    pre_node = kw.get(":precondition")
    pre = [] if pre_node is None or (isinstance(pre_node, SList) and not pre_node) else _conjunction(pre_node, f"precondition of {aname}")
    eff_node = kw.get(":effect")
    add, dele = ([], []) if eff_node is None else _effects(eff_node)
    schema = ActionSchema(aname, params, pre, add, dele)
    seen = set()
    for var, typ in params:
        if not var.startswith("?"):
            raise _err(f"parameter {var} of {aname} must start with '?'", sec)
        if var in seen:
            raise _err(f"parameter {var} of {aname} declared twice", sec)
        seen.add(var)
    bound = dict(params)
    for atom in pre + add + dele:
        _check_atom(atom, dom, bound, f"action {aname}", sec)
    return schema


def _known_type(dom, typ):
    return typ == "object" or typ in dom.types


def _check_atom(atom, dom, bound, where, node):
    pred, args = atom
    if pred not in dom.predicates:
        raise _err(f"unknown predicate {pred} in {where}", node)
    if len(args) != len(dom.predicates[pred]):
        raise _err(
            f"predicate {pred} takes {len(dom.predicates[pred])} argument(s), got {len(args)} in {where}",
            node,
        )
    for arg in args:
        if arg.startswith("?"):
            if arg not in bound:
                raise _err(f"unbound variable {arg} in {where}", node)
        elif arg not in dom.constants:
            raise _err(f"unknown constant {arg} in {where}", node)


def _check_domain(dom):
    for typ in list(dom.types.values()) + list(dom.constants.values()):
        if not _known_type(dom, typ):
            raise PddlError(f"unknown type {typ}")
    for pred, params in dom.predicates.items():
        for _, typ in params:
            if not _known_type(dom, typ):
                raise PddlError(f"unknown type {typ} in predicate {pred}")
    names = set()
    for a in dom.actions:
        if a.name in names:
            raise PddlError(f"action {a.name} declared twice")
        names.add(a.name)
        for _, typ in a.parameters:
            if not _known_type(dom, typ):
                raise PddlError(f"unknown type {typ} in action {a.name}")


def parse_problem(text: str, domain: DomainAst | None = None) -> ProblemAst:
    """Parse a problem; when ``domain`` is given, also resolve and type-check it."""
    name, sections = _header(parse_sexp(text), "problem")
    prob = ProblemAst(name, "")
    nodes = {}
    for sec in sections:
        sec = _expect_list(sec, "problem section")
        if not sec:
            raise _err("empty problem section", sec)
        key = _expect_sym(sec[0], "section keyword")
        nodes[key] = sec
        if key == ":domain":
            prob.domain = _expect_sym(sec[1], "domain name") if len(sec) > 1 else ""
        elif key == ":requirements":
            _check_requirements(sec)
        elif key == ":objects":
            for obj, typ in _typed_list(sec[1:], ":objects"):
                if obj in prob.objects:
                    raise _err(f"object {obj} declared twice", sec)
                prob.objects[obj] = typ
        elif key == ":init":
            prob.init = [_atom(a, ":init") for a in sec[1:]]
        elif key == ":goal":
            if len(sec) != 2:
                raise _err(":goal takes one condition", sec)
            goal = sec[1]
            prob.goal = [] if isinstance(goal, SList) and not goal else _conjunction(goal, ":goal")
        elif key in (":metric", ":constraints"):
            raise UnsupportedRequirement(f"{key} is outside the STRIPS subset", *pos(sec))
        else:
            raise _err(f"unknown problem section {key}", sec)
    if domain is not None:
        check_problem(prob, domain, nodes)
    return prob


def check_problem(prob: ProblemAst, dom: DomainAst, nodes=None) -> None:
    nodes = nodes or {}
    if prob.domain and prob.domain != dom.name:
        raise _err(f"problem is for domain {prob.domain}, not {dom.name}", nodes.get(":domain"))
    for obj, typ in prob.objects.items():
        if not _known_type(dom, typ):
            raise _err(f"object {obj} has unknown type {typ}", nodes.get(":objects"))
        if obj in dom.constants:
            raise _err(f"object {obj} shadows a domain constant", nodes.get(":objects"))
    universe = {**dom.constants, **prob.objects}
    for section, atoms in ((":init", prob.init), (":goal", prob.goal)):
        for pred, args in atoms:
            node = nodes.get(section)
            if pred not in dom.predicates:
                raise _err(f"unknown predicate {pred} in {section}", node)
            params = dom.predicates[pred]
            if len(args) != len(params):
                raise _err(f"predicate {pred} takes {len(params)} argument(s) in {section}", node)
            for arg, (_, typ) in zip(args, params):
                if arg not in universe:
                    raise _err(f"undeclared object {arg} in {section}", node)
                if not dom.is_subtype(universe[arg], typ):
                    raise _err(f"object {arg} is not of type {typ} in ({pred} {' '.join(args)})", node)
