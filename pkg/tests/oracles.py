"""Independent brute-force oracles and generators shared by the unit and
acceptance suites.

The oracles re-derive rule matches by walking every subtree and inspecting
its canonical rendering (or a literal position table); they deliberately
share no code with the matchers they check.
"""

from __future__ import annotations

import random

from stl_sentry.type_parser import TypeArg, TypeExpr, normalize

ORACLE_POSITIONS = {
    "vector": (0,),
    "list": (0,),
    "deque": (0,),
    "set": (0,),
    "multiset": (0,),
    "map": (0, 1),
    "multimap": (0, 1),
    "stack": (0,),
    "queue": (0,),
    "priority_queue": (0,),
}


def walk(t: TypeExpr, path=()):
    yield t, path
    for i, arg in enumerate(t.args):
        if arg.expr is not None:
            yield from walk(arg.expr, path + (i,))


def oracle_vec_bool(t: TypeExpr, unqualified: bool = True) -> list[tuple[int, ...]]:
    prefixes = ["std::vector<bool"]
    if unqualified:
        prefixes.append("vector<bool")
    hits = []
    for node, path in walk(t):
        text = normalize(node)
        if any(text.startswith(p + ">") or text.startswith(p + ",") for p in prefixes):
            hits.append(path)
    return hits


def _oracle_base(node: TypeExpr, unqualified: bool) -> str | None:
    if len(node.name) == 2 and node.name[0] == "std":
        return node.name[1]
    if unqualified and len(node.name) == 1:
        return node.name[0]
    return None


def oracle_coap(t: TypeExpr, unqualified: bool = True) -> list[tuple[int, ...]]:
    hits = []
    for node, path in walk(t):
        base = _oracle_base(node, unqualified)
        if base not in ORACLE_POSITIONS:
            continue
        for pos in ORACLE_POSITIONS[base]:
            if pos >= len(node.args):
                continue
            arg = node.args[pos]
            if arg.expr is None or arg.pointers or arg.reference or arg.const:
                continue
            if arg.expr.name == ("std", "auto_ptr") or (
                unqualified and arg.expr.name == ("auto_ptr",)
            ):
                hits.append(path + (pos,))
    return hits


def oracle_deprecated(t: TypeExpr, dep: frozenset[str]) -> list[tuple[int, ...]]:
    return [path for node, path in walk(t) if node.name[-1] in dep]


# -- generators ----------------------------------------------------------------

RULE_TREE_NAMES = ["vector", "list", "map", "auto_ptr", "int", "bool", "Foo", "I_KNOW_VECTOR_BOOL"]


def random_rule_tree(rng: random.Random, depth: int) -> TypeExpr:
    """Random type tree over the acceptance name set, depth-bounded, with
    fan-out at most 3 and occasional decorations."""
    name = rng.choice(RULE_TREE_NAMES)
    qualify = name not in ("int", "bool") and rng.random() < 0.4
    segs = ("std", name) if qualify else (name,)
    if depth == 0 or name in ("int", "bool") or rng.random() < 0.3:
        return TypeExpr(segs)
    args = []
    for _ in range(rng.randint(1, 3)):
        if rng.random() < 0.08:
            args.append(TypeArg(opaque=rng.choice(("0", "32", "true"))))
        else:
            args.append(
                TypeArg(
                    expr=random_rule_tree(rng, depth - 1),
                    const=rng.random() < 0.1,
                    pointers=1 if rng.random() < 0.1 else 0,
                    reference=rng.random() < 0.1,
                )
            )
    return TypeExpr(segs, tuple(args))


GEN_LINES = [
    "std::vector<bool> v{i};",
    "vector<bool> w{i};",
    "std::vector<int> n{i};",
    "std::list<std::auto_ptr<int> > l{i};",
    "std::map<std::auto_ptr<char>, int> m{i};",
    "Legacy g{i};",
    "std::vector<Legacy> h{i};",
    "int k{i};",
]

GEN_HEADER = "class Legacy: public Deprecated<Legacy> { };\n"


def generate_source_file(rng: random.Random) -> str:
    """A small synthetic translation unit with a mix of offending and
    harmless declarations (no comments, so marks can be appended per line)."""
    count = rng.randint(2, 8)
    lines = [rng.choice(GEN_LINES).replace("{i}", str(i)) for i in range(count)]
    return GEN_HEADER + "\n".join(lines) + "\n"


def insert_mark(src: str, line: int, rule: str) -> str:
    lines = src.split("\n")
    lines[line - 1] += f" // stl-sentry: believe-me({rule})"
    return "\n".join(lines)
