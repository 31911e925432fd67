#     Copyright (c) comprehensibility-lab 2024. All Rights Reserved.
#
#     Licensed under the Apache License, Version 2.0 (the "License");
#     you may not use this file except in compliance with the License.
#     You may obtain a copy of the License at:
#         https://www.apache.org/licenses/LICENSE-2.0
#     Unless required by applicable law or agreed to in writing, software
#     distributed under the License is distributed on an "AS IS" BASIS,
#     WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
#     or implied. See the License for the specific language governing
#     permissions and limitations under the License.

import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Final, FrozenSet, Iterable, List, Sequence, Tuple

from tree_sitter import Node

from comprehensibility_lab.extract.catalog import FEATURE_COUNT, FEATURE_NAMES
from comprehensibility_lab.extract.flesch import flesch_reading_ease, words
from comprehensibility_lab.extract.parser import COMMENT_TYPES, MethodTree, parse_method

JAVA_KEYWORDS: Final[FrozenSet[str]] = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue default do
    double else enum extends final finally float for goto if implements import instanceof
    int interface long native new package private protected public return short static
    strictfp super switch synchronized this throw throws transient try void volatile while
    """.split()
)

OPERATORS: Final[FrozenSet[str]] = frozenset(
    """
    = > < ! ~ ? : == <= >= != && || ++ -- + - * / & | ^ % << >> >>>
    += -= *= /= &= |= ^= %= <<= >>= >>>= -> ::
    """.split()
)

IDENTIFIER_TYPES: Final = frozenset({"identifier", "type_identifier"})
NUMERIC_LITERAL_TYPES: Final = frozenset(
    {
        "decimal_integer_literal",
        "hex_integer_literal",
        "octal_integer_literal",
        "binary_integer_literal",
        "decimal_floating_point_literal",
        "hex_floating_point_literal",
    }
)
STRING_LITERAL_TYPES: Final = frozenset({"string_literal", "text_block"})
LITERAL_TYPES: Final = NUMERIC_LITERAL_TYPES | STRING_LITERAL_TYPES | {
    "character_literal",
    "true",
    "false",
    "null_literal",
}
# reported as one token each, never descended into
ATOMIC_TOKEN_TYPES: Final = STRING_LITERAL_TYPES | {"character_literal"}

LOOP_TYPES: Final = ("for_statement", "enhanced_for_statement", "while_statement", "do_statement")
SWITCH_TYPES: Final = ("switch_expression", "switch_statement")
NESTING_TYPES: Final = frozenset(
    {
        *LOOP_TYPES,
        *SWITCH_TYPES,
        "if_statement",
        "try_statement",
        "try_with_resources_statement",
        "synchronized_statement",
    }
)
STATEMENT_TYPES: Final = frozenset(
    {
        "local_variable_declaration",
        "expression_statement",
        "if_statement",
        *LOOP_TYPES,
        "return_statement",
        "break_statement",
        "continue_statement",
        "throw_statement",
        "try_statement",
        "try_with_resources_statement",
        "switch_statement",
        "synchronized_statement",
        "labeled_statement",
        "assert_statement",
        "yield_statement",
        "explicit_constructor_invocation",
        "local_class_declaration",
    }
)
# a switch_expression is a statement only when it sits where statements go
_STATEMENT_PARENTS: Final = frozenset(
    {
        "block",
        "constructor_body",
        "switch_block_statement_group",
        "labeled_statement",
        "if_statement",
        *LOOP_TYPES,
    }
)
COMPARISON_OPERATORS: Final = frozenset({"==", "!=", "<", ">", "<=", ">="})
LOGICAL_OPERATORS: Final = frozenset({"&&", "||"})
BLOCK_TYPES: Final = ("block", "constructor_body")

_TERM = re.compile(r"[A-Z]+(?![a-z])|[A-Z]?[a-z]+")
_MARKER = re.compile(r"\b(?:TODO|FIXME)\b")
_COMMENT_LINE_PREFIX = re.compile(r"^\s*\*(?!/)")


@dataclass(frozen=True)
class Snippet:
    id: str
    dataset_id: str
    source: str


@dataclass(frozen=True)
class FeatureVector:
    snippet_id: str
    values: Tuple[float, ...]

    def as_dict(self) -> Dict[str, float]:
        return dict(zip(FEATURE_NAMES, self.values))


@dataclass(frozen=True)
class Token:
    text: str
    kind: str
    line: int
    column: int
    parent_kind: str


def identifier_terms(name: str) -> List[str]:
    """Lowercased camelCase/underscore terms of an identifier; digits are dropped."""
    return [term.lower() for term in _TERM.findall(name)]


def shannon_entropy(items: Sequence[str]) -> float:
    """Entropy in bits of the empirical distribution of `items`."""
    if len(items) <= 1:
        return 0.0
    total = len(items)
    entropy = -sum((n / total) * math.log2(n / total) for n in Counter(items).values())
    # a single repeated item gives -0.0
    return entropy + 0.0


def _ratio(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator else 0.0


def code_tokens(tree: MethodTree) -> List[Token]:
    tokens: List[Token] = []
    stack: List[Node] = [tree.method]
    while stack:
        node = stack.pop()
        if node.type in COMMENT_TYPES:
            continue
        if node.type in ATOMIC_TOKEN_TYPES or node.child_count == 0:
            text = MethodTree.text_of(node)
            if text and not node.is_missing:
                parent = node.parent
                tokens.append(
                    Token(
                        text=text,
                        kind=node.type,
                        line=MethodTree.line_of(node),
                        column=node.start_point[1],
                        parent_kind=parent.type if parent is not None else "",
                    )
                )
            continue
        stack.extend(reversed(node.children))
    return tokens


def is_identifier(token: Token) -> bool:
    return token.kind in IDENTIFIER_TYPES


def is_keyword(token: Token) -> bool:
    return token.kind not in IDENTIFIER_TYPES and token.text in JAVA_KEYWORDS


def is_operator(token: Token) -> bool:
    if token.kind != token.text or token.text not in OPERATORS:
        return False
    if token.text in ("<", ">") and token.parent_kind in ("type_arguments", "type_parameters"):
        return False
    if token.text in ("?", ":"):
        return token.parent_kind == "ternary_expression"
    return True


def _per_line(lines: Iterable[int]) -> Counter:
    return Counter(lines)


def _max_count(counter: Counter) -> float:
    return float(max(counter.values())) if counter else 0.0


def _operator_of(node: Node) -> str:
    operator = node.child_by_field_name("operator")
    return operator.type if operator is not None else ""


def _is_else_if(node: Node) -> bool:
    parent = node.parent
    return (
        node.type == "if_statement"
        and parent is not None
        and parent.type == "if_statement"
        and parent.child_by_field_name("alternative") == node
    )


def _max_nesting(method: Node) -> int:
    deepest = 0
    stack = [(method, 0)]
    while stack:
        node, depth = stack.pop()
        if node.type in COMMENT_TYPES:
            continue
        if node.type in NESTING_TYPES and not _is_else_if(node):
            depth += 1
            deepest = max(deepest, depth)
        stack.extend((child, depth) for child in node.children)
    return deepest


def _is_statement(node: Node) -> bool:
    parent = node.parent
    parent_type = parent.type if parent is not None else ""
    if node.type == "switch_expression":
        return parent_type in _STATEMENT_PARENTS
    if node.type not in STATEMENT_TYPES:
        return False
    # the init clause of a classic for loop is not a statement of its own
    return not (node.type == "local_variable_declaration" and parent_type == "for_statement")


def _comment_body(text: str) -> str:
    """Comment text without its markers."""
    if text.startswith("//"):
        return text[2:]
    body = text[3:] if text.startswith("/**") and text != "/**/" else text[2:]
    if body.endswith("*/"):
        body = body[:-2]
    return "\n".join(_COMMENT_LINE_PREFIX.sub("", line) for line in body.split("\n"))


def _complexity(tree: MethodTree) -> List[float]:
    nodes = tree.nodes(
        "if_statement",
        *LOOP_TYPES,
        *SWITCH_TYPES,
        "switch_label",
        "catch_clause",
        "ternary_expression",
        "binary_expression",
        "unary_expression",
        "return_statement",
    )
    kinds = Counter(node.type for node in nodes)
    case_labels = sum(
        1
        for node in nodes
        if node.type == "switch_label" and MethodTree.text_of(node).lstrip().startswith("case")
    )
    binary_operators = Counter(_operator_of(n) for n in nodes if n.type == "binary_expression")
    negations = sum(1 for n in nodes if n.type == "unary_expression" and _operator_of(n) == "!")
    comparisons = sum(binary_operators[op] for op in COMPARISON_OPERATORS)
    short_circuits = sum(binary_operators[op] for op in LOGICAL_OPERATORS)
    loops = sum(kinds[t] for t in LOOP_TYPES)

    decisions = (
        kinds["if_statement"]
        + loops
        + case_labels
        + kinds["catch_clause"]
        + kinds["ternary_expression"]
        + short_circuits
    )
    return [
        float(decisions + 1),
        float(_max_nesting(tree.method)),
        float(loops),
        float(kinds["if_statement"]),
        float(sum(kinds[t] for t in SWITCH_TYPES)),
        float(case_labels),
        float(comparisons),
        float(short_circuits + negations),
        float(kinds["ternary_expression"]),
        float(kinds["return_statement"]),
    ]


def _size(tree: MethodTree, tokens: List[Token], statements: List[Node]) -> List[float]:
    lines = tree.lines
    # identifiers count as one character so renaming leaves line lengths alone
    identifier_excess = Counter[int]()
    for token in tokens:
        if is_identifier(token):
            identifier_excess[token.line] += len(token.text) - 1
    line_lengths = [len(line.strip()) - identifier_excess[index] for index, line in enumerate(lines)]
    non_blank = [length for line, length in zip(lines, line_lengths) if line.strip()]
    code_lines = len({token.line for token in tokens})
    statements_per_line = _per_line(MethodTree.line_of(node) for node in statements)

    parameters = tree.method.child_by_field_name("parameters")
    num_parameters = (
        sum(1 for p in parameters.named_children if p.type in ("formal_parameter", "spread_parameter"))
        if parameters is not None
        else 0
    )
    declarators = tree.nodes("variable_declarator")
    initialised = sum(1 for node in declarators if node.child_by_field_name("value") is not None)
    literal_kinds = Counter(node.type for node in tree.nodes(*LITERAL_TYPES))
    total_characters = sum(non_blank)

    return [
        float(len(lines)),
        float(code_lines),
        float(len(statements)),
        float(num_parameters),
        float(tree.count("local_variable_declaration")),
        float(tree.count("assignment_expression") + initialised),
        float(tree.count("method_invocation")),
        float(sum(literal_kinds.values())),
        float(sum(literal_kinds[t] for t in NUMERIC_LITERAL_TYPES)),
        float(sum(literal_kinds[t] for t in STRING_LITERAL_TYPES)),
        float(tree.count("cast_expression")),
        float(tree.count("array_access")),
        float(total_characters),
        _ratio(total_characters, len(non_blank)),
        float(max(non_blank, default=0)),
        _ratio(len(statements), code_lines),
        _max_count(statements_per_line),
    ]


def _lexicon(tokens: List[Token]) -> List[float]:
    code_lines = len({token.line for token in tokens})
    identifiers = [t for t in tokens if is_identifier(t)]
    keywords = [t for t in tokens if is_keyword(t)]
    operators = [t for t in tokens if is_operator(t)]
    numerics = [t for t in tokens if t.kind in NUMERIC_LITERAL_TYPES]
    names = [t.text for t in identifiers]
    lengths = [len(name) for name in names]
    terms = [identifier_terms(name) for name in names]
    vocabulary = {term for name_terms in terms for term in name_terms}

    return [
        float(len(identifiers)),
        float(len(set(names))),
        _ratio(sum(lengths), len(lengths)),
        float(max(lengths, default=0)),
        float(min(lengths, default=0)),
        _ratio(len(identifiers), code_lines),
        _max_count(_per_line(t.line for t in identifiers)),
        float(len(keywords)),
        float(len({t.text for t in keywords})),
        _ratio(len(keywords), code_lines),
        _max_count(_per_line(t.line for t in keywords)),
        float(len(operators)),
        float(len({t.text for t in operators})),
        _ratio(len(operators), code_lines),
        _max_count(_per_line(t.line for t in operators)),
        float(len(tokens)),
        _ratio(len(tokens), code_lines),
        _max_count(_per_line(t.line for t in tokens)),
        _ratio(len(identifiers), len(tokens)),
        _ratio(sum(len(t) for t in terms), len(terms)),
        float(max((len(t) for t in terms), default=0)),
        float(sum(1 for length in lengths if length == 1)),
        _ratio(len(numerics), code_lines),
        _max_count(_per_line(t.line for t in numerics)),
        shannon_entropy([t.text for t in tokens]),
        shannon_entropy(names),
        float(len(vocabulary)),
    ]


def _format(tree: MethodTree, tokens: List[Token]) -> List[float]:
    lines = tree.lines
    non_blank = [line for line in lines if line.strip()]
    code_lines = len({token.line for token in tokens})
    indentation = [len(line) - len(line.lstrip(" \t")) for line in non_blank]

    def punctuation(*marks: str) -> List[Token]:
        return [t for t in tokens if t.kind == t.text and t.text in marks]

    parentheses = punctuation("(", ")")
    commas = punctuation(",")
    periods = punctuation(".")
    empty_blocks = sum(1 for node in tree.nodes(*BLOCK_TYPES) if node.child_count == 2)

    return [
        float(len(lines) - len(non_blank)),
        _ratio(len(lines) - len(non_blank), len(lines)),
        float(sum(line.count(" ") + line.count("\t") for line in lines)),
        _ratio(sum(indentation), len(indentation)),
        float(max(indentation, default=0)),
        float(len(parentheses)),
        _ratio(len(parentheses), code_lines),
        _max_count(_per_line(t.line for t in parentheses)),
        float(len(commas)),
        _ratio(len(commas), code_lines),
        _max_count(_per_line(t.line for t in commas)),
        float(len(periods)),
        _ratio(len(periods), code_lines),
        float(len(punctuation(";"))),
        float(len(punctuation("{", "}"))),
        float(len(punctuation("[", "]"))),
        float(sum(1 for line in lines if line.rstrip().endswith("{"))),
        float(empty_blocks),
    ]


def _comment_groups(comments: Sequence[Node]) -> int:
    groups = 0
    previous_end = None
    for comment in comments:
        start = MethodTree.line_of(comment)
        if previous_end is None or start > previous_end + 1:
            groups += 1
        previous_end = MethodTree.end_line_of(comment)
    return groups


def _documentation(tree: MethodTree, tokens: List[Token], statements: List[Node]) -> List[float]:
    comments = sorted(tree.comments, key=lambda node: node.start_byte)
    raw = [MethodTree.text_of(node) for node in comments]
    bodies = [_comment_body(text) for text in raw]

    comment_lines = set()
    for node in comments:
        comment_lines.update(range(MethodTree.line_of(node), MethodTree.end_line_of(node) + 1))

    first_code_column: Dict[int, int] = {}
    for token in tokens:
        first_code_column[token.line] = min(first_code_column.get(token.line, token.column), token.column)
    inline = sum(
        1
        for node, text in zip(comments, raw)
        if text.startswith("//")
        and first_code_column.get(MethodTree.line_of(node), node.start_point[1]) < node.start_point[1]
    )

    comment_terms = {word.lower() for body in bodies for word in words(body)}
    identifier_vocabulary = {
        term for token in tokens if is_identifier(token) for term in identifier_terms(token.text)
    }
    union = comment_terms | identifier_vocabulary
    overlap = _ratio(len(comment_terms & identifier_vocabulary), len(union))

    commented_code = sum(
        1
        for body in bodies
        for line in body.split("\n")
        if line.rstrip().endswith((";", "{", "}"))
    )

    return [
        float(len(comment_lines)),
        float(_comment_groups(comments)),
        _ratio(len(comment_lines), len(tree.lines)),
        1.0 if any(text.startswith("/**") and text != "/**/" for text in raw) else 0.0,
        float(sum(len(_MARKER.findall(text)) for text in raw)),
        _ratio(sum(len(words(body)) for body in bodies), len(bodies)),
        flesch_reading_ease("\n".join(bodies)),
        float(inline),
        float(sum(1 for text in raw if text.startswith("/*"))),
        _ratio(len(comments), len(statements)),
        overlap,
        float(commented_code),
    ]


def compute_features(tree: MethodTree) -> Tuple[float, ...]:
    """The catalog-ordered feature values of a parsed method."""
    tokens = code_tokens(tree)
    statements = [node for node in tree.nodes(*STATEMENT_TYPES, "switch_expression") if _is_statement(node)]
    values = (
        _complexity(tree)
        + _size(tree, tokens, statements)
        + _lexicon(tokens)
        + _format(tree, tokens)
        + _documentation(tree, tokens, statements)
    )
    if len(values) != FEATURE_COUNT:
        raise RuntimeError(f"Computed {len(values)} features, catalog defines {FEATURE_COUNT}")
    non_finite = [name for name, value in zip(FEATURE_NAMES, values) if not math.isfinite(value)]
    if non_finite:
        raise RuntimeError(f"Non-finite feature values: {', '.join(non_finite)}")
    return tuple(float(value) for value in values)


def extract_features(snippet: Snippet) -> FeatureVector:
    """
    Parse a snippet and compute its feature vector.

    Raises:
        ParseError: if the snippet is not a single well-formed method declaration.
    """
    return FeatureVector(snippet_id=snippet.id, values=compute_features(parse_method(snippet.source)))
