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

import logging
from dataclasses import dataclass
from typing import Final, FrozenSet, Iterator, List, Optional, Tuple

import tree_sitter_java
from tree_sitter import Language, Node, Parser, Tree

from comprehensibility_lab.exceptions import ParseError

logger = logging.getLogger(__name__)

JAVA_LANGUAGE: Final = Language(tree_sitter_java.language())

# a method is not a compilation unit, so snippets are parsed as the only member
# of a synthetic class whose header and footer sit on their own lines
_WRAPPER_PREFIX: Final = "class __Snippet__ {\n"
_WRAPPER_SUFFIX: Final = "\n}\n"
_LINE_OFFSET: Final = 1

COMMENT_TYPES: Final[FrozenSet[str]] = frozenset({"line_comment", "block_comment", "comment"})
METHOD_TYPES: Final[FrozenSet[str]] = frozenset({"method_declaration", "constructor_declaration"})


def split_lines(source: str) -> Tuple[str, ...]:
    """Split on '\\n' only (the parser's notion of rows); a final newline does not open a line."""
    if not source:
        return ()
    lines = source.split("\n")
    if lines[-1] == "":
        lines.pop()
    return tuple(line[:-1] if line.endswith("\r") else line for line in lines)


def iter_nodes(root: Node, skip_comments: bool = False) -> Iterator[Node]:
    """Pre-order traversal without recursion."""
    stack = [root]
    while stack:
        node = stack.pop()
        if skip_comments and node.type in COMMENT_TYPES:
            continue
        yield node
        stack.extend(reversed(node.children))


@dataclass(frozen=True)
class MethodTree:
    """
    Concrete syntax tree of one method declaration.

    Rows reported by tree-sitter are shifted by the synthetic class header; use
    `line_of` to get the 0-based line of a node in the original snippet.
    """

    source: str
    lines: Tuple[str, ...]
    tree: Tree
    method: Node
    comments: Tuple[Node, ...]

    @staticmethod
    def line_of(node: Node) -> int:
        return node.start_point[0] - _LINE_OFFSET

    @staticmethod
    def end_line_of(node: Node) -> int:
        return node.end_point[0] - _LINE_OFFSET

    @staticmethod
    def text_of(node: Node) -> str:
        return node.text.decode("utf-8") if node.text is not None else ""

    def nodes(self, *types: str) -> List[Node]:
        """Nodes of the method (comments excluded) whose type is one of `types`."""
        wanted = set(types)
        return [node for node in iter_nodes(self.method, skip_comments=True) if node.type in wanted]

    def count(self, *types: str) -> int:
        return len(self.nodes(*types))


def _position(node: Node) -> Tuple[int, int]:
    row, column = node.start_point
    return max(1, row - _LINE_OFFSET + 1), column + 1


def _first_error(root: Node) -> Optional[Node]:
    for node in iter_nodes(root):
        if node.type == "ERROR" or node.is_missing:
            return node
    return None


def parse_method(source: str) -> MethodTree:
    """
    Parse the text of a single Java method or constructor declaration.

    Args:
        source: the method text, optionally preceded by comments or Javadoc.

    Returns:
        the MethodTree of the declaration, comments included.

    Raises:
        ParseError: if the text has syntax errors or is not exactly one method declaration.
    """
    wrapped = f"{_WRAPPER_PREFIX}{source}{_WRAPPER_SUFFIX}"
    tree = Parser(JAVA_LANGUAGE).parse(wrapped.encode("utf-8"))
    root = tree.root_node

    if root.has_error:
        offending = _first_error(root)
        line, column = _position(offending) if offending is not None else (1, 1)
        reason = "missing" if offending is not None and offending.is_missing else "unexpected"
        kind = offending.type if offending is not None else "input"
        raise ParseError(f"Syntax error: {reason} {kind}", line, column)

    declarations = [child for child in root.named_children if child.type not in COMMENT_TYPES]
    if len(declarations) != 1 or declarations[0].type != "class_declaration":
        stray = declarations[1] if len(declarations) > 1 else root
        raise ParseError("Text continues after the method declaration", *_position(stray))

    body = declarations[0].child_by_field_name("body")
    members = [child for child in body.named_children if child.type not in COMMENT_TYPES]
    if len(members) != 1 or members[0].type not in METHOD_TYPES:
        found = ", ".join(member.type for member in members) or "nothing"
        anchor = next((m for m in members if m.type not in METHOD_TYPES), None)
        if anchor is None and len(members) > 1:
            anchor = members[1]
        line, column = _position(anchor) if anchor is not None else (1, 1)
        raise ParseError(f"Expected exactly one method declaration, found {found}", line, column)

    method = members[0]
    if method.child_by_field_name("body") is None:
        raise ParseError("Method declaration has no body", *_position(method))

    comments = tuple(node for node in iter_nodes(root) if node.type in COMMENT_TYPES)
    return MethodTree(
        source=source,
        lines=split_lines(source),
        tree=tree,
        method=method,
        comments=comments,
    )
