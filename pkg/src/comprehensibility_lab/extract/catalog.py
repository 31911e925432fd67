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

from dataclasses import dataclass
from typing import Dict, Final, List, Tuple

from comprehensibility_lab.enums.feature_category import FeatureCategory
from comprehensibility_lab.utils.constants import CATALOG_VERSION


@dataclass(frozen=True)
class FeatureDef:
    name: str
    category: FeatureCategory
    description: str


_C = FeatureCategory.COMPLEXITY
_S = FeatureCategory.SIZE
_L = FeatureCategory.LEXICON
_F = FeatureCategory.FORMAT
_D = FeatureCategory.DOCUMENTATION

FEATURES: Final[Tuple[FeatureDef, ...]] = (
    # complexity
    FeatureDef("cyclomatic_complexity", _C, "decision points + 1"),
    FeatureDef("max_nesting_depth", _C, "deepest nesting of control statements"),
    FeatureDef("num_loops", _C, "for, enhanced for, while and do statements"),
    FeatureDef("num_if_statements", _C, "if statements, including else-if"),
    FeatureDef("num_switch_statements", _C, "switch statements and expressions"),
    FeatureDef("num_case_labels", _C, "non-default case labels"),
    FeatureDef("num_comparison_operators", _C, "==, !=, <, >, <=, >="),
    FeatureDef("num_logical_operators", _C, "&&, || and !"),
    FeatureDef("num_ternary_expressions", _C, "conditional expressions"),
    FeatureDef("num_return_statements", _C, "return statements"),
    # size
    FeatureDef("total_lines", _S, "lines in the snippet"),
    FeatureDef("ncnb_lines", _S, "lines holding at least one code token"),
    FeatureDef("num_statements", _S, "statements, blocks excluded"),
    FeatureDef("num_parameters", _S, "formal parameters"),
    FeatureDef("num_local_variable_declarations", _S, "local variable declaration statements"),
    FeatureDef("num_assignments", _S, "assignment expressions and initialised declarators"),
    FeatureDef("num_method_invocations", _S, "method invocations"),
    FeatureDef("num_literals", _S, "literals of any kind, true/false/null included"),
    FeatureDef("num_numeric_literals", _S, "integer and floating point literals"),
    FeatureDef("num_string_literals", _S, "string literals and text blocks"),
    FeatureDef("num_casts", _S, "cast expressions"),
    FeatureDef("num_array_accesses", _S, "array access expressions"),
    FeatureDef("total_characters", _S, "characters of all lines, surrounding whitespace stripped, identifiers counted as one"),
    FeatureDef("avg_line_length", _S, "mean stripped length of non-blank lines, identifiers counted as one"),
    FeatureDef("max_line_length", _S, "longest stripped line, identifiers counted as one"),
    FeatureDef("avg_statements_per_line", _S, "statements / code lines"),
    FeatureDef("max_statements_per_line", _S, "most statements starting on one line"),
    # lexicon
    FeatureDef("num_identifiers", _L, "identifier occurrences"),
    FeatureDef("num_unique_identifiers", _L, "distinct identifiers"),
    FeatureDef("avg_identifier_length", _L, "mean identifier length over occurrences"),
    FeatureDef("max_identifier_length", _L, "longest identifier"),
    FeatureDef("min_identifier_length", _L, "shortest identifier"),
    FeatureDef("avg_identifiers_per_line", _L, "identifiers / code lines"),
    FeatureDef("max_identifiers_per_line", _L, "most identifiers on one line"),
    FeatureDef("num_keywords", _L, "reserved word occurrences"),
    FeatureDef("num_unique_keywords", _L, "distinct reserved words"),
    FeatureDef("avg_keywords_per_line", _L, "keywords / code lines"),
    FeatureDef("max_keywords_per_line", _L, "most keywords on one line"),
    FeatureDef("num_operators", _L, "operator occurrences"),
    FeatureDef("num_unique_operators", _L, "distinct operators"),
    FeatureDef("avg_operators_per_line", _L, "operators / code lines"),
    FeatureDef("max_operators_per_line", _L, "most operators on one line"),
    FeatureDef("num_tokens", _L, "code tokens"),
    FeatureDef("avg_tokens_per_line", _L, "tokens / code lines"),
    FeatureDef("max_tokens_per_line", _L, "most tokens on one line"),
    FeatureDef("identifier_token_ratio", _L, "identifiers / tokens"),
    FeatureDef("avg_terms_per_identifier", _L, "camelCase/underscore terms per identifier occurrence"),
    FeatureDef("max_terms_per_identifier", _L, "most terms in one identifier"),
    FeatureDef("num_single_char_identifiers", _L, "identifier occurrences of length 1"),
    FeatureDef("avg_numeric_tokens_per_line", _L, "numeric literals / code lines"),
    FeatureDef("max_numeric_tokens_per_line", _L, "most numeric literals on one line"),
    FeatureDef("token_entropy", _L, "Shannon entropy in bits of token texts"),
    FeatureDef("identifier_entropy", _L, "Shannon entropy in bits of identifier names"),
    FeatureDef("term_vocabulary_size", _L, "distinct lowercased identifier terms"),
    # format
    FeatureDef("num_blank_lines", _F, "whitespace-only lines"),
    FeatureDef("blank_line_ratio", _F, "blank lines / total lines"),
    FeatureDef("num_space_characters", _F, "space and tab characters"),
    FeatureDef("avg_leading_whitespace", _F, "mean indentation of non-blank lines"),
    FeatureDef("max_leading_whitespace", _F, "deepest indentation"),
    FeatureDef("num_parentheses", _F, "'(' and ')' tokens"),
    FeatureDef("avg_parentheses_per_line", _F, "parentheses / code lines"),
    FeatureDef("max_parentheses_per_line", _F, "most parentheses on one line"),
    FeatureDef("num_commas", _F, "',' tokens"),
    FeatureDef("avg_commas_per_line", _F, "commas / code lines"),
    FeatureDef("max_commas_per_line", _F, "most commas on one line"),
    FeatureDef("num_periods", _F, "'.' tokens"),
    FeatureDef("avg_periods_per_line", _F, "periods / code lines"),
    FeatureDef("num_semicolons", _F, "';' tokens"),
    FeatureDef("num_braces", _F, "'{' and '}' tokens"),
    FeatureDef("num_brackets", _F, "'[' and ']' tokens"),
    FeatureDef("num_lines_ending_open_brace", _F, "lines whose last character is '{'"),
    FeatureDef("num_empty_blocks", _F, "blocks with nothing between their braces"),
    # documentation
    FeatureDef("num_comment_lines", _D, "lines touched by a comment"),
    FeatureDef("num_comment_blocks", _D, "groups of comments on adjacent lines"),
    FeatureDef("comment_density", _D, "comment lines / total lines"),
    FeatureDef("has_javadoc", _D, "1 when a /** comment is present"),
    FeatureDef("num_todo_markers", _D, "TODO and FIXME markers in comments"),
    FeatureDef("avg_comment_words", _D, "mean words per comment"),
    FeatureDef("comment_reading_ease", _D, "Flesch reading ease of all comment text"),
    FeatureDef("num_inline_comments", _D, "line comments trailing code"),
    FeatureDef("num_block_comments", _D, "/* */ and /** */ comments"),
    FeatureDef("comment_statement_ratio", _D, "comments / statements"),
    FeatureDef("comment_identifier_overlap", _D, "Jaccard overlap of comment and identifier terms"),
    FeatureDef("num_commented_out_code_lines", _D, "comment lines ending in ';', '{' or '}'"),
)

EXPECTED_CATEGORY_COUNTS: Final[Dict[FeatureCategory, int]] = {
    FeatureCategory.COMPLEXITY: 10,
    FeatureCategory.SIZE: 17,
    FeatureCategory.LEXICON: 27,
    FeatureCategory.FORMAT: 18,
    FeatureCategory.DOCUMENTATION: 12,
}


def feature_names() -> List[str]:
    return [feature.name for feature in FEATURES]


def category_counts() -> Dict[FeatureCategory, int]:
    counts = {category: 0 for category in FeatureCategory}
    for feature in FEATURES:
        counts[feature.category] += 1
    return counts


def validate_catalog() -> None:
    """Check the catalog layout; called once at import time."""
    names = feature_names()
    if len(set(names)) != len(names):
        raise RuntimeError("Feature catalog contains duplicate names")
    counts = category_counts()
    if counts != EXPECTED_CATEGORY_COUNTS:
        raise RuntimeError(
            f"Feature catalog {CATALOG_VERSION} has category counts "
            f"{ {c.value: n for c, n in counts.items()} }, "
            f"expected { {c.value: n for c, n in EXPECTED_CATEGORY_COUNTS.items()} }"
        )


validate_catalog()

FEATURE_NAMES: Final[Tuple[str, ...]] = tuple(feature_names())
FEATURE_COUNT: Final = len(FEATURE_NAMES)
FEATURE_INDEX: Final[Dict[str, int]] = {name: i for i, name in enumerate(FEATURE_NAMES)}
