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

import re
from typing import List

_WORD = re.compile(r"[A-Za-z]+")
_VOWEL_GROUP = re.compile(r"[aeiouy]+", re.IGNORECASE)
_TERMINATOR_RUN = re.compile(r"[.!?]+")

EMPTY_TEXT_SCORE = 0.0


def words(text: str) -> List[str]:
    return _WORD.findall(text)


def count_syllables(word: str) -> int:
    """Vowel groups of aeiouy, at least one per word."""
    return max(1, len(_VOWEL_GROUP.findall(word)))


def count_sentences(text: str) -> int:
    """
    Count segments closed by a run of '.', '!' or '?' that contain a word.
    Text without any terminator still counts as one sentence.
    """
    sentences = 0
    start = 0
    for match in _TERMINATOR_RUN.finditer(text):
        if _WORD.search(text, start, match.start()):
            sentences += 1
        start = match.end()
    return max(1, sentences)


def flesch_reading_ease(text: str) -> float:
    """
    Flesch reading-ease score of natural-language text.

    Args:
        text: any text; comment markers should already be stripped.

    Returns:
        206.835 - 1.015 * (words / sentences) - 84.6 * (syllables / words),
        or 0.0 for text without words.
    """
    found = words(text)
    if not found:
        return EMPTY_TEXT_SCORE
    sentences = count_sentences(text)
    syllables = sum(count_syllables(word) for word in found)
    return 206.835 - 1.015 * (len(found) / sentences) - 84.6 * (syllables / len(found))
