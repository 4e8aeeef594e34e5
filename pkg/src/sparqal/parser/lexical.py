"""Lexical helpers for embedded SPARQL text.

SPARQL inside a procedure is kept opaque. The only thing we need is to
know which characters are "code" as opposed to string literals, comments
and IRI references, so that parentheses, ``QVALUES(...)`` sites and
variables are never matched inside them.

``mask`` returns a string of the same length as its input in which every
literal and IRI is overwritten with a filler character and every comment
with spaces. All other scanners run regular expressions over the masked
text and use the offsets against the original.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

FILL = "\x1f"

_INTERESTING = re.compile(r"""[#'"<]""")
_IRIREF = re.compile(r'<[^<>"{}|^`\\\x00-\x20]*>')
_STRINGS = {
    "'''": re.compile(r"'''(?:(?:'|'')?(?:[^'\\]|\\.))*'''", re.S),
    '"""': re.compile(r'"""(?:(?:"|"")?(?:[^"\\]|\\.))*"""', re.S),
    "'": re.compile(r"'(?:[^'\\\n\r]|\\.)*'"),
    '"': re.compile(r'"(?:[^"\\\n\r]|\\.)*"'),
}

# Characters allowed in a SPARQL VARNAME after the first one.
_VARCHAR = r"[\w\u00B7\u0300-\u036F\u203F-\u2040]"


class LexError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(message)
        self.offset = offset


def mask(text: str) -> str:
    out: list[str] = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _INTERESTING.search(text, pos)
        if m is None:
            out.append(text[pos:])
            break
        i = m.start()
        out.append(text[pos:i])
        ch = text[i]
        if ch == "#":
            j = text.find("\n", i)
            j = n if j == -1 else j
            out.append(" " * (j - i))
            pos = j
        elif ch == "<":
            im = _IRIREF.match(text, i)
            if im is None:
                out.append("<")
                pos = i + 1
            else:
                out.append(FILL * (im.end() - i))
                pos = im.end()
        else:
            opener = text[i : i + 3] if text[i : i + 3] in _STRINGS else ch
            sm = _STRINGS[opener].match(text, i)
            if sm is None:
                raise LexError("unterminated string literal", i)
            out.append(FILL * (sm.end() - i))
            pos = sm.end()
    return "".join(out)


def line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    start = text.rfind("\n", 0, offset) + 1
    return line, offset - start + 1


def matching_paren(masked: str, open_index: int) -> int:
    """Index of the ``)`` balancing the ``(`` at ``open_index``, or -1."""
    depth = 0
    for m in re.finditer(r"[()]", masked[open_index:]):
        if m.group() == "(":
            depth += 1
        else:
            depth -= 1
            if depth == 0:
                return open_index + m.start()
    return -1


@dataclass(frozen=True)
class QvaluesSite:
    start: int
    end: int
    name: str


_QV_KEYWORD = re.compile(r"(?<![\w?$:.\-])QVALUES(?![\w:])", re.I)
_QV_BODY = re.compile(r"\s*\(\s*([A-Za-z_][A-Za-z0-9_]*)\s*\)")


def scan_qvalues(query_text: str, masked: str | None = None) -> list[QvaluesSite]:
    """Every ``QVALUES(name)`` occurrence outside literals, IRIs and comments."""
    if masked is None:
        masked = mask(query_text)
    sites = []
    for m in _QV_KEYWORD.finditer(masked):
        body = _QV_BODY.match(masked, m.end())
        if body is None:
            raise LexError("malformed QVALUES: expected '(' variable ')'", m.start())
        sites.append(QvaluesSite(m.start(), body.end(), body.group(1)))
    return sites


_FORM = re.compile(r"(?<![\w?$:.\-])(SELECT|ASK|CONSTRUCT|DESCRIBE)(?![\w:])", re.I)


def query_kind(query_text: str, masked: str | None = None) -> str | None:
    """Query form keyword (upper case) of the outermost query, if any."""
    if masked is None:
        masked = mask(query_text)
    m = _FORM.search(masked)
    return m.group(1).upper() if m else None


def _var_pattern(name: str) -> re.Pattern:
    return re.compile(r"[?$]" + re.escape(name) + r"(?!" + _VARCHAR + ")")


def mentions_variable(query_text: str, name: str) -> bool:
    return _var_pattern(name).search(mask(query_text)) is not None


def substitute_variable(query_text: str, name: str, replacement: str) -> str:
    """Replace every occurrence of variable ``?name``/``$name`` by ``replacement``."""
    masked = mask(query_text)
    pieces = []
    pos = 0
    for m in _var_pattern(name).finditer(masked):
        pieces.append(query_text[pos : m.start()])
        pieces.append(replacement)
        pos = m.end()
    pieces.append(query_text[pos:])
    return "".join(pieces)


_WHERE_OR_BRACE = re.compile(r"(?<![\w?$:])WHERE(?!\w)|\{", re.I)
_VAR = re.compile(r"[?$]([A-Za-z_0-9]" + _VARCHAR + r"*)")
_AS_VAR = re.compile(r"\bAS\s+[?$](\w+)\s*$", re.I)


def projected_variables(query_text: str) -> list[str] | None:
    """Variables projected by the outermost SELECT.

    Returns None for ``SELECT *`` or when no SELECT clause is found.
    """
    masked = mask(query_text)
    form = _FORM.search(masked)
    if form is None or form.group(1).upper() != "SELECT":
        return None
    end = _WHERE_OR_BRACE.search(masked, form.end())
    clause = masked[form.end() : end.start() if end else len(masked)]
    clause = re.sub(r"^\s*(DISTINCT|REDUCED)\b", "", clause, flags=re.I)
    if clause.strip().startswith("*"):
        return None
    names: list[str] = []
    depth = 0
    group_start = 0
    i = 0
    while i < len(clause):
        ch = clause[i]
        if ch == "(":
            if depth == 0:
                group_start = i
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                m = _AS_VAR.search(clause[group_start + 1 : i])
                if m:
                    names.append(m.group(1))
        elif depth == 0 and ch in "?$":
            m = _VAR.match(clause, i)
            if m:
                names.append(m.group(1))
                i = m.end()
                continue
        i += 1
    return names


def split_top_level(masked: str, start: int, separator: str, closer: str) -> tuple[list[tuple[int, int]], int]:
    """Split ``masked[start:]`` at ``separator`` until an unnested ``closer``.

    Returns the list of (start, end) pieces and the index of the closer.
    Nesting counts (), [] and {}.
    """
    depth = 0
    pieces = []
    piece_start = start
    for i in range(start, len(masked)):
        ch = masked[i]
        if depth == 0 and ch == closer:
            pieces.append((piece_start, i))
            return pieces, i
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
            if depth < 0:
                break
        elif depth == 0 and ch == separator:
            pieces.append((piece_start, i))
            piece_start = i + 1
    raise LexError(f"missing {closer!r}", start)
