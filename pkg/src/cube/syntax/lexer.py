"""Tokenizer for Cube and Prolog source text."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import CubeSyntaxError

SYMBOL_CHARS = set("+-*/\\^<>=~:.?@#&$")
SOLO_CHARS = set("!;")
PUNCT = set("()[]{},|")

# kinds: name, var, int, punct, end, eof
@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    value: object
    line: int
    column: int
    layout_before: bool = False
    quoted: bool = False

    def is_name(self, *values) -> bool:
        return self.kind == "name" and not self.quoted and self.value in values

    def is_punct(self, value) -> bool:
        return self.kind == "punct" and self.value == value


def _is_layout(ch: str) -> bool:
    return ch == "" or ch.isspace() or ch == "%"


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i, n = 0, len(text)
    line, line_start = 1, 0
    layout = True

    def error(msg, at):
        raise CubeSyntaxError(msg, line, at - line_start + 1)

    while True:
        # layout and comments
        while i < n:
            ch = text[i]
            if ch == "\n":
                line += 1
                line_start = i + 1
                i += 1
                layout = True
            elif ch.isspace():
                i += 1
                layout = True
            elif ch == "%":
                while i < n and text[i] != "\n":
                    i += 1
                layout = True
            elif text.startswith("/*", i):
                end = text.find("*/", i + 2)
                if end < 0:
                    error("unterminated block comment", i)
                line += text.count("\n", i, end)
                nl = text.rfind("\n", i, end)
                if nl >= 0:
                    line_start = nl + 1
                i = end + 2
                layout = True
            else:
                break
        col = i - line_start + 1
        if i >= n:
            tokens.append(Token("eof", None, line, col, layout))
            return tokens
        ch = text[i]
        start = i
        if ch.isdigit():
            while i < n and text[i].isdigit():
                i += 1
            tok = Token("int", int(text[start:i]), line, col, layout)
        elif ch == "_" or ch.isupper():
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tok = Token("var", text[start:i], line, col, layout)
        elif ch.isalpha():
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tok = Token("name", text[start:i], line, col, layout)
        elif ch == "'":
            i += 1
            chars = []
            while True:
                if i >= n:
                    error("unterminated quoted atom", start)
                c = text[i]
                if c == "'":
                    if i + 1 < n and text[i + 1] == "'":
                        chars.append("'")
                        i += 2
                        continue
                    i += 1
                    break
                if c == "\\" and i + 1 < n:
                    esc = text[i + 1]
                    chars.append({"n": "\n", "t": "\t", "\\": "\\", "'": "'"}.get(esc, esc))
                    i += 2
                    continue
                if c == "\n":
                    error("newline in quoted atom", start)
                chars.append(c)
                i += 1
            tok = Token("name", "".join(chars), line, col, layout, quoted=True)
        elif ch in PUNCT:
            i += 1
            tok = Token("punct", ch, line, col, layout)
        elif ch in SOLO_CHARS:
            i += 1
            tok = Token("name", ch, line, col, layout)
        elif ch in SYMBOL_CHARS:
            while i < n and text[i] in SYMBOL_CHARS:
                i += 1
            sym = text[start:i]
            nxt = text[i] if i < n else ""
            if sym == "." and _is_layout(nxt):
                tok = Token("end", ".", line, col, layout)
            elif sym.endswith(".") and sym != ".." and _is_layout(nxt):
                # "a+." style: symbol atom glued to the clause terminator
                i -= 1
                tok = Token("name", sym[:-1], line, col, layout)
            elif sym == "-" and nxt == ";":
                i += 1
                tok = Token("name", "-;", line, col, layout)
            else:
                tok = Token("name", sym, line, col, layout)
        else:
            error(f"unexpected character {ch!r}", i)
        tokens.append(tok)
        layout = False
