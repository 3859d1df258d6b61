"""Recursive-descent parser for a practical Verilog-2005 / SystemVerilog subset.

Covers module/endmodule, ANSI and non-ANSI ports, wire/reg/logic/integer
declarations, parameter/localparam, always/initial blocks with if/case and
blocking/non-blocking assignments, ternary expressions, continuous assigns
and module instantiations.  Unsupported constructs (generate, function,
task, ...) are skipped with a diagnostic.  Errors never abort sibling
modules: recovery happens at the next `module` keyword.
"""

import os
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .tokenizer import RESERVED_WORDS, Token, strip_comments, tokenize
from .syntax import (
    BLOCKING_ASSIGN, CASE_STMT, CONTINUOUS_ASSIGN, IF_STMT, INOUT, INPUT, NET,
    NONBLOCKING_ASSIGN, OUTPUT, TERNARY_STMT,
    Diagnostic, Instantiation, ModuleDef, SignalDecl, SourceUnit, Statement,
)

RTL_EXTENSIONS = (".v", ".sv", ".vh", ".svh")

_NET_TYPES = {"wire", "reg", "logic", "integer", "tri", "tri0", "tri1",
              "wand", "wor", "triand", "trior", "trireg", "supply0",
              "supply1", "uwire", "bit", "time", "real", "realtime"}
_DIRECTIONS = {"input": INPUT, "output": OUTPUT, "inout": INOUT}
_SKIP_BLOCKS = {
    "generate": "endgenerate",
    "function": "endfunction",
    "task": "endtask",
    "specify": "endspecify",
    "table": "endtable",
    "interface": "endinterface",
    "package": "endpackage",
    "property": "endproperty",
    "sequence": "endsequence",
}


class ParseError(Exception):
    def __init__(self, message: str, line: int):
        super().__init__(message)
        self.message = message
        self.line = line


# ---------------------------------------------------------------------------
# Preprocessor: `define / `undef / `include / `ifdef / `ifndef / `else / `endif
# ---------------------------------------------------------------------------

def preprocess(text: str, path: str = "<string>",
               include_dirs: Sequence[str] = (),
               defines: Optional[Dict[str, str]] = None,
               diagnostics: Optional[List[Diagnostic]] = None,
               _depth: int = 0) -> str:
    """Expand object-like macros and resolve includes / conditionals.

    Returns preprocessed text with the same number of lines as the input
    (included content is appended in place on the directive's line).
    """
    if defines is None:
        defines = {}
    if diagnostics is None:
        diagnostics = []
    cleaned, comment_diags = strip_comments(text)
    for msg, line in comment_diags:
        diagnostics.append(Diagnostic(msg, "warning", line))

    out_lines: List[str] = []
    cond_stack: List[bool] = []   # active-branch flags
    lines = cleaned.split("\n")
    i = 0
    while i < len(lines):
        raw = lines[i]
        lineno = i + 1
        stripped = raw.strip()
        # join continuation lines for directives
        if stripped.startswith("`define") and stripped.endswith("\\"):
            joined = stripped
            while joined.endswith("\\") and i + 1 < len(lines):
                i += 1
                out_lines.append("")
                joined = joined[:-1] + " " + lines[i].strip()
            stripped = joined
        active = all(cond_stack)
        if stripped.startswith("`"):
            parts = stripped.split(None, 2)
            word = parts[0][1:]
            if word == "ifdef":
                cond_stack.append(active and len(parts) > 1 and parts[1] in defines)
            elif word == "ifndef":
                cond_stack.append(active and not (len(parts) > 1 and parts[1] in defines))
            elif word in ("else", "elsif"):
                if cond_stack:
                    parent = all(cond_stack[:-1])
                    if word == "else":
                        cond_stack[-1] = parent and not cond_stack[-1]
                    else:
                        taken = len(parts) > 1 and parts[1] in defines
                        cond_stack[-1] = parent and not cond_stack[-1] and taken
                else:
                    diagnostics.append(Diagnostic(f"`{word} without `ifdef", "warning", lineno))
            elif word == "endif":
                if cond_stack:
                    cond_stack.pop()
                else:
                    diagnostics.append(Diagnostic("`endif without `ifdef", "warning", lineno))
            elif not active:
                pass
            elif word == "define":
                if len(parts) >= 2:
                    name = parts[1]
                    if "(" in name:  # function-like macros unsupported
                        diagnostics.append(Diagnostic(
                            f"function-like macro `{name.split('(')[0]} not expanded",
                            "warning", lineno))
                    else:
                        defines[name] = parts[2] if len(parts) > 2 else ""
            elif word == "undef":
                if len(parts) >= 2:
                    defines.pop(parts[1], None)
            elif word == "include":
                target = stripped.split(None, 1)[1].strip().strip('"<>') if len(parts) > 1 else ""
                inc_text = _read_include(target, path, include_dirs)
                if inc_text is None:
                    diagnostics.append(Diagnostic(
                        f"include file not found: {target}", "warning", lineno))
                elif _depth > 16:
                    diagnostics.append(Diagnostic(
                        f"include depth limit reached at {target}", "warning", lineno))
                else:
                    expanded = preprocess(inc_text, target, include_dirs,
                                          defines, diagnostics, _depth + 1)
                    out_lines.append(expanded.replace("\n", " "))
                    i += 1
                    continue
            # other directives (`timescale, `default_nettype, ...) are dropped
            out_lines.append("")
        elif not active:
            out_lines.append("")
        else:
            out_lines.append(_substitute_macros(raw, defines))
        i += 1
    return "\n".join(out_lines)


def _read_include(target: str, from_path: str, include_dirs: Sequence[str]) -> Optional[str]:
    candidates = []
    if from_path and from_path != "<string>":
        candidates.append(os.path.join(os.path.dirname(from_path), target))
    for d in include_dirs:
        candidates.append(os.path.join(d, target))
    candidates.append(target)
    for cand in candidates:
        if os.path.isfile(cand):
            with open(cand, "rb") as fh:
                return fh.read().decode("utf-8", errors="replace")
    return None


def _substitute_macros(line: str, defines: Dict[str, str]) -> str:
    if "`" not in line:
        return line
    out = []
    i, n = 0, len(line)
    while i < n:
        c = line[i]
        if c == "`":
            j = i + 1
            while j < n and (line[j].isalnum() or line[j] in "_$"):
                j += 1
            name = line[i + 1:j]
            if name in defines:
                out.append(defines[name])
            else:
                out.append(line[i:j])
            i = j
        else:
            out.append(c)
            i += 1
    return "".join(out)


# ---------------------------------------------------------------------------
# Expression helpers
# ---------------------------------------------------------------------------

def collect_identifiers(tokens: Sequence[Token]) -> List[str]:
    """Identifiers referenced in an expression, in order, without duplicates.

    Skips system ids, based-literal tokens and named-connection dots.
    """
    seen = []
    for idx, tok in enumerate(tokens):
        if tok.kind != "id" or tok.value in RESERVED_WORDS:
            continue
        if idx > 0 and tokens[idx - 1].kind == "punct" and tokens[idx - 1].value == ".":
            continue
        if tok.value not in seen:
            seen.append(tok.value)
    return seen


def _contains_ternary(tokens: Sequence[Token]) -> bool:
    return any(t.kind == "punct" and t.value == "?" for t in tokens)


def _split_ternary(tokens: Sequence[Token]) -> Tuple[List[Token], List[Token]]:
    """Split an expression at its top-level '?' into (condition, rest)."""
    depth = 0
    for idx, t in enumerate(tokens):
        if t.kind == "punct":
            if t.value in "([{":
                depth += 1
            elif t.value in ")]}":
                depth -= 1
            elif t.value == "?" and depth == 0:
                return list(tokens[:idx]), list(tokens[idx + 1:])
    return [], list(tokens)


def eval_const_expr(tokens: Sequence[Token],
                    params: Dict[str, Optional[int]]) -> Optional[int]:
    """Evaluate +,-,*,/ and parenthesised constant expressions.

    Identifiers are looked up in `params`; anything else makes the result
    unresolved (None).
    """
    pos = [0]

    def peek() -> Optional[Token]:
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def advance() -> Token:
        t = tokens[pos[0]]
        pos[0] += 1
        return t

    def parse_primary() -> Optional[int]:
        t = peek()
        if t is None:
            return None
        if t.kind == "number":
            advance()
            return _number_value(t.value)
        if t.kind == "id":
            advance()
            return params.get(t.value)
        if t.kind == "punct" and t.value == "(":
            advance()
            v = parse_add()
            t2 = peek()
            if t2 is not None and t2.kind == "punct" and t2.value == ")":
                advance()
                return v
            return None
        if t.kind == "punct" and t.value == "-":
            advance()
            v = parse_primary()
            return -v if v is not None else None
        if t.kind == "punct" and t.value == "+":
            advance()
            return parse_primary()
        return None

    def parse_mul() -> Optional[int]:
        v = parse_primary()
        while v is not None:
            t = peek()
            if t is not None and t.kind == "punct" and t.value in ("*", "/"):
                advance()
                rhs = parse_primary()
                if rhs is None:
                    return None
                if t.value == "*":
                    v = v * rhs
                else:
                    v = v // rhs if rhs != 0 else None
            else:
                break
        return v

    def parse_add() -> Optional[int]:
        v = parse_mul()
        while v is not None:
            t = peek()
            if t is not None and t.kind == "punct" and t.value in ("+", "-"):
                advance()
                rhs = parse_mul()
                if rhs is None:
                    return None
                v = v + rhs if t.value == "+" else v - rhs
            else:
                break
        return v

    result = parse_add()
    if result is None or pos[0] != len(tokens):
        return None
    return result


def _number_value(text: str) -> Optional[int]:
    text = text.replace("_", "").replace(" ", "")
    if "'" in text:
        _, rest = text.split("'", 1)
        rest = rest.lstrip("sS")
        if not rest:
            return None
        base = {"b": 2, "o": 8, "d": 10, "h": 16}.get(rest[0].lower())
        digits = rest[1:]
        if base is None or not digits or any(ch in "xXzZ?" for ch in digits):
            return None
        try:
            return int(digits, base)
        except ValueError:
            return None
    try:
        return int(text)
    except ValueError:
        try:
            return int(float(text))
        except ValueError:
            return None


# ---------------------------------------------------------------------------
# Parser proper
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: List[Token], path: str):
        self.tokens = [t for t in tokens if t.kind != "diag"]
        self.diag_tokens = [t for t in tokens if t.kind == "diag"]
        self.path = path
        self.pos = 0
        self.diagnostics: List[Diagnostic] = [
            Diagnostic(t.value, "warning", t.line) for t in self.diag_tokens
        ]

    # -- token stream helpers -------------------------------------------------
    def peek(self, ahead: int = 0) -> Optional[Token]:
        idx = self.pos + ahead
        return self.tokens[idx] if idx < len(self.tokens) else None

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def expect(self, value: str) -> Token:
        t = self.peek()
        if t is None:
            raise ParseError(f"expected {value!r}, got end of file",
                             self.tokens[-1].line if self.tokens else 0)
        if t.value != value:
            raise ParseError(f"expected {value!r}, got {t.value!r}", t.line)
        return self.advance()

    def skip_until(self, *values: str) -> Optional[Token]:
        """Advance past tokens until one of `values`; consumes and returns it."""
        depth = 0
        while not self.at_end():
            t = self.advance()
            if t.kind == "punct":
                if t.value in "([{":
                    depth += 1
                elif t.value in ")]}":
                    depth -= 1
            if depth <= 0 and t.value in values:
                return t
        return None

    def collect_until(self, *values: str, consume: bool = True) -> List[Token]:
        """Tokens up to (not including) a top-level occurrence of `values`."""
        out: List[Token] = []
        depth = 0
        while not self.at_end():
            t = self.peek()
            if depth == 0 and t.value in values and t.kind == "punct":
                if consume:
                    self.advance()
                return out
            if t.kind == "punct":
                if t.value in "([{":
                    depth += 1
                elif t.value in ")]}":
                    depth -= 1
            out.append(self.advance())
        return out

    # -- top level ------------------------------------------------------------
    def parse_unit(self) -> SourceUnit:
        unit = SourceUnit(path=self.path, diagnostics=self.diagnostics)
        while not self.at_end():
            t = self.peek()
            if t.is_keyword("module", "macromodule"):
                start = self.pos
                try:
                    unit.modules.append(self.parse_module())
                except ParseError as err:
                    self.diagnostics.append(
                        Diagnostic(f"malformed module: {err.message}", "error", err.line))
                    # recover: resume at the next `module` keyword
                    self.pos = start + 1
                    while not self.at_end() and not self.peek().is_keyword(
                            "module", "macromodule"):
                        self.advance()
            else:
                self.advance()
        return unit

    def parse_module(self) -> ModuleDef:
        kw = self.expect("module") if self.peek().value == "module" \
            else self.expect("macromodule")
        name_tok = self.advance()
        if name_tok.kind != "id" or name_tok.value in RESERVED_WORDS:
            raise ParseError(f"bad module name {name_tok.value!r}", name_tok.line)
        mod = ModuleDef(name=name_tok.value, path=self.path, line=kw.line)

        t = self.peek()
        if t is not None and t.value == "#":
            self.advance()
            self.expect("(")
            self._parse_parameter_list(mod, terminator=")")
        t = self.peek()
        if t is not None and t.value == "(":
            self.advance()
            self._parse_port_list(mod)
        self.expect(";")
        self._parse_body(mod)
        mod.end_line = self.tokens[self.pos - 1].line if self.pos else kw.line
        self._resolve_widths(mod)
        return mod

    # -- ports ----------------------------------------------------------------
    def _parse_port_list(self, mod: ModuleDef) -> None:
        t = self.peek()
        if t is not None and t.kind == "punct" and t.value == ")":
            self.advance()
            return
        ansi = t is not None and t.value in _DIRECTIONS
        if ansi:
            self._parse_ansi_ports(mod)
        else:
            # non-ANSI: plain name list; body declarations fill in direction
            toks = self.collect_until(")")
            for name in collect_identifiers(toks):
                if not any(p.name == name for p in mod.ports):
                    mod.ports.append(SignalDecl(name, INPUT, 1,
                                                decl_line=toks[0].line if toks else 0))

    def _parse_ansi_ports(self, mod: ModuleDef) -> None:
        direction = INPUT
        rng: Optional[Tuple[List[str], List[str]]] = None
        while not self.at_end():
            t = self.peek()
            if t.value == ")" and t.kind == "punct":
                self.advance()
                return
            if t.value == "," and t.kind == "punct":
                self.advance()
                continue
            if t.value in _DIRECTIONS:
                direction = _DIRECTIONS[self.advance().value]
                rng = None
                continue
            if t.value in _NET_TYPES or t.value in ("signed", "unsigned", "var"):
                self.advance()
                continue
            if t.kind == "punct" and t.value == "[":
                rng = self._parse_range()
                continue
            if t.kind == "id" and t.value not in RESERVED_WORDS:
                name = self.advance().value
                # default value `= expr` allowed in SV headers
                if self.peek() is not None and self.peek().value == "=":
                    self.advance()
                    self.collect_until(",", ")", consume=False)
                mod.ports.append(SignalDecl(name, direction, None if rng else 1,
                                            decl_line=t.line, range_expr=rng))
                continue
            if t.value == ";" or t.is_keyword("module", "macromodule", "endmodule"):
                # a port list cannot contain these: the header is malformed
                raise ParseError("unterminated port list", t.line)
            # anything else (e.g. stray tokens): skip
            self.advance()

    def _parse_range(self) -> Tuple[List[str], List[str]]:
        self.expect("[")
        msb: List[Token] = []
        depth = 0
        while not self.at_end():
            t = self.peek()
            if depth == 0 and t.value == ":" and t.kind == "punct":
                self.advance()
                break
            if depth == 0 and t.value == "]" and t.kind == "punct":
                self.advance()
                return ([tok.value for tok in msb], ["0"])
            if t.kind == "punct":
                if t.value in "([{":
                    depth += 1
                elif t.value in ")]}":
                    depth -= 1
            msb.append(self.advance())
        lsb = self.collect_until("]")
        return ([t.value for t in msb], [t.value for t in lsb])

    # -- parameters -----------------------------------------------------------
    def _parse_parameter_list(self, mod: ModuleDef, terminator: str) -> None:
        while not self.at_end():
            t = self.peek()
            if t.value == terminator and t.kind == "punct":
                self.advance()
                return
            if t.value in ("parameter", "localparam", ",", "integer", "real",
                           "signed", "unsigned", "logic", "wire", "reg",
                           "int", "bit", "string", "time"):
                self.advance()
                continue
            if t.kind == "punct" and t.value == "[":
                self._parse_range()
                continue
            if t.kind == "id" and t.value not in RESERVED_WORDS:
                name = self.advance().value
                value_toks: List[Token] = []
                if self.peek() is not None and self.peek().value == "=":
                    self.advance()
                    value_toks = self.collect_until(",", terminator, consume=False)
                mod.parameters[name] = _ParamExpr(value_toks)  # type: ignore[assignment]
                continue
            self.advance()

    def _parse_param_decl(self, mod: ModuleDef) -> None:
        """`parameter W = 8, D = 4;` inside the body."""
        self.advance()  # parameter / localparam
        while not self.at_end():
            t = self.peek()
            if t.value == ";":
                self.advance()
                return
            if t.value in (",", "integer", "real", "signed", "unsigned",
                           "logic", "int", "bit", "string", "time", "reg", "wire"):
                self.advance()
                continue
            if t.kind == "punct" and t.value == "[":
                self._parse_range()
                continue
            if t.kind == "id" and t.value not in RESERVED_WORDS:
                name = self.advance().value
                value_toks = []
                if self.peek() is not None and self.peek().value == "=":
                    self.advance()
                    value_toks = self.collect_until(",", ";", consume=False)
                mod.parameters[name] = _ParamExpr(value_toks)  # type: ignore[assignment]
                continue
            self.advance()

    # -- module body ----------------------------------------------------------
    def _parse_body(self, mod: ModuleDef) -> None:
        while not self.at_end():
            t = self.peek()
            if t.is_keyword("endmodule"):
                self.advance()
                return
            if t.is_keyword("module", "macromodule"):
                raise ParseError("missing endmodule", t.line)
            if t.is_keyword("parameter", "localparam"):
                self._parse_param_decl(mod)
            elif t.value in _DIRECTIONS:
                self._parse_body_port_decl(mod)
            elif t.value in _NET_TYPES:
                self._parse_net_decl(mod)
            elif t.is_keyword("genvar"):
                self.skip_until(";")
            elif t.is_keyword("assign"):
                self._parse_continuous_assign(mod)
            elif t.is_keyword("always", "always_ff", "always_comb", "always_latch",
                              "initial", "final"):
                self.advance()
                self._skip_event_control()
                stmts = self._parse_statement(mod, guards=[])
                mod.statements.extend(stmts)
            elif t.value in _SKIP_BLOCKS:
                end_kw = _SKIP_BLOCKS[t.value]
                self.diagnostics.append(Diagnostic(
                    f"unsupported construct '{t.value}' skipped", "warning", t.line))
                self.advance()
                self._skip_to_keyword(end_kw)
            elif t.is_keyword("defparam"):
                self.skip_until(";")
            elif t.kind == "id" and t.value not in RESERVED_WORDS:
                self._parse_instantiation(mod)
            elif t.kind == "directive" or t.kind == "sysid":
                self.advance()
            else:
                self.advance()
        raise ParseError("unexpected end of file inside module", mod.line)

    def _skip_to_keyword(self, end_kw: str) -> None:
        while not self.at_end():
            t = self.advance()
            if t.is_keyword(end_kw):
                return
            if t.is_keyword("endmodule"):
                # put it back so _parse_body terminates normally
                self.pos -= 1
                return

    def _parse_body_port_decl(self, mod: ModuleDef) -> None:
        direction = _DIRECTIONS[self.advance().value]
        rng: Optional[Tuple[List[str], List[str]]] = None
        is_reg = False
        line = self.tokens[self.pos - 1].line
        while not self.at_end():
            t = self.peek()
            if t.value == ";":
                self.advance()
                return
            if t.value in _NET_TYPES:
                is_reg = True
                self.advance()
                continue
            if t.value in ("signed", "unsigned", "var", ","):
                self.advance()
                continue
            if t.kind == "punct" and t.value == "[":
                rng = self._parse_range()
                continue
            if t.kind == "id" and t.value not in RESERVED_WORDS:
                name = self.advance().value
                existing = next((p for p in mod.ports if p.name == name), None)
                decl = SignalDecl(name, direction, None if rng else 1,
                                  decl_line=t.line, range_expr=rng)
                if existing is not None:
                    # non-ANSI merge: direction/width from the body declaration
                    idx = mod.ports.index(existing)
                    mod.ports[idx] = decl
                else:
                    mod.ports.append(decl)
                continue
            self.advance()
        raise ParseError("unterminated port declaration", line)

    def _parse_net_decl(self, mod: ModuleDef) -> None:
        kw = self.advance()
        rng: Optional[Tuple[List[str], List[str]]] = None
        default_width = 32 if kw.value in ("integer", "int", "time") else 1
        while not self.at_end():
            t = self.peek()
            if t.value == ";":
                self.advance()
                return
            if t.value in ("signed", "unsigned", ",") or t.value in _NET_TYPES:
                self.advance()
                continue
            if t.kind == "punct" and t.value == "[":
                rng = self._parse_range()
                continue
            if t.kind == "id" and t.value not in RESERVED_WORDS:
                name = self.advance().value
                # skip unpacked array dimensions after the name
                while self.peek() is not None and self.peek().value == "[":
                    self._parse_range()
                if mod.signal(name) is None:
                    mod.nets.append(SignalDecl(
                        name, NET,
                        None if rng else default_width,
                        decl_line=t.line, range_expr=rng))
                if self.peek() is not None and self.peek().value == "=":
                    # net declaration assignment doubles as a continuous assign
                    self.advance()
                    rhs = self.collect_until(",", ";", consume=False)
                    mod.statements.append(self._make_assign(
                        CONTINUOUS_ASSIGN, [name], rhs, [], t.line, continuous=True))
                continue
            self.advance()
        raise ParseError("unterminated net declaration", kw.line)

    # -- statements -----------------------------------------------------------
    def _skip_event_control(self) -> None:
        t = self.peek()
        if t is not None and t.value == "@":
            self.advance()
            t = self.peek()
            if t is not None and t.value == "(":
                self.advance()
                self.collect_until(")")
            elif t is not None and t.value == "*":
                self.advance()

    def _skip_delay(self) -> None:
        t = self.peek()
        if t is not None and t.value == "#":
            self.advance()
            t = self.peek()
            if t is not None and t.value == "(":
                self.advance()
                self.collect_until(")")
            elif t is not None:
                self.advance()

    def _make_assign(self, kind: str, lhs: List[str], rhs_toks: List[Token],
                     guards: List[str], line: int, continuous: bool = False) -> Statement:
        rhs_ids = collect_identifiers(rhs_toks)
        if _contains_ternary(rhs_toks):
            cond_toks, rest = _split_ternary(rhs_toks)
            return Statement(TERNARY_STMT, line,
                             cond_idents=collect_identifiers(cond_toks),
                             lhs_idents=lhs,
                             rhs_idents=collect_identifiers(rest),
                             body_statement_count=1, branch_count=2,
                             continuous=continuous)
        return Statement(kind, line, cond_idents=list(guards),
                         lhs_idents=lhs, rhs_idents=rhs_ids,
                         continuous=continuous)

    def _parse_continuous_assign(self, mod: ModuleDef) -> None:
        self.advance()  # assign
        self._skip_delay()
        while True:
            lhs_toks = self.collect_until("=")
            rhs_toks = self.collect_until(",", ";", consume=False)
            sep = self.peek()
            line = lhs_toks[0].line if lhs_toks else (sep.line if sep else 0)
            mod.statements.append(self._make_assign(
                CONTINUOUS_ASSIGN, collect_identifiers(lhs_toks), rhs_toks,
                [], line, continuous=True))
            if sep is not None and sep.value == ",":
                self.advance()
                continue
            if sep is not None and sep.value == ";":
                self.advance()
            return

    def _parse_statement(self, mod: ModuleDef, guards: List[str]) -> List[Statement]:
        """Parse one procedural statement; returns the flattened records."""
        t = self.peek()
        if t is None:
            return []
        if t.value == ";":
            self.advance()
            return []
        if t.value == "#":
            self._skip_delay()
            return self._parse_statement(mod, guards)
        if t.value == "@":
            self._skip_event_control()
            return self._parse_statement(mod, guards)
        if t.is_keyword("begin"):
            self.advance()
            if self.peek() is not None and self.peek().value == ":":
                self.advance()
                if self.peek() is not None and self.peek().kind == "id":
                    self.advance()
            out: List[Statement] = []
            while not self.at_end() and not self.peek().is_keyword("end"):
                if self.peek().is_keyword("endmodule"):
                    raise ParseError("missing 'end'", self.peek().line)
                out.extend(self._parse_statement(mod, guards))
            if not self.at_end():
                self.advance()  # end
            return out
        if t.is_keyword("if"):
            return self._parse_if(mod, guards)
        if t.is_keyword("case", "casez", "casex", "unique", "priority"):
            if t.value in ("unique", "priority"):
                self.advance()
            return self._parse_case(mod, guards)
        if t.is_keyword("for", "while", "repeat"):
            self.advance()
            if self.peek() is not None and self.peek().value == "(":
                self.advance()
                self.collect_until(")")
            return self._parse_statement(mod, guards)
        if t.is_keyword("forever"):
            self.advance()
            return self._parse_statement(mod, guards)
        if t.is_keyword("disable", "wait"):
            self.skip_until(";")
            return []
        if t.kind == "sysid":
            self.skip_until(";")
            return []
        if t.is_keyword("force", "release", "deassign", "assign"):
            self.advance()
            t = self.peek()
        # fall through: an assignment statement
        lhs_toks = self.collect_until("=", "<=", consume=False)
        op = self.peek()
        if op is None or op.value not in ("=", "<="):
            # not an assignment we understand; skip to ';'
            self.skip_until(";")
            return []
        self.advance()
        self._skip_delay()
        rhs_toks = self.collect_until(";", consume=False)
        if self.peek() is not None:
            self.advance()
        kind = NONBLOCKING_ASSIGN if op.value == "<=" else BLOCKING_ASSIGN
        line = lhs_toks[0].line if lhs_toks else op.line
        stmt = self._make_assign(kind, collect_identifiers(lhs_toks),
                                 rhs_toks, guards, line)
        return [stmt]

    def _parse_if(self, mod: ModuleDef, guards: List[str]) -> List[Statement]:
        kw = self.expect("if")
        self.expect("(")
        cond_toks = self.collect_until(")")
        cond_ids = collect_identifiers(cond_toks)
        then_stmts = self._parse_statement(mod, guards + cond_ids)
        else_stmts: List[Statement] = []
        branches = 1
        if self.peek() is not None and self.peek().is_keyword("else"):
            self.advance()
            branches = 2
            else_stmts = self._parse_statement(mod, guards + cond_ids)
        head = Statement(IF_STMT, kw.line, cond_idents=cond_ids,
                         body_statement_count=max(len(then_stmts), len(else_stmts)),
                         branch_count=branches)
        return [head] + then_stmts + else_stmts


    def _parse_case(self, mod: ModuleDef, guards: List[str]) -> List[Statement]:
        kw = self.advance()  # case/casez/casex
        self.expect("(")
        cond_ids = collect_identifiers(self.collect_until(")"))
        items: List[List[Statement]] = []
        body: List[Statement] = []
        while not self.at_end():
            t = self.peek()
            if t.is_keyword("endcase"):
                self.advance()
                break
            if t.is_keyword("endmodule"):
                raise ParseError("missing 'endcase'", t.line)
            if t.is_keyword("default"):
                self.advance()
                if self.peek() is not None and self.peek().value == ":":
                    self.advance()
            else:
                self.collect_until(":")
            stmts = self._parse_statement(mod, guards + cond_ids)
            items.append(stmts)
            body.extend(stmts)
        head = Statement(CASE_STMT, kw.line, cond_idents=cond_ids,
                         body_statement_count=max((len(s) for s in items), default=0),
                         branch_count=len(items))
        return [head] + body

    # -- instantiations -------------------------------------------------------
    def _parse_instantiation(self, mod: ModuleDef) -> None:
        target = self.advance().value
        t = self.peek()
        if t is not None and t.value == "#":
            self.advance()
            if self.peek() is not None and self.peek().value == "(":
                self.advance()
                self.collect_until(")")
        while True:
            t = self.peek()
            if t is None or t.kind != "id" or t.value in RESERVED_WORDS:
                # not an instantiation after all (e.g. user-defined type decl)
                self.skip_until(";")
                return
            inst_name = self.advance().value
            while self.peek() is not None and self.peek().value == "[":
                self._parse_range()
            if self.peek() is None or self.peek().value != "(":
                self.skip_until(";")
                return
            self.advance()  # (
            inst = Instantiation(inst_name, target, line=t.line)
            self._parse_connections(inst)
            mod.instantiations.append(inst)
            t = self.peek()
            if t is not None and t.value == ",":
                self.advance()
                continue
            if t is not None and t.value == ";":
                self.advance()
            return

    def _parse_connections(self, inst: Instantiation) -> None:
        positional_index = 0
        while not self.at_end():
            t = self.peek()
            if t.value == ")" and t.kind == "punct":
                self.advance()
                return
            if t.value == "," and t.kind == "punct":
                self.advance()
                continue
            if t.value == "." and t.kind == "punct":
                self.advance()
                nxt = self.peek()
                if nxt is not None and nxt.value == "*":
                    self.advance()
                    continue
                formal = self.advance().value
                if self.peek() is not None and self.peek().value == "(":
                    self.advance()
                    actual = collect_identifiers(self.collect_until(")"))
                else:
                    actual = [formal]  # SV `.name` shorthand
                inst.connections.append((formal, actual))
            else:
                expr = self.collect_until(",", ")", consume=False)
                inst.connections.append((positional_index, collect_identifiers(expr)))
                positional_index += 1

    # -- width resolution -----------------------------------------------------
    def _resolve_widths(self, mod: ModuleDef) -> None:
        params = _evaluate_parameters(mod)
        mod.parameters = params
        for decl in mod.all_signals():
            if decl.range_expr is not None:
                decl.width_bits = _range_width(decl.range_expr, params)
        self._record_unresolved_refs(mod)

    def _record_unresolved_refs(self, mod: ModuleDef) -> None:
        known = {s.name for s in mod.all_signals()} | set(mod.parameters)
        seen = set()
        for stmt in mod.statements:
            for name in stmt.cond_idents + stmt.lhs_idents + stmt.rhs_idents:
                if name not in known and name not in seen:
                    seen.add(name)
                    mod.unresolved_refs.append(name)


class _ParamExpr:
    """Unevaluated parameter value (raw token list)."""

    def __init__(self, tokens: List[Token]):
        self.tokens = tokens


def _evaluate_parameters(mod: ModuleDef) -> Dict[str, Optional[int]]:
    raw = mod.parameters
    resolved: Dict[str, Optional[int]] = {}
    in_progress = set()

    def resolve(name: str) -> Optional[int]:
        if name in resolved:
            return resolved[name]
        if name not in raw or name in in_progress:
            return None
        in_progress.add(name)
        expr = raw[name]
        if isinstance(expr, _ParamExpr):
            needed = {t.value for t in expr.tokens
                      if t.kind == "id" and t.value not in RESERVED_WORDS}
            env = {dep: resolve(dep) for dep in needed}
            value = eval_const_expr(expr.tokens, env) if expr.tokens else None
        elif isinstance(expr, int):
            value = expr
        else:
            value = None
        in_progress.discard(name)
        resolved[name] = value
        return value

    for name in list(raw):
        resolve(name)
    return resolved


def _range_width(range_expr: Tuple[List[str], List[str]],
                 params: Dict[str, Optional[int]]) -> Optional[int]:
    msb_toks, lsb_toks = range_expr
    msb = eval_const_expr(tokenize(" ".join(msb_toks)), params)
    lsb = eval_const_expr(tokenize(" ".join(lsb_toks)), params)
    if msb is None or lsb is None:
        return None
    return abs(msb - lsb) + 1


# ---------------------------------------------------------------------------
# Public entry points
# ---------------------------------------------------------------------------

def parse_source(text: str, path: str = "<string>",
                 include_dirs: Sequence[str] = ()) -> SourceUnit:
    """Parse Verilog source text into a SourceUnit."""
    diags: List[Diagnostic] = []
    processed = preprocess(text, path, include_dirs, diagnostics=diags)
    tokens = tokenize(processed)
    parser = _Parser(tokens, path)
    parser.diagnostics.extend(diags)
    unit = parser.parse_unit()
    return unit


def parse_file(path: str, include_dirs: Sequence[str] = ()) -> SourceUnit:
    """Parse one RTL file; raises OSError only when the file is unreadable."""
    with open(path, "rb") as fh:
        text = fh.read().decode("utf-8", errors="replace")
    return parse_source(text, path, include_dirs)


def discover_rtl_files(root: str) -> List[str]:
    """All .v/.sv/.vh/.svh files under `root`, sorted for determinism."""
    found = []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for fn in sorted(filenames):
            if fn.lower().endswith(RTL_EXTENSIONS):
                found.append(os.path.join(dirpath, fn))
    return found


def parse_tree(root: str) -> List[SourceUnit]:
    """Parse every RTL file under a directory root."""
    include_dirs = [root]
    return [parse_file(p, include_dirs) for p in discover_rtl_files(root)]
