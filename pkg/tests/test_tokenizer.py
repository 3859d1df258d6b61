"""Lexer behavior: comment stripping, literals, keyword tables."""

from assetscout.tokenizer import (
    RESERVED_WORDS, SYSTEMVERILOG_KEYWORDS, VERILOG_2005_KEYWORDS,
    strip_comments, tokenize,
)


def values(source):
    return [t.value for t in tokenize(source) if t.kind != "diag"]


def test_conditional_assignment_line():
    assert values("if (load) data_in_reg <= data;") == [
        "if", "(", "load", ")", "data_in_reg", "<=", "data", ";",
    ]


def test_empty_input():
    assert tokenize("") == []


def test_comments_are_stripped():
    assert values("/* x */ wire w; // y") == ["wire", "w", ";"]


def test_block_comment_keeps_line_numbers():
    toks = tokenize("/* one\ntwo */ wire w;")
    assert [t.value for t in toks] == ["wire", "w", ";"]
    assert toks[0].line == 2


def test_attribute_block_is_stripped():
    assert values("(* full_case *) casez (sel)") == ["casez", "(", "sel", ")"]


def test_based_literals_are_single_tokens():
    toks = tokenize("2'b00 128'hFF 8'd15")
    assert [t.kind for t in toks] == ["number"] * 3
    assert toks[1].value == "128'hFF"


def test_string_literal_is_single_token():
    toks = tokenize('$display("wire // not a comment");')
    strings = [t for t in toks if t.kind == "string"]
    assert len(strings) == 1
    assert strings[0].value == '"wire // not a comment"'


def test_escaped_identifier_is_single_token():
    toks = tokenize("wire \\foo!bar ;")
    assert [t.value for t in toks] == ["wire", "\\foo!bar", ";"]
    assert toks[1].kind == "id"


def test_unterminated_block_comment_yields_diagnostic():
    _text, diags = strip_comments("wire w; /* never closed")
    assert any("unterminated block comment" in msg for msg, _line in diags)
    toks = tokenize("wire w; /* never closed")
    assert any(t.kind == "diag" for t in toks)
    assert values("wire w; /* never closed") == ["wire", "w", ";"]


def test_unterminated_string_yields_diagnostic():
    toks = tokenize('x = "open')
    assert any(t.kind == "diag" for t in toks)


def test_compound_operators_win_over_prefixes():
    assert values("a <= b == c <<< d") == ["a", "<=", "b", "==", "c", "<<<", "d"]


def test_keyword_tables_are_disjoint_where_expected():
    assert "module" in VERILOG_2005_KEYWORDS
    assert "endmodule" in VERILOG_2005_KEYWORDS
    # "int" is SystemVerilog-only; keeping it out of the 2005 table lets
    # family configs use "int" as a match fragment
    assert "int" in SYSTEMVERILOG_KEYWORDS
    assert "int" not in VERILOG_2005_KEYWORDS
    assert RESERVED_WORDS == VERILOG_2005_KEYWORDS | SYSTEMVERILOG_KEYWORDS


def test_tokenize_is_deterministic():
    src = "module m (input a);\n  assign y = a ? 1'b0 : 1'b1;\nendmodule\n"
    assert tokenize(src) == tokenize(src)
