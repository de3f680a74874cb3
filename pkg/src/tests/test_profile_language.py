import json
import math

import pytest

from AST import NodeType
from BSCBounds import bound_theorem5
from Compiler import Compiler
from DistanceProfile import binomial_profile, script_profile
from EntropyCore import ChannelBSC, gv_distance, h, h_inv
from Errors import ProfileSyntaxError
from Lexer import Lexer
from Parser import Parser
from ProfileJIT import compile_profile, load_profile
from Settings import COARSE
from Token import TokenType

HEADER = "def beta(w: float, R: float) -> float:\n"


def tokens(source: str) -> list[TokenType]:
    lexer = Lexer(source)
    out = []
    while True:
        tok = lexer.next_token()
        out.append(tok.type)
        if tok.type == TokenType.EOF:
            return out


def parse(source: str):
    parser = Parser(Lexer(source))
    program = parser.parse_program()
    return program, parser.errors


def returned(source: str):
    program, errors = parse(source)
    assert errors == []
    return program.statements[0].body.statements[0].return_value


def compile_errors(source: str) -> list[str]:
    program, errors = parse(source)
    assert errors == []
    compiler = Compiler()
    compiler.compile(program)
    return compiler.errors


# Lexer

def test_lexer_token_stream():
    assert tokens("x: float = 1.5e-2 ** -y, f(x) -> z # note\n") == [
        TokenType.IDENTIFIER, TokenType.COLON, TokenType.TYPE, TokenType.EQ, TokenType.FLOAT, TokenType.POWER,
        TokenType.MINUS, TokenType.IDENTIFIER, TokenType.COMMA, TokenType.IDENTIFIER, TokenType.LPAREN,
        TokenType.IDENTIFIER, TokenType.RPAREN, TokenType.ARROW, TokenType.IDENTIFIER, TokenType.NEWLINE,
        TokenType.EOF,
    ]


def test_lexer_numbers():
    lexer = Lexer("12 3.25 2e3")
    assert [lexer.next_token().literal for _ in range(3)] == [12, 3.25, 2000.0]


def test_lexer_collects_errors_with_lines():
    lexer = Lexer("a\n$ 1.2.3\n")
    while lexer.next_token().type != TokenType.EOF:
        pass
    assert len(lexer.errors) == 2
    assert all(err.startswith("Line 2") for err in lexer.errors)


# Parser

def test_unary_minus_binds_looser_than_power():
    expr = returned(HEADER + "    return -w ** 2\n")
    assert expr.type() == NodeType.PrefixExpression
    assert expr.right_node.type() == NodeType.InfixExpression
    assert expr.right_node.operator == "**"


def test_power_is_right_associative():
    expr = returned(HEADER + "    return 2 ** 3 ** 2\n")
    assert expr.left_node.value == 2
    assert expr.right_node.operator == "**"


def test_subtraction_is_left_associative():
    expr = returned(HEADER + "    return w - R - 1\n")
    assert expr.left_node.type() == NodeType.InfixExpression
    assert expr.right_node.value == 1


def test_call_arguments():
    expr = returned(HEADER + "    return f(w, R + 1, 2)\n")
    assert expr.function.value == "f"
    assert len(expr.arguments) == 3


def test_function_parameters_and_blocks():
    program, errors = parse(HEADER + "    x: float = w\n    y = x * R\n    return y\n\ndef other() -> float:\n    return 1\n")
    assert errors == []
    beta, other = program.statements
    assert [p.name for p in beta.parameters] == ["w", "R"]
    assert len(beta.body.statements) == 3
    assert other.parameters == []


def test_top_level_statements_are_rejected():
    _, errors = parse("x = 1\n" + HEADER + "    return w\n")
    assert any("only function definitions" in err for err in errors)


def test_parser_errors_carry_lines(data_dir):
    _, errors = parse((data_dir / "broken.pyf").read_text())
    assert errors and errors[0].startswith("Line 2")


def test_missing_arrow():
    _, errors = parse("def beta(w: float) float:\n    return w\n")
    assert any("ARROW" in err for err in errors)


def test_only_named_functions_are_called():
    _, errors = parse(HEADER + "    return 2(w)\n")
    assert errors == ["Line 2: only named functions can be called"]


def test_trailing_tokens_after_a_statement():
    _, errors = parse(HEADER + "    return w w\n")
    assert any(err.startswith("Line 2: unexpected 'w'") for err in errors)


def test_ast_json_round_trips_through_json():
    program, _ = parse(HEADER + "    return w\n")
    dumped = json.loads(json.dumps(program.json()))
    assert dumped["type"] == "Program"
    assert dumped["statements"][0]["FunctionStatement"]["name"]["value"] == "beta"


# Compiler

def test_compiler_emits_functions():
    program, _ = parse(HEADER + "    return w\n")
    compiler = Compiler()
    compiler.compile(program)
    assert compiler.errors == []
    assert 'define double @"beta"' in str(compiler.module) or "define double @beta" in str(compiler.module)


@pytest.mark.parametrize("body, message", [
    ("    return q + w\n", "name 'q' is not defined"),
    ("    return h(w, R)\n", "'h' takes 1 argument(s), got 2"),
    ("    return w\n    x = 1\n", "unreachable statement after return"),
    ("    x = w\n", "does not end with a return"),
    ("    return g(w)\n", "'g' is not a function"),
])
def test_compiler_errors(body, message):
    errors = compile_errors(HEADER + body)
    assert any(message in err for err in errors)


def test_builtins_cannot_be_redefined():
    errors = compile_errors("def h(x: float) -> float:\n    return x\n" + HEADER + "    return w\n")
    assert any("'h' is a builtin" in err for err in errors)


def test_compiler_errors_have_lines():
    errors = compile_errors(HEADER + "    return q\n")
    assert errors[0].startswith("Line 2")


# JIT

def test_binomial_script(data_dir):
    compiled = load_profile(data_dir / "binomial.pyf")
    assert compiled.name == "binomial"
    assert compiled.beta(0.2, 0.5) == pytest.approx(0.5 + h(0.2) - 1.0, abs=1e-12)
    assert compiled.delta_min(0.5) == pytest.approx(gv_distance(0.5), abs=1e-12)
    assert "profile_hinv" in compiled.ir
    assert compiled.ast["type"] == "Program"


def test_arithmetic_and_builtins():
    compiled = compile_profile(HEADER + "    a: float = 2 ** 3\n    b = -a + sqrt(16) * exp(0) - ln(1)\n"
                               "    return b + log2(8) + hinv(0.5) + w / R\n")
    assert compiled.beta(1.0, 4.0) == pytest.approx(-8.0 + 4.0 + 3.0 + h_inv(0.5) + 0.25, abs=1e-9)


def test_entropy_builtin_outside_unit_interval_is_nan():
    compiled = compile_profile(HEADER + "    return h(w)\n")
    assert math.isnan(compiled.beta(1.5, 0.0))
    assert compiled.beta(0.0, 0.0) == 0.0


def test_script_functions_call_each_other():
    compiled = compile_profile(HEADER + "    return twice(w) + R\n\ndef twice(x: float) -> float:\n    return 2 * x\n")
    assert compiled.beta(0.25, 1.0) == pytest.approx(1.5)


def test_delta_min_is_optional():
    compiled = compile_profile(HEADER + "    return w - 0.3\n")
    assert compiled.delta_min(0.5) is None
    assert script_profile(compiled, 0.5).delta_min == pytest.approx(0.3, abs=1e-6)


def test_missing_beta_is_reported():
    with pytest.raises(ProfileSyntaxError) as info:
        compile_profile("def delta_min(R: float) -> float:\n    return 0.1\n")
    assert any("must define 'beta" in err for err in info.value.errors)


def test_wrong_beta_arity_is_reported():
    with pytest.raises(ProfileSyntaxError) as info:
        compile_profile("def beta(w: float) -> float:\n    return w\n")
    assert any("must take 2 parameters" in err for err in info.value.errors)


def test_syntax_errors_are_raised(data_dir):
    with pytest.raises(ProfileSyntaxError) as info:
        load_profile(data_dir / "broken.pyf")
    assert info.value.errors[0].startswith("Line 2")


def test_script_profile_matches_builtin_profile(data_dir):
    compiled = load_profile(data_dir / "binomial.pyf")
    ch = ChannelBSC(0.05)
    R = 0.1
    scripted = bound_theorem5(R, script_profile(compiled, R), ch, COARSE)
    builtin = bound_theorem5(R, binomial_profile(R), ch, COARSE)
    assert scripted == pytest.approx(builtin, abs=1e-6)
