from Lexer import Lexer
from Token import Token, TokenType
from typing import Callable
from enum import Enum, auto

from AST import Statement, Expression, Program
from AST import ExpressionStatement, VariableStatement, FunctionStatement, ReturnStatement, BlockStatement, AssignStatement
from AST import InfixExpression, PrefixExpression, CallExpression, FunctionParameter
from AST import IntegerLiteral, FloatLiteral, IdentifierLiteral


class PrecedenceType(Enum):
    # Binding power of the operators, weakest first
    P_LOWEST = 0
    P_SUM = auto()
    P_PRODUCT = auto()
    P_PREFIX = auto()
    P_EXPONENT = auto()
    P_CALL = auto()


# Mapping of token types to their corresponding precedence levels
PRECEDENCES: dict[TokenType, PrecedenceType] = {
    TokenType.PLUS: PrecedenceType.P_SUM,
    TokenType.MINUS: PrecedenceType.P_SUM,
    TokenType.SLASH: PrecedenceType.P_PRODUCT,
    TokenType.ASTERISK: PrecedenceType.P_PRODUCT,
    TokenType.POWER: PrecedenceType.P_EXPONENT,
    TokenType.LPAREN: PrecedenceType.P_CALL,
}

STATEMENT_END: tuple[TokenType, ...] = (TokenType.NEWLINE, TokenType.EOF)


class Parser:
    def __init__(self, lexer: Lexer) -> None:
        """Initializes the parser over a lexer; syntax errors are collected in self.errors."""
        self.lexer = lexer  # Token source

        self.errors: list[str] = []  # Collected syntax errors, each prefixed with its line

        self.current_token: Token = None  # Token being parsed
        self.peek_token: Token = None  # One token of lookahead

        # Prefix parse functions by token type
        self.prefix_parse_fns: dict[TokenType, Callable] = {
            TokenType.IDENTIFIER: self.__parse_identifier,
            TokenType.INT: self.__parse_int_literal,
            TokenType.FLOAT: self.__parse_float_literal,
            TokenType.LPAREN: self.__parse_grouped_expression,
            TokenType.MINUS: self.__parse_prefix_expression,
        }
        # Infix parse functions by token type
        self.infix_parse_fns: dict[TokenType, Callable] = {
            TokenType.PLUS: self.__parse_infix_expression,
            TokenType.MINUS: self.__parse_infix_expression,
            TokenType.SLASH: self.__parse_infix_expression,
            TokenType.ASTERISK: self.__parse_infix_expression,
            TokenType.POWER: self.__parse_infix_expression,
            TokenType.LPAREN: self.__parse_call_expression,
        }

        # Fill the current and peek tokens
        self.__next_token()
        self.__next_token()

    # Parse helpers region
    def __next_token(self) -> None:
        self.current_token = self.peek_token
        self.peek_token = self.lexer.next_token()

    def __current_token_is(self, tt: TokenType) -> bool:
        return self.current_token.type == tt

    def __peek_token_is(self, tt: TokenType) -> bool:
        return self.peek_token.type == tt

    def __expect_peek(self, tt: TokenType) -> bool:
        """Advances when the peek token has the expected type, records an error otherwise."""
        if self.__peek_token_is(tt):
            self.__next_token()
            return True
        else:
            self.__peek_error(tt)
            return False

    def __current_precedence(self) -> PrecedenceType:
        return PRECEDENCES.get(self.current_token.type, PrecedenceType.P_LOWEST)

    def __peek_precedence(self) -> PrecedenceType:
        return PRECEDENCES.get(self.peek_token.type, PrecedenceType.P_LOWEST)

    def __error(self, message: str, token: Token | None = None) -> None:
        token = token if token is not None else self.current_token
        self.errors.append(f"Line {token.line_no}: {message}")

    def __peek_error(self, tt: TokenType) -> None:
        self.__error(f"expected next token {tt.value}, got {self.peek_token.type.value} '{self.peek_token.literal}'",
                     self.peek_token)

    def __no_prefix_parse_fn_error(self, tt: TokenType) -> None:
        self.__error(f"no prefix parse function for {tt.value} '{self.current_token.literal}'")

    def __skip_line(self) -> None:
        """Error recovery: moves to the last token before the next newline."""
        if self.current_token.type in STATEMENT_END:
            return

        while not self.__peek_token_is(TokenType.NEWLINE) and not self.__peek_token_is(TokenType.EOF):
            self.__next_token()

    # end region

    def parse_program(self) -> Program:
        """
        Parses a whole script. Only function definitions may appear at the top level.

        Returns:
            Program: The AST; check self.errors before using it.
        """
        program: Program = Program()

        while True:
            while self.__current_token_is(TokenType.NEWLINE):  # Blank lines between definitions
                self.__next_token()

            if self.__current_token_is(TokenType.EOF):  # End of script
                break

            if not self.__current_token_is(TokenType.DEF):
                # Statements outside a def are reported and skipped line by line
                self.__error(f"only function definitions are allowed at the top level, got '{self.current_token.literal}'")
                self.__skip_line()
                self.__next_token()
                continue

            stmt: FunctionStatement = self.__parse_function_statement()
            if stmt is not None:
                program.statements.append(stmt)
            else:
                self.__next_token()
                while not self.__current_token_is(TokenType.DEF) and not self.__current_token_is(TokenType.EOF):
                    self.__next_token()  # Resynchronize on the next definition

        return program

    def __parse_statement(self) -> Statement:
        """Parses one statement; on return the current token is its last token."""
        match self.current_token.type:
            case TokenType.IDENTIFIER:
                if self.__peek_token_is(TokenType.EQ):  # x = ...
                    return self.__parse_assign_statement()
                elif self.__peek_token_is(TokenType.COLON):  # x: float = ...
                    return self.__parse_variable_statement()
                else:
                    return self.__parse_expression_statement()
            case TokenType.RETURN:
                return self.__parse_return_statement()
            case _:
                return self.__parse_expression_statement()

    # Parse expression methods
    def __parse_expression_statement(self) -> ExpressionStatement:
        expr = self.__parse_expression(PrecedenceType.P_LOWEST)
        if expr is None:
            return None

        return ExpressionStatement(expr=expr)

    def __parse_expression(self, precedence: PrecedenceType) -> Expression:
        """Pratt loop: a prefix parse, then infix parses while the next operator binds tighter."""
        prefix_fn: Callable | None = self.prefix_parse_fns.get(self.current_token.type)
        if prefix_fn is None:  # Token cannot start an expression
            self.__no_prefix_parse_fn_error(self.current_token.type)
            return None

        left_expr: Expression = prefix_fn()

        while left_expr is not None and not self.__peek_token_is(TokenType.NEWLINE) \
                and precedence.value < self.__peek_precedence().value:
            infix_fn: Callable | None = self.infix_parse_fns.get(self.peek_token.type)
            if infix_fn is None:
                return left_expr  # Operator with no infix rule ends the expression

            self.__next_token()  # Onto the operator

            left_expr = infix_fn(left_expr)

        return left_expr

    def __parse_grouped_expression(self) -> Expression:
        self.__next_token()  # Skip the opening parenthesis

        expr: Expression = self.__parse_expression(PrecedenceType.P_LOWEST)

        if not self.__expect_peek(TokenType.RPAREN):  # Unbalanced parenthesis
            return None

        return expr

    def __parse_prefix_expression(self) -> Expression:
        """Unary minus binds looser than '**' and tighter than '*', so -x**2 is -(x**2)."""
        prefix_expr: PrefixExpression = PrefixExpression(operator=self.current_token.literal,
                                                         line_no=self.current_token.line_no)
        self.__next_token()

        prefix_expr.right_node = self.__parse_expression(PrecedenceType.P_PREFIX)
        if prefix_expr.right_node is None:  # Nothing after the minus
            return None

        return prefix_expr

    def __parse_infix_expression(self, left_node: Expression) -> Expression:
        infix_expr: InfixExpression = InfixExpression(left_node=left_node, operator=self.current_token.literal,
                                                      line_no=self.current_token.line_no)

        precedence = self.__current_precedence()
        if self.__current_token_is(TokenType.POWER):
            precedence = PrecedenceType.P_PRODUCT  # '**' is right associative and binds a unary minus on its right

        self.__next_token()  # Onto the right operand

        infix_expr.right_node = self.__parse_expression(precedence)
        if infix_expr.right_node is None:
            return None

        return infix_expr

    def __parse_call_expression(self, function: Expression) -> CallExpression:
        """Parses the comma separated arguments of a call; the current token is '('."""
        if not isinstance(function, IdentifierLiteral):
            # h(x) is a call, 2(x) is not
            self.__error("only named functions can be called")
            return None

        expr: CallExpression = CallExpression(function=function, line_no=self.current_token.line_no)

        if self.__peek_token_is(TokenType.RPAREN):
            self.__next_token()
            return expr  # No arguments

        self.__next_token()  # Onto the first argument
        while True:
            arg = self.__parse_expression(PrecedenceType.P_LOWEST)
            if arg is None:
                return None
            expr.arguments.append(arg)

            if not self.__peek_token_is(TokenType.COMMA):  # Last argument
                break
            self.__next_token()  # Onto the comma
            self.__next_token()  # Onto the next argument

        if not self.__expect_peek(TokenType.RPAREN):
            return None

        return expr

    # End Region

    def __parse_variable_statement(self) -> VariableStatement:
        """`name: float = value`"""
        stmt: VariableStatement = VariableStatement(line_no=self.current_token.line_no)

        stmt.name = IdentifierLiteral(self.current_token.literal, line_no=self.current_token.line_no)

        if not self.__expect_peek(TokenType.COLON):
            return None

        if not self.__expect_peek(TokenType.TYPE):
            return None

        stmt.value_type = self.current_token.literal  # Only float is accepted by the lexer

        if not self.__expect_peek(TokenType.EQ):
            return None

        self.__next_token()  # Onto the value

        stmt.value = self.__parse_expression(PrecedenceType.P_LOWEST)
        if stmt.value is None:
            return None

        return stmt

    def __parse_parameters(self) -> list[FunctionParameter] | None:
        """`(name: float, ...)`; the current token is '(' and ends on ')'."""
        params: list[FunctionParameter] = []

        if self.__peek_token_is(TokenType.RPAREN):  # Empty parameter list
            self.__next_token()
            return params

        while True:
            if not self.__expect_peek(TokenType.IDENTIFIER):
                return None
            name: Token = self.current_token

            if not self.__expect_peek(TokenType.COLON):
                return None
            if not self.__expect_peek(TokenType.TYPE):
                return None

            params.append(FunctionParameter(name=name.literal, value_type=self.current_token.literal,
                                            line_no=name.line_no))

            if not self.__peek_token_is(TokenType.COMMA):  # Last parameter
                break
            self.__next_token()  # Onto the comma

        if not self.__expect_peek(TokenType.RPAREN):
            return None

        return params

    def __parse_function_statement(self) -> FunctionStatement:
        """`def name(params) -> float:` and the body up to the next def; ends on DEF or EOF."""
        stmt: FunctionStatement = FunctionStatement(line_no=self.current_token.line_no)

        if not self.__expect_peek(TokenType.IDENTIFIER):
            return None

        stmt.name = IdentifierLiteral(self.current_token.literal, line_no=self.current_token.line_no)

        if not self.__expect_peek(TokenType.LPAREN):
            return None

        stmt.parameters = self.__parse_parameters()
        if stmt.parameters is None:
            return None

        if not self.__expect_peek(TokenType.ARROW):
            return None

        if not self.__expect_peek(TokenType.TYPE):
            return None

        stmt.return_type = self.current_token.literal  # float

        if not self.__expect_peek(TokenType.COLON):
            return None

        stmt.body = self.__parse_block_statement()

        return stmt

    def __parse_return_statement(self) -> ReturnStatement:
        stmt: ReturnStatement = ReturnStatement(line_no=self.current_token.line_no)

        self.__next_token()  # Onto the returned expression

        stmt.return_value = self.__parse_expression(PrecedenceType.P_LOWEST)
        if stmt.return_value is None:
            return None

        return stmt

    def __parse_block_statement(self) -> BlockStatement:
        """Statements, one per line, until the next def or the end of the script."""
        block_stmt: BlockStatement = BlockStatement()

        self.__next_token()  # Past the colon

        while True:
            while self.__current_token_is(TokenType.NEWLINE):  # Blank lines inside the body
                self.__next_token()

            # Body ends where the next definition starts
            if self.__current_token_is(TokenType.EOF) or self.__current_token_is(TokenType.DEF):
                break

            stmt: Statement = self.__parse_statement()
            if stmt is not None:
                block_stmt.statements.append(stmt)
                if self.peek_token.type not in STATEMENT_END:  # Trailing tokens on the same line
                    self.__error(f"unexpected '{self.peek_token.literal}' after statement", self.peek_token)

            self.__skip_line()  # Recover on a bad line
            self.__next_token()  # Onto the newline or EOF

        return block_stmt

    def __parse_assign_statement(self) -> AssignStatement:
        stmt: AssignStatement = AssignStatement(line_no=self.current_token.line_no)

        stmt.identifier = IdentifierLiteral(self.current_token.literal, line_no=self.current_token.line_no)

        self.__next_token()  # Onto '='
        self.__next_token()  # Onto the value

        stmt.right_value = self.__parse_expression(PrecedenceType.P_LOWEST)
        if stmt.right_value is None:
            return None

        return stmt

    # Prefix Methods

    def __parse_identifier(self) -> Expression:
        return IdentifierLiteral(self.current_token.literal, line_no=self.current_token.line_no)

    def __parse_int_literal(self) -> Expression:
        int_lit: IntegerLiteral = IntegerLiteral()

        try:
            int_lit.value = int(self.current_token.literal)
        except (TypeError, ValueError):
            self.__error(f"could not parse '{self.current_token.literal}' as an integer")
            return None

        return int_lit

    def __parse_float_literal(self) -> Expression:
        float_lit: FloatLiteral = FloatLiteral()

        try:
            float_lit.value = float(self.current_token.literal)
        except (TypeError, ValueError):
            self.__error(f"could not parse '{self.current_token.literal}' as a float")
            return None

        return float_lit
    # Region end
