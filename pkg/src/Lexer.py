from typing import Any

from Token import Token
from Token import TokenType
from Token import lookup_identifier


class Lexer:
    def __init__(self, source: str) -> None:
        """
        Initializes the Lexer over the text of a profile script.

        Args:
            source (str): The script to be tokenized.
        """
        self.source = source  # The script to tokenize

        self.position: int = 0  # Current position in the script
        self.read_position: int = 0  # Position to read the next character
        self.line_no: int = 1  # Current line number

        self.current_char: str | None = None  # Current character being processed

        self.errors: list[str] = []  # Malformed numbers and stray characters

        self.__read_char()  # Read the first character

    def __read_char(self) -> None:
        """Advances one character; current_char becomes None at the end of the script."""
        if self.read_position >= len(self.source):
            self.current_char = None  # End of source
        else:
            self.current_char = self.source[self.read_position]

        self.position = self.read_position
        self.read_position += 1

    def __peek_char(self) -> str | None:
        """The upcoming character, without advancing."""
        if self.read_position >= len(self.source):
            return None

        return self.source[self.read_position]

    def __skip_whitespace(self) -> None:
        """Skips blanks and '#' comments; newlines are tokens and are kept."""
        while True:
            if self.current_char in [' ', '\t', '\r']:
                self.__read_char()
            elif self.current_char == '#':
                while self.current_char is not None and self.current_char != '\n':
                    self.__read_char()  # Comment runs to the end of the line
            else:
                return

    def __new_token(self, tt: TokenType, literal: Any) -> Token:
        return Token(type=tt, literal=literal, line_no=self.line_no, position=self.position)

    def __is_digit(self, ch: str | None) -> bool:
        return ch is not None and '0' <= ch <= '9'

    def __is_letter(self, ch: str | None) -> bool:
        return ch is not None and ('a' <= ch <= 'z' or 'A' <= ch <= 'Z' or ch == '_')

    def __read_number(self) -> Token:
        """
        Reads a number: digits with at most one decimal point and an optional exponent (1e-3, 2.5E+1).

        Returns:
            Token: INT when the literal has neither a point nor an exponent, FLOAT otherwise.
        """
        start_pos = self.position  # Where the literal starts
        dot_count: int = 0  # Decimal points seen
        has_exponent: bool = False

        while self.__is_digit(self.current_char) or self.current_char == '.':
            if self.current_char == '.':
                dot_count += 1

            if dot_count > 1:
                self.errors.append(f"Line {self.line_no}: too many decimal points in number at position {self.position}")
                while self.__is_digit(self.current_char) or self.current_char == '.':
                    self.__read_char()  # Drop the rest of the malformed literal
                return self.__new_token(TokenType.ILLEGAL, self.source[start_pos:self.position])

            self.__read_char()

        if self.current_char in ['e', 'E']:
            sign = self.__peek_char()
            if self.__is_digit(sign) or sign in ['+', '-']:
                has_exponent = True
                self.__read_char()  # e
                if self.current_char in ['+', '-']:
                    self.__read_char()  # Sign

                if not self.__is_digit(self.current_char):
                    self.errors.append(f"Line {self.line_no}: exponent without digits in number at position {self.position}")
                    return self.__new_token(TokenType.ILLEGAL, self.source[start_pos:self.position])

                while self.__is_digit(self.current_char):
                    self.__read_char()

        output: str = self.source[start_pos:self.position]

        if dot_count == 0 and not has_exponent:
            return self.__new_token(TokenType.INT, int(output))
        else:
            return self.__new_token(TokenType.FLOAT, float(output))

    def __read_identifier(self) -> str:
        position = self.position  # Start of the name
        while self.current_char is not None and (self.__is_letter(self.current_char) or self.current_char.isalnum()):
            self.__read_char()

        return self.source[position:self.position]

    def next_token(self) -> Token:
        """
        Retrieves the next token from the script.

        Returns:
            Token: The next token; EOF once the script is exhausted.
        """
        tok: Token = None

        self.__skip_whitespace()
        match self.current_char:
            case '+':
                tok = self.__new_token(TokenType.PLUS, self.current_char)
            case '-':
                # Minus or arrow
                if self.__peek_char() == ">":
                    ch = self.current_char
                    self.__read_char()
                    tok = self.__new_token(TokenType.ARROW, ch + self.current_char)
                else:
                    tok = self.__new_token(TokenType.MINUS, self.current_char)
            case '*':
                # Power or multiplication
                if self.__peek_char() == "*":
                    ch = self.current_char
                    self.__read_char()
                    tok = self.__new_token(TokenType.POWER, ch + self.current_char)
                else:
                    tok = self.__new_token(TokenType.ASTERISK, self.current_char)
            case '/':
                tok = self.__new_token(TokenType.SLASH, self.current_char)
            case '=':
                tok = self.__new_token(TokenType.EQ, self.current_char)
            case ':':
                tok = self.__new_token(TokenType.COLON, self.current_char)
            case ',':
                tok = self.__new_token(TokenType.COMMA, self.current_char)
            case '(':
                tok = self.__new_token(TokenType.LPAREN, self.current_char)
            case ')':
                tok = self.__new_token(TokenType.RPAREN, self.current_char)
            case '\n':
                tok = self.__new_token(TokenType.NEWLINE, "NEWLINE")
                self.line_no += 1  # The token keeps the line it ends
            case None:
                return self.__new_token(TokenType.EOF, "")
            case _:
                if self.__is_letter(self.current_char):
                    literal: str = self.__read_identifier()
                    tt: TokenType = lookup_identifier(literal)
                    return self.__new_token(tt, literal)
                elif self.__is_digit(self.current_char):
                    return self.__read_number()
                else:
                    self.errors.append(f"Line {self.line_no}: unexpected character '{self.current_char}'")
                    tok = self.__new_token(TokenType.ILLEGAL, self.current_char)

        self.__read_char()  # Step past the token
        return tok
