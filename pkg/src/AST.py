from abc import ABC, abstractmethod
from enum import Enum


class NodeType(Enum):
    # Node kinds of a profile script
    Program = "Program"

    # Statements
    ExpressionStatement = "ExpressionStatement"
    VariableStatement = "VariableStatement"
    FunctionStatement = "FunctionStatement"
    BlockStatement = "BlockStatement"
    ReturnStatement = "ReturnStatement"
    AssignStatement = "AssignStatement"

    # Expression
    InfixExpression = "InfixExpression"
    PrefixExpression = "PrefixExpression"
    CallExpression = "CallExpression"

    # Literals
    IntegerLiteral = "IntegerLiteral"
    FloatLiteral = "FloatLiteral"
    IdentifierLiteral = "IdentifierLiteral"

    # Helper
    FunctionParameter = "FunctionParameter"


class Node(ABC):
    line_no: int = 0  # Source line, for error messages

    @abstractmethod
    def type(self) -> NodeType:
        """Returns the type of the node."""
        pass

    @abstractmethod
    def json(self) -> dict:
        """Returns a JSON representation of the node."""
        pass


class Statement(Node):
    """Base class for all statement nodes in the AST."""
    pass


class Expression(Node):
    """Base class for all expression nodes in the AST."""
    pass


class Program(Node):
    def __init__(self) -> None:
        self.statements: list[Statement] = []  # Function definitions, in source order

    def type(self) -> NodeType:
        return NodeType.Program

    def json(self) -> dict:
        return {
            "type": self.type().value,
            "statements": [{stmt.type().value: stmt.json()} for stmt in self.statements]
        }


# Helper Region
class FunctionParameter(Expression):
    def __init__(self, name: str, value_type: str = "float", line_no: int = 0) -> None:
        self.name = name  # Parameter name
        self.value_type = value_type  # Declared type
        self.line_no = line_no

    def type(self) -> NodeType:
        return NodeType.FunctionParameter

    def json(self) -> dict:
        return {
            "type": self.type().value,
            "name": self.name,
            "value_type": self.value_type
        }
# End region


# Statements Region
class ExpressionStatement(Statement):
    def __init__(self, expr: Expression = None) -> None:
        """An expression evaluated for nothing; its value is discarded."""
        self.expr = expr

    def type(self) -> NodeType:
        return NodeType.ExpressionStatement

    def json(self) -> dict:
        return {
            "type": self.type().value,
            "expr": self.expr.json()
        }


class VariableStatement(Statement):
    def __init__(self, name: Expression = None, value: Expression = None, value_type: str = None,
                 line_no: int = 0) -> None:
        """Typed declaration `name: float = value`."""
        self.name = name  # Declared identifier
        self.value = value  # Initial value
        self.value_type = value_type  # Declared type
        self.line_no = line_no

    def type(self) -> NodeType:
        return NodeType.VariableStatement

    def json(self) -> dict:
        return {
            "type": self.type().value,
            "name": self.name.json(),
            "value": self.value.json(),
            "value_type": self.value_type
        }


class BlockStatement(Statement):
    def __init__(self, statements: list[Statement] = None) -> None:
        self.statements = statements if statements is not None else []  # Body of a function

    def type(self) -> NodeType:
        return NodeType.BlockStatement

    def json(self) -> dict:
        return {
            "type": self.type().value,
            "statements": [stmt.json() for stmt in self.statements]
        }


class ReturnStatement(Statement):
    def __init__(self, return_value: Expression = None, line_no: int = 0) -> None:
        self.return_value = return_value  # Returned expression
        self.line_no = line_no

    def type(self) -> NodeType:
        return NodeType.ReturnStatement

    def json(self) -> dict:
        return {
            "type": self.type().value,
            "return_value": self.return_value.json()
        }


class FunctionStatement(Statement):
    def __init__(self, parameters: list[FunctionParameter] = None, body: BlockStatement = None, name=None,
                 return_type: str = None, line_no: int = 0) -> None:
        """`def name(p: float, ...) -> float:` followed by its body."""
        self.parameters = parameters if parameters is not None else []  # Typed parameters
        self.body = body  # Statements up to the next def
        self.name = name  # IdentifierLiteral of the function
        self.return_type = return_type  # Declared return type
        self.line_no = line_no

    def type(self) -> NodeType:
        return NodeType.FunctionStatement

    def json(self) -> dict:
        return {
            "type": self.type().value,
            "name": self.name.json(),
            "return_type": self.return_type,
            "parameters": [p.json() for p in self.parameters],
            "body": self.body.json(),
        }


class AssignStatement(Statement):
    def __init__(self, identifier: Expression = None, right_value: Expression = None, line_no: int = 0) -> None:
        """Untyped assignment `name = value`; declares the name on first use."""
        self.identifier = identifier  # Target
        self.right_value = right_value  # Assigned expression
        self.line_no = line_no

    def type(self) -> NodeType:
        return NodeType.AssignStatement

    def json(self) -> dict:
        return {
            "type": self.type().value,
            "identifier": self.identifier.json(),
            "right_value": self.right_value.json()
        }
# End region


# Expression Region
class InfixExpression(Expression):
    def __init__(self, left_node: Expression, operator: str, right_node=None, line_no: int = 0) -> None:
        self.left_node: Expression = left_node  # Left operand
        self.operator: str = operator  # One of + - * / **
        self.right_node: Expression = right_node  # Right operand
        self.line_no = line_no

    def type(self) -> NodeType:
        return NodeType.InfixExpression

    def json(self) -> dict:
        return {
            "type": self.type().value,
            "left_node": self.left_node.json(),
            "operator": self.operator,
            "right_node": self.right_node.json()
        }


class PrefixExpression(Expression):
    def __init__(self, operator: str, right_node: Expression = None, line_no: int = 0) -> None:
        self.operator: str = operator  # Only unary minus
        self.right_node: Expression = right_node  # Operand
        self.line_no = line_no

    def type(self) -> NodeType:
        return NodeType.PrefixExpression

    def json(self) -> dict:
        return {
            "type": self.type().value,
            "operator": self.operator,
            "right_node": self.right_node.json()
        }


class CallExpression(Expression):
    def __init__(self, function: Expression = None, arguments: list[Expression] = None, line_no: int = 0) -> None:
        self.function = function  # IdentifierLiteral naming a builtin or a script function
        self.arguments = arguments if arguments is not None else []  # Call arguments
        self.line_no = line_no

    def type(self) -> NodeType:
        return NodeType.CallExpression

    def json(self) -> dict:
        return {
            "type": self.type().value,
            "function": self.function.json(),
            "arguments": [arg.json() for arg in self.arguments]
        }
# End region


# Literal Region
class IntegerLiteral(Expression):
    def __init__(self, value: int = None) -> None:
        """Integer literal; compiled as a double."""
        self.value: int = value

    def type(self) -> NodeType:
        return NodeType.IntegerLiteral

    def json(self) -> dict:
        return {
            "type": self.type().value,
            "value": self.value
        }


class FloatLiteral(Expression):
    def __init__(self, value: float = None) -> None:
        self.value: float = value

    def type(self) -> NodeType:
        return NodeType.FloatLiteral

    def json(self) -> dict:
        return {
            "type": self.type().value,
            "value": self.value
        }


class IdentifierLiteral(Expression):
    def __init__(self, value: str = None, line_no: int = 0) -> None:
        self.value: str = value  # The name
        self.line_no = line_no

    def type(self) -> NodeType:
        return NodeType.IdentifierLiteral

    def json(self) -> dict:
        return {
            "type": self.type().value,
            "value": self.value
        }
# End region
