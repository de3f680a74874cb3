from llvmlite import ir

from AST import NodeType, Expression, Program, Node
from AST import ExpressionStatement, VariableStatement, IdentifierLiteral, BlockStatement, FunctionStatement, ReturnStatement, AssignStatement
from AST import InfixExpression, PrefixExpression, CallExpression
from AST import IntegerLiteral, FloatLiteral

from Environment import Environment

HINV_SYMBOL: str = "profile_hinv"  # External symbol the JIT binds to the inverse entropy
NAN: float = float("nan")

# Builtins backed by LLVM intrinsics
INTRINSICS: dict[str, str] = {
    "log2": "llvm.log2",
    "ln": "llvm.log",
    "exp": "llvm.exp",
    "sqrt": "llvm.sqrt",
}


class Compiler:
    """Lowers a profile script AST to LLVM IR; every value is a double."""

    def __init__(self) -> None:
        self.double: ir.Type = ir.DoubleType()

        # Only 'float' exists in scripts; it is an IEEE double
        self.type_map: dict[str, ir.Type] = {
            'float': self.double,
        }

        self.module: ir.Module = ir.Module('profile')

        self.builder: ir.IRBuilder = ir.IRBuilder()

        self.env: Environment = Environment()

        self.errors: list[str] = []

        self.builtins: set[str] = set()
        self.__define_builtins()

    def __error(self, message: str, node: Node | None = None) -> None:
        line_no = getattr(node, "line_no", 0) if node is not None else 0
        self.errors.append(f"Line {line_no}: {message}" if line_no else message)

    def __nan(self) -> ir.Constant:
        return ir.Constant(self.double, NAN)

    def __define_builtins(self) -> None:
        """Declares the math intrinsics, the external inverse entropy and defines h(x) in IR."""
        unary = ir.FunctionType(self.double, [self.double])

        for name, intrinsic in INTRINSICS.items():
            func = self.module.declare_intrinsic(intrinsic, [self.double])
            self.env.define(name, func, self.double)
            self.builtins.add(name)

        self.pow = self.module.declare_intrinsic('llvm.pow', [self.double])

        hinv = ir.Function(self.module, unary, HINV_SYMBOL)
        self.env.define("hinv", hinv, self.double)
        self.builtins.add("hinv")

        # h(x) = -x log2 x - (1-x) log2(1-x), NaN outside [0, 1]
        func = ir.Function(self.module, unary, "h")
        builder = ir.IRBuilder(func.append_basic_block("h_entry"))
        x = func.args[0]
        log2, _ = self.env.lookup("log2")
        zero, one = ir.Constant(self.double, 0.0), ir.Constant(self.double, 1.0)

        y = builder.fsub(one, x)
        x_term = builder.select(builder.fcmp_ordered('>', x, zero), builder.fmul(x, builder.call(log2, [x])), zero)
        y_term = builder.select(builder.fcmp_ordered('>', y, zero), builder.fmul(y, builder.call(log2, [y])), zero)
        value = builder.fsub(builder.fsub(zero, x_term), y_term)

        inside = builder.and_(builder.fcmp_ordered('>=', x, zero), builder.fcmp_ordered('<=', x, one))
        builder.ret(builder.select(inside, value, self.__nan()))

        self.env.define("h", func, self.double)
        self.builtins.add("h")

    def compile(self, node: Node) -> None:
        """Compiles a statement-level node."""
        match node.type():
            case NodeType.Program:
                self.__visit_program(node)

            case NodeType.VariableStatement:
                self.__visit_variable_statement(node)
            case NodeType.ExpressionStatement:
                self.__visit_expression_statement(node)
            case NodeType.BlockStatement:
                self.__visit_block_statement(node)
            case NodeType.FunctionStatement:
                self.__visit_function_statement(node)
            case NodeType.ReturnStatement:
                self.__visit_return_statement(node)
            case NodeType.AssignStatement:
                self.__visit_assign_statement(node)

    def __visit_program(self, node: Program) -> None:
        """Declares every function first so bodies may call functions defined further down."""
        for stmt in node.statements:
            self.__declare_function(stmt)

        for stmt in node.statements:
            self.compile(stmt)

    def __declare_function(self, node: FunctionStatement) -> None:
        name: str = node.name.value

        if name in self.builtins:
            self.__error(f"'{name}' is a builtin and cannot be redefined", node)
            return
        if self.env.defines_locally(name):
            self.__error(f"function '{name}' is defined twice", node)
            return

        for param in node.parameters:
            if param.value_type not in self.type_map:
                self.__error(f"unknown type '{param.value_type}' for parameter '{param.name}'", param)
        if node.return_type not in self.type_map:
            self.__error(f"unknown return type '{node.return_type}' for '{name}'", node)

        fnty: ir.FunctionType = ir.FunctionType(self.double, [self.double] * len(node.parameters))
        func: ir.Function = ir.Function(self.module, fnty, name)
        self.env.define(name, func, self.double)

    def __visit_expression_statement(self, node: ExpressionStatement) -> None:
        self.__resolve_value(node.expr)  # Evaluated for its calls, the value is dropped

    def __store(self, name: str, value: ir.Value) -> None:
        """Stores into the local slot of name, creating it on first assignment."""
        if self.env.defines_locally(name):
            ptr, _ = self.env.lookup(name)
        else:
            ptr = self.builder.alloca(self.double, name=name)
            self.env.define(name, ptr, self.double)

        self.builder.store(value, ptr)

    def __visit_variable_statement(self, node: VariableStatement) -> None:
        """`name: float = value`"""
        if node.value_type not in self.type_map:
            self.__error(f"unknown type '{node.value_type}' for variable '{node.name.value}'", node)
            return

        value, _ = self.__resolve_value(node.value)
        self.__store(node.name.value, value)

    def __visit_block_statement(self, node: BlockStatement) -> None:
        for stmt in node.statements:
            if self.builder.block.is_terminated:
                self.__error("unreachable statement after return", stmt)
                return
            self.compile(stmt)

    def __visit_return_statement(self, node: ReturnStatement) -> None:
        value, _ = self.__resolve_value(node.return_value)
        self.builder.ret(value)

    def __visit_function_statement(self, node: FunctionStatement) -> None:
        """Compiles a body into the function declared for it; parameters live in stack slots."""
        name: str = node.name.value
        found = self.env.lookup(name)
        if found is None or name in self.builtins:
            return  # Declaration failed and was reported

        func: ir.Function = found[0]
        if func.blocks:
            return  # A second definition with the same name, already reported

        block = func.append_basic_block(f"{name}_entry")

        previous_builder = self.builder
        self.builder = ir.IRBuilder(block)

        previous_env = self.env
        self.env = Environment(parent=self.env, name=name)

        for param, arg in zip(node.parameters, func.args):
            arg.name = param.name
            if self.env.defines_locally(param.name):
                self.__error(f"duplicate parameter '{param.name}' in '{name}'", param)
            self.__store(param.name, arg)

        self.compile(node.body)

        if not self.builder.block.is_terminated:
            self.__error(f"function '{name}' does not end with a return", node)
            self.builder.ret(self.__nan())

        self.env = previous_env
        self.builder = previous_builder

    def __visit_assign_statement(self, node: AssignStatement) -> None:
        """`name = value` declares name when it is new, like Python."""
        value, _ = self.__resolve_value(node.right_value)
        self.__store(node.identifier.value, value)

    def __visit_infix_expression(self, node: InfixExpression) -> tuple[ir.Value, ir.Type]:
        left_value, _ = self.__resolve_value(node.left_node)
        right_value, _ = self.__resolve_value(node.right_node)

        match node.operator:
            case '+':
                value = self.builder.fadd(left_value, right_value)
            case '-':
                value = self.builder.fsub(left_value, right_value)
            case '*':
                value = self.builder.fmul(left_value, right_value)
            case '/':
                value = self.builder.fdiv(left_value, right_value)
            case '**':
                value = self.builder.call(self.pow, [left_value, right_value])
            case _:
                self.__error(f"unsupported operator '{node.operator}'", node)
                value = self.__nan()

        return value, self.double

    def __visit_prefix_expression(self, node: PrefixExpression) -> tuple[ir.Value, ir.Type]:
        right_value, _ = self.__resolve_value(node.right_node)

        if node.operator != '-':
            self.__error(f"unsupported unary operator '{node.operator}'", node)
            return self.__nan(), self.double

        return self.builder.fneg(right_value), self.double

    def __visit_call_expression(self, node: CallExpression) -> tuple[ir.Value, ir.Type]:
        name: str = node.function.value

        args = [self.__resolve_value(arg)[0] for arg in node.arguments]

        found = self.env.lookup(name)
        if found is None or not isinstance(found[0], ir.Function):
            self.__error(f"'{name}' is not a function", node)
            return self.__nan(), self.double

        func, ret_type = found
        expected = len(func.function_type.args)
        if len(args) != expected:
            self.__error(f"'{name}' takes {expected} argument(s), got {len(args)}", node)
            return self.__nan(), self.double

        return self.builder.call(func, args), ret_type

    def __resolve_value(self, node: Expression) -> tuple[ir.Value, ir.Type]:
        """Lowers an expression; on error records it and yields NaN so lowering can go on."""
        match node.type():
            case NodeType.IntegerLiteral:
                node: IntegerLiteral = node
                return ir.Constant(self.double, float(node.value)), self.double
            case NodeType.FloatLiteral:
                node: FloatLiteral = node
                return ir.Constant(self.double, node.value), self.double
            case NodeType.IdentifierLiteral:
                node: IdentifierLiteral = node
                found = self.env.lookup(node.value)
                if found is None:
                    self.__error(f"name '{node.value}' is not defined", node)
                    return self.__nan(), self.double
                ptr, Type = found
                if isinstance(ptr, ir.Function):
                    self.__error(f"function '{node.value}' used as a value", node)
                    return self.__nan(), self.double
                return self.builder.load(ptr), Type

            case NodeType.InfixExpression:
                return self.__visit_infix_expression(node)
            case NodeType.PrefixExpression:
                return self.__visit_prefix_expression(node)
            case NodeType.CallExpression:
                return self.__visit_call_expression(node)

        self.__error(f"cannot evaluate {node.type().value}", node)
        return self.__nan(), self.double
