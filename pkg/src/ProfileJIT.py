# Compiles a profile script to native code with llvmlite's MCJIT and exposes it as Python callables
import json
import math
from ctypes import CFUNCTYPE, c_double, c_void_p, cast
from pathlib import Path

import llvmlite.binding as llvm

from AST import Program
from Compiler import HINV_SYMBOL, Compiler
from EntropyCore import h_inv
from Errors import DomainError, ProfileSyntaxError
from Lexer import Lexer
from Parser import Parser

BETA_NAME: str = "beta"  # Required entry point beta(w, R)
DELTA_MIN_NAME: str = "delta_min"  # Optional entry point delta_min(R)


def _hinv(y: float) -> float:
    try:
        return h_inv(y)
    except DomainError:
        return math.nan


_HINV_CALLBACK = CFUNCTYPE(c_double, c_double)(_hinv)  # Module level so the trampoline outlives every engine

_llvm_ready: bool = False


def _initialize_llvm() -> None:
    global _llvm_ready
    if _llvm_ready:
        return

    try:
        llvm.initialize()
    except RuntimeError:
        pass  # Recent llvmlite initializes itself and rejects the call

    llvm.initialize_native_target()
    llvm.initialize_native_asmprinter()
    llvm.add_symbol(HINV_SYMBOL, cast(_HINV_CALLBACK, c_void_p).value)
    _llvm_ready = True


class CompiledProfile:
    def __init__(self, name: str, program: Program, ir_text: str, engine: llvm.ExecutionEngine) -> None:
        """
        A profile script turned into native functions.

        Args:
            name (str): Label used in reports and curve names.
            program (Program): The parsed script.
            ir_text (str): The verified LLVM IR.
            engine (llvm.ExecutionEngine): Engine owning the machine code; kept alive with this object.
        """
        self.name = name
        self.program = program
        self.ir = ir_text
        self.engine = engine

        self.__beta = CFUNCTYPE(c_double, c_double, c_double)(engine.get_function_address(BETA_NAME))

        address = engine.get_function_address(DELTA_MIN_NAME)
        self.__delta_min = CFUNCTYPE(c_double, c_double)(address) if address else None

    @property
    def ast(self) -> dict:
        return self.program.json()

    def ast_json(self) -> str:
        return json.dumps(self.ast, indent=4)

    def beta(self, w: float, R: float) -> float:
        return float(self.__beta(w, R))

    def delta_min(self, R: float) -> float | None:
        """The script's delta_min(R), or None when the script does not define one."""
        if self.__delta_min is None:
            return None
        return float(self.__delta_min(R))


def _check_entry_points(program: Program) -> list[str]:
    arity = {stmt.name.value: len(stmt.parameters) for stmt in program.statements}
    errors = []

    if BETA_NAME not in arity:
        errors.append(f"the script must define '{BETA_NAME}(w: float, R: float) -> float'")
    elif arity[BETA_NAME] != 2:
        errors.append(f"'{BETA_NAME}' must take 2 parameters (w, R), got {arity[BETA_NAME]}")

    if DELTA_MIN_NAME in arity and arity[DELTA_MIN_NAME] != 1:
        errors.append(f"'{DELTA_MIN_NAME}' must take 1 parameter (R), got {arity[DELTA_MIN_NAME]}")

    return errors


def compile_profile(source: str, name: str = "script") -> CompiledProfile:
    """
    Lexes, parses, lowers and JIT-compiles a profile script.

    Args:
        source (str): Script text.
        name (str): Label of the profile.

    Returns:
        CompiledProfile: Callable beta and delta_min.

    Raises:
        ProfileSyntaxError: With every lexer, parser, compiler and verifier message.
    """
    lexer = Lexer(source=source)
    parser = Parser(lexer)
    program = parser.parse_program()

    errors = lexer.errors + parser.errors
    if errors:
        raise ProfileSyntaxError(errors)

    errors = _check_entry_points(program)
    if errors:
        raise ProfileSyntaxError(errors)

    compiler = Compiler()
    compiler.compile(program)
    if compiler.errors:
        raise ProfileSyntaxError(compiler.errors)

    module = compiler.module
    module.triple = llvm.get_default_triple()

    _initialize_llvm()

    try:
        parsed = llvm.parse_assembly(str(module))
        parsed.verify()
    except RuntimeError as e:
        raise ProfileSyntaxError([f"LLVM IR verification failed: {e}"]) from e

    target_machine = llvm.Target.from_default_triple().create_target_machine()
    engine = llvm.create_mcjit_compiler(parsed, target_machine)
    engine.finalize_object()

    return CompiledProfile(name=name, program=program, ir_text=str(module), engine=engine)


def load_profile(path: str | Path) -> CompiledProfile:
    """Compiles the script stored at path, named after the file."""
    path = Path(path)
    with open(path, "r") as f:
        return compile_profile(f.read(), name=path.stem)
