# Symbol table of a profile script: builtins and functions at the global level, locals per function
from llvmlite import ir


class Environment:
    def __init__(self, records: dict[str, tuple[ir.Value, ir.Type]] = None, parent=None, name: str = "global") -> None:
        """
        One scope of names.

        Args:
            records (dict[str, tuple[ir.Value, ir.Type]]): Initial names, mapped to (value, type).
                Locals map to their stack slot, functions to the ir.Function.
            parent (Environment): Enclosing scope, None for the global scope.
            name (str): Scope label used in error messages.
        """
        self.records: dict[str, tuple[ir.Value, ir.Type]] = records if records else {}
        self.parent = parent  # Enclosing scope
        self.name: str = name

    def define(self, name: str, value: ir.Value, _type: ir.Type) -> ir.Value:
        """Binds name in this scope, shadowing any outer binding."""
        self.records[name] = (value, _type)
        return value

    def defines_locally(self, name: str) -> bool:
        return name in self.records

    def lookup(self, name: str) -> tuple[ir.Value, ir.Type] | None:
        """(value, type) of the innermost binding of name, or None."""
        return self.__resolve(name)

    def __resolve(self, name: str) -> tuple[ir.Value, ir.Type] | None:
        if name in self.records:
            return self.records[name]
        elif self.parent:
            return self.parent.__resolve(name)
        else:
            return None
