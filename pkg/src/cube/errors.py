"""Exception classes raised by the Python API.

Runtime errors inside a Cube evaluation are not Python exceptions: they
become ``Raise`` outcomes carrying an error term.  The classes here cover
host-level failures (bad source text, bad program structure, misuse of
the term API).
"""


class CubeError(Exception):
    pass


class CubeSyntaxError(CubeError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


class LoadError(CubeError):
    pass


class DuplicateProcedure(LoadError):
    pass


class NotAnAbstraction(CubeError):
    pass


class AbstractionInUnification(CubeError):
    pass


class CyclicTermError(CubeError):
    pass
