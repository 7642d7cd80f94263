"""Exception types shared across the package.

Two failure modes are distinguished so the command line tool can map them
to distinct exit codes: malformed input documents (``SchemaError``) and
structurally valid input that violates a mathematical precondition
(``DomainError``).
"""


class SchemaError(ValueError):
    """Input document does not match the expected JSON shape."""


class DomainError(ValueError):
    """Input is well-formed but outside the domain of the operation."""
