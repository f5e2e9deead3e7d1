"""Exception taxonomy shared across the package.

The CLI maps these onto distinct exit codes (see cli module).
"""


class KernelPickError(Exception):
    """Base class for all package-level errors."""


class ParseError(KernelPickError):
    """Malformed input bytes: Matrix Market or CSV level problems."""


class SchemaError(KernelPickError):
    """Structurally readable input with wrong columns, shape, or version."""


class EmptyInputError(KernelPickError):
    """An operation received no usable rows or files."""
