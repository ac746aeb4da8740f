class InputError(ValueError):
    """Malformed or out-of-range user input (unknown point, cap exceeded, bad file)."""


class NonUniformError(RuntimeError):
    """An indexed family gave index-dependent answers where a uniform one was required."""
