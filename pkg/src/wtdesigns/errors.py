"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid mathematical input: bad level count, malformed generators,
    out-of-range arguments, and similar caller mistakes."""


class CapExceededError(InputError):
    """A run-count or search-size guard would be exceeded.

    Raised instead of silently attempting a huge computation; pass a larger
    cap (or the CLI --force flag) to proceed deliberately.
    """
