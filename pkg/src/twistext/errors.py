"""Exception hierarchy shared by every twistext module.

The CLI maps these onto its exit-code contract: validation problems are
exit 2, window diagnostics exit 3, internal invariant violations exit 4.
"""


class TwistextError(Exception):
    """Base class for all twistext errors."""


class ValidationError(TwistextError):
    """Bad user input: malformed config, invalid group table, odd degree..."""


class WindowError(TwistextError):
    """A computation cannot be certified inside the requested degree window.

    The message always names the extension that would be needed.
    """


class InvariantViolation(TwistextError):
    """An internal invariant failed (d*d != 0, Ext above the vanishing line).

    Always a bug in the library, never user error.
    """
