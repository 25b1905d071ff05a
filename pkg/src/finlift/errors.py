"""Exception types shared by the library and the command line front end."""


class InputError(ValueError):
    """An argument violates an operation's precondition."""


class ParseError(InputError):
    """Malformed notation. ``offset`` is the byte offset of the offending token."""

    def __init__(self, message, offset=0, text=None):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
