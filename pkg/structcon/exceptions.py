class StructconError(Exception):
    """Base class for every error raised by structcon."""


class KindMismatch(StructconError, ValueError):
    pass


class SizeMismatch(StructconError, ValueError):
    pass


class MembershipError(StructconError, ValueError):
    """A matrix does not belong to the requested Lie algebra."""


class EmptyGenerators(StructconError, ValueError):
    pass


class EmptyPool(StructconError, ValueError):
    pass


class DependentBases(StructconError, ValueError):
    pass


class NotSimple(StructconError, ValueError):
    """The graph operator is only defined on digraphs without self-loops."""


class HasSelfLoop(StructconError, ValueError):
    pass


class ParseError(StructconError):
    """A spec document could not be read or has the wrong shape."""

    def __init__(self, message, line=None):
        if line is not None:
            message = "line {}: {}".format(line, message)
        super(ParseError, self).__init__(message)
        self.line = line
