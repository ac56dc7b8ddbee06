#!/usr/bin/env python3

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2

class WindTreeError(Exception):
    exitCode = EXIT_FAILURE

class ParseError(WindTreeError):
    exitCode = EXIT_INPUT

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = 'line {}: {}'.format(line, message)
        super().__init__(message)

class ValidationError(WindTreeError):
    exitCode = EXIT_INPUT

    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)

class ConstructionError(WindTreeError):
    pass

class InternalMismatch(WindTreeError):
    pass

class InternalError(WindTreeError):
    pass

class UnsupportedS(WindTreeError):
    pass

class QOutOfRange(WindTreeError):
    pass

class NotGoodProfile(WindTreeError):
    pass

class NotGood(WindTreeError):
    pass

class NotFound(WindTreeError):
    def __init__(self, p_max):
        self.p_max = p_max
        super().__init__('no good cylinder with |p|,|q| <= {}'.format(p_max))

class SingularHit(WindTreeError):
    '''Trajectory ran exactly into a corner or cone point.'''
    def __init__(self, point=None):
        self.point = point
        super().__init__('singular hit at {}'.format(point))
