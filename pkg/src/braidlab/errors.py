"""Exception hierarchy shared by all braidlab modules."""


class BraidlabError(Exception):
    """Base class for every error raised by braidlab."""


class DenominatorVanishes(BraidlabError, ZeroDivisionError):
    def __init__(self, point):
        self.point = dict(point)
        super().__init__(f"denominator vanishes at {self.point}")


class UnboundVariable(BraidlabError, KeyError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"variable {name!r} is not assigned")

    def __str__(self):
        return self.args[0]


class DivisionByZero(BraidlabError, ZeroDivisionError):
    pass


class ParseError(BraidlabError, ValueError):
    pass


class NonGenericParameter(BraidlabError, ValueError):
    pass


class SizeMismatch(BraidlabError, ValueError):
    pass


class NotSkewInvertible(BraidlabError):
    pass


class DegreeOverflow(BraidlabError):
    def __init__(self, degree, cap):
        self.degree = degree
        self.cap = cap
        super().__init__(f"degree {degree} exceeds the configured cap {cap}")


class DegreeTooHigh(BraidlabError, ValueError):
    pass


class PresentationError(BraidlabError, ValueError):
    pass


class NonOrientable(BraidlabError):
    pass


class EqualSuperDims(BraidlabError, ValueError):
    pass


class GeneratorMismatch(BraidlabError, ValueError):
    pass


class DegenerateSpectrum(BraidlabError, ValueError):
    def __init__(self, first, second):
        self.pair = (first, second)
        super().__init__(f"spectrum is degenerate: {first} and {second} collide")
