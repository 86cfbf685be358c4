class LogRegError(Exception):
    """Base class for errors raised by this package."""


class TorsionInQuotient(LogRegError):
    def __init__(self, torsion):
        self.torsion = tuple(torsion)
        super().__init__(f"quotient by the unit lattice has torsion {self.torsion}")


class TorsionUnits(LogRegError):
    def __init__(self, torsion):
        self.torsion = tuple(torsion)
        super().__init__(f"unit group has torsion {self.torsion}")


class NotAFace(LogRegError):
    """The given generator set is not the generator set of a face.

    ``witness`` is a dict ``{"generator", "multiplier", "scale", "coefficients"}``
    recording ``multiplier * sum(S) == scale * g + sum(c_i * g_i)``, which
    forces generator ``g`` into every face containing ``S``.
    """

    def __init__(self, support, witness):
        self.support = tuple(support)
        self.witness = witness
        super().__init__(f"generators {self.support} do not span a face; witness {witness}")


class NotAFaceContraction(LogRegError):
    pass


class ResourceExceeded(LogRegError):
    pass


class UnsupportedHypotheses(LogRegError):
    def __init__(self, predicate, detail=""):
        self.predicate = predicate
        super().__init__(f"unsupported hypotheses: {predicate} {detail}".strip())


class MalformedCertificate(LogRegError):
    pass


class ParseError(LogRegError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
