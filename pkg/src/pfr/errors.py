"""Exception types shared across the package.

Structural rejections carry the name of the violated law and the witnessing
elements so they can be serialized into diagnostics.
"""

from __future__ import annotations


class PfrError(Exception):
    pass


class LawViolation(PfrError):
    """A structural law failed; carries the law name and a witness tuple."""

    def __init__(self, law: str, witness: tuple = ()):
        self.law = law
        self.witness = tuple(witness)
        super().__init__(f"{law}: witness {self.witness!r}" if witness else law)

    def as_json(self) -> dict:
        return {"law": self.law, "witness": list(self.witness)}


class NotAPoset(LawViolation):
    pass


class NotALattice(LawViolation):
    pass


class NotDistributive(LawViolation):
    pass


class UnknownElement(PfrError):
    pass


class LimitExceeded(PfrError):
    pass


class MixedParents(PfrError):
    pass


class MixedCodomains(PfrError):
    pass


class NotDisjoint(PfrError):
    pass


class NotHausdorff(PfrError):
    pass


class NotInCbar(PfrError):
    pass


class NotInC(PfrError):
    pass


class NotExtContinuous(PfrError):
    pass


class OutOfUnitRange(PfrError):
    pass


class CodomainNotSublocaleFrame(PfrError):
    pass


class NotSubfit(PfrError):
    def __init__(self, certificate=None):
        self.certificate = certificate
        super().__init__(f"not subfit; certificate {certificate!r}")


class NotT0(PfrError):
    pass


class NotInducedValued(PfrError):
    pass


class NotDirected(PfrError):
    pass


class GridTooLarge(PfrError):
    pass


class UnknownCheck(PfrError):
    pass


class SchemaError(PfrError):
    pass
