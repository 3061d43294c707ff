from enum import Enum as PyEnum


class Direction(PyEnum):
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"


class ViolationKind(PyEnum):
    STRUCTURAL = "structural"
    GROUPOID = "groupoid"
    SIDE_COMPATIBILITY = "side_compatibility"
    INTERCHANGE = "interchange"
    IDENTITY_COHERENCE = "identity_coherence"
    FILLING = "filling"
    HOMOMORPHISM = "homomorphism"
    FUNCTORIALITY = "functoriality"
    COMPATIBILITY = "compatibility"
    MORPHISM = "morphism"
    KERNEL = "kernel"


class OutputFormat(PyEnum):
    JSON = "json"
    TEXT = "text"


class Command(PyEnum):
    VALIDATE = "validate"
    CORE = "core"
    KBUNDLE = "kbundle"
    NERVE = "nerve"
    COHOMOLOGY = "cohomology"
    CLASSIFY = "classify"
    CECH = "cech"


class ActionKind(PyEnum):
    TRIVIAL = "trivial"
    CONJUGATION = "conjugation"
    TABLES = "tables"
