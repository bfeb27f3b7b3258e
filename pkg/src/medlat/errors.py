"""Error types shared by all medlat modules."""


class MedlatError(Exception):
    """Base class for all errors raised by medlat."""


class InputError(MedlatError):
    """Malformed or out-of-contract input (bad indices, broken axioms, parse errors)."""


class ResourceLimitError(MedlatError):
    """A construction or search would exceed a configured size/budget cap."""
