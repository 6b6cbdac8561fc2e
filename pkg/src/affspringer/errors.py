"""Exception types shared by all modules."""


class InputError(ValueError):
    """Invalid user input (bad Cartan type, inadmissible ell, window too small...)."""


class ResourceError(RuntimeError):
    """A configured enumeration bound would be exceeded."""


class InvariantViolation(AssertionError):
    """A mathematical identity that must hold was found to fail."""
